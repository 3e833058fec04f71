#pragma once

#include <stdexcept>

namespace markov {

/// Numerical slack used throughout. Spectral tolerances are relative to
/// op_norm of the matrix being analysed; row_sum and entry are absolute.
struct Tolerances {
  double row_sum = 1e-9;     // allowed deviation of a row sum from its target
  double entry = 1e-12;      // negativity slack for entries that must be >= 0
  double separation = 1e-8;  // eigenvalue gap below which two eigenvalues coincide
  double axis = 1e-10;       // distance from (-inf, 0] treated as "on the axis"
  double reality = 1e-8;     // allowed imaginary residue, times (1 + ||M||)
  double sector = 1e-9;      // slack on the Karpelevic sector boundary

  void validate() const {
    if (!(row_sum > 0 && entry > 0 && separation > 0 && axis > 0 && reality > 0 && sector > 0)) {
      throw std::invalid_argument("all tolerances must be strictly positive");
    }
  }
};

}  // namespace markov
