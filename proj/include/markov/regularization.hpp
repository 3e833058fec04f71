#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "markov/matrix.hpp"
#include "markov/stochastic.hpp"
#include "markov/tolerances.hpp"

namespace markov {

/// One row of a row-zero matrix split by the sign of its off-diagonal part.
struct RowDecomposition {
  std::size_t row_index = 0;
  std::vector<double> l;
  std::vector<std::size_t> positive;  // P: j != i with l_j >= 0
  std::vector<std::size_t> negative;  // N: j != i with l_j < 0
  double l_p = 0.0;
  double l_n = 0.0;  // minus the sum over N, so >= 0
};

RowDecomposition decompose_row(const RowZeroMatrix& l, std::size_t i);

/// Zeroes the negative off-diagonal entries and rebuilds the diagonal. This
/// is a nearest generator to L in op_norm, at distance max_i 2 l_N.
GeneratorMatrix diagonal_adjust(const RowZeroMatrix& l);

/// op_norm(L - G) - op_norm(L - diagonal_adjust(L)).
double optimality_gap(const RowZeroMatrix& l, const GeneratorMatrix& g);

/// min{2, e^eps - 1}. Throws std::invalid_argument for negative or NaN eps.
double exp_error_bound(double epsilon);
/// min{2, 2 eps}, the looser form.
double exp_error_bound_linear(double epsilon);

struct RegularizationResult {
  RowZeroMatrix l;
  GeneratorMatrix b;
  double epsilon = 0.0;
  RealMatrix a_tilde;  // expm(B)
  std::optional<double> exp_error_actual;
  double exp_error_bound = 0.0;
};

/// L = logm_principal(A), B = diagonal_adjust(L), A~ = expm(B). Propagates
/// SpectrumOnClosedNegativeAxis and the other logm errors.
RegularizationResult regularize(const StochasticMatrix& a, const Tolerances& tol = {});

/// Same, starting from a given L; no A, so exp_error_actual is empty.
RegularizationResult regularize(const RowZeroMatrix& l);

}  // namespace markov
