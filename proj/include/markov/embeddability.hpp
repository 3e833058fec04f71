#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "markov/matrix.hpp"
#include "markov/stochastic.hpp"
#include "markov/tolerances.hpp"

namespace markov {

// Necessary conditions for A = exp(B) with B a Markov generator. A failed
// check proves A is not embeddable; passing proves nothing.

enum class CheckId { DeterminantRange, ZeroNegativeSpectrum, PositivityTransitivity, Elfving, Runnenberg };

std::string_view to_string(CheckId id) noexcept;

struct EigenvalueWitness {
  Complex value;
};
struct IndexTriple {
  std::size_t i, j, k;  // zero-based
};
struct DeterminantWitness {
  double value;
};
using Certificate = std::variant<EigenvalueWitness, IndexTriple, DeterminantWitness>;

/// Polar data of one eigenvalue against the spiral r <= exp(-theta tan(pi/n)).
struct RunnenbergDatum {
  Complex lambda;
  double r = 0.0;
  double theta = 0.0;  // |arg lambda| in [0, pi]
  double bound = 1.0;
};

struct CheckResult {
  CheckId id{};
  bool passed = true;
  /// False only for the spiral check on 2x2 matrices, which always passes.
  bool applicable = true;
  /// Always set on failure; may carry a value on success (e.g. det A).
  std::optional<Certificate> certificate;
  /// Signed distance to the pass/fail boundary (negative on failure).
  double margin = 0.0;
  std::vector<RunnenbergDatum> runnenberg;

  std::string_view name() const noexcept { return to_string(id); }
};

/// cot(pi/n), the slope of the Karpelevic sector; 0 for n <= 2.
double karpelevic_cot(std::size_t n);
/// exp(-pi tan(pi/n)); eigenvalues all above this modulus force the
/// principal logarithm to be the only candidate generator. 0 for n <= 2.
double principal_uniqueness_radius(std::size_t n);
RunnenbergDatum runnenberg_datum(Complex lambda, std::size_t n);

/// Passes iff 0 < det A <= 1 + tol.row_sum. The RealMatrix overload accepts
/// matrices that are not stochastic (e.g. exp(L_s) for s < -1).
CheckResult check_det_range(const StochasticMatrix& a, const Tolerances& tol = {});
CheckResult check_det_range(const RealMatrix& a, const Tolerances& tol = {});

/// Fails on an eigenvalue of modulus below tol.axis * ||A||, or on a cluster
/// of negative real eigenvalues with odd size.
CheckResult check_zero_and_negative_spectrum(const StochasticMatrix& a, const Tolerances& tol = {});

/// Fails if A_ij > tol.entry and A_jk > tol.entry but A_ik <= tol.entry.
CheckResult check_positivity_transitivity(const StochasticMatrix& a, const Tolerances& tol = {});

/// Fails if an eigenvalue other than 1 has modulus >= 1 - tol.entry.
CheckResult check_elfving(const StochasticMatrix& a, const Tolerances& tol = {});

/// Fails if some eigenvalue lies outside the Runnenberg spiral (n >= 3).
CheckResult check_runnenberg(const StochasticMatrix& a, const Tolerances& tol = {});

/// All five checks in the order declared above.
std::vector<CheckResult> run_battery(const StochasticMatrix& a, const Tolerances& tol = {});

/// Same, on a precomputed (conjugate-closed) eigenvalue list of `a`.
std::vector<CheckResult> run_battery(const StochasticMatrix& a, std::span<const Complex> eigenvalues,
                                     const Tolerances& tol = {});

}  // namespace markov
