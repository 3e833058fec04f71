#pragma once

#include <span>
#include <vector>

#include "markov/matrix.hpp"
#include "markov/tolerances.hpp"

namespace markov {

/// Largest op_norm accepted by expm.
inline constexpr double kExpmNormLimit = 1e4;

/// Eigenvector bases with a larger condition estimate are not used to
/// evaluate matrix functions.
inline constexpr double kBasisConditionLimit = 1e8;

struct SpectralDecomposition {
  /// Sorted by descending modulus, then ascending argument in (-pi, pi].
  /// Non-real eigenvalues come in exact conjugate pairs.
  std::vector<Complex> eigenvalues;
  /// Column r is a unit 2-norm eigenvector for eigenvalues[r].
  ComplexMatrix eigenvectors;
  /// Inverse of `eigenvectors`; empty when the basis is singular.
  ComplexMatrix eigenvectors_inverse;
  /// ||V|| * ||V^-1|| in the infinity norm; +inf for a singular basis.
  double basis_condition = 1.0;
  /// All pairwise eigenvalue gaps exceed tol.separation * ||M||.
  bool is_distinct = false;
};

/// Complex Schur form M = Q T Q^H with T upper triangular.
struct SchurForm {
  ComplexMatrix unitary;
  ComplexMatrix triangular;
};

/// Hessenberg reduction followed by implicitly shifted complex QR sweeps.
/// Throws ConvergenceFailure after 100 n^2 sweeps.
SchurForm complex_schur(const RealMatrix& m);

SpectralDecomposition eigen_decompose(const RealMatrix& m, const Tolerances& tol = {});

/// V diag(values) V^-1 for the basis of `spectrum`. Throws
/// IllConditionedBasis when the basis is singular.
ComplexMatrix apply_on_eigenbasis(const SpectralDecomposition& spectrum, std::span<const Complex> values);

/// Scaling and squaring with a degree-13 Pade approximant.
/// Throws OverflowGuard when op_norm(m) > kExpmNormLimit or the result overflows.
RealMatrix expm(const RealMatrix& m);

/// Principal logarithm (spectrum of the result in |Im z| < pi).
///
/// Evaluated on the eigenvector basis when it is well conditioned, else by
/// inverse scaling and squaring on the complex Schur form. Throws
/// SpectrumOnClosedNegativeAxis when an eigenvalue lies within
/// tol.axis * ||M|| of (-inf, 0], IllConditionedBasis when neither route
/// reproduces M to 1e-9 ||M||, and NonRealResult when the imaginary
/// residue exceeds tol.reality * (1 + ||M||).
RealMatrix logm_principal(const RealMatrix& m, const Tolerances& tol = {});

/// Distance from z to the closed half-line (-inf, 0].
double distance_to_closed_negative_axis(Complex z);

double determinant(const RealMatrix& m);
RealMatrix inverse(const RealMatrix& m);
ComplexMatrix inverse(const ComplexMatrix& m);

}  // namespace markov
