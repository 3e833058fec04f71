#include <array>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "markov/errors.hpp"
#include "markov/linalg.hpp"

namespace markov {

namespace {

constexpr int kQuadratureNodes = 12;
constexpr int kMaxSquareRoots = 64;
constexpr double kSquareRootTarget = 0.25;
constexpr double kResidualFactor = 1e-9;

struct Quadrature {
  std::array<double, kQuadratureNodes> nodes{};
  std::array<double, kQuadratureNodes> weights{};
};

// Gauss-Legendre rule on [0, 1].
Quadrature gauss_legendre() {
  Quadrature q;
  constexpr int m = kQuadratureNodes;
  for (int i = 0; i < m; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (m + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = 1.0;
      double p2 = 0.0;
      for (int j = 1; j <= m; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
      }
      dp = m * (z * p1 - p2) / (z * z - 1.0);
      const double step = p1 / dp;
      z -= step;
      if (std::abs(step) < 1e-16) break;
    }
    q.nodes[static_cast<std::size_t>(i)] = 0.5 * (1.0 - z);
    q.weights[static_cast<std::size_t>(i)] = 1.0 / ((1.0 - z * z) * dp * dp);
  }
  return q;
}

ComplexMatrix upper_triangular_sqrt(const ComplexMatrix& t) {
  const std::size_t n = t.size();
  ComplexMatrix r(n);
  for (std::size_t i = 0; i < n; ++i) r(i, i) = std::sqrt(t(i, i));
  for (std::size_t d = 1; d < n; ++d) {
    for (std::size_t i = 0; i + d < n; ++i) {
      const std::size_t j = i + d;
      Complex s = t(i, j);
      for (std::size_t l = i + 1; l < j; ++l) s -= r(i, l) * r(l, j);
      r(i, j) = s / (r(i, i) + r(j, j));
    }
  }
  return r;
}

// Solves U Y = B for upper triangular U.
ComplexMatrix solve_upper(const ComplexMatrix& u, const ComplexMatrix& b) {
  const std::size_t n = u.size();
  ComplexMatrix y(n);
  for (std::size_t col = 0; col < n; ++col) {
    for (std::size_t ii = n; ii-- > 0;) {
      Complex s = b(ii, col);
      for (std::size_t l = ii + 1; l < n; ++l) s -= u(ii, l) * y(l, col);
      y(ii, col) = s / u(ii, ii);
    }
  }
  return y;
}

// Inverse scaling and squaring on the Schur form: take square roots until
// T is close to I, then evaluate log(I + X) as a Gauss-Legendre quadrature
// of X (I + uX)^-1 over u in [0, 1].
ComplexMatrix schur_log(const RealMatrix& m) {
  const SchurForm schur = complex_schur(m);
  const std::size_t n = m.size();
  const ComplexMatrix id = ComplexMatrix::identity(n);
  ComplexMatrix t = schur.triangular;
  int roots = 0;
  while (op_norm(t - id) > kSquareRootTarget) {
    if (++roots > kMaxSquareRoots) throw IllConditionedBasis("inverse scaling and squaring did not converge");
    t = upper_triangular_sqrt(t);
  }
  const ComplexMatrix x = t - id;
  static const Quadrature rule = gauss_legendre();
  ComplexMatrix log_t(n);
  for (int k = 0; k < kQuadratureNodes; ++k) {
    const auto idx = static_cast<std::size_t>(k);
    log_t += solve_upper(id + x * Complex(rule.nodes[idx]), x) * Complex(rule.weights[idx]);
  }
  log_t *= Complex(std::ldexp(1.0, roots));
  return schur.unitary * log_t * conjugate_transpose(schur.unitary);
}

}  // namespace

RealMatrix logm_principal(const RealMatrix& m, const Tolerances& tol) {
  tol.validate();
  const double scale = op_norm(m);
  const SpectralDecomposition spectrum = eigen_decompose(m, tol);
  for (const auto& lambda : spectrum.eigenvalues) {
    if (distance_to_closed_negative_axis(lambda) <= tol.axis * scale) {
      std::ostringstream msg;
      msg << "principal logarithm undefined: eigenvalue " << lambda.real() << (lambda.imag() < 0 ? " - " : " + ")
          << std::abs(lambda.imag()) << "i lies on the closed negative real axis";
      throw SpectrumOnClosedNegativeAxis(msg.str());
    }
  }

  const double reality_limit = tol.reality * (1.0 + scale);
  const double residual_limit = kResidualFactor * scale;
  bool saw_non_real = false;
  auto accept = [&](const ComplexMatrix& candidate, RealMatrix& out) {
    if (max_abs_imag(candidate) > reality_limit) {
      saw_non_real = true;
      return false;
    }
    out = real_part(candidate);
    try {
      return op_norm(expm(out) - m) <= residual_limit;
    } catch (const OverflowGuard&) {
      return false;
    }
  };

  RealMatrix result;
  if (spectrum.basis_condition <= kBasisConditionLimit) {
    std::vector<Complex> logs;
    logs.reserve(spectrum.eigenvalues.size());
    for (const auto& lambda : spectrum.eigenvalues) logs.push_back(std::log(lambda));
    if (accept(apply_on_eigenbasis(spectrum, logs), result)) return result;
  }
  if (accept(schur_log(m), result)) return result;

  if (saw_non_real) throw NonRealResult("logarithm has a non-negligible imaginary part");
  throw IllConditionedBasis("no logarithm route reproduced the matrix to the required accuracy");
}

}  // namespace markov
