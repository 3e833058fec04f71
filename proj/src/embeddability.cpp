#include "markov/embeddability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "markov/linalg.hpp"

namespace markov {

namespace {

std::vector<Complex> spectrum_of(const RealMatrix& a, const Tolerances& tol) {
  return eigen_decompose(a, tol).eigenvalues;
}

// Product of a conjugate-closed eigenvalue list, taking each pair as |z|^2.
double determinant_from(std::span<const Complex> eigenvalues) {
  double det = 1.0;
  for (const auto& z : eigenvalues) {
    if (z.imag() == 0.0) {
      det *= z.real();
    } else if (z.imag() > 0.0) {
      det *= std::norm(z);
    }
  }
  return det;
}

CheckResult det_range(double det, const Tolerances& tol) {
  CheckResult r;
  r.id = CheckId::DeterminantRange;
  r.passed = det > 0.0 && det <= 1.0 + tol.row_sum;
  r.certificate = DeterminantWitness{det};
  r.margin = std::min(det, 1.0 + tol.row_sum - det);
  return r;
}

CheckResult zero_negative(std::span<const Complex> eigenvalues, double scale, const Tolerances& tol) {
  CheckResult r;
  r.id = CheckId::ZeroNegativeSpectrum;
  const double zero_radius = tol.axis * scale;
  const double axis_width = tol.axis * scale;
  const double cluster_radius = tol.separation * scale;

  double smallest = std::numeric_limits<double>::infinity();
  const Complex* smallest_at = nullptr;
  std::vector<double> negatives;
  for (const auto& z : eigenvalues) {
    if (std::abs(z) < smallest) {
      smallest = std::abs(z);
      smallest_at = &z;
    }
    if (std::abs(z.imag()) < axis_width && z.real() < -axis_width) negatives.push_back(z.real());
  }
  r.margin = eigenvalues.empty() ? 1.0 : smallest - zero_radius;
  if (smallest_at != nullptr && smallest < zero_radius) {
    r.passed = false;
    r.certificate = EigenvalueWitness{*smallest_at};
    return r;
  }

  std::sort(negatives.begin(), negatives.end());
  std::size_t start = 0;
  while (start < negatives.size()) {
    std::size_t end = start + 1;
    while (end < negatives.size() && negatives[end] - negatives[end - 1] <= cluster_radius) ++end;
    if ((end - start) % 2 == 1) {
      const double value = negatives[start];
      // Distance the odd cluster must travel: to zero, or to merge with a
      // neighbouring negative eigenvalue.
      double reach = std::abs(value);
      if (start > 0) reach = std::min(reach, 0.5 * (negatives[start] - negatives[start - 1]));
      if (end < negatives.size()) reach = std::min(reach, 0.5 * (negatives[end] - negatives[end - 1]));
      r.passed = false;
      r.certificate = EigenvalueWitness{Complex(value, 0.0)};
      r.margin = -reach;
      return r;
    }
    start = end;
  }
  return r;
}

CheckResult positivity_transitivity(const RealMatrix& a, const Tolerances& tol) {
  CheckResult r;
  r.id = CheckId::PositivityTransitivity;
  const std::size_t n = a.size();
  const double t = tol.entry;
  r.margin = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!(a(i, j) > t)) continue;
      for (std::size_t k = 0; k < n; ++k) {
        if (!(a(j, k) > t)) continue;
        if (a(i, k) > t) {
          r.margin = std::min(r.margin, a(i, k) - t);
        } else {
          r.passed = false;
          r.certificate = IndexTriple{i, j, k};
          r.margin = -(std::min(a(i, j), a(j, k)) - t);
          return r;
        }
      }
    }
  }
  return r;
}

CheckResult elfving(std::span<const Complex> eigenvalues, double scale, const Tolerances& tol) {
  CheckResult r;
  r.id = CheckId::Elfving;
  r.margin = 1.0;
  const double ceiling = 1.0 - tol.entry;
  for (const auto& z : eigenvalues) {
    if (!(std::abs(z - 1.0) > tol.separation * scale)) continue;
    const double m = ceiling - std::abs(z);
    if (m < r.margin) {
      r.margin = m;
      if (m <= 0.0) {
        r.passed = false;
        r.certificate = EigenvalueWitness{z};
      }
    }
  }
  return r;
}

CheckResult runnenberg(std::span<const Complex> eigenvalues, std::size_t n, const Tolerances& tol) {
  CheckResult r;
  r.id = CheckId::Runnenberg;
  if (n < 3) {
    r.applicable = false;
    return r;
  }
  r.margin = std::numeric_limits<double>::infinity();
  const Complex* worst = nullptr;
  for (const auto& z : eigenvalues) {
    const RunnenbergDatum d = runnenberg_datum(z, n);
    r.runnenberg.push_back(d);
    const double m = d.bound - d.r;
    if (m < r.margin) {
      r.margin = m;
      worst = &z;
    }
  }
  if (worst != nullptr && r.margin < -tol.sector) {
    r.passed = false;
    r.certificate = EigenvalueWitness{*worst};
  }
  return r;
}

}  // namespace

std::string_view to_string(CheckId id) noexcept {
  switch (id) {
    case CheckId::DeterminantRange: return "determinant_range";
    case CheckId::ZeroNegativeSpectrum: return "zero_and_negative_spectrum";
    case CheckId::PositivityTransitivity: return "positivity_transitivity";
    case CheckId::Elfving: return "elfving";
    case CheckId::Runnenberg: return "runnenberg";
  }
  return "unknown";
}

double karpelevic_cot(std::size_t n) {
  if (n <= 2) return 0.0;
  return 1.0 / std::tan(std::numbers::pi / static_cast<double>(n));
}

double principal_uniqueness_radius(std::size_t n) {
  if (n <= 2) return 0.0;
  return std::exp(-std::numbers::pi * std::tan(std::numbers::pi / static_cast<double>(n)));
}

RunnenbergDatum runnenberg_datum(Complex lambda, std::size_t n) {
  RunnenbergDatum d;
  d.lambda = lambda;
  d.r = std::abs(lambda);
  d.theta = std::abs(std::arg(lambda));
  d.bound = n >= 3 ? std::exp(-d.theta * std::tan(std::numbers::pi / static_cast<double>(n))) : 1.0;
  return d;
}

CheckResult check_det_range(const StochasticMatrix& a, const Tolerances& tol) {
  return check_det_range(a.matrix(), tol);
}

CheckResult check_det_range(const RealMatrix& a, const Tolerances& tol) {
  const auto values = spectrum_of(a, tol);
  return det_range(determinant_from(values), tol);
}

CheckResult check_zero_and_negative_spectrum(const StochasticMatrix& a, const Tolerances& tol) {
  return zero_negative(spectrum_of(a.matrix(), tol), op_norm(a.matrix()), tol);
}

CheckResult check_positivity_transitivity(const StochasticMatrix& a, const Tolerances& tol) {
  tol.validate();
  return positivity_transitivity(a.matrix(), tol);
}

CheckResult check_elfving(const StochasticMatrix& a, const Tolerances& tol) {
  return elfving(spectrum_of(a.matrix(), tol), op_norm(a.matrix()), tol);
}

CheckResult check_runnenberg(const StochasticMatrix& a, const Tolerances& tol) {
  return runnenberg(spectrum_of(a.matrix(), tol), a.size(), tol);
}

std::vector<CheckResult> run_battery(const StochasticMatrix& a, const Tolerances& tol) {
  const auto values = spectrum_of(a.matrix(), tol);
  return run_battery(a, values, tol);
}

std::vector<CheckResult> run_battery(const StochasticMatrix& a, std::span<const Complex> eigenvalues,
                                     const Tolerances& tol) {
  tol.validate();
  const double scale = op_norm(a.matrix());
  return {
      det_range(determinant_from(eigenvalues), tol),
      zero_negative(eigenvalues, scale, tol),
      positivity_transitivity(a.matrix(), tol),
      elfving(eigenvalues, scale, tol),
      runnenberg(eigenvalues, a.size(), tol),
  };
}

}  // namespace markov
