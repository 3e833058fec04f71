#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "linalg/lu.hpp"
#include "markov/errors.hpp"
#include "markov/linalg.hpp"

namespace markov {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Rotation {
  double c = 1.0;
  Complex s{};
};

// Unitary G = [[c, s], [-conj(s), c]] with G [x; y] = [r; 0].
Rotation givens(Complex x, Complex y) {
  if (y == Complex{}) return {1.0, Complex{}};
  if (x == Complex{}) return {0.0, std::conj(y) / std::abs(y)};
  const double ax = std::abs(x);
  const double nrm = std::hypot(ax, std::abs(y));
  return {ax / nrm, (x / ax) * std::conj(y) / nrm};
}

void rotate_rows(ComplexMatrix& h, const Rotation& g, std::size_t k, std::size_t first_col) {
  for (std::size_t j = first_col; j < h.size(); ++j) {
    const Complex a = h(k, j);
    const Complex b = h(k + 1, j);
    h(k, j) = g.c * a + g.s * b;
    h(k + 1, j) = -std::conj(g.s) * a + g.c * b;
  }
}

// Right-multiplication by G^H on columns k, k+1 of rows [0, last_row].
void rotate_cols(ComplexMatrix& h, const Rotation& g, std::size_t k, std::size_t last_row) {
  for (std::size_t i = 0; i <= last_row; ++i) {
    const Complex a = h(i, k);
    const Complex b = h(i, k + 1);
    h(i, k) = g.c * a + std::conj(g.s) * b;
    h(i, k + 1) = -g.s * a + g.c * b;
  }
}

void reduce_to_hessenberg(ComplexMatrix& h, ComplexMatrix& q) {
  const std::size_t n = h.size();
  if (n < 3) return;
  std::vector<Complex> v;
  for (std::size_t k = 0; k + 2 < n; ++k) {
    double norm2 = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) norm2 += std::norm(h(i, k));
    if (norm2 == 0.0) continue;
    const Complex x0 = h(k + 1, k);
    const Complex phase = x0 == Complex{} ? Complex{1.0} : x0 / std::abs(x0);
    const Complex alpha = -phase * std::sqrt(norm2);

    v.assign(n - k - 1, Complex{});
    v[0] = x0 - alpha;
    for (std::size_t i = k + 2; i < n; ++i) v[i - k - 1] = h(i, k);
    double vnorm2 = 0.0;
    for (const auto& vi : v) vnorm2 += std::norm(vi);
    if (vnorm2 == 0.0) continue;

    for (std::size_t j = k; j < n; ++j) {
      Complex dot{};
      for (std::size_t l = 0; l < v.size(); ++l) dot += std::conj(v[l]) * h(k + 1 + l, j);
      const Complex f = 2.0 * dot / vnorm2;
      for (std::size_t l = 0; l < v.size(); ++l) h(k + 1 + l, j) -= f * v[l];
    }
    auto right_apply = [&](ComplexMatrix& a) {
      for (std::size_t i = 0; i < n; ++i) {
        Complex dot{};
        for (std::size_t l = 0; l < v.size(); ++l) dot += a(i, k + 1 + l) * v[l];
        const Complex f = 2.0 * dot / vnorm2;
        for (std::size_t l = 0; l < v.size(); ++l) a(i, k + 1 + l) -= f * std::conj(v[l]);
      }
    };
    right_apply(h);
    right_apply(q);
    for (std::size_t i = k + 2; i < n; ++i) h(i, k) = Complex{};
  }
}

// Eigenvalue of the trailing 2x2 block of the active window closest to its
// last diagonal entry.
Complex wilkinson_shift(const ComplexMatrix& h, std::size_t hi) {
  const Complex a = h(hi - 1, hi - 1);
  const Complex b = h(hi - 1, hi);
  const Complex c = h(hi, hi - 1);
  const Complex d = h(hi, hi);
  const Complex half = 0.5 * (a - d);
  const Complex disc = std::sqrt(half * half + b * c);
  const Complex plus = half + disc;
  const Complex minus = half - disc;
  const Complex denom = std::abs(plus) >= std::abs(minus) ? plus : minus;
  if (denom == Complex{}) return d;
  return d - b * c / denom;
}

void qr_sweep(ComplexMatrix& h, ComplexMatrix& q, std::size_t lo, std::size_t hi, Complex shift) {
  const std::size_t n = h.size();
  Complex x = h(lo, lo) - shift;
  Complex y = h(lo + 1, lo);
  for (std::size_t k = lo; k < hi; ++k) {
    if (k > lo) {
      x = h(k, k - 1);
      y = h(k + 1, k - 1);
    }
    const Rotation g = givens(x, y);
    rotate_rows(h, g, k, k > lo ? k - 1 : lo);
    if (k > lo) h(k + 1, k - 1) = Complex{};
    rotate_cols(h, g, k, std::min(k + 2, hi));
    rotate_cols(q, g, k, n - 1);
  }
}

// Snaps numerically real eigenvalues onto the axis and pairs the rest into
// exact conjugates, as they must be for a real matrix.
std::vector<Complex> conjugate_closed(const std::vector<Complex>& raw, double scale) {
  const double real_threshold = 64.0 * kEps * std::max(scale, std::numeric_limits<double>::min());
  std::vector<Complex> out;
  std::vector<Complex> upper;
  std::vector<Complex> lower;
  for (const auto& z : raw) {
    if (std::abs(z.imag()) <= real_threshold) {
      out.emplace_back(z.real(), 0.0);
    } else if (z.imag() > 0) {
      upper.push_back(z);
    } else {
      lower.push_back(z);
    }
  }
  auto by_abs_imag = [](const Complex& a, const Complex& b) { return std::abs(a.imag()) < std::abs(b.imag()); };
  std::sort(upper.begin(), upper.end(), by_abs_imag);
  std::sort(lower.begin(), lower.end(), by_abs_imag);
  // An unpaired value can only be a real eigenvalue carrying rounding noise.
  while (upper.size() > lower.size()) {
    out.emplace_back(upper.front().real(), 0.0);
    upper.erase(upper.begin());
  }
  while (lower.size() > upper.size()) {
    out.emplace_back(lower.front().real(), 0.0);
    lower.erase(lower.begin());
  }
  std::vector<bool> used(lower.size(), false);
  for (auto it = upper.rbegin(); it != upper.rend(); ++it) {
    std::size_t best = lower.size();
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < lower.size(); ++j) {
      if (used[j]) continue;
      const double dist = std::abs(*it - std::conj(lower[j]));
      if (dist < best_dist) {
        best_dist = dist;
        best = j;
      }
    }
    used[best] = true;
    const Complex mean = 0.5 * (*it + std::conj(lower[best]));
    out.push_back(mean);
    out.push_back(std::conj(mean));
  }
  return out;
}

bool spectral_order(const Complex& a, const Complex& b) {
  const double ma = std::abs(a);
  const double mb = std::abs(b);
  if (ma != mb) return ma > mb;
  return std::arg(a) < std::arg(b);
}

// Deterministic start vector for inverse iteration; `member` distinguishes
// vectors requested for the same (repeated) eigenvalue.
std::vector<Complex> start_vector(std::size_t n, std::size_t member) {
  std::uint64_t state = 0x9E3779B97F4A7C15ULL * (member + 1);
  std::vector<Complex> v(n);
  for (auto& x : v) {
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    x = 0.5 + static_cast<double>(state >> 11) * 0x1.0p-53;
  }
  return v;
}

void normalize(std::vector<Complex>& v) {
  double norm2 = 0.0;
  for (const auto& x : v) norm2 += std::norm(x);
  const double nrm = std::sqrt(norm2);
  if (nrm == 0.0 || !std::isfinite(nrm)) return;
  for (auto& x : v) x /= nrm;
}

void fix_phase(std::vector<Complex>& v) {
  std::size_t arg_max = 0;
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (std::abs(v[i]) > std::abs(v[arg_max])) arg_max = i;
  }
  const double mag = std::abs(v[arg_max]);
  if (mag == 0.0) return;
  const Complex rot = std::conj(v[arg_max]) / mag;
  for (auto& x : v) x *= rot;
  v[arg_max] = Complex(v[arg_max].real(), 0.0);
}

std::vector<Complex> inverse_iteration(const RealMatrix& m, Complex lambda, std::size_t member, double floor) {
  const std::size_t n = m.size();
  ComplexMatrix shifted = to_complex(m);
  for (std::size_t i = 0; i < n; ++i) shifted(i, i) -= lambda;
  const auto lu = detail::lu_factor(std::move(shifted), floor);
  auto v = start_vector(n, member);
  for (int iter = 0; iter < 3; ++iter) {
    v = detail::lu_solve(lu, v);
    normalize(v);
  }
  if (lambda.imag() == 0.0) {
    for (auto& x : v) x = Complex(x.real(), 0.0);
    normalize(v);
  }
  fix_phase(v);
  return v;
}

}  // namespace

SchurForm complex_schur(const RealMatrix& m) {
  const std::size_t n = m.size();
  SchurForm out{ComplexMatrix::identity(n), to_complex(m)};
  ComplexMatrix& h = out.triangular;
  ComplexMatrix& q = out.unitary;
  reduce_to_hessenberg(h, q);
  if (n < 2) return out;

  const double norm = std::max(op_norm(h), std::numeric_limits<double>::min());
  const std::size_t cap = 100 * n * n;
  std::size_t sweeps = 0;
  std::size_t since_deflation = 0;
  std::size_t hi = n - 1;
  while (hi > 0) {
    std::size_t lo = hi;
    while (lo > 0) {
      double scale = std::abs(h(lo - 1, lo - 1)) + std::abs(h(lo, lo));
      if (scale == 0.0) scale = norm;
      if (std::abs(h(lo, lo - 1)) <= kEps * scale) {
        h(lo, lo - 1) = Complex{};
        break;
      }
      --lo;
    }
    if (lo == hi) {
      --hi;
      since_deflation = 0;
      continue;
    }
    if (++sweeps > cap) {
      throw ConvergenceFailure("QR iteration did not converge within " + std::to_string(cap) + " sweeps");
    }
    ++since_deflation;
    Complex shift;
    if (since_deflation % 10 == 0) {
      // exceptional shift, breaks cycles of the Wilkinson shift
      double kick = std::abs(h(hi, hi - 1).real());
      if (hi >= lo + 2) kick += std::abs(h(hi - 1, hi - 2).real());
      shift = h(hi, hi) + kick;
    } else {
      shift = wilkinson_shift(h, hi);
    }
    qr_sweep(h, q, lo, hi, shift);
  }
  for (std::size_t i = 1; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) h(i, j) = Complex{};
  return out;
}

SpectralDecomposition eigen_decompose(const RealMatrix& m, const Tolerances& tol) {
  tol.validate();
  const std::size_t n = m.size();
  const double scale = op_norm(m);
  const SchurForm schur = complex_schur(m);

  std::vector<Complex> raw(n);
  for (std::size_t i = 0; i < n; ++i) raw[i] = schur.triangular(i, i);

  SpectralDecomposition out;
  out.eigenvalues = conjugate_closed(raw, scale);
  std::sort(out.eigenvalues.begin(), out.eigenvalues.end(), spectral_order);
  const auto& values = out.eigenvalues;

  const double radius = tol.separation * scale;
  out.is_distinct = true;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (!(std::abs(values[i] - values[j]) > radius)) out.is_distinct = false;

  const double floor = kEps * (scale > 0.0 ? scale : 1.0);
  out.eigenvectors = ComplexMatrix(n);
  std::vector<bool> done(n, false);
  for (std::size_t r = 0; r < n; ++r) {
    if (done[r] || values[r].imag() < 0.0) continue;
    std::size_t member = 0;
    for (std::size_t s = 0; s < r; ++s) {
      if (done[s] && std::abs(values[s] - values[r]) <= radius) ++member;
    }
    const auto v = inverse_iteration(m, values[r], member, floor);
    for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, r) = v[i];
    done[r] = true;
    if (values[r].imag() > 0.0) {
      for (std::size_t s = 0; s < n; ++s) {
        if (!done[s] && values[s] == std::conj(values[r])) {
          for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, s) = std::conj(v[i]);
          done[s] = true;
          break;
        }
      }
    }
  }

  auto lu = detail::lu_factor(out.eigenvectors);
  if (lu.singular) {
    out.basis_condition = std::numeric_limits<double>::infinity();
  } else {
    out.eigenvectors_inverse = detail::lu_solve(lu, ComplexMatrix::identity(n));
    out.basis_condition = op_norm(out.eigenvectors) * op_norm(out.eigenvectors_inverse);
    if (!std::isfinite(out.basis_condition)) {
      out.basis_condition = std::numeric_limits<double>::infinity();
      out.eigenvectors_inverse = ComplexMatrix{};
    }
  }
  return out;
}

ComplexMatrix apply_on_eigenbasis(const SpectralDecomposition& spectrum, std::span<const Complex> values) {
  const std::size_t n = spectrum.eigenvectors.size();
  if (spectrum.eigenvectors_inverse.empty() && n > 0) {
    throw IllConditionedBasis("eigenvector basis is singular");
  }
  if (values.size() != n) throw std::invalid_argument("one value per eigenvalue is required");
  ComplexMatrix scaled = spectrum.eigenvectors;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) scaled(i, j) *= values[j];
  return scaled * spectrum.eigenvectors_inverse;
}

double distance_to_closed_negative_axis(Complex z) {
  if (z.real() <= 0.0) return std::abs(z.imag());
  return std::abs(z);
}

double determinant(const RealMatrix& m) {
  const auto lu = detail::lu_factor(m);
  if (lu.singular) return 0.0;
  double det = lu.sign;
  for (std::size_t i = 0; i < m.size(); ++i) det *= lu.lu(i, i);
  return det;
}

RealMatrix inverse(const RealMatrix& m) {
  const auto lu = detail::lu_factor(m);
  if (lu.singular) throw NotInvertible("matrix is singular");
  return detail::lu_solve(lu, RealMatrix::identity(m.size()));
}

ComplexMatrix inverse(const ComplexMatrix& m) {
  const auto lu = detail::lu_factor(m);
  if (lu.singular) throw NotInvertible("matrix is singular");
  return detail::lu_solve(lu, ComplexMatrix::identity(m.size()));
}

}  // namespace markov
