#include "markov/generator_search.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "markov/errors.hpp"
#include "markov/linalg.hpp"

namespace markov {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Entry slack for judging computed logarithms: the rounding error of a
// logarithm grows with its norm.
Tolerances scaled_for(const Tolerances& tol, const RealMatrix& m) {
  Tolerances t = tol;
  t.entry = tol.entry * (1.0 + op_norm(m));
  return t;
}

std::optional<GeneratorMatrix> as_generator(const RealMatrix& m, const Tolerances& tol) {
  const Tolerances slack = scaled_for(tol, m);
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j)
      if (i != j && m(i, j) < -slack.entry) return std::nullopt;
  try {
    return validate_generator(m, slack);
  } catch (const NotGenerator&) {
    return std::nullopt;
  }
}

bool reproduces(const GeneratorMatrix& g, const RealMatrix& a) {
  try {
    return op_norm(expm(g.matrix()) - a) <= witness_tolerance(a.size());
  } catch (const OverflowGuard&) {
    return false;
  }
}

double product_of(std::span<const Complex> eigenvalues) {
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

bool branch_order(const LogBranch& x, const LogBranch& y) {
  auto weight = [](const LogBranch& b) {
    return std::accumulate(b.offsets.begin(), b.offsets.end(), 0L, [](long s, int k) { return s + std::abs(k); });
  };
  const long wx = weight(x);
  const long wy = weight(y);
  if (wx != wy) return wx < wy;
  return x.offsets < y.offsets;
}

}  // namespace

bool LogBranch::is_principal() const noexcept {
  return std::all_of(offsets.begin(), offsets.end(), [](int k) { return k == 0; });
}

double witness_tolerance(std::size_t n) noexcept { return 1e-8 * static_cast<double>(n); }

std::string_view to_string(Status s) noexcept {
  switch (s) {
    case Status::Embeddable: return "Embeddable";
    case Status::NotEmbeddable: return "NotEmbeddable";
    case Status::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

std::string_view to_string(Uniqueness u) noexcept {
  switch (u) {
    case Uniqueness::UniquePrincipal: return "UniquePrincipal";
    case Uniqueness::AtMostFinite: return "AtMostFinite";
    case Uniqueness::Unknown: return "Unknown";
  }
  return "Unknown";
}

std::optional<GeneratorMatrix> principal_generator(const StochasticMatrix& a, const Tolerances& tol) {
  return as_generator(logm_principal(a.matrix(), tol), tol);
}

std::vector<LogBranch> enumerate_branches(const StochasticMatrix& a, const SearchOptions& options) {
  const Tolerances& tol = options.tol;
  tol.validate();
  const RealMatrix& m = a.matrix();
  const std::size_t n = m.size();
  const double scale = op_norm(m);
  const SpectralDecomposition spectrum = eigen_decompose(m, tol);
  const auto& values = spectrum.eigenvalues;

  for (const auto& z : values) {
    if (std::abs(z) <= tol.axis * scale) throw NotInvertible("matrix has a zero eigenvalue");
  }
  if (!spectrum.is_distinct) {
    throw DegenerateSpectrum("repeated eigenvalues: the logarithms form a continuum and cannot be enumerated");
  }
  if (spectrum.basis_condition > kBasisConditionLimit) {
    throw IllConditionedBasis("eigenvector basis condition " + std::to_string(spectrum.basis_condition) +
                              " is too large to reconstruct logarithms");
  }

  const double cot = karpelevic_cot(n);
  // Offsets are chosen freely for real eigenvalues and upper-half-plane
  // representatives; lower-half partners take the negated offset.
  std::vector<std::vector<int>> choices(n, std::vector<int>{0});
  std::vector<std::size_t> partner(n, n);
  std::vector<std::size_t> free_slots;
  for (std::size_t r = 0; r < n; ++r) {
    const Complex z = values[r];
    if (z.imag() == 0.0) {
      // A real log must pair every non-real mu with its conjugate; with
      // distinct eigenvalues a negative one has no such partner.
      if (z.real() < 0.0) return {};
      continue;
    }
    if (z.imag() < 0.0) continue;
    const double theta = std::arg(z);
    const double reach = -std::log(std::abs(z)) * cot + tol.sector;
    const auto k_lo = static_cast<long>(std::ceil((-reach - theta) / kTwoPi));
    const auto k_hi = static_cast<long>(std::floor((reach - theta) / kTwoPi));
    if (k_lo > k_hi) return {};
    if (std::max(std::abs(k_lo), std::abs(k_hi)) > options.max_offset) {
      throw EnumerationLimit("branch offsets up to " + std::to_string(std::max(std::abs(k_lo), std::abs(k_hi))) +
                             " exceed the cap of " + std::to_string(options.max_offset));
    }
    choices[r].clear();
    for (long k = k_lo; k <= k_hi; ++k) choices[r].push_back(static_cast<int>(k));
    for (std::size_t s = 0; s < n; ++s) {
      if (values[s] == std::conj(z)) partner[r] = s;
    }
    if (partner[r] == n) throw NonRealResult("eigenvalue list is not closed under conjugation");
    free_slots.push_back(r);
  }

  std::size_t total = 1;
  for (const auto r : free_slots) {
    if (total > options.max_candidates / choices[r].size()) {
      throw EnumerationLimit("more than " + std::to_string(options.max_candidates) + " branch candidates");
    }
    total *= choices[r].size();
  }

  std::vector<Complex> principal_logs(n);
  for (std::size_t r = 0; r < n; ++r) principal_logs[r] = std::log(values[r]);

  std::vector<LogBranch> branches;
  branches.reserve(total);
  std::vector<std::size_t> cursor(free_slots.size(), 0);
  for (std::size_t count = 0; count < total; ++count) {
    LogBranch b;
    b.offsets.assign(n, 0);
    for (std::size_t f = 0; f < free_slots.size(); ++f) {
      const std::size_t r = free_slots[f];
      const int k = choices[r][cursor[f]];
      b.offsets[r] = k;
      b.offsets[partner[r]] = -k;
    }
    b.mu.resize(n);
    b.sector_margins.resize(n);
    for (std::size_t r = 0; r < n; ++r) {
      b.mu[r] = principal_logs[r] + Complex(0.0, kTwoPi * b.offsets[r]);
      b.sector_margins[r] = -b.mu[r].real() * cot - std::abs(b.mu[r].imag());
    }
    const ComplexMatrix c = apply_on_eigenbasis(spectrum, b.mu);
    b.matrix = real_part(c);
    if (max_abs_imag(c) > tol.reality * (1.0 + op_norm(b.matrix))) {
      throw NonRealResult("reconstructed logarithm branch is not real");
    }
    b.generator = as_generator(b.matrix, tol);
    b.is_generator = b.generator.has_value();
    branches.push_back(std::move(b));

    for (std::size_t f = 0; f < cursor.size(); ++f) {
      if (++cursor[f] < choices[free_slots[f]].size()) break;
      cursor[f] = 0;
    }
  }
  std::sort(branches.begin(), branches.end(), branch_order);
  return branches;
}

Uniqueness uniqueness_certificate(const StochasticMatrix& a, const Tolerances& tol) {
  const SpectralDecomposition spectrum = eigen_decompose(a.matrix(), tol);
  const double scale = op_norm(a.matrix());
  const auto& values = spectrum.eigenvalues;
  const bool invertible =
      std::all_of(values.begin(), values.end(), [&](const Complex& z) { return std::abs(z) > tol.axis * scale; });
  if (!spectrum.is_distinct || !invertible) return Uniqueness::Unknown;
  const double radius = principal_uniqueness_radius(a.size());
  const bool all_outside =
      std::all_of(values.begin(), values.end(), [&](const Complex& z) { return std::abs(z) > radius; });
  if (all_outside || product_of(values) > std::exp(-std::numbers::pi)) return Uniqueness::UniquePrincipal;
  return Uniqueness::AtMostFinite;
}

EmbeddabilityVerdict decide_embeddable(const StochasticMatrix& a, const SearchOptions& options) {
  const Tolerances& tol = options.tol;
  EmbeddabilityVerdict v;
  std::string trouble;
  auto note = [&](const std::exception& e) {
    if (!trouble.empty()) trouble += "; ";
    trouble += e.what();
  };

  std::optional<GeneratorMatrix> principal;
  try {
    principal = principal_generator(a, tol);
  } catch (const Error& e) {
    note(e);
  }
  std::optional<std::vector<LogBranch>> branches;
  try {
    branches = enumerate_branches(a, options);
  } catch (const Error& e) {
    note(e);
  }

  if (branches) {
    for (const auto& b : *branches) {
      if (b.is_generator && reproduces(*b.generator, a.matrix())) v.generators.push_back(b);
    }
  }
  if (principal && reproduces(*principal, a.matrix())) {
    v.witness = principal;
  } else if (!v.generators.empty()) {
    v.witness = v.generators.front().generator;
  }
  v.generator_count_lower_bound = branches ? v.generators.size() : (v.witness ? 1 : 0);

  if (v.witness) {
    v.status = Status::Embeddable;
    Uniqueness level = Uniqueness::Unknown;
    try {
      level = uniqueness_certificate(a, tol);
    } catch (const Error&) {
    }
    v.certificate = UniquenessStatement{level};
    return v;
  }

  try {
    for (auto& check : run_battery(a, tol)) {
      if (!check.passed) {
        v.status = Status::NotEmbeddable;
        v.certificate = std::move(check);
        return v;
      }
    }
  } catch (const Error& e) {
    note(e);
  }

  if (branches) {
    v.status = Status::NotEmbeddable;
    v.certificate = ExhaustedEnumeration{branches->size()};
    return v;
  }

  v.status = Status::Inconclusive;
  v.certificate = InconclusiveReason{trouble.empty() ? "no decision procedure applies" : trouble};
  return v;
}

bool CuthbertDiagnostics::chain_holds() const noexcept {
  return (!conditions[0] || conditions[1]) && (!conditions[1] || conditions[2]) && (!conditions[2] || conditions[3]);
}

CuthbertDiagnostics cuthbert_diagnostics(const StochasticMatrix& a, const GeneratorMatrix& b, const Tolerances& tol) {
  if (a.size() != b.size()) throw WitnessMismatch("dimension mismatch between A and B");
  double residual = 0.0;
  try {
    residual = op_norm(expm(b.matrix()) - a.matrix());
  } catch (const OverflowGuard&) {
    residual = std::numeric_limits<double>::infinity();
  }
  if (!(residual <= witness_tolerance(a.size()))) {
    throw WitnessMismatch("exp(B) differs from A by " + std::to_string(residual) + " in norm");
  }

  CuthbertDiagnostics d;
  d.det_a = determinant(a.matrix());
  d.trace_b = trace(b.matrix());
  d.beta = b.delta();
  d.norm_b_plus_beta = op_norm(b.nonnegative_part());
  const auto spectrum = eigen_decompose(b.matrix(), tol);
  d.spectral_strip_ok = std::all_of(spectrum.eigenvalues.begin(), spectrum.eigenvalues.end(),
                                    [](const Complex& z) { return std::abs(z.imag()) < std::numbers::pi; });
  const double pi = std::numbers::pi;
  d.conditions = {std::exp(-pi) < d.det_a && d.det_a <= 1.0 + tol.row_sum, -pi < d.trace_b && d.trace_b <= 0.0,
                  d.norm_b_plus_beta < pi, d.spectral_strip_ok};
  if (!d.chain_holds()) throw std::logic_error("Cuthbert implication chain violated");
  return d;
}

}  // namespace markov
