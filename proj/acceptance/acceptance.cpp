// Runs the ten acceptance criteria and prints one PASS/FAIL line for each.
// Exit status is non-zero if any criterion fails.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "markov/cli/app.hpp"
#include "markov/cli/io.hpp"
#include "markov/errors.hpp"
#include "markov/fixtures.hpp"
#include "markov/generator_search.hpp"
#include "markov/linalg.hpp"
#include "markov/regularization.hpp"
#include "support/lp_oracle.hpp"
#include "support/sampling.hpp"

using namespace markov;
namespace fx = markov::fixtures;

namespace {

struct Outcome {
  bool passed = false;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

double max_diff(const RealMatrix& a, const RealMatrix& b) { return max_abs_entry(a - b); }

StochasticMatrix stochastic_exp(const RealMatrix& m) { return validate_stochastic(expm(m)); }

Outcome example_one_reproduction() {
  const auto a = fx::example_one();
  const RealMatrix l = logm_principal(a.matrix());
  const GeneratorMatrix b = diagonal_adjust(validate_row_zero(l));
  const RealMatrix a_tilde = expm(b.matrix());
  const double dl = max_diff(l, fx::printed::example_one_log());
  const double db = max_diff(b.matrix(), fx::printed::example_one_generator());
  const double da = max_diff(a_tilde, fx::printed::example_one_regularized());
  const double gap = max_diff(a.matrix(), a_tilde);
  const bool ok = dl <= 5e-5 && db <= 5e-5 && da <= 5e-5 && gap < 0.036;
  return {ok, "|L-L*| " + fmt("%.2e", dl) + ", |B-B*| " + fmt("%.2e", db) + ", |A~-A~*| " + fmt("%.2e", da) +
                  ", max|A-A~| " + fmt("%.5f", gap)};
}

Outcome example_one_verdict() {
  const auto a = fx::example_one();
  const auto v = decide_embeddable(a);
  const auto u = uniqueness_certificate(a);
  const bool exhausted = std::holds_alternative<ExhaustedEnumeration>(v.certificate);
  const bool ok = v.status == Status::NotEmbeddable && exhausted && u == Uniqueness::UniquePrincipal;
  return {ok, std::string(to_string(v.status)) + (exhausted ? " by exhausted enumeration" : " by another certificate") +
                  ", " + std::string(to_string(u)) + ", det " + fmt("%.4f", determinant(a.matrix()))};
}

Outcome sigma_reproduction() {
  const double sigma = fx::sigma_bisect(1e-4);
  return {sigma >= -0.5722 && sigma <= -0.5702, "sigma = " + fmt("%.5f", sigma)};
}

Outcome l_s_family() {
  std::string detail;
  bool ok = true;
  for (const double s : {0.0, 0.5, 1.0}) {
    const auto v = decide_embeddable(stochastic_exp(fx::l_s(s).matrix()));
    ok = ok && v.status == Status::Embeddable;
    detail += "s=" + fmt("%g", s) + " " + std::string(to_string(v.status)) + "; ";
  }
  for (const double s : {-0.1, -0.3, -0.5}) {
    std::string what;
    try {
      const auto v = decide_embeddable(stochastic_exp(fx::l_s(s).matrix()));
      bool spectral = false;
      if (const auto* c = std::get_if<CheckResult>(&v.certificate)) {
        spectral = c->id == CheckId::Runnenberg;
        what = std::string(c->name());
      } else if (std::holds_alternative<ExhaustedEnumeration>(v.certificate)) {
        spectral = true;
        what = "exhausted enumeration";
      }
      ok = ok && v.status == Status::NotEmbeddable && spectral;
      what = std::string(to_string(v.status)) + " (" + what + ")";
    } catch (const NotStochastic& e) {
      ok = false;
      what = std::string("not stochastic: ") + e.what();
    }
    detail += "s=" + fmt("%g", s) + " " + what + "; ";
  }
  detail.resize(detail.size() - 2);
  return {ok, detail};
}

Outcome two_generator_example() {
  const GeneratorMatrix b = fx::cyclic_generator(3, 4.0);
  const auto branches = enumerate_branches(stochastic_exp(b.matrix()));
  std::size_t generators = 0;
  bool recovers_b = false;
  bool principal_matches = false;
  double principal_err = 0.0;
  for (const auto& br : branches) {
    if (br.is_generator) ++generators;
    if (br.is_generator && max_diff(br.matrix, b.matrix()) <= 1e-6) recovers_b = true;
    if (br.is_principal()) {
      principal_err = max_diff(br.matrix, fx::printed::two_generator_log());
      principal_matches = br.is_generator && principal_err <= 5e-5;
    }
  }
  const bool ok = branches.size() == 2 && generators == 2 && recovers_b && principal_matches;
  return {ok, std::to_string(branches.size()) + " branches, " + std::to_string(generators) +
                  " generators, B recovered: " + (recovers_b ? "yes" : "no") + ", principal vs printed " +
                  fmt("%.2e", principal_err)};
}

Outcome five_cycle_example() {
  const GeneratorMatrix b = fx::cyclic_generator(5, 4.0);
  const auto spectrum = eigen_decompose(b.matrix());
  const auto printed = fx::printed::cyclic_five_eigenvalues();
  double eig_err = 0.0;
  // Printed to four decimals, so compare real and imaginary parts separately.
  for (std::size_t r = 0; r < 5; ++r) {
    eig_err = std::max({eig_err, std::abs(spectrum.eigenvalues[r].real() - printed[r].real()),
                        std::abs(spectrum.eigenvalues[r].imag() - printed[r].imag())});
  }
  const auto a = stochastic_exp(b.matrix());
  const RealMatrix l = logm_principal(a.matrix());
  double min_off = 0.0;
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j)
      if (i != j) min_off = std::min(min_off, l(i, j));
  const auto v = decide_embeddable(a);
  const double werr = v.witness ? max_diff(v.witness->matrix(), b.matrix()) : INFINITY;
  const bool ok = eig_err <= 5e-5 && min_off < 0.0 && v.status == Status::Embeddable && werr <= 1e-6;
  return {ok, "eigenvalue error " + fmt("%.2e", eig_err) + ", principal min off-diagonal " + fmt("%.4f", min_off) +
                  ", " + std::string(to_string(v.status)) + ", witness error " + fmt("%.2e", werr)};
}

Outcome negative_spectrum_guard() {
  const GeneratorMatrix b = fx::cyclic_generator(3, 2.0 * std::numbers::pi / std::sqrt(3.0));
  const RealMatrix a = expm(b.matrix());
  bool raised = false;
  try {
    (void)logm_principal(a);
  } catch (const SpectrumOnClosedNegativeAxis&) {
    raised = true;
  }
  const auto file = std::filesystem::temp_directory_path() / "markov_embed_acceptance_negative.csv";
  {
    std::ofstream out(file);
    out << cli::write_matrix(a, cli::MatrixFormat::Csv);
  }
  std::ostringstream out_analyze, out_logm, err;
  const int analyze_code = cli::run({"markov-embed", "analyze", file.string()}, out_analyze, err);
  const int logm_code = cli::run({"markov-embed", "logm", file.string()}, out_logm, err);
  const int generators_code = cli::run({"markov-embed", "generators", "--quiet", file.string()}, out_logm, err);
  std::filesystem::remove(file);
  const bool ok = raised && analyze_code == 3 && logm_code == 3 && generators_code == 3 && out_logm.str().empty();
  return {ok, std::string("logm raised: ") + (raised ? "yes" : "no") + ", CLI exit codes analyze/logm/generators " +
                  std::to_string(analyze_code) + "/" + std::to_string(logm_code) + "/" +
                  std::to_string(generators_code) + (out_logm.str().empty() ? ", no log printed" : ", LOG PRINTED")};
}

Outcome soundness_sweep() {
  std::mt19937_64 rng(20240611);
  int battery_pass = 0;
  int distinct = 0;
  int embeddable = 0;
  double worst_round_trip = 0.0;
  constexpr int kSamples = 1000;
  for (int t = 0; t < kSamples; ++t) {
    const auto sample = testing::next_sweep_sample(rng);
    const auto a = stochastic_exp(sample.b);
    const auto battery = run_battery(a);
    if (std::all_of(battery.begin(), battery.end(), [](const CheckResult& c) { return c.passed; })) ++battery_pass;
    worst_round_trip = std::max(worst_round_trip, max_diff(logm_principal(a.matrix()), sample.b));
    if (eigen_decompose(a.matrix()).is_distinct) {
      ++distinct;
      if (decide_embeddable(a).status == Status::Embeddable) ++embeddable;
    }
  }
  const bool ok = battery_pass == kSamples && embeddable == distinct && worst_round_trip < 1e-6;
  return {ok, "battery " + std::to_string(battery_pass) + "/" + std::to_string(kSamples) + ", embeddable " +
                  std::to_string(embeddable) + "/" + std::to_string(distinct) + " distinct, worst log/exp error " +
                  fmt("%.2e", worst_round_trip)};
}

Outcome optimality_oracle() {
  std::mt19937_64 rng(424242);
  std::uniform_int_distribution<std::size_t> dim(2, 6);
  std::uniform_real_distribution<double> scale(0.1, 3.0);
  double worst_lp = 0.0;
  double worst_gap = INFINITY;
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = dim(rng);
    const RowZeroMatrix l = validate_row_zero(testing::random_row_zero(rng, n, scale(rng)));
    for (std::size_t i = 0; i < n; ++i) {
      const double lp = testing::row_lp_minimum(l.matrix().row(i), i);
      worst_lp = std::max(worst_lp, std::abs(lp - 2.0 * decompose_row(l, i).l_n));
    }
    // A random feasible generator.
    const GeneratorMatrix g = validate_generator(testing::random_generator(rng, n, scale(rng)));
    worst_gap = std::min(worst_gap, optimality_gap(l, g));
  }
  const bool ok = worst_lp <= 1e-9 && worst_gap >= -1e-12;
  return {ok, "max |LP - 2 l_N| " + fmt("%.2e", worst_lp) + ", min optimality gap " + fmt("%.3e", worst_gap)};
}

Outcome error_bound_property() {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int cases = 0;
  int violations = 0;
  double tightest = INFINITY;
  for (int t = 0; t < 1000; ++t) {
    const auto sample = testing::next_sweep_sample(rng);
    const std::size_t n = sample.b.size();
    // Push one off-diagonal rate below zero, keeping rows at zero sum, and
    // shrink the push until exp(L) stays stochastic.
    const auto i = static_cast<std::size_t>(unit(rng) * static_cast<double>(n)) % n;
    const auto j = (i + 1 + static_cast<std::size_t>(unit(rng) * static_cast<double>(n - 1)) % (n - 1)) % n;
    double below = (0.05 + 0.5 * unit(rng)) * sample.scale;
    for (int halving = 0; halving < 30; ++halving, below *= 0.5) {
      const double push = sample.b(i, j) + below;
      RealMatrix l = sample.b;
      l(i, j) -= push;
      l(i, i) += push;
      const RealMatrix e = expm(l);
      if (*std::min_element(e.values().begin(), e.values().end()) < 0.0) continue;
      try {
        const auto r = regularize(validate_stochastic(e));
        ++cases;
        if (*r.exp_error_actual > exp_error_bound(r.epsilon) + 1e-9) ++violations;
        if (*r.exp_error_actual > 0.0) tightest = std::min(tightest, r.exp_error_bound / *r.exp_error_actual);
      } catch (const Error&) {
        continue;
      }
      break;
    }
  }
  const auto ex1 = regularize(fx::example_one());
  const double ex1_ratio = ex1.exp_error_bound / *ex1.exp_error_actual;
  tightest = std::min(tightest, ex1_ratio);
  const bool ok = cases > 0 && violations == 0;
  return {ok, std::to_string(violations) + " violations in " + std::to_string(cases) +
                  " perturbed cases; bound/actual on example one " + fmt("%.3f", ex1_ratio) + ", tightest " +
                  fmt("%.3f", tightest) + (tightest <= 3.0 ? " (within factor 3)" : " (not within factor 3)")};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"example one reproduction", example_one_reproduction},
      {"example one verdict", example_one_verdict},
      {"sigma reproduction", sigma_reproduction},
      {"L_s family", l_s_family},
      {"two-generator example", two_generator_example},
      {"5x5 cyclic example", five_cycle_example},
      {"negative-spectrum guard", negative_spectrum_guard},
      {"soundness sweep", soundness_sweep},
      {"optimality oracle", optimality_oracle},
      {"error-bound property", error_bound_property},
  };
  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    if (!o.passed) ++failures;
    std::printf("criterion %2zu %-26s %s  %s\n", k + 1, criteria[k].first, o.passed ? "PASS" : "FAIL",
                o.detail.c_str());
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
