#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <variant>

#include "markov/embeddability.hpp"
#include "markov/fixtures.hpp"
#include "markov/linalg.hpp"
#include "support/sampling.hpp"

using namespace markov;
namespace fx = markov::fixtures;

namespace {

StochasticMatrix exp_of(const RealMatrix& b) { return validate_stochastic(expm(b)); }

const StochasticMatrix& cyclic_permutation() {
  static const StochasticMatrix p = validate_stochastic(RealMatrix{{0, 1, 0}, {0, 0, 1}, {1, 0, 0}});
  return p;
}

}  // namespace

TEST_CASE("determinant range") {
  const auto id = check_det_range(validate_stochastic(RealMatrix::identity(3)));
  CHECK(id.passed);
  CHECK(std::get<DeterminantWitness>(*id.certificate).value == doctest::Approx(1.0));

  const auto ex = check_det_range(fx::example_one());
  CHECK(ex.passed);
  CHECK(std::get<DeterminantWitness>(*ex.certificate).value == doctest::Approx(0.0512).epsilon(1e-10));

  // exp(L_s) for s < -1 is not stochastic, but its determinant exceeds one.
  const auto big = check_det_range(expm(fx::l_s(-1.2).matrix()));
  CHECK_FALSE(big.passed);
  CHECK(std::get<DeterminantWitness>(*big.certificate).value == doctest::Approx(std::exp(0.6)));
  CHECK(big.margin < 0.0);
}

TEST_CASE("zero and negative spectrum") {
  const auto two = check_zero_and_negative_spectrum(fx::two_state_example());
  CHECK_FALSE(two.passed);
  CHECK(std::abs(std::get<EigenvalueWitness>(*two.certificate).value - Complex(-1.0 / 3.0, 0.0)) < 1e-14);

  const double c = 2.0 * std::numbers::pi / std::sqrt(3.0);
  CHECK(check_zero_and_negative_spectrum(exp_of(fx::cyclic_generator(3, c).matrix())).passed);
  CHECK(check_zero_and_negative_spectrum(validate_stochastic(RealMatrix::identity(3))).passed);

  const auto singular = check_zero_and_negative_spectrum(validate_stochastic(RealMatrix{{0.5, 0.5}, {0.5, 0.5}}));
  CHECK_FALSE(singular.passed);
  CHECK(std::abs(std::get<EigenvalueWitness>(*singular.certificate).value) < 1e-12);
}

TEST_CASE("positivity transitivity") {
  CHECK(check_positivity_transitivity(fx::example_one()).passed);
  const auto p = check_positivity_transitivity(cyclic_permutation());
  CHECK_FALSE(p.passed);
  const auto t = std::get<IndexTriple>(*p.certificate);
  CHECK(t.i == 0);
  CHECK(t.j == 1);
  CHECK(t.k == 2);
}

TEST_CASE("Elfving") {
  CHECK(check_elfving(validate_stochastic(RealMatrix::identity(3))).passed);
  CHECK(check_elfving(fx::example_one()).passed);
  const auto p = check_elfving(cyclic_permutation());
  CHECK_FALSE(p.passed);
  CHECK(std::abs(std::abs(std::get<EigenvalueWitness>(*p.certificate).value) - 1.0) < 1e-12);
}

TEST_CASE("Runnenberg spiral") {
  const auto fail = check_runnenberg(exp_of(fx::l_s(-0.3).matrix()));
  CHECK_FALSE(fail.passed);
  const Complex w = std::get<EigenvalueWitness>(*fail.certificate).value;
  CHECK(std::abs(w) == doctest::Approx(std::exp(-1.05)).epsilon(1e-10));
  CHECK(std::abs(std::arg(w)) == doctest::Approx(std::sqrt(3.0) * 1.3 / 2).epsilon(1e-10));
  const auto d = runnenberg_datum(w, 3);
  CHECK(d.bound == doctest::Approx(std::exp(-1.1258 * std::sqrt(3.0))).epsilon(1e-3));
  CHECK(fail.runnenberg.size() == 3);

  CHECK(check_runnenberg(exp_of(fx::l_s(0.5).matrix())).passed);

  const auto two = check_runnenberg(fx::two_state_example());
  CHECK(two.passed);
  CHECK_FALSE(two.applicable);

  for (const double x : {0.1, 0.5, 1.0}) {
    const auto r = runnenberg_datum(Complex(x, 0.0), 5);
    CHECK(r.theta == 0.0);
    CHECK(r.bound == 1.0);
  }
}

TEST_CASE("conjugate eigenvalues carry the same spiral data") {
  for (const Complex z : {Complex(0.2, 0.3), Complex(-0.1, 0.05), Complex(0.5, -0.6)}) {
    const auto a = runnenberg_datum(z, 4);
    const auto b = runnenberg_datum(std::conj(z), 4);
    CHECK(a.r == b.r);
    CHECK(a.theta == b.theta);
    CHECK(a.bound == b.bound);
    CHECK(a.theta >= 0.0);
    CHECK(a.theta <= std::numbers::pi);
    CHECK(a.bound > 0.0);
    CHECK(a.bound <= 1.0);
  }
}

TEST_CASE("battery examples") {
  const auto id = run_battery(validate_stochastic(RealMatrix::identity(3)));
  REQUIRE(id.size() == 5);
  for (const auto& c : id) CHECK(c.passed);
  CHECK(id[0].id == CheckId::DeterminantRange);
  CHECK(id[4].id == CheckId::Runnenberg);

  for (const auto& c : run_battery(fx::example_one())) CHECK(c.passed);

  for (const double s : {-0.5712, -0.5, -0.3, -0.1, -0.01}) {
    const auto battery = run_battery(exp_of(fx::l_s(s).matrix()));
    const bool any_failed = std::any_of(battery.begin(), battery.end(), [](const CheckResult& c) { return !c.passed; });
    CAPTURE(s);
    CHECK(any_failed);
  }
}

TEST_CASE("failed checks always carry a certificate and a negative margin") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = 2 + static_cast<std::size_t>(t % 5);
    RealMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) {
      double sum = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        m(i, j) = unit(rng) < 0.3 ? 0.0 : unit(rng);
        sum += m(i, j);
      }
      if (sum == 0.0) {
        m(i, i) = 1.0;
        sum = 1.0;
      }
      for (std::size_t j = 0; j < n; ++j) m(i, j) /= sum;
    }
    for (const auto& c : run_battery(validate_stochastic(m))) {
      if (!c.passed) {
        CHECK(c.certificate.has_value());
        CHECK(c.margin <= 0.0);
      }
    }
  }
}

TEST_CASE("soundness: every check passes on exponentials of generators") {
  std::mt19937_64 rng(32);
  std::uniform_int_distribution<std::size_t> dim(3, 8);
  for (int t = 0; t < 1000; ++t) {
    const RealMatrix g = testing::random_generator(rng, dim(rng), 1.0);
    for (const double time : {0.1, 1.0, 5.0}) {
      const auto battery = run_battery(exp_of(time * g));
      for (const auto& c : battery) {
        CAPTURE(t);
        CAPTURE(time);
        CAPTURE(c.name());
        CHECK(c.passed);
      }
    }
  }
}

TEST_CASE("battery depends only on the eigenvalue multiset and sign pattern") {
  const auto a = fx::example_one();
  const auto spectrum = eigen_decompose(a.matrix()).eigenvalues;
  const auto direct = run_battery(a);
  const auto supplied = run_battery(a, spectrum);
  REQUIRE(direct.size() == supplied.size());
  for (std::size_t k = 0; k < direct.size(); ++k) {
    CHECK(direct[k].passed == supplied[k].passed);
    CHECK(direct[k].margin == supplied[k].margin);
  }
}
