#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "markov/fixtures.hpp"
#include "markov/linalg.hpp"
#include "markov/regularization.hpp"
#include "support/lp_oracle.hpp"
#include "support/sampling.hpp"

using namespace markov;
namespace fx = markov::fixtures;

TEST_CASE("row decomposition") {
  const auto l = validate_row_zero(RealMatrix{{-1.5, 2.0, -0.5, 0.0}, {0, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}});
  const auto d = decompose_row(l, 0);
  CHECK(d.positive == std::vector<std::size_t>{1, 3});
  CHECK(d.negative == std::vector<std::size_t>{2});
  CHECK(d.l_p == 2.0);
  CHECK(d.l_n == 0.5);
  CHECK(d.l[0] == d.l_n - d.l_p);
  CHECK_THROWS_AS(decompose_row(l, 4), std::out_of_range);
}

TEST_CASE("diagonal adjustment examples") {
  const auto g = fx::cyclic_generator(4, 2.0);
  CHECK(diagonal_adjust(g.row_zero()).matrix() == g.matrix());

  const auto l = validate_row_zero(logm_principal(fx::example_one().matrix()));
  const auto b = diagonal_adjust(l);
  CHECK(max_abs_entry(b.matrix() - fx::printed::example_one_generator()) < 5e-5);
  CHECK(b.matrix()(1, 2) == 0.0);
  CHECK(std::abs(b.matrix()(1, 1) - -0.3054) < 5e-5);
  const double eps = op_norm(l.matrix() - b.matrix());
  CHECK(std::abs(eps - 0.1366) < 1e-4);
  CHECK(eps == doctest::Approx(2.0 * decompose_row(l, 1).l_n));
}

TEST_CASE("zero entries count as kept") {
  const auto l = validate_row_zero(RealMatrix{{-1.0, 0.0, 1.0}, {0.0, 0.0, 0.0}, {1.0, -2.0, 1.0}});
  const auto d = decompose_row(l, 0);
  CHECK(d.positive == std::vector<std::size_t>{1, 2});
  const auto b = diagonal_adjust(l);
  CHECK(b.matrix()(2, 1) == 0.0);
  CHECK(b.matrix()(2, 2) == -1.0);
}

TEST_CASE("optimality gap") {
  const auto l = validate_row_zero(logm_principal(fx::example_one().matrix()));
  CHECK(optimality_gap(l, diagonal_adjust(l)) == 0.0);
  const double gap = optimality_gap(l, validate_generator(RealMatrix(3)));
  CHECK(gap == doctest::Approx(op_norm(l.matrix()) - 0.1366).epsilon(1e-3));
  CHECK(gap > 0.0);
}

TEST_CASE("diagonal adjustment is optimal row by row against an LP oracle") {
  std::mt19937_64 rng(51);
  for (int t = 0; t < 400; ++t) {
    const std::size_t n = 2 + static_cast<std::size_t>(t % 5);
    const auto l = validate_row_zero(testing::random_row_zero(rng, n, 0.1 + 0.01 * (t % 200)));
    const auto b = diagonal_adjust(l);
    double worst_row = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double lp = testing::row_lp_minimum(l.matrix().row(i), i);
      const double cost = 2.0 * decompose_row(l, i).l_n;
      CHECK(std::abs(lp - cost) <= 1e-9);
      double row_cost = 0.0;
      for (std::size_t j = 0; j < n; ++j) row_cost += std::abs(l.matrix()(i, j) - b.matrix()(i, j));
      CHECK(row_cost == doctest::Approx(cost).epsilon(1e-12));
      worst_row = std::max(worst_row, row_cost);
    }
    CHECK(op_norm(l.matrix() - b.matrix()) == worst_row);
    const auto g = validate_generator(testing::random_generator(rng, n, 0.1 + 0.02 * (t % 100)));
    CHECK(optimality_gap(l, g) >= -1e-12);
  }
}

TEST_CASE("the nearest generator need not be unique") {
  // Row 1 carries the largest cost; row 2 can be moved without changing
  // the operator-norm distance.
  const auto l = validate_row_zero(RealMatrix{{0.0, 1.0, -1.0}, {0.5, -0.6, 0.1}, {0.0, 0.0, 0.0}});
  const auto b = diagonal_adjust(l);
  CHECK(op_norm(l.matrix() - b.matrix()) == doctest::Approx(2.0));
  RealMatrix other = b.matrix();
  other(1, 0) += 0.3;
  other(1, 1) -= 0.3;
  const auto g = validate_generator(other);
  CHECK(g.matrix() != b.matrix());
  CHECK(optimality_gap(l, g) == doctest::Approx(0.0));
}

TEST_CASE("error bound") {
  CHECK(exp_error_bound(0.0) == 0.0);
  CHECK(exp_error_bound(0.1366) == doctest::Approx(0.1464).epsilon(1e-3));
  CHECK(exp_error_bound(10.0) == 2.0);
  CHECK_THROWS_AS(exp_error_bound(-1e-3), std::invalid_argument);
  CHECK_THROWS_AS(exp_error_bound(std::nan("")), std::invalid_argument);
  double prev = 0.0;
  for (double e = 0.0; e < 5.0; e += 0.01) {
    const double b = exp_error_bound(e);
    CHECK(b >= prev);
    if (e <= std::log(3.0)) CHECK(b <= exp_error_bound_linear(e) + 1e-15);
    prev = b;
  }
}

TEST_CASE("regularize examples") {
  // Zero rates come back from the logarithm as rounding-level negatives.
  const auto g = fx::cyclic_generator(3, 1.0);
  const auto a = validate_stochastic(expm(g.matrix()));
  const auto r0 = regularize(a);
  CHECK(r0.epsilon < 1e-12);
  CHECK(max_abs_entry(r0.a_tilde - a.matrix()) < 1e-12);
  const auto dense = regularize(validate_stochastic(expm(fx::l_s(0.5).matrix())));
  CHECK(dense.epsilon == 0.0);
  CHECK(*dense.exp_error_actual < 1e-13);

  const auto r1 = regularize(fx::example_one());
  CHECK(max_abs_entry(r1.a_tilde - fx::printed::example_one_regularized()) < 5e-5);
  CHECK(max_abs_entry(fx::example_one().matrix() - r1.a_tilde) < 0.036);
  CHECK(r1.exp_error_bound == doctest::Approx(0.1464).epsilon(1e-3));
  REQUIRE(r1.exp_error_actual.has_value());
  CHECK(*r1.exp_error_actual <= r1.exp_error_bound);

  const auto r2 = regularize(validate_stochastic(expm(fx::l_s(-0.3).matrix())));
  CHECK(r2.epsilon > 0.0);
  CHECK(*r2.exp_error_actual <= r2.exp_error_bound + 1e-9);

  const auto r3 = regularize(fx::l_s(-0.3));
  CHECK_FALSE(r3.exp_error_actual.has_value());
  CHECK(r3.epsilon == doctest::Approx(0.6));
}

TEST_CASE("error bound holds for perturbed generators") {
  std::mt19937_64 rng(52);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int cases = 0;
  for (int t = 0; t < 400; ++t) {
    const auto sample = testing::next_sweep_sample(rng);
    const std::size_t n = sample.b.size();
    RealMatrix l = sample.b;
    const double push = l(0, 1) + 0.05 * unit(rng) * sample.scale;
    l(0, 1) -= push;
    l(0, 0) += push;
    const RealMatrix e = expm(l);
    if (*std::min_element(e.values().begin(), e.values().end()) < 0.0) continue;
    ++cases;
    const auto r = regularize(validate_stochastic(e));
    CHECK(r.epsilon > 0.0);
    CHECK(*r.exp_error_actual <= exp_error_bound(r.epsilon) + 1e-9);
    CHECK(r.epsilon == doctest::Approx(2.0 * (push - sample.b(0, 1))).epsilon(1e-6));
    (void)n;
  }
  CHECK(cases > 100);
}
