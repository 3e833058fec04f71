#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "markov/errors.hpp"
#include "markov/fixtures.hpp"
#include "markov/linalg.hpp"
#include "markov/stochastic.hpp"
#include "support/sampling.hpp"

using namespace markov;

TEST_CASE("validate_stochastic examples") {
  CHECK(validate_stochastic(RealMatrix::identity(3)).matrix() == RealMatrix::identity(3));
  const RealMatrix ex{{0.30, 0.45, 0.25}, {0.14, 0.84, 0.02}, {0.14, 0.52, 0.34}};
  const auto a = validate_stochastic(ex);
  CHECK(a.matrix() == ex);
  CHECK(a.max_repair() == 0.0);
  CHECK_THROWS_AS(validate_stochastic(RealMatrix{{0.5, 0.4}, {0.5, 0.5}}), NotStochastic);
  CHECK_THROWS_AS(validate_stochastic(RealMatrix{{1.1, -0.1}, {0.5, 0.5}}), NotStochastic);
}

TEST_CASE("error messages name the offending location") {
  try {
    validate_stochastic(RealMatrix{{1.0, 0.0}, {0.45, 0.45}});
    FAIL("expected NotStochastic");
  } catch (const NotStochastic& e) {
    CHECK(std::string(e.what()).find("row 2") != std::string::npos);
  }
}

TEST_CASE("validate_generator examples") {
  CHECK(validate_generator(RealMatrix(3)).matrix() == RealMatrix(3));
  CHECK_NOTHROW(validate_generator(fixtures::l_s(0.5).matrix()));
  const RealMatrix printed_l{{-1.5272, 0.5991, 0.9281}, {0.3054, -0.2371, -0.0683}, {0.3054, 0.9023, -1.2078}};
  CHECK_THROWS_AS(validate_generator(printed_l), NotGenerator);
  CHECK_THROWS_AS(validate_generator(RealMatrix{{-1.0, 0.5}, {0.0, 0.0}}), NotGenerator);
}

TEST_CASE("validate_row_zero moves the residual onto the diagonal") {
  const auto l = validate_row_zero(RealMatrix{{-1.0, 0.4, 0.6 + 1e-12}, {0.0, 0.0, 0.0}, {2.0, -3.0, 1.0}});
  CHECK(l.matrix()(0, 0) == -(0.4 + (0.6 + 1e-12)));
  CHECK(l.matrix()(0, 1) == 0.4);
  CHECK_THROWS_AS(validate_row_zero(RealMatrix{{-1.0, 0.9}, {0.0, 0.0}}), NotRowZero);
}

TEST_CASE("generator decomposition B = C - delta I") {
  const auto g = validate_generator(RealMatrix{{-3.0, 1.0, 2.0}, {0.5, -0.5, 0.0}, {0.0, 0.0, 0.0}});
  CHECK(g.delta() == 3.0);
  const RealMatrix c = g.nonnegative_part();
  for (const double v : c.values()) CHECK(v >= 0.0);
  CHECK(c(0, 0) == 0.0);
  CHECK(c(1, 1) == 2.5);
}

TEST_CASE("repair stays within tolerance and is idempotent") {
  std::mt19937_64 rng(21);
  const Tolerances tol;
  std::uniform_real_distribution<double> noise(-0.4, 0.4);
  for (int t = 0; t < 500; ++t) {
    const std::size_t n = 1 + static_cast<std::size_t>(t % 8);
    RealMatrix raw = validate_stochastic(expm(testing::random_generator(rng, n, 1.0))).matrix();
    // Perturb by less than half of each tolerance so the input stays valid.
    for (std::size_t i = 0; i < n; ++i) {
      raw(i, 0) += noise(rng) * tol.row_sum;
      for (std::size_t j = 0; j < n; ++j) {
        if (raw(i, j) < tol.entry) raw(i, j) = -0.4 * tol.entry;
      }
    }
    const auto a = validate_stochastic(raw);
    for (std::size_t i = 0; i < n; ++i) {
      double sum = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        CHECK(a.matrix()(i, j) >= 0.0);
        CHECK(std::abs(a.matrix()(i, j) - raw(i, j)) <= tol.row_sum + static_cast<double>(n) * tol.entry);
        sum += a.matrix()(i, j);
      }
      CHECK(std::abs(sum - 1.0) <= 2.0 * static_cast<double>(n) * std::numeric_limits<double>::epsilon());
    }
    CHECK(validate_stochastic(a.matrix()).matrix() == a.matrix());

    RealMatrix graw = testing::random_generator(rng, n, 2.0);
    graw(0, 0) += noise(rng) * tol.row_sum;
    const auto g = validate_generator(graw);
    CHECK(validate_generator(g.matrix()).matrix() == g.matrix());
    CHECK(g.max_repair() <= tol.row_sum + tol.entry);
  }
}

TEST_CASE("exponentials of generators are stochastic at every time") {
  std::mt19937_64 rng(22);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 2 + static_cast<std::size_t>(t % 7);
    const RealMatrix g = testing::random_generator(rng, n, 3.0);
    for (const double time : {0.0, 0.1, 1.0, 5.0, 20.0}) CHECK_NOTHROW(validate_stochastic(expm(time * g)));
  }
}

TEST_CASE("tolerances must be positive") {
  Tolerances bad;
  bad.entry = 0.0;
  CHECK_THROWS_AS(validate_stochastic(RealMatrix::identity(2), bad), std::invalid_argument);
}
