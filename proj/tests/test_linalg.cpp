#include <doctest.h>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "markov/errors.hpp"
#include "markov/linalg.hpp"
#include "support/sampling.hpp"

using namespace markov;

namespace {

Eigen::MatrixXd to_eigen(const RealMatrix& m) {
  Eigen::MatrixXd e(m.size(), m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) e(i, j) = m(i, j);
  return e;
}

RealMatrix from_eigen(const Eigen::MatrixXd& e) {
  RealMatrix m(static_cast<std::size_t>(e.rows()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) m(i, j) = e(i, j);
  return m;
}

RealMatrix random_dense(std::mt19937_64& rng, std::size_t n, double scale) {
  std::normal_distribution<double> normal(0.0, scale);
  RealMatrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = normal(rng);
  return m;
}

// Largest distance from an eigenvalue in `ours` to its partner in `theirs`,
// pairing greedily by nearest neighbour.
double multiset_distance(std::vector<Complex> ours, std::vector<Complex> theirs) {
  double worst = 0.0;
  for (const auto& z : ours) {
    const auto it = std::min_element(theirs.begin(), theirs.end(),
                                     [&](const Complex& a, const Complex& b) { return std::abs(a - z) < std::abs(b - z); });
    worst = std::max(worst, std::abs(*it - z));
    theirs.erase(it);
  }
  return worst;
}

std::vector<Complex> eigen_oracle_values(const RealMatrix& m) {
  Eigen::EigenSolver<Eigen::MatrixXd> solver(to_eigen(m), false);
  std::vector<Complex> out;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) out.push_back(solver.eigenvalues()[i]);
  return out;
}

}  // namespace

TEST_CASE("eigenvalues agree with an independent solver on random dense matrices") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = 1 + static_cast<std::size_t>(t % 8);
    const RealMatrix m = random_dense(rng, n, 1.0 + t % 5);
    const auto spectrum = eigen_decompose(m);
    CAPTURE(t);
    CHECK(multiset_distance(spectrum.eigenvalues, eigen_oracle_values(m)) <= 1e-9 * (1.0 + op_norm(m)));
  }
}

TEST_CASE("eigenpairs have small residuals and a deterministic, conjugate-closed order") {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 2 + static_cast<std::size_t>(t % 7);
    const RealMatrix m = random_dense(rng, n, 2.0);
    const auto s = eigen_decompose(m);
    const ComplexMatrix mc = to_complex(m);
    for (std::size_t r = 0; r < n; ++r) {
      double res = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        Complex acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) acc += mc(i, j) * s.eigenvectors(j, r);
        res = std::max(res, std::abs(acc - s.eigenvalues[r] * s.eigenvectors(i, r)));
      }
      CHECK(res <= 1e-9 * op_norm(m));
    }
    for (std::size_t r = 0; r < n; ++r) {
      const Complex z = s.eigenvalues[r];
      if (z.imag() != 0.0) {
        CHECK(std::count(s.eigenvalues.begin(), s.eigenvalues.end(), std::conj(z)) == 1);
      }
      if (r + 1 < n) {
        const Complex w = s.eigenvalues[r + 1];
        const bool ordered = std::abs(z) > std::abs(w) || (std::abs(z) == std::abs(w) && std::arg(z) <= std::arg(w));
        CHECK(ordered);
      }
    }
    CHECK(s.basis_condition >= 1.0);
  }
}

TEST_CASE("spectrum is invariant under permutation similarity") {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 2 + static_cast<std::size_t>(t % 6);
    const RealMatrix m = random_dense(rng, n, 1.0);
    std::vector<std::size_t> p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = i;
    std::shuffle(p.begin(), p.end(), rng);
    RealMatrix q(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) q(i, j) = m(p[i], p[j]);
    CHECK(multiset_distance(eigen_decompose(m).eigenvalues, eigen_decompose(q).eigenvalues) <= 1e-10 * op_norm(m));
  }
}

TEST_CASE("eigen_decompose examples") {
  const auto id = eigen_decompose(RealMatrix::identity(3));
  CHECK_FALSE(id.is_distinct);
  for (const auto& z : id.eigenvalues) CHECK(z == Complex(1.0, 0.0));

  const auto ex = eigen_decompose(RealMatrix{{0.30, 0.45, 0.25}, {0.14, 0.84, 0.02}, {0.14, 0.52, 0.34}});
  CHECK(ex.is_distinct);
  CHECK(std::abs(ex.eigenvalues[0] - 1.0) < 1e-12);
  CHECK(std::abs(ex.eigenvalues[1] - 0.32) < 1e-12);
  CHECK(std::abs(ex.eigenvalues[2] - 0.16) < 1e-12);

  const auto cyc = eigen_decompose(RealMatrix{{-4, 4, 0}, {0, -4, 4}, {4, 0, -4}});
  CHECK(std::abs(cyc.eigenvalues[0] - Complex(-6, -3.4641)) < 5e-5);
  CHECK(std::abs(cyc.eigenvalues[1] - Complex(-6, 3.4641)) < 5e-5);
  CHECK(std::abs(cyc.eigenvalues[2]) < 1e-12);
}

TEST_CASE("a defective matrix has an ill-conditioned eigenvector basis") {
  const auto s = eigen_decompose(RealMatrix{{1.0, 1.0}, {0.0, 1.0}});
  CHECK_FALSE(s.is_distinct);
  CHECK(s.basis_condition > kBasisConditionLimit);
}

TEST_CASE("expm matches closed forms") {
  CHECK(expm(RealMatrix(3)) == RealMatrix::identity(3));
  const RealMatrix e = expm(RealMatrix{{0.0, 1.0}, {0.0, 0.0}});
  CHECK(max_abs_entry(e - RealMatrix{{1.0, 1.0}, {0.0, 1.0}}) < 1e-15);
  for (const double t : {0.1, 1.0, 3.0, 10.0}) {
    const RealMatrix r = expm(RealMatrix{{0.0, -t}, {t, 0.0}});
    const RealMatrix want{{std::cos(t), -std::sin(t)}, {std::sin(t), std::cos(t)}};
    CHECK(max_abs_entry(r - want) < 1e-12 * (1.0 + t));
  }
  const RealMatrix d = expm(RealMatrix{{-2.0, 0.0}, {0.0, 0.5}});
  CHECK(std::abs(d(0, 0) - std::exp(-2.0)) < 1e-15);
  CHECK(std::abs(d(1, 1) - std::exp(0.5)) < 1e-15);
}

TEST_CASE("expm agrees with an independent implementation") {
  std::mt19937_64 rng(14);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 1 + static_cast<std::size_t>(t % 8);
    const RealMatrix m = random_dense(rng, n, 0.05 * (1 + t % 40));
    const RealMatrix ours = expm(m);
    const Eigen::MatrixXd theirs = to_eigen(m).exp();
    CAPTURE(t);
    CHECK(op_norm(ours - from_eigen(theirs)) <= 1e-12 * std::max(1.0, op_norm(from_eigen(theirs))) * static_cast<double>(n));
  }
}

TEST_CASE("expm preserves row sums of generators and det(exp M) = exp(tr M)") {
  std::mt19937_64 rng(15);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 2 + static_cast<std::size_t>(t % 7);
    const RealMatrix g = testing::random_generator(rng, n, 0.2 + 0.05 * (t % 60));
    const RealMatrix a = expm(g);
    for (std::size_t i = 0; i < n; ++i) {
      double sum = 0.0;
      for (std::size_t j = 0; j < n; ++j) sum += a(i, j);
      CHECK(std::abs(sum - 1.0) < 1e-13 * static_cast<double>(n));
    }
    const RealMatrix m = random_dense(rng, n, 1.0);
    CHECK(determinant(expm(m)) == doctest::Approx(std::exp(trace(m))).epsilon(1e-9));
  }
}

TEST_CASE("expm refuses huge arguments") {
  CHECK_THROWS_AS(expm(RealMatrix{{-2e4, 2e4}, {0.0, 0.0}}), OverflowGuard);
  CHECK_NOTHROW(expm(RealMatrix{{-5e3, 5e3}, {0.0, 0.0}}));
}

TEST_CASE("logm_principal examples") {
  CHECK(max_abs_entry(logm_principal(RealMatrix::identity(4))) == 0.0);

  const RealMatrix l = logm_principal(RealMatrix{{0.30, 0.45, 0.25}, {0.14, 0.84, 0.02}, {0.14, 0.52, 0.34}});
  CHECK(std::abs(l(1, 2) - -0.0683) < 5e-5);

  const double c = 2.0 * std::numbers::pi / std::sqrt(3.0);
  const RealMatrix neg = expm(RealMatrix{{-c, c, 0.0}, {0.0, -c, c}, {c, 0.0, -c}});
  CHECK_THROWS_AS(logm_principal(neg), SpectrumOnClosedNegativeAxis);
  CHECK_THROWS_AS(logm_principal(RealMatrix{{0.5, 0.5}, {0.5, 0.5}}), SpectrumOnClosedNegativeAxis);
}

TEST_CASE("logm_principal agrees with an independent implementation") {
  std::mt19937_64 rng(16);
  int compared = 0;
  for (int t = 0; t < 300 && compared < 150; ++t) {
    const std::size_t n = 1 + static_cast<std::size_t>(t % 7);
    const RealMatrix m = RealMatrix::identity(n) + random_dense(rng, n, 0.3);
    const auto s = eigen_decompose(m);
    if (std::any_of(s.eigenvalues.begin(), s.eigenvalues.end(),
                    [](const Complex& z) { return distance_to_closed_negative_axis(z) < 0.05; })) {
      continue;
    }
    ++compared;
    const RealMatrix ours = logm_principal(m);
    const Eigen::MatrixXd theirs = to_eigen(m).log();
    CAPTURE(t);
    CHECK(op_norm(ours - from_eigen(theirs)) <= 1e-9 * (1.0 + op_norm(ours)));
    CHECK(op_norm(expm(ours) - m) <= 1e-9 * op_norm(m));
  }
  CHECK(compared >= 100);
}

TEST_CASE("log of exp recovers generators inside the principal strip") {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 300; ++t) {
    const auto sample = testing::next_sweep_sample(rng);
    const RealMatrix l = logm_principal(expm(sample.b));
    CHECK(op_norm(l - sample.b) < 1e-6 * (1.0 + op_norm(sample.b)));
    for (const auto& z : eigen_decompose(l).eigenvalues) CHECK(std::abs(z.imag()) < std::numbers::pi);
  }
}

TEST_CASE("logm handles defective matrices through the Schur route") {
  const RealMatrix jordan_log = logm_principal(RealMatrix{{1.0, 1.0}, {0.0, 1.0}});
  CHECK(max_abs_entry(jordan_log - RealMatrix{{0.0, 1.0}, {0.0, 0.0}}) < 1e-12);

  // A generator with a 2x2 Jordan block for eigenvalue -1.
  const RealMatrix b{{-1.0, 1.0, 0.0}, {0.0, -1.0, 1.0}, {0.0, 0.0, 0.0}};
  CHECK(max_abs_entry(logm_principal(expm(b)) - b) < 1e-9);
}

TEST_CASE("determinant and inverse") {
  CHECK(determinant(RealMatrix{{2.0, 1.0}, {1.0, 3.0}}) == doctest::Approx(5.0));
  CHECK(determinant(RealMatrix{{1.0, 2.0}, {2.0, 4.0}}) == 0.0);
  const RealMatrix a{{4.0, 7.0}, {2.0, 6.0}};
  CHECK(max_abs_entry(a * inverse(a) - RealMatrix::identity(2)) < 1e-15);
  CHECK_THROWS_AS(inverse(RealMatrix{{1.0, 2.0}, {2.0, 4.0}}), NotInvertible);
}

TEST_CASE("distance to the closed negative axis") {
  CHECK(distance_to_closed_negative_axis(Complex(-3.0, 0.5)) == 0.5);
  CHECK(distance_to_closed_negative_axis(Complex(-3.0, 0.0)) == 0.0);
  CHECK(distance_to_closed_negative_axis(Complex(3.0, 4.0)) == 5.0);
  CHECK(distance_to_closed_negative_axis(Complex(0.0, 0.0)) == 0.0);
}
