#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>

#include "markov/matrix.hpp"

using namespace markov;

TEST_CASE("construction rejects ragged, empty and non-finite input") {
  CHECK_THROWS_AS(RealMatrix::from_rows({{1.0, 2.0}, {3.0}}), std::invalid_argument);
  CHECK_THROWS_AS(RealMatrix::from_rows({}), std::invalid_argument);
  CHECK_THROWS_AS((RealMatrix{{1.0, std::numeric_limits<double>::quiet_NaN()}, {0.0, 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS((RealMatrix{{1.0, std::numeric_limits<double>::infinity()}, {0.0, 1.0}}), std::invalid_argument);
}

TEST_CASE("op_norm is the largest absolute row sum") {
  CHECK(op_norm(RealMatrix(3)) == 0.0);
  CHECK(op_norm(RealMatrix{{0.30, 0.45, 0.25}, {0.14, 0.84, 0.02}, {0.14, 0.52, 0.34}}) == doctest::Approx(1.0));
  const RealMatrix printed_l{{-1.5272, 0.5991, 0.9281}, {0.3054, -0.2371, -0.0683}, {0.3054, 0.9023, -1.2078}};
  CHECK(std::abs(op_norm(printed_l) - 3.0544) < 1e-3);
  CHECK(one_norm(RealMatrix{{1.0, -2.0}, {3.0, 4.0}}) == 6.0);
  CHECK(op_norm(RealMatrix{{1.0, -2.0}, {3.0, 4.0}}) == 7.0);
}

TEST_CASE("arithmetic") {
  const RealMatrix a{{1.0, 2.0}, {3.0, 4.0}};
  const RealMatrix b{{0.0, 1.0}, {1.0, 0.0}};
  CHECK(a * b == RealMatrix{{2.0, 1.0}, {4.0, 3.0}});
  CHECK(a + b == RealMatrix{{1.0, 3.0}, {4.0, 4.0}});
  CHECK(a - a == RealMatrix(2));
  CHECK(2.0 * a == RealMatrix{{2.0, 4.0}, {6.0, 8.0}});
  CHECK(trace(a) == 5.0);
  CHECK(a * RealMatrix::identity(2) == a);
  CHECK(max_abs_entry(-a) == 4.0);
}

TEST_CASE("complex helpers") {
  const ComplexMatrix z{{Complex(1, 2), Complex(0, -1)}, {Complex(3, 0), Complex(0, 0)}};
  CHECK(max_abs_imag(z) == 2.0);
  CHECK(real_part(z) == RealMatrix{{1.0, 0.0}, {3.0, 0.0}});
  const ComplexMatrix h = conjugate_transpose(z);
  CHECK(h(0, 1) == Complex(3, 0));
  CHECK(h(1, 0) == Complex(0, 1));
  CHECK(real_part(to_complex(RealMatrix{{1.0, 2.0}, {3.0, 4.0}})) == RealMatrix{{1.0, 2.0}, {3.0, 4.0}});
}
