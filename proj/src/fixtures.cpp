#include "markov/fixtures.hpp"

#include <algorithm>
#include <stdexcept>

#include "markov/linalg.hpp"

namespace markov::fixtures {

StochasticMatrix example_one() {
  return validate_stochastic(RealMatrix{{0.30, 0.45, 0.25}, {0.14, 0.84, 0.02}, {0.14, 0.52, 0.34}});
}

StochasticMatrix two_state_example() {
  return validate_stochastic(RealMatrix{{1.0 / 3.0, 2.0 / 3.0}, {2.0 / 3.0, 1.0 / 3.0}});
}

RowZeroMatrix l_s(double s) {
  const double d = -1.0 - s;
  return validate_row_zero(RealMatrix{{d, 1.0, s}, {s, d, 1.0}, {1.0, s, d}});
}

bool l_s_exponential_nonnegative(double s) {
  const RealMatrix a = expm(l_s(s).matrix());
  return std::all_of(a.values().begin(), a.values().end(), [](double v) { return v >= 0.0; });
}

double sigma_bisect(double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("bisection tolerance must be positive");
  double lo = -1.0;
  double hi = 0.0;
  for (int it = 0; it < 80 && hi - lo > tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (l_s_exponential_nonnegative(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

GeneratorMatrix cyclic_generator(std::size_t n, double c) {
  if (n < 2) throw std::invalid_argument("cyclic generator needs n >= 2");
  if (!(c > 0.0)) throw std::invalid_argument("cyclic generator needs c > 0");
  RealMatrix b(n);
  for (std::size_t i = 0; i < n; ++i) {
    b(i, i) = -c;
    b(i, (i + 1) % n) = c;
  }
  return validate_generator(b);
}

namespace printed {

RealMatrix example_one_log() {
  return {{-1.5272, 0.5991, 0.9281}, {0.3054, -0.2371, -0.0683}, {0.3054, 0.9023, -1.2078}};
}

RealMatrix example_one_generator() {
  return {{-1.5272, 0.5991, 0.9281}, {0.3054, -0.3054, 0.0}, {0.3054, 0.9023, -1.2078}};
}

RealMatrix example_one_regularized() {
  return {{0.3000, 0.4383, 0.2617}, {0.1400, 0.8046, 0.0554}, {0.1400, 0.5057, 0.3543}};
}

RealMatrix two_generator_matrix() {
  return {{0.3318, 0.3337, 0.3346}, {0.3346, 0.3318, 0.3337}, {0.3337, 0.3346, 0.3318}};
}

RealMatrix two_generator_log() {
  return {{-4.0, 0.3724, 3.6276}, {3.6276, -4.0, 0.3724}, {0.3724, 3.6276, -4.0}};
}

std::array<Complex, 5> cyclic_five_eigenvalues() {
  return {Complex(-7.2361, -2.3511), Complex(-7.2361, 2.3511), Complex(-2.7639, -3.8042),
          Complex(-2.7639, 3.8042), Complex(0.0, 0.0)};
}

}  // namespace printed

}  // namespace markov::fixtures
