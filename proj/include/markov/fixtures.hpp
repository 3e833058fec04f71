#pragma once

#include <array>
#include <cstddef>

#include "markov/matrix.hpp"
#include "markov/stochastic.hpp"

namespace markov::fixtures {

/// 3x3 Markov matrix with eigenvalues exactly 1, 0.32 and 0.16 whose
/// principal logarithm has one negative off-diagonal entry.
StochasticMatrix example_one();

/// [[1/3, 2/3], [2/3, 1/3]], spectrum {1, -1/3}.
StochasticMatrix two_state_example();

/// Rows (-1-s, 1, s) shifted cyclically. A generator iff s >= 0.
RowZeroMatrix l_s(double s);

/// True iff expm(l_s(s)) has no negative entry (exact sign test).
bool l_s_exponential_nonnegative(double s);

/// Smallest s in [-1, 0] with expm(l_s(s)) non-negative, by bisection to
/// within tol (at most 80 halvings). Returns the non-negative end of the
/// final bracket.
double sigma_bisect(double tol);

/// c (P - I) with P the cyclic shift e_i -> e_{i+1}. Throws
/// std::invalid_argument unless n >= 2 and c > 0.
GeneratorMatrix cyclic_generator(std::size_t n, double c);

/// Four-decimal values printed alongside the examples, for comparison only.
namespace printed {

RealMatrix example_one_log();
RealMatrix example_one_generator();
RealMatrix example_one_regularized();
/// expm(cyclic_generator(3, 4)).
RealMatrix two_generator_matrix();
/// Its principal logarithm.
RealMatrix two_generator_log();
/// Eigenvalues of cyclic_generator(5, 4), in spectral order.
std::array<Complex, 5> cyclic_five_eigenvalues();

}  // namespace printed

}  // namespace markov::fixtures
