#include "markov/regularization.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "markov/linalg.hpp"

namespace markov {

RowDecomposition decompose_row(const RowZeroMatrix& l, std::size_t i) {
  if (i >= l.size()) throw std::out_of_range("row index out of range");
  RowDecomposition d;
  d.row_index = i;
  const auto row = l.matrix().row(i);
  d.l.assign(row.begin(), row.end());
  for (std::size_t j = 0; j < d.l.size(); ++j) {
    if (j == i) continue;
    if (d.l[j] >= 0.0) {
      d.positive.push_back(j);
      d.l_p += d.l[j];
    } else {
      d.negative.push_back(j);
      d.l_n -= d.l[j];
    }
  }
  return d;
}

GeneratorMatrix diagonal_adjust(const RowZeroMatrix& l) {
  RealMatrix b = l.matrix();
  const std::size_t n = b.size();
  for (std::size_t i = 0; i < n; ++i) {
    double off = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      b(i, j) = std::max(b(i, j), 0.0);
      off += b(i, j);
    }
    b(i, i) = -off;
  }
  return validate_generator(b);
}

double optimality_gap(const RowZeroMatrix& l, const GeneratorMatrix& g) {
  return op_norm(l.matrix() - g.matrix()) - op_norm(l.matrix() - diagonal_adjust(l).matrix());
}

double exp_error_bound(double epsilon) {
  if (!(epsilon >= 0.0)) throw std::invalid_argument("epsilon must be non-negative");
  return std::min(2.0, std::expm1(epsilon));
}

double exp_error_bound_linear(double epsilon) {
  if (!(epsilon >= 0.0)) throw std::invalid_argument("epsilon must be non-negative");
  return std::min(2.0, 2.0 * epsilon);
}

RegularizationResult regularize(const RowZeroMatrix& l) {
  GeneratorMatrix b = diagonal_adjust(l);
  const double epsilon = op_norm(l.matrix() - b.matrix());
  RealMatrix a_tilde = expm(b.matrix());
  return RegularizationResult{l, std::move(b), epsilon, std::move(a_tilde), std::nullopt,
                              exp_error_bound(epsilon)};
}

RegularizationResult regularize(const StochasticMatrix& a, const Tolerances& tol) {
  RegularizationResult r = regularize(validate_row_zero(logm_principal(a.matrix(), tol), tol));
  r.exp_error_actual = op_norm(a.matrix() - r.a_tilde);
  return r;
}

}  // namespace markov
