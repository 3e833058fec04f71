#pragma once

// LU factorisation with partial pivoting, shared by the linear algebra
// routines. Not part of the public interface.

#include <cmath>
#include <cstddef>
#include <numeric>
#include <utility>
#include <vector>

#include "markov/matrix.hpp"

namespace markov::detail {

template <typename T>
struct LuFactorization {
  SquareMatrix<T> lu;
  std::vector<std::size_t> perm;  // row perm[i] of the input is row i of PA
  int sign = 1;
  bool singular = false;
};

/// When `floor` is positive, pivots smaller than it are replaced by `floor`
/// (used by inverse iteration, where the matrix is singular on purpose).
template <typename T>
LuFactorization<T> lu_factor(SquareMatrix<T> a, double floor = 0.0) {
  const std::size_t n = a.size();
  LuFactorization<T> f;
  f.perm.resize(n);
  std::iota(f.perm.begin(), f.perm.end(), std::size_t{0});
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    double best = std::abs(a(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::abs(a(i, k)) > best) {
        best = std::abs(a(i, k));
        p = i;
      }
    }
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      std::swap(f.perm[k], f.perm[p]);
      f.sign = -f.sign;
    }
    if (best == 0.0 || (floor > 0.0 && best < floor)) {
      if (floor > 0.0) {
        a(k, k) = T{floor};
      } else {
        f.singular = true;
        continue;
      }
    }
    const T pivot = a(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const T factor = a(i, k) / pivot;
      a(i, k) = factor;
      if (factor == T{}) continue;
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= factor * a(k, j);
    }
  }
  f.lu = std::move(a);
  return f;
}

template <typename T>
std::vector<T> lu_solve(const LuFactorization<T>& f, const std::vector<T>& b) {
  const std::size_t n = f.lu.size();
  std::vector<T> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[f.perm[i]];
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) x[i] -= f.lu(i, j) * x[j];
  }
  for (std::size_t ii = n; ii-- > 0;) {
    for (std::size_t j = ii + 1; j < n; ++j) x[ii] -= f.lu(ii, j) * x[j];
    x[ii] /= f.lu(ii, ii);
  }
  return x;
}

/// Solves A X = B column by column.
template <typename T>
SquareMatrix<T> lu_solve(const LuFactorization<T>& f, const SquareMatrix<T>& b) {
  const std::size_t n = b.size();
  SquareMatrix<T> x(n);
  std::vector<T> col(n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) col[i] = b(i, j);
    const auto sol = lu_solve(f, col);
    for (std::size_t i = 0; i < n; ++i) x(i, j) = sol[i];
  }
  return x;
}

}  // namespace markov::detail
