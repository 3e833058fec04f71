#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

namespace markov {

using Complex = std::complex<double>;

/// Dense square matrix stored row-major. Sized for the small (n <= ~200)
/// problems this library targets; all algorithms are O(n^3) on it.
template <typename T>
class SquareMatrix {
 public:
  using value_type = T;
  using Rows = std::vector<std::vector<T>>;

  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t n, T fill = T{}) : n_(n), data_(n * n, fill) {}

  SquareMatrix(std::initializer_list<std::initializer_list<T>> rows) : n_(rows.size()) {
    data_.reserve(n_ * n_);
    for (const auto& row : rows) {
      if (row.size() != n_) {
        throw std::invalid_argument("matrix rows must all have length equal to the row count");
      }
      data_.insert(data_.end(), row.begin(), row.end());
    }
    check_entries();
  }

  /// Builds from nested rows. Throws std::invalid_argument unless the
  /// input is non-empty, square and (for real T) finite.
  static SquareMatrix from_rows(const Rows& rows) {
    if (rows.empty()) {
      throw std::invalid_argument("matrix must have at least one row");
    }
    SquareMatrix m(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != rows.size()) {
        throw std::invalid_argument("matrix is not square: row " + std::to_string(i + 1) + " has " +
                                    std::to_string(rows[i].size()) + " entries, expected " +
                                    std::to_string(rows.size()));
      }
      std::copy(rows[i].begin(), rows[i].end(), m.data_.begin() + static_cast<std::ptrdiff_t>(i * m.n_));
    }
    m.check_entries();
    return m;
  }

  static SquareMatrix identity(std::size_t n) {
    SquareMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T{1};
    return m;
  }

  static SquareMatrix diagonal(std::span<const T> d) {
    SquareMatrix m(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  std::size_t size() const noexcept { return n_; }
  bool empty() const noexcept { return n_ == 0; }

  T& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * n_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * n_ + j]; }

  std::span<T> row(std::size_t i) noexcept { return {data_.data() + i * n_, n_}; }
  std::span<const T> row(std::size_t i) const noexcept { return {data_.data() + i * n_, n_}; }
  std::span<const T> values() const noexcept { return data_; }

  Rows to_rows() const {
    Rows rows(n_);
    for (std::size_t i = 0; i < n_; ++i) rows[i].assign(row(i).begin(), row(i).end());
    return rows;
  }

  SquareMatrix& operator+=(const SquareMatrix& other) {
    require_same_size(other);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
    return *this;
  }
  SquareMatrix& operator-=(const SquareMatrix& other) {
    require_same_size(other);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
    return *this;
  }
  SquareMatrix& operator*=(T scalar) {
    for (auto& v : data_) v *= scalar;
    return *this;
  }

  friend SquareMatrix operator+(SquareMatrix a, const SquareMatrix& b) { return a += b; }
  friend SquareMatrix operator-(SquareMatrix a, const SquareMatrix& b) { return a -= b; }
  friend SquareMatrix operator*(SquareMatrix a, T s) { return a *= s; }
  friend SquareMatrix operator*(T s, SquareMatrix a) { return a *= s; }
  friend SquareMatrix operator-(SquareMatrix a) { return a *= T{-1}; }

  friend SquareMatrix operator*(const SquareMatrix& a, const SquareMatrix& b) {
    a.require_same_size(b);
    const std::size_t n = a.n_;
    SquareMatrix c(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < n; ++k) {
        const T aik = a(i, k);
        if (aik == T{}) continue;
        for (std::size_t j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
      }
    }
    return c;
  }

  bool operator==(const SquareMatrix&) const = default;

 private:
  void require_same_size(const SquareMatrix& other) const {
    if (other.n_ != n_) throw std::invalid_argument("matrix dimension mismatch");
  }

  void check_entries() const {
    if constexpr (std::is_floating_point_v<T>) {
      for (const auto v : data_) {
        if (!std::isfinite(v)) throw std::invalid_argument("matrix entries must be finite");
      }
    }
  }

  std::size_t n_ = 0;
  std::vector<T> data_;
};

using RealMatrix = SquareMatrix<double>;
using ComplexMatrix = SquareMatrix<Complex>;

/// Induced infinity-norm: the largest absolute row sum.
template <typename T>
double op_norm(const SquareMatrix<T>& m) {
  double best = 0.0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    double sum = 0.0;
    for (const auto& v : m.row(i)) sum += std::abs(v);
    best = std::max(best, sum);
  }
  return best;
}

/// Induced 1-norm (largest absolute column sum).
template <typename T>
double one_norm(const SquareMatrix<T>& m) {
  double best = 0.0;
  for (std::size_t j = 0; j < m.size(); ++j) {
    double sum = 0.0;
    for (std::size_t i = 0; i < m.size(); ++i) sum += std::abs(m(i, j));
    best = std::max(best, sum);
  }
  return best;
}

template <typename T>
double max_abs_entry(const SquareMatrix<T>& m) {
  double best = 0.0;
  for (const auto& v : m.values()) best = std::max(best, static_cast<double>(std::abs(v)));
  return best;
}

template <typename T>
T trace(const SquareMatrix<T>& m) {
  T t{};
  for (std::size_t i = 0; i < m.size(); ++i) t += m(i, i);
  return t;
}

template <typename T>
SquareMatrix<T> conjugate_transpose(const SquareMatrix<T>& m) {
  SquareMatrix<T> r(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m.size(); ++j) {
      if constexpr (std::is_floating_point_v<T>) {
        r(j, i) = m(i, j);
      } else {
        r(j, i) = std::conj(m(i, j));
      }
    }
  }
  return r;
}

inline ComplexMatrix to_complex(const RealMatrix& m) {
  ComplexMatrix c(m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) c(i, j) = m(i, j);
  return c;
}

inline RealMatrix real_part(const ComplexMatrix& m) {
  RealMatrix r(m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) r(i, j) = m(i, j).real();
  return r;
}

inline double max_abs_imag(const ComplexMatrix& m) {
  double best = 0.0;
  for (const auto& v : m.values()) best = std::max(best, std::abs(v.imag()));
  return best;
}

}  // namespace markov
