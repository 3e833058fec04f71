#pragma once

#include <cstddef>
#include <vector>

#include "markov/matrix.hpp"
#include "markov/tolerances.hpp"

namespace markov {

class StochasticMatrix;
class RowZeroMatrix;
class GeneratorMatrix;

/// Accepts `raw` if every entry is >= -tol.entry and every row sums to 1
/// within tol.row_sum. Tiny negatives are clamped to zero and rows are
/// rescaled so the invariants hold exactly. Throws NotStochastic otherwise.
StochasticMatrix validate_stochastic(const RealMatrix& raw, const Tolerances& tol = {});

/// Accepts `raw` if every row sums to zero within tol.row_sum; the residual
/// is moved onto the diagonal. Throws NotRowZero otherwise.
RowZeroMatrix validate_row_zero(const RealMatrix& raw, const Tolerances& tol = {});

/// Accepts `raw` if it is row-zero (as above) and its off-diagonal entries
/// are >= -tol.entry. Off-diagonals are clamped and each diagonal entry is
/// rebuilt as minus its row's off-diagonal sum. Throws NotGenerator otherwise.
GeneratorMatrix validate_generator(const RealMatrix& raw, const Tolerances& tol = {});

/// Row-stochastic matrix: non-negative entries, unit row sums.
class StochasticMatrix {
 public:
  const RealMatrix& matrix() const noexcept { return m_; }
  std::size_t size() const noexcept { return m_.size(); }
  /// Largest absolute change made to each row during validation.
  const std::vector<double>& row_repairs() const noexcept { return repairs_; }
  double max_repair() const noexcept;

 private:
  friend StochasticMatrix validate_stochastic(const RealMatrix&, const Tolerances&);
  StochasticMatrix(RealMatrix m, std::vector<double> repairs) : m_(std::move(m)), repairs_(std::move(repairs)) {}

  RealMatrix m_;
  std::vector<double> repairs_;
};

/// Real matrix whose rows sum to zero.
class RowZeroMatrix {
 public:
  const RealMatrix& matrix() const noexcept { return m_; }
  std::size_t size() const noexcept { return m_.size(); }
  const std::vector<double>& row_repairs() const noexcept { return repairs_; }
  double max_repair() const noexcept;

 private:
  friend RowZeroMatrix validate_row_zero(const RealMatrix&, const Tolerances&);
  friend GeneratorMatrix validate_generator(const RealMatrix&, const Tolerances&);
  RowZeroMatrix(RealMatrix m, std::vector<double> repairs) : m_(std::move(m)), repairs_(std::move(repairs)) {}

  RealMatrix m_;
  std::vector<double> repairs_;
};

/// Markov generator (intensity matrix): row-zero with non-negative
/// off-diagonal entries.
class GeneratorMatrix {
 public:
  const RealMatrix& matrix() const noexcept { return base_.matrix(); }
  const RowZeroMatrix& row_zero() const noexcept { return base_; }
  std::size_t size() const noexcept { return base_.size(); }
  const std::vector<double>& row_repairs() const noexcept { return base_.row_repairs(); }
  double max_repair() const noexcept { return base_.max_repair(); }

  /// delta = max_i |G_ii|, so that G = C - delta I with C >= 0.
  double delta() const noexcept;
  /// C = G + delta I (entrywise non-negative).
  RealMatrix nonnegative_part() const;

 private:
  friend GeneratorMatrix validate_generator(const RealMatrix&, const Tolerances&);
  explicit GeneratorMatrix(RowZeroMatrix base) : base_(std::move(base)) {}

  RowZeroMatrix base_;
};

}  // namespace markov
