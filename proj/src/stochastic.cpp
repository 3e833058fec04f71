#include "markov/stochastic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "markov/errors.hpp"

namespace markov {

namespace {

double row_sum(std::span<const double> row) { return std::accumulate(row.begin(), row.end(), 0.0); }

double max_change(std::span<const double> before, std::span<const double> after) {
  double best = 0.0;
  for (std::size_t j = 0; j < before.size(); ++j) best = std::max(best, std::abs(after[j] - before[j]));
  return best;
}

double max_of(const std::vector<double>& v) { return v.empty() ? 0.0 : *std::max_element(v.begin(), v.end()); }

template <typename Error>
[[noreturn]] void reject(const std::string& what, std::size_t i, std::size_t j, double value) {
  std::ostringstream msg;
  msg << what << " at (" << i + 1 << ", " << j + 1 << "): " << value;
  throw Error(msg.str());
}

template <typename Error>
[[noreturn]] void reject_row(const std::string& what, std::size_t i, double sum) {
  std::ostringstream msg;
  msg.precision(17);
  msg << what << " in row " << i + 1 << ": sum is " << sum;
  throw Error(msg.str());
}

}  // namespace

double StochasticMatrix::max_repair() const noexcept { return max_of(repairs_); }
double RowZeroMatrix::max_repair() const noexcept { return max_of(repairs_); }

double GeneratorMatrix::delta() const noexcept {
  double d = 0.0;
  for (std::size_t i = 0; i < size(); ++i) d = std::max(d, std::abs(matrix()(i, i)));
  return d;
}

RealMatrix GeneratorMatrix::nonnegative_part() const {
  RealMatrix c = matrix();
  const double d = delta();
  for (std::size_t i = 0; i < c.size(); ++i) c(i, i) += d;
  return c;
}

StochasticMatrix validate_stochastic(const RealMatrix& raw, const Tolerances& tol) {
  tol.validate();
  if (raw.empty()) throw NotStochastic("matrix is empty");
  const std::size_t n = raw.size();
  RealMatrix m = raw;
  std::vector<double> repairs(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    auto row = m.row(i);
    for (std::size_t j = 0; j < n; ++j) {
      if (row[j] < -tol.entry) reject<NotStochastic>("negative entry", i, j, row[j]);
    }
    const double raw_sum = row_sum(row);
    if (std::abs(raw_sum - 1.0) > tol.row_sum) reject_row<NotStochastic>("row does not sum to 1", i, raw_sum);

    // A row within a few ulps of 1 is left alone, which keeps validation
    // idempotent: the rescaled sum cannot always hit 1 exactly.
    const double ulps = 2.0 * static_cast<double>(n) * std::numeric_limits<double>::epsilon();
    const bool clean = std::all_of(row.begin(), row.end(), [](double v) { return v >= 0.0; });
    if (!clean || std::abs(raw_sum - 1.0) > ulps) {
      for (auto& v : row) v = std::max(v, 0.0);
      double sum = row_sum(row);
      for (auto& v : row) v /= sum;
      // Put whatever rounding residue remains on the largest entry.
      const auto largest = static_cast<std::size_t>(std::max_element(row.begin(), row.end()) - row.begin());
      for (int pass = 0; pass < 4 && (sum = row_sum(row)) != 1.0; ++pass) row[largest] += 1.0 - sum;
    }
    repairs[i] = max_change(raw.row(i), row);
  }
  return StochasticMatrix(std::move(m), std::move(repairs));
}

RowZeroMatrix validate_row_zero(const RealMatrix& raw, const Tolerances& tol) {
  tol.validate();
  if (raw.empty()) throw NotRowZero("matrix is empty");
  const std::size_t n = raw.size();
  RealMatrix m = raw;
  std::vector<double> repairs(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    auto row = m.row(i);
    const double sum = row_sum(row);
    if (std::abs(sum) > tol.row_sum) reject_row<NotRowZero>("row does not sum to 0", i, sum);
    if (sum != 0.0) {
      double off = 0.0;
      for (std::size_t j = 0; j < n; ++j)
        if (j != i) off += row[j];
      row[i] = -off;
    }
    repairs[i] = max_change(raw.row(i), row);
  }
  return RowZeroMatrix(std::move(m), std::move(repairs));
}

GeneratorMatrix validate_generator(const RealMatrix& raw, const Tolerances& tol) {
  tol.validate();
  if (raw.empty()) throw NotGenerator("matrix is empty");
  const std::size_t n = raw.size();
  RealMatrix m = raw;
  std::vector<double> repairs(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    auto row = m.row(i);
    const double sum = row_sum(row);
    if (std::abs(sum) > tol.row_sum) reject_row<NotGenerator>("row does not sum to 0", i, sum);
    double off = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      if (row[j] < -tol.entry) reject<NotGenerator>("negative off-diagonal entry", i, j, row[j]);
      row[j] = std::max(row[j], 0.0);
      off += row[j];
    }
    row[i] = -off;
    repairs[i] = max_change(raw.row(i), row);
  }
  return GeneratorMatrix(RowZeroMatrix(std::move(m), std::move(repairs)));
}

}  // namespace markov
