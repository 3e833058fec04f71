#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "markov/generator_search.hpp"
#include "markov/regularization.hpp"
#include "markov/tolerances.hpp"

namespace markov::cli {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolVersion = "1.0.0";

using Rows = std::vector<std::vector<double>>;

/// Value rounded to 12 significant digits, as every report number is.
double round12(double v);
Rows round12(const RealMatrix& m);

struct ComplexValue {
  double re = 0.0;
  double im = 0.0;
  bool operator==(const ComplexValue&) const = default;
};

struct SpectrumEntry {
  ComplexValue lambda;
  double modulus = 0.0;
  double theta = 0.0;             // |arg lambda|
  double runnenberg_bound = 1.0;  // exp(-theta tan(pi/n)), 1 for n <= 2
  bool operator==(const SpectrumEntry&) const = default;
};

struct CheckReport {
  std::string name;
  bool passed = true;
  bool applicable = true;
  double margin = 0.0;
  std::optional<ComplexValue> eigenvalue;
  std::optional<std::array<std::size_t, 3>> triple;  // one-based
  std::optional<double> determinant;
  bool operator==(const CheckReport&) const = default;
};

struct CuthbertReport {
  double det_a = 0.0;
  double trace_b = 0.0;
  double beta = 0.0;
  double norm_b_plus_beta = 0.0;
  bool spectral_strip_ok = false;
  std::array<bool, 4> conditions{};
  bool operator==(const CuthbertReport&) const = default;
};

struct GeneratorReport {
  std::vector<int> offsets;  // empty when the generator came from the principal log alone
  Rows matrix;
  std::optional<CuthbertReport> cuthbert;
  bool operator==(const GeneratorReport&) const = default;
};

struct VerdictReport {
  std::string status;
  /// "check", "exhausted_enumeration", "uniqueness" or "reason".
  std::string certificate_kind;
  std::optional<CheckReport> failed_check;
  std::optional<std::size_t> candidates;
  std::string detail;
  std::optional<Rows> witness;
  std::size_t generator_count_lower_bound = 0;
  bool operator==(const VerdictReport&) const = default;
};

struct RegularizationReport {
  Rows l;
  Rows b;
  double epsilon = 0.0;
  Rows a_tilde;
  double exp_error_actual = 0.0;
  double exp_error_bound = 0.0;
  double exp_error_bound_linear = 0.0;
  bool operator==(const RegularizationReport&) const = default;
};

struct TolerancesReport {
  double row_sum = 0.0;
  double entry = 0.0;
  double separation = 0.0;
  double axis = 0.0;
  double reality = 0.0;
  double sector = 0.0;
  int max_offset = 0;
  bool operator==(const TolerancesReport&) const = default;
};

struct AnalysisReport {
  int schema_version = kSchemaVersion;
  std::string tool_version = kToolVersion;
  std::string input_name;
  Rows input;
  /// Set when validation accepted the input.
  std::optional<Rows> validated;
  std::vector<double> row_repairs;
  /// Set when the input was rejected.
  std::optional<std::string> error;
  std::vector<SpectrumEntry> spectrum;
  std::optional<bool> distinct;
  double basis_condition = 0.0;
  std::vector<CheckReport> battery;
  std::optional<VerdictReport> verdict;
  std::string uniqueness;
  std::vector<GeneratorReport> generators;
  std::optional<RegularizationReport> regularization;
  std::optional<std::string> regularization_note;
  TolerancesReport tolerances;
  int exit_code = 0;
  bool operator==(const AnalysisReport&) const = default;
};

/// Exit code for a verdict: 0 Embeddable, 1 NotEmbeddable, 3 Inconclusive.
int exit_code_for(Status s) noexcept;
inline constexpr int kExitInvalidInput = 2;

/// validate -> spectrum and battery -> decide -> uniqueness -> generators
/// -> regularize (when not embeddable and a principal log exists).
/// Never throws on bad input: rejections land in `error` with exit code 2.
AnalysisReport analyze(const std::string& input_name, const RealMatrix& input, const SearchOptions& options);

CheckReport make_check_report(const CheckResult& c);
RegularizationReport make_regularization_report(const RegularizationResult& r);

void to_json(nlohmann::json& j, const AnalysisReport& r);
void from_json(const nlohmann::json& j, AnalysisReport& r);
void to_json(nlohmann::json& j, const RegularizationReport& r);
void from_json(const nlohmann::json& j, RegularizationReport& r);

std::string render_text(const AnalysisReport& r);
std::string render_text(const RegularizationReport& r);

}  // namespace markov::cli
