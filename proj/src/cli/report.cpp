#include "markov/cli/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iomanip>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <variant>

#include "markov/embeddability.hpp"
#include "markov/errors.hpp"
#include "markov/linalg.hpp"

namespace markov::cli {

using nlohmann::json;

double round12(double v) {
  if (!std::isfinite(v)) return v;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  const double r = std::strtod(buf, nullptr);
  return r == 0.0 ? 0.0 : r;
}

Rows round12(const RealMatrix& m) {
  Rows rows = m.to_rows();
  for (auto& row : rows)
    for (auto& v : row) v = round12(v);
  return rows;
}

namespace {

ComplexValue round12c(Complex z) { return {round12(z.real()), round12(z.imag())}; }

// JSON has no infinities, so non-finite numbers travel as strings.
json num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double get_num(const json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    throw std::invalid_argument("unexpected string in numeric field: " + s);
  }
  return j.get<double>();
}

json rows_json(const Rows& rows) { return rows; }

json complex_json(const ComplexValue& z) { return json{{"re", num(z.re)}, {"im", num(z.im)}}; }
ComplexValue complex_from(const json& j) { return {get_num(j.at("re")), get_num(j.at("im"))}; }

json check_json(const CheckReport& c) {
  json j{{"name", c.name}, {"passed", c.passed}, {"applicable", c.applicable}, {"margin", num(c.margin)}};
  if (c.eigenvalue) j["eigenvalue"] = complex_json(*c.eigenvalue);
  if (c.triple) j["triple"] = *c.triple;
  if (c.determinant) j["determinant"] = num(*c.determinant);
  return j;
}

CheckReport check_from(const json& j) {
  CheckReport c;
  c.name = j.at("name").get<std::string>();
  c.passed = j.at("passed").get<bool>();
  c.applicable = j.at("applicable").get<bool>();
  c.margin = get_num(j.at("margin"));
  if (j.contains("eigenvalue")) c.eigenvalue = complex_from(j["eigenvalue"]);
  if (j.contains("triple")) c.triple = j["triple"].get<std::array<std::size_t, 3>>();
  if (j.contains("determinant")) c.determinant = get_num(j["determinant"]);
  return c;
}

json cuthbert_json(const CuthbertReport& c) {
  return json{{"det_A", num(c.det_a)},
              {"trace_B", num(c.trace_b)},
              {"beta", num(c.beta)},
              {"norm_B_plus_beta", num(c.norm_b_plus_beta)},
              {"spectral_strip_ok", c.spectral_strip_ok},
              {"conditions", c.conditions}};
}

CuthbertReport cuthbert_from(const json& j) {
  CuthbertReport c;
  c.det_a = get_num(j.at("det_A"));
  c.trace_b = get_num(j.at("trace_B"));
  c.beta = get_num(j.at("beta"));
  c.norm_b_plus_beta = get_num(j.at("norm_B_plus_beta"));
  c.spectral_strip_ok = j.at("spectral_strip_ok").get<bool>();
  c.conditions = j.at("conditions").get<std::array<bool, 4>>();
  return c;
}

json verdict_json(const VerdictReport& v) {
  json j{{"status", v.status},
         {"certificate_kind", v.certificate_kind},
         {"detail", v.detail},
         {"generator_count_lower_bound", v.generator_count_lower_bound}};
  if (v.failed_check) j["failed_check"] = check_json(*v.failed_check);
  if (v.candidates) j["candidates"] = *v.candidates;
  j["witness"] = v.witness ? rows_json(*v.witness) : json(nullptr);
  return j;
}

VerdictReport verdict_from(const json& j) {
  VerdictReport v;
  v.status = j.at("status").get<std::string>();
  v.certificate_kind = j.at("certificate_kind").get<std::string>();
  v.detail = j.at("detail").get<std::string>();
  v.generator_count_lower_bound = j.at("generator_count_lower_bound").get<std::size_t>();
  if (j.contains("failed_check")) v.failed_check = check_from(j["failed_check"]);
  if (j.contains("candidates")) v.candidates = j["candidates"].get<std::size_t>();
  if (!j.at("witness").is_null()) v.witness = j["witness"].get<Rows>();
  return v;
}

std::optional<CuthbertReport> cuthbert_for(const StochasticMatrix& a, const GeneratorMatrix& g, const Tolerances& tol) {
  try {
    const auto d = cuthbert_diagnostics(a, g, tol);
    return CuthbertReport{round12(d.det_a),        round12(d.trace_b),  round12(d.beta),
                          round12(d.norm_b_plus_beta), d.spectral_strip_ok, d.conditions};
  } catch (const Error&) {
    return std::nullopt;
  }
}

VerdictReport make_verdict_report(const EmbeddabilityVerdict& v) {
  VerdictReport r;
  r.status = std::string(to_string(v.status));
  r.generator_count_lower_bound = v.generator_count_lower_bound;
  if (v.witness) r.witness = round12(v.witness->matrix());
  std::visit(
      [&](const auto& c) {
        using C = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<C, CheckResult>) {
          r.certificate_kind = "check";
          r.failed_check = make_check_report(c);
          r.detail = std::string(c.name());
        } else if constexpr (std::is_same_v<C, ExhaustedEnumeration>) {
          r.certificate_kind = "exhausted_enumeration";
          r.candidates = c.candidates;
          r.detail = "no real logarithm in the sector is a generator";
        } else if constexpr (std::is_same_v<C, UniquenessStatement>) {
          r.certificate_kind = "uniqueness";
          r.detail = std::string(to_string(c.level));
        } else {
          r.certificate_kind = "reason";
          r.detail = c.reason;
        }
      },
      v.certificate);
  return r;
}

void print_rows(std::ostream& out, const Rows& rows, const char* indent) {
  for (const auto& row : rows) {
    out << indent;
    for (const double v : row) out << ' ' << std::setw(17) << v;
    out << '\n';
  }
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

void print_check(std::ostream& out, const CheckReport& c) {
  out << "  " << std::left << std::setw(28) << c.name << std::right
      << (c.applicable ? (c.passed ? "pass" : "FAIL") : "n/a ") << "  margin " << c.margin;
  if (c.determinant) out << "  det " << *c.determinant;
  if (c.eigenvalue) out << "  eigenvalue " << c.eigenvalue->re << (c.eigenvalue->im < 0 ? " - " : " + ")
                        << std::abs(c.eigenvalue->im) << "i";
  if (c.triple) out << "  triple (" << (*c.triple)[0] << ", " << (*c.triple)[1] << ", " << (*c.triple)[2] << ")";
  out << '\n';
}

}  // namespace

int exit_code_for(Status s) noexcept {
  switch (s) {
    case Status::Embeddable: return 0;
    case Status::NotEmbeddable: return 1;
    case Status::Inconclusive: return 3;
  }
  return 3;
}

CheckReport make_check_report(const CheckResult& c) {
  CheckReport r;
  r.name = std::string(c.name());
  r.passed = c.passed;
  r.applicable = c.applicable;
  r.margin = round12(c.margin);
  if (c.certificate) {
    std::visit(
        [&](const auto& w) {
          using W = std::decay_t<decltype(w)>;
          if constexpr (std::is_same_v<W, EigenvalueWitness>) {
            r.eigenvalue = round12c(w.value);
          } else if constexpr (std::is_same_v<W, IndexTriple>) {
            r.triple = std::array<std::size_t, 3>{w.i + 1, w.j + 1, w.k + 1};
          } else {
            r.determinant = round12(w.value);
          }
        },
        *c.certificate);
  }
  return r;
}

RegularizationReport make_regularization_report(const RegularizationResult& r) {
  RegularizationReport out;
  out.l = round12(r.l.matrix());
  out.b = round12(r.b.matrix());
  out.epsilon = round12(r.epsilon);
  out.a_tilde = round12(r.a_tilde);
  out.exp_error_actual = round12(r.exp_error_actual.value_or(std::numeric_limits<double>::quiet_NaN()));
  out.exp_error_bound = round12(r.exp_error_bound);
  out.exp_error_bound_linear = round12(exp_error_bound_linear(r.epsilon));
  return out;
}

AnalysisReport analyze(const std::string& input_name, const RealMatrix& input, const SearchOptions& options) {
  const Tolerances& tol = options.tol;
  AnalysisReport r;
  r.input_name = input_name;
  r.input = round12(input);
  r.tolerances = {tol.row_sum, tol.entry, tol.separation, tol.axis, tol.reality, tol.sector, options.max_offset};

  std::optional<StochasticMatrix> validated;
  try {
    validated = validate_stochastic(input, tol);
  } catch (const Error& e) {
    r.error = e.what();
  } catch (const std::invalid_argument& e) {
    r.error = e.what();
  }
  if (!validated) {
    r.exit_code = kExitInvalidInput;
    return r;
  }
  const StochasticMatrix& a = *validated;
  r.validated = round12(a.matrix());
  for (const double d : a.row_repairs()) r.row_repairs.push_back(round12(d));

  try {
    const auto spectrum = eigen_decompose(a.matrix(), tol);
    for (const auto& z : spectrum.eigenvalues) {
      const auto d = runnenberg_datum(z, a.size());
      r.spectrum.push_back({round12c(z), round12(d.r), round12(d.theta), round12(d.bound)});
    }
    r.distinct = spectrum.is_distinct;
    r.basis_condition = round12(spectrum.basis_condition);
    for (const auto& c : run_battery(a, spectrum.eigenvalues, tol)) r.battery.push_back(make_check_report(c));
  } catch (const Error& e) {
    r.regularization_note = std::string("spectrum unavailable: ") + e.what();
  }

  const EmbeddabilityVerdict verdict = decide_embeddable(a, options);
  r.verdict = make_verdict_report(verdict);
  try {
    r.uniqueness = std::string(to_string(uniqueness_certificate(a, tol)));
  } catch (const Error&) {
    r.uniqueness = std::string(to_string(Uniqueness::Unknown));
  }

  for (const auto& b : verdict.generators) {
    r.generators.push_back({b.offsets, round12(b.generator->matrix()), cuthbert_for(a, *b.generator, tol)});
  }
  if (r.generators.empty() && verdict.witness) {
    r.generators.push_back({{}, round12(verdict.witness->matrix()), cuthbert_for(a, *verdict.witness, tol)});
  }

  if (verdict.status != Status::Embeddable) {
    try {
      r.regularization = make_regularization_report(regularize(a, tol));
      r.regularization_note.reset();
    } catch (const Error& e) {
      r.regularization_note = std::string("no regularization: ") + e.what();
    }
  }
  r.exit_code = exit_code_for(verdict.status);
  return r;
}

void to_json(json& j, const RegularizationReport& r) {
  j = json{{"L", rows_json(r.l)},
           {"B", rows_json(r.b)},
           {"epsilon", num(r.epsilon)},
           {"A_tilde", rows_json(r.a_tilde)},
           {"exp_error_actual", num(r.exp_error_actual)},
           {"exp_error_bound", num(r.exp_error_bound)},
           {"exp_error_bound_linear", num(r.exp_error_bound_linear)}};
}

void from_json(const json& j, RegularizationReport& r) {
  r.l = j.at("L").get<Rows>();
  r.b = j.at("B").get<Rows>();
  r.epsilon = get_num(j.at("epsilon"));
  r.a_tilde = j.at("A_tilde").get<Rows>();
  r.exp_error_actual = get_num(j.at("exp_error_actual"));
  r.exp_error_bound = get_num(j.at("exp_error_bound"));
  r.exp_error_bound_linear = get_num(j.at("exp_error_bound_linear"));
}

void to_json(json& j, const AnalysisReport& r) {
  j = json::object();
  j["schema_version"] = r.schema_version;
  j["tool_version"] = r.tool_version;
  j["input"] = json{{"name", r.input_name}, {"matrix", rows_json(r.input)}};
  if (r.validated) {
    j["validation"] = json{{"accepted", true}, {"matrix", rows_json(*r.validated)}, {"row_repairs", json::array()}};
    for (const double d : r.row_repairs) j["validation"]["row_repairs"].push_back(num(d));
  } else {
    j["validation"] = json{{"accepted", false}, {"error", r.error.value_or("")}};
  }
  json spectrum = json::array();
  for (const auto& s : r.spectrum) {
    spectrum.push_back(json{{"lambda", complex_json(s.lambda)},
                            {"modulus", num(s.modulus)},
                            {"theta", num(s.theta)},
                            {"runnenberg_bound", num(s.runnenberg_bound)}});
  }
  j["spectrum"] = json{{"eigenvalues", spectrum},
                       {"distinct", r.distinct ? json(*r.distinct) : json(nullptr)},
                       {"basis_condition", num(r.basis_condition)}};
  j["battery"] = json::array();
  for (const auto& c : r.battery) j["battery"].push_back(check_json(c));
  j["verdict"] = r.verdict ? verdict_json(*r.verdict) : json(nullptr);
  j["uniqueness"] = r.uniqueness;
  j["generators"] = json::array();
  for (const auto& g : r.generators) {
    j["generators"].push_back(json{{"offsets", g.offsets},
                                   {"matrix", rows_json(g.matrix)},
                                   {"cuthbert", g.cuthbert ? cuthbert_json(*g.cuthbert) : json(nullptr)}});
  }
  j["regularization"] = r.regularization ? json(*r.regularization) : json(nullptr);
  if (r.regularization_note) j["regularization_note"] = *r.regularization_note;
  const auto& t = r.tolerances;
  j["tolerances"] = json{{"row_sum", num(t.row_sum)}, {"entry", num(t.entry)},     {"separation", num(t.separation)},
                         {"axis", num(t.axis)},       {"reality", num(t.reality)}, {"sector", num(t.sector)},
                         {"max_offset", t.max_offset}};
  j["exit_code"] = r.exit_code;
}

void from_json(const json& j, AnalysisReport& r) {
  r = AnalysisReport{};
  r.schema_version = j.at("schema_version").get<int>();
  if (r.schema_version != kSchemaVersion) {
    throw std::invalid_argument("unsupported report schema_version " + std::to_string(r.schema_version));
  }
  r.tool_version = j.at("tool_version").get<std::string>();
  r.input_name = j.at("input").at("name").get<std::string>();
  r.input = j.at("input").at("matrix").get<Rows>();
  const auto& v = j.at("validation");
  if (v.at("accepted").get<bool>()) {
    r.validated = v.at("matrix").get<Rows>();
    for (const auto& d : v.at("row_repairs")) r.row_repairs.push_back(get_num(d));
  } else {
    r.error = v.at("error").get<std::string>();
  }
  const auto& s = j.at("spectrum");
  for (const auto& e : s.at("eigenvalues")) {
    r.spectrum.push_back({complex_from(e.at("lambda")), get_num(e.at("modulus")), get_num(e.at("theta")),
                          get_num(e.at("runnenberg_bound"))});
  }
  if (!s.at("distinct").is_null()) r.distinct = s["distinct"].get<bool>();
  r.basis_condition = get_num(s.at("basis_condition"));
  for (const auto& c : j.at("battery")) r.battery.push_back(check_from(c));
  if (!j.at("verdict").is_null()) r.verdict = verdict_from(j["verdict"]);
  r.uniqueness = j.at("uniqueness").get<std::string>();
  for (const auto& g : j.at("generators")) {
    GeneratorReport gr;
    gr.offsets = g.at("offsets").get<std::vector<int>>();
    gr.matrix = g.at("matrix").get<Rows>();
    if (!g.at("cuthbert").is_null()) gr.cuthbert = cuthbert_from(g["cuthbert"]);
    r.generators.push_back(std::move(gr));
  }
  if (!j.at("regularization").is_null()) r.regularization = j["regularization"].get<RegularizationReport>();
  if (j.contains("regularization_note")) r.regularization_note = j["regularization_note"].get<std::string>();
  const auto& t = j.at("tolerances");
  r.tolerances = {get_num(t.at("row_sum")), get_num(t.at("entry")),  get_num(t.at("separation")),
                  get_num(t.at("axis")),    get_num(t.at("reality")), get_num(t.at("sector")),
                  t.at("max_offset").get<int>()};
  r.exit_code = j.at("exit_code").get<int>();
}

std::string render_text(const RegularizationReport& r) {
  std::ostringstream out;
  out << std::setprecision(12);
  out << "  epsilon = ||L - B||        " << r.epsilon << '\n'
      << "  ||A - exp(B)||             " << r.exp_error_actual << '\n'
      << "  bound min{2, e^eps - 1}    " << r.exp_error_bound << '\n'
      << "  bound min{2, 2 eps}        " << r.exp_error_bound_linear << '\n';
  out << "  L (principal log):\n";
  print_rows(out, r.l, "  ");
  out << "  B (diagonal adjustment):\n";
  print_rows(out, r.b, "  ");
  out << "  exp(B):\n";
  print_rows(out, r.a_tilde, "  ");
  return out.str();
}

std::string render_text(const AnalysisReport& r) {
  std::ostringstream out;
  out << std::setprecision(12);
  out << "markov-embed " << r.tool_version << " (report schema " << r.schema_version << ")\n";
  out << "input: " << r.input_name << '\n';
  print_rows(out, r.input, "");
  if (!r.validated) {
    out << "validation: rejected: " << r.error.value_or("") << '\n';
    out << "exit code: " << r.exit_code << '\n';
    return out.str();
  }
  double worst = 0.0;
  for (const double d : r.row_repairs) worst = std::max(worst, d);
  out << "validation: accepted, largest row repair " << worst << '\n';

  if (!r.spectrum.empty()) {
    out << "\nspectrum (distinct: " << (r.distinct && *r.distinct ? "yes" : "no")
        << ", eigenvector basis condition " << r.basis_condition << "):\n";
    for (const auto& s : r.spectrum) {
      out << "  " << s.lambda.re << (s.lambda.im < 0 ? " - " : " + ") << std::abs(s.lambda.im) << "i"
          << "   |lambda| " << s.modulus << "   |arg| " << s.theta << "   spiral bound " << s.runnenberg_bound
          << '\n';
    }
  }
  if (!r.battery.empty()) {
    out << "\nnecessary conditions:\n";
    for (const auto& c : r.battery) print_check(out, c);
  }
  if (r.verdict) {
    const auto& v = *r.verdict;
    out << "\nverdict: " << v.status;
    if (v.certificate_kind == "check") {
      out << " (failed check: " << v.detail << ")";
    } else if (v.certificate_kind == "exhausted_enumeration") {
      out << " (none of " << v.candidates.value_or(0) << " real logarithms in the sector is a generator)";
    } else if (v.certificate_kind == "reason") {
      out << " (" << v.detail << ")";
    }
    out << '\n';
    out << "uniqueness: " << r.uniqueness << '\n';
    out << "generators found (lower bound on their number): " << v.generator_count_lower_bound << '\n';
  }
  for (const auto& g : r.generators) {
    out << "\ngenerator";
    if (!g.offsets.empty()) {
      out << " with branch offsets (";
      for (std::size_t i = 0; i < g.offsets.size(); ++i) out << (i ? ", " : "") << g.offsets[i];
      out << ")";
    }
    out << ":\n";
    print_rows(out, g.matrix, "  ");
    if (g.cuthbert) {
      const auto& c = *g.cuthbert;
      out << "  det A " << c.det_a << ", tr B " << c.trace_b << ", beta " << c.beta << ", ||B + beta I|| "
          << c.norm_b_plus_beta << ", spectrum in strip: " << yes_no(c.spectral_strip_ok) << '\n'
          << "  conditions: det in (e^-pi, 1] " << yes_no(c.conditions[0]) << ", tr in (-pi, 0] "
          << yes_no(c.conditions[1]) << ", ||B + beta I|| < pi " << yes_no(c.conditions[2]) << ", strip "
          << yes_no(c.conditions[3]) << '\n';
    }
  }
  if (r.regularization) {
    out << "\nregularization:\n" << render_text(*r.regularization);
  } else if (r.regularization_note) {
    out << '\n' << *r.regularization_note << '\n';
  }
  const auto& t = r.tolerances;
  out << "\ntolerances: row_sum " << t.row_sum << ", entry " << t.entry << ", separation " << t.separation
      << ", axis " << t.axis << ", reality " << t.reality << ", sector " << t.sector << ", max offset "
      << t.max_offset << '\n';
  out << "exit code: " << r.exit_code << '\n';
  return out.str();
}

}  // namespace markov::cli
