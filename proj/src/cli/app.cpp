#include "markov/cli/app.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <iterator>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "markov/cli/io.hpp"
#include "markov/cli/report.hpp"
#include "markov/errors.hpp"
#include "markov/generator_search.hpp"
#include "markov/linalg.hpp"
#include "markov/regularization.hpp"

namespace markov::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Flags {
  std::string input;
  std::string format;
  std::string report = "text";
  Tolerances tol;
  int max_offset = 64;
  unsigned long seed = 1;
  bool quiet = false;

  SearchOptions search() const { return SearchOptions{tol, max_offset}; }
};

// Thrown for problems with the input itself (exit code 2).
bool is_input_error(const Error& e) {
  return dynamic_cast<const ParseError*>(&e) || dynamic_cast<const NotStochastic*>(&e) ||
         dynamic_cast<const NotRowZero*>(&e) || dynamic_cast<const NotGenerator*>(&e);
}

MatrixFormat format_for(const Flags& f, const fs::path& path) {
  if (!f.format.empty()) return parse_format_name(f.format);
  if (path == "-") return MatrixFormat::Csv;
  return infer_format(path);
}

RealMatrix load(const Flags& f, const fs::path& path) {
  const MatrixFormat format = format_for(f, path);
  if (path == "-") {
    const std::string text{std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
    return parse_matrix(text, format);
  }
  return read_matrix(path, format);
}

std::vector<fs::path> inputs_of(const Flags& f) {
  if (f.input.empty()) throw ParseError("no input given");
  const fs::path p = f.input;
  if (p != "-" && fs::is_directory(p)) {
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(p)) {
      if (!e.is_regular_file()) continue;
      const auto ext = e.path().extension().string();
      if (!f.format.empty() || ext == ".csv" || ext == ".json") files.push_back(e.path());
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) throw ParseError("directory '" + p.string() + "' has no .csv or .json files");
    return files;
  }
  return {p};
}

int severity(int code) {
  switch (code) {
    case 2: return 3;
    case 3: return 2;
    case 1: return 1;
    default: return 0;
  }
}

int cmd_analyze(const Flags& f, std::ostream& out, std::ostream& err) {
  const auto files = inputs_of(f);
  std::vector<AnalysisReport> reports;
  for (const auto& path : files) {
    try {
      reports.push_back(analyze(path.string(), load(f, path), f.search()));
    } catch (const Error& e) {
      AnalysisReport r;
      r.input_name = path.string();
      r.error = e.what();
      r.exit_code = kExitInvalidInput;
      const auto& t = f.tol;
      r.tolerances = {t.row_sum, t.entry, t.separation, t.axis, t.reality, t.sector, f.max_offset};
      reports.push_back(std::move(r));
    }
  }
  int code = 0;
  for (const auto& r : reports) {
    if (severity(r.exit_code) > severity(code)) code = r.exit_code;
    if (r.error && !f.quiet) err << r.input_name << ": " << *r.error << '\n';
  }
  if (f.quiet) return code;
  if (f.report == "json") {
    const json j = reports.size() == 1 ? json(reports.front()) : json(reports);
    out << j.dump(2) << '\n';
  } else {
    for (std::size_t i = 0; i < reports.size(); ++i) {
      if (i > 0) out << "\n----\n\n";
      out << render_text(reports[i]);
    }
  }
  return code;
}

fs::path single_input(const Flags& f) {
  const auto files = inputs_of(f);
  if (files.size() != 1) throw ParseError("this command takes a single matrix file");
  return files.front();
}

int cmd_logm(const Flags& f, std::ostream& out) {
  const fs::path path = single_input(f);
  const RealMatrix m = load(f, path);
  const RealMatrix l = logm_principal(m, f.tol);
  if (!f.quiet) out << write_matrix(l, format_for(f, path));
  return 0;
}

int cmd_expm(const Flags& f, std::ostream& out) {
  const fs::path path = single_input(f);
  const RealMatrix m = load(f, path);
  const RealMatrix e = expm(m);
  if (!f.quiet) out << write_matrix(e, format_for(f, path));
  return 0;
}

int cmd_regularize(const Flags& f, std::ostream& out) {
  const fs::path path = single_input(f);
  const StochasticMatrix a = validate_stochastic(load(f, path), f.tol);
  const RegularizationReport r = make_regularization_report(regularize(a, f.tol));
  if (f.quiet) return 0;
  if (f.report == "json") {
    out << json(r).dump(2) << '\n';
  } else {
    out << "regularization of " << path.string() << ":\n" << render_text(r);
  }
  return 0;
}

int cmd_generators(const Flags& f, std::ostream& out) {
  const fs::path path = single_input(f);
  const StochasticMatrix a = validate_stochastic(load(f, path), f.tol);
  const EmbeddabilityVerdict verdict = decide_embeddable(a, f.search());
  std::optional<std::vector<LogBranch>> branches;
  std::string why;
  try {
    branches = enumerate_branches(a, f.search());
  } catch (const Error& e) {
    why = e.what();
  }
  const int code = exit_code_for(verdict.status);
  if (f.quiet) return code;

  if (f.report == "json") {
    json j{{"status", std::string(to_string(verdict.status))},
           {"generator_count_lower_bound", verdict.generator_count_lower_bound},
           {"branches", json::array()}};
    if (branches) {
      for (const auto& b : *branches) {
        json sm = json::array();
        for (const double m : b.sector_margins) sm.push_back(round12(m));
        j["branches"].push_back(json{{"offsets", b.offsets},
                                     {"is_generator", b.is_generator},
                                     {"principal", b.is_principal()},
                                     {"sector_margins", sm},
                                     {"matrix", round12(b.matrix)}});
      }
    } else {
      j["enumeration_error"] = why;
    }
    j["witness"] = verdict.witness ? json(round12(verdict.witness->matrix())) : json(nullptr);
    out << j.dump(2) << '\n';
    return code;
  }

  std::ostringstream text;
  text << std::setprecision(12);
  text << "status: " << to_string(verdict.status) << '\n';
  text << "generators found: " << verdict.generator_count_lower_bound << '\n';
  if (branches) {
    text << "real logarithms in the sector: " << branches->size() << '\n';
    for (const auto& b : *branches) {
      text << "\noffsets (";
      for (std::size_t i = 0; i < b.offsets.size(); ++i) text << (i ? ", " : "") << b.offsets[i];
      text << ")" << (b.is_principal() ? " principal" : "") << (b.is_generator ? " generator" : " not a generator")
           << '\n';
      for (std::size_t i = 0; i < b.matrix.size(); ++i) {
        for (std::size_t j = 0; j < b.matrix.size(); ++j) text << ' ' << std::setw(17) << round12(b.matrix(i, j));
        text << '\n';
      }
    }
  } else {
    text << "enumeration unavailable: " << why << '\n';
    if (verdict.witness) {
      text << "\nprincipal logarithm (generator):\n";
      const auto& w = verdict.witness->matrix();
      for (std::size_t i = 0; i < w.size(); ++i) {
        for (std::size_t j = 0; j < w.size(); ++j) text << ' ' << std::setw(17) << round12(w(i, j));
        text << '\n';
      }
    }
  }
  out << text.str();
  return code;
}

// Random dense generators with spectra inside the principal strip must come
// back as embeddable with an accurate round trip.
int cmd_selftest(const Flags& f, std::ostream& out) {
  std::mt19937_64 rng(f.seed);
  std::uniform_int_distribution<int> dim(3, 6);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int tried = 0;
  int failed = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const auto n = static_cast<std::size_t>(dim(rng));
    const double scale = 0.2 + 1.8 * unit(rng);
    RealMatrix g(n);
    for (std::size_t i = 0; i < n; ++i) {
      double off = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        g(i, j) = unit(rng) * scale / static_cast<double>(n - 1);
        off += g(i, j);
      }
      g(i, i) = -off;
    }
    const auto spectrum = eigen_decompose(g, f.tol);
    if (!spectrum.is_distinct) continue;
    if (std::any_of(spectrum.eigenvalues.begin(), spectrum.eigenvalues.end(),
                    [](const Complex& z) { return std::abs(z.imag()) >= std::numbers::pi; })) {
      continue;
    }
    ++tried;
    const StochasticMatrix a = validate_stochastic(expm(g), f.tol);
    const auto verdict = decide_embeddable(a, f.search());
    const bool ok = verdict.status == Status::Embeddable && verdict.witness &&
                    max_abs_entry(verdict.witness->matrix() - g) < 1e-6;
    if (!ok) ++failed;
  }
  if (!f.quiet) out << "selftest (seed " << f.seed << "): " << tried - failed << " of " << tried << " passed\n";
  return failed == 0 ? 0 : 1;
}

void add_input(CLI::App* sub, Flags& f) {
  sub->add_option("input,--input", f.input, "Matrix file (.csv or .json), '-' for stdin, or a directory");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Flags f;
  CLI::App app{"Embeddability analysis of stochastic matrices", "markov-embed"};
  app.set_version_flag("--version", std::string("markov-embed ") + kToolVersion);
  app.require_subcommand(1);
  app.fallthrough();

  app.add_option("--format", f.format, "Input format (default: from the file extension)")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--report", f.report, "Report format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--tol-row-sum", f.tol.row_sum, "Row-sum tolerance")->check(CLI::PositiveNumber);
  app.add_option("--tol-entry", f.tol.entry, "Entry negativity tolerance")->check(CLI::PositiveNumber);
  app.add_option("--tol-sector", f.tol.sector, "Slack on the sector boundary")->check(CLI::PositiveNumber);
  app.add_option("--max-offset", f.max_offset, "Largest branch offset |k| searched")->check(CLI::NonNegativeNumber);
  app.add_option("--seed", f.seed, "Seed for the self-test");
  app.add_flag("--quiet", f.quiet, "Print nothing; report through the exit code");

  auto* analyze_cmd = app.add_subcommand("analyze", "Full embeddability analysis and report");
  auto* logm_cmd = app.add_subcommand("logm", "Principal matrix logarithm");
  auto* expm_cmd = app.add_subcommand("expm", "Matrix exponential");
  auto* regularize_cmd = app.add_subcommand("regularize", "Nearest-generator regularization");
  auto* generators_cmd = app.add_subcommand("generators", "List real logarithms and generators");
  auto* selftest_cmd = app.add_subcommand("selftest", "Randomized self-test");
  for (auto* sub : {analyze_cmd, logm_cmd, expm_cmd, regularize_cmd, generators_cmd}) add_input(sub, f);

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kExitInvalidInput;
  }

  try {
    if (*analyze_cmd) return cmd_analyze(f, out, err);
    if (*logm_cmd) return cmd_logm(f, out);
    if (*expm_cmd) return cmd_expm(f, out);
    if (*regularize_cmd) return cmd_regularize(f, out);
    if (*generators_cmd) return cmd_generators(f, out);
    if (*selftest_cmd) return cmd_selftest(f, out);
  } catch (const Error& e) {
    err << "markov-embed: " << e.what() << '\n';
    return is_input_error(e) ? kExitInvalidInput : 3;
  } catch (const std::invalid_argument& e) {
    err << "markov-embed: " << e.what() << '\n';
    return kExitInvalidInput;
  }
  return kExitInvalidInput;
}

}  // namespace markov::cli
