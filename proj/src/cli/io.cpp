#include "markov/cli/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <json.hpp>

#include "markov/errors.hpp"

namespace markov::cli {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_number(std::string_view field, std::size_t line, std::size_t column) {
  field = trim(field);
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  double v = 0.0;
  const auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (field.empty() || ec != std::errc{} || end != field.data() + field.size() || !std::isfinite(v)) {
    throw ParseError("line " + std::to_string(line) + ", field " + std::to_string(column) + ": '" +
                     std::string(field) + "' is not a finite number");
  }
  return v;
}

RealMatrix from_rows(std::vector<std::vector<double>> rows) {
  if (rows.empty()) throw ParseError("no matrix rows found");
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size()) {
      throw ParseError("row " + std::to_string(i + 1) + " has " + std::to_string(rows[i].size()) +
                       " entries; a " + std::to_string(rows.size()) + "x" + std::to_string(rows.size()) +
                       " matrix is required");
    }
  }
  try {
    return RealMatrix::from_rows(rows);
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

RealMatrix parse_csv(std::string_view text) {
  std::vector<std::vector<double>> rows;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    const std::string_view line = trim(text.substr(0, nl));
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (line.empty()) continue;
    std::vector<double> row;
    std::size_t start = 0;
    for (std::size_t column = 1;; ++column) {
      const auto comma = line.find(',', start);
      row.push_back(parse_number(line.substr(start, comma - start), line_no, column));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    rows.push_back(std::move(row));
  }
  return from_rows(std::move(rows));
}

RealMatrix parse_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("matrix")) throw ParseError("JSON input needs an object with a \"matrix\" field");
  const auto& m = doc["matrix"];
  if (!m.is_array()) throw ParseError("\"matrix\" must be an array of rows");
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (!m[i].is_array()) throw ParseError("row " + std::to_string(i + 1) + " is not an array");
    std::vector<double> row;
    for (std::size_t j = 0; j < m[i].size(); ++j) {
      if (!m[i][j].is_number()) {
        throw ParseError("entry (" + std::to_string(i + 1) + ", " + std::to_string(j + 1) + ") is not a number");
      }
      row.push_back(m[i][j].get<double>());
    }
    rows.push_back(std::move(row));
  }
  return from_rows(std::move(rows));
}

}  // namespace

MatrixFormat infer_format(const std::filesystem::path& path) {
  const auto ext = path.extension().string();
  if (ext == ".csv" || ext == ".CSV") return MatrixFormat::Csv;
  if (ext == ".json" || ext == ".JSON") return MatrixFormat::Json;
  throw ParseError("cannot infer the format of '" + path.string() + "'; use --format");
}

MatrixFormat parse_format_name(std::string_view name) {
  if (name == "csv") return MatrixFormat::Csv;
  if (name == "json") return MatrixFormat::Json;
  throw ParseError("unknown format '" + std::string(name) + "'");
}

std::string_view to_string(MatrixFormat f) noexcept { return f == MatrixFormat::Csv ? "csv" : "json"; }

RealMatrix parse_matrix(std::string_view text, MatrixFormat format) {
  return format == MatrixFormat::Csv ? parse_csv(text) : parse_json(text);
}

RealMatrix read_matrix(const std::filesystem::path& path, MatrixFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_matrix(buf.str(), format);
}

std::string format_number(double v) {
  if (v == 0.0) v = 0.0;  // drop the sign of -0
  char buf[32];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

std::string write_matrix(const RealMatrix& m, MatrixFormat format) {
  std::string out;
  if (format == MatrixFormat::Csv) {
    for (std::size_t i = 0; i < m.size(); ++i) {
      for (std::size_t j = 0; j < m.size(); ++j) {
        if (j > 0) out += ',';
        out += format_number(m(i, j));
      }
      out += '\n';
    }
    return out;
  }
  out = "{\"matrix\": [";
  for (std::size_t i = 0; i < m.size(); ++i) {
    out += i == 0 ? "[" : ", [";
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (j > 0) out += ", ";
      out += format_number(m(i, j));
    }
    out += ']';
  }
  out += "]}\n";
  return out;
}

}  // namespace markov::cli
