#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "markov/matrix.hpp"

namespace markov::cli {

enum class MatrixFormat { Csv, Json };

/// From a file extension (".csv", ".json"); throws ParseError otherwise.
MatrixFormat infer_format(const std::filesystem::path& path);
MatrixFormat parse_format_name(std::string_view name);
std::string_view to_string(MatrixFormat f) noexcept;

/// CSV: one row per non-blank line, comma-separated decimals.
/// JSON: an object whose "matrix" field is an array of row arrays.
/// Throws ParseError with a location on malformed input.
RealMatrix parse_matrix(std::string_view text, MatrixFormat format);
RealMatrix read_matrix(const std::filesystem::path& path, MatrixFormat format);

/// Shortest decimal that reads back to the same double.
std::string format_number(double v);
std::string write_matrix(const RealMatrix& m, MatrixFormat format);

}  // namespace markov::cli
