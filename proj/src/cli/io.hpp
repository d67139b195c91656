#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "specbound/exponent.hpp"
#include "specbound/fluctuation.hpp"
#include "specbound/matrix.hpp"
#include "specbound/transport.hpp"

namespace specbound::cli {

// Bad flag values or malformed input files; maps to exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path);

double parse_double(std::string_view text, std::string_view what);
std::vector<double> parse_list(std::string_view text, std::string_view what);
Exponent parse_exponent(std::string_view text, std::string_view what);
std::vector<Exponent> parse_exponent_list(std::string_view text, std::string_view what);

// Rows of comma-separated decimals, no header. Blank lines are skipped.
Matrix parse_matrix_csv(const std::string& text, std::string_view what);

// One point per row; with `weighted` the last column holds the atom weight.
EmpiricalSample parse_sample_csv(const std::string& text, bool weighted, std::string_view what);

// {"layers": [{"weights": [[...]], "bias": [...], "activation": "tanh"}, ...]}
VectorMap parse_vector_map(const std::string& text, std::string_view what);

}  // namespace specbound::cli
