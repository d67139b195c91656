#include "io.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace specbound::cli {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::vector<std::vector<double>> parse_rows(const std::string& text, std::string_view what) {
  std::vector<std::vector<double>> rows;
  std::size_t line_no = 0;
  for (auto line : split(text, '\n')) {
    ++line_no;
    line = trim(line);
    if (line.empty()) continue;
    std::vector<double> row;
    for (auto cell : split(line, ',')) {
      row.push_back(parse_double(trim(cell), std::string(what) + " line " + std::to_string(line_no)));
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw UsageError(std::string(what) + ": line " + std::to_string(line_no) + " has " +
                       std::to_string(row.size()) + " columns, expected " +
                       std::to_string(rows.front().size()));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw UsageError(std::string(what) + ": no data rows");
  return rows;
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

double parse_double(std::string_view text, std::string_view what) {
  const std::string s(trim(text));
  if (s == "inf" || s == "+inf") return INFINITY;
  if (s == "-inf") return -INFINITY;
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE || std::isnan(v)) {
    throw UsageError(std::string(what) + ": '" + s + "' is not a number");
  }
  return v;
}

std::vector<double> parse_list(std::string_view text, std::string_view what) {
  std::vector<double> out;
  if (trim(text).empty()) return out;
  for (auto part : split(text, ',')) out.push_back(parse_double(part, what));
  return out;
}

Exponent parse_exponent(std::string_view text, std::string_view what) {
  try {
    return Exponent::parse(trim(text));
  } catch (const std::exception& e) {
    throw UsageError(std::string(what) + ": " + e.what());
  }
}

std::vector<Exponent> parse_exponent_list(std::string_view text, std::string_view what) {
  std::vector<Exponent> out;
  for (auto part : split(text, ',')) out.push_back(parse_exponent(part, what));
  return out;
}

Matrix parse_matrix_csv(const std::string& text, std::string_view what) {
  return Matrix::from_rows(parse_rows(text, what));
}

EmpiricalSample parse_sample_csv(const std::string& text, bool weighted, std::string_view what) {
  auto rows = parse_rows(text, what);
  if (!weighted) return EmpiricalSample(Matrix::from_rows(rows));
  if (rows.front().size() < 2) {
    throw UsageError(std::string(what) + ": weighted samples need a point and a weight column");
  }
  std::vector<double> weights;
  for (auto& row : rows) {
    weights.push_back(row.back());
    row.pop_back();
  }
  return EmpiricalSample(Matrix::from_rows(rows), std::move(weights));
}

VectorMap parse_vector_map(const std::string& text, std::string_view what) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw UsageError(std::string(what) + ": " + e.what());
  }
  if (!doc.is_object() || !doc.contains("layers") || !doc["layers"].is_array()) {
    throw UsageError(std::string(what) + ": expected an object with a \"layers\" array");
  }
  std::vector<Layer> layers;
  try {
    for (const auto& l : doc["layers"]) {
      Layer layer;
      layer.weights = Matrix::from_rows(l.at("weights").get<std::vector<std::vector<double>>>());
      layer.bias = l.contains("bias") ? l["bias"].get<std::vector<double>>()
                                      : std::vector<double>(layer.weights.rows(), 0.0);
      layer.activation = parse_activation(l.value("activation", std::string("identity")));
      layers.push_back(std::move(layer));
    }
  } catch (const json::exception& e) {
    throw UsageError(std::string(what) + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string(what) + ": " + e.what());
  }
  return VectorMap(std::move(layers));
}

}  // namespace specbound::cli
