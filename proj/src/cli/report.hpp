#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace specbound::cli {

using Json = nlohmann::json;

/// JSON with sorted keys, doubles as %.17g and non-finite doubles as the
/// strings "inf", "-inf", "nan". Byte-identical for identical values.
std::string canonical_json(const Json& j, int indent = 2);

std::string sha256_hex(const std::string& bytes);

// Finite doubles as numbers, the rest as strings.
Json number(double v);
Json numbers(const std::vector<double>& v);

struct Report {
  std::string command;
  std::uint64_t seed = 0;
  Json params = Json::object();   // every flag value as typed, for replay
  std::vector<std::pair<std::string, std::string>> inputs;  // (flag, file contents)
  Json results = Json::object();
  std::vector<std::string> warnings;

  std::string digest() const;
  std::string render() const;
};

}  // namespace specbound::cli
