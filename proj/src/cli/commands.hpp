#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "io.hpp"
#include "report.hpp"

namespace specbound::cli {

/// Parsed flag values of one subcommand, keyed by long name without dashes.
class Args {
 public:
  std::map<std::string, std::string> values;
  std::map<std::string, bool> flags;

  bool has(const std::string& name) const;
  const std::string& str(const std::string& name) const;
  double num(const std::string& name) const;
  std::size_t count(const std::string& name) const;
  std::uint64_t u64(const std::string& name) const;
  Exponent exponent(const std::string& name) const;
  std::vector<double> list(const std::string& name) const;
  bool flag(const std::string& name) const;
};

using Handler = void (*)(const Args&, Report&);

struct OptionSpec {
  std::string name;
  std::string default_value;  // empty: no default
  std::string help;
  bool is_flag = false;
  bool required = false;
};

struct CommandSpec {
  std::string name;
  std::string help;
  std::vector<OptionSpec> options;
  Handler handler;
};

const std::vector<CommandSpec>& command_table();

}  // namespace specbound::cli
