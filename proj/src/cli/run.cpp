#include "specbound/cli.hpp"

#include <algorithm>
#include <map>

#include <CLI11.hpp>

#include "commands.hpp"
#include "specbound/kernels.hpp"

namespace specbound::cli {

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  kernels::apply_thread_config();

  CLI::App app{"Average versus worst-case distortion certificates and adversarial error bounds",
               "specbound"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "specbound 1.0.0");

  const auto& table = command_table();
  std::map<std::string, std::map<std::string, std::string>> values;
  std::map<std::string, std::map<std::string, bool>> flags;
  std::map<std::string, std::map<std::string, CLI::Option*>> handles;
  for (const auto& cmd : table) {
    auto* sub = app.add_subcommand(cmd.name, cmd.help);
    for (const auto& o : cmd.options) {
      const std::string long_name = "--" + o.name;
      if (o.is_flag) {
        flags[cmd.name][o.name] = false;
        sub->add_flag(long_name, flags[cmd.name][o.name], o.help);
        continue;
      }
      auto* opt = sub->add_option(long_name, values[cmd.name][o.name], o.help);
      if (!o.default_value.empty()) opt->default_str(o.default_value);
      if (o.required) opt->required();
      handles[cmd.name][o.name] = opt;
    }
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << "specbound 1.0.0\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "specbound: " << e.what() << "\n";
    return 2;
  }

  const auto it = std::find_if(table.begin(), table.end(),
                               [&](const CommandSpec& c) { return app.got_subcommand(c.name); });
  const CommandSpec& cmd = *it;

  Args parsed;
  for (const auto& o : cmd.options) {
    if (o.is_flag) {
      parsed.flags[o.name] = flags[cmd.name][o.name];
    } else if (handles[cmd.name][o.name]->count() > 0) {
      parsed.values[o.name] = values[cmd.name][o.name];
    } else if (!o.default_value.empty()) {
      parsed.values[o.name] = o.default_value;
    }
  }

  Report report;
  report.command = cmd.name;
  for (const auto& [k, v] : parsed.values) report.params[k] = v;
  for (const auto& [k, v] : parsed.flags) report.params[k] = v;
  try {
    if (parsed.has("seed")) report.seed = parsed.u64("seed");
    cmd.handler(parsed, report);
  } catch (const UsageError& e) {
    err << "specbound " << cmd.name << ": " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "specbound " << cmd.name << ": error: " << e.what() << "\n";
    return 1;
  }
  out << report.render();
  return 0;
}

}  // namespace specbound::cli
