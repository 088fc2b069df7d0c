#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <set>

#include "ckh/cli/run.hpp"
#include "ckh/error.hpp"

using nlohmann::json;

namespace {

const std::set<std::string> kSwitches{"quadrature", "user-field"};

const std::map<std::string, std::string> kSummary{
    {"zeta", "truncated Euler product against the direct zeta sum"},
    {"solve", "formal power-series solution of a Cauchy problem"},
    {"radius", "majorant radius of a linear first-order problem"},
    {"topology-check", "randomized checks of the sequence-space metrics"},
    {"weights", "Gaussian weight scheme for a linear problem"},
    {"divergence-check", "Gaussian divergence theorem on H_lambda or a box"},
    {"green-check", "Green identity over H_lambda"},
    {"holmgren-demo", "moments of the solution on the top face via the adjoint"}};

// Numbers and booleans are typed here; the dispatcher checks ranges.
json typed_value(const std::string& s) {
  try {
    json v = json::parse(s);
    if (v.is_number() || v.is_boolean()) return v;
  } catch (const json::exception&) {
  }
  return s;
}

json parse_extras(const std::vector<std::string>& args) {
  json out = json::object();
  for (std::size_t i = 0; i < args.size(); ++i) {
    const std::string& a = args[i];
    if (a.rfind("--", 0) != 0 || a.size() < 3) {
      throw ckh::ParseError("unexpected argument '" + a + "'");
    }
    std::string key = a.substr(2);
    std::optional<std::string> value;
    if (auto eq = key.find('='); eq != std::string::npos) {
      value = key.substr(eq + 1);
      key = key.substr(0, eq);
    }
    if (out.contains(key)) throw ckh::ParseError("parameter '" + key + "' given twice");
    if (value) {
      out[key] = typed_value(*value);
    } else if (kSwitches.count(key) &&
               (i + 1 == args.size() || args[i + 1].rfind("--", 0) == 0)) {
      out[key] = true;
    } else {
      if (i + 1 == args.size()) throw ckh::ParseError("parameter '" + key + "' needs a value");
      out[key] = typed_value(args[++i]);
    }
  }
  return out;
}

std::string table_path(const std::string& base, const std::string& name, bool single) {
  if (single) return base;
  auto dot = base.rfind('.');
  auto slash = base.rfind('/');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) {
    return base + "-" + name;
  }
  return base.substr(0, dot) + "-" + name + base.substr(dot);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Truncated Cauchy-Kowalevski and Holmgren toolkit"};
  app.set_version_flag("--version", ckh::library_version());
  app.require_subcommand(1);
  std::string config_path, report_path, csv_path;
  for (const auto& name : ckh::command_names()) {
    auto* sub = app.add_subcommand(name, kSummary.at(name));
    sub->allow_extras();
    sub->footer("Further parameters are passed as --key value (see README).");
    sub->add_option("--config", config_path, "JSON file of parameters");
    sub->add_option("--report", report_path, "report JSON path (default stdout)");
    sub->add_option("--csv", csv_path, "CSV output path");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : ckh::kExitConfig;
  }
  CLI::App* sub = app.get_subcommands().front();
  try {
    ckh::ScenarioConfig cfg;
    cfg.command = sub->get_name();
    cfg.params = parse_extras(sub->remaining());
    if (!config_path.empty()) {
      std::ifstream f(config_path);
      if (!f) throw ckh::ParseError("config: cannot open '" + config_path + "'");
      try {
        cfg.file_params = json::parse(f);
      } catch (const json::exception& e) {
        throw ckh::ParseError("config: '" + config_path + "' is not valid JSON");
      }
      if (!cfg.file_params.is_object()) throw ckh::ParseError("config: top level must be an object");
    }
    ckh::RunReport rep = ckh::run(cfg);
    if (!config_path.empty()) rep.json["config"] = config_path;
    if (report_path.empty() || report_path == "-") {
      std::cout << rep.json.dump(2) << "\n";
    } else {
      std::ofstream f(report_path);
      if (!f) throw ckh::ParseError("report: cannot write '" + report_path + "'");
      f << rep.json.dump(2) << "\n";
    }
    if (!csv_path.empty()) {
      for (const auto& t : rep.tables) {
        ckh::emit_csv(t, table_path(csv_path, t.name, rep.tables.size() == 1));
      }
    }
    if (!rep.pass) {
      std::cerr << "ckh: " << cfg.command << ": tolerance check failed\n";
      return ckh::kExitTolerance;
    }
    return ckh::kExitPass;
  } catch (const ckh::ParseError& e) {
    std::cerr << "ckh: " << e.what() << "\n";
    return ckh::kExitConfig;
  } catch (const ckh::PreconditionError& e) {
    std::cerr << "ckh: " << e.what() << "\n";
    return ckh::kExitConfig;
  } catch (const ckh::SpaceError& e) {
    std::cerr << "ckh: " << e.what() << "\n";
    return ckh::kExitConfig;
  } catch (const ckh::Error& e) {
    std::cerr << "ckh: " << e.what() << "\n";
    return ckh::kExitTolerance;
  }
}
