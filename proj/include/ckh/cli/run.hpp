#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

namespace ckh {

// Named columns of reals.
struct CsvTable {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

// RFC 4180 with a header row; numbers use the shortest round-trip decimal form
// independent of the locale. Throws PreconditionError for ragged rows and
// ParseError when the file cannot be written.
void emit_csv(const CsvTable& table, std::ostream& out);
void emit_csv(const CsvTable& table, const std::string& path);
std::string format_double(double v);

// One scenario: a command and its parameters. `params` holds values given on
// the command line; `file_params` those read from a config file. Flags win
// over the file, the file over built-in defaults.
struct ScenarioConfig {
  std::string command;
  nlohmann::json params = nlohmann::json::object();
  nlohmann::json file_params = nlohmann::json::object();
};

struct RunReport {
  nlohmann::json json;
  std::vector<CsvTable> tables;
  bool pass = false;
};

inline constexpr int kExitPass = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitTolerance = 3;

const std::vector<std::string>& command_names();

// Dispatches to the owning module. Invalid parameters and unreadable inputs
// raise ParseError (naming the field); a finished run reports its verdict in
// `pass`.
RunReport run(const ScenarioConfig& config);

std::string library_version();

}  // namespace ckh
