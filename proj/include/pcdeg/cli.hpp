#pragma once

#include <iosfwd>
#include <string>

#include "pcdeg/solver.hpp"

namespace pcdeg {

/* Exit status contract: 0 computed, 1 usage/validation error, 2 a verdict
 * was undecided within bounds. */
constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitUndecided = 2;

struct CliConfig {
  enum class Command { none, check, degrees, equiv, classify, tables };
  Command command = Command::none;

  /* complex sources: a JSON file path or a constructor shorthand
   * "product:K" | "zk:K" | "wk:K" */
  std::string x_spec;
  std::string y_spec;

  std::optional<int> n;
  std::optional<std::string> table_path;
  std::optional<int> rank;
  std::optional<Int> d;
  std::optional<Int> range;
  std::optional<std::vector<Int>> moduli;
  std::optional<Int> box;
  int jobs = 1;
  bool json = false;
};

/* Execute a parsed command; throws on usage errors, UndecidedError passes
 * through. */
int run_cli(const CliConfig& config, std::ostream& out);

/* Full front end: parse argv, run, map errors to exit codes. */
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/* wire formats (documented in the README) */
nlohmann::json witness_to_json(const WitnessMatrix& w);
WitnessMatrix witness_from_json(const nlohmann::json& doc);
nlohmann::json verdict_to_json(const Verdict& v);
Verdict verdict_from_json(const nlohmann::json& doc);
nlohmann::json report_to_json(const DegreeReport& report);
DegreeReport report_from_json(const nlohmann::json& doc);
nlohmann::json classification_to_json(const Classification& cls, const TablePtr& table);

} // namespace pcdeg
