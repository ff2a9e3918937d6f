#ifndef LCFLOW_COMMANDS_HPP
#define LCFLOW_COMMANDS_HPP

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "lcflow/config.hpp"

namespace lcflow {

enum ExitCode : int { kExitOk = 0, kExitCheckFailed = 1, kExitConfigError = 2, kExitBlowUp = 3 };

/// Environment variable that, when set, is prepended to output.dir.
inline constexpr const char* kOutputRootEnv = "LCFLOW_OUTPUT_ROOT";

std::filesystem::path output_directory(const RunConfig& c);

/// Runs the configured simulation, writing series.csv and snapshots/ under the output directory.
int cmd_run(const RunConfig& c, std::ostream& log);

/// Builds the verification report. `passed` is the conjunction over non-skipped checks.
nlohmann::json verify_report(const RunConfig& c, int identity_seeds = 20);
int cmd_verify(const RunConfig& c, std::ostream& out, std::ostream& err);

struct ConvergenceRow {
  double parameter = 0.0;
  double error = 0.0;
  double order = 0.0;  ///< NaN on the first row
};

struct ConvergenceTable {
  std::string axis;
  std::vector<ConvergenceRow> rows;
  /// Errors strictly decrease along the ladder.
  bool monotone = true;
};

/// Ladders: dt halvings x4 on the spatially constant Q scenario against an RK4 reference;
/// delta quarterings x4 against delta = 0 (max over steps of the L2 velocity gap);
/// eps decades x3 of an L2 perturbation of Q0 (metric at t_end versus the initial metric).
ConvergenceTable converge(const RunConfig& c, const std::string& axis);
std::string convergence_csv(const ConvergenceTable& t);
int cmd_converge(const RunConfig& c, const std::string& axis, std::ostream& out, std::ostream& err);

/// One run per value of `section.key`, each in its own sub-directory, executed concurrently.
int cmd_sweep(const RunConfig& c, const std::string& key, const std::vector<std::string>& values, std::ostream& out,
              std::ostream& err);

}  // namespace lcflow

#endif  // LCFLOW_COMMANDS_HPP
