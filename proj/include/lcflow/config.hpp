#ifndef LCFLOW_CONFIG_HPP
#define LCFLOW_CONFIG_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "lcflow/diagnostics.hpp"
#include "lcflow/dynamics.hpp"
#include "lcflow/field.hpp"

namespace lcflow {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct InitConfig {
  std::uint64_t seed = 1;
  double q_linf = 0.6;  ///< max pointwise |Q| of the random initial Q (0 gives Q = 0)
  int max_mode = 0;     ///< 0 selects n/8
  int u_mode = 1;       ///< Taylor-Green mode of the initial velocity
  double u_amp = 1.0;   ///< Taylor-Green amplitude (0 gives u = 0)
  friend bool operator==(const InitConfig&, const InitConfig&) = default;
};

struct ThresholdConfig {
  double k1 = kDefaultK1;
  double k2 = kDefaultK2;
  double c_star = kDefaultCStar;
  friend bool operator==(const ThresholdConfig&, const ThresholdConfig&) = default;
};

struct OutputConfig {
  std::string dir = "out";
  int stride = 10;
  friend bool operator==(const OutputConfig&, const OutputConfig&) = default;
};

struct NumericsConfig {
  bool dealias = true;
  std::optional<double> cfl_max;
  friend bool operator==(const NumericsConfig&, const NumericsConfig&) = default;
};

struct RunConfig {
  int n = 0;
  Coefficients coeffs;
  double dt = 0.0;
  double t_end = 0.0;
  InitConfig init;
  ThresholdConfig thresholds;
  OutputConfig output;
  NumericsConfig numerics;
  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// INI text: `[section]` headers, `key = value` lines, `#` or `;` comment lines.
/// Throws ConfigError on unknown keys, malformed values, duplicates and missing
/// required sections/keys (grid.n, time.dt, time.t_end).
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::filesystem::path& path);

/// Serialises every key; numbers use 17 significant digits so parse(write(c)) == c.
std::string write_config(const RunConfig& c);

/// Sets `section.key` from its textual value. Throws ConfigError.
void apply_setting(RunConfig& c, const std::string& dotted_key, const std::string& value);

/// Structural checks independent of the physics assumptions. Throws ConfigError.
void validate_config(const RunConfig& c);

/// 17 significant digits, locale independent.
std::string format_double(double v);

/// init.max_mode with 0 resolved to n/8.
int effective_max_mode(const RunConfig& c);

StepperConfig stepper_config(const RunConfig& c);
SimulationState initial_state(const RunConfig& c, const Spectral& sp);

}  // namespace lcflow

#endif  // LCFLOW_CONFIG_HPP
