#ifndef LCFLOW_IO_HPP
#define LCFLOW_IO_HPP

#include <filesystem>
#include <string>
#include <vector>

#include "lcflow/dynamics.hpp"

namespace lcflow {

inline constexpr const char* kSeriesHeader =
    "t,kinetic,bulk,elastic,total,visc_diss,rot_diss,reg_diss,residual,q_linf,u_l2";

/// CSV text with a header row; every number has 17 significant digits.
std::string series_csv(const std::vector<SeriesRow>& rows);
void write_series_csv(const std::filesystem::path& path, const std::vector<SeriesRow>& rows);

/// Writes `<base>.bin` (little-endian float64, row-major, q1 q2 u1 u2 back to back)
/// and the sidecar `<base>.json` = {n, t, fields, byte_order}.
void write_snapshot(const std::filesystem::path& base, const SimulationState& s);
SimulationState read_snapshot(const std::filesystem::path& base);

}  // namespace lcflow

#endif  // LCFLOW_IO_HPP
