#pragma once

#include <string>
#include <utility>
#include <vector>

#include "bruss/ftle.hpp"
#include "bruss/integrator.hpp"
#include "bruss/slowfast.hpp"
#include "bruss/ssa.hpp"

namespace bruss {

/// Shortest decimal string that round-trips the exact double ("%.17g" then
/// trimmed), so CSV output is bit-faithful and reproducible.
std::string format_double(double v);

void write_trajectory_csv(const std::string& path, const Trajectory& traj);
void write_two_point_csv(const std::string& path, const TwoPointResult& res);
void write_ftle_field_csv(const std::string& path, const FtleField& field);
void write_series_csv(const std::string& path, const std::string& header,
                      const std::vector<std::pair<double, double>>& rows);
void write_slowfast_csv(const std::string& path, const SfTrajectory& traj,
                        const SlowFastParams& sp, const RegimeThresholds& th);
void write_polyline_csv(const std::string& path, const std::string& header,
                        const std::vector<std::pair<double, double>>& points);
void write_jump_csv(const std::string& path, const JumpPath& jump);

/// Key=value sidecar, one pair per line, written in the given order.
void write_metadata(const std::string& path,
                    const std::vector<std::pair<std::string, std::string>>& kv);

/// Parse a key=value sidecar back into ordered pairs.
std::vector<std::pair<std::string, std::string>> read_metadata(const std::string& path);

}  // namespace bruss
