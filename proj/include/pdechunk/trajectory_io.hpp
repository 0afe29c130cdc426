#pragma once

#include <iosfwd>
#include <string>

#include "pdechunk/problem.hpp"

namespace pdechunk {

// Trajectory exports: CSV rows (time_index, i, j, value), or a binary file
// with version tag "DNJ1" whose manifest lists shape and time indices and
// whose payload concatenates the states in the field layout.

inline constexpr const char* kTrajectoryVersion = "DNJ1";

void write_trajectory_csv(const Trajectory& trajectory, std::ostream& out);
void write_trajectory_csv(const Trajectory& trajectory, const std::string& path);

void write_trajectory_binary(const Trajectory& trajectory, const std::string& path);
Trajectory read_trajectory_binary(const std::string& path);

}  // namespace pdechunk
