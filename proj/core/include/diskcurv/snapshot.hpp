#pragma once

#include <filesystem>
#include <string>

#include "diskcurv/field.hpp"

namespace diskcurv {

/// Snapshot text format: line 1 "NR NTHETA", then n_r lines of n_theta
/// whitespace-separated values, row j = radius index j increasing.
/// Values are emitted with 17 significant digits so write/read round-trips
/// are exact for doubles.
void write_snapshot(const std::filesystem::path& path, const ScalarField& u);
ScalarField read_snapshot(const std::filesystem::path& path);

std::string format_snapshot(const ScalarField& u);
ScalarField parse_snapshot(const std::string& text);

}  // namespace diskcurv
