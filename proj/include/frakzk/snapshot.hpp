#pragma once

#include "frakzk/field.hpp"

#include <string>

namespace fzk {

struct SnapshotInfo {
    int nx = 0;
    int ny = 0;
    double lx = 0.0;
    double ly = 0.0;
    double min = 0.0;
    double max = 0.0;
    double l2 = 0.0;
    double mean = 0.0;
};

/// Binary layout: "FZK1", u32 nx, u32 ny, u32 zero, f64 lx, f64 ly, then nx*ny f64
/// samples, all little-endian, y-major rows.
void write_snapshot(const std::string& path, const Field& f);
Field read_snapshot(const std::string& path);
SnapshotInfo snapshot_info(const std::string& path);

} // namespace fzk
