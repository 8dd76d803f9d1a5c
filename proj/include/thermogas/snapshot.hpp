#pragma once

#include <filesystem>
#include <stdexcept>

#include "thermogas/field.hpp"

namespace thermogas {

/// Raised when a snapshot file is malformed (bad magic, truncated, bad header).
class SnapshotFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A field together with the simulation time it was written at.
struct Snapshot {
  RealField field;
  double time = 0.0;
};

/// THGSNAP1 layout, all little-endian:
///   8 bytes  magic "THGSNAP1"
///   u32 d, u32 n, f64 L, f64 time
///   n^d f64 values, row-major with axis 0 slowest.
void save_snapshot(const RealField& field, double time, const std::filesystem::path& path);
Snapshot load_snapshot(const std::filesystem::path& path);

}  // namespace thermogas
