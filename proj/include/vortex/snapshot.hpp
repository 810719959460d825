#pragma once

#include <filesystem>

#include "vortex/spectral_field.hpp"

namespace vortex {

/// Binary field snapshot ("VXF1"), all integers and reals little-endian:
///
///   offset  size  content
///        0     4  magic "VXF1"
///        4     4  uint32 G (points per axis)
///        8     4  uint32 flags (bit 0: zero-mean)
///       12     8  float64 time
///       20     8  float64 grid origin (-pi)
///       28     8  float64 period (2 pi)
///       36  8G^2  float64 values, row-major, index i1 * G + i2
struct Snapshot {
  SpectralField field;
  double time = 0.0;
};

void write_snapshot(const std::filesystem::path& path, const SpectralField& field,
                    double time = 0.0);
Snapshot read_snapshot(const std::filesystem::path& path);

/// Debug dump of |f_hat(k)|: one "k1,k2,abs" line per stored coefficient.
void write_coefficient_csv(const std::filesystem::path& path, const SpectralField& field);

}  // namespace vortex
