/*
 * Copyright 2026 The cosplit Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include <complex>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "cosplit/grid.hpp"

namespace cosplit {

/// Binary field snapshot. All values little-endian:
///
///   offset  type              content
///   0       char[8]           "CSPLSNAP"
///   8       uint32            format version (1)
///   12      uint32            dim d
///   16      uint64[d]         sizes M_1..M_d
///   ...     float64[d]        half-widths L_1..L_d
///   ...     float64           time stamp
///   ...     uint32            channel count c
///   ...     float64[2*N*c]    channel data, (re, im) pairs, C order
///
/// N = prod M_l. Channel 0 holds u; channel 1, when present, holds v.
struct Snapshot {
  std::vector<std::uint64_t> sizes;
  std::vector<double> extents;
  double time = 0.0;
  std::vector<std::vector<std::complex<double>>> channels;
};

inline constexpr char kSnapshotMagic[8] = {'C', 'S', 'P', 'L', 'S', 'N', 'A', 'P'};
inline constexpr std::uint32_t kSnapshotVersion = 1;

void write_snapshot(const std::filesystem::path& path, const Grid& grid, double time,
                    std::span<const std::span<const std::complex<double>>> channels);
Snapshot read_snapshot(const std::filesystem::path& path);

}  // namespace cosplit
