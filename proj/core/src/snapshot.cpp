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
#include "cosplit/snapshot.hpp"

#include <bit>
#include <cstring>
#include <fstream>

#include "cosplit/error.hpp"

namespace cosplit {

namespace {

static_assert(std::endian::native == std::endian::little || std::endian::native == std::endian::big);

template <class T>
T to_little(T value) {
  if constexpr (std::endian::native == std::endian::big) {
    unsigned char bytes[sizeof(T)];
    std::memcpy(bytes, &value, sizeof(T));
    for (std::size_t i = 0; i < sizeof(T) / 2; ++i) std::swap(bytes[i], bytes[sizeof(T) - 1 - i]);
    std::memcpy(&value, bytes, sizeof(T));
  }
  return value;
}

template <class T>
void put(std::ostream& out, T value) {
  value = to_little(value);
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <class T>
T get(std::istream& in, const std::filesystem::path& path) {
  T value{};
  in.read(reinterpret_cast<char*>(&value), sizeof(T));
  if (!in) throw Error(ErrorCode::io_error, "truncated snapshot " + path.string());
  return to_little(value);
}

}  // namespace

void write_snapshot(const std::filesystem::path& path, const Grid& grid, double time,
                    std::span<const std::span<const std::complex<double>>> channels) {
  for (const auto& ch : channels) {
    if (ch.size() != grid.size()) throw Error(ErrorCode::shape_mismatch, "channel size mismatch");
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::io_error, "cannot write " + path.string());
  out.write(kSnapshotMagic, sizeof(kSnapshotMagic));
  put<std::uint32_t>(out, kSnapshotVersion);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(grid.dim()));
  for (auto m : grid.sizes()) put<std::uint64_t>(out, m);
  for (double L : grid.extents()) put<double>(out, L);
  put<double>(out, time);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(channels.size()));
  for (const auto& ch : channels) {
    for (const auto& c : ch) {
      put<double>(out, c.real());
      put<double>(out, c.imag());
    }
  }
  if (!out) throw Error(ErrorCode::io_error, "failed writing " + path.string());
}

Snapshot read_snapshot(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io_error, "cannot open " + path.string());
  char magic[sizeof(kSnapshotMagic)];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kSnapshotMagic, sizeof(magic)) != 0) {
    throw Error(ErrorCode::io_error, "bad snapshot magic in " + path.string());
  }
  if (get<std::uint32_t>(in, path) != kSnapshotVersion) {
    throw Error(ErrorCode::io_error, "unsupported snapshot version in " + path.string());
  }
  const auto dim = get<std::uint32_t>(in, path);
  if (dim < 1 || dim > 3) throw Error(ErrorCode::io_error, "bad snapshot dimension");
  Snapshot snap;
  std::uint64_t total = 1;
  for (std::uint32_t l = 0; l < dim; ++l) {
    snap.sizes.push_back(get<std::uint64_t>(in, path));
    total *= snap.sizes.back();
  }
  for (std::uint32_t l = 0; l < dim; ++l) snap.extents.push_back(get<double>(in, path));
  snap.time = get<double>(in, path);
  const auto channels = get<std::uint32_t>(in, path);
  snap.channels.resize(channels);
  for (auto& ch : snap.channels) {
    ch.resize(total);
    for (auto& c : ch) {
      const double re = get<double>(in, path);
      const double im = get<double>(in, path);
      c = {re, im};
    }
  }
  return snap;
}

}  // namespace cosplit
