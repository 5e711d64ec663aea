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
#include <gtest/gtest.h>

#include <cstring>
#include <filesystem>
#include <fstream>
#include <iterator>

#include "cosplit/error.hpp"
#include "cosplit/snapshot.hpp"

namespace cosplit {
namespace {

class SnapshotTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("cosplit_snap_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }

  std::filesystem::path dir_;
};

ErrorCode code_of(const std::filesystem::path& p) {
  try {
    read_snapshot(p);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::invalid_argument;
}

TEST_F(SnapshotTest, RoundTrip) {
  const auto g = make_grid(2, {8, 10}, {1.5, 2.0});
  std::vector<std::complex<double>> u(g.size()), v(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    u[i] = {0.1 * i, -1.0 / (i + 1)};
    v[i] = std::conj(u[i]);
  }
  const std::span<const std::complex<double>> ch[] = {u, v};
  const auto p = dir_ / "a.bin";
  write_snapshot(p, g, 3.25, ch);
  const auto s = read_snapshot(p);
  EXPECT_EQ(s.sizes, (std::vector<std::uint64_t>{8, 10}));
  EXPECT_EQ(s.extents, (std::vector<double>{1.5, 2.0}));
  EXPECT_EQ(s.time, 3.25);
  ASSERT_EQ(s.channels.size(), 2u);
  EXPECT_EQ(s.channels[0], u);
  EXPECT_EQ(s.channels[1], v);
}

TEST_F(SnapshotTest, ByteLayout) {
  const auto g = make_grid(1, {8}, {1.0});
  std::vector<std::complex<double>> u(8, {1.0, 2.0});
  const std::span<const std::complex<double>> ch[] = {u};
  const auto p = dir_ / "b.bin";
  write_snapshot(p, g, 0.5, ch);
  std::ifstream in(p, std::ios::binary);
  const std::vector<char> bytes((std::istreambuf_iterator<char>(in)), {});
  ASSERT_EQ(bytes.size(), 8u + 4 + 4 + 8 + 8 + 8 + 4 + 16 * 8);
  EXPECT_EQ(std::memcmp(bytes.data(), "CSPLSNAP", 8), 0);
  std::uint32_t version = 0, dim = 0, channels = 0;
  std::uint64_t size = 0;
  double extent = 0, time = 0, first = 0;
  std::memcpy(&version, bytes.data() + 8, 4);
  std::memcpy(&dim, bytes.data() + 12, 4);
  std::memcpy(&size, bytes.data() + 16, 8);
  std::memcpy(&extent, bytes.data() + 24, 8);
  std::memcpy(&time, bytes.data() + 32, 8);
  std::memcpy(&channels, bytes.data() + 40, 4);
  std::memcpy(&first, bytes.data() + 52, 8);
  EXPECT_EQ(version, kSnapshotVersion);
  EXPECT_EQ(dim, 1u);
  EXPECT_EQ(size, 8u);
  EXPECT_EQ(extent, 1.0);
  EXPECT_EQ(time, 0.5);
  EXPECT_EQ(channels, 1u);
  EXPECT_EQ(first, 2.0);
}

TEST_F(SnapshotTest, Errors) {
  const auto g = make_grid(1, {8}, {1.0});
  std::vector<std::complex<double>> short_field(4);
  const std::span<const std::complex<double>> bad[] = {short_field};
  try {
    write_snapshot(dir_ / "c.bin", g, 0.0, bad);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::shape_mismatch);
  }
  EXPECT_EQ(code_of(dir_ / "missing.bin"), ErrorCode::io_error);
  {
    std::ofstream(dir_ / "magic.bin", std::ios::binary) << "NOTASNAPSHOT";
  }
  EXPECT_EQ(code_of(dir_ / "magic.bin"), ErrorCode::io_error);
  std::vector<std::complex<double>> u(8);
  const std::span<const std::complex<double>> ch[] = {u};
  write_snapshot(dir_ / "t.bin", g, 0.0, ch);
  std::filesystem::resize_file(dir_ / "t.bin", 60);
  EXPECT_EQ(code_of(dir_ / "t.bin"), ErrorCode::io_error);
}

}  // namespace
}  // namespace cosplit
