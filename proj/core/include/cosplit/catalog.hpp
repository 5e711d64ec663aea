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

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "cosplit/scheme.hpp"

namespace cosplit {

/// Catalog document grammar (UTF-8, line oriented, '#' starts a comment):
///
///   [scheme]
///   name = <identifier>
///   order = <positive integer>
///   structure = none | symmetric | symmetric_conjugate | alternating_conjugate
///   source = <free text, rest of line>
///   pair = (<a_re>, <a_im>) (<b_re>, <b_im>)
///   pair = ...
///
/// Pairs are listed in application order: pair j holds (a_j, b_j) and the
/// linear flow with a_j is applied before the multiplication flow with b_j.
/// Numbers are decimal floating-point literals.
std::vector<SplittingScheme> parse_catalog(std::string_view text);
std::vector<SplittingScheme> load_catalog(const std::filesystem::path& path);

/// The catalog shipped with the library (compiled in).
std::string_view builtin_catalog_text();
const std::vector<SplittingScheme>& builtin_catalog();

const SplittingScheme& find_scheme(const std::vector<SplittingScheme>& catalog,
                                   std::string_view name);

struct CatalogReportEntry {
  std::string name;
  bool ok = false;
  std::string message;
  StructureTag declared = StructureTag::none;
  StructureTag classified = StructureTag::none;
  int declared_order = 0;
  std::size_t stages = 0;
};

struct CatalogReport {
  bool ok = true;
  std::vector<CatalogReportEntry> entries;
};

/// Like parse_catalog but collects per-record failures instead of throwing.
CatalogReport validate_catalog(std::string_view text);

}  // namespace cosplit
