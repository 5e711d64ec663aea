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
#include "cosplit/catalog.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>

#include "builtin_catalog.inc"
#include "cosplit/error.hpp"

namespace cosplit {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void malformed(std::size_t line, const std::string& what) {
  throw Error(ErrorCode::malformed_document, "line " + std::to_string(line) + ": " + what);
}

double parse_number(std::string_view text, std::size_t line) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty()) {
    malformed(line, "invalid number '" + std::string(text) + "'");
  }
  return value;
}

// Parses "(re, im)" starting at pos; advances pos past the closing parenthesis.
Complex parse_tuple(std::string_view text, std::size_t& pos, std::size_t line) {
  while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  if (pos >= text.size() || text[pos] != '(') malformed(line, "expected '('");
  const auto close = text.find(')', pos);
  if (close == std::string_view::npos) malformed(line, "missing ')'");
  const auto inner = text.substr(pos + 1, close - pos - 1);
  const auto comma = inner.find(',');
  if (comma == std::string_view::npos || inner.find(',', comma + 1) != std::string_view::npos) {
    malformed(line, "expected (re, im)");
  }
  pos = close + 1;
  return {parse_number(inner.substr(0, comma), line), parse_number(inner.substr(comma + 1), line)};
}

struct Record {
  std::size_t line = 0;
  std::optional<std::string> name;
  std::optional<int> order;
  std::optional<StructureTag> structure;
  std::string source;
  std::vector<CoefficientPair> pairs;
};

// Throws malformed_document for syntax problems only.
std::vector<Record> parse_records(std::string_view text) {
  std::vector<Record> records;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) {
      if (end == text.size()) break;
      continue;
    }
    if (line == "[scheme]") {
      records.push_back({});
      records.back().line = line_no;
      continue;
    }
    if (records.empty()) malformed(line_no, "content before the first [scheme] header");
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) malformed(line_no, "expected key = value");
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    auto& rec = records.back();
    if (key == "name") {
      if (value.empty()) malformed(line_no, "empty name");
      if (rec.name) malformed(line_no, "duplicate name");
      rec.name = std::string(value);
    } else if (key == "order") {
      int order = 0;
      auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), order);
      if (ec != std::errc() || ptr != value.data() + value.size()) {
        malformed(line_no, "invalid order '" + std::string(value) + "'");
      }
      rec.order = order;
    } else if (key == "structure") {
      rec.structure = parse_structure_tag(value);
      if (!rec.structure) malformed(line_no, "unknown structure '" + std::string(value) + "'");
    } else if (key == "source") {
      rec.source = std::string(value);
    } else if (key == "pair") {
      std::size_t pos = 0;
      const Complex a = parse_tuple(value, pos, line_no);
      const Complex b = parse_tuple(value, pos, line_no);
      if (!trim(value.substr(pos)).empty()) malformed(line_no, "trailing characters after pair");
      rec.pairs.push_back({a, b});
    } else {
      malformed(line_no, "unknown key '" + std::string(key) + "'");
    }
    if (end == text.size()) break;
  }
  for (const auto& rec : records) {
    if (!rec.name) malformed(rec.line, "record without name");
    if (!rec.order) malformed(rec.line, "record '" + *rec.name + "' without order");
    if (!rec.structure) malformed(rec.line, "record '" + *rec.name + "' without structure");
    if (rec.pairs.empty()) malformed(rec.line, "record '" + *rec.name + "' without pairs");
  }
  for (std::size_t i = 0; i < records.size(); ++i) {
    for (std::size_t j = i + 1; j < records.size(); ++j) {
      if (*records[i].name == *records[j].name) {
        malformed(records[j].line, "duplicate scheme name '" + *records[j].name + "'");
      }
    }
  }
  return records;
}

SplittingScheme build(const Record& rec) {
  return SplittingScheme::create(*rec.name, rec.pairs, *rec.order, *rec.structure, rec.source);
}

}  // namespace

std::vector<SplittingScheme> parse_catalog(std::string_view text) {
  std::vector<SplittingScheme> out;
  for (const auto& rec : parse_records(text)) out.push_back(build(rec));
  return out;
}

std::vector<SplittingScheme> load_catalog(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io_error, "cannot open catalog " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_catalog(ss.str());
}

std::string_view builtin_catalog_text() { return kBuiltinCatalog; }

const std::vector<SplittingScheme>& builtin_catalog() {
  static const std::vector<SplittingScheme> catalog = parse_catalog(builtin_catalog_text());
  return catalog;
}

const SplittingScheme& find_scheme(const std::vector<SplittingScheme>& catalog,
                                   std::string_view name) {
  const auto it = std::find_if(catalog.begin(), catalog.end(),
                               [name](const SplittingScheme& s) { return s.name() == name; });
  if (it == catalog.end()) {
    throw Error(ErrorCode::unknown_scheme, "no scheme named '" + std::string(name) + "'");
  }
  return *it;
}

CatalogReport validate_catalog(std::string_view text) {
  CatalogReport report;
  std::vector<Record> records;
  try {
    records = parse_records(text);
  } catch (const Error& e) {
    report.ok = false;
    report.entries.push_back({"<document>", false, e.what()});
    return report;
  }
  for (const auto& rec : records) {
    CatalogReportEntry entry;
    entry.name = *rec.name;
    entry.declared = *rec.structure;
    entry.declared_order = *rec.order;
    entry.stages = rec.pairs.size();
    std::vector<Complex> seq;
    for (const auto& p : rec.pairs) {
      seq.push_back(p.a);
      seq.push_back(p.b);
    }
    entry.classified = classify_structure(seq);
    try {
      (void)build(rec);
      entry.ok = true;
      entry.message = "ok";
    } catch (const Error& e) {
      entry.ok = false;
      entry.message = e.what();
      report.ok = false;
    }
    report.entries.push_back(std::move(entry));
  }
  if (records.empty()) {
    report.ok = false;
    report.entries.push_back({"<document>", false, "no schemes"});
  }
  return report;
}

}  // namespace cosplit
