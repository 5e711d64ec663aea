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
#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "cosplit/catalog.hpp"
#include "cosplit/config.hpp"
#include "cosplit/error.hpp"
#include "cosplit/experiments.hpp"
#include "cosplit/snapshot.hpp"

namespace fs = std::filesystem;
using namespace cosplit;

namespace {

struct CommonArgs {
  std::string config;
  std::string out = "out";
  std::optional<std::uint64_t> seed;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool config_required) {
  auto* opt = cmd->add_option("--config", args.config, "Study configuration (YAML)");
  if (config_required) opt->required();
  cmd->add_option("--out", args.out, "Output directory")->capture_default_str();
  cmd->add_option("--seed", args.seed, "Override the configured seed");
}

StudyConfig load(const CommonArgs& args) {
  StudyConfig config = args.config.empty() ? StudyConfig{} : load_study_config(args.config);
  if (args.seed) config.seed = *args.seed;
  return config;
}

std::ofstream open_output(const fs::path& dir, const std::string& name) {
  fs::create_directories(dir);
  std::ofstream out(dir / name);
  if (!out) throw Error(ErrorCode::io_error, "cannot write " + (dir / name).string());
  return out;
}

void print_fits(const std::vector<SlopeFit>& fits) {
  for (const auto& f : fits) {
    std::printf("  %-12s %-8s slope %s (%zu rungs)\n", f.scheme.c_str(), f.variant.c_str(),
                f.slope ? format_double(*f.slope).c_str() : "indeterminate", f.used);
  }
}

void persist_reference(const StudyConfig& config, const Reference& ref, const fs::path& dir) {
  const Grid grid = build_grid(config);
  const std::span<const Complex> channels[] = {ref.state.u(), ref.state.v()};
  write_snapshot(dir / "reference.bin", grid, config.T, channels);
  std::printf("reference: %s, %zu steps, cross-check with %s: %s relative\n", ref.scheme.c_str(),
              ref.steps, ref.cross_scheme.c_str(), format_double(ref.cross_check).c_str());
}

int cmd_catalog_validate(const std::string& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw Error(ErrorCode::io_error, "cannot read " + file);
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  const auto report = validate_catalog(text);
  for (const auto& e : report.entries) {
    std::printf("%-4s %-12s order %d, %zu stages, declared %s, classified %s%s%s\n",
                e.ok ? "ok" : "FAIL", e.name.c_str(), e.declared_order, e.stages,
                std::string(to_string(e.declared)).c_str(),
                std::string(to_string(e.classified)).c_str(), e.ok ? "" : ": ",
                e.ok ? "" : e.message.c_str());
  }
  std::printf("%zu schemes, %s\n", report.entries.size(), report.ok ? "valid" : "invalid");
  return report.ok ? 0 : 2;
}

int cmd_order_check(const CommonArgs& args) {
  const auto config = load(args);
  const auto rows = run_order_check(config, study_catalog(config));
  auto out = open_output(args.out, "order_check.csv");
  write_order_csv(out, rows);
  bool all = true;
  for (const auto& r : rows) {
    std::printf("%-12s declared %d observed %s %s\n", r.scheme.c_str(), r.declared,
                r.observed ? format_double(*r.observed).c_str() : "indeterminate",
                r.pass ? "pass" : "FAIL");
    all = all && r.pass;
  }
  return all ? 0 : 2;
}

int cmd_converge(const CommonArgs& args) {
  const auto config = load(args);
  const auto catalog = study_catalog(config);
  const auto ref = compute_reference(config, catalog, config.modulus_flow);
  const fs::path dir(args.out);
  fs::create_directories(dir);
  persist_reference(config, ref, dir);
  const auto rows = run_convergence(config, catalog, ref, config.modulus_flow);
  auto csv = open_output(dir, "convergence.csv");
  write_convergence_csv(csv, rows);
  const auto fits = fit_slopes(rows, ref.norm_value);
  auto slopes = open_output(dir, "slopes.csv");
  write_slopes_csv(slopes, fits);
  print_fits(fits);
  return 0;
}

int cmd_naive_vs_correct(const CommonArgs& args) {
  const auto config = load(args);
  const auto catalog = study_catalog(config);
  const auto ref = compute_reference(config, catalog, ModulusFlow::doubled);
  const fs::path dir(args.out);
  fs::create_directories(dir);
  persist_reference(config, ref, dir);
  const auto rows = run_naive_vs_correct(config, catalog, ref);
  auto csv = open_output(dir, "naive_vs_correct.csv");
  write_convergence_csv(csv, rows);
  const auto fits = fit_slopes(rows, ref.norm_value);
  auto slopes = open_output(dir, "slopes.csv");
  write_slopes_csv(slopes, fits);
  print_fits(fits);
  return 0;
}

int cmd_stability_scan(const CommonArgs& args) {
  const auto config = load(args);
  const auto rows = run_stability_scan(config, study_catalog(config));
  auto csv = open_output(args.out, "stability.csv");
  write_stability_csv(csv, rows);
  for (const auto& r : rows) {
    const double im = r.alpha1.imag();
    std::printf("%-12s alpha1 %s%s%si  predicted %-8s run %-9s%s\n", r.scheme.c_str(),
                format_double(r.alpha1.real()).c_str(), im < 0 ? "-" : "+",
                format_double(std::abs(im)).c_str(),
                r.predicted_stable ? "stable" : "unstable",
                std::string(to_string(r.status)).c_str(), r.agrees ? "" : "  (disagrees)");
  }
  return 0;
}

int cmd_simulate(const CommonArgs& args) {
  const auto config = load(args);
  const fs::path dir(args.out);
  const auto result = simulate(config, study_catalog(config), dir);
  auto norms = open_output(dir, "norms.csv");
  norms << "step,norm\n";
  for (std::size_t i = 0; i < result.outcome.norm_history.size(); ++i) {
    norms << i << ',' << format_double(result.outcome.norm_history[i]) << '\n';
  }
  std::printf("status %s, %zu snapshots in %s\n",
              std::string(to_string(result.outcome.status)).c_str(), result.snapshots.size(),
              dir.string().c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cosplit: exponential operator splitting experiments"};
  app.require_subcommand(1);

  auto* catalog = app.add_subcommand("catalog", "Catalog utilities");
  catalog->require_subcommand(1);
  std::string catalog_file;
  auto* validate = catalog->add_subcommand("validate", "Check every scheme in a catalog file");
  validate->add_option("file", catalog_file, "Catalog document")->required();

  CommonArgs order_args, converge_args, scan_args, naive_args, sim_args;
  auto* order = app.add_subcommand("order-check", "Estimate nonstiff orders of catalog schemes");
  add_common(order, order_args, false);
  auto* converge = app.add_subcommand("converge", "Convergence study against a reference");
  add_common(converge, converge_args, true);
  auto* scan = app.add_subcommand("stability-scan", "Predicted versus empirical stability");
  add_common(scan, scan_args, true);
  auto* naive = app.add_subcommand("naive-vs-correct", "Frozen-modulus versus doubled flow");
  add_common(naive, naive_args, true);
  auto* sim = app.add_subcommand("simulate", "Single run with field snapshots");
  add_common(sim, sim_args, true);

  CLI11_PARSE(app, argc, argv);

  try {
    if (validate->parsed()) return cmd_catalog_validate(catalog_file);
    if (order->parsed()) return cmd_order_check(order_args);
    if (converge->parsed()) return cmd_converge(converge_args);
    if (scan->parsed()) return cmd_stability_scan(scan_args);
    if (naive->parsed()) return cmd_naive_vs_correct(naive_args);
    if (sim->parsed()) return cmd_simulate(sim_args);
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 1;
}
