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
#include "cosplit/experiments.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "cosplit/catalog.hpp"
#include "cosplit/error.hpp"
#include "cosplit/order_estimate.hpp"
#include "cosplit/snapshot.hpp"

namespace cosplit {

std::string format_double(double value) {
  if (value == 0.0) value = 0.0;  // drop the sign of negative zero
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) return "nan";
  return std::string(buf, ptr);
}

std::vector<SplittingScheme> study_catalog(const StudyConfig& config) {
  if (config.catalog) return load_catalog(*config.catalog);
  return builtin_catalog();
}

NormKind resolve_norm(const StudyConfig& config, const ModelSpec& model) {
  if (config.norm != NormKind::automatic) return config.norm;
  return model.realness ? NormKind::real : NormKind::complex;
}

std::string_view to_string(NormKind kind) {
  switch (kind) {
    case NormKind::automatic: return "auto";
    case NormKind::real: return "real";
    case NormKind::complex: return "complex";
  }
  return "complex";
}

double field_distance(const Grid& grid, std::span<const Complex> a, std::span<const Complex> b,
                      NormKind kind) {
  if (a.size() != b.size()) throw Error(ErrorCode::shape_mismatch, "field sizes differ");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Complex d = a[i] - b[i];
    s += kind == NormKind::real ? d.real() * d.real() : std::norm(d);
  }
  return std::sqrt(grid.cell_volume() * s);
}

double field_norm(const Grid& grid, std::span<const Complex> a, NormKind kind) {
  return kind == NormKind::real ? l2_norm_real(grid, a) : l2_norm(grid, a);
}

namespace {

struct StudySetup {
  Grid grid;
  ModelSpec model;
  DoubledState initial;
  NormKind norm;
};

StudySetup setup(const StudyConfig& config, ModulusFlow flow,
                 const std::map<std::string, std::vector<Complex>>& overrides = {}) {
  Grid grid = build_grid(config);
  ModelSpec model = build_model(config, grid, overrides);
  model.modulus_flow = flow;
  const auto init = build_initial(config, grid);
  auto state = DoubledState::from_field(init.values);
  const NormKind norm = resolve_norm(config, model);
  return {std::move(grid), std::move(model), std::move(state), norm};
}

EvolveOptions evolve_options(const StudyConfig& config) {
  EvolveOptions o;
  o.blowup_factor = config.blowup_factor;
  return o;
}

std::vector<std::string> reference_schemes(const StudyConfig& config) {
  if (config.reference_schemes.size() >= 2) return config.reference_schemes;
  return {"sc16o6", "ac19o6"};
}

}  // namespace

Reference compute_reference(const StudyConfig& config, const std::vector<SplittingScheme>& catalog,
                            ModulusFlow flow) {
  if (config.ladder.empty()) throw Error(ErrorCode::config_error, "reference needs a ladder");
  auto s = setup(config, flow);
  const auto names = reference_schemes(config);
  const auto& primary = find_scheme(catalog, names[0]);
  const auto& cross = find_scheme(catalog, names[1]);
  const std::size_t finest = *std::max_element(config.ladder.begin(), config.ladder.end());
  TimeGrid tg{config.t0, config.T, finest * config.reference_divisor};

  const auto a = evolve(primary, s.model, s.grid, s.initial, tg, evolve_options(config));
  if (a.status != RunStatus::completed) {
    throw Error(ErrorCode::reference_blowup,
                "reference run with " + primary.name() + " blew up at step " +
                    std::to_string(a.blowup_step));
  }
  const auto b = evolve(cross, s.model, s.grid, s.initial, tg, evolve_options(config));
  if (b.status != RunStatus::completed) {
    throw Error(ErrorCode::reference_blowup,
                "cross-check run with " + cross.name() + " blew up at step " +
                    std::to_string(b.blowup_step));
  }
  Reference ref;
  ref.norm = s.norm;
  ref.norm_value = field_norm(s.grid, a.final.u(), s.norm);
  ref.cross_check = field_distance(s.grid, a.final.u(), b.final.u(), s.norm) /
                    std::max(ref.norm_value, std::numeric_limits<double>::min());
  if (!(ref.cross_check <= config.reference_tolerance)) {
    throw Error(ErrorCode::reference_cross_check,
                "reference schemes " + primary.name() + " and " + cross.name() +
                    " differ by " + format_double(ref.cross_check) +
                    " (relative); refine the reference resolution");
  }
  ref.state = a.final;
  ref.scheme = primary.name();
  ref.cross_scheme = cross.name();
  ref.steps = tg.steps;
  ref.tau = tg.tau();
  return ref;
}

namespace {

std::vector<RunRecord> convergence_rows(const StudyConfig& config,
                                        const std::vector<SplittingScheme>& catalog,
                                        const Reference& reference, ModulusFlow flow,
                                        const std::string& variant) {
  auto s = setup(config, flow);
  if (reference.state.size() != s.grid.size()) {
    throw Error(ErrorCode::shape_mismatch, "reference does not match the study grid");
  }
  std::vector<RunRecord> rows;
  for (const auto& name : config.schemes) {
    const auto& scheme = find_scheme(catalog, name);
    for (auto steps : config.ladder) {
      TimeGrid tg{config.t0, config.T, steps};
      const auto out = evolve(scheme, s.model, s.grid, s.initial, tg, evolve_options(config));
      RunRecord r;
      r.scheme = name;
      r.tau = tg.tau();
      r.steps = steps;
      r.transforms = out.transforms.total();
      r.status = out.status;
      r.norm_kind = std::string(to_string(reference.norm));
      r.variant = variant;
      if (out.status == RunStatus::completed) {
        r.error = field_distance(s.grid, out.final.u(), reference.state.u(), reference.norm);
      }
      rows.push_back(std::move(r));
    }
  }
  return rows;
}

void sort_records(std::vector<RunRecord>& rows) {
  std::stable_sort(rows.begin(), rows.end(), [](const RunRecord& a, const RunRecord& b) {
    if (a.variant != b.variant) return a.variant < b.variant;
    if (a.scheme != b.scheme) return a.scheme < b.scheme;
    return a.tau > b.tau;
  });
}

}  // namespace

std::vector<RunRecord> run_convergence(const StudyConfig& config,
                                       const std::vector<SplittingScheme>& catalog,
                                       const Reference& reference, ModulusFlow flow) {
  auto rows = convergence_rows(config, catalog, reference, flow,
                               flow == ModulusFlow::doubled ? "correct" : "naive");
  sort_records(rows);
  return rows;
}

std::vector<RunRecord> run_naive_vs_correct(const StudyConfig& config,
                                            const std::vector<SplittingScheme>& catalog,
                                            const Reference& reference) {
  auto rows = convergence_rows(config, catalog, reference, ModulusFlow::doubled, "correct");
  auto naive = convergence_rows(config, catalog, reference, ModulusFlow::frozen_modulus, "naive");
  rows.insert(rows.end(), naive.begin(), naive.end());
  sort_records(rows);
  return rows;
}

std::vector<SlopeFit> fit_slopes(const std::vector<RunRecord>& records, double reference_norm,
                                 double lower, double upper) {
  lower *= reference_norm;
  upper *= reference_norm;
  std::vector<SlopeFit> fits;
  std::vector<std::pair<std::string, std::string>> keys;
  for (const auto& r : records) {
    const auto key = std::make_pair(r.scheme, r.variant);
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) keys.push_back(key);
  }
  for (const auto& [scheme, variant] : keys) {
    std::vector<double> tau;
    std::vector<double> err;
    for (const auto& r : records) {
      if (r.scheme != scheme || r.variant != variant) continue;
      if (r.status != RunStatus::completed || !r.error) continue;
      if (!(*r.error >= lower && *r.error <= upper)) continue;
      tau.push_back(r.tau);
      err.push_back(*r.error);
    }
    SlopeFit fit{scheme, variant, std::nullopt, tau.size()};
    if (tau.size() >= 3) {
      try {
        fit.slope = fit_loglog_slope(tau, err, 0.0, std::numeric_limits<double>::infinity());
      } catch (const Error&) {
        fit.slope.reset();
      }
    }
    fits.push_back(std::move(fit));
  }
  return fits;
}

const SlopeFit* find_fit(const std::vector<SlopeFit>& fits, std::string_view scheme,
                         std::string_view variant) {
  for (const auto& f : fits) {
    if (f.scheme == scheme && f.variant == variant) return &f;
  }
  return nullptr;
}

void write_convergence_csv(std::ostream& out, const std::vector<RunRecord>& records) {
  out << kConvergenceCsvHeader << '\n';
  for (const auto& r : records) {
    out << r.scheme << ',' << format_double(r.tau) << ','
        << (r.error ? format_double(*r.error) : std::string()) << ',' << r.transforms << ','
        << to_string(r.status) << ',' << r.norm_kind << ',' << r.variant << '\n';
  }
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur.push_back(ch);
    }
  }
  out.push_back(cur);
  return out;
}

double parse_double(const std::string& s) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error(ErrorCode::malformed_document, "invalid number '" + s + "' in CSV");
  }
  return v;
}

}  // namespace

std::vector<RunRecord> read_convergence_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::malformed_document, "empty CSV");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kConvergenceCsvHeader) {
    throw Error(ErrorCode::malformed_document, "unexpected CSV header '" + line + "'");
  }
  std::vector<RunRecord> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split_csv(line);
    if (f.size() != 7) throw Error(ErrorCode::malformed_document, "CSV row needs 7 fields");
    RunRecord r;
    r.scheme = f[0];
    r.tau = parse_double(f[1]);
    if (!f[2].empty()) r.error = parse_double(f[2]);
    r.transforms = static_cast<std::uint64_t>(parse_double(f[3]));
    if (f[4] == "completed") {
      r.status = RunStatus::completed;
    } else if (f[4] == "blowup") {
      r.status = RunStatus::blowup;
    } else {
      throw Error(ErrorCode::malformed_document, "unknown status '" + f[4] + "'");
    }
    r.norm_kind = f[5];
    r.variant = f[6];
    rows.push_back(std::move(r));
  }
  return rows;
}

void write_slopes_csv(std::ostream& out, const std::vector<SlopeFit>& fits) {
  out << "scheme,variant,slope,rungs_used\n";
  for (const auto& f : fits) {
    out << f.scheme << ',' << f.variant << ','
        << (f.slope ? format_double(*f.slope) : std::string("indeterminate")) << ',' << f.used
        << '\n';
  }
}

std::vector<StabilityRow> run_stability_scan(const StudyConfig& config,
                                             const std::vector<SplittingScheme>& catalog) {
  if (config.scan_alpha1.empty()) throw Error(ErrorCode::config_error, "scan.alpha1 is empty");
  if (config.scan_steps == 0) throw Error(ErrorCode::config_error, "scan.steps must be positive");
  std::vector<StabilityRow> rows;
  for (const auto& alpha1 : config.scan_alpha1) {
    auto s = setup(config, config.modulus_flow, {{"alpha1", {alpha1}}});
    const int K = s.model.order_K();
    const Complex alphaK = s.model.leading_alpha();
    for (const auto& name : config.schemes) {
      const auto& scheme = find_scheme(catalog, name);
      const auto verdict = stability_predicate(scheme, alphaK, K);
      TimeGrid tg{config.t0, config.T, config.scan_steps};
      const auto out = evolve(scheme, s.model, s.grid, s.initial, tg, evolve_options(config));
      StabilityRow row;
      row.scheme = name;
      row.alpha1 = alpha1;
      row.predicted_stable = verdict.overall;
      row.max_margin = *std::max_element(verdict.margin.begin(), verdict.margin.end());
      row.status = out.status;
      row.agrees = verdict.overall == (out.status == RunStatus::completed);
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

void write_stability_csv(std::ostream& out, const std::vector<StabilityRow>& rows) {
  out << kStabilityCsvHeader << '\n';
  for (const auto& r : rows) {
    out << r.scheme << ',' << format_double(r.alpha1.real()) << ','
        << format_double(r.alpha1.imag()) << ',' << (r.predicted_stable ? "stable" : "unstable")
        << ',' << format_double(r.max_margin) << ',' << to_string(r.status) << ','
        << (r.agrees ? "yes" : "no") << '\n';
  }
}

SimulationResult simulate(const StudyConfig& config, const std::vector<SplittingScheme>& catalog,
                          const std::filesystem::path& out_dir) {
  if (config.simulate_scheme.empty()) {
    throw Error(ErrorCode::config_error, "simulate.scheme is required");
  }
  auto s = setup(config, config.modulus_flow);
  const auto& scheme = find_scheme(catalog, config.simulate_scheme);
  std::filesystem::create_directories(out_dir);
  SimulationResult result;
  EvolveOptions opts = evolve_options(config);
  opts.record_norms = true;
  opts.snapshot_every = config.snapshot_every == 0 ? std::max<std::size_t>(config.simulate_steps, 1)
                                                   : config.snapshot_every;
  const Grid& grid = s.grid;
  opts.on_snapshot = [&](std::size_t step, double time, const DoubledState& state) {
    char name[32];
    std::snprintf(name, sizeof(name), "snap_%06zu.bin", step);
    const auto path = out_dir / name;
    const std::span<const Complex> channels[] = {state.u(), state.v()};
    write_snapshot(path, grid, time, channels);
    result.snapshots.push_back(path);
  };
  TimeGrid tg{config.t0, config.T, config.simulate_steps};
  result.outcome = evolve(scheme, s.model, s.grid, s.initial, tg, opts);
  return result;
}

std::vector<OrderCheckRow> run_order_check(const StudyConfig& config,
                                           const std::vector<SplittingScheme>& catalog) {
  OrderEstimateOptions opts;
  opts.trials = config.order_trials;
  opts.dimension = config.order_dimension;
  opts.stepsizes =
      geometric_stepsizes(config.order_tau_first, config.order_tau_ratio, config.order_tau_count);
  opts.seed = config.seed;
  opts.matrix_norm = config.order_matrix_norm;
  std::vector<const SplittingScheme*> schemes;
  if (config.schemes.empty()) {
    for (const auto& s : catalog) schemes.push_back(&s);
  } else {
    for (const auto& n : config.schemes) schemes.push_back(&find_scheme(catalog, n));
  }
  std::vector<OrderCheckRow> rows;
  for (const auto* s : schemes) {
    OrderCheckRow row;
    row.scheme = s->name();
    row.declared = s->declared_order();
    try {
      row.observed = estimate_nonstiff_order(*s, opts).order;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::degenerate_fit) throw;
    }
    const double tol = row.declared <= 2 ? 0.1 : 0.25;
    row.pass = row.observed && std::abs(*row.observed - row.declared) <= tol;
    rows.push_back(row);
  }
  return rows;
}

void write_order_csv(std::ostream& out, const std::vector<OrderCheckRow>& rows) {
  out << "scheme,declared_order,observed_order,pass\n";
  for (const auto& r : rows) {
    out << r.scheme << ',' << r.declared << ','
        << (r.observed ? format_double(*r.observed) : std::string("indeterminate")) << ','
        << (r.pass ? "yes" : "no") << '\n';
  }
}

}  // namespace cosplit
