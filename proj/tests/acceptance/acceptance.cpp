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
// Acceptance driver: prints PASS or FAIL per criterion with diagnostics.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "common/ode_oracle.hpp"
#include "common/scheme_factory.hpp"
#include "cosplit/catalog.hpp"
#include "cosplit/experiments.hpp"
#include "cosplit/integrator.hpp"
#include "cosplit/model.hpp"
#include "cosplit/order_estimate.hpp"
#include "cosplit/spectral.hpp"
#include "cosplit/subflows.hpp"

namespace fs = std::filesystem;
using namespace cosplit;

namespace {

constexpr double kSlopeTolerance = 0.3;

class Report {
 public:
  void check(bool ok, const std::string& what) {
    ok_ = ok_ && ok;
    std::cout << "  [" << (ok ? "ok" : "FAIL") << "] " << what << '\n';
  }
  void note(const std::string& what) { std::cout << "  " << what << '\n'; }
  bool ok() const { return ok_; }

 private:
  bool ok_ = true;
};

std::string fmt(double x, int digits = 3) {
  if (x == 0.0) x = 0.0;
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", digits, x);
  return buf;
}

std::string slope_text(const SlopeFit* f) {
  if (f == nullptr || !f->slope) return "indeterminate";
  return fmt(*f->slope) + " (" + std::to_string(f->used) + " rungs)";
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool all_completed(const std::vector<RunRecord>& rows, const std::string& scheme,
                   const std::string& variant = "correct") {
  bool any = false;
  for (const auto& r : rows) {
    if (r.scheme != scheme || r.variant != variant) continue;
    any = true;
    if (r.status != RunStatus::completed) return false;
  }
  return any;
}

bool slope_matches(const SlopeFit* f, int declared) {
  return f != nullptr && f->slope && std::abs(*f->slope - declared) <= kSlopeTolerance;
}

void order_oracle(const fs::path& configs, Report& rep) {
  const auto cfg = load_study_config(configs / "order_check.yaml");
  const auto& cat = builtin_catalog();
  const auto t0 = std::chrono::steady_clock::now();
  const auto rows = run_order_check(cfg, cat);
  const double elapsed = seconds_since(t0);
  for (const auto& r : rows) {
    const double tol = r.declared <= 2 ? 0.1 : 0.25;
    const bool ok = r.observed && std::abs(*r.observed - r.declared) <= tol;
    rep.check(ok, r.scheme + ": declared " + std::to_string(r.declared) + ", observed " +
                      (r.observed ? fmt(*r.observed) : std::string("indeterminate")) +
                      " (tolerance " + fmt(tol) + ")");
  }
  rep.check(elapsed < 30.0, "runtime " + fmt(elapsed) + " s < 30 s");

  // Diagnostic only: larger test matrices lift the high-order local errors
  // above the fit floor.
  const auto scaled = load_study_config(configs / "order_check_scaled.yaml");
  for (const auto& r : run_order_check(scaled, cat)) {
    if (r.declared < 6) continue;
    rep.note("diagnostic (matrix norm " + fmt(scaled.order_matrix_norm) + "): " + r.scheme +
             " observed " + (r.observed ? fmt(*r.observed) : std::string("indeterminate")));
  }
}

struct Convergence {
  StudyConfig config;
  Reference reference;
  std::vector<RunRecord> rows;
  std::vector<SlopeFit> fits;
};

Convergence run_study(const fs::path& path, Report& rep) {
  Convergence c;
  c.config = load_study_config(path);
  const auto cat = study_catalog(c.config);
  const auto t0 = std::chrono::steady_clock::now();
  c.reference = compute_reference(c.config, cat);
  rep.note("reference " + c.reference.scheme + " with " + std::to_string(c.reference.steps) +
           " steps, cross-check " + fmt(c.reference.cross_check) + " vs " +
           c.reference.cross_scheme);
  c.rows = run_convergence(c.config, cat, c.reference);
  c.fits = fit_slopes(c.rows, c.reference.norm_value);
  rep.note("runtime " + fmt(seconds_since(t0)) + " s");
  return c;
}

bool complex_nonneg_a(const SplittingScheme& s) {
  return s.has_nonnegative_real_a() && !s.has_real_coefficients();
}

void rd1d(const fs::path& configs, Report& rep) {
  const auto c = run_study(configs / "rd1d.yaml", rep);
  const auto cat = study_catalog(c.config);
  bool any = false;
  for (const auto& name : c.config.schemes) {
    const auto& s = find_scheme(cat, name);
    const auto* f = find_fit(c.fits, name, "correct");
    if (!complex_nonneg_a(s)) {
      rep.note(name + " (not a complex nonneg-a scheme): slope " + slope_text(f));
      continue;
    }
    any = true;
    rep.check(all_completed(c.rows, name), name + " completes on every rung");
    rep.check(slope_matches(f, s.declared_order()),
              name + " slope " + slope_text(f) + " vs declared " + std::to_string(s.declared_order()));
  }
  rep.check(any, "at least one complex nonneg-a scheme in the study");
  const auto it = c.config.golden.find("yoshida4_blowup_tau");
  rep.check(it != c.config.golden.end(), "golden yoshida4_blowup_tau recorded");
  if (it == c.config.golden.end()) return;
  std::size_t rungs = 0;
  bool blew = true;
  for (const auto& r : c.rows) {
    if (r.scheme != "yoshida4" || r.tau < it->second * (1 - 1e-12)) continue;
    ++rungs;
    blew = blew && r.status == RunStatus::blowup;
  }
  rep.check(rungs > 0 && blew, "yoshida4 blows up on all " + std::to_string(rungs) +
                                   " rungs with tau >= " + fmt(it->second));
}

void rd3d(const fs::path& configs, Report& rep) {
  const auto c = run_study(configs / "rd3d.yaml", rep);
  const auto cat = study_catalog(c.config);
  bool order4 = false;
  bool order6 = false;
  for (const auto& name : c.config.schemes) {
    const auto& s = find_scheme(cat, name);
    const auto* f = find_fit(c.fits, name, "correct");
    if (!s.has_nonnegative_real_a()) continue;
    const bool ok = all_completed(c.rows, name) && slope_matches(f, s.declared_order());
    rep.note(name + ": slope " + slope_text(f) + " vs declared " +
             std::to_string(s.declared_order()) + (ok ? " (match)" : " (no match)"));
    order4 = order4 || (ok && s.declared_order() == 4);
    order6 = order6 || (ok && s.declared_order() == 6);
  }
  rep.check(order4, "an order-4 nonneg-a scheme matches its order");
  rep.check(order6, "an order-6 nonneg-a scheme matches its order");
  std::size_t rungs = 0;
  bool blew = true;
  for (const auto& r : c.rows) {
    if (r.scheme != "yoshida4") continue;
    ++rungs;
    blew = blew && r.status == RunStatus::blowup;
  }
  rep.check(rungs == c.config.ladder.size() && blew,
            "yoshida4 blows up on every rung (" + std::to_string(rungs) + " rungs)");
}

void cgl(const fs::path& configs, Report& rep) {
  const auto cfg = load_study_config(configs / "cgl.yaml");
  const auto cat = study_catalog(cfg);
  const auto t0 = std::chrono::steady_clock::now();
  const auto ref = compute_reference(cfg, cat);
  const auto rows = run_naive_vs_correct(cfg, cat, ref);
  const auto fits = fit_slopes(rows, ref.norm_value);
  rep.note("runtime " + fmt(seconds_since(t0)) + " s");
  bool found = false;
  for (const auto& name : cfg.schemes) {
    const auto& s = find_scheme(cat, name);
    const auto* correct = find_fit(fits, name, "correct");
    const auto* naive = find_fit(fits, name, "naive");
    rep.note(name + ": correct " + slope_text(correct) + ", naive " + slope_text(naive));
    if (s.declared_order() != 4) continue;
    const bool ok = slope_matches(correct, 4) && naive != nullptr && naive->slope &&
                    *naive->slope <= 2.5;
    found = found || ok;
  }
  rep.check(found, "an order-4 scheme keeps slope 4 +- 0.3 with the doubled flow and drops to <= 2.5 "
                   "with the frozen modulus");
}

void stability(const fs::path& configs, Report& rep) {
  const auto cfg = load_study_config(configs / "stability.yaml");
  const auto cat = study_catalog(cfg);
  const auto rows = run_stability_scan(cfg, cat);
  auto is_complex = [&](const std::string& n) { return !find_scheme(cat, n).has_real_coefficients(); };
  auto is_nonneg = [&](const std::string& n) { return find_scheme(cat, n).has_nonnegative_real_a(); };
  bool mild_complete = true;
  bool strong_blowup = true;
  bool strong_nonneg = true;
  bool agree = true;
  std::size_t mild = 0, strong = 0;
  for (const auto& r : rows) {
    const std::string tag = r.scheme + " at alpha1 = " + fmt(r.alpha1.real()) + "+" +
                            fmt(r.alpha1.imag()) + "i: predicted " +
                            (r.predicted_stable ? "stable" : "unstable") + " (margin " +
                            fmt(r.max_margin) + "), " + std::string(to_string(r.status));
    rep.note(tag);
    if (!r.predicted_stable) agree = agree && r.status == RunStatus::blowup;
    if (r.alpha1 == Complex(1.0, 1.0) && is_complex(r.scheme)) {
      ++mild;
      if (r.status != RunStatus::completed) {
        mild_complete = false;
        rep.note("  -> complex scheme did not complete at 1+1i");
      }
    }
    if (r.alpha1 == Complex(1.0, 10.0)) {
      ++strong;
      if (r.max_margin > 0.0 && r.status != RunStatus::blowup) strong_blowup = false;
      if (is_nonneg(r.scheme) && r.status != RunStatus::completed) strong_nonneg = false;
    }
  }
  rep.check(mild > 0 && mild_complete, "every complex scheme completes at alpha1 = 1+1i");
  rep.check(strong > 0 && strong_blowup,
            "every scheme with a positive margin blows up at alpha1 = 1+10i");
  rep.check(strong > 0 && strong_nonneg, "every nonneg-real-a scheme completes at alpha1 = 1+10i");
  rep.check(agree, "empirical blowup wherever the predicate says unstable");
}

Complex draw_disc(std::mt19937_64& rng, double radius) {
  std::uniform_real_distribution<double> r(0.0, 1.0);
  std::uniform_real_distribution<double> phase(-std::numbers::pi, std::numbers::pi);
  return std::polar(radius * std::sqrt(r(rng)), phase(rng));
}

void subflows(const fs::path&, Report& rep) {
  using cosplit::testing::LComplex;
  using cosplit::testing::widen;
  std::mt19937_64 rng(31337);
  double worst = 0.0;
  std::size_t failed = 0;
  for (int k = 0; k < 1000; ++k) {
    const Complex u = draw_disc(rng, 3.0);
    const Complex W = draw_disc(rng, 10.0);
    const Complex b = draw_disc(rng, 10.0);
    const Complex h = draw_disc(rng, 1e-2);
    DoubledState s = DoubledState::from_field(std::vector<Complex>{u});
    const std::vector<Complex> Wv{W};
    if (gl_nonlinear_flow(s, Wv, b, h) != FlowStatus::ok) {
      ++failed;
      continue;
    }
    const auto ref = cosplit::testing::rk4_pair(
        u, std::conj(u), [W = widen(W), b = widen(b), h = widen(h)](LComplex x, LComplex y) {
          return std::pair{h * (W * x + b * x * x * y),
                           h * (std::conj(W) * y + std::conj(b) * y * y * x)};
        });
    worst = std::max(worst, std::abs(s.u()[0] - ref.first) / std::abs(ref.first));
    worst = std::max(worst, std::abs(s.v()[0] - ref.second) / std::abs(ref.second));
  }
  rep.check(failed == 0 && worst < 1e-10, "gl_nonlinear_flow vs RK4 oracle on 1000 tuples: worst " +
                                              fmt(worst) + " (< 1e-10), failures " +
                                              std::to_string(failed));

  std::mt19937_64 rng2(4242);
  double worst_b = 0.0;
  failed = 0;
  for (int k = 0; k < 1000; ++k) {
    const Complex y = draw_disc(rng2, 1.5);
    const Complex c1 = draw_disc(rng2, 0.5);
    const Complex c3 = draw_disc(rng2, 0.2);
    const auto closed = bernoulli_point_flow(y, c1, c3);
    const auto stepped = taylor_point_flow(y, c1, 0.0, c3, 1e-15);
    if (!closed || !stepped) {
      ++failed;
      continue;
    }
    worst_b = std::max(worst_b, std::abs(*closed - *stepped) / std::abs(*stepped));
  }
  rep.check(failed == 0 && worst_b < 1e-11, "Bernoulli closed form vs substepped integrator: worst " +
                                                fmt(worst_b) + " (< 1e-11)");
}

void conservation(const fs::path& configs, Report& rep) {
  const auto cfg = load_study_config(configs / "gpe.yaml");
  const auto grid = build_grid(cfg);
  const auto model = build_model(cfg, grid);
  const auto cat = study_catalog(cfg);
  const auto& scheme = find_scheme(cat, cfg.simulate_scheme);
  const auto init = DoubledState::from_field(build_initial(cfg, grid).values);
  EvolveOptions opt;
  opt.record_norms = true;
  const auto out = evolve(scheme, model, grid, init, TimeGrid{cfg.t0, cfg.T, 100}, opt);
  double drift = 0.0;
  for (double n : out.norm_history) {
    drift = std::max(drift, std::abs(n - out.norm_history.front()) / out.norm_history.front());
  }
  rep.check(scheme.has_real_coefficients(), scheme.name() + " has real coefficients");
  rep.check(out.status == RunStatus::completed && out.norm_history.size() == 101 && drift < 1e-10,
            "GPE L2 norm drift over 100 steps: " + fmt(drift) + " (< 1e-10)");

  std::mt19937_64 rng(99);
  std::normal_distribution<double> n(0.0, 1.0);
  const auto g = make_grid(2, {32, 32}, {5.0, 5.0});
  std::vector<Complex> alphas{0.0, Complex(0.0, 0.7), 0.0, Complex(0.0, -0.01)};
  const auto symbol = linear_symbol(alphas, g);
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    ComplexBuffer spec(g.size());
    for (auto& c : spec) c = {n(rng), n(rng)};
    const double before = spectral_l2_norm(g, spec);
    linear_flow(spec, symbol, Complex(std::uniform_real_distribution<double>(0.001, 1.0)(rng)));
    worst = std::max(worst, std::abs(spectral_l2_norm(g, spec) - before) / before);
  }
  rep.check(worst < 1e-14, "imaginary-symbol linear_flow norm change: worst " + fmt(worst) + " (< 1e-14)");
}

void spectral(const fs::path&, Report& rep) {
  std::mt19937_64 rng(5150);
  std::normal_distribution<double> n(0.0, 1.0);
  const std::vector<Grid> grids = {make_grid(1, {256}, {std::numbers::pi}),
                                   make_grid(2, {64, 64}, {4.0, 4.0}),
                                   make_grid(3, {32, 32, 32}, {std::numbers::pi, 2.0, 3.0})};
  for (const auto& g : grids) {
    SpectralTransform t(g);
    TransformCounter counter;
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
      ComplexBuffer f(g.size());
      for (auto& c : f) c = {n(rng), n(rng)};
      const auto back = to_physical(t, to_spectrum(t, f, counter), counter);
      double num = 0.0, den = 0.0;
      for (std::size_t i = 0; i < f.size(); ++i) {
        num += std::norm(back[i] - f[i]);
        den += std::norm(f[i]);
      }
      worst = std::max(worst, std::sqrt(num / den));
    }
    rep.check(worst < 1e-12 && counter.total() == 200,
              std::to_string(g.dim()) + "D round trip: worst " + fmt(worst) + " (< 1e-12), " +
                  std::to_string(counter.total()) + " transforms counted");
  }

  const auto g1 = make_grid(1, {64}, {std::numbers::pi});
  const auto g2 = make_grid(2, {32, 32}, {8.0, 8.0});
  const auto g3 = make_grid(3, {16, 16, 16}, {std::numbers::pi, std::numbers::pi, std::numbers::pi});
  const auto V = harmonic_potential(g2);
  const std::vector<std::tuple<std::string, Grid, ModelSpec>> presets = {
      {"rd_1d", g1, preset_rd_1d()},
      {"rd_3d", g3, preset_rd_hi_3d()},
      {"quasicrystal_2d", g2, preset_quasicrystal_2d()},
      {"cgl", g1, preset_cgl(Complex(1.0, 1.0), 1.0, Complex(-1.0, -1.0))},
      {"gpe", g2, preset_gpe(-0.5, 1.0, 1.0, V)},
      {"gpe_parabolic", g2, preset_gpe_parabolic(0.5, 1.0, -1.0, V)}};
  std::vector<SplittingScheme> schemes = {find_scheme(builtin_catalog(), "lie_trotter")};
  std::mt19937_64 draw(808);
  std::uniform_real_distribution<double> part(0.1, 1.0);
  for (std::size_t stages = 2; stages <= 5; ++stages) {
    std::vector<CoefficientPair> pairs(stages);
    Complex sa{0.0, 0.0}, sb{0.0, 0.0};
    for (auto& p : pairs) {
      const double re_a = part(draw);
      p.a = {re_a, 0.2 * re_a * (part(draw) - 0.55)};
      p.b = {part(draw), part(draw) - 0.55};
      sa += p.a;
      sb += p.b;
    }
    for (auto& p : pairs) {
      p.a /= sa;
      p.b /= sb;
    }
    schemes.push_back(SplittingScheme::create("random_s" + std::to_string(stages), pairs, 1,
                                              StructureTag::none));
  }
  for (const auto& [name, grid, model] : presets) {
    GaussianInitial gi;
    gi.center.assign(grid.dim(), 0.0);
    gi.width.assign(grid.dim(), 1.0);
    gi.periodize = true;
    const auto init = DoubledState::from_field(gaussian_initial(grid, gi).values);
    bool ok = true;
    std::string detail;
    for (const auto& s : schemes) {
      const std::size_t steps = 3;
      const auto out = evolve(s, model, grid, init, TimeGrid{0.0, 0.01, steps});
      const auto expected = 2 * s.stages() * steps;
      ok = ok && out.status == RunStatus::completed && out.transforms.total() == expected;
      detail += " s=" + std::to_string(s.stages()) + ":" + std::to_string(out.transforms.total()) +
                "/" + std::to_string(expected);
    }
    rep.check(ok, name + " transforms per 3 steps (got/expected):" + detail);
  }
}

void structure(const fs::path&, Report& rep) {
  cosplit::testing::SchemeFactory factory(1234);
  for (auto tag : {StructureTag::symmetric, StructureTag::symmetric_conjugate,
                   StructureTag::alternating_conjugate}) {
    int correct = 0;
    for (int i = 0; i < 1000; ++i) correct += classify_structure(factory.make(tag)) == tag;
    rep.check(correct == 1000, std::string(to_string(tag)) + ": " + std::to_string(correct) +
                                   "/1000 builder outputs classified correctly");
  }
  const auto tag = classify_structure(find_scheme(builtin_catalog(), "strang"));
  rep.check(tag == StructureTag::symmetric, "strang classified as " + std::string(to_string(tag)));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cosplit acceptance criteria"};
  fs::path configs = "configs";
  std::vector<std::string> only;
  app.add_option("--configs", configs, "Directory holding the study configurations")->check(CLI::ExistingDirectory);
  app.add_option("--only", only, "Run only the named criteria");
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::pair<std::string, std::function<void(const fs::path&, Report&)>>> criteria = {
      {"order_oracle", order_oracle}, {"rd1d", rd1d},         {"rd3d", rd3d},
      {"cgl", cgl},                   {"stability", stability}, {"subflows", subflows},
      {"conservation", conservation}, {"spectral", spectral}, {"structure", structure}};

  for (const auto& name : only) {
    bool known = false;
    for (const auto& c : criteria) known = known || c.first == name;
    if (!known) {
      std::cerr << "unknown criterion '" << name << "'\n";
      return 2;
    }
  }
  bool all = true;
  for (const auto& [name, fn] : criteria) {
    if (!only.empty() && std::find(only.begin(), only.end(), name) == only.end()) continue;
    std::cout << name << '\n';
    Report rep;
    try {
      fn(configs, rep);
    } catch (const std::exception& e) {
      rep.check(false, std::string("error: ") + e.what());
    }
    std::cout << (rep.ok() ? "PASS " : "FAIL ") << name << "\n\n" << std::flush;
    all = all && rep.ok();
  }
  return all ? 0 : 1;
}
