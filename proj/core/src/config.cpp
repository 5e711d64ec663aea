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
#include "cosplit/config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "cosplit/error.hpp"

namespace cosplit {

namespace {

[[noreturn]] void fail(const std::string& what) { throw Error(ErrorCode::config_error, what); }

double as_real(const YAML::Node& n, const std::string& where) {
  try {
    return n.as<double>();
  } catch (const YAML::Exception&) {
    fail(where + ": expected a number");
  }
}

// Numbers, or strings of the form "<k>pi", "<k>*pi", "pi".
double as_length(const YAML::Node& n, const std::string& where) {
  if (n.IsScalar()) {
    auto s = n.as<std::string>();
    if (s.size() >= 2 && s.substr(s.size() - 2) == "pi") {
      s.resize(s.size() - 2);
      if (!s.empty() && s.back() == '*') s.pop_back();
      const double k = s.empty() ? 1.0 : as_real(YAML::Node(s), where);
      return k * std::numbers::pi;
    }
  }
  return as_real(n, where);
}

Complex as_complex(const YAML::Node& n, const std::string& where) {
  if (n.IsMap()) {
    const double re = n["re"] ? as_real(n["re"], where) : 0.0;
    const double im = n["im"] ? as_real(n["im"], where) : 0.0;
    return {re, im};
  }
  if (n.IsSequence()) {
    if (n.size() != 2) fail(where + ": complex values are [re, im]");
    return {as_real(n[0], where), as_real(n[1], where)};
  }
  return {as_real(n, where), 0.0};
}

std::vector<Complex> as_complex_list(const YAML::Node& n, const std::string& where) {
  if (!n.IsSequence()) return {as_complex(n, where)};
  std::vector<Complex> out;
  for (const auto& item : n) out.push_back(as_complex(item, where));
  return out;
}

template <class T>
std::vector<T> as_list(const YAML::Node& n, const std::string& where) {
  if (!n.IsSequence()) fail(where + ": expected a list");
  try {
    return n.as<std::vector<T>>();
  } catch (const YAML::Exception&) {
    fail(where + ": invalid list entries");
  }
}

template <class T>
T get_or(const YAML::Node& parent, const char* key, T fallback, const std::string& where) {
  const auto n = parent[key];
  if (!n) return fallback;
  try {
    return n.as<T>();
  } catch (const YAML::Exception&) {
    fail(where + "." + key + ": invalid value");
  }
}

const std::vector<Complex>* find_param(const std::map<std::string, std::vector<Complex>>& a,
                                       const std::map<std::string, std::vector<Complex>>& b,
                                       const std::string& key) {
  if (auto it = b.find(key); it != b.end()) return &it->second;
  if (auto it = a.find(key); it != a.end()) return &it->second;
  return nullptr;
}

}  // namespace

void validate_ladder(const std::vector<std::size_t>& steps) {
  if (steps.size() < 4) fail("ladder needs at least 4 rungs");
  for (auto s : steps) {
    if (s == 0) fail("ladder step counts must be positive");
  }
  const double ratio = static_cast<double>(steps[1]) / static_cast<double>(steps[0]);
  if (!(ratio > 1.0)) fail("ladder step counts must increase");
  for (std::size_t k = 1; k < steps.size(); ++k) {
    const double r = static_cast<double>(steps[k]) / static_cast<double>(steps[k - 1]);
    if (std::abs(r - ratio) > 1e-12 * ratio) fail("ladder must be geometric");
  }
}

StudyConfig parse_study_config(std::string_view yaml_text, const std::filesystem::path& base_dir) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(yaml_text));
  } catch (const YAML::Exception& e) {
    fail(std::string("YAML parse error: ") + e.what());
  }
  if (!root.IsMap()) fail("configuration must be a mapping");
  StudyConfig c;
  c.base_dir = base_dir;
  c.name = get_or<std::string>(root, "name", "study", "root");
  c.seed = get_or<std::uint64_t>(root, "seed", 1, "root");

  // model and grid are optional so that order-check configs can omit them;
  // build_model and build_grid report their absence.
  const auto model = root["model"];
  if (model && !model.IsMap()) fail("model: expected a mapping");
  if (model) {
    c.preset = get_or<std::string>(model, "preset", "", "model");
    if (c.preset.empty()) fail("model.preset is required");
  }
  for (const auto& kv : model ? model : YAML::Node(YAML::NodeType::Map)) {
    const auto key = kv.first.as<std::string>();
    if (key == "preset") continue;
    if (key == "modulus_flow") {
      const auto v = kv.second.as<std::string>();
      if (v == "doubled") {
        c.modulus_flow = ModulusFlow::doubled;
      } else if (v == "frozen_modulus") {
        c.modulus_flow = ModulusFlow::frozen_modulus;
      } else {
        fail("model.modulus_flow must be doubled or frozen_modulus");
      }
      continue;
    }
    if (key == "flow_tolerance") {
      c.flow_tolerance = as_real(kv.second, "model.flow_tolerance");
      continue;
    }
    c.params[key] = as_complex_list(kv.second, "model." + key);
  }

  if (const auto grid = root["grid"]) {
    c.sizes = as_list<std::size_t>(grid["sizes"], "grid.sizes");
    if (const auto ext = grid["extents"]) {
      if (!ext.IsSequence()) fail("grid.extents: expected a list");
      for (const auto& e : ext) c.extents.push_back(as_length(e, "grid.extents"));
    } else {
      c.extents.assign(c.sizes.size(), std::numbers::pi);
    }
  }

  if (const auto init = root["initial"]) {
    c.initial_kind = get_or<std::string>(init, "kind", "gaussian", "initial");
    if (c.initial_kind != "gaussian" && c.initial_kind != "noise") {
      fail("initial.kind must be gaussian or noise");
    }
    if (init["center"]) c.gaussian.center = as_list<double>(init["center"], "initial.center");
    if (init["width"]) c.gaussian.width = as_list<double>(init["width"], "initial.width");
    if (init["amplitude"]) c.gaussian.amplitude = as_complex(init["amplitude"], "initial.amplitude");
    c.gaussian.periodize = get_or<bool>(init, "periodize", false, "initial");
  }
  if (c.gaussian.width.empty()) c.gaussian.width = {0.5};

  if (const auto time = root["time"]) {
    c.t0 = get_or<double>(time, "t0", 0.0, "time");
    c.T = get_or<double>(time, "T", 1.0, "time");
  }
  if (!(c.T > c.t0)) fail("time.T must exceed time.t0");

  if (const auto ladder = root["ladder"]) {
    c.ladder = as_list<std::size_t>(ladder["steps"], "ladder.steps");
    validate_ladder(c.ladder);
  }
  if (root["schemes"]) c.schemes = as_list<std::string>(root["schemes"], "schemes");

  if (const auto ref = root["reference"]) {
    if (ref["schemes"]) c.reference_schemes = as_list<std::string>(ref["schemes"], "reference");
    c.reference_divisor = get_or<std::size_t>(ref, "divisor", 64, "reference");
    c.reference_tolerance = get_or<double>(ref, "tolerance", 1e-9, "reference");
    if (c.reference_divisor == 0) fail("reference.divisor must be positive");
  }

  const auto norm = get_or<std::string>(root, "norm", "auto", "root");
  if (norm == "auto") {
    c.norm = NormKind::automatic;
  } else if (norm == "real") {
    c.norm = NormKind::real;
  } else if (norm == "complex") {
    c.norm = NormKind::complex;
  } else {
    fail("norm must be auto, real or complex");
  }
  c.blowup_factor = get_or<double>(root, "blowup_factor", 1e6, "root");

  if (const auto scan = root["scan"]) {
    if (scan["alpha1"]) c.scan_alpha1 = as_complex_list(scan["alpha1"], "scan.alpha1");
    c.scan_steps = get_or<std::size_t>(scan, "steps", 0, "scan");
  }
  if (const auto sim = root["simulate"]) {
    c.simulate_scheme = get_or<std::string>(sim, "scheme", "", "simulate");
    c.simulate_steps = get_or<std::size_t>(sim, "steps", 0, "simulate");
    c.snapshot_every = get_or<std::size_t>(sim, "snapshot_every", 0, "simulate");
  }
  if (const auto oc = root["order_check"]) {
    c.order_trials = get_or<int>(oc, "trials", 5, "order_check");
    c.order_dimension = get_or<int>(oc, "dimension", 6, "order_check");
    c.order_tau_first = get_or<double>(oc, "tau_first", 0.1, "order_check");
    c.order_tau_ratio = get_or<double>(oc, "tau_ratio", 0.8, "order_check");
    c.order_tau_count = get_or<int>(oc, "tau_count", 20, "order_check");
    c.order_matrix_norm = get_or<double>(oc, "matrix_norm", 1.0, "order_check");
  }
  if (root["catalog"]) {
    std::filesystem::path p = root["catalog"].as<std::string>();
    c.catalog = p.is_absolute() ? p : base_dir / p;
  }
  if (const auto golden = root["golden"]) {
    for (const auto& kv : golden) {
      c.golden[kv.first.as<std::string>()] = as_real(kv.second, "golden");
    }
  }
  return c;
}

StudyConfig load_study_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io_error, "cannot open config " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_study_config(ss.str(), path.parent_path());
}

Grid build_grid(const StudyConfig& config) {
  if (config.sizes.empty()) fail("missing 'grid' section");
  if (config.sizes.size() != config.extents.size()) {
    fail("grid.sizes and grid.extents must have the same length");
  }
  return make_grid(config.sizes.size(), config.sizes, config.extents);
}

ModelSpec build_model(const StudyConfig& config, const Grid& grid,
                      const std::map<std::string, std::vector<Complex>>& overrides) {
  auto scalar = [&](const std::string& key, Complex fallback) {
    const auto* v = find_param(config.params, overrides, key);
    if (!v) return fallback;
    if (v->size() != 1) fail("model." + key + " must be a scalar");
    return v->front();
  };
  auto real = [&](const std::string& key, double fallback) {
    const Complex z = scalar(key, fallback);
    if (z.imag() != 0.0) fail("model." + key + " must be real");
    return z.real();
  };
  const auto& p = config.preset;
  if (p.empty()) fail("missing 'model' section");
  ModelSpec m;
  if (p == "rd_1d" || p == "rd_3d") {
    auto params = p == "rd_1d" ? default_rd_1d_params() : default_rd_3d_params();
    if (const auto* a = find_param(config.params, overrides, "alphas")) params.alphas = *a;
    params.beta1 = scalar("beta1", params.beta1);
    params.beta2 = scalar("beta2", params.beta2);
    params.beta3 = scalar("beta3", params.beta3);
    m = p == "rd_1d" ? preset_rd_1d(params) : preset_rd_hi_3d(params);
  } else if (p == "quasicrystal_2d") {
    QuasicrystalParams q;
    q.epsilon = real("epsilon", q.epsilon);
    q.g = real("g", q.g);
    q.q1 = real("q1", q.q1);
    m = preset_quasicrystal_2d(q);
  } else if (p == "cgl") {
    m = preset_cgl(scalar("alpha1", {1.0, 1.0}), scalar("alpha0", 0.0),
                   scalar("beta2", {-1.0, -1.0}));
  } else if (p == "gpe" || p == "gpe_parabolic") {
    const auto V = harmonic_potential(grid);
    const double alpha = real("alpha", p == "gpe" ? -0.5 : 0.5);
    const double beta = real("beta", 1.0);
    const double theta = real("theta", 1.0);
    m = p == "gpe" ? preset_gpe(alpha, beta, theta, V) : preset_gpe_parabolic(alpha, beta, theta, V);
  } else {
    fail("unknown model preset '" + p + "'");
  }
  m.modulus_flow = config.modulus_flow;
  m.flow_tolerance = config.flow_tolerance;
  return m;
}

InitialField build_initial(const StudyConfig& config, const Grid& grid) {
  if (config.initial_kind == "noise") {
    return noise_initial(grid, config.gaussian.amplitude, config.seed);
  }
  auto g = config.gaussian;
  if (g.center.empty()) g.center.assign(grid.dim(), 0.0);
  return gaussian_initial(grid, g);
}

}  // namespace cosplit
