// Copyright 2026 The lopa-sim Authors
// SPDX-License-Identifier: Apache-2.0
#include <initializer_list>

#include "lopa/config.hpp"
#include "lopa/errors.hpp"

namespace lopa {

namespace {

ConfigMap kv(std::initializer_list<std::pair<const char*, const char*>> pairs) {
  ConfigMap m;
  for (const auto& [k, v] : pairs) m[k] = ConfigEntry{v, 0};
  return m;
}

// Shared heterogeneous quadratic used by the deterministic studies. The
// instance is mildly conditioned so the schedule caps leave a workable step.
ConfigMap quad_het_base() {
  return kv({{"topology.kind", "complete"},
             {"topology.m", "8"},
             {"problem.kind", "quadratic"},
             {"problem.n", "10"},
             {"problem.p", "10"},
             {"problem.mu_g", "1.0"},
             {"problem.L_g", "1.3"},
             {"problem.T_scale", "0.5"},
             {"problem.R_min", "1.0"},
             {"problem.R_max", "1.3"},
             {"problem.B_scale", "0.3"},
             {"problem.c_scale", "1.0"},
             {"problem.t_scale", "1.0"},
             {"problem.b_f_scale", "1.0"},
             {"problem.b_g_scale", "0.5"},
             {"problem.seed", "1234"},
             {"algorithm.x0_scale", "1.0"},
             {"metrics.cadence", "10"}});
}

void merge(ConfigMap& dst, const ConfigMap& src) {
  for (const auto& [k, v] : src) dst[k] = v;
}

}  // namespace

std::vector<std::string> preset_names() {
  return {"quad-gt-deterministic", "quad-lg-deterministic", "quad-stochastic",
          "quad-stochastic-sweep", "hetero-sweep",          "topology-sweep",
          "hpo-logreg",            "qloop-comparison"};
}

ConfigMap preset_config(const std::string& name) {
  if (name == "quad-gt-deterministic") {
    ConfigMap m = quad_het_base();
    merge(m, kv({{"algorithm.scheme", "GT"},
                 {"algorithm.schedule", "GT_deterministic"},
                 {"algorithm.K", "5000"}}));
    return m;
  }
  if (name == "quad-lg-deterministic") {
    ConfigMap m = quad_het_base();
    merge(m, kv({{"algorithm.scheme", "LG"},
                 {"algorithm.schedule", "LG_deterministic"},
                 {"algorithm.K", "5000"}}));
    return m;
  }
  if (name == "quad-stochastic") {
    ConfigMap m = quad_het_base();
    merge(m, kv({{"topology.kind", "ring"},
                 {"problem.sigma.g_theta", "0.4"},
                 {"problem.sigma.g_thetatheta", "0.3"},
                 {"problem.sigma.g_xtheta", "0.3"},
                 {"problem.sigma.f_theta", "0.4"},
                 {"problem.sigma.f_x", "0.4"},
                 {"algorithm.scheme", "GT"},
                 {"algorithm.schedule", "GT"},
                 {"algorithm.K", "2000"},
                 {"metrics.cadence", "1"}}));
    return m;
  }
  if (name == "quad-stochastic-sweep") {
    ConfigMap m = quad_het_base();
    merge(m, kv({{"problem.sigma.g_theta", "1.0"},
                 {"problem.sigma.g_thetatheta", "0.5"},
                 {"problem.sigma.g_xtheta", "0.5"},
                 {"problem.sigma.f_theta", "1.0"},
                 {"problem.sigma.f_x", "1.0"},
                 {"algorithm.scheme", "GT"},
                 {"algorithm.schedule", "GT"},
                 {"algorithm.K", "4000"},
                 {"metrics.cadence", "100"},
                 {"run.seeds", "0..9"}}));
    return m;
  }
  if (name == "hetero-sweep") {
    return kv({{"topology.kind", "ring"},
               {"topology.m", "8"},
               {"problem.kind", "logreg_hpo"},
               {"dataset.p", "8"},
               {"dataset.n", "480"},
               {"dataset.separation", "2.0"},
               {"dataset.seed", "3"},
               {"partition.mode", "strong"},
               {"partition.val_fraction", "0.3"},
               {"partition.seed", "5"},
               {"algorithm.scheme", "GT"},
               {"algorithm.schedule", "manual"},
               {"algorithm.alpha", "0.01"},
               {"algorithm.beta", "0.01"},
               {"algorithm.lambda", "0.008"},
               {"algorithm.gamma", "0.4"},
               {"algorithm.tau", "0.4"},
               {"algorithm.batch_inner", "10"},
               {"algorithm.batch_outer", "10"},
               {"algorithm.K", "1000"},
               {"metrics.cadence", "20"}});
  }
  if (name == "topology-sweep") {
    ConfigMap m = quad_het_base();
    merge(m, kv({{"topology.m", "16"},
                 {"topology.kind", "ring"},
                 {"topology.p", "0.4"},
                 {"topology.seed", "11"},
                 {"problem.n", "4"},
                 {"problem.p", "4"},
                 {"problem.b_f_scale", "0.6"},
                 {"problem.b_g_scale", "0.3"},
                 {"problem.sigma.g_theta", "0.05"},
                 {"problem.sigma.f_theta", "0.05"},
                 {"problem.sigma.f_x", "0.05"},
                 {"algorithm.scheme", "GT"},
                 {"algorithm.schedule", "GT"},
                 {"algorithm.K", "60000"},
                 {"metrics.cadence", "200"},
                 {"analysis.threshold", "1e-2"},
                 {"run.seeds", "0..2"}}));
    return m;
  }
  if (name == "hpo-logreg") {
    return kv({{"topology.kind", "erdos_renyi"},
               {"topology.p", "0.5"},
               {"topology.seed", "21"},
               {"topology.m", "10"},
               {"problem.kind", "logreg_hpo"},
               {"dataset.p", "12"},
               {"dataset.n", "600"},
               {"dataset.separation", "2.5"},
               {"dataset.seed", "3"},
               {"partition.mode", "strong"},
               {"partition.val_fraction", "0.3"},
               {"partition.seed", "5"},
               {"algorithm.scheme", "GT"},
               {"algorithm.schedule", "manual"},
               {"algorithm.alpha", "0.01"},
               {"algorithm.beta", "0.01"},
               {"algorithm.lambda", "0.008"},
               {"algorithm.gamma", "0.4"},
               {"algorithm.tau", "0.4"},
               {"algorithm.batch_inner", "20"},
               {"algorithm.batch_outer", "20"},
               {"algorithm.K", "2000"},
               {"metrics.cadence", "20"}});
  }
  if (name == "qloop-comparison") {
    ConfigMap m = quad_het_base();
    merge(m, kv({{"algorithm.scheme", "GT"},
                 {"algorithm.schedule", "manual"},
                 {"algorithm.alpha", "0.05"},
                 {"algorithm.beta", "0.35"},
                 {"algorithm.lambda", "0.35"},
                 {"algorithm.gamma", "0.5"},
                 {"algorithm.tau", "0.5"},
                 {"algorithm.Q", "10"},
                 {"algorithm.N", "10"},
                 {"algorithm.estimator", "SHIA"},
                 {"algorithm.K", "3000"},
                 {"metrics.cadence", "10"},
                 {"analysis.threshold", "1e-6"}}));
    return m;
  }
  throw UnknownValue("preset '" + name + "' unknown; known presets: " +
                     [] {
                       std::string s;
                       for (const auto& n : preset_names()) s += n + " ";
                       return s;
                     }());
}

std::vector<PresetVariant> preset_variants(const std::string& preset) {
  if (preset == "quad-stochastic-sweep") {
    return {{"K4000", kv({{"algorithm.K", "4000"}})},
            {"K16000", kv({{"algorithm.K", "16000"}})}};
  }
  if (preset == "hetero-sweep") {
    std::vector<PresetVariant> v;
    for (const char* mode : {"iid", "weak", "strong"})
      for (const char* scheme : {"LG", "GT"})
        v.push_back({std::string(mode) + "_" + scheme,
                     kv({{"partition.mode", mode}, {"algorithm.scheme", scheme}})});
    return v;
  }
  if (preset == "topology-sweep") {
    std::vector<PresetVariant> v;
    for (const char* kind : {"ring", "star", "erdos_renyi"}) {
      for (const char* scheme : {"LG", "GT"}) {
        ConfigMap o = kv({{"topology.kind", kind}, {"algorithm.scheme", scheme}});
        o["algorithm.schedule"] = ConfigEntry{scheme, 0};  // matching corollary
        v.push_back({std::string(kind) + "_" + scheme, std::move(o)});
      }
    }
    return v;
  }
  if (preset == "qloop-comparison") {
    return {{"lopa_gt", kv({{"algorithm.scheme", "GT"}})},
            {"qloop_gt", kv({{"algorithm.scheme", "QLOOP_GT"}})}};
  }
  return {{"", {}}};
}

}  // namespace lopa
