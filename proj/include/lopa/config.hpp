// Copyright 2026 The lopa-sim Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "lopa/dataset.hpp"
#include "lopa/graph.hpp"
#include "lopa/optimizer.hpp"
#include "lopa/quadratic.hpp"

namespace lopa {

// Flat "key = value" text with dotted section prefixes. '#' starts a comment.
struct ConfigEntry {
  std::string value;
  int line = 0;
};
using ConfigMap = std::map<std::string, ConfigEntry>;

ConfigMap parse_kv_text(std::istream& is, const std::string& name = "config");
ConfigMap parse_kv_file(const std::string& path);

struct TopologyConfig {
  GraphKind kind = GraphKind::ring;
  int m = 8;
  double p = 0.5;  // erdos_renyi edge probability
  std::uint64_t seed = 7;
};

enum class ProblemKind { quadratic, logreg_hpo };

struct LogRegConfig {
  std::string dataset_path;  // empty: synthetic
  int p = 10;
  int n_samples = 400;
  double separation = 2.0;
  std::uint64_t dataset_seed = 3;
  PartitionMode mode = PartitionMode::strong;
  double val_fraction = 0.3;
  std::uint64_t partition_seed = 5;
};

struct AlgorithmConfig {
  Scheme scheme = Scheme::GT;
  long K = 1000;
  ScheduleKind schedule = ScheduleKind::manual;
  StepSizes manual{0.01, 0.01, 0.008, 0.4, 0.4};
  double tau = 0.5;
  double v0_scale = 1.0;
  int Q = 10;
  int N = 10;
  HvEstimator estimator = HvEstimator::SHIA;
  int batch_inner = 1;
  int batch_outer = 1;
  double x0_scale = 1.0;
  bool unsafe_steps = false;
  Executor executor = Executor::openmp;
};

struct ExperimentConfig {
  std::string preset;  // empty when fully explicit
  TopologyConfig topology;
  ProblemKind problem_kind = ProblemKind::quadratic;
  QuadraticSpec quadratic;
  std::uint64_t problem_seed = 1234;
  LogRegConfig logreg;
  AlgorithmConfig algorithm;
  long cadence = 10;
  double threshold = 1e-3;  // to-threshold analysis in summaries
  std::vector<std::uint64_t> seeds{0};
  std::string output_dir = "out";
  bool emit_jsonl_too = false;

  // canonical "key = value" text of the merged configuration
  std::string canonical_text() const;
};

// Validates keys and values; unknown keys and malformed values are errors.
ExperimentConfig build_config(const ConfigMap& kv);

// Preset defaults by name (error when unknown); `overrides` wins.
ConfigMap preset_config(const std::string& name);
std::vector<std::string> preset_names();
ExperimentConfig resolve_config(const std::string& preset_or_empty,
                                const ConfigMap& overrides);

// Sweep presets expand into several named runs (extra key overrides applied
// on top of the user's); single-run presets yield one unnamed variant.
struct PresetVariant {
  std::string name;  // empty for single-run presets
  ConfigMap overrides;
};
std::vector<PresetVariant> preset_variants(const std::string& preset);

// "0..9", "3" or "0,4,7"
std::vector<std::uint64_t> parse_seed_spec(const std::string& spec);

}  // namespace lopa
