// Copyright 2026 The lopa-sim Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lopa/config.hpp"
#include "lopa/metrics.hpp"

namespace lopa {

struct BuiltProblem {
  std::unique_ptr<BilevelOracle> oracle;
  Graph graph;
  WeightMatrix weights;
};

BuiltProblem build_problem(const ExperimentConfig& cfg);

// Resolves manual values or a corollary schedule into a RunConfig.
RunConfig build_run_config(const ExperimentConfig& cfg, const BilevelOracle& oracle,
                           double rho, std::uint64_t seed,
                           ScheduleInfo* schedule_out = nullptr);

// One seeded run with the standard metrics hook.
Trace run_single(const ExperimentConfig& cfg, const BuiltProblem& problem,
                 std::uint64_t seed);

struct VariantResult {
  std::string name;
  ExperimentConfig config;
  double rho = 0.0;
  ScheduleInfo schedule;
  std::vector<std::string> trace_files;
  std::string summary_file;
  std::optional<long> iters_to_threshold;
  std::optional<long> hessian_calls_to_threshold;
};

struct ExperimentResult {
  std::vector<std::string> files;
  std::vector<VariantResult> variants;
  std::string manifest_file;
};

// Runs a preset (or an explicit config when `preset` is empty), one trace
// file per seed per variant, plus per-variant mean/min summaries and a
// manifest with config and content hashes. Content hashes ignore the
// wall_time column so repeated runs of the same seeds match.
ExperimentResult run_experiment(const std::string& preset,
                                const ConfigMap& overrides,
                                const std::vector<std::uint64_t>& seeds_override,
                                const std::string& out_dir);

std::uint64_t fnv1a64(const std::string& s);
std::string strip_wall_time_column(const std::string& csv_text);

}  // namespace lopa
