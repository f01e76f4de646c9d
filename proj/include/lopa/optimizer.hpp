// Copyright 2026 The lopa-sim Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lopa/constants.hpp"
#include "lopa/graph.hpp"
#include "lopa/oracle.hpp"
#include "lopa/trace.hpp"

namespace lopa {

enum class Scheme { LG, GT, QLOOP_LG, QLOOP_GT };
enum class HvEstimator { NS, SHIA };
enum class ScheduleKind { manual, LG, GT, LG_deterministic, GT_deterministic };
enum class Executor { serial, openmp };

const char* to_string(Scheme s);
const char* to_string(ScheduleKind s);
std::optional<Scheme> scheme_from_string(const std::string& s);
std::optional<ScheduleKind> schedule_from_string(const std::string& s);
std::optional<HvEstimator> estimator_from_string(const std::string& s);

struct StepSizes {
  double alpha = 0.0;
  double beta = 0.0;
  double lambda = 0.0;
  double gamma = 0.0;
  double tau = 0.5;
};

// Checks tau in (0,1], gamma in (0,1], and the lambda/beta validity ranges
// against the problem constants. `unsafe` downgrades violations of the
// constant-dependent ranges to acceptance (positivity is always enforced).
void validate_stepsizes(const StepSizes& s, const RawConstants* constants,
                        bool unsafe = false);

struct NodeState {
  VectorXd x, theta, v, d, h, s, z, y;
};

struct OracleCounters {
  long grad_g_theta = 0;
  long hess_g = 0;
  long jac_g = 0;
  long grad_f_theta = 0;
  long grad_f_x = 0;
  long grad_total() const { return grad_g_theta + jac_g + grad_f_theta + grad_f_x; }
};

struct SwarmState {
  std::vector<NodeState> nodes;
  long iter = 0;
  OracleCounters counters;
  std::uint64_t seed = 0;

  int size() const { return static_cast<int>(nodes.size()); }
  VectorXd x_bar() const;
  VectorXd y_bar() const;
  VectorXd z_bar() const;
};

struct RunConfig {
  Scheme scheme = Scheme::GT;
  long K = 1000;
  StepSizes steps;
  int batch_inner = 1;   // xi draws (g-side samples)
  int batch_outer = 1;   // varsigma draws (f-side samples)
  int Q = 10;            // Q-loop Hessian terms
  int N = 10;            // Q-loop inner SGD steps
  HvEstimator estimator = HvEstimator::SHIA;
  std::uint64_t seed = 0;
  long cadence = 1;      // metric hook every `cadence` rounds
  bool unsafe_steps = false;
  double x0_scale = 1.0;
  Executor executor = Executor::openmp;
};

// Node states at iteration 0: x^0 identical across nodes (one seeded draw),
// theta^0 = v^0 = 0, (d,h,s)^0 from one stochastic sample at the initial
// point, z^0 = s^0 and y^0 = z^0. Initialization draws are not charged to
// the oracle-call counters; those count rounds only.
SwarmState init_run(const BilevelOracle& oracle, const WeightMatrix& weights,
                    const RunConfig& config);

// One synchronous round: gossip, then the (theta, v, x) state updates with
// the previous round's directions, then fresh (d, h, s, z), then y.
void lopa_round(SwarmState& swarm, const BilevelOracle& oracle,
                const WeightMatrix& weights, const StepSizes& steps,
                Scheme scheme, Executor executor = Executor::openmp,
                int batch_inner = 1, int batch_outer = 1);

// Q-loop baseline round: N inner SGD steps, Hv recomputed from scratch with
// a Q-term estimator (no v tracking, no momentum), then the x/y updates as
// in lopa_round. Hessian counter grows by Q+1 per node per round.
void qloop_round(SwarmState& swarm, const BilevelOracle& oracle,
                 const WeightMatrix& weights, const StepSizes& steps, int Q,
                 int N, HvEstimator estimator, Scheme scheme,
                 Executor executor = Executor::openmp, int batch_inner = 1,
                 int batch_outer = 1);

// Called at iteration 0, every `cadence` rounds, and at the final round.
// Must not consume optimizer randomness (streams are counter-based, so
// metric evaluation cannot perturb the trajectory).
using MetricHook = std::function<TraceRow(const SwarmState&, long k)>;

Trace run(const BilevelOracle& oracle, const WeightMatrix& weights,
          const RunConfig& config, const MetricHook& hook);

// Step-size construction. Manual values pass through validation unchanged;
// the schedule kinds assemble alpha from the K-dependent min rule with
// gamma, lambda, beta proportional to alpha. `v0_scale` stands in for the
// initial suboptimality scale in the a_0 coefficient.
struct ScheduleInfo {
  StepSizes steps;
  double u = 0.0;        // alpha cap
  double a0 = 0.0, a1 = 0.0, a2 = 0.0;
  double c_gamma = 0.0, c_lambda = 0.0, c_beta = 0.0;
  double sigma_p = 0.0, sigma_c = 0.0, vartheta = 0.0;
};

ScheduleInfo schedule_stepsizes(ScheduleKind kind, long K,
                                const DerivedConstants& constants, double rho,
                                int m,
                                std::optional<StepSizes> manual = std::nullopt,
                                double tau = 0.5, double v0_scale = 1.0);

}  // namespace lopa
