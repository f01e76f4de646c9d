// Copyright 2026 The lopa-sim Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <utility>

#include "lopa/constants.hpp"
#include "lopa/optimizer.hpp"
#include "lopa/trace.hpp"

namespace lopa {

enum class LyapunovVariant { LG, GT };

// Average hypergradient at x, through closed forms when available and the
// Newton reference solver plus an exact Hessian solve otherwise.
VectorXd hypergradient_avg(const BilevelOracle& oracle, const VectorXd& x);

// ||grad Phi(x_bar)||^2
double stationarity(const BilevelOracle& oracle, const VectorXd& x_bar);

// Measured heterogeneity sum_i ||grad Phi_i(x) - grad Phi(x)||^2 and its
// bound C1 b_f^2 + C2 b_g^2. Requires closed-form hypergradients.
std::pair<double, double> heterogeneity(const BilevelOracle& oracle,
                                        const VectorXd& x);

struct LyapunovCoeffs {
  double d0 = 1.0, d1 = 0.0, d2 = 0.0, d3 = 0.0, d4 = 0.0, d5 = 0.0, d6 = 0.0;
};

LyapunovCoeffs lyapunov_coeffs(LyapunovVariant variant,
                               const DerivedConstants& constants,
                               const StepSizes& steps, double rho);

// Fills the error fields of a TraceRow from a swarm snapshot. The exact
// inner-solution terms (hv_err, inner_err) are only emitted for oracles with
// closed forms; reference-solver noise is not reported as theory error.
TraceRow error_breakdown(const SwarmState& swarm, const BilevelOracle& oracle);

// Weighted Lyapunov value; requires closed-form theta*, v*.
double lyapunov(const SwarmState& swarm, const BilevelOracle& oracle,
                const DerivedConstants& constants, const StepSizes& steps,
                double rho, LyapunovVariant variant);

// MetricHook implementation bundling the above.
struct LyapunovSettings {
  DerivedConstants constants;
  StepSizes steps;
  double rho = 0.0;
  LyapunovVariant variant = LyapunovVariant::GT;
};

class MetricsEngine {
 public:
  MetricsEngine(const BilevelOracle& oracle,
                std::optional<LyapunovSettings> lyap = std::nullopt)
      : oracle_(oracle), lyap_(std::move(lyap)) {}

  TraceRow operator()(const SwarmState& swarm, long k) const;

 private:
  const BilevelOracle& oracle_;
  std::optional<LyapunovSettings> lyap_;
};

}  // namespace lopa
