// Copyright 2026 The lopa-sim Authors
// SPDX-License-Identifier: Apache-2.0
#include "lopa/metrics.hpp"

#include <cmath>

#include "lopa/errors.hpp"
#include "lopa/hypergrad.hpp"

namespace lopa {

VectorXd hypergradient_avg(const BilevelOracle& oracle, const VectorXd& x) {
  VectorXd acc = VectorXd::Zero(oracle.outer_dim());
  for (int i = 0; i < oracle.num_nodes(); ++i) acc += oracle.hypergradient_ref(i, x);
  return acc / static_cast<double>(oracle.num_nodes());
}

double stationarity(const BilevelOracle& oracle, const VectorXd& x_bar) {
  return hypergradient_avg(oracle, x_bar).squaredNorm();
}

std::pair<double, double> heterogeneity(const BilevelOracle& oracle,
                                        const VectorXd& x) {
  if (!oracle.has_analytic())
    throw NotAnalytic("heterogeneity: closed-form hypergradients required");
  const int m = oracle.num_nodes();
  std::vector<VectorXd> grads(m);
  VectorXd avg = VectorXd::Zero(oracle.outer_dim());
  for (int i = 0; i < m; ++i) {
    grads[i] = oracle.hypergradient(i, x);
    avg += grads[i];
  }
  avg /= m;
  double measured = 0.0;
  for (int i = 0; i < m; ++i) measured += (grads[i] - avg).squaredNorm();
  const DerivedConstants c = derive_constants(oracle.constants());
  return {measured, heterogeneity_bound(c)};
}

LyapunovCoeffs lyapunov_coeffs(LyapunovVariant variant,
                               const DerivedConstants& c, const StepSizes& s,
                               double rho) {
  const double one_rho = 1.0 - rho;
  const double mix = c.L_fg_x + 32.0 * c.C_g_xtheta * c.C_g_xtheta * c.L_fg_theta /
                                    (c.mu_g * c.mu_g);
  LyapunovCoeffs d;
  d.d0 = 1.0;
  d.d1 = 8.0 * c.C_g_xtheta * c.C_g_xtheta * s.tau * s.alpha / (c.mu_g * s.lambda);
  d.d2 = mix * s.tau * s.alpha / (c.omega_theta * s.beta);
  d.d3 = s.tau * s.alpha / (2.0 * s.gamma);
  if (variant == LyapunovVariant::LG) {
    d.d4 = 24.0 * c.phi * s.tau * std::pow(s.alpha, 4) / (one_rho * one_rho * s.gamma);
    d.d5 = 2.0 * c.phi * s.alpha / one_rho;
    d.d6 = 0.0;
  } else {
    d.d4 = 64.0 * c.phi * s.tau * s.gamma * s.alpha * s.alpha / std::pow(one_rho, 4);
    d.d5 = 4.0 * c.phi * s.alpha / one_rho;
    d.d6 = 16.0 * c.phi * s.tau * s.alpha * s.alpha / std::pow(one_rho, 3);
  }
  return d;
}

TraceRow error_breakdown(const SwarmState& swarm, const BilevelOracle& oracle) {
  const int m = swarm.size();
  TraceRow row;
  const VectorXd xb = swarm.x_bar();
  const VectorXd yb = swarm.y_bar();
  const VectorXd zb = swarm.z_bar();

  double consensus = 0.0, grad_err = 0.0;
  for (int i = 0; i < m; ++i) {
    consensus += (swarm.nodes[i].x - xb).squaredNorm();
    grad_err += (swarm.nodes[i].y - yb).squaredNorm();
  }
  row.consensus_err = consensus / m;
  row.grad_err = grad_err / m;

  VectorXd avg_grad = VectorXd::Zero(oracle.outer_dim());
  std::vector<VectorXd> node_grads(m);
  for (int i = 0; i < m; ++i) {
    node_grads[i] = oracle.hypergradient_ref(i, xb);
    avg_grad += node_grads[i];
  }
  avg_grad /= m;
  row.stationarity = avg_grad.squaredNorm();
  row.ave_var_err = (avg_grad - zb).squaredNorm();
  double var_err = 0.0;
  for (int i = 0; i < m; ++i)
    var_err += (node_grads[i] - swarm.nodes[i].z).squaredNorm();
  row.var_err = var_err / m;

  if (oracle.has_analytic()) {
    double inner = 0.0, hv = 0.0;
    for (int i = 0; i < m; ++i) {
      const VectorXd ts = oracle.theta_star(i, xb);
      inner += (swarm.nodes[i].theta - ts).squaredNorm();
      const VectorXd vstar =
          exact_hv(oracle.hess_theta_g(i, xb, ts), oracle.grad_theta_f(i, xb, ts));
      hv += (swarm.nodes[i].v - vstar).squaredNorm();
    }
    row.inner_err = inner / m;
    row.hv_err = hv / m;
  }
  return row;
}

double lyapunov(const SwarmState& swarm, const BilevelOracle& oracle,
                const DerivedConstants& constants, const StepSizes& steps,
                double rho, LyapunovVariant variant) {
  if (!oracle.has_analytic())
    throw NotAnalytic("lyapunov: closed-form theta*, v* required");
  const TraceRow row = error_breakdown(swarm, oracle);
  const LyapunovCoeffs d = lyapunov_coeffs(variant, constants, steps, rho);
  const VectorXd xb = swarm.x_bar();
  double phi = 0.0;
  for (int i = 0; i < oracle.num_nodes(); ++i)
    phi += oracle.f_value(i, xb, oracle.theta_star(i, xb));
  phi /= oracle.num_nodes();
  return d.d0 * phi + d.d1 * *row.hv_err + d.d2 * *row.inner_err +
         d.d3 * row.ave_var_err + d.d4 * row.var_err + d.d5 * row.consensus_err +
         d.d6 * row.grad_err;
}

TraceRow MetricsEngine::operator()(const SwarmState& swarm, long) const {
  TraceRow row = error_breakdown(swarm, oracle_);
  if (lyap_ && oracle_.has_analytic()) {
    const LyapunovCoeffs d =
        lyapunov_coeffs(lyap_->variant, lyap_->constants, lyap_->steps, lyap_->rho);
    const VectorXd xb = swarm.x_bar();
    double phi = 0.0;
    for (int i = 0; i < oracle_.num_nodes(); ++i)
      phi += oracle_.f_value(i, xb, oracle_.theta_star(i, xb));
    phi /= oracle_.num_nodes();
    row.lyapunov = d.d0 * phi + d.d1 * *row.hv_err + d.d2 * *row.inner_err +
                   d.d3 * row.ave_var_err + d.d4 * row.var_err +
                   d.d5 * row.consensus_err + d.d6 * row.grad_err;
  }
  return row;
}

}  // namespace lopa
