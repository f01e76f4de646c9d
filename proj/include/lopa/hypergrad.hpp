// Copyright 2026 The lopa-sim Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <functional>

#include "lopa/errors.hpp"

namespace lopa {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// Single-step tracker state for one node: inner iterate theta, the
// Hessian-inverse-vector estimate v, and their directions d and h.
struct HvState {
  VectorXd theta;
  VectorXd v;
  VectorXd d;
  VectorXd h;
};

// Raw hypergradient sample s and its moving average z.
struct MomentumState {
  VectorXd s;
  VectorXd z;
};

// theta <- theta - beta * d_sample
void inner_step(HvState& state, double beta, const VectorXd& d_sample);

// v <- v - lambda * (H_sample v - grad_theta_f_sample). The Hessian sample is
// symmetrized before use; requires 0 < lambda < 1/mu_g.
void hv_step(HvState& state, double lambda, const MatrixXd& hess_sample,
             const VectorXd& grad_theta_f_sample, double mu_g);

// s = grad_x_f_sample - jac_sample * v
VectorXd hypergrad_sample(const VectorXd& grad_x_f_sample,
                          const MatrixXd& jac_sample, const VectorXd& v);

// z <- s_new + (1-gamma)(z - s_new); gamma in (0,1], gamma = 1 disables the
// moving average.
void momentum_step(MomentumState& state, double gamma, const VectorXd& s_new);

// Action of a (possibly freshly sampled) inner Hessian on a vector.
using HessianAction = std::function<VectorXd(const VectorXd&)>;

// Truncated Neumann approximation lambda * sum_{q=0}^{Q} (I - lambda H)^q rhs,
// evaluated by the recursion y <- rhs + y - lambda H y from y = 0. Exactly
// Q+1 Hessian actions; `hessian_calls`, when given, is incremented by Q+1.
// Requires lambda in (0, 1/L_g_theta] when L_g_theta is supplied (> 0).
VectorXd neumann_inverse_apply(const HessianAction& hess, double lambda, int Q,
                               const VectorXd& rhs, long* hessian_calls = nullptr,
                               double L_g_theta = 0.0);

// Summed Hessian-inverse approximation: accumulates lambda (I - lambda H)^t
// grad for t = 0..Q term by term. Same value as neumann_inverse_apply and the
// same Q+1 Hessian-action accounting.
VectorXd shia_hv(const HessianAction& hess, double lambda, int Q,
                 const VectorXd& grad, long* hessian_calls = nullptr,
                 double L_g_theta = 0.0);

// Exact solve H v = grad by Cholesky; residual <= 1e-10 ||grad||.
VectorXd exact_hv(const MatrixXd& hess, const VectorXd& grad);

}  // namespace lopa
