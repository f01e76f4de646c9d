// Copyright 2026 The lopa-sim Authors
// SPDX-License-Identifier: Apache-2.0
#include "lopa/hypergrad.hpp"

namespace lopa {

void inner_step(HvState& state, double beta, const VectorXd& d_sample) {
  if (!(beta > 0.0)) throw StepSizeOutOfRange("inner_step: beta must be > 0");
  if (d_sample.size() != state.theta.size())
    throw DimensionMismatch("inner_step: direction dimension mismatch");
  state.theta -= beta * d_sample;
}

void hv_step(HvState& state, double lambda, const MatrixXd& hess_sample,
             const VectorXd& grad_theta_f_sample, double mu_g) {
  if (!(lambda > 0.0) || (mu_g > 0.0 && !(lambda < 1.0 / mu_g)))
    throw StepSizeOutOfRange("hv_step: lambda must satisfy 0 < lambda < 1/mu_g");
  const auto p = state.v.size();
  if (hess_sample.rows() != p || hess_sample.cols() != p ||
      grad_theta_f_sample.size() != p)
    throw DimensionMismatch("hv_step: sample dimensions mismatch");
  const MatrixXd sym = 0.5 * (hess_sample + hess_sample.transpose());
  state.v -= lambda * (sym * state.v - grad_theta_f_sample);
}

VectorXd hypergrad_sample(const VectorXd& grad_x_f_sample,
                          const MatrixXd& jac_sample, const VectorXd& v) {
  if (jac_sample.rows() != grad_x_f_sample.size() || jac_sample.cols() != v.size())
    throw DimensionMismatch("hypergrad_sample: shape mismatch");
  return grad_x_f_sample - jac_sample * v;
}

void momentum_step(MomentumState& state, double gamma, const VectorXd& s_new) {
  if (!(gamma > 0.0) || gamma > 1.0)
    throw GammaOutOfRange("momentum_step: gamma must be in (0,1]");
  if (s_new.size() != state.z.size())
    throw DimensionMismatch("momentum_step: dimension mismatch");
  state.s = s_new;
  state.z = s_new + (1.0 - gamma) * (state.z - s_new);
}

namespace {
void check_ns_step(double lambda, double L_g_theta, int Q) {
  if (!(lambda > 0.0))
    throw StepSizeOutOfRange("neumann/shia: lambda must be > 0");
  if (L_g_theta > 0.0 && lambda > 1.0 / L_g_theta + 1e-15)
    throw StepSizeOutOfRange("neumann/shia: lambda must be <= 1/L_g_theta");
  if (Q < 0) throw StepSizeOutOfRange("neumann/shia: Q must be >= 0");
}
}  // namespace

VectorXd neumann_inverse_apply(const HessianAction& hess, double lambda, int Q,
                               const VectorXd& rhs, long* hessian_calls,
                               double L_g_theta) {
  check_ns_step(lambda, L_g_theta, Q);
  VectorXd y = VectorXd::Zero(rhs.size());
  for (int t = 0; t <= Q; ++t) {
    y = rhs + y - lambda * hess(y);
    if (hessian_calls) ++*hessian_calls;
  }
  return lambda * y;
}

VectorXd shia_hv(const HessianAction& hess, double lambda, int Q,
                 const VectorXd& grad, long* hessian_calls, double L_g_theta) {
  check_ns_step(lambda, L_g_theta, Q);
  VectorXd acc = VectorXd::Zero(grad.size());
  VectorXd w = grad;
  for (int t = 0; t <= Q; ++t) {
    acc += lambda * w;
    w -= lambda * hess(w);  // prepares the t+1 term; samples once per term
    if (hessian_calls) ++*hessian_calls;
  }
  return acc;
}

VectorXd exact_hv(const MatrixXd& hess, const VectorXd& grad) {
  if (hess.rows() != hess.cols() || hess.rows() != grad.size())
    throw DimensionMismatch("exact_hv: shape mismatch");
  if ((hess - hess.transpose()).cwiseAbs().maxCoeff() >
      1e-10 * std::max(1.0, hess.cwiseAbs().maxCoeff()))
    throw NotPositiveDefinite("exact_hv: matrix not symmetric");
  Eigen::LLT<MatrixXd> llt(hess);
  if (llt.info() != Eigen::Success)
    throw NotPositiveDefinite("exact_hv: Cholesky failed (not SPD)");
  VectorXd v = llt.solve(grad);
  const double resid = (hess * v - grad).norm();
  if (resid > 1e-10 * std::max(1.0, grad.norm())) {
    v += llt.solve(grad - hess * v);  // one refinement step
    if ((hess * v - grad).norm() > 1e-10 * std::max(1.0, grad.norm()))
      throw NotPositiveDefinite("exact_hv: residual too large");
  }
  return v;
}

}  // namespace lopa
