// Copyright 2026 The lopa-sim Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>

#include "lopa/constants.hpp"
#include "lopa/rng.hpp"

namespace lopa {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// Per-node first- and second-order oracle set for the bilevel pair (f_i, g_i)
// with outer variable x in R^n and inner variable theta in R^p. Second-order
// objects are dense but consumed through their action on vectors; matrix-free
// problems can override the *_apply entry points.
//
// Immutable after construction. Stochastic samplers take a caller-owned
// stream, so one oracle can serve many threads.
class BilevelOracle {
 public:
  virtual ~BilevelOracle() = default;

  int num_nodes() const { return m_; }
  int outer_dim() const { return n_; }
  int inner_dim() const { return p_; }
  const RawConstants& constants() const { return constants_; }

  // deterministic values and derivatives
  virtual double f_value(int i, const VectorXd& x, const VectorXd& theta) const = 0;
  virtual double g_value(int i, const VectorXd& x, const VectorXd& theta) const = 0;
  virtual VectorXd grad_x_f(int i, const VectorXd& x, const VectorXd& theta) const = 0;
  virtual VectorXd grad_theta_f(int i, const VectorXd& x, const VectorXd& theta) const = 0;
  virtual VectorXd grad_theta_g(int i, const VectorXd& x, const VectorXd& theta) const = 0;
  virtual MatrixXd hess_theta_g(int i, const VectorXd& x, const VectorXd& theta) const = 0;  // p x p
  virtual MatrixXd jac_xtheta_g(int i, const VectorXd& x, const VectorXd& theta) const = 0;  // n x p

  // unbiased stochastic estimators; batch >= 1 scales the noise down
  virtual VectorXd sample_grad_x_f(int i, const VectorXd& x, const VectorXd& theta,
                                   RngStream& rng, int batch) const = 0;
  virtual VectorXd sample_grad_theta_f(int i, const VectorXd& x, const VectorXd& theta,
                                       RngStream& rng, int batch) const = 0;
  virtual VectorXd sample_grad_theta_g(int i, const VectorXd& x, const VectorXd& theta,
                                       RngStream& rng, int batch) const = 0;
  virtual MatrixXd sample_hess_theta_g(int i, const VectorXd& x, const VectorXd& theta,
                                       RngStream& rng, int batch) const = 0;
  virtual MatrixXd sample_jac_xtheta_g(int i, const VectorXd& x, const VectorXd& theta,
                                       RngStream& rng, int batch) const = 0;

  // closed forms, available only for analytic instances
  virtual bool has_analytic() const { return false; }
  virtual VectorXd theta_star(int i, const VectorXd& x) const;     // throws NotAnalytic
  virtual VectorXd hypergradient(int i, const VectorXd& x) const;  // throws NotAnalytic

  // Reference inner solution: analytic when available, otherwise damped
  // Newton on g_i(x, .) to gradient norm `tol`.
  VectorXd theta_star_ref(int i, const VectorXd& x, double tol = 1e-10,
                          int max_iter = 200) const;

  // Hypergradient at the reference inner solution via a Cholesky solve.
  VectorXd hypergradient_ref(int i, const VectorXd& x, double tol = 1e-10) const;

 protected:
  BilevelOracle(int m, int n, int p) : m_(m), n_(n), p_(p) {}
  int m_ = 0, n_ = 0, p_ = 0;
  RawConstants constants_;
};

// Damped Newton with Armijo backtracking on a strongly convex objective.
// Returns the minimizer of g_i(x, .); throws InnerSolverFailed if the
// gradient norm tolerance is not reached.
VectorXd newton_inner_solve(const BilevelOracle& oracle, int i, const VectorXd& x,
                            const VectorXd& theta0, double tol, int max_iter);

}  // namespace lopa
