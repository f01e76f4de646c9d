// Copyright 2026 The lopa-sim Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>

#include "lopa/dataset.hpp"
#include "lopa/oracle.hpp"

namespace lopa {

// l2-regularized logistic-regression hyperparameter optimization. The outer
// variable is the per-feature log regularization strength lam in R^p:
//   g_i(lam,theta) = sum_train log(1 + exp(-b s'theta)) + theta' diag(e^lam) theta
//   f_i(lam,theta) = sum_val   log(1 + exp(-b s'theta))
// Stochastic estimators subsample the loss sums with replacement; the
// regularizer enters deterministically. No closed-form inner solution; the
// reference theta* comes from damped Newton.
class LogRegHpoOracle final : public BilevelOracle {
 public:
  LogRegHpoOracle(Dataset dataset, NodePartition partition,
                  double lam_box = 2.0);

  double f_value(int i, const VectorXd& x, const VectorXd& theta) const override;
  double g_value(int i, const VectorXd& x, const VectorXd& theta) const override;
  VectorXd grad_x_f(int i, const VectorXd& x, const VectorXd& theta) const override;
  VectorXd grad_theta_f(int i, const VectorXd& x, const VectorXd& theta) const override;
  VectorXd grad_theta_g(int i, const VectorXd& x, const VectorXd& theta) const override;
  MatrixXd hess_theta_g(int i, const VectorXd& x, const VectorXd& theta) const override;
  MatrixXd jac_xtheta_g(int i, const VectorXd& x, const VectorXd& theta) const override;

  VectorXd sample_grad_x_f(int i, const VectorXd& x, const VectorXd& theta,
                           RngStream& rng, int batch) const override;
  VectorXd sample_grad_theta_f(int i, const VectorXd& x, const VectorXd& theta,
                               RngStream& rng, int batch) const override;
  VectorXd sample_grad_theta_g(int i, const VectorXd& x, const VectorXd& theta,
                               RngStream& rng, int batch) const override;
  MatrixXd sample_hess_theta_g(int i, const VectorXd& x, const VectorXd& theta,
                               RngStream& rng, int batch) const override;
  MatrixXd sample_jac_xtheta_g(int i, const VectorXd& x, const VectorXd& theta,
                               RngStream& rng, int batch) const override;

  const Dataset& dataset() const { return data_; }
  const NodePartition& partition() const { return part_; }

 private:
  // sum over the given rows of the loss gradient wrt theta
  VectorXd loss_grad(const std::vector<int>& rows, const VectorXd& theta,
                     double scale) const;

  Dataset data_;
  NodePartition part_;
  double lam_box_;
};

std::unique_ptr<LogRegHpoOracle> make_logreg_hpo(Dataset dataset,
                                                 NodePartition partition,
                                                 int m);

}  // namespace lopa
