// Copyright 2026 The lopa-sim Authors
// SPDX-License-Identifier: Apache-2.0
#include "lopa/logreg.hpp"

#include <cmath>

#include "lopa/errors.hpp"

namespace lopa {

namespace {

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

// log(1 + exp(-u)) without overflow
double softplus_neg(double u) {
  if (u > 0.0) return std::log1p(std::exp(-u));
  return -u + std::log1p(std::exp(u));
}

}  // namespace

LogRegHpoOracle::LogRegHpoOracle(Dataset dataset, NodePartition partition,
                                 double lam_box)
    : BilevelOracle(static_cast<int>(partition.train.size()), dataset.dim(),
                    dataset.dim()),
      data_(std::move(dataset)),
      part_(std::move(partition)),
      lam_box_(lam_box) {
  if (m_ < 1) throw EmptyPartition("logreg: partition has no nodes");
  if (part_.val.size() != static_cast<size_t>(m_))
    throw EmptyPartition("logreg: train/val node count mismatch");
  for (int i = 0; i < m_; ++i)
    if (part_.train[i].empty() || part_.val[i].empty())
      throw EmptyPartition("logreg: node " + std::to_string(i) +
                           " has an empty train or validation set");

  // Conservative smoothness constants over the reference box
  // ||lam||_inf <= lam_box. They gate step-size validation; the HPO presets
  // run with manual step sizes.
  const double e_hi = std::exp(lam_box_);
  const double e_lo = std::exp(-lam_box_);
  double lg = 0.0, cf = 0.0, lf = 0.0, s3 = 0.0, snorm_sum_max = 0.0;
  for (int i = 0; i < m_; ++i) {
    MatrixXd gram_tr = MatrixXd::Zero(p_, p_);
    double sum_s = 0.0, sum_s3 = 0.0;
    for (int r : part_.train[i]) {
      const auto& s = data_.features[r];
      gram_tr += s * s.transpose();
      sum_s += s.norm();
      sum_s3 += std::pow(s.norm(), 3);
    }
    MatrixXd gram_val = MatrixXd::Zero(p_, p_);
    double sum_val = 0.0;
    for (int r : part_.val[i]) {
      const auto& s = data_.features[r];
      gram_val += s * s.transpose();
      sum_val += s.norm();
    }
    Eigen::SelfAdjointEigenSolver<MatrixXd> est(gram_tr), esv(gram_val);
    lg = std::max(lg, 0.25 * est.eigenvalues().maxCoeff());
    lf = std::max(lf, 0.25 * esv.eigenvalues().maxCoeff());
    cf = std::max(cf, sum_val);
    s3 = std::max(s3, sum_s3);
    snorm_sum_max = std::max(snorm_sum_max, sum_s);
  }
  const double theta_bound = snorm_sum_max / (2.0 * e_lo);
  constants_.mu_g = 2.0 * e_lo;
  constants_.L_g_theta = lg + 2.0 * e_hi;
  constants_.L_f_theta = std::max(lf, 1e-12);
  constants_.L_f_x = 1e-12;  // grad_x f is identically zero
  constants_.C_f_theta = std::max(cf, 1e-12);
  constants_.C_g_xtheta = 2.0 * e_hi * theta_bound;
  constants_.L_g_xtheta = 2.0 * e_hi * (1.0 + theta_bound);
  constants_.L_g_thetatheta = 0.1 * s3 + 2.0 * e_hi;
  // crude variance envelopes for the minibatch estimators (batch 1)
  double smax = 0.0;
  for (const auto& s : data_.features) smax = std::max(smax, s.norm());
  constants_.sigma.g_theta = snorm_sum_max * smax;
  constants_.sigma.f_theta = cf * smax;
  constants_.sigma.g_thetatheta = 0.25 * snorm_sum_max * smax * smax;
  constants_.sigma.g_xtheta = 0.0;  // jacobian estimator is exact
  constants_.sigma.f_x = 0.0;       // grad_x f estimator is exact
}

double LogRegHpoOracle::f_value(int i, const VectorXd&, const VectorXd& theta) const {
  double v = 0.0;
  for (int r : part_.val[i])
    v += softplus_neg(data_.labels[r] * data_.features[r].dot(theta));
  return v;
}

double LogRegHpoOracle::g_value(int i, const VectorXd& x, const VectorXd& theta) const {
  double v = 0.0;
  for (int r : part_.train[i])
    v += softplus_neg(data_.labels[r] * data_.features[r].dot(theta));
  for (int a = 0; a < p_; ++a) v += std::exp(x(a)) * theta(a) * theta(a);
  return v;
}

VectorXd LogRegHpoOracle::loss_grad(const std::vector<int>& rows,
                                    const VectorXd& theta, double scale) const {
  VectorXd g = VectorXd::Zero(p_);
  for (int r : rows) {
    const double b = data_.labels[r];
    const auto& s = data_.features[r];
    g -= b * sigmoid(-b * s.dot(theta)) * s;
  }
  return scale * g;
}

VectorXd LogRegHpoOracle::grad_x_f(int, const VectorXd&, const VectorXd&) const {
  return VectorXd::Zero(n_);
}

VectorXd LogRegHpoOracle::grad_theta_f(int i, const VectorXd&, const VectorXd& theta) const {
  return loss_grad(part_.val[i], theta, 1.0);
}

VectorXd LogRegHpoOracle::grad_theta_g(int i, const VectorXd& x, const VectorXd& theta) const {
  VectorXd g = loss_grad(part_.train[i], theta, 1.0);
  for (int a = 0; a < p_; ++a) g(a) += 2.0 * std::exp(x(a)) * theta(a);
  return g;
}

MatrixXd LogRegHpoOracle::hess_theta_g(int i, const VectorXd& x, const VectorXd& theta) const {
  MatrixXd h = MatrixXd::Zero(p_, p_);
  for (int r : part_.train[i]) {
    const double b = data_.labels[r];
    const auto& s = data_.features[r];
    const double sg = sigmoid(b * s.dot(theta));
    h += sg * (1.0 - sg) * s * s.transpose();
  }
  for (int a = 0; a < p_; ++a) h(a, a) += 2.0 * std::exp(x(a));
  return h;
}

MatrixXd LogRegHpoOracle::jac_xtheta_g(int, const VectorXd& x, const VectorXd& theta) const {
  MatrixXd j = MatrixXd::Zero(n_, p_);
  for (int a = 0; a < p_; ++a) j(a, a) = 2.0 * std::exp(x(a)) * theta(a);
  return j;
}

VectorXd LogRegHpoOracle::sample_grad_x_f(int, const VectorXd&, const VectorXd&,
                                          RngStream&, int) const {
  return VectorXd::Zero(n_);
}

VectorXd LogRegHpoOracle::sample_grad_theta_f(int i, const VectorXd&, const VectorXd& theta,
                                              RngStream& rng, int batch) const {
  const auto& rows = part_.val[i];
  if (batch >= static_cast<int>(rows.size()))
    return loss_grad(rows, theta, 1.0);
  const auto mb = sample_minibatch(rng, rows, batch);
  return loss_grad(mb, theta, static_cast<double>(rows.size()) / batch);
}

VectorXd LogRegHpoOracle::sample_grad_theta_g(int i, const VectorXd& x, const VectorXd& theta,
                                              RngStream& rng, int batch) const {
  const auto& rows = part_.train[i];
  VectorXd g;
  if (batch >= static_cast<int>(rows.size())) {
    g = loss_grad(rows, theta, 1.0);
  } else {
    const auto mb = sample_minibatch(rng, rows, batch);
    g = loss_grad(mb, theta, static_cast<double>(rows.size()) / batch);
  }
  for (int a = 0; a < p_; ++a) g(a) += 2.0 * std::exp(x(a)) * theta(a);
  return g;
}

MatrixXd LogRegHpoOracle::sample_hess_theta_g(int i, const VectorXd& x, const VectorXd& theta,
                                              RngStream& rng, int batch) const {
  const auto& rows = part_.train[i];
  std::vector<int> mb;
  double scale = 1.0;
  if (batch >= static_cast<int>(rows.size())) {
    mb = rows;
  } else {
    mb = sample_minibatch(rng, rows, batch);
    scale = static_cast<double>(rows.size()) / batch;
  }
  MatrixXd h = MatrixXd::Zero(p_, p_);
  for (int r : mb) {
    const double b = data_.labels[r];
    const auto& s = data_.features[r];
    const double sg = sigmoid(b * s.dot(theta));
    h += sg * (1.0 - sg) * s * s.transpose();
  }
  h *= scale;
  for (int a = 0; a < p_; ++a) h(a, a) += 2.0 * std::exp(x(a));
  return h;
}

MatrixXd LogRegHpoOracle::sample_jac_xtheta_g(int i, const VectorXd& x, const VectorXd& theta,
                                              RngStream&, int) const {
  return jac_xtheta_g(i, x, theta);
}

std::unique_ptr<LogRegHpoOracle> make_logreg_hpo(Dataset dataset,
                                                 NodePartition partition, int m) {
  if (static_cast<int>(partition.train.size()) != m)
    throw EmptyPartition("make_logreg_hpo: partition does not match m");
  return std::make_unique<LogRegHpoOracle>(std::move(dataset), std::move(partition));
}

}  // namespace lopa
