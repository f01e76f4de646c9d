// Copyright 2026 The lopa-sim Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>
#include <vector>

#include "lopa/oracle.hpp"

namespace lopa {

// Synthetic strongly convex quadratic family:
//   g_i(x,theta) = 1/2 theta' A_i theta - (B_i x + c_i)' theta
//   f_i(x,theta) = 1/2 (theta - t_i)' T (theta - t_i) + 1/2 x' R x
// so theta*_i(x) = A_i^{-1}(B_i x + c_i) and the hypergradient has a closed
// form. T and R are shared across nodes, which keeps the per-level
// heterogeneity constants finite and exactly computable.
struct QuadraticSpec {
  int m = 8, n = 10, p = 10;
  double mu_g = 1.0;   // smallest inner eigenvalue target
  double L_g = 2.0;    // largest inner eigenvalue target
  double T_scale = 0.3;
  double R_min = 1.0, R_max = 1.5;
  double B_scale = 0.4;
  double c_scale = 1.0;
  double t_scale = 1.0;
  double b_f_scale = 0.0;  // spread of the t_i
  double b_g_scale = 0.0;  // spread of A_i, B_i, c_i
  NoiseLevels sigma;
  double ref_radius = 10.0;  // ||x|| region for C_f_theta and b_g^2
};

class QuadraticOracle final : public BilevelOracle {
 public:
  QuadraticOracle(std::vector<MatrixXd> A, std::vector<MatrixXd> B,
                  std::vector<VectorXd> c, MatrixXd T, std::vector<VectorXd> t,
                  MatrixXd R, NoiseLevels sigma, double ref_radius);

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

  bool has_analytic() const override { return true; }
  VectorXd theta_star(int i, const VectorXd& x) const override;
  VectorXd hypergradient(int i, const VectorXd& x) const override;

  // outer objective value Phi_i(x) = f_i(x, theta*_i(x))
  double phi_value(int i, const VectorXd& x) const;
  double phi_avg(const VectorXd& x) const;

  // minimizer of the average outer objective (R + avg curvature is SPD)
  VectorXd phi_minimizer() const;

  const MatrixXd& node_A(int i) const { return A_[i]; }
  const MatrixXd& node_B(int i) const { return B_[i]; }
  double ref_radius() const { return ref_radius_; }

 private:
  void compute_constants();

  std::vector<MatrixXd> A_, B_;
  std::vector<VectorXd> c_, t_;
  MatrixXd T_, R_;
  std::vector<Eigen::LLT<MatrixXd>> A_llt_;
  double ref_radius_ = 10.0;
};

// Random instance; all nodes identical when the b_*_scale knobs are zero.
std::unique_ptr<QuadraticOracle> make_quadratic(const QuadraticSpec& spec,
                                                std::uint64_t seed);

// Scalar handbook instance: A=2, B=1, c=0, T=1, t=0, R=0, so
// theta*(x) = x/2 and grad Phi(x) = x/4.
std::unique_ptr<QuadraticOracle> make_scalar_quadratic(NoiseLevels sigma = {});

}  // namespace lopa
