// Copyright 2026 The lopa-sim Authors
// SPDX-License-Identifier: Apache-2.0
#include "lopa/quadratic.hpp"

#include <algorithm>
#include <cmath>

#include "lopa/errors.hpp"

namespace lopa {

namespace {

constexpr double kConstantFloor = 1e-12;  // keeps exact zeros validatable

double spectral_norm(const MatrixXd& m) {
  if (m.rows() == 1 && m.cols() == 1) return std::abs(m(0, 0));
  Eigen::JacobiSVD<MatrixXd> svd(m);
  return svd.singularValues()(0);
}

MatrixXd random_orthogonal(int p, RngStream& rng) {
  MatrixXd g(p, p);
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j) g(i, j) = rng.normal();
  Eigen::HouseholderQR<MatrixXd> qr(g);
  MatrixXd q = qr.householderQ();
  const MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < p; ++j)
    if (r(j, j) < 0) q.col(j) *= -1.0;
  return q;
}

MatrixXd gaussian(int rows, int cols, RngStream& rng) {
  MatrixXd g(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) g(i, j) = rng.normal();
  return g;
}

VectorXd gaussian_vec(int n, RngStream& rng) {
  VectorXd v(n);
  for (int i = 0; i < n; ++i) v(i) = rng.normal();
  return v;
}

MatrixXd random_spd(int p, double lo, double hi, RngStream& rng) {
  const MatrixXd q = random_orthogonal(p, rng);
  VectorXd eigs(p);
  for (int i = 0; i < p; ++i) eigs(i) = lo + (hi - lo) * rng.uniform();
  if (p >= 2) {
    eigs(0) = lo;
    eigs(p - 1) = hi;
  } else {
    eigs(0) = lo;
  }
  return q * eigs.asDiagonal() * q.transpose();
}

}  // namespace

QuadraticOracle::QuadraticOracle(std::vector<MatrixXd> A, std::vector<MatrixXd> B,
                                 std::vector<VectorXd> c, MatrixXd T,
                                 std::vector<VectorXd> t, MatrixXd R,
                                 NoiseLevels sigma, double ref_radius)
    : BilevelOracle(static_cast<int>(A.size()),
                    static_cast<int>(R.rows()),
                    static_cast<int>(T.rows())),
      A_(std::move(A)),
      B_(std::move(B)),
      c_(std::move(c)),
      t_(std::move(t)),
      T_(std::move(T)),
      R_(std::move(R)),
      ref_radius_(ref_radius) {
  if (m_ < 1 || n_ < 1 || p_ < 1)
    throw InvalidDimensions("quadratic: dimensions must be >= 1");
  if (B_.size() != static_cast<size_t>(m_) || c_.size() != static_cast<size_t>(m_) ||
      t_.size() != static_cast<size_t>(m_))
    throw InvalidDimensions("quadratic: per-node data size mismatch");
  for (int i = 0; i < m_; ++i) {
    if (A_[i].rows() != p_ || A_[i].cols() != p_ || B_[i].rows() != p_ ||
        B_[i].cols() != n_ || c_[i].size() != p_ || t_[i].size() != p_)
      throw InvalidDimensions("quadratic: node matrix shape mismatch");
    A_llt_.emplace_back(A_[i]);
    if (A_llt_.back().info() != Eigen::Success)
      throw NotPositiveDefinite("quadratic: A_i not positive definite");
  }
  constants_.sigma = sigma;
  compute_constants();
}

void QuadraticOracle::compute_constants() {
  double mu = std::numeric_limits<double>::infinity();
  double lg = 0.0, cg = 0.0;
  for (int i = 0; i < m_; ++i) {
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(A_[i]);
    mu = std::min(mu, es.eigenvalues().minCoeff());
    lg = std::max(lg, es.eigenvalues().maxCoeff());
    cg = std::max(cg, spectral_norm(B_[i]));
  }
  Eigen::SelfAdjointEigenSolver<MatrixXd> esT(T_), esR(R_);
  constants_.mu_g = mu;
  constants_.L_g_theta = lg;
  constants_.C_g_xtheta = std::max(cg, kConstantFloor);
  constants_.L_f_x = std::max(esR.eigenvalues().maxCoeff(), kConstantFloor);
  constants_.L_f_theta = std::max(esT.eigenvalues().maxCoeff(), kConstantFloor);
  // the Hessian and Jacobian of g are constant in (x, theta)
  constants_.L_g_thetatheta = kConstantFloor;
  constants_.L_g_xtheta = kConstantFloor;

  // sup over ||x|| <= ref_radius of ||T (theta*_i(x) - t_i)||
  double cf = 0.0;
  for (int i = 0; i < m_; ++i) {
    const MatrixXd TAinvB = T_ * A_llt_[i].solve(B_[i]);
    const VectorXd off = T_ * (A_llt_[i].solve(c_[i]) - t_[i]);
    cf = std::max(cf, spectral_norm(TAinvB) * ref_radius_ + off.norm());
  }
  constants_.C_f_theta = std::max(cf, kConstantFloor);

  // exact heterogeneity levels; grad_x f is shared so only grad_theta f
  // contributes to b_f^2, and it is constant in (x, theta)
  VectorXd t_bar = VectorXd::Zero(p_);
  for (int i = 0; i < m_; ++i) t_bar += t_[i];
  t_bar /= m_;
  double bf = 0.0;
  for (int i = 0; i < m_; ++i) bf += (T_ * (t_[i] - t_bar)).squaredNorm();
  constants_.b_f_sq = bf;

  double bg_grad = 0.0, bg_jac = 0.0, bg_hess = 0.0;
  for (int i = 0; i < m_; ++i) {
    for (int j = 0; j < m_; ++j) {
      const MatrixXd AiAjinv = A_[i] * A_llt_[j].solve(MatrixXd::Identity(p_, p_));
      const MatrixXd mx = AiAjinv * B_[j] - B_[i];
      const VectorXd w = AiAjinv * c_[j] - c_[i];
      const double s = spectral_norm(mx) * ref_radius_ + w.norm();
      bg_grad += s * s;
      const double jn = spectral_norm(B_[i] - B_[j]);
      bg_jac += jn * jn;
      const double hn = spectral_norm(A_[i] - A_[j]);
      bg_hess += hn * hn;
    }
  }
  constants_.b_g_sq = std::max({bg_grad, bg_jac, bg_hess}) / m_;
}

double QuadraticOracle::f_value(int i, const VectorXd& x, const VectorXd& theta) const {
  const VectorXd d = theta - t_[i];
  return 0.5 * d.dot(T_ * d) + 0.5 * x.dot(R_ * x);
}

double QuadraticOracle::g_value(int i, const VectorXd& x, const VectorXd& theta) const {
  return 0.5 * theta.dot(A_[i] * theta) - (B_[i] * x + c_[i]).dot(theta);
}

VectorXd QuadraticOracle::grad_x_f(int i, const VectorXd& x, const VectorXd&) const {
  (void)i;
  return R_ * x;
}

VectorXd QuadraticOracle::grad_theta_f(int i, const VectorXd&, const VectorXd& theta) const {
  return T_ * (theta - t_[i]);
}

VectorXd QuadraticOracle::grad_theta_g(int i, const VectorXd& x, const VectorXd& theta) const {
  return A_[i] * theta - B_[i] * x - c_[i];
}

MatrixXd QuadraticOracle::hess_theta_g(int i, const VectorXd&, const VectorXd&) const {
  return A_[i];
}

MatrixXd QuadraticOracle::jac_xtheta_g(int i, const VectorXd&, const VectorXd&) const {
  return -B_[i].transpose();
}

VectorXd QuadraticOracle::sample_grad_x_f(int i, const VectorXd& x, const VectorXd& theta,
                                          RngStream& rng, int batch) const {
  const double s = constants_.sigma.f_x / std::sqrt(double(batch) * n_);
  return grad_x_f(i, x, theta) + s * gaussian_vec(n_, rng);
}

VectorXd QuadraticOracle::sample_grad_theta_f(int i, const VectorXd& x, const VectorXd& theta,
                                              RngStream& rng, int batch) const {
  const double s = constants_.sigma.f_theta / std::sqrt(double(batch) * p_);
  return grad_theta_f(i, x, theta) + s * gaussian_vec(p_, rng);
}

VectorXd QuadraticOracle::sample_grad_theta_g(int i, const VectorXd& x, const VectorXd& theta,
                                              RngStream& rng, int batch) const {
  const double s = constants_.sigma.g_theta / std::sqrt(double(batch) * p_);
  return grad_theta_g(i, x, theta) + s * gaussian_vec(p_, rng);
}

MatrixXd QuadraticOracle::sample_hess_theta_g(int i, const VectorXd& x, const VectorXd& theta,
                                              RngStream& rng, int batch) const {
  const double s = constants_.sigma.g_thetatheta /
                   std::sqrt(double(batch) * (0.5 * p_ * (p_ + 1)));
  const MatrixXd g = gaussian(p_, p_, rng);
  return hess_theta_g(i, x, theta) + s * 0.5 * (g + g.transpose());
}

MatrixXd QuadraticOracle::sample_jac_xtheta_g(int i, const VectorXd& x, const VectorXd& theta,
                                              RngStream& rng, int batch) const {
  const double s = constants_.sigma.g_xtheta / std::sqrt(double(batch) * n_ * p_);
  return jac_xtheta_g(i, x, theta) + s * gaussian(n_, p_, rng);
}

VectorXd QuadraticOracle::theta_star(int i, const VectorXd& x) const {
  return A_llt_[i].solve(B_[i] * x + c_[i]);
}

VectorXd QuadraticOracle::hypergradient(int i, const VectorXd& x) const {
  const VectorXd ts = theta_star(i, x);
  return R_ * x + B_[i].transpose() * A_llt_[i].solve(T_ * (ts - t_[i]));
}

double QuadraticOracle::phi_value(int i, const VectorXd& x) const {
  return f_value(i, x, theta_star(i, x));
}

double QuadraticOracle::phi_avg(const VectorXd& x) const {
  double v = 0.0;
  for (int i = 0; i < m_; ++i) v += phi_value(i, x);
  return v / m_;
}

VectorXd QuadraticOracle::phi_minimizer() const {
  // grad Phi_i(x) = (R + B_i' A_i^{-1} T A_i^{-1} B_i) x
  //                 + B_i' A_i^{-1} T (A_i^{-1} c_i - t_i)
  MatrixXd H = MatrixXd::Zero(n_, n_);
  VectorXd b = VectorXd::Zero(n_);
  for (int i = 0; i < m_; ++i) {
    const MatrixXd AinvB = A_llt_[i].solve(B_[i]);
    H += R_ + AinvB.transpose() * T_ * AinvB;
    b += AinvB.transpose() * T_ * (A_llt_[i].solve(c_[i]) - t_[i]);
  }
  Eigen::LLT<MatrixXd> llt(H / m_);
  if (llt.info() != Eigen::Success)
    throw NotPositiveDefinite("phi_minimizer: average curvature not SPD");
  return llt.solve(-b / m_);
}

std::unique_ptr<QuadraticOracle> make_quadratic(const QuadraticSpec& spec,
                                                std::uint64_t seed) {
  if (spec.m < 1 || spec.n < 1 || spec.p < 1)
    throw InvalidDimensions("make_quadratic: dimensions must be >= 1");
  if (!(spec.mu_g > 0.0) || spec.L_g < spec.mu_g)
    throw InvalidParams("make_quadratic: need 0 < mu_g <= L_g");

  RngStream rng = make_stream(seed, 0x9a0dULL, 0, 0);
  const int m = spec.m, n = spec.n, p = spec.p;

  // shared base instance
  const MatrixXd Qa = random_orthogonal(p, rng);
  VectorXd eig_base(p);
  for (int i = 0; i < p; ++i)
    eig_base(i) = spec.mu_g + (spec.L_g - spec.mu_g) * rng.uniform();
  eig_base(0) = spec.mu_g;
  if (p >= 2) eig_base(p - 1) = spec.L_g;
  MatrixXd B_base = gaussian(p, n, rng);
  B_base *= spec.B_scale / std::max(spectral_norm(B_base), 1e-30);
  const VectorXd c_base = (spec.c_scale / std::sqrt(double(p))) * gaussian_vec(p, rng);
  const VectorXd t_base = (spec.t_scale / std::sqrt(double(p))) * gaussian_vec(p, rng);
  const MatrixXd T = spec.T_scale <= 0.0
                         ? MatrixXd::Zero(p, p)
                         : random_spd(p, 0.5 * spec.T_scale, spec.T_scale, rng);
  const MatrixXd R = spec.R_max <= 0.0
                         ? MatrixXd::Zero(n, n)
                         : random_spd(n, spec.R_min, spec.R_max, rng);

  std::vector<MatrixXd> A(m), B(m);
  std::vector<VectorXd> c(m), t(m);
  for (int i = 0; i < m; ++i) {
    MatrixXd Qi = Qa;
    VectorXd eigs = eig_base;
    if (spec.b_g_scale > 0.0) {
      Eigen::HouseholderQR<MatrixXd> qr(Qa + spec.b_g_scale * gaussian(p, p, rng));
      Qi = qr.householderQ();
      for (int k = 0; k < p; ++k) {
        const double jitter = spec.b_g_scale * (spec.L_g - spec.mu_g) *
                              (rng.uniform() - 0.5);
        eigs(k) = std::clamp(eig_base(k) + jitter, spec.mu_g, spec.L_g);
      }
    }
    A[i] = Qi * eigs.asDiagonal() * Qi.transpose();
    A[i] = 0.5 * (A[i] + A[i].transpose());
    B[i] = B_base;
    c[i] = c_base;
    t[i] = t_base;
    if (spec.b_g_scale > 0.0) {
      MatrixXd db = gaussian(p, n, rng);
      db *= spec.B_scale / std::max(spectral_norm(db), 1e-30);
      B[i] += spec.b_g_scale * db;
      c[i] += spec.b_g_scale * (spec.c_scale / std::sqrt(double(p))) * gaussian_vec(p, rng);
    }
    if (spec.b_f_scale > 0.0)
      t[i] += spec.b_f_scale * (spec.t_scale / std::sqrt(double(p))) * gaussian_vec(p, rng);
  }
  return std::make_unique<QuadraticOracle>(std::move(A), std::move(B), std::move(c),
                                           T, std::move(t), R, spec.sigma,
                                           spec.ref_radius);
}

std::unique_ptr<QuadraticOracle> make_scalar_quadratic(NoiseLevels sigma) {
  std::vector<MatrixXd> A{MatrixXd::Constant(1, 1, 2.0)};
  std::vector<MatrixXd> B{MatrixXd::Constant(1, 1, 1.0)};
  std::vector<VectorXd> c{VectorXd::Zero(1)};
  std::vector<VectorXd> t{VectorXd::Zero(1)};
  MatrixXd T = MatrixXd::Constant(1, 1, 1.0);
  MatrixXd R = MatrixXd::Zero(1, 1);
  return std::make_unique<QuadraticOracle>(std::move(A), std::move(B), std::move(c),
                                           T, std::move(t), R, sigma, 10.0);
}

}  // namespace lopa
