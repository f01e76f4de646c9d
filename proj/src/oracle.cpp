// Copyright 2026 The lopa-sim Authors
// SPDX-License-Identifier: Apache-2.0
#include "lopa/oracle.hpp"

#include <cmath>

#include "lopa/errors.hpp"

namespace lopa {

VectorXd BilevelOracle::theta_star(int, const VectorXd&) const {
  throw NotAnalytic("oracle: no closed-form inner solution");
}

VectorXd BilevelOracle::hypergradient(int, const VectorXd&) const {
  throw NotAnalytic("oracle: no closed-form hypergradient");
}

VectorXd BilevelOracle::theta_star_ref(int i, const VectorXd& x, double tol,
                                       int max_iter) const {
  if (has_analytic()) return theta_star(i, x);
  return newton_inner_solve(*this, i, x, VectorXd::Zero(p_), tol, max_iter);
}

VectorXd BilevelOracle::hypergradient_ref(int i, const VectorXd& x, double tol) const {
  if (has_analytic()) return hypergradient(i, x);
  const VectorXd ts = theta_star_ref(i, x, tol);
  const MatrixXd h = hess_theta_g(i, x, ts);
  Eigen::LLT<MatrixXd> llt(h);
  if (llt.info() != Eigen::Success)
    throw NotPositiveDefinite("hypergradient_ref: inner Hessian not SPD");
  const VectorXd v = llt.solve(grad_theta_f(i, x, ts));
  return grad_x_f(i, x, ts) - jac_xtheta_g(i, x, ts) * v;
}

VectorXd newton_inner_solve(const BilevelOracle& oracle, int i, const VectorXd& x,
                            const VectorXd& theta0, double tol, int max_iter) {
  VectorXd theta = theta0;
  double gval = oracle.g_value(i, x, theta);
  for (int it = 0; it < max_iter; ++it) {
    const VectorXd grad = oracle.grad_theta_g(i, x, theta);
    const double gn = grad.norm();
    if (gn <= tol) return theta;
    const MatrixXd hess = oracle.hess_theta_g(i, x, theta);
    Eigen::LLT<MatrixXd> llt(hess);
    VectorXd dir;
    if (llt.info() == Eigen::Success) {
      dir = llt.solve(grad);
    } else {
      dir = grad;  // gradient fallback for indefinite numerical corner cases
    }
    // Armijo backtracking
    double step = 1.0;
    const double slope = grad.dot(dir);
    bool accepted = false;
    for (int bt = 0; bt < 60; ++bt) {
      const VectorXd cand = theta - step * dir;
      const double cval = oracle.g_value(i, x, cand);
      if (cval <= gval - 1e-4 * step * slope) {
        theta = cand;
        gval = cval;
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      // stuck at numerical precision; accept if the gradient is tiny
      if (gn <= std::max(tol, 1e-9)) return theta;
      throw InnerSolverFailed("newton_inner_solve: line search failed at node " +
                              std::to_string(i));
    }
  }
  if (oracle.grad_theta_g(i, x, theta).norm() <= std::max(tol, 1e-9)) return theta;
  throw InnerSolverFailed("newton_inner_solve: tolerance not reached at node " +
                          std::to_string(i));
}

}  // namespace lopa
