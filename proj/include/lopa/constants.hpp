// Copyright 2026 The lopa-sim Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

namespace lopa {

// Sampling noise levels, one per stochastic estimator. A value of 0 means the
// corresponding estimator is exact (deterministic problem).
struct NoiseLevels {
  double g_theta = 0.0;       // grad_theta g
  double g_thetatheta = 0.0;  // hess_theta g
  double g_xtheta = 0.0;      // jac_xtheta g
  double f_theta = 0.0;       // grad_theta f
  double f_x = 0.0;           // grad_x f
};

// Smoothness / strong-convexity / boundedness constants of a problem
// instance, plus heterogeneity levels. All smoothness constants must be > 0.
struct RawConstants {
  double mu_g = 1.0;
  double L_f_x = 1.0;
  double L_f_theta = 1.0;
  double L_g_theta = 1.0;
  double L_g_xtheta = 1.0;
  double L_g_thetatheta = 1.0;
  double C_f_theta = 1.0;
  double C_g_xtheta = 1.0;
  NoiseLevels sigma;
  double b_f_sq = 0.0;
  double b_g_sq = 0.0;
};

// Raw constants plus every derived quantity used by step-size schedules,
// Lyapunov coefficients and the heterogeneity bound.
struct DerivedConstants : RawConstants {
  double L_theta_star = 0.0;  // C_g_xtheta / mu_g
  double L_v = 0.0;           // L_f_theta/mu_g + C_f_theta L_g_thetatheta/mu_g^2
  double L_v_star = 0.0;      // L_v (1 + L_theta_star)
  double L_f = 0.0;           // L_f_x + C_g_xtheta L_v + C_f_theta L_g_xtheta/mu_g
  double L = 0.0;             // L_f (1 + L_theta_star)
  double kappa = 0.0;         // max smoothness constant / mu_g
  double M = 0.0;             // C_f_theta / mu_g
  double L_fg_x = 0.0;        // 2 L_f_x^2 + 4 M^2 L_g_xtheta^2
  double L_fg_theta = 0.0;    // 2 L_f_theta^2 + 4 M^2 L_g_thetatheta^2
  double omega_theta = 0.0;   // mu_g L_g_theta / (2 (mu_g + L_g_theta))
  double phi = 0.0;           // (L_fg_x + 32 C^2 L_fg_theta/mu_g^2)(1 + 4 L_g_theta^2/omega^2)
};

// Throws NonpositiveConstant if a smoothness constant is <= 0. Noise levels
// and heterogeneity may be zero.
DerivedConstants derive_constants(const RawConstants& raw);

// Heterogeneity bound b^2 = C1 b_f^2 + C2 b_g^2.
double heterogeneity_c1(const DerivedConstants& c);
double heterogeneity_c2(const DerivedConstants& c);
double heterogeneity_bound(const DerivedConstants& c);

}  // namespace lopa
