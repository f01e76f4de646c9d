// Copyright 2026 The lopa-sim Authors
// SPDX-License-Identifier: Apache-2.0
#include "lopa/constants.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lopa/errors.hpp"

namespace lopa {

namespace {
void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v))
    throw NonpositiveConstant(std::string("derive_constants: ") + name +
                              " must be > 0");
}
void require_nonnegative(double v, const char* name) {
  if (v < 0.0 || !std::isfinite(v))
    throw NonpositiveConstant(std::string("derive_constants: ") + name +
                              " must be >= 0");
}
}  // namespace

DerivedConstants derive_constants(const RawConstants& raw) {
  require_positive(raw.mu_g, "mu_g");
  require_positive(raw.L_f_x, "L_f_x");
  require_positive(raw.L_f_theta, "L_f_theta");
  require_positive(raw.L_g_theta, "L_g_theta");
  require_positive(raw.L_g_xtheta, "L_g_xtheta");
  require_positive(raw.L_g_thetatheta, "L_g_thetatheta");
  require_positive(raw.C_f_theta, "C_f_theta");
  require_positive(raw.C_g_xtheta, "C_g_xtheta");
  require_nonnegative(raw.sigma.g_theta, "sigma.g_theta");
  require_nonnegative(raw.sigma.g_thetatheta, "sigma.g_thetatheta");
  require_nonnegative(raw.sigma.g_xtheta, "sigma.g_xtheta");
  require_nonnegative(raw.sigma.f_theta, "sigma.f_theta");
  require_nonnegative(raw.sigma.f_x, "sigma.f_x");
  require_nonnegative(raw.b_f_sq, "b_f_sq");
  require_nonnegative(raw.b_g_sq, "b_g_sq");

  DerivedConstants c;
  static_cast<RawConstants&>(c) = raw;
  const double mu = raw.mu_g;
  c.L_theta_star = raw.C_g_xtheta / mu;
  c.L_v = raw.L_f_theta / mu + raw.C_f_theta * raw.L_g_thetatheta / (mu * mu);
  c.L_v_star = c.L_v * (1.0 + c.L_theta_star);
  c.L_f = raw.L_f_x + raw.C_g_xtheta * c.L_v + raw.C_f_theta * raw.L_g_xtheta / mu;
  c.L = c.L_f * (1.0 + c.L_theta_star);
  c.kappa = std::max({raw.L_f_x, raw.L_f_theta, raw.L_g_theta, raw.L_g_xtheta,
                      raw.L_g_thetatheta}) /
            mu;
  c.M = raw.C_f_theta / mu;
  c.L_fg_x = 2.0 * raw.L_f_x * raw.L_f_x + 4.0 * c.M * c.M * raw.L_g_xtheta * raw.L_g_xtheta;
  c.L_fg_theta = 2.0 * raw.L_f_theta * raw.L_f_theta +
                 4.0 * c.M * c.M * raw.L_g_thetatheta * raw.L_g_thetatheta;
  c.omega_theta = mu * raw.L_g_theta / (2.0 * (mu + raw.L_g_theta));
  const double lg = raw.L_g_theta;
  c.phi = (c.L_fg_x + 32.0 * raw.C_g_xtheta * raw.C_g_xtheta * c.L_fg_theta / (mu * mu)) *
          (1.0 + 4.0 * lg * lg / (c.omega_theta * c.omega_theta));
  return c;
}

double heterogeneity_c1(const DerivedConstants& c) {
  const double r = c.C_g_xtheta / c.mu_g;
  return 4.0 + 4.0 * r * r;
}

double heterogeneity_c2(const DerivedConstants& c) {
  const double mu2 = c.mu_g * c.mu_g;
  const double mu4 = mu2 * mu2;
  const double mu6 = mu4 * mu2;
  const double cf2 = c.C_f_theta * c.C_f_theta;
  const double cg2 = c.C_g_xtheta * c.C_g_xtheta;
  return 4.0 * (4.0 * cf2 * cg2 / mu4 + 4.0 * cf2 / mu2 +
                c.L_f_x * c.L_f_x / mu2 + c.L_f_theta * c.L_f_theta * cg2 / mu4 +
                4.0 * cf2 * cg2 * c.L_g_thetatheta * c.L_g_thetatheta / mu6 +
                4.0 * cf2 * c.L_g_xtheta * c.L_g_xtheta / mu4);
}

double heterogeneity_bound(const DerivedConstants& c) {
  return heterogeneity_c1(c) * c.b_f_sq + heterogeneity_c2(c) * c.b_g_sq;
}

}  // namespace lopa
