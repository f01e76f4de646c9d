// Copyright 2026 The lopa-sim Authors
// SPDX-License-Identifier: Apache-2.0
#include "lopa/optimizer.hpp"

#include <chrono>
#include <cmath>
#include <exception>
#include <limits>

#include "lopa/hypergrad.hpp"

namespace lopa {

const char* to_string(Scheme s) {
  switch (s) {
    case Scheme::LG: return "LG";
    case Scheme::GT: return "GT";
    case Scheme::QLOOP_LG: return "QLOOP_LG";
    case Scheme::QLOOP_GT: return "QLOOP_GT";
  }
  return "?";
}

const char* to_string(ScheduleKind s) {
  switch (s) {
    case ScheduleKind::manual: return "manual";
    case ScheduleKind::LG: return "LG";
    case ScheduleKind::GT: return "GT";
    case ScheduleKind::LG_deterministic: return "LG_deterministic";
    case ScheduleKind::GT_deterministic: return "GT_deterministic";
  }
  return "?";
}

std::optional<Scheme> scheme_from_string(const std::string& s) {
  if (s == "LG") return Scheme::LG;
  if (s == "GT") return Scheme::GT;
  if (s == "QLOOP_LG") return Scheme::QLOOP_LG;
  if (s == "QLOOP_GT") return Scheme::QLOOP_GT;
  return std::nullopt;
}

std::optional<ScheduleKind> schedule_from_string(const std::string& s) {
  if (s == "manual") return ScheduleKind::manual;
  if (s == "LG") return ScheduleKind::LG;
  if (s == "GT") return ScheduleKind::GT;
  if (s == "LG_deterministic") return ScheduleKind::LG_deterministic;
  if (s == "GT_deterministic") return ScheduleKind::GT_deterministic;
  return std::nullopt;
}

std::optional<HvEstimator> estimator_from_string(const std::string& s) {
  if (s == "NS") return HvEstimator::NS;
  if (s == "SHIA") return HvEstimator::SHIA;
  return std::nullopt;
}

void validate_stepsizes(const StepSizes& s, const RawConstants* constants,
                        bool unsafe) {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v))
      throw StepSizeOutOfRange(std::string("step sizes: ") + name + " must be > 0");
  };
  positive(s.alpha, "alpha");
  positive(s.beta, "beta");
  positive(s.lambda, "lambda");
  positive(s.gamma, "gamma");
  positive(s.tau, "tau");
  if (s.tau > 1.0) throw StepSizeOutOfRange("step sizes: tau must be in (0,1]");
  if (s.gamma > 1.0) throw GammaOutOfRange("step sizes: gamma must be in (0,1]");
  if (constants != nullptr && !unsafe) {
    const double mu = constants->mu_g, lg = constants->L_g_theta;
    if (!(s.lambda < 1.0 / mu))
      throw StepSizeOutOfRange("step sizes: lambda must be < 1/mu_g = " +
                               std::to_string(1.0 / mu));
    const double beta_cap = std::min(2.0 / (mu + lg), (mu + lg) / (2.0 * mu * lg));
    if (!(s.beta < beta_cap))
      throw StepSizeOutOfRange("step sizes: beta must be < " +
                               std::to_string(beta_cap));
  }
}

VectorXd SwarmState::x_bar() const {
  VectorXd acc = VectorXd::Zero(nodes[0].x.size());
  for (const auto& nd : nodes) acc += nd.x;
  return acc / static_cast<double>(nodes.size());
}

VectorXd SwarmState::y_bar() const {
  VectorXd acc = VectorXd::Zero(nodes[0].y.size());
  for (const auto& nd : nodes) acc += nd.y;
  return acc / static_cast<double>(nodes.size());
}

VectorXd SwarmState::z_bar() const {
  VectorXd acc = VectorXd::Zero(nodes[0].z.size());
  for (const auto& nd : nodes) acc += nd.z;
  return acc / static_cast<double>(nodes.size());
}

namespace {

template <class F>
void for_each_node(int m, Executor executor, F&& body) {
  std::vector<std::exception_ptr> errors(m);
  if (executor == Executor::openmp) {
#pragma omp parallel for schedule(static)
    for (int i = 0; i < m; ++i) {
      try {
        body(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  } else {
    for (int i = 0; i < m; ++i) {
      try {
        body(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

void check_finite(const SwarmState& swarm) {
  constexpr double kGuard = 1e12;
  const char* names[] = {"x", "theta", "v", "d", "h", "s", "z", "y"};
  for (int i = 0; i < swarm.size(); ++i) {
    const NodeState& nd = swarm.nodes[i];
    const VectorXd* fields[] = {&nd.x, &nd.theta, &nd.v, &nd.d,
                                &nd.h, &nd.s,     &nd.z, &nd.y};
    for (int f = 0; f < 8; ++f) {
      const double norm = fields[f]->norm();
      if (!std::isfinite(norm) || norm > kGuard)
        throw DivergenceDetected("divergence at node " + std::to_string(i) +
                                 ", quantity " + names[f] + ", norm " +
                                 std::to_string(norm));
    }
  }
}

VectorXd gossip_mix(const Eigen::MatrixXd& w, const std::vector<NodeState>& nodes,
                    int i, const VectorXd NodeState::* field) {
  VectorXd acc = VectorXd::Zero((nodes[i].*field).size());
  for (int j = 0; j < static_cast<int>(nodes.size()); ++j) {
    const double wij = w(i, j);
    if (wij != 0.0) acc += wij * (nodes[j].*field);
  }
  return acc;
}

}  // namespace

SwarmState init_run(const BilevelOracle& oracle, const WeightMatrix& weights,
                    const RunConfig& config) {
  if (oracle.num_nodes() != weights.m)
    throw ConfigInvalid("init_run: oracle nodes != weight matrix size");
  if (config.K < 0) throw ConfigInvalid("init_run: K must be >= 0");
  if (config.cadence < 1) throw ConfigInvalid("init_run: cadence must be >= 1");
  if ((config.scheme == Scheme::QLOOP_LG || config.scheme == Scheme::QLOOP_GT) &&
      (config.Q < 1 || config.N < 1))
    throw ConfigInvalid("init_run: Q-loop schemes need Q >= 1 and N >= 1");
  validate_stepsizes(config.steps, &oracle.constants(), config.unsafe_steps);

  const int m = oracle.num_nodes();
  const int n = oracle.outer_dim();
  const int p = oracle.inner_dim();

  RngStream x_rng = make_stream(config.seed, 0, 0, kDrawInitX);
  VectorXd x0(n);
  for (int a = 0; a < n; ++a) x0(a) = config.x0_scale * x_rng.normal();

  SwarmState swarm;
  swarm.seed = config.seed;
  swarm.iter = 0;
  swarm.nodes.resize(m);
  for_each_node(m, config.executor, [&](int i) {
    NodeState& nd = swarm.nodes[i];
    nd.x = x0;
    nd.theta = VectorXd::Zero(p);
    nd.v = VectorXd::Zero(p);
    RngStream r1 = make_stream(config.seed, i, 0, kDrawInnerGrad);
    nd.d = oracle.sample_grad_theta_g(i, nd.x, nd.theta, r1, config.batch_inner);
    RngStream r2 = make_stream(config.seed, i, 0, kDrawGradFTheta);
    // v^0 = 0, so h^0 reduces to the negated outer-gradient sample
    nd.h = -oracle.sample_grad_theta_f(i, nd.x, nd.theta, r2, config.batch_outer);
    RngStream r3 = make_stream(config.seed, i, 0, kDrawGradFX);
    nd.s = oracle.sample_grad_x_f(i, nd.x, nd.theta, r3, config.batch_outer);
    nd.z = nd.s;
    nd.y = nd.z;
  });
  check_finite(swarm);
  return swarm;
}

void lopa_round(SwarmState& swarm, const BilevelOracle& oracle,
                const WeightMatrix& weights, const StepSizes& steps,
                Scheme scheme, Executor executor, int batch_inner,
                int batch_outer) {
  const int m = swarm.size();
  const long round = swarm.iter + 1;
  const std::vector<NodeState>& cur = swarm.nodes;
  std::vector<NodeState> next(m);
  std::vector<OracleCounters> counts(m);

  for_each_node(m, executor, [&](int i) {
    const NodeState& old = cur[i];
    NodeState& nd = next[i];
    OracleCounters& cnt = counts[i];

    // state updates with the previous round's directions
    nd.theta = old.theta - steps.beta * old.d;
    nd.v = old.v - steps.lambda * old.h;
    const VectorXd mixed = gossip_mix(weights.w, cur, i, &NodeState::x);
    nd.x = (1.0 - steps.tau) * old.x + steps.tau * (mixed - steps.alpha * old.y);

    // fresh directions at the new point
    RngStream r1 = make_stream(swarm.seed, i, round, kDrawInnerGrad);
    nd.d = oracle.sample_grad_theta_g(i, nd.x, nd.theta, r1, batch_inner);
    ++cnt.grad_g_theta;
    RngStream r2 = make_stream(swarm.seed, i, round, kDrawHessian);
    MatrixXd hess = oracle.sample_hess_theta_g(i, nd.x, nd.theta, r2, batch_inner);
    ++cnt.hess_g;
    hess = 0.5 * (hess + hess.transpose());
    RngStream r3 = make_stream(swarm.seed, i, round, kDrawGradFTheta);
    const VectorXd gft = oracle.sample_grad_theta_f(i, nd.x, nd.theta, r3, batch_outer);
    ++cnt.grad_f_theta;
    nd.h = hess * nd.v - gft;
    RngStream r4 = make_stream(swarm.seed, i, round, kDrawGradFX);
    const VectorXd gfx = oracle.sample_grad_x_f(i, nd.x, nd.theta, r4, batch_outer);
    ++cnt.grad_f_x;
    RngStream r5 = make_stream(swarm.seed, i, round, kDrawJacobian);
    const MatrixXd jac = oracle.sample_jac_xtheta_g(i, nd.x, nd.theta, r5, batch_inner);
    ++cnt.jac_g;
    nd.s = hypergrad_sample(gfx, jac, nd.v);

    MomentumState mom{old.s, old.z};
    momentum_step(mom, steps.gamma, nd.s);
    nd.z = mom.z;

    if (scheme == Scheme::LG || scheme == Scheme::QLOOP_LG) {
      nd.y = nd.z;
    } else {
      nd.y = gossip_mix(weights.w, cur, i, &NodeState::y) + nd.z - old.z;
    }
  });

  swarm.nodes = std::move(next);
  swarm.iter = round;
  for (const auto& c : counts) {
    swarm.counters.grad_g_theta += c.grad_g_theta;
    swarm.counters.hess_g += c.hess_g;
    swarm.counters.jac_g += c.jac_g;
    swarm.counters.grad_f_theta += c.grad_f_theta;
    swarm.counters.grad_f_x += c.grad_f_x;
  }
  check_finite(swarm);
}

void qloop_round(SwarmState& swarm, const BilevelOracle& oracle,
                 const WeightMatrix& weights, const StepSizes& steps, int Q,
                 int N, HvEstimator estimator, Scheme scheme, Executor executor,
                 int batch_inner, int batch_outer) {
  if (Q < 1 || N < 1) throw ConfigInvalid("qloop_round: Q >= 1 and N >= 1 required");
  const int m = swarm.size();
  const long round = swarm.iter + 1;
  const std::vector<NodeState>& cur = swarm.nodes;
  std::vector<NodeState> next(m);
  std::vector<OracleCounters> counts(m);
  const double L_g = oracle.constants().L_g_theta;

  for_each_node(m, executor, [&](int i) {
    const NodeState& old = cur[i];
    NodeState& nd = next[i];
    OracleCounters& cnt = counts[i];

    const VectorXd mixed = gossip_mix(weights.w, cur, i, &NodeState::x);
    nd.x = (1.0 - steps.tau) * old.x + steps.tau * (mixed - steps.alpha * old.y);

    // N-loop: warm-started inner SGD at the new x
    nd.theta = old.theta;
    nd.d = VectorXd::Zero(old.d.size());
    for (int t = 0; t < N; ++t) {
      RngStream r = make_stream(swarm.seed, i, round, kDrawQloopInnerBase + t);
      nd.d = oracle.sample_grad_theta_g(i, nd.x, nd.theta, r, batch_inner);
      ++cnt.grad_g_theta;
      nd.theta -= steps.beta * nd.d;
    }

    // Q-loop: Hessian-inverse-vector product from scratch, fresh samples
    RngStream r3 = make_stream(swarm.seed, i, round, kDrawGradFTheta);
    const VectorXd gft = oracle.sample_grad_theta_f(i, nd.x, nd.theta, r3, batch_outer);
    ++cnt.grad_f_theta;
    long action_idx = 0;
    HessianAction act = [&](const VectorXd& u) -> VectorXd {
      RngStream r = make_stream(swarm.seed, i, round,
                                kDrawQloopHessianBase + action_idx);
      ++action_idx;
      MatrixXd h = oracle.sample_hess_theta_g(i, nd.x, nd.theta, r, batch_inner);
      return 0.5 * (h * u + h.transpose() * u);
    };
    long hcalls = 0;
    nd.v = (estimator == HvEstimator::NS)
               ? neumann_inverse_apply(act, steps.lambda, Q, gft, &hcalls, L_g)
               : shia_hv(act, steps.lambda, Q, gft, &hcalls, L_g);
    cnt.hess_g += hcalls;
    nd.h = VectorXd::Zero(old.h.size());

    RngStream r4 = make_stream(swarm.seed, i, round, kDrawGradFX);
    const VectorXd gfx = oracle.sample_grad_x_f(i, nd.x, nd.theta, r4, batch_outer);
    ++cnt.grad_f_x;
    RngStream r5 = make_stream(swarm.seed, i, round, kDrawJacobian);
    const MatrixXd jac = oracle.sample_jac_xtheta_g(i, nd.x, nd.theta, r5, batch_inner);
    ++cnt.jac_g;
    nd.s = hypergrad_sample(gfx, jac, nd.v);
    nd.z = nd.s;  // gamma treated as 1: no moving average

    if (scheme == Scheme::LG || scheme == Scheme::QLOOP_LG) {
      nd.y = nd.z;
    } else {
      nd.y = gossip_mix(weights.w, cur, i, &NodeState::y) + nd.z - old.z;
    }
  });

  swarm.nodes = std::move(next);
  swarm.iter = round;
  for (const auto& c : counts) {
    swarm.counters.grad_g_theta += c.grad_g_theta;
    swarm.counters.hess_g += c.hess_g;
    swarm.counters.jac_g += c.jac_g;
    swarm.counters.grad_f_theta += c.grad_f_theta;
    swarm.counters.grad_f_x += c.grad_f_x;
  }
  check_finite(swarm);
}

Trace run(const BilevelOracle& oracle, const WeightMatrix& weights,
          const RunConfig& config, const MetricHook& hook) {
  SwarmState swarm = init_run(oracle, weights, config);
  const auto t0 = std::chrono::steady_clock::now();
  const bool qloop =
      config.scheme == Scheme::QLOOP_LG || config.scheme == Scheme::QLOOP_GT;

  Trace trace;
  auto emit = [&](long k) {
    TraceRow row = hook ? hook(swarm, k) : TraceRow{};
    row.k = k;
    row.hessian_calls = swarm.counters.hess_g;
    row.grad_calls = swarm.counters.grad_total();
    row.wall_time_ms = std::chrono::duration<double, std::milli>(
                           std::chrono::steady_clock::now() - t0)
                           .count();
    trace.rows.push_back(std::move(row));
  };

  emit(0);
  for (long k = 1; k <= config.K; ++k) {
    if (qloop) {
      qloop_round(swarm, oracle, weights, config.steps, config.Q, config.N,
                  config.estimator, config.scheme, config.executor,
                  config.batch_inner, config.batch_outer);
    } else {
      lopa_round(swarm, oracle, weights, config.steps, config.scheme,
                 config.executor, config.batch_inner, config.batch_outer);
    }
    if (k % config.cadence == 0 || k == config.K) emit(k);
  }
  return trace;
}

namespace {

double inf_if_zero_div(double num, double den) {
  if (den <= 0.0) return std::numeric_limits<double>::infinity();
  return num / den;
}

}  // namespace

ScheduleInfo schedule_stepsizes(ScheduleKind kind, long K,
                                const DerivedConstants& c, double rho, int m,
                                std::optional<StepSizes> manual, double tau,
                                double v0_scale) {
  ScheduleInfo info;
  if (kind == ScheduleKind::manual) {
    if (!manual) throw InfeasibleSchedule("schedule: manual kind needs values");
    info.steps = *manual;
    validate_stepsizes(info.steps, &c, /*unsafe=*/false);
    return info;
  }
  if (K < 1) throw InfeasibleSchedule("schedule: K >= 1 required");
  if (!(tau > 0.0) || tau >= 1.0)
    throw InfeasibleSchedule("schedule: tau must be in (0,1)");
  if (!(rho >= 0.0) || rho >= 1.0)
    throw InfeasibleSchedule("schedule: rho must be in [0,1)");

  const double mu = c.mu_g, lg = c.L_g_theta, L = c.L, phi = c.phi;
  const double omega = c.omega_theta;
  const double mix = 32.0 * c.C_g_xtheta * c.C_g_xtheta * c.L_fg_theta / (mu * mu) +
                     c.L_fg_x;
  const double one_rho = 1.0 - rho;
  const auto& sg = c.sigma;

  // proportionality constants: smallest values meeting the lower bounds
  info.c_gamma = 4.0 * L * tau;
  info.c_lambda = 48.0 * c.L_v_star * c.C_g_xtheta * tau / mu;
  info.c_beta = 6.0 * c.L_theta_star / omega * std::sqrt(mix) * tau;

  const bool gt = (kind == ScheduleKind::GT || kind == ScheduleKind::GT_deterministic);

  // alpha caps from the sufficient step-size conditions
  double u;
  if (!gt) {
    const double u1 = 1.0 / (2.0 * tau * L);
    double u2 = std::min({one_rho / (12.0 * std::sqrt(phi)),
                          std::pow(one_rho, 2.0 / 3.0) / (4.0 * std::cbrt(phi)),
                          std::cbrt(mix) * std::pow(one_rho, 2.0 / 3.0) /
                              (4.0 * std::cbrt(phi)),
                          std::sqrt(one_rho) / (3.0 * std::pow(c.L_fg_x, 0.25))});
    if (sg.g_xtheta > 0.0)
      u2 = std::min(u2, std::pow(c.C_g_xtheta, 2.0 / 3.0) *
                            std::pow(one_rho, 2.0 / 3.0) /
                            (4.0 * std::cbrt(phi) *
                             std::pow(sg.g_xtheta, 2.0 / 3.0)));
    const double lam_room =
        std::min(1.0, inf_if_zero_div(mu * mu, 8.0 * sg.g_xtheta * sg.g_xtheta));
    const double beta_room = std::min(2.0 / (mu + lg), (mu + lg) / (2.0 * mu * lg));
    const double gam_room = std::min(
        1.0, inf_if_zero_div(2.0 * c.C_g_xtheta * c.C_g_xtheta,
                             sg.g_xtheta * sg.g_xtheta));
    const double u3 =
        std::min({lam_room / (96.0 * tau * c.L_v_star * c.C_g_xtheta),
                  beta_room * omega / (12.0 * tau * std::sqrt(mix) * c.L_theta_star),
                  gam_room / (8.0 * L * tau)});
    u = std::min({u1, u2, u3});
  } else {
    const double u1 = std::min(
        1.0 / (2.0 * tau * L),
        one_rho * one_rho / (32.0 * std::sqrt(phi) * std::sqrt(tau * L)));
    double u2 = std::min(
        {std::pow(one_rho, 4.0 / 3.0) * std::cbrt(tau * L) / (6.0 * std::cbrt(phi)),
         std::pow(one_rho, 4.0 / 3.0) * std::cbrt(L * tau) * std::cbrt(mix) /
             (4.0 * std::cbrt(phi) * std::cbrt(c.L_fg_x)),
         std::pow(one_rho, 4.0 / 3.0) * std::cbrt(L * tau) /
             (4.0 * std::cbrt(c.L_fg_x))});
    if (sg.g_thetatheta > 0.0) {
      u2 = std::min(u2, 0.8 * c.C_g_xtheta * c.C_g_xtheta /
                            (sg.g_thetatheta * sg.g_thetatheta));
      u2 = std::min(u2, std::pow(one_rho, 4.0 / 3.0) * std::cbrt(tau * L) *
                            std::pow(c.C_g_xtheta, 2.0 / 3.0) /
                            (3.0 * std::cbrt(phi) *
                             std::pow(sg.g_thetatheta, 2.0 / 3.0)));
    }
    const double lam_room =
        std::min(1.0, inf_if_zero_div(mu * mu, 8.0 * sg.g_xtheta * sg.g_xtheta));
    const double beta_room = std::min(2.0 / (mu + lg), (mu + lg) / (2.0 * mu * lg));
    const double u3 =
        std::min(lam_room / (96.0 * tau * c.L_v_star * c.C_g_xtheta),
                 beta_room * omega / (12.0 * tau * std::sqrt(mix) * c.L_theta_star));
    u = std::min({u1, std::min(1.0, u2) / (8.0 * tau * L), u3});
  }
  info.u = u;

  // variance aggregates
  const double d1_t = 8.0 * c.C_g_xtheta * c.C_g_xtheta / (mu * info.c_lambda);
  const double d2_t = mix / (omega * info.c_beta);
  const double d3_t = 1.0 / (2.0 * info.c_gamma);
  info.sigma_p = std::sqrt(d1_t) * (sg.f_theta + 2.0 * c.M * sg.g_thetatheta) *
                     info.c_lambda +
                 std::sqrt(d2_t) * sg.g_theta * info.c_beta;
  info.sigma_c = std::sqrt(d3_t) * (sg.f_x + 2.0 * c.M * sg.g_xtheta) * info.c_gamma;
  info.vartheta = 24.0 * phi / (one_rho * one_rho * info.c_gamma);
  const double b_sq = heterogeneity_bound(c);

  double alpha;
  if (!gt) {
    const double sig_hat = std::sqrt(2.0) * info.sigma_p +
                           std::sqrt(2.0 / m) * info.sigma_c;
    info.a0 = 4.0 * v0_scale;
    info.a1 = 4.0 * sig_hat * sig_hat;
    info.a2 = 4.0 * info.vartheta * b_sq / m;
    alpha = u;
    if (kind == ScheduleKind::LG && info.a1 > 0.0)
      alpha = std::min(alpha, std::sqrt(info.a0 / (info.a1 * (K + 1))));
    if (info.a2 > 0.0)
      alpha = std::min(alpha, std::cbrt(info.a0 / (info.a2 * (K + 1))));
  } else {
    const double sig_hat = std::sqrt(2.0) * info.sigma_p +
                           2.0 / std::sqrt(double(m)) * info.sigma_c;
    info.a0 = 2.0 * v0_scale;
    info.a1 = 2.0 * sig_hat * sig_hat;
    info.a2 = 0.0;
    alpha = u;
    if (kind == ScheduleKind::GT && info.a1 > 0.0)
      alpha = std::min(alpha, std::sqrt(info.a0 / (info.a1 * (K + 1))));
  }
  if (!(alpha > 0.0) || !std::isfinite(alpha))
    throw InfeasibleSchedule("schedule: alpha came out nonpositive");

  StepSizes s;
  s.tau = tau;
  s.alpha = alpha;
  s.gamma = info.c_gamma * alpha;
  s.lambda = info.c_lambda * alpha;
  s.beta = info.c_beta * alpha;

  // caps from the validity ranges; the proportionality constants are the
  // smallest admissible values, so a violated cap means there is no feasible
  // choice at this alpha and both numbers are reported
  double lam_cap = 0.999 / mu;
  if (gt && sg.g_thetatheta > 0.0)
    lam_cap = std::min(lam_cap, mu / (20.0 * sg.g_thetatheta * sg.g_thetatheta));
  if (!gt && sg.g_xtheta > 0.0)
    lam_cap = std::min(lam_cap, mu / (8.0 * sg.g_xtheta * sg.g_xtheta));
  const double beta_cap =
      0.999 * std::min(2.0 / (mu + lg), (mu + lg) / (2.0 * mu * lg));
  const double gam_cap = 1.0;
  auto check_cap = [](double lower, double cap, const char* name) {
    if (lower > cap)
      throw InfeasibleSchedule(std::string("schedule: ") + name +
                               " lower bound " + std::to_string(lower) +
                               " exceeds cap " + std::to_string(cap));
  };
  check_cap(s.lambda, lam_cap, "lambda");
  check_cap(s.beta, beta_cap, "beta");
  check_cap(s.gamma, gam_cap, "gamma");

  validate_stepsizes(s, &c, /*unsafe=*/false);
  info.steps = s;
  return info;
}

}  // namespace lopa
