// Copyright 2026 The lopa-sim Authors
// SPDX-License-Identifier: Apache-2.0
//
// Round-throughput benchmark: serial reference executor vs the OpenMP one
// on a mid-size quadratic instance, plus a bitwise agreement check.

#include <chrono>
#include <cstdio>

#include <omp.h>

#include "lopa/metrics.hpp"
#include "lopa/optimizer.hpp"
#include "lopa/quadratic.hpp"

using namespace lopa;

namespace {

double run_rounds(const BilevelOracle& oracle, const WeightMatrix& weights,
                  RunConfig cfg, Executor executor, long rounds,
                  SwarmState* out) {
  cfg.executor = executor;
  SwarmState swarm = init_run(oracle, weights, cfg);
  const auto t0 = std::chrono::steady_clock::now();
  for (long k = 0; k < rounds; ++k)
    lopa_round(swarm, oracle, weights, cfg.steps, cfg.scheme, executor,
               cfg.batch_inner, cfg.batch_outer);
  const double ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
  if (out) *out = std::move(swarm);
  return ms;
}

bool bitwise_equal(const SwarmState& a, const SwarmState& b) {
  if (a.size() != b.size()) return false;
  for (int i = 0; i < a.size(); ++i) {
    const NodeState& u = a.nodes[i];
    const NodeState& v = b.nodes[i];
    const VectorXd* uf[] = {&u.x, &u.theta, &u.v, &u.d, &u.h, &u.s, &u.z, &u.y};
    const VectorXd* vf[] = {&v.x, &v.theta, &v.v, &v.d, &v.h, &v.s, &v.z, &v.y};
    for (int f = 0; f < 8; ++f) {
      if (uf[f]->size() != vf[f]->size()) return false;
      for (Eigen::Index e = 0; e < uf[f]->size(); ++e)
        if ((*uf[f])(e) != (*vf[f])(e)) return false;
    }
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  const long rounds = argc > 1 ? std::atol(argv[1]) : 200;
  QuadraticSpec spec;
  spec.m = 16;
  spec.n = 40;
  spec.p = 120;
  spec.b_f_scale = 0.5;
  spec.b_g_scale = 0.3;
  spec.sigma = {0.2, 0.2, 0.2, 0.2, 0.2};
  auto oracle = make_quadratic(spec, 42);
  const Graph g = build_topology(GraphKind::ring, spec.m, std::nullopt, 0);
  const WeightMatrix w = metropolis_weights(g);

  RunConfig cfg;
  cfg.scheme = Scheme::GT;
  cfg.K = rounds;
  cfg.steps = {0.01, 0.05, 0.05, 0.1, 0.5};
  cfg.seed = 7;

  std::printf("m=%d n=%d p=%d rounds=%ld threads=%d\n", spec.m, spec.n, spec.p,
              rounds, omp_get_max_threads());
  SwarmState serial_state, omp_state;
  const double warm = run_rounds(*oracle, w, cfg, Executor::serial, 10, nullptr);
  (void)warm;
  const double t_serial =
      run_rounds(*oracle, w, cfg, Executor::serial, rounds, &serial_state);
  const double t_omp =
      run_rounds(*oracle, w, cfg, Executor::openmp, rounds, &omp_state);
  std::printf("serial : %8.1f ms  (%.1f rounds/s)\n", t_serial,
              1000.0 * rounds / t_serial);
  std::printf("openmp : %8.1f ms  (%.1f rounds/s)  speedup %.2fx\n", t_omp,
              1000.0 * rounds / t_omp, t_serial / t_omp);
  const bool same = bitwise_equal(serial_state, omp_state);
  std::printf("bitwise agreement: %s\n", same ? "yes" : "NO");
  return same ? 0 : 1;
}
