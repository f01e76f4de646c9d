// Copyright 2026 The lopa-sim Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <optional>
#include <vector>

namespace lopa {

// Per-iteration metrics record. Fields without a value for the current
// problem (e.g. the Lyapunov value when no exact inner solution exists) stay
// empty and serialize as empty CSV fields / JSON nulls.
struct TraceRow {
  long k = 0;
  double stationarity = 0.0;            // ||grad Phi(x_bar)||^2
  double consensus_err = 0.0;           // (1/m) sum ||x_i - x_bar||^2
  double grad_err = 0.0;                // (1/m) sum ||y_i - y_bar||^2
  std::optional<double> hv_err;         // (1/m) sum ||v_i - v*_i(x_bar)||^2
  std::optional<double> inner_err;      // (1/m) sum ||theta_i - theta*_i(x_bar)||^2
  double ave_var_err = 0.0;             // ||grad Phi(x_bar) - z_bar||^2
  double var_err = 0.0;                 // (1/m) sum ||grad Phi_i(x_bar) - z_i||^2
  std::optional<double> lyapunov;
  long hessian_calls = 0;
  long grad_calls = 0;
  double wall_time_ms = 0.0;
};

struct Trace {
  std::vector<TraceRow> rows;

  bool empty() const { return rows.empty(); }
  const TraceRow& back() const { return rows.back(); }
};

}  // namespace lopa
