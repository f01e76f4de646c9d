// Copyright 2026 The lopa-sim Authors
// SPDX-License-Identifier: Apache-2.0
#include "lopa/graph.hpp"

#include <algorithm>
#include <fstream>
#include <queue>
#include <sstream>

#include "lopa/errors.hpp"
#include "lopa/rng.hpp"

namespace lopa {

const char* to_string(GraphKind kind) {
  switch (kind) {
    case GraphKind::ring: return "ring";
    case GraphKind::path: return "path";
    case GraphKind::star: return "star";
    case GraphKind::complete: return "complete";
    case GraphKind::erdos_renyi: return "erdos_renyi";
  }
  return "?";
}

std::optional<GraphKind> graph_kind_from_string(const std::string& s) {
  if (s == "ring") return GraphKind::ring;
  if (s == "path") return GraphKind::path;
  if (s == "star") return GraphKind::star;
  if (s == "complete") return GraphKind::complete;
  if (s == "erdos_renyi" || s == "er") return GraphKind::erdos_renyi;
  return std::nullopt;
}

std::vector<int> Graph::degrees() const {
  std::vector<int> deg(m, 0);
  for (auto [i, j] : edges) {
    ++deg[i];
    ++deg[j];
  }
  return deg;
}

std::vector<std::vector<int>> Graph::adjacency() const {
  std::vector<std::vector<int>> adj(m);
  for (auto [i, j] : edges) {
    adj[i].push_back(j);
    adj[j].push_back(i);
  }
  for (auto& nbrs : adj) std::sort(nbrs.begin(), nbrs.end());
  return adj;
}

bool Graph::is_connected() const {
  if (m <= 0) return false;
  auto adj = adjacency();
  std::vector<char> seen(m, 0);
  std::queue<int> q;
  q.push(0);
  seen[0] = 1;
  int count = 1;
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    for (int v : adj[u]) {
      if (!seen[v]) {
        seen[v] = 1;
        ++count;
        q.push(v);
      }
    }
  }
  return count == m;
}

namespace {

void check_edge(const Graph& g, int i, int j) {
  if (i == j) throw InvalidParams("graph: self-loop at node " + std::to_string(i));
  if (i < 0 || j < 0 || i >= g.m || j >= g.m)
    throw InvalidParams("graph: edge endpoint out of range");
}

Graph finalize(Graph g) {
  for (auto& [i, j] : g.edges) {
    if (i > j) std::swap(i, j);
    check_edge(g, i, j);
  }
  std::sort(g.edges.begin(), g.edges.end());
  g.edges.erase(std::unique(g.edges.begin(), g.edges.end()), g.edges.end());
  if (!g.is_connected()) throw InvalidParams("graph: not connected");
  return g;
}

}  // namespace

Graph build_topology(GraphKind kind, int m, std::optional<double> p,
                     std::uint64_t seed) {
  if (m < 2) throw InvalidParams("build_topology: m must be >= 2");
  Graph g;
  g.m = m;
  g.kind = kind;
  switch (kind) {
    case GraphKind::ring:
      for (int i = 0; i < m; ++i) g.edges.emplace_back(i, (i + 1) % m);
      if (m == 2) g.edges.pop_back();  // avoid duplicate 0-1
      break;
    case GraphKind::path:
      for (int i = 0; i + 1 < m; ++i) g.edges.emplace_back(i, i + 1);
      break;
    case GraphKind::star:
      for (int i = 1; i < m; ++i) g.edges.emplace_back(0, i);
      break;
    case GraphKind::complete:
      for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) g.edges.emplace_back(i, j);
      break;
    case GraphKind::erdos_renyi: {
      if (!p || *p <= 0.0 || *p > 1.0)
        throw InvalidParams("build_topology: erdos_renyi needs p in (0,1]");
      for (int attempt = 0; attempt < 100; ++attempt) {
        g.edges.clear();
        RngStream rng = make_stream(seed, 0, 0, static_cast<std::uint64_t>(attempt));
        for (int i = 0; i < m; ++i)
          for (int j = i + 1; j < m; ++j)
            if (rng.uniform() < *p) g.edges.emplace_back(i, j);
        if (g.is_connected()) return finalize(std::move(g));
      }
      throw DisconnectedAfterRetries(
          "build_topology: no connected Erdos-Renyi graph in 100 attempts");
    }
  }
  return finalize(std::move(g));
}

WeightMatrix metropolis_weights(const Graph& g) {
  if (!g.is_connected()) throw InvalidParams("metropolis_weights: graph not connected");
  const int m = g.m;
  auto deg = g.degrees();
  WeightMatrix wm;
  wm.m = m;
  wm.w = Eigen::MatrixXd::Zero(m, m);
  for (auto [i, j] : g.edges) {
    const double wij = 1.0 / (1.0 + std::max(deg[i], deg[j]));
    wm.w(i, j) = wij;
    wm.w(j, i) = wij;
  }
  for (int i = 0; i < m; ++i) {
    double off = 0.0;
    for (int j = 0; j < m; ++j)
      if (j != i) off += wm.w(i, j);
    wm.w(i, i) = 1.0 - off;
  }
  wm.rho = spectral_gap(wm.w);
  return wm;
}

double spectral_gap(const Eigen::MatrixXd& w) {
  const int m = static_cast<int>(w.rows());
  if (w.cols() != m || m < 1) throw InvalidParams("spectral_gap: square matrix required");
  for (int i = 0; i < m; ++i) {
    double rs = w.row(i).sum(), cs = w.col(i).sum();
    if (std::abs(rs - 1.0) > 1e-9 || std::abs(cs - 1.0) > 1e-9)
      throw NotDoublyStochastic("spectral_gap: row/col sums deviate from 1");
    if (w.row(i).minCoeff() < -1e-12)
      throw NotDoublyStochastic("spectral_gap: negative entry");
  }
  Eigen::MatrixXd d = w - Eigen::MatrixXd::Constant(m, m, 1.0 / m);
  if (m <= 512) {
    const bool symmetric = (w - w.transpose()).cwiseAbs().maxCoeff() < 1e-12;
    if (symmetric) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(d);
      const double r = es.eigenvalues().cwiseAbs().maxCoeff();
      return r * r;
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(d);
    const double s = svd.singularValues()(0);
    return s * s;
  }
  // power iteration on (W-J)^T (W-J)
  RngStream rng = make_stream(0x5eedULL, 0, 0, 0);
  Eigen::VectorXd u(m);
  for (int i = 0; i < m; ++i) u(i) = rng.normal();
  u.normalize();
  double value = 0.0;
  for (int it = 0; it < 10000; ++it) {
    Eigen::VectorXd v = d.transpose() * (d * u);
    const double nv = v.norm();
    if (nv == 0.0) return 0.0;
    v /= nv;
    if (std::abs(nv - value) <= 1e-10 * std::max(1.0, nv)) return nv;
    value = nv;
    u = v;
  }
  return value;
}

std::vector<std::string> validate_assumption1(const WeightMatrix& wm,
                                              const Graph* g) {
  std::vector<std::string> report;
  const int m = wm.m;
  const Eigen::MatrixXd& w = wm.w;
  if (w.rows() != m || w.cols() != m) {
    report.push_back("dimension mismatch");
    return report;
  }
  if ((w - w.transpose()).cwiseAbs().maxCoeff() > 1e-12)
    report.push_back("asymmetric: w_ij != w_ji");
  if (w.minCoeff() < -1e-15)
    report.push_back("negative entry");
  for (int i = 0; i < m; ++i) {
    if (std::abs(w.row(i).sum() - 1.0) > 1e-12)
      report.push_back("row " + std::to_string(i) + " sums to " +
                       std::to_string(w.row(i).sum()));
    if (std::abs(w.col(i).sum() - 1.0) > 1e-12)
      report.push_back("col " + std::to_string(i) + " sums to " +
                       std::to_string(w.col(i).sum()));
  }
  if (g != nullptr) {
    for (auto [i, j] : g->edges)
      if (w(i, j) <= 0.0)
        report.push_back("w_ij=0 on edge (" + std::to_string(i) + "," +
                         std::to_string(j) + ")");
    Eigen::MatrixXd mask = Eigen::MatrixXd::Zero(m, m);
    for (auto [i, j] : g->edges) mask(i, j) = mask(j, i) = 1.0;
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        if (i != j && mask(i, j) == 0.0 && std::abs(w(i, j)) > 0.0)
          report.push_back("nonzero weight off the edge set at (" +
                           std::to_string(i) + "," + std::to_string(j) + ")");
  }
  if (report.empty()) {
    const double rho = spectral_gap(w);
    if (rho >= 1.0) report.push_back("rho >= 1");
  }
  return report;
}

void save_edge_list(const Graph& g, std::ostream& os) {
  os << g.m << " " << g.edges.size() << "\n";
  for (auto [i, j] : g.edges) os << i << " " << j << "\n";
}

void save_edge_list(const Graph& g, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw IoError("save_edge_list: cannot open " + path);
  save_edge_list(g, os);
}

Graph load_edge_list(std::istream& is) {
  Graph g;
  std::size_t k = 0;
  if (!(is >> g.m >> k)) throw ParseError("edge list: bad header line");
  for (std::size_t e = 0; e < k; ++e) {
    int i, j;
    if (!(is >> i >> j))
      throw ParseError("edge list: bad edge line " + std::to_string(e + 2));
    g.edges.emplace_back(i, j);
  }
  for (auto& [i, j] : g.edges) {
    if (i == j || i < 0 || j < 0 || i >= g.m || j >= g.m)
      throw ParseError("edge list: invalid edge");
    if (i > j) std::swap(i, j);
  }
  std::sort(g.edges.begin(), g.edges.end());
  if (!g.is_connected()) throw InvalidParams("edge list: graph not connected");
  return g;
}

Graph load_edge_list(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw IoError("load_edge_list: cannot open " + path);
  return load_edge_list(is);
}

}  // namespace lopa
