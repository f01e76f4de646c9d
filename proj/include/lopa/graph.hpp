// Copyright 2026 The lopa-sim Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace lopa {

enum class GraphKind { ring, path, star, complete, erdos_renyi };

const char* to_string(GraphKind kind);
std::optional<GraphKind> graph_kind_from_string(const std::string& s);

// Undirected, connected communication topology. Edges are stored with i < j.
struct Graph {
  int m = 0;
  std::vector<std::pair<int, int>> edges;
  GraphKind kind = GraphKind::ring;

  std::vector<int> degrees() const;
  std::vector<std::vector<int>> adjacency() const;
  bool is_connected() const;
};

// pre: m >= 2; for erdos_renyi, p in (0,1]; resamples up to 100 times until
// connected, deterministic in the seed.
Graph build_topology(GraphKind kind, int m, std::optional<double> p,
                     std::uint64_t seed);

// Doubly stochastic gossip matrix with its spectral gap rho = ||W - J||^2.
struct WeightMatrix {
  Eigen::MatrixXd w;
  double rho = 0.0;
  int m = 0;
};

// w_ij = 1/(1 + max(deg_i, deg_j)) on edges, w_ii = 1 - sum_j w_ij.
WeightMatrix metropolis_weights(const Graph& g);

// rho = (second-largest singular value of W)^2. Dense eigensolve for
// m <= 512, power iteration on W - J with tolerance 1e-10 otherwise.
double spectral_gap(const Eigen::MatrixXd& w);

// Lists violations of the doubly-stochastic/symmetry/support requirements;
// empty report means the matrix is admissible.
std::vector<std::string> validate_assumption1(const WeightMatrix& wm,
                                              const Graph* g = nullptr);

// Edge-list text format: first line "m k", then k lines "i j".
void save_edge_list(const Graph& g, std::ostream& os);
void save_edge_list(const Graph& g, const std::string& path);
Graph load_edge_list(std::istream& is);
Graph load_edge_list(const std::string& path);

}  // namespace lopa
