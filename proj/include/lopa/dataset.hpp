// Copyright 2026 The lopa-sim Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "lopa/rng.hpp"

namespace lopa {

// Dense binary classification dataset with labels in {-1,+1}.
struct Dataset {
  std::vector<Eigen::VectorXd> features;
  std::vector<int> labels;
  std::string provenance;

  int size() const { return static_cast<int>(features.size()); }
  int dim() const { return features.empty() ? 0 : static_cast<int>(features[0].size()); }
};

// LIBSVM sparse text format "label idx:val ...", 1-based indices, feature
// dimension = max index seen. Label sets {0,1} and {1,2} are remapped to
// {-1,+1} with the smaller label becoming -1.
Dataset load_libsvm(std::istream& is, const std::string& name = "stream");
Dataset load_libsvm(const std::string& path);
void save_libsvm(const Dataset& ds, std::ostream& os);
void save_libsvm(const Dataset& ds, const std::string& path);

// Two Gaussian clusters at +/- separation * u for a random unit direction u,
// balanced labels, deterministic in the seed.
Dataset make_synthetic_dataset(int p, int n_samples, double separation,
                               std::uint64_t seed);

enum class PartitionMode { iid, weak, strong };
const char* to_string(PartitionMode mode);

// Per-node disjoint train/validation index sets over one dataset.
struct NodePartition {
  std::vector<std::vector<int>> train;
  std::vector<std::vector<int>> val;
  std::vector<double> train_positive_fraction;
};

// iid: uniform random split. weak/strong: half the nodes get positive-label
// fraction 0.8 +/- a, the other half 0.35 +/- a, with a = 0 for weak and
// a ~ U[-0.15, 0.15] per node for strong.
NodePartition partition_heterogeneous(const Dataset& ds, int m, PartitionMode mode,
                                      double val_fraction, std::uint64_t seed);

// Uniform sampling with replacement; deterministic given the stream state.
std::vector<int> sample_minibatch(RngStream& rng, const std::vector<int>& indices,
                                  int batch_size);

}  // namespace lopa
