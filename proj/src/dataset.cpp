// Copyright 2026 The lopa-sim Authors
// SPDX-License-Identifier: Apache-2.0
#include "lopa/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "lopa/errors.hpp"

namespace lopa {

Dataset load_libsvm(std::istream& is, const std::string& name) {
  std::vector<double> raw_labels;
  std::vector<std::vector<std::pair<int, double>>> rows;
  int max_index = 0;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    // strip comments and blank lines
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    double label;
    if (!(ls >> label)) {
      if (ls.eof()) continue;  // blank
      throw ParseError(name + ":" + std::to_string(lineno) + ": bad label");
    }
    std::vector<std::pair<int, double>> row;
    std::string tok;
    while (ls >> tok) {
      const auto colon = tok.find(':');
      if (colon == std::string::npos)
        throw ParseError(name + ":" + std::to_string(lineno) +
                         ": expected idx:val, got '" + tok + "'");
      int idx = 0;
      double val = 0.0;
      try {
        idx = std::stoi(tok.substr(0, colon));
        val = std::stod(tok.substr(colon + 1));
      } catch (const std::exception&) {
        throw ParseError(name + ":" + std::to_string(lineno) +
                         ": bad idx:val token '" + tok + "'");
      }
      if (idx < 1)
        throw ParseError(name + ":" + std::to_string(lineno) +
                         ": indices are 1-based");
      max_index = std::max(max_index, idx);
      row.emplace_back(idx, val);
    }
    raw_labels.push_back(label);
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError(name + ": empty dataset");

  std::set<double> label_set(raw_labels.begin(), raw_labels.end());
  std::map<double, int> mapping;
  if (label_set == std::set<double>{-1.0, 1.0} || label_set == std::set<double>{-1.0} ||
      label_set == std::set<double>{1.0}) {
    mapping = {{-1.0, -1}, {1.0, 1}};
  } else if (label_set == std::set<double>{0.0, 1.0}) {
    mapping = {{0.0, -1}, {1.0, 1}};
  } else if (label_set == std::set<double>{1.0, 2.0}) {
    mapping = {{1.0, -1}, {2.0, 1}};
  } else {
    std::string got;
    for (double v : label_set) got += (got.empty() ? "" : ",") + std::to_string(v);
    throw UnsupportedLabelSet(name + ": label set {" + got +
                              "} not in {-1,+1}/{0,1}/{1,2}");
  }

  Dataset ds;
  ds.provenance = name;
  for (size_t r = 0; r < rows.size(); ++r) {
    Eigen::VectorXd x = Eigen::VectorXd::Zero(max_index);
    for (auto [idx, val] : rows[r]) x(idx - 1) = val;
    ds.features.push_back(std::move(x));
    ds.labels.push_back(mapping.at(raw_labels[r]));
  }
  return ds;
}

Dataset load_libsvm(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw IoError("load_libsvm: cannot open " + path);
  return load_libsvm(is, path);
}

void save_libsvm(const Dataset& ds, std::ostream& os) {
  os.precision(17);
  for (int r = 0; r < ds.size(); ++r) {
    os << ds.labels[r];
    const auto& x = ds.features[r];
    for (int j = 0; j < x.size(); ++j)
      if (x(j) != 0.0) os << " " << (j + 1) << ":" << x(j);
    os << "\n";
  }
}

void save_libsvm(const Dataset& ds, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw IoError("save_libsvm: cannot open " + path);
  save_libsvm(ds, os);
}

Dataset make_synthetic_dataset(int p, int n_samples, double separation,
                               std::uint64_t seed) {
  if (p < 1 || n_samples < 2)
    throw InvalidParams("make_synthetic_dataset: need p >= 1, n_samples >= 2");
  RngStream rng = make_stream(seed, 0xda7aULL, 0, 0);
  Eigen::VectorXd u(p);
  for (int i = 0; i < p; ++i) u(i) = rng.normal();
  u.normalize();
  Dataset ds;
  ds.provenance = "synthetic(p=" + std::to_string(p) +
                  ",n=" + std::to_string(n_samples) +
                  ",sep=" + std::to_string(separation) + ")";
  for (int r = 0; r < n_samples; ++r) {
    const int label = (r % 2 == 0) ? 1 : -1;
    Eigen::VectorXd x(p);
    for (int i = 0; i < p; ++i) x(i) = rng.normal();
    x += label * separation * u;
    ds.features.push_back(std::move(x));
    ds.labels.push_back(label);
  }
  return ds;
}

const char* to_string(PartitionMode mode) {
  switch (mode) {
    case PartitionMode::iid: return "iid";
    case PartitionMode::weak: return "weak";
    case PartitionMode::strong: return "strong";
  }
  return "?";
}

namespace {

template <typename T>
void shuffle_in_place(std::vector<T>& v, RngStream& rng) {
  for (size_t i = v.size(); i > 1; --i)
    std::swap(v[i - 1], v[rng.uniform_int(i)]);
}

}  // namespace

NodePartition partition_heterogeneous(const Dataset& ds, int m, PartitionMode mode,
                                      double val_fraction, std::uint64_t seed) {
  if (m < 2) throw InvalidParams("partition_heterogeneous: m >= 2 required");
  if (val_fraction < 0.0 || val_fraction >= 1.0)
    throw InvalidParams("partition_heterogeneous: val_fraction in [0,1)");
  std::vector<int> pos, neg;
  for (int r = 0; r < ds.size(); ++r)
    (ds.labels[r] > 0 ? pos : neg).push_back(r);
  if (pos.empty() || neg.empty())
    throw InsufficientSamples("partition_heterogeneous: need both labels");

  RngStream rng = make_stream(seed, 0x9a27ULL, 0, 0);
  shuffle_in_place(pos, rng);
  shuffle_in_place(neg, rng);

  const int per_node = ds.size() / m;
  if (per_node < 2)
    throw InsufficientSamples("partition_heterogeneous: fewer than 2 samples per node");

  std::vector<std::vector<int>> node_samples(m);
  if (mode == PartitionMode::iid) {
    std::vector<int> all = pos;
    all.insert(all.end(), neg.begin(), neg.end());
    shuffle_in_place(all, rng);
    for (int i = 0; i < m; ++i)
      node_samples[i].assign(all.begin() + i * per_node,
                             all.begin() + (i + 1) * per_node);
  } else {
    size_t pi = 0, ni = 0;
    for (int i = 0; i < m; ++i) {
      double frac = (i < m / 2) ? 0.8 : 0.35;
      if (mode == PartitionMode::strong)
        frac += -0.15 + 0.30 * rng.uniform();
      frac = std::clamp(frac, 0.0, 1.0);
      int want_pos = static_cast<int>(std::lround(frac * per_node));
      want_pos = std::min<int>(want_pos, static_cast<int>(pos.size() - pi));
      int want_neg = per_node - want_pos;
      if (want_neg > static_cast<int>(neg.size() - ni)) {
        want_neg = static_cast<int>(neg.size() - ni);
        want_pos = std::min<int>(per_node - want_neg,
                                 static_cast<int>(pos.size() - pi));
      }
      for (int k = 0; k < want_pos; ++k) node_samples[i].push_back(pos[pi++]);
      for (int k = 0; k < want_neg; ++k) node_samples[i].push_back(neg[ni++]);
      if (node_samples[i].empty())
        throw InsufficientSamples("partition_heterogeneous: node " +
                                  std::to_string(i) + " empty");
      shuffle_in_place(node_samples[i], rng);
    }
  }

  NodePartition part;
  part.train.resize(m);
  part.val.resize(m);
  part.train_positive_fraction.resize(m, 0.0);
  for (int i = 0; i < m; ++i) {
    const int nval = static_cast<int>(std::lround(val_fraction * node_samples[i].size()));
    if (nval >= static_cast<int>(node_samples[i].size()))
      throw InsufficientSamples("partition_heterogeneous: empty train set at node " +
                                std::to_string(i));
    part.val[i].assign(node_samples[i].begin(), node_samples[i].begin() + nval);
    part.train[i].assign(node_samples[i].begin() + nval, node_samples[i].end());
    int tp = 0;
    for (int r : part.train[i]) tp += (ds.labels[r] > 0);
    part.train_positive_fraction[i] =
        static_cast<double>(tp) / static_cast<double>(part.train[i].size());
  }
  return part;
}

std::vector<int> sample_minibatch(RngStream& rng, const std::vector<int>& indices,
                                  int batch_size) {
  if (batch_size < 1) throw InvalidParams("sample_minibatch: batch_size >= 1");
  if (indices.empty()) throw InvalidParams("sample_minibatch: empty index set");
  std::vector<int> out(batch_size);
  for (int k = 0; k < batch_size; ++k)
    out[k] = indices[rng.uniform_int(indices.size())];
  return out;
}

}  // namespace lopa
