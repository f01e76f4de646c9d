// Copyright 2026 The lopa-sim Authors
// SPDX-License-Identifier: Apache-2.0
#include "lopa/config.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "lopa/errors.hpp"

namespace lopa {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

}  // namespace

ConfigMap parse_kv_text(std::istream& is, const std::string& name) {
  ConfigMap kv;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ParseError(name + ":" + std::to_string(lineno) +
                       ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw ParseError(name + ":" + std::to_string(lineno) + ": empty key");
    auto it = kv.find(key);
    if (it != kv.end())
      throw ParseError(name + ":" + std::to_string(lineno) + ": duplicate key '" +
                       key + "' (first set at line " +
                       std::to_string(it->second.line) + ")");
    kv[key] = ConfigEntry{value, lineno};
  }
  return kv;
}

ConfigMap parse_kv_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw IoError("config: cannot open " + path);
  return parse_kv_text(is, path);
}

std::vector<std::uint64_t> parse_seed_spec(const std::string& spec) {
  std::vector<std::uint64_t> seeds;
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    tok = trim(tok);
    if (tok.empty()) continue;
    const auto dots = tok.find("..");
    try {
      if (dots != std::string::npos) {
        const std::uint64_t lo = std::stoull(tok.substr(0, dots));
        const std::uint64_t hi = std::stoull(tok.substr(dots + 2));
        if (hi < lo) throw InvalidParams("seed range reversed: " + tok);
        for (std::uint64_t s = lo; s <= hi; ++s) seeds.push_back(s);
      } else {
        seeds.push_back(std::stoull(tok));
      }
    } catch (const std::invalid_argument&) {
      throw ParseError("seeds: bad token '" + tok + "'");
    } catch (const std::out_of_range&) {
      throw ParseError("seeds: out of range token '" + tok + "'");
    }
  }
  if (seeds.empty()) throw InvalidParams("seeds: empty seed list");
  return seeds;
}

namespace {

class KvReader {
 public:
  explicit KvReader(const ConfigMap& kv) : kv_(kv) {}

  bool has(const std::string& key) {
    used_.insert(key);
    return kv_.count(key) > 0;
  }
  std::string str(const std::string& key, const std::string& dflt) {
    used_.insert(key);
    auto it = kv_.find(key);
    return it == kv_.end() ? dflt : it->second.value;
  }
  double num(const std::string& key, double dflt) {
    used_.insert(key);
    auto it = kv_.find(key);
    if (it == kv_.end()) return dflt;
    try {
      size_t pos = 0;
      const double v = std::stod(it->second.value, &pos);
      if (pos != it->second.value.size())
        throw std::invalid_argument("trailing");
      return v;
    } catch (const std::exception&) {
      throw ParseError("config line " + std::to_string(it->second.line) +
                       ": bad number for '" + key + "'");
    }
  }
  long integer(const std::string& key, long dflt) {
    const double v = num(key, static_cast<double>(dflt));
    const long r = static_cast<long>(v);
    if (static_cast<double>(r) != v)
      throw ParseError("config: '" + key + "' must be an integer");
    return r;
  }
  std::uint64_t uinteger(const std::string& key, std::uint64_t dflt) {
    const long v = integer(key, static_cast<long>(dflt));
    if (v < 0) throw ParseError("config: '" + key + "' must be >= 0");
    return static_cast<std::uint64_t>(v);
  }
  bool boolean(const std::string& key, bool dflt) {
    used_.insert(key);
    auto it = kv_.find(key);
    if (it == kv_.end()) return dflt;
    const std::string& v = it->second.value;
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw UnknownValue("config: '" + key + "' must be true/false, got '" + v + "'");
  }

  void check_all_used() const {
    for (const auto& [key, entry] : kv_) {
      if (!used_.count(key))
        throw UnknownKey("config line " + std::to_string(entry.line) +
                         ": unknown key '" + key + "'");
    }
  }

 private:
  const ConfigMap& kv_;
  std::set<std::string> used_;
};

}  // namespace

ExperimentConfig build_config(const ConfigMap& kv) {
  KvReader r(kv);
  ExperimentConfig cfg;
  cfg.preset = r.str("preset", "");

  {
    const std::string k = r.str("topology.kind", "ring");
    const auto kind = graph_kind_from_string(k);
    if (!kind) throw UnknownValue("config: topology.kind '" + k + "' unknown");
    cfg.topology.kind = *kind;
  }
  cfg.topology.m = static_cast<int>(r.integer("topology.m", 8));
  cfg.topology.p = r.num("topology.p", 0.5);
  cfg.topology.seed = r.uinteger("topology.seed", 7);

  {
    const std::string k = r.str("problem.kind", "quadratic");
    if (k == "quadratic") cfg.problem_kind = ProblemKind::quadratic;
    else if (k == "logreg_hpo") cfg.problem_kind = ProblemKind::logreg_hpo;
    else throw UnknownValue("config: problem.kind '" + k + "' unknown");
  }
  cfg.problem_seed = r.uinteger("problem.seed", 1234);

  QuadraticSpec& q = cfg.quadratic;
  q.m = cfg.topology.m;
  q.n = static_cast<int>(r.integer("problem.n", q.n));
  q.p = static_cast<int>(r.integer("problem.p", q.p));
  q.mu_g = r.num("problem.mu_g", q.mu_g);
  q.L_g = r.num("problem.L_g", q.L_g);
  q.T_scale = r.num("problem.T_scale", q.T_scale);
  q.R_min = r.num("problem.R_min", q.R_min);
  q.R_max = r.num("problem.R_max", q.R_max);
  q.B_scale = r.num("problem.B_scale", q.B_scale);
  q.c_scale = r.num("problem.c_scale", q.c_scale);
  q.t_scale = r.num("problem.t_scale", q.t_scale);
  q.b_f_scale = r.num("problem.b_f_scale", q.b_f_scale);
  q.b_g_scale = r.num("problem.b_g_scale", q.b_g_scale);
  q.ref_radius = r.num("problem.ref_radius", q.ref_radius);
  q.sigma.g_theta = r.num("problem.sigma.g_theta", 0.0);
  q.sigma.g_thetatheta = r.num("problem.sigma.g_thetatheta", 0.0);
  q.sigma.g_xtheta = r.num("problem.sigma.g_xtheta", 0.0);
  q.sigma.f_theta = r.num("problem.sigma.f_theta", 0.0);
  q.sigma.f_x = r.num("problem.sigma.f_x", 0.0);

  LogRegConfig& lr = cfg.logreg;
  lr.dataset_path = r.str("dataset.path", "");
  lr.p = static_cast<int>(r.integer("dataset.p", lr.p));
  lr.n_samples = static_cast<int>(r.integer("dataset.n", lr.n_samples));
  lr.separation = r.num("dataset.separation", lr.separation);
  lr.dataset_seed = r.uinteger("dataset.seed", lr.dataset_seed);
  {
    const std::string k = r.str("partition.mode", "strong");
    if (k == "iid") lr.mode = PartitionMode::iid;
    else if (k == "weak") lr.mode = PartitionMode::weak;
    else if (k == "strong") lr.mode = PartitionMode::strong;
    else throw UnknownValue("config: partition.mode '" + k + "' unknown");
  }
  lr.val_fraction = r.num("partition.val_fraction", lr.val_fraction);
  lr.partition_seed = r.uinteger("partition.seed", lr.partition_seed);

  AlgorithmConfig& a = cfg.algorithm;
  {
    const std::string k = r.str("algorithm.scheme", "GT");
    const auto s = scheme_from_string(k);
    if (!s) throw UnknownValue("config: algorithm.scheme '" + k + "' unknown");
    a.scheme = *s;
  }
  a.K = r.integer("algorithm.K", a.K);
  {
    const std::string k = r.str("algorithm.schedule", "manual");
    const auto s = schedule_from_string(k);
    if (!s) throw UnknownValue("config: algorithm.schedule '" + k + "' unknown");
    a.schedule = *s;
  }
  a.manual.alpha = r.num("algorithm.alpha", a.manual.alpha);
  a.manual.beta = r.num("algorithm.beta", a.manual.beta);
  a.manual.lambda = r.num("algorithm.lambda", a.manual.lambda);
  a.manual.gamma = r.num("algorithm.gamma", a.manual.gamma);
  a.manual.tau = r.num("algorithm.tau", a.manual.tau);
  a.tau = r.num("algorithm.schedule_tau", a.tau);
  a.v0_scale = r.num("algorithm.v0_scale", a.v0_scale);
  a.Q = static_cast<int>(r.integer("algorithm.Q", a.Q));
  a.N = static_cast<int>(r.integer("algorithm.N", a.N));
  {
    const std::string k = r.str("algorithm.estimator", "SHIA");
    const auto e = estimator_from_string(k);
    if (!e) throw UnknownValue("config: algorithm.estimator '" + k + "' unknown");
    a.estimator = *e;
  }
  a.batch_inner = static_cast<int>(r.integer("algorithm.batch_inner", a.batch_inner));
  a.batch_outer = static_cast<int>(r.integer("algorithm.batch_outer", a.batch_outer));
  a.x0_scale = r.num("algorithm.x0_scale", a.x0_scale);
  a.unsafe_steps = r.boolean("algorithm.unsafe_steps", a.unsafe_steps);
  {
    const std::string k = r.str("algorithm.executor", "openmp");
    if (k == "serial") a.executor = Executor::serial;
    else if (k == "openmp") a.executor = Executor::openmp;
    else throw UnknownValue("config: algorithm.executor '" + k + "' unknown");
  }

  cfg.cadence = r.integer("metrics.cadence", cfg.cadence);
  cfg.threshold = r.num("analysis.threshold", cfg.threshold);
  if (r.has("run.seeds")) cfg.seeds = parse_seed_spec(r.str("run.seeds", "0"));
  cfg.output_dir = r.str("output.dir", cfg.output_dir);
  cfg.emit_jsonl_too = r.boolean("output.jsonl", cfg.emit_jsonl_too);

  r.check_all_used();

  // basic sanity
  if (cfg.topology.m < 2) throw ConfigInvalid("config: topology.m must be >= 2");
  if (cfg.algorithm.K < 0) throw ConfigInvalid("config: algorithm.K must be >= 0");
  if (cfg.cadence < 1) throw ConfigInvalid("config: metrics.cadence must be >= 1");
  if (cfg.seeds.empty()) throw ConfigInvalid("config: seed list must be nonempty");
  return cfg;
}

std::string ExperimentConfig::canonical_text() const {
  std::ostringstream os;
  os.precision(17);
  if (!preset.empty()) os << "preset = " << preset << "\n";
  os << "topology.kind = " << to_string(topology.kind) << "\n";
  os << "topology.m = " << topology.m << "\n";
  os << "topology.p = " << topology.p << "\n";
  os << "topology.seed = " << topology.seed << "\n";
  os << "problem.kind = "
     << (problem_kind == ProblemKind::quadratic ? "quadratic" : "logreg_hpo") << "\n";
  os << "problem.seed = " << problem_seed << "\n";
  if (problem_kind == ProblemKind::quadratic) {
    os << "problem.n = " << quadratic.n << "\n";
    os << "problem.p = " << quadratic.p << "\n";
    os << "problem.mu_g = " << quadratic.mu_g << "\n";
    os << "problem.L_g = " << quadratic.L_g << "\n";
    os << "problem.T_scale = " << quadratic.T_scale << "\n";
    os << "problem.R_min = " << quadratic.R_min << "\n";
    os << "problem.R_max = " << quadratic.R_max << "\n";
    os << "problem.B_scale = " << quadratic.B_scale << "\n";
    os << "problem.c_scale = " << quadratic.c_scale << "\n";
    os << "problem.t_scale = " << quadratic.t_scale << "\n";
    os << "problem.b_f_scale = " << quadratic.b_f_scale << "\n";
    os << "problem.b_g_scale = " << quadratic.b_g_scale << "\n";
    os << "problem.ref_radius = " << quadratic.ref_radius << "\n";
    os << "problem.sigma.g_theta = " << quadratic.sigma.g_theta << "\n";
    os << "problem.sigma.g_thetatheta = " << quadratic.sigma.g_thetatheta << "\n";
    os << "problem.sigma.g_xtheta = " << quadratic.sigma.g_xtheta << "\n";
    os << "problem.sigma.f_theta = " << quadratic.sigma.f_theta << "\n";
    os << "problem.sigma.f_x = " << quadratic.sigma.f_x << "\n";
  } else {
    os << "dataset.path = " << logreg.dataset_path << "\n";
    os << "dataset.p = " << logreg.p << "\n";
    os << "dataset.n = " << logreg.n_samples << "\n";
    os << "dataset.separation = " << logreg.separation << "\n";
    os << "dataset.seed = " << logreg.dataset_seed << "\n";
    os << "partition.mode = " << to_string(logreg.mode) << "\n";
    os << "partition.val_fraction = " << logreg.val_fraction << "\n";
    os << "partition.seed = " << logreg.partition_seed << "\n";
  }
  os << "algorithm.scheme = " << to_string(algorithm.scheme) << "\n";
  os << "algorithm.K = " << algorithm.K << "\n";
  os << "algorithm.schedule = " << to_string(algorithm.schedule) << "\n";
  if (algorithm.schedule == ScheduleKind::manual) {
    os << "algorithm.alpha = " << algorithm.manual.alpha << "\n";
    os << "algorithm.beta = " << algorithm.manual.beta << "\n";
    os << "algorithm.lambda = " << algorithm.manual.lambda << "\n";
    os << "algorithm.gamma = " << algorithm.manual.gamma << "\n";
    os << "algorithm.tau = " << algorithm.manual.tau << "\n";
  } else {
    os << "algorithm.schedule_tau = " << algorithm.tau << "\n";
    os << "algorithm.v0_scale = " << algorithm.v0_scale << "\n";
  }
  if (algorithm.scheme == Scheme::QLOOP_LG || algorithm.scheme == Scheme::QLOOP_GT) {
    os << "algorithm.Q = " << algorithm.Q << "\n";
    os << "algorithm.N = " << algorithm.N << "\n";
    os << "algorithm.estimator = "
       << (algorithm.estimator == HvEstimator::NS ? "NS" : "SHIA") << "\n";
  }
  os << "algorithm.batch_inner = " << algorithm.batch_inner << "\n";
  os << "algorithm.batch_outer = " << algorithm.batch_outer << "\n";
  os << "algorithm.x0_scale = " << algorithm.x0_scale << "\n";
  os << "algorithm.unsafe_steps = " << (algorithm.unsafe_steps ? "true" : "false")
     << "\n";
  os << "metrics.cadence = " << cadence << "\n";
  os << "analysis.threshold = " << threshold << "\n";
  os << "output.dir = " << output_dir << "\n";
  return os.str();
}

ExperimentConfig resolve_config(const std::string& preset_or_empty,
                                const ConfigMap& overrides) {
  ConfigMap merged;
  std::string preset = preset_or_empty;
  if (preset.empty()) {
    auto it = overrides.find("preset");
    if (it != overrides.end()) preset = it->second.value;
  }
  if (!preset.empty()) merged = preset_config(preset);
  for (const auto& [key, entry] : overrides) merged[key] = entry;
  if (!preset.empty()) merged["preset"] = ConfigEntry{preset, 0};
  return build_config(merged);
}

}  // namespace lopa
