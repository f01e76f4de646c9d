// Copyright 2026 The lopa-sim Authors
// SPDX-License-Identifier: Apache-2.0
#include "lopa/runner.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "lopa/errors.hpp"
#include "lopa/logreg.hpp"
#include "lopa/trace_io.hpp"

namespace fs = std::filesystem;

namespace lopa {

namespace {
constexpr const char* kVersion = "lopa-sim 0.1.0";

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("read_file: cannot open " + path);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

}  // namespace

std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string strip_wall_time_column(const std::string& csv_text) {
  const auto eol = csv_text.find('\n');
  const std::string header = csv_text.substr(0, eol);
  const std::string tail = ",wall_time_ms";
  if (header.size() < tail.size() ||
      header.compare(header.size() - tail.size(), tail.size(), tail) != 0)
    return csv_text;  // no wall-time column (e.g. a summary file)
  std::string out;
  out.reserve(csv_text.size());
  std::istringstream is(csv_text);
  std::string line;
  while (std::getline(is, line)) {
    const auto comma = line.rfind(',');
    out += (comma == std::string::npos) ? line : line.substr(0, comma);
    out += '\n';
  }
  return out;
}

BuiltProblem build_problem(const ExperimentConfig& cfg) {
  BuiltProblem bp;
  const auto& t = cfg.topology;
  bp.graph = build_topology(t.kind, t.m,
                            t.kind == GraphKind::erdos_renyi
                                ? std::optional<double>(t.p)
                                : std::nullopt,
                            t.seed);
  bp.weights = metropolis_weights(bp.graph);
  if (cfg.problem_kind == ProblemKind::quadratic) {
    QuadraticSpec spec = cfg.quadratic;
    spec.m = t.m;
    bp.oracle = make_quadratic(spec, cfg.problem_seed);
  } else {
    Dataset ds = cfg.logreg.dataset_path.empty()
                     ? make_synthetic_dataset(cfg.logreg.p, cfg.logreg.n_samples,
                                              cfg.logreg.separation,
                                              cfg.logreg.dataset_seed)
                     : load_libsvm(cfg.logreg.dataset_path);
    NodePartition part = partition_heterogeneous(
        ds, t.m, cfg.logreg.mode, cfg.logreg.val_fraction, cfg.logreg.partition_seed);
    bp.oracle = make_logreg_hpo(std::move(ds), std::move(part), t.m);
  }
  return bp;
}

RunConfig build_run_config(const ExperimentConfig& cfg, const BilevelOracle& oracle,
                           double rho, std::uint64_t seed,
                           ScheduleInfo* schedule_out) {
  RunConfig rc;
  rc.scheme = cfg.algorithm.scheme;
  rc.K = cfg.algorithm.K;
  rc.Q = cfg.algorithm.Q;
  rc.N = cfg.algorithm.N;
  rc.estimator = cfg.algorithm.estimator;
  rc.batch_inner = cfg.algorithm.batch_inner;
  rc.batch_outer = cfg.algorithm.batch_outer;
  rc.seed = seed;
  rc.cadence = cfg.cadence;
  rc.unsafe_steps = cfg.algorithm.unsafe_steps;
  rc.x0_scale = cfg.algorithm.x0_scale;
  rc.executor = cfg.algorithm.executor;
  if (cfg.algorithm.schedule == ScheduleKind::manual) {
    rc.steps = cfg.algorithm.manual;
    if (schedule_out) *schedule_out = ScheduleInfo{rc.steps, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0};
  } else {
    const DerivedConstants dc = derive_constants(oracle.constants());
    const ScheduleInfo info = schedule_stepsizes(
        cfg.algorithm.schedule, cfg.algorithm.K, dc, rho, oracle.num_nodes(),
        std::nullopt, cfg.algorithm.tau, cfg.algorithm.v0_scale);
    rc.steps = info.steps;
    if (schedule_out) *schedule_out = info;
  }
  return rc;
}

Trace run_single(const ExperimentConfig& cfg, const BuiltProblem& problem,
                 std::uint64_t seed) {
  RunConfig rc = build_run_config(cfg, *problem.oracle, problem.weights.rho, seed);
  std::optional<LyapunovSettings> lyap;
  if (problem.oracle->has_analytic()) {
    LyapunovSettings ls;
    ls.constants = derive_constants(problem.oracle->constants());
    ls.steps = rc.steps;
    ls.rho = problem.weights.rho;
    ls.variant = (rc.scheme == Scheme::LG || rc.scheme == Scheme::QLOOP_LG)
                     ? LyapunovVariant::LG
                     : LyapunovVariant::GT;
    lyap = ls;
  }
  MetricsEngine engine(*problem.oracle, lyap);
  return run(*problem.oracle, problem.weights, rc,
             [&engine](const SwarmState& s, long k) { return engine(s, k); });
}

namespace {

// mean/min aggregate over seed traces sharing one k-grid
void write_summary(const std::vector<Trace>& traces, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw IoError("summary: cannot open " + path);
  os << "k,stationarity_mean,stationarity_min,consensus_err_mean,grad_err_mean,"
        "hv_err_mean,inner_err_mean,ave_var_err_mean,var_err_mean,"
        "lyapunov_mean,hessian_calls,grad_calls\n";
  const size_t rows = traces[0].rows.size();
  for (const auto& t : traces)
    if (t.rows.size() != rows)
      throw InvalidParams("summary: traces disagree on row count");
  for (size_t r = 0; r < rows; ++r) {
    const long k = traces[0].rows[r].k;
    double mean_st = 0, min_st = std::numeric_limits<double>::infinity();
    double mean_cons = 0, mean_grad = 0, mean_ave = 0, mean_var = 0;
    double mean_hv = 0, mean_inner = 0, mean_ly = 0;
    bool has_hv = true, has_inner = true, has_ly = true;
    for (const auto& t : traces) {
      const TraceRow& row = t.rows[r];
      mean_st += row.stationarity;
      min_st = std::min(min_st, row.stationarity);
      mean_cons += row.consensus_err;
      mean_grad += row.grad_err;
      mean_ave += row.ave_var_err;
      mean_var += row.var_err;
      if (row.hv_err) mean_hv += *row.hv_err; else has_hv = false;
      if (row.inner_err) mean_inner += *row.inner_err; else has_inner = false;
      if (row.lyapunov) mean_ly += *row.lyapunov; else has_ly = false;
    }
    const double ns = static_cast<double>(traces.size());
    os << k << ',' << fmt17(mean_st / ns) << ',' << fmt17(min_st) << ','
       << fmt17(mean_cons / ns) << ',' << fmt17(mean_grad / ns) << ','
       << (has_hv ? fmt17(mean_hv / ns) : std::string()) << ','
       << (has_inner ? fmt17(mean_inner / ns) : std::string()) << ','
       << fmt17(mean_ave / ns) << ',' << fmt17(mean_var / ns) << ','
       << (has_ly ? fmt17(mean_ly / ns) : std::string()) << ','
       << traces[0].rows[r].hessian_calls << ',' << traces[0].rows[r].grad_calls
       << "\n";
  }
}

// first k at which the min-so-far of the seed-mean stationarity dips below
// the threshold, plus the Hessian-call count at that row
struct ThresholdHit {
  std::optional<long> k;
  std::optional<long> hessian_calls;
};

ThresholdHit find_threshold(const std::vector<Trace>& traces, double threshold) {
  ThresholdHit hit;
  const size_t rows = traces[0].rows.size();
  for (size_t r = 0; r < rows; ++r) {
    double mean_st = 0;
    for (const auto& t : traces) mean_st += t.rows[r].stationarity;
    mean_st /= static_cast<double>(traces.size());
    if (mean_st <= threshold) {
      hit.k = traces[0].rows[r].k;
      hit.hessian_calls = traces[0].rows[r].hessian_calls;
      return hit;
    }
  }
  return hit;
}

}  // namespace

ExperimentResult run_experiment(const std::string& preset,
                                const ConfigMap& overrides,
                                const std::vector<std::uint64_t>& seeds_override,
                                const std::string& out_dir) {
  fs::create_directories(out_dir);
  ExperimentResult result;
  nlohmann::ordered_json manifest;
  manifest["version"] = kVersion;
  manifest["preset"] = preset;
  manifest["variants"] = nlohmann::ordered_json::array();

  std::string stem = preset.empty() ? "run" : preset;
  for (const PresetVariant& pv : preset_variants(preset)) {
    ConfigMap merged = overrides;
    for (const auto& [k, v] : pv.overrides) merged[k] = v;
    ExperimentConfig cfg = resolve_config(preset, merged);
    const std::vector<std::uint64_t> seeds =
        seeds_override.empty() ? cfg.seeds : seeds_override;

    BuiltProblem problem = build_problem(cfg);
    VariantResult vr;
    vr.name = pv.name;
    vr.config = cfg;
    vr.rho = problem.weights.rho;

    std::vector<Trace> traces;
    for (std::uint64_t seed : seeds) {
      ScheduleInfo sched;
      build_run_config(cfg, *problem.oracle, problem.weights.rho, seed, &sched);
      vr.schedule = sched;
      Trace trace = run_single(cfg, problem, seed);
      const std::string base = stem + (pv.name.empty() ? "" : "__" + pv.name) +
                               "__s" + std::to_string(seed);
      const std::string csv = (fs::path(out_dir) / (base + ".csv")).string();
      emit_csv(trace, csv);
      vr.trace_files.push_back(csv);
      result.files.push_back(csv);
      if (cfg.emit_jsonl_too) {
        const std::string jl = (fs::path(out_dir) / (base + ".jsonl")).string();
        emit_jsonl(trace, jl);
        result.files.push_back(jl);
      }
      traces.push_back(std::move(trace));
    }

    const std::string summary =
        (fs::path(out_dir) /
         (stem + (pv.name.empty() ? "" : "__" + pv.name) + "__summary.csv"))
            .string();
    write_summary(traces, summary);
    vr.summary_file = summary;
    result.files.push_back(summary);

    const ThresholdHit hit = find_threshold(traces, cfg.threshold);
    vr.iters_to_threshold = hit.k;
    vr.hessian_calls_to_threshold = hit.hessian_calls;

    nlohmann::ordered_json vj;
    vj["name"] = pv.name;
    vj["rho"] = vr.rho;
    vj["config"] = cfg.canonical_text();
    vj["config_hash"] =
        "fnv1a64:" + std::to_string(fnv1a64(cfg.canonical_text()));
    vj["seeds"] = seeds;
    if (cfg.algorithm.schedule != ScheduleKind::manual) {
      vj["schedule"] = {{"alpha", vr.schedule.steps.alpha},
                        {"beta", vr.schedule.steps.beta},
                        {"lambda", vr.schedule.steps.lambda},
                        {"gamma", vr.schedule.steps.gamma},
                        {"tau", vr.schedule.steps.tau},
                        {"u", vr.schedule.u},
                        {"a0", vr.schedule.a0},
                        {"a1", vr.schedule.a1},
                        {"a2", vr.schedule.a2},
                        {"sigma_p", vr.schedule.sigma_p},
                        {"sigma_c", vr.schedule.sigma_c},
                        {"vartheta", vr.schedule.vartheta}};
    } else {
      vj["schedule"] = {{"alpha", cfg.algorithm.manual.alpha},
                        {"beta", cfg.algorithm.manual.beta},
                        {"lambda", cfg.algorithm.manual.lambda},
                        {"gamma", cfg.algorithm.manual.gamma},
                        {"tau", cfg.algorithm.manual.tau}};
    }
    if (vr.iters_to_threshold) {
      vj["iters_to_threshold"] = *vr.iters_to_threshold;
      vj["hessian_calls_to_threshold"] = *vr.hessian_calls_to_threshold;
    } else {
      vj["iters_to_threshold"] = nullptr;
      vj["hessian_calls_to_threshold"] = nullptr;
    }
    manifest["variants"].push_back(std::move(vj));
    result.variants.push_back(std::move(vr));
  }

  // content hashes over wall-time-stripped bytes
  manifest["outputs"] = nlohmann::ordered_json::array();
  for (const std::string& f : result.files) {
    std::string content = read_file(f);
    if (f.size() > 4 && f.substr(f.size() - 4) == ".csv")
      content = strip_wall_time_column(content);
    manifest["outputs"].push_back(
        {{"file", fs::path(f).filename().string()},
         {"hash", "fnv1a64:" + std::to_string(fnv1a64(content))}});
  }

  const std::string manifest_path =
      (fs::path(out_dir) / (stem + "__manifest.json")).string();
  std::ofstream os(manifest_path);
  if (!os) throw IoError("manifest: cannot open " + manifest_path);
  os << manifest.dump(2) << "\n";
  result.manifest_file = manifest_path;
  result.files.push_back(manifest_path);
  return result;
}

}  // namespace lopa
