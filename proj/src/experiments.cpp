#include "matlift/experiments.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>

#include "matlift/bounds.hpp"
#include "matlift/error.hpp"
#include "matlift/lift.hpp"
#include "matlift/moments.hpp"
#include "matlift/parallel.hpp"
#include "matlift/spectral.hpp"
#include "matlift/stats.hpp"

namespace matlift {

namespace {

// Ceiling that forgives float noise within 1e-9 above an integer, so
// quantities like sqrt(ln n) squared back never round a rank up spuriously.
int snap_ceil(double x) {
  double f = std::floor(x);
  return (x - f <= 1e-9) ? static_cast<int>(f) : static_cast<int>(f) + 1;
}

double now_ms() {
  using namespace std::chrono;
  return duration<double, std::milli>(steady_clock::now().time_since_epoch()).count();
}

std::string fmt_c(double c) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", c);
  return buf;
}

struct TrialBatch {
  std::vector<double> values;
  std::vector<uint64_t> stream_ids;
  std::vector<double> times;
};

// Trial t draws everything from row_stream.substream(t); results land in
// per-trial slots, so the batch is identical for any thread count.
TrialBatch run_trials(long trials, int threads, const RngState& row_stream,
                      const std::function<double(RngState&)>& statistic) {
  TrialBatch b;
  b.values.assign(trials, 0.0);
  b.stream_ids.assign(trials, 0);
  b.times.assign(trials, 0.0);
  parallel_for(trials, threads, [&](long t) {
    RngState stream = row_stream.substream(static_cast<uint64_t>(t));
    b.stream_ids[t] = stream.stream_id();
    double t0 = now_ms();
    b.values[t] = statistic(stream);
    b.times[t] = now_ms() - t0;
  });
  return b;
}

ResultTable make_records_table(bool timings) {
  ResultTable t;
  t.columns = {"trial_index", "stream_id", "statistic", "value"};
  if (timings) t.columns.push_back("wall_time_ms");
  return t;
}

void append_records(ResultTable& records, const std::string& statistic, const TrialBatch& b,
                    bool timings) {
  for (size_t t = 0; t < b.values.size(); ++t) {
    std::vector<std::string> row{std::to_string(t), std::to_string(b.stream_ids[t]), statistic,
                                 format_real(b.values[t])};
    if (timings) row.push_back(format_real(b.times[t]));
    records.add_row(std::move(row));
  }
}

double lift_norm_auto(const LiftedBlockMatrix& m, double tol, RngState& rng) {
  if (m.dim() <= 1024) return spectral_norm_dense(m.to_dense());
  LinOp op = [&m](const double* x, double* y) { m.matvec(x, y); };
  NormEstimate est = spectral_norm_iterative(op, m.dim(), tol, default_max_iter(m.dim()), rng);
  require(est.converged, errc::not_converged,
          "norm iteration did not converge at dim " + std::to_string(m.dim()));
  return est.value;
}

long args_or_fail(const std::string& spec, const std::string& name, std::vector<long>& args,
                  size_t expect) {
  require(args.size() == expect, errc::config_error,
          "generator '" + spec + "': " + name + " takes " + std::to_string(expect) +
              " argument(s)");
  return args.empty() ? 0 : args[0];
}

const std::vector<std::string>& default_battery() {
  static const std::vector<std::string> battery{
      "path(2):rademacher",
      "complete(3):centered_permutation(2)",
      "path(3):rademacher",
  };
  return battery;
}

struct PropInstance {
  std::string id;
  BaseMatrix a;
  LiftDistribution dist;
};

std::vector<PropInstance> resolve_battery(const ExperimentConfig& cfg) {
  std::vector<PropInstance> out;
  std::vector<std::string> specs = cfg.instances;
  if (specs.empty()) {
    bool has_base =
        !cfg.generator.empty() || !cfg.matrix_path.empty() || !cfg.graph_path.empty();
    bool has_dist = !cfg.dist_spec.empty() || !cfg.discrete_path.empty();
    if (has_base && has_dist) {
      std::string base_label = !cfg.generator.empty()
                                   ? cfg.generator
                                   : (!cfg.matrix_path.empty() ? cfg.matrix_path : cfg.graph_path);
      std::string dist_label = !cfg.dist_spec.empty() ? cfg.dist_spec : cfg.discrete_path;
      out.push_back({base_label + ":" + dist_label, resolve_base_matrix(cfg), resolve_dist(cfg)});
      return out;
    }
    specs = default_battery();
  }
  for (const std::string& s : specs) {
    size_t colon = s.find(':');
    require(colon != std::string::npos, errc::config_error,
            "instance '" + s + "': expected generator:distribution");
    GraphSpec g = parse_generator(s.substr(0, colon));
    out.push_back({s, adjacency_from_graph(g), parse_dist_spec(s.substr(colon + 1))});
  }
  return out;
}

std::string ok_cell(bool ok) { return ok ? "1" : "0"; }

bool is_skippable(errc code) {
  return code == errc::sigma_star_too_large || code == errc::budget_exceeded ||
         code == errc::continuous_support;
}

}  // namespace

GraphSpec parse_generator(const std::string& spec) {
  size_t open = spec.find('(');
  std::string name = spec.substr(0, open);
  std::vector<long> args;
  if (open != std::string::npos) {
    require(spec.back() == ')', errc::config_error, "generator '" + spec + "': missing ')'");
    std::string inner = spec.substr(open + 1, spec.size() - open - 2);
    size_t start = 0;
    while (start <= inner.size() && !inner.empty()) {
      size_t comma = inner.find(',', start);
      std::string tok = inner.substr(start, comma == std::string::npos ? std::string::npos
                                                                       : comma - start);
      try {
        args.push_back(std::stol(tok));
      } catch (const std::logic_error&) {
        fail(errc::config_error, "generator '" + spec + "': bad integer argument '" + tok + "'");
      }
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
  }
  try {
    if (name == "petersen") {
      args_or_fail(spec, name, args, 0);
      return petersen_graph();
    }
    if (name == "complete")
      return complete_graph(static_cast<int>(args_or_fail(spec, name, args, 1)));
    if (name == "path") return path_graph(static_cast<int>(args_or_fail(spec, name, args, 1)));
    if (name == "clique_union") {
      require(args.size() == 2, errc::config_error,
              "generator '" + spec + "': clique_union takes 2 arguments");
      return clique_union_graph(static_cast<int>(args[0]), static_cast<int>(args[1]));
    }
  } catch (const Error& e) {
    if (e.code() == errc::invalid_argument)
      fail(errc::config_error, "generator '" + spec + "': " + e.what());
    throw;
  }
  fail(errc::config_error, "unknown generator '" + spec + "'");
}

LiftDistribution parse_dist_spec(const std::string& spec) {
  size_t open = spec.find('(');
  std::string name = spec.substr(0, open);
  long k = 0;
  bool has_k = false;
  if (open != std::string::npos) {
    require(spec.back() == ')', errc::config_error, "distribution '" + spec + "': missing ')'");
    std::string inner = spec.substr(open + 1, spec.size() - open - 2);
    try {
      k = std::stol(inner);
      has_k = true;
    } catch (const std::logic_error&) {
      fail(errc::config_error, "distribution '" + spec + "': bad k '" + inner + "'");
    }
  }
  auto need_k = [&]() {
    require(has_k && k >= 1, errc::config_error,
            "distribution '" + spec + "': needs a positive k argument");
    return static_cast<int>(k);
  };
  try {
    if (name == "rademacher") return LiftDistribution::make_rademacher();
    if (name == "y_entry") return LiftDistribution::make_y_entry();
    if (name == "centered_permutation")
      return LiftDistribution::make_centered_permutation(need_k());
    if (name == "haar_orthogonal") return LiftDistribution::make_haar_orthogonal(need_k());
    if (name == "haar_special_orthogonal")
      return LiftDistribution::make_haar_special_orthogonal(need_k());
  } catch (const Error& e) {
    if (e.code() == errc::invalid_argument || e.code() == errc::not_centered)
      fail(errc::config_error, "distribution '" + spec + "': " + e.what());
    throw;
  }
  fail(errc::config_error, "unknown distribution '" + spec + "'");
}

BaseMatrix resolve_base_matrix(const ExperimentConfig& cfg) {
  int provided = (!cfg.generator.empty() ? 1 : 0) + (!cfg.matrix_path.empty() ? 1 : 0) +
                 (!cfg.graph_path.empty() ? 1 : 0);
  require(provided == 1, errc::config_error,
          "specify exactly one of base.generator / base.matrix / base.graph");
  if (!cfg.generator.empty()) return adjacency_from_graph(parse_generator(cfg.generator));
  if (!cfg.matrix_path.empty()) return load_matrix(cfg.matrix_path);
  return adjacency_from_graph(load_graph(cfg.graph_path));
}

GraphSpec resolve_base_graph(const ExperimentConfig& cfg) {
  require(cfg.matrix_path.empty(), errc::config_error,
          "this experiment acts on graphs; use base.generator or base.graph");
  int provided = (!cfg.generator.empty() ? 1 : 0) + (!cfg.graph_path.empty() ? 1 : 0);
  require(provided == 1, errc::config_error,
          "specify exactly one of base.generator / base.graph");
  if (!cfg.generator.empty()) return parse_generator(cfg.generator);
  return load_graph(cfg.graph_path);
}

LiftDistribution resolve_dist(const ExperimentConfig& cfg) {
  require(cfg.dist_spec.empty() || cfg.discrete_path.empty(), errc::config_error,
          "specify either a named distribution or dist.file, not both");
  if (!cfg.dist_spec.empty()) return parse_dist_spec(cfg.dist_spec);
  require(!cfg.discrete_path.empty(), errc::config_error, "missing [dist] section");
  return load_discrete(cfg.discrete_path);
}

ExperimentConfig parse_experiment_config(const Config& cfg) {
  ExperimentConfig out;
  // kind may legitimately be absent for config uses that never run an
  // experiment (building a single lift); run_experiment rejects it then.
  out.kind = cfg.get_string("experiment.kind", "");
  if (!out.kind.empty()) {
    const bool known = out.kind == "mc_norm" || out.kind == "prop_compare" ||
                       out.kind == "clique_scaling" || out.kind == "klift_sweep" ||
                       out.kind == "oracle_suite";
    require(known, errc::config_error, "unknown experiment.kind '" + out.kind + "'");
  }

  out.generator = cfg.get_string("base.generator", "");
  out.matrix_path = cfg.get_string("base.matrix", "");
  out.graph_path = cfg.get_string("base.graph", "");

  out.dist_spec = cfg.get_string("dist.spec", "");
  if (out.dist_spec.empty() && cfg.has("dist.kind")) {
    out.dist_spec = cfg.get_required("dist.kind");
    if (cfg.has("dist.k"))
      out.dist_spec += "(" + std::to_string(cfg.get_long("dist.k", 0)) + ")";
  }
  out.discrete_path = cfg.get_string("dist.file", "");

  out.k_list = cfg.get_long_list("lift.k_list");
  for (long k : out.k_list)
    require(k >= 1, errc::config_error, "lift.k_list: every k must be positive");

  if (cfg.has("experiment.p_list")) {
    out.p_list.clear();
    for (long p : cfg.get_long_list("experiment.p_list")) {
      require(p >= 1, errc::config_error, "experiment.p_list: every p must be positive");
      out.p_list.push_back(static_cast<int>(p));
    }
    require(!out.p_list.empty(), errc::config_error, "experiment.p_list: empty list");
  }

  if (cfg.has("experiment.trials")) {
    out.trials = cfg.get_long("experiment.trials", 0);
    require(out.trials >= 1, errc::config_error, "experiment.trials must be positive");
  }
  out.master_seed = cfg.get_u64("experiment.seed", 1);
  out.threads = static_cast<int>(cfg.get_long("experiment.threads", 1));
  require(out.threads >= 1, errc::config_error, "experiment.threads must be positive");
  out.tol = cfg.get_double("experiment.tol", 1e-8);
  require(out.tol > 0.0, errc::config_error, "experiment.tol must be positive");
  out.mode = cfg.get_string("experiment.mode", "exact");
  require(out.mode == "exact" || out.mode == "mc", errc::config_error,
          "experiment.mode must be 'exact' or 'mc'");
  out.instances = cfg.get_list("experiment.instances");

  if (cfg.has("constants.C")) {
    out.c_list = cfg.get_double_list("constants.C");
    require(!out.c_list.empty(), errc::config_error, "constants.C: empty list");
    for (double c : out.c_list)
      require(c > 0.0, errc::config_error, "constants.C: every C must be positive");
  }
  out.eps = cfg.get_double("constants.eps", 0.25);
  require(out.eps > 0.0 && out.eps <= 0.5, errc::config_error,
          "constants.eps must lie in (0, 1/2]");
  out.gate_c = cfg.get_double("constants.gate_c", 10.0);
  require(out.gate_c > 0.0, errc::config_error, "constants.gate_c must be positive");

  if (cfg.has("scaling.n_grid")) {
    out.n_grid = cfg.get_long_list("scaling.n_grid");
    require(!out.n_grid.empty(), errc::config_error, "scaling.n_grid: empty list");
    for (long n : out.n_grid)
      require(n >= 2, errc::config_error, "scaling.n_grid: every n must be at least 2");
  }

  out.out_path = cfg.get_string("output.path", "");
  out.timings = cfg.get_bool("output.timings", false);
  std::string format = cfg.get_string("output.format", "csv");
  require(format == "csv", errc::config_error, "output.format: only 'csv' is supported");
  return out;
}

ExperimentResult run_mc_norm(const ExperimentConfig& cfg) {
  BaseMatrix a = resolve_base_matrix(cfg);
  LiftDistribution dist = resolve_dist(cfg);
  const long trials = cfg.trials > 0 ? cfg.trials : 10000;
  const long n = a.n();
  const long k = dist.k();
  SpreadParams sp = compute_spread(a);

  RngState row(cfg.master_seed, 0);
  TrialBatch batch = run_trials(trials, cfg.threads, row, [&](RngState& stream) {
    LiftedBlockMatrix lift = build_lift(a, dist, stream);
    return lift_norm_auto(lift, cfg.tol, stream);
  });
  MeanStderr ms = mean_stderr(batch.values);

  ExperimentResult result;
  result.records = make_records_table(cfg.timings);
  append_records(result.records, "spectral_norm", batch, cfg.timings);

  std::string base_label = !cfg.generator.empty()
                               ? cfg.generator
                               : (!cfg.matrix_path.empty() ? cfg.matrix_path : cfg.graph_path);
  ResultTable& s = result.summary;
  s.columns = {"statistic", "base",  "dist",  "n",   "k",          "trials",
               "mean",      "stderr", "sigma", "sigma_star", "eps"};
  std::vector<std::string> rowvals{"spectral_norm",
                                   base_label,
                                   dist.name(),
                                   std::to_string(n),
                                   std::to_string(k),
                                   std::to_string(trials),
                                   format_real(ms.mean),
                                   format_real(ms.stderr_),
                                   format_real(sp.sigma),
                                   format_real(sp.sigma_star),
                                   format_real(cfg.eps)};
  for (double c : cfg.c_list) {
    s.columns.push_back("bound_C" + fmt_c(c));
    rowvals.push_back(format_real(lift_bound(sp.sigma, sp.sigma_star, k, n, cfg.eps, c)));
    OptimizedBound opt = lift_bound_optimized(sp.sigma, sp.sigma_star, k, n, c);
    s.columns.push_back("bound_opt_C" + fmt_c(c));
    rowvals.push_back(format_real(opt.value));
    s.columns.push_back("opt_eps_C" + fmt_c(c));
    rowvals.push_back(format_real(opt.eps_star));
  }
  s.columns.push_back("empirical_C");
  if (sp.sigma_star > 0.0) {
    EmpiricalConstant ec = empirical_constant(ms.mean, sp.sigma, sp.sigma_star, k, n, cfg.eps);
    rowvals.push_back(format_real(ec.c));
  } else {
    rowvals.push_back("");
  }
  OptimizedBound gate = lift_bound_optimized(sp.sigma, sp.sigma_star, k, n, cfg.gate_c);
  bool gate_ok = ms.mean <= gate.value + 1e-12;
  s.columns.push_back("gate_C");
  rowvals.push_back(fmt_c(cfg.gate_c));
  s.columns.push_back("gate_bound");
  rowvals.push_back(format_real(gate.value));
  s.columns.push_back("gate_ok");
  rowvals.push_back(ok_cell(gate_ok));
  s.add_row(std::move(rowvals));
  result.all_ok = gate_ok;
  return result;
}

ExperimentResult run_prop_compare(const ExperimentConfig& cfg) {
  std::vector<PropInstance> battery = resolve_battery(cfg);
  const bool exact = cfg.mode == "exact";
  const long trials = cfg.trials > 0 ? cfg.trials : 10000;

  ExperimentResult result;
  result.records = make_records_table(cfg.timings);
  result.summary.columns = {"instance_id", "p",          "lhs",        "rhs",
                            "mode",        "stderr_lhs", "stderr_rhs", "ok"};
  uint64_t row_salt = 0;
  for (const PropInstance& inst : battery) {
    for (int p : cfg.p_list) {
      ++row_salt;
      try {
        MomentCheck chk;
        if (exact) {
          chk = check_prop_compare(inst.a, inst.dist, p, true);
        } else {
          RngState rng(cfg.master_seed, row_salt);
          chk = check_prop_compare(inst.a, inst.dist, p, false, trials, &rng);
        }
        result.summary.add_row({inst.id, std::to_string(p), format_real(chk.lhs),
                                format_real(chk.rhs), exact ? "exact" : "mc",
                                format_real(chk.stderr_lhs), format_real(chk.stderr_rhs),
                                ok_cell(chk.ok)});
        result.all_ok = result.all_ok && chk.ok;
      } catch (const Error& e) {
        if (!is_skippable(e.code())) throw;
        result.summary.add_row({inst.id, std::to_string(p), "", "",
                                std::string("skipped:") + errc_name(e.code()), "", "", ""});
      }
    }
  }
  return result;
}

ExperimentResult run_clique_scaling(const ExperimentConfig& cfg) {
  const long trials = cfg.trials > 0 ? cfg.trials : 200;
  ExperimentResult result;
  result.records = make_records_table(cfg.timings);
  result.summary.columns = {"n_requested",
                            "n",
                            "s",
                            "delta",
                            "trials",
                            "mean_norm",
                            "stderr",
                            "mean_norm_over_sqrt_ln_n",
                            "mean_norm_over_ln_n_quarter"};
  for (size_t gi = 0; gi < cfg.n_grid.size(); ++gi) {
    const long n_req = cfg.n_grid[gi];
    const int s = std::max(1, snap_ceil(std::sqrt(std::log(static_cast<double>(n_req)))));
    GraphSpec g = clique_union_graph(static_cast<int>(n_req), s);
    RngState row(cfg.master_seed, gi);
    TrialBatch batch = run_trials(trials, cfg.threads, row, [&](RngState& stream) {
      GraphLift gl = build_graph_lift(g, 2, stream);
      LiftedBlockMatrix centered = center_graph_lift(gl);
      return lift_norm_auto(centered, cfg.tol, stream);
    });
    MeanStderr ms = mean_stderr(batch.values);
    const double ln_n = std::log(static_cast<double>(g.n()));
    append_records(result.records, "centered_norm(n=" + std::to_string(g.n()) + ")", batch,
                   cfg.timings);
    result.summary.add_row({std::to_string(n_req), std::to_string(g.n()), std::to_string(s),
                            std::to_string(s - 1), std::to_string(trials), format_real(ms.mean),
                            format_real(ms.stderr_), format_real(ms.mean / std::sqrt(ln_n)),
                            format_real(ms.mean / std::pow(ln_n, 0.25))});
  }
  return result;
}

ExperimentResult run_klift_sweep(const ExperimentConfig& cfg) {
  GraphSpec g = (cfg.generator.empty() && cfg.graph_path.empty())
                    ? petersen_graph()
                    : resolve_base_graph(cfg);
  BaseMatrix a = adjacency_from_graph(g);
  const long delta = max_degree(g);
  const long n = g.n();
  const long trials = cfg.trials > 0 ? cfg.trials : 500;
  std::vector<long> k_list = cfg.k_list.empty() ? std::vector<long>{2, 3, 5} : cfg.k_list;
  const double sqrt_delta = std::sqrt(static_cast<double>(delta));

  ExperimentResult result;
  result.records = make_records_table(cfg.timings);
  ResultTable& s = result.summary;
  s.columns = {"k",       "n",           "delta",        "trials",     "mean",
               "stderr",  "two_sqrt_delta", "friedman_ref", "empirical_C"};
  for (double c : cfg.c_list) s.columns.push_back("bound_C" + fmt_c(c));
  s.columns.push_back("gate_bound");
  s.columns.push_back("gate_ok");
  s.columns.push_back("audit_ok");

  for (size_t ki = 0; ki < k_list.size(); ++ki) {
    const long k = k_list[ki];
    RngState row(cfg.master_seed, ki);
    TrialBatch batch = run_trials(trials, cfg.threads, row, [&](RngState& stream) {
      GraphLift gl = build_graph_lift(g, static_cast<int>(k), stream);
      return new_eigenvalue_norm(a, gl);
    });
    MeanStderr ms = mean_stderr(batch.values);
    append_records(result.records, "new_eig_norm(k=" + std::to_string(k) + ")", batch,
                   cfg.timings);

    // Audit trial 0: base spectrum containment plus the equality between
    // spectrum-removal and the centered-operator norm.
    bool audit_ok = true;
    if (k >= 2 && n * k <= 4096) {
      try {
        RngState audit_stream = row.substream(0);
        GraphLift gl0 = build_graph_lift(g, static_cast<int>(k), audit_stream);
        std::vector<double> lifted = full_spectrum_dense(lift_adjacency(gl0).to_dense());
        std::vector<double> base = full_spectrum_dense(a.entries());
        double removal_max = 0.0;
        for (double eta : remove_base_spectrum(lifted, base, 1e-6))
          removal_max = std::max(removal_max, std::abs(eta));
        double centered = spectral_norm_dense(center_graph_lift(gl0).to_dense());
        audit_ok = std::abs(removal_max - centered) <= 1e-8 * std::max(1.0, centered);
      } catch (const Error&) {
        audit_ok = false;
      }
    }

    EmpiricalConstant ec =
        empirical_constant(ms.mean, sqrt_delta, 1.0, k, n, cfg.eps);
    OptimizedBound gate = lift_bound_optimized(sqrt_delta, 1.0, k, n, cfg.gate_c);
    bool gate_ok = ms.mean <= gate.value + 1e-12;

    std::vector<std::string> rowvals{
        std::to_string(k),
        std::to_string(n),
        std::to_string(delta),
        std::to_string(trials),
        format_real(ms.mean),
        format_real(ms.stderr_),
        format_real(2.0 * sqrt_delta),
        format_real(delta >= 1 ? 2.0 * std::sqrt(static_cast<double>(delta - 1)) : 0.0),
        format_real(ec.c)};
    for (double c : cfg.c_list) rowvals.push_back(format_real(klift_bound(delta, k, n, cfg.eps, c)));
    rowvals.push_back(format_real(gate.value));
    rowvals.push_back(ok_cell(gate_ok));
    rowvals.push_back(ok_cell(audit_ok));
    s.add_row(std::move(rowvals));
    result.all_ok = result.all_ok && gate_ok && audit_ok;
  }
  return result;
}

ExperimentResult run_oracle_suite(const ExperimentConfig& cfg) {
  const long trials = cfg.trials > 0 ? cfg.trials : 100000;
  ExperimentResult result;
  result.records = make_records_table(cfg.timings);
  result.summary.columns = {"instance_id", "p",          "lhs",        "rhs",
                            "mode",        "stderr_lhs", "stderr_rhs", "ok"};
  ResultTable& s = result.summary;
  auto note = [&result](bool ok) { result.all_ok = result.all_ok && ok; };

  std::vector<PropInstance> battery = resolve_battery(cfg);
  uint64_t salt = 0;

  // Exact trace-moment comparison rows.
  for (const PropInstance& inst : battery) {
    for (int p : cfg.p_list) {
      try {
        MomentCheck chk = check_prop_compare(inst.a, inst.dist, p, true);
        s.add_row({"prop:" + inst.id, std::to_string(p), format_real(chk.lhs),
                   format_real(chk.rhs), "exact", "", "", ok_cell(chk.ok)});
        note(chk.ok);
      } catch (const Error& e) {
        if (!is_skippable(e.code())) throw;
        s.add_row({"prop:" + inst.id, std::to_string(p), "", "",
                   std::string("skipped:") + errc_name(e.code()), "", "", ""});
      }
    }
  }

  // Monte Carlo estimates against the exact oracle.
  for (const PropInstance& inst : battery) {
    for (int p : cfg.p_list) {
      ++salt;
      try {
        double exact = exact_trace_moment(inst.a, inst.dist, p);
        RngState rng(cfg.master_seed, salt);
        MomentEstimate est = mc_trace_moment(inst.a, inst.dist, p, trials, rng);
        bool ok = std::abs(est.mean - exact) <=
                  5.0 * est.stderr_ + 1e-9 * std::max(1.0, std::abs(exact));
        s.add_row({"mc_trace:" + inst.id, std::to_string(p), format_real(est.mean),
                   format_real(exact), "mc_vs_exact", format_real(est.stderr_), "",
                   ok_cell(ok)});
        note(ok);
      } catch (const Error& e) {
        if (!is_skippable(e.code())) throw;
        s.add_row({"mc_trace:" + inst.id, std::to_string(p), "", "",
                   std::string("skipped:") + errc_name(e.code()), "", "", ""});
      }
    }
  }

  // Y-moment lower bound rows (exact).
  for (int sigma2 = 1; sigma2 <= 3; ++sigma2) {
    for (int p : cfg.p_list) {
      if (p > 3) continue;
      BoundCheck chk = check_y_lower_bound(std::sqrt(static_cast<double>(sigma2)), p);
      s.add_row({"y_lower:sigma2=" + std::to_string(sigma2), std::to_string(p),
                 format_real(chk.lhs), format_real(chk.rhs), "exact", "", "",
                 ok_cell(chk.ok)});
      note(chk.ok);
    }
  }

  // Shape-restricted path sum bound rows (exact).
  struct PathWeightCase {
    std::string base;
    CycleShape shape;
    std::string shape_label;
  };
  const PathWeightCase cases[] = {
      {"complete(4)", {1, 2}, "1-2"},
      {"complete(3)", {1, 2, 1, 3}, "1-2-1-3"},
      {"path(3)", {1, 2, 3, 2}, "1-2-3-2"},
  };
  for (const PathWeightCase& pw : cases) {
    BaseMatrix a = adjacency_from_graph(parse_generator(pw.base));
    BoundCheck chk = check_path_weight_bound(a, pw.shape, 0);
    s.add_row({"path_weight:" + pw.base + ":s=" + pw.shape_label + ":u=0",
               std::to_string(static_cast<int>(pw.shape.size() / 2)), format_real(chk.lhs),
               format_real(chk.rhs), "exact", "", "", ok_cell(chk.ok)});
    note(chk.ok);
  }

  // Y trace moment, MC against exact.
  {
    ++salt;
    RngState rng(cfg.master_seed, salt);
    double exact = y_trace_moment_exact(3, 2);
    MomentEstimate est = y_trace_moment_mc(3, 2, trials, rng);
    bool ok = std::abs(est.mean - exact) <=
              5.0 * est.stderr_ + 1e-9 * std::max(1.0, std::abs(exact));
    s.add_row({"mc_y:r=3", "2", format_real(est.mean), format_real(exact), "mc_vs_exact",
               format_real(est.stderr_), "", ok_cell(ok)});
    note(ok);
  }
  return result;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  require(!cfg.kind.empty(), errc::config_error, "missing experiment.kind");
  if (cfg.kind == "mc_norm") return run_mc_norm(cfg);
  if (cfg.kind == "prop_compare") return run_prop_compare(cfg);
  if (cfg.kind == "clique_scaling") return run_clique_scaling(cfg);
  if (cfg.kind == "klift_sweep") return run_klift_sweep(cfg);
  if (cfg.kind == "oracle_suite") return run_oracle_suite(cfg);
  fail(errc::config_error, "unknown experiment.kind '" + cfg.kind + "'");
}

ResultTable bounds_table(const Config& cfg) {
  bool have_base = cfg.has("bounds.base");
  double sigma = 0.0, sigma_star = 0.0;
  long n = 0;
  long delta = -1;
  const BaseMatrix* base_ptr = nullptr;
  BaseMatrix base = [&]() {
    // Placeholder when inputs are explicit; never read then.
    if (!have_base) return validate_base(Eigen::MatrixXd::Zero(2, 2));
    GraphSpec g = parse_generator(cfg.get_required("bounds.base"));
    delta = max_degree(g);
    return adjacency_from_graph(g);
  }();
  if (have_base) {
    SpreadParams sp = compute_spread(base);
    sigma = sp.sigma;
    sigma_star = sp.sigma_star;
    n = base.n();
    base_ptr = &base;
  } else {
    require(cfg.has("bounds.sigma") && cfg.has("bounds.sigma_star") && cfg.has("bounds.n"),
            errc::config_error,
            "bounds: give bounds.base or all of bounds.sigma / bounds.sigma_star / bounds.n");
  }
  sigma = cfg.get_double("bounds.sigma", sigma);
  sigma_star = cfg.get_double("bounds.sigma_star", sigma_star);
  n = cfg.get_long("bounds.n", n);
  delta = cfg.get_long("bounds.delta", delta);
  const long k = cfg.get_long("bounds.k", 2);
  const double eps = cfg.get_double("bounds.eps", 0.25);
  std::vector<double> c_list =
      cfg.has("bounds.C") ? cfg.get_double_list("bounds.C") : std::vector<double>{1.0, 10.0};
  require(!c_list.empty(), errc::config_error, "bounds.C: empty list");

  std::vector<BoundReport> reports;
  reports.push_back({"nck", nck_bound(sigma, n), {{"sigma", sigma}, {"n", double(n)}}});
  for (double c : c_list) {
    if (base_ptr)
      reports.push_back({"bvh",
                         bvh_bound(*base_ptr, c),
                         {{"sigma", sigma},
                          {"sigma_star", sigma_star},
                          {"n", double(n)},
                          {"C", c}}});
    reports.push_back({"lift",
                       lift_bound(sigma, sigma_star, k, n, eps, c),
                       {{"sigma", sigma},
                        {"sigma_star", sigma_star},
                        {"n", double(n)},
                        {"C", c},
                        {"k", double(k)},
                        {"eps", eps}}});
    OptimizedBound opt = lift_bound_optimized(sigma, sigma_star, k, n, c);
    reports.push_back({"lift_opt",
                       opt.value,
                       {{"sigma", sigma},
                        {"sigma_star", sigma_star},
                        {"n", double(n)},
                        {"C", c},
                        {"k", double(k)},
                        {"eps", opt.eps_star}}});
    if (delta >= 0)
      reports.push_back({"klift",
                         klift_bound(delta, k, n, eps, c),
                         {{"n", double(n)},
                          {"C", c},
                          {"k", double(k)},
                          {"eps", eps},
                          {"delta", double(delta)}}});
  }

  ResultTable t;
  t.columns = {"bound", "value"};
  for (const BoundReport& r : reports)
    for (const auto& [name, unused] : r.inputs) {
      (void)unused;
      bool seen = false;
      for (const std::string& col : t.columns) seen = seen || col == name;
      if (!seen) t.columns.push_back(name);
    }
  for (const BoundReport& r : reports) {
    std::vector<std::string> row(t.columns.size());
    row[0] = r.name;
    row[1] = format_real(r.value);
    for (const auto& [name, val] : r.inputs)
      for (size_t ci = 2; ci < t.columns.size(); ++ci)
        if (t.columns[ci] == name) row[ci] = format_real(val);
    t.add_row(std::move(row));
  }
  return t;
}

}  // namespace matlift
