#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "matlift/base_matrix.hpp"
#include "matlift/config.hpp"
#include "matlift/distributions.hpp"
#include "matlift/graph.hpp"
#include "matlift/io.hpp"

namespace matlift {

// One measured statistic. Trial t of battery row r draws every random bit
// from RngState(master_seed, r).substream(t), so any trial can be replayed
// in isolation and results do not depend on thread count.
struct RunRecord {
  long trial_index = 0;
  uint64_t stream_id = 0;
  std::string statistic;
  double value = 0.0;
  double wall_time_ms = 0.0;
};

// Parsed form of the [experiment]/[base]/[dist]/[lift]/[constants]/
// [scaling]/[output] sections. String fields keep the raw spec text; the
// resolve_* helpers turn them into objects.
struct ExperimentConfig {
  std::string kind;  // mc_norm | prop_compare | clique_scaling | klift_sweep | oracle_suite

  std::string generator;    // base.generator, e.g. "complete(3)", "petersen"
  std::string matrix_path;  // base.matrix
  std::string graph_path;   // base.graph

  std::string dist_spec;      // dist.spec or dist.kind(+dist.k)
  std::string discrete_path;  // dist.file

  std::vector<long> k_list;       // lift.k_list
  std::vector<int> p_list{1, 2};  // experiment.p_list
  long trials = 0;                // experiment.trials; 0 = per-experiment default
  uint64_t master_seed = 1;       // experiment.seed
  int threads = 1;                // experiment.threads
  double tol = 1e-8;              // experiment.tol (iterative norm tolerance)
  std::string mode = "exact";     // experiment.mode: exact | mc (moment comparisons)
  std::vector<std::string> instances;  // experiment.instances (battery override)

  std::vector<double> c_list{1.0, 10.0};  // constants.C
  double eps = 0.25;                      // constants.eps
  double gate_c = 10.0;                   // constants.gate_c (upper-bound sanity gates)

  std::vector<long> n_grid{64, 256, 1024, 4096};  // scaling.n_grid

  std::string out_path;   // output.path
  bool timings = false;   // output.timings: add wall_time_ms to record CSV
                          // (off by default so reruns are byte-identical)
};

ExperimentConfig parse_experiment_config(const Config& cfg);

// "complete(4)", "path(3)", "clique_union(9,3)", "petersen".
GraphSpec parse_generator(const std::string& spec);

// "rademacher", "y_entry", "centered_permutation(k)", "haar_orthogonal(k)",
// "haar_special_orthogonal(k)".
LiftDistribution parse_dist_spec(const std::string& spec);

BaseMatrix resolve_base_matrix(const ExperimentConfig& cfg);
GraphSpec resolve_base_graph(const ExperimentConfig& cfg);
LiftDistribution resolve_dist(const ExperimentConfig& cfg);

struct ExperimentResult {
  ResultTable records;  // one row per trial; may be empty for table experiments
  ResultTable summary;  // one row per battery instance
  bool all_ok = true;   // every configured gate and audit passed
};

ExperimentResult run_mc_norm(const ExperimentConfig& cfg);
ExperimentResult run_prop_compare(const ExperimentConfig& cfg);
ExperimentResult run_clique_scaling(const ExperimentConfig& cfg);
ExperimentResult run_klift_sweep(const ExperimentConfig& cfg);
ExperimentResult run_oracle_suite(const ExperimentConfig& cfg);

ExperimentResult run_experiment(const ExperimentConfig& cfg);

// Bound table from a [bounds] section. Inputs come either from explicit
// keys (sigma, sigma_star, n) or from a generator in bounds.base; explicit
// keys win. Rows: nck, then per C bvh (base form only), lift at bounds.eps,
// lift_opt (optimized over eps, the minimizer lands in the eps column), and
// klift when a degree is known (bounds.delta or the base graph's max
// degree). Cells a bound does not consume stay empty.
ResultTable bounds_table(const Config& cfg);

}  // namespace matlift
