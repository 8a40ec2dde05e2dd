// Command-line front end. Talks to the library exclusively through the C
// API, so it doubles as a living check that the shared-library surface is
// complete enough to drive every experiment.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "matlift.h"

namespace {

// Exit codes: 0 ok, 1 argument/config error, 2 gate or oracle failure,
// 3 file error.
constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitGate = 2;
constexpr int kExitIo = 3;

int exit_code_for(matlift_status st) {
  return st == MATLIFT_IO_ERROR ? kExitIo : kExitConfig;
}

[[noreturn]] void die(matlift_status st) {
  std::cerr << "error: " << matlift_last_error() << " [" << matlift_status_name(st) << "]\n";
  std::exit(exit_code_for(st));
}

void check(matlift_status st) {
  if (st != MATLIFT_OK) die(st);
}

using Overrides = std::vector<std::pair<std::string, std::string>>;

struct CommonArgs {
  std::string config_path;
  Overrides overrides;
};

// Every option lands in the config as section.key, after the file, so the
// command line wins.
void bind_option(CLI::App* sub, CommonArgs& args, const std::string& flag,
                 const std::string& key, const std::string& desc) {
  sub->add_option_function<std::string>(
      flag, [&args, key](const std::string& v) { args.overrides.emplace_back(key, v); }, desc);
}

void bind_common(CLI::App* sub, CommonArgs& args) {
  sub->add_option("--config", args.config_path, "configuration file");
  bind_option(sub, args, "--seed", "experiment.seed", "master seed");
  bind_option(sub, args, "--threads", "experiment.threads", "worker threads");
  bind_option(sub, args, "--trials", "experiment.trials", "trials per battery row");
  bind_option(sub, args, "--tol", "experiment.tol", "iterative norm tolerance");
  bind_option(sub, args, "--out", "output.path", "summary CSV path");
  bind_option(sub, args, "--format", "output.format", "output format (csv)");
  sub->add_flag_callback(
      "--timings", [&args] { args.overrides.emplace_back("output.timings", "true"); },
      "record wall time per trial");
}

void bind_base_dist(CLI::App* sub, CommonArgs& args) {
  bind_option(sub, args, "--base", "base.generator", "generator, e.g. complete(4)");
  bind_option(sub, args, "--matrix", "base.matrix", "matrix dump path");
  bind_option(sub, args, "--graph", "base.graph", "graph dump path");
  bind_option(sub, args, "--dist", "dist.spec", "lifting law, e.g. centered_permutation(3)");
  bind_option(sub, args, "--dist-file", "dist.file", "discrete law dump path");
}

void bind_constants(CLI::App* sub, CommonArgs& args) {
  bind_option(sub, args, "--eps", "constants.eps", "epsilon for the lift bound");
  bind_option(sub, args, "--C", "constants.C", "comma list of constants C");
  bind_option(sub, args, "--gate-c", "constants.gate_c", "C used by the pass/fail gate");
}

struct ConfigHandle {
  matlift_config* ptr = nullptr;
  ~ConfigHandle() { matlift_config_free(ptr); }
};

struct ResultHandle {
  matlift_result* ptr = nullptr;
  ~ResultHandle() { matlift_result_free(ptr); }
};

ConfigHandle build_config(const CommonArgs& args) {
  ConfigHandle cfg;
  if (!args.config_path.empty())
    check(matlift_config_load(args.config_path.c_str(), &cfg.ptr));
  else
    check(matlift_config_parse("", &cfg.ptr));
  for (const auto& [key, value] : args.overrides)
    check(matlift_config_set(cfg.ptr, key.c_str(), value.c_str()));
  return cfg;
}

void write_file_or_die(const std::string& path, const char* text) {
  std::ofstream out(path, std::ios::binary);
  if (!out.good() || !(out << text) || !out.flush().good()) {
    std::cerr << "error: cannot write '" << path << "'\n";
    std::exit(kExitIo);
  }
}

int emit_result(const ConfigHandle& cfg, const ResultHandle& res) {
  std::string out_path = matlift_config_get(cfg.ptr, "output.path", "");
  const char* summary = matlift_result_summary_csv(res.ptr);
  const char* records = matlift_result_records_csv(res.ptr);
  if (out_path.empty()) {
    std::cout << summary;
  } else {
    write_file_or_die(out_path, summary);
    if (records[0] != '\0') write_file_or_die(out_path + ".records.csv", records);
  }
  if (!matlift_result_all_ok(res.ptr)) {
    std::cerr << "gate failed: see summary table\n";
    return kExitGate;
  }
  return kExitOk;
}

int run_experiment_kind(const CommonArgs& args, const std::string& kind) {
  ConfigHandle cfg = build_config(args);
  check(matlift_config_set(cfg.ptr, "experiment.kind", kind.c_str()));
  ResultHandle res;
  check(matlift_experiment_run(cfg.ptr, &res.ptr));
  return emit_result(cfg, res);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"random lifts of symmetric matrices: sampling, norms, bounds"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(matlift_version()));

  struct Sub {
    CLI::App* app;
    CommonArgs args;
    std::string kind;
  };
  std::vector<std::unique_ptr<Sub>> subs;
  auto add_experiment = [&](const std::string& name, const std::string& kind,
                            const std::string& desc) -> Sub& {
    auto sub = std::make_unique<Sub>();
    sub->app = app.add_subcommand(name, desc);
    sub->kind = kind;
    bind_common(sub->app, sub->args);
    subs.push_back(std::move(sub));
    return *subs.back();
  };

  Sub& mc_norm = add_experiment("mc-norm", "mc_norm", "mean lifted norm against the bound");
  bind_base_dist(mc_norm.app, mc_norm.args);
  bind_constants(mc_norm.app, mc_norm.args);

  Sub& prop = add_experiment("prop-compare", "prop_compare",
                             "trace moments against the comparison model");
  bind_base_dist(prop.app, prop.args);
  bind_option(prop.app, prop.args, "--mode", "experiment.mode", "exact or mc");
  bind_option(prop.app, prop.args, "--p-list", "experiment.p_list", "comma list of p");
  bind_option(prop.app, prop.args, "--instances", "experiment.instances",
              "comma list of generator:dist pairs");

  Sub& clique = add_experiment("clique-scaling", "clique_scaling",
                               "centered 2-lift norm over clique unions");
  bind_option(clique.app, clique.args, "--n-grid", "scaling.n_grid", "comma list of n");

  Sub& klift = add_experiment("klift-sweep", "klift_sweep", "new eigenvalues of graph k-lifts");
  bind_base_dist(klift.app, klift.args);
  bind_constants(klift.app, klift.args);
  bind_option(klift.app, klift.args, "--k-list", "lift.k_list", "comma list of k");

  Sub& oracle = add_experiment("oracle-suite", "oracle_suite", "exact and MC oracle battery");
  bind_option(oracle.app, oracle.args, "--p-list", "experiment.p_list", "comma list of p");
  bind_option(oracle.app, oracle.args, "--instances", "experiment.instances",
              "comma list of generator:dist pairs");

  // lift: draw one lift and dump it.
  CommonArgs lift_args;
  CLI::App* lift_app = app.add_subcommand("lift", "sample one lift and write its dump");
  bind_common(lift_app, lift_args);
  bind_base_dist(lift_app, lift_args);

  // norm: spectral norm of a dump file.
  CLI::App* norm_app = app.add_subcommand("norm", "spectral norm of a matrix/graph/lift dump");
  std::string norm_input;
  double norm_tol = 0.0;
  norm_app->add_option("input", norm_input, "dump file")->required();
  norm_app->add_option("--tol", norm_tol, "iterative tolerance (0 = default)");

  // bounds: the bound table.
  CommonArgs bounds_args;
  CLI::App* bounds_app = app.add_subcommand("bounds", "evaluate the bound family");
  bounds_app->add_option("--config", bounds_args.config_path, "configuration file");
  bind_option(bounds_app, bounds_args, "--sigma", "bounds.sigma", "row norm parameter");
  bind_option(bounds_app, bounds_args, "--sigma-star", "bounds.sigma_star", "entry bound");
  bind_option(bounds_app, bounds_args, "--n", "bounds.n", "base dimension");
  bind_option(bounds_app, bounds_args, "--k", "bounds.k", "lift order");
  bind_option(bounds_app, bounds_args, "--eps", "bounds.eps", "epsilon");
  bind_option(bounds_app, bounds_args, "--C", "bounds.C", "comma list of constants");
  bind_option(bounds_app, bounds_args, "--delta", "bounds.delta", "max degree (klift row)");
  bind_option(bounds_app, bounds_args, "--base", "bounds.base", "generator to derive inputs");
  bind_option(bounds_app, bounds_args, "--out", "bounds.out", "table CSV path");

  // CLI11's own exit codes leak values > 3; fold usage errors into the
  // documented config code, keep --help/--version at 0.
  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  for (const auto& sub : subs)
    if (sub->app->parsed()) return run_experiment_kind(sub->args, sub->kind);

  if (lift_app->parsed()) {
    ConfigHandle cfg = build_config(lift_args);
    std::string out_path = matlift_config_get(cfg.ptr, "output.path", "");
    if (out_path.empty()) {
      std::cerr << "error: lift needs --out\n";
      return kExitConfig;
    }
    check(matlift_lift_from_config(cfg.ptr, out_path.c_str()));
    return kExitOk;
  }

  if (norm_app->parsed()) {
    double value = 0.0;
    check(matlift_norm_file(norm_input.c_str(), norm_tol, &value));
    std::printf("%.17g\n", value);
    return kExitOk;
  }

  if (bounds_app->parsed()) {
    ConfigHandle cfg = build_config(bounds_args);
    ResultHandle res;
    check(matlift_bounds_table(cfg.ptr, &res.ptr));
    std::string out_path = matlift_config_get(cfg.ptr, "bounds.out", "");
    if (out_path.empty())
      std::cout << matlift_result_summary_csv(res.ptr);
    else
      write_file_or_die(out_path, matlift_result_summary_csv(res.ptr));
    return kExitOk;
  }

  return kExitConfig;
}
