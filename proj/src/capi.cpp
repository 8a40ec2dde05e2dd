#include "matlift.h"

#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

#include "matlift/bounds.hpp"
#include "matlift/error.hpp"
#include "matlift/experiments.hpp"
#include "matlift/io.hpp"
#include "matlift/lift.hpp"
#include "matlift/spectral.hpp"

struct matlift_matrix {
  matlift::BaseMatrix m;
};
struct matlift_dist {
  matlift::LiftDistribution d;
};
struct matlift_lift {
  matlift::LiftedBlockMatrix m;
};
struct matlift_config {
  matlift::Config c;
};
struct matlift_result {
  std::string summary_csv;
  std::string records_csv;
  int all_ok = 1;
};

namespace {

thread_local std::string g_last_error;

// The status enum mirrors errc value for value; both append only.
matlift_status status_of(matlift::errc code) {
  return static_cast<matlift_status>(static_cast<int>(code));
}

template <typename Fn>
matlift_status guarded(Fn&& fn) noexcept {
  try {
    fn();
    g_last_error.clear();
    return MATLIFT_OK;
  } catch (const matlift::Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return MATLIFT_INTERNAL;
  } catch (...) {
    g_last_error = "unknown failure";
    return MATLIFT_INTERNAL;
  }
}

void need(bool cond, const char* what) {
  matlift::require(cond, matlift::errc::invalid_argument, what);
}

std::string file_header_token(const std::string& path) {
  std::ifstream in(path);
  matlift::require(in.good(), matlift::errc::io_error, "cannot open '" + path + "'");
  std::string line;
  while (std::getline(in, line)) {
    size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string tok;
    if (ls >> tok) return tok;
  }
  matlift::fail(matlift::errc::io_error, "'" + path + "' has no content");
}

matlift_result* result_from(const matlift::ExperimentResult& r) {
  auto* out = new matlift_result;
  out->summary_csv = matlift::csv_to_string(r.summary);
  out->records_csv = r.records.rows.empty() ? "" : matlift::csv_to_string(r.records);
  out->all_ok = r.all_ok ? 1 : 0;
  return out;
}

}  // namespace

extern "C" {

const char* matlift_version(void) { return "0.1.0"; }

const char* matlift_status_name(matlift_status s) {
  return matlift::errc_name(static_cast<matlift::errc>(static_cast<int>(s)));
}

const char* matlift_last_error(void) { return g_last_error.c_str(); }

matlift_status matlift_matrix_create(int n, const double* rowmajor, matlift_matrix** out) {
  return guarded([&] {
    need(rowmajor && out, "null pointer");
    *out = nullptr;
    need(n >= 1, "n must be positive");
    Eigen::MatrixXd m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = rowmajor[static_cast<size_t>(i) * n + j];
    *out = new matlift_matrix{matlift::validate_base(m)};
  });
}

matlift_status matlift_matrix_load(const char* path, matlift_matrix** out) {
  return guarded([&] {
    need(path && out, "null pointer");
    *out = nullptr;
    *out = new matlift_matrix{matlift::load_matrix(path)};
  });
}

void matlift_matrix_free(matlift_matrix* m) { delete m; }

int matlift_matrix_n(const matlift_matrix* m) { return m ? m->m.n() : -1; }

matlift_status matlift_matrix_spread(const matlift_matrix* m, double* sigma,
                                     double* sigma_star) {
  return guarded([&] {
    need(m && sigma && sigma_star, "null pointer");
    matlift::SpreadParams sp = matlift::compute_spread(m->m);
    *sigma = sp.sigma;
    *sigma_star = sp.sigma_star;
  });
}

matlift_status matlift_dist_parse(const char* spec, matlift_dist** out) {
  return guarded([&] {
    need(spec && out, "null pointer");
    *out = nullptr;
    *out = new matlift_dist{matlift::parse_dist_spec(spec)};
  });
}

matlift_status matlift_dist_load(const char* path, matlift_dist** out) {
  return guarded([&] {
    need(path && out, "null pointer");
    *out = nullptr;
    *out = new matlift_dist{matlift::load_discrete(path)};
  });
}

void matlift_dist_free(matlift_dist* d) { delete d; }

int matlift_dist_k(const matlift_dist* d) { return d ? d->d.k() : -1; }

matlift_status matlift_dist_sample(const matlift_dist* d, uint64_t seed, uint64_t stream,
                                   double* out) {
  return guarded([&] {
    need(d && out, "null pointer");
    matlift::RngState rng(seed, stream);
    Eigen::MatrixXd s = d->d.sample(rng);
    const int k = d->d.k();
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) out[static_cast<size_t>(i) * k + j] = s(i, j);
  });
}

matlift_status matlift_lift_build(const matlift_matrix* base, const matlift_dist* dist,
                                  uint64_t seed, uint64_t stream, matlift_lift** out) {
  return guarded([&] {
    need(base && dist && out, "null pointer");
    *out = nullptr;
    matlift::RngState rng(seed, stream);
    *out = new matlift_lift{matlift::build_lift(base->m, dist->d, rng)};
  });
}

matlift_status matlift_lift_load(const char* path, matlift_lift** out) {
  return guarded([&] {
    need(path && out, "null pointer");
    *out = nullptr;
    *out = new matlift_lift{matlift::load_lift(path)};
  });
}

matlift_status matlift_lift_save(const matlift_lift* l, const char* path) {
  return guarded([&] {
    need(l && path, "null pointer");
    matlift::save_lift(l->m, path);
  });
}

void matlift_lift_free(matlift_lift* l) { delete l; }

int matlift_lift_dim(const matlift_lift* l) { return l ? l->m.dim() : -1; }

matlift_status matlift_lift_apply(const matlift_lift* l, const double* x, double* y) {
  return guarded([&] {
    need(l && x && y, "null pointer");
    l->m.matvec(x, y);
  });
}

namespace {

double norm_of_lift(const matlift::LiftedBlockMatrix& m, double tol) {
  if (m.dim() <= 4096) return matlift::spectral_norm_dense(m.to_dense());
  if (tol <= 0.0) tol = matlift::kDefaultIterTol;
  matlift::LinOp op = [&m](const double* x, double* y) { m.matvec(x, y); };
  matlift::RngState rng(0x6d61746c69667453ULL, 1);
  matlift::NormEstimate est = matlift::spectral_norm_iterative(
      op, m.dim(), tol, matlift::default_max_iter(m.dim()), rng);
  matlift::require(est.converged, matlift::errc::not_converged,
                   "norm iteration did not converge");
  return est.value;
}

}  // namespace

matlift_status matlift_lift_norm(const matlift_lift* l, double tol, double* out) {
  return guarded([&] {
    need(l && out, "null pointer");
    *out = norm_of_lift(l->m, tol);
  });
}

matlift_status matlift_norm_file(const char* path, double tol, double* out) {
  return guarded([&] {
    need(path && out, "null pointer");
    std::string header = file_header_token(path);
    if (header == "symmetric") {
      *out = matlift::spectral_norm_dense(matlift::load_matrix(path).entries());
    } else if (header == "graph") {
      *out = matlift::spectral_norm_dense(
          matlift::adjacency_from_graph(matlift::load_graph(path)).entries());
    } else if (header == "lift") {
      *out = norm_of_lift(matlift::load_lift(path), tol);
    } else {
      matlift::fail(matlift::errc::io_error,
                    "'" + std::string(path) + "': unknown header '" + header + "'");
    }
  });
}

matlift_status matlift_bound(double sigma, double sigma_star, long k, long n, double eps,
                             double c, double* out) {
  return guarded([&] {
    need(out != nullptr, "null pointer");
    *out = matlift::lift_bound(sigma, sigma_star, k, n, eps, c);
  });
}

matlift_status matlift_bound_optimized(double sigma, double sigma_star, long k, long n, double c,
                                       double* value, double* eps_star) {
  return guarded([&] {
    need(value && eps_star, "null pointer");
    matlift::OptimizedBound opt = matlift::lift_bound_optimized(sigma, sigma_star, k, n, c);
    *value = opt.value;
    *eps_star = opt.eps_star;
  });
}

matlift_status matlift_config_load(const char* path, matlift_config** out) {
  return guarded([&] {
    need(path && out, "null pointer");
    *out = nullptr;
    *out = new matlift_config{matlift::Config::parse_file(path)};
  });
}

matlift_status matlift_config_parse(const char* text, matlift_config** out) {
  return guarded([&] {
    need(text && out, "null pointer");
    *out = nullptr;
    *out = new matlift_config{matlift::Config::parse_string(text)};
  });
}

matlift_status matlift_config_set(matlift_config* c, const char* key, const char* value) {
  return guarded([&] {
    need(c && key && value, "null pointer");
    c->c.set(key, value);
  });
}

const char* matlift_config_get(const matlift_config* c, const char* key, const char* fallback) {
  thread_local std::string buf;
  if (!fallback) fallback = "";
  if (!c || !key) return fallback;
  try {
    buf = c->c.get_string(key, fallback);
  } catch (...) {
    return fallback;
  }
  return buf.c_str();
}

void matlift_config_free(matlift_config* c) { delete c; }

matlift_status matlift_experiment_run(const matlift_config* c, matlift_result** out) {
  return guarded([&] {
    need(c && out, "null pointer");
    *out = nullptr;
    matlift::ExperimentConfig cfg = matlift::parse_experiment_config(c->c);
    *out = result_from(matlift::run_experiment(cfg));
  });
}

matlift_status matlift_bounds_table(const matlift_config* c, matlift_result** out) {
  return guarded([&] {
    need(c && out, "null pointer");
    *out = nullptr;
    std::string csv = matlift::csv_to_string(matlift::bounds_table(c->c));
    auto* r = new matlift_result;
    r->summary_csv = std::move(csv);
    r->records_csv = "";
    r->all_ok = 1;
    *out = r;
  });
}

void matlift_result_free(matlift_result* r) { delete r; }

const char* matlift_result_summary_csv(const matlift_result* r) {
  return r ? r->summary_csv.c_str() : "";
}

const char* matlift_result_records_csv(const matlift_result* r) {
  return r ? r->records_csv.c_str() : "";
}

int matlift_result_all_ok(const matlift_result* r) { return r ? r->all_ok : 0; }

matlift_status matlift_lift_from_config(const matlift_config* c, const char* path) {
  return guarded([&] {
    need(c && path, "null pointer");
    matlift::ExperimentConfig cfg = matlift::parse_experiment_config(c->c);
    matlift::BaseMatrix a = matlift::resolve_base_matrix(cfg);
    matlift::LiftDistribution dist = matlift::resolve_dist(cfg);
    matlift::RngState rng(cfg.master_seed, 0);
    matlift::save_lift(matlift::build_lift(a, dist, rng), path);
  });
}

}  // extern "C"
