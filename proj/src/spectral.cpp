#include "matlift/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "matlift/error.hpp"

namespace matlift {

namespace {

void check_dense_input(const Eigen::MatrixXd& m) {
  require(m.rows() == m.cols(), errc::not_symmetric, "dense spectrum: matrix is not square");
  require(m.rows() <= 4096, errc::too_large, "dense spectrum: dimension > 4096");
  double skew = (m - m.transpose()).cwiseAbs().maxCoeff();
  require(skew <= 1e-12, errc::not_symmetric,
          "dense spectrum: asymmetry " + std::to_string(skew) + " exceeds 1e-12");
}

NormEstimate lanczos_norm(const LinOp& op, int dim, double tol, int max_iter, RngState& rng) {
  NormEstimate est;
  const int steps = std::min(max_iter, dim);
  Eigen::VectorXd v(dim);
  for (int i = 0; i < dim; ++i) v(i) = rng.normal();
  double nrm = v.norm();
  if (nrm == 0.0) v(0) = 1.0, nrm = 1.0;
  v /= nrm;

  std::vector<Eigen::VectorXd> basis;
  basis.push_back(v);
  std::vector<double> alpha, beta;
  Eigen::VectorXd w(dim);

  for (int j = 0; j < steps; ++j) {
    op(basis[j].data(), w.data());
    alpha.push_back(w.dot(basis[j]));
    // Full reorthogonalization, twice; classical Gram-Schmidt drift would
    // otherwise produce spurious Ritz copies.
    for (int pass = 0; pass < 2; ++pass)
      for (const Eigen::VectorXd& b : basis) w.noalias() -= b.dot(w) * b;
    double b_next = w.norm();

    Eigen::Map<const Eigen::VectorXd> diag(alpha.data(), j + 1);
    Eigen::VectorXd sub(std::max(j, 1));
    for (int t = 0; t < j; ++t) sub(t) = beta[t];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, sub.head(j), Eigen::ComputeEigenvectors);
    int best = 0;
    for (int t = 1; t <= j; ++t)
      if (std::abs(es.eigenvalues()(t)) > std::abs(es.eigenvalues()(best))) best = t;
    double theta = es.eigenvalues()(best);
    double resid = std::abs(b_next * es.eigenvectors()(j, best));

    est.value = std::abs(theta);
    est.residual = resid;
    est.iterations = j + 1;
    if (resid <= tol * std::abs(theta) || b_next <= 1e-300) {
      est.converged = true;
      return est;
    }
    if (j + 1 < steps) {
      beta.push_back(b_next);
      basis.push_back(w / b_next);
    }
  }
  return est;  // converged stays false; best estimate is carried
}

NormEstimate power_norm(const LinOp& op, int dim, double tol, int max_iter, RngState& rng) {
  NormEstimate est;
  Eigen::VectorXd v(dim), mv(dim), mmv(dim);
  for (int i = 0; i < dim; ++i) v(i) = rng.normal();
  v.normalize();
  for (int it = 1; it <= max_iter; ++it) {
    op(v.data(), mv.data());
    op(mv.data(), mmv.data());
    double rho = v.dot(mmv);  // Rayleigh quotient of M^2; rho >= 0
    double value = std::sqrt(std::max(rho, 0.0));
    double resid2 = (mmv - rho * v).norm();
    est.iterations = it;
    est.value = value;
    est.residual = value > 0.0 ? resid2 / (2.0 * value) : resid2;
    if (resid2 <= tol * rho || mmv.norm() == 0.0) {
      if (mmv.norm() == 0.0) {
        est.value = 0.0;
        est.residual = 0.0;
      }
      est.converged = true;
      return est;
    }
    v = mmv / mmv.norm();
  }
  return est;
}

}  // namespace

double spectral_norm_dense(const Eigen::MatrixXd& m) {
  check_dense_input(m);
  if (m.rows() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

std::vector<double> full_spectrum_dense(const Eigen::MatrixXd& m) {
  check_dense_input(m);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  return std::vector<double>(es.eigenvalues().data(), es.eigenvalues().data() + m.rows());
}

NormEstimate spectral_norm_iterative(const LinOp& op, int dim, double tol, int max_iter,
                                     RngState& rng, IterMethod method) {
  require(dim >= 1, errc::invalid_argument, "spectral_norm_iterative: need dim >= 1");
  require(tol > 0.0, errc::invalid_argument, "spectral_norm_iterative: need tol > 0");
  require(max_iter >= 1, errc::invalid_argument, "spectral_norm_iterative: need max_iter >= 1");
  return method == IterMethod::lanczos ? lanczos_norm(op, dim, tol, max_iter, rng)
                                       : power_norm(op, dim, tol, max_iter, rng);
}

std::vector<double> remove_base_spectrum(const std::vector<double>& lifted,
                                         const std::vector<double>& base, double tol) {
  std::multiset<double> pool(lifted.begin(), lifted.end());
  require(base.size() <= lifted.size(), errc::invalid_argument,
          "remove_base_spectrum: base spectrum larger than lifted spectrum");
  for (double b : base) {
    // Nearest element by value; check both neighbors of the insertion point.
    auto hi = pool.lower_bound(b);
    auto pick = pool.end();
    double best = tol;
    if (hi != pool.end() && std::abs(*hi - b) <= best) {
      best = std::abs(*hi - b);
      pick = hi;
    }
    if (hi != pool.begin()) {
      auto lo = std::prev(hi);
      if (std::abs(*lo - b) <= best) pick = lo;
    }
    require(pick != pool.end(), errc::invalid_argument,
            "remove_base_spectrum: eigenvalue " + std::to_string(b) +
                " has no match within tolerance");
    pool.erase(pick);
  }
  return std::vector<double>(pool.begin(), pool.end());
}

double new_eigenvalue_norm(const BaseMatrix& a, const GraphLift& lift) {
  require(a.n() == lift.base.n(), errc::dimension_mismatch,
          "new_eigenvalue_norm: base matrix and lift disagree on n");
  if (lift.k == 1) return 0.0;
  const int dim = lift.base.n() * lift.k;
  if (dim <= 4096) {
    std::vector<double> lifted = full_spectrum_dense(lift_adjacency(lift).to_dense());
    std::vector<double> base = full_spectrum_dense(a.entries());
    double out = 0.0;
    for (double eta : remove_base_spectrum(lifted, base, 1e-6)) out = std::max(out, std::abs(eta));
    return out;
  }
  LiftedBlockMatrix centered = center_graph_lift(lift);
  RngState rng(0x6d61746c69667453ULL, 0);  // fixed stream: result must not depend on caller state
  LinOp op = [&centered](const double* x, double* y) { centered.matvec(x, y); };
  NormEstimate est =
      spectral_norm_iterative(op, dim, kDefaultIterTol, default_max_iter(dim), rng);
  require(est.converged, errc::not_converged, "new_eigenvalue_norm: iteration did not converge");
  return est.value;
}

}  // namespace matlift
