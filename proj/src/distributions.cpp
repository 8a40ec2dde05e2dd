#include "matlift/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "matlift/error.hpp"

namespace matlift {

namespace {

constexpr double kSqrt3 = 1.7320508075688772935;

double operator_norm(const Eigen::MatrixXd& m) {
  return Eigen::JacobiSVD<Eigen::MatrixXd>(m).singularValues()(0);
}

Eigen::MatrixXd permutation_to_matrix(const std::vector<int>& perm) {
  const int k = static_cast<int>(perm.size());
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(k, k);
  for (int i = 0; i < k; ++i) p(perm[i], i) = 1.0;
  return p;
}

// Haar draw on O(k): orthogonalize a standard-normal matrix and fix the
// column signs by the triangular factor's diagonal, else the QR convention
// would bias the law.
Eigen::MatrixXd haar_orthogonal_sample(int k, RngState& rng) {
  Eigen::MatrixXd g(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) g(i, j) = rng.normal();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ();
  Eigen::VectorXd rdiag = qr.matrixQR().diagonal();
  for (int j = 0; j < k; ++j)
    if (rdiag(j) < 0.0) q.col(j) = -q.col(j);
  return q;
}

}  // namespace

LiftDistribution LiftDistribution::make_rademacher() {
  return LiftDistribution(DistKind::rademacher, 1);
}

LiftDistribution LiftDistribution::make_centered_permutation(int k) {
  require(k >= 1, errc::invalid_argument, "centered_permutation: need k >= 1");
  return LiftDistribution(DistKind::centered_permutation, k);
}

LiftDistribution LiftDistribution::make_haar_orthogonal(int k) {
  require(k >= 1, errc::invalid_argument, "haar_orthogonal: need k >= 1");
  return LiftDistribution(DistKind::haar_orthogonal, k);
}

LiftDistribution LiftDistribution::make_haar_special_orthogonal(int k) {
  require(k >= 2, errc::not_centered,
          "haar_special_orthogonal: k = 1 has the single atom 1, which is not centered");
  return LiftDistribution(DistKind::haar_special_orthogonal, k);
}

LiftDistribution LiftDistribution::make_y_entry() {
  return LiftDistribution(DistKind::y_entry, 1);
}

LiftDistribution LiftDistribution::make_discrete_unchecked(int k, std::vector<Atom> atoms) {
  require(k >= 1, errc::invalid_argument, "discrete: need k >= 1");
  require(!atoms.empty(), errc::invalid_argument, "discrete: need at least one atom");
  double total = 0.0;
  for (const Atom& a : atoms) {
    require(a.mat.rows() == k && a.mat.cols() == k, errc::dimension_mismatch,
            "discrete: atom is not k x k");
    require(a.prob >= 0.0, errc::invalid_argument, "discrete: negative probability");
    total += a.prob;
  }
  require(std::abs(total - 1.0) <= 1e-12, errc::invalid_argument,
          "discrete: probabilities sum to " + std::to_string(total) + ", expected 1");
  LiftDistribution d(DistKind::discrete, k);
  d.atoms_ = std::move(atoms);
  return d;
}

LiftDistribution LiftDistribution::make_discrete(int k, std::vector<Atom> atoms) {
  LiftDistribution d = make_discrete_unchecked(k, std::move(atoms));
  for (const Atom& a : d.atoms_)
    require(operator_norm(a.mat) <= 1.0 + 1e-9, errc::invalid_argument,
            "discrete: atom spectral norm exceeds 1");
  Eigen::MatrixXd mu = d.mean();
  require(mu.cwiseAbs().maxCoeff() <= 1e-9, errc::not_centered,
          "discrete: law mean is not zero");
  return d;
}

Eigen::MatrixXd LiftDistribution::sample(RngState& rng) const {
  switch (kind_) {
    case DistKind::rademacher: {
      Eigen::MatrixXd m(1, 1);
      m(0, 0) = rng.uniform_below(2) == 0 ? 1.0 : -1.0;
      return m;
    }
    case DistKind::centered_permutation: {
      std::vector<int> perm(k_);
      std::iota(perm.begin(), perm.end(), 0);
      rng.shuffle(perm);
      Eigen::MatrixXd m = permutation_to_matrix(perm);
      m.array() -= 1.0 / k_;
      return m;
    }
    case DistKind::haar_orthogonal:
      return haar_orthogonal_sample(k_, rng);
    case DistKind::haar_special_orthogonal: {
      Eigen::MatrixXd q = haar_orthogonal_sample(k_, rng);
      if (q.determinant() < 0.0) q.row(k_ - 1) = -q.row(k_ - 1);
      return q;
    }
    case DistKind::y_entry: {
      Eigen::MatrixXd m(1, 1);
      m(0, 0) = rng.uniform_below(4) == 0 ? kSqrt3 : -1.0 / kSqrt3;
      return m;
    }
    case DistKind::discrete: {
      double u = rng.uniform01();
      double acc = 0.0;
      for (const Atom& a : atoms_) {
        acc += a.prob;
        if (u < acc) return a.mat;
      }
      return atoms_.back().mat;
    }
  }
  fail(errc::internal, "sample: unreachable");
}

Eigen::MatrixXd LiftDistribution::mean() const {
  if (kind_ == DistKind::discrete) {
    Eigen::MatrixXd mu = Eigen::MatrixXd::Zero(k_, k_);
    for (const Atom& a : atoms_) mu += a.prob * a.mat;
    return mu;
  }
  // Every built-in law is exactly centered (SO(k) needs k >= 2, which the
  // factory enforces).
  return Eigen::MatrixXd::Zero(k_, k_);
}

bool LiftDistribution::has_finite_support() const {
  switch (kind_) {
    case DistKind::rademacher:
    case DistKind::y_entry:
    case DistKind::centered_permutation:
    case DistKind::discrete:
      return true;
    case DistKind::haar_orthogonal:
    case DistKind::haar_special_orthogonal:
      return false;
  }
  return false;
}

std::vector<Atom> LiftDistribution::enumerate_support() const {
  switch (kind_) {
    case DistKind::rademacher: {
      Eigen::MatrixXd plus(1, 1), minus(1, 1);
      plus(0, 0) = 1.0;
      minus(0, 0) = -1.0;
      return {{plus, 0.5}, {minus, 0.5}};
    }
    case DistKind::y_entry: {
      Eigen::MatrixXd hi(1, 1), lo(1, 1);
      hi(0, 0) = kSqrt3;
      lo(0, 0) = -1.0 / kSqrt3;
      return {{hi, 0.25}, {lo, 0.75}};
    }
    case DistKind::centered_permutation: {
      require(k_ <= 6, errc::too_large,
              "enumerate_support: centered_permutation limited to k <= 6 (k! atoms)");
      std::vector<int> perm(k_);
      std::iota(perm.begin(), perm.end(), 0);
      long fact = 1;
      for (int i = 2; i <= k_; ++i) fact *= i;
      std::vector<Atom> out;
      out.reserve(fact);
      do {
        Eigen::MatrixXd m = permutation_to_matrix(perm);
        m.array() -= 1.0 / k_;
        out.push_back({std::move(m), 1.0 / static_cast<double>(fact)});
      } while (std::next_permutation(perm.begin(), perm.end()));
      return out;
    }
    case DistKind::discrete:
      return atoms_;
    case DistKind::haar_orthogonal:
    case DistKind::haar_special_orthogonal:
      fail(errc::continuous_support, "enumerate_support: haar families have no finite support");
  }
  fail(errc::internal, "enumerate_support: unreachable");
}

double LiftDistribution::moment_scalar(int m) const {
  require(m >= 1, errc::invalid_argument, "moment_scalar: need m >= 1");
  require(k_ == 1, errc::not_scalar, "moment_scalar: law is not scalar");
  // Built-in laws are centered identically; summing pow terms would only
  // add rounding noise to a moment that is zero by construction.
  if (m == 1 && kind_ != DistKind::discrete) return 0.0;
  double acc = 0.0;
  for (const Atom& a : enumerate_support()) acc += a.prob * std::pow(a.mat(0, 0), m);
  return acc;
}

std::string LiftDistribution::name() const {
  switch (kind_) {
    case DistKind::rademacher: return "rademacher";
    case DistKind::centered_permutation:
      return "centered_permutation(" + std::to_string(k_) + ")";
    case DistKind::haar_orthogonal: return "haar_orthogonal(" + std::to_string(k_) + ")";
    case DistKind::haar_special_orthogonal:
      return "haar_special_orthogonal(" + std::to_string(k_) + ")";
    case DistKind::y_entry: return "y_entry";
    case DistKind::discrete: return "discrete(" + std::to_string(k_) + ")";
  }
  return "unknown";
}

}  // namespace matlift
