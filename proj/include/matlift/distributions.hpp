#pragma once

#include <Eigen/Dense>
#include <vector>

#include "matlift/rng.hpp"

namespace matlift {

enum class DistKind {
  rademacher,                // k = 1, uniform on {+1, -1}
  centered_permutation,      // P - J_k/k, P uniform over permutations
  haar_orthogonal,           // Haar on O(k)
  haar_special_orthogonal,   // Haar on SO(k), k >= 2
  y_entry,                   // sqrt(3) w.p. 1/4, -1/sqrt(3) w.p. 3/4
  discrete,                  // user-supplied finite law
};

struct Atom {
  Eigen::MatrixXd mat;
  double prob;
};

// A lifting law: a distribution on k x k real matrices. Built-in laws are
// centered with spectral norm <= 1 except y_entry, which is the scalar
// comparison law used by the moment machinery (its atoms exceed norm 1 and
// it is not a valid edge law for lifts).
class LiftDistribution {
 public:
  static LiftDistribution make_rademacher();
  static LiftDistribution make_centered_permutation(int k);
  static LiftDistribution make_haar_orthogonal(int k);
  static LiftDistribution make_haar_special_orthogonal(int k);  // k >= 2
  static LiftDistribution make_y_entry();

  // Validates: probabilities nonnegative and summing to 1 within 1e-12,
  // every atom spectral norm <= 1 + 1e-9, mean entries within 1e-9 of 0.
  // Throws InvalidArgument / NotCentered accordingly.
  static LiftDistribution make_discrete(int k, std::vector<Atom> atoms);

  // Skips the centering and norm checks (probabilities must still be a
  // distribution). Exists so degenerate or off-contract laws can be built
  // for diagnostics; lifts built from such a law inherit no guarantees.
  static LiftDistribution make_discrete_unchecked(int k, std::vector<Atom> atoms);

  DistKind kind() const { return kind_; }
  int k() const { return k_; }

  Eigen::MatrixXd sample(RngState& rng) const;

  // Exact mean: zero matrix for built-ins, weighted atom sum for discrete.
  Eigen::MatrixXd mean() const;

  // Complete finite support. Defined for discrete, rademacher, y_entry, and
  // centered_permutation with k <= 6; throws ContinuousSupport for haar
  // families and TooLarge for permutations past k = 6.
  std::vector<Atom> enumerate_support() const;

  // Exact E[X^m] for scalar (k = 1) finite-support laws.
  double moment_scalar(int m) const;

  bool has_finite_support() const;

  // Human-readable law name, e.g. "centered_permutation(3)".
  std::string name() const;

 private:
  LiftDistribution(DistKind kind, int k) : kind_(kind), k_(k) {}

  DistKind kind_;
  int k_;
  std::vector<Atom> atoms_;  // only for discrete
};

}  // namespace matlift
