#pragma once

#include <Eigen/Dense>
#include <utility>

namespace matlift {

// Symmetric real matrix with zero diagonal: the object the lift construction
// acts on. Instances only come out of validate_base / adjacency_from_graph,
// so holding a BaseMatrix is proof the invariants were checked.
class BaseMatrix {
 public:
  int n() const { return static_cast<int>(entries_.rows()); }
  const Eigen::MatrixXd& entries() const { return entries_; }
  double operator()(int i, int j) const { return entries_(i, j); }

  // Ordered pairs (i, j), i < j, with entries_(i, j) != 0.
  std::vector<std::pair<int, int>> nonzero_upper() const;

 private:
  friend BaseMatrix validate_base(const Eigen::MatrixXd& entries);
  explicit BaseMatrix(Eigen::MatrixXd entries) : entries_(std::move(entries)) {}

  Eigen::MatrixXd entries_;
};

struct SpreadParams {
  double sigma = 0.0;       // max row Euclidean norm
  double sigma_star = 0.0;  // max entry magnitude
};

// Checks symmetry and zero diagonal with exact equality: inputs are user
// data, not computation results, so no tolerance applies.
// Throws AsymmetricInput / NonzeroDiagonal / InvalidArgument.
BaseMatrix validate_base(const Eigen::MatrixXd& entries);

SpreadParams compute_spread(const BaseMatrix& a);

// Splits a symmetric matrix into (diagonal vector, off-diagonal BaseMatrix).
// The lift of a diagonal part has no defined semantics here; callers that
// accept general symmetric input bound it separately via the triangle
// inequality.
std::pair<Eigen::VectorXd, BaseMatrix> split_diagonal(const Eigen::MatrixXd& symmetric);

}  // namespace matlift
