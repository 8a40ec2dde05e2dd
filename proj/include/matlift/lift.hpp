#pragma once

#include <vector>

#include "matlift/base_matrix.hpp"
#include "matlift/distributions.hpp"
#include "matlift/graph.hpp"
#include "matlift/rng.hpp"

namespace matlift {

// Block-sparse symmetric operator of dimension kn: one k x k block per stored
// base edge (i, j), i < j, with the transposed block implied below the
// diagonal and zero diagonal blocks. Coordinates are vertex-major: base
// vertex i owns rows ik..ik+k-1, so the expected lift A (x) J_k/k is literal.
class LiftedBlockMatrix {
 public:
  struct Block {
    int i, j;             // base edge, i < j
    double coeff;         // A_ij
    Eigen::MatrixXd mat;  // the k x k factor
  };

  LiftedBlockMatrix(int n, int k, std::vector<Block> blocks);

  int n() const { return n_; }
  int k() const { return k_; }
  int dim() const { return n_ * k_; }
  const std::vector<Block>& blocks() const { return blocks_; }

  // y = M x. Raw form writes y fully; no aliasing allowed.
  void matvec(const double* x, double* y) const;
  Eigen::VectorXd apply(const Eigen::VectorXd& x) const;  // DimensionMismatch on bad size

  // Dense materialization, guarded at kn <= 4096.
  Eigen::MatrixXd to_dense() const;

 private:
  int n_, k_;
  std::vector<Block> blocks_;
};

// A k-lift of a graph: one permutation per base edge. perms is aligned with
// base.edges(); for edge e = (i, j) the lifted graph joins (i, perm[b]) to
// (j, b), i.e. the (i, j) block of the lifted adjacency has entry (a, b) = 1
// iff a = perm[b].
struct GraphLift {
  GraphSpec base;
  int k;
  std::vector<std::vector<int>> perms;
};

// Draws one independent sample per nonzero upper-triangular entry of A.
// With sample_all_edges, a sample is drawn for every pair i < j in row-major
// order whether or not A_ij is zero (zero entries still store no block), so
// two bases with different sparsity consume the same draw sequence from a
// given seed.
LiftedBlockMatrix build_lift(const BaseMatrix& a, const LiftDistribution& dist, RngState& rng,
                             bool sample_all_edges = false);

// Uniform independent permutation per edge. k = 1 is the degenerate
// identity lift, useful as a trivial oracle.
GraphLift build_graph_lift(const GraphSpec& g, int k, RngState& rng);

// Adjacency of the lifted graph as a block operator.
LiftedBlockMatrix lift_adjacency(const GraphLift& lift);

// E A^(k): blocks J_k/k on the edges of G.
LiftedBlockMatrix expected_graph_lift(const GraphSpec& g, int k);

// A^(k) - E A^(k): blocks Pi_e - J_k/k. In distribution this equals
// build_lift(adjacency, centered_permutation(k)).
LiftedBlockMatrix center_graph_lift(const GraphLift& lift);

}  // namespace matlift
