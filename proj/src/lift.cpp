#include "matlift/lift.hpp"

#include <numeric>

#include "matlift/error.hpp"

namespace matlift {

LiftedBlockMatrix::LiftedBlockMatrix(int n, int k, std::vector<Block> blocks)
    : n_(n), k_(k), blocks_(std::move(blocks)) {
  require(n >= 1 && k >= 1, errc::invalid_argument, "LiftedBlockMatrix: need n, k >= 1");
  for (const Block& b : blocks_) {
    require(0 <= b.i && b.i < b.j && b.j < n, errc::invalid_argument,
            "LiftedBlockMatrix: block indices must satisfy 0 <= i < j < n");
    require(b.mat.rows() == k && b.mat.cols() == k, errc::dimension_mismatch,
            "LiftedBlockMatrix: block is not k x k");
  }
}

void LiftedBlockMatrix::matvec(const double* x, double* y) const {
  using CVec = Eigen::Map<const Eigen::VectorXd>;
  using Vec = Eigen::Map<Eigen::VectorXd>;
  Vec(y, dim()).setZero();
  for (const Block& b : blocks_) {
    Vec yi(y + static_cast<ptrdiff_t>(b.i) * k_, k_);
    Vec yj(y + static_cast<ptrdiff_t>(b.j) * k_, k_);
    CVec xi(x + static_cast<ptrdiff_t>(b.i) * k_, k_);
    CVec xj(x + static_cast<ptrdiff_t>(b.j) * k_, k_);
    yi.noalias() += b.coeff * (b.mat * xj);
    yj.noalias() += b.coeff * (b.mat.transpose() * xi);
  }
}

Eigen::VectorXd LiftedBlockMatrix::apply(const Eigen::VectorXd& x) const {
  require(x.size() == dim(), errc::dimension_mismatch,
          "apply: vector length " + std::to_string(x.size()) + ", operator dimension " +
              std::to_string(dim()));
  Eigen::VectorXd y(dim());
  matvec(x.data(), y.data());
  return y;
}

Eigen::MatrixXd LiftedBlockMatrix::to_dense() const {
  require(dim() <= 4096, errc::too_large, "to_dense: kn > 4096");
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(dim(), dim());
  for (const Block& b : blocks_) {
    d.block(b.i * k_, b.j * k_, k_, k_) = b.coeff * b.mat;
    d.block(b.j * k_, b.i * k_, k_, k_) = b.coeff * b.mat.transpose();
  }
  return d;
}

LiftedBlockMatrix build_lift(const BaseMatrix& a, const LiftDistribution& dist, RngState& rng,
                             bool sample_all_edges) {
  const int n = a.n();
  const int k = dist.k();
  std::vector<LiftedBlockMatrix::Block> blocks;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (a(i, j) == 0.0) {
        if (sample_all_edges) dist.sample(rng);
        continue;
      }
      blocks.push_back({i, j, a(i, j), dist.sample(rng)});
    }
  }
  return LiftedBlockMatrix(n, k, std::move(blocks));
}

GraphLift build_graph_lift(const GraphSpec& g, int k, RngState& rng) {
  require(k >= 1, errc::invalid_argument, "build_graph_lift: need k >= 1");
  std::vector<std::vector<int>> perms;
  perms.reserve(g.edges().size());
  for (size_t e = 0; e < g.edges().size(); ++e) {
    std::vector<int> p(k);
    std::iota(p.begin(), p.end(), 0);
    rng.shuffle(p);
    perms.push_back(std::move(p));
  }
  return GraphLift{g, k, std::move(perms)};
}

namespace {

Eigen::MatrixXd perm_matrix(const std::vector<int>& perm) {
  const int k = static_cast<int>(perm.size());
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(k, k);
  for (int b = 0; b < k; ++b) p(perm[b], b) = 1.0;
  return p;
}

}  // namespace

LiftedBlockMatrix lift_adjacency(const GraphLift& lift) {
  require(lift.perms.size() == lift.base.edges().size(), errc::invalid_argument,
          "lift_adjacency: one permutation per edge required");
  std::vector<LiftedBlockMatrix::Block> blocks;
  blocks.reserve(lift.perms.size());
  for (size_t e = 0; e < lift.perms.size(); ++e) {
    auto [i, j] = lift.base.edges()[e];
    blocks.push_back({i, j, 1.0, perm_matrix(lift.perms[e])});
  }
  return LiftedBlockMatrix(lift.base.n(), lift.k, std::move(blocks));
}

LiftedBlockMatrix expected_graph_lift(const GraphSpec& g, int k) {
  require(k >= 1, errc::invalid_argument, "expected_graph_lift: need k >= 1");
  Eigen::MatrixXd jk = Eigen::MatrixXd::Constant(k, k, 1.0 / k);
  std::vector<LiftedBlockMatrix::Block> blocks;
  blocks.reserve(g.edges().size());
  for (auto [i, j] : g.edges()) blocks.push_back({i, j, 1.0, jk});
  return LiftedBlockMatrix(g.n(), k, std::move(blocks));
}

LiftedBlockMatrix center_graph_lift(const GraphLift& lift) {
  require(lift.perms.size() == lift.base.edges().size(), errc::invalid_argument,
          "center_graph_lift: one permutation per edge required");
  const int k = lift.k;
  std::vector<LiftedBlockMatrix::Block> blocks;
  blocks.reserve(lift.perms.size());
  for (size_t e = 0; e < lift.perms.size(); ++e) {
    auto [i, j] = lift.base.edges()[e];
    Eigen::MatrixXd m = perm_matrix(lift.perms[e]);
    m.array() -= 1.0 / k;
    blocks.push_back({i, j, 1.0, std::move(m)});
  }
  return LiftedBlockMatrix(lift.base.n(), k, std::move(blocks));
}

}  // namespace matlift
