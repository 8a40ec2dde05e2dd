#include "matlift/base_matrix.hpp"

#include <cmath>
#include <string>

#include "matlift/error.hpp"

namespace matlift {

std::vector<std::pair<int, int>> BaseMatrix::nonzero_upper() const {
  std::vector<std::pair<int, int>> out;
  const int m = n();
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      if (entries_(i, j) != 0.0) out.emplace_back(i, j);
  return out;
}

BaseMatrix validate_base(const Eigen::MatrixXd& entries) {
  require(entries.rows() == entries.cols(), errc::invalid_argument,
          "validate_base: matrix must be square");
  require(entries.rows() >= 2, errc::invalid_argument, "validate_base: need n >= 2");
  const int n = static_cast<int>(entries.rows());
  for (int i = 0; i < n; ++i) {
    if (entries(i, i) != 0.0)
      fail(errc::nonzero_diagonal, "validate_base: nonzero diagonal at (" + std::to_string(i) +
                                       "," + std::to_string(i) + "); use split_diagonal first");
    for (int j = i + 1; j < n; ++j) {
      if (entries(i, j) != entries(j, i))
        fail(errc::asymmetric_input, "validate_base: entries (" + std::to_string(i) + "," +
                                         std::to_string(j) + ") and transpose differ");
    }
  }
  return BaseMatrix(entries);
}

SpreadParams compute_spread(const BaseMatrix& a) {
  SpreadParams p;
  const Eigen::MatrixXd& m = a.entries();
  for (int i = 0; i < m.rows(); ++i) {
    p.sigma = std::max(p.sigma, m.row(i).norm());
    p.sigma_star = std::max(p.sigma_star, m.row(i).cwiseAbs().maxCoeff());
  }
  return p;
}

std::pair<Eigen::VectorXd, BaseMatrix> split_diagonal(const Eigen::MatrixXd& symmetric) {
  require(symmetric.rows() == symmetric.cols(), errc::invalid_argument,
          "split_diagonal: matrix must be square");
  Eigen::VectorXd d = symmetric.diagonal();
  Eigen::MatrixXd off = symmetric;
  off.diagonal().setZero();
  return {std::move(d), validate_base(off)};
}

}  // namespace matlift
