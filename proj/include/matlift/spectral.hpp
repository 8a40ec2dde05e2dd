#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "matlift/base_matrix.hpp"
#include "matlift/lift.hpp"
#include "matlift/rng.hpp"

namespace matlift {

struct NormEstimate {
  double value = 0.0;     // max |Ritz value|
  double residual = 0.0;  // ||M v - theta v|| for the returned pair
  int iterations = 0;
  bool converged = false;  // implies residual <= tol * value
};

// Symmetric linear operator in matrix-free form: y = M x.
using LinOp = std::function<void(const double* x, double* y)>;

enum class IterMethod {
  lanczos,  // tridiagonalization with full reorthogonalization, both spectrum ends
  power,    // power iteration on M^2; slower cross-check
};

inline int default_max_iter(int dim) {
  return static_cast<int>(10.0 * std::sqrt(static_cast<double>(dim))) + 200;
}
constexpr double kDefaultIterTol = 1e-8;

// Exact dense path. Requires symmetry within 1e-12 (absolute) and
// dimension <= 4096.
double spectral_norm_dense(const Eigen::MatrixXd& m);

// All eigenvalues, ascending, with multiplicity.
std::vector<double> full_spectrum_dense(const Eigen::MatrixXd& m);

// Matrix-free estimate of max |lambda|. The caller guarantees op is
// symmetric. Never throws for non-convergence: the flag carries it.
NormEstimate spectral_norm_iterative(const LinOp& op, int dim, double tol, int max_iter,
                                     RngState& rng, IterMethod method = IterMethod::lanczos);

// Removes the base spectrum from a lifted spectrum by greedy nearest-match
// within tol; throws InvalidArgument if some base eigenvalue has no match
// (the input was not a lift spectrum). Returns the surviving multiset.
std::vector<double> remove_base_spectrum(const std::vector<double>& lifted,
                                         const std::vector<double>& base, double tol = 1e-6);

// Largest new eigenvalue magnitude of a graph lift: the quantity
// max |eta| over spec(A^(k)) \ spec(A). Dense spectrum-removal when
// kn <= 4096, else iterative norm of the centered operator; the two agree
// because the new spectrum is exactly the spectrum of A^(k) - E A^(k)
// on the complement of the fiber-constant subspace.
double new_eigenvalue_norm(const BaseMatrix& a, const GraphLift& lift);

}  // namespace matlift
