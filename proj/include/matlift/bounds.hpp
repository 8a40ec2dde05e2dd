#pragma once

#include <string>
#include <utility>
#include <vector>

#include "matlift/base_matrix.hpp"

namespace matlift {

// One evaluated bound with its inputs, in the order they were supplied, for
// CSV reporting. All logarithms in this module are natural.
struct BoundReport {
  std::string name;
  double value = 0.0;
  std::vector<std::pair<std::string, double>> inputs;
};

// sigma * sqrt(2 + 2 ln(2n)): the dimension-penalized row-norm bound.
double nck_bound(double sigma, long n);

// c * (sigma + sigma_star * sqrt(ln n)).
double bvh_bound(const BaseMatrix& a, double c);

// 2(1+eps) sigma + (C / sqrt(ln(1+eps))) sigma_star sqrt(ln(kn)).
// eps must lie in (0, 1/2]; throws EpsOutOfRange otherwise.
double lift_bound(double sigma, double sigma_star, long k, long n, double eps, double c);

struct OptimizedBound {
  double value = 0.0;
  double eps_star = 0.0;
};

// Minimum of lift_bound over eps: geometric grid of 200 points in
// (1e-4, 1/2], refined by golden-section around the grid minimum.
OptimizedBound lift_bound_optimized(double sigma, double sigma_star, long k, long n, double c);

// Graph form: lift_bound(sqrt(Delta), 1, ...).
double klift_bound(long delta, long k, long n, double eps, double c);

struct EmpiricalConstant {
  double c = 0.0;
  // Set when observed_norm <= 2(1+eps) sigma: the first term alone covers
  // the observation and no finite C is implied; c is reported as 0.
  bool first_term_dominates = false;
};

// Inverts lift_bound for C at fixed eps.
EmpiricalConstant empirical_constant(double observed_norm, double sigma, double sigma_star,
                                     long k, long n, double eps);

}  // namespace matlift
