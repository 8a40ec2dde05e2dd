#include "matlift/bounds.hpp"

#include <cmath>

#include "matlift/error.hpp"

namespace matlift {

namespace {

void check_common(double sigma, double sigma_star, long k, long n, double c) {
  require(sigma >= 0.0 && sigma_star >= 0.0, errc::invalid_argument,
          "bound: sigma and sigma_star must be nonnegative");
  require(k >= 1, errc::invalid_argument, "bound: need k >= 1");
  require(n >= 2, errc::invalid_argument, "bound: need n >= 2");
  require(c > 0.0, errc::invalid_argument, "bound: need C > 0");
}

void check_eps(double eps) {
  require(eps > 0.0 && eps <= 0.5, errc::eps_out_of_range,
          "bound: eps must lie in (0, 1/2]");
}

}  // namespace

double nck_bound(double sigma, long n) {
  require(sigma >= 0.0, errc::invalid_argument, "nck_bound: need sigma >= 0");
  require(n >= 1, errc::invalid_argument, "nck_bound: need n >= 1");
  return sigma * std::sqrt(2.0 + 2.0 * std::log(2.0 * static_cast<double>(n)));
}

double bvh_bound(const BaseMatrix& a, double c) {
  require(c > 0.0, errc::invalid_argument, "bvh_bound: need c > 0");
  SpreadParams s = compute_spread(a);
  return c * (s.sigma + s.sigma_star * std::sqrt(std::log(static_cast<double>(a.n()))));
}

double lift_bound(double sigma, double sigma_star, long k, long n, double eps, double c) {
  check_common(sigma, sigma_star, k, n, c);
  check_eps(eps);
  double kn = static_cast<double>(k) * static_cast<double>(n);
  return 2.0 * (1.0 + eps) * sigma +
         (c / std::sqrt(std::log1p(eps))) * sigma_star * std::sqrt(std::log(kn));
}

OptimizedBound lift_bound_optimized(double sigma, double sigma_star, long k, long n, double c) {
  check_common(sigma, sigma_star, k, n, c);
  const double lo = 1e-4, hi = 0.5;
  const int grid = 200;
  double best_eps = hi;
  double best = lift_bound(sigma, sigma_star, k, n, hi, c);
  double ratio = std::pow(hi / lo, 1.0 / (grid - 1));
  double eps = lo;
  for (int i = 0; i < grid; ++i, eps *= ratio) {
    double e = std::min(eps, hi);
    double v = lift_bound(sigma, sigma_star, k, n, e, c);
    if (v < best) {
      best = v;
      best_eps = e;
    }
  }
  // Golden-section refinement on the bracketing grid cell.
  double a = std::max(lo, best_eps / ratio), b = std::min(hi, best_eps * ratio);
  const double phi = 0.6180339887498949;
  double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
  double f1 = lift_bound(sigma, sigma_star, k, n, x1, c);
  double f2 = lift_bound(sigma, sigma_star, k, n, x2, c);
  for (int it = 0; it < 80 && (b - a) > 1e-12; ++it) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - phi * (b - a);
      f1 = lift_bound(sigma, sigma_star, k, n, x1, c);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + phi * (b - a);
      f2 = lift_bound(sigma, sigma_star, k, n, x2, c);
    }
  }
  double mid = 0.5 * (a + b);
  double fm = lift_bound(sigma, sigma_star, k, n, mid, c);
  if (fm < best) {
    best = fm;
    best_eps = mid;
  }
  return {best, best_eps};
}

double klift_bound(long delta, long k, long n, double eps, double c) {
  require(delta >= 0, errc::invalid_argument, "klift_bound: need Delta >= 0");
  return lift_bound(std::sqrt(static_cast<double>(delta)), 1.0, k, n, eps, c);
}

EmpiricalConstant empirical_constant(double observed_norm, double sigma, double sigma_star,
                                     long k, long n, double eps) {
  require(sigma_star > 0.0, errc::invalid_argument, "empirical_constant: need sigma_star > 0");
  require(sigma >= 0.0, errc::invalid_argument, "empirical_constant: need sigma >= 0");
  require(k >= 1 && n >= 2, errc::invalid_argument, "empirical_constant: need k >= 1, n >= 2");
  check_eps(eps);
  EmpiricalConstant out;
  double first = 2.0 * (1.0 + eps) * sigma;
  if (observed_norm <= first) {
    out.first_term_dominates = true;
    out.c = 0.0;
    return out;
  }
  double kn = static_cast<double>(k) * static_cast<double>(n);
  out.c = (observed_norm - first) * std::sqrt(std::log1p(eps)) /
          (sigma_star * std::sqrt(std::log(kn)));
  return out;
}

}  // namespace matlift
