#include <cmath>

#include "doctest.h"
#include "matlift/bounds.hpp"
#include "matlift/error.hpp"
#include "matlift/graph.hpp"
#include "test_util.hpp"

using matlift::errc;
using test_util::code_of;

TEST_CASE("nck_bound frozen values") {
  CHECK(matlift::nck_bound(1.0, 1) == doctest::Approx(1.8401886754134453).epsilon(1e-15));
  CHECK(matlift::nck_bound(2.0, 10) ==
        doctest::Approx(2.0 * std::sqrt(2.0 + 2.0 * std::log(20.0))).epsilon(1e-15));
  CHECK(code_of([] { matlift::nck_bound(-1.0, 5); }) == errc::invalid_argument);
  CHECK(code_of([] { matlift::nck_bound(1.0, 0); }) == errc::invalid_argument);
}

TEST_CASE("bvh_bound frozen value") {
  auto k4 = matlift::adjacency_from_graph(matlift::complete_graph(4));
  CHECK(matlift::bvh_bound(k4, 1.0) == doctest::Approx(2.9094608300843516).epsilon(1e-15));
  CHECK(matlift::bvh_bound(k4, 2.0) ==
        doctest::Approx(2.0 * 2.9094608300843516).epsilon(1e-15));
  CHECK(code_of([&] { matlift::bvh_bound(k4, 0.0); }) == errc::invalid_argument);
}

TEST_CASE("lift_bound frozen values and domain") {
  CHECK(matlift::lift_bound(std::sqrt(3.0), 1.0, 2, 4, 0.5, 1.0) ==
        doctest::Approx(7.4607790749507421).epsilon(1e-15));
  CHECK(matlift::lift_bound(2.0, 1.0, 2, 100, 0.25, 1.0) ==
        doctest::Approx(9.8727801137069306).epsilon(1e-15));

  // C scales only the second term
  double base = matlift::lift_bound(1.0, 1.0, 2, 10, 0.5, 1.0);
  double doubled = matlift::lift_bound(1.0, 1.0, 2, 10, 0.5, 2.0);
  double first = 2.0 * 1.5 * 1.0;
  CHECK(doubled - first == doctest::Approx(2.0 * (base - first)).epsilon(1e-13));

  CHECK(code_of([] { matlift::lift_bound(1, 1, 2, 4, 0.0, 1); }) == errc::eps_out_of_range);
  CHECK(code_of([] { matlift::lift_bound(1, 1, 2, 4, 0.6, 1); }) == errc::eps_out_of_range);
  CHECK(code_of([] { matlift::lift_bound(1, 1, 2, 1, 0.25, 1); }) == errc::invalid_argument);
  CHECK(code_of([] { matlift::lift_bound(1, 1, 0, 4, 0.25, 1); }) == errc::invalid_argument);
}

TEST_CASE("lift_bound_optimized undercuts every grid point") {
  const double sigma = 1.3, sigma_star = 0.7;
  const long k = 3, n = 50;
  const double c = 2.0;
  auto opt = matlift::lift_bound_optimized(sigma, sigma_star, k, n, c);
  CHECK(opt.eps_star > 0.0);
  CHECK(opt.eps_star <= 0.5);
  CHECK(opt.value ==
        doctest::Approx(matlift::lift_bound(sigma, sigma_star, k, n, opt.eps_star, c))
            .epsilon(1e-12));
  for (int i = 1; i <= 100; ++i) {
    double eps = 0.5 * i / 100.0;
    CHECK(opt.value <= matlift::lift_bound(sigma, sigma_star, k, n, eps, c) + 1e-12);
  }

  // sigma_star = 0 kills the second term: optimum is the eps -> 0 limit.
  auto degenerate = matlift::lift_bound_optimized(2.0, 0.0, 2, 10, 1.0);
  CHECK(degenerate.value == doctest::Approx(4.0).epsilon(1e-3));
}

TEST_CASE("klift_bound is the sqrt-degree specialization") {
  CHECK(matlift::klift_bound(3, 3, 10, 0.5, 1.0) ==
        doctest::Approx(8.092423279967573).epsilon(1e-14));
  CHECK(matlift::klift_bound(3, 3, 10, 0.5, 1.0) ==
        doctest::Approx(matlift::lift_bound(std::sqrt(3.0), 1.0, 3, 10, 0.5, 1.0))
            .epsilon(1e-15));
  CHECK(code_of([] { matlift::klift_bound(-1, 2, 10, 0.25, 1.0); }) == errc::invalid_argument);
}

TEST_CASE("empirical_constant inverts lift_bound") {
  const double sigma = 1.7, sigma_star = 0.9;
  const long k = 4, n = 30;
  const double eps = 0.3;
  for (double c : {0.5, 1.0, 10.0}) {
    double observed = matlift::lift_bound(sigma, sigma_star, k, n, eps, c);
    auto inv = matlift::empirical_constant(observed, sigma, sigma_star, k, n, eps);
    CHECK_FALSE(inv.first_term_dominates);
    CHECK(inv.c == doctest::Approx(c).epsilon(1e-12));
  }

  double floor = 2.0 * (1.0 + eps) * sigma;
  auto dom = matlift::empirical_constant(floor - 0.1, sigma, sigma_star, k, n, eps);
  CHECK(dom.first_term_dominates);
  CHECK(dom.c == 0.0);

  CHECK(code_of([&] { matlift::empirical_constant(1.0, sigma, 0.0, k, n, eps); }) ==
        errc::invalid_argument);
}
