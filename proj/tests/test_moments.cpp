#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "doctest.h"
#include "matlift/error.hpp"
#include "matlift/graph.hpp"
#include "matlift/moments.hpp"
#include "test_util.hpp"

using matlift::BaseMatrix;
using matlift::Cycle;
using matlift::CycleShape;
using matlift::errc;
using matlift::LiftDistribution;
using matlift::RngState;
using test_util::code_of;

namespace {

// Every cyclic step {u_t, u_{t+1}} (closing step included) must appear at
// least twice as an undirected edge, and no step may stay in place.
bool edges_repeat(const Cycle& c) {
  const int len = static_cast<int>(c.size());
  std::vector<std::pair<int, int>> steps;
  for (int t = 0; t < len; ++t) {
    int x = c[t], y = c[(t + 1) % len];
    if (x == y) return false;
    steps.emplace_back(std::min(x, y), std::max(x, y));
  }
  for (const auto& e : steps)
    if (std::count(steps.begin(), steps.end(), e) < 2) return false;
  return true;
}

// Reference shape enumeration: walk every no-self-loop cycle over 2p labels
// starting at 0 and keep the canonical forms whose edges all repeat.
std::set<CycleShape> brute_shapes(int p) {
  const int len = 2 * p;
  std::set<CycleShape> out;
  Cycle c(len, 0);
  // odometer over c[1..len) in [0, len)
  while (true) {
    if (edges_repeat(c)) out.insert(matlift::shape_of(c));
    int t = len - 1;
    while (t >= 1 && c[t] == len - 1) c[t--] = 0;
    if (t < 1) break;
    ++c[t];
  }
  return out;
}

double trace_pow(const Eigen::MatrixXd& m, int exponent) {
  Eigen::MatrixXd acc = m;
  for (int t = 1; t < exponent; ++t) acc = acc * m;
  return acc.trace();
}

}  // namespace

TEST_CASE("shape_of relabels by first appearance") {
  Cycle c{4, 7, 2, 7, 9, 4, 5, 4};
  CycleShape s = matlift::shape_of(c);
  CHECK(s == CycleShape{1, 2, 3, 2, 4, 1, 5, 1});
  CHECK(matlift::span(s) == 5);

  // idempotent on a shape
  CHECK(matlift::shape_of(s) == s);
  CHECK(matlift::shape_of(Cycle{3, 3, 3, 3}) == CycleShape{1, 1, 1, 1});
}

TEST_CASE("shape validation") {
  CHECK(code_of([] { matlift::span(CycleShape{}); }) == errc::invalid_argument);
  CHECK(code_of([] { matlift::enumerate_cycles_of_shape({1, 3}, 0, 9); }) ==
        errc::invalid_argument);  // label 3 before 2
  CHECK(code_of([] { matlift::enumerate_cycles_of_shape({1, 2, 1}, 0, 9); }) ==
        errc::invalid_argument);  // odd length
}

TEST_CASE("enumerate_shapes counts and cross-check") {
  CHECK(matlift::enumerate_shapes(1).size() == 1);
  CHECK(matlift::enumerate_shapes(2).size() == 3);
  CHECK(matlift::enumerate_shapes(3).size() == 16);
  CHECK(matlift::enumerate_shapes(4).size() == 122);

  for (int p = 1; p <= 3; ++p) {
    auto listed = matlift::enumerate_shapes(p);
    std::set<CycleShape> got(listed.begin(), listed.end());
    CHECK(got.size() == listed.size());  // no duplicates
    CHECK(got == brute_shapes(p));
  }

  // p = 5 is too big to cross-check exhaustively; validate the properties.
  auto big = matlift::enumerate_shapes(5);
  CHECK(big.size() > 122);
  for (const auto& s : big) {
    REQUIRE(s.size() == 10);
    CHECK(s[0] == 1);
    int max_label = 0;
    for (int label : s) {
      CHECK(label <= max_label + 1);
      max_label = std::max(max_label, label);
    }
    CHECK(edges_repeat(s));
  }

  CHECK(code_of([] { matlift::enumerate_shapes(0); }) == errc::invalid_argument);
  CHECK(code_of([] { matlift::enumerate_shapes(6); }) == errc::too_large);
}

TEST_CASE("enumerate_cycles_of_shape hits the falling factorial") {
  CycleShape s{1, 2, 3, 2};
  auto cycles = matlift::enumerate_cycles_of_shape(s, 0, 5);
  CHECK(cycles.size() == 12);  // (5-1)(5-2)
  std::set<Cycle> uniq(cycles.begin(), cycles.end());
  CHECK(uniq.size() == cycles.size());
  for (const auto& c : cycles) {
    CHECK(c[0] == 0);
    CHECK(matlift::shape_of(c) == s);
  }

  CHECK(matlift::enumerate_cycles_of_shape({1, 2}, 3, 4).size() == 3);
  CHECK(code_of([&] { matlift::enumerate_cycles_of_shape(s, 0, 2); }) == errc::span_exceeds_n);
  CHECK(code_of([&] { matlift::enumerate_cycles_of_shape(s, 5, 5); }) == errc::invalid_argument);
}

TEST_CASE("path_weight multiplies entries along the closed walk") {
  auto k4 = matlift::adjacency_from_graph(matlift::complete_graph(4));
  CHECK(matlift::path_weight(k4, {0, 1, 2, 3}) == 1.0);
  CHECK(matlift::path_weight(k4, {0, 1}) == 1.0);

  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(3, 3);
  w(0, 1) = w(1, 0) = 0.5;
  w(1, 2) = w(2, 1) = 3.0;
  auto a = matlift::validate_base(w);
  CHECK(matlift::path_weight(a, {0, 1, 2, 1}) == doctest::Approx(2.25).epsilon(1e-14));
  CHECK(matlift::path_weight(a, {0, 2}) == 0.0);  // non-edge
}

TEST_CASE("path weight bound: frozen instances") {
  auto k4 = matlift::adjacency_from_graph(matlift::complete_graph(4));
  auto r = matlift::check_path_weight_bound(k4, {1, 2}, 0);
  CHECK(r.lhs == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(r.rhs == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(r.ok);

  auto k3 = matlift::adjacency_from_graph(matlift::complete_graph(3));
  r = matlift::check_path_weight_bound(k3, {1, 2, 1, 3}, 0);
  CHECK(r.lhs == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(r.rhs == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(r.ok);

  auto p3 = matlift::adjacency_from_graph(matlift::path_graph(3));
  r = matlift::check_path_weight_bound(p3, {1, 2, 3, 2}, 0);
  CHECK(r.lhs == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.rhs == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(r.ok);

  auto scaled = matlift::validate_base(2.0 * k4.entries());
  CHECK(code_of([&] { matlift::check_path_weight_bound(scaled, {1, 2}, 0); }) ==
        errc::sigma_star_too_large);
}

TEST_CASE("comparison_dim snaps near-integer sigma^2 down") {
  CHECK(matlift::comparison_dim(1.0, 1) == 2);
  CHECK(matlift::comparison_dim(std::sqrt(2.0), 1) == 3);   // 2.0000000000000004 -> 2
  CHECK(matlift::comparison_dim(std::sqrt(2.0), 2) == 4);
  CHECK(matlift::comparison_dim(std::sqrt(3.0), 2) == 5);
  CHECK(matlift::comparison_dim(1.5, 1) == 4);              // 2.25 -> 3
  CHECK(code_of([] { matlift::comparison_dim(-1.0, 1); }) == errc::invalid_argument);
  CHECK(code_of([] { matlift::comparison_dim(1.0, 0); }) == errc::invalid_argument);
}

TEST_CASE("exact trace moments: frozen battery") {
  auto p2 = matlift::adjacency_from_graph(matlift::path_graph(2));
  auto p3 = matlift::adjacency_from_graph(matlift::path_graph(3));
  auto k3 = matlift::adjacency_from_graph(matlift::complete_graph(3));
  auto rad = LiftDistribution::make_rademacher();
  auto cp2 = LiftDistribution::make_centered_permutation(2);

  CHECK(matlift::exact_trace_moment(p2, rad, 1) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(matlift::exact_trace_moment(p2, rad, 2) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(matlift::exact_trace_moment(k3, cp2, 1) == doctest::Approx(6.0).epsilon(1e-12));
  CHECK(matlift::exact_trace_moment(k3, cp2, 2) == doctest::Approx(18.0).epsilon(1e-12));
  CHECK(matlift::exact_trace_moment(p3, rad, 1) == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(matlift::exact_trace_moment(p3, rad, 2) == doctest::Approx(8.0).epsilon(1e-12));
}

TEST_CASE("exact trace moment vs dense enumeration: K_3 centered 2-lift") {
  // 3 edges, 2 permutations each: 8 equally likely dense 6x6 lifts.
  Eigen::MatrixXd id2 = Eigen::MatrixXd::Identity(2, 2);
  Eigen::MatrixXd swap(2, 2);
  swap << 0, 1, 1, 0;
  Eigen::MatrixXd half = Eigen::MatrixXd::Constant(2, 2, 0.5);
  const Eigen::MatrixXd block[2] = {id2 - half, swap - half};
  const std::pair<int, int> edges[3] = {{0, 1}, {0, 2}, {1, 2}};

  for (int p = 1; p <= 2; ++p) {
    double acc = 0.0;
    for (int combo = 0; combo < 8; ++combo) {
      Eigen::MatrixXd m = Eigen::MatrixXd::Zero(6, 6);
      for (int e = 0; e < 3; ++e) {
        const Eigen::MatrixXd& b = block[(combo >> e) & 1];
        auto [i, j] = edges[e];
        m.block(2 * i, 2 * j, 2, 2) = b;
        m.block(2 * j, 2 * i, 2, 2) = b.transpose();
      }
      acc += trace_pow(m, 2 * p);
    }
    double brute = acc / 8.0;
    auto k3 = matlift::adjacency_from_graph(matlift::complete_graph(3));
    double exact =
        matlift::exact_trace_moment(k3, LiftDistribution::make_centered_permutation(2), p);
    CHECK(exact == doctest::Approx(brute).epsilon(1e-11));
  }
}

TEST_CASE("exact trace moment vs sign enumeration: path(3) rademacher") {
  auto p3 = matlift::adjacency_from_graph(matlift::path_graph(3));
  for (int p = 1; p <= 2; ++p) {
    double acc = 0.0;
    for (int combo = 0; combo < 4; ++combo) {
      Eigen::MatrixXd m = Eigen::MatrixXd::Zero(3, 3);
      m(0, 1) = m(1, 0) = (combo & 1) ? 1.0 : -1.0;
      m(1, 2) = m(2, 1) = (combo & 2) ? 1.0 : -1.0;
      acc += trace_pow(m, 2 * p);
    }
    double brute = acc / 4.0;
    double exact = matlift::exact_trace_moment(p3, LiftDistribution::make_rademacher(), p);
    CHECK(exact == doctest::Approx(brute).epsilon(1e-12));
  }
}

TEST_CASE("exact trace moment guards") {
  auto k3 = matlift::adjacency_from_graph(matlift::complete_graph(3));
  auto cp2 = LiftDistribution::make_centered_permutation(2);
  CHECK(code_of([&] { matlift::exact_trace_moment(k3, cp2, 2, 10.0); }) ==
        errc::budget_exceeded);
  CHECK(code_of([&] { matlift::exact_trace_moment(k3, cp2, 0); }) == errc::invalid_argument);

  Eigen::MatrixXd one(1, 1);
  one << 1.0;
  auto shifted =
      LiftDistribution::make_discrete_unchecked(1, {matlift::Atom{one, 1.0}});
  CHECK(code_of([&] { matlift::exact_trace_moment(k3, shifted, 1); }) == errc::invalid_argument);
}

TEST_CASE("monte carlo trace moment brackets the exact value") {
  // Every signing of K_3 is switching-equivalent, so the 2-lift trace moment
  // is the same constant for all draws: the estimator must report zero
  // spread and hit the exact value outright.
  auto k3 = matlift::adjacency_from_graph(matlift::complete_graph(3));
  auto cp2 = LiftDistribution::make_centered_permutation(2);
  double exact3 = matlift::exact_trace_moment(k3, cp2, 2);
  RngState rng(7, 0);
  auto est3 = matlift::mc_trace_moment(k3, cp2, 2, 200, rng);
  CHECK(est3.stderr_ == 0.0);
  CHECK(est3.mean == doctest::Approx(exact3).epsilon(1e-12));

  // K_4 has inequivalent signings, so the spread is genuine.
  auto k4 = matlift::adjacency_from_graph(matlift::complete_graph(4));
  double exact4 = matlift::exact_trace_moment(k4, cp2, 2);
  RngState r4(7, 2);
  auto est4 = matlift::mc_trace_moment(k4, cp2, 2, 20000, r4);
  CHECK(est4.stderr_ > 0.0);
  CHECK(std::abs(est4.mean - exact4) <= 5.0 * est4.stderr_ + 1e-9);

  RngState r2(7, 1);
  CHECK(code_of([&] { matlift::mc_trace_moment(k3, cp2, 2, 1, r2); }) == errc::invalid_argument);
  CHECK(code_of([&] { matlift::mc_trace_moment(k3, cp2, 0, 10, r2); }) == errc::invalid_argument);
}

TEST_CASE("Y trace moments: frozen values and weighted enumeration") {
  CHECK(matlift::y_trace_moment_exact(2, 1) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(matlift::y_trace_moment_exact(3, 1) == doctest::Approx(6.0).epsilon(1e-12));
  CHECK(matlift::y_trace_moment_exact(2, 2) == doctest::Approx(14.0 / 3.0).epsilon(1e-12));
  CHECK(matlift::y_trace_moment_exact(3, 2) == doctest::Approx(26.0).epsilon(1e-12));
  CHECK(matlift::y_trace_moment_exact(4, 2) == doctest::Approx(76.0).epsilon(1e-12));
  CHECK(matlift::y_trace_moment_exact(3, 3) == doctest::Approx(446.0 / 3.0).epsilon(1e-12));
  CHECK(matlift::y_trace_moment_exact(5, 2) == doctest::Approx(500.0 / 3.0).epsilon(1e-12));

  // Independent route: enumerate all 2^(r choose 2) entry assignments with
  // their probabilities.
  const double hi = std::sqrt(3.0), lo = -1.0 / std::sqrt(3.0);
  for (int r = 2; r <= 4; ++r) {
    const int m = r * (r - 1) / 2;
    for (int p = 1; p <= 2; ++p) {
      double acc = 0.0;
      for (long combo = 0; combo < (1L << m); ++combo) {
        Eigen::MatrixXd y = Eigen::MatrixXd::Zero(r, r);
        double prob = 1.0;
        int bit = 0;
        for (int i = 0; i < r; ++i)
          for (int j = i + 1; j < r; ++j, ++bit) {
            bool up = (combo >> bit) & 1;
            y(i, j) = y(j, i) = up ? hi : lo;
            prob *= up ? 0.25 : 0.75;
          }
        acc += prob * trace_pow(y, 2 * p);
      }
      CHECK(matlift::y_trace_moment_exact(r, p) == doctest::Approx(acc).epsilon(1e-11));
    }
  }

  RngState rng(11, 0);
  auto est = matlift::y_trace_moment_mc(3, 2, 40000, rng);
  CHECK(std::abs(est.mean - 26.0) <= 5.0 * est.stderr_);
  CHECK(code_of([] { matlift::y_trace_moment_exact(0, 1); }) == errc::invalid_argument);
}

TEST_CASE("moment comparison: exact battery with its equality case") {
  auto p2 = matlift::adjacency_from_graph(matlift::path_graph(2));
  auto p3 = matlift::adjacency_from_graph(matlift::path_graph(3));
  auto k3 = matlift::adjacency_from_graph(matlift::complete_graph(3));
  auto rad = LiftDistribution::make_rademacher();
  auto cp2 = LiftDistribution::make_centered_permutation(2);

  auto c = matlift::check_prop_compare(p2, rad, 1);
  CHECK(c.exact);
  CHECK(c.ok);
  CHECK(c.lhs == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(c.rhs == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(std::abs(c.lhs - c.rhs) <= 1e-9);  // tight: the bound is achieved here

  c = matlift::check_prop_compare(p2, rad, 2);
  CHECK(c.ok);
  CHECK(c.rhs == doctest::Approx(52.0 / 3.0).epsilon(1e-12));

  c = matlift::check_prop_compare(k3, cp2, 1);
  CHECK(c.ok);
  CHECK(c.lhs == doctest::Approx(6.0).epsilon(1e-12));
  CHECK(c.rhs == doctest::Approx(12.0).epsilon(1e-12));

  c = matlift::check_prop_compare(k3, cp2, 2);
  CHECK(c.ok);
  CHECK(c.lhs == doctest::Approx(18.0).epsilon(1e-12));
  CHECK(c.rhs == doctest::Approx(114.0).epsilon(1e-12));

  c = matlift::check_prop_compare(p3, rad, 1);
  CHECK(c.ok);
  CHECK(c.lhs == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(c.rhs == doctest::Approx(6.0).epsilon(1e-12));

  c = matlift::check_prop_compare(p3, rad, 2);
  CHECK(c.ok);
  CHECK(c.lhs == doctest::Approx(8.0).epsilon(1e-12));
  CHECK(c.rhs == doctest::Approx(57.0).epsilon(1e-12));
}

TEST_CASE("moment comparison: mc mode and guards") {
  // p = 1 keeps the lifted trace deterministic (the squared Frobenius
  // distance of a permutation from J/k is k-1 for every draw), so exercise
  // the sampler at p = 2 on a base with inequivalent signings.
  auto k3 = matlift::adjacency_from_graph(matlift::complete_graph(3));
  auto k4 = matlift::adjacency_from_graph(matlift::complete_graph(4));
  auto cp2 = LiftDistribution::make_centered_permutation(2);
  double lhs_exact = matlift::exact_trace_moment(k4, cp2, 2);
  // sigma(K_4) = sqrt(3), so r = 3 + 2 = 5 and the rhs carries k*n/r.
  const int r = matlift::comparison_dim(matlift::compute_spread(k4).sigma, 2);
  CHECK(r == 5);
  double rhs_exact = 2.0 * 4.0 / r * matlift::y_trace_moment_exact(r, 2);
  RngState rng(13, 0);
  auto c = matlift::check_prop_compare(k4, cp2, 2, /*exact=*/false, 4000, &rng);
  CHECK_FALSE(c.exact);
  CHECK(c.ok);
  CHECK(c.stderr_lhs > 0.0);
  CHECK(c.stderr_rhs > 0.0);
  CHECK(std::abs(c.lhs - lhs_exact) <= 5.0 * c.stderr_lhs + 1e-9);
  CHECK(std::abs(c.rhs - rhs_exact) <= 5.0 * c.stderr_rhs + 1e-9);

  CHECK(code_of([&] { matlift::check_prop_compare(k3, cp2, 1, false, 100, nullptr); }) ==
        errc::invalid_argument);
  auto scaled = matlift::validate_base(3.0 * k3.entries());
  CHECK(code_of([&] { matlift::check_prop_compare(scaled, cp2, 1); }) ==
        errc::sigma_star_too_large);
}

TEST_CASE("Y lower bound table") {
  auto r = matlift::check_y_lower_bound(1.0, 1);
  CHECK(r.ok);
  CHECK(r.lhs == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(r.rhs == doctest::Approx(2.0).epsilon(1e-12));

  r = matlift::check_y_lower_bound(1.0, 2);
  CHECK(r.ok);
  CHECK(r.lhs == doctest::Approx(26.0).epsilon(1e-12));
  CHECK(r.rhs == doctest::Approx(9.0).epsilon(1e-12));

  r = matlift::check_y_lower_bound(std::sqrt(2.0), 1);
  CHECK(r.ok);
  CHECK(r.lhs == doctest::Approx(6.0).epsilon(1e-12));
  CHECK(r.rhs == doctest::Approx(6.0).epsilon(1e-12));

  r = matlift::check_y_lower_bound(std::sqrt(2.0), 2);
  CHECK(r.ok);
  CHECK(r.lhs == doctest::Approx(76.0).epsilon(1e-12));
  CHECK(r.rhs == doctest::Approx(40.0).epsilon(1e-12));

  r = matlift::check_y_lower_bound(std::sqrt(3.0), 1);
  CHECK(r.ok);
  CHECK(r.lhs == doctest::Approx(12.0).epsilon(1e-12));
  CHECK(r.rhs == doctest::Approx(12.0).epsilon(1e-12));

  r = matlift::check_y_lower_bound(std::sqrt(3.0), 2);
  CHECK(r.ok);
  CHECK(r.lhs == doctest::Approx(500.0 / 3.0).epsilon(1e-12));
  CHECK(r.rhs == doctest::Approx(105.0).epsilon(1e-12));

  for (double sigma : {1.0, std::sqrt(2.0), std::sqrt(3.0)})
    CHECK(matlift::check_y_lower_bound(sigma, 3).ok);

  CHECK(code_of([] { matlift::check_y_lower_bound(1.0, 4); }) == errc::budget_exceeded);
}
