#pragma once

#include <vector>

#include "matlift/base_matrix.hpp"
#include "matlift/distributions.hpp"
#include "matlift/rng.hpp"

namespace matlift {

// A closed walk u_1 -> ... -> u_2p -> u_1; the closing step is implicit.
using Cycle = std::vector<int>;

// First-appearance relabeling of a cycle: labels[0] == 1 and label t+1 never
// appears before t. Two cycles have equal shape iff they differ by an
// injective vertex rename.
using CycleShape = std::vector<int>;

CycleShape shape_of(const Cycle& c);

// Max label = number of distinct vertices visited.
int span(const CycleShape& s);

// All length-2p shapes in which every undirected step edge (closing step
// included) appears at least twice. Self-loop steps are excluded throughout:
// the base matrices have zero diagonal, so walks stepping in place
// contribute nothing. p <= 5.
std::vector<CycleShape> enumerate_shapes(int p);

// All cycles with shape s and u_1 = u: injective assignments of labels to
// vertices of [0, n) fixing label 1 -> u. Count is the falling factorial
// (n-1)(n-2)...(n-span+1).
std::vector<Cycle> enumerate_cycles_of_shape(const CycleShape& s, int u, int n);

// Product of |A| entries along the walk, closing step included.
double path_weight(const BaseMatrix& a, const Cycle& c);

struct BoundCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  bool ok = false;
};

// Row-norm bound on shape-restricted path sums: sum of path_weight over all
// cycles of shape s starting at u is at most sigma^(2(span-1)).
// Requires sigma_star(A) <= 1.
BoundCheck check_path_weight_bound(const BaseMatrix& a, const CycleShape& s, int u);

// The Y comparison dimension: ceil(sigma^2) + p, with the ceiling snapped
// down when sigma^2 sits within 1e-9 above an integer (squaring a
// root-integral sigma must not bump the rank).
int comparison_dim(double sigma, int p);

// Exact E Tr[(lift of A)^(2p)] for a finite-support centered law: sums over
// every closed walk whose edges all repeat, enumerating the joint support of
// the walk's distinct edges. budget caps the estimated elementary-op count.
double exact_trace_moment(const BaseMatrix& a, const LiftDistribution& dist, int p,
                          double budget = 1e8);

struct MomentEstimate {
  double mean = 0.0;
  double stderr_ = 0.0;
};

// Monte Carlo estimate of the same moment over independent lifts.
MomentEstimate mc_trace_moment(const BaseMatrix& a, const LiftDistribution& dist, int p,
                               long trials, RngState& rng);

// Exact E Tr[Y_r^(2p)]: Y_r is r x r symmetric, zero diagonal, i.i.d.
// entries sqrt(3) w.p. 1/4 and -1/sqrt(3) w.p. 3/4. Independence factorizes
// the expectation over distinct edges of each shape, so this reduces to
// scalar moments. p <= 5.
double y_trace_moment_exact(int r, int p);

MomentEstimate y_trace_moment_mc(int r, int p, long trials, RngState& rng);

struct MomentCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  bool ok = false;
  // Standard errors are zero in exact mode.
  double stderr_lhs = 0.0;
  double stderr_rhs = 0.0;
  bool exact = true;
};

// Trace-moment comparison: E Tr[(lift)^(2p)] <= (kn/r) E Tr[Y_r^(2p)] with
// r = comparison_dim(sigma, p). Exact mode uses the two exact oracles and a
// 1e-9 tolerance; mc mode uses both MC estimators and a five-standard-error
// band. Requires sigma_star(A) <= 1.
MomentCheck check_prop_compare(const BaseMatrix& a, const LiftDistribution& dist, int p,
                               bool exact = true, long trials = 0, RngState* rng = nullptr);

// Lower bound on the Y trace moment: E Tr[Y_r^(2p)] >= r * sum over shapes
// of sigma^(2(span-1)), with r = comparison_dim(sigma, p). p <= 3.
BoundCheck check_y_lower_bound(double sigma, int p);

}  // namespace matlift
