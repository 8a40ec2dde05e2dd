#include "matlift/moments.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <string>

#include "matlift/error.hpp"
#include "matlift/lift.hpp"
#include "matlift/stats.hpp"

namespace matlift {

namespace {

// Undirected step-edge multiplicities of a closed label sequence, closing
// step included.
std::map<std::pair<int, int>, int> edge_multiplicities(const std::vector<int>& walk) {
  std::map<std::pair<int, int>, int> mult;
  const size_t len = walk.size();
  for (size_t j = 0; j < len; ++j) {
    int a = walk[j], b = walk[(j + 1) % len];
    if (a > b) std::swap(a, b);
    ++mult[{a, b}];
  }
  return mult;
}

void shapes_dfs(std::vector<int>& seq, int max_label, int target_len,
                std::vector<CycleShape>& out) {
  if (static_cast<int>(seq.size()) == target_len) {
    if (seq.back() == seq.front()) return;  // closing step may not be a self-loop
    for (const auto& [edge, count] : edge_multiplicities(seq))
      if (count < 2) return;
    out.push_back(seq);
    return;
  }
  // Every edge currently traversed once needs at least one more visit; the
  // remaining forward steps plus the closing step are all that is left.
  int deficient = 0;
  {
    std::map<std::pair<int, int>, int> mult;
    for (size_t j = 0; j + 1 < seq.size(); ++j) {
      int a = seq[j], b = seq[j + 1];
      if (a > b) std::swap(a, b);
      ++mult[{a, b}];
    }
    for (const auto& [edge, count] : mult)
      if (count == 1) ++deficient;
  }
  int remaining = target_len - static_cast<int>(seq.size()) + 1;
  if (deficient > remaining) return;

  for (int v = 1; v <= max_label + 1; ++v) {
    if (v == seq.back()) continue;
    seq.push_back(v);
    shapes_dfs(seq, std::max(max_label, v), target_len, out);
    seq.pop_back();
  }
}

// Canonical-form check shared by the shape consumers. Self-loop steps are
// legal here (shape_of can produce them); only enumerate_shapes filters them.
void validate_shape(const CycleShape& s) {
  require(!s.empty() && s.size() % 2 == 0, errc::invalid_argument,
          "shape: length must be even and positive");
  require(s[0] == 1, errc::invalid_argument, "shape: first label must be 1");
  int max_label = 0;
  for (int label : s) {
    require(label >= 1 && label <= max_label + 1, errc::invalid_argument,
            "shape: labels must appear in first-use order");
    max_label = std::max(max_label, label);
  }
}

// Streams every cycle of the given shape starting at u without materializing
// the list. fn returns false to abort.
void for_each_cycle_of_shape(const CycleShape& s, int u, int n,
                             const std::function<bool(const Cycle&)>& fn) {
  validate_shape(s);
  const int m = span(s);
  require(m <= n, errc::span_exceeds_n,
          "cycle enumeration: shape spans " + std::to_string(m) + " vertices, n = " +
              std::to_string(n));
  require(u >= 0 && u < n, errc::invalid_argument, "cycle enumeration: start vertex out of range");

  std::vector<int> assign(m + 1, -1);
  std::vector<char> used(n, 0);
  assign[1] = u;
  used[u] = 1;
  Cycle cycle(s.size());

  std::function<bool(int)> rec = [&](int label) -> bool {
    if (label > m) {
      for (size_t t = 0; t < s.size(); ++t) cycle[t] = assign[s[t]];
      return fn(cycle);
    }
    for (int v = 0; v < n; ++v) {
      if (used[v]) continue;
      used[v] = 1;
      assign[label] = v;
      bool keep_going = rec(label + 1);
      used[v] = 0;
      if (!keep_going) return false;
    }
    return true;
  };
  rec(2);
}

double walk_coefficient(const BaseMatrix& a, const Cycle& c) {
  double w = 1.0;
  const size_t len = c.size();
  for (size_t j = 0; j < len; ++j) {
    w *= a(c[j], c[(j + 1) % len]);
    if (w == 0.0) return 0.0;
  }
  return w;
}

}  // namespace

CycleShape shape_of(const Cycle& c) {
  require(!c.empty() && c.size() % 2 == 0, errc::invalid_argument,
          "shape_of: cycle length must be even and positive");
  std::map<int, int> label;
  CycleShape s;
  s.reserve(c.size());
  int next = 1;
  for (int v : c) {
    auto [it, inserted] = label.try_emplace(v, next);
    if (inserted) ++next;
    s.push_back(it->second);
  }
  return s;
}

int span(const CycleShape& s) {
  require(!s.empty(), errc::invalid_argument, "span: empty shape");
  return *std::max_element(s.begin(), s.end());
}

std::vector<CycleShape> enumerate_shapes(int p) {
  require(p >= 1, errc::invalid_argument, "enumerate_shapes: need p >= 1");
  require(p <= 5, errc::too_large, "enumerate_shapes: p > 5");
  std::vector<CycleShape> out;
  std::vector<int> seq{1};
  shapes_dfs(seq, 1, 2 * p, out);
  return out;
}

std::vector<Cycle> enumerate_cycles_of_shape(const CycleShape& s, int u, int n) {
  std::vector<Cycle> out;
  for_each_cycle_of_shape(s, u, n, [&out](const Cycle& c) {
    out.push_back(c);
    return true;
  });
  return out;
}

double path_weight(const BaseMatrix& a, const Cycle& c) {
  require(!c.empty() && c.size() % 2 == 0, errc::invalid_argument,
          "path_weight: cycle length must be even and positive");
  double w = 1.0;
  const size_t len = c.size();
  for (size_t j = 0; j < len; ++j) {
    int x = c[j], y = c[(j + 1) % len];
    require(x >= 0 && x < a.n() && y >= 0 && y < a.n(), errc::invalid_argument,
            "path_weight: vertex out of range");
    w *= std::abs(a(x, y));
  }
  return w;
}

BoundCheck check_path_weight_bound(const BaseMatrix& a, const CycleShape& s, int u) {
  SpreadParams spread = compute_spread(a);
  require(spread.sigma_star <= 1.0 + 1e-12, errc::sigma_star_too_large,
          "check_path_weight_bound: requires sigma_star <= 1");
  BoundCheck out;
  for_each_cycle_of_shape(s, u, a.n(), [&](const Cycle& c) {
    out.lhs += path_weight(a, c);
    return true;
  });
  out.rhs = std::pow(spread.sigma, 2.0 * (span(s) - 1));
  out.ok = out.lhs <= out.rhs + 1e-12;
  return out;
}

int comparison_dim(double sigma, int p) {
  require(sigma >= 0.0, errc::invalid_argument, "comparison_dim: need sigma >= 0");
  require(p >= 1, errc::invalid_argument, "comparison_dim: need p >= 1");
  double x = sigma * sigma;
  double f = std::floor(x);
  // Snapped ceiling: sqrt(2)^2 lands a few ulps above 2 and must still give
  // ceil = 2, not 3.
  int c = (x - f <= 1e-9) ? static_cast<int>(f) : static_cast<int>(f) + 1;
  return c + p;
}

double exact_trace_moment(const BaseMatrix& a, const LiftDistribution& dist, int p,
                          double budget) {
  require(p >= 1, errc::invalid_argument, "exact_trace_moment: need p >= 1");
  std::vector<Atom> support = dist.enumerate_support();
  require(dist.mean().cwiseAbs().maxCoeff() <= 1e-9, errc::invalid_argument,
          "exact_trace_moment: repeated-edge walk sum is exact only for centered laws");
  const int n = a.n();
  const int k = dist.k();
  const int atom_count = static_cast<int>(support.size());
  const double step_cost = 2.0 * p * k * k * k + k;

  double ops = 0.0;
  double total = 0.0;
  const size_t len = 2 * static_cast<size_t>(p);
  std::vector<int> step_edge(len);
  std::vector<char> step_transposed(len);
  std::vector<std::pair<int, int>> edges;
  Eigen::MatrixXd prod(k, k), tmp(k, k);

  for (const CycleShape& s : enumerate_shapes(p)) {
    if (span(s) > n) continue;
    for (int u = 0; u < n; ++u) {
      for_each_cycle_of_shape(s, u, n, [&](const Cycle& c) {
        double coeff = walk_coefficient(a, c);
        if (coeff == 0.0) return true;

        edges.clear();
        for (size_t j = 0; j < len; ++j) {
          int x = c[j], y = c[(j + 1) % len];
          int lo = std::min(x, y), hi = std::max(x, y);
          auto it = std::find(edges.begin(), edges.end(), std::make_pair(lo, hi));
          if (it == edges.end()) {
            edges.emplace_back(lo, hi);
            it = std::prev(edges.end());
          }
          step_edge[j] = static_cast<int>(it - edges.begin());
          step_transposed[j] = (x > y);
        }
        const int d = static_cast<int>(edges.size());
        ops += std::pow(static_cast<double>(atom_count), d) * step_cost;
        require(ops <= budget, errc::budget_exceeded,
                "exact_trace_moment: joint-support enumeration exceeds budget");

        // Odometer over independent atom choices, one digit per distinct
        // edge of this walk.
        std::vector<int> digit(d, 0);
        for (;;) {
          double prob = 1.0;
          for (int e = 0; e < d; ++e) prob *= support[digit[e]].prob;
          prod.setIdentity();
          for (size_t j = 0; j < len; ++j) {
            const Eigen::MatrixXd& m = support[digit[step_edge[j]]].mat;
            if (step_transposed[j])
              tmp.noalias() = prod * m.transpose();
            else
              tmp.noalias() = prod * m;
            prod.swap(tmp);
          }
          total += coeff * prob * prod.trace();

          int e = 0;
          while (e < d && ++digit[e] == atom_count) digit[e++] = 0;
          if (e == d) break;
        }
        return true;
      });
    }
  }
  return total;
}

MomentEstimate mc_trace_moment(const BaseMatrix& a, const LiftDistribution& dist, int p,
                               long trials, RngState& rng) {
  require(p >= 1, errc::invalid_argument, "mc_trace_moment: need p >= 1");
  require(trials >= 2, errc::invalid_argument, "mc_trace_moment: need trials >= 2");
  std::vector<double> values(trials);
  const int dim = a.n() * dist.k();
  Eigen::VectorXd v(dim), w(dim);
  for (long t = 0; t < trials; ++t) {
    RngState stream = rng.substream(static_cast<uint64_t>(t));
    LiftedBlockMatrix lift = build_lift(a, dist, stream);
    // Tr[M^(2p)] summed column by column; exact up to roundoff.
    double trace = 0.0;
    for (int col = 0; col < dim; ++col) {
      v.setZero();
      v(col) = 1.0;
      for (int rep = 0; rep < 2 * p; ++rep) {
        lift.matvec(v.data(), w.data());
        v.swap(w);
      }
      trace += v(col);
    }
    values[t] = trace;
  }
  MeanStderr ms = mean_stderr(values);
  return {ms.mean, ms.stderr_};
}

double y_trace_moment_exact(int r, int p) {
  require(r >= 1, errc::invalid_argument, "y_trace_moment_exact: need r >= 1");
  LiftDistribution y = LiftDistribution::make_y_entry();
  double total = 0.0;
  for (const CycleShape& s : enumerate_shapes(p)) {
    const int m = span(s);
    if (m > r) continue;
    double count = 1.0;  // starting vertex free: r * (r-1) * ... * (r-m+1)
    for (int t = 0; t < m; ++t) count *= static_cast<double>(r - t);
    double factor = 1.0;
    for (const auto& [edge, mult] : edge_multiplicities(s)) factor *= y.moment_scalar(mult);
    total += count * factor;
  }
  return total;
}

MomentEstimate y_trace_moment_mc(int r, int p, long trials, RngState& rng) {
  require(r >= 1, errc::invalid_argument, "y_trace_moment_mc: need r >= 1");
  require(p >= 1, errc::invalid_argument, "y_trace_moment_mc: need p >= 1");
  require(trials >= 2, errc::invalid_argument, "y_trace_moment_mc: need trials >= 2");
  LiftDistribution y = LiftDistribution::make_y_entry();
  std::vector<double> values(trials);
  for (long t = 0; t < trials; ++t) {
    RngState stream = rng.substream(static_cast<uint64_t>(t));
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(r, r);
    for (int i = 0; i < r; ++i)
      for (int j = i + 1; j < r; ++j) m(i, j) = m(j, i) = y.sample(stream)(0, 0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
    double trace = 0.0;
    for (int i = 0; i < r; ++i) trace += std::pow(es.eigenvalues()(i), 2 * p);
    values[t] = trace;
  }
  MeanStderr ms = mean_stderr(values);
  return {ms.mean, ms.stderr_};
}

MomentCheck check_prop_compare(const BaseMatrix& a, const LiftDistribution& dist, int p,
                               bool exact, long trials, RngState* rng) {
  SpreadParams spread = compute_spread(a);
  require(spread.sigma_star <= 1.0 + 1e-12, errc::sigma_star_too_large,
          "check_prop_compare: requires sigma_star <= 1");
  const int r = comparison_dim(spread.sigma, p);
  const double scale = static_cast<double>(dist.k()) * a.n() / r;

  MomentCheck out;
  out.exact = exact;
  if (exact) {
    out.lhs = exact_trace_moment(a, dist, p);
    out.rhs = scale * y_trace_moment_exact(r, p);
    out.ok = out.lhs <= out.rhs + 1e-9;
    return out;
  }
  require(rng != nullptr && trials >= 2, errc::invalid_argument,
          "check_prop_compare: mc mode needs trials and an rng");
  RngState lhs_rng = rng->substream(1);
  RngState rhs_rng = rng->substream(2);
  MomentEstimate lhs = mc_trace_moment(a, dist, p, trials, lhs_rng);
  MomentEstimate y = y_trace_moment_mc(r, p, trials, rhs_rng);
  out.lhs = lhs.mean;
  out.rhs = scale * y.mean;
  out.stderr_lhs = lhs.stderr_;
  out.stderr_rhs = scale * y.stderr_;
  double slack = 5.0 * std::hypot(out.stderr_lhs, out.stderr_rhs) +
                 1e-12 * std::max(1.0, std::abs(out.rhs));
  out.ok = out.lhs <= out.rhs + slack;
  return out;
}

BoundCheck check_y_lower_bound(double sigma, int p) {
  require(p >= 1, errc::invalid_argument, "check_y_lower_bound: need p >= 1");
  require(p <= 3, errc::budget_exceeded, "check_y_lower_bound: exact mode limited to p <= 3");
  const int r = comparison_dim(sigma, p);
  BoundCheck out;
  out.lhs = y_trace_moment_exact(r, p);
  double shape_sum = 0.0;
  for (const CycleShape& s : enumerate_shapes(p))
    shape_sum += std::pow(sigma, 2.0 * (span(s) - 1));
  out.rhs = r * shape_sum;
  out.ok = out.lhs >= out.rhs - 1e-9;
  return out;
}

}  // namespace matlift
