#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace matlift {

// Pairwise (tree) summation. Used wherever per-trial results are merged so
// that totals do not depend on thread count or accumulation order.
inline double pairwise_sum(const double* x, size_t count) {
  if (count == 0) return 0.0;
  if (count <= 8) {
    double s = 0.0;
    for (size_t i = 0; i < count; ++i) s += x[i];
    return s;
  }
  size_t half = count / 2;
  return pairwise_sum(x, half) + pairwise_sum(x + half, count - half);
}

inline double pairwise_sum(const std::vector<double>& x) { return pairwise_sum(x.data(), x.size()); }

struct MeanStderr {
  double mean = 0.0;
  double stderr_ = 0.0;
};

// Sample mean and standard error (Bessel-corrected), deterministic via
// pairwise sums.
inline MeanStderr mean_stderr(const std::vector<double>& x) {
  MeanStderr out;
  const size_t t = x.size();
  if (t == 0) return out;
  out.mean = pairwise_sum(x) / static_cast<double>(t);
  if (t < 2) return out;
  std::vector<double> sq(t);
  for (size_t i = 0; i < t; ++i) sq[i] = (x[i] - out.mean) * (x[i] - out.mean);
  double var = pairwise_sum(sq) / static_cast<double>(t - 1);
  out.stderr_ = std::sqrt(var / static_cast<double>(t));
  return out;
}

}  // namespace matlift
