#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "doctest.h"
#include "matlift/rng.hpp"

using matlift::RngState;

TEST_CASE("identical (seed, stream) pairs replay the same sequence") {
  RngState a(123, 7), b(123, 7);
  for (int i = 0; i < 200; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("distinct streams decorrelate immediately") {
  RngState a(123, 7), b(123, 8), c(124, 7);
  bool differs_stream = false, differs_seed = false;
  RngState a2(123, 7), a3(123, 7);
  for (int i = 0; i < 8; ++i) {
    differs_stream = differs_stream || (a2.next_u64() != b.next_u64());
    differs_seed = differs_seed || (a3.next_u64() != c.next_u64());
  }
  CHECK(differs_stream);
  CHECK(differs_seed);
  (void)a;
}

TEST_CASE("substreams depend only on ids, never on parent draws") {
  RngState fresh(9, 1);
  uint64_t want = fresh.substream(4).next_u64();

  RngState drained(9, 1);
  for (int i = 0; i < 37; ++i) drained.next_u64();
  CHECK(drained.substream(4).next_u64() == want);

  std::set<uint64_t> ids;
  for (uint64_t i = 0; i < 1000; ++i) ids.insert(fresh.substream(i).stream_id());
  CHECK(ids.size() == 1000);
  CHECK(ids.count(fresh.stream_id()) == 0);
}

TEST_CASE("uniform01 stays in [0,1) with the right mean") {
  RngState rng(5, 0);
  const int n = 100000;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    double u = rng.uniform01();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    sum += u;
  }
  // se of the mean is (1/sqrt(12))/sqrt(n) ~ 9.1e-4
  CHECK(std::abs(sum / n - 0.5) < 5e-3);
}

TEST_CASE("uniform_below covers every residue without bias") {
  RngState rng(17, 3);
  const int n = 60000;
  std::map<uint64_t, int> counts;
  for (int i = 0; i < n; ++i) {
    uint64_t v = rng.uniform_below(6);
    REQUIRE(v < 6);
    ++counts[v];
  }
  CHECK(counts.size() == 6);
  // each bin: mean 10000, sd ~ 91
  for (const auto& [value, count] : counts) {
    (void)value;
    CHECK(std::abs(count - n / 6) < 500);
  }
  CHECK(rng.uniform_below(1) == 0);
}

TEST_CASE("normal passes loose moment checks") {
  RngState rng(11, 2);
  const int n = 200000;
  double sum = 0.0, sq = 0.0;
  for (int i = 0; i < n; ++i) {
    double x = rng.normal();
    sum += x;
    sq += x * x;
  }
  double mean = sum / n;
  double var = sq / n - mean * mean;
  CHECK(std::abs(mean) < 5.0 / std::sqrt(double(n)));
  CHECK(std::abs(var - 1.0) < 5.0 * std::sqrt(2.0 / n));
}

TEST_CASE("shuffle is a uniform permutation") {
  RngState rng(29, 4);
  const int n = 60000;
  std::map<std::vector<int>, int> counts;
  for (int i = 0; i < n; ++i) {
    std::vector<int> v{0, 1, 2};
    rng.shuffle(v);
    std::vector<int> sorted = v;
    std::sort(sorted.begin(), sorted.end());
    REQUIRE(sorted == std::vector<int>{0, 1, 2});
    ++counts[v];
  }
  CHECK(counts.size() == 6);
  // each of 6 perms: mean 10000, sd ~ 91
  for (const auto& [perm, count] : counts) {
    (void)perm;
    CHECK(std::abs(count - n / 6) < 500);
  }
}
