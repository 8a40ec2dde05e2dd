#include "matlift/rng.hpp"

#include <cmath>

#include "matlift/error.hpp"

namespace matlift {

namespace {

inline uint64_t splitmix64(uint64_t& x) {
  x += 0x9e3779b97f4a7c15ULL;
  uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline uint64_t mix64(uint64_t x) { return splitmix64(x); }

inline uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

RngState::RngState(uint64_t master_seed, uint64_t stream_id)
    : master_seed_(master_seed), stream_id_(stream_id) {
  // Seed material folds both identifiers through splitmix64 so that nearby
  // (seed, stream) pairs land in unrelated states.
  uint64_t acc = master_seed ^ rotl(mix64(stream_id), 17);
  for (auto& w : s_) w = splitmix64(acc);
  // xoshiro must not start at the all-zero state; splitmix output makes that
  // astronomically unlikely but the guard is free.
  if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;
}

RngState RngState::substream(uint64_t index) const {
  uint64_t child = stream_id_ ^ mix64(index + 0x9e3779b97f4a7c15ULL);
  return RngState(master_seed_, child);
}

uint64_t RngState::next_u64() {
  uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
  uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double RngState::uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

uint64_t RngState::uniform_below(uint64_t bound) {
  require(bound > 0, errc::invalid_argument, "uniform_below: bound must be positive");
  if (bound == 1) return 0;
  uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    uint64_t r = next_u64();
    if (r >= threshold) return r % bound;
  }
}

double RngState::normal() {
  if (has_cached_normal_) {
    has_cached_normal_ = false;
    return cached_normal_;
  }
  double u1, u2;
  do {
    u1 = uniform01();
  } while (u1 == 0.0);
  u2 = uniform01();
  double r = std::sqrt(-2.0 * std::log(u1));
  double a = 6.283185307179586476925286766559 * u2;
  cached_normal_ = r * std::sin(a);
  has_cached_normal_ = true;
  return r * std::cos(a);
}

void RngState::shuffle(std::vector<int>& v) {
  for (size_t i = v.size(); i > 1; --i) {
    size_t j = static_cast<size_t>(uniform_below(i));
    std::swap(v[i - 1], v[j]);
  }
}

const char* errc_name(errc c) {
  switch (c) {
    case errc::ok: return "ok";
    case errc::invalid_argument: return "invalid_argument";
    case errc::asymmetric_input: return "asymmetric_input";
    case errc::nonzero_diagonal: return "nonzero_diagonal";
    case errc::not_centered: return "not_centered";
    case errc::continuous_support: return "continuous_support";
    case errc::not_scalar: return "not_scalar";
    case errc::dimension_mismatch: return "dimension_mismatch";
    case errc::too_large: return "too_large";
    case errc::not_symmetric: return "not_symmetric";
    case errc::span_exceeds_n: return "span_exceeds_n";
    case errc::sigma_star_too_large: return "sigma_star_too_large";
    case errc::budget_exceeded: return "budget_exceeded";
    case errc::eps_out_of_range: return "eps_out_of_range";
    case errc::config_error: return "config_error";
    case errc::io_error: return "io_error";
    case errc::not_converged: return "not_converged";
    case errc::internal: return "internal";
  }
  return "unknown";
}

}  // namespace matlift
