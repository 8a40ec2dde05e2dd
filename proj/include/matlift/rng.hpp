#pragma once

#include <cstdint>
#include <vector>

namespace matlift {

// Counter-free splittable RNG. A stream is identified by (master_seed,
// stream_id); the same pair always yields the same sample sequence, on any
// platform, regardless of what other streams were drawn in between. That is
// the whole reproducibility story for parallel experiments: every trial owns
// a derived stream and never touches anyone else's.
//
// Generator: xoshiro256++ seeded through splitmix64, both implemented here
// rather than taken from <random> because libstdc++ does not pin down the
// mapping from bits to doubles in distributions and we need bit-exact runs.
class RngState {
 public:
  RngState(uint64_t master_seed, uint64_t stream_id);

  uint64_t master_seed() const { return master_seed_; }
  uint64_t stream_id() const { return stream_id_; }

  // Child stream derivation mixes the index into the stream id, so
  // substream(i) != substream(j) for i != j and children never collide with
  // the parent in practice.
  RngState substream(uint64_t index) const;

  uint64_t next_u64();

  // Uniform on [0, 1): top 53 bits scaled by 2^-53.
  double uniform01();

  // Uniform integer in [0, bound) by rejection; no modulo bias. bound > 0.
  uint64_t uniform_below(uint64_t bound);

  // Standard normal via Box-Muller; pairs are cached.
  double normal();

  // In-place Fisher-Yates; deterministic given the stream position.
  void shuffle(std::vector<int>& v);

 private:
  uint64_t s_[4];
  uint64_t master_seed_;
  uint64_t stream_id_;
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

}  // namespace matlift
