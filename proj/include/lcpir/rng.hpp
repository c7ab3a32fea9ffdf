#pragma once

#include <cstdint>
#include <initializer_list>

#include "lcpir/field.hpp"

namespace lcpir {

/// Top-level stream labels, one per randomness consumer. Every draw in a
/// run is keyed by one of these plus its coordinates, so no two consumers
/// ever share a stream.
enum StreamLabel : std::uint64_t {
  kStorageStream = 1,
  kMaskStream = 2,
  kUserStream = 3,
  kAdversaryStream = 4,
  kDatabaseStream = 5,
  kProbeStream = 6,
  kTrialStream = 7,
};

/// Deterministic splittable generator (splitmix64 core). Children derived
/// from the same seed and label sequence always produce the same stream,
/// independent of evaluation order, so parallel and serial runs agree.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  /// Independent stream keyed by a label; does not advance this stream.
  Rng child(std::uint64_t label) const {
    return Rng(mix(state_ ^ mix(label + 0x9e3779b97f4a7c15ULL)));
  }

  Rng child(std::initializer_list<std::uint64_t> labels) const {
    Rng r = *this;
    for (std::uint64_t l : labels) r = r.child(l);
    return r;
  }

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix(state_);
  }

  /// Uniform residue via rejection sampling; bias-free for any q.
  Fe uniform(const Field& f) {
    const std::uint64_t q = f.modulus();
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % q;
    std::uint64_t r = next_u64();
    while (r >= limit) r = next_u64();
    return static_cast<Fe>(r % q);
  }

  /// Uniform nonzero residue.
  Fe uniform_nonzero(const Field& f) {
    Fe v = uniform(f);
    while (v == 0) v = uniform(f);
    return v;
  }

  /// Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t r = next_u64();
    while (r >= limit) r = next_u64();
    return r % bound;
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
};

}  // namespace lcpir
