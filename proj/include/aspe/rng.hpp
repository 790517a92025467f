#pragma once

#include <cstdint>
#include <random>

namespace aspe {

/// Seeded random stream.
///
/// Draws are reproducible across platforms: the engine is mt19937_64 seeded
/// through std::seed_seq (both fully specified by the standard), and integer
/// ranges use rejection sampling rather than an implementation-defined
/// distribution.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t next() { return engine_(); }

  /// Uniform on the closed range [lo, hi].
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

  /// Uniform bit.
  int bit() { return static_cast<int>(engine_() >> 63); }

 private:
  std::mt19937_64 engine_;
};

/// SplitMix64 finalizer; used to derive well-separated child seeds.
std::uint64_t mix_seed(std::uint64_t x);

/// Seed of child `index` under `master`.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

}  // namespace aspe
