#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace numapin {

/// Seeded random source with platform-independent output.
///
/// The engine is std::mt19937_64 (fully specified by the standard); the
/// distributions layered on top are written out here because the standard
/// library's distribution objects are implementation-defined, which would
/// break byte-identical traces across toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53 bits of resolution.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform integer on [0, n). n must be positive.
  std::size_t uniform_index(std::size_t n);

  /// Standard normal draw (Box-Muller, second variate cached).
  double normal();

  /// Independent child stream keyed by `key`. Consumes one draw from this stream.
  Rng split(std::uint64_t key);

  /// Child stream of a fixed `base` value; independent of call order.
  static Rng keyed(std::uint64_t base, std::uint64_t key) { return Rng(mix(base ^ mix(key))); }

  /// Deterministic 64-bit mixer (splitmix64 finaliser).
  static std::uint64_t mix(std::uint64_t x);

 private:
  std::mt19937_64 engine_;
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

}  // namespace numapin
