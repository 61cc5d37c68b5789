#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace hosb {

/// Seeded random source. The conversions to floating point are written out
/// explicitly so that streams are identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform on the open interval (0, 1).
  double uniform_open() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Uniform on the open interval (-1, 1); never returns exactly 0.
  double uniform_symmetric() { return 2.0 * uniform_open() - 1.0; }

  bool coin() { return (engine_() >> 63) != 0; }

  /// Unbiased integer in [0, bound).
  std::uint64_t below(std::uint64_t bound);

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

/// Run seed as a pure function of (base seed, stream, index).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream, std::uint64_t index);

/// Stable 64-bit hash of an identifier (FNV-1a), used to key seed streams by name.
std::uint64_t hash_id(std::string_view id);

}  // namespace hosb
