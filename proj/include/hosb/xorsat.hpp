#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hosb/gf2.hpp"
#include "hosb/model.hpp"
#include "hosb/rng.hpp"

namespace hosb {

/// Three-regular 3-XORSAT instance: N clauses over N variables,
/// clause m reads s_{v_m1} s_{v_m2} s_{v_m3} = (-1)^{b_m}.
struct Xorsat3Instance {
  std::size_t n = 0;
  std::vector<std::array<VarIndex, 3>> clauses;
  BitVector parity;
  std::optional<BitVector> planted;

  friend bool operator==(const Xorsat3Instance&, const Xorsat3Instance&) = default;
};

/// Empty string when every structural invariant holds, otherwise the first
/// violation: column permutations, distinct indices per clause, distinct
/// clause sets, and A * planted = b when a planted assignment is present.
std::string check_instance(const Xorsat3Instance& inst);
void validate(const Xorsat3Instance& inst);

inline constexpr std::size_t kMinXorsatSize = 4;
inline constexpr std::size_t kDefaultGenerationAttempts = 100000;

/// Three uniform random permutations as clause columns, regenerated
/// wholesale until the clause invariants hold; then a uniform planted
/// assignment xi and b = A xi mod 2.
Xorsat3Instance generate_3r3x(std::size_t n, Rng& rng,
                              std::size_t max_attempts = kDefaultGenerationAttempts);

/// M x N clause/variable incidence matrix.
Gf2Matrix incidence_matrix(const Xorsat3Instance& inst);

/// Term m has coefficient (-1)^{b_m} on {v_m1, v_m2, v_m3}, so E >= -N with
/// equality exactly when every clause is satisfied.
PolyProblem to_polynomial(const Xorsat3Instance& inst);

/// s_i = (-1)^{xi_i}
SpinConfig spins_from_bits(std::span<const std::uint8_t> bits);
BitVector bits_from_spins(std::span<const std::int8_t> spins);

// Text format:
//   p xorsat3 <N>
//   <b_m> <v1> <v2> <v3>     (N lines, 0-based)
//   c planted <bitstring>    (optional)
Xorsat3Instance read_xorsat(std::istream& in);
Xorsat3Instance read_xorsat(const std::filesystem::path& path);
void write_xorsat(std::ostream& out, const Xorsat3Instance& inst);
void write_xorsat(const std::filesystem::path& path, const Xorsat3Instance& inst);

}  // namespace hosb
