#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace hosb {

/// Bit vector as one byte per bit (0 or 1); convenient at the API boundary.
using BitVector = std::vector<std::uint8_t>;

/// Dense matrix over GF(2) with rows packed into 64-bit words.
class Gf2Matrix {
 public:
  Gf2Matrix() = default;
  Gf2Matrix(std::size_t rows, std::size_t cols);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t words_per_row() const noexcept { return words_; }

  bool get(std::size_t r, std::size_t c) const;
  void set(std::size_t r, std::size_t c, bool value);
  void flip(std::size_t r, std::size_t c);

  std::span<std::uint64_t> row(std::size_t r) { return {data_.data() + r * words_, words_}; }
  std::span<const std::uint64_t> row(std::size_t r) const {
    return {data_.data() + r * words_, words_};
  }

  /// row(dst) ^= row(src)
  void add_row(std::size_t dst, std::size_t src);
  void swap_rows(std::size_t a, std::size_t b);

  /// A * x over GF(2).
  BitVector multiply(std::span<const std::uint8_t> x) const;

  friend bool operator==(const Gf2Matrix&, const Gf2Matrix&) = default;

 private:
  void check(std::size_t r, std::size_t c) const;

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> data_;
};

struct Gf2Solution {
  /// One particular solution with free variables set to 0; empty if inconsistent.
  std::optional<BitVector> solution;
  std::size_t rank = 0;
  std::size_t nullity = 0;
  /// Basis of the null space of A (nullity vectors of length cols).
  std::vector<BitVector> null_basis;
};

/// Gauss-Jordan elimination on [A | b]. An inconsistent system yields an
/// empty solution rather than an exception.
Gf2Solution gf2_solve(const Gf2Matrix& a, std::span<const std::uint8_t> b);

}  // namespace hosb
