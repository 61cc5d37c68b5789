#include "hosb/gf2.hpp"

#include <stdexcept>
#include <string>
#include <utility>

namespace hosb {

Gf2Matrix::Gf2Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), words_((cols + 63) / 64), data_(rows * words_, 0) {}

void Gf2Matrix::check(std::size_t r, std::size_t c) const {
  if (r >= rows_ || c >= cols_) {
    throw std::out_of_range("Gf2Matrix: (" + std::to_string(r) + ", " + std::to_string(c) +
                            ") outside " + std::to_string(rows_) + "x" + std::to_string(cols_));
  }
}

bool Gf2Matrix::get(std::size_t r, std::size_t c) const {
  check(r, c);
  return (data_[r * words_ + c / 64] >> (c % 64)) & 1U;
}

void Gf2Matrix::set(std::size_t r, std::size_t c, bool value) {
  check(r, c);
  const std::uint64_t mask = std::uint64_t{1} << (c % 64);
  auto& w = data_[r * words_ + c / 64];
  w = value ? (w | mask) : (w & ~mask);
}

void Gf2Matrix::flip(std::size_t r, std::size_t c) {
  check(r, c);
  data_[r * words_ + c / 64] ^= std::uint64_t{1} << (c % 64);
}

void Gf2Matrix::add_row(std::size_t dst, std::size_t src) {
  auto d = row(dst);
  auto s = row(src);
  for (std::size_t w = 0; w < words_; ++w) d[w] ^= s[w];
}

void Gf2Matrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  auto ra = row(a);
  auto rb = row(b);
  for (std::size_t w = 0; w < words_; ++w) std::swap(ra[w], rb[w]);
}

BitVector Gf2Matrix::multiply(std::span<const std::uint8_t> x) const {
  if (x.size() != cols_) throw std::invalid_argument("Gf2Matrix::multiply: length mismatch");
  BitVector out(rows_, 0);
  for (std::size_t r = 0; r < rows_; ++r) {
    std::uint8_t acc = 0;
    for (std::size_t c = 0; c < cols_; ++c) acc ^= static_cast<std::uint8_t>(get(r, c) && x[c]);
    out[r] = acc;
  }
  return out;
}

Gf2Solution gf2_solve(const Gf2Matrix& a, std::span<const std::uint8_t> b) {
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  if (b.size() != rows) throw std::invalid_argument("gf2_solve: b length must equal row count");

  // Augmented matrix [A | b].
  Gf2Matrix aug(rows, cols + 1);
  for (std::size_t r = 0; r < rows; ++r) {
    auto src = a.row(r);
    auto dst = aug.row(r);
    for (std::size_t w = 0; w < src.size(); ++w) dst[w] = src[w];
    if (b[r] & 1U) aug.set(r, cols, true);
  }

  std::vector<std::size_t> pivot_cols;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rank;
    while (pivot < rows && !aug.get(pivot, c)) ++pivot;
    if (pivot == rows) continue;
    aug.swap_rows(rank, pivot);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r != rank && aug.get(r, c)) aug.add_row(r, rank);
    }
    pivot_cols.push_back(c);
    ++rank;
  }

  Gf2Solution result;
  result.rank = rank;
  result.nullity = cols - rank;

  // Zero rows of A with a nonzero right-hand side make the system inconsistent.
  bool consistent = true;
  for (std::size_t r = rank; r < rows; ++r) {
    if (aug.get(r, cols)) {
      consistent = false;
      break;
    }
  }

  std::vector<bool> is_pivot(cols, false);
  for (std::size_t c : pivot_cols) is_pivot[c] = true;

  if (consistent) {
    BitVector x(cols, 0);
    for (std::size_t r = 0; r < rank; ++r) x[pivot_cols[r]] = aug.get(r, cols) ? 1 : 0;
    result.solution = std::move(x);
  }

  // Null-space basis: one vector per free column f, with x_f = 1 and each
  // pivot variable equal to its row's entry in column f.
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    BitVector v(cols, 0);
    v[f] = 1;
    for (std::size_t r = 0; r < rank; ++r) v[pivot_cols[r]] = aug.get(r, f) ? 1 : 0;
    result.null_basis.push_back(std::move(v));
  }
  return result;
}

}  // namespace hosb
