#include "hosb/xorsat.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <set>
#include <stdexcept>

#include "hosb/error.hpp"
#include "text_reader.hpp"

namespace hosb {

namespace {

std::vector<VarIndex> random_permutation(std::size_t n, Rng& rng) {
  std::vector<VarIndex> p(n);
  std::iota(p.begin(), p.end(), VarIndex{0});
  for (std::size_t i = n; i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng.below(i));
    std::swap(p[i - 1], p[j]);
  }
  return p;
}

bool clauses_valid(const std::vector<std::array<VarIndex, 3>>& clauses) {
  std::set<std::array<VarIndex, 3>> seen;
  for (auto c : clauses) {
    if (c[0] == c[1] || c[1] == c[2] || c[0] == c[2]) return false;
    std::sort(c.begin(), c.end());
    if (!seen.insert(c).second) return false;
  }
  return true;
}

}  // namespace

std::string check_instance(const Xorsat3Instance& inst) {
  const std::size_t n = inst.n;
  if (inst.clauses.size() != n) return "clause count must equal N";
  if (inst.parity.size() != n) return "parity vector length must equal N";
  for (std::size_t col = 0; col < 3; ++col) {
    std::vector<bool> hit(n, false);
    for (std::size_t m = 0; m < n; ++m) {
      const VarIndex v = inst.clauses[m][col];
      if (v >= n) return "clause " + std::to_string(m) + " index out of range";
      if (hit[v]) return "column " + std::to_string(col) + " is not a permutation";
      hit[v] = true;
    }
  }
  std::set<std::array<VarIndex, 3>> seen;
  for (std::size_t m = 0; m < n; ++m) {
    auto c = inst.clauses[m];
    if (c[0] == c[1] || c[1] == c[2] || c[0] == c[2]) {
      return "clause " + std::to_string(m) + " repeats a variable";
    }
    std::sort(c.begin(), c.end());
    if (!seen.insert(c).second) return "clause " + std::to_string(m) + " duplicates another";
  }
  for (std::size_t m = 0; m < n; ++m) {
    if (inst.parity[m] > 1) return "parity bits must be 0 or 1";
  }
  if (inst.planted) {
    if (inst.planted->size() != n) return "planted assignment length must equal N";
    for (std::size_t m = 0; m < n; ++m) {
      const auto& c = inst.clauses[m];
      const unsigned lhs = ((*inst.planted)[c[0]] ^ (*inst.planted)[c[1]] ^ (*inst.planted)[c[2]]) & 1U;
      if (lhs != inst.parity[m]) return "planted assignment violates clause " + std::to_string(m);
    }
  }
  return {};
}

void validate(const Xorsat3Instance& inst) {
  if (auto msg = check_instance(inst); !msg.empty()) {
    throw std::invalid_argument("invalid 3R3X instance: " + msg);
  }
}

Xorsat3Instance generate_3r3x(std::size_t n, Rng& rng, std::size_t max_attempts) {
  if (n < kMinXorsatSize) {
    throw std::invalid_argument("generate_3r3x: n must be >= " + std::to_string(kMinXorsatSize));
  }
  Xorsat3Instance inst;
  inst.n = n;
  inst.clauses.resize(n);
  std::size_t attempt = 0;
  for (;;) {
    if (attempt++ == max_attempts) throw GenerationFailure(n, max_attempts);
    const auto p0 = random_permutation(n, rng);
    const auto p1 = random_permutation(n, rng);
    const auto p2 = random_permutation(n, rng);
    for (std::size_t m = 0; m < n; ++m) inst.clauses[m] = {p0[m], p1[m], p2[m]};
    if (clauses_valid(inst.clauses)) break;
  }

  BitVector xi(n);
  for (auto& bit : xi) bit = rng.coin() ? 1 : 0;
  inst.parity.resize(n);
  for (std::size_t m = 0; m < n; ++m) {
    const auto& c = inst.clauses[m];
    inst.parity[m] = static_cast<std::uint8_t>(xi[c[0]] ^ xi[c[1]] ^ xi[c[2]]);
  }
  inst.planted = std::move(xi);
  return inst;
}

Gf2Matrix incidence_matrix(const Xorsat3Instance& inst) {
  Gf2Matrix a(inst.clauses.size(), inst.n);
  for (std::size_t m = 0; m < inst.clauses.size(); ++m) {
    for (VarIndex v : inst.clauses[m]) a.flip(m, v);
  }
  return a;
}

PolyProblem to_polynomial(const Xorsat3Instance& inst) {
  std::vector<Term> terms;
  terms.reserve(inst.clauses.size());
  for (std::size_t m = 0; m < inst.clauses.size(); ++m) {
    const auto& c = inst.clauses[m];
    terms.push_back({inst.parity[m] ? -1.0 : 1.0, {c[0], c[1], c[2]}});
  }
  return PolyProblem(inst.n, terms);
}

SpinConfig spins_from_bits(std::span<const std::uint8_t> bits) {
  SpinConfig s(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) s[i] = (bits[i] & 1U) ? -1 : 1;
  return s;
}

BitVector bits_from_spins(std::span<const std::int8_t> spins) {
  BitVector b(spins.size());
  for (std::size_t i = 0; i < spins.size(); ++i) b[i] = spins[i] < 0 ? 1 : 0;
  return b;
}

Xorsat3Instance read_xorsat(std::istream& in) {
  detail::LineReader reader(in);
  std::string line;
  if (!reader.next(line)) throw ParseError(reader.line() + 1, "missing 'p xorsat3 <N>' header");
  std::istringstream header(line);
  std::string p, kind;
  header >> p >> kind;
  if (p != "p" || kind != "xorsat3") reader.fail("expected header 'p xorsat3 <N>'");
  const auto n = detail::read_field<long long>(header, reader, "N");
  detail::expect_end(header, reader);
  if (n < 0) reader.fail("N must be non-negative");

  Xorsat3Instance inst;
  inst.n = static_cast<std::size_t>(n);
  for (long long m = 0; m < n; ++m) {
    if (!reader.next(line)) {
      throw ParseError(reader.line() + 1, "expected " + std::to_string(n) + " clauses, found " +
                                              std::to_string(m));
    }
    std::istringstream fields(line);
    const auto b = detail::read_field<int>(fields, reader, "parity bit");
    if (b != 0 && b != 1) reader.fail("parity bit must be 0 or 1");
    std::array<VarIndex, 3> clause{};
    for (auto& v : clause) {
      const auto idx = detail::read_field<long long>(fields, reader, "variable index");
      if (idx < 0 || idx >= n) reader.fail("variable index " + std::to_string(idx) + " out of range");
      v = static_cast<VarIndex>(idx);
    }
    detail::expect_end(fields, reader);
    inst.parity.push_back(static_cast<std::uint8_t>(b));
    inst.clauses.push_back(clause);
  }

  if (reader.next(line)) {
    std::istringstream footer(line);
    std::string c, tag, bits;
    footer >> c >> tag >> bits;
    if (c != "c" || tag != "planted") reader.fail("expected 'c planted <bitstring>' footer");
    detail::expect_end(footer, reader);
    if (bits.size() != inst.n) reader.fail("planted bitstring length must equal N");
    BitVector xi(inst.n);
    for (std::size_t i = 0; i < bits.size(); ++i) {
      if (bits[i] != '0' && bits[i] != '1') reader.fail("planted bitstring must be 0/1");
      xi[i] = bits[i] == '1' ? 1 : 0;
    }
    inst.planted = std::move(xi);
    if (reader.next(line)) reader.fail("unexpected content after planted footer");
  }

  if (auto msg = check_instance(inst); !msg.empty()) reader.fail(msg);
  return inst;
}

Xorsat3Instance read_xorsat(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return read_xorsat(in);
}

void write_xorsat(std::ostream& out, const Xorsat3Instance& inst) {
  out << "p xorsat3 " << inst.n << '\n';
  for (std::size_t m = 0; m < inst.clauses.size(); ++m) {
    const auto& c = inst.clauses[m];
    out << static_cast<int>(inst.parity[m]) << ' ' << c[0] << ' ' << c[1] << ' ' << c[2] << '\n';
  }
  if (inst.planted) {
    out << "c planted ";
    for (auto bit : *inst.planted) out << (bit ? '1' : '0');
    out << '\n';
  }
}

void write_xorsat(const std::filesystem::path& path, const Xorsat3Instance& inst) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_xorsat(out, inst);
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace hosb
