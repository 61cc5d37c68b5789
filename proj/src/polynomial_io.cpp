#include "hosb/polynomial_io.hpp"

#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "text_reader.hpp"

namespace hosb {

PolyProblem read_pubo(std::istream& in) {
  detail::LineReader reader(in);
  std::string line;
  if (!reader.next(line)) throw ParseError(reader.line() + 1, "missing 'p pubo <N> <T>' header");

  std::istringstream header(line);
  std::string p, kind;
  header >> p >> kind;
  if (p != "p" || kind != "pubo") reader.fail("expected header 'p pubo <N> <T>'");
  const auto n = detail::read_field<long long>(header, reader, "N");
  const auto t = detail::read_field<long long>(header, reader, "T");
  detail::expect_end(header, reader);
  if (n < 0 || t < 0) reader.fail("N and T must be non-negative");

  std::vector<Term> terms;
  terms.reserve(static_cast<std::size_t>(t));
  for (long long m = 0; m < t; ++m) {
    if (!reader.next(line)) {
      throw ParseError(reader.line() + 1, "expected " + std::to_string(t) + " terms, found " +
                                              std::to_string(m));
    }
    std::istringstream fields(line);
    Term term;
    term.coefficient = detail::read_field<double>(fields, reader, "coefficient");
    const auto k = detail::read_field<long long>(fields, reader, "degree");
    if (k < 1) reader.fail("term degree must be >= 1");
    for (long long j = 0; j < k; ++j) {
      const auto v = detail::read_field<long long>(fields, reader, "variable index");
      if (v < 0 || v >= n) reader.fail("variable index " + std::to_string(v) + " out of range");
      term.indices.push_back(static_cast<VarIndex>(v));
    }
    detail::expect_end(fields, reader);
    terms.push_back(std::move(term));
  }
  if (reader.next(line)) reader.fail("unexpected content after the last term");

  try {
    return PolyProblem(static_cast<std::size_t>(n), terms);
  } catch (const std::invalid_argument& e) {
    throw ParseError(reader.line(), e.what());
  }
}

PolyProblem read_pubo(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return read_pubo(in);
}

void write_pubo(std::ostream& out, const PolyProblem& problem) {
  out << "p pubo " << problem.num_vars() << ' ' << problem.num_terms() << '\n';
  char buf[32];
  for (std::size_t m = 0; m < problem.num_terms(); ++m) {
    const auto idx = problem.term_indices(m);
    std::snprintf(buf, sizeof buf, "%.17g", problem.coefficient(m));
    out << buf << ' ' << idx.size();
    for (VarIndex v : idx) out << ' ' << v;
    out << '\n';
  }
}

void write_pubo(const std::filesystem::path& path, const PolyProblem& problem) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_pubo(out, problem);
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace hosb
