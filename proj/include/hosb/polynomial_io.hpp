#pragma once

#include <filesystem>
#include <iosfwd>

#include "hosb/model.hpp"

namespace hosb {

// Text format:
//   # comment
//   p pubo <N> <T>
//   <coeff> <k> <i1> ... <ik>      (T lines, 0-based indices)
//
// Repeated index sets are folded into one term on read. Writers emit the
// canonical sorted indices and 17 significant digits.

PolyProblem read_pubo(std::istream& in);
PolyProblem read_pubo(const std::filesystem::path& path);
void write_pubo(std::ostream& out, const PolyProblem& problem);
void write_pubo(const std::filesystem::path& path, const PolyProblem& problem);

}  // namespace hosb
