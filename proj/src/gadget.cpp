#include "hosb/gadget.hpp"

#include <stdexcept>
#include <string>

#include "hosb/error.hpp"

namespace hosb {

GadgetCoefficients gadget_coefficients(int parity_bit) {
  const double k = (parity_bit & 1) ? -1.0 : 1.0;
  return {.h = -k / 4.0, .h_ancilla = -0.5, .j = 0.25, .j_ancilla = k / 2.0};
}

PolyProblem gadgetize(const PolyProblem& problem) {
  std::size_t cubic = 0;
  for (std::size_t m = 0; m < problem.num_terms(); ++m) {
    const std::size_t degree = problem.term_indices(m).size();
    if (degree > 3) {
      throw UnsupportedReduction("gadgetize: term " + std::to_string(m) + " has degree " +
                                 std::to_string(degree));
    }
    if (degree == 3) {
      const double k = problem.coefficient(m);
      if (k != 1.0 && k != -1.0) {
        throw UnsupportedReduction("gadgetize: cubic term " + std::to_string(m) +
                                   " has coefficient other than +-1");
      }
      ++cubic;
    }
  }

  // Gadget energies enter the model with a flipped sign, since
  // E = -sum coefficient * monomial.
  std::vector<Term> terms;
  terms.reserve(problem.num_terms() + 7 * cubic);
  VarIndex ancilla = static_cast<VarIndex>(problem.num_vars());
  for (std::size_t m = 0; m < problem.num_terms(); ++m) {
    const auto idx = problem.term_indices(m);
    if (idx.size() < 3) {
      terms.push_back({problem.coefficient(m), {idx.begin(), idx.end()}});
      continue;
    }
    const auto g = gadget_coefficients(problem.coefficient(m) < 0.0 ? 1 : 0);
    const VarIndex a = ancilla++;
    for (VarIndex v : idx) terms.push_back({-g.h, {v}});
    terms.push_back({-g.h_ancilla, {a}});
    terms.push_back({-g.j, {idx[0], idx[1]}});
    terms.push_back({-g.j, {idx[1], idx[2]}});
    terms.push_back({-g.j, {idx[0], idx[2]}});
    for (VarIndex v : idx) terms.push_back({-g.j_ancilla, {v, a}});
  }
  return PolyProblem(problem.num_vars() + cubic, terms);
}

SpinConfig project_solution(std::span<const std::int8_t> gadget_solution, std::size_t n_original) {
  if (gadget_solution.size() < n_original) {
    throw std::invalid_argument("project_solution: solution shorter than the original problem");
  }
  return SpinConfig(gadget_solution.begin(), gadget_solution.begin() + n_original);
}

}  // namespace hosb
