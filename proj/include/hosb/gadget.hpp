#pragma once

#include <cstddef>

#include "hosb/model.hpp"

namespace hosb {

/// Coefficients of the cubic-to-quadratic gadget, written as energy
/// contributions:
///   h (s1 + s2 + s3) + h~ s~ + J (s1 s2 + s2 s3 + s3 s1) + J~ (s1 + s2 + s3) s~
/// replacing -(-1)^b s1 s2 s3. The minimum over s~ is -1 on satisfying
/// triples and -1/2 otherwise.
struct GadgetCoefficients {
  double h;
  double h_ancilla;
  double j;
  double j_ancilla;
};

GadgetCoefficients gadget_coefficients(int parity_bit);

/// Replaces every cubic term by the gadget with one fresh ancilla. Ancillas
/// take indices N, N+1, ... in term order; degree-1 and degree-2 terms pass
/// through. Throws UnsupportedReduction for degree > 3 or a cubic
/// coefficient other than +-1.
PolyProblem gadgetize(const PolyProblem& problem);

/// First n_original spins of a gadgetized solution.
SpinConfig project_solution(std::span<const std::int8_t> gadget_solution, std::size_t n_original);

}  // namespace hosb
