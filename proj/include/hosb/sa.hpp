#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "hosb/model.hpp"
#include "hosb/result.hpp"
#include "hosb/rng.hpp"

namespace hosb {

struct SaParams {
  double beta_final = 2.0;
  long n_steps = 1000;  // sweeps
};

void validate(const SaParams& params);

/// Per-sweep counters collected when a trace vector is passed to run_sa.
struct SaSweepStats {
  double beta = 0.0;
  long uphill_proposals = 0;
  long uphill_accepted = 0;
  long accepted = 0;
  double tracked_energy = 0.0;  // E maintained incrementally from accepted deltas
  double exact_energy = 0.0;    // evaluate() at the end of the sweep
};

/// Acceptance rule beta * dE < -ln R for R in (0, 1).
inline bool metropolis_accept(double beta_delta, double r) { return beta_delta < -std::log(r); }

/// Simulated annealing on the cost function as given (no quadratization).
/// Sweep k uses beta = beta_final * k / n_steps and visits i = 0..N-1 in
/// order; the flip of s_i is accepted iff beta * dE_i < -ln R, R ~ U(0,1).
RunResult run_sa(const PolyProblem& problem, const SaParams& params, Rng& rng,
                 std::optional<double> known_optimum = std::nullopt,
                 std::vector<SaSweepStats>* trace = nullptr);

}  // namespace hosb
