#include "hosb/sa.hpp"

#include <cmath>
#include <stdexcept>

namespace hosb {

void validate(const SaParams& params) {
  if (!(params.beta_final > 0.0)) throw std::invalid_argument("SaParams: beta_final must be > 0");
  if (params.n_steps < 1) throw std::invalid_argument("SaParams: n_steps must be >= 1");
}

RunResult run_sa(const PolyProblem& problem, const SaParams& params, Rng& rng,
                 std::optional<double> known_optimum, std::vector<SaSweepStats>* trace) {
  validate(params);
  const std::size_t n = problem.num_vars();
  if (n == 0) throw std::invalid_argument("run_sa: empty problem");

  SpinConfig s(n);
  for (auto& v : s) v = rng.coin() ? 1 : -1;
  double energy = trace ? evaluate(problem, s) : 0.0;
  if (trace) {
    trace->clear();
    trace->reserve(static_cast<std::size_t>(params.n_steps));
  }

  for (long k = 1; k <= params.n_steps; ++k) {
    const double beta =
        params.beta_final * static_cast<double>(k) / static_cast<double>(params.n_steps);
    SaSweepStats stats;
    stats.beta = beta;
    for (std::size_t i = 0; i < n; ++i) {
      const double delta = delta_energy_unchecked(problem, s, i);
      const bool accept = metropolis_accept(beta * delta, rng.uniform_open());
      if (delta > 0.0) {
        ++stats.uphill_proposals;
        if (accept) ++stats.uphill_accepted;
      }
      if (accept) {
        s[i] = static_cast<std::int8_t>(-s[i]);
        ++stats.accepted;
        energy += delta;
      }
    }
    if (trace) {
      stats.tracked_energy = energy;
      stats.exact_energy = evaluate(problem, s);
      trace->push_back(stats);
    }
  }

  RunResult result;
  result.energy = evaluate(problem, s);
  result.spins = std::move(s);
  result.steps_used = params.n_steps;
  result.success = reaches_optimum(result.energy, known_optimum);
  return result;
}

}  // namespace hosb
