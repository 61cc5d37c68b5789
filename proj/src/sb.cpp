#include "hosb/sb.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "hosb/error.hpp"

namespace hosb {

void validate(const SbParams& params) {
  if (!(params.dt > 0.0)) throw std::invalid_argument("SbParams: dt must be > 0");
  if (!(params.c1 > 0.0)) throw std::invalid_argument("SbParams: c1 must be > 0");
  if (!(params.a0 > 0.0)) throw std::invalid_argument("SbParams: a0 must be > 0");
  if (!(params.eps > 0.0)) throw std::invalid_argument("SbParams: eps must be > 0");
  if (params.n_steps < 1) throw std::invalid_argument("SbParams: n_steps must be >= 1");
}

OscillatorState init_state(std::size_t n, Rng& rng) {
  if (n == 0) throw std::invalid_argument("init_state: n must be >= 1");
  OscillatorState state{std::vector<double>(n), std::vector<double>(n)};
  for (double& v : state.x) v = rng.uniform_symmetric();
  for (double& v : state.y) v = rng.uniform_symmetric();
  return state;
}

double bifurcation_value(long step, const SbParams& params) {
  return params.a0 * static_cast<double>(step) / static_cast<double>(params.n_steps);
}

double normalization_factor(std::span<const double> f, double c1) {
  if (f.empty()) throw std::invalid_argument("normalization_factor: empty force vector");
  double sum_sq = 0.0;
  for (double v : f) sum_sq += v * v;
  const double mean_sq = sum_sq / static_cast<double>(f.size());
  if (mean_sq < 1e-30) return c1 * 1e15;
  return c1 / std::sqrt(mean_sq);
}

double normalization_factor(std::span<const double> f, double c1, std::size_t nu) {
  if (nu != f.size()) {
    throw std::invalid_argument("normalization_factor: nu must equal the force vector length");
  }
  return normalization_factor(f, c1);
}

SbIntegrator::SbIntegrator(const PolyProblem& problem, const SbParams& params)
    : problem_(problem), params_(params), force_(problem.num_vars()) {
  validate(params_);
  if (params_.variant == SbVariant::discrete) spins_.resize(problem.num_vars());
}

void SbIntegrator::step(OscillatorState& state, double a, long step) {
  auto& x = state.x;
  auto& y = state.y;
  const std::size_t n = problem_.num_vars();
  if (x.size() != n || y.size() != n) {
    throw std::invalid_argument("SbIntegrator::step: state length does not match the problem");
  }

  if (params_.variant == SbVariant::ballistic) {
    gradient_fast(problem_, x, params_.eps, force_);
  } else {
    for (std::size_t i = 0; i < n; ++i) spins_[i] = x[i] < 0.0 ? -1 : 1;
    gradient_discrete(problem_, spins_, force_);
  }

  if (!have_c_ || params_.normalization == Normalization::per_step) {
    c_ = normalization_factor(force_, params_.c1);
    have_c_ = true;
  }

  const double detuning = params_.a0 - a;
  const double dt = params_.dt;
  const double a0dt = params_.a0 * dt;
  bool finite = true;
  for (std::size_t i = 0; i < n; ++i) {
    double yi = y[i] + (-detuning * x[i] + c_ * force_[i]) * dt;
    double xi = x[i] + a0dt * yi;
    if (std::abs(xi) > 1.0) {
      xi = xi > 0.0 ? 1.0 : -1.0;
      yi = 0.0;
    }
    finite = finite && std::isfinite(xi) && std::isfinite(yi);
    x[i] = xi;
    y[i] = yi;
  }
  if (!finite) throw NumericFailure(step, "non-finite oscillator state");
}

OscillatorState sb_step(OscillatorState state, const PolyProblem& problem, const SbParams& params,
                        double a) {
  SbIntegrator integrator(problem, params);
  integrator.step(state, a);
  return state;
}

RunResult run_sb(const PolyProblem& problem, const SbParams& params, Rng& rng,
                 std::optional<double> known_optimum, const SbObserver& observer) {
  validate(params);
  if (problem.num_vars() == 0) throw std::invalid_argument("run_sb: empty problem");
  OscillatorState state = init_state(problem.num_vars(), rng);
  SbIntegrator integrator(problem, params);
  for (long k = 1; k <= params.n_steps; ++k) {
    integrator.step(state, bifurcation_value(k, params), k);
    if (observer) observer(k, state);
  }
  RunResult result;
  result.spins = signs(state.x);
  result.energy = evaluate(problem, result.spins);
  result.steps_used = params.n_steps;
  result.success = reaches_optimum(result.energy, known_optimum);
  return result;
}

}  // namespace hosb
