#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "hosb/model.hpp"
#include "hosb/result.hpp"
#include "hosb/rng.hpp"

namespace hosb {

enum class SbVariant { ballistic, discrete };

/// How often the force normalization c is recomputed.
enum class Normalization { per_step, initial };

struct SbParams {
  double a0 = 1.0;
  double dt = 1.1;
  double c1 = 0.7;
  long n_steps = 1000;
  SbVariant variant = SbVariant::ballistic;
  double eps = kDefaultEpsilon;
  Normalization normalization = Normalization::per_step;
};

/// Throws std::invalid_argument unless dt, c1, a0, eps > 0 and n_steps >= 1.
void validate(const SbParams& params);

struct OscillatorState {
  std::vector<double> x;  // positions
  std::vector<double> y;  // momenta
};

/// x_i, y_i i.i.d. uniform on (-1, 1); all x drawn before y.
OscillatorState init_state(std::size_t n, Rng& rng);

/// Linear schedule a(k) = a0 * k / n_steps.
double bifurcation_value(long step, const SbParams& params);

/// c = c1 / sqrt(mean(f_i^2)) over nu = f.size() entries. When the mean
/// square drops below 1e-30 the result is capped at c1 * 1e15.
double normalization_factor(std::span<const double> f, double c1);
double normalization_factor(std::span<const double> f, double c1, std::size_t nu);

/// Symplectic-Euler integrator with inelastic walls at |x| = 1.
///
/// One step with bifurcation value a:
///   f = G(x) (ballistic) or G(sign x) (discrete)
///   y += (-(a0 - a) x + c f) dt
///   x += a0 y dt
///   |x_i| > 1  =>  x_i = sign(x_i), y_i = 0
///
/// Holds scratch buffers; one integrator per run.
class SbIntegrator {
 public:
  SbIntegrator(const PolyProblem& problem, const SbParams& params);

  /// Advances the state in place. `step` only labels NumericFailure messages.
  void step(OscillatorState& state, double a, long step = 0);

  /// Force vector from the most recent step.
  std::span<const double> forces() const { return force_; }
  /// Normalization factor used in the most recent step.
  double last_c() const { return c_; }

 private:
  const PolyProblem& problem_;
  SbParams params_;
  std::vector<double> force_;
  std::vector<std::int8_t> spins_;
  double c_ = 0.0;
  bool have_c_ = false;
};

/// Single step returning the new state.
OscillatorState sb_step(OscillatorState state, const PolyProblem& problem, const SbParams& params,
                        double a);

/// Called after each step with (k, state); optional instrumentation hook.
using SbObserver = std::function<void(long, const OscillatorState&)>;

/// Full run: init_state, steps k = 1..n_steps with a = bifurcation_value(k),
/// readout sign(x) with sign(0) = +1.
RunResult run_sb(const PolyProblem& problem, const SbParams& params, Rng& rng,
                 std::optional<double> known_optimum = std::nullopt,
                 const SbObserver& observer = {});

}  // namespace hosb
