#include <doctest.h>

#include <map>

#include "hosb/sa.hpp"
#include "hosb/xorsat.hpp"
#include "oracles.hpp"

using namespace hosb;

TEST_CASE("acceptance rule") {
  Rng rng(1);
  for (int k = 0; k < 1000; ++k) {
    const double r = rng.uniform_open();
    CHECK(metropolis_accept(-0.5, r));  // downhill
    CHECK(metropolis_accept(0.0, r));   // beta = 0
  }
  CHECK_FALSE(metropolis_accept(1.0, std::exp(-1.0)));  // strict inequality
  CHECK(metropolis_accept(1.0, 0.3));
  CHECK_FALSE(metropolis_accept(1.0, 0.4));
}

TEST_CASE("energy bookkeeping matches evaluate after every sweep") {
  Rng gen(3);
  const auto cubic = to_polynomial(generate_3r3x(24, gen));
  const auto real = hosb::testing::random_problem(20, 60, 3, gen, false);
  std::vector<SaSweepStats> trace;
  Rng r1(5);
  run_sa(cubic, SaParams{2.0, 50}, r1, std::nullopt, &trace);
  REQUIRE(trace.size() == 50);
  for (const auto& s : trace) CHECK(s.tracked_energy == s.exact_energy);

  Rng r2(6);
  run_sa(real, SaParams{3.0, 50}, r2, std::nullopt, &trace);
  for (const auto& s : trace) CHECK(std::abs(s.tracked_energy - s.exact_energy) <= 1e-9);
}

TEST_CASE("beta schedule is linear per sweep") {
  const PolyProblem p(2, {Term{1.0, {0, 1}}});
  std::vector<SaSweepStats> trace;
  Rng rng(1);
  run_sa(p, SaParams{2.0, 4}, rng, std::nullopt, &trace);
  REQUIRE(trace.size() == 4);
  CHECK(trace[0].beta == 0.5);
  CHECK(trace[3].beta == 2.0);
}

TEST_CASE("uphill acceptance falls across the anneal") {
  Rng gen(77);
  const auto p = to_polynomial(generate_3r3x(16, gen));
  const long sweeps = 500;
  std::vector<double> proposals(4, 0.0), accepted(4, 0.0);
  std::vector<SaSweepStats> trace;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng(seed);
    run_sa(p, SaParams{2.0, sweeps}, rng, -16.0, &trace);
    for (long k = 0; k < sweeps; ++k) {
      const auto q = static_cast<std::size_t>(4 * k / sweeps);
      proposals[q] += static_cast<double>(trace[k].uphill_proposals);
      accepted[q] += static_cast<double>(trace[k].uphill_accepted);
    }
  }
  double previous = 1.0;
  for (std::size_t q = 0; q < 4; ++q) {
    REQUIRE(proposals[q] > 0.0);
    const double rate = accepted[q] / proposals[q];
    CHECK(rate < previous);
    previous = rate;
  }
}

TEST_CASE("modal final energy is the brute-force optimum on small instances") {
  Rng gen(10);
  const auto p = hosb::testing::random_problem(12, 30, 3, gen, true);
  const double optimum = exhaustive_minimize(p).min_energy;
  std::map<double, int> histogram;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Rng rng(seed);
    ++histogram[run_sa(p, SaParams{5.0, 300}, rng).energy];
  }
  auto mode = histogram.begin();
  for (auto it = histogram.begin(); it != histogram.end(); ++it) {
    if (it->second > mode->second) mode = it;
  }
  CHECK(mode->first == optimum);
}

TEST_CASE("run_sa determinism and validation") {
  Rng gen(4);
  const auto p = to_polynomial(generate_3r3x(30, gen));
  Rng a(9), b(9);
  const auto ra = run_sa(p, SaParams{2.0, 100}, a, -30.0);
  const auto rb = run_sa(p, SaParams{2.0, 100}, b, -30.0);
  CHECK(ra.spins == rb.spins);
  CHECK(ra.energy == rb.energy);
  CHECK(ra.energy == evaluate(p, ra.spins));
  CHECK(ra.steps_used == 100);

  Rng c(1);
  CHECK_THROWS_AS(run_sa(p, SaParams{0.0, 10}, c), std::invalid_argument);
  CHECK_THROWS_AS(run_sa(p, SaParams{1.0, 0}, c), std::invalid_argument);
}
