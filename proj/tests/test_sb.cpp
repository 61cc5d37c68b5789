#include <doctest.h>

#include <cmath>
#include <limits>

#include "hosb/error.hpp"
#include "hosb/sb.hpp"
#include "hosb/xorsat.hpp"
#include "oracles.hpp"

using namespace hosb;

TEST_CASE("init_state") {
  Rng a(42), b(42);
  const auto s1 = init_state(3, a);
  const auto s2 = init_state(3, b);
  CHECK(s1.x == s2.x);
  CHECK(s1.y == s2.y);

  Rng c(1);
  const auto one = init_state(1, c);
  CHECK(one.x.size() == 1);
  CHECK(one.y.size() == 1);
  CHECK_THROWS_AS(init_state(0, c), std::invalid_argument);

  Rng d(7);
  const auto big = init_state(100000, d);
  double mean = 0.0;
  for (double v : big.x) {
    REQUIRE(v > -1.0);
    REQUIRE(v < 1.0);
    mean += v;
  }
  for (double v : big.y) {
    REQUIRE(v > -1.0);
    REQUIRE(v < 1.0);
  }
  mean /= static_cast<double>(big.x.size());
  CHECK(std::abs(mean) <= 0.02);
}

TEST_CASE("bifurcation_value is linear from 0 to a0") {
  SbParams p;
  p.a0 = 1.0;
  p.n_steps = 1000;
  CHECK(bifurcation_value(0, p) == 0.0);
  CHECK(bifurcation_value(1000, p) == 1.0);
  CHECK(bifurcation_value(250, p) == 0.25);
}

TEST_CASE("normalization_factor") {
  CHECK(normalization_factor(std::vector<double>{1, 1, 1, 1}, 0.5, 4) == 0.5);
  CHECK(normalization_factor(std::vector<double>{2, 0}, 1.0, 2) ==
        doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
  const double capped = normalization_factor(std::vector<double>{0, 0, 0}, 0.7, 3);
  CHECK(std::isfinite(capped));
  CHECK(capped == 0.7 * 1e15);
  CHECK_THROWS_AS(normalization_factor(std::vector<double>{}, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(normalization_factor(std::vector<double>{1.0, 2.0}, 1.0, 3), std::invalid_argument);
}

TEST_CASE("sb_step") {
  SbParams params;
  params.a0 = 1.0;
  params.dt = 0.5;
  params.c1 = 1.0;
  params.n_steps = 10;

  SUBCASE("free ballistic motion without terms") {
    const PolyProblem empty(2, std::vector<Term>{});
    const OscillatorState s0{{0.1, -0.2}, {0.3, -0.4}};
    const auto s1 = sb_step(s0, empty, params, params.a0);
    CHECK(s1.y == s0.y);
    CHECK(s1.x[0] == doctest::Approx(0.1 + 0.3 * 0.5));
    CHECK(s1.x[1] == doctest::Approx(-0.2 - 0.4 * 0.5));
  }

  SUBCASE("hand-evaluated step of E = -x0 x1") {
    // Frozen from an independent evaluation of the update formulas:
    // c = 1/sqrt(mean f^2), y += (-(a0-a)x + c f) dt, x += a0 y dt.
    const PolyProblem p(2, {Term{1.0, {0, 1}}});
    const OscillatorState s0{{0.5, -0.25}, {0.1, 0.2}};
    SbIntegrator integrator(p, params);
    auto s = s0;
    integrator.step(s, 0.25);
    CHECK(std::abs(integrator.last_c() - 2.5298221281347035) <= 1e-12);
    CHECK(std::abs(s.y[0] - -0.403727766016838) <= 1e-12);
    CHECK(std::abs(s.y[1] - 0.926205532033676) <= 1e-12);
    CHECK(std::abs(s.x[0] - 0.298136116991581) <= 1e-12);
    CHECK(std::abs(s.x[1] - 0.21310276601683797) <= 1e-12);
  }

  SUBCASE("inelastic wall") {
    const PolyProblem p(2, {Term{1.0, {0, 1}}});
    const OscillatorState s0{{0.99, -0.25}, {5.0, 0.2}};
    const auto s1 = sb_step(s0, p, params, 0.25);
    CHECK(s1.x[0] == 1.0);
    CHECK(s1.y[0] == 0.0);
    const OscillatorState s2{{-0.99, 0.0}, {-5.0, 0.0}};
    const auto s3 = sb_step(s2, p, params, 0.25);
    CHECK(s3.x[0] == -1.0);
    CHECK(s3.y[0] == 0.0);
  }

  SUBCASE("non-finite state is reported with the step") {
    const PolyProblem p(2, {Term{1.0, {0, 1}}});
    OscillatorState s{{std::numeric_limits<double>::quiet_NaN(), 0.1}, {0.0, 0.0}};
    SbIntegrator integrator(p, params);
    try {
      integrator.step(s, 0.1, 17);
      FAIL("expected NumericFailure");
    } catch (const NumericFailure& e) {
      CHECK(e.step() == 17);
    }
  }

  SUBCASE("discrete variant uses forces at sign(x)") {
    params.variant = SbVariant::discrete;
    const PolyProblem p(3, {Term{1.0, {0, 1, 2}}});
    OscillatorState s{{0.2, -0.3, 0.0}, {0.0, 0.0, 0.0}};
    SbIntegrator integrator(p, params);
    integrator.step(s, 0.5);
    // sign(0) = +1, so spins (+1, -1, +1) and G = (-1, +1, -1).
    const auto f = integrator.forces();
    CHECK(std::vector<double>(f.begin(), f.end()) == std::vector<double>{-1.0, 1.0, -1.0});
  }

  SUBCASE("initial normalization keeps c fixed") {
    params.normalization = Normalization::initial;
    Rng rng(3);
    const auto p = hosb::testing::random_problem(10, 20, 3, rng, false);
    auto s = init_state(10, rng);
    SbIntegrator integrator(p, params);
    integrator.step(s, 0.1);
    const double c = integrator.last_c();
    integrator.step(s, 0.2);
    integrator.step(s, 0.3);
    CHECK(integrator.last_c() == c);
  }
}

TEST_CASE("forces reduce to h + J x on quadratic problems") {
  Rng rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 15;
    std::vector<double> h(n);
    std::vector<std::vector<double>> j(n, std::vector<double>(n, 0.0));
    std::vector<Term> terms;
    for (std::size_t i = 0; i < n; ++i) {
      h[i] = rng.uniform_symmetric();
      terms.push_back({h[i], {static_cast<VarIndex>(i)}});
      for (std::size_t k = i + 1; k < n; ++k) {
        const double v = rng.uniform_symmetric();
        j[i][k] = j[k][i] = v;
        terms.push_back({v, {static_cast<VarIndex>(i), static_cast<VarIndex>(k)}});
      }
    }
    const PolyProblem p(n, terms);
    std::vector<double> x(n);
    for (auto& v : x) {
      do {
        v = rng.uniform_symmetric();
      } while (std::abs(v) < 1e-3);
    }
    std::vector<double> want(n);
    for (std::size_t i = 0; i < n; ++i) {
      want[i] = h[i];
      for (std::size_t k = 0; k < n; ++k) want[i] += j[i][k] * x[k];
    }
    const auto scale = hosb::testing::summand_scale(p, x);
    CHECK(hosb::testing::max_scaled_error(gradient_direct(p, x), want, scale) <= 1e-12);
    CHECK(hosb::testing::max_scaled_error(gradient_fast(p, x), want, scale) <= 1e-12);

    const auto s = signs(x);
    std::vector<double> want_s(n);
    for (std::size_t i = 0; i < n; ++i) {
      want_s[i] = h[i];
      for (std::size_t k = 0; k < n; ++k) want_s[i] += j[i][k] * s[k];
    }
    const auto got_s = gradient_discrete(p, s);
    for (std::size_t i = 0; i < n; ++i) CHECK(got_s[i] == doctest::Approx(want_s[i]).epsilon(1e-12));
  }
}

TEST_CASE("run_sb") {
  SUBCASE("single spin with E = -s0 ends at +1") {
    const PolyProblem p(1, {Term{1.0, {0}}});
    SbParams params;
    params.n_steps = 100;
    int plus = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      Rng rng(seed);
      const auto r = run_sb(p, params, rng, -1.0);
      if (r.spins[0] == 1) ++plus;
      CHECK(r.energy == evaluate(p, r.spins));
    }
    CHECK(plus >= 99);
  }

  SUBCASE("planted N=16 instance is solved by some seed") {
    Rng gen(2024);
    const auto inst = generate_3r3x(16, gen);
    const auto p = to_polynomial(inst);
    SbParams params;
    params.dt = 1.1;
    params.c1 = 0.7;
    params.n_steps = 1000;
    bool solved = false;
    for (std::uint64_t seed = 0; seed < 100 && !solved; ++seed) {
      Rng rng(seed);
      const auto r = run_sb(p, params, rng, -16.0);
      solved = r.success;
      if (solved) CHECK(r.energy == -16.0);
    }
    CHECK(solved);
  }

  SUBCASE("wall invariant holds after every step") {
    Rng gen(5);
    const auto p = to_polynomial(generate_3r3x(32, gen));
    for (auto variant : {SbVariant::ballistic, SbVariant::discrete}) {
      SbParams params;
      params.variant = variant;
      params.n_steps = 300;
      Rng rng(9);
      bool ok = true;
      run_sb(p, params, rng, std::nullopt, [&](long, const OscillatorState& s) {
        for (std::size_t i = 0; i < s.x.size(); ++i) {
          if (std::abs(s.x[i]) > 1.0) ok = false;
          if (std::abs(s.x[i]) == 1.0 && s.y[i] != 0.0) ok = false;
        }
      });
      CHECK(ok);
    }
  }

  SUBCASE("deterministic for a fixed seed") {
    Rng gen(6);
    const auto p = to_polynomial(generate_3r3x(40, gen));
    for (auto variant : {SbVariant::ballistic, SbVariant::discrete}) {
      SbParams params;
      params.variant = variant;
      params.n_steps = 200;
      Rng r1(77), r2(77);
      const auto a = run_sb(p, params, r1, -40.0);
      const auto b = run_sb(p, params, r2, -40.0);
      CHECK(a.spins == b.spins);
      CHECK(a.energy == b.energy);
      CHECK(a.success == b.success);
      CHECK(a.steps_used == 200);
    }
  }

  SUBCASE("invalid parameters") {
    const PolyProblem p(1, {Term{1.0, {0}}});
    Rng rng(1);
    SbParams params;
    params.n_steps = 0;
    CHECK_THROWS_AS(run_sb(p, params, rng), std::invalid_argument);
    params.n_steps = 10;
    params.dt = 0.0;
    CHECK_THROWS_AS(run_sb(p, params, rng), std::invalid_argument);
    params.dt = 1.0;
    CHECK_THROWS_AS(run_sb(PolyProblem(0, std::vector<Term>{}), params, rng), std::invalid_argument);
  }
}

TEST_CASE("discrete SB ends in single-flip local minima") {
  // Soft statistical property of the final-time dynamics y' = c f.
  int local = 0;
  int total = 0;
  for (std::uint64_t k = 0; k < 4; ++k) {
    Rng gen(300 + k);
    const auto p = to_polynomial(generate_3r3x(100, gen));
    SbParams params;
    params.variant = SbVariant::discrete;
    params.dt = 0.7;
    params.c1 = 1.1;
    params.n_steps = 1000;
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
      Rng rng(derive_seed(11, k, seed));
      const auto r = run_sb(p, params, rng);
      if (is_local_minimum(p, r.spins)) ++local;
      ++total;
    }
  }
  MESSAGE("local-minimum fraction (3dSB, N=100): " << static_cast<double>(local) / total);
  CHECK(static_cast<double>(local) / total >= 0.9);
}
