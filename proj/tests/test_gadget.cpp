#include <doctest.h>

#include <algorithm>

#include "hosb/error.hpp"
#include "hosb/gadget.hpp"
#include "hosb/xorsat.hpp"
#include "oracles.hpp"

using namespace hosb;

TEST_CASE("gadget coefficients") {
  const auto g0 = gadget_coefficients(0);
  CHECK(g0.j == 0.25);
  CHECK(g0.j_ancilla == 0.5);
  CHECK(g0.h == -0.25);
  CHECK(g0.h_ancilla == -0.5);
  const auto g1 = gadget_coefficients(1);
  CHECK(g1.j_ancilla == -0.5);
  CHECK(g1.h == 0.25);
}

TEST_CASE("single-term gadget: min over the ancilla is -1 or -1/2") {
  for (int b : {0, 1}) {
    const double k = b ? -1.0 : 1.0;
    const auto q = gadgetize(PolyProblem(3, {Term{k, {0, 1, 2}}}));
    REQUIRE(q.num_vars() == 4);
    for (std::uint64_t mask = 0; mask < 8; ++mask) {
      auto s = hosb::testing::spins_of_mask(mask, 3);
      s.push_back(1);
      const double e_plus = evaluate(q, s);
      s[3] = -1;
      const double e_minus = evaluate(q, s);
      const bool satisfied = s[0] * s[1] * s[2] == (b ? -1 : 1);
      CHECK(std::min(e_plus, e_minus) == (satisfied ? -1.0 : -0.5));
    }
  }
}

TEST_CASE("gadgetize passes low-degree terms through and rejects others") {
  const PolyProblem p(4, {Term{0.3, {3}}, Term{-0.7, {0, 3}}, Term{1.0, {0, 1, 2}}});
  const auto q = gadgetize(p);
  CHECK(q.num_vars() == 5);
  // With the ancilla minimized, energies match -(0.3 s3) + 0.7 s0 s3 + cubic part.
  for (std::uint64_t mask = 0; mask < 16; ++mask) {
    auto s = hosb::testing::spins_of_mask(mask, 4);
    const double original = evaluate(p, s);
    s.push_back(1);
    const double e1 = evaluate(q, s);
    s[4] = -1;
    const double e2 = evaluate(q, s);
    const double cubic_part = -(s[0] * s[1] * s[2]);
    const double gadget_part = cubic_part == -1.0 ? -1.0 : -0.5;
    CHECK(std::min(e1, e2) == original - cubic_part + gadget_part);
  }

  CHECK_THROWS_AS(gadgetize(PolyProblem(4, {Term{1.0, {0, 1, 2, 3}}})), UnsupportedReduction);
  CHECK_THROWS_AS(gadgetize(PolyProblem(3, {Term{0.5, {0, 1, 2}}})), UnsupportedReduction);
}

TEST_CASE("gadgetized 3R3X instances") {
  Rng rng(12);
  const auto inst = generate_3r3x(40, rng);
  const auto cubic = to_polynomial(inst);
  const auto quad = gadgetize(cubic);
  CHECK(quad.num_vars() == 80);
  CHECK(quad.max_degree() == 2);

  // Planted spins with per-clause best ancillas reach -N.
  auto s = spins_from_bits(*inst.planted);
  for (std::size_t m = 0; m < inst.n; ++m) {
    const auto& c = inst.clauses[m];
    const int sum = s[c[0]] + s[c[1]] + s[c[2]];
    const double j_anc = gadget_coefficients(inst.parity[m]).j_ancilla;
    // Ancilla energy: h~ a + J~ sum a = a (-1/2 + J~ sum); pick the sign minimizing it.
    s.push_back((-0.5 + j_anc * sum) > 0 ? -1 : 1);
  }
  CHECK(evaluate(quad, s) == -40.0);
  CHECK(evaluate(cubic, project_solution(s, 40)) == -40.0);
}

TEST_CASE("global argmin preserved on small instances") {
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    Rng rng(seed);
    const auto inst = generate_3r3x(8, rng);
    const auto cubic = to_polynomial(inst);
    const auto quad = gadgetize(cubic);
    const auto ex_cubic = exhaustive_minimize(cubic, 1 << 8);
    const auto ex_quad = exhaustive_minimize(quad, 1 << 16);
    CHECK(ex_quad.min_energy == ex_cubic.min_energy);
    std::vector<SpinConfig> projected;
    for (const auto& s : ex_quad.minimizers) projected.push_back(project_solution(s, 8));
    std::sort(projected.begin(), projected.end());
    projected.erase(std::unique(projected.begin(), projected.end()), projected.end());
    auto want = ex_cubic.minimizers;
    std::sort(want.begin(), want.end());
    CHECK(projected == want);
  }
}

TEST_CASE("project_solution") {
  const SpinConfig s{1, -1, 1, 1, -1, -1};
  CHECK(project_solution(s, 3) == SpinConfig{1, -1, 1});
  CHECK(project_solution(s, 6) == s);
  CHECK_THROWS_AS(project_solution(s, 7), std::invalid_argument);
}
