// Copyright 2026 The symred Authors
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "support.hpp"
#include "symred/catalog.hpp"
#include "symred/errors.hpp"
#include "symred/releq.hpp"

using namespace symred;

namespace {

std::vector<Rational> Q(std::initializer_list<int> v) {
  std::vector<Rational> out;
  for (int x : v) out.emplace_back(x);
  return out;
}

Polynomial phase(const VerifiedModel& m, const std::string& text) { return poly_parse(text, m->variables); }

// Brute-force minimum of a + b on the leaf d = m^2 of the cotangent orbit
// space, scanning c and a on a grid with b = (m^2 + c^2) / a.
std::array<double, 3> grid_minimizer(double m) {
  double best = 1e300;
  std::array<double, 3> arg{};
  for (int i = -200; i <= 200; ++i) {
    const double c = 3.0 * m * i / 200.0;
    for (int j = 1; j <= 800; ++j) {
      const double a = 4.0 * m * j / 800.0;
      const double b = (m * m + c * c) / a;
      if (a + b < best) {
        best = a + b;
        arg = {a, b, c};
      }
    }
  }
  return arg;
}

}  // namespace

TEST_CASE("reduced field examples") {
  const VerifiedModel cot = require_verified(catalog_model("so3_cotangent_r6"));
  const auto n = cot->invariant_names();
  const ReducedField f = reduced_field(cot, poly_parse("a + b", n), 2);
  REQUIRE(f.components().size() == 4);
  CHECK(f.components()[0] == poly_parse("4*c", n));
  CHECK(f.components()[1] == poly_parse("-4*c", n));
  CHECK(f.components()[2] == poly_parse("2*b - 2*a", n));
  CHECK(f.components()[3].is_zero());
  CHECK_FALSE(f.identically_zero());

  const ReducedField cas = reduced_field(cot, poly_parse("d", n), 2);
  CHECK(cas.identically_zero());
  const ReducedSpace rs = reduced_space(cot, Q({0, 0, 1}), 2);
  const SolveReport everywhere = find_reduced_stationary(cot, cas, rs);
  CHECK(everywhere.everywhere_stationary);

  const VerifiedModel sc = require_verified(catalog_model("so3_diag_r9_scaled", {{"cx", "2"}, {"cy", "3"}, {"cz", "5"}}));
  const InducedStructure w = induced_structure(sc, 2);
  const ReducedField v1 = reduced_field(sc, poly_parse("v1", sc->invariant_names()), 2);
  for (std::size_t i = 0; i < 4; ++i) CHECK(v1.components()[i] == w.entries[i][0]);
}

TEST_CASE("reduced Hamiltonians") {
  const VerifiedModel cot = require_verified(catalog_model("so3_cotangent_r6"));
  const auto h = reduced_hamiltonian(cot, phase(cot, "x1^2 + x2^2 + x3^2 + 3*(x1*y1 + x2*y2 + x3*y3)^2"), 2);
  REQUIRE(h);
  CHECK(*h == poly_parse("a + 3*c^2", cot->invariant_names()));
  CHECK_FALSE(reduced_hamiltonian(cot, phase(cot, "x1"), 2).has_value());
}

TEST_CASE("full-space relative equilibria of |x|^2 + |y|^2") {
  const VerifiedModel cot = require_verified(catalog_model("so3_cotangent_r6"));
  const Polynomial h = phase(cot, "x1^2 + x2^2 + x3^2 + y1^2 + y2^2 + y3^2");
  const ReducedField field = reduced_field(cot, poly_parse("a + b", cot->invariant_names()), 2);
  for (double m : {0.5, 1.0, 2.0, 3.0}) {
    SolveOptions opt;
    opt.seeds = 32;
    const SolveReport r = find_relative_equilibria(cot, h, std::vector<double>{0, 0, m}, opt);
    REQUIRE(r.results.size() == 1);
    const EquilibriumResult& e = r.results[0];
    const auto g = grid_minimizer(m);
    CHECK(e.image[0] == doctest::Approx(g[0]).epsilon(0.01));
    CHECK(e.image[1] == doctest::Approx(g[1]).epsilon(0.01));
    CHECK(std::abs(e.image[2] - g[2]) <= 0.02 * m);
    CHECK(e.image[0] == doctest::Approx(m).epsilon(1e-8));
    CHECK(e.image[1] == doctest::Approx(m).epsilon(1e-8));
    CHECK(std::abs(e.image[2]) < 1e-8);
    CHECK(e.image[3] == doctest::Approx(m * m).epsilon(1e-8));
    CHECK(e.stability == Stability::FormallyStable);
    // J3 = m with H = 2 J3 on the equilibrium: the multiplier is 2 e3.
    REQUIRE(e.multipliers.size() == 3);
    CHECK(std::abs(e.multipliers[0]) < 1e-8);
    CHECK(std::abs(e.multipliers[1]) < 1e-8);
    CHECK(e.multipliers[2] == doctest::Approx(2.0));
    // The image is stationary for the reduced field.
    CHECK(field(e.image).norm() <= 1e-9);
  }
}

TEST_CASE("reduced and full-space solutions agree") {
  const VerifiedModel cot = require_verified(catalog_model("so3_cotangent_r6"));
  const auto n = cot->invariant_names();
  const ReducedSpace rs = reduced_space(cot, Q({0, 0, 1}), 2);
  const SolveReport red = find_reduced_stationary(cot, reduced_field(cot, poly_parse("a + b", n), 2), rs);
  const SolveReport full = find_relative_equilibria(cot, phase(cot, "x1^2 + x2^2 + x3^2 + y1^2 + y2^2 + y3^2"),
                                                    std::vector<double>{0, 0, 1});
  REQUIRE(full.results.size() == 1);
  bool matched = false;
  for (const auto& e : red.results) {
    double d = 0.0;
    for (std::size_t i = 0; i < 4; ++i) d = std::max(d, std::abs(e.image[i] - full.results[0].image[i]));
    matched = matched || d <= 1e-9;
  }
  CHECK(matched);
}

TEST_CASE("exact residuals and momentum multipliers") {
  const VerifiedModel cot = require_verified(catalog_model("so3_cotangent_r6"));
  const Polynomial d = phase(cot, "(x2*y3 - x3*y2)^2 + (x3*y1 - x1*y3)^2 + (x1*y2 - x2*y1)^2");
  const auto g = as_momentum_function(cot, d, 2);
  REQUIRE(g);
  CHECK(*g == poly_parse("J1^2 + J2^2 + J3^2", std::vector<std::string>{"J1", "J2", "J3"}));
  std::mt19937_64 rng(61);
  for (int t = 0; t < 20; ++t) {
    const auto x = symred::testing::rational_point(6, rng);
    std::vector<Rational> mu;
    for (const auto& j : cot->generators) mu.push_back(j.expr.evaluate(std::span<const Rational>(x)));
    const auto lambda = momentum_multipliers(cot, *g, x);
    for (std::size_t i = 0; i < 3; ++i) CHECK(lambda[i] == 2 * mu[i]);
    for (const auto& r : exact_equilibrium_residual(cot, d, x, lambda, mu)) CHECK(r == 0);
  }
  CHECK_FALSE(as_momentum_function(cot, phase(cot, "x1^2"), 2).has_value());

  // |x|^2 + |y|^2 at x = k e1, y = k e2 with lambda = 2 e3.
  const Polynomial h = phase(cot, "x1^2 + x2^2 + x3^2 + y1^2 + y2^2 + y3^2");
  for (int k : {1, 2, 3}) {
    const auto res = exact_equilibrium_residual(cot, h, Q({k, 0, 0, 0, k, 0}), Q({0, 0, 2}), Q({0, 0, k * k}));
    for (const auto& r : res) CHECK(r == 0);
  }
  const auto off = exact_equilibrium_residual(cot, h, Q({1, 0, 0, 0, 1, 0}), Q({0, 0, 1}), Q({0, 0, 1}));
  bool nonzero = false;
  for (const auto& r : off) nonzero = nonzero || r != 0;
  CHECK(nonzero);
}

TEST_CASE("formal stability verdicts") {
  const VerifiedModel cot = require_verified(catalog_model("so3_cotangent_r6"));
  const std::vector<double> x{1, 0, 0, 0, 1, 0}, lambda{0, 0, 2};
  const Polynomial h = phase(cot, "x1^2 + x2^2 + x3^2 + y1^2 + y2^2 + y3^2");
  CHECK(formal_stability(cot, h, x, lambda).verdict == Stability::FormallyStable);

  // Subtracting 2 c^2 keeps the same critical point but bends the leaf the
  // other way along a = b.
  const Polynomial saddle = h - phase(cot, "(x1*y1 + x2*y2 + x3*y3)^2") * Rational(2);
  const StabilityReport s = formal_stability(cot, saddle, x, lambda);
  CHECK(s.verdict == Stability::Indefinite);
  const auto n = cot->invariant_names();
  const Polynomial hs = poly_parse("a + b - 2*c^2", n);
  const LeafOracle o = leaf_sampling_oracle(reduced_space(cot, Q({0, 0, 1}), 2), hs,
                                            std::vector<double>{1, 1, 0, 1}, 0.1, 400, 7);
  CHECK(o.accepted > 0);
  CHECK(o.below > 0);
  CHECK(o.above > 0);
  const LeafOracle stable = leaf_sampling_oracle(reduced_space(cot, Q({0, 0, 1}), 2), poly_parse("a + b", n),
                                                 std::vector<double>{1, 1, 0, 1}, 0.1, 400, 7);
  CHECK(stable.local_min());

  // A pure momentum function is constant on the reduced space: degenerate.
  const Polynomial d = phase(cot, "(x2*y3 - x3*y2)^2 + (x3*y1 - x1*y3)^2 + (x1*y2 - x2*y1)^2");
  CHECK(formal_stability(cot, d, x, lambda).verdict == Stability::Degenerate);
}

TEST_CASE("oscillator stationary set at H2 = 1") {
  const VerifiedModel osc = require_verified(catalog_model("oscillator_r8"));
  const Polynomial hred = oscillator_hamiltonian(Rational(1));
  const ReducedSpace rs = reduced_space(osc, Q({1, 0, 0}), default_degree_bound(osc.model()));
  SolveOptions opt;
  opt.seeds = 96;
  const SolveReport r = find_reduced_stationary(osc, reduced_field(osc, hred, default_degree_bound(osc.model())), rs, opt);
  REQUIRE_FALSE(r.results.empty());

  // Leaf N = r cos t, S = r sin t, r = (1 - K^2)/2 with
  // H~ = const + 3/4 K^2 + 3/2 N. Flag grid nodes where both chart
  // derivatives vanish.
  std::vector<std::array<double, 3>> flagged;
  for (int i = -100; i <= 100; ++i) {
    const double k = i / 100.0, rad = (1 - k * k) / 2;
    for (int j = 0; j < 200; ++j) {
      const double t = 2 * std::numbers::pi * j / 200.0;
      const double dk = 1.5 * k - 1.5 * k * std::cos(t), dt = -1.5 * rad * std::sin(t);
      if (std::abs(dk) < 1e-9 && std::abs(dt) < 1e-9) flagged.push_back({rad * std::cos(t), k, rad * std::sin(t)});
    }
  }
  CHECK(flagged.size() > 100);
  for (const auto& e : r.results) {
    REQUIRE(e.point.size() == 6);
    CHECK(e.point[0] == doctest::Approx(1.0));
    double best = 1e300;
    for (const auto& f : flagged) {
      best = std::min(best, std::hypot(e.point[3] - f[0], e.point[4] - f[1], e.point[5] - f[2]));
    }
    CHECK_MESSAGE(best < 0.02, "N=", e.point[3], " K=", e.point[4], " S=", e.point[5]);
  }
}

TEST_CASE("solver determinism and non-convergence") {
  const VerifiedModel cot = require_verified(catalog_model("so3_cotangent_r6"));
  const Polynomial h = phase(cot, "x1^2 + x2^2 + x3^2 + y1^2 + y2^2 + y3^2");
  SolveOptions a;
  a.seeds = 16;
  a.exec = Execution::Serial;
  SolveOptions b = a;
  b.exec = Execution::Parallel;
  const SolveReport ra = find_relative_equilibria(cot, h, std::vector<double>{0, 0, 1}, a);
  const SolveReport rb = find_relative_equilibria(cot, h, std::vector<double>{0, 0, 1}, b);
  REQUIRE(ra.results.size() == rb.results.size());
  CHECK(ra.converged_seeds == rb.converged_seeds);
  for (std::size_t i = 0; i < ra.results.size(); ++i) {
    CHECK(ra.results[i].point == rb.results[i].point);
    CHECK(ra.results[i].multipliers == rb.results[i].multipliers);
  }

  SolveOptions none = a;
  none.max_iterations = 0;
  const SolveReport nr = find_relative_equilibria(cot, h, std::vector<double>{0, 0, 1}, none);
  CHECK(nr.results.empty());
  CHECK(nr.note == "NonConvergence");

  const VerifiedModel r3 = require_verified(catalog_model("so3_r3"));
  CHECK_THROWS_AS((void)find_relative_equilibria(r3, phase(r3, "x1^2"), std::vector<double>{1}), PreconditionError);
}
