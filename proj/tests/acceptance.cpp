// Copyright 2026 The symred Authors
// SPDX-License-Identifier: Apache-2.0
//
// One PASS/FAIL line per acceptance criterion. The exit status
// is nonzero when any criterion fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "cli.hpp"
#include "support.hpp"
#include "symred/catalog.hpp"
#include "symred/errors.hpp"
#include "symred/orbitmap.hpp"
#include "symred/releq.hpp"
#include "symred/semialg.hpp"
#include "symred/strata.hpp"

using namespace symred;
namespace fs = std::filesystem;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) detail = what;
      pass = false;
    }
  }
};

VerifiedModel catalog(const std::string& key, const CatalogParams& p = {}) {
  return require_verified(catalog_model(key, p));
}

std::vector<Rational> Q(std::initializer_list<int> v) {
  std::vector<Rational> out;
  for (int x : v) out.emplace_back(x);
  return out;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

const std::string kPhaseH = "x1^2 + x2^2 + x3^2 + y1^2 + y2^2 + y3^2";

// 1
Verdict exact_invariance() {
  Verdict v;
  std::size_t brackets = 0;
  for (const auto& d : catalog_descriptors()) {
    const InvarianceReport r = verify_invariance(catalog_model(d.key));
    brackets += r.entries.size();
    v.require(r.all_pass(), d.key + ": nonzero {rho_i, J_j}");
  }
  if (v.pass) v.detail = std::to_string(brackets) + " brackets exactly zero over 7 models";
  return v;
}

// 2
Verdict exact_relations() {
  Verdict v;
  for (const char* key : {"so3_cotangent_r6", "so3_diag_r6", "so3_diag_r9", "oscillator_r8"}) {
    v.require(verify_relations(catalog_model(key)).all_pass(), std::string(key) + " relation pullback nonzero");
  }
  const SymmetryModel kl = catalog_model("kl_resonance", {{"k", "1"}, {"l", "2"}});
  v.require(kl.relations.at(0) == poly_parse("R1^2 + R2^2 - 1/2*(I1 + I2)^2*(I1 - I2)", kl.invariant_names()),
            "kl(1,2) relation differs from 1/2 (I1+I2)^2 (I1-I2)");
  for (const auto& [k, l] : std::vector<std::pair<int, int>>{{1, 2}, {1, 3}, {2, 3}, {3, -1}, {2, 5}}) {
    const SymmetryModel m = catalog_model("kl_resonance", {{"k", std::to_string(k)}, {"l", std::to_string(l)}});
    v.require(verify_relations(m).all_pass(), "kl relation fails at some (k,l)");
  }
  const VerifiedModel osc = catalog("oscillator_r8");
  std::mt19937_64 rng(2026);
  double worst = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const auto x = symred::testing::normal_point(8, rng);
    const Eigen::VectorXd r = orbit_eval(osc, x);
    const double a = r(0) * r(0) + r(1) * r(1) - r(2) * r(2) - r(4) * r(4), b = r(0) * r(1) - r(2) * r(4);
    const double lhs = a * a - 4 * b * b, rhs = 4 * r(3) * r(3) + 4 * r(5) * r(5);
    worst = std::max(worst, std::abs(lhs - rhs) / (a * a + 4 * b * b + rhs));
  }
  v.require(worst <= 1e-10, "quartic relative residual " + fmt(worst));
  if (v.pass) v.detail = "pullbacks exact; quartic max relative residual " + fmt(worst) + " at 1000 points";
  return v;
}

// 3
Verdict induced_structures() {
  Verdict v;
  v.require(induced_structure(catalog("so3_diag_r6"), 2).is_zero(), "so3_diag_r6 induced matrix nonzero");
  v.require(induced_structure(catalog("so3_r3"), 2).is_zero(), "so3_r3 bracket nonzero");
  const std::vector<std::string> n{"v1", "v2", "v3", "v4"};
  auto T = [&](const std::string& s) { return poly_parse(s, n); };
  for (const auto& c : std::vector<std::array<std::string, 3>>{{"1", "1", "1"}, {"2", "3", "5"}, {"1/2", "7/3", "4"},
                                                                 {"5/4", "1", "9/2"}}) {
    const InducedStructure w =
        induced_structure(catalog("so3_diag_r9_scaled", {{"cx", c[0]}, {"cy", c[1]}, {"cz", c[2]}}), 2);
    const Rational rx = 1 / Rational(c[0]), ry = 1 / Rational(c[1]), rz = 1 / Rational(c[2]);
    const Polynomial v4 = T("v4");
    // Closed-form upper triangle; the (3,4) entry uses (v2*v3 - v1).
    const std::vector<std::tuple<int, int, Polynomial>> upper{
        {0, 1, rx * v4},
        {0, 2, -(ry * v4)},
        {1, 2, rz * v4},
        {0, 3, rx * T("v1*v3 - v2") - ry * T("v1*v2 - v3")},
        {1, 3, rx * T("v1 - v2*v3") + rz * T("v1*v2 - v3")},
        {2, 3, ry * T("v2*v3 - v1") - rz * T("v1*v3 - v2")}};
    for (const auto& [i, j, e] : upper) {
      v.require(w.entries[i][j] == e && w.entries[j][i] == -e, "scaled entry mismatch at c=" + c[0] + "," + c[1] +
                                                                   "," + c[2]);
    }
    for (int i = 0; i < 4; ++i) v.require(w.entries[i][i].is_zero(), "scaled diagonal nonzero");
  }
  if (v.pass) v.detail = "diag_r6 zero, so3_r3 zero, scaled matrix exact for 4 rational scalings";
  return v;
}

// 4
Verdict rank_diagnostics() {
  Verdict v;
  for (const auto& d : catalog_descriptors()) {
    const VerifiedModel m = catalog(d.key);
    std::mt19937_64 rng(404);
    for (int t = 0; t < 1000; ++t) {
      const auto x = symred::testing::normal_point(m->dimension(), rng);
      const RankReport r = rank_report(m, x);
      v.require(r.rank_induced % 2 == 0, d.key + ": odd induced rank");
      v.require(r.identity_holds(), d.key + ": rank identity fails");
      if (m->structure.is_canonical() && t < 200) {
        v.require(kernel_span_check(m, x).verdict == SpanVerdict::Pass, d.key + ": kernel_span_check fails");
      }
    }
  }
  const VerifiedModel cot = catalog("so3_cotangent_r6");
  std::mt19937_64 rng(405);
  for (int t = 0; t < 50; ++t) {
    const auto q = symred::testing::rational_point(6, rng);
    const auto ex = symred::testing::exact_ranks(cot.model(), q);
    const InducedRankDefect def = induced_rank_defect(cot, symred::testing::to_double(q));
    v.require(def.rank_drho == ex.drho && def.rank_induced == ex.induced, "defect disagrees with the exact oracle");
    if (ex.drho == 3) v.require(def.rank_drho == 3 && def.rank_induced == 2, "generic cotangent defect is not 3 vs 2");
  }
  if (v.pass) v.detail = "even + identity at 7000 points; kernel span ok; cotangent rank drho 3 vs induced 2";
  return v;
}

// 5
Verdict principal_orbits() {
  Verdict v;
  std::string worst;
  double slowest = 0.0;
  for (const auto& d : catalog_descriptors()) {
    const VerifiedModel m = catalog(d.key);
    const auto t0 = std::chrono::steady_clock::now();
    const PrincipalEstimate e = principal_stratum_estimate(m, 10000, 5);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    slowest = std::max(slowest, secs);
    v.require(e.frequency >= 0.999, d.key + ": frequency " + fmt(e.frequency));
    v.require(secs < 30.0, d.key + ": " + fmt(secs) + " s");
  }
  if (v.pass) v.detail = "10000 samples per model, frequency >= 0.999, slowest " + fmt(slowest) + " s";
  return v;
}

// 6
Verdict stratum_detection() {
  Verdict v;
  const VerifiedModel r3 = catalog("so3_r3");
  std::mt19937_64 rng(606);
  for (int t = 0; t < 100; ++t) {
    v.require(stratum_signature(r3, symred::testing::normal_point(3, rng)) == StratumSignature{1, 2},
              "so3_r3 off-origin signature");
  }
  v.require(stratum_signature(r3, std::vector<double>{0, 0, 0}) == StratumSignature{0, 0}, "so3_r3 origin");
  const VerifiedModel cot = catalog("so3_cotangent_r6");
  const StratumSignature generic = stratum_signature(cot, std::vector<double>{1, 0, 0, 0, 1, 0});
  const StratumSignature collinear = stratum_signature(cot, std::vector<double>{1, 2, -1, 2, 4, -2});
  v.require(collinear < generic && collinear.rank_drho < generic.rank_drho, "collinear pair does not drop");

  SemiAlgebraicSet s = *catalog_orbit_space("so3_diag_r9_scaled");
  s.relations.push_back(Polynomial::variable(4, 3));
  s.maximal_rank = 2;
  MeshOptions o;
  o.grid = 32;
  const Mesh mesh = sample_surface(s, Chart{0, 1, 2}, o);
  std::size_t singular = 0;
  for (const auto& x : mesh.vertices) singular += classify_point(s, x).kind == PointKind::Singular;
  v.require(singular == 4, "elliptope singular vertices " + std::to_string(singular));
  if (v.pass) {
    v.detail = "so3_r3 (1,2)/(0,0); collinear drops to (" + std::to_string(collinear.rank_drho) + "," +
               std::to_string(collinear.rank_orbit_span) + "); elliptope " + std::to_string(mesh.vertices.size()) +
               " vertices, 4 singular";
  }
  return v;
}

// Grid minimizer of a + b on {ab - c^2 = m^2}.
std::array<double, 3> leaf_grid_minimizer(double m) {
  double best = 1e300;
  std::array<double, 3> arg{};
  for (int i = -200; i <= 200; ++i) {
    const double c = 3.0 * m * i / 200.0;
    for (int j = 1; j <= 800; ++j) {
      const double a = 4.0 * m * j / 800.0, b = (m * m + c * c) / a;
      if (a + b < best) {
        best = a + b;
        arg = {a, b, c};
      }
    }
  }
  return arg;
}

// 7; its accepted equilibria feed 8.
Verdict relative_equilibria(std::vector<std::tuple<Polynomial, EquilibriumResult>>& accepted) {
  Verdict v;
  const VerifiedModel cot = catalog("so3_cotangent_r6");
  const auto n = cot->invariant_names();
  const Polynomial h = poly_parse(kPhaseH, cot->variables);
  const auto t0 = std::chrono::steady_clock::now();
  for (int m : {1, 2, 3}) {
    const double md = m;
    const SolveReport full = find_relative_equilibria(cot, h, std::vector<double>{0, 0, md});
    v.require(full.results.size() == 1, "full-space result count " + std::to_string(full.results.size()));
    if (full.results.empty()) continue;
    const EquilibriumResult& e = full.results[0];
    accepted.emplace_back(h, e);
    const std::array<double, 4> want{md, md, 0.0, md * md};
    double err = 0.0;
    for (int i = 0; i < 4; ++i) err = std::max(err, std::abs(e.image[i] - want[i]));
    v.require(err <= 1e-8 * md * md, "image off by " + fmt(err));
    v.require(e.residual <= 1e-10, "residual " + fmt(e.residual));
    v.require(e.stability == Stability::FormallyStable, std::string("stability ") + to_string(e.stability));

    const ReducedSpace rs = reduced_space(cot, Q({0, 0, m}), 2);
    const SolveReport red = find_reduced_stationary(cot, reduced_field(cot, poly_parse("a + b", n), 2), rs);
    bool found = false;
    for (const auto& r : red.results) {
      double d = 0.0;
      for (int i = 0; i < 4; ++i) d = std::max(d, std::abs(r.image[i] - e.image[i]));
      found = found || d <= 1e-8 * md * md;
    }
    v.require(found, "reduced solver misses the image");
    const auto g = leaf_grid_minimizer(md);
    v.require(std::abs(g[0] - e.image[0]) <= 0.01 * md && std::abs(g[1] - e.image[1]) <= 0.01 * md &&
                  std::abs(g[2] - e.image[2]) <= 0.02 * md,
              "grid oracle disagrees");
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  v.require(secs < 5.0, "runtime " + fmt(secs) + " s");
  if (v.pass) v.detail = "m = 1,2,3: image (m,m,0,m^2), FormallyStable, reduced + grid agree, " + fmt(secs) + " s";
  return v;
}

Verdict reduction_consistency(std::vector<std::tuple<Polynomial, EquilibriumResult>> accepted) {
  Verdict v;
  const VerifiedModel cot = catalog("so3_cotangent_r6");
  // More Hamiltonians on top of the criterion 7 runs.
  for (const std::string& extra : std::vector<std::string>{kPhaseH + " - 2*(x1*y1 + x2*y2 + x3*y3)^2", kPhaseH + " + x1*y1 + x2*y2 + x3*y3",
                                  "2*(x1^2 + x2^2 + x3^2) + y1^2 + y2^2 + y3^2"}) {
    const Polynomial h = poly_parse(extra, cot->variables);
    for (const auto& e : find_relative_equilibria(cot, h, std::vector<double>{0, 0, 1}).results) {
      accepted.emplace_back(h, e);
    }
  }
  double worst = 0.0;
  for (const auto& [h, e] : accepted) {
    const auto hred = reduced_hamiltonian(cot, h, 2);
    v.require(hred.has_value(), "Hamiltonian not invariant");
    if (!hred) continue;
    const double r = reduced_field(cot, *hred, 2)(e.image).norm();
    worst = std::max(worst, r);
  }
  v.require(worst <= 1e-9, "field residual " + fmt(worst));
  v.require(accepted.size() >= 4, "too few accepted equilibria");
  if (v.pass) v.detail = std::to_string(accepted.size()) + " equilibria, max field residual " + fmt(worst);
  return v;
}

// 9
Verdict trivial_hamiltonians() {
  Verdict v;
  const VerifiedModel cot = catalog("so3_cotangent_r6");
  const std::vector<std::string> jn{"J1", "J2", "J3"};
  std::mt19937_64 rng(909);
  for (const std::string& gtext : std::vector<std::string>{"J1^2 + J2^2 + J3^2", "J3", "J1*J2 + 3*J3^2 - J1"}) {
    const Polynomial g = poly_parse(gtext, jn);
    std::vector<Polynomial> js;
    for (const auto& j : cot->generators) js.push_back(j.expr);
    const Polynomial h = g.compose(js);
    const auto back = as_momentum_function(cot, h, 2);
    v.require(back && *back == g, "as_momentum_function fails for " + gtext);
    for (int t = 0; t < 20; ++t) {
      const auto x = symred::testing::rational_point(6, rng);
      std::vector<Rational> mu;
      for (const auto& j : cot->generators) mu.push_back(j.expr.evaluate(std::span<const Rational>(x)));
      const auto lambda = momentum_multipliers(cot, g, x);
      for (std::size_t i = 0; i < 3; ++i) v.require(lambda[i] == poly_diff(g, i).evaluate(std::span<const Rational>(mu)), "lambda is not dG/dJ");
      for (const auto& r : exact_equilibrium_residual(cot, h, x, lambda, mu)) v.require(r == 0, "nonzero exact residual");
    }
  }
  for (const auto& [key, cas] : std::vector<std::pair<std::string, std::string>>{
           {"so3_cotangent_r6", "d"}, {"so3_cotangent_r6", "a*b - c^2"}, {"kl_resonance", "I1"},
           {"so3_diag_r9_scaled", "v1 + v2 + v3"}, {"oscillator_r8", "H2 + 2*Xi - L1"}}) {
    const VerifiedModel m = catalog(key);
    const int bound = default_degree_bound(m.model());
    v.require(reduced_field(m, poly_parse(cas, m->invariant_names()), bound).identically_zero(),
              key + ": Casimir field not zero for " + cas);
  }
  if (v.pass) v.detail = "exact zero residuals at 60 rational points; 5 Casimir fields identically zero";
  return v;
}

// 10
Verdict determinism() {
  Verdict v;
  const fs::path dir = fs::temp_directory_path() / "symred_acceptance";
  fs::create_directories(dir);
  const std::vector<std::vector<std::string>> cmds{
      {"sample", "catalog:so3_diag_r9_scaled", "--fix", "v4=0", "--chart", "v1,v2->v3", "--window", "-1:1,-1:1"},
      {"sample", "catalog:so3_cotangent_r6", "--mu", "0,0,1", "--chart", "c,a->b", "--window", "-2:2,0.1:4",
       "--solved-range", "0:50"},
      {"releq", "catalog:so3_cotangent_r6", "--ham", kPhaseH, "--mu", "0,0,1", "--seed", "3"},
      {"releq", "catalog:so3_cotangent_r6", "--ham", "a + b", "--reduced", "--mu", "0,0,2", "--seed", "3"},
      {"strata", "catalog:oscillator_r8", "--random", "2000", "--seed", "11"},
      {"reduce", "catalog:oscillator_r8", "--mu", "1,0,0"},
  };
  std::size_t files = 0;
  for (std::size_t c = 0; c < cmds.size(); ++c) {
    std::string reference;
    int run = 0;
    for (int threads : {1, 2, 4, 1}) {
      setenv("SYMRED_THREADS", std::to_string(threads).c_str(), 1);
      const fs::path p = dir / ("c" + std::to_string(c) + "_" + std::to_string(run++) + ".json");
      auto args = cmds[c];
      args.push_back("--out");
      args.push_back(p.string());
      std::ostringstream out, err;
      v.require(cli::run(args, out, err) == 0, cmds[c][0] + " failed: " + err.str());
      std::ifstream in(p, std::ios::binary);
      std::ostringstream body;
      body << in.rdbuf();
      ++files;
      if (reference.empty()) {
        reference = body.str();
      } else {
        v.require(body.str() == reference, cmds[c][0] + " output differs with " + std::to_string(threads) + " threads");
      }
    }
  }
  unsetenv("SYMRED_THREADS");
  if (v.pass) v.detail = std::to_string(files) + " files byte-identical across thread counts 1, 2, 4";
  return v;
}

}  // namespace

int main() {
  std::vector<std::tuple<Polynomial, EquilibriumResult>> accepted;
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"exact invariance", exact_invariance},
      {"exact relations", exact_relations},
      {"induced structures", induced_structures},
      {"rank diagnostics", rank_diagnostics},
      {"principal orbits", principal_orbits},
      {"stratum detection", stratum_detection},
      {"relative equilibria", [&] { return relative_equilibria(accepted); }},
      {"reduction consistency", [&] { return reduction_consistency(accepted); }},
      {"trivial Hamiltonians", trivial_hamiltonians},
      {"determinism", determinism},
  };
  int failures = 0;
  const auto start = std::chrono::steady_clock::now();
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("criterion %2zu %-22s %s  %s  [%.2f s]\n", i + 1, criteria[i].first.c_str(), v.pass ? "PASS" : "FAIL",
                v.detail.c_str(), secs);
    std::fflush(stdout);
    failures += !v.pass;
  }
  const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("%d/%zu criteria pass  [%.2f s]\n", static_cast<int>(criteria.size()) - failures, criteria.size(), total);
  return failures == 0 ? 0 : 1;
}
