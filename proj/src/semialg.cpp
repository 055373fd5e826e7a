// Copyright 2026 The symred Authors
// SPDX-License-Identifier: Apache-2.0
#include "symred/semialg.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "symred/errors.hpp"
#include "symred/linalg.hpp"
#include "symred/orbitmap.hpp"

namespace symred {

void SemiAlgebraicSet::validate() const {
  for (const auto* list : {&relations, &inequalities}) {
    for (const auto& p : *list) {
      if (p.arity() != ambient_dim()) throw ArityError("semi-algebraic set member has wrong arity");
    }
  }
}

Eigen::MatrixXd SemiAlgebraicSet::relation_jacobian(std::span<const double> v) const {
  if (v.size() != ambient_dim()) throw ArityError("point has wrong dimension for the set");
  Eigen::MatrixXd jac(relations.size(), ambient_dim());
  for (std::size_t r = 0; r < relations.size(); ++r) {
    for (std::size_t k = 0; k < ambient_dim(); ++k) jac(r, k) = relations[r].derivative(k).evaluate(v);
  }
  return jac;
}

SemiAlgebraicSet orbit_space(const SymmetryModel& m) {
  SemiAlgebraicSet s;
  s.names = m.invariant_names();
  s.relations = m.relations;
  s.inequalities = m.inequalities;
  return s;
}

SemiAlgebraicSet ReducedSpace::as_set() const {
  SemiAlgebraicSet s = base;
  for (const auto& c : constraints) {
    s.relations.push_back(c.polynomial - Polynomial::constant(c.polynomial.arity(), c.level));
  }
  if (base.maximal_rank) s.maximal_rank = *base.maximal_rank + static_cast<int>(constraints.size());
  return s;
}

ReducedSpace reduced_space(const VerifiedModel& m, std::span<const Rational> mu, int degree_bound,
                           const std::optional<SemiAlgebraicSet>& base) {
  const SymmetryModel& sm = m.model();
  if (mu.size() != sm.generator_count()) {
    throw ArityError("momentum level has " + std::to_string(mu.size()) + " entries, model has " +
                     std::to_string(sm.generator_count()) + " generators");
  }
  ReducedSpace rs;
  rs.base = base ? *base : orbit_space(sm);
  rs.model_name = sm.name;
  rs.mu.assign(mu.begin(), mu.end());
  RewriteEngine engine(m, degree_bound);
  auto rewrite = [&](const Polynomial& p, const std::string& label) {
    auto q = engine.express(p);
    if (std::holds_alternative<NotExpressible>(q)) {
      throw PreconditionError("momentum constraint " + label +
                              " is not expressible in the invariants at degree bound " +
                              std::to_string(degree_bound));
    }
    return std::get<Polynomial>(q);
  };

  const auto sc = generator_structure_constants(m);
  const bool abelian =
      std::holds_alternative<StructureConstants>(sc) && std::get<StructureConstants>(sc).abelian();
  if (abelian) {
    for (std::size_t i = 0; i < sm.generator_count(); ++i) {
      const std::string label = sm.generators[i].name;
      rs.constraints.push_back({rewrite(sm.generators[i].expr, label), mu[i], label});
    }
    return rs;
  }
  Polynomial casimir(sm.dimension());
  Rational level(0);
  for (std::size_t i = 0; i < sm.generator_count(); ++i) {
    casimir += sm.generators[i].expr * sm.generators[i].expr;
    level += mu[i] * mu[i];
  }
  for (const auto& g : sm.generators) {
    if (!bracket(casimir, g.expr, sm.structure).is_zero()) {
      throw PreconditionError("sum of squared generators is not invariant; no momentum constraint");
    }
  }
  rs.constraints.push_back({rewrite(casimir, "|J|^2"), level, "|J|^2"});
  return rs;
}

MembershipReport membership(const SemiAlgebraicSet& s, std::span<const double> v, double tol) {
  if (v.size() != s.ambient_dim()) throw ArityError("point has wrong dimension for the set");
  if (!(tol > 0)) throw PreconditionError("membership tolerance must be positive");
  MembershipReport r;
  r.in_set = true;
  for (const auto& p : s.relations) {
    const double val = p.evaluate(v);
    r.relation_residuals.push_back(val);
    if (!(std::abs(val) <= tol)) r.in_set = false;
  }
  for (const auto& p : s.inequalities) {
    const double val = p.evaluate(v);
    r.inequality_values.push_back(val);
    if (!(val >= -tol)) r.in_set = false;
  }
  return r;
}

Classification classify_point(const SemiAlgebraicSet& s, std::span<const double> v,
                              const ClassifyOptions& opt) {
  if (!membership(s, v, opt.membership_tol).in_set) {
    throw PreconditionError("classify_point: point is not in the set");
  }
  if (!s.maximal_rank) throw PreconditionError("classify_point: maximal rank unavailable");
  Classification c;
  c.maximal_rank = *s.maximal_rank;
  c.rank = s.relations.empty() ? 0 : linalg::numerical_rank(s.relation_jacobian(v), opt.rank_tol);
  c.kind = c.rank < c.maximal_rank ? PointKind::Singular : PointKind::Nonsingular;
  return c;
}

std::optional<int> estimate_maximal_rank(const SemiAlgebraicSet& s, const Window& window,
                                         std::size_t samples, std::uint64_t seed,
                                         const ClassifyOptions& opt) {
  const std::size_t k = s.ambient_dim();
  if (window.lo.size() != k || window.hi.size() != k) throw ArityError("window has wrong dimension");
  std::vector<CompiledPolynomial> rel;
  std::vector<std::vector<CompiledPolynomial>> grad;
  for (const auto& p : s.relations) {
    rel.emplace_back(p);
    std::vector<CompiledPolynomial> g;
    for (const auto& d : gradient(p)) g.emplace_back(d);
    grad.push_back(std::move(g));
  }
  std::optional<int> best;
  std::vector<double> v(k);
  Eigen::VectorXd r(rel.size());
  Eigen::MatrixXd jac(rel.size(), k);
  for (std::size_t n = 0; n < samples; ++n) {
    auto rng = stream_engine(seed, n);
    for (std::size_t i = 0; i < k; ++i) {
      std::uniform_real_distribution<double> u(window.lo[i], window.hi[i]);
      v[i] = u(rng);
    }
    for (int it = 0; it < 60 && !rel.empty(); ++it) {
      for (std::size_t q = 0; q < rel.size(); ++q) {
        r(q) = rel[q](v);
        for (std::size_t i = 0; i < k; ++i) jac(q, i) = grad[q][i](v);
      }
      if (r.lpNorm<Eigen::Infinity>() <= 1e-14) break;
      const Eigen::VectorXd step = jac.completeOrthogonalDecomposition().solve(r);
      for (std::size_t i = 0; i < k; ++i) v[i] -= step(i);
    }
    if (!membership(s, v, opt.membership_tol).in_set) continue;
    const int rank = rel.empty() ? 0 : linalg::numerical_rank(s.relation_jacobian(v), opt.rank_tol);
    if (!best || rank > *best) best = rank;
  }
  return best;
}

// ---- surface sampling --------------------------------------------------------------

namespace {

int degree_in(const Polynomial& p, std::size_t var) {
  int d = 0;
  for (const auto& [e, c] : p.terms()) d = std::max(d, static_cast<int>(e[var]));
  return d;
}

struct Elimination {
  std::vector<std::pair<std::size_t, Polynomial>> solved;  // coordinate -> chart polynomial
  Polynomial relation;
};

Elimination eliminate(const SemiAlgebraicSet& s, const Chart& chart) {
  const std::size_t k = s.ambient_dim();
  std::vector<Polynomial> rels;
  for (const auto& r : s.relations) {
    if (!r.is_zero()) rels.push_back(r);
  }
  Elimination out;
  for (std::size_t c = 0; c < k; ++c) {
    if (c == chart.u || c == chart.w || c == chart.solved) continue;
    std::size_t pick = rels.size();
    Rational coef;
    for (std::size_t q = 0; q < rels.size(); ++q) {
      if (degree_in(rels[q], c) != 1) continue;
      const Polynomial d = rels[q].derivative(c);
      if (!d.is_constant()) continue;
      pick = q;
      coef = d.coefficient(Exponent(k, 0));
      break;
    }
    if (pick == rels.size()) {
      throw PreconditionError("chart: coordinate " + s.names[c] +
                              " cannot be eliminated by a relation linear in it");
    }
    const Polynomial var = Polynomial::variable(k, c);
    const Polynomial value = (var * coef - rels[pick]) * (1 / coef);
    rels.erase(rels.begin() + static_cast<long>(pick));
    for (auto& r : rels) r = r.substitute(c, value);
    for (auto& [idx, p] : out.solved) p = p.substitute(c, value);
    out.solved.emplace_back(c, value);
  }
  std::vector<Polynomial> rest;
  for (const auto& r : rels) {
    if (!r.is_zero()) rest.push_back(r);
  }
  if (rest.size() != 1) {
    throw PreconditionError("chart: expected one relation after elimination, found " +
                            std::to_string(rest.size()));
  }
  if (degree_in(rest[0], chart.solved) == 0) {
    throw PreconditionError("chart: remaining relation does not involve " + s.names[chart.solved]);
  }
  out.relation = rest[0];
  return out;
}

struct Scanner {
  CompiledPolynomial f, df;
  std::size_t solved;
  double lo, hi;
  int samples;

  double eval(const CompiledPolynomial& g, std::vector<double>& x, double s) const {
    x[solved] = s;
    return g(x);
  }

  double bisect(const CompiledPolynomial& g, std::vector<double>& x, double a, double b) const {
    double fa = eval(g, x, a);
    for (int it = 0; it < 200; ++it) {
      const double m = 0.5 * (a + b);
      if (m == a || m == b) break;
      const double fm = eval(g, x, m);
      if (fm == 0.0) return m;
      if ((fm < 0) == (fa < 0)) {
        a = m;
        fa = fm;
      } else {
        b = m;
      }
    }
    return 0.5 * (a + b);
  }

  // Roots of f along the solved axis, ascending, touching roots twice.
  std::vector<double> roots(std::vector<double> x) const {
    std::vector<double> s(samples + 1), fv(samples + 1);
    double fmax = 0.0, dmax = 0.0;
    for (int t = 0; t <= samples; ++t) {
      s[t] = lo + (hi - lo) * t / samples;
      fv[t] = eval(f, x, s[t]);
      fmax = std::max(fmax, std::abs(fv[t]));
      dmax = std::max(dmax, std::abs(eval(df, x, s[t])));
    }
    const double zero_tol = 1e-12 * (1.0 + fmax);
    const double flat_tol = 1e-9 * (1.0 + dmax);
    std::vector<double> out;
    auto sign = [](double v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); };
    for (int t = 0; t <= samples; ++t) {
      if (fv[t] == 0.0) {
        const bool interior = t > 0 && t < samples;
        bool twice;
        if (interior && fv[t - 1] != 0.0 && fv[t + 1] != 0.0) {
          twice = sign(fv[t - 1]) == sign(fv[t + 1]);
        } else {
          twice = std::abs(eval(df, x, s[t])) <= flat_tol;
        }
        out.push_back(s[t]);
        if (twice) out.push_back(s[t]);
        continue;
      }
      if (t > 0 && t < samples && fv[t - 1] != 0.0 && fv[t + 1] != 0.0 &&
          sign(fv[t - 1]) == sign(fv[t]) && sign(fv[t + 1]) == sign(fv[t]) &&
          std::abs(fv[t]) < std::abs(fv[t - 1]) && std::abs(fv[t]) <= std::abs(fv[t + 1])) {
        // Local minimum of |f| without a sign change: a fold or a missed pair.
        const double da = eval(df, x, s[t - 1]), db = eval(df, x, s[t + 1]);
        if (sign(da) * sign(db) < 0) {
          const double m = bisect(df, x, s[t - 1], s[t + 1]);
          const double fm = eval(f, x, m);
          if (sign(fm) == -sign(fv[t])) {
            out.push_back(bisect(f, x, s[t - 1], m));
            out.push_back(bisect(f, x, m, s[t + 1]));
          } else if (std::abs(fm) <= zero_tol) {
            out.push_back(m);
            out.push_back(m);
          }
        }
      }
      if (t < samples && fv[t + 1] != 0.0 && sign(fv[t]) * sign(fv[t + 1]) < 0) {
        out.push_back(bisect(f, x, s[t], s[t + 1]));
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }
};

}  // namespace

Mesh sample_surface(const SemiAlgebraicSet& s, const Chart& chart, const MeshOptions& opt,
                    Execution exec) {
  s.validate();
  const std::size_t k = s.ambient_dim();
  if (chart.u >= k || chart.w >= k || chart.solved >= k || chart.u == chart.w ||
      chart.u == chart.solved || chart.w == chart.solved) {
    throw PreconditionError("chart: need three distinct coordinates of the set");
  }
  if (opt.grid < 1 || opt.scan < 2) throw PreconditionError("mesh grid and scan must be positive");
  if (!(opt.u_range[0] < opt.u_range[1]) || !(opt.w_range[0] < opt.w_range[1])) {
    throw PreconditionError("mesh window must be well ordered");
  }
  const Elimination elim = eliminate(s, chart);
  const std::array<double, 2> srange =
      opt.solved_range.value_or(std::array<double, 2>{std::min(opt.u_range[0], opt.w_range[0]),
                                                      std::max(opt.u_range[1], opt.w_range[1])});
  if (!(srange[0] < srange[1])) throw PreconditionError("solved range must be well ordered");
  const Scanner scanner{CompiledPolynomial(elim.relation),
                        CompiledPolynomial(elim.relation.derivative(chart.solved)), chart.solved,
                        srange[0], srange[1], opt.scan};
  std::vector<std::pair<std::size_t, CompiledPolynomial>> solved;
  for (const auto& [idx, p] : elim.solved) solved.emplace_back(idx, CompiledPolynomial(p));

  const int n = opt.grid;
  const std::size_t nodes = static_cast<std::size_t>(n + 1) * (n + 1);
  std::vector<std::vector<std::vector<double>>> node_points(nodes);
  std::vector<std::vector<char>> node_valid(nodes);
  const long total = static_cast<long>(nodes);
#pragma omp parallel for schedule(dynamic, 8) if (exec == Execution::Parallel)
  for (long id = 0; id < total; ++id) {
    const int i = static_cast<int>(id / (n + 1)), j = static_cast<int>(id % (n + 1));
    std::vector<double> x(k, 0.0);
    x[chart.u] = opt.u_range[0] + (opt.u_range[1] - opt.u_range[0]) * i / n;
    x[chart.w] = opt.w_range[0] + (opt.w_range[1] - opt.w_range[0]) * j / n;
    for (double root : scanner.roots(x)) {
      std::vector<double> v = x;
      v[chart.solved] = root;
      for (const auto& [idx, p] : solved) v[idx] = p(v);
      node_valid[id].push_back(membership(s, v, opt.tol).in_set ? 1 : 0);
      node_points[id].push_back(std::move(v));
    }
  }

  Mesh mesh;
  std::map<std::vector<long long>, std::size_t> index;
  std::vector<std::vector<long>> node_index(nodes);
  for (std::size_t id = 0; id < nodes; ++id) {
    for (std::size_t r = 0; r < node_points[id].size(); ++r) {
      mesh.sign_change_found = true;
      if (!node_valid[id][r]) {
        ++mesh.dropped_vertices;
        node_index[id].push_back(-1);
        continue;
      }
      const auto& v = node_points[id][r];
      std::vector<long long> key;
      for (double c : v) key.push_back(std::llround(c * 1e12));
      auto [it, inserted] = index.try_emplace(key, mesh.vertices.size());
      if (inserted) {
        mesh.vertices.push_back(v);
        const auto rep = membership(s, v, opt.tol);
        for (double q : rep.relation_residuals) mesh.residual_max = std::max(mesh.residual_max, std::abs(q));
        for (double q : rep.inequality_values) mesh.residual_max = std::max(mesh.residual_max, -q);
      }
      node_index[id].push_back(static_cast<long>(it->second));
    }
  }
  auto at = [&](int i, int j, std::size_t sheet) -> long {
    const auto& list = node_index[static_cast<std::size_t>(i) * (n + 1) + j];
    return sheet < list.size() ? list[sheet] : -1;
  };
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      std::size_t sheets = 0;
      for (auto [di, dj] : std::initializer_list<std::pair<int, int>>{{0, 0}, {1, 0}, {1, 1}, {0, 1}}) {
        sheets = std::max(sheets, node_index[static_cast<std::size_t>(i + di) * (n + 1) + j + dj].size());
      }
      for (std::size_t sh = 0; sh < sheets; ++sh) {
        const long a = at(i, j, sh), b = at(i + 1, j, sh), c = at(i + 1, j + 1, sh), d = at(i, j + 1, sh);
        for (auto [p, q, r] : {std::array<long, 3>{a, b, c}, std::array<long, 3>{a, c, d}}) {
          if (p < 0 || q < 0 || r < 0 || p == q || q == r || p == r) continue;
          mesh.triangles.push_back({static_cast<std::size_t>(p), static_cast<std::size_t>(q),
                                    static_cast<std::size_t>(r)});
        }
      }
    }
  }
  return mesh;
}

}  // namespace symred
