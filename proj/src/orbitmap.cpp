// Copyright 2026 The symred Authors
// SPDX-License-Identifier: Apache-2.0
#include "symred/orbitmap.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace symred {

namespace {

void check_arity(const SymmetryModel& m, std::size_t n) {
  if (n != m.dimension()) {
    throw ArityError("phase point has " + std::to_string(n) + " coordinates, model '" + m.name +
                     "' has " + std::to_string(m.dimension()));
  }
}

}  // namespace

Eigen::VectorXd orbit_eval(const VerifiedModel& m, std::span<const double> x) {
  check_arity(m.model(), x.size());
  return m.numeric().rho(x);
}

std::vector<Rational> orbit_eval(const VerifiedModel& m, std::span<const Rational> x) {
  check_arity(m.model(), x.size());
  std::vector<Rational> v;
  for (const auto& r : m->invariants) v.push_back(r.expr.evaluate(x));
  return v;
}

Eigen::MatrixXd orbit_jacobian(const VerifiedModel& m, std::span<const double> x) {
  check_arity(m.model(), x.size());
  return m.numeric().drho(x);
}

std::vector<std::vector<Rational>> orbit_jacobian(const VerifiedModel& m,
                                                  std::span<const Rational> x) {
  check_arity(m.model(), x.size());
  std::vector<std::vector<Rational>> d;
  for (const auto& r : m->invariants) {
    std::vector<Rational> row;
    for (std::size_t k = 0; k < x.size(); ++k) row.push_back(r.expr.derivative(k).evaluate(x));
    d.push_back(std::move(row));
  }
  return d;
}

Polynomial pullback(const SymmetryModel& m, const Polynomial& q) {
  if (q.arity() != m.invariant_count()) throw ArityError("pullback: polynomial is not over the invariants");
  const auto rho = m.invariant_polynomials();
  if (q.is_zero()) return Polynomial(m.dimension());
  return q.compose(rho);
}

RewriteBoundExceeded::RewriteBoundExceeded(std::size_t i, std::size_t j, int bound)
    : Error("bracket {rho_" + std::to_string(i + 1) + ", rho_" + std::to_string(j + 1) +
            "} is not expressible in the invariants at degree bound " + std::to_string(bound)),
      i_(i),
      j_(j) {}

// ---- rewrite engine ------------------------------------------------------------

RewriteEngine::RewriteEngine(const VerifiedModel& m, int degree_bound)
    : model_(m), bound_(degree_bound) {
  if (degree_bound < 1) throw PreconditionError("degree bound must be >= 1");
  for (const auto& r : m->invariants) {
    if (!r.expr.is_homogeneous() || r.expr.total_degree() <= 0) homogeneous_ = false;
    weights_.push_back(std::max(r.expr.total_degree(), 0));
  }
}

const RewriteEngine::Block& RewriteEngine::block(int key) {
  auto it = blocks_.find(key);
  if (it != blocks_.end()) return *it->second;
  const SymmetryModel& m = model_.model();
  const auto rho = m.invariant_polynomials();
  auto b = std::make_unique<Block>(Block{{}, ExactSpan(m.dimension())});
  for (const auto& e : monomials_up_to(m.invariant_count(), bound_)) {
    if (homogeneous_) {
      int w = 0;
      for (std::size_t i = 0; i < e.size(); ++i) w += static_cast<int>(e[i]) * weights_[i];
      if (w != key) continue;
    }
    b->monomials.push_back(e);
    b->span.add(Polynomial::monomial(e, Rational(1)).compose(rho));
  }
  return *blocks_.emplace(key, std::move(b)).first->second;
}

void RewriteEngine::prepare(std::span<const int> degrees) {
  if (!homogeneous_) {
    block(-1);
    return;
  }
  for (int d : degrees) block(d);
}

std::variant<Polynomial, NotExpressible> RewriteEngine::express(const Polynomial& p) {
  if (p.arity() != model_->dimension()) throw ArityError("rewrite input is not over the phase variables");
  const auto degrees = p.degrees_present();
  prepare(degrees);
  return express_prepared(p);
}

std::variant<Polynomial, NotExpressible> RewriteEngine::express_prepared(const Polynomial& p) const {
  const std::size_t k = model_->invariant_count();
  Polynomial out(k);
  auto solve_block = [&](const Block& b, const Polynomial& target) -> bool {
    auto sol = b.span.solve(target);
    if (!sol) return false;
    for (std::size_t c = 0; c < sol->size(); ++c) {
      if (sgn((*sol)[c]) != 0) out += Polynomial::monomial(b.monomials[c], (*sol)[c]);
    }
    return true;
  };
  if (!homogeneous_) {
    if (!solve_block(*blocks_.at(-1), p)) return NotExpressible{p, bound_};
    return out;
  }
  for (int d : p.degrees_present()) {
    auto it = blocks_.find(d);
    if (it == blocks_.end() || !solve_block(*it->second, p.homogeneous_component(d))) {
      return NotExpressible{p, bound_};
    }
  }
  return out;
}

std::variant<Polynomial, NotExpressible> express_in_invariants(const VerifiedModel& m,
                                                               const Polynomial& p,
                                                               int degree_bound) {
  RewriteEngine engine(m, degree_bound);
  return engine.express(p);
}

// ---- induced structure -------------------------------------------------------------

bool InducedStructure::is_zero() const {
  for (const auto& row : entries) {
    for (const auto& e : row) {
      if (!e.is_zero()) return false;
    }
  }
  return true;
}

int default_degree_bound(const SymmetryModel& m) { return m.degree_bound.value_or(2); }

InducedStructure induced_structure(const VerifiedModel& m, int degree_bound, Execution exec) {
  const SymmetryModel& sm = m.model();
  const std::size_t k = sm.invariant_count();
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) pairs.emplace_back(i, j);
  }
  std::vector<Polynomial> brackets(pairs.size());
  const long np = static_cast<long>(pairs.size());
#pragma omp parallel for schedule(dynamic) if (exec == Execution::Parallel)
  for (long q = 0; q < np; ++q) {
    const auto [i, j] = pairs[q];
    brackets[q] = bracket(sm.invariants[i].expr, sm.invariants[j].expr, sm.structure);
  }

  RewriteEngine engine(m, degree_bound);
  std::set<int> degrees;
  for (const auto& b : brackets) {
    for (int d : b.degrees_present()) degrees.insert(d);
  }
  const std::vector<int> dv(degrees.begin(), degrees.end());
  engine.prepare(dv);

  std::vector<std::variant<Polynomial, NotExpressible>> solved(pairs.size());
#pragma omp parallel for schedule(dynamic) if (exec == Execution::Parallel)
  for (long q = 0; q < np; ++q) solved[q] = engine.express(brackets[q]);

  InducedStructure w;
  w.names = sm.invariant_names();
  w.degree_bound = degree_bound;
  w.entries.assign(k, std::vector<Polynomial>(k, Polynomial(k)));
  for (std::size_t q = 0; q < pairs.size(); ++q) {
    const auto [i, j] = pairs[q];
    if (std::holds_alternative<NotExpressible>(solved[q])) {
      throw RewriteBoundExceeded(i, j, degree_bound);
    }
    w.entries[i][j] = std::get<Polynomial>(solved[q]);
    w.entries[j][i] = -w.entries[i][j];
  }
  return w;
}

// ---- casimirs ------------------------------------------------------------------

CasimirResult casimir_check(const VerifiedModel& m, const InducedStructure& w,
                            const Polynomial& candidate) {
  const std::size_t k = m->invariant_count();
  if (candidate.arity() != k) throw ArityError("Casimir candidate is not over the invariants");
  const auto grad = gradient(candidate);
  for (std::size_t i = 0; i < k; ++i) {
    Polynomial induced(k);
    for (std::size_t j = 0; j < k; ++j) {
      if (!grad[j].is_zero() && !w.entries[j][i].is_zero()) induced += grad[j] * w.entries[j][i];
    }
    Polynomial residual = pullback(m.model(), induced);
    if (!residual.is_zero()) return {false, i, std::move(residual)};
  }
  return {true, 0, Polynomial(m->dimension())};
}

CasimirResult casimir_check(const VerifiedModel& m, const Polynomial& candidate,
                            int degree_bound) {
  return casimir_check(m, induced_structure(m, degree_bound), candidate);
}

}  // namespace symred
