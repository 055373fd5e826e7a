// Copyright 2026 The symred Authors
// SPDX-License-Identifier: Apache-2.0
#include "symred/releq.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "symred/errors.hpp"
#include "symred/linalg.hpp"

namespace symred {

// ---- reduced field ------------------------------------------------------------

ReducedField::ReducedField(InducedStructure w, Polynomial hred)
    : w_(std::move(w)), hred_(std::move(hred)) {
  const std::size_t k = w_.entries.size();
  if (hred_.arity() != k) throw ArityError("reduced Hamiltonian is not over the invariants");
  const auto grad = gradient(hred_);
  for (std::size_t i = 0; i < k; ++i) {
    Polynomial c(k);
    for (std::size_t j = 0; j < k; ++j) {
      if (!w_.entries[i][j].is_zero() && !grad[j].is_zero()) c += w_.entries[i][j] * grad[j];
    }
    compiled_.emplace_back(c);
    std::vector<CompiledPolynomial> row;
    for (const auto& d : gradient(c)) row.emplace_back(d);
    compiled_jac_.push_back(std::move(row));
    components_.push_back(std::move(c));
  }
}

bool ReducedField::identically_zero() const {
  return std::all_of(components_.begin(), components_.end(),
                     [](const Polynomial& p) { return p.is_zero(); });
}

Eigen::VectorXd ReducedField::operator()(std::span<const double> v) const {
  Eigen::VectorXd out(compiled_.size());
  for (std::size_t i = 0; i < compiled_.size(); ++i) out(i) = compiled_[i](v);
  return out;
}

Eigen::MatrixXd ReducedField::jacobian(std::span<const double> v) const {
  const std::size_t k = compiled_.size();
  Eigen::MatrixXd out(k, k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) out(i, j) = compiled_jac_[i][j](v);
  }
  return out;
}

ReducedField reduced_field(const VerifiedModel& m, const Polynomial& hred, int degree_bound) {
  return ReducedField(induced_structure(m, degree_bound), hred);
}

std::optional<Polynomial> reduced_hamiltonian(const VerifiedModel& m, const Polynomial& h,
                                              int degree_bound) {
  auto q = express_in_invariants(m, h, degree_bound);
  if (std::holds_alternative<NotExpressible>(q)) return std::nullopt;
  return std::get<Polynomial>(q);
}

const char* to_string(Stability s) {
  switch (s) {
    case Stability::FormallyStable: return "FormallyStable";
    case Stability::Indefinite: return "Indefinite";
    case Stability::Degenerate: return "Degenerate";
    case Stability::NotComputed: return "NotComputed";
  }
  return "NotComputed";
}

// ---- Levenberg-Marquardt ------------------------------------------------------------

namespace {

struct LMOutcome {
  Eigen::VectorXd x;
  double residual = 0.0;
  int iterations = 0;
  bool converged = false;
};

template <class Residual, class Jacobian>
LMOutcome levenberg_marquardt(const Residual& res, const Jacobian& jac, Eigen::VectorXd x,
                              double tol, int max_iterations) {
  Eigen::VectorXd r = res(x);
  double cost = r.squaredNorm();
  double damping = -1.0;
  int it = 0;
  int polish = 0;
  for (; it < max_iterations; ++it) {
    if (!std::isfinite(cost)) break;
    // Once inside tolerance a few extra steps tighten the point so that
    // deduplication does not depend on where a seed stopped.
    if (r.lpNorm<Eigen::Infinity>() <= tol && ++polish > 3) break;
    const Eigen::MatrixXd j = jac(x);
    const Eigen::MatrixXd a = j.transpose() * j;
    const Eigen::VectorXd g = j.transpose() * r;
    if (damping < 0) damping = 1e-3 * std::max(1.0, a.diagonal().maxCoeff());
    bool accepted = false;
    for (int tries = 0; tries < 40; ++tries) {
      Eigen::MatrixXd ad = a;
      ad.diagonal().array() += damping;
      const Eigen::VectorXd step = ad.ldlt().solve(-g);
      const Eigen::VectorXd xn = x + step;
      const Eigen::VectorXd rn = res(xn);
      const double cn = rn.squaredNorm();
      if (std::isfinite(cn) && cn < cost) {
        x = xn;
        r = rn;
        cost = cn;
        damping = std::max(damping / 3.0, 1e-15);
        accepted = true;
        break;
      }
      damping *= 4.0;
    }
    if (!accepted) break;
  }
  const double resid = r.lpNorm<Eigen::Infinity>();
  return {x, resid, it, std::isfinite(resid) && resid <= tol};
}

std::vector<double> to_vec(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

int homogeneous_degree(const Polynomial& p) {
  return p.is_homogeneous() && !p.is_zero() ? p.total_degree() : -1;
}

double image_distance(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

void finish(SolveReport& report, std::vector<std::optional<EquilibriumResult>>& found, double tol) {
  for (auto& f : found) {
    if (!f) continue;
    ++report.converged_seeds;
    bool duplicate = false;
    for (const auto& kept : report.results) {
      if (image_distance(kept.image, f->image) <= 10.0 * tol) {
        duplicate = true;
        break;
      }
    }
    if (!duplicate) report.results.push_back(std::move(*f));
  }
  std::stable_sort(report.results.begin(), report.results.end(),
                   [](const EquilibriumResult& a, const EquilibriumResult& b) { return a.image < b.image; });
  if (report.converged_seeds == 0) report.note = "NonConvergence";
}

}  // namespace

// ---- reduced stationary points ----------------------------------------------------------

SolveReport find_reduced_stationary(const VerifiedModel& m, const ReducedField& field,
                                    const ReducedSpace& rs, const SolveOptions& opt) {
  const SemiAlgebraicSet set = rs.as_set();
  const std::size_t k = set.ambient_dim();
  if (k != m->invariant_count() || field.components().size() != k) {
    throw ArityError("reduced space, field and model disagree on the invariant count");
  }
  std::vector<CompiledPolynomial> rel;
  std::vector<std::vector<CompiledPolynomial>> rel_grad;
  for (const auto& p : set.relations) {
    rel.emplace_back(p);
    std::vector<CompiledPolynomial> g;
    for (const auto& d : gradient(p)) g.emplace_back(d);
    rel_grad.push_back(std::move(g));
  }
  const std::size_t eqs = rel.size() + k;
  auto residual = [&](const Eigen::VectorXd& v) {
    const std::span<const double> vs(v.data(), k);
    Eigen::VectorXd r(eqs);
    for (std::size_t q = 0; q < rel.size(); ++q) r(q) = rel[q](vs);
    r.tail(k) = field(vs);
    return r;
  };
  auto jacobian = [&](const Eigen::VectorXd& v) {
    const std::span<const double> vs(v.data(), k);
    Eigen::MatrixXd j(eqs, k);
    for (std::size_t q = 0; q < rel.size(); ++q) {
      for (std::size_t i = 0; i < k; ++i) j(q, i) = rel_grad[q][i](vs);
    }
    j.bottomRows(k) = field.jacobian(vs);
    return j;
  };

  // Seeds are images of standard-normal phase points, rescaled so that the
  // first usable constraint sits at its level.
  const SymmetryModel& sm = m.model();
  std::optional<std::pair<Polynomial, int>> scaler;
  Rational scale_level;
  for (const auto& c : rs.constraints) {
    const Polynomial pulled = pullback(sm, c.polynomial);
    const int d = homogeneous_degree(pulled);
    if (d > 0 && sgn(c.level) != 0) {
      scaler = std::make_pair(pulled, d);
      scale_level = c.level;
      break;
    }
  }
  const CompiledPolynomial scaler_eval = scaler ? CompiledPolynomial(scaler->first) : CompiledPolynomial();
  const double level = scale_level.get_d();

  std::vector<std::optional<EquilibriumResult>> found(opt.seeds);
  const long total = static_cast<long>(opt.seeds);
  const std::size_t n = sm.dimension();
#pragma omp parallel for schedule(dynamic) if (opt.exec == Execution::Parallel)
  for (long s = 0; s < total; ++s) {
    auto rng = stream_engine(opt.seed, static_cast<std::uint64_t>(s));
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> x(n);
    for (auto& xi : x) xi = normal(rng);
    if (scaler) {
      const double q = scaler_eval(x);
      const int d = scaler->second;
      const double ratio = level / q;
      if (std::isfinite(ratio) && (ratio > 0 || d % 2 == 1)) {
        const double f = ratio > 0 ? std::pow(ratio, 1.0 / d) : -std::pow(-ratio, 1.0 / d);
        for (auto& xi : x) xi *= f;
      }
    }
    const Eigen::VectorXd v0 = m.numeric().rho(x);
    const LMOutcome out = levenberg_marquardt(residual, jacobian, v0, opt.tol, opt.max_iterations);
    if (!out.converged) continue;
    const std::vector<double> v = to_vec(out.x);
    if (!membership(set, v, 10.0 * opt.tol).in_set) continue;
    EquilibriumResult r;
    r.point = v;
    r.image = v;
    r.residual = out.residual;
    r.iterations = out.iterations;
    r.seed_index = static_cast<std::size_t>(s);
    found[s] = std::move(r);
  }
  SolveReport report;
  report.everywhere_stationary = field.identically_zero();
  finish(report, found, opt.tol);
  if (report.everywhere_stationary) {
    for (auto& r : report.results) r.note = "EverywhereStationary";
  }
  return report;
}

// ---- full-space relative equilibria --------------------------------------------------

namespace {

struct CompiledHess {
  std::vector<CompiledPolynomial> grad;
  std::vector<std::vector<CompiledPolynomial>> hess;

  explicit CompiledHess(const Polynomial& p) {
    const auto g = gradient(p);
    for (const auto& gi : g) {
      grad.emplace_back(gi);
      std::vector<CompiledPolynomial> row;
      for (const auto& h : gradient(gi)) row.emplace_back(h);
      hess.push_back(std::move(row));
    }
  }
  Eigen::VectorXd gradient_at(std::span<const double> x) const {
    Eigen::VectorXd out(grad.size());
    for (std::size_t i = 0; i < grad.size(); ++i) out(i) = grad[i](x);
    return out;
  }
  Eigen::MatrixXd hessian_at(std::span<const double> x) const {
    const std::size_t n = grad.size();
    Eigen::MatrixXd out(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) out(i, j) = hess[i][j](x);
    }
    return out;
  }
};

}  // namespace

SolveReport find_relative_equilibria(const VerifiedModel& m, const Polynomial& h,
                                     std::span<const double> mu, const SolveOptions& opt) {
  const SymmetryModel& sm = m.model();
  if (!sm.structure.is_canonical()) {
    throw PreconditionError("full-space relative equilibria need a canonical structure; use the reduced solver");
  }
  const std::size_t n = sm.dimension(), r = sm.generator_count();
  if (h.arity() != n) throw ArityError("Hamiltonian is not over the phase variables");
  if (mu.size() != r) throw ArityError("momentum level has the wrong length");
  const Eigen::MatrixXd w = sm.structure.evaluate(std::vector<double>(n, 0.0));
  const CompiledHess hc(h);
  std::vector<CompiledHess> jc;
  for (const auto& g : sm.generators) jc.emplace_back(g.expr);
  const Eigen::VectorXd muv = Eigen::Map<const Eigen::VectorXd>(mu.data(), static_cast<Eigen::Index>(r));

  auto residual = [&](const Eigen::VectorXd& z) {
    const std::span<const double> x(z.data(), n);
    Eigen::VectorXd grad = hc.gradient_at(x);
    Eigen::VectorXd out(n + r);
    for (std::size_t i = 0; i < r; ++i) grad -= z(n + i) * jc[i].gradient_at(x);
    out.head(n) = w * grad;
    out.tail(r) = m.numeric().momentum(x) - muv;
    return out;
  };
  auto jacobian = [&](const Eigen::VectorXd& z) {
    const std::span<const double> x(z.data(), n);
    Eigen::MatrixXd hess = hc.hessian_at(x);
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n + r, n + r);
    for (std::size_t i = 0; i < r; ++i) {
      hess -= z(n + i) * jc[i].hessian_at(x);
      out.block(0, n + i, n, 1) = -w * jc[i].gradient_at(x);
    }
    out.topLeftCorner(n, n) = w * hess;
    out.bottomLeftCorner(r, n) = m.numeric().dmomentum(x);
    return out;
  };

  int jdeg = -1;
  for (const auto& g : sm.generators) {
    const int d = homogeneous_degree(g.expr);
    if (d <= 0 || (jdeg >= 0 && d != jdeg)) {
      jdeg = -1;
      break;
    }
    jdeg = d;
  }
  const double mu_norm = muv.norm();

  std::vector<std::optional<EquilibriumResult>> found(opt.seeds);
  const long total = static_cast<long>(opt.seeds);
#pragma omp parallel for schedule(dynamic) if (opt.exec == Execution::Parallel)
  for (long s = 0; s < total; ++s) {
    auto rng = stream_engine(opt.seed, static_cast<std::uint64_t>(s));
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::VectorXd z(n + r);
    for (std::size_t i = 0; i < n; ++i) z(i) = normal(rng);
    std::span<const double> x(z.data(), n);
    if (jdeg > 0 && mu_norm > 0) {
      const double jn = m.numeric().momentum(x).norm();
      if (jn > 0) z.head(n) *= std::pow(mu_norm / jn, 1.0 / jdeg);
    }
    const Eigen::MatrixXd dj = m.numeric().dmomentum(x);
    const Eigen::VectorXd gh = hc.gradient_at(x);
    z.tail(r) = dj.transpose().completeOrthogonalDecomposition().solve(gh);
    const LMOutcome out = levenberg_marquardt(residual, jacobian, z, opt.tol, opt.max_iterations);
    if (!out.converged) continue;
    EquilibriumResult res;
    res.point.assign(out.x.data(), out.x.data() + n);
    res.multipliers.assign(out.x.data() + n, out.x.data() + n + r);
    res.image = to_vec(m.numeric().rho(res.point));
    res.residual = out.residual;
    res.iterations = out.iterations;
    res.seed_index = static_cast<std::size_t>(s);
    found[s] = std::move(res);
  }
  SolveReport report;
  finish(report, found, opt.tol);
  for (auto& res : report.results) {
    const StabilityReport st = formal_stability(m, h, res.point, res.multipliers);
    res.stability = st.verdict;
    res.projected_spectrum = st.spectrum;
    res.subspace_dim = st.subspace_dim;
    if (!st.diagnostics.empty()) res.note = st.diagnostics;
  }
  return report;
}

// ---- formal stability ----------------------------------------------------------

StabilityReport formal_stability(const VerifiedModel& m, const Polynomial& h,
                                 std::span<const double> x, std::span<const double> lambda,
                                 double tol) {
  const SymmetryModel& sm = m.model();
  const std::size_t n = sm.dimension(), r = sm.generator_count();
  if (x.size() != n || lambda.size() != r) throw ArityError("formal_stability: wrong point or multiplier size");
  Polynomial hl = h;
  for (std::size_t i = 0; i < r; ++i) {
    // Multipliers enter as doubles; the Hessian is evaluated numerically anyway.
    hl -= sm.generators[i].expr * Rational(lambda[i]);
  }
  const Eigen::MatrixXd hess = CompiledHess(hl).hessian_at(x);
  const Eigen::MatrixXd dj = m.numeric().dmomentum(x);
  const Eigen::MatrixXd w = m.numeric().structure(x);

  StabilityReport rep;
  rep.rank_dJ = linalg::numerical_rank(dj, tol);
  const Eigen::MatrixXd kernel = linalg::null_space(dj, tol);
  rep.kernel_dim = static_cast<int>(kernel.cols());
  const Eigen::MatrixXd orbit = linalg::column_basis(w * dj.transpose(), tol, w.norm() * dj.norm());
  const Eigen::MatrixXd neutral = linalg::intersection_basis(orbit, kernel, tol);
  rep.neutral_dim = static_cast<int>(neutral.cols());
  Eigen::MatrixXd rest = kernel - neutral * (neutral.transpose() * kernel);
  const Eigen::MatrixXd s = linalg::column_basis(rest, std::sqrt(tol));
  rep.subspace_dim = static_cast<int>(s.cols());

  if (rep.rank_dJ < static_cast<int>(r)) {
    rep.verdict = Stability::Degenerate;
    rep.diagnostics = "dJ has rank " + std::to_string(rep.rank_dJ) + " < " + std::to_string(r);
  }
  if (s.cols() == 0) {
    rep.verdict = Stability::Degenerate;
    rep.diagnostics = "empty test subspace";
    return rep;
  }
  const Eigen::MatrixXd projected = s.transpose() * hess * s;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(0.5 * (projected + projected.transpose()));
  const Eigen::VectorXd ev = eig.eigenvalues();
  rep.spectrum = to_vec(ev);
  if (rep.verdict == Stability::Degenerate) return rep;
  const double emax = ev.cwiseAbs().maxCoeff();
  bool zero = !(emax > 0);
  bool pos = false, neg = false;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (std::abs(ev(i)) <= tol * emax) zero = true;
    if (ev(i) > 0) pos = true;
    if (ev(i) < 0) neg = true;
  }
  if (zero) {
    rep.verdict = Stability::Degenerate;
    rep.diagnostics = "zero eigenvalue in the projected Hessian";
  } else {
    rep.verdict = pos && neg ? Stability::Indefinite : Stability::FormallyStable;
  }
  return rep;
}

// ---- exact helpers ---------------------------------------------------------------

std::vector<Rational> exact_equilibrium_residual(const VerifiedModel& m, const Polynomial& h,
                                                 std::span<const Rational> x,
                                                 std::span<const Rational> lambda,
                                                 std::span<const Rational> mu) {
  const SymmetryModel& sm = m.model();
  const std::size_t n = sm.dimension(), r = sm.generator_count();
  if (x.size() != n || lambda.size() != r || mu.size() != r) throw ArityError("exact residual: wrong sizes");
  Polynomial f = h;
  for (std::size_t i = 0; i < r; ++i) f -= sm.generators[i].expr * lambda[i];
  std::vector<Rational> out;
  for (const auto& c : hamiltonian_field(f, sm.structure)) out.push_back(c.evaluate(x));
  for (std::size_t i = 0; i < r; ++i) out.push_back(sm.generators[i].expr.evaluate(x) - mu[i]);
  return out;
}

std::optional<Polynomial> as_momentum_function(const VerifiedModel& m, const Polynomial& h,
                                               int degree_bound) {
  const SymmetryModel& sm = m.model();
  const std::size_t r = sm.generator_count();
  const auto js = sm.generator_polynomials();
  ExactSpan span(sm.dimension());
  const auto monomials = monomials_up_to(r, degree_bound);
  for (const auto& e : monomials) span.add(Polynomial::monomial(e, Rational(1)).compose(js));
  auto sol = span.solve(h);
  if (!sol) return std::nullopt;
  Polynomial g(r);
  for (std::size_t c = 0; c < monomials.size(); ++c) {
    if (sgn((*sol)[c]) != 0) g += Polynomial::monomial(monomials[c], (*sol)[c]);
  }
  return g;
}

std::vector<Rational> momentum_multipliers(const VerifiedModel& m, const Polynomial& g,
                                           std::span<const Rational> x) {
  std::vector<Rational> jv;
  for (const auto& j : m->generators) jv.push_back(j.expr.evaluate(x));
  std::vector<Rational> out;
  for (const auto& d : gradient(g)) out.push_back(d.evaluate(std::span<const Rational>(jv)));
  return out;
}

// ---- leaf oracle -----------------------------------------------------------------

LeafOracle leaf_sampling_oracle(const ReducedSpace& rs, const Polynomial& hred,
                                std::span<const double> v0, double radius, std::size_t samples,
                                std::uint64_t seed) {
  const SemiAlgebraicSet set = rs.as_set();
  const std::size_t k = set.ambient_dim();
  const double h0 = hred.evaluate(v0);
  const double eps = 1e-12 * (1.0 + std::abs(h0));
  LeafOracle out;
  std::vector<double> v(k);
  for (std::size_t s = 0; s < samples; ++s) {
    auto rng = stream_engine(seed, s);
    std::uniform_real_distribution<double> u(-radius, radius);
    for (std::size_t i = 0; i < k; ++i) v[i] = v0[i] + u(rng);
    for (int it = 0; it < 60; ++it) {
      Eigen::VectorXd r(set.relations.size());
      for (std::size_t q = 0; q < set.relations.size(); ++q) r(q) = set.relations[q].evaluate(v);
      if (r.lpNorm<Eigen::Infinity>() <= 1e-14) break;
      const Eigen::VectorXd step = set.relation_jacobian(v).completeOrthogonalDecomposition().solve(r);
      for (std::size_t i = 0; i < k; ++i) v[i] -= step(i);
    }
    if (!membership(set, v, 1e-10).in_set) continue;
    double dist = 0.0;
    for (std::size_t i = 0; i < k; ++i) dist = std::max(dist, std::abs(v[i] - v0[i]));
    if (dist > 2.0 * radius || dist < 1e-6 * radius) continue;
    ++out.accepted;
    const double hv = hred.evaluate(v);
    if (hv < h0 - eps) ++out.below;
    if (hv > h0 + eps) ++out.above;
  }
  return out;
}

}  // namespace symred
