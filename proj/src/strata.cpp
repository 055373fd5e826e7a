// Copyright 2026 The symred Authors
// SPDX-License-Identifier: Apache-2.0
#include "symred/strata.hpp"

#include <algorithm>
#include <random>

#include "symred/errors.hpp"
#include "symred/linalg.hpp"

namespace symred {

namespace {

void check_arity(const VerifiedModel& m, std::size_t n) {
  if (n != m->dimension()) throw ArityError("phase point has wrong dimension for model '" + m->name + "'");
}

struct Pieces {
  Eigen::MatrixXd drho, dj, w;
};

Pieces pieces(const VerifiedModel& m, std::span<const double> x) {
  const NumericModel& num = m.numeric();
  return {num.drho(x), num.dmomentum(x), num.structure(x)};
}

int rank_of(const Eigen::MatrixXd& a, double tol) { return linalg::numerical_rank(a, tol); }

int product_rank(const Eigen::MatrixXd& a, double tol, double scale) {
  return linalg::numerical_rank(a, tol, scale);
}

}  // namespace

RankReport rank_report(const VerifiedModel& m, std::span<const double> x, double tol) {
  check_arity(m, x.size());
  const Pieces p = pieces(m, x);
  RankReport r;
  r.point.assign(x.begin(), x.end());
  const Eigen::VectorXd v = m.numeric().rho(x);
  r.image.assign(v.data(), v.data() + v.size());
  const Eigen::MatrixXd x_rho = p.w * p.drho.transpose();  // columns X_{rho_i}
  const Eigen::MatrixXd x_j = p.w * p.dj.transpose();      // columns X_{J_i}
  r.rank_drho = rank_of(p.drho, tol);
  r.rank_dJ = rank_of(p.dj, tol);
  const double wn = p.w.norm(), rn = p.drho.norm();
  r.rank_orbit_span = product_rank(x_j, tol, wn * p.dj.norm());
  r.rank_invariant_span = product_rank(x_rho, tol, wn * rn);
  r.rank_induced = product_rank(p.drho * x_rho, tol, wn * rn * rn);
  const Eigen::MatrixXd span = linalg::column_basis(x_rho, tol, wn * rn);
  const Eigen::MatrixXd kernel = linalg::null_space(p.drho, tol);
  r.span_cap_ker_drho = linalg::intersection_dimension(span, kernel, tol);
  return r;
}

StratumSignature stratum_signature(const VerifiedModel& m, std::span<const double> x, double tol) {
  check_arity(m, x.size());
  const Pieces p = pieces(m, x);
  return {rank_of(p.drho, tol), product_rank(p.w * p.dj.transpose(), tol, p.w.norm() * p.dj.norm())};
}

std::vector<StratumSignature> signature_batch(const VerifiedModel& m, std::size_t first,
                                              std::size_t count, std::uint64_t seed, double tol,
                                              Execution exec) {
  std::vector<StratumSignature> out(count);
  const std::size_t n = m->dimension();
  const long total = static_cast<long>(count);
#pragma omp parallel for schedule(static) if (exec == Execution::Parallel)
  for (long s = 0; s < total; ++s) {
    auto rng = stream_engine(seed, first + static_cast<std::size_t>(s));
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> x(n);
    for (auto& xi : x) xi = normal(rng);
    out[s] = stratum_signature(m, x, tol);
  }
  return out;
}

PrincipalEstimate principal_stratum_estimate(const VerifiedModel& m, std::size_t n_samples,
                                             std::uint64_t seed, double tol, Execution exec) {
  PrincipalEstimate est;
  est.samples = n_samples;
  if (n_samples == 0) return est;
  const auto sigs = signature_batch(m, 0, n_samples, seed, tol, exec);
  StratumSignature top{0, 0};
  for (const auto& s : sigs) {
    ++est.histogram[s];
    top.rank_drho = std::max(top.rank_drho, s.rank_drho);
    top.rank_orbit_span = std::max(top.rank_orbit_span, s.rank_orbit_span);
  }
  est.max_signature = top;
  auto it = est.histogram.find(top);
  est.frequency = it == est.histogram.end() ? 0.0 : static_cast<double>(it->second) / n_samples;
  return est;
}

KernelSpanResult kernel_span_check(const VerifiedModel& m, std::span<const double> x, double tol) {
  check_arity(m, x.size());
  if (!m->structure.is_canonical()) {
    throw PreconditionError("kernel_span_check needs a canonical (symplectic) structure; model '" +
                            m->name + "' has a matrix structure");
  }
  const Pieces p = pieces(m, x);
  const Eigen::MatrixXd x_rho = p.w * p.drho.transpose();
  KernelSpanResult r;
  r.dimension = static_cast<int>(m->dimension());
  r.rank_dJ = rank_of(p.dj, tol);
  r.rank_invariant_span = product_rank(x_rho, tol, p.w.norm() * p.drho.norm());
  const Eigen::MatrixXd leak = p.dj * x_rho;
  for (Eigen::Index i = 0; i < x_rho.cols(); ++i) {
    const double scale = p.dj.norm() * x_rho.col(i).norm();
    if (scale > 0) r.max_leak = std::max(r.max_leak, leak.col(i).lpNorm<Eigen::Infinity>() / scale);
  }
  if (r.rank_dJ == 0 && r.rank_invariant_span == 0) {
    r.verdict = SpanVerdict::DegeneratePass;
  } else if (r.max_leak <= tol && r.rank_invariant_span == r.dimension - r.rank_dJ) {
    r.verdict = SpanVerdict::Pass;
  } else {
    r.verdict = SpanVerdict::Fail;
  }
  return r;
}

InducedRankDefect induced_rank_defect(const VerifiedModel& m, std::span<const double> x, double tol) {
  const RankReport r = rank_report(m, x, tol);
  return {r.rank_drho, r.rank_induced};
}

}  // namespace symred
