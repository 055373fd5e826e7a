// Copyright 2026 The symred Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>

#include <compare>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "symred/model.hpp"
#include "symred/parallel.hpp"

namespace symred {

struct RankReport {
  int rank_drho = 0;
  int rank_dJ = 0;
  int rank_orbit_span = 0;      // columns X_{J_i}(x), i.e. rank(W dJ^T)
  int rank_invariant_span = 0;  // columns X_{rho_i}(x)
  int rank_induced = 0;         // rank of (d rho) W (d rho)^T
  int span_cap_ker_drho = 0;    // dim(span X_{rho_i} ∩ ker d rho), computed separately
  std::vector<double> point;
  std::vector<double> image;

  /// rank_induced == rank_invariant_span - span_cap_ker_drho.
  bool identity_holds() const {
    return rank_induced == rank_invariant_span - span_cap_ker_drho;
  }
};

RankReport rank_report(const VerifiedModel& m, std::span<const double> x, double tol = 1e-9);

struct StratumSignature {
  int rank_drho = 0;
  int rank_orbit_span = 0;
  auto operator<=>(const StratumSignature&) const = default;
};

StratumSignature stratum_signature(const VerifiedModel& m, std::span<const double> x,
                                   double tol = 1e-9);

/// Signatures of standard-normal samples `first .. first+count-1` of the
/// stream `seed`.
std::vector<StratumSignature> signature_batch(const VerifiedModel& m, std::size_t first,
                                              std::size_t count, std::uint64_t seed,
                                              double tol = 1e-9,
                                              Execution exec = Execution::Parallel);

struct PrincipalEstimate {
  std::size_t samples = 0;
  std::optional<StratumSignature> max_signature;  // empty when samples == 0
  double frequency = 0.0;
  std::map<StratumSignature, std::size_t> histogram;
};

PrincipalEstimate principal_stratum_estimate(const VerifiedModel& m, std::size_t n_samples,
                                             std::uint64_t seed, double tol = 1e-9,
                                             Execution exec = Execution::Parallel);

enum class SpanVerdict { Pass, DegeneratePass, Fail };

struct KernelSpanResult {
  SpanVerdict verdict = SpanVerdict::Fail;
  double max_leak = 0.0;  // max |dJ X_{rho_i}| relative to the factor norms
  int rank_invariant_span = 0;
  int rank_dJ = 0;
  int dimension = 0;
  bool pass() const { return verdict != SpanVerdict::Fail; }
};

/// ker dJ(x) is spanned by the X_{rho_i}(x). Requires a canonical structure
/// (throws PreconditionError otherwise).
KernelSpanResult kernel_span_check(const VerifiedModel& m, std::span<const double> x,
                                   double tol = 1e-9);

/// rank((d rho) W (d rho)^T) against rank(d rho). The gap is the number of
/// independent Casimir differentials at x.
struct InducedRankDefect {
  int rank_drho = 0;
  int rank_induced = 0;
  int defect() const { return rank_drho - rank_induced; }
};

InducedRankDefect induced_rank_defect(const VerifiedModel& m, std::span<const double> x,
                                      double tol = 1e-9);

}  // namespace symred
