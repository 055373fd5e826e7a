// Copyright 2026 The symred Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "symred/model.hpp"
#include "symred/parallel.hpp"

namespace symred {

/// {relations == 0, inequalities >= 0} in R^k.
struct SemiAlgebraicSet {
  std::vector<std::string> names;  // coordinate names, size ambient_dim
  std::vector<Polynomial> relations;
  std::vector<Polynomial> inequalities;
  std::optional<int> maximal_rank;

  std::size_t ambient_dim() const noexcept { return names.size(); }
  /// Throws ArityError when a member polynomial has the wrong arity.
  void validate() const;
  /// Relation Jacobian (one row per relation) at v.
  Eigen::MatrixXd relation_jacobian(std::span<const double> v) const;
};

/// The model's relations and inequalities over its invariant names.
SemiAlgebraicSet orbit_space(const SymmetryModel& m);

struct MomentumConstraint {
  Polynomial polynomial;  // over the invariants
  Rational level;
  std::string label;
};

struct ReducedSpace {
  SemiAlgebraicSet base;
  std::vector<MomentumConstraint> constraints;
  std::string model_name;
  std::vector<Rational> mu;

  /// Base relations followed by P - level for every constraint.
  SemiAlgebraicSet as_set() const;
};

/// Momentum levels become invariant-space constraints. Abelian generators
/// give J_i = mu_i each; otherwise the group Casimir sum J_i^2 = |mu|^2 is
/// used (after checking that it Poisson-commutes with every generator).
/// Throws PreconditionError when a constraint cannot be rewritten at the bound.
ReducedSpace reduced_space(const VerifiedModel& m, std::span<const Rational> mu, int degree_bound,
                           const std::optional<SemiAlgebraicSet>& base = std::nullopt);

struct MembershipReport {
  bool in_set = false;
  std::vector<double> relation_residuals;
  std::vector<double> inequality_values;
};

MembershipReport membership(const SemiAlgebraicSet& s, std::span<const double> v, double tol);

enum class PointKind { Nonsingular, Singular };

struct Classification {
  PointKind kind = PointKind::Nonsingular;
  int rank = 0;
  int maximal_rank = 0;
};

struct ClassifyOptions {
  double rank_tol = 1e-9;        // relative singular-value cutoff
  double membership_tol = 1e-8;
};

/// Throws PreconditionError when v is not in the set or the maximal rank is
/// unknown.
Classification classify_point(const SemiAlgebraicSet& s, std::span<const double> v,
                              const ClassifyOptions& opt = {});

struct Window {
  std::vector<double> lo, hi;
};

/// Maximum relation-Jacobian rank over `samples` random window points pulled
/// onto the relations by Gauss-Newton and kept when they pass membership.
/// Returns nullopt when no sample lands in the set.
std::optional<int> estimate_maximal_rank(const SemiAlgebraicSet& s, const Window& window,
                                         std::size_t samples, std::uint64_t seed,
                                         const ClassifyOptions& opt = {});

struct Chart {
  std::size_t u = 0, w = 0;  // free coordinates
  std::size_t solved = 0;
};

struct MeshOptions {
  std::array<double, 2> u_range{-1.0, 1.0};
  std::array<double, 2> w_range{-1.0, 1.0};
  std::optional<std::array<double, 2>> solved_range;  // default: hull of the two ranges
  int grid = 32;
  int scan = 512;
  double tol = 1e-8;
};

struct Mesh {
  std::vector<std::vector<double>> vertices;        // ambient coordinates
  std::vector<std::array<std::size_t, 3>> triangles;
  double residual_max = 0.0;
  std::size_t dropped_vertices = 0;  // roots that failed membership
  bool sign_change_found = false;
};

/// Surface sampling over a chart: coordinates other than (u, w, solved) are
/// eliminated through relations linear in them with constant coefficient;
/// a single remaining relation is then solved for the `solved` coordinate
/// at each grid node by scanning and bisection. Touching roots count twice,
/// so sheets meet at folds. Throws PreconditionError when the chart does not
/// reduce to one relation.
Mesh sample_surface(const SemiAlgebraicSet& s, const Chart& chart, const MeshOptions& opt,
                    Execution exec = Execution::Parallel);

}  // namespace symred
