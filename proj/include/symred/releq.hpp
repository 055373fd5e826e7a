// Copyright 2026 The symred Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "symred/model.hpp"
#include "symred/orbitmap.hpp"
#include "symred/parallel.hpp"
#include "symred/semialg.hpp"

namespace symred {

/// v -> W(v) grad H~(v) on the orbit space.
class ReducedField {
 public:
  ReducedField(InducedStructure w, Polynomial hred);

  const std::vector<Polynomial>& components() const noexcept { return components_; }
  const Polynomial& hamiltonian() const noexcept { return hred_; }
  const InducedStructure& structure() const noexcept { return w_; }
  bool identically_zero() const;

  Eigen::VectorXd operator()(std::span<const double> v) const;
  Eigen::MatrixXd jacobian(std::span<const double> v) const;

 private:
  InducedStructure w_;
  Polynomial hred_;
  std::vector<Polynomial> components_;
  std::vector<CompiledPolynomial> compiled_;
  std::vector<std::vector<CompiledPolynomial>> compiled_jac_;
};

ReducedField reduced_field(const VerifiedModel& m, const Polynomial& hred, int degree_bound);

/// H~ with H = H~ o rho, or nullopt when H is not a polynomial in the
/// invariants at the bound.
std::optional<Polynomial> reduced_hamiltonian(const VerifiedModel& m, const Polynomial& h,
                                              int degree_bound);

enum class Stability { FormallyStable, Indefinite, Degenerate, NotComputed };
const char* to_string(Stability s);

struct EquilibriumResult {
  std::vector<double> point;        // x (full space) or v (reduced)
  std::vector<double> image;        // rho(x); equals point in reduced mode
  std::vector<double> multipliers;  // full space only
  double residual = 0.0;
  Stability stability = Stability::NotComputed;
  std::vector<double> projected_spectrum;
  int subspace_dim = 0;
  int iterations = 0;
  std::size_t seed_index = 0;
  std::string note;
};

struct SolveOptions {
  std::size_t seeds = 64;
  double tol = 1e-10;
  std::uint64_t seed = 0;
  int max_iterations = 100;
  Execution exec = Execution::Parallel;
};

struct SolveReport {
  std::vector<EquilibriumResult> results;  // deduplicated, sorted by image
  std::size_t converged_seeds = 0;
  bool everywhere_stationary = false;
  std::string note;  // "NonConvergence" when no seed converged
};

/// Multistart Levenberg-Marquardt on {reduced relations} and {W grad H~ = 0}.
/// Only solutions passing membership at 10 tol are kept.
SolveReport find_reduced_stationary(const VerifiedModel& m, const ReducedField& field,
                                    const ReducedSpace& rs, const SolveOptions& opt = {});

/// Multistart Levenberg-Marquardt on X_H - sum lambda_i X_{J_i} = 0,
/// J = mu over (x, lambda). Requires a canonical structure. Solutions whose
/// orbit images agree within 10 tol are merged.
SolveReport find_relative_equilibria(const VerifiedModel& m, const Polynomial& h,
                                     std::span<const double> mu, const SolveOptions& opt = {});

struct StabilityReport {
  Stability verdict = Stability::NotComputed;
  std::vector<double> spectrum;  // ascending
  int subspace_dim = 0;
  int kernel_dim = 0;
  int neutral_dim = 0;
  int rank_dJ = 0;
  std::string diagnostics;
};

/// Energy-momentum test: d^2(H - sum lambda_i J_i)(x) on a complement of
/// span{X_{J_i}(x)} ∩ ker dJ(x) inside ker dJ(x).
StabilityReport formal_stability(const VerifiedModel& m, const Polynomial& h,
                                 std::span<const double> x, std::span<const double> lambda,
                                 double tol = 1e-8);

/// sum of X_H - sum lambda_i X_{J_i} and J - mu as exact rationals.
std::vector<Rational> exact_equilibrium_residual(const VerifiedModel& m, const Polynomial& h,
                                                 std::span<const Rational> x,
                                                 std::span<const Rational> lambda,
                                                 std::span<const Rational> mu);

/// When H = G(J_1..J_r), returns G over the generator names.
std::optional<Polynomial> as_momentum_function(const VerifiedModel& m, const Polynomial& h,
                                               int degree_bound);

/// lambda_i = dG/dJ_i (J(x)) for H = G(J).
std::vector<Rational> momentum_multipliers(const VerifiedModel& m, const Polynomial& g,
                                           std::span<const Rational> x);

struct LeafOracle {
  std::size_t accepted = 0;
  std::size_t below = 0;  // H~ < H~(v0) - eps
  std::size_t above = 0;  // H~ > H~(v0) + eps
  bool local_min() const { return accepted > 0 && below == 0; }
  bool local_max() const { return accepted > 0 && above == 0; }
};

/// Samples the reduced space near v0 (random offsets of size <= radius
/// pulled back onto the relations) and compares H~ against H~(v0).
LeafOracle leaf_sampling_oracle(const ReducedSpace& rs, const Polynomial& hred,
                                std::span<const double> v0, double radius, std::size_t samples,
                                std::uint64_t seed);

}  // namespace symred
