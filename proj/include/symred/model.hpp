// Copyright 2026 The symred Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "symred/poisson.hpp"
#include "symred/polynomial.hpp"

namespace symred {

struct NamedPolynomial {
  std::string name;
  Polynomial expr;
};

/// A phase space with a Poisson structure, the momentum generators J_i, a
/// Hilbert basis rho_i of invariants, and the relations/inequalities that cut
/// out the image of the orbit map. Relations, inequalities and Casimirs are
/// polynomials in the invariant names.
struct SymmetryModel {
  std::string name;
  std::vector<std::string> variables;
  PoissonStructure structure;
  std::vector<NamedPolynomial> generators;
  std::vector<NamedPolynomial> invariants;
  std::vector<Polynomial> relations;
  std::vector<Polynomial> inequalities;
  std::vector<Polynomial> casimirs;
  std::optional<int> degree_bound;

  std::size_t dimension() const noexcept { return variables.size(); }
  std::size_t invariant_count() const noexcept { return invariants.size(); }
  std::size_t generator_count() const noexcept { return generators.size(); }

  std::vector<std::string> invariant_names() const;
  std::vector<Polynomial> invariant_polynomials() const;
  std::vector<Polynomial> generator_polynomials() const;

  /// Throws ArityError / StructureError on any inconsistency.
  void validate() const;
};

/// Parses a model document (JSON). Throws ParseError on malformed input or
/// unknown fields, ArityError on arity mismatches, StructureError when the
/// structure matrix is not antisymmetric.
SymmetryModel load_model(std::string_view document);

/// Canonical document text; byte-stable for a given model.
std::string export_model(const SymmetryModel& m);

enum class Frame { FullSpace, InvariantSpace };

/// Hamiltonian given either on phase space or in the invariant coordinates
/// (H = H~ o rho).
struct HamiltonianSpec {
  Polynomial expression;
  Frame frame = Frame::FullSpace;
};

HamiltonianSpec parse_hamiltonian(const SymmetryModel& m, std::string_view text, Frame frame);

// ---- verification ------------------------------------------------------------

struct InvarianceEntry {
  std::size_t invariant = 0;
  std::size_t generator = 0;
  Polynomial residual;  // {rho_i, J_j}
  bool pass() const { return residual.is_zero(); }
};

struct InvarianceReport {
  std::vector<InvarianceEntry> entries;
  bool all_pass() const;
};

struct RelationEntry {
  std::size_t relation = 0;
  Polynomial residual;  // R(rho(x)) in phase-space variables
  bool pass() const { return residual.is_zero(); }
};

struct RelationReport {
  std::vector<RelationEntry> entries;
  bool all_pass() const;
};

struct InequalityEntry {
  std::size_t inequality = 0;
  double min_value = 0.0;  // minimum over samples, relative to term magnitude
  std::size_t violations = 0;
  bool pass() const { return violations == 0; }
};

struct InequalityReport {
  std::size_t samples = 0;
  std::vector<InequalityEntry> entries;
  bool all_pass() const;
};

InvarianceReport verify_invariance(const SymmetryModel& m);
RelationReport verify_relations(const SymmetryModel& m);

/// Inequalities are image constraints, not identities: each is evaluated at
/// rho(x) for `samples` standard-normal phase points and must be >= -tol
/// (relative to the magnitude of its terms).
InequalityReport check_inequalities(const SymmetryModel& m, std::size_t samples,
                                    std::uint64_t seed, double tol = 1e-9);

/// Floating views of a model's polynomial data for hot loops.
class NumericModel {
 public:
  explicit NumericModel(const SymmetryModel& m);

  std::size_t dimension() const noexcept { return n_; }
  std::size_t invariant_count() const noexcept { return rho_.size(); }
  std::size_t generator_count() const noexcept { return j_.size(); }

  Eigen::VectorXd rho(std::span<const double> x) const;
  Eigen::MatrixXd drho(std::span<const double> x) const;
  Eigen::VectorXd momentum(std::span<const double> x) const;
  Eigen::MatrixXd dmomentum(std::span<const double> x) const;
  Eigen::MatrixXd structure(std::span<const double> x) const { return w_(x); }

 private:
  std::size_t n_;
  std::vector<CompiledPolynomial> rho_, j_;
  std::vector<std::vector<CompiledPolynomial>> drho_, dj_;
  CompiledStructure w_;
};

struct Certification;
Certification certify(SymmetryModel m);

/// A model whose invariance and relation checks passed exactly. Downstream
/// modules only accept this type.
class VerifiedModel {
 public:
  const SymmetryModel& model() const noexcept { return *model_; }
  const NumericModel& numeric() const noexcept { return *numeric_; }
  const SymmetryModel* operator->() const noexcept { return model_.get(); }

 private:
  friend struct Certification;
  friend Certification certify(SymmetryModel m);
  VerifiedModel(std::shared_ptr<const SymmetryModel> m);

  std::shared_ptr<const SymmetryModel> model_;
  std::shared_ptr<const NumericModel> numeric_;
};

struct Certification {
  InvarianceReport invariance;
  RelationReport relations;
  std::optional<VerifiedModel> model;  // set iff both reports pass
};

Certification certify(SymmetryModel m);

/// certify() that throws PreconditionError naming the first failure.
VerifiedModel require_verified(SymmetryModel m);

// ---- generator Lie algebra ---------------------------------------------------

/// {J_i, J_j} = sum_k c[i][j][k] J_k + constant[i][j].
struct StructureConstants {
  std::vector<std::vector<std::vector<Rational>>> c;
  std::vector<std::vector<Rational>> constant;
  bool abelian() const;
};

struct NotClosed {
  std::size_t i = 0;
  std::size_t j = 0;
  Polynomial bracket;
};

std::variant<StructureConstants, NotClosed> generator_structure_constants(const VerifiedModel& m);

}  // namespace symred
