// Copyright 2026 The symred Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>

#include <map>
#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "symred/errors.hpp"
#include "symred/exact_span.hpp"
#include "symred/model.hpp"
#include "symred/parallel.hpp"

namespace symred {

Eigen::VectorXd orbit_eval(const VerifiedModel& m, std::span<const double> x);
std::vector<Rational> orbit_eval(const VerifiedModel& m, std::span<const Rational> x);

/// Rows are grad rho_i(x).
Eigen::MatrixXd orbit_jacobian(const VerifiedModel& m, std::span<const double> x);
std::vector<std::vector<Rational>> orbit_jacobian(const VerifiedModel& m,
                                                  std::span<const Rational> x);

/// q(rho(x)) for q over the invariant names.
Polynomial pullback(const SymmetryModel& m, const Polynomial& q);

struct NotExpressible {
  Polynomial input;
  int degree_bound = 0;
};

class RewriteBoundExceeded : public Error {
 public:
  RewriteBoundExceeded(std::size_t i, std::size_t j, int bound);
  std::size_t i() const noexcept { return i_; }
  std::size_t j() const noexcept { return j_; }

 private:
  std::size_t i_, j_;
};

/// Exact rewrite of phase-space polynomials as polynomials in the invariants.
///
/// Unknowns are the coefficients of invariant monomials of total degree at
/// most `degree_bound`. When every invariant is homogeneous the solve splits
/// by phase-space degree. Columns enter in ascending graded-lex order and
/// dependent columns get coefficient zero, so among the valid rewrites the
/// one returned is supported on the lowest monomials.
///
/// Pullbacks and eliminations are cached; `prepare` must be called (or the
/// engine used from one thread) before concurrent `express` calls.
class RewriteEngine {
 public:
  RewriteEngine(const VerifiedModel& m, int degree_bound);

  int degree_bound() const noexcept { return bound_; }
  /// Builds the elimination for every phase-space degree in `degrees`.
  void prepare(std::span<const int> degrees);
  std::variant<Polynomial, NotExpressible> express(const Polynomial& p);

 private:
  struct Block {
    std::vector<Exponent> monomials;  // invariant exponents, ascending grlex
    ExactSpan span;
  };
  const Block& block(int key);
  std::variant<Polynomial, NotExpressible> express_prepared(const Polynomial& p) const;

  VerifiedModel model_;
  int bound_;
  bool homogeneous_ = true;
  std::vector<int> weights_;
  std::map<int, std::unique_ptr<Block>> blocks_;
};

std::variant<Polynomial, NotExpressible> express_in_invariants(const VerifiedModel& m,
                                                               const Polynomial& p,
                                                               int degree_bound);

/// W_ij = {rho_i, rho_j} written in the invariants.
struct InducedStructure {
  std::vector<std::string> names;
  int degree_bound = 0;
  std::vector<std::vector<Polynomial>> entries;

  PoissonStructure as_structure() const { return PoissonStructure::matrix(entries); }
  bool is_zero() const;
};

/// Throws RewriteBoundExceeded naming the first failing pair (row-major).
InducedStructure induced_structure(const VerifiedModel& m, int degree_bound,
                                   Execution exec = Execution::Parallel);

/// The model's stored bound, or 2 when it has none.
int default_degree_bound(const SymmetryModel& m);

struct CasimirResult {
  bool pass = true;
  std::size_t invariant = 0;  // first failing invariant coordinate
  Polynomial residual;        // pulled back to phase space
};

/// Checks {C, v_i} = 0 for the induced bracket, pulled back through rho.
CasimirResult casimir_check(const VerifiedModel& m, const InducedStructure& w,
                            const Polynomial& candidate);
CasimirResult casimir_check(const VerifiedModel& m, const Polynomial& candidate,
                            int degree_bound);

}  // namespace symred
