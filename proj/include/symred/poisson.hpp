// Copyright 2026 The symred Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>

#include <span>
#include <variant>
#include <vector>

#include "symred/polynomial.hpp"

namespace symred {

/// Poisson structure on R^n given by an antisymmetric polynomial matrix W,
/// with the bracket {f, g} = (grad f)^T W (grad g).
///
/// `canonical(n)` is the constant block form [[0, I], [-I, 0]] on variables
/// ordered (x_1..x_n, y_1..y_n), so {x_i, y_i} = 1.
class PoissonStructure {
 public:
  struct Canonical {
    std::size_t pairs = 0;
  };
  struct Matrix {
    std::vector<std::vector<Polynomial>> entries;
  };

  PoissonStructure() : repr_(Canonical{0}) {}

  static PoissonStructure canonical(std::size_t pairs);
  /// Throws StructureError if the matrix is not square, has mixed arity, or
  /// is not exactly antisymmetric.
  static PoissonStructure matrix(std::vector<std::vector<Polynomial>> entries);

  bool is_canonical() const noexcept { return std::holds_alternative<Canonical>(repr_); }
  std::size_t dimension() const noexcept;
  std::size_t canonical_pairs() const;

  Polynomial entry(std::size_t i, std::size_t j) const;
  std::vector<std::vector<Polynomial>> as_matrix() const;
  const std::variant<Canonical, Matrix>& representation() const noexcept { return repr_; }

  Eigen::MatrixXd evaluate(std::span<const double> x) const;

 private:
  std::variant<Canonical, Matrix> repr_;
};

Polynomial bracket(const Polynomial& f, const Polynomial& g, const PoissonStructure& s);

/// X_f = W grad f, one component per variable.
std::vector<Polynomial> hamiltonian_field(const Polynomial& f, const PoissonStructure& s);

/// Block-diagonal direct sum of structures (used for A_x (+) A_y, ...).
PoissonStructure direct_sum(std::span<const PoissonStructure> blocks);

/// The so(3)* structure matrix A_x on three consecutive variables starting
/// at `offset` of an `arity`-variable space.
std::vector<std::vector<Polynomial>> so3_block(std::size_t arity, std::size_t offset);

/// Fast floating evaluation of a structure at many points.
class CompiledStructure {
 public:
  CompiledStructure() = default;
  explicit CompiledStructure(const PoissonStructure& s);
  Eigen::MatrixXd operator()(std::span<const double> x) const;

 private:
  std::size_t n_ = 0;
  std::size_t pairs_ = 0;
  bool canonical_ = false;
  std::vector<std::pair<std::size_t, CompiledPolynomial>> upper_;  // i*n+j, i<j
};

}  // namespace symred
