// Copyright 2026 The symred Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <optional>
#include <span>
#include <vector>

#include "symred/polynomial.hpp"

namespace symred {

/// Exact linear span of a list of polynomials over Q, kept in reduced
/// echelon form over the monomial coordinates.
///
/// Columns are taken in insertion order; a column that is dependent on the
/// earlier ones contributes nothing, so `solve` always returns the solution
/// supported on the first independent columns with every later unknown set to
/// zero. Callers control the bias of the representative through the order.
class ExactSpan {
 public:
  explicit ExactSpan(std::size_t arity) : arity_(arity) {}

  /// Appends a column; returns true when it enlarged the span.
  bool add(const Polynomial& p);

  std::size_t columns() const noexcept { return columns_; }
  std::size_t rank() const noexcept { return rows_.size(); }

  /// Coefficients c (one per added column) with sum c_j p_j == target, or
  /// nullopt when target is outside the span.
  std::optional<std::vector<Rational>> solve(const Polynomial& target) const;

 private:
  using Sparse = std::map<Exponent, Rational>;
  struct Row {
    Exponent pivot;
    Sparse values;                        // pivot coefficient is 1
    std::map<std::size_t, Rational> combo;  // in terms of original columns
  };

  void reduce(Sparse& v, std::map<std::size_t, Rational>& combo) const;

  std::size_t arity_;
  std::size_t columns_ = 0;
  std::vector<Row> rows_;
  std::map<Exponent, std::size_t> pivot_index_;
};

/// One-shot helper: target == sum c_j basis_j.
std::optional<std::vector<Rational>> solve_in_span(const Polynomial& target,
                                                   std::span<const Polynomial> basis);

}  // namespace symred
