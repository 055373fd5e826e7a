// Copyright 2026 The symred Authors
// SPDX-License-Identifier: Apache-2.0
#include "symred/exact_span.hpp"

#include "symred/errors.hpp"

namespace symred {

namespace {

template <class Map>
void axpy(Map& dst, const Map& src, const Rational& factor) {
  for (const auto& [k, v] : src) {
    auto [it, inserted] = dst.try_emplace(k, 0);
    it->second -= factor * v;
    if (sgn(it->second) == 0) dst.erase(it);
  }
}

}  // namespace

void ExactSpan::reduce(Sparse& v, std::map<std::size_t, Rational>& combo) const {
  // Rows are fully reduced against each other, so one pass suffices.
  for (const Row& row : rows_) {
    auto it = v.find(row.pivot);
    if (it == v.end()) continue;
    const Rational factor = it->second;
    axpy(v, row.values, factor);
    axpy(combo, row.combo, factor);
  }
}

bool ExactSpan::add(const Polynomial& p) {
  if (p.arity() != arity_) throw ArityError("ExactSpan column has wrong arity");
  const std::size_t column = columns_++;
  Sparse v(p.terms().begin(), p.terms().end());
  std::map<std::size_t, Rational> combo{{column, Rational(1)}};
  reduce(v, combo);
  if (v.empty()) return false;

  // Pivot on the graded-lex largest monomial.
  auto pivot_it = v.begin();
  for (auto it = v.begin(); it != v.end(); ++it) {
    if (grlex_less(pivot_it->first, it->first)) pivot_it = it;
  }
  const Exponent pivot = pivot_it->first;
  const Rational inv = 1 / pivot_it->second;
  for (auto& [k, c] : v) c *= inv;
  for (auto& [k, c] : combo) c *= inv;

  for (Row& row : rows_) {
    auto it = row.values.find(pivot);
    if (it == row.values.end()) continue;
    const Rational factor = it->second;
    axpy(row.values, v, factor);
    axpy(row.combo, combo, factor);
  }
  pivot_index_.emplace(pivot, rows_.size());
  rows_.push_back(Row{pivot, std::move(v), std::move(combo)});
  return true;
}

std::optional<std::vector<Rational>> ExactSpan::solve(const Polynomial& target) const {
  if (target.arity() != arity_) throw ArityError("ExactSpan target has wrong arity");
  // target = sum_r t_r * row_r where t_r is target's coefficient at pivot r.
  Sparse residual(target.terms().begin(), target.terms().end());
  std::vector<Rational> out(columns_, Rational(0));
  for (const Row& row : rows_) {
    auto it = residual.find(row.pivot);
    if (it == residual.end()) continue;
    const Rational factor = it->second;
    axpy(residual, row.values, factor);
    for (const auto& [col, c] : row.combo) out[col] += factor * c;
  }
  if (!residual.empty()) return std::nullopt;
  return out;
}

std::optional<std::vector<Rational>> solve_in_span(const Polynomial& target,
                                                   std::span<const Polynomial> basis) {
  ExactSpan span(target.arity());
  for (const auto& b : basis) span.add(b);
  return span.solve(target);
}

}  // namespace symred
