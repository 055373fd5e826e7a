// Copyright 2026 The symred Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace symred {

using Rational = mpq_class;
using Exponent = std::vector<std::uint32_t>;

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Terms are kept in canonical form: no stored coefficient is zero and every
/// exponent has exactly `arity()` entries. All arithmetic is exact; the only
/// floating-point operation is `evaluate(std::span<const double>)`.
class Polynomial {
 public:
  using TermMap = std::map<Exponent, Rational>;

  Polynomial() = default;
  explicit Polynomial(std::size_t arity) : arity_(arity) {}

  static Polynomial constant(std::size_t arity, const Rational& c);
  static Polynomial variable(std::size_t arity, std::size_t index);
  static Polynomial monomial(Exponent exponent, const Rational& c);

  std::size_t arity() const noexcept { return arity_; }
  const TermMap& terms() const noexcept { return terms_; }
  std::size_t term_count() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const;
  /// Coefficient of the given exponent (zero when absent).
  Rational coefficient(const Exponent& e) const;

  /// Total degree; -1 for the zero polynomial.
  int total_degree() const;
  bool is_homogeneous() const;
  /// Sorted distinct total degrees of the stored terms.
  std::vector<int> degrees_present() const;
  Polynomial homogeneous_component(int degree) const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o);
  Polynomial& operator*=(const Rational& c);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
  Polynomial operator-() const;

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.arity_ == b.arity_ && a.terms_ == b.terms_;
  }

  Polynomial pow(unsigned n) const;

  /// Partial derivative; throws ArityError when `var >= arity()`.
  Polynomial derivative(std::size_t var) const;

  double evaluate(std::span<const double> point) const;
  Rational evaluate(std::span<const Rational> point) const;

  /// p(q_1, ..., q_arity). All substitutions must share one arity, which is
  /// the arity of the result.
  Polynomial compose(std::span<const Polynomial> substitutions) const;

  /// Replace variable `var` by `value`, keeping the arity.
  Polynomial substitute(std::size_t var, const Polynomial& value) const;

  /// Re-embed into a space of `new_arity` variables, old variable i going to
  /// `index_map[i]`.
  Polynomial remap(std::size_t new_arity, std::span<const std::size_t> index_map) const;

 private:
  void add_term(const Exponent& e, const Rational& c);

  std::size_t arity_ = 0;
  TermMap terms_;
};

Polynomial poly_diff(const Polynomial& p, std::size_t var);
std::vector<Polynomial> gradient(const Polynomial& p);

/// Graded-lex comparison (total degree first, then lexicographic).
bool grlex_less(const Exponent& a, const Exponent& b);

/// All exponents of `arity` variables with total degree <= `max_degree`,
/// ascending in graded-lex order.
std::vector<Exponent> monomials_up_to(std::size_t arity, int max_degree);

// Text form. Grammar:
//   expr   := ['+'|'-'] term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := base ('^' uint)?
//   base   := rational | var | '(' expr ')'
//   rational := int ('/' uint)?
Polynomial poly_parse(std::string_view text, std::span<const std::string> names);
std::string to_string(const Polynomial& p, std::span<const std::string> names);

/// Default names x1..xn, used in diagnostics.
std::vector<std::string> default_names(std::size_t arity, std::string_view stem = "x");

/// Dense coefficient/exponent layout for fast repeated floating evaluation.
class CompiledPolynomial {
 public:
  CompiledPolynomial() = default;
  explicit CompiledPolynomial(const Polynomial& p);

  std::size_t arity() const noexcept { return arity_; }
  double operator()(std::span<const double> x) const;

 private:
  std::size_t arity_ = 0;
  std::vector<double> coefficients_;
  std::vector<std::uint32_t> exponents_;  // term-major, arity_ entries per term
  std::uint32_t max_exponent_ = 0;
};

}  // namespace symred
