// Copyright 2026 The symred Authors
// SPDX-License-Identifier: Apache-2.0
#include "symred/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>
#include <sstream>

#include "symred/errors.hpp"

namespace symred {

namespace {

int degree_of(const Exponent& e) {
  return static_cast<int>(std::accumulate(e.begin(), e.end(), std::uint64_t{0}));
}

void require_same_arity(const Polynomial& a, const Polynomial& b) {
  if (a.arity() != b.arity()) {
    throw ArityError("polynomial arity mismatch: " + std::to_string(a.arity()) + " vs " +
                     std::to_string(b.arity()));
  }
}

}  // namespace

Polynomial Polynomial::constant(std::size_t arity, const Rational& c) {
  Polynomial p(arity);
  p.add_term(Exponent(arity, 0), c);
  return p;
}

Polynomial Polynomial::variable(std::size_t arity, std::size_t index) {
  if (index >= arity) throw ArityError("variable index out of range");
  Exponent e(arity, 0);
  e[index] = 1;
  Polynomial p(arity);
  p.add_term(e, Rational(1));
  return p;
}

Polynomial Polynomial::monomial(Exponent exponent, const Rational& c) {
  Polynomial p(exponent.size());
  p.add_term(exponent, c);
  return p;
}

void Polynomial::add_term(const Exponent& e, const Rational& c) {
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

bool Polynomial::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  return degree_of(terms_.begin()->first) == 0;
}

Rational Polynomial::coefficient(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

int Polynomial::total_degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, degree_of(e));
  return d;
}

bool Polynomial::is_homogeneous() const { return degrees_present().size() <= 1; }

std::vector<int> Polynomial::degrees_present() const {
  std::set<int> ds;
  for (const auto& [e, c] : terms_) ds.insert(degree_of(e));
  return {ds.begin(), ds.end()};
}

Polynomial Polynomial::homogeneous_component(int degree) const {
  Polynomial out(arity_);
  for (const auto& [e, c] : terms_) {
    if (degree_of(e) == degree) out.terms_.emplace(e, c);
  }
  return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  require_same_arity(*this, o);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  require_same_arity(*this, o);
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  require_same_arity(a, b);
  Polynomial out(a.arity_);
  if (a.is_zero() || b.is_zero()) return out;
  Exponent e(a.arity_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

Polynomial& Polynomial::operator*=(const Polynomial& o) {
  *this = *this * o;
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, coef] : terms_) coef *= c;
  return *this;
}

Polynomial Polynomial::operator-() const {
  Polynomial out = *this;
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

Polynomial Polynomial::pow(unsigned n) const {
  Polynomial result = constant(arity_, Rational(1));
  Polynomial base = *this;
  while (n > 0) {
    if (n & 1u) result *= base;
    n >>= 1u;
    if (n > 0) base = base * base;
  }
  return result;
}

Polynomial Polynomial::derivative(std::size_t var) const {
  if (var >= arity_) {
    throw ArityError("derivative index " + std::to_string(var) + " out of range for arity " +
                     std::to_string(arity_));
  }
  Polynomial out(arity_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponent d = e;
    d[var] -= 1;
    out.add_term(d, c * static_cast<unsigned long>(e[var]));
  }
  return out;
}

double Polynomial::evaluate(std::span<const double> point) const {
  if (point.size() != arity_) throw ArityError("evaluation point has wrong dimension");
  double sum = 0.0;
  for (const auto& [e, c] : terms_) {
    double t = c.get_d();
    for (std::size_t i = 0; i < arity_; ++i) {
      for (std::uint32_t k = 0; k < e[i]; ++k) t *= point[i];
    }
    sum += t;
  }
  return sum;
}

Rational Polynomial::evaluate(std::span<const Rational> point) const {
  if (point.size() != arity_) throw ArityError("evaluation point has wrong dimension");
  Rational sum(0);
  for (const auto& [e, c] : terms_) {
    Rational t = c;
    for (std::size_t i = 0; i < arity_; ++i) {
      for (std::uint32_t k = 0; k < e[i]; ++k) t *= point[i];
    }
    sum += t;
  }
  return sum;
}

Polynomial Polynomial::compose(std::span<const Polynomial> subs) const {
  if (subs.size() != arity_) throw ArityError("composition needs one substitution per variable");
  const std::size_t target = subs.empty() ? 0 : subs.front().arity();
  for (const auto& s : subs) {
    if (s.arity() != target) throw ArityError("substitutions must share one arity");
  }
  // Powers are cached per variable; products of powers are cached per prefix
  // through the sorted term order.
  std::vector<std::vector<Polynomial>> powers(arity_);
  auto power = [&](std::size_t i, std::uint32_t k) -> const Polynomial& {
    auto& cache = powers[i];
    if (cache.empty()) cache.push_back(constant(target, Rational(1)));
    while (cache.size() <= k) cache.push_back(cache.back() * subs[i]);
    return cache[k];
  };
  Polynomial out(target);
  for (const auto& [e, c] : terms_) {
    Polynomial t = constant(target, c);
    for (std::size_t i = 0; i < arity_; ++i) {
      if (e[i] > 0) t *= power(i, e[i]);
    }
    out += t;
  }
  return out;
}

Polynomial Polynomial::substitute(std::size_t var, const Polynomial& value) const {
  if (var >= arity_) throw ArityError("substitution index out of range");
  std::vector<Polynomial> subs;
  subs.reserve(arity_);
  for (std::size_t i = 0; i < arity_; ++i) {
    subs.push_back(i == var ? value : variable(arity_, i));
  }
  return compose(subs);
}

Polynomial Polynomial::remap(std::size_t new_arity, std::span<const std::size_t> index_map) const {
  if (index_map.size() != arity_) throw ArityError("remap needs one index per variable");
  Polynomial out(new_arity);
  for (const auto& [e, c] : terms_) {
    Exponent ne(new_arity, 0);
    for (std::size_t i = 0; i < arity_; ++i) {
      if (index_map[i] >= new_arity) throw ArityError("remap target out of range");
      ne[index_map[i]] += e[i];
    }
    out.add_term(ne, c);
  }
  return out;
}

Polynomial poly_diff(const Polynomial& p, std::size_t var) { return p.derivative(var); }

std::vector<Polynomial> gradient(const Polynomial& p) {
  std::vector<Polynomial> g;
  g.reserve(p.arity());
  for (std::size_t i = 0; i < p.arity(); ++i) g.push_back(p.derivative(i));
  return g;
}

bool grlex_less(const Exponent& a, const Exponent& b) {
  const int da = degree_of(a);
  const int db = degree_of(b);
  if (da != db) return da < db;
  return a < b;
}

std::vector<Exponent> monomials_up_to(std::size_t arity, int max_degree) {
  std::vector<Exponent> out;
  Exponent e(arity, 0);
  // Depth-first enumeration of all compositions with sum <= max_degree.
  auto rec = [&](auto&& self, std::size_t i, int remaining) -> void {
    if (i == arity) {
      out.push_back(e);
      return;
    }
    for (int k = 0; k <= remaining; ++k) {
      e[i] = static_cast<std::uint32_t>(k);
      self(self, i + 1, remaining - k);
    }
    e[i] = 0;
  };
  if (max_degree >= 0) rec(rec, 0, max_degree);
  std::sort(out.begin(), out.end(), grlex_less);
  return out;
}

// ---- text form -------------------------------------------------------------

namespace {

class Parser {
 public:
  Parser(std::string_view text, std::span<const std::string> names)
      : text_(text), names_(names) {}

  Polynomial parse() {
    Polynomial p = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("polynomial syntax error at position " + std::to_string(pos_) + ": " + msg,
                     pos_);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  Polynomial expr() {
    skip_ws();
    bool negate = false;
    if (peek('+') || peek('-')) {
      negate = text_[pos_] == '-';
      ++pos_;
    }
    Polynomial acc = term();
    if (negate) acc = -acc;
    while (true) {
      if (peek('+')) {
        ++pos_;
        acc += term();
      } else if (peek('-')) {
        ++pos_;
        acc -= term();
      } else {
        break;
      }
    }
    return acc;
  }

  Polynomial term() {
    Polynomial acc = factor();
    while (peek('*')) {
      ++pos_;
      acc *= factor();
    }
    return acc;
  }

  Polynomial factor() {
    Polynomial b = base();
    if (peek('^')) {
      ++pos_;
      skip_ws();
      const std::string digits = read_digits();
      if (digits.empty()) fail("expected unsigned exponent");
      unsigned long n = 0;
      try {
        n = std::stoul(digits);
      } catch (const std::exception&) {
        fail("exponent out of range");
      }
      if (n > 4096) fail("exponent too large");
      b = b.pow(static_cast<unsigned>(n));
    }
    return b;
  }

  std::string read_digits() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  Polynomial base() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial inner = expr();
      if (!peek(')')) fail("expected ')'");
      ++pos_;
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string num = read_digits();
      skip_ws();
      if (pos_ < text_.size() && text_[pos_] == '/') {
        ++pos_;
        skip_ws();
        const std::string den = read_digits();
        if (den.empty()) fail("expected denominator");
        if (den.find_first_not_of('0') == std::string::npos) fail("zero denominator");
        num += "/" + den;
      }
      Rational q(num);
      q.canonicalize();
      return Polynomial::constant(names_.size(), q);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      const std::string_view name = text_.substr(start, pos_ - start);
      for (std::size_t i = 0; i < names_.size(); ++i) {
        if (names_[i] == name) return Polynomial::variable(names_.size(), i);
      }
      pos_ = start;
      fail("unknown variable '" + std::string(name) + "'");
    }
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  std::span<const std::string> names_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial poly_parse(std::string_view text, std::span<const std::string> names) {
  return Parser(text, names).parse();
}

std::string to_string(const Polynomial& p, std::span<const std::string> names) {
  if (names.size() != p.arity()) throw ArityError("name list does not match polynomial arity");
  if (p.is_zero()) return "0";
  std::vector<const Polynomial::TermMap::value_type*> order;
  order.reserve(p.term_count());
  for (const auto& t : p.terms()) order.push_back(&t);
  // Highest graded-lex term first.
  std::sort(order.begin(), order.end(),
            [](const auto* a, const auto* b) { return grlex_less(b->first, a->first); });
  std::ostringstream os;
  bool first = true;
  for (const auto* t : order) {
    const Exponent& e = t->first;
    Rational c = t->second;
    const bool negative = sgn(c) < 0;
    if (negative) c = -c;
    if (first) {
      if (negative) os << "-";
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    bool wrote = false;
    const bool unit = c == 1;
    if (!unit || degree_of(e) == 0) {
      os << c.get_str();
      wrote = true;
    }
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (wrote) os << "*";
      os << names[i];
      if (e[i] > 1) os << "^" << e[i];
      wrote = true;
    }
  }
  return os.str();
}

std::vector<std::string> default_names(std::size_t arity, std::string_view stem) {
  std::vector<std::string> out;
  out.reserve(arity);
  for (std::size_t i = 0; i < arity; ++i) out.push_back(std::string(stem) + std::to_string(i + 1));
  return out;
}

// ---- compiled form ---------------------------------------------------------

CompiledPolynomial::CompiledPolynomial(const Polynomial& p) : arity_(p.arity()) {
  coefficients_.reserve(p.term_count());
  exponents_.reserve(p.term_count() * arity_);
  for (const auto& [e, c] : p.terms()) {
    coefficients_.push_back(c.get_d());
    for (auto k : e) {
      exponents_.push_back(k);
      max_exponent_ = std::max(max_exponent_, k);
    }
  }
}

double CompiledPolynomial::operator()(std::span<const double> x) const {
  if (x.size() != arity_) throw ArityError("evaluation point has wrong dimension");
  double sum = 0.0;
  const std::uint32_t* e = exponents_.data();
  for (double c : coefficients_) {
    double t = c;
    for (std::size_t i = 0; i < arity_; ++i, ++e) {
      for (std::uint32_t k = 0; k < *e; ++k) t *= x[i];
    }
    sum += t;
  }
  return sum;
}

}  // namespace symred
