// Copyright 2026 The symred Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <random>
#include <string>
#include <vector>

#include "symred/model.hpp"
#include "symred/polynomial.hpp"

namespace symred::testing {

// Small random polynomial with integer coefficients in [-3, 3].
inline Polynomial random_polynomial(std::size_t arity, int max_degree, int terms, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> coef(-3, 3), var(0, static_cast<int>(arity) - 1),
      deg(0, max_degree);
  Polynomial p(arity);
  for (int t = 0; t < terms; ++t) {
    Exponent e(arity, 0);
    const int d = deg(rng);
    for (int k = 0; k < d; ++k) ++e[var(rng)];
    p += Polynomial::monomial(e, Rational(coef(rng)));
  }
  return p;
}

inline std::vector<double> normal_point(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<double> x(n);
  for (auto& v : x) v = g(rng);
  return x;
}

inline std::vector<Rational> rational_point(std::size_t n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-9, 9), den(1, 5);
  std::vector<Rational> x;
  for (std::size_t i = 0; i < n; ++i) {
    Rational r(num(rng), den(rng));
    r.canonicalize();
    x.push_back(r);
  }
  return x;
}

inline std::string data_path(const std::string& name) { return std::string(SYMRED_TEST_DATA) + "/" + name; }

}  // namespace symred::testing

namespace symred::testing {

// Exact rank by fraction-free row reduction over Q; an oracle independent of
// the floating SVD path.
inline int exact_rank(std::vector<std::vector<Rational>> a) {
  int rank = 0;
  const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  for (std::size_t c = 0; c < cols && static_cast<std::size_t>(rank) < rows; ++c) {
    std::size_t pivot = rows;
    for (std::size_t r = rank; r < rows; ++r) {
      if (a[r][c] != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot == rows) continue;
    std::swap(a[pivot], a[rank]);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == static_cast<std::size_t>(rank) || a[r][c] == 0) continue;
      const Rational f = a[r][c] / a[rank][c];
      for (std::size_t k = c; k < cols; ++k) a[r][k] -= f * a[rank][k];
    }
    ++rank;
  }
  return rank;
}

using QMatrix = std::vector<std::vector<Rational>>;

inline QMatrix jacobian(const std::vector<NamedPolynomial>& f, std::span<const Rational> x) {
  QMatrix out(f.size(), std::vector<Rational>(x.size()));
  for (std::size_t i = 0; i < f.size(); ++i) {
    for (std::size_t j = 0; j < x.size(); ++j) out[i][j] = poly_diff(f[i].expr, j).evaluate(x);
  }
  return out;
}

inline QMatrix multiply(const QMatrix& a, const QMatrix& b) {
  const std::size_t inner = b.size(), cols = inner ? b[0].size() : 0;
  QMatrix out(a.size(), std::vector<Rational>(cols));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t k = 0; k < inner; ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < cols; ++j) out[i][j] += a[i][k] * b[k][j];
    }
  }
  return out;
}

inline QMatrix transpose(const QMatrix& a) {
  const std::size_t cols = a.empty() ? 0 : a[0].size();
  QMatrix out(cols, std::vector<Rational>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < cols; ++j) out[j][i] = a[i][j];
  }
  return out;
}

// Brute-force exact ranks at a rational point, straight from the definitions.
struct ExactRanks {
  int drho, dj, orbit, inv_span, induced;
};

inline ExactRanks exact_ranks(const SymmetryModel& m, std::span<const Rational> x) {
  const auto wp = m.structure.as_matrix();
  QMatrix w(wp.size(), std::vector<Rational>(wp.size()));
  for (std::size_t i = 0; i < wp.size(); ++i) {
    for (std::size_t j = 0; j < wp.size(); ++j) w[i][j] = wp[i][j].evaluate(x);
  }
  const QMatrix drho = jacobian(m.invariants, x), dj = jacobian(m.generators, x);
  const QMatrix wdrho = multiply(w, transpose(drho));
  return {exact_rank(drho), exact_rank(dj), exact_rank(multiply(w, transpose(dj))), exact_rank(wdrho),
          exact_rank(multiply(drho, wdrho))};
}

inline std::vector<double> to_double(const std::vector<Rational>& q) {
  std::vector<double> out;
  for (const auto& v : q) out.push_back(v.get_d());
  return out;
}


}  // namespace symred::testing
