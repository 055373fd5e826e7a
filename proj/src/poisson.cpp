// Copyright 2026 The symred Authors
// SPDX-License-Identifier: Apache-2.0
#include "symred/poisson.hpp"

#include "symred/errors.hpp"

namespace symred {

PoissonStructure PoissonStructure::canonical(std::size_t pairs) {
  PoissonStructure s;
  s.repr_ = Canonical{pairs};
  return s;
}

PoissonStructure PoissonStructure::matrix(std::vector<std::vector<Polynomial>> entries) {
  const std::size_t n = entries.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (entries[i].size() != n) throw StructureError("structure matrix is not square");
    for (std::size_t j = 0; j < n; ++j) {
      if (entries[i][j].arity() != n) {
        throw StructureError("structure entry (" + std::to_string(i + 1) + "," +
                             std::to_string(j + 1) + ") has arity " +
                             std::to_string(entries[i][j].arity()) + ", expected " +
                             std::to_string(n));
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!entries[i][i].is_zero()) {
      throw StructureError("structure matrix diagonal entry " + std::to_string(i + 1) +
                           " is not zero");
    }
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!(entries[i][j] + entries[j][i]).is_zero()) {
        throw StructureError("structure matrix is not antisymmetric at (" + std::to_string(i + 1) +
                             "," + std::to_string(j + 1) + ")");
      }
    }
  }
  PoissonStructure s;
  s.repr_ = Matrix{std::move(entries)};
  return s;
}

std::size_t PoissonStructure::dimension() const noexcept {
  if (const auto* c = std::get_if<Canonical>(&repr_)) return 2 * c->pairs;
  return std::get<Matrix>(repr_).entries.size();
}

std::size_t PoissonStructure::canonical_pairs() const {
  if (const auto* c = std::get_if<Canonical>(&repr_)) return c->pairs;
  throw PreconditionError("structure is not canonical");
}

Polynomial PoissonStructure::entry(std::size_t i, std::size_t j) const {
  const std::size_t n = dimension();
  if (i >= n || j >= n) throw ArityError("structure index out of range");
  if (const auto* c = std::get_if<Canonical>(&repr_)) {
    if (j == i + c->pairs) return Polynomial::constant(n, Rational(1));
    if (i == j + c->pairs) return Polynomial::constant(n, Rational(-1));
    return Polynomial(n);
  }
  return std::get<Matrix>(repr_).entries[i][j];
}

std::vector<std::vector<Polynomial>> PoissonStructure::as_matrix() const {
  if (const auto* m = std::get_if<Matrix>(&repr_)) return m->entries;
  const std::size_t n = dimension();
  std::vector<std::vector<Polynomial>> out(n, std::vector<Polynomial>(n, Polynomial(n)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out[i][j] = entry(i, j);
  }
  return out;
}

Eigen::MatrixXd PoissonStructure::evaluate(std::span<const double> x) const {
  return CompiledStructure(*this)(x);
}

Polynomial bracket(const Polynomial& f, const Polynomial& g, const PoissonStructure& s) {
  const std::size_t n = s.dimension();
  if (f.arity() != n || g.arity() != n) throw ArityError("bracket arity mismatch");
  Polynomial out(n);
  if (const auto* c = std::get_if<PoissonStructure::Canonical>(&s.representation())) {
    for (std::size_t i = 0; i < c->pairs; ++i) {
      const std::size_t j = i + c->pairs;
      out += f.derivative(i) * g.derivative(j);
      out -= f.derivative(j) * g.derivative(i);
    }
    return out;
  }
  const auto& w = std::get<PoissonStructure::Matrix>(s.representation()).entries;
  const auto df = gradient(f);
  const auto dg = gradient(g);
  for (std::size_t i = 0; i < n; ++i) {
    if (df[i].is_zero()) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (dg[j].is_zero() || w[i][j].is_zero()) continue;
      out += df[i] * w[i][j] * dg[j];
    }
  }
  return out;
}

std::vector<Polynomial> hamiltonian_field(const Polynomial& f, const PoissonStructure& s) {
  const std::size_t n = s.dimension();
  if (f.arity() != n) throw ArityError("hamiltonian_field arity mismatch");
  const auto df = gradient(f);
  std::vector<Polynomial> field(n, Polynomial(n));
  if (const auto* c = std::get_if<PoissonStructure::Canonical>(&s.representation())) {
    for (std::size_t i = 0; i < c->pairs; ++i) {
      field[i] = df[i + c->pairs];
      field[i + c->pairs] = -df[i];
    }
    return field;
  }
  const auto& w = std::get<PoissonStructure::Matrix>(s.representation()).entries;
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = 0; j < n; ++j) {
      if (w[k][j].is_zero() || df[j].is_zero()) continue;
      field[k] += w[k][j] * df[j];
    }
  }
  return field;
}

PoissonStructure direct_sum(std::span<const PoissonStructure> blocks) {
  std::size_t n = 0;
  for (const auto& b : blocks) n += b.dimension();
  std::vector<std::vector<Polynomial>> w(n, std::vector<Polynomial>(n, Polynomial(n)));
  std::size_t offset = 0;
  for (const auto& b : blocks) {
    const std::size_t m = b.dimension();
    std::vector<std::size_t> map(m);
    for (std::size_t i = 0; i < m; ++i) map[i] = offset + i;
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) w[offset + i][offset + j] = b.entry(i, j).remap(n, map);
    }
    offset += m;
  }
  return PoissonStructure::matrix(std::move(w));
}

std::vector<std::vector<Polynomial>> so3_block(std::size_t arity, std::size_t offset) {
  auto v = [&](std::size_t i) { return Polynomial::variable(arity, offset + i); };
  const Polynomial zero(arity);
  // A_x = [[0, -x3, x2], [x3, 0, -x1], [-x2, x1, 0]]
  return {{zero, -v(2), v(1)}, {v(2), zero, -v(0)}, {-v(1), v(0), zero}};
}

CompiledStructure::CompiledStructure(const PoissonStructure& s) : n_(s.dimension()) {
  if (s.is_canonical()) {
    canonical_ = true;
    pairs_ = s.canonical_pairs();
    return;
  }
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = i + 1; j < n_; ++j) {
      Polynomial e = s.entry(i, j);
      if (!e.is_zero()) upper_.emplace_back(i * n_ + j, CompiledPolynomial(e));
    }
  }
}

Eigen::MatrixXd CompiledStructure::operator()(std::span<const double> x) const {
  if (x.size() != n_) throw ArityError("structure evaluation point has wrong dimension");
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n_, n_);
  if (canonical_) {
    for (std::size_t i = 0; i < pairs_; ++i) {
      w(i, i + pairs_) = 1.0;
      w(i + pairs_, i) = -1.0;
    }
    return w;
  }
  for (const auto& [idx, p] : upper_) {
    const std::size_t i = idx / n_;
    const std::size_t j = idx % n_;
    const double v = p(x);
    w(i, j) = v;
    w(j, i) = -v;
  }
  return w;
}

}  // namespace symred
