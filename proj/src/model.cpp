// Copyright 2026 The symred Authors
// SPDX-License-Identifier: Apache-2.0
#include "symred/model.hpp"

#include <json.hpp>

#include <cmath>
#include <set>

#include "symred/errors.hpp"
#include "symred/exact_span.hpp"
#include "symred/parallel.hpp"

namespace symred {

using ordered_json = nlohmann::ordered_json;

std::vector<std::string> SymmetryModel::invariant_names() const {
  std::vector<std::string> out;
  out.reserve(invariants.size());
  for (const auto& r : invariants) out.push_back(r.name);
  return out;
}

std::vector<Polynomial> SymmetryModel::invariant_polynomials() const {
  std::vector<Polynomial> out;
  out.reserve(invariants.size());
  for (const auto& r : invariants) out.push_back(r.expr);
  return out;
}

std::vector<Polynomial> SymmetryModel::generator_polynomials() const {
  std::vector<Polynomial> out;
  out.reserve(generators.size());
  for (const auto& g : generators) out.push_back(g.expr);
  return out;
}

void SymmetryModel::validate() const {
  const std::size_t n = variables.size();
  if (structure.dimension() != n) {
    throw ArityError("structure dimension " + std::to_string(structure.dimension()) +
                     " does not match " + std::to_string(n) + " variables");
  }
  auto unique = [](const std::vector<std::string>& names, const char* what) {
    std::set<std::string> seen;
    for (const auto& s : names) {
      if (!seen.insert(s).second) throw ParseError(std::string("duplicate ") + what + " '" + s + "'");
    }
  };
  unique(variables, "variable");
  unique(invariant_names(), "invariant name");
  for (const auto& g : generators) {
    if (g.expr.arity() != n) throw ArityError("generator '" + g.name + "' has wrong arity");
  }
  for (const auto& r : invariants) {
    if (r.expr.arity() != n) throw ArityError("invariant '" + r.name + "' has wrong arity");
  }
  const std::size_t k = invariants.size();
  for (const auto* list : {&relations, &inequalities, &casimirs}) {
    for (const auto& p : *list) {
      if (p.arity() != k) throw ArityError("invariant-space polynomial has wrong arity");
    }
  }
  if (degree_bound && *degree_bound < 1) throw ArityError("degree_bound must be >= 1");
}

// ---- document I/O ------------------------------------------------------------

namespace {

const std::set<std::string> kTopFields = {"name",      "variables",     "structure",
                                          "generators", "invariants",   "relations",
                                          "inequalities", "casimirs",   "degree_bound"};

std::vector<std::string> string_array(const ordered_json& j, const char* field) {
  if (!j.is_array()) throw ParseError(std::string("field '") + field + "' must be an array");
  std::vector<std::string> out;
  for (const auto& e : j) {
    if (!e.is_string()) throw ParseError(std::string("field '") + field + "' must hold strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

Polynomial parse_in(const std::string& text, const std::vector<std::string>& names,
                    const std::string& where) {
  try {
    return poly_parse(text, names);
  } catch (const ParseError& e) {
    throw ParseError(where + ": " + e.what(), e.position());
  }
}

std::vector<NamedPolynomial> named_array(const ordered_json& j, const char* field,
                                         const std::vector<std::string>& names) {
  if (!j.is_array()) throw ParseError(std::string("field '") + field + "' must be an array");
  std::vector<NamedPolynomial> out;
  for (const auto& e : j) {
    if (!e.is_object()) throw ParseError(std::string("entries of '") + field + "' must be objects");
    for (const auto& [key, value] : e.items()) {
      if (key != "name" && key != "expr") {
        throw ParseError(std::string("unknown field '") + key + "' in " + field);
      }
    }
    if (!e.contains("name") || !e.contains("expr") || !e["name"].is_string() ||
        !e["expr"].is_string()) {
      throw ParseError(std::string("entries of '") + field + "' need string 'name' and 'expr'");
    }
    const std::string name = e["name"].get<std::string>();
    out.push_back({name, parse_in(e["expr"].get<std::string>(), names,
                                  std::string(field) + " '" + name + "'")});
  }
  return out;
}

PoissonStructure parse_structure(const ordered_json& j, const std::vector<std::string>& names) {
  if (!j.is_object() || !j.contains("type") || !j["type"].is_string()) {
    throw ParseError("structure must be an object with a 'type'");
  }
  const std::string type = j["type"].get<std::string>();
  if (type == "canonical") {
    for (const auto& [key, value] : j.items()) {
      if (key != "type" && key != "pairs") throw ParseError("unknown field '" + key + "' in structure");
    }
    if (!j.contains("pairs") || !j["pairs"].is_number_unsigned()) {
      throw ParseError("canonical structure needs unsigned 'pairs'");
    }
    const auto pairs = j["pairs"].get<std::size_t>();
    if (2 * pairs != names.size()) {
      throw ArityError("canonical structure with " + std::to_string(pairs) + " pairs needs " +
                       std::to_string(2 * pairs) + " variables, got " +
                       std::to_string(names.size()));
    }
    return PoissonStructure::canonical(pairs);
  }
  if (type == "matrix") {
    for (const auto& [key, value] : j.items()) {
      if (key != "type" && key != "entries") throw ParseError("unknown field '" + key + "' in structure");
    }
    if (!j.contains("entries") || !j["entries"].is_array()) {
      throw ParseError("matrix structure needs 'entries'");
    }
    std::vector<std::vector<Polynomial>> w;
    std::size_t i = 0;
    for (const auto& row : j["entries"]) {
      std::vector<Polynomial> r;
      std::size_t jj = 0;
      for (const auto& s : string_array(row, "entries")) {
        r.push_back(parse_in(s, names,
                             "structure entry (" + std::to_string(i + 1) + "," +
                                 std::to_string(jj + 1) + ")"));
        ++jj;
      }
      w.push_back(std::move(r));
      ++i;
    }
    if (w.size() != names.size()) {
      throw ArityError("structure matrix has " + std::to_string(w.size()) + " rows for " +
                       std::to_string(names.size()) + " variables");
    }
    return PoissonStructure::matrix(std::move(w));
  }
  throw ParseError("unknown structure type '" + type + "'");
}

}  // namespace

SymmetryModel load_model(std::string_view document) {
  ordered_json j;
  try {
    j = ordered_json::parse(document);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("model document: ") + e.what(), e.byte);
  }
  if (!j.is_object()) throw ParseError("model document must be an object");
  for (const auto& [key, value] : j.items()) {
    if (!kTopFields.count(key)) throw ParseError("unknown field '" + key + "' in model document");
  }
  for (const char* f : {"name", "variables", "structure", "generators", "invariants"}) {
    if (!j.contains(f)) throw ParseError(std::string("model document lacks '") + f + "'");
  }
  SymmetryModel m;
  if (!j["name"].is_string()) throw ParseError("'name' must be a string");
  m.name = j["name"].get<std::string>();
  m.variables = string_array(j["variables"], "variables");
  m.structure = parse_structure(j["structure"], m.variables);
  m.generators = named_array(j["generators"], "generators", m.variables);
  m.invariants = named_array(j["invariants"], "invariants", m.variables);
  const auto inv_names = m.invariant_names();
  auto invariant_list = [&](const char* field) {
    std::vector<Polynomial> out;
    if (!j.contains(field)) return out;
    std::size_t idx = 0;
    for (const auto& s : string_array(j[field], field)) {
      out.push_back(parse_in(s, inv_names, std::string(field) + "[" + std::to_string(idx++) + "]"));
    }
    return out;
  };
  m.relations = invariant_list("relations");
  m.inequalities = invariant_list("inequalities");
  m.casimirs = invariant_list("casimirs");
  if (j.contains("degree_bound")) {
    if (!j["degree_bound"].is_number_integer()) throw ParseError("'degree_bound' must be an integer");
    m.degree_bound = j["degree_bound"].get<int>();
  }
  m.validate();
  return m;
}

std::string export_model(const SymmetryModel& m) {
  ordered_json j;
  j["name"] = m.name;
  j["variables"] = m.variables;
  if (m.structure.is_canonical()) {
    j["structure"] = {{"type", "canonical"}, {"pairs", m.structure.canonical_pairs()}};
  } else {
    ordered_json rows = ordered_json::array();
    for (const auto& row : m.structure.as_matrix()) {
      ordered_json r = ordered_json::array();
      for (const auto& e : row) r.push_back(to_string(e, m.variables));
      rows.push_back(r);
    }
    j["structure"] = {{"type", "matrix"}, {"entries", rows}};
  }
  auto named = [&](const std::vector<NamedPolynomial>& list) {
    ordered_json a = ordered_json::array();
    for (const auto& e : list) a.push_back({{"name", e.name}, {"expr", to_string(e.expr, m.variables)}});
    return a;
  };
  j["generators"] = named(m.generators);
  j["invariants"] = named(m.invariants);
  const auto names = m.invariant_names();
  auto plain = [&](const std::vector<Polynomial>& list) {
    ordered_json a = ordered_json::array();
    for (const auto& p : list) a.push_back(to_string(p, names));
    return a;
  };
  j["relations"] = plain(m.relations);
  j["inequalities"] = plain(m.inequalities);
  j["casimirs"] = plain(m.casimirs);
  if (m.degree_bound) j["degree_bound"] = *m.degree_bound;
  return j.dump(2) + "\n";
}

HamiltonianSpec parse_hamiltonian(const SymmetryModel& m, std::string_view text, Frame frame) {
  if (frame == Frame::FullSpace) return {poly_parse(text, m.variables), frame};
  const auto names = m.invariant_names();
  return {poly_parse(text, names), frame};
}

// ---- verification ------------------------------------------------------------

bool InvarianceReport::all_pass() const {
  for (const auto& e : entries) {
    if (!e.pass()) return false;
  }
  return true;
}

bool RelationReport::all_pass() const {
  for (const auto& e : entries) {
    if (!e.pass()) return false;
  }
  return true;
}

bool InequalityReport::all_pass() const {
  for (const auto& e : entries) {
    if (!e.pass()) return false;
  }
  return true;
}

InvarianceReport verify_invariance(const SymmetryModel& m) {
  InvarianceReport report;
  for (std::size_t i = 0; i < m.invariants.size(); ++i) {
    for (std::size_t j = 0; j < m.generators.size(); ++j) {
      report.entries.push_back(
          {i, j, bracket(m.invariants[i].expr, m.generators[j].expr, m.structure)});
    }
  }
  return report;
}

RelationReport verify_relations(const SymmetryModel& m) {
  RelationReport report;
  const auto rho = m.invariant_polynomials();
  for (std::size_t r = 0; r < m.relations.size(); ++r) {
    report.entries.push_back({r, m.relations[r].compose(rho)});
  }
  return report;
}

InequalityReport check_inequalities(const SymmetryModel& m, std::size_t samples,
                                    std::uint64_t seed, double tol) {
  InequalityReport report;
  report.samples = samples;
  const NumericModel num(m);
  std::vector<CompiledPolynomial> ineq;
  std::vector<CompiledPolynomial> magnitude;
  for (const auto& p : m.inequalities) {
    ineq.emplace_back(p);
    Polynomial abs_p(p.arity());
    for (const auto& [e, c] : p.terms()) abs_p += Polynomial::monomial(e, abs(c));
    magnitude.emplace_back(abs_p);
    report.entries.push_back({report.entries.size(), 0.0, 0});
  }
  std::vector<double> x(m.dimension());
  std::normal_distribution<double> normal(0.0, 1.0);
  for (std::size_t s = 0; s < samples; ++s) {
    auto rng = stream_engine(seed, s);
    for (auto& xi : x) xi = normal(rng);
    const Eigen::VectorXd v = num.rho(x);
    std::vector<double> vv(v.data(), v.data() + v.size());
    std::vector<double> av(vv.size());
    for (std::size_t i = 0; i < vv.size(); ++i) av[i] = std::abs(vv[i]);
    for (std::size_t q = 0; q < ineq.size(); ++q) {
      const double scale = 1.0 + magnitude[q](av);
      const double val = ineq[q](vv) / scale;
      auto& entry = report.entries[q];
      if (s == 0 || val < entry.min_value) entry.min_value = val;
      if (val < -tol) ++entry.violations;
    }
  }
  return report;
}

// ---- numeric views -----------------------------------------------------------

NumericModel::NumericModel(const SymmetryModel& m) : n_(m.dimension()), w_(m.structure) {
  for (const auto& r : m.invariants) {
    rho_.emplace_back(r.expr);
    std::vector<CompiledPolynomial> g;
    for (const auto& d : gradient(r.expr)) g.emplace_back(d);
    drho_.push_back(std::move(g));
  }
  for (const auto& jg : m.generators) {
    j_.emplace_back(jg.expr);
    std::vector<CompiledPolynomial> g;
    for (const auto& d : gradient(jg.expr)) g.emplace_back(d);
    dj_.push_back(std::move(g));
  }
}

Eigen::VectorXd NumericModel::rho(std::span<const double> x) const {
  Eigen::VectorXd v(rho_.size());
  for (std::size_t i = 0; i < rho_.size(); ++i) v(i) = rho_[i](x);
  return v;
}

Eigen::MatrixXd NumericModel::drho(std::span<const double> x) const {
  Eigen::MatrixXd d(rho_.size(), n_);
  for (std::size_t i = 0; i < rho_.size(); ++i) {
    for (std::size_t k = 0; k < n_; ++k) d(i, k) = drho_[i][k](x);
  }
  return d;
}

Eigen::VectorXd NumericModel::momentum(std::span<const double> x) const {
  Eigen::VectorXd v(j_.size());
  for (std::size_t i = 0; i < j_.size(); ++i) v(i) = j_[i](x);
  return v;
}

Eigen::MatrixXd NumericModel::dmomentum(std::span<const double> x) const {
  Eigen::MatrixXd d(j_.size(), n_);
  for (std::size_t i = 0; i < j_.size(); ++i) {
    for (std::size_t k = 0; k < n_; ++k) d(i, k) = dj_[i][k](x);
  }
  return d;
}

// ---- certification -----------------------------------------------------------

VerifiedModel::VerifiedModel(std::shared_ptr<const SymmetryModel> m)
    : model_(std::move(m)), numeric_(std::make_shared<NumericModel>(*model_)) {}

Certification certify(SymmetryModel m) {
  m.validate();
  Certification c;
  c.invariance = verify_invariance(m);
  c.relations = verify_relations(m);
  if (c.invariance.all_pass() && c.relations.all_pass()) {
    c.model = VerifiedModel(std::make_shared<const SymmetryModel>(std::move(m)));
  }
  return c;
}

VerifiedModel require_verified(SymmetryModel m) {
  const std::string name = m.name;
  auto c = certify(std::move(m));
  if (c.model) return *c.model;
  for (const auto& e : c.invariance.entries) {
    if (!e.pass()) {
      throw PreconditionError("model '" + name + "' is not verified: {invariant " +
                              std::to_string(e.invariant + 1) + ", generator " +
                              std::to_string(e.generator + 1) + "} != 0");
    }
  }
  for (const auto& e : c.relations.entries) {
    if (!e.pass()) {
      throw PreconditionError("model '" + name + "' is not verified: relation " +
                              std::to_string(e.relation + 1) + " does not pull back to zero");
    }
  }
  throw PreconditionError("model '" + name + "' is not verified");
}

// ---- structure constants -----------------------------------------------------

bool StructureConstants::abelian() const {
  for (const auto& plane : c) {
    for (const auto& row : plane) {
      for (const auto& v : row) {
        if (sgn(v) != 0) return false;
      }
    }
  }
  for (const auto& row : constant) {
    for (const auto& v : row) {
      if (sgn(v) != 0) return false;
    }
  }
  return true;
}

std::variant<StructureConstants, NotClosed> generator_structure_constants(const VerifiedModel& vm) {
  const SymmetryModel& m = vm.model();
  const std::size_t r = m.generators.size();
  const std::size_t n = m.dimension();
  ExactSpan span(n);
  for (const auto& g : m.generators) span.add(g.expr);
  span.add(Polynomial::constant(n, Rational(1)));

  StructureConstants out;
  out.c.assign(r, std::vector<std::vector<Rational>>(r, std::vector<Rational>(r, Rational(0))));
  out.constant.assign(r, std::vector<Rational>(r, Rational(0)));
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = i + 1; j < r; ++j) {
      const Polynomial b = bracket(m.generators[i].expr, m.generators[j].expr, m.structure);
      auto sol = span.solve(b);
      if (!sol) return NotClosed{i, j, b};
      for (std::size_t k = 0; k < r; ++k) {
        out.c[i][j][k] = (*sol)[k];
        out.c[j][i][k] = -(*sol)[k];
      }
      out.constant[i][j] = (*sol)[r];
      out.constant[j][i] = -(*sol)[r];
    }
  }
  return out;
}

}  // namespace symred
