// Copyright 2026 The symred Authors
// SPDX-License-Identifier: Apache-2.0
#include "symred/io.hpp"

#include <algorithm>
#include <cctype>

#include "symred/errors.hpp"

namespace symred {

namespace {

Json polys(const std::vector<Polynomial>& ps, std::span<const std::string> names) {
  Json a = Json::array();
  for (const auto& p : ps) a.push_back(to_string(p, names));
  return a;
}

Json reals(std::span<const double> v) {
  Json a = Json::array();
  for (double x : v) a.push_back(x);
  return a;
}

Json signature(const StratumSignature& s) { return Json::array({s.rank_drho, s.rank_orbit_span}); }

}  // namespace

std::string rational_text(const Rational& r) {
  Rational c = r;
  c.canonicalize();
  return c.get_str();
}

Rational parse_rational_text(std::string_view text) {
  const std::string s(text);
  if (s.empty()) throw ParseError("empty number");
  std::size_t i = 0;
  bool negative = false;
  if (s[i] == '+' || s[i] == '-') negative = s[i++] == '-';
  if (s.find('/') != std::string::npos) {
    const std::size_t slash = s.find('/');
    const std::string num = s.substr(i, slash - i), den = s.substr(slash + 1);
    auto digits = [](const std::string& t) {
      return !t.empty() && std::all_of(t.begin(), t.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
    };
    if (!digits(num) || !digits(den)) throw ParseError("malformed rational '" + s + "'");
    mpz_class d(den);
    if (d == 0) throw ParseError("zero denominator in '" + s + "'");
    Rational r(mpz_class(num), d);
    r.canonicalize();
    return negative ? Rational(-r) : r;
  }
  // Decimal with optional exponent, converted exactly.
  mpz_class mantissa = 0;
  long scale = 0;
  bool any_digit = false, seen_point = false;
  for (; i < s.size(); ++i) {
    const char c = s[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      mantissa = mantissa * 10 + (c - '0');
      if (seen_point) --scale;
      any_digit = true;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!any_digit) throw ParseError("malformed number '" + s + "'");
  if (i < s.size()) {
    if (s[i] != 'e' && s[i] != 'E') throw ParseError("malformed number '" + s + "'");
    ++i;
    std::size_t used = 0;
    long e = 0;
    try {
      e = std::stol(s.substr(i), &used);
    } catch (const std::exception&) {
      throw ParseError("malformed exponent in '" + s + "'");
    }
    if (used != s.size() - i || e > 4096 || e < -4096) throw ParseError("malformed exponent in '" + s + "'");
    scale += e;
  }
  mpz_class p10;
  mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(scale < 0 ? -scale : scale));
  Rational r = scale < 0 ? Rational(mantissa, p10) : Rational(mantissa * p10);
  r.canonicalize();
  return negative ? Rational(-r) : r;
}

Json to_json(const Provenance& p) {
  Json j;
  j["tool"] = kToolName;
  j["version"] = kToolVersion;
  j["command"] = p.command;
  j["model_source"] = p.model_source;
  j["model"] = p.model_name;
  Json params = Json::object();
  for (const auto& [k, v] : p.params) params[k] = v;
  j["params"] = params;
  Json opts = Json::object();
  for (const auto& [k, v] : p.options) opts[k] = v;
  j["options"] = opts;
  return j;
}

Json to_json(const InducedStructure& w) {
  Json j;
  j["names"] = w.names;
  j["degree_bound"] = w.degree_bound;
  Json rows = Json::array();
  for (const auto& row : w.entries) rows.push_back(polys(row, w.names));
  j["entries"] = rows;
  j["identically_zero"] = w.is_zero();
  return j;
}

Json to_json(const SemiAlgebraicSet& s) {
  Json j;
  j["names"] = s.names;
  j["relations"] = polys(s.relations, s.names);
  j["inequalities"] = polys(s.inequalities, s.names);
  if (s.maximal_rank) j["maximal_rank"] = *s.maximal_rank;
  else j["maximal_rank"] = nullptr;
  return j;
}

Json to_json(const ReducedSpace& rs) {
  Json j;
  j["model"] = rs.model_name;
  Json mu = Json::array();
  for (const auto& m : rs.mu) mu.push_back(rational_text(m));
  j["mu"] = mu;
  j["base"] = to_json(rs.base);
  Json cs = Json::array();
  for (const auto& c : rs.constraints) {
    Json e;
    e["label"] = c.label;
    e["polynomial"] = to_string(c.polynomial, rs.base.names);
    e["level"] = rational_text(c.level);
    cs.push_back(e);
  }
  j["constraints"] = cs;
  j["set"] = to_json(rs.as_set());
  return j;
}

Json to_json(const RankReport& r) {
  Json j;
  j["point"] = reals(r.point);
  j["image"] = reals(r.image);
  j["rank_drho"] = r.rank_drho;
  j["rank_dJ"] = r.rank_dJ;
  j["rank_orbit_span"] = r.rank_orbit_span;
  j["rank_invariant_span"] = r.rank_invariant_span;
  j["rank_induced"] = r.rank_induced;
  j["span_cap_ker_drho"] = r.span_cap_ker_drho;
  j["identity_holds"] = r.identity_holds();
  j["signature"] = Json::array({r.rank_drho, r.rank_orbit_span});
  return j;
}

Json to_json(const PrincipalEstimate& e) {
  Json j;
  j["samples"] = e.samples;
  if (e.max_signature) j["max_signature"] = signature(*e.max_signature);
  else j["max_signature"] = nullptr;
  j["frequency"] = e.frequency;
  Json h = Json::array();
  for (const auto& [sig, count] : e.histogram) {
    h.push_back(Json{{"signature", signature(sig)}, {"count", count}});
  }
  j["histogram"] = h;
  if (e.samples == 0) j["note"] = "no samples";
  return j;
}

Json to_json(const EquilibriumResult& r) {
  Json j;
  j["point"] = reals(r.point);
  j["image"] = reals(r.image);
  j["multipliers"] = reals(r.multipliers);
  j["residual"] = r.residual;
  j["verdict"] = to_string(r.stability);
  j["spectrum"] = reals(r.projected_spectrum);
  j["subspace_dim"] = r.subspace_dim;
  j["telemetry"] = Json{{"iterations", r.iterations}, {"seed_index", r.seed_index}};
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

Json to_json(const SolveReport& r) {
  Json j;
  Json res = Json::array();
  for (const auto& e : r.results) res.push_back(to_json(e));
  j["results"] = res;
  j["converged_seeds"] = r.converged_seeds;
  j["everywhere_stationary"] = r.everywhere_stationary;
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

Json to_json(const Mesh& m) {
  Json j;
  Json vs = Json::array();
  for (const auto& v : m.vertices) vs.push_back(reals(v));
  j["vertices"] = vs;
  Json ts = Json::array();
  for (const auto& t : m.triangles) ts.push_back(Json::array({t[0], t[1], t[2]}));
  j["triangles"] = ts;
  j["residual_max"] = m.residual_max;
  j["dropped_vertices"] = m.dropped_vertices;
  j["sign_change_found"] = m.sign_change_found;
  if (!m.sign_change_found) j["note"] = "relation never changes sign in window";
  return j;
}

Json to_json(const InvarianceReport& r, const SymmetryModel& m) {
  Json a = Json::array();
  for (const auto& e : r.entries) {
    a.push_back(Json{{"invariant", m.invariants[e.invariant].name},
                     {"generator", m.generators[e.generator].name},
                     {"residual", to_string(e.residual, m.variables)},
                     {"pass", e.pass()}});
  }
  return Json{{"entries", a}, {"pass", r.all_pass()}};
}

Json to_json(const RelationReport& r, const SymmetryModel& m) {
  const auto names = m.invariant_names();
  Json a = Json::array();
  for (const auto& e : r.entries) {
    a.push_back(Json{{"relation", to_string(m.relations[e.relation], names)},
                     {"pullback", to_string(e.residual, m.variables)},
                     {"pass", e.pass()}});
  }
  return Json{{"entries", a}, {"pass", r.all_pass()}};
}

Json to_json(const InequalityReport& r) {
  Json a = Json::array();
  for (const auto& e : r.entries) {
    a.push_back(Json{{"inequality", e.inequality},
                     {"min_value", e.min_value},
                     {"violations", e.violations},
                     {"pass", e.pass()}});
  }
  return Json{{"samples", r.samples}, {"entries", a}, {"pass", r.all_pass()}};
}

std::string render_document(const Provenance& p, std::string_view kind, const Json& body) {
  Json doc;
  doc["provenance"] = to_json(p);
  doc[std::string(kind)] = body;
  return doc.dump(2) + "\n";
}

}  // namespace symred
