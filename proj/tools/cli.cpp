// Copyright 2026 The symred Authors
// SPDX-License-Identifier: Apache-2.0
#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "symred/catalog.hpp"
#include "symred/errors.hpp"
#include "symred/io.hpp"
#include "symred/linalg.hpp"
#include "symred/model.hpp"
#include "symred/orbitmap.hpp"
#include "symred/parallel.hpp"
#include "symred/releq.hpp"
#include "symred/semialg.hpp"
#include "symred/strata.hpp"

namespace symred::cli {

namespace {

class InputError : public Error {
 public:
  using Error::Error;
};

class VerificationFailure : public Error {
 public:
  using Error::Error;
};

// ---- option parsing --------------------------------------------------------------

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

double parse_double(const std::string& name, const std::string& text) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size() || !std::isfinite(v)) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw InputError(name + ": '" + text + "' is not a number");
  }
}

double parse_positive(const std::string& name, const std::string& text) {
  const double v = parse_double(name, text);
  if (!(v > 0)) throw InputError(name + " must be positive");
  return v;
}

long parse_count(const std::string& name, const std::string& text) {
  try {
    std::size_t used = 0;
    const long v = std::stol(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    if (v <= 0) throw InputError(name + " must be positive");
    return v;
  } catch (const InputError&) {
    throw;
  } catch (const std::exception&) {
    throw InputError(name + ": '" + text + "' is not an integer");
  }
}

std::uint64_t parse_seed(const std::string& text) {
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(text, &used);
    if (used != text.size() || text.front() == '-') throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw InputError("--seed: '" + text + "' is not a nonnegative integer");
  }
}

std::vector<double> parse_reals(const std::string& name, const std::string& text) {
  std::vector<double> out;
  for (const auto& t : split(text, ',')) out.push_back(parse_double(name, t));
  return out;
}

std::vector<Rational> parse_levels(const std::string& text) {
  std::vector<Rational> out;
  for (const auto& t : split(text, ',')) {
    try {
      out.push_back(parse_rational_text(t));
    } catch (const ParseError& e) {
      throw InputError(std::string("--mu: ") + e.what());
    }
  }
  return out;
}

std::array<double, 2> parse_range(const std::string& name, const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() != 2) throw InputError(name + ": expected a:b, got '" + text + "'");
  const double a = parse_double(name, parts[0]), b = parse_double(name, parts[1]);
  if (!(a < b)) throw InputError(name + ": range '" + text + "' is not well ordered");
  return {a, b};
}

// ---- model sources ------------------------------------------------------------------

struct Source {
  std::string text;
  SymmetryModel model;
  CatalogParams params;
  std::optional<SemiAlgebraicSet> orbit;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_output(const std::optional<std::string>& path, const std::string& content,
                  std::ostream& out) {
  if (!path) {
    out << content;
    return;
  }
  std::ofstream f(*path, std::ios::binary | std::ios::trunc);
  if (!f) throw InputError("cannot write '" + *path + "'");
  f << content;
  if (!f) throw InputError("failed writing '" + *path + "'");
}

Source resolve(const std::string& text) {
  Source s;
  s.text = text;
  const std::string prefix = "catalog:";
  if (text.rfind(prefix, 0) == 0) {
    const std::string rest = text.substr(prefix.size());
    const auto q = rest.find('?');
    const std::string key = rest.substr(0, q);
    const CatalogParams raw = q == std::string::npos ? CatalogParams{} : parse_catalog_params(rest.substr(q + 1));
    s.params = normalized_params(key, raw);
    s.model = catalog_model(key, s.params);
    s.orbit = catalog_orbit_space(key, s.params);
    return s;
  }
  s.model = load_model(read_file(text));
  return s;
}

VerifiedModel verified(const Source& s) {
  auto c = certify(s.model);
  if (!c.model) {
    std::string what = "model '" + s.model.name + "' failed verification";
    for (const auto& e : c.invariance.entries) {
      if (!e.pass()) {
        what += ": {" + s.model.invariants[e.invariant].name + ", " + s.model.generators[e.generator].name + "} != 0";
        break;
      }
    }
    for (const auto& e : c.relations.entries) {
      if (!e.pass()) {
        what += ": relation " + std::to_string(e.relation + 1) + " does not pull back to zero";
        break;
      }
    }
    throw VerificationFailure(what);
  }
  return *c.model;
}

int resolve_bound(const std::optional<std::string>& text, const SymmetryModel& m) {
  if (!text) return default_degree_bound(m);
  return static_cast<int>(parse_count("--degree-bound", *text));
}

Provenance provenance(const std::string& command, const Source& s) {
  Provenance p;
  p.command = command;
  p.model_source = s.text;
  p.model_name = s.model.name;
  p.params = s.params;
  return p;
}

std::string join(const std::vector<double>& v) {
  std::ostringstream os;
  os << std::setprecision(10);
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
  return os.str();
}

// ---- subcommands -------------------------------------------------------------------

int cmd_list(std::ostream& out) {
  for (const auto& d : catalog_descriptors()) {
    out << d.key << "\n  " << d.summary << "\n";
    for (const auto& p : d.params) {
      out << "  param " << p.name << " (default " << p.default_value << "): " << p.constraint << "\n";
    }
  }
  return kSuccess;
}

struct VerifyArgs {
  std::string model;
  std::optional<std::string> degree_bound, out;
  std::string samples = "1000", seed = "0";
};

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
  const Source s = resolve(a.model);
  const SymmetryModel& m = s.model;
  const std::size_t samples = static_cast<std::size_t>(parse_count("--samples", a.samples));
  const std::uint64_t seed = parse_seed(a.seed);
  const auto names = m.invariant_names();
  auto mark = [](bool ok) { return ok ? "PASS" : "FAIL"; };

  out << "model " << m.name << ": " << m.dimension() << " variables, " << m.generator_count()
      << " generators, " << m.invariant_count() << " invariants\n";
  Certification c = certify(m);
  bool ok = c.model.has_value();
  Json body;
  out << "invariance    " << mark(c.invariance.all_pass()) << "  " << c.invariance.entries.size()
      << " brackets {rho_i, J_j}\n";
  for (const auto& e : c.invariance.entries) {
    if (!e.pass()) {
      out << "  {" << m.invariants[e.invariant].name << ", " << m.generators[e.generator].name
          << "} = " << to_string(e.residual, m.variables) << "\n";
    }
  }
  out << "relations     " << mark(c.relations.all_pass()) << "  " << c.relations.entries.size()
      << " pullbacks\n";
  for (const auto& e : c.relations.entries) {
    if (!e.pass()) {
      out << "  " << to_string(m.relations[e.relation], names) << " pulls back to "
          << to_string(e.residual, m.variables) << "\n";
    }
  }
  body["invariance"] = to_json(c.invariance, m);
  body["relations"] = to_json(c.relations, m);

  const InequalityReport ineq = check_inequalities(m, samples, seed);
  ok = ok && ineq.all_pass();
  out << "inequalities  " << mark(ineq.all_pass()) << "  " << ineq.entries.size() << " sampled at "
      << ineq.samples << " points\n";
  body["inequalities"] = to_json(ineq);

  if (c.model) {
    const VerifiedModel& vm = *c.model;
    const int bound = resolve_bound(a.degree_bound, m);
    try {
      const InducedStructure w = induced_structure(vm, bound);
      Json cas = Json::array();
      bool cas_ok = true;
      for (const auto& cand : m.casimirs) {
        const CasimirResult r = casimir_check(vm, w, cand);
        cas_ok = cas_ok && r.pass;
        Json e{{"casimir", to_string(cand, names)}, {"pass", r.pass}};
        if (!r.pass) {
          e["invariant"] = names[r.invariant];
          e["residual"] = to_string(r.residual, m.variables);
        }
        cas.push_back(e);
      }
      ok = ok && cas_ok;
      out << "casimirs      " << mark(cas_ok) << "  " << m.casimirs.size() << " declared\n";
      for (const auto& e : cas) {
        if (!e["pass"].get<bool>()) {
          out << "  " << e["casimir"].get<std::string>() << " fails against "
              << e["invariant"].get<std::string>() << "\n";
        }
      }
      body["casimirs"] = cas;
      out << "induced structure (degree bound " << bound << ")";
      if (w.is_zero()) {
        out << ": identically zero\n";
      } else {
        out << "\n";
        for (std::size_t i = 0; i < w.entries.size(); ++i) {
          for (std::size_t j = i + 1; j < w.entries.size(); ++j) {
            if (w.entries[i][j].is_zero()) continue;
            out << "  {" << names[i] << ", " << names[j] << "} = " << to_string(w.entries[i][j], names)
                << "\n";
          }
        }
      }
      body["induced_structure"] = to_json(w);
    } catch (const RewriteBoundExceeded& e) {
      ok = false;
      out << "induced structure FAIL  " << e.what() << "\n";
      body["induced_structure"] = Json{{"error", e.what()}};
    }
  }
  out << "verdict " << mark(ok) << "\n";
  body["pass"] = ok;
  if (a.out) {
    Provenance p = provenance("verify", s);
    p.options = {{"degree_bound", a.degree_bound.value_or("default")},
                 {"samples", a.samples},
                 {"seed", a.seed}};
    write_output(a.out, render_document(p, "verification", body), out);
  }
  return ok ? kSuccess : kVerificationFailure;
}

struct ReduceArgs {
  std::string model, mu;
  std::optional<std::string> degree_bound, out;
};

int cmd_reduce(const ReduceArgs& a, std::ostream& out) {
  const Source s = resolve(a.model);
  const VerifiedModel vm = verified(s);
  const int bound = resolve_bound(a.degree_bound, s.model);
  const std::vector<Rational> mu = parse_levels(a.mu);
  const ReducedSpace rs = reduced_space(vm, mu, bound, s.orbit);
  const InducedStructure w = induced_structure(vm, bound);
  Json body;
  body["reduced_space"] = to_json(rs);
  body["induced_structure"] = to_json(w);
  Provenance p = provenance("reduce", s);
  p.options = {{"mu", a.mu}, {"degree_bound", std::to_string(bound)}};
  const std::string doc = render_document(p, "reduction", body);
  if (a.out) {
    const SemiAlgebraicSet set = rs.as_set();
    out << "reduced space of " << s.model.name << " in (";
    for (std::size_t i = 0; i < set.names.size(); ++i) out << (i ? ", " : "") << set.names[i];
    out << ")\n";
    for (const auto& r : set.relations) out << "  " << to_string(r, set.names) << " = 0\n";
    for (const auto& q : set.inequalities) out << "  " << to_string(q, set.names) << " >= 0\n";
  }
  write_output(a.out, doc, out);
  return kSuccess;
}

struct StrataArgs {
  std::string model;
  std::optional<std::string> point, random, out;
  std::string seed = "0", tol = "1e-9";
};

int cmd_strata(const StrataArgs& a, std::ostream& out) {
  if (a.point.has_value() == a.random.has_value()) {
    throw InputError("strata needs exactly one of --point or --random");
  }
  const Source s = resolve(a.model);
  const VerifiedModel vm = verified(s);
  const double tol = parse_positive("--tol", a.tol);
  Provenance p = provenance("strata", s);
  Json body;
  if (a.point) {
    const std::vector<double> x = parse_reals("--point", *a.point);
    if (x.size() != s.model.dimension()) {
      throw InputError("--point has " + std::to_string(x.size()) + " coordinates, model has " +
                       std::to_string(s.model.dimension()));
    }
    const RankReport r = rank_report(vm, x, tol);
    out << std::left << std::setw(22) << "point" << join(r.point) << "\n"
        << std::setw(22) << "image" << join(r.image) << "\n"
        << std::setw(22) << "rank_drho" << r.rank_drho << "\n"
        << std::setw(22) << "rank_dJ" << r.rank_dJ << "\n"
        << std::setw(22) << "rank_orbit_span" << r.rank_orbit_span << "\n"
        << std::setw(22) << "rank_invariant_span" << r.rank_invariant_span << "\n"
        << std::setw(22) << "rank_induced" << r.rank_induced << "\n"
        << std::setw(22) << "span_cap_ker_drho" << r.span_cap_ker_drho << "\n"
        << std::setw(22) << "signature" << "(" << r.rank_drho << ", " << r.rank_orbit_span << ")\n"
        << std::setw(22) << "induced_rank_defect" << r.rank_drho - r.rank_induced << "\n";
    body["rank_report"] = to_json(r);
    if (s.model.structure.is_canonical()) {
      const KernelSpanResult k = kernel_span_check(vm, x, tol);
      const char* verdict = k.verdict == SpanVerdict::Pass             ? "PASS"
                            : k.verdict == SpanVerdict::DegeneratePass ? "PASS (degenerate)"
                                                                       : "FAIL";
      out << std::setw(22) << "kernel_span" << verdict << "\n";
      body["kernel_span"] = Json{{"verdict", verdict}, {"max_leak", k.max_leak},
                                 {"rank_invariant_span", k.rank_invariant_span},
                                 {"rank_dJ", k.rank_dJ}, {"dimension", k.dimension}};
    }
    p.options = {{"point", *a.point}, {"tol", a.tol}};
  } else {
    const auto n = static_cast<std::size_t>(parse_count("--random", *a.random));
    const std::uint64_t seed = parse_seed(a.seed);
    const PrincipalEstimate e = principal_stratum_estimate(vm, n, seed, tol);
    out << "samples    " << e.samples << "\n";
    if (e.max_signature) {
      out << "max        (" << e.max_signature->rank_drho << ", " << e.max_signature->rank_orbit_span
          << ")\nfrequency  " << e.frequency << "\n";
    }
    for (const auto& [sig, count] : e.histogram) {
      out << "  (" << sig.rank_drho << ", " << sig.rank_orbit_span << ")  " << count << "\n";
    }
    body["principal_stratum"] = to_json(e);
    p.options = {{"random", *a.random}, {"seed", a.seed}, {"tol", a.tol}};
  }
  if (a.out) write_output(a.out, render_document(p, "strata", body), out);
  return kSuccess;
}

std::size_t coordinate(const std::vector<std::string>& names, const std::string& t) {
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == t) return i;
  }
  try {
    std::size_t used = 0;
    const long v = std::stol(t, &used);
    if (used == t.size() && v >= 1 && static_cast<std::size_t>(v) <= names.size()) {
      return static_cast<std::size_t>(v - 1);
    }
  } catch (const std::exception&) {
  }
  throw InputError("--chart: '" + t + "' is neither an invariant name nor an index 1.." +
                   std::to_string(names.size()));
}

struct SampleArgs {
  std::string model, chart, window;
  std::optional<std::string> mu, solved_range, degree_bound, out;
  std::vector<std::string> fix;
  std::string grid = "32", scan = "512", tol = "1e-8";
};

int cmd_sample(const SampleArgs& a, std::ostream& out) {
  const Source s = resolve(a.model);
  const VerifiedModel vm = verified(s);
  const int bound = resolve_bound(a.degree_bound, s.model);
  SemiAlgebraicSet set = s.orbit ? *s.orbit : orbit_space(s.model);
  if (a.mu) set = reduced_space(vm, parse_levels(*a.mu), bound, set).as_set();
  for (const auto& f : a.fix) {
    const auto eq = f.find('=');
    if (eq == std::string::npos) throw InputError("--fix expects name=value, got '" + f + "'");
    const std::size_t i = coordinate(set.names, f.substr(0, eq));
    Rational value;
    try {
      value = parse_rational_text(f.substr(eq + 1));
    } catch (const ParseError& e) {
      throw InputError(std::string("--fix: ") + e.what());
    }
    set.relations.push_back(Polynomial::variable(set.ambient_dim(), i) -
                            Polynomial::constant(set.ambient_dim(), value));
    if (set.maximal_rank) ++*set.maximal_rank;
  }

  const auto arrow = a.chart.find("->");
  if (arrow == std::string::npos) throw InputError("--chart expects i,j->k");
  const auto free = split(a.chart.substr(0, arrow), ',');
  if (free.size() != 2) throw InputError("--chart expects two free coordinates");
  const Chart chart{coordinate(set.names, free[0]), coordinate(set.names, free[1]),
                    coordinate(set.names, a.chart.substr(arrow + 2))};
  if (chart.u == chart.w || chart.u == chart.solved || chart.w == chart.solved) {
    throw InputError("--chart coordinates must be distinct");
  }
  const auto ranges = split(a.window, ',');
  if (ranges.size() != 2) throw InputError("--window expects a:b,c:d");
  MeshOptions opt;
  opt.u_range = parse_range("--window", ranges[0]);
  opt.w_range = parse_range("--window", ranges[1]);
  if (a.solved_range) opt.solved_range = parse_range("--solved-range", *a.solved_range);
  opt.grid = static_cast<int>(parse_count("--grid", a.grid));
  opt.scan = static_cast<int>(parse_count("--scan", a.scan));
  opt.tol = parse_positive("--tol", a.tol);

  const Mesh mesh = sample_surface(set, chart, opt);

  // Without a cached value the maximal rank is the largest relation-Jacobian
  // rank over the sampled vertices.
  if (!set.maximal_rank && !mesh.vertices.empty()) {
    int best = 0;
    for (const auto& v : mesh.vertices) {
      best = std::max(best, linalg::numerical_rank(set.relation_jacobian(v), 1e-9));
    }
    set.maximal_rank = best;
  }
  Json singular = Json::array();
  std::size_t singular_count = 0;
  if (set.maximal_rank) {
    ClassifyOptions co;
    co.membership_tol = opt.tol;
    for (std::size_t i = 0; i < mesh.vertices.size(); ++i) {
      if (classify_point(set, mesh.vertices[i], co).kind == PointKind::Singular) {
        singular.push_back(i);
        ++singular_count;
      }
    }
  }
  Json body = to_json(mesh);
  body["chart"] = Json::array({set.names[chart.u], set.names[chart.w], set.names[chart.solved]});
  body["set"] = to_json(set);
  body["singular_vertices"] = singular;

  Provenance p = provenance("sample", s);
  std::string fixes;
  for (std::size_t i = 0; i < a.fix.size(); ++i) fixes += (i ? "," : "") + a.fix[i];
  p.options = {{"mu", a.mu.value_or("")}, {"fix", fixes},          {"chart", a.chart},
               {"window", a.window},      {"solved_range", a.solved_range.value_or("")},
               {"grid", a.grid},          {"scan", a.scan},          {"tol", a.tol},
               {"degree_bound", std::to_string(bound)}};
  out << "vertices " << mesh.vertices.size() << "  triangles " << mesh.triangles.size()
      << "  residual_max " << mesh.residual_max << "  singular " << singular_count << "\n";
  if (!mesh.sign_change_found) out << "warning: relation never changes sign in window\n";
  const std::string doc = render_document(p, "mesh", body);
  if (a.out) write_output(a.out, doc, out);
  return kSuccess;
}

struct ReleqArgs {
  std::string model, ham, mu;
  bool reduced = false;
  std::optional<std::string> degree_bound, out;
  std::string seeds = "64", tol = "1e-10", seed = "0", max_iterations = "100";
};

int cmd_releq(const ReleqArgs& a, std::ostream& out) {
  const Source s = resolve(a.model);
  const VerifiedModel vm = verified(s);
  const SymmetryModel& m = s.model;
  const int bound = resolve_bound(a.degree_bound, m);
  SolveOptions opt;
  opt.seeds = static_cast<std::size_t>(parse_count("--seeds", a.seeds));
  opt.tol = parse_positive("--tol", a.tol);
  opt.seed = parse_seed(a.seed);
  opt.max_iterations = static_cast<int>(parse_count("--max-iterations", a.max_iterations));
  const std::string ham_text =
      std::filesystem::is_regular_file(a.ham) ? read_file(a.ham) : a.ham;

  // The Hamiltonian may be written over the phase variables or over the
  // invariant names; it is converted to whichever frame the mode needs.
  std::optional<Polynomial> full, invariant;
  try {
    full = parse_hamiltonian(m, ham_text, Frame::FullSpace).expression;
  } catch (const ParseError&) {
  }
  if (!full) {
    try {
      invariant = parse_hamiltonian(m, ham_text, Frame::InvariantSpace).expression;
    } catch (const ParseError& e) {
      throw InputError(std::string("--ham matches neither the phase variables nor the invariants: ") +
                       e.what());
    }
  }

  SolveReport report;
  const std::vector<Rational> mu = parse_levels(a.mu);
  if (a.reduced) {
    if (!invariant) {
      invariant = reduced_hamiltonian(vm, *full, bound);
      if (!invariant) throw InputError("--ham is not a polynomial in the invariants at this degree bound");
    }
    const ReducedSpace rs = reduced_space(vm, mu, bound, s.orbit);
    const ReducedField field = reduced_field(vm, *invariant, bound);
    report = find_reduced_stationary(vm, field, rs, opt);
  } else {
    if (!m.structure.is_canonical()) {
      throw InputError("full-space mode needs a canonical structure; use --reduced for model '" +
                       m.name + "'");
    }
    if (!full) full = pullback(m, *invariant);
    std::vector<double> mud;
    for (const auto& q : mu) mud.push_back(q.get_d());
    report = find_relative_equilibria(vm, *full, mud, opt);
  }

  out << (a.reduced ? "reduced" : "full-space") << " equilibria: " << report.results.size()
      << " (" << report.converged_seeds << " of " << opt.seeds << " seeds converged)\n";
  if (report.everywhere_stationary) out << "reduced field vanishes identically\n";
  for (const auto& r : report.results) {
    out << "  image (" << join(r.image) << ")  residual " << r.residual << "  "
        << to_string(r.stability) << "\n";
  }
  Json body = to_json(report);
  body["mode"] = a.reduced ? "reduced" : "full";
  Provenance p = provenance("releq", s);
  p.options = {{"ham", a.ham},
               {"reduced", a.reduced ? "true" : "false"},
               {"mu", a.mu},
               {"seeds", a.seeds},
               {"tol", a.tol},
               {"seed", a.seed},
               {"max_iterations", a.max_iterations},
               {"degree_bound", std::to_string(bound)}};
  if (a.out) write_output(a.out, render_document(p, "equilibria", body), out);
  if (report.results.empty()) {
    out << "NonConvergence\n";
    return kNonConvergence;
  }
  return kSuccess;
}

int cmd_export(const std::string& model, const std::optional<std::string>& path, std::ostream& out) {
  const Source s = resolve(model);
  write_output(path, export_model(s.model), out);
  return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  configure_threads_from_env();
  CLI::App app{"Reduction by invariants for symmetric Hamiltonian systems", "symred"};
  app.require_subcommand(1);

  auto* list = app.add_subcommand("list", "Catalog keys and parameter schemas");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Invariance, relation, inequality and Casimir checks");
  verify->add_option("model", va.model, "Model file or catalog:key?params")->required();
  verify->add_option("--degree-bound", va.degree_bound, "Rewrite degree bound");
  verify->add_option("--samples", va.samples, "Inequality samples");
  verify->add_option("--seed", va.seed, "Sampling seed");
  verify->add_option("--out", va.out, "Write the verification document here");

  ReduceArgs ra;
  auto* reduce = app.add_subcommand("reduce", "Reduced-space and induced-structure documents");
  reduce->add_option("model", ra.model)->required();
  reduce->add_option("--mu", ra.mu, "Momentum levels (torus) or momentum vector (SO(3))")->required();
  reduce->add_option("--degree-bound", ra.degree_bound);
  reduce->add_option("--out", ra.out);

  StrataArgs sa;
  auto* strata = app.add_subcommand("strata", "Rank reports and principal-stratum estimates");
  strata->add_option("model", sa.model)->required();
  strata->add_option("--point", sa.point, "Phase point c1,c2,...");
  strata->add_option("--random", sa.random, "Number of standard-normal samples");
  strata->add_option("--seed", sa.seed);
  strata->add_option("--tol", sa.tol, "Relative singular-value cutoff");
  strata->add_option("--out", sa.out);

  SampleArgs sm;
  auto* sample = app.add_subcommand("sample", "Surface mesh of a 2-D orbit or reduced space");
  sample->add_option("model", sm.model)->required();
  sample->add_option("--mu", sm.mu, "Momentum levels; omitted samples the orbit space");
  sample->add_option("--fix", sm.fix, "Extra relation name=value (repeatable)");
  sample->add_option("--chart", sm.chart, "Free and solved coordinates i,j->k")->required();
  sample->add_option("--window", sm.window, "Ranges a:b,c:d of the free coordinates")->required();
  sample->add_option("--solved-range", sm.solved_range, "Scan range a:b of the solved coordinate");
  sample->add_option("--grid", sm.grid);
  sample->add_option("--scan", sm.scan, "Scan samples along the solved axis");
  sample->add_option("--tol", sm.tol, "Vertex membership tolerance");
  sample->add_option("--degree-bound", sm.degree_bound);
  sample->add_option("--out", sm.out);

  ReleqArgs qa;
  auto* releq = app.add_subcommand("releq", "Relative equilibria and formal stability");
  releq->add_option("model", qa.model)->required();
  releq->add_option("--ham", qa.ham, "Hamiltonian polynomial or a file holding it")->required();
  releq->add_flag("--reduced", qa.reduced, "Solve on the reduced space");
  releq->add_option("--mu", qa.mu)->required();
  releq->add_option("--seeds", qa.seeds);
  releq->add_option("--tol", qa.tol);
  releq->add_option("--seed", qa.seed);
  releq->add_option("--max-iterations", qa.max_iterations);
  releq->add_option("--degree-bound", qa.degree_bound);
  releq->add_option("--out", qa.out);

  std::string ex_model;
  std::optional<std::string> ex_out;
  auto* exp = app.add_subcommand("export", "Write a model document");
  exp->add_option("model", ex_model)->required();
  exp->add_option("--out", ex_out);

  std::vector<std::string> argv_store{"symred"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kInputError;
  }

  try {
    if (list->parsed()) return cmd_list(out);
    if (verify->parsed()) return cmd_verify(va, out);
    if (reduce->parsed()) return cmd_reduce(ra, out);
    if (strata->parsed()) return cmd_strata(sa, out);
    if (sample->parsed()) return cmd_sample(sm, out);
    if (releq->parsed()) return cmd_releq(qa, out);
    if (exp->parsed()) return cmd_export(ex_model, ex_out, out);
  } catch (const VerificationFailure& e) {
    err << "error: " << e.what() << "\n";
    return kVerificationFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

}  // namespace symred::cli
