// Copyright 2026 The symred Authors
// SPDX-License-Identifier: Apache-2.0
#include "symred/catalog.hpp"

#include <numeric>
#include <sstream>

#include "symred/errors.hpp"

namespace symred {

namespace {

Rational parse_rational(const std::string& key, const std::string& name, const std::string& text) {
  try {
    const auto p = poly_parse(text, std::vector<std::string>{});
    if (!p.is_constant()) throw ParseError("not a constant");
    return p.coefficient(Exponent{});
  } catch (const ParseError&) {
    throw PreconditionError(key + ": parameter '" + name + "' must be a rational number, got '" +
                            text + "'");
  }
}

long parse_integer(const std::string& key, const std::string& name, const std::string& text) {
  const Rational r = parse_rational(key, name, text);
  if (r.get_den() != 1) throw PreconditionError(key + ": parameter '" + name + "' must be an integer");
  if (!r.get_num().fits_slong_p()) throw PreconditionError(key + ": parameter '" + name + "' is too large");
  return r.get_num().get_si();
}

std::string param(const CatalogParams& p, const std::string& name) { return p.at(name); }

std::vector<NamedPolynomial> named(const std::vector<std::pair<std::string, std::string>>& defs,
                                   const std::vector<std::string>& vars) {
  std::vector<NamedPolynomial> out;
  for (const auto& [name, text] : defs) out.push_back({name, poly_parse(text, vars)});
  return out;
}

std::vector<Polynomial> over(const std::vector<std::string>& texts,
                             const std::vector<std::string>& names) {
  std::vector<Polynomial> out;
  for (const auto& t : texts) out.push_back(poly_parse(t, names));
  return out;
}

// ---- SO(3) family ------------------------------------------------------------------

SymmetryModel so3_r3() {
  SymmetryModel m;
  m.name = "so3_r3";
  m.variables = {"x1", "x2", "x3"};
  m.structure = PoissonStructure::matrix(so3_block(3, 0));
  m.generators = named({{"J1", "x1"}, {"J2", "x2"}, {"J3", "x3"}}, m.variables);
  m.invariants = named({{"r", "x1^2 + x2^2 + x3^2"}}, m.variables);
  const auto names = m.invariant_names();
  m.inequalities = over({"r"}, names);
  m.casimirs = over({"r"}, names);
  m.degree_bound = 2;
  return m;
}

SymmetryModel so3_pair(bool cotangent) {
  SymmetryModel m;
  m.name = cotangent ? "so3_cotangent_r6" : "so3_diag_r6";
  m.variables = {"x1", "x2", "x3", "y1", "y2", "y3"};
  if (cotangent) {
    m.structure = PoissonStructure::canonical(3);
    m.generators = named({{"J1", "x2*y3 - x3*y2"}, {"J2", "x3*y1 - x1*y3"}, {"J3", "x1*y2 - x2*y1"}},
                         m.variables);
  } else {
    const PoissonStructure blocks[] = {PoissonStructure::matrix(so3_block(3, 0)),
                                       PoissonStructure::matrix(so3_block(3, 0))};
    m.structure = direct_sum(blocks);
    m.generators = named({{"J1", "x1 + y1"}, {"J2", "x2 + y2"}, {"J3", "x3 + y3"}}, m.variables);
  }
  m.invariants = named({{"a", "x1^2 + x2^2 + x3^2"},
                        {"b", "y1^2 + y2^2 + y3^2"},
                        {"c", "x1*y1 + x2*y2 + x3*y3"},
                        {"d", "(x2*y3 - x3*y2)^2 + (x3*y1 - x1*y3)^2 + (x1*y2 - x2*y1)^2"}},
                       m.variables);
  const auto names = m.invariant_names();
  m.relations = over({"d - a*b + c^2"}, names);
  m.inequalities = over({"a", "b", "d"}, names);
  m.casimirs = cotangent ? over({"d", "a*b - c^2"}, names) : over({"a", "b"}, names);
  m.degree_bound = 2;
  return m;
}

SymmetryModel so3_diag_r9() {
  SymmetryModel m;
  m.name = "so3_diag_r9";
  m.variables = {"x1", "x2", "x3", "y1", "y2", "y3", "z1", "z2", "z3"};
  const PoissonStructure blocks[] = {PoissonStructure::matrix(so3_block(3, 0)),
                                     PoissonStructure::matrix(so3_block(3, 0)),
                                     PoissonStructure::matrix(so3_block(3, 0))};
  m.structure = direct_sum(blocks);
  m.generators = named({{"J1", "x1 + y1 + z1"}, {"J2", "x2 + y2 + z2"}, {"J3", "x3 + y3 + z3"}},
                       m.variables);
  // <y x x, z> expanded.
  const std::string triple =
      "(y2*x3 - y3*x2)*z1 + (y3*x1 - y1*x3)*z2 + (y1*x2 - y2*x1)*z3";
  m.invariants = named({{"a", "x1^2 + x2^2 + x3^2"},
                        {"b", "y1^2 + y2^2 + y3^2"},
                        {"c", "z1^2 + z2^2 + z3^2"},
                        {"u", "x1*y1 + x2*y2 + x3*y3"},
                        {"v", "x1*z1 + x2*z2 + x3*z3"},
                        {"w", "y1*z1 + y2*z2 + y3*z3"},
                        {"t", triple}},
                       m.variables);
  const auto names = m.invariant_names();
  m.relations = over({"t^2 - (a*b*c + 2*u*w*v - v^2*b - w^2*a - u^2*c)"}, names);
  m.inequalities = over({"a", "b", "c", "a*b - u^2", "a*c - v^2", "b*c - w^2"}, names);
  m.casimirs = over({"a", "b", "c"}, names);
  m.degree_bound = 2;
  return m;
}

struct Scale {
  Rational cx, cy, cz;
};

Scale scale_params(const CatalogParams& p) {
  const std::string key = "so3_diag_r9_scaled";
  Scale s{parse_rational(key, "cx", param(p, "cx")), parse_rational(key, "cy", param(p, "cy")),
          parse_rational(key, "cz", param(p, "cz"))};
  if (sgn(s.cx) <= 0 || sgn(s.cy) <= 0 || sgn(s.cz) <= 0) {
    throw PreconditionError(key + ": cx, cy, cz must be positive");
  }
  return s;
}

std::string rat(const Rational& r) {
  return "(" + r.get_str() + ")";
}

SymmetryModel so3_diag_r9_scaled(const Scale& s) {
  SymmetryModel m;
  m.name = "so3_diag_r9_scaled";
  m.variables = {"v1", "v2", "v3", "v4"};
  const auto& vars = m.variables;
  const std::string ix = rat(1 / s.cx), iy = rat(1 / s.cy), iz = rat(1 / s.cz);
  // Entry (3,4) carries (v2*v3 - v1); see the model notes in README.
  const std::string w12 = ix + "*v4";
  const std::string w13 = "-" + iy + "*v4";
  const std::string w14 = ix + "*(v1*v3 - v2) - " + iy + "*(v1*v2 - v3)";
  const std::string w23 = iz + "*v4";
  const std::string w24 = ix + "*(v1 - v2*v3) + " + iz + "*(v1*v2 - v3)";
  const std::string w34 = iy + "*(v2*v3 - v1) - " + iz + "*(v1*v3 - v2)";
  std::vector<std::vector<Polynomial>> w(4, std::vector<Polynomial>(4, Polynomial(4)));
  auto set = [&](int i, int j, const std::string& text) {
    w[i][j] = poly_parse(text, vars);
    w[j][i] = -w[i][j];
  };
  set(0, 1, w12);
  set(0, 2, w13);
  set(0, 3, w14);
  set(1, 2, w23);
  set(1, 3, w24);
  set(2, 3, w34);
  m.structure = PoissonStructure::matrix(std::move(w));
  const std::string plane = rat(s.cx * s.cy) + "*v1 + " + rat(s.cx * s.cz) + "*v2 + " +
                            rat(s.cy * s.cz) + "*v3";
  m.generators = named({{"P", plane}}, vars);
  m.invariants = named({{"v1", "v1"}, {"v2", "v2"}, {"v3", "v3"}, {"v4", "v4"}}, vars);
  const auto names = m.invariant_names();
  m.casimirs = over({plane, "v4^2 - (1 + 2*v1*v2*v3 - v1^2 - v2^2 - v3^2)"}, names);
  m.degree_bound = 2;
  return m;
}

// ---- k:l resonance ---------------------------------------------------------------

struct Complex {
  Polynomial re, im;
};

Complex mul(const Complex& a, const Complex& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

Complex cpow(const Complex& z, long n) {
  Complex out{Polynomial::constant(z.re.arity(), Rational(1)), Polynomial(z.re.arity())};
  for (long i = 0; i < n; ++i) out = mul(out, z);
  return out;
}

struct Resonance {
  long k, l;
};

Resonance resonance_params(const CatalogParams& p) {
  const std::string key = "kl_resonance";
  Resonance r{parse_integer(key, "k", param(p, "k")), parse_integer(key, "l", param(p, "l"))};
  if (r.k < 1) throw PreconditionError(key + ": k must be >= 1");
  if (r.l == 0) throw PreconditionError(key + ": l must be nonzero");
  if (std::labs(r.k) == std::labs(r.l)) throw PreconditionError(key + ": |k| must differ from |l|");
  if (r.k + std::labs(r.l) > 40) throw PreconditionError(key + ": k + |l| must be <= 40");
  return r;
}

SymmetryModel kl_resonance(const Resonance& r) {
  SymmetryModel m;
  m.name = "kl_resonance";
  m.variables = {"x1", "x2", "y1", "y2"};
  m.structure = PoissonStructure::canonical(2);
  const long al = std::labs(r.l);
  const long g = std::gcd(r.k, al);
  const long a = al / g, b = r.k / g;
  const Rational k(r.k), l(r.l);
  const auto& vars = m.variables;
  const Polynomial x1 = Polynomial::variable(4, 0), x2 = Polynomial::variable(4, 1);
  const Polynomial y1 = Polynomial::variable(4, 2), y2 = Polynomial::variable(4, 3);
  const Polynomial n1 = x1 * x1 + y1 * y1, n2 = x2 * x2 + y2 * y2;
  const Rational half(1, 2);
  const Polynomial i1 = half * k * n1 + half * l * n2;
  const Polynomial i2 = half * k * n1 - half * l * n2;
  const Complex z1{x1, y1};
  const Complex z2 = r.l > 0 ? Complex{x2, -y2} : Complex{x2, y2};
  const Complex rr = mul(cpow(z1, a), cpow(z2, b));
  m.generators = {{"I1", i1}};
  m.invariants = {{"I1", i1}, {"I2", i2}, {"R1", rr.re}, {"R2", rr.im}};
  const auto names = m.invariant_names();
  const Polynomial I1 = Polynomial::variable(4, 0), I2 = Polynomial::variable(4, 1);
  const Polynomial R1 = Polynomial::variable(4, 2), R2 = Polynomial::variable(4, 3);
  const Polynomial rhs = ((I1 + I2) * (1 / k)).pow(a) * ((I1 - I2) * (1 / l)).pow(b);
  m.relations = {R1 * R1 + R2 * R2 - rhs};
  m.inequalities = {I1 + I2, r.l > 0 ? I1 - I2 : I2 - I1};
  m.casimirs = {I1};
  // {R1, R2} has phase degree 2(a+b)-2, i.e. invariant degree a+b-1.
  m.degree_bound = static_cast<int>(std::max<long>(3, a + b - 1));
  (void)vars;
  return m;
}

// ---- perturbed oscillator on R^8 ---------------------------------------------------

SymmetryModel oscillator_r8() {
  SymmetryModel m;
  m.name = "oscillator_r8";
  m.variables = {"q1", "q2", "q3", "q4", "Q1", "Q2", "Q3", "Q4"};
  m.structure = PoissonStructure::canonical(4);
  const auto& v = m.variables;
  auto P = [&](const char* text) { return poly_parse(text, v); };
  const Polynomial h2 = P("1/2*(Q1^2 + Q2^2 + Q3^2 + Q4^2) + 1/2*(q1^2 + q2^2 + q3^2 + q4^2)");
  const Polynomial xi = P("q1*Q2 - Q1*q2 + q3*Q4 - Q3*q4");
  const Polynomial l1 = P("q3*Q4 - Q3*q4 - q1*Q2 + Q1*q2");
  const Polynomial kk = P("1/2*(-(q1^2 + Q1^2) - (q2^2 + Q2^2) + (q3^2 + Q3^2) + (q4^2 + Q4^2))");
  const Polynomial k2 = P("(Q2*Q3 + q2*q3) - (Q1*Q4 + q1*q4)");
  // The second group is q2*q4: with q1*q4 the invariance checks fail.
  const Polynomial k3 = P("-(Q1*Q3 + q1*q3) - (Q2*Q4 + q2*q4)");
  const Polynomial l2 = P("(q1*Q3 - Q1*q3) + (q2*Q4 - Q2*q4)");
  const Polynomial l3 = P("(q2*Q3 - Q2*q3) - (q1*Q4 - Q1*q4)");
  const Rational half(1, 2);
  const Polynomial n = half * (k2 * k2 + k3 * k3) - half * (l2 * l2 + l3 * l3);
  const Polynomial s = k2 * l3 - k3 * l2;
  m.generators = {{"H2", h2}, {"Xi", xi}, {"L1", l1}};
  m.invariants = {{"H2", h2}, {"Xi", xi}, {"L1", l1}, {"N", n}, {"K", kk}, {"S", s}};
  const auto names = m.invariant_names();
  m.relations = over({"(H2^2 + Xi^2 - L1^2 - K^2)^2 - 4*(H2*Xi - L1*K)^2 - 4*N^2 - 4*S^2"}, names);
  m.inequalities = over({"H2", "H2 + K", "H2 - K"}, names);
  m.casimirs = over({"H2", "Xi", "L1"}, names);
  m.degree_bound = 3;
  return m;
}

const std::vector<ModelDescriptor> kDescriptors = {
    {"so3_r3", {}, "R^3 with the so(3)* structure, rho = |x|^2"},
    {"so3_cotangent_r6", {}, "T*R^3 with the cotangent-lifted SO(3) action, rho = (|x|^2,|y|^2,<x,y>,|x*y|^2)"},
    {"so3_diag_r6", {}, "so(3)* x so(3)* with the diagonal SO(3) action, J = x + y"},
    {"so3_diag_r9", {}, "three copies of so(3)* with the diagonal SO(3) action, J = x + y + z"},
    {"so3_diag_r9_scaled",
     {{"cx", "1", "rational > 0"}, {"cy", "1", "rational > 0"}, {"cz", "1", "rational > 0"}},
     "invariant coordinates (v1..v4) of three vectors of lengths cx, cy, cz"},
    {"kl_resonance",
     {{"k", "1", "integer >= 1"}, {"l", "2", "integer != 0, |l| != k"}},
     "k:l resonant oscillator on R^4, J = I1"},
    {"oscillator_r8", {}, "perturbed harmonic oscillator on R^8 with T^3 symmetry (H2, Xi, L1)"},
};

const ModelDescriptor& descriptor(const std::string& key) {
  for (const auto& d : kDescriptors) {
    if (d.key == key) return d;
  }
  throw PreconditionError("unknown catalog model '" + key + "'");
}

}  // namespace

const std::vector<ModelDescriptor>& catalog_descriptors() { return kDescriptors; }

CatalogParams normalized_params(const std::string& key, const CatalogParams& params) {
  const ModelDescriptor& d = descriptor(key);
  CatalogParams out;
  for (const auto& [name, value] : params) {
    bool known = false;
    for (const auto& p : d.params) known = known || p.name == name;
    if (!known) throw PreconditionError(key + ": unknown parameter '" + name + "'");
  }
  for (const auto& p : d.params) {
    auto it = params.find(p.name);
    const std::string text = it == params.end() ? p.default_value : it->second;
    out[p.name] = parse_rational(key, p.name, text).get_str();
  }
  return out;
}

SymmetryModel catalog_model(const std::string& key, const CatalogParams& params) {
  const CatalogParams p = normalized_params(key, params);
  if (key == "so3_r3") return so3_r3();
  if (key == "so3_cotangent_r6") return so3_pair(true);
  if (key == "so3_diag_r6") return so3_pair(false);
  if (key == "so3_diag_r9") return so3_diag_r9();
  if (key == "so3_diag_r9_scaled") return so3_diag_r9_scaled(scale_params(p));
  if (key == "kl_resonance") return kl_resonance(resonance_params(p));
  if (key == "oscillator_r8") return oscillator_r8();
  throw PreconditionError("unknown catalog model '" + key + "'");
}

std::optional<SemiAlgebraicSet> catalog_orbit_space(const std::string& key,
                                                    const CatalogParams& params) {
  const CatalogParams p = normalized_params(key, params);
  if (key != "so3_diag_r9_scaled") return std::nullopt;
  SemiAlgebraicSet s;
  s.names = {"v1", "v2", "v3", "v4"};
  s.relations = over({"v4^2 - (1 + 2*v1*v2*v3 - v1^2 - v2^2 - v3^2)"}, s.names);
  s.inequalities = over({"1 - v1^2", "1 - v2^2", "1 - v3^2"}, s.names);
  s.maximal_rank = 1;
  return s;
}

Polynomial oscillator_hamiltonian(const Rational& beta) {
  const std::vector<std::string> names = {"H2", "Xi", "L1", "N", "K", "S"};
  const Rational b2 = beta * beta;
  std::ostringstream os;
  os << "H2 + " << rat(Rational(3, 4) * (3 * b2 - 2)) << "*K^2*H2 + " << rat(1 - b2)
     << "*K*Xi*L1 + " << rat(Rational(1, 2) * (4 - b2)) << "*N*H2 + "
     << rat(Rational(3, 2) + b2 / 4) << "*H2^3 - " << rat((b2 / 2 + 1) / 2)
     << "*H2*(L1^2 + Xi^2)";
  return poly_parse(os.str(), names);
}

CatalogParams parse_catalog_params(const std::string& text) {
  CatalogParams out;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find_first_of(",&", start);
    if (end == std::string::npos) end = text.size();
    const std::string item = text.substr(start, end - start);
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw PreconditionError("bad catalog parameter '" + item + "'");
    out[item.substr(0, eq)] = item.substr(eq + 1);
    start = end + 1;
  }
  return out;
}

}  // namespace symred
