#pragma once

// JSON views of the analysis results, and the point syntax used on the
// command line.

#include "reinhardt/automorphisms.hpp"
#include "reinhardt/classification.hpp"
#include "reinhardt/contact.hpp"
#include "reinhardt/levi.hpp"
#include "reinhardt/log_geometry.hpp"

#include <json.hpp>

#include <cctype>
#include <string>
#include <vector>

namespace reinhardt {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

inline Json complex_json(const Complex& c) { return Json::array({c.real(), c.imag()}); }

inline Json point_json(const ComplexPoint& z) {
  Json a = Json::array();
  for (const auto& c : z) a.push_back(complex_json(c));
  return a;
}

inline Json vector_json(const std::vector<Complex>& v) {
  Json a = Json::array();
  for (const auto& c : v) a.push_back(complex_json(c));
  return a;
}

inline Json matrix_json(const ComplexMatrix& m) {
  Json a = Json::array();
  for (const auto& row : m) a.push_back(vector_json(row));
  return a;
}

inline Json blocks_json(const BlockStructure& b) {
  Json a = Json::array();
  for (const auto& block : b.blocks()) {
    Json inner = Json::array();
    for (std::size_t i : block) inner.push_back(i + 1);
    a.push_back(inner);
  }
  return a;
}

inline Json spec_json(const DomainSpec& spec) {
  Json j{{"name", spec.name()}, {"n", spec.dim()}, {"Q", spec.q().str()}};
  if (spec.declared_blocks()) j["blocks"] = blocks_json(*spec.declared_blocks());
  return j;
}

inline std::string tuple_key(const Exponent& l) {
  std::string s = "(";
  for (std::size_t k = 0; k < l.size(); ++k) s += (k ? "," : "") + std::to_string(l[k]);
  return s + ")";
}

inline Json boundedness_json(const BoundednessCertificate& c) {
  Json j{{"kind", to_string(c.kind)}, {"pure_degrees", c.pure_degrees}, {"detail", c.detail}};
  if (!c.witness.empty()) {
    j["witness"] = c.witness;
    j["witness_is_ray"] = c.witness_is_ray;
  }
  return j;
}

inline Json regularity_json(const RegularityReport& r) {
  Json failures = Json::array();
  for (const auto& p : r.failures) failures.push_back(point_json(p));
  return {{"sampled_points", r.sampled_points},
          {"threshold", r.threshold},
          {"min_gradient_norm", r.min_gradient_norm},
          {"failure_count", r.failure_count},
          {"failures", failures},
          {"statement", r.statement}};
}

inline Json witness_json(const DilationWitness& w) {
  Json target = Json::array(), zs = Json::array(), us = Json::array();
  for (std::size_t t : w.target) target.push_back(t + 1);
  for (const auto& s : w.z_scalars()) zs.push_back(s.str());
  for (const auto& s : w.moduli_scalars) us.push_back(s.str());
  return {{"target", target}, {"z_scalars", zs}, {"moduli_scalars", us}, {"identity", w.is_identity()}};
}

inline Json verdict_json(const DomainSpec& spec, const ClassificationVerdict& v) {
  Json j{{"kind", to_string(v.kind)}, {"diagnostics", v.diagnostics}};
  if (!v.reason.empty()) j["reason"] = v.reason;
  if (!v.model) return j;
  const ModelForm& mf = *v.model;
  j["blocks"] = blocks_json(mf.blocks);
  Json fc = Json::array(), r = Json::array(), cross = Json::object(), canon_cross = Json::object();
  for (const auto& c : mf.first_coefficients) fc.push_back(to_string(c));
  for (const auto& x : mf.r) r.push_back(to_string(x));
  for (const auto& [l, c] : mf.cross_terms) cross[tuple_key(l)] = to_string(c);
  for (const auto& [l, c] : mf.canonical_cross_terms) canon_cross[tuple_key(l)] = c.str();
  j["first_coefficients"] = fc;
  j["m"] = mf.m;
  j["r"] = r;
  j["cross_terms"] = cross;
  j["constant_shift"] = to_string(mf.constant_shift);
  j["witness"] = witness_json(mf.witness);
  const CanonicalForm cf = canonical_form(spec, v);
  j["canonical"] = {{"Q", cf.q_text},
                    {"blocks", blocks_json(cf.blocks)},
                    {"m", cf.m},
                    {"cross_terms", canon_cross},
                    {"rational", cf.spec.has_value()}};
  Json slices = Json::object();
  for (std::size_t b = 2; b <= mf.block_count(); ++b) slices[std::to_string(b)] = verify_slice_form(spec, mf, b);
  j["slices"] = slices;
  const AccumulationSet acc = accumulation_set(mf);
  j["accumulation_set"] = {{"description", acc.description}, {"dimension", acc.dimension}};
  return j;
}

inline Json monomial_map_json(const MonomialMap& m) {
  Json scalars = Json::array(), zs = Json::array();
  for (const auto& s : m.scalars()) {
    scalars.push_back(to_string(s));
    zs.push_back(Radical(s).pow(Rational(1, 2)).str());
  }
  return {{"exponents", m.exponents()}, {"moduli_scalars", scalars}, {"z_scalars", zs}, {"identity", m.is_identity()}};
}

inline Json incidence_json(const HyperplaneIncidence& inc) {
  Json meets = Json::array(), avoids = Json::array(), dist = Json::object();
  for (std::size_t i : inc.meets) meets.push_back(i + 1);
  for (std::size_t i : inc.avoids) avoids.push_back(i + 1);
  for (const auto& [i, d] : inc.distances) dist[std::to_string(i + 1)] = d;
  return {{"meets", meets}, {"avoids", avoids}, {"distances", dist}};
}

inline Json symmetries_json(const SymmetryEnumeration& e) {
  Json maps = Json::array();
  for (const auto& m : e.maps) maps.push_back(monomial_map_json(m));
  return {{"count", e.maps.size()},
          {"maps", maps},
          {"incidence", incidence_json(e.incidence)},
          {"entry_bound", e.entry_bound},
          {"candidates_tested", e.candidates_tested},
          {"irrational_skipped", e.irrational_skipped},
          {"closed", e.closed},
          {"warnings", e.warnings}};
}

inline Json levi_json(const LeviReport& r) {
  Json tb = Json::array(), cb = Json::array();
  for (const auto& v : r.tangent_basis) tb.push_back(vector_json(v));
  for (const auto& v : r.chart_basis) cb.push_back(vector_json(v));
  return {{"point", point_json(r.point)},
          {"gradient", vector_json(r.gradient)},
          {"tangent_basis", tb},
          {"matrix", matrix_json(r.matrix)},
          {"orthonormal_eigenvalues", r.orthonormal_eigenvalues},
          {"chart_pivot", r.pivot + 1},
          {"chart_basis", cb},
          {"chart_matrix", matrix_json(r.chart_matrix)},
          {"eigenvalues", r.eigenvalues},
          {"verdict", to_string(r.verdict)}};
}

inline Json type_probe_json(const TypeProbe& p) {
  Json j{{"point", point_json(p.point)},
         {"order", p.best.str()},
         {"infinite", p.best.infinite},
         {"exact", p.best.exact},
         {"certificate", p.best.certificate},
         {"degree_bound", p.degree_bound},
         {"coefficient_grid", p.coefficient_grid},
         {"curves_tested", p.curves_tested}};
  if (p.best_curve) {
    Json coeffs = Json::array();
    for (const auto& comp : p.best_curve->coefficients) {
      Json c = Json::array();
      for (const auto& x : comp) c.push_back(Json::array({to_string(x.re), to_string(x.im)}));
      coeffs.push_back(c);
    }
    j["curve"] = {{"text", p.best_curve->str()}, {"coefficients", coeffs}};
  } else if (p.best_numeric_curve) {
    Json coeffs = Json::array();
    for (const auto& comp : p.best_numeric_curve->coefficients) coeffs.push_back(vector_json(comp));
    j["curve"] = {{"coefficients", coeffs}};
  }
  return j;
}

inline Json orbit_json(const OrbitRecord& rec) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < rec.points.size(); ++i)
    rows.push_back({{"i", i + 1},
                    {"a", rec.parameters[i]},
                    {"point", point_json(rec.points[i])},
                    {"boundary_distance", rec.boundary_distance[i]}});
  Json j{{"rows", rows}};
  j["limit"] = rec.limit ? point_json(*rec.limit) : Json();
  return j;
}

// ---------------------------------------------------------------------------
// Points: comma-separated components; each component is a real part and/or an
// imaginary part, e.g. "1/2", "-0.25", "2^(-1/4)", "1/2+3/4i", "-i", "2^(1/2)i".

struct ParsedComponent {
  Radical re;
  Radical im;
};

namespace detail {

inline Rational parse_decimal_or_fraction(std::string_view s) {
  if (s.find('/') != std::string_view::npos) return parse_rational(s);
  const auto dot = s.find('.');
  if (dot == std::string_view::npos) return parse_rational(s);
  std::string digits(s.substr(0, dot));
  std::string frac(s.substr(dot + 1));
  if (frac.empty() || !std::all_of(frac.begin(), frac.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    throw Error("malformed number '" + std::string(s) + "'");
  if (digits.empty() || digits == "-" || digits == "+") digits += "0";
  const bool neg = !digits.empty() && digits[0] == '-';
  Rational whole = parse_rational(digits);
  Rational part = parse_rational(frac) / pow(Rational(10), static_cast<long long>(frac.size()));
  return neg ? whole - part : whole + part;
}

// [sign] number [^ ( exponent ) | ^ exponent] with an optional trailing 'i' handled by the caller.
inline Radical parse_real_term(std::string_view s) {
  if (s.empty()) throw Error("empty number");
  const auto caret = s.find('^');
  if (caret == std::string_view::npos) return Radical(parse_decimal_or_fraction(s));
  std::string_view base = s.substr(0, caret);
  std::string_view ex = s.substr(caret + 1);
  bool neg = false;
  if (!base.empty() && (base[0] == '-' || base[0] == '+')) {
    neg = base[0] == '-';
    base.remove_prefix(1);
  }
  if (ex.size() >= 2 && ex.front() == '(' && ex.back() == ')') ex = ex.substr(1, ex.size() - 2);
  const Rational b = parse_decimal_or_fraction(base);
  if (b <= 0) throw Error("radical base must be positive");
  Radical r = Radical(b).pow(parse_decimal_or_fraction(ex));
  return neg ? -r : r;
}

}  // namespace detail

inline ParsedComponent parse_component(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw Error("empty point component");
  // Split at top-level signs that do not follow '^' or '('.
  std::vector<std::string> terms;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (s[k] == '(') ++depth;
    if (s[k] == ')') --depth;
    if ((s[k] == '+' || s[k] == '-') && k > start && depth == 0 && s[k - 1] != '^' && s[k - 1] != '(') {
      terms.push_back(s.substr(start, k - start));
      start = k;
    }
  }
  terms.push_back(s.substr(start));
  ParsedComponent out;
  bool have_re = false, have_im = false;
  for (std::string t : terms) {
    const bool imag = !t.empty() && t.back() == 'i';
    if (imag) {
      t.pop_back();
      if (!t.empty() && t.back() == '*') t.pop_back();
      if (t.empty() || t == "+") t = "1";
      if (t == "-") t = "-1";
    }
    const Radical v = detail::parse_real_term(t);
    if (imag ? have_im : have_re) throw Error("point component '" + s + "' has two terms of the same kind");
    (imag ? out.im : out.re) = v;
    (imag ? have_im : have_re) = true;
  }
  return out;
}

struct ParsedPoint {
  std::vector<ParsedComponent> components;

  ComplexPoint numeric() const {
    ComplexPoint z(components.size());
    for (std::size_t j = 0; j < components.size(); ++j)
      z[j] = Complex(components[j].re.to_double(), components[j].im.to_double());
    return z;
  }
  bool is_exact() const {
    for (const auto& c : components)
      if (!c.re.is_rational() || !c.im.is_rational()) return false;
    return true;
  }
  ExactPoint exact() const {
    ExactPoint p;
    for (const auto& c : components) p.emplace_back(c.re.to_rational(), c.im.to_rational());
    return p;
  }
};

inline ParsedPoint parse_point(std::string_view text) {
  ParsedPoint p;
  std::size_t start = 0;
  int depth = 0;
  for (std::size_t k = 0; k <= text.size(); ++k) {
    if (k < text.size() && text[k] == '(') ++depth;
    if (k < text.size() && text[k] == ')') --depth;
    if (k == text.size() || (text[k] == ',' && depth == 0)) {
      p.components.push_back(parse_component(text.substr(start, k - start)));
      start = k + 1;
    }
  }
  return p;
}

}  // namespace reinhardt
