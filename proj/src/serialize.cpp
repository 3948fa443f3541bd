#include "clusterdouble/serialize.hpp"

#include "clusterdouble/errors.hpp"

namespace clusterdouble {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) throw ParseError(std::string("expected an object with key '") + key + "'");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(std::string("missing key '") + key + "'");
  return *it;
}

const Json& array(const Json& j, const char* what) {
  if (!j.is_array()) throw ParseError(std::string(what) + " must be an array");
  return j;
}

std::string string_of(const Json& j, const char* what) {
  if (!j.is_string()) throw ParseError(std::string(what) + " must be a string");
  return j.get<std::string>();
}

std::vector<std::string> strings_of(const Json& j, const char* what) {
  std::vector<std::string> out;
  for (const auto& x : array(j, what)) out.push_back(string_of(x, what));
  return out;
}

long long integer_of(const Json& j, const char* what) {
  if (!j.is_number_integer()) throw ParseError(std::string(what) + " must be an integer");
  return j.get<long long>();
}

std::size_t index_of(const Json& j, const char* what) {
  const long long v = integer_of(j, what);
  if (v < 0) throw ParseError(std::string(what) + " must be non-negative");
  return static_cast<std::size_t>(v);
}

Rational rational_of(const Json& j, const char* what) { return parse_rational(string_of(j, what)); }

Json rational_json(const Rational& r) { return format_rational(r); }

Json side_json(const SideRef& s) { return Json::array({s.triangle, s.side}); }

SideRef side_of(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw ParseError("side reference must be [triangle, side]");
  return SideRef{index_of(j[0], "triangle index"), static_cast<int>(integer_of(j[1], "side"))};
}

Json vec_json(const Vec2& v) { return Json::array({format_rational(v.x), format_rational(v.y)}); }

Vec2 vec_of(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw ParseError("lift must be a pair of rationals");
  return Vec2{rational_of(j[0], "lift entry"), rational_of(j[1], "lift entry")};
}

Json flag_json(const ProjectivePoint& p) { return p.is_infinity() ? Json("inf") : rational_json(*p.ratio); }

ProjectivePoint flag_from(const Json& j) {
  const std::string text = string_of(j, "flag");
  if (text == "inf") return ProjectivePoint::infinity();
  return ProjectivePoint::at(parse_rational(text));
}

Json edge_values_json(const EdgeValues& values) {
  Json out = Json::object();
  for (const auto& [name, v] : values) out[name] = format_rational(v);
  return out;
}

EdgeValues edge_values_of(const Json& j, const char* what) {
  if (!j.is_object()) throw ParseError(std::string(what) + " must be an object");
  EdgeValues out;
  for (auto it = j.begin(); it != j.end(); ++it) out[it.key()] = rational_of(it.value(), what);
  return out;
}

void put_triangulation(Json& out, const IdealTriangulation& t) {
  out["vertices"] = t.vertices();
  Json triangles = Json::array();
  for (const auto& tri : t.triangles()) triangles.push_back(Json::array({tri[0], tri[1], tri[2]}));
  out["triangles"] = std::move(triangles);
  Json gluings = Json::array();
  for (const auto& [a, b] : t.gluings()) gluings.push_back(Json::array({side_json(a), side_json(b)}));
  out["gluings"] = std::move(gluings);
  Json boundary = Json::array();
  for (const auto& s : t.boundary()) boundary.push_back(side_json(s));
  out["boundary"] = std::move(boundary);
}

}  // namespace

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

Json to_json(const Seed& seed) {
  Json out = Json::object();
  out["indices"] = seed.indices();
  out["frozen"] = seed.frozen_labels();
  out["eps"] = seed.eps().rows();
  return out;
}

Seed seed_from_json(const Json& j) {
  auto indices = strings_of(field(j, "indices"), "indices");
  auto frozen = strings_of(field(j, "frozen"), "frozen");
  std::vector<std::vector<int>> rows;
  for (const auto& row : array(field(j, "eps"), "eps")) {
    std::vector<int> r;
    for (const auto& x : array(row, "eps row")) r.push_back(static_cast<int>(integer_of(x, "eps entry")));
    rows.push_back(std::move(r));
  }
  if (rows.size() != indices.size()) throw ParseError("eps must have one row per index");
  for (const auto& r : rows) {
    if (r.size() != indices.size()) throw ParseError("eps must be square");
  }
  try {
    return Seed(std::move(indices), frozen, IntMatrix::from_rows(rows));
  } catch (const ArgumentError& e) {
    throw ParseError(e.what());
  }
}

Json to_json(const Polynomial& p) {
  Json out = Json::array();
  for (const auto& term : p.terms()) out.push_back(Json::array({term.exponents, format_rational(term.coeff)}));
  return out;
}

Polynomial polynomial_from_json(const Json& j, const VarSet& vars) {
  std::vector<Term> terms;
  for (const auto& t : array(j, "polynomial")) {
    if (!t.is_array() || t.size() != 2) throw ParseError("term must be [exponents, coefficient]");
    Exponents e;
    for (const auto& x : array(t[0], "exponent vector")) e.push_back(static_cast<std::uint32_t>(index_of(x, "exponent")));
    if (e.size() != vars.size()) throw ParseError("exponent vector length differs from the variable count");
    terms.push_back(Term{std::move(e), rational_of(t[1], "coefficient")});
  }
  return Polynomial::from_terms(vars, std::move(terms));
}

namespace {

Json fraction_json(const RationalFunction& f) {
  Json out = Json::object();
  out["num"] = to_json(f.numerator());
  out["den"] = to_json(f.denominator());
  return out;
}

RationalFunction fraction_of(const Json& j, const VarSet& vars) {
  const Polynomial num = polynomial_from_json(field(j, "num"), vars);
  const Polynomial den = polynomial_from_json(field(j, "den"), vars);
  if (den.is_zero()) throw ParseError("denominator is zero");
  return RationalFunction(num, den);
}

VarSet varset_of(const Json& j, const char* what) {
  try {
    return VarSet(strings_of(j, what));
  } catch (const ArgumentError& e) {
    throw ParseError(e.what());
  }
}

}  // namespace

Json to_json(const RationalFunction& f) {
  Json out = Json::object();
  out["vars"] = f.vars().names();
  out["num"] = to_json(f.numerator());
  out["den"] = to_json(f.denominator());
  return out;
}

RationalFunction ratfunc_from_json(const Json& j) { return fraction_of(j, varset_of(field(j, "vars"), "vars")); }

Json to_json(const ClusterMap& f) {
  Json out = Json::object();
  out["source"] = f.source_vars().names();
  out["target"] = f.target_vars().names();
  Json pullback = Json::array();
  for (std::size_t i = 0; i < f.target_vars().size(); ++i) {
    pullback.push_back(Json::array({f.target_vars().name(i), fraction_json(f.pullback(i))}));
  }
  out["pullback"] = std::move(pullback);
  return out;
}

ClusterMap cluster_map_from_json(const Json& j) {
  const VarSet source = varset_of(field(j, "source"), "source");
  const VarSet target = varset_of(field(j, "target"), "target");
  std::vector<std::optional<RationalFunction>> slots(target.size());
  for (const auto& entry : array(field(j, "pullback"), "pullback")) {
    if (!entry.is_array() || entry.size() != 2) throw ParseError("pullback entry must be [name, function]");
    const std::string name = string_of(entry[0], "target name");
    const auto pos = target.index_of(name);
    if (!pos) throw ParseError("pullback for unknown target '" + name + "'");
    if (slots[*pos]) throw ParseError("duplicate pullback for '" + name + "'");
    slots[*pos] = fraction_of(entry[1], source);
  }
  std::vector<RationalFunction> pullback;
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (!slots[i]) throw ParseError("missing pullback for '" + target.name(i) + "'");
    pullback.push_back(std::move(*slots[i]));
  }
  try {
    return ClusterMap(source, target, std::move(pullback));
  } catch (const ArgumentError& e) {
    throw ParseError(e.what());
  }
}

Json to_json(const IdealTriangulation& t) {
  Json out = Json::object();
  put_triangulation(out, t);
  return out;
}

IdealTriangulation triangulation_from_json(const Json& j) {
  auto vertices = strings_of(field(j, "vertices"), "vertices");
  std::vector<std::array<std::size_t, 3>> triangles;
  for (const auto& tri : array(field(j, "triangles"), "triangles")) {
    if (!tri.is_array() || tri.size() != 3) throw ParseError("triangle must list three corners");
    triangles.push_back({index_of(tri[0], "corner"), index_of(tri[1], "corner"), index_of(tri[2], "corner")});
  }
  std::vector<std::pair<SideRef, SideRef>> gluings;
  for (const auto& g : array(field(j, "gluings"), "gluings")) {
    if (!g.is_array() || g.size() != 2) throw ParseError("gluing must be a pair of sides");
    gluings.emplace_back(side_of(g[0]), side_of(g[1]));
  }
  std::vector<SideRef> boundary;
  for (const auto& s : array(field(j, "boundary"), "boundary")) boundary.push_back(side_of(s));
  return IdealTriangulation(std::move(vertices), std::move(triangles), std::move(gluings), std::move(boundary));
}

ConfigFile config_from_json(const Json& j) {
  ConfigFile out{triangulation_from_json(j), {}, {}, {}};
  const std::size_t n = out.triangulation.vertices().size();
  const Json& front = array(field(j, "front"), "front");
  if (front.size() != n) throw ParseError("front must have one entry per vertex");
  bool any_lift = false;
  bool all_lifts = true;
  std::vector<Vec2> lifts;
  for (const auto& entry : front) {
    const bool has_flag = entry.is_object() && entry.contains("flag");
    const bool has_lift = entry.is_object() && entry.contains("lift");
    if (!has_flag && !has_lift) throw ParseError("front entry needs a flag or a lift");
    std::optional<Vec2> lift;
    if (has_lift) {
      lift = vec_of(entry["lift"]);
      if (lift->is_zero()) throw ParseError("lift must be nonzero");
      lifts.push_back(*lift);
    }
    const ProjectivePoint flag = has_flag ? flag_from(entry["flag"]) : flag_of(*lift);
    if (lift && flag_of(*lift) != flag) throw ParseError("lift does not span its flag");
    out.flags.push_back(flag);
    any_lift = any_lift || has_lift;
    all_lifts = all_lifts && has_lift;
  }
  if (any_lift && !all_lifts) throw ParseError("either every front entry has a lift or none does");
  if (all_lifts) out.front_lifts = std::move(lifts);
  if (j.contains("back")) {
    const Json& back = array(j["back"], "back");
    if (back.size() != n) throw ParseError("back must have one entry per vertex");
    std::vector<Vec2> back_lifts;
    for (const auto& entry : back) {
      const Vec2 v = vec_of(field(entry, "lift"));
      if (v.is_zero()) throw ParseError("lift must be nonzero");
      back_lifts.push_back(v);
    }
    out.back_lifts = std::move(back_lifts);
  }
  return out;
}

Json to_json(const FramedPolygonConfig& c) {
  Json out = Json::object();
  put_triangulation(out, c.triangulation());
  Json front = Json::array();
  for (const auto& f : c.flags()) front.push_back(Json{{"flag", flag_json(f)}});
  out["front"] = std::move(front);
  return out;
}

Json to_json(const DoubleConfig& d) {
  Json out = Json::object();
  put_triangulation(out, d.triangulation());
  Json front = Json::array();
  for (const auto& v : d.front().lifts()) front.push_back(Json{{"flag", flag_json(flag_of(v))}, {"lift", vec_json(v)}});
  out["front"] = std::move(front);
  Json back = Json::array();
  for (const auto& v : d.back().lifts()) back.push_back(Json{{"lift", vec_json(v)}});
  out["back"] = std::move(back);
  return out;
}

Json to_json(const EdgeValues& values) { return edge_values_json(values); }

Json to_json(const DoubleCoordinates& c) {
  Json out = Json::object();
  out["B"] = edge_values_json(c.B);
  out["X"] = edge_values_json(c.X);
  return out;
}

DoubleCoordinates coordinates_from_json(const Json& j) {
  DoubleCoordinates out;
  out.X = edge_values_of(field(j, "X"), "X");
  if (j.contains("B")) out.B = edge_values_of(j["B"], "B");
  return out;
}

}  // namespace clusterdouble
