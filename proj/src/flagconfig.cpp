#include "clusterdouble/flagconfig.hpp"

#include <deque>
#include <set>

#include "clusterdouble/errors.hpp"

namespace clusterdouble {

Rational det(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }

ProjectivePoint flag_of(const Vec2& v) {
  if (v.is_zero()) throw ArgumentError("the zero vector spans no line");
  if (v.y == 0) return ProjectivePoint::infinity();
  return ProjectivePoint::at(Rational(v.x / v.y));
}

Vec2 standard_lift(const ProjectivePoint& p) {
  if (p.is_infinity()) return {Rational(1), Rational(0)};
  return {*p.ratio, Rational(1)};
}

Rational cross_ratio(const Vec2& p, const Vec2& q, const Vec2& r, const Vec2& s) {
  const Rational den = det(q, r) * det(s, p);
  if (den == 0) throw DomainError("cross ratio undefined: coincident flags");
  return det(p, q) * det(r, s) / den;
}

void require_polygon(const IdealTriangulation& t) {
  t.require_valid();
  if (!t.validate().self_folded.empty()) throw ArgumentError("polygon triangulation has a self-folded triangle");
  const std::size_t n = t.vertices().size();
  if (n < 3) throw ArgumentError("a polygon needs at least 3 vertices");
  if (t.triangles().size() != n - 2 || t.edges().size() != 2 * n - 3) {
    throw ArgumentError("triangulation is not a disk with all marked points on the boundary");
  }
  std::set<std::pair<std::size_t, std::size_t>> expected;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = (i + 1) % n;
    expected.insert({std::min(i, j), std::max(i, j)});
  }
  std::set<std::pair<std::size_t, std::size_t>> found;
  for (const auto& e : t.edges()) {
    if (e.boundary()) found.insert({e.start, e.end});
  }
  if (found != expected) throw ArgumentError("boundary does not visit the vertices in list order");
}

namespace {

void require_generic(const IdealTriangulation& t, const std::vector<Vec2>& lifts) {
  for (const auto& e : t.edges()) {
    if (det(lifts[e.start], lifts[e.end]) == 0) {
      throw DomainError("degenerate configuration: both ends of edge '" + e.name + "' carry the same flag");
    }
  }
}

std::vector<Vec2> standard_lifts(const std::vector<ProjectivePoint>& flags) {
  std::vector<Vec2> out;
  out.reserve(flags.size());
  for (const auto& f : flags) out.push_back(standard_lift(f));
  return out;
}

const Rational& lookup(const EdgeValues& values, const std::string& edge, const char* what) {
  auto it = values.find(edge);
  if (it == values.end()) throw ArgumentError(std::string("missing ") + what + " for edge '" + edge + "'");
  if (it->second == 0) throw ArgumentError(std::string(what) + " for edge '" + edge + "' is zero");
  return it->second;
}

// Visits triangles in breadth-first order from triangle 0. `solve` receives
// the side of the known triangle and the newly reached triangle.
template <typename Solve>
void propagate(const IdealTriangulation& t, Solve&& solve) {
  std::vector<bool> seen(t.triangles().size(), false);
  std::deque<std::size_t> queue{0};
  seen[0] = true;
  while (!queue.empty()) {
    const std::size_t tri = queue.front();
    queue.pop_front();
    for (int s = 0; s < 3; ++s) {
      const auto other = t.partner(SideRef{tri, s});
      if (!other || seen[other->triangle]) continue;
      seen[other->triangle] = true;
      solve(SideRef{tri, s}, *other);
      queue.push_back(other->triangle);
    }
  }
}

}  // namespace

FramedPolygonConfig::FramedPolygonConfig(IdealTriangulation t, std::vector<ProjectivePoint> flags)
    : t_(std::move(t)), flags_(std::move(flags)) {
  require_polygon(t_);
  if (flags_.size() != t_.vertices().size()) throw ArgumentError("need exactly one flag per vertex");
  require_generic(t_, standard_lifts(flags_));
}

namespace {

std::vector<ProjectivePoint> flags_of(const std::vector<Vec2>& lifts) {
  std::vector<ProjectivePoint> out;
  out.reserve(lifts.size());
  for (const auto& v : lifts) out.push_back(flag_of(v));
  return out;
}

}  // namespace

DecoratedPolygonConfig::DecoratedPolygonConfig(IdealTriangulation t, std::vector<Vec2> lifts)
    : framed_(std::move(t), flags_of(lifts)), lifts_(std::move(lifts)) {}

DoubleConfig::DoubleConfig(DecoratedPolygonConfig front, DecoratedPolygonConfig back)
    : front_(std::move(front)), back_(std::move(back)) {
  const IdealTriangulation expected = front_.triangulation().mirrored();
  const IdealTriangulation& actual = back_.triangulation();
  if (expected.vertices() != actual.vertices() || expected.triangles() != actual.triangles() ||
      expected.gluings() != actual.gluings() || expected.boundary() != actual.boundary()) {
    throw ArgumentError("back triangulation is not the mirror of the front triangulation");
  }
  for (const auto& e : front_.triangulation().edges()) {
    if (e.boundary() && a_coord(front_, e.name) != a_coord(back_, e.name)) {
      throw ArgumentError("frozen condition violated on boundary edge '" + e.name + "'");
    }
  }
}

Rational a_coord(const DecoratedPolygonConfig& c, std::string_view edge) {
  const auto& e = c.triangulation().edges()[c.triangulation().require_edge(edge)];
  const Rational value = det(c.lifts()[e.start], c.lifts()[e.end]);
  if (value == 0) throw DomainError("degenerate configuration: A vanishes on edge '" + e.name + "'");
  return value;
}

EdgeValues a_coords(const DecoratedPolygonConfig& c) {
  EdgeValues out;
  for (const auto& e : c.triangulation().edges()) out[e.name] = a_coord(c, e.name);
  return out;
}

Rational x_coord(const FramedPolygonConfig& c, std::string_view edge) {
  const auto corners = quadrilateral_around(c.triangulation(), edge).corners;
  const auto& f = c.flags();
  const Rational cr = cross_ratio(standard_lift(f[corners[0]]), standard_lift(f[corners[1]]),
                                  standard_lift(f[corners[2]]), standard_lift(f[corners[3]]));
  if (cr == 0) throw DomainError("degenerate configuration: cross ratio vanishes on edge '" + std::string(edge) + "'");
  return Rational(-1 / cr);
}

EdgeValues x_coords(const FramedPolygonConfig& c) {
  EdgeValues out;
  for (const auto& name : c.triangulation().internal_edges()) out[name] = x_coord(c, name);
  return out;
}

DoubleCoordinates double_coords(const DoubleConfig& d) {
  DoubleCoordinates out;
  out.X = x_coords(d.front().framed());
  for (const auto& name : d.triangulation().internal_edges()) {
    out.B[name] = a_coord(d.back(), name) / a_coord(d.front(), name);
  }
  return out;
}

FramedPolygonConfig reconstruct_framed(const IdealTriangulation& t, const EdgeValues& xs) {
  require_polygon(t);
  std::vector<std::optional<Vec2>> lifts(t.vertices().size());
  const auto& base = t.triangles()[0];
  lifts[base[0]] = Vec2{Rational(1), Rational(0)};
  lifts[base[1]] = Vec2{Rational(0), Rational(1)};
  lifts[base[2]] = Vec2{Rational(-1), Rational(1)};

  propagate(t, [&](SideRef known, SideRef fresh) {
    const std::string& name = t.edges()[t.edge_of(known)].name;
    const Rational cr = -1 / lookup(xs, name, "X");
    const auto [p, q, r, s] = quadrilateral_around(t, name).corners;
    const std::size_t target = t.triangles()[fresh.triangle][(fresh.side + 2) % 3];
    Vec2 solved;
    if (target == s) {
      const Vec2 &P = *lifts[p], &Q = *lifts[q], &R = *lifts[r];
      const Rational c = cr * det(Q, R);
      const Rational dd = det(P, Q);
      solved = {c * P.x + dd * R.x, c * P.y + dd * R.y};
    } else {
      const Vec2 &P = *lifts[r], &Q = *lifts[s], &R = *lifts[p];
      const Rational c = cr * det(Q, R);
      const Rational dd = det(P, Q);
      solved = {c * P.x + dd * R.x, c * P.y + dd * R.y};
    }
    if (solved.is_zero()) throw DomainError("degenerate X-coordinates at edge '" + name + "'");
    lifts[target] = solved;
  });

  std::vector<ProjectivePoint> flags;
  for (const auto& v : lifts) flags.push_back(flag_of(*v));
  return FramedPolygonConfig(t, std::move(flags));
}

DecoratedPolygonConfig reconstruct_decorated(const IdealTriangulation& t, const EdgeValues& as) {
  require_polygon(t);
  // det(a_from, a_to) prescribed along a triangle side
  auto side_det = [&](SideRef side) {
    const auto& e = t.edges()[t.edge_of(side)];
    const Rational& value = lookup(as, e.name, "A");
    return t.side_vertices(side).first == e.start ? value : Rational(-value);
  };
  std::vector<std::optional<Vec2>> lifts(t.vertices().size());
  // Third corner z of `tri` from the two known corners.
  auto solve_corner = [&](std::size_t tri, int k) {
    const auto& c = t.triangles()[tri];
    const Vec2& ax = *lifts[c[(k + 2) % 3]];
    const Vec2& ay = *lifts[c[(k + 1) % 3]];
    const Rational d1 = side_det(SideRef{tri, (k + 2) % 3});
    const Rational d2 = -side_det(SideRef{tri, k});
    const Rational dxy = det(ax, ay);
    lifts[c[k]] = Vec2{(d1 * ay.x - d2 * ax.x) / dxy, (d1 * ay.y - d2 * ax.y) / dxy};
  };

  const auto& base = t.triangles()[0];
  lifts[base[0]] = Vec2{Rational(1), Rational(0)};
  lifts[base[1]] = Vec2{Rational(0), side_det(SideRef{0, 0})};
  solve_corner(0, 2);
  propagate(t, [&](SideRef, SideRef fresh) { solve_corner(fresh.triangle, (fresh.side + 2) % 3); });

  std::vector<Vec2> out;
  for (const auto& v : lifts) out.push_back(*v);
  DecoratedPolygonConfig config(t, std::move(out));
  for (const auto& e : t.edges()) {
    if (a_coord(config, e.name) != as.at(e.name)) {
      throw DomainError("A-coordinates are inconsistent at edge '" + e.name + "'");
    }
  }
  return config;
}

DoubleConfig reconstruct_double(const IdealTriangulation& t, const EdgeValues& bs, const EdgeValues& xs) {
  const FramedPolygonConfig framed = reconstruct_framed(t, xs);
  DecoratedPolygonConfig front(t, standard_lifts(framed.flags()));
  EdgeValues back_as;
  for (const auto& e : t.edges()) {
    const Rational a = a_coord(front, e.name);
    back_as[e.name] = e.boundary() ? a : Rational(a * lookup(bs, e.name, "B"));
  }
  DecoratedPolygonConfig back = reconstruct_decorated(t.mirrored(), back_as);
  return DoubleConfig(std::move(front), std::move(back));
}

DoubleConfig h_rescale(const DoubleConfig& d, const std::map<std::string, Rational>& lambdas) {
  std::vector<Vec2> front = d.front().lifts();
  std::vector<Vec2> back = d.back().lifts();
  for (const auto& [label, lambda] : lambdas) {
    const auto v = d.triangulation().vertex_index(label);
    if (!v) throw ArgumentError("unknown vertex '" + label + "'");
    if (lambda == 0) throw ArgumentError("rescaling factor for '" + label + "' is zero");
    front[*v] = {front[*v].x * lambda, front[*v].y * lambda};
    back[*v] = {back[*v].x * lambda, back[*v].y * lambda};
  }
  return DoubleConfig(DecoratedPolygonConfig(d.front().triangulation(), std::move(front)),
                      DecoratedPolygonConfig(d.back().triangulation(), std::move(back)));
}

EdgeValues mirror_x_coords(const DoubleConfig& d) {
  EdgeValues out = x_coords(d.back().framed());
  for (auto& [name, value] : out) value = 1 / value;
  return out;
}

DoubleConfig retriangulate(const DoubleConfig& d, const IdealTriangulation& t) {
  if (t.vertices() != d.triangulation().vertices()) throw ArgumentError("triangulations have different vertices");
  return DoubleConfig(DecoratedPolygonConfig(t, d.front().lifts()),
                      DecoratedPolygonConfig(t.mirrored(), d.back().lifts()));
}

}  // namespace clusterdouble
