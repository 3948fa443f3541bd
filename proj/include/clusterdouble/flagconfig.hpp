#pragma once

// Configurations of flags on triangulated polygons, for SL_2 / PGL_2.
//
// A flag is a point of the projective line: a ratio t (the line through
// (t, 1)) or infinity (the line through (1, 0)). A decorated flag is a nonzero
// vector spanning that line.
//
// Conventions:
//   det(a, b)   = a0*b1 - a1*b0
//   cr(p,q,r,s) = det(p,q) det(r,s) / (det(q,r) det(s,p))
//   A_e         = det(a_u, a_v), u before v in the vertex list
//   X_e         = -1 / cr(p,q,r,s), (p,q,r,s) = quadrilateral_around(T, e)
// With these choices X_e = prod_j A_j^eps_ej for the seed m_triangulation_seed(T, 2).
//
// Polygon triangulations must list their vertices in boundary cyclic order.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "clusterdouble/rational.hpp"
#include "clusterdouble/surface.hpp"

namespace clusterdouble {

struct Vec2 {
  Rational x;
  Rational y;

  bool is_zero() const { return x == 0 && y == 0; }
  friend bool operator==(const Vec2&, const Vec2&) = default;
};

Rational det(const Vec2& a, const Vec2& b);

struct ProjectivePoint {
  std::optional<Rational> ratio;  // nullopt is the point at infinity

  static ProjectivePoint infinity() { return {}; }
  static ProjectivePoint at(const Rational& t) { return {t}; }
  bool is_infinity() const { return !ratio.has_value(); }
  friend bool operator==(const ProjectivePoint&, const ProjectivePoint&) = default;
};

// Line spanned by v; throws ArgumentError for the zero vector.
ProjectivePoint flag_of(const Vec2& v);
// (t, 1) for a finite point, (1, 0) at infinity.
Vec2 standard_lift(const ProjectivePoint& p);

// Raw cross ratio of four lines, via any spanning vectors. Throws
// DomainError when a denominator determinant vanishes.
Rational cross_ratio(const Vec2& p, const Vec2& q, const Vec2& r, const Vec2& s);

// Throws ArgumentError unless t is a valid triangulation of a disk whose
// marked points all lie on the boundary, visited in vertex-list order.
void require_polygon(const IdealTriangulation& t);

class FramedPolygonConfig {
 public:
  // Throws ArgumentError if t is not a polygon triangulation or the flag
  // count is wrong, DomainError if the endpoints of some edge share a flag.
  FramedPolygonConfig(IdealTriangulation t, std::vector<ProjectivePoint> flags);

  const IdealTriangulation& triangulation() const { return t_; }
  const std::vector<ProjectivePoint>& flags() const { return flags_; }

 private:
  IdealTriangulation t_;
  std::vector<ProjectivePoint> flags_;
};

class DecoratedPolygonConfig {
 public:
  // Lifts must be nonzero; the flags are the lines they span.
  DecoratedPolygonConfig(IdealTriangulation t, std::vector<Vec2> lifts);

  const IdealTriangulation& triangulation() const { return framed_.triangulation(); }
  const FramedPolygonConfig& framed() const { return framed_; }
  const std::vector<Vec2>& lifts() const { return lifts_; }

 private:
  FramedPolygonConfig framed_;
  std::vector<Vec2> lifts_;
};

// Front configuration on T, back configuration on T.mirrored(), lifts paired
// vertex by vertex. Throws ArgumentError if the triangulations do not match
// or some boundary edge has A(front) != A(back).
class DoubleConfig {
 public:
  DoubleConfig(DecoratedPolygonConfig front, DecoratedPolygonConfig back);

  const DecoratedPolygonConfig& front() const { return front_; }
  const DecoratedPolygonConfig& back() const { return back_; }
  const IdealTriangulation& triangulation() const { return front_.triangulation(); }

 private:
  DecoratedPolygonConfig front_;
  DecoratedPolygonConfig back_;
};

using EdgeValues = std::map<std::string, Rational>;

struct DoubleCoordinates {
  EdgeValues B;
  EdgeValues X;

  friend bool operator==(const DoubleCoordinates&, const DoubleCoordinates&) = default;
};

Rational a_coord(const DecoratedPolygonConfig& c, std::string_view edge);
EdgeValues a_coords(const DecoratedPolygonConfig& c);  // every edge
Rational x_coord(const FramedPolygonConfig& c, std::string_view edge);
EdgeValues x_coords(const FramedPolygonConfig& c);  // internal edges

DoubleCoordinates double_coords(const DoubleConfig& d);

// Inverse of x_coords. Triangle 0's corners get the flags inf, 0, -1; the
// rest follow across internal edges. Throws DomainError if a solved flag
// collides with a neighbour.
FramedPolygonConfig reconstruct_framed(const IdealTriangulation& t, const EdgeValues& xs);

// Inverse of a_coords. Triangle 0's first corner gets (1, 0), its second
// (0, +-A); each further lift solves two determinant equations.
DecoratedPolygonConfig reconstruct_decorated(const IdealTriangulation& t, const EdgeValues& as);

// Front from xs with standard lifts, back from A_j * B_j (B = 1 on boundary
// edges) on the mirrored triangulation.
DoubleConfig reconstruct_double(const IdealTriangulation& t, const EdgeValues& bs, const EdgeValues& xs);

// Scales front and back lifts at each vertex label by its lambda (absent
// labels keep 1). Throws ArgumentError on a zero or unknown entry.
DoubleConfig h_rescale(const DoubleConfig& d, const std::map<std::string, Rational>& lambdas);

// X-coordinates of the back configuration, inverted so they live on the same
// torus as the front ones: 1 / x_coord(back, e).
EdgeValues mirror_x_coords(const DoubleConfig& d);

// Same vertex data over another triangulation of the polygon.
DoubleConfig retriangulate(const DoubleConfig& d, const IdealTriangulation& t);

}  // namespace clusterdouble
