#pragma once

// Ideal triangulations of decorated surfaces, held combinatorially.
//
// A triangle lists its three corners in the order given by the surface
// orientation. Side s of a triangle runs from corner s to corner s+1 (mod 3).
// Every side is either glued to exactly one other side or marked boundary.
// Edges are named "<u>-<v>" after their endpoint vertex labels, with u the
// endpoint that comes first in the vertex list; parallel edges with the same
// endpoints get a "#2", "#3", ... suffix.

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "clusterdouble/seed.hpp"

namespace clusterdouble {

struct SideRef {
  std::size_t triangle = 0;
  int side = 0;  // 0, 1 or 2

  friend bool operator==(const SideRef&, const SideRef&) = default;
  friend auto operator<=>(const SideRef&, const SideRef&) = default;
};

struct TriangulationEdge {
  std::string name;
  std::size_t start = 0;  // endpoint vertex indices, start <= end in vertex order
  std::size_t end = 0;
  std::vector<SideRef> sides;  // one (boundary) or two (internal)
  bool boundary() const { return sides.size() == 1; }
};

struct ValidationReport {
  bool valid = true;
  std::vector<std::size_t> self_folded;  // triangle indices
  std::vector<std::string> problems;     // human-readable, one per issue
};

class IdealTriangulation {
 public:
  IdealTriangulation() = default;
  // Index-range errors throw ParseError; everything else is reported by
  // validate() and enforced by require_valid().
  IdealTriangulation(std::vector<std::string> vertices, std::vector<std::array<std::size_t, 3>> triangles,
                     std::vector<std::pair<SideRef, SideRef>> gluings, std::vector<SideRef> boundary);

  // Glues sides with matching reversed endpoints; unmatched sides become
  // boundary. Suitable when every vertex pair spans at most one edge.
  static IdealTriangulation from_triangles(std::vector<std::string> vertices,
                                           std::vector<std::array<std::size_t, 3>> triangles);

  const std::vector<std::string>& vertices() const { return vertices_; }
  std::optional<std::size_t> vertex_index(std::string_view label) const;
  const std::vector<std::array<std::size_t, 3>>& triangles() const { return triangles_; }
  const std::vector<std::pair<SideRef, SideRef>>& gluings() const { return gluings_; }
  const std::vector<SideRef>& boundary() const { return boundary_; }

  const std::vector<TriangulationEdge>& edges() const { return edges_; }
  std::optional<std::size_t> edge_index(std::string_view name) const;
  std::size_t require_edge(std::string_view name) const;
  std::size_t edge_of(SideRef side) const;
  std::vector<std::string> internal_edges() const;
  std::vector<std::string> boundary_edges() const;

  // Endpoint vertices of a triangle side, in traversal order.
  std::pair<std::size_t, std::size_t> side_vertices(SideRef side) const;
  // The side glued to `side`, if it is internal.
  std::optional<SideRef> partner(SideRef side) const;

  ValidationReport validate() const;
  void require_valid() const;  // throws ArgumentError with the first problem

  // Same combinatorics with every triangle's orientation reversed.
  IdealTriangulation mirrored() const;

 private:
  void build_edges();

  std::vector<std::string> vertices_;
  std::vector<std::array<std::size_t, 3>> triangles_;
  std::vector<std::pair<SideRef, SideRef>> gluings_;
  std::vector<SideRef> boundary_;

  std::vector<TriangulationEdge> edges_;
  std::vector<std::array<std::optional<std::size_t>, 3>> side_edge_;
  std::vector<std::array<std::optional<SideRef>, 3>> partner_;
  std::vector<std::string> structural_problems_;
};

ValidationReport validate(const IdealTriangulation& t);

// Quadrilateral around an internal edge, in orientation order (p, q, r, s)
// with the edge running p - r.
struct Quadrilateral {
  std::array<std::size_t, 4> corners;  // vertex indices p, q, r, s
};

Quadrilateral quadrilateral_around(const IdealTriangulation& t, std::string_view edge);

struct FlipResult {
  IdealTriangulation triangulation;
  // old edge name -> new edge name; the flipped edge maps to the new diagonal
  std::map<std::string, std::string> correspondence;
};

// Throws ArgumentError for boundary edges and non-regular flips.
FlipResult flip(const IdealTriangulation& t, std::string_view edge);

// Label of an m-triangulation vertex that is not a vertex of T.
struct MSeedLabel {
  enum class Host { Edge, Triangle };
  Host host = Host::Edge;
  std::size_t host_index = 0;
  // Edge host: (m-k, k, 0) measured from the edge's start vertex.
  // Triangle host: weights on the triangle's corners.
  std::array<int, 3> position{};
  std::string label;
  bool boundary = false;
};

// I_m^T in seed order: edge points (edges in order, k = 1..m-1), then
// triangle-interior points. For m = 2 the edge points are labelled by the
// edge names; otherwise "<edge>/<k>" and "T<t>[x,y,z]".
std::vector<MSeedLabel> m_labels(const IdealTriangulation& t, int m);

// Seed with indices I_m^T, frozen = boundary labels, and eps counting
// oriented interior edges of the m-triangulation. Throws ArgumentError on an
// invalid triangulation or one containing self-folded triangles.
Seed m_triangulation_seed(const IdealTriangulation& t, int m);

struct FlipCheckVerdict {
  bool equal = false;
  std::string discrepancy;  // empty when equal
};

// Compares the seed of flip(t, e) with mutate_seed(seed(t), e) under the
// flip's edge correspondence. Only m = 2 is supported.
FlipCheckVerdict flip_mutation_check(const IdealTriangulation& t, std::string_view edge, int m);

// Convex n-gon with vertices "p1".."pn" in counter-clockwise order and the
// given diagonals (pairs of 0-based vertex indices).
IdealTriangulation polygon_triangulation(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& diagonals);

// Every triangulation of the convex n-gon, in a fixed order.
std::vector<IdealTriangulation> all_polygon_triangulations(std::size_t n);

}  // namespace clusterdouble
