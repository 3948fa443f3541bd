#include "clusterdouble/surface.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "clusterdouble/errors.hpp"

namespace clusterdouble {

IdealTriangulation::IdealTriangulation(std::vector<std::string> vertices,
                                       std::vector<std::array<std::size_t, 3>> triangles,
                                       std::vector<std::pair<SideRef, SideRef>> gluings, std::vector<SideRef> boundary)
    : vertices_(std::move(vertices)),
      triangles_(std::move(triangles)),
      gluings_(std::move(gluings)),
      boundary_(std::move(boundary)) {
  std::set<std::string> seen;
  for (const auto& v : vertices_) {
    if (!seen.insert(v).second) throw ParseError("duplicate vertex label '" + v + "'");
  }
  for (const auto& tri : triangles_) {
    for (auto c : tri) {
      if (c >= vertices_.size()) throw ParseError("triangle corner out of range");
    }
  }
  auto check_side = [&](const SideRef& s) {
    if (s.triangle >= triangles_.size() || s.side < 0 || s.side > 2) throw ParseError("side reference out of range");
  };
  for (const auto& [a, b] : gluings_) {
    check_side(a);
    check_side(b);
  }
  for (const auto& s : boundary_) check_side(s);
  build_edges();
}

IdealTriangulation IdealTriangulation::from_triangles(std::vector<std::string> vertices,
                                                      std::vector<std::array<std::size_t, 3>> triangles) {
  std::map<std::pair<std::size_t, std::size_t>, SideRef> directed;
  for (std::size_t t = 0; t < triangles.size(); ++t) {
    for (int s = 0; s < 3; ++s) {
      const auto key = std::make_pair(triangles[t][s], triangles[t][(s + 1) % 3]);
      if (!directed.emplace(key, SideRef{t, s}).second) {
        throw ArgumentError("two sides traverse the same vertex pair in the same direction");
      }
    }
  }
  std::vector<std::pair<SideRef, SideRef>> gluings;
  std::vector<SideRef> boundary;
  for (const auto& [key, side] : directed) {
    auto other = directed.find({key.second, key.first});
    if (other == directed.end()) {
      boundary.push_back(side);
    } else if (key.first < key.second) {
      gluings.emplace_back(side, other->second);
    }
  }
  std::sort(boundary.begin(), boundary.end());
  std::sort(gluings.begin(), gluings.end());
  return IdealTriangulation(std::move(vertices), std::move(triangles), std::move(gluings), std::move(boundary));
}

std::pair<std::size_t, std::size_t> IdealTriangulation::side_vertices(SideRef side) const {
  const auto& tri = triangles_.at(side.triangle);
  return {tri[side.side], tri[(side.side + 1) % 3]};
}

void IdealTriangulation::build_edges() {
  side_edge_.assign(triangles_.size(), {});
  partner_.assign(triangles_.size(), {});
  structural_problems_.clear();
  edges_.clear();

  std::vector<std::vector<SideRef>> groups;
  auto claim = [&](const SideRef& s) {
    if (side_edge_[s.triangle][s.side]) {
      std::ostringstream os;
      os << "side " << s.side << " of triangle " << s.triangle << " is used twice";
      structural_problems_.push_back(os.str());
      return false;
    }
    side_edge_[s.triangle][s.side] = groups.size();
    return true;
  };
  for (const auto& [a, b] : gluings_) {
    if (a == b) {
      structural_problems_.push_back("a side is glued to itself");
      continue;
    }
    if (side_edge_[a.triangle][a.side] || side_edge_[b.triangle][b.side]) {
      claim(side_edge_[a.triangle][a.side] ? a : b);
      continue;
    }
    claim(a);
    claim(b);
    partner_[a.triangle][a.side] = b;
    partner_[b.triangle][b.side] = a;
    groups.push_back({a, b});
  }
  for (const auto& s : boundary_) {
    if (claim(s)) groups.push_back({s});
  }
  for (std::size_t t = 0; t < triangles_.size(); ++t) {
    for (int s = 0; s < 3; ++s) {
      if (!side_edge_[t][s]) {
        std::ostringstream os;
        os << "side " << s << " of triangle " << t << " is neither glued nor boundary";
        structural_problems_.push_back(os.str());
      }
    }
  }

  // Order edges by endpoints, then by first side, and name them.
  std::vector<TriangulationEdge> edges;
  for (const auto& g : groups) {
    TriangulationEdge e;
    auto [u, v] = side_vertices(g[0]);
    e.start = std::min(u, v);
    e.end = std::max(u, v);
    e.sides = g;
    edges.push_back(std::move(e));
  }
  std::vector<std::size_t> order(edges.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::tie(edges[a].start, edges[a].end, edges[a].sides[0]) <
           std::tie(edges[b].start, edges[b].end, edges[b].sides[0]);
  });
  std::vector<std::size_t> new_index(edges.size());
  std::map<std::pair<std::size_t, std::size_t>, int> multiplicity;
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    TriangulationEdge e = std::move(edges[order[pos]]);
    const int count = ++multiplicity[{e.start, e.end}];
    e.name = vertices_[e.start] + "-" + vertices_[e.end];
    if (count > 1) e.name += "#" + std::to_string(count);
    new_index[order[pos]] = pos;
    edges_.push_back(std::move(e));
  }
  for (auto& row : side_edge_) {
    for (auto& slot : row) {
      if (slot) slot = new_index[*slot];
    }
  }
}

std::optional<std::size_t> IdealTriangulation::vertex_index(std::string_view label) const {
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (vertices_[i] == label) return i;
  }
  return std::nullopt;
}

std::optional<std::size_t> IdealTriangulation::edge_index(std::string_view name) const {
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    if (edges_[i].name == name) return i;
  }
  return std::nullopt;
}

std::size_t IdealTriangulation::require_edge(std::string_view name) const {
  if (auto i = edge_index(name)) return *i;
  throw ArgumentError("unknown edge '" + std::string(name) + "'");
}

std::size_t IdealTriangulation::edge_of(SideRef side) const {
  const auto& slot = side_edge_.at(side.triangle).at(side.side);
  if (!slot) throw ArgumentError("side does not belong to any edge");
  return *slot;
}

std::optional<SideRef> IdealTriangulation::partner(SideRef side) const {
  return partner_.at(side.triangle).at(side.side);
}

std::vector<std::string> IdealTriangulation::internal_edges() const {
  std::vector<std::string> out;
  for (const auto& e : edges_) {
    if (!e.boundary()) out.push_back(e.name);
  }
  return out;
}

std::vector<std::string> IdealTriangulation::boundary_edges() const {
  std::vector<std::string> out;
  for (const auto& e : edges_) {
    if (e.boundary()) out.push_back(e.name);
  }
  return out;
}

ValidationReport IdealTriangulation::validate() const {
  ValidationReport report;
  report.problems = structural_problems_;
  for (const auto& [a, b] : gluings_) {
    if (a == b) continue;
    auto [u1, v1] = side_vertices(a);
    auto [u2, v2] = side_vertices(b);
    if (u1 != v2 || v1 != u2) {
      std::ostringstream os;
      os << "non-orientable gluing: side " << a.side << " of triangle " << a.triangle << " and side " << b.side
         << " of triangle " << b.triangle << " are traversed in the same direction";
      report.problems.push_back(os.str());
    }
  }
  for (std::size_t t = 0; t < triangles_.size(); ++t) {
    for (int s = 0; s < 3; ++s) {
      auto p = partner_[t][s];
      if (p && p->triangle == t) {
        report.self_folded.push_back(t);
        break;
      }
    }
  }
  report.valid = report.problems.empty();
  return report;
}

ValidationReport validate(const IdealTriangulation& t) { return t.validate(); }

void IdealTriangulation::require_valid() const {
  const ValidationReport report = validate();
  if (!report.valid) throw ArgumentError("invalid triangulation: " + report.problems.front());
}

IdealTriangulation IdealTriangulation::mirrored() const {
  auto remap = [](SideRef s) { return SideRef{s.triangle, 2 - s.side}; };
  std::vector<std::array<std::size_t, 3>> triangles;
  for (const auto& tri : triangles_) triangles.push_back({tri[0], tri[2], tri[1]});
  std::vector<std::pair<SideRef, SideRef>> gluings;
  for (const auto& [a, b] : gluings_) gluings.emplace_back(remap(a), remap(b));
  std::vector<SideRef> boundary;
  for (const auto& s : boundary_) boundary.push_back(remap(s));
  return IdealTriangulation(vertices_, std::move(triangles), std::move(gluings), std::move(boundary));
}

// ---------------------------------------------------------------- flips

namespace {

struct InternalEdgeSides {
  SideRef first;
  SideRef second;
};

InternalEdgeSides internal_sides(const IdealTriangulation& t, std::string_view edge) {
  const auto& e = t.edges()[t.require_edge(edge)];
  if (e.boundary()) throw ArgumentError("edge '" + std::string(edge) + "' is a boundary edge");
  return {e.sides[0], e.sides[1]};
}

}  // namespace

Quadrilateral quadrilateral_around(const IdealTriangulation& t, std::string_view edge) {
  const auto [a, b] = internal_sides(t, edge);
  auto [u, v] = t.side_vertices(a);
  const std::size_t w1 = t.triangles()[a.triangle][(a.side + 2) % 3];
  const std::size_t w2 = t.triangles()[b.triangle][(b.side + 2) % 3];
  return {{u, w2, v, w1}};
}

FlipResult flip(const IdealTriangulation& t, std::string_view edge) {
  t.require_valid();
  const auto [a, b] = internal_sides(t, edge);
  const ValidationReport report = t.validate();
  const bool folded = std::any_of(report.self_folded.begin(), report.self_folded.end(),
                                  [&](std::size_t f) { return f == a.triangle || f == b.triangle; });
  if (a.triangle == b.triangle || folded) {
    throw ArgumentError("flip at '" + std::string(edge) + "' is not regular");
  }
  const std::size_t t1 = a.triangle;
  const std::size_t t2 = b.triangle;
  const Quadrilateral quad = quadrilateral_around(t, edge);
  const auto [u, w2, v, w1] = quad.corners;

  auto triangles = t.triangles();
  triangles[t1] = {u, w2, w1};
  triangles[t2] = {w2, v, w1};
  const SideRef diag1{t1, 1};
  const SideRef diag2{t2, 2};

  std::map<SideRef, SideRef> moved{
      {SideRef{t2, (b.side + 1) % 3}, SideRef{t1, 0}},
      {SideRef{t1, (a.side + 2) % 3}, SideRef{t1, 2}},
      {SideRef{t2, (b.side + 2) % 3}, SideRef{t2, 0}},
      {SideRef{t1, (a.side + 1) % 3}, SideRef{t2, 1}},
  };
  auto remap = [&](SideRef s) {
    auto it = moved.find(s);
    return it == moved.end() ? s : it->second;
  };

  std::vector<std::pair<SideRef, SideRef>> gluings;
  for (const auto& [x, y] : t.gluings()) {
    if ((x == a && y == b) || (x == b && y == a)) continue;
    gluings.emplace_back(remap(x), remap(y));
  }
  gluings.emplace_back(diag1, diag2);
  std::vector<SideRef> boundary;
  for (const auto& s : t.boundary()) boundary.push_back(remap(s));

  FlipResult result{IdealTriangulation(t.vertices(), std::move(triangles), std::move(gluings), std::move(boundary)),
                    {}};
  for (const auto& e : t.edges()) {
    const SideRef s = e.name == edge ? diag1 : remap(e.sides[0]);
    result.correspondence[e.name] = result.triangulation.edges()[result.triangulation.edge_of(s)].name;
  }
  return result;
}

// ---------------------------------------------------------------- m-triangulations

std::vector<MSeedLabel> m_labels(const IdealTriangulation& t, int m) {
  if (m < 2) throw ArgumentError("m must be at least 2");
  std::vector<MSeedLabel> labels;
  for (std::size_t e = 0; e < t.edges().size(); ++e) {
    const auto& edge = t.edges()[e];
    for (int k = 1; k < m; ++k) {
      MSeedLabel l;
      l.host = MSeedLabel::Host::Edge;
      l.host_index = e;
      l.position = {m - k, k, 0};
      l.label = m == 2 ? edge.name : edge.name + "/" + std::to_string(k);
      l.boundary = edge.boundary();
      labels.push_back(std::move(l));
    }
  }
  for (std::size_t tri = 0; tri < t.triangles().size(); ++tri) {
    for (int x = m - 2; x >= 1; --x) {
      for (int y = m - 1 - x; y >= 1; --y) {
        const int z = m - x - y;
        if (z < 1) continue;
        MSeedLabel l;
        l.host = MSeedLabel::Host::Triangle;
        l.host_index = tri;
        l.position = {x, y, z};
        l.label = "T" + std::to_string(tri) + "[" + std::to_string(x) + "," + std::to_string(y) + "," +
                  std::to_string(z) + "]";
        labels.push_back(std::move(l));
      }
    }
  }
  return labels;
}

namespace {

class MTriangulationIndex {
 public:
  MTriangulationIndex(const IdealTriangulation& t, int m) : t_(t), m_(m) {
    std::size_t next = 0;
    for (std::size_t e = 0; e < t.edges().size(); ++e) {
      edge_base_.push_back(next);
      next += static_cast<std::size_t>(m - 1);
    }
    for (std::size_t tri = 0; tri < t.triangles().size(); ++tri) {
      interior_base_.push_back(next);
      next += static_cast<std::size_t>((m - 1) * (m - 2) / 2);
    }
  }

  // Seed position of the m-triangulation vertex with corner weights b in
  // triangle tri, or nullopt for a corner of T.
  std::optional<std::size_t> locate(std::size_t tri, const std::array<int, 3>& b) const {
    const int zeros = (b[0] == 0) + (b[1] == 0) + (b[2] == 0);
    if (zeros >= 2) return std::nullopt;
    if (zeros == 1) {
      const int opposite = b[0] == 0 ? 0 : (b[1] == 0 ? 1 : 2);
      const int side = (opposite + 1) % 3;
      const SideRef ref{tri, side};
      const int k = b[(side + 1) % 3];  // steps from corner `side`
      const std::size_t e = t_.edge_of(ref);
      const auto& edge = t_.edges()[e];
      const std::size_t from = t_.triangles()[tri][side];
      const bool forward = edge.start != edge.end ? from == edge.start : ref == edge.sides[0];
      const int pos = forward ? k : m_ - k;
      return edge_base_[e] + static_cast<std::size_t>(pos - 1);
    }
    // interior points are enumerated x descending, then y descending
    std::size_t offset = 0;
    for (int x = m_ - 2; x > b[0]; --x) offset += static_cast<std::size_t>(m_ - 1 - x);
    offset += static_cast<std::size_t>(m_ - 1 - b[0] - b[1]);
    return interior_base_[tri] + offset;
  }

 private:
  const IdealTriangulation& t_;
  int m_;
  std::vector<std::size_t> edge_base_;
  std::vector<std::size_t> interior_base_;
};

bool on_same_side(const std::array<int, 3>& p, const std::array<int, 3>& q) {
  for (int c = 0; c < 3; ++c) {
    if (p[c] == 0 && q[c] == 0) return true;
  }
  return false;
}

}  // namespace

Seed m_triangulation_seed(const IdealTriangulation& t, int m) {
  t.require_valid();
  if (!t.validate().self_folded.empty()) {
    throw ArgumentError("exchange matrix is undefined for triangulations with self-folded triangles");
  }
  const auto labels = m_labels(t, m);
  const MTriangulationIndex index(t, m);
  IntMatrix eps(labels.size());
  for (std::size_t tri = 0; tri < t.triangles().size(); ++tri) {
    for (int a = 0; a < m; ++a) {
      for (int b = 0; a + b < m; ++b) {
        const int c = m - 1 - a - b;
        // upward small triangle, traversed in the corner order of tri
        const std::array<std::array<int, 3>, 3> corners{{{a + 1, b, c}, {a, b + 1, c}, {a, b, c + 1}}};
        for (int s = 0; s < 3; ++s) {
          const auto& from = corners[s];
          const auto& to = corners[(s + 1) % 3];
          if (on_same_side(from, to)) continue;
          const auto i = index.locate(tri, from);
          const auto j = index.locate(tri, to);
          if (!i || !j) throw Error("interior small edge ends at a corner of the triangulation");
          eps(*i, *j) += 1;
          eps(*j, *i) -= 1;
        }
      }
    }
  }
  std::vector<std::string> names;
  std::vector<std::string> frozen;
  for (const auto& l : labels) {
    names.push_back(l.label);
    if (l.boundary) frozen.push_back(l.label);
  }
  return Seed(std::move(names), frozen, std::move(eps));
}

FlipCheckVerdict flip_mutation_check(const IdealTriangulation& t, std::string_view edge, int m) {
  if (m != 2) throw ArgumentError("flip/mutation check is only available for m = 2");
  const Seed before = m_triangulation_seed(t, 2);
  const FlipResult flipped = flip(t, edge);
  const Seed after = m_triangulation_seed(flipped.triangulation, 2);
  const Seed mutated = mutate_seed(before, edge);

  FlipCheckVerdict verdict;
  if (after.size() != mutated.size()) {
    verdict.discrepancy = "index sets differ in size";
    return verdict;
  }
  std::vector<std::size_t> to_after(mutated.size());
  for (std::size_t i = 0; i < mutated.size(); ++i) {
    const std::string& renamed = flipped.correspondence.at(mutated.label(i));
    to_after[i] = after.require_index(renamed);
    if (after.is_frozen(to_after[i]) != mutated.is_frozen(i)) {
      verdict.discrepancy = "frozen status of '" + renamed + "' differs";
      return verdict;
    }
  }
  for (std::size_t i = 0; i < mutated.size(); ++i) {
    for (std::size_t j = 0; j < mutated.size(); ++j) {
      const int lhs = after.eps(to_after[i], to_after[j]);
      const int rhs = mutated.eps(i, j);
      if (lhs != rhs) {
        std::ostringstream os;
        os << "eps[" << after.label(to_after[i]) << "][" << after.label(to_after[j]) << "]: flipped seed has "
           << lhs << ", mutated seed has " << rhs;
        verdict.discrepancy = os.str();
        return verdict;
      }
    }
  }
  verdict.equal = true;
  return verdict;
}

// ---------------------------------------------------------------- polygons

namespace {

std::vector<std::string> polygon_labels(std::size_t n) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back("p" + std::to_string(i + 1));
  return labels;
}

}  // namespace

IdealTriangulation polygon_triangulation(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& diagonals) {
  if (n < 3) throw ArgumentError("a polygon needs at least 3 vertices");
  if (diagonals.size() != n - 3) throw ArgumentError("a triangulated n-gon has n-3 diagonals");
  std::set<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t i = 0; i < n; ++i) edges.insert({std::min(i, (i + 1) % n), std::max(i, (i + 1) % n)});
  for (auto [x, y] : diagonals) {
    if (x >= n || y >= n) throw ArgumentError("diagonal endpoint out of range");
    const auto d = std::make_pair(std::min(x, y), std::max(x, y));
    if (d.second - d.first < 2 || (d.first == 0 && d.second == n - 1) || !edges.insert(d).second) {
      throw ArgumentError("not a diagonal, or repeated");
    }
  }
  std::vector<std::array<std::size_t, 3>> triangles;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!edges.count({i, j})) continue;
      for (std::size_t k = j + 1; k < n; ++k) {
        if (edges.count({j, k}) && edges.count({i, k})) triangles.push_back({i, j, k});
      }
    }
  }
  if (triangles.size() != n - 2) throw ArgumentError("diagonals cross or do not triangulate the polygon");
  return IdealTriangulation::from_triangles(polygon_labels(n), std::move(triangles));
}

namespace {

using DiagonalSet = std::vector<std::pair<std::size_t, std::size_t>>;

std::vector<DiagonalSet> sub_triangulations(std::size_t i, std::size_t j) {
  if (j - i < 2) return {DiagonalSet{}};
  std::vector<DiagonalSet> out;
  for (std::size_t k = i + 1; k < j; ++k) {
    const auto left = sub_triangulations(i, k);
    const auto right = sub_triangulations(k, j);
    for (const auto& l : left) {
      for (const auto& r : right) {
        DiagonalSet d = l;
        d.insert(d.end(), r.begin(), r.end());
        if (k - i > 1) d.emplace_back(i, k);
        if (j - k > 1) d.emplace_back(k, j);
        out.push_back(std::move(d));
      }
    }
  }
  return out;
}

}  // namespace

std::vector<IdealTriangulation> all_polygon_triangulations(std::size_t n) {
  if (n < 3) throw ArgumentError("a polygon needs at least 3 vertices");
  std::vector<IdealTriangulation> out;
  for (const auto& d : sub_triangulations(0, n - 1)) out.push_back(polygon_triangulation(n, d));
  return out;
}

}  // namespace clusterdouble
