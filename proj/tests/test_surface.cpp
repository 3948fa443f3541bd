#include <doctest.h>

#include <algorithm>
#include <set>

#include "clusterdouble/errors.hpp"
#include "clusterdouble/surface.hpp"
#include "clusterdouble/verify.hpp"

using namespace clusterdouble;

namespace {

// Triangles as rotation-normalized vertex triples.
std::set<std::array<std::size_t, 3>> triangle_set(const IdealTriangulation& t) {
  std::set<std::array<std::size_t, 3>> out;
  for (auto tri : t.triangles()) {
    std::rotate(tri.begin(), std::min_element(tri.begin(), tri.end()), tri.end());
    out.insert(tri);
  }
  return out;
}

std::size_t lattice_point_count(const IdealTriangulation& t, int m) {
  std::set<std::tuple<int, std::size_t, std::size_t, int>> points;
  for (std::size_t tri = 0; tri < t.triangles().size(); ++tri) {
    const auto& c = t.triangles()[tri];
    for (int x = 0; x <= m; ++x) {
      for (int y = 0; x + y <= m; ++y) {
        const int b[3] = {x, y, m - x - y};
        const int zeros = (b[0] == 0) + (b[1] == 0) + (b[2] == 0);
        if (zeros >= 2) continue;
        if (zeros == 0) {
          points.insert({0, tri, static_cast<std::size_t>(x), y});
          continue;
        }
        // on the side opposite the zero corner; key by endpoints and distance from the smaller one
        const int z = b[0] == 0 ? 0 : (b[1] == 0 ? 1 : 2);
        const std::size_t u = c[(z + 1) % 3], v = c[(z + 2) % 3];
        const int from_u = b[(z + 2) % 3];
        points.insert({1, std::min(u, v), std::max(u, v), u < v ? from_u : m - from_u});
      }
    }
  }
  return points.size();
}

IdealTriangulation self_folded_example() {
  // triangle (a, b, a) glued to itself along the sides a->b and b->a
  return IdealTriangulation({"a", "b"}, {{0, 1, 0}}, {{SideRef{0, 0}, SideRef{0, 1}}}, {SideRef{0, 2}});
}

}  // namespace

TEST_SUITE("surface") {
  TEST_CASE("edges of the square") {
    const IdealTriangulation sq = polygon_triangulation(4, {{0, 2}});
    std::vector<std::string> names;
    for (const auto& e : sq.edges()) names.push_back(e.name);
    CHECK(names == std::vector<std::string>{"p1-p2", "p1-p3", "p1-p4", "p2-p3", "p3-p4"});
    CHECK(sq.internal_edges() == std::vector<std::string>{"p1-p3"});
    CHECK(sq.boundary_edges().size() == 4);
    const Quadrilateral q = quadrilateral_around(sq, "p1-p3");
    std::set<std::size_t> corners(q.corners.begin(), q.corners.end());
    CHECK(corners.size() == 4);
    // diagonal runs p - r
    CHECK(std::set<std::size_t>{q.corners[0], q.corners[2]} == std::set<std::size_t>{0, 2});
  }

  TEST_CASE("validation") {
    const ValidationReport ok = validate(polygon_triangulation(4, {{0, 2}}));
    CHECK(ok.valid);
    CHECK(ok.self_folded.empty());
    CHECK(ok.problems.empty());

    const ValidationReport folded = validate(self_folded_example());
    CHECK(folded.self_folded == std::vector<std::size_t>{0});

    // both triangles traverse 0 -> 1 along the glued side
    const IdealTriangulation twisted({"a", "b", "c", "d"}, {{0, 1, 2}, {0, 1, 3}},
                                     {{SideRef{0, 0}, SideRef{1, 0}}},
                                     {SideRef{0, 1}, SideRef{0, 2}, SideRef{1, 1}, SideRef{1, 2}});
    const ValidationReport bad = validate(twisted);
    CHECK_FALSE(bad.valid);
    REQUIRE_FALSE(bad.problems.empty());
    CHECK(bad.problems.front().find("non-orientable") != std::string::npos);

    const IdealTriangulation missing({"a", "b", "c"}, {{0, 1, 2}}, {}, {SideRef{0, 0}, SideRef{0, 1}});
    CHECK_FALSE(validate(missing).valid);
    const IdealTriangulation twice({"a", "b", "c"}, {{0, 1, 2}}, {},
                                   {SideRef{0, 0}, SideRef{0, 1}, SideRef{0, 2}, SideRef{0, 2}});
    CHECK_FALSE(validate(twice).valid);
    CHECK_THROWS_AS(IdealTriangulation({"a", "b"}, {{0, 1, 2}}, {}, {}), ParseError);
    CHECK_THROWS_AS(IdealTriangulation({"a", "b", "c"}, {{0, 1, 2}}, {}, {SideRef{0, 3}}), ParseError);
  }

  TEST_CASE("flip of the square") {
    const IdealTriangulation sq = polygon_triangulation(4, {{0, 2}});
    const FlipResult r = flip(sq, "p1-p3");
    CHECK(r.triangulation.validate().valid);
    CHECK(r.triangulation.internal_edges() == std::vector<std::string>{"p2-p4"});
    CHECK(r.correspondence.at("p1-p3") == "p2-p4");
    CHECK(r.correspondence.at("p3-p4") == "p3-p4");
    CHECK(triangle_set(r.triangulation) == triangle_set(polygon_triangulation(4, {{1, 3}})));
    CHECK_THROWS_AS(flip(sq, "p1-p2"), ArgumentError);
    CHECK_THROWS_AS(flip(sq, "p9-p9"), ArgumentError);
  }

  TEST_CASE("non-regular flips are rejected") {
    const IdealTriangulation f = self_folded_example();
    CHECK_THROWS_AS(flip(f, f.internal_edges().front()), ArgumentError);
    CHECK_THROWS_AS(m_triangulation_seed(f, 2), ArgumentError);
  }

  TEST_CASE("flip graph of the pentagon") {
    const auto all = all_polygon_triangulations(5);
    CHECK(all.size() == 5);
    std::vector<std::set<std::array<std::size_t, 3>>> sets;
    for (const auto& t : all) sets.push_back(triangle_set(t));
    std::size_t flip_edges = 0;
    for (const auto& t : all) {
      CHECK(t.internal_edges().size() == 2);
      for (const auto& e : t.internal_edges()) {
        const auto target = triangle_set(flip(t, e).triangulation);
        CHECK(std::find(sets.begin(), sets.end(), target) != sets.end());
        ++flip_edges;
      }
    }
    CHECK(flip_edges == 10);  // a 5-cycle, each edge seen from both ends
    CHECK(all_polygon_triangulations(6).size() == 14);
    CHECK(all_polygon_triangulations(8).size() == 132);
  }

  TEST_CASE("seed of the square") {
    const IdealTriangulation sq = polygon_triangulation(4, {{0, 2}});
    const Seed s = m_triangulation_seed(sq, 2);
    CHECK(s.size() == 5);
    CHECK(s.mutable_labels() == std::vector<std::string>{"p1-p3"});
    // around the boundary starting at p1-p2: alternating signs
    const std::vector<std::string> cyclic{"p1-p2", "p2-p3", "p3-p4", "p1-p4"};
    std::vector<int> row;
    for (const auto& b : cyclic) row.push_back(s.eps("p1-p3", b));
    CHECK(row == std::vector<int>{-1, 1, -1, 1});
    // starting at p2-p3 gives the (+1, -1, +1, -1) reading
    CHECK(s.eps("p1-p3", "p2-p3") == 1);
  }

  TEST_CASE("seeds of a single triangle") {
    const IdealTriangulation tri = polygon_triangulation(3, {});
    const Seed s2 = m_triangulation_seed(tri, 2);
    CHECK(s2.size() == 3);
    CHECK(s2.mutable_labels().empty());
    const IntMatrix cyclic{{0, 1, -1}, {-1, 0, 1}, {1, -1, 0}};
    IntMatrix negated(3);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) negated(i, j) = -cyclic(i, j);
    CHECK((s2.eps() == cyclic || s2.eps() == negated));

    const Seed s3 = m_triangulation_seed(tri, 3);
    CHECK(s3.size() == 7);
    CHECK(s3.mutable_labels() == std::vector<std::string>{"T0[1,1,1]"});
    const auto labels = m_labels(tri, 3);
    CHECK(labels.front().label == "p1-p2/1");
    CHECK(m_labels(tri, 2).front().label == "p1-p2");
    CHECK_THROWS_AS(m_labels(tri, 1), ArgumentError);
  }

  TEST_CASE("flip agrees with mutation at m = 2") {
    const IdealTriangulation sq = polygon_triangulation(4, {{0, 2}});
    CHECK(flip_mutation_check(sq, "p1-p3", 2).equal);
    for (const auto& t : all_polygon_triangulations(5)) {
      for (const auto& e : t.internal_edges()) CHECK(flip_mutation_check(t, e, 2).equal);
    }
    const IdealTriangulation zigzag = polygon_triangulation(6, {{1, 5}, {1, 4}, {2, 4}});
    for (const auto& e : zigzag.internal_edges()) {
      const FlipCheckVerdict v = flip_mutation_check(zigzag, e, 2);
      CHECK_MESSAGE(v.equal, v.discrepancy);
    }
    CHECK_THROWS_AS(flip_mutation_check(sq, "p1-p3", 3), ArgumentError);
  }

  TEST_CASE("polygon construction errors") {
    CHECK_THROWS_AS(polygon_triangulation(2, {}), ArgumentError);
    CHECK_THROWS_AS(polygon_triangulation(4, {}), ArgumentError);
    CHECK_THROWS_AS(polygon_triangulation(4, {{0, 1}}), ArgumentError);
    CHECK_THROWS_AS(polygon_triangulation(6, {{0, 3}, {1, 4}, {0, 2}}), ArgumentError);
  }

  TEST_CASE("property: flip is an involution up to the correspondence") {
    for (std::size_t n = 4; n <= 7; ++n) {
      for (const auto& t : all_polygon_triangulations(n)) {
        for (const auto& e : t.internal_edges()) {
          const FlipResult once = flip(t, e);
          const FlipResult twice = flip(once.triangulation, once.correspondence.at(e));
          CHECK(triangle_set(twice.triangulation) == triangle_set(t));
          for (const auto& edge : t.edges()) {
            CHECK(twice.correspondence.at(once.correspondence.at(edge.name)) == edge.name);
          }
          CHECK(m_triangulation_seed(twice.triangulation, 2) == m_triangulation_seed(t, 2));
        }
      }
    }
  }

  TEST_CASE("property: exchange matrices are skew-symmetric with the expected size") {
    for (std::uint64_t trial = 0; trial < 60; ++trial) {
      TrialRng rng(41, trial);
      const auto n = static_cast<std::size_t>(rng.uniform(3, 10));
      const auto all = all_polygon_triangulations(n);
      const IdealTriangulation& t = all[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(all.size()) - 1))];
      for (int m = 2; m <= 4; ++m) {
        const Seed s = m_triangulation_seed(t, m);
        CHECK(s.eps().is_skew_symmetric());
        const std::size_t formula = t.edges().size() * (m - 1) + t.triangles().size() * (m - 1) * (m - 2) / 2;
        CHECK(s.size() == formula);
        CHECK(s.size() == lattice_point_count(t, m));
        std::size_t boundary_labels = 0;
        for (const auto& l : m_labels(t, m)) boundary_labels += l.boundary;
        CHECK(s.frozen_labels().size() == boundary_labels);
        CHECK(boundary_labels == n * static_cast<std::size_t>(m - 1));
      }
    }
  }

  TEST_CASE("property: flip agrees with mutation on small polygons") {
    for (std::size_t n = 4; n <= 7; ++n) {
      for (const auto& t : all_polygon_triangulations(n)) {
        for (const auto& e : t.internal_edges()) {
          const FlipCheckVerdict v = flip_mutation_check(t, e, 2);
          CHECK_MESSAGE(v.equal, v.discrepancy);
        }
      }
    }
  }
}
