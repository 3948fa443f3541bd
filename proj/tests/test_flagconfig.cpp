#include <doctest.h>

#include "clusterdouble/errors.hpp"
#include "clusterdouble/flagconfig.hpp"
#include "clusterdouble/verify.hpp"

using namespace clusterdouble;

namespace {

Vec2 v(long x, long y) { return Vec2{make_rational(x), make_rational(y)}; }
Rational q(long n, long d = 1) { return make_rational(n, d); }
ProjectivePoint at(long n, long d = 1) { return ProjectivePoint::at(q(n, d)); }

const IdealTriangulation& square() {
  static const IdealTriangulation sq = polygon_triangulation(4, {{0, 2}});
  return sq;
}

}  // namespace

TEST_SUITE("flagconfig") {
  TEST_CASE("projective points and lifts") {
    CHECK(flag_of(v(3, 0)).is_infinity());
    CHECK(flag_of(v(2, 4)) == at(1, 2));
    CHECK(standard_lift(ProjectivePoint::infinity()) == v(1, 0));
    CHECK(standard_lift(at(-1)) == v(-1, 1));
    CHECK_THROWS_AS(flag_of(v(0, 0)), ArgumentError);
  }

  TEST_CASE("cross ratio of 0, -1, inf, 1") {
    CHECK(cross_ratio(v(0, 1), v(-1, 1), v(1, 0), v(1, 1)) == -1);
    CHECK_THROWS_AS(cross_ratio(v(0, 1), v(1, 0), v(1, 0), v(1, 1)), DomainError);
  }

  TEST_CASE("X-coordinate of the square") {
    // the quadrilateral around p1-p3 is (p1, p2, p3, p4)
    const Quadrilateral quad = quadrilateral_around(square(), "p1-p3");
    CHECK(quad.corners == std::array<std::size_t, 4>{0, 1, 2, 3});
    const FramedPolygonConfig c(square(), {at(0), at(-1), ProjectivePoint::infinity(), at(1)});
    // raw cross ratio -1, so X = -1 / cr = 1
    CHECK(x_coord(c, "p1-p3") == 1);
    CHECK_THROWS_AS(x_coord(c, "p1-p2"), ArgumentError);
  }

  TEST_CASE("A-coordinates") {
    const IdealTriangulation tri = polygon_triangulation(3, {});
    const DecoratedPolygonConfig c(tri, {v(1, 0), v(0, 1), v(1, 1)});
    CHECK(a_coord(c, "p1-p2") == 1);
    CHECK(a_coord(c, "p1-p3") == 1);
    CHECK(a_coord(c, "p2-p3") == -1);
    const DecoratedPolygonConfig scaled(tri, {v(2, 0), v(0, 1), v(1, 1)});
    CHECK(a_coord(scaled, "p1-p2") == 2);
    CHECK(a_coord(scaled, "p1-p3") == 2);
    CHECK(a_coord(scaled, "p2-p3") == -1);
    // equal flags at the ends of an edge
    CHECK_THROWS_AS(DecoratedPolygonConfig(tri, {v(1, 0), v(2, 0), v(1, 1)}), DomainError);
    CHECK_THROWS_AS(DecoratedPolygonConfig(tri, {v(1, 0), v(0, 1)}), ArgumentError);
  }

  TEST_CASE("polygon requirement") {
    CHECK_NOTHROW(require_polygon(square()));
    CHECK_NOTHROW(require_polygon(square().mirrored()));
    // vertices listed out of boundary order
    const IdealTriangulation scrambled =
        IdealTriangulation::from_triangles({"p1", "p2", "p3", "p4"}, {{0, 2, 1}, {0, 1, 3}});
    CHECK_THROWS_AS(require_polygon(scrambled), ArgumentError);
  }

  TEST_CASE("X-coordinates do not depend on lifts") {
    for (std::uint64_t trial = 0; trial < 50; ++trial) {
      TrialRng rng(51, trial);
      const IdealTriangulation t = polygon_triangulation(6, {{0, 2}, {0, 3}, {3, 5}});
      const RandomDouble r = random_double(t, rng);
      REQUIRE(r.config.has_value());
      std::vector<Vec2> lifts = r.config->front().lifts();
      for (auto& l : lifts) {
        const Rational s = rng.nonzero_rational();
        l = Vec2{l.x * s, l.y * s};
      }
      const DecoratedPolygonConfig rescaled(t, lifts);
      CHECK(x_coords(rescaled.framed()) == x_coords(r.config->front().framed()));
    }
  }

  TEST_CASE("framed reconstruction") {
    const FramedPolygonConfig c = reconstruct_framed(square(), {{"p1-p3", q(-1, 2)}});
    CHECK(c.flags() == std::vector<ProjectivePoint>{ProjectivePoint::infinity(), at(0), at(-1), at(1)});
    CHECK(x_coord(c, "p1-p3") == q(-1, 2));
    // the configuration 0, -1, inf, 1 comes back up to a projective transformation
    const FramedPolygonConfig back = reconstruct_framed(square(), {{"p1-p3", q(1)}});
    CHECK(x_coord(back, "p1-p3") == 1);
    CHECK_THROWS_AS(reconstruct_framed(square(), {{"p1-p3", q(0)}}), ArgumentError);
    CHECK_THROWS_AS(reconstruct_framed(square(), {}), ArgumentError);

    const IdealTriangulation pentagon = polygon_triangulation(5, {{0, 2}, {0, 3}});
    for (std::uint64_t trial = 0; trial < 100; ++trial) {
      TrialRng rng(52, trial);
      EdgeValues xs;
      for (const auto& e : pentagon.internal_edges()) xs[e] = rng.nonzero_rational();
      const FramedPolygonConfig r = reconstruct_framed(pentagon, xs);
      CHECK(x_coords(r) == xs);
      const auto& base = pentagon.triangles()[0];
      CHECK(r.flags()[base[0]].is_infinity());
      CHECK(r.flags()[base[1]] == at(0));
      CHECK(r.flags()[base[2]] == at(-1));
    }
  }

  TEST_CASE("decorated reconstruction") {
    const IdealTriangulation tri = polygon_triangulation(3, {});
    const DecoratedPolygonConfig c = reconstruct_decorated(tri, {{"p1-p2", q(1)}, {"p1-p3", q(1)}, {"p2-p3", q(1)}});
    CHECK(c.lifts() == std::vector<Vec2>{v(1, 0), v(0, 1), v(-1, 1)});
    for (const auto& [e, a] : a_coords(c)) CHECK(a == 1);

    const IdealTriangulation hexagon = polygon_triangulation(6, {{1, 5}, {1, 4}, {2, 4}});
    for (std::uint64_t trial = 0; trial < 100; ++trial) {
      TrialRng rng(53, trial);
      EdgeValues as;
      for (const auto& e : hexagon.edges()) as[e.name] = rng.positive_rational();
      const DecoratedPolygonConfig r = reconstruct_decorated(hexagon, as);
      CHECK(a_coords(r) == as);

      // scaling the A's at one vertex (not the first corner of triangle 0) scales its lift
      const std::size_t vertex = 3;
      const Rational lambda = rng.positive_rational();
      EdgeValues scaled = as;
      for (const auto& e : hexagon.edges()) {
        if (e.start == vertex || e.end == vertex) scaled[e.name] *= lambda;
      }
      const DecoratedPolygonConfig s = reconstruct_decorated(hexagon, scaled);
      for (std::size_t p = 0; p < 6; ++p) {
        const Vec2 expected = p == vertex ? Vec2{r.lifts()[p].x * lambda, r.lifts()[p].y * lambda} : r.lifts()[p];
        CHECK(s.lifts()[p] == expected);
      }
    }
    CHECK_THROWS_AS(reconstruct_decorated(tri, {{"p1-p2", q(1)}, {"p1-p3", q(0)}, {"p2-p3", q(1)}}), ArgumentError);
  }

  TEST_CASE("double configurations and their coordinates") {
    const DoubleConfig d = reconstruct_double(square(), {{"p1-p3", q(3)}}, {{"p1-p3", q(2)}});
    const DoubleCoordinates c = double_coords(d);
    CHECK(c.B == EdgeValues{{"p1-p3", q(3)}});
    CHECK(c.X == EdgeValues{{"p1-p3", q(2)}});
    CHECK(mirror_x_coords(d) == EdgeValues{{"p1-p3", q(2)}});

    // back = front gives B = 1
    const DoubleConfig same(d.front(), DecoratedPolygonConfig(square().mirrored(), d.front().lifts()));
    CHECK(double_coords(same).B == EdgeValues{{"p1-p3", q(1)}});

    // all B = 1: back A's equal front A's, and the mirror X's equal the front ones
    const IdealTriangulation pentagon = polygon_triangulation(5, {{1, 3}, {1, 4}});
    EdgeValues ones, xs;
    for (const auto& e : pentagon.internal_edges()) {
      ones[e] = 1;
      xs[e] = q(-2, 3);
    }
    xs["p2-p5"] = q(5);
    const DoubleConfig unit = reconstruct_double(pentagon, ones, xs);
    CHECK(a_coords(unit.back()) == a_coords(unit.front()));
    CHECK(mirror_x_coords(unit) == xs);

    // frozen condition
    std::vector<Vec2> back = d.back().lifts();
    back[1] = Vec2{back[1].x * 2, back[1].y * 2};
    CHECK_THROWS_AS(DoubleConfig(d.front(), DecoratedPolygonConfig(square().mirrored(), back)), ArgumentError);
    // back must live on the mirror
    CHECK_THROWS_AS(DoubleConfig(d.front(), DecoratedPolygonConfig(square(), d.back().lifts())), ArgumentError);
  }

  TEST_CASE("rescaling") {
    const IdealTriangulation pentagon = polygon_triangulation(5, {{0, 2}, {0, 3}});
    TrialRng rng(54, 0);
    const RandomDouble r = random_double(pentagon, rng);
    REQUIRE(r.config.has_value());
    const DoubleConfig& d = *r.config;
    const DoubleConfig same = h_rescale(d, {});
    CHECK(same.front().lifts() == d.front().lifts());
    CHECK(same.back().lifts() == d.back().lifts());
    CHECK(h_rescale(d, {{"p1", q(1)}, {"p4", q(1)}}).front().lifts() == d.front().lifts());

    const DoubleConfig doubled = h_rescale(d, {{"p3", q(2)}});
    CHECK(double_coords(doubled) == double_coords(d));
    for (const auto& e : pentagon.edges()) {
      const bool incident = pentagon.vertices()[e.start] == "p3" || pentagon.vertices()[e.end] == "p3";
      const Rational factor = incident ? q(2) : q(1);
      CHECK(a_coord(doubled.front(), e.name) == factor * a_coord(d.front(), e.name));
      CHECK(a_coord(doubled.back(), e.name) == factor * a_coord(d.back(), e.name));
    }
    CHECK_THROWS_AS(h_rescale(d, {{"p2", q(0)}}), ArgumentError);
    CHECK_THROWS_AS(h_rescale(d, {{"nope", q(2)}}), ArgumentError);
  }

  TEST_CASE("re-triangulating a configuration") {
    const IdealTriangulation pentagon = polygon_triangulation(5, {{0, 2}, {0, 3}});
    TrialRng rng(55, 0);
    const RandomDouble r = random_double(pentagon, rng);
    REQUIRE(r.config.has_value());
    const FlipResult f = flip(pentagon, "p1-p3");
    const DoubleConfig moved = retriangulate(*r.config, f.triangulation);
    CHECK(moved.front().lifts() == r.config->front().lifts());
    CHECK(moved.triangulation().internal_edges() == f.triangulation.internal_edges());
    CHECK_THROWS_AS(retriangulate(*r.config, polygon_triangulation(4, {{0, 2}})), ArgumentError);
  }

  TEST_CASE("property: coordinate identities on random configurations") {
    for (std::size_t n = 4; n <= 7; ++n) {
      for (const auto& t : all_polygon_triangulations(n)) {
        for (std::uint64_t trial = 0; trial < 5; ++trial) {
          TrialRng rng(56 + n, trial);
          const auto outcome_ok = [](const TrialOutcome& o) {
            if (o.status == TrialOutcome::Status::Fail) FAIL_CHECK(o.message << " " << o.counterexample.dump());
          };
          outcome_ok(check_roundtrip(t, rng));
          outcome_ok(check_rescale(t, rng));
          outcome_ok(check_p_map(t, rng));
          outcome_ok(check_mirror(t, rng));
          outcome_ok(check_flip_naturality(t, rng));
        }
      }
    }
  }
}
