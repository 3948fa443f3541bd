#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "clusterdouble/errors.hpp"
#include "clusterdouble/seed.hpp"
#include "clusterdouble/verify.hpp"

using namespace clusterdouble;

namespace {

Seed unfrozen(std::vector<std::vector<int>> rows) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < rows.size(); ++i) labels.push_back(std::to_string(i + 1));
  return Seed(labels, {}, IntMatrix::from_rows(rows));
}

Seed permuted(const Seed& s, const std::vector<std::size_t>& perm) {
  IntMatrix eps(s.size());
  std::vector<std::string> labels(s.size());
  std::vector<std::string> frozen;
  for (std::size_t i = 0; i < s.size(); ++i) {
    labels[perm[i]] = s.label(i);
    for (std::size_t j = 0; j < s.size(); ++j) eps(perm[i], perm[j]) = s.eps(i, j);
  }
  return Seed(labels, s.frozen_labels(), eps);
}

}  // namespace

TEST_SUITE("seed") {
  TEST_CASE("construction validates its input") {
    CHECK_THROWS_AS(Seed({"1", "1"}, {}, IntMatrix{{0, 1}, {-1, 0}}), ArgumentError);
    CHECK_THROWS_AS(Seed({"1", "2"}, {"3"}, IntMatrix{{0, 1}, {-1, 0}}), ArgumentError);
    CHECK_THROWS_AS(Seed({"1", "2"}, {}, IntMatrix{{0, 1}, {1, 0}}), ArgumentError);
    CHECK_THROWS_AS(Seed({"1", "2", "3"}, {}, IntMatrix{{0, 1}, {-1, 0}}), ArgumentError);
  }

  TEST_CASE("mutation formula") {
    CHECK(mutate_seed(unfrozen({{0, 2}, {-2, 0}}), "1") == unfrozen({{0, -2}, {2, 0}}));
    CHECK(mutate_seed(unfrozen({{0, 1, 0}, {-1, 0, 1}, {0, -1, 0}}), "2") ==
          unfrozen({{0, -1, 1}, {1, 0, -1}, {-1, 1, 0}}));
    const Seed s = unfrozen({{0, 1, -2}, {-1, 0, 3}, {2, -3, 0}});
    CHECK(mutate_seed(mutate_seed(s, "3"), "3") == s);
  }

  TEST_CASE("mutation errors") {
    const Seed s({"a", "b"}, {"b"}, IntMatrix{{0, 1}, {-1, 0}});
    CHECK_THROWS_AS(mutate_seed(s, "b"), ArgumentError);
    CHECK_THROWS_AS(mutate_seed(s, "c"), ArgumentError);
    CHECK_NOTHROW(mutate_seed(s, "a"));
    const std::vector<std::string> bad{"a", "b"};
    CHECK_THROWS_AS(apply_mutation_sequence(s, bad), ArgumentError);
  }

  TEST_CASE("mutation sequences") {
    const Seed a2 = type_a_seed(2);
    CHECK(apply_mutation_sequence(a2, std::vector<std::string>{}) == a2);
    CHECK(apply_mutation_sequence(a2, std::vector<std::string>{"2", "2"}) == a2);
    const std::vector<std::string> pentagon{"1", "2", "1", "2", "1"};
    CHECK(apply_mutation_sequence(a2, pentagon).eps() == (IntMatrix{{0, -1}, {1, 0}}));
  }

  TEST_CASE("canonical forms identify isomorphic seeds") {
    for (std::uint64_t trial = 0; trial < 300; ++trial) {
      TrialRng rng(21, trial);
      const Seed s = random_seed(rng, 6, 3, true);
      std::vector<std::size_t> perm(s.size());
      std::iota(perm.begin(), perm.end(), 0);
      for (std::size_t i = perm.size(); i > 1; --i) {
        std::swap(perm[i - 1], perm[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(i) - 1))]);
      }
      CHECK(canonical_form(permuted(s, perm)) == canonical_form(s));
    }
    // frozen/mutable split is respected
    const Seed a({"1", "2"}, {"2"}, IntMatrix{{0, 1}, {-1, 0}});
    const Seed b({"1", "2"}, {"1"}, IntMatrix{{0, 1}, {-1, 0}});
    CHECK(canonical_form(a) != canonical_form(b));
    CHECK(canonical_form(a).mutable_count == 1);
  }

  TEST_CASE("mutation classes") {
    CHECK(enumerate_mutation_class(type_a_seed(2), 100).nodes.size() == 1);
    CHECK(enumerate_mutation_class(unfrozen({{0, 0}, {0, 0}}), 100).nodes.size() == 1);
    CHECK(enumerate_mutation_class(unfrozen({{0, 2, -2}, {-2, 0, 2}, {2, -2, 0}}), 100).nodes.size() == 1);
    // A3: the two paths with a sink or source, the oriented path, the oriented 3-cycle
    const MutationClassGraph a3 = enumerate_mutation_class(type_a_seed(3), 100);
    CHECK(a3.nodes.size() == 4);
    CHECK_FALSE(a3.truncated);
    // an infinite class is truncated
    const MutationClassGraph big = enumerate_mutation_class(unfrozen({{0, 3, 0}, {-3, 0, 1}, {0, -1, 0}}), 20);
    CHECK(big.truncated);
    CHECK(big.nodes.size() == 20);
    CHECK_THROWS_AS(enumerate_mutation_class(type_a_seed(2), 0), ArgumentError);
  }

  TEST_CASE("parallel enumeration matches the serial reference") {
    for (const Seed& s : {type_a_seed(4), type_a_seed(5), unfrozen({{0, 2, 0, 1}, {-2, 0, 1, 0}, {0, -1, 0, 1}, {-1, 0, -1, 0}})}) {
      const MutationClassGraph serial = enumerate_mutation_class(s, 200, Execution::Serial);
      const MutationClassGraph parallel = enumerate_mutation_class(s, 200, Execution::Parallel);
      REQUIRE(serial.nodes.size() == parallel.nodes.size());
      CHECK(serial.nodes == parallel.nodes);
      CHECK(serial.truncated == parallel.truncated);
      REQUIRE(serial.edges.size() == parallel.edges.size());
      for (std::size_t i = 0; i < serial.edges.size(); ++i) {
        CHECK(serial.edges[i].from == parallel.edges[i].from);
        CHECK(serial.edges[i].direction == parallel.edges[i].direction);
        CHECK(serial.edges[i].to == parallel.edges[i].to);
      }
    }
  }

  TEST_CASE("property: mutation preserves skew-symmetry and is an involution") {
    std::size_t cases = 0;
    for (std::uint64_t trial = 0; trial < 10000; ++trial) {
      TrialRng rng(22, trial);
      const Seed s = random_seed(rng, 6, 3, true);
      for (const auto& k : s.mutable_labels()) {
        const Seed once = mutate_seed(s, k);
        ++cases;
        if (!once.eps().is_skew_symmetric() || mutate_seed(once, k) != s) {
          FAIL("trial " << trial << " direction " << k);
        }
      }
    }
    CHECK(cases >= 10000);
  }

  TEST_CASE("property: frozen indices are kept and frozen pairs follow the off-k case") {
    std::size_t changed = 0;
    for (std::uint64_t trial = 0; trial < 2000; ++trial) {
      TrialRng rng(23, trial);
      const Seed s = random_seed(rng, 6, 3, true);
      for (const auto& k : s.mutable_labels()) {
        const Seed once = mutate_seed(s, k);
        CHECK(once.indices() == s.indices());
        CHECK(once.frozen_labels() == s.frozen_labels());
        const std::size_t kk = s.require_index(k);
        for (std::size_t i = 0; i < s.size(); ++i) {
          for (std::size_t j = 0; j < s.size(); ++j) {
            if (!s.is_frozen(i) || !s.is_frozen(j)) continue;
            const int a = s.eps(i, kk), b = s.eps(kk, j);
            const int expected = s.eps(i, j) + (std::abs(a) * b + a * std::abs(b)) / 2;
            CHECK(once.eps(i, j) == expected);
            if (expected != s.eps(i, j)) ++changed;
          }
        }
      }
    }
    // the formula does move frozen-frozen entries when eps_ik and eps_kj share a sign
    CHECK(changed > 0);
  }
}
