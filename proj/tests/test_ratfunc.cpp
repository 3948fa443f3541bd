#include <doctest.h>

#include "clusterdouble/errors.hpp"
#include "clusterdouble/ratfunc.hpp"
#include "support.hpp"

using namespace clusterdouble;
using testing_support::Field;

TEST_SUITE("ratfunc") {
  TEST_CASE("field operations cancel to canonical forms") {
    const Field F({"x", "y"});
    const auto x = F("x"), y = F("y");

    CHECK(((x + y) / x) * (x / (x + y)) == F.c(1));
    CHECK((x * x - F.c(1)) / (x - F.c(1)) == x + F.c(1));
    CHECK(F.c(1) / x + F.c(1) / y == (x + y) / (x * y));
    CHECK((x * x - F.c(1)) / (x - F.c(1)) == rf_arith(x, F.c(1), ArithOp::Add));
  }

  TEST_CASE("canonical form normalizes content and sign") {
    const Field F({"x", "y"});
    const auto x = F("x"), y = F("y");
    const RationalFunction f = (F.c(2) * x) / (F.c(-4) * y);
    CHECK(f.denominator().leading_coeff() > 0);
    CHECK(f == -(x / (F.c(2) * y)));
    // integer coefficients with joint content 1
    const RationalFunction g = (F.c(1, 2) * x + F.c(1, 3)) / (F.c(5, 6) * y);
    for (const auto& t : g.numerator().terms()) CHECK(t.coeff.get_den() == 1);
    for (const auto& t : g.denominator().terms()) CHECK(t.coeff.get_den() == 1);
    CHECK(g == (F.c(3) * x + F.c(2)) / (F.c(5) * y));
    CHECK(g.denominator().terms().front().coeff == 5);
    CHECK(g.numerator().terms().front().coeff == 3);
  }

  TEST_CASE("arithmetic errors") {
    const Field F({"x", "y"});
    const Field G({"x", "z"});
    CHECK_THROWS_AS(F("x") / F.c(0), DomainError);
    CHECK_THROWS_AS(rf_arith(F("x"), F("x") - F("x"), ArithOp::Div), DomainError);
    CHECK_THROWS_AS(rf_arith(F("x"), G("x"), ArithOp::Add), ArgumentError);
  }

  TEST_CASE("substitution") {
    const Field F({"x", "y"});
    const auto x = F("x"), y = F("y");
    CHECK(rf_substitute(F.c(1) + x, {{"x", F.c(1) / x}, {"y", y}}) == (x + F.c(1)) / x);
    CHECK(rf_substitute(x, {{"x", x}, {"y", y}}) == x);
    CHECK(rf_substitute(x * y, {{"x", (F.c(1) + y) / x}, {"y", y}}) == y * (F.c(1) + y) / x);
    // identically zero denominator after substitution
    CHECK_THROWS_AS(rf_substitute(F.c(1) / (x - y), {{"x", y}, {"y", y}}), DomainError);
    // unassigned variable
    CHECK_THROWS_AS(rf_substitute(x * y, {{"x", x}}), ArgumentError);
  }

  TEST_CASE("evaluation") {
    const Field F({"x", "y"});
    const auto x = F("x"), y = F("y");
    CHECK(rf_eval((x + y) / x, {{"x", make_rational(2)}, {"y", make_rational(2)}}) == 2);
    CHECK_THROWS_AS(rf_eval(F.c(1) / x, {{"x", make_rational(0)}, {"y", make_rational(1)}}), DomainError);
    CHECK(rf_eval((x * x - F.c(1)) / (x - F.c(1)), {{"x", make_rational(1)}, {"y", make_rational(0)}}) == 2);
  }

  TEST_CASE("Laurent detection") {
    const Field F({"x", "y"});
    const auto x = F("x"), y = F("y");
    LaurentReport r = rf_is_laurent((x + F.c(1)) / x);
    CHECK(r.laurent);
    CHECK(r.positive_numerator);
    CHECK_FALSE(rf_is_laurent(F.c(1) / (x + F.c(1))).laurent);
    r = rf_is_laurent((x * x + x * y + y) / (x * y * y));
    CHECK(r.laurent);
    CHECK(r.positive_numerator);
    r = rf_is_laurent((x - F.c(1)) / y);
    CHECK(r.laurent);
    CHECK_FALSE(r.positive_numerator);
  }

  TEST_CASE("polynomial gcd") {
    const VarSet v({"x", "y"});
    const auto x = Polynomial::variable(v, "x"), y = Polynomial::variable(v, "y");
    const auto one = Polynomial::constant(v, make_rational(1));
    const Polynomial g = poly_gcd((x + y) * (x - one) * x, (x + y) * (y + one) * x * x);
    CHECK(g == (x + y) * x);
    CHECK(poly_gcd(Polynomial(v), Polynomial(v)).is_zero());
    CHECK(divide_exact((x + y) * (x - y), x - y) == x + y);
    CHECK_FALSE(divide_exact(x * x + one, x + one).has_value());
  }

  TEST_CASE("property: canonical forms decide equality") {
    const Field F({"x", "y", "z"});
    std::size_t equal_pairs = 0;
    for (std::uint64_t trial = 0; trial < 1000; ++trial) {
      TrialRng rng(11, trial);
      const RationalFunction f = testing_support::random_function(F, rng, 3);
      RationalFunction g;
      if (trial % 2 == 0) {
        // an algebraically equal rewrite
        RationalFunction h = testing_support::random_function(F, rng, 2);
        while (h.is_zero()) h = testing_support::random_function(F, rng, 2);
        g = (f * h + h * h) / h - h;
      } else {
        g = testing_support::random_function(F, rng, 3);
      }
      bool all_agree = true;
      for (int k = 0; k < 5; ++k) {
        auto p = testing_support::random_point(F.vars, rng);
        try {
          all_agree = all_agree && rf_eval(f, p) == rf_eval(g, p);
        } catch (const DomainError&) {
          --k;  // pole: draw another point
        }
      }
      if (f == g) ++equal_pairs;
      CHECK_MESSAGE((f == g) == all_agree, "trial " << trial << ": " << f.to_string() << " vs " << g.to_string());
    }
    CHECK(equal_pairs >= 500);
  }

  TEST_CASE("property: substitution respects composition") {
    const Field F({"x", "y"});
    for (std::uint64_t trial = 0; trial < 200; ++trial) {
      TrialRng rng(12, trial);
      const RationalFunction f = testing_support::random_function(F, rng, 2);
      std::map<std::string, RationalFunction> sigma, tau;
      for (const auto& n : F.vars.names()) {
        sigma[n] = testing_support::random_function(F, rng, 2);
        tau[n] = testing_support::random_function(F, rng, 2);
      }
      try {
        const RationalFunction stepwise = rf_substitute(rf_substitute(f, sigma), tau);
        std::map<std::string, RationalFunction> composite;
        for (const auto& [n, s] : sigma) composite[n] = rf_substitute(s, tau);
        CHECK(stepwise == rf_substitute(f, composite));
      } catch (const DomainError&) {
        // outside the domain of one of the maps
      }
    }
  }

  TEST_CASE("property: evaluation commutes with arithmetic") {
    const Field F({"x", "y", "z"});
    for (std::uint64_t trial = 0; trial < 300; ++trial) {
      TrialRng rng(13, trial);
      const RationalFunction a = testing_support::random_function(F, rng, 2);
      const RationalFunction b = testing_support::random_function(F, rng, 2);
      const auto p = testing_support::random_point(F.vars, rng);
      try {
        const Rational va = rf_eval(a, p), vb = rf_eval(b, p);
        CHECK(rf_eval(a + b, p) == va + vb);
        CHECK(rf_eval(a - b, p) == va - vb);
        CHECK(rf_eval(a * b, p) == va * vb);
        if (vb != 0) CHECK(rf_eval(a / b, p) == va / vb);
      } catch (const DomainError&) {
      }
    }
  }
}
