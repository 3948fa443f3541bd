#pragma once

#include <map>
#include <string>

#include "clusterdouble/ratfunc.hpp"
#include "clusterdouble/verify.hpp"

namespace testing_support {

using namespace clusterdouble;

// Functions over a fixed VarSet, for writing expressions in tests.
struct Field {
  VarSet vars;

  explicit Field(std::vector<std::string> names) : vars(std::move(names)) {}
  RationalFunction operator()(std::string_view name) const { return RationalFunction::variable(vars, name); }
  RationalFunction c(long num, long den = 1) const { return RationalFunction::constant(vars, make_rational(num, den)); }
};

inline std::map<std::string, Rational> random_point(const VarSet& vars, TrialRng& rng) {
  std::map<std::string, Rational> p;
  for (const auto& n : vars.names()) p[n] = rng.nonzero_rational();
  return p;
}

// Random function built from a few field operations on the variables and
// small constants. Division by a zero function is avoided by retrying.
inline RationalFunction random_function(const Field& f, TrialRng& rng, int depth) {
  if (depth == 0 || rng.uniform(0, 3) == 0) {
    if (rng.uniform(0, 2) == 0) return RationalFunction::constant(f.vars, rng.nonzero_rational());
    return f(f.vars.name(static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(f.vars.size()) - 1))));
  }
  const RationalFunction a = random_function(f, rng, depth - 1);
  RationalFunction b = random_function(f, rng, depth - 1);
  switch (rng.uniform(0, 3)) {
    case 0:
      return a + b;
    case 1:
      return a - b;
    case 2:
      return a * b;
    default:
      while (b.is_zero()) b = random_function(f, rng, depth - 1);
      return a / b;
  }
}

}  // namespace testing_support
