#include "clusterdouble/verify.hpp"

#include <chrono>
#include <cstdlib>
#include <cstdio>
#include <limits>

#include "clusterdouble/cluster_map.hpp"
#include "clusterdouble/errors.hpp"

namespace clusterdouble {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

TrialRng::TrialRng(std::uint64_t seed, std::uint64_t trial) : engine_(splitmix64(splitmix64(seed) + trial)) {}

std::int64_t TrialRng::uniform(std::int64_t lo, std::int64_t hi) {
  const std::uint64_t range = static_cast<std::uint64_t>(hi - lo) + 1;
  const std::uint64_t limit = range == 0 ? 0 : std::numeric_limits<std::uint64_t>::max() -
                                                   std::numeric_limits<std::uint64_t>::max() % range;
  std::uint64_t x = engine_();
  if (range == 0) return static_cast<std::int64_t>(x);
  while (x >= limit) x = engine_();
  return lo + static_cast<std::int64_t>(x % range);
}

Rational TrialRng::nonzero_rational() {
  std::int64_t p = uniform(-9, 8);
  if (p >= 0) ++p;
  return make_rational(static_cast<long>(p), static_cast<long>(uniform(1, 9)));
}

Rational TrialRng::positive_rational() {
  const auto p = uniform(1, 9);
  return make_rational(static_cast<long>(p), static_cast<long>(uniform(1, 9)));
}

Seed random_seed(TrialRng& rng, std::size_t max_rank, int bound, bool allow_frozen) {
  if (max_rank == 0) throw ArgumentError("rank must be at least 1");
  const auto n = static_cast<std::size_t>(rng.uniform(1, static_cast<std::int64_t>(max_rank)));
  IntMatrix eps(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const int v = static_cast<int>(rng.uniform(-bound, bound));
      eps(i, j) = v;
      eps(j, i) = -v;
    }
  }
  std::vector<std::string> labels;
  std::vector<std::string> frozen;
  for (std::size_t i = 0; i < n; ++i) {
    labels.push_back(std::to_string(i + 1));
    if (allow_frozen && i > 0 && rng.uniform(0, 3) == 0) frozen.push_back(labels.back());
  }
  return Seed(std::move(labels), frozen, std::move(eps));
}

VerificationReport run_trials(const std::string& property, const std::string& input_description, std::size_t trials,
                              std::uint64_t seed, Execution execution, const TrialKernel& kernel) {
  const auto start = std::chrono::steady_clock::now();
  std::vector<TrialOutcome> outcomes(trials);
  parallel_for_index(trials, execution, [&](std::size_t t) {
    TrialRng rng(seed, t);
    try {
      outcomes[t] = kernel(rng, t);
    } catch (const std::exception& e) {
      outcomes[t] = TrialOutcome::fail(std::string("exception: ") + e.what(), Json{{"trial", t}});
    }
  });

  VerificationReport report;
  report.property = property;
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx",
                static_cast<unsigned long long>(
                    fnv1a(property + "\n" + input_description + "\n" + std::to_string(seed))));
  report.fingerprint = hex;
  report.trials = trials;
  for (std::size_t t = 0; t < trials; ++t) {
    auto& o = outcomes[t];
    if (o.status == TrialOutcome::Status::Skip) ++report.skipped;
    if (o.status == TrialOutcome::Status::Fail) report.failures.push_back({t, o.message, std::move(o.counterexample)});
  }
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

// ---------------------------------------------------------------- seed and map identities

namespace {

Json seed_input(const Seed& seed, const std::string& k = {}) {
  Json j{{"seed", to_json(seed)}};
  if (!k.empty()) j["direction"] = k;
  return j;
}

}  // namespace

TrialOutcome check_involutivity(const Seed& seed) {
  for (const auto& k : seed.mutable_labels()) {
    const Seed once = mutate_seed(seed, k);
    if (!once.eps().is_skew_symmetric()) return TrialOutcome::fail("mutation broke skew-symmetry", seed_input(seed, k));
    if (mutate_seed(once, k) != seed) return TrialOutcome::fail("seed mutation is not involutive", seed_input(seed, k));
    for (TorusKind kind : {TorusKind::A, TorusKind::X, TorusKind::D}) {
      const ClusterMap round = compose(mutation(seed, k, kind), mutation(once, k, kind));
      if (round != ClusterMap::identity(torus_vars(seed, kind))) {
        const char* name = kind == TorusKind::A ? "A" : (kind == TorusKind::X ? "X" : "D");
        return TrialOutcome::fail(std::string(name) + "-mutation is not involutive", seed_input(seed, k));
      }
    }
  }
  return TrialOutcome::pass();
}

TrialOutcome check_phi_pi(const Seed& seed) {
  if (compose(phi_map(seed), pi_map(seed)) != p_pair_map(seed)) {
    return TrialOutcome::fail("compose(phi, pi) differs from p x p", seed_input(seed));
  }
  return TrialOutcome::pass();
}

TrialOutcome check_j_diagonal(const Seed& seed) {
  const ClusterMap composite = compose(j_map(seed), pi_map(seed));
  for (const auto& l : seed.mutable_labels()) {
    if (composite.pullback(x1_name(l)) != composite.pullback(x2_name(l))) {
      return TrialOutcome::fail("compose(j, pi) leaves the diagonal at " + l, seed_input(seed));
    }
  }
  return TrialOutcome::pass();
}

TrialOutcome check_iota(const Seed& seed) {
  const ClusterMap iota = iota_map(seed);
  if (compose(iota, iota) != ClusterMap::identity(torus_vars(seed, TorusKind::D))) {
    return TrialOutcome::fail("iota is not an involution", seed_input(seed));
  }
  const ClusterMap pi = pi_map(seed);
  if (compose(iota, pi) != compose(pi, swap_map(seed))) {
    return TrialOutcome::fail("compose(iota, pi) differs from compose(pi, swap)", seed_input(seed));
  }
  return TrialOutcome::pass();
}

TrialOutcome check_naturality(const Seed& seed) {
  for (const auto& k : seed.mutable_labels()) {
    const Seed next = mutate_seed(seed, k);
    const ClusterMap d = d_mutation(seed, k);
    if (compose(d, pi_map(next)) != compose(pi_map(seed), double_x_mutation(seed, k))) {
      return TrialOutcome::fail("pi does not commute with mutation", seed_input(seed, k));
    }
    if (compose(d, iota_map(next)) != compose(iota_map(seed), d)) {
      return TrialOutcome::fail("iota does not commute with mutation", seed_input(seed, k));
    }
    if (compose(double_a_mutation(seed, k), phi_map(next)) != compose(phi_map(seed), d)) {
      return TrialOutcome::fail("phi does not commute with mutation", seed_input(seed, k));
    }
  }
  return TrialOutcome::pass();
}

TrialOutcome check_pentagon(TrialRng& rng) {
  const std::vector<std::string> sequence{"1", "2", "1", "2", "1"};
  Seed seed = type_a_seed(2);
  std::vector<ClusterMap> steps;
  for (const auto& k : sequence) {
    steps.push_back(d_mutation(seed, k));
    seed = mutate_seed(seed, k);
  }
  ClusterMap composite = steps[0];
  for (std::size_t i = 1; i < steps.size(); ++i) composite = compose(composite, steps[i]);

  const auto perm = is_identity_up_to_permutation(composite);
  const VarSet& vars = composite.source_vars();
  const std::vector<std::pair<std::string, std::string>> swapped{
      {b_name("1"), b_name("2")}, {x_name("1"), x_name("2")}, {b_name("2"), b_name("1")}, {x_name("2"), x_name("1")}};
  if (!perm) return TrialOutcome::fail("pentagon composite is not a coordinate permutation", Json::object());
  for (const auto& [target, source] : swapped) {
    if ((*perm)[composite.target_vars().require_index(target)] != vars.require_index(source)) {
      return TrialOutcome::fail("pentagon composite is not the transposition", Json::object());
    }
  }

  std::map<std::string, Rational> point;
  for (const auto& name : vars.names()) point[name] = rng.positive_rational();
  std::map<std::string, Rational> value = point;
  for (const auto& step : steps) value = evaluate(step, value);
  for (const auto& [target, source] : swapped) {
    if (value.at(target) != point.at(source)) {
      Json input = Json::object();
      for (const auto& [name, v] : point) input[name] = format_rational(v);
      return TrialOutcome::fail("stepwise evaluation disagrees with the transposition", input);
    }
  }
  return TrialOutcome::pass();
}

namespace {

void laurent_walk(const Seed& seed, const ClusterMap& current, std::vector<std::string>& path, std::size_t max_length,
                  LaurentSummary& summary) {
  if (path.size() == max_length) return;
  for (const auto& k : seed.mutable_labels()) {
    if (!path.empty() && path.back() == k) continue;
    path.push_back(k);
    const ClusterMap next = compose(current, a_mutation(seed, k));
    ++summary.sequences;
    const LaurentReport r = rf_is_laurent(next.pullback(a_name(k)));
    if (!r.laurent || !r.positive_numerator) {
      std::string p;
      for (const auto& s : path) p += (p.empty() ? "" : ",") + s;
      summary.failures.push_back(p + (r.laurent ? ": negative coefficient" : ": not Laurent"));
    }
    laurent_walk(mutate_seed(seed, k), next, path, max_length, summary);
    path.pop_back();
  }
}

}  // namespace

LaurentSummary check_laurent(const Seed& seed, std::size_t max_length) {
  LaurentSummary summary;
  std::vector<std::string> path;
  laurent_walk(seed, ClusterMap::identity(torus_vars(seed, TorusKind::A)), path, max_length, summary);
  return summary;
}

const std::vector<std::string> kMapProperties{"involutivity", "pentagon", "iota", "phi-pi", "j-diagonal", "naturality"};

VerificationReport verify_map_property(const std::string& property, std::size_t max_rank, std::size_t trials,
                                       std::uint64_t seed, Execution execution) {
  using SeedCheck = TrialOutcome (*)(const Seed&);
  SeedCheck check = nullptr;
  if (property == "involutivity") check = check_involutivity;
  else if (property == "iota") check = check_iota;
  else if (property == "phi-pi") check = check_phi_pi;
  else if (property == "j-diagonal") check = check_j_diagonal;
  else if (property == "naturality") check = check_naturality;
  else if (property != "pentagon") throw ArgumentError("unknown property '" + property + "'");
  if (max_rank == 0) throw ArgumentError("rank must be at least 1");

  const bool frozen = property == "involutivity";
  TrialKernel kernel = [&](TrialRng& rng, std::size_t) {
    if (!check) return check_pentagon(rng);
    return check(random_seed(rng, max_rank, 2, frozen));
  };
  return run_trials(property, "max_rank=" + std::to_string(max_rank), trials, seed, execution, kernel);
}

// ---------------------------------------------------------------- polygon configurations

namespace {

Json double_input(const RandomDouble& r) {
  Json j = Json::object();
  j["B"] = to_json(r.bs);
  j["X"] = to_json(r.xs);
  return j;
}

Rational monomial_value(const Seed& seed, const std::string& row, const EdgeValues& values, bool mutable_only) {
  Rational out(1);
  for (std::size_t j = 0; j < seed.size(); ++j) {
    if (mutable_only && seed.is_frozen(j)) continue;
    const int e = seed.eps(seed.require_index(row), j);
    const Rational& v = values.at(seed.label(j));
    for (int s = 0; s < std::abs(e); ++s) out = e > 0 ? Rational(out * v) : Rational(out / v);
  }
  return out;
}

std::string first_mismatch(const EdgeValues& expected, const EdgeValues& actual) {
  for (const auto& [name, v] : expected) {
    auto it = actual.find(name);
    if (it == actual.end()) return name + " missing";
    if (it->second != v) return name + ": expected " + format_rational(v) + ", got " + format_rational(it->second);
  }
  if (expected.size() != actual.size()) return "unexpected extra coordinates";
  return {};
}

}  // namespace

RandomDouble random_double(const IdealTriangulation& t, TrialRng& rng) {
  RandomDouble r;
  for (const auto& e : t.internal_edges()) {
    r.bs[e] = rng.nonzero_rational();
    r.xs[e] = rng.nonzero_rational();
  }
  try {
    r.config = reconstruct_double(t, r.bs, r.xs);
  } catch (const DomainError&) {
    r.config.reset();
  }
  return r;
}

TrialOutcome check_roundtrip(const IdealTriangulation& t, TrialRng& rng) {
  const RandomDouble r = random_double(t, rng);
  if (!r.config) return TrialOutcome::skip("degenerate draw");
  const DoubleCoordinates c = double_coords(*r.config);
  std::string diff = first_mismatch(r.bs, c.B);
  if (diff.empty()) diff = first_mismatch(r.xs, c.X);
  if (!diff.empty()) return TrialOutcome::fail("round trip changed " + diff, double_input(r));
  return TrialOutcome::pass();
}

TrialOutcome check_rescale(const IdealTriangulation& t, TrialRng& rng) {
  const RandomDouble r = random_double(t, rng);
  if (!r.config) return TrialOutcome::skip("degenerate draw");
  std::map<std::string, Rational> lambdas;
  for (const auto& v : t.vertices()) lambdas[v] = rng.nonzero_rational();
  const DoubleCoordinates before = double_coords(*r.config);
  const DoubleCoordinates after = double_coords(h_rescale(*r.config, lambdas));
  if (before != after) {
    Json input = double_input(r);
    Json l = Json::object();
    for (const auto& [v, x] : lambdas) l[v] = format_rational(x);
    input["lambda"] = std::move(l);
    return TrialOutcome::fail("rescaling changed the coordinates", input);
  }
  return TrialOutcome::pass();
}

TrialOutcome check_p_map(const IdealTriangulation& t, TrialRng& rng) {
  const RandomDouble r = random_double(t, rng);
  if (!r.config) return TrialOutcome::skip("degenerate draw");
  const Seed seed = m_triangulation_seed(t, 2);
  const EdgeValues as = a_coords(r.config->front());
  for (const auto& [e, x] : x_coords(r.config->front().framed())) {
    if (monomial_value(seed, e, as, false) != x) {
      return TrialOutcome::fail("X differs from the A-monomial at " + e, double_input(r));
    }
  }
  return TrialOutcome::pass();
}

TrialOutcome check_mirror(const IdealTriangulation& t, TrialRng& rng) {
  const RandomDouble r = random_double(t, rng);
  if (!r.config) return TrialOutcome::skip("degenerate draw");
  const Seed seed = m_triangulation_seed(t, 2);
  const DoubleCoordinates c = double_coords(*r.config);
  EdgeValues expected;
  for (const auto& [e, x] : c.X) expected[e] = x * monomial_value(seed, e, c.B, true);
  const std::string diff = first_mismatch(expected, mirror_x_coords(*r.config));
  if (!diff.empty()) return TrialOutcome::fail("mirror X " + diff, double_input(r));
  return TrialOutcome::pass();
}

namespace {

std::map<std::string, Rational> named(const EdgeValues& values, std::string (*name)(std::string_view)) {
  std::map<std::string, Rational> out;
  for (const auto& [e, v] : values) out[name(e)] = v;
  return out;
}

}  // namespace

TrialOutcome check_flip_naturality(const IdealTriangulation& t, TrialRng& rng) {
  const RandomDouble r = random_double(t, rng);
  if (!r.config) return TrialOutcome::skip("degenerate draw");
  const Seed seed = m_triangulation_seed(t, 2);
  const DoubleCoordinates before = double_coords(*r.config);
  const EdgeValues a_before = a_coords(r.config->front());
  std::size_t checked = 0;
  for (const auto& e : t.internal_edges()) {
    const FlipResult f = flip(t, e);
    std::map<std::string, Rational> d_value, x_value, a_value;
    DoubleCoordinates after;
    EdgeValues a_after;
    try {
      const DoubleConfig flipped = retriangulate(*r.config, f.triangulation);
      after = double_coords(flipped);
      a_after = a_coords(flipped.front());
      auto d_point = named(before.B, b_name);
      d_point.merge(named(before.X, x_name));
      d_value = evaluate(d_mutation(seed, e), d_point);
      x_value = evaluate(x_mutation(seed, e), named(before.X, x_name));
      a_value = evaluate(a_mutation(seed, e), named(a_before, a_name));
    } catch (const DomainError&) {
      continue;
    }
    ++checked;
    Json input = double_input(r);
    input["edge"] = e;
    for (const auto& l : seed.indices()) {
      const std::string& renamed = f.correspondence.at(l);
      if (a_value.at(a_name(l)) != a_after.at(renamed)) {
        return TrialOutcome::fail("A-coordinate " + l + " does not follow the A-mutation", input);
      }
      if (seed.is_frozen(seed.require_index(l))) continue;
      if (x_value.at(x_name(l)) != after.X.at(renamed) || d_value.at(x_name(l)) != after.X.at(renamed)) {
        return TrialOutcome::fail("X-coordinate " + l + " does not follow the mutation", input);
      }
      if (d_value.at(b_name(l)) != after.B.at(renamed)) {
        return TrialOutcome::fail("B-coordinate " + l + " does not follow the D-mutation", input);
      }
    }
  }
  if (checked == 0 && !t.internal_edges().empty()) return TrialOutcome::skip("every flip degenerate");
  return TrialOutcome::pass();
}

const std::vector<std::string> kPolygonProperties{"roundtrip", "rescale", "p-map", "mirror", "flip-naturality"};

VerificationReport verify_polygon_property(const std::string& property, const IdealTriangulation& t,
                                           std::size_t trials, std::uint64_t seed, Execution execution) {
  using PolygonCheck = TrialOutcome (*)(const IdealTriangulation&, TrialRng&);
  PolygonCheck check = nullptr;
  if (property == "roundtrip") check = check_roundtrip;
  else if (property == "rescale") check = check_rescale;
  else if (property == "p-map") check = check_p_map;
  else if (property == "mirror") check = check_mirror;
  else if (property == "flip-naturality") check = check_flip_naturality;
  else throw ArgumentError("unknown property '" + property + "'");
  require_polygon(t);
  return run_trials(property, to_json(t).dump(), trials, seed, execution,
                    [&](TrialRng& rng, std::size_t) { return check(t, rng); });
}

}  // namespace clusterdouble
