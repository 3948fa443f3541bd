#pragma once

// Randomized and exhaustive checks of the identities relating seeds, cluster
// maps, triangulations and flag configurations, plus the trial runner that
// executes them serially or in parallel with identical, index-ordered output.
//
// Pseudo-random inputs come from TrialRng: trial t of a run with seed S uses
// std::mt19937_64 seeded with splitmix64(splitmix64(S) + t). Bounded integers
// are drawn by rejection sampling, so the sequence does not depend on the
// standard library's distribution implementations.

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "clusterdouble/flagconfig.hpp"
#include "clusterdouble/parallel.hpp"
#include "clusterdouble/seed.hpp"
#include "clusterdouble/serialize.hpp"
#include "clusterdouble/surface.hpp"

namespace clusterdouble {

std::uint64_t splitmix64(std::uint64_t x);
// 64-bit FNV-1a.
std::uint64_t fnv1a(const std::string& text);

class TrialRng {
 public:
  TrialRng(std::uint64_t seed, std::uint64_t trial);

  std::uint64_t next() { return engine_(); }
  // Uniform on [lo, hi].
  std::int64_t uniform(std::int64_t lo, std::int64_t hi);
  // p/q with p in [-9, 9] minus 0 and q in [1, 9].
  Rational nonzero_rational();
  // p/q with p, q in [1, 9].
  Rational positive_rational();

 private:
  std::mt19937_64 engine_;
};

// Seed with labels "1".."n", n uniform in [1, max_rank], upper-triangle
// entries uniform in [-bound, bound]. With allow_frozen, each index except
// the first is frozen with probability 1/4.
Seed random_seed(TrialRng& rng, std::size_t max_rank, int bound, bool allow_frozen);

struct TrialOutcome {
  enum class Status { Pass, Skip, Fail };
  Status status = Status::Pass;
  std::string message;
  Json counterexample;

  static TrialOutcome pass() { return {}; }
  static TrialOutcome skip(std::string why) { return {Status::Skip, std::move(why), {}}; }
  static TrialOutcome fail(std::string why, Json input) { return {Status::Fail, std::move(why), std::move(input)}; }
};

struct TrialFailure {
  std::size_t trial = 0;
  std::string message;
  Json counterexample;
};

struct VerificationReport {
  std::string property;
  std::string fingerprint;  // 16 hex digits identifying the inputs
  std::size_t trials = 0;
  std::size_t skipped = 0;
  std::vector<TrialFailure> failures;
  double seconds = 0.0;

  bool passed() const { return failures.empty(); }
};

using TrialKernel = std::function<TrialOutcome(TrialRng&, std::size_t trial)>;

// Runs kernel(rng_t, t) for t in [0, trials). A kernel that throws counts as
// a failure. Failures are listed in trial order.
VerificationReport run_trials(const std::string& property, const std::string& input_description, std::size_t trials,
                              std::uint64_t seed, Execution execution, const TrialKernel& kernel);

// ---------------------------------------------------------------- seed and map identities

// mu_k(mu_k(s)) = s and the A, X and D mutation maps compose to the identity,
// for every mutable k.
TrialOutcome check_involutivity(const Seed& seed);
// compose(phi, pi) = p x p.
TrialOutcome check_phi_pi(const Seed& seed);
// compose(j, pi) lands in the diagonal.
TrialOutcome check_j_diagonal(const Seed& seed);
// iota o iota = id and compose(iota, pi) = compose(pi, swap).
TrialOutcome check_iota(const Seed& seed);
// phi, pi and iota commute with one mutation step, for every k.
TrialOutcome check_naturality(const Seed& seed);
// Five alternating D-mutations of the A2 seed compose to the transposition,
// and stepwise numerical evaluation at a random point agrees.
TrialOutcome check_pentagon(TrialRng& rng);

struct LaurentSummary {
  std::size_t sequences = 0;
  std::vector<std::string> failures;  // "k1,k2,...: reason"
};
// Every A-coordinate reached by at most max_length mutations (no immediate
// repeats) is a Laurent polynomial with positive coefficients.
LaurentSummary check_laurent(const Seed& seed, std::size_t max_length);

extern const std::vector<std::string> kMapProperties;  // names accepted by verify_map_property

// Draws a seed per trial (no frozen indices except for involutivity) and runs
// the named check. "pentagon" ignores max_rank.
VerificationReport verify_map_property(const std::string& property, std::size_t max_rank, std::size_t trials,
                                       std::uint64_t seed, Execution execution = Execution::Parallel);

// ---------------------------------------------------------------- polygon configurations

// Random DoubleConfig with nonzero B, X drawn from rng; nullopt when the draw
// is degenerate.
struct RandomDouble {
  EdgeValues bs;
  EdgeValues xs;
  std::optional<DoubleConfig> config;
};
RandomDouble random_double(const IdealTriangulation& t, TrialRng& rng);

TrialOutcome check_roundtrip(const IdealTriangulation& t, TrialRng& rng);
TrialOutcome check_rescale(const IdealTriangulation& t, TrialRng& rng);
TrialOutcome check_p_map(const IdealTriangulation& t, TrialRng& rng);
TrialOutcome check_mirror(const IdealTriangulation& t, TrialRng& rng);
// Coordinates after each regular flip match the D-, X- and A-mutation
// pullbacks evaluated at the coordinates before it.
TrialOutcome check_flip_naturality(const IdealTriangulation& t, TrialRng& rng);

extern const std::vector<std::string> kPolygonProperties;

VerificationReport verify_polygon_property(const std::string& property, const IdealTriangulation& t,
                                           std::size_t trials, std::uint64_t seed,
                                           Execution execution = Execution::Parallel);

}  // namespace clusterdouble
