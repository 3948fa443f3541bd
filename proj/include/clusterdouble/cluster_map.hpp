#pragma once

// Cluster transformations and the structural maps between the A-, X- and
// D-tori of a seed, stored as pullbacks: one rational function of the source
// coordinates per target coordinate.
//
// Coordinate names:
//   A-torus    A_i  (i in I)
//   X-torus    X_j  (j in J)
//   D-torus    B_j, X_j  (j in J, interleaved)
//   A x A      A_i (i in I), then Ao_i (second factor)
//   X x X      X1_j (first factor), then X2_j (second factor)
//
// Mutation never renames indices, so the tori of s and mu_k(s) share names.

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "clusterdouble/ratfunc.hpp"
#include "clusterdouble/seed.hpp"

namespace clusterdouble {

enum class TorusKind { A, X, D };

// Frozen-index handling for phi, pi, iota, j. Strict rejects seeds with
// frozen indices. Permissive sets B_i = 1 and Ao_i = A_i on frozen indices;
// the second A-factor then carries Ao_j for j in J only.
enum class StructureMode { Strict, Permissive };

std::string a_name(std::string_view label);
std::string ao_name(std::string_view label);
std::string x_name(std::string_view label);
std::string b_name(std::string_view label);
std::string x1_name(std::string_view label);
std::string x2_name(std::string_view label);

VarSet torus_vars(const Seed& seed, TorusKind kind);
VarSet double_a_vars(const Seed& seed, StructureMode mode);
VarSet double_x_vars(const Seed& seed);

class ClusterMap {
 public:
  ClusterMap() = default;
  // Throws ArgumentError unless there is exactly one nonzero pullback per
  // target coordinate, each over `source`.
  ClusterMap(VarSet source, VarSet target, std::vector<RationalFunction> pullback);

  static ClusterMap identity(const VarSet& vars);

  const VarSet& source_vars() const { return source_; }
  const VarSet& target_vars() const { return target_; }
  const std::vector<RationalFunction>& pullbacks() const { return pullback_; }
  const RationalFunction& pullback(std::size_t target_index) const { return pullback_.at(target_index); }
  const RationalFunction& pullback(std::string_view target_name) const;

  const std::optional<Seed>& source_seed() const { return source_seed_; }
  const std::optional<Seed>& target_seed() const { return target_seed_; }
  ClusterMap& annotate(std::optional<Seed> source_seed, std::optional<Seed> target_seed);

  // Seeds are annotations and do not take part in equality.
  friend bool operator==(const ClusterMap& a, const ClusterMap& b) {
    return a.source_ == b.source_ && a.target_ == b.target_ && a.pullback_ == b.pullback_;
  }

 private:
  VarSet source_;
  VarSet target_;
  std::vector<RationalFunction> pullback_;
  std::optional<Seed> source_seed_;
  std::optional<Seed> target_seed_;
};

// The map "f, then g". Requires g.source_vars() == f.target_vars(); the
// pullback of each target coordinate c of g is g*(c) with f's pullbacks
// substituted. Throws DomainError when a substitution hits a pole.
ClusterMap compose(const ClusterMap& f, const ClusterMap& g);

// f x g on disjoint coordinate sets.
ClusterMap product(const ClusterMap& f, const ClusterMap& g);

// Renames source and target coordinates.
ClusterMap rename(const ClusterMap& f, const std::function<std::string(const std::string&)>& renamer);

std::map<std::string, Rational> evaluate(const ClusterMap& f, const std::map<std::string, Rational>& point);

// perm[t] is the source index that target coordinate t is pulled back to,
// when every pullback is a bare coordinate and the assignment is bijective.
std::optional<std::vector<std::size_t>> is_identity_up_to_permutation(const ClusterMap& f);

// Mutation pullbacks from the torus of mu_k(s) to the torus of s.
ClusterMap a_mutation(const Seed& seed, std::string_view k);
ClusterMap x_mutation(const Seed& seed, std::string_view k);
ClusterMap d_mutation(const Seed& seed, std::string_view k);
ClusterMap mutation(const Seed& seed, std::string_view k, TorusKind kind);
// Mutation acting on both factors of A x A and of X x X.
ClusterMap double_a_mutation(const Seed& seed, std::string_view k, StructureMode mode = StructureMode::Strict);
ClusterMap double_x_mutation(const Seed& seed, std::string_view k);

// p : A -> X, X_i -> prod_{j in I} A_j^eps_ij.
ClusterMap p_map(const Seed& seed);
// p x p : A x A -> X x X.
ClusterMap p_pair_map(const Seed& seed, StructureMode mode = StructureMode::Strict);
// phi : A x A -> D.
ClusterMap phi_map(const Seed& seed, StructureMode mode = StructureMode::Strict);
// pi : D -> X x X.
ClusterMap pi_map(const Seed& seed, StructureMode mode = StructureMode::Strict);
// iota : D -> D.
ClusterMap iota_map(const Seed& seed, StructureMode mode = StructureMode::Strict);
// j : X -> D, the locus B = 1.
ClusterMap j_map(const Seed& seed, StructureMode mode = StructureMode::Strict);
// Exchange of the two factors of X x X.
ClusterMap swap_map(const Seed& seed);

}  // namespace clusterdouble
