#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "clusterdouble/parallel.hpp"

namespace clusterdouble {

// Square integer matrix, row-major.
class IntMatrix {
 public:
  IntMatrix() = default;
  explicit IntMatrix(std::size_t n) : n_(n), data_(n * n, 0) {}
  IntMatrix(std::initializer_list<std::initializer_list<int>> rows);
  static IntMatrix from_rows(const std::vector<std::vector<int>>& rows);

  std::size_t size() const { return n_; }
  int operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
  int& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  std::vector<std::vector<int>> rows() const;
  const std::vector<int>& data() const { return data_; }
  bool is_skew_symmetric() const;

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<int> data_;
};

// A seed (I, J, eps): labelled indices, the frozen subset I - J, and a
// skew-symmetric exchange matrix whose rows and columns follow index order.
class Seed {
 public:
  Seed() = default;
  // Throws ArgumentError on duplicate labels, unknown frozen labels, a
  // non-square or non-skew-symmetric matrix.
  Seed(std::vector<std::string> indices, const std::vector<std::string>& frozen, IntMatrix eps);

  std::size_t size() const { return indices_.size(); }
  const std::vector<std::string>& indices() const { return indices_; }
  const std::string& label(std::size_t i) const { return indices_.at(i); }
  std::optional<std::size_t> index_of(std::string_view label) const;
  std::size_t require_index(std::string_view label) const;

  bool is_frozen(std::size_t i) const { return frozen_.at(i); }
  bool has_frozen() const;
  std::vector<std::string> frozen_labels() const;
  // The set J, in index order.
  std::vector<std::string> mutable_labels() const;
  std::vector<std::size_t> mutable_positions() const;

  const IntMatrix& eps() const { return eps_; }
  int eps(std::size_t i, std::size_t j) const { return eps_(i, j); }
  int eps(std::string_view i, std::string_view j) const;

  friend bool operator==(const Seed& a, const Seed& b) {
    return a.indices_ == b.indices_ && a.frozen_ == b.frozen_ && a.eps_ == b.eps_;
  }

 private:
  std::vector<std::string> indices_;
  std::vector<bool> frozen_;
  IntMatrix eps_;
  std::unordered_map<std::string, std::size_t> position_;
};

// Matrix mutation in direction k. Throws ArgumentError if k is unknown or
// frozen.
Seed mutate_seed(const Seed& seed, std::string_view k);
Seed apply_mutation_sequence(const Seed& seed, std::span<const std::string> ks);

// Isomorphism class representative: mutable indices first, then frozen; the
// lexicographically least matrix over all permutations preserving that split,
// where matrices are compared by their strict lower triangle read row by row
// (which determines a skew-symmetric matrix).
struct CanonicalSeed {
  std::size_t mutable_count = 0;
  IntMatrix eps;

  friend bool operator==(const CanonicalSeed&, const CanonicalSeed&) = default;
};

CanonicalSeed canonical_form(const Seed& seed);

struct MutationClassGraph {
  struct Edge {
    std::size_t from;
    std::size_t direction;  // mutable position within nodes[from]
    std::size_t to;
  };
  std::vector<CanonicalSeed> nodes;  // breadth-first discovery order
  std::vector<Edge> edges;
  bool truncated = false;
};

// Breadth-first exploration of the mutation class up to isomorphism. Node
// order is deterministic and independent of `execution`.
MutationClassGraph enumerate_mutation_class(const Seed& seed, std::size_t max_nodes,
                                            Execution execution = Execution::Parallel);

// Named seeds used throughout tests and the CLI.
Seed type_a_seed(std::size_t rank);  // linearly oriented A_n quiver, labels "1".."n"

}  // namespace clusterdouble
