#include "clusterdouble/seed.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>

#include "clusterdouble/errors.hpp"

namespace clusterdouble {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<int>> rows) : n_(rows.size()) {
  data_.reserve(n_ * n_);
  for (const auto& row : rows) {
    if (row.size() != n_) throw ArgumentError("exchange matrix is not square");
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<int>>& rows) {
  IntMatrix m(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size()) throw ArgumentError("exchange matrix is not square");
    for (std::size_t j = 0; j < rows.size(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

std::vector<std::vector<int>> IntMatrix::rows() const {
  std::vector<std::vector<int>> out(n_, std::vector<int>(n_));
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) out[i][j] = (*this)(i, j);
  }
  return out;
}

bool IntMatrix::is_skew_symmetric() const {
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = i; j < n_; ++j) {
      if ((*this)(i, j) != -(*this)(j, i)) return false;
    }
  }
  return true;
}

Seed::Seed(std::vector<std::string> indices, const std::vector<std::string>& frozen, IntMatrix eps)
    : indices_(std::move(indices)), frozen_(indices_.size(), false), eps_(std::move(eps)) {
  for (std::size_t i = 0; i < indices_.size(); ++i) {
    if (!position_.emplace(indices_[i], i).second) {
      throw ArgumentError("duplicate index label '" + indices_[i] + "'");
    }
  }
  for (const auto& f : frozen) {
    auto it = position_.find(f);
    if (it == position_.end()) throw ArgumentError("frozen label '" + f + "' is not an index");
    frozen_[it->second] = true;
  }
  if (eps_.size() != indices_.size()) throw ArgumentError("exchange matrix size does not match indices");
  if (!eps_.is_skew_symmetric()) throw ArgumentError("exchange matrix is not skew-symmetric");
}

std::optional<std::size_t> Seed::index_of(std::string_view label) const {
  auto it = position_.find(std::string(label));
  if (it == position_.end()) return std::nullopt;
  return it->second;
}

std::size_t Seed::require_index(std::string_view label) const {
  if (auto i = index_of(label)) return *i;
  throw ArgumentError("unknown index '" + std::string(label) + "'");
}

bool Seed::has_frozen() const { return std::find(frozen_.begin(), frozen_.end(), true) != frozen_.end(); }

std::vector<std::string> Seed::frozen_labels() const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < size(); ++i) {
    if (frozen_[i]) out.push_back(indices_[i]);
  }
  return out;
}

std::vector<std::string> Seed::mutable_labels() const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < size(); ++i) {
    if (!frozen_[i]) out.push_back(indices_[i]);
  }
  return out;
}

std::vector<std::size_t> Seed::mutable_positions() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < size(); ++i) {
    if (!frozen_[i]) out.push_back(i);
  }
  return out;
}

int Seed::eps(std::string_view i, std::string_view j) const { return eps_(require_index(i), require_index(j)); }

namespace {

IntMatrix mutate_matrix(const IntMatrix& eps, std::size_t k) {
  const std::size_t n = eps.size();
  IntMatrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == k || j == k) {
        out(i, j) = -eps(i, j);
        continue;
      }
      const int twice = std::abs(eps(i, k)) * eps(k, j) + eps(i, k) * std::abs(eps(k, j));
      // both summands have the sign pattern of eps(i,k)*eps(k,j), so the sum is even
      if (twice % 2 != 0) throw Error("odd correction term in matrix mutation");
      out(i, j) = eps(i, j) + twice / 2;
    }
  }
  return out;
}

}  // namespace

Seed mutate_seed(const Seed& seed, std::string_view k) {
  const std::size_t pos = seed.require_index(k);
  if (seed.is_frozen(pos)) throw ArgumentError("cannot mutate at frozen index '" + std::string(k) + "'");
  return Seed(seed.indices(), seed.frozen_labels(), mutate_matrix(seed.eps(), pos));
}

Seed apply_mutation_sequence(const Seed& seed, std::span<const std::string> ks) {
  Seed current = seed;
  for (const auto& k : ks) current = mutate_seed(current, k);
  return current;
}

// ---------------------------------------------------------------- canonical forms

namespace {

// Depth-first search over block-preserving permutations, pruning any prefix
// whose lower-triangle key already exceeds the best complete key.
class Canonicalizer {
 public:
  Canonicalizer(const IntMatrix& eps, std::vector<bool> frozen)
      : eps_(eps), frozen_(std::move(frozen)), n_(eps.size()) {
    for (std::size_t i = 0; i < n_; ++i) (frozen_[i] ? frozen_list_ : mutable_list_).push_back(i);
    used_.assign(n_, false);
    perm_.reserve(n_);
  }

  CanonicalSeed run() {
    search();
    CanonicalSeed out;
    out.mutable_count = mutable_list_.size();
    out.eps = IntMatrix(n_);
    for (std::size_t a = 0; a < n_; ++a) {
      for (std::size_t b = 0; b < n_; ++b) out.eps(a, b) = eps_(best_perm_[a], best_perm_[b]);
    }
    return out;
  }

 private:
  // Lexicographic comparison of the current key prefix against the same
  // prefix of the best complete key: negative, zero or positive.
  int compare_prefix() const {
    for (std::size_t t = 0; t < key_.size(); ++t) {
      if (key_[t] != best_key_[t]) return key_[t] < best_key_[t] ? -1 : 1;
    }
    return 0;
  }

  void search() {
    const std::size_t depth = perm_.size();
    if (depth == n_) {
      if (!have_best_ || compare_prefix() < 0) {
        best_perm_ = perm_;
        best_key_ = key_;
        have_best_ = true;
      }
      return;
    }
    const auto& candidates = depth < mutable_list_.size() ? mutable_list_ : frozen_list_;
    const std::size_t key_start = key_.size();
    for (std::size_t c : candidates) {
      if (used_[c]) continue;
      // the new row fragment eps[c][perm_0..perm_{depth-1}]
      for (std::size_t t = 0; t < depth; ++t) key_.push_back(eps_(c, perm_[t]));
      if (!have_best_ || compare_prefix() <= 0) {
        used_[c] = true;
        perm_.push_back(c);
        search();
        perm_.pop_back();
        used_[c] = false;
      }
      key_.resize(key_start);
    }
  }

  const IntMatrix& eps_;
  std::vector<bool> frozen_;
  std::size_t n_;
  std::vector<std::size_t> mutable_list_;
  std::vector<std::size_t> frozen_list_;
  std::vector<bool> used_;
  std::vector<std::size_t> perm_;
  std::vector<int> key_;
  std::vector<std::size_t> best_perm_;
  std::vector<int> best_key_;
  bool have_best_ = false;
};

CanonicalSeed canonicalize(const IntMatrix& eps, const std::vector<bool>& frozen) {
  return Canonicalizer(eps, frozen).run();
}

std::vector<bool> canonical_frozen_mask(const CanonicalSeed& c) {
  std::vector<bool> mask(c.eps.size(), false);
  for (std::size_t i = c.mutable_count; i < mask.size(); ++i) mask[i] = true;
  return mask;
}

}  // namespace

CanonicalSeed canonical_form(const Seed& seed) {
  std::vector<bool> frozen(seed.size());
  for (std::size_t i = 0; i < seed.size(); ++i) frozen[i] = seed.is_frozen(i);
  return canonicalize(seed.eps(), frozen);
}

MutationClassGraph enumerate_mutation_class(const Seed& seed, std::size_t max_nodes, Execution execution) {
  if (max_nodes == 0) throw ArgumentError("max_nodes must be at least 1");
  MutationClassGraph graph;
  std::map<std::vector<int>, std::size_t> seen;
  graph.nodes.push_back(canonical_form(seed));
  seen.emplace(graph.nodes[0].eps.data(), 0);

  std::size_t level_begin = 0;
  while (level_begin < graph.nodes.size()) {
    const std::size_t level_end = graph.nodes.size();
    struct Task {
      std::size_t node;
      std::size_t direction;
    };
    std::vector<Task> tasks;
    for (std::size_t v = level_begin; v < level_end; ++v) {
      for (std::size_t k = 0; k < graph.nodes[v].mutable_count; ++k) tasks.push_back({v, k});
    }
    std::vector<CanonicalSeed> results(tasks.size());
    parallel_for_index(tasks.size(), execution, [&](std::size_t t) {
      const CanonicalSeed& node = graph.nodes[tasks[t].node];
      results[t] = canonicalize(mutate_matrix(node.eps, tasks[t].direction), canonical_frozen_mask(node));
    });
    for (std::size_t t = 0; t < tasks.size(); ++t) {
      auto it = seen.find(results[t].eps.data());
      std::size_t target = 0;
      if (it != seen.end()) {
        target = it->second;
      } else if (graph.nodes.size() < max_nodes) {
        target = graph.nodes.size();
        seen.emplace(results[t].eps.data(), target);
        graph.nodes.push_back(std::move(results[t]));
      } else {
        graph.truncated = true;
        continue;
      }
      graph.edges.push_back({tasks[t].node, tasks[t].direction, target});
    }
    level_begin = level_end;
  }
  return graph;
}

Seed type_a_seed(std::size_t rank) {
  std::vector<std::string> labels;
  IntMatrix eps(rank);
  for (std::size_t i = 0; i < rank; ++i) {
    labels.push_back(std::to_string(i + 1));
    if (i + 1 < rank) {
      eps(i, i + 1) = 1;
      eps(i + 1, i) = -1;
    }
  }
  return Seed(std::move(labels), {}, std::move(eps));
}

}  // namespace clusterdouble
