#include "clusterdouble/cluster_map.hpp"

#include "clusterdouble/errors.hpp"

namespace clusterdouble {

std::string a_name(std::string_view label) { return "A_" + std::string(label); }
std::string ao_name(std::string_view label) { return "Ao_" + std::string(label); }
std::string x_name(std::string_view label) { return "X_" + std::string(label); }
std::string b_name(std::string_view label) { return "B_" + std::string(label); }
std::string x1_name(std::string_view label) { return "X1_" + std::string(label); }
std::string x2_name(std::string_view label) { return "X2_" + std::string(label); }

VarSet torus_vars(const Seed& seed, TorusKind kind) {
  std::vector<std::string> names;
  switch (kind) {
    case TorusKind::A:
      for (const auto& l : seed.indices()) names.push_back(a_name(l));
      break;
    case TorusKind::X:
      for (const auto& l : seed.mutable_labels()) names.push_back(x_name(l));
      break;
    case TorusKind::D:
      for (const auto& l : seed.mutable_labels()) {
        names.push_back(b_name(l));
        names.push_back(x_name(l));
      }
      break;
  }
  return VarSet(std::move(names));
}

namespace {

void require_structure_mode(const Seed& seed, StructureMode mode) {
  if (mode == StructureMode::Strict && seed.has_frozen()) {
    throw ArgumentError("structural maps need a seed without frozen indices (strict mode)");
  }
}

}  // namespace

VarSet double_a_vars(const Seed& seed, StructureMode mode) {
  require_structure_mode(seed, mode);
  std::vector<std::string> names;
  for (const auto& l : seed.indices()) names.push_back(a_name(l));
  for (const auto& l : seed.mutable_labels()) names.push_back(ao_name(l));
  return VarSet(std::move(names));
}

VarSet double_x_vars(const Seed& seed) {
  std::vector<std::string> names;
  for (const auto& l : seed.mutable_labels()) names.push_back(x1_name(l));
  for (const auto& l : seed.mutable_labels()) names.push_back(x2_name(l));
  return VarSet(std::move(names));
}

// ---------------------------------------------------------------- ClusterMap

ClusterMap::ClusterMap(VarSet source, VarSet target, std::vector<RationalFunction> pullback)
    : source_(std::move(source)), target_(std::move(target)), pullback_(std::move(pullback)) {
  if (pullback_.size() != target_.size()) {
    throw ArgumentError("cluster map needs exactly one pullback per target coordinate");
  }
  for (std::size_t i = 0; i < pullback_.size(); ++i) {
    if (!(pullback_[i].vars() == source_)) {
      throw ArgumentError("pullback of '" + target_.name(i) + "' is not over the source coordinates");
    }
    if (pullback_[i].is_zero()) throw ArgumentError("pullback of '" + target_.name(i) + "' is zero");
  }
}

ClusterMap ClusterMap::identity(const VarSet& vars) {
  std::vector<RationalFunction> pullback;
  pullback.reserve(vars.size());
  for (const auto& name : vars.names()) pullback.push_back(RationalFunction::variable(vars, name));
  return ClusterMap(vars, vars, std::move(pullback));
}

const RationalFunction& ClusterMap::pullback(std::string_view target_name) const {
  return pullback_[target_.require_index(target_name)];
}

ClusterMap& ClusterMap::annotate(std::optional<Seed> source_seed, std::optional<Seed> target_seed) {
  source_seed_ = std::move(source_seed);
  target_seed_ = std::move(target_seed);
  return *this;
}

ClusterMap compose(const ClusterMap& f, const ClusterMap& g) {
  if (!(g.source_vars() == f.target_vars())) {
    throw ArgumentError("compose: second map's source is not the first map's target");
  }
  std::vector<RationalFunction> pullback;
  pullback.reserve(g.target_vars().size());
  for (const auto& h : g.pullbacks()) pullback.push_back(rf_substitute(h, f.pullbacks(), f.source_vars()));
  ClusterMap out(f.source_vars(), g.target_vars(), std::move(pullback));
  out.annotate(f.source_seed(), g.target_seed());
  return out;
}

ClusterMap product(const ClusterMap& f, const ClusterMap& g) {
  std::vector<std::string> source = f.source_vars().names();
  source.insert(source.end(), g.source_vars().names().begin(), g.source_vars().names().end());
  std::vector<std::string> target = f.target_vars().names();
  target.insert(target.end(), g.target_vars().names().begin(), g.target_vars().names().end());
  VarSet source_vars(std::move(source));
  VarSet target_vars(std::move(target));

  std::vector<std::size_t> first(f.source_vars().size());
  std::vector<std::size_t> second(g.source_vars().size());
  for (std::size_t i = 0; i < first.size(); ++i) first[i] = i;
  for (std::size_t i = 0; i < second.size(); ++i) second[i] = first.size() + i;

  std::vector<RationalFunction> pullback;
  for (const auto& h : f.pullbacks()) pullback.push_back(h.remapped(source_vars, first));
  for (const auto& h : g.pullbacks()) pullback.push_back(h.remapped(source_vars, second));
  return ClusterMap(std::move(source_vars), std::move(target_vars), std::move(pullback));
}

ClusterMap rename(const ClusterMap& f, const std::function<std::string(const std::string&)>& renamer) {
  std::vector<std::string> source;
  for (const auto& n : f.source_vars().names()) source.push_back(renamer(n));
  std::vector<std::string> target;
  for (const auto& n : f.target_vars().names()) target.push_back(renamer(n));
  VarSet source_vars(std::move(source));
  std::vector<std::size_t> same(source_vars.size());
  for (std::size_t i = 0; i < same.size(); ++i) same[i] = i;
  std::vector<RationalFunction> pullback;
  for (const auto& h : f.pullbacks()) pullback.push_back(h.remapped(source_vars, same));
  return ClusterMap(std::move(source_vars), VarSet(std::move(target)), std::move(pullback));
}

std::map<std::string, Rational> evaluate(const ClusterMap& f, const std::map<std::string, Rational>& point) {
  std::vector<Rational> values;
  for (const auto& name : f.source_vars().names()) {
    auto it = point.find(name);
    if (it == point.end()) throw ArgumentError("coordinate '" + name + "' has no value");
    values.push_back(it->second);
  }
  std::map<std::string, Rational> out;
  for (std::size_t i = 0; i < f.target_vars().size(); ++i) {
    out.emplace(f.target_vars().name(i), rf_eval(f.pullback(i), values));
  }
  return out;
}

std::optional<std::vector<std::size_t>> is_identity_up_to_permutation(const ClusterMap& f) {
  if (f.source_vars().size() != f.target_vars().size()) return std::nullopt;
  std::vector<std::size_t> perm;
  std::vector<bool> hit(f.source_vars().size(), false);
  for (const auto& h : f.pullbacks()) {
    auto v = h.as_variable();
    if (!v || hit[*v]) return std::nullopt;
    hit[*v] = true;
    perm.push_back(*v);
  }
  return perm;
}

// ---------------------------------------------------------------- builders

namespace {

// prod_j name(j)^exps[j] over the given VarSet.
RationalFunction monomial_function(const VarSet& vars, const std::vector<std::pair<std::string, int>>& factors) {
  Exponents up(vars.size(), 0);
  Exponents down(vars.size(), 0);
  for (const auto& [name, e] : factors) {
    const std::size_t pos = vars.require_index(name);
    if (e > 0) up[pos] += static_cast<std::uint32_t>(e);
    if (e < 0) down[pos] += static_cast<std::uint32_t>(-e);
  }
  return RationalFunction(Polynomial::monomial(vars, std::move(up), Rational(1)),
                          Polynomial::monomial(vars, std::move(down), Rational(1)));
}

Polynomial monomial_polynomial(const VarSet& vars, const std::vector<std::pair<std::string, int>>& factors) {
  Exponents up(vars.size(), 0);
  for (const auto& [name, e] : factors) up[vars.require_index(name)] += static_cast<std::uint32_t>(e);
  return Polynomial::monomial(vars, std::move(up), Rational(1));
}

std::size_t require_mutable(const Seed& seed, std::string_view k) {
  const std::size_t pos = seed.require_index(k);
  if (seed.is_frozen(pos)) throw ArgumentError("cannot mutate at frozen index '" + std::string(k) + "'");
  return pos;
}

// A-type exchange pullback on the coordinates named by `name` (over all of I).
RationalFunction exchange_relation(const Seed& seed, std::size_t k, const VarSet& vars,
                                   const std::function<std::string(std::size_t)>& name) {
  std::vector<std::pair<std::string, int>> positive;
  std::vector<std::pair<std::string, int>> negative;
  for (std::size_t j = 0; j < seed.size(); ++j) {
    const int e = seed.eps(k, j);
    if (e > 0) positive.emplace_back(name(j), e);
    if (e < 0) negative.emplace_back(name(j), -e);
  }
  const Polynomial sum = monomial_polynomial(vars, positive) + monomial_polynomial(vars, negative);
  return RationalFunction(sum, Polynomial::variable(vars, name(k)));
}

// X_i (1 + X_k^{-sgn eps_ik})^{-eps_ik}; the factor is 1 when eps_ik = 0.
RationalFunction x_exchange(const VarSet& vars, const std::string& xi, const std::string& xk, int eps_ik) {
  const RationalFunction x = RationalFunction::variable(vars, xi);
  if (eps_ik == 0) return x;
  const RationalFunction one = RationalFunction::constant(vars, Rational(1));
  const RationalFunction base = one + RationalFunction::variable(vars, xk).pow(eps_ik > 0 ? -1 : 1);
  return x * base.pow(-eps_ik);
}

}  // namespace

ClusterMap a_mutation(const Seed& seed, std::string_view k) {
  const std::size_t kpos = require_mutable(seed, k);
  const VarSet vars = torus_vars(seed, TorusKind::A);
  std::vector<RationalFunction> pullback;
  for (std::size_t i = 0; i < seed.size(); ++i) {
    if (i == kpos) {
      pullback.push_back(exchange_relation(seed, kpos, vars, [&](std::size_t j) { return a_name(seed.label(j)); }));
    } else {
      pullback.push_back(RationalFunction::variable(vars, a_name(seed.label(i))));
    }
  }
  ClusterMap out(vars, vars, std::move(pullback));
  out.annotate(seed, mutate_seed(seed, k));
  return out;
}

ClusterMap x_mutation(const Seed& seed, std::string_view k) {
  const std::size_t kpos = require_mutable(seed, k);
  const VarSet vars = torus_vars(seed, TorusKind::X);
  const std::string xk = x_name(k);
  std::vector<RationalFunction> pullback;
  for (std::size_t i : seed.mutable_positions()) {
    if (i == kpos) {
      pullback.push_back(RationalFunction::variable(vars, xk).pow(-1));
    } else {
      pullback.push_back(x_exchange(vars, x_name(seed.label(i)), xk, seed.eps(i, kpos)));
    }
  }
  ClusterMap out(vars, vars, std::move(pullback));
  out.annotate(seed, mutate_seed(seed, k));
  return out;
}

ClusterMap d_mutation(const Seed& seed, std::string_view k) {
  const std::size_t kpos = require_mutable(seed, k);
  const VarSet vars = torus_vars(seed, TorusKind::D);
  const std::string xk = x_name(k);
  std::vector<RationalFunction> pullback;
  for (std::size_t i : seed.mutable_positions()) {
    const std::string& label = seed.label(i);
    if (i == kpos) {
      // frozen B's are 1, so the products run over J
      std::vector<std::pair<std::string, int>> positive{{xk, 1}};
      std::vector<std::pair<std::string, int>> negative;
      for (std::size_t j : seed.mutable_positions()) {
        const int e = seed.eps(kpos, j);
        if (e > 0) positive.emplace_back(b_name(seed.label(j)), e);
        if (e < 0) negative.emplace_back(b_name(seed.label(j)), -e);
      }
      const Polynomial num = monomial_polynomial(vars, positive) + monomial_polynomial(vars, negative);
      const Polynomial den = (Polynomial::constant(vars, Rational(1)) + Polynomial::variable(vars, xk)) *
                             Polynomial::variable(vars, b_name(label));
      pullback.push_back(RationalFunction(num, den));
      pullback.push_back(RationalFunction::variable(vars, xk).pow(-1));
    } else {
      pullback.push_back(RationalFunction::variable(vars, b_name(label)));
      pullback.push_back(x_exchange(vars, x_name(label), xk, seed.eps(i, kpos)));
    }
  }
  ClusterMap out(vars, vars, std::move(pullback));
  out.annotate(seed, mutate_seed(seed, k));
  return out;
}

ClusterMap mutation(const Seed& seed, std::string_view k, TorusKind kind) {
  switch (kind) {
    case TorusKind::A:
      return a_mutation(seed, k);
    case TorusKind::X:
      return x_mutation(seed, k);
    case TorusKind::D:
      return d_mutation(seed, k);
  }
  throw ArgumentError("unknown torus kind");
}

ClusterMap double_a_mutation(const Seed& seed, std::string_view k, StructureMode mode) {
  const std::size_t kpos = require_mutable(seed, k);
  const VarSet vars = double_a_vars(seed, mode);
  auto first = [&](std::size_t j) { return a_name(seed.label(j)); };
  auto second = [&](std::size_t j) {
    return seed.is_frozen(j) ? a_name(seed.label(j)) : ao_name(seed.label(j));
  };
  std::vector<RationalFunction> pullback;
  for (std::size_t i = 0; i < seed.size(); ++i) {
    pullback.push_back(i == kpos ? exchange_relation(seed, kpos, vars, first)
                                 : RationalFunction::variable(vars, first(i)));
  }
  for (std::size_t i : seed.mutable_positions()) {
    pullback.push_back(i == kpos ? exchange_relation(seed, kpos, vars, second)
                                 : RationalFunction::variable(vars, second(i)));
  }
  ClusterMap out(vars, vars, std::move(pullback));
  out.annotate(seed, mutate_seed(seed, k));
  return out;
}

ClusterMap double_x_mutation(const Seed& seed, std::string_view k) {
  const ClusterMap single = x_mutation(seed, k);
  const auto with_prefix = [](std::string prefix) {
    return [prefix](const std::string& n) { return prefix + n.substr(2); };
  };
  ClusterMap out = product(rename(single, with_prefix("X1_")), rename(single, with_prefix("X2_")));
  out.annotate(seed, mutate_seed(seed, k));
  return out;
}

ClusterMap p_map(const Seed& seed) {
  const VarSet source = torus_vars(seed, TorusKind::A);
  const VarSet target = torus_vars(seed, TorusKind::X);
  std::vector<RationalFunction> pullback;
  for (std::size_t i : seed.mutable_positions()) {
    std::vector<std::pair<std::string, int>> factors;
    for (std::size_t j = 0; j < seed.size(); ++j) factors.emplace_back(a_name(seed.label(j)), seed.eps(i, j));
    pullback.push_back(monomial_function(source, factors));
  }
  ClusterMap out(source, target, std::move(pullback));
  out.annotate(seed, seed);
  return out;
}

ClusterMap p_pair_map(const Seed& seed, StructureMode mode) {
  const VarSet source = double_a_vars(seed, mode);
  const VarSet target = double_x_vars(seed);
  std::vector<RationalFunction> pullback;
  for (bool second : {false, true}) {
    for (std::size_t i : seed.mutable_positions()) {
      std::vector<std::pair<std::string, int>> factors;
      for (std::size_t j = 0; j < seed.size(); ++j) {
        const std::string& l = seed.label(j);
        factors.emplace_back(second && !seed.is_frozen(j) ? ao_name(l) : a_name(l), seed.eps(i, j));
      }
      pullback.push_back(monomial_function(source, factors));
    }
  }
  ClusterMap out(source, target, std::move(pullback));
  out.annotate(seed, seed);
  return out;
}

ClusterMap phi_map(const Seed& seed, StructureMode mode) {
  const VarSet source = double_a_vars(seed, mode);
  const VarSet target = torus_vars(seed, TorusKind::D);
  std::vector<RationalFunction> pullback;
  for (std::size_t i : seed.mutable_positions()) {
    const std::string& l = seed.label(i);
    pullback.push_back(monomial_function(source, {{ao_name(l), 1}, {a_name(l), -1}}));
    std::vector<std::pair<std::string, int>> factors;
    for (std::size_t j = 0; j < seed.size(); ++j) factors.emplace_back(a_name(seed.label(j)), seed.eps(i, j));
    pullback.push_back(monomial_function(source, factors));
  }
  ClusterMap out(source, target, std::move(pullback));
  out.annotate(seed, seed);
  return out;
}

namespace {

// X_i prod_{j in J} B_j^eps_ij over the D-torus.
RationalFunction twisted_x(const Seed& seed, std::size_t i, const VarSet& vars) {
  std::vector<std::pair<std::string, int>> factors{{x_name(seed.label(i)), 1}};
  for (std::size_t j : seed.mutable_positions()) factors.emplace_back(b_name(seed.label(j)), seed.eps(i, j));
  return monomial_function(vars, factors);
}

}  // namespace

ClusterMap pi_map(const Seed& seed, StructureMode mode) {
  require_structure_mode(seed, mode);
  const VarSet source = torus_vars(seed, TorusKind::D);
  const VarSet target = double_x_vars(seed);
  std::vector<RationalFunction> pullback;
  for (std::size_t i : seed.mutable_positions()) {
    pullback.push_back(RationalFunction::variable(source, x_name(seed.label(i))));
  }
  for (std::size_t i : seed.mutable_positions()) pullback.push_back(twisted_x(seed, i, source));
  ClusterMap out(source, target, std::move(pullback));
  out.annotate(seed, seed);
  return out;
}

ClusterMap iota_map(const Seed& seed, StructureMode mode) {
  require_structure_mode(seed, mode);
  const VarSet vars = torus_vars(seed, TorusKind::D);
  std::vector<RationalFunction> pullback;
  for (std::size_t i : seed.mutable_positions()) {
    pullback.push_back(RationalFunction::variable(vars, b_name(seed.label(i))).pow(-1));
    pullback.push_back(twisted_x(seed, i, vars));
  }
  ClusterMap out(vars, vars, std::move(pullback));
  out.annotate(seed, seed);
  return out;
}

ClusterMap j_map(const Seed& seed, StructureMode mode) {
  require_structure_mode(seed, mode);
  const VarSet source = torus_vars(seed, TorusKind::X);
  const VarSet target = torus_vars(seed, TorusKind::D);
  std::vector<RationalFunction> pullback;
  for (std::size_t i : seed.mutable_positions()) {
    pullback.push_back(RationalFunction::constant(source, Rational(1)));
    pullback.push_back(RationalFunction::variable(source, x_name(seed.label(i))));
  }
  ClusterMap out(source, target, std::move(pullback));
  out.annotate(seed, seed);
  return out;
}

ClusterMap swap_map(const Seed& seed) {
  const VarSet vars = double_x_vars(seed);
  std::vector<RationalFunction> pullback;
  for (const auto& l : seed.mutable_labels()) pullback.push_back(RationalFunction::variable(vars, x2_name(l)));
  for (const auto& l : seed.mutable_labels()) pullback.push_back(RationalFunction::variable(vars, x1_name(l)));
  ClusterMap out(vars, vars, std::move(pullback));
  out.annotate(seed, seed);
  return out;
}

}  // namespace clusterdouble
