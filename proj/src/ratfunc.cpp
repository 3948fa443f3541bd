#include "clusterdouble/ratfunc.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "clusterdouble/errors.hpp"

namespace clusterdouble {

// ---------------------------------------------------------------- VarSet

VarSet::VarSet() : data_(std::make_shared<const Data>()) {}

VarSet::VarSet(std::vector<std::string> names) {
  auto data = std::make_shared<Data>();
  data->index.reserve(names.size());
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (!data->index.emplace(names[i], i).second) {
      throw ArgumentError("duplicate coordinate name '" + names[i] + "'");
    }
  }
  data->names = std::move(names);
  data_ = std::move(data);
}

std::optional<std::size_t> VarSet::index_of(std::string_view name) const {
  auto it = data_->index.find(std::string(name));
  if (it == data_->index.end()) return std::nullopt;
  return it->second;
}

std::size_t VarSet::require_index(std::string_view name) const {
  if (auto i = index_of(name)) return *i;
  throw ArgumentError("unknown coordinate '" + std::string(name) + "'");
}

// ---------------------------------------------------------------- ordering

bool grlex_greater(const Exponents& a, const Exponents& b) {
  std::uint64_t da = 0;
  std::uint64_t db = 0;
  for (auto e : a) da += e;
  for (auto e : b) db += e;
  if (da != db) return da > db;
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

namespace {

struct GrlexGreater {
  bool operator()(const Exponents& a, const Exponents& b) const { return grlex_greater(a, b); }
};

void sort_and_merge(std::vector<Term>& terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return grlex_greater(a.exponents, b.exponents); });
  std::size_t out = 0;
  for (std::size_t i = 0; i < terms.size();) {
    std::size_t j = i + 1;
    Rational sum = terms[i].coeff;
    while (j < terms.size() && terms[j].exponents == terms[i].exponents) {
      sum += terms[j].coeff;
      ++j;
    }
    if (sum != 0) {
      if (out != i) terms[out].exponents = std::move(terms[i].exponents);
      terms[out].coeff = std::move(sum);
      ++out;
    }
    i = j;
  }
  terms.resize(out);
}

bool divides_monomial(const Exponents& divisor, const Exponents& dividend) {
  for (std::size_t i = 0; i < divisor.size(); ++i) {
    if (divisor[i] > dividend[i]) return false;
  }
  return true;
}

}  // namespace

// ---------------------------------------------------------------- Polynomial

Polynomial Polynomial::constant(VarSet vars, const Rational& value) {
  Polynomial p(std::move(vars));
  if (value != 0) p.terms_.push_back({Exponents(p.vars_.size(), 0), value});
  return p;
}

Polynomial Polynomial::variable(VarSet vars, std::string_view name) {
  Exponents e(vars.size(), 0);
  e[vars.require_index(name)] = 1;
  return monomial(std::move(vars), std::move(e), Rational(1));
}

Polynomial Polynomial::monomial(VarSet vars, Exponents exponents, const Rational& coeff) {
  if (exponents.size() != vars.size()) throw ArgumentError("exponent vector length mismatch");
  Polynomial p(std::move(vars));
  if (coeff != 0) p.terms_.push_back({std::move(exponents), coeff});
  return p;
}

Polynomial Polynomial::from_terms(VarSet vars, std::vector<Term> terms) {
  for (const auto& t : terms) {
    if (t.exponents.size() != vars.size()) throw ArgumentError("exponent vector length mismatch");
  }
  Polynomial p(std::move(vars));
  sort_and_merge(terms);
  p.terms_ = std::move(terms);
  return p;
}

bool Polynomial::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  return std::all_of(terms_[0].exponents.begin(), terms_[0].exponents.end(),
                     [](auto e) { return e == 0; });
}

bool Polynomial::is_one() const { return is_constant() && !terms_.empty() && terms_[0].coeff == 1; }

const Term& Polynomial::leading_term() const {
  if (terms_.empty()) throw DomainError("leading term of the zero polynomial");
  return terms_.front();
}

Rational Polynomial::constant_value() const {
  if (!is_constant()) throw ArgumentError("polynomial is not constant");
  return terms_.empty() ? Rational(0) : terms_[0].coeff;
}

std::uint32_t Polynomial::degree_in(std::size_t var) const {
  std::uint32_t d = 0;
  for (const auto& t : terms_) d = std::max(d, t.exponents[var]);
  return d;
}

std::uint32_t Polynomial::total_degree() const {
  // grlex puts the highest total degree first
  if (terms_.empty()) return 0;
  return std::accumulate(terms_[0].exponents.begin(), terms_[0].exponents.end(), 0U);
}

Exponents Polynomial::min_exponents() const {
  if (terms_.empty()) return Exponents(vars_.size(), 0);
  Exponents m = terms_[0].exponents;
  for (const auto& t : terms_) {
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = std::min(m[i], t.exponents[i]);
  }
  return m;
}

std::vector<bool> Polynomial::used_vars() const {
  std::vector<bool> used(vars_.size(), false);
  for (const auto& t : terms_) {
    for (std::size_t i = 0; i < used.size(); ++i) {
      if (t.exponents[i] != 0) used[i] = true;
    }
  }
  return used;
}

void Polynomial::check_same_vars(const Polynomial& other) const {
  if (!(vars_ == other.vars_)) throw ArgumentError("polynomials over different VarSets");
}

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  check_same_vars(other);
  if (other.terms_.empty()) return *this;
  if (terms_.empty()) {
    terms_ = other.terms_;
    return *this;
  }
  std::vector<Term> merged;
  merged.reserve(terms_.size() + other.terms_.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < terms_.size() || j < other.terms_.size()) {
    if (j == other.terms_.size() ||
        (i < terms_.size() && grlex_greater(terms_[i].exponents, other.terms_[j].exponents))) {
      merged.push_back(std::move(terms_[i++]));
    } else if (i == terms_.size() || grlex_greater(other.terms_[j].exponents, terms_[i].exponents)) {
      merged.push_back(other.terms_[j++]);
    } else {
      Rational sum = terms_[i].coeff + other.terms_[j].coeff;
      if (sum != 0) merged.push_back({std::move(terms_[i].exponents), std::move(sum)});
      ++i;
      ++j;
    }
  }
  terms_ = std::move(merged);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) { return *this += -other; }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  a.check_same_vars(b);
  Polynomial r(a.vars_);
  if (a.terms_.empty() || b.terms_.empty()) return r;
  const std::size_t n = a.vars_.size();
  if (b.terms_.size() == 1) {
    // monomial multiplication preserves the order
    r.terms_.reserve(a.terms_.size());
    for (const auto& ta : a.terms_) {
      Term t{ta.exponents, ta.coeff * b.terms_[0].coeff};
      for (std::size_t k = 0; k < n; ++k) t.exponents[k] += b.terms_[0].exponents[k];
      r.terms_.push_back(std::move(t));
    }
    return r;
  }
  if (a.terms_.size() == 1) return b * a;
  std::vector<Term> prod;
  prod.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& ta : a.terms_) {
    for (const auto& tb : b.terms_) {
      Term t{ta.exponents, ta.coeff * tb.coeff};
      for (std::size_t k = 0; k < n; ++k) t.exponents[k] += tb.exponents[k];
      prod.push_back(std::move(t));
    }
  }
  sort_and_merge(prod);
  r.terms_ = std::move(prod);
  return r;
}

Polynomial& Polynomial::operator*=(const Polynomial& other) { return *this = *this * other; }

Polynomial Polynomial::scaled(const Rational& factor) const {
  if (factor == 0) return Polynomial(vars_);
  Polynomial r = *this;
  for (auto& t : r.terms_) t.coeff *= factor;
  return r;
}

Polynomial Polynomial::pow(unsigned exponent) const {
  Polynomial result = constant(vars_, Rational(1));
  Polynomial base = *this;
  while (exponent > 0) {
    if (exponent & 1U) result *= base;
    exponent >>= 1U;
    if (exponent > 0) base *= base;
  }
  return result;
}

Polynomial Polynomial::shifted_up(const Exponents& shift) const {
  Polynomial r = *this;
  for (auto& t : r.terms_) {
    for (std::size_t k = 0; k < shift.size(); ++k) t.exponents[k] += shift[k];
  }
  return r;
}

Polynomial Polynomial::shifted_down(const Exponents& shift) const {
  Polynomial r = *this;
  for (auto& t : r.terms_) {
    for (std::size_t k = 0; k < shift.size(); ++k) {
      if (t.exponents[k] < shift[k]) throw ArgumentError("monomial shift below zero");
      t.exponents[k] -= shift[k];
    }
  }
  return r;
}

Rational Polynomial::evaluate(std::span<const Rational> point) const {
  if (point.size() != vars_.size()) throw ArgumentError("evaluation point has wrong dimension");
  Rational sum = 0;
  Rational power;
  for (const auto& t : terms_) {
    Rational prod = t.coeff;
    for (std::size_t k = 0; k < point.size(); ++k) {
      if (t.exponents[k] == 0) continue;
      mpz_pow_ui(power.get_num_mpz_t(), point[k].get_num_mpz_t(), t.exponents[k]);
      mpz_pow_ui(power.get_den_mpz_t(), point[k].get_den_mpz_t(), t.exponents[k]);
      prod *= power;
    }
    sum += prod;
  }
  return sum;
}

Polynomial Polynomial::remapped(const VarSet& target, std::span<const std::size_t> positions) const {
  if (positions.size() != vars_.size()) throw ArgumentError("variable remapping has wrong length");
  std::vector<Term> terms;
  terms.reserve(terms_.size());
  for (const auto& t : terms_) {
    Exponents e(target.size(), 0);
    for (std::size_t k = 0; k < positions.size(); ++k) {
      if (positions[k] >= target.size()) throw ArgumentError("variable remapping out of range");
      e[positions[k]] += t.exponents[k];
    }
    terms.push_back({std::move(e), t.coeff});
  }
  return from_terms(target, std::move(terms));
}

namespace {

void write_monomial(std::ostream& os, const VarSet& vars, const Exponents& e, bool& first_factor) {
  for (std::size_t k = 0; k < e.size(); ++k) {
    if (e[k] == 0) continue;
    if (!first_factor) os << '*';
    os << vars.name(k);
    if (e[k] > 1) os << '^' << e[k];
    first_factor = false;
  }
}

}  // namespace

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    Rational c = t.coeff;
    if (first) {
      if (c < 0) {
        os << '-';
        c = -c;
      }
    } else {
      os << (c < 0 ? " - " : " + ");
      if (c < 0) c = -c;
    }
    const bool constant_term =
        std::all_of(t.exponents.begin(), t.exponents.end(), [](auto e) { return e == 0; });
    bool first_factor = true;
    if (c != 1 || constant_term) {
      os << c.get_str();
      first_factor = false;
    }
    write_monomial(os, vars_, t.exponents, first_factor);
    first = false;
  }
  return os.str();
}

// ---------------------------------------------------------------- division

std::optional<Polynomial> divide_exact(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw DomainError("polynomial division by zero");
  if (!(a.vars() == b.vars())) throw ArgumentError("polynomials over different VarSets");
  if (a.is_zero()) return a;
  if (b.is_constant()) return a.scaled(1 / b.constant_value());
  if (a.total_degree() < b.total_degree()) return std::nullopt;
  const std::size_t n = a.vars().size();
  for (std::size_t k = 0; k < n; ++k) {
    if (a.degree_in(k) < b.degree_in(k)) return std::nullopt;
  }
  if (!divides_monomial(b.leading_term().exponents, a.leading_term().exponents)) {
    return std::nullopt;
  }
  if (b.is_monomial()) {
    const Term& lt = b.leading_term();
    for (const auto& t : a.terms()) {
      if (!divides_monomial(lt.exponents, t.exponents)) return std::nullopt;
    }
    return a.shifted_down(lt.exponents).scaled(1 / lt.coeff);
  }

  std::map<Exponents, Rational, GrlexGreater> rem;
  for (const auto& t : a.terms()) rem.emplace(t.exponents, t.coeff);
  const Term& lb = b.leading_term();
  std::vector<Term> quotient;
  Exponents shift(n);
  while (!rem.empty()) {
    auto it = rem.begin();
    if (!divides_monomial(lb.exponents, it->first)) return std::nullopt;
    for (std::size_t k = 0; k < n; ++k) shift[k] = it->first[k] - lb.exponents[k];
    Rational q = it->second / lb.coeff;
    for (const auto& tb : b.terms()) {
      Exponents e = tb.exponents;
      for (std::size_t k = 0; k < n; ++k) e[k] += shift[k];
      auto [pos, inserted] = rem.try_emplace(std::move(e), 0);
      pos->second -= q * tb.coeff;
      if (pos->second == 0) rem.erase(pos);
    }
    quotient.push_back({shift, std::move(q)});
  }
  return Polynomial::from_terms(a.vars(), std::move(quotient));
}

// ---------------------------------------------------------------- gcd

namespace {

Polynomial monic(const Polynomial& p) {
  if (p.is_zero()) return p;
  return p.scaled(1 / p.leading_coeff());
}

Polynomial one_like(const Polynomial& p) { return Polynomial::constant(p.vars(), Rational(1)); }

// gcd over Q[other vars] of the coefficients of p viewed as a polynomial in
// the variables selected by `mask`.
Polynomial content_over(const Polynomial& p, const std::vector<bool>& mask) {
  std::map<Exponents, std::vector<Term>> groups;
  for (const auto& t : p.terms()) {
    Exponents key(t.exponents.size(), 0);
    Exponents rest = t.exponents;
    for (std::size_t k = 0; k < mask.size(); ++k) {
      if (mask[k]) {
        key[k] = t.exponents[k];
        rest[k] = 0;
      }
    }
    groups[std::move(key)].push_back({std::move(rest), t.coeff});
  }
  // Smallest coefficients first tends to reach 1 quickly.
  std::vector<Polynomial> coeffs;
  coeffs.reserve(groups.size());
  for (auto& [key, terms] : groups) coeffs.push_back(Polynomial::from_terms(p.vars(), std::move(terms)));
  std::sort(coeffs.begin(), coeffs.end(),
            [](const Polynomial& a, const Polynomial& b) { return a.terms().size() < b.terms().size(); });
  Polynomial g(p.vars());
  for (const auto& c : coeffs) {
    g = poly_gcd(g, c);
    if (g.is_constant()) return one_like(p);
  }
  return g;
}

Polynomial coefficient_of(const Polynomial& p, std::size_t var, std::uint32_t degree) {
  std::vector<Term> terms;
  for (const auto& t : p.terms()) {
    if (t.exponents[var] == degree) {
      Term c = t;
      c.exponents[var] = 0;
      terms.push_back(std::move(c));
    }
  }
  return Polynomial::from_terms(p.vars(), std::move(terms));
}

// Sparse pseudo-remainder of a by b with respect to `var`.
Polynomial pseudo_remainder(Polynomial r, const Polynomial& b, std::size_t var) {
  const std::uint32_t db = b.degree_in(var);
  const Polynomial lb = coefficient_of(b, var, db);
  Exponents shift(r.vars().size(), 0);
  while (!r.is_zero()) {
    const std::uint32_t dr = r.degree_in(var);
    if (dr < db) break;
    const Polynomial lr = coefficient_of(r, var, dr);
    shift[var] = dr - db;
    r = lb * r - lr * b.shifted_up(shift);
  }
  return r;
}

Polynomial primitive_part(const Polynomial& p, std::size_t var) {
  std::vector<bool> mask(p.vars().size(), false);
  mask[var] = true;
  const Polynomial c = content_over(p, mask);
  return monic(*divide_exact(p, c));
}

Polynomial primitive_prs(Polynomial a, Polynomial b, std::size_t var) {
  if (a.degree_in(var) < b.degree_in(var)) std::swap(a, b);
  while (!b.is_zero()) {
    Polynomial r = pseudo_remainder(a, b, var);
    a = std::move(b);
    if (r.is_zero()) break;
    if (r.degree_in(var) == 0) return one_like(a);
    b = primitive_part(r, var);
  }
  return primitive_part(a, var);
}

Polynomial gcd_core(const Polynomial& a, const Polynomial& b) {
  if (a.is_constant() || b.is_constant()) return one_like(a);
  if (divide_exact(a, b)) return monic(b);
  if (divide_exact(b, a)) return monic(a);

  const auto ua = a.used_vars();
  const auto ub = b.used_vars();
  const std::size_t n = ua.size();
  std::vector<bool> only_a(n);
  std::vector<bool> only_b(n);
  bool any_a = false;
  bool any_b = false;
  for (std::size_t k = 0; k < n; ++k) {
    only_a[k] = ua[k] && !ub[k];
    only_b[k] = ub[k] && !ua[k];
    any_a = any_a || only_a[k];
    any_b = any_b || only_b[k];
  }
  // A variable missing from one side cannot occur in the gcd.
  if (any_a) return poly_gcd(content_over(a, only_a), b);
  if (any_b) return poly_gcd(a, content_over(b, only_b));

  std::size_t var = n;
  std::uint32_t best = 0;
  for (std::size_t k = 0; k < n; ++k) {
    if (!ua[k]) continue;
    const std::uint32_t d = std::max(a.degree_in(k), b.degree_in(k));
    if (var == n || d < best) {
      var = k;
      best = d;
    }
  }
  std::vector<bool> mask(n, false);
  mask[var] = true;
  const Polynomial ca = content_over(a, mask);
  const Polynomial cb = content_over(b, mask);
  const Polynomial pa = *divide_exact(a, ca);
  const Polynomial pb = *divide_exact(b, cb);
  const Polynomial c = poly_gcd(ca, cb);
  return monic(c * primitive_prs(pa, pb, var));
}

}  // namespace

Polynomial poly_gcd(const Polynomial& a, const Polynomial& b) {
  if (!(a.vars() == b.vars())) throw ArgumentError("polynomials over different VarSets");
  if (a.is_zero()) return monic(b);
  if (b.is_zero()) return monic(a);
  const Exponents ea = a.min_exponents();
  const Exponents eb = b.min_exponents();
  Exponents common(ea.size());
  for (std::size_t k = 0; k < ea.size(); ++k) common[k] = std::min(ea[k], eb[k]);
  const Polynomial g = gcd_core(a.shifted_down(ea), b.shifted_down(eb));
  return monic(g.shifted_up(common));
}

// ---------------------------------------------------------------- RationalFunction

namespace {

// Scales num/den so both have integer coefficients with joint content 1 and
// the denominator's leading coefficient is positive.
void normalize_content(Polynomial& num, Polynomial& den) {
  Integer lcm_den = 1;
  for (const auto* p : {&num, &den}) {
    for (const auto& t : p->terms()) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), t.coeff.get_den_mpz_t());
  }
  Integer g = 0;
  for (const auto* p : {&num, &den}) {
    for (const auto& t : p->terms()) {
      Integer scaled = t.coeff.get_num() * (lcm_den / t.coeff.get_den());
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), scaled.get_mpz_t());
    }
  }
  Rational factor(lcm_den, g);
  factor.canonicalize();
  if (den.leading_coeff() < 0) factor = -factor;
  if (factor != 1) {
    num = num.scaled(factor);
    den = den.scaled(factor);
  }
}

}  // namespace

RationalFunction::RationalFunction(const Polynomial& numerator)
    : RationalFunction(numerator, Polynomial::constant(numerator.vars(), Rational(1))) {}

RationalFunction::RationalFunction(const Polynomial& numerator, const Polynomial& denominator) {
  if (!(numerator.vars() == denominator.vars())) {
    throw ArgumentError("numerator and denominator over different VarSets");
  }
  if (denominator.is_zero()) throw DomainError("rational function with zero denominator");
  if (numerator.is_zero()) {
    num_ = Polynomial(numerator.vars());
    den_ = Polynomial::constant(numerator.vars(), Rational(1));
    return;
  }
  Polynomial num = numerator;
  Polynomial den = denominator;
  if (den.is_constant() || num.is_constant()) {
    // coprime up to units
  } else if (den.is_monomial() || num.is_monomial()) {
    const Exponents en = num.min_exponents();
    const Exponents ed = den.min_exponents();
    Exponents common(en.size());
    for (std::size_t k = 0; k < en.size(); ++k) common[k] = std::min(en[k], ed[k]);
    num = num.shifted_down(common);
    den = den.shifted_down(common);
  } else if (auto q = divide_exact(num, den)) {
    num = std::move(*q);
    den = Polynomial::constant(num.vars(), Rational(1));
  } else if (auto q2 = divide_exact(den, num)) {
    den = std::move(*q2);
    num = Polynomial::constant(den.vars(), Rational(1));
  } else {
    const Polynomial g = poly_gcd(num, den);
    if (!g.is_constant()) {
      num = *divide_exact(num, g);
      den = *divide_exact(den, g);
    }
  }
  normalize_content(num, den);
  num_ = std::move(num);
  den_ = std::move(den);
}

RationalFunction RationalFunction::constant(VarSet vars, const Rational& value) {
  return RationalFunction(Polynomial::constant(std::move(vars), value));
}

RationalFunction RationalFunction::variable(VarSet vars, std::string_view name) {
  return RationalFunction(Polynomial::variable(std::move(vars), name));
}

std::optional<std::size_t> RationalFunction::as_variable() const {
  if (!den_.is_one() || !num_.is_monomial()) return std::nullopt;
  const Term& t = num_.leading_term();
  if (t.coeff != 1) return std::nullopt;
  std::optional<std::size_t> found;
  for (std::size_t k = 0; k < t.exponents.size(); ++k) {
    if (t.exponents[k] == 0) continue;
    if (t.exponents[k] != 1 || found) return std::nullopt;
    found = k;
  }
  return found;
}

RationalFunction RationalFunction::operator-() const { return {-num_, den_, Canonical{}}; }

RationalFunction RationalFunction::remapped(const VarSet& target, std::span<const std::size_t> positions) const {
  std::vector<bool> hit(target.size(), false);
  for (auto p : positions) {
    if (p >= target.size() || hit[p]) return {num_.remapped(target, positions), den_.remapped(target, positions)};
    hit[p] = true;
  }
  // Injective renaming keeps gcd and content; only the leading sign can move.
  Polynomial num = num_.remapped(target, positions);
  Polynomial den = den_.remapped(target, positions);
  if (den.leading_coeff() < 0) {
    num = -num;
    den = -den;
  }
  return {std::move(num), std::move(den), Canonical{}};
}

RationalFunction RationalFunction::pow(int exponent) const {
  if (exponent >= 0) {
    return {num_.pow(static_cast<unsigned>(exponent)), den_.pow(static_cast<unsigned>(exponent))};
  }
  if (is_zero()) throw DomainError("negative power of the zero function");
  return {den_.pow(static_cast<unsigned>(-exponent)), num_.pow(static_cast<unsigned>(-exponent))};
}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
  if (!(a.vars() == b.vars())) throw ArgumentError("rational functions over different VarSets");
  if (a.den_ == b.den_) return {a.num_ + b.num_, a.den_};
  return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
}

RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
  if (!(a.vars() == b.vars())) throw ArgumentError("rational functions over different VarSets");
  return {a.num_ * b.num_, a.den_ * b.den_};
}

RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
  if (!(a.vars() == b.vars())) throw ArgumentError("rational functions over different VarSets");
  if (b.is_zero()) throw DomainError("division by the zero function");
  return {a.num_ * b.den_, a.den_ * b.num_};
}

std::string RationalFunction::to_string() const {
  if (den_.is_one()) return num_.to_string();
  const bool simple_num = num_.terms().size() == 1;
  const bool simple_den = den_.terms().size() == 1;
  std::string s = simple_num ? num_.to_string() : "(" + num_.to_string() + ")";
  s += "/";
  s += simple_den ? den_.to_string() : "(" + den_.to_string() + ")";
  return s;
}

RationalFunction rf_arith(const RationalFunction& a, const RationalFunction& b, ArithOp op) {
  switch (op) {
    case ArithOp::Add:
      return a + b;
    case ArithOp::Sub:
      return a - b;
    case ArithOp::Mul:
      return a * b;
    case ArithOp::Div:
      return a / b;
  }
  throw ArgumentError("unknown arithmetic operation");
}

// ---------------------------------------------------------------- substitution

namespace {

class PowerCache {
 public:
  explicit PowerCache(const Polynomial& base) : powers_{Polynomial::constant(base.vars(), Rational(1)), base} {}

  const Polynomial& get(std::uint32_t e) {
    while (powers_.size() <= e) powers_.push_back(powers_.back() * powers_[1]);
    return powers_[e];
  }

 private:
  std::vector<Polynomial> powers_;
};

}  // namespace

RationalFunction rf_substitute(const RationalFunction& f, std::span<const RationalFunction> values,
                               const VarSet& target) {
  const std::size_t n = f.vars().size();
  if (values.size() != n) throw ArgumentError("substitution does not assign every variable");
  for (const auto& v : values) {
    if (!(v.vars() == target)) throw ArgumentError("substituted functions over different VarSets");
  }
  if (f.is_constant()) {
    return {Polynomial::constant(target, f.numerator().constant_value()),
            Polynomial::constant(target, f.denominator().constant_value())};
  }
  if (auto var = f.as_variable()) return values[*var];

  const Polynomial& num = f.numerator();
  const Polynomial& den = f.denominator();
  std::vector<std::uint32_t> dn(n);
  std::vector<std::uint32_t> dd(n);
  std::vector<std::optional<PowerCache>> top(n);
  std::vector<std::optional<PowerCache>> bottom(n);
  for (std::size_t i = 0; i < n; ++i) {
    dn[i] = num.degree_in(i);
    dd[i] = den.degree_in(i);
    if (dn[i] == 0 && dd[i] == 0) continue;
    top[i].emplace(values[i].numerator());
    if (!values[i].denominator().is_one()) bottom[i].emplace(values[i].denominator());
  }

  // P(p/q) = sum c_m prod p^m q^(d-m) / prod q^d, with d the degree of P.
  auto clear = [&](const Polynomial& p, const std::vector<std::uint32_t>& degree) {
    Polynomial sum(target);
    for (const auto& t : p.terms()) {
      Polynomial prod = Polynomial::constant(target, t.coeff);
      for (std::size_t i = 0; i < n; ++i) {
        if (degree[i] == 0) continue;
        const std::uint32_t e = t.exponents[i];
        if (e > 0) prod *= top[i]->get(e);
        if (bottom[i] && degree[i] > e) prod *= bottom[i]->get(degree[i] - e);
      }
      sum += prod;
    }
    return sum;
  };

  Polynomial new_num = clear(num, dn);
  Polynomial new_den = clear(den, dd);
  if (new_den.is_zero()) throw DomainError("substitution makes the denominator vanish identically");
  for (std::size_t i = 0; i < n; ++i) {
    if (!bottom[i]) continue;
    if (dd[i] > dn[i]) new_num *= bottom[i]->get(dd[i] - dn[i]);
    if (dn[i] > dd[i]) new_den *= bottom[i]->get(dn[i] - dd[i]);
  }
  return {new_num, new_den};
}

RationalFunction rf_substitute(const RationalFunction& f,
                               const std::map<std::string, RationalFunction>& assignment) {
  std::optional<VarSet> target;
  for (const auto& [name, value] : assignment) {
    if (!target) {
      target = value.vars();
    } else if (!(value.vars() == *target)) {
      throw ArgumentError("substituted functions over different VarSets");
    }
  }
  std::vector<RationalFunction> values;
  values.reserve(f.vars().size());
  for (const auto& name : f.vars().names()) {
    auto it = assignment.find(name);
    if (it == assignment.end()) throw ArgumentError("variable '" + name + "' is not assigned");
    values.push_back(it->second);
  }
  return rf_substitute(f, values, target ? *target : VarSet());
}

// ---------------------------------------------------------------- evaluation

Rational rf_eval(const RationalFunction& f, std::span<const Rational> point) {
  const Rational den = f.denominator().evaluate(point);
  if (den == 0) throw DomainError("pole: denominator vanishes at the evaluation point");
  return f.numerator().evaluate(point) / den;
}

Rational rf_eval(const RationalFunction& f, const std::map<std::string, Rational>& point) {
  std::vector<Rational> values;
  values.reserve(f.vars().size());
  for (const auto& name : f.vars().names()) {
    auto it = point.find(name);
    if (it == point.end()) throw ArgumentError("variable '" + name + "' is not assigned");
    values.push_back(it->second);
  }
  return rf_eval(f, values);
}

LaurentReport rf_is_laurent(const RationalFunction& f) {
  LaurentReport report;
  report.laurent = f.denominator().is_monomial();
  report.positive_numerator = std::all_of(f.numerator().terms().begin(), f.numerator().terms().end(),
                                          [](const Term& t) { return t.coeff > 0; });
  return report;
}

}  // namespace clusterdouble
