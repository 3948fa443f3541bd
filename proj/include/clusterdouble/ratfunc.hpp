#pragma once

// Exact multivariate rational functions over Q.
//
// Every RationalFunction is kept in a canonical form: numerator and
// denominator are coprime, both have integer coefficients whose joint content
// is 1, and the denominator's leading coefficient (graded-lex order over the
// VarSet order) is positive. Two functions are equal iff their canonical
// forms are identical, so operator== is the equality oracle used throughout.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "clusterdouble/rational.hpp"

namespace clusterdouble {

// Ordered list of distinct coordinate names. Cheap to copy (shared storage).
class VarSet {
 public:
  VarSet();
  explicit VarSet(std::vector<std::string> names);

  std::size_t size() const { return data_->names.size(); }
  bool empty() const { return data_->names.empty(); }
  const std::string& name(std::size_t i) const { return data_->names.at(i); }
  const std::vector<std::string>& names() const { return data_->names; }
  std::optional<std::size_t> index_of(std::string_view name) const;
  std::size_t require_index(std::string_view name) const;
  bool contains(std::string_view name) const { return index_of(name).has_value(); }

  friend bool operator==(const VarSet& a, const VarSet& b) {
    return a.data_ == b.data_ || a.data_->names == b.data_->names;
  }

 private:
  struct Data {
    std::vector<std::string> names;
    std::unordered_map<std::string, std::size_t> index;
  };
  std::shared_ptr<const Data> data_;
};

using Exponents = std::vector<std::uint32_t>;

// Graded lexicographic order: total degree first, then the first variable
// of the VarSet is most significant.
bool grlex_greater(const Exponents& a, const Exponents& b);

struct Term {
  Exponents exponents;
  Rational coeff;

  friend bool operator==(const Term&, const Term&) = default;
};

class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(VarSet vars) : vars_(std::move(vars)) {}

  static Polynomial constant(VarSet vars, const Rational& value);
  static Polynomial variable(VarSet vars, std::string_view name);
  static Polynomial monomial(VarSet vars, Exponents exponents, const Rational& coeff);
  // Sorts, merges equal monomials and drops zero coefficients.
  static Polynomial from_terms(VarSet vars, std::vector<Term> terms);

  const VarSet& vars() const { return vars_; }
  // Sorted by grlex, largest first.
  const std::vector<Term>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool is_monomial() const { return terms_.size() == 1; }
  bool is_one() const;
  const Term& leading_term() const;
  const Rational& leading_coeff() const { return leading_term().coeff; }
  Rational constant_value() const;  // requires is_constant()

  std::uint32_t degree_in(std::size_t var) const;
  std::uint32_t total_degree() const;
  // Componentwise minimum over all terms (the largest monomial factor).
  Exponents min_exponents() const;
  std::vector<bool> used_vars() const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Polynomial& other);
  Polynomial scaled(const Rational& factor) const;
  Polynomial pow(unsigned exponent) const;
  // Multiplies by the monomial x^shift (shift may not drive exponents negative).
  Polynomial shifted_up(const Exponents& shift) const;
  Polynomial shifted_down(const Exponents& shift) const;

  Rational evaluate(std::span<const Rational> point) const;
  // Moves variable i of this polynomial to position positions[i] of `target`.
  Polynomial remapped(const VarSet& target, std::span<const std::size_t> positions) const;

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.vars_ == b.vars_ && a.terms_ == b.terms_;
  }

  std::string to_string() const;

 private:
  void check_same_vars(const Polynomial& other) const;

  VarSet vars_;
  std::vector<Term> terms_;
};

// Exact quotient a / b, or nullopt when b does not divide a. Throws
// DomainError when b is zero.
std::optional<Polynomial> divide_exact(const Polynomial& a, const Polynomial& b);

// Greatest common divisor, normalized to leading coefficient 1 under grlex.
// gcd(0, 0) is 0.
Polynomial poly_gcd(const Polynomial& a, const Polynomial& b);

class RationalFunction {
 public:
  RationalFunction() = default;  // zero over the empty VarSet
  explicit RationalFunction(const Polynomial& numerator);
  // Canonicalizes. Throws DomainError if the denominator is zero.
  RationalFunction(const Polynomial& numerator, const Polynomial& denominator);

  static RationalFunction constant(VarSet vars, const Rational& value);
  static RationalFunction variable(VarSet vars, std::string_view name);

  const VarSet& vars() const { return num_.vars(); }
  const Polynomial& numerator() const { return num_; }
  const Polynomial& denominator() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  // If this is a bare coordinate (coefficient 1, degree 1, denominator 1),
  // returns its index.
  std::optional<std::size_t> as_variable() const;

  RationalFunction operator-() const;
  RationalFunction pow(int exponent) const;
  // Variable renaming/embedding; see Polynomial::remapped.
  RationalFunction remapped(const VarSet& target, std::span<const std::size_t> positions) const;

  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);
  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  std::string to_string() const;

 private:
  struct Canonical {};
  RationalFunction(Polynomial num, Polynomial den, Canonical)
      : num_(std::move(num)), den_(std::move(den)) {}

  Polynomial num_;
  Polynomial den_;
};

enum class ArithOp { Add, Sub, Mul, Div };

// Field operation on two functions over the same VarSet. Throws
// ArgumentError on VarSet mismatch and DomainError on division by zero.
RationalFunction rf_arith(const RationalFunction& a, const RationalFunction& b, ArithOp op);

// Replaces each variable of f (by position in f.vars()) with values[i]; all
// values live over `target`. Throws DomainError if the substituted
// denominator vanishes identically.
RationalFunction rf_substitute(const RationalFunction& f, std::span<const RationalFunction> values,
                               const VarSet& target);

// Name-keyed form. Every variable of f must be assigned and all assigned
// functions must share one VarSet.
RationalFunction rf_substitute(const RationalFunction& f,
                               const std::map<std::string, RationalFunction>& assignment);

// Exact value at a point; throws DomainError at a pole.
Rational rf_eval(const RationalFunction& f, std::span<const Rational> point);
Rational rf_eval(const RationalFunction& f, const std::map<std::string, Rational>& point);

struct LaurentReport {
  bool laurent = false;            // canonical denominator is a single monomial
  bool positive_numerator = false;  // every numerator coefficient is positive
};

LaurentReport rf_is_laurent(const RationalFunction& f);

}  // namespace clusterdouble
