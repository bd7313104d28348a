#pragma once

#include "icisqf/rational.hpp"

#include <compare>
#include <complex>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace icisqf {

using cd = std::complex<double>;

/// Exponent vector x^a in a fixed number of variables.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(int nvars) : exps_(static_cast<std::size_t>(nvars), 0) {}
  explicit Monomial(std::vector<int> exps);

  static Monomial unit(int nvars, int var, int power = 1);

  int nvars() const { return static_cast<int>(exps_.size()); }
  int degree() const;
  int operator[](int i) const { return exps_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& exponents() const { return exps_; }

  bool divides(const Monomial& other) const;
  Monomial operator*(const Monomial& other) const;
  /// Requires divides(other); returns other / *this.
  Monomial quotient_of(const Monomial& other) const;
  Monomial lcm(const Monomial& other) const;

  auto operator<=>(const Monomial&) const = default;
  bool operator==(const Monomial&) const = default;

 private:
  std::vector<int> exps_;
};

/// Sparse polynomial with exact rational coefficients. Terms are kept in lex
/// order of exponent vectors and never store a zero coefficient.
class Poly {
 public:
  using TermMap = std::map<Monomial, Rational>;

  Poly() = default;
  explicit Poly(int nvars) : nvars_(nvars) {}

  static Poly constant(int nvars, const Rational& c);
  static Poly variable(int nvars, int index);
  static Poly term(const Monomial& m, const Rational& c = 1);

  int nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  Rational coeff(const Monomial& m) const;
  Rational constant_term() const;
  /// Highest total degree; -1 for the zero polynomial.
  int degree() const;
  /// Lowest total degree of a term; -1 for the zero polynomial.
  int order() const;

  void add_term(const Monomial& m, const Rational& c);

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  Poly& operator*=(const Rational& c);

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
  friend Poly operator*(const Rational& c, Poly a) { return a *= c; }
  Poly operator-() const;

  Poly pow(unsigned e) const;
  /// Drops every term of total degree >= bound.
  Poly truncated(int bound) const;
  /// Multiplies by a monomial.
  Poly shifted(const Monomial& m) const;

  bool operator==(const Poly& o) const {
    return nvars_ == o.nvars_ && terms_ == o.terms_;
  }

 private:
  void check_compatible(const Poly& o) const;

  int nvars_ = 0;
  TermMap terms_;
};

using PolyMatrix = std::vector<std::vector<Poly>>;

/// Complex point in C^n with finite coordinates.
class CPoint {
 public:
  CPoint() = default;
  explicit CPoint(std::vector<cd> coords);
  int dim() const { return static_cast<int>(coords_.size()); }
  const std::vector<cd>& coords() const { return coords_; }
  cd operator[](int i) const { return coords_[static_cast<std::size_t>(i)]; }

 private:
  std::vector<cd> coords_;
};

Poly diff(const Poly& p, int var_index);

/// Determinant of a square polynomial matrix: Laplace expansion up to 4x4,
/// fraction-free Bareiss elimination beyond that.
Poly det(const PolyMatrix& m);

/// Exact quotient a / b; throws std::domain_error when b does not divide a.
Poly exact_divide(const Poly& a, const Poly& b);

cd eval(const Poly& p, const CPoint& point);
cd eval(const Poly& p, std::span<const cd> point);

/// Default names x1, ..., xn.
std::vector<std::string> default_variable_names(int nvars);

std::string to_string(const Monomial& m, std::span<const std::string> vars);
/// Prints in the input grammar so that parse(to_string(p)) == p.
std::string to_string(const Poly& p, std::span<const std::string> vars);
std::string to_string(const Poly& p);

}  // namespace icisqf
