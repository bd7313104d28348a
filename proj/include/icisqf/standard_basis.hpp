#pragma once

#include "icisqf/local_order.hpp"
#include "icisqf/poly.hpp"

#include <vector>

namespace icisqf {

/// Polynomial whose terms are sorted decreasingly in a local order; the first
/// term is the leading term.
class OrderedPoly {
 public:
  using Term = std::pair<Monomial, Rational>;

  OrderedPoly() = default;
  OrderedPoly(const Poly& p, const LocalOrder& order);

  bool is_zero() const { return terms_.empty(); }
  const Monomial& lead_monomial() const { return terms_.front().first; }
  const Rational& lead_coeff() const { return terms_.front().second; }
  int degree() const { return degree_; }
  /// deg(p) - deg(LM(p)).
  int ecart() const { return degree_ - lead_monomial().degree(); }
  const std::vector<Term>& terms() const { return terms_; }

  /// *this - c * m * g, merging in the order.
  OrderedPoly minus_multiple(const Rational& c, const Monomial& m, const OrderedPoly& g,
                             const LocalOrder& order) const;
  void make_monic();
  /// Drops every term of total degree >= bound.
  void truncate(int bound);
  /// Same, but the leading term always stays.
  void truncate_tail(int bound);
  Poly to_poly(int nvars) const;

 private:
  void update_degree();

  std::vector<Term> terms_;
  int degree_ = -1;
};

/// Mora's weak normal form of f with respect to g: returns h with either h = 0
/// or LM(h) not divisible by any LM(g_i), and u f - h in the ideal for some
/// unit u. Reducers are chosen by lowest ecart, ties broken by the smaller
/// leading monomial, then by position.
///
/// With bound > 0, terms of degree >= bound are dropped as they appear; this
/// is exact modulo m^bound.
OrderedPoly mora_normal_form(const OrderedPoly& f, const std::vector<OrderedPoly>& g,
                             const LocalOrder& order, int bound = -1);

/// Standard basis of the ideal generated by `gens` in the localization at the
/// origin, by Buchberger completion with Mora's normal form. Zero generators
/// are dropped. The result is monic.
///
/// As soon as the leading monomials found so far contain a power of every
/// variable, every monomial of degree >= N lies in their ideal for some N,
/// hence m^N lies in the ideal, and all further work is done modulo m^N.
std::vector<Poly> standard_basis(const std::vector<Poly>& gens, const LocalOrder& order);

/// Minimal generators of the leading ideal of a standard basis, sorted
/// decreasingly in the order.
std::vector<Monomial> leading_ideal(const std::vector<Poly>& std_basis, const LocalOrder& order);

}  // namespace icisqf
