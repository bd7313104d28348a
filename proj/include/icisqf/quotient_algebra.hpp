#pragma once

#include "icisqf/local_order.hpp"
#include "icisqf/poly.hpp"
#include "icisqf/sparse_echelon.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

namespace icisqf {

/// Dimension of a quotient of the local ring: finite or infinite.
class Colength {
 public:
  static Colength finite(std::size_t n) { return Colength(n); }
  static Colength infinite() { return Colength(); }

  bool is_infinite() const { return !value_.has_value(); }
  std::size_t value() const;

  bool operator==(const Colength&) const = default;

 private:
  Colength() = default;
  explicit Colength(std::size_t n) : value_(n) {}
  std::optional<std::size_t> value_;
};

class InfiniteColength : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Coordinates of a class over the monomial basis of a quotient algebra.
using Coords = std::vector<Rational>;

/// O/I for a polynomial ideal I in the local ring at the origin.
///
/// When the colength is finite, the algebra is modelled exactly by
/// Q[x]/(I + m^N) with N the truncation order (m^N lies in I). Normal forms are
/// canonical: they come from a fully reduced echelon basis of the image of I
/// in Q[x]/m^N with columns sorted decreasingly in the local order, whose
/// non-pivot columns are exactly the standard monomials.
class QuotientAlgebra {
 public:
  QuotientAlgebra(std::vector<Poly> generators, LocalOrder order);
  explicit QuotientAlgebra(std::vector<Poly> generators);

  int nvars() const { return order_.nvars(); }
  const LocalOrder& order() const { return order_; }
  const std::vector<Poly>& generators() const { return generators_; }
  const std::vector<Poly>& std_basis() const { return std_basis_; }
  const std::vector<Monomial>& leading_ideal() const { return leading_; }

  Colength colength() const;
  /// Smallest N with every monomial of degree >= N in the leading ideal.
  int truncation_order() const;
  /// Standard monomials ordered by degree, then x1 before x2 before ...
  const std::vector<Monomial>& basis() const;
  std::size_t dim() const { return basis().size(); }

  Coords normal_form(const Poly& p) const;
  /// Sum of coords[i] * basis[i].
  Poly to_poly(const Coords& coords) const;
  Coords multiply(const Coords& a, const Coords& b) const;
  /// Coordinates of a basis element.
  Coords unit_vector(std::size_t i) const;

 private:
  void require_finite() const;
  SparseRow to_row(const Poly& p) const;

  std::vector<Poly> generators_;
  LocalOrder order_;
  std::vector<Poly> std_basis_;
  std::vector<Monomial> leading_;
  bool finite_ = false;
  int truncation_ = 0;
  std::vector<Monomial> basis_;
  // Monomials of degree < N sorted decreasingly in the local order.
  std::vector<Monomial> columns_;
  std::map<Monomial, int> column_of_;
  std::vector<int> basis_index_of_column_;
  SparseEchelon relations_;
};

/// All monomials in `nvars` variables of total degree < bound.
std::vector<Monomial> monomials_below(int nvars, int bound);

}  // namespace icisqf
