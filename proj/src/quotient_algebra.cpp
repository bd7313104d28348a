#include "icisqf/quotient_algebra.hpp"

#include "icisqf/standard_basis.hpp"

#include <algorithm>
#include <climits>

namespace icisqf {

std::size_t Colength::value() const {
  if (!value_) throw InfiniteColength("colength is infinite");
  return *value_;
}

std::vector<Monomial> monomials_below(int nvars, int bound) {
  std::vector<Monomial> out;
  if (bound <= 0) return out;
  std::vector<int> e(static_cast<std::size_t>(nvars), 0);
  // Odometer over exponent vectors with total degree < bound.
  while (true) {
    out.emplace_back(e);
    int i = nvars - 1;
    while (i >= 0) {
      e[static_cast<std::size_t>(i)] += 1;
      int total = 0;
      for (int v : e) total += v;
      if (total < bound) break;
      e[static_cast<std::size_t>(i)] = 0;
      --i;
    }
    if (i < 0) break;
  }
  return out;
}

namespace {

bool in_ideal(const Monomial& m, const std::vector<Monomial>& leads) {
  return std::any_of(leads.begin(), leads.end(), [&](const Monomial& l) { return l.divides(m); });
}

std::vector<Monomial> monomials_of_degree(int nvars, int degree) {
  std::vector<Monomial> out;
  for (auto& m : monomials_below(nvars, degree + 1)) {
    if (m.degree() == degree) out.push_back(std::move(m));
  }
  return out;
}

}  // namespace

QuotientAlgebra::QuotientAlgebra(std::vector<Poly> generators)
    : QuotientAlgebra(generators, LocalOrder(generators.empty() ? 0 : generators.front().nvars())) {}

QuotientAlgebra::QuotientAlgebra(std::vector<Poly> generators, LocalOrder order)
    : generators_(std::move(generators)), order_(std::move(order)) {
  const int n = order_.nvars();
  std_basis_ = standard_basis(generators_, order_);
  leading_ = icisqf::leading_ideal(std_basis_, order_);

  // Finite iff every variable has a pure power in the leading ideal.
  std::vector<int> pure(static_cast<std::size_t>(n), INT_MAX);
  for (const Monomial& l : leading_) {
    int support = 0, var = -1;
    for (int v = 0; v < n; ++v) {
      if (l[v] > 0) {
        ++support;
        var = v;
      }
    }
    if (support == 0) {
      std::fill(pure.begin(), pure.end(), 0);
    } else if (support == 1) {
      pure[static_cast<std::size_t>(var)] = std::min(pure[static_cast<std::size_t>(var)], l[var]);
    }
  }
  finite_ = std::none_of(pure.begin(), pure.end(), [](int p) { return p == INT_MAX; });
  if (!finite_) return;

  int bound = 1;
  for (int p : pure) bound += std::max(p - 1, 0);
  truncation_ = bound;
  for (int d = 0; d <= bound; ++d) {
    const auto mons = monomials_of_degree(n, d);
    if (std::all_of(mons.begin(), mons.end(), [&](const Monomial& m) { return in_ideal(m, leading_); })) {
      truncation_ = d;
      break;
    }
  }

  columns_ = monomials_below(n, truncation_);
  std::sort(columns_.begin(), columns_.end(), order_);
  for (std::size_t c = 0; c < columns_.size(); ++c) column_of_.emplace(columns_[c], static_cast<int>(c));

  for (const Monomial& m : monomials_below(n, truncation_)) {
    if (!in_ideal(m, leading_)) basis_.push_back(m);
  }
  std::sort(basis_.begin(), basis_.end(), [](const Monomial& a, const Monomial& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return a > b;
  });

  const auto multipliers = monomials_below(n, truncation_);
  for (const Poly& g : generators_) {
    if (g.is_zero()) continue;
    for (const Monomial& a : multipliers) {
      SparseRow row = to_row(g.shifted(a));
      if (!row.empty()) relations_.insert(std::move(row));
    }
  }

  basis_index_of_column_.assign(columns_.size(), -1);
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    basis_index_of_column_[static_cast<std::size_t>(column_of_.at(basis_[i]))] = static_cast<int>(i);
  }
  for (std::size_t c = 0; c < columns_.size(); ++c) {
    const bool standard = basis_index_of_column_[c] >= 0;
    if (standard == relations_.is_pivot(static_cast<int>(c))) {
      throw std::logic_error("QuotientAlgebra: leading ideal disagrees with truncated relations");
    }
  }
}

Colength QuotientAlgebra::colength() const {
  return finite_ ? Colength::finite(basis_.size()) : Colength::infinite();
}

void QuotientAlgebra::require_finite() const {
  if (!finite_) throw InfiniteColength("quotient algebra has infinite colength");
}

int QuotientAlgebra::truncation_order() const {
  require_finite();
  return truncation_;
}

const std::vector<Monomial>& QuotientAlgebra::basis() const {
  require_finite();
  return basis_;
}

SparseRow QuotientAlgebra::to_row(const Poly& p) const {
  SparseRow row;
  for (const auto& [m, c] : p.terms()) {
    if (m.degree() >= truncation_) continue;
    row.emplace_back(column_of_.at(m), c);
  }
  std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return row;
}

Coords QuotientAlgebra::normal_form(const Poly& p) const {
  require_finite();
  if (p.nvars() != nvars()) throw std::invalid_argument("normal_form: wrong variable count");
  Coords out(basis_.size(), Rational(0));
  for (const auto& [c, v] : relations_.reduce(to_row(p))) {
    out[static_cast<std::size_t>(basis_index_of_column_[static_cast<std::size_t>(c)])] = v;
  }
  return out;
}

Poly QuotientAlgebra::to_poly(const Coords& coords) const {
  require_finite();
  Poly p(nvars());
  for (std::size_t i = 0; i < coords.size(); ++i) p.add_term(basis_[i], coords[i]);
  return p;
}

Coords QuotientAlgebra::multiply(const Coords& a, const Coords& b) const {
  return normal_form(to_poly(a) * to_poly(b));
}

Coords QuotientAlgebra::unit_vector(std::size_t i) const {
  Coords e(dim(), Rational(0));
  e.at(i) = 1;
  return e;
}

}  // namespace icisqf
