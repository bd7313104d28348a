#include "icisqf/standard_basis.hpp"

#include <algorithm>
#include <queue>
#include <tuple>

namespace icisqf {

OrderedPoly::OrderedPoly(const Poly& p, const LocalOrder& order) {
  terms_.assign(p.terms().begin(), p.terms().end());
  std::sort(terms_.begin(), terms_.end(),
            [&](const Term& a, const Term& b) { return order.greater(a.first, b.first); });
  update_degree();
}

void OrderedPoly::update_degree() {
  degree_ = -1;
  for (const auto& [m, c] : terms_) degree_ = std::max(degree_, m.degree());
}

OrderedPoly OrderedPoly::minus_multiple(const Rational& c, const Monomial& m,
                                        const OrderedPoly& g, const LocalOrder& order) const {
  OrderedPoly r;
  r.terms_.reserve(terms_.size() + g.terms_.size());
  auto a = terms_.begin();
  auto b = g.terms_.begin();
  while (a != terms_.end() || b != g.terms_.end()) {
    if (b == g.terms_.end()) {
      r.terms_.push_back(*a++);
      continue;
    }
    Monomial mb = b->first * m;
    if (a == terms_.end() || order.greater(mb, a->first)) {
      r.terms_.emplace_back(std::move(mb), -c * b->second);
      ++b;
    } else if (order.greater(a->first, mb)) {
      r.terms_.push_back(*a++);
    } else {
      Rational v = a->second - c * b->second;
      if (v != 0) r.terms_.emplace_back(a->first, std::move(v));
      ++a;
      ++b;
    }
  }
  r.update_degree();
  return r;
}

void OrderedPoly::make_monic() {
  if (terms_.empty()) return;
  const Rational lead = terms_.front().second;
  for (auto& [m, c] : terms_) c /= lead;
}

void OrderedPoly::truncate(int bound) {
  // Terms are sorted by increasing degree.
  while (!terms_.empty() && terms_.back().first.degree() >= bound) terms_.pop_back();
  update_degree();
}

void OrderedPoly::truncate_tail(int bound) {
  while (terms_.size() > 1 && terms_.back().first.degree() >= bound) terms_.pop_back();
  update_degree();
}

Poly OrderedPoly::to_poly(int nvars) const {
  Poly p(nvars);
  for (const auto& [m, c] : terms_) p.add_term(m, c);
  return p;
}

OrderedPoly mora_normal_form(const OrderedPoly& f, const std::vector<OrderedPoly>& g,
                             const LocalOrder& order, int bound) {
  OrderedPoly h = f;
  if (bound > 0) h.truncate(bound);
  std::vector<OrderedPoly> reducers = g;
  while (!h.is_zero()) {
    const OrderedPoly* best = nullptr;
    for (const auto& cand : reducers) {
      if (!cand.lead_monomial().divides(h.lead_monomial())) continue;
      if (best == nullptr || cand.ecart() < best->ecart() ||
          (cand.ecart() == best->ecart() &&
           order.greater(best->lead_monomial(), cand.lead_monomial()))) {
        best = &cand;
      }
    }
    if (best == nullptr) break;
    const OrderedPoly reducer = *best;
    if (reducer.ecart() > h.ecart()) reducers.push_back(h);
    const Rational c = h.lead_coeff() / reducer.lead_coeff();
    const Monomial m = reducer.lead_monomial().quotient_of(h.lead_monomial());
    h = h.minus_multiple(c, m, reducer, order);
    if (bound > 0) h.truncate(bound);
  }
  return h;
}

namespace {

OrderedPoly s_polynomial(const OrderedPoly& a, const OrderedPoly& b, const LocalOrder& order) {
  const Monomial l = a.lead_monomial().lcm(b.lead_monomial());
  // a, b are monic: l/LM(a) * a - l/LM(b) * b.
  OrderedPoly scaled_a;
  scaled_a = OrderedPoly().minus_multiple(Rational(-1), a.lead_monomial().quotient_of(l), a, order);
  return scaled_a.minus_multiple(Rational(1), b.lead_monomial().quotient_of(l), b, order);
}

/// Smallest N with every monomial of degree >= N divisible by some lead, or
/// -1 when some variable has no pure power among them.
int corner_bound(const std::vector<OrderedPoly>& basis, int nvars) {
  std::vector<int> power(static_cast<std::size_t>(nvars), -1);
  std::vector<Monomial> leads;
  for (const auto& b : basis) {
    const Monomial& m = b.lead_monomial();
    leads.push_back(m);
    int var = -1;
    for (int v = 0; v < nvars; ++v) {
      if (m[v] == 0) continue;
      var = var == -1 ? v : -2;
    }
    if (var >= 0) {
      auto& p = power[static_cast<std::size_t>(var)];
      p = p < 0 ? m[var] : std::min(p, m[var]);
    }
  }
  for (int p : power) {
    if (p < 0) return -1;
  }
  // Walk the box below the pure powers; standard monomials lie inside it.
  int top = -1;
  std::vector<int> e(static_cast<std::size_t>(nvars), 0);
  while (true) {
    const Monomial m(e);
    const bool covered = std::any_of(leads.begin(), leads.end(), [&](const Monomial& l) { return l.divides(m); });
    if (!covered) top = std::max(top, m.degree());
    int i = 0;
    while (i < nvars && ++e[static_cast<std::size_t>(i)] >= power[static_cast<std::size_t>(i)]) {
      e[static_cast<std::size_t>(i++)] = 0;
    }
    if (i == nvars) break;
  }
  return top + 1;
}

}  // namespace

std::vector<Poly> standard_basis(const std::vector<Poly>& gens, const LocalOrder& order) {
  const int nvars = order.nvars();
  std::vector<OrderedPoly> basis;
  for (const Poly& p : gens) {
    if (p.nvars() != nvars) throw std::invalid_argument("standard_basis: wrong variable count");
    if (p.is_zero()) continue;
    OrderedPoly q(p, order);
    q.make_monic();
    basis.push_back(std::move(q));
  }

  // Pairs by (degree of lcm of leading monomials, i, j): the normal strategy.
  using Pair = std::tuple<int, std::size_t, std::size_t>;
  std::priority_queue<Pair, std::vector<Pair>, std::greater<>> pairs;
  auto push_pairs_with = [&](std::size_t j) {
    for (std::size_t i = 0; i < j; ++i) {
      const int d = basis[i].lead_monomial().lcm(basis[j].lead_monomial()).degree();
      pairs.emplace(d, i, j);
    }
  };
  for (std::size_t j = 1; j < basis.size(); ++j) push_pairs_with(j);

  int bound = -1;
  auto update_bound = [&] {
    const int b = corner_bound(basis, nvars);
    if (b < 0 || (bound > 0 && b >= bound)) return;
    bound = b;
    for (auto& g : basis) g.truncate_tail(bound);
  };
  update_bound();

  while (!pairs.empty()) {
    const auto [d, i, j] = pairs.top();
    pairs.pop();
    // Pairs whose lcm lies in m^bound reduce to zero modulo m^bound.
    if (bound > 0 && d >= bound) continue;
    OrderedPoly s = s_polynomial(basis[i], basis[j], order);
    if (bound > 0) s.truncate(bound);
    if (s.is_zero()) continue;
    OrderedPoly h = mora_normal_form(s, basis, order, bound);
    if (h.is_zero()) continue;
    h.make_monic();
    basis.push_back(std::move(h));
    push_pairs_with(basis.size() - 1);
    update_bound();
  }

  std::vector<Poly> out;
  out.reserve(basis.size());
  for (const auto& b : basis) out.push_back(b.to_poly(nvars));
  return out;
}

std::vector<Monomial> leading_ideal(const std::vector<Poly>& std_basis, const LocalOrder& order) {
  std::vector<Monomial> leads;
  for (const Poly& p : std_basis) {
    if (p.is_zero()) continue;
    leads.push_back(OrderedPoly(p, order).lead_monomial());
  }
  std::sort(leads.begin(), leads.end());
  leads.erase(std::unique(leads.begin(), leads.end()), leads.end());
  std::vector<Monomial> minimal;
  for (const auto& m : leads) {
    bool redundant = false;
    for (const auto& other : leads) {
      if (other != m && other.divides(m)) {
        redundant = true;
        break;
      }
    }
    if (!redundant) minimal.push_back(m);
  }
  std::sort(minimal.begin(), minimal.end(), order);
  return minimal;
}

}  // namespace icisqf
