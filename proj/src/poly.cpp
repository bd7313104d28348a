#include "icisqf/poly.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace icisqf {

Monomial::Monomial(std::vector<int> exps) : exps_(std::move(exps)) {
  for (int e : exps_) {
    if (e < 0) throw std::invalid_argument("Monomial: negative exponent");
  }
}

Monomial Monomial::unit(int nvars, int var, int power) {
  Monomial m(nvars);
  m.exps_.at(static_cast<std::size_t>(var)) = power;
  return m;
}

int Monomial::degree() const {
  return std::accumulate(exps_.begin(), exps_.end(), 0);
}

bool Monomial::divides(const Monomial& other) const {
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    if (exps_[i] > other.exps_[i]) return false;
  }
  return true;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial r(*this);
  for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] += other.exps_[i];
  return r;
}

Monomial Monomial::quotient_of(const Monomial& other) const {
  Monomial r(other);
  for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] -= exps_[i];
  return r;
}

Monomial Monomial::lcm(const Monomial& other) const {
  Monomial r(*this);
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    r.exps_[i] = std::max(exps_[i], other.exps_[i]);
  }
  return r;
}

Poly Poly::constant(int nvars, const Rational& c) {
  Poly p(nvars);
  p.add_term(Monomial(nvars), c);
  return p;
}

Poly Poly::variable(int nvars, int index) {
  if (index < 0 || index >= nvars) {
    throw std::out_of_range("Poly::variable: index out of range");
  }
  return term(Monomial::unit(nvars, index));
}

Poly Poly::term(const Monomial& m, const Rational& c) {
  Poly p(m.nvars());
  p.add_term(m, c);
  return p;
}

Rational Poly::coeff(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

Rational Poly::constant_term() const { return coeff(Monomial(nvars_)); }

int Poly::degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
  return d;
}

int Poly::order() const {
  if (terms_.empty()) return -1;
  int d = terms_.begin()->first.degree();
  for (const auto& [m, c] : terms_) d = std::min(d, m.degree());
  return d;
}

void Poly::add_term(const Monomial& m, const Rational& c) {
  if (m.nvars() != nvars_) {
    throw std::invalid_argument("Poly: monomial has wrong number of variables");
  }
  if (c == 0) return;
  // Callers may hand in a non-canonical mpq.
  Rational v(c);
  v.canonicalize();
  auto [it, inserted] = terms_.try_emplace(m, v);
  if (!inserted) {
    it->second += v;
    if (it->second == 0) terms_.erase(it);
  }
}

void Poly::check_compatible(const Poly& o) const {
  if (nvars_ != o.nvars_) {
    throw std::invalid_argument("Poly: operands have different variable counts");
  }
}

Poly& Poly::operator+=(const Poly& o) {
  check_compatible(o);
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  check_compatible(o);
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  a.check_compatible(b);
  Poly r(a.nvars_);
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
  }
  return r;
}

Poly& Poly::operator*=(const Poly& o) {
  *this = *this * o;
  return *this;
}

Poly& Poly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

Poly Poly::operator-() const {
  Poly r(*this);
  for (auto& [m, v] : r.terms_) v = -v;
  return r;
}

Poly Poly::pow(unsigned e) const {
  Poly result = constant(nvars_, 1);
  Poly base = *this;
  while (e > 0) {
    if (e & 1u) result *= base;
    e >>= 1u;
    if (e > 0) base *= base;
  }
  return result;
}

Poly Poly::truncated(int bound) const {
  Poly r(nvars_);
  for (const auto& [m, c] : terms_) {
    if (m.degree() < bound) r.terms_.emplace_hint(r.terms_.end(), m, c);
  }
  return r;
}

Poly Poly::shifted(const Monomial& m) const {
  Poly r(nvars_);
  for (const auto& [t, c] : terms_) r.terms_.emplace(t * m, c);
  return r;
}

CPoint::CPoint(std::vector<cd> coords) : coords_(std::move(coords)) {
  for (const cd& z : coords_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw std::invalid_argument("CPoint: non-finite coordinate");
    }
  }
}

Poly diff(const Poly& p, int var_index) {
  if (var_index < 0 || var_index >= p.nvars()) {
    throw std::out_of_range("diff: variable index out of range");
  }
  Poly r(p.nvars());
  for (const auto& [m, c] : p.terms()) {
    const int e = m[var_index];
    if (e == 0) continue;
    std::vector<int> exps = m.exponents();
    exps[static_cast<std::size_t>(var_index)] -= 1;
    r.add_term(Monomial(std::move(exps)), c * e);
  }
  return r;
}

namespace {

int common_nvars(const PolyMatrix& m) {
  const std::size_t n = m.size();
  for (const auto& row : m) {
    if (row.size() != n) throw std::invalid_argument("det: matrix is not square");
  }
  if (n == 0) return 0;
  const int nv = m[0][0].nvars();
  for (const auto& row : m) {
    for (const auto& e : row) {
      if (e.nvars() != nv) {
        throw std::invalid_argument("det: entries have different variable counts");
      }
    }
  }
  return nv;
}

Poly laplace(const PolyMatrix& m, int nv) {
  const std::size_t n = m.size();
  if (n == 1) return m[0][0];
  if (n == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
  Poly r(nv);
  for (std::size_t j = 0; j < n; ++j) {
    if (m[0][j].is_zero()) continue;
    PolyMatrix minor;
    minor.reserve(n - 1);
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<Poly> row;
      row.reserve(n - 1);
      for (std::size_t c = 0; c < n; ++c) {
        if (c != j) row.push_back(m[i][c]);
      }
      minor.push_back(std::move(row));
    }
    Poly term = m[0][j] * laplace(minor, nv);
    if (j % 2 == 0) {
      r += term;
    } else {
      r -= term;
    }
  }
  return r;
}

Poly bareiss(PolyMatrix a, int nv) {
  const std::size_t n = a.size();
  Poly prev = Poly::constant(nv, 1);
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k].is_zero()) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && a[swap_row][k].is_zero()) ++swap_row;
      if (swap_row == n) return Poly(nv);
      std::swap(a[k], a[swap_row]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a[i][j] = exact_divide(a[k][k] * a[i][j] - a[i][k] * a[k][j], prev);
      }
    }
    prev = a[k][k];
  }
  Poly d = a[n - 1][n - 1];
  return negate ? -d : d;
}

}  // namespace

Poly det(const PolyMatrix& m) {
  const int nv = common_nvars(m);
  if (m.empty()) return Poly::constant(nv, 1);
  if (m.size() <= 4) return laplace(m, nv);
  return bareiss(m, nv);
}

Poly exact_divide(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw std::domain_error("exact_divide: division by zero");
  if (a.nvars() != b.nvars()) {
    throw std::invalid_argument("exact_divide: different variable counts");
  }
  // Lex-leading terms are the last map entries.
  const auto& [lead_m, lead_c] = *b.terms().rbegin();
  Poly quotient(a.nvars());
  Poly rest = a;
  while (!rest.is_zero()) {
    const auto& [rm, rc] = *rest.terms().rbegin();
    if (!lead_m.divides(rm)) {
      throw std::domain_error("exact_divide: divisor does not divide dividend");
    }
    Poly t = Poly::term(lead_m.quotient_of(rm), rc / lead_c);
    quotient += t;
    rest -= t * b;
  }
  return quotient;
}

cd eval(const Poly& p, std::span<const cd> point) {
  if (static_cast<int>(point.size()) != p.nvars()) {
    throw std::invalid_argument("eval: dimension mismatch");
  }
  // Powers are cached per variable; each term is then a product of lookups.
  const int nv = p.nvars();
  std::vector<int> max_exp(static_cast<std::size_t>(nv), 0);
  for (const auto& [m, c] : p.terms()) {
    for (int i = 0; i < nv; ++i) max_exp[i] = std::max(max_exp[i], m[i]);
  }
  std::vector<std::vector<cd>> powers(static_cast<std::size_t>(nv));
  for (int i = 0; i < nv; ++i) {
    auto& pw = powers[static_cast<std::size_t>(i)];
    pw.resize(static_cast<std::size_t>(max_exp[i]) + 1);
    pw[0] = 1.0;
    for (int e = 1; e <= max_exp[i]; ++e) pw[e] = pw[e - 1] * point[i];
  }
  cd sum = 0.0;
  for (const auto& [m, c] : p.terms()) {
    cd t = to_double(c);
    for (int i = 0; i < nv; ++i) {
      if (m[i] != 0) t *= powers[i][m[i]];
    }
    sum += t;
  }
  return sum;
}

cd eval(const Poly& p, const CPoint& point) {
  return eval(p, std::span<const cd>(point.coords()));
}

std::vector<std::string> default_variable_names(int nvars) {
  std::vector<std::string> names;
  for (int i = 1; i <= nvars; ++i) names.push_back("x" + std::to_string(i));
  return names;
}

std::string to_string(const Monomial& m, std::span<const std::string> vars) {
  std::string out;
  for (int i = 0; i < m.nvars(); ++i) {
    if (m[i] == 0) continue;
    if (!out.empty()) out += '*';
    out += vars[static_cast<std::size_t>(i)];
    if (m[i] > 1) out += '^' + std::to_string(m[i]);
  }
  return out.empty() ? "1" : out;
}

std::string to_string(const Poly& p, std::span<const std::string> vars) {
  if (static_cast<int>(vars.size()) != p.nvars()) {
    throw std::invalid_argument("to_string: wrong number of variable names");
  }
  if (p.is_zero()) return "0";
  std::vector<const Poly::TermMap::value_type*> order;
  for (const auto& t : p.terms()) order.push_back(&t);
  std::stable_sort(order.begin(), order.end(), [](auto* a, auto* b) {
    const int da = a->first.degree(), db = b->first.degree();
    if (da != db) return da > db;
    return a->first > b->first;
  });
  std::string out;
  bool first = true;
  for (const auto* t : order) {
    const Monomial& m = t->first;
    Rational c = t->second;
    const bool constant = m.degree() == 0;
    if (first) {
      if (constant) {
        out += to_string(c);
      } else if (c == 1) {
        out += to_string(m, vars);
      } else {
        out += to_string(c) + "*" + to_string(m, vars);
      }
      first = false;
      continue;
    }
    out += c < 0 ? " - " : " + ";
    c = abs(c);
    if (constant) {
      out += to_string(c);
    } else if (c == 1) {
      out += to_string(m, vars);
    } else {
      out += to_string(c) + "*" + to_string(m, vars);
    }
  }
  return out;
}

std::string to_string(const Poly& p) {
  const auto names = default_variable_names(p.nvars());
  return to_string(p, names);
}

}  // namespace icisqf
