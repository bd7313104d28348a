#include "oracles.hpp"

#include <Eigen/Dense>

#include <map>

namespace oracle {

using icisqf::Rational;

std::vector<Monomial> monomials_below_degree(int n, int bound) {
  std::vector<Monomial> out;
  std::vector<int> e(static_cast<std::size_t>(n), 0);
  // Odometer over exponent vectors with every entry < bound.
  while (true) {
    int deg = 0;
    for (int v : e) deg += v;
    if (deg < bound) out.push_back(Monomial(e));
    int i = 0;
    while (i < n && ++e[static_cast<std::size_t>(i)] >= bound) e[static_cast<std::size_t>(i++)] = 0;
    if (i == n) break;
  }
  return out;
}

std::size_t macaulay_colength(const std::vector<Poly>& gens, int n, int D) {
  const std::vector<Monomial> cols = monomials_below_degree(n, D);
  std::map<Monomial, std::size_t> index;
  for (std::size_t i = 0; i < cols.size(); ++i) index[cols[i]] = i;
  std::vector<std::vector<Rational>> rows;
  for (const Poly& g : gens) {
    for (const Monomial& m : cols) {
      std::vector<Rational> row(cols.size(), 0);
      bool any = false;
      for (const auto& [mono, c] : g.terms()) {
        const Monomial p = mono * m;
        if (p.degree() < D) {
          row[index.at(p)] += c;
          any = true;
        }
      }
      if (any) rows.push_back(std::move(row));
    }
  }
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols.size() && rank < rows.size(); ++c) {
    std::size_t p = rank;
    while (p < rows.size() && rows[p][c] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[rank]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][c] == 0) continue;
      const Rational factor = rows[r][c] / rows[rank][c];
      for (std::size_t j = c; j < cols.size(); ++j) rows[r][j] -= factor * rows[rank][j];
    }
    ++rank;
  }
  return cols.size() - rank;
}

cd jtilde_restricted_hessian(const icisqf::ProblemInstance& inst, const std::vector<cd>& x,
                             const std::vector<cd>& lambda, const std::vector<int>& K) {
  const int n = inst.n, k = inst.k;
  std::vector<int> L;
  for (int j = 0; j < n; ++j) {
    if (std::find(K.begin(), K.end(), j) == K.end()) L.push_back(j);
  }
  Eigen::MatrixXcd df(k, n);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < n; ++j) df(i, j) = icisqf::eval(icisqf::diff(inst.f[static_cast<std::size_t>(i)], j), x);
  }
  // Constant shifts of the form drop out of the derivative.
  Eigen::MatrixXcd H(n, n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      cd v = icisqf::eval(icisqf::diff(inst.A[static_cast<std::size_t>(a)], b), x);
      for (int i = 0; i < k; ++i) {
        v -= lambda[static_cast<std::size_t>(i)] *
             icisqf::eval(icisqf::diff(icisqf::diff(inst.f[static_cast<std::size_t>(i)], a), b), x);
      }
      H(a, b) = v;
    }
  }
  Eigen::MatrixXcd phi = Eigen::MatrixXcd::Zero(n, n - k);
  for (int r = 0; r < n - k; ++r) phi(L[static_cast<std::size_t>(r)], r) = 1.0;
  cd delta = 1.0;
  if (k > 0) {
    Eigen::MatrixXcd dk(k, k), dl(k, n - k);
    for (int c = 0; c < k; ++c) dk.col(c) = df.col(K[static_cast<std::size_t>(c)]);
    for (int c = 0; c < n - k; ++c) dl.col(c) = df.col(L[static_cast<std::size_t>(c)]);
    const Eigen::MatrixXcd s = -dk.fullPivLu().solve(dl);
    for (int r = 0; r < k; ++r) phi.row(K[static_cast<std::size_t>(r)]) = s.row(r);
    delta = dk.determinant();
  }
  const Eigen::MatrixXcd restricted = phi.transpose() * H * phi;
  return delta * delta * restricted.determinant();
}

}  // namespace oracle
