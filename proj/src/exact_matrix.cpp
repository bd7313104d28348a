#include "icisqf/exact_matrix.hpp"

#include <stdexcept>

namespace icisqf {

RationalMatrix RationalMatrix::transpose() const {
  RationalMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  }
  return t;
}

RationalMatrix RationalMatrix::operator*(const RationalMatrix& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("RationalMatrix: shape mismatch");
  RationalMatrix r(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const Rational& a = (*this)(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) += a * o(k, j);
    }
  }
  return r;
}

bool RationalMatrix::is_symmetric() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = i + 1; j < cols_; ++j) {
      if ((*this)(i, j) != (*this)(j, i)) return false;
    }
  }
  return true;
}

Eigen::MatrixXd RationalMatrix::to_double() const {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows_), static_cast<Eigen::Index>(cols_));
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = (*this)(i, j).get_d();
    }
  }
  return m;
}

std::size_t exact_rank(const RationalMatrix& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<std::vector<mpz_class>> a(rows, std::vector<mpz_class>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    mpz_class l = 1;
    for (std::size_t j = 0; j < cols; ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).get_den_mpz_t());
    for (std::size_t j = 0; j < cols; ++j) {
      a[i][j] = m(i, j).get_num() * (l / m(i, j).get_den());
    }
  }
  mpz_class prev = 1;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t piv = rank;
    while (piv < rows && a[piv][col] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[rank], a[piv]);
    for (std::size_t i = rank + 1; i < rows; ++i) {
      for (std::size_t j = col + 1; j < cols; ++j) {
        a[i][j] = (a[rank][col] * a[i][j] - a[i][col] * a[rank][j]) / prev;
      }
      a[i][col] = 0;
    }
    prev = a[rank][col];
    ++rank;
  }
  return rank;
}

Inertia exact_inertia(const RationalMatrix& symmetric) {
  if (!symmetric.is_symmetric()) {
    throw std::invalid_argument("exact_inertia: matrix is not symmetric");
  }
  RationalMatrix a = symmetric;
  const std::size_t n = a.rows();
  std::vector<bool> done(n, false);
  Inertia inertia;
  std::size_t remaining = n;

  auto eliminate_with = [&](std::size_t p) {
    // Schur complement with respect to the 1x1 pivot a(p,p).
    const Rational d = a(p, p);
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i] || i == p || a(i, p) == 0) continue;
      const Rational f = a(i, p) / d;
      for (std::size_t j = 0; j < n; ++j) {
        if (done[j] || j == p) continue;
        a(i, j) -= f * a(p, j);
      }
    }
    done[p] = true;
    --remaining;
  };

  while (remaining > 0) {
    std::size_t p = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (!done[i] && a(i, i) != 0) {
        p = i;
        break;
      }
    }
    if (p < n) {
      if (a(p, p) > 0) {
        ++inertia.positive;
      } else {
        ++inertia.negative;
      }
      eliminate_with(p);
      continue;
    }
    // All remaining diagonal entries vanish; look for an off-diagonal pair.
    std::size_t r = n, s = n;
    for (std::size_t i = 0; i < n && r == n; ++i) {
      if (done[i]) continue;
      for (std::size_t j = i + 1; j < n; ++j) {
        if (!done[j] && a(i, j) != 0) {
          r = i;
          s = j;
          break;
        }
      }
    }
    if (r == n) {
      inertia.zero += remaining;
      break;
    }
    // Block B = [[0,b],[b,0]], B^{-1} = [[0,1/b],[1/b,0]].
    // Schur complement: a(i,j) -= a(i,r) a(s,j)/b + a(i,s) a(r,j)/b.
    const Rational b = a(r, s);
    std::vector<Rational> col_r(n), col_s(n);
    for (std::size_t i = 0; i < n; ++i) {
      col_r[i] = a(i, r);
      col_s[i] = a(i, s);
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i] || i == r || i == s) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (done[j] || j == r || j == s) continue;
        a(i, j) -= (col_r[i] * col_s[j] + col_s[i] * col_r[j]) / b;
      }
    }
    done[r] = done[s] = true;
    remaining -= 2;
    ++inertia.positive;
    ++inertia.negative;
  }
  return inertia;
}

Inertia numeric_inertia(const Eigen::MatrixXd& symmetric, double tol) {
  Inertia inertia;
  if (symmetric.rows() == 0) return inertia;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(symmetric, Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();
  const double scale = ev.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (std::abs(ev(i)) <= tol * scale || scale == 0.0) {
      ++inertia.zero;
    } else if (ev(i) > 0) {
      ++inertia.positive;
    } else {
      ++inertia.negative;
    }
  }
  return inertia;
}

}  // namespace icisqf
