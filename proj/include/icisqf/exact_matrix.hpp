#pragma once

#include "icisqf/rational.hpp"

#include <Eigen/Dense>

#include <vector>

namespace icisqf {

/// Dense row-major matrix over Q.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, Rational(0)) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  RationalMatrix transpose() const;
  RationalMatrix operator*(const RationalMatrix& o) const;
  bool operator==(const RationalMatrix& o) const = default;
  bool is_symmetric() const;

  Eigen::MatrixXd to_double() const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Rational> data_;
};

/// Rank by fraction-free (Bareiss) elimination on the integer matrix obtained
/// by clearing row denominators.
std::size_t exact_rank(const RationalMatrix& m);

struct Inertia {
  std::size_t positive = 0;
  std::size_t negative = 0;
  std::size_t zero = 0;
  long signature() const { return static_cast<long>(positive) - static_cast<long>(negative); }
  std::size_t rank() const { return positive + negative; }
};

/// Sylvester inertia of a symmetric rational matrix by congruence
/// diagonalization. A zero diagonal with a nonzero off-diagonal entry b is
/// split off as the 2x2 block [[0,b],[b,0]], which has one positive and one
/// negative eigenvalue.
Inertia exact_inertia(const RationalMatrix& symmetric);

/// Eigenvalue sign count of a real symmetric matrix; eigenvalues with
/// |lambda| <= tol * max|lambda| count as zero.
Inertia numeric_inertia(const Eigen::MatrixXd& symmetric, double tol = 1e-9);

}  // namespace icisqf
