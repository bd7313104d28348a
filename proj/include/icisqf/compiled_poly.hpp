#pragma once

#include "icisqf/poly.hpp"

#include <Eigen/Dense>

#include <span>
#include <vector>

namespace icisqf {

/// Polynomial with complex double coefficients in sparse factored form, for
/// repeated evaluation inside the path tracker.
class CompiledPoly {
 public:
  CompiledPoly() = default;
  explicit CompiledPoly(int nvars) : nvars_(nvars) {}
  CompiledPoly(const Poly& p, cd scale = 1.0);

  /// Adds scale * p term by term.
  void add(const Poly& p, cd scale);
  /// Drops zero coefficients and merges equal monomials.
  void normalize();

  int nvars() const { return nvars_; }
  int degree() const;
  bool empty() const { return terms_.empty(); }
  CompiledPoly derivative(int var) const;

  /// `powers[v][e]` must hold z_v^e for every exponent that occurs.
  cd evaluate(const std::vector<std::vector<cd>>& powers) const;
  cd evaluate(std::span<const cd> z) const;

 private:
  struct Term {
    cd coeff;
    std::vector<int> exps;
  };
  int nvars_ = 0;
  std::vector<Term> terms_;
};

/// Square or rectangular polynomial system with its Jacobian compiled.
class CompiledSystem {
 public:
  CompiledSystem() = default;
  explicit CompiledSystem(std::vector<CompiledPoly> equations);

  int size() const { return static_cast<int>(equations_.size()); }
  int nvars() const { return nvars_; }
  const std::vector<CompiledPoly>& equations() const { return equations_; }
  std::vector<int> degrees() const;

  void evaluate(std::span<const cd> z, Eigen::VectorXcd& value) const;
  void evaluate(std::span<const cd> z, Eigen::VectorXcd& value, Eigen::MatrixXcd& jac) const;

 private:
  std::vector<std::vector<cd>> power_table(std::span<const cd> z) const;

  int nvars_ = 0;
  int max_degree_ = 0;
  std::vector<CompiledPoly> equations_;
  std::vector<std::vector<CompiledPoly>> jacobian_;
};

}  // namespace icisqf
