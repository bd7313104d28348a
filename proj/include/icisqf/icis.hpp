#pragma once

#include "icisqf/poly.hpp"
#include "icisqf/quotient_algebra.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace icisqf {

/// A complete intersection f = (f_1..f_k) in C^n with a 1-form
/// omega = sum A_j dx_j.
struct ProblemInstance {
  int n = 0;
  int k = 0;
  std::vector<Poly> f;
  std::vector<Poly> A;
  std::vector<std::string> vars;

  /// Validates shapes and f_i(0) = 0; empty `vars` means x1..xn.
  static ProblemInstance make(std::vector<Poly> f, std::vector<Poly> A,
                              std::vector<std::string> vars = {});
  /// Parses every polynomial with `vars`.
  static ProblemInstance parse(const std::vector<std::string>& f, const std::vector<std::string>& A,
                               const std::vector<std::string>& vars);

  /// Rational input is always real.
  bool real() const { return true; }
};

class NotIsolated : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Inconclusive : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Increasing `size`-subsets of {0..n-1} in lex order.
std::vector<std::vector<int>> subsets(int n, int size);

/// Sign of the permutation that sorts the concatenation (first, second).
int shuffle_sign(const std::vector<int>& first, const std::vector<int>& second);

/// Sorted complement of an increasing subset of {0..n-1}.
std::vector<int> complement(int n, const std::vector<int>& subset);

/// k x n matrix of partial derivatives of f.
PolyMatrix jacobian(const std::vector<Poly>& f, int nvars);

/// det(d f_i / d x_j), j in `cols` (ascending).
Poly jacobian_minor(const ProblemInstance& inst, const std::vector<int>& cols);

/// (k+1)-minor of the matrix with rows df_1..df_k, (A_1..A_n) on `cols`, taken
/// in the given column order.
Poly form_minor(const ProblemInstance& inst, const std::vector<int>& cols);

/// f_1..f_k followed by every (k+1)-minor, columns increasing.
std::vector<Poly> build_ideal(const ProblemInstance& inst);

QuotientAlgebra local_algebra(const ProblemInstance& inst);

Colength index_nu(const ProblemInstance& inst);

/// Colength of (f, all k x k Jacobian minors). Zero for k = 0, where the empty
/// minor is 1. Throws NotIsolated when infinite.
std::size_t tau_prime(const ProblemInstance& inst);

struct OmegaDimension {
  std::size_t dim = 0;
  int degree = 0;  // truncation degree at which the value stabilized
};

/// Dimension of Omega^{n-k} / (f_i Omega^{n-k}, df_i ^ Omega^{n-k-1},
/// omega ^ Omega^{n-k-1}) by truncated linear algebra. The quotient by
/// m^D is computed for D = 1, 2, ...; equal values at D and D+1 force
/// m^D = 0 on the module, so the value is exact. Throws Inconclusive past
/// max_degree.
OmegaDimension omega_module_dim(const ProblemInstance& inst, int max_degree = 12);

}  // namespace icisqf
