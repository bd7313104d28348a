#pragma once

#include "icisqf/compiled_poly.hpp"
#include "icisqf/homotopy.hpp"
#include "icisqf/icis.hpp"

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

namespace icisqf {

/// Shift (eps, alpha) of the fiber and of the 1-form.
struct Deformation {
  std::vector<cd> eps;    // k entries
  std::vector<cd> alpha;  // n entries

  /// (eps_1..eps_k, alpha_1..alpha_n).
  std::vector<cd> parameters() const;
  static Deformation from_parameters(int k, std::span<const cd> p);
};

/// The complex line t -> t * direction in (eps, alpha)-space.
struct DeformationLine {
  int k = 0;
  std::vector<cd> direction;  // unit vector of length k + n

  static DeformationLine random(int k, int n, std::uint64_t seed);
  Deformation at(cd t) const;
};

/// System in (x_1..x_n, lambda_1..lambda_k), affine in the parameters:
/// F(z; p) = base(z) + sum_m p_m * coefficient[m](z).
struct ParametricSystem {
  int n = 0;
  int k = 0;
  std::vector<Poly> base;
  std::vector<std::vector<Poly>> coefficient;  // [parameter][equation]
};

/// f_i - eps_i and A_j - alpha_j - sum_i eps_i C_ij - sum_i lambda_i df_i/dx_j.
/// `coupling` is k x n (empty for none); it lets the deformed 1-form pick up
/// eps-dependent terms.
ParametricSystem critical_system(const ProblemInstance& inst, const PolyMatrix& coupling = {});

struct CriticalPoint {
  CPoint x;
  std::vector<cd> lambda;
  double residual = 0;
  cd delta;
  cd jtilde;
  std::vector<int> block;  // K, ascending
};

struct SolverDiagnostics {
  SolveStats paths;
  int attempts = 0;
  bool used_fallback = false;
};

struct CriticalPointSet {
  std::vector<CriticalPoint> points;
  SolverDiagnostics diagnostics;
};

struct SolverConfig {
  double cluster_radius = 0.5;
  double tol_residual = 1e-12;
  double merge_factor = 1e-8;
  int retries = 3;
  int threads = 1;
};

class CountMismatch : public std::runtime_error {
 public:
  CountMismatch(const std::string& what, std::size_t found, std::size_t expected)
      : std::runtime_error(what), found_(found), expected_(expected) {}
  std::size_t found() const { return found_; }
  std::size_t expected() const { return expected_; }

 private:
  std::size_t found_, expected_;
};

class DegenerateChart : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct JacobianValue {
  cd delta;
  cd jtilde;
  std::vector<int> block;
};

/// Compiled critical system plus the derivative data needed for J~.
class CriticalProblem {
 public:
  CriticalProblem(const ProblemInstance& inst, const PolyMatrix& coupling = {});

  const ProblemInstance& instance() const { return inst_; }
  int unknowns() const { return inst_.n + inst_.k; }
  int parameter_count() const { return inst_.k + inst_.n; }

  CompiledSystem specialize(std::span<const cd> params) const;
  /// F(z; p), dF/dz, and sum_m dp_m * coefficient_m(z).
  void evaluate(const Eigen::VectorXcd& z, std::span<const cd> params, std::span<const cd> dparams,
                Eigen::VectorXcd& value, Eigen::MatrixXcd& jac, Eigen::VectorXcd& dvalue) const;

  /// All critical points with |x| < cluster_radius; throws CountMismatch if
  /// their number is not `expected`.
  CriticalPointSet solve(const Deformation& d, std::size_t expected, std::uint64_t seed,
                         const SolverConfig& cfg = {}) const;

  /// J~ on the block K maximizing |Delta_K| (first in lex order on ties).
  JacobianValue jacobian_value(const CPoint& x, const Deformation& d) const;
  /// J~ computed on a given block K.
  JacobianValue jacobian_value(const CPoint& x, const Deformation& d, const std::vector<int>& block) const;

  /// Builds a CriticalPoint from a solution z = (x, lambda).
  CriticalPoint make_point(const Eigen::VectorXcd& z, const Deformation& d) const;
  /// Sorts by coordinates of x, real then imaginary part.
  static void sort_canonical(std::vector<CriticalPoint>& pts);

  /// Derivative data evaluated at x.
  Eigen::MatrixXcd df(const CPoint& x) const;
  Eigen::VectorXcd deformed_form(const CPoint& x, const Deformation& d) const;
  Eigen::MatrixXcd deformed_form_gradient(const CPoint& x, const Deformation& d) const;
  std::vector<Eigen::MatrixXcd> hessians(const CPoint& x) const;

 private:
  ProblemInstance inst_;
  PolyMatrix coupling_;
  ParametricSystem system_;
  CompiledSystem base_;
  std::vector<CompiledSystem> coefficient_;
  std::vector<std::vector<CompiledPoly>> df_;                 // [i][j]
  std::vector<std::vector<std::vector<CompiledPoly>>> d2f_;   // [i][j][l]
  std::vector<CompiledPoly> form_;                            // A_j
  std::vector<std::vector<CompiledPoly>> dform_;              // [j][l]
  std::vector<std::vector<CompiledPoly>> coupling_c_;         // [i][j]
  std::vector<std::vector<std::vector<CompiledPoly>>> dcoupling_;  // [i][j][l]
};

/// Convenience wrappers over CriticalProblem.
CriticalPointSet solve_all(const ProblemInstance& inst, const Deformation& d, std::size_t expected,
                           std::uint64_t seed, const SolverConfig& cfg = {});
JacobianValue jacobian_value(const ProblemInstance& inst, const Deformation& d, const CPoint& x);

/// Homotopy F(z; p(s)) along a parameter path with derivative dp/ds.
class ParameterHomotopy : public Homotopy {
 public:
  using Path = std::function<std::vector<cd>(double)>;
  ParameterHomotopy(const CriticalProblem& problem, Path path, Path derivative)
      : problem_(problem), path_(std::move(path)), derivative_(std::move(derivative)) {}
  int dim() const override { return problem_.unknowns(); }
  void evaluate(const Eigen::VectorXcd& z, double s, Eigen::VectorXcd& h, Eigen::MatrixXcd& hz,
                Eigen::VectorXcd& hs) const override;

 private:
  const CriticalProblem& problem_;
  Path path_;
  Path derivative_;
};

}  // namespace icisqf
