#pragma once

#include "icisqf/exact_matrix.hpp"
#include "icisqf/residue.hpp"

#include <Eigen/Dense>

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace icisqf {

/// The (n-k)-form coefficient * dx_{L}, L increasing.
struct FormGenerator {
  Poly coefficient;
  std::vector<int> index_set;

  /// dx_1 ^ ... (dx_i omitted) ... ^ dx_n, times `coefficient`.
  static FormGenerator omitting(int n, int i, Poly coefficient);
  std::string label(const std::vector<std::string>& vars) const;
};

/// b * dx_L for every basis monomial b and every L.
std::vector<FormGenerator> default_generators(const ProblemInstance& inst, const std::vector<Monomial>& basis);

/// Symmetric bilinear form with labelled basis.
struct GramForm {
  std::vector<std::string> labels;
  Eigen::MatrixXcd numeric;
  std::optional<RationalMatrix> exact;

  std::size_t size() const { return labels.size(); }
};

struct RankSignature {
  std::size_t rank = 0;
  std::optional<long> signature;
  bool exact = false;
  /// Numeric mode only: ranks at thresholds tol / 10 and 10 * tol.
  std::size_t rank_low = 0;
  std::size_t rank_high = 0;
};

/// Exact rank and inertia when the exact matrix is present; otherwise
/// singular values relative to the largest, with an interval when some of
/// them lie within a factor 10 of the threshold.
RankSignature rank_signature(const GramForm& g, double tol = 1e-9);

/// Everything derived from the limit functional R of one instance: values of
/// R on the basis, the form on the algebra, the comparison map into it and
/// the form on differential forms.
class FormAnalysis {
 public:
  /// `volume_scale` multiplies the volume form on the target, which divides
  /// J~ based quantities by its square and multiplies the comparison map by it.
  FormAnalysis(ProblemInstance inst, LimitConfig cfg, std::uint64_t seed, Rational volume_scale = 1);

  const ProblemInstance& instance() const { return inst_; }
  const QuotientAlgebra& algebra() const { return *algebra_; }
  const FiberSamples& samples() const { return samples_; }
  const LimitConfig& config() const { return cfg_; }
  std::size_t nu() const { return algebra_->dim(); }

  /// R on the basis monomials.
  const std::vector<RValue>& basis_values() const { return basis_values_; }
  /// True when every basis value was reconstructed as a rational.
  bool exact() const { return exact_; }

  /// Circle-mean limit of phi itself, without reduction.
  RValue r(const Poly& phi) const;
  /// R through the normal form of phi and the basis values.
  cd r_reduced(const Poly& phi) const;
  std::optional<Rational> r_reduced_exact(const Poly& phi) const;
  /// R of the class with coordinates c.
  cd r_of(const Coords& c) const;
  std::optional<Rational> r_of_exact(const Coords& c) const;

  GramForm gram_qa(int threads = 1) const;

  /// Class of (df_1 ^ ... ^ df_k ^ g) / (dx_1 ^ ... ^ dx_n) in the algebra.
  Coords lambda(const FormGenerator& g) const;
  /// Spanning set of the image of the comparison map, reduced to a basis.
  std::vector<Coords> lambda_image_basis() const;

  GramForm gram_qomega(const std::vector<FormGenerator>& gens) const;
  /// Rank of the form on the algebra restricted to the image of the
  /// comparison map.
  std::size_t qomega_rank() const;

  /// Limit of sum c1 c2 / J over the critical points, where c_i is the
  /// coefficient of g_i restricted to the fiber in the chart x_L of the
  /// chosen block and J = J~ / Delta^2.
  RValue qomega_numeric(const FormGenerator& g1, const FormGenerator& g2) const;
  /// All pairs at once; entry (a, b) for a <= b mirrored.
  std::vector<std::vector<RValue>> qomega_numeric(const std::vector<FormGenerator>& gens) const;

 private:
  /// Coefficient of g restricted to the fiber in the chart of p.
  cd restricted_coefficient(const CriticalPoint& p, const FormGenerator& g) const;

  ProblemInstance inst_;
  LimitConfig cfg_;
  Rational volume_scale_;
  std::unique_ptr<QuotientAlgebra> algebra_;
  std::unique_ptr<CriticalProblem> problem_;
  FiberSamples samples_;
  std::vector<RValue> basis_values_;
  bool exact_ = false;
};

/// Free-function forms of the analysis.
GramForm gram_qa(const ProblemInstance& inst, const LimitConfig& cfg, std::uint64_t seed);
Coords lambda_map(const ProblemInstance& inst, const QuotientAlgebra& alg, const FormGenerator& g);
GramForm gram_qomega(const ProblemInstance& inst, const std::vector<FormGenerator>& gens, const LimitConfig& cfg,
                     std::uint64_t seed);
cd qomega_numeric(const ProblemInstance& inst, const FormGenerator& g1, const FormGenerator& g2,
                  const LimitConfig& cfg, std::uint64_t seed);

struct InequalityReport {
  std::size_t nu = 0;
  std::size_t omega_dim = 0;
  std::size_t tau_prime = 0;
  std::size_t rank_qa = 0;
  std::size_t rank_qomega = 0;
  std::size_t image_dim = 0;

  bool rank_order() const { return rank_qomega <= rank_qa; }
  bool corank_bound() const { return omega_dim >= rank_qomega + tau_prime; }
  bool rank_gap() const { return rank_qa >= rank_qomega && rank_qa - rank_qomega <= 2 * tau_prime; }
  bool image_dimension() const { return image_dim + tau_prime == nu; }
  bool tight() const { return rank_qa - rank_qomega == 2 * tau_prime; }
  bool all() const { return rank_order() && corank_bound() && rank_gap() && image_dimension(); }
};

/// Requires exact forms.
InequalityReport inequalities_report(const FormAnalysis& a);
InequalityReport inequalities_report(const ProblemInstance& inst, const LimitConfig& cfg, std::uint64_t seed);

struct ElkhResult {
  GramForm form;
  RankSignature rank;
  std::size_t dim = 0;
};

/// The form R(phi psi) on the local algebra of a finite map germ g.
ElkhResult elkh(const std::vector<Poly>& maps, const LimitConfig& cfg, std::uint64_t seed);

/// Rank of multiplication by g on the algebra.
std::size_t multiplication_rank(const QuotientAlgebra& alg, const Poly& g);

/// The hypersurface f with the 1-form dx_1 compared against the map germ
/// (f, m_12, ..., m_1n) = (f, -df/dx_2, ..., -df/dx_n), both on the same
/// algebra.
struct HypersurfaceBridge {
  std::size_t n = 0;
  /// max over basis pairs of |Q^A(a, b) - Q_map((df/dx_1)^(n-2) a, b)|.
  double max_deviation = 0;
  /// n = 2: the two exact matrices coincide.
  std::optional<bool> coincide;
  std::size_t rank_qomega = 0;
  /// Rank of multiplication by (df/dx_1)^(n-1) and by (df/dx_1)^n.
  std::size_t rank_power_n_minus_1 = 0;
  std::size_t rank_power_n = 0;
};

HypersurfaceBridge hypersurface_bridge(const ProblemInstance& hypersurface, const LimitConfig& cfg,
                                       std::uint64_t seed);

}  // namespace icisqf
