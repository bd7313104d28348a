#pragma once

#include "icisqf/critpts.hpp"
#include "icisqf/rational.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace icisqf {

struct LimitConfig {
  std::vector<double> radii{1e-2, 5e-3};
  int samples = 64;
  double tol_match = 1e-8;
  long max_denominator = 1000000;
  SolverConfig solver;

  /// Throws std::invalid_argument unless radii are positive and strictly
  /// decreasing and samples is even and at least 16.
  void validate() const;
};

class NonConvergent : public std::runtime_error {
 public:
  NonConvergent(const std::string& what, double deviation) : std::runtime_error(what), deviation_(deviation) {}
  double deviation() const { return deviation_; }

 private:
  double deviation_;
};

struct RValue {
  cd numeric;
  std::optional<Rational> exact;
  /// Relative deviation between the means at the two smallest radii.
  double deviation = 0;
  std::vector<cd> means;  // one per radius
};

/// |a - b| / max(|a|, |b|, 1).
double relative_deviation(cd a, cd b);

/// Critical points on the circles t = r exp(i theta_j) of a deformation line,
/// theta_j = theta_0 + 2 pi j / samples.
struct FiberSamples {
  DeformationLine line;
  double base_angle = 0;
  std::vector<double> radii;
  int samples = 0;
  /// [radius][sample] -> canonically sorted points.
  std::vector<std::vector<std::vector<CriticalPoint>>> points;

  struct Stats {
    std::size_t arcs_tracked = 0;
    std::size_t fresh_solves = 0;
    std::size_t solver_attempts = 0;
    bool monodromy_closed = true;
    double max_residual = 0;
  } stats;

  Deformation deformation(std::size_t radius, std::size_t sample) const;
};

/// Solves at the base angle of each radius and follows the points along the
/// circle by parameter homotopy; an arc whose endpoints fail validation is
/// replaced by a fresh solve. Throws CountMismatch.
FiberSamples sample_fibers(const CriticalProblem& problem, std::size_t nu, const LimitConfig& cfg,
                           std::uint64_t seed);

/// A function of the critical point set on one deformed fiber.
using PointFunctional = std::function<cd(const std::vector<CriticalPoint>&, const Deformation&)>;

/// Deviation between the last two means, the mean at the smallest radius, and
/// its rational reconstruction when it is converged and real.
RValue limit_from_means(std::vector<cd> means, const LimitConfig& cfg);

/// Trapezoid mean over each circle, with rational reconstruction of the mean
/// at the smallest radius. Never throws on disagreement; see `deviation`.
RValue circle_mean(const FiberSamples& samples, const PointFunctional& fn, const LimitConfig& cfg);

/// sum phi(P) / J~(P) over a point set.
cd residue_sum(const std::vector<CriticalPoint>& points, const Poly& phi);

/// R_phi at one deformation.
cd r_at(const ProblemInstance& inst, const Deformation& d, const Poly& phi, std::size_t nu, std::uint64_t seed,
        const SolverConfig& cfg = {});

/// Limit of R_phi as the deformation shrinks. Throws NonConvergent when the
/// two smallest radii disagree by more than tol_match.
RValue r_limit(const FiberSamples& samples, const Poly& phi, const LimitConfig& cfg);
RValue r_limit(const ProblemInstance& inst, const Poly& phi, const LimitConfig& cfg, std::uint64_t seed);

struct CheckItem {
  std::string label;
  double value = 0;
  bool passed = false;
};

struct CheckReport {
  std::string name;
  double tolerance = 0;
  double max_deviation = 0;
  std::vector<CheckItem> items;
  bool passed() const;
};

/// R(h g) for every ideal generator g and `multipliers` random monomials h of
/// degree <= 2, from the raw product.
CheckReport verify_ideal_vanishing(const ProblemInstance& inst, const FiberSamples& samples,
                                   const LimitConfig& cfg, std::uint64_t seed, int multipliers = 10);
CheckReport verify_ideal_vanishing(const ProblemInstance& inst, const LimitConfig& cfg, std::uint64_t seed);

/// The 1-form omega + f_1 eta + h df_1 with coefficients of eta and h of
/// degree <= 1, and the coupling row that deforms it along with f_1.
struct FormPerturbation {
  std::vector<Poly> eta;
  Poly h;
  static FormPerturbation random(int n, std::uint64_t seed);
  ProblemInstance apply(const ProblemInstance& inst) const;
  PolyMatrix coupling(const ProblemInstance& inst) const;
};

/// Compares R on the basis monomials of the local algebra for omega and for
/// `trials` random perturbations. Requires k >= 1.
CheckReport verify_class_invariance(const ProblemInstance& inst, const LimitConfig& cfg, std::uint64_t seed,
                                    int trials = 5);

}  // namespace icisqf
