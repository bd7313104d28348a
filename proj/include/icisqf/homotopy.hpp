#pragma once

#include "icisqf/compiled_poly.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace icisqf {

/// Seeded generator with platform-independent draws.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  /// Uniform in [0, 1).
  double uniform();
  double normal();
  cd complex_normal();
  /// Uniform on the unit circle.
  cd unit_complex();
  /// Uniform integer in [lo, hi].
  long integer(long lo, long hi);

 private:
  std::mt19937_64 engine_;
};

/// Runs fn(i) for i in [0, count) on up to `threads` workers. Results must be
/// written by index; the schedule does not affect them.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn);

/// H(z, s) with its partial derivatives, tracked from s = 0 to s = 1.
class Homotopy {
 public:
  virtual ~Homotopy() = default;
  virtual int dim() const = 0;
  virtual void evaluate(const Eigen::VectorXcd& z, double s, Eigen::VectorXcd& h, Eigen::MatrixXcd& hz,
                        Eigen::VectorXcd& hs) const = 0;
};

struct TrackOptions {
  double initial_step = 0.01;
  double max_step = 0.1;
  double min_step = 1e-8;
  double corrector_tol = 1e-9;
  int max_corrector_iterations = 4;
  int max_steps = 20000;
  double divergence_bound = 1e6;
};

struct TrackResult {
  enum class Status { success, diverged, step_failure, max_steps };
  Status status = Status::step_failure;
  Eigen::VectorXcd z;
  int steps = 0;
};

/// Euler predictor with Newton corrector and adaptive step size.
TrackResult track(const Homotopy& h, const Eigen::VectorXcd& start, const TrackOptions& opts = {});

struct NewtonResult {
  Eigen::VectorXcd z;
  double residual = 0;  // max |F_i| at z
  bool converged = false;
};

/// Newton iteration on a square system until the update is below
/// tol * (1 + |z|).
NewtonResult newton(const CompiledSystem& system, Eigen::VectorXcd z, int max_iterations, double tol);

/// (1 - s) gamma G + s F with G_i = z_i^{d_i} - 1.
class TotalDegreeHomotopy : public Homotopy {
 public:
  TotalDegreeHomotopy(const CompiledSystem& target, cd gamma);
  int dim() const override { return target_.size(); }
  void evaluate(const Eigen::VectorXcd& z, double s, Eigen::VectorXcd& h, Eigen::MatrixXcd& hz,
                Eigen::VectorXcd& hs) const override;

  /// Number of start solutions (product of degrees).
  std::size_t start_count() const;
  /// The i-th start solution in mixed-radix order of root-of-unity indices.
  Eigen::VectorXcd start(std::size_t i) const;

 private:
  const CompiledSystem& target_;
  cd gamma_;
  std::vector<int> degrees_;
};

struct SolveStats {
  std::size_t paths = 0;
  std::size_t succeeded = 0;
  std::size_t diverged = 0;
  std::size_t failed = 0;
};

/// Endpoints of every successful total-degree path after a Newton polish,
/// in start order.
std::vector<Eigen::VectorXcd> total_degree_solve(const CompiledSystem& system, cd gamma, int threads,
                                                 SolveStats& stats, const TrackOptions& opts = {});

}  // namespace icisqf
