#include "icisqf/homotopy.hpp"

#include <cmath>
#include <numbers>
#include <thread>

namespace icisqf {

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Rng::normal() {
  // Box-Muller; std::normal_distribution is not portable across libraries.
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

cd Rng::complex_normal() {
  const double re = normal();
  const double im = normal();
  return {re, im};
}

cd Rng::unit_complex() { return std::polar(1.0, 2.0 * std::numbers::pi * uniform()); }

long Rng::integer(long lo, long hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<long>(engine_() % span);
}

void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn) {
  const auto workers = static_cast<std::size_t>(std::max(threads, 1));
  if (workers == 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  for (std::size_t w = 0; w < std::min(workers, count); ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < count; i += workers) fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

namespace {

bool finite(const Eigen::VectorXcd& z) {
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    if (!std::isfinite(z(i).real()) || !std::isfinite(z(i).imag())) return false;
  }
  return true;
}

// Newton at fixed s. Returns false if it does not contract.
bool correct(const Homotopy& h, Eigen::VectorXcd& z, double s, const TrackOptions& opts) {
  Eigen::VectorXcd hv, hs;
  Eigen::MatrixXcd hz;
  double prev = 0;
  for (int it = 0; it < opts.max_corrector_iterations; ++it) {
    h.evaluate(z, s, hv, hz, hs);
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(hz);
    const Eigen::VectorXcd dz = lu.solve(hv);
    if (!finite(dz)) return false;
    z -= dz;
    const double norm = dz.norm();
    if (it > 0 && norm > 0.5 * prev) return false;
    if (norm <= opts.corrector_tol * (1.0 + z.norm())) return true;
    prev = norm;
  }
  return false;
}

}  // namespace

TrackResult track(const Homotopy& h, const Eigen::VectorXcd& start, const TrackOptions& opts) {
  TrackResult r;
  r.z = start;
  double s = 0.0;
  double step = opts.initial_step;
  int successes = 0;
  Eigen::VectorXcd hv, hs;
  Eigen::MatrixXcd hz;
  while (s < 1.0) {
    if (r.steps++ >= opts.max_steps) {
      r.status = TrackResult::Status::max_steps;
      return r;
    }
    const double hstep = std::min(step, 1.0 - s);
    h.evaluate(r.z, s, hv, hz, hs);
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(hz);
    const Eigen::VectorXcd tangent = -lu.solve(hs);
    Eigen::VectorXcd z = r.z + hstep * tangent;
    const double target = (1.0 - s <= step) ? 1.0 : s + hstep;
    if (finite(tangent) && correct(h, z, target, opts)) {
      r.z = z;
      s = target;
      if (++successes >= 3) {
        step = std::min(2.0 * step, opts.max_step);
        successes = 0;
      }
      if (r.z.norm() > opts.divergence_bound) {
        r.status = TrackResult::Status::diverged;
        return r;
      }
    } else {
      step *= 0.5;
      successes = 0;
      if (step < opts.min_step) {
        r.status = r.z.norm() > std::sqrt(opts.divergence_bound) ? TrackResult::Status::diverged
                                                                  : TrackResult::Status::step_failure;
        return r;
      }
    }
  }
  r.status = TrackResult::Status::success;
  return r;
}

NewtonResult newton(const CompiledSystem& system, Eigen::VectorXcd z, int max_iterations, double tol) {
  NewtonResult r;
  Eigen::VectorXcd f;
  Eigen::MatrixXcd jac;
  for (int it = 0; it < max_iterations; ++it) {
    system.evaluate({z.data(), static_cast<std::size_t>(z.size())}, f, jac);
    const Eigen::VectorXcd dz = Eigen::PartialPivLU<Eigen::MatrixXcd>(jac).solve(f);
    if (!finite(dz)) break;
    z -= dz;
    if (dz.norm() <= tol * (1.0 + z.norm())) {
      r.converged = true;
      break;
    }
  }
  system.evaluate({z.data(), static_cast<std::size_t>(z.size())}, f);
  r.residual = f.size() == 0 ? 0.0 : f.cwiseAbs().maxCoeff();
  r.z = std::move(z);
  return r;
}

TotalDegreeHomotopy::TotalDegreeHomotopy(const CompiledSystem& target, cd gamma)
    : target_(target), gamma_(gamma), degrees_(target.degrees()) {
  if (target.size() != target.nvars()) throw std::invalid_argument("TotalDegreeHomotopy: system not square");
  for (int& d : degrees_) d = std::max(d, 1);
}

std::size_t TotalDegreeHomotopy::start_count() const {
  std::size_t c = 1;
  for (int d : degrees_) c *= static_cast<std::size_t>(d);
  return c;
}

Eigen::VectorXcd TotalDegreeHomotopy::start(std::size_t i) const {
  Eigen::VectorXcd z(dim());
  for (int v = 0; v < dim(); ++v) {
    const auto d = static_cast<std::size_t>(degrees_[static_cast<std::size_t>(v)]);
    const auto idx = i % d;
    i /= d;
    z(v) = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(idx) / static_cast<double>(d));
  }
  return z;
}

void TotalDegreeHomotopy::evaluate(const Eigen::VectorXcd& z, double s, Eigen::VectorXcd& h,
                                   Eigen::MatrixXcd& hz, Eigen::VectorXcd& hs) const {
  const int n = dim();
  Eigen::VectorXcd f;
  Eigen::MatrixXcd fz;
  target_.evaluate({z.data(), static_cast<std::size_t>(n)}, f, fz);
  Eigen::VectorXcd g(n);
  Eigen::MatrixXcd gz = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    const int d = degrees_[static_cast<std::size_t>(i)];
    const cd p = std::pow(z(i), d - 1);
    g(i) = p * z(i) - 1.0;
    gz(i, i) = static_cast<double>(d) * p;
  }
  h = (1.0 - s) * gamma_ * g + s * f;
  hz = (1.0 - s) * gamma_ * gz + s * fz;
  hs = f - gamma_ * g;
}

std::vector<Eigen::VectorXcd> total_degree_solve(const CompiledSystem& system, cd gamma, int threads,
                                                 SolveStats& stats, const TrackOptions& opts) {
  const TotalDegreeHomotopy h(system, gamma);
  const std::size_t count = h.start_count();
  std::vector<TrackResult> results(count);
  parallel_for(count, threads, [&](std::size_t i) { results[i] = track(h, h.start(i), opts); });

  stats.paths += count;
  std::vector<Eigen::VectorXcd> out;
  for (auto& r : results) {
    switch (r.status) {
      case TrackResult::Status::success: {
        ++stats.succeeded;
        NewtonResult polished = newton(system, r.z, 8, 1e-15);
        out.push_back(std::move(polished.z));
        break;
      }
      case TrackResult::Status::diverged:
        ++stats.diverged;
        break;
      default:
        ++stats.failed;
        break;
    }
  }
  return out;
}

}  // namespace icisqf
