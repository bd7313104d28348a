#include "icisqf/residue.hpp"

#include "icisqf/quotient_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace icisqf {

void LimitConfig::validate() const {
  if (radii.empty()) throw std::invalid_argument("LimitConfig: no radii");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0)) throw std::invalid_argument("LimitConfig: radii must be positive");
    if (i > 0 && !(radii[i] < radii[i - 1])) throw std::invalid_argument("LimitConfig: radii must decrease");
  }
  if (samples < 16 || samples % 2 != 0) throw std::invalid_argument("LimitConfig: samples must be even and >= 16");
  if (!(tol_match > 0)) throw std::invalid_argument("LimitConfig: tol_match must be positive");
  if (max_denominator < 1) throw std::invalid_argument("LimitConfig: max_denominator must be positive");
}

double relative_deviation(cd a, cd b) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1.0});
}

Deformation FiberSamples::deformation(std::size_t radius, std::size_t sample) const {
  const double theta = base_angle + 2.0 * std::numbers::pi * static_cast<double>(sample) / samples;
  return line.at(std::polar(radii.at(radius), theta));
}

namespace {

Eigen::VectorXcd to_vector(const CriticalPoint& p) {
  Eigen::VectorXcd z(p.x.dim() + static_cast<int>(p.lambda.size()));
  for (int i = 0; i < p.x.dim(); ++i) z(i) = p.x[i];
  for (std::size_t i = 0; i < p.lambda.size(); ++i) z(p.x.dim() + static_cast<Eigen::Index>(i)) = p.lambda[i];
  return z;
}

// Follows `start` from angle theta to theta + step on the circle of radius r.
std::optional<std::vector<Eigen::VectorXcd>> track_arc(const CriticalProblem& problem, const DeformationLine& line,
                                                       double r, double theta, double step,
                                                       const std::vector<Eigen::VectorXcd>& start,
                                                       const SolverConfig& cfg) {
  const ParameterHomotopy h(
      problem,
      [&](double s) { return line.at(std::polar(r, theta + s * step)).parameters(); },
      [&](double s) {
        const cd dt = cd(0.0, step) * std::polar(r, theta + s * step);
        std::vector<cd> dp;
        for (cd c : line.direction) dp.push_back(dt * c);
        return dp;
      });
  TrackOptions opts;
  opts.initial_step = 0.25;
  opts.max_step = 0.5;
  std::vector<TrackResult> results(start.size());
  parallel_for(start.size(), cfg.threads, [&](std::size_t i) { results[i] = track(h, start[i], opts); });

  const int n = problem.instance().n;
  const Deformation end = line.at(std::polar(r, theta + step));
  const CompiledSystem sys = problem.specialize(end.parameters());
  std::vector<Eigen::VectorXcd> out;
  for (const auto& res : results) {
    if (res.status != TrackResult::Status::success) return std::nullopt;
    NewtonResult polished = newton(sys, res.z, 8, 1e-15);
    if (!(polished.residual <= cfg.tol_residual)) return std::nullopt;
    if (polished.z.head(n).norm() >= cfg.cluster_radius) return std::nullopt;
    for (const auto& other : out) {
      if ((other.head(n) - polished.z.head(n)).norm() < cfg.merge_factor * r) return std::nullopt;
    }
    out.push_back(std::move(polished.z));
  }
  return out;
}

bool same_set(const std::vector<Eigen::VectorXcd>& a, const std::vector<Eigen::VectorXcd>& b, int n, double tol) {
  if (a.size() != b.size()) return false;
  return std::all_of(a.begin(), a.end(), [&](const Eigen::VectorXcd& z) {
    return std::any_of(b.begin(), b.end(), [&](const Eigen::VectorXcd& w) { return (z.head(n) - w.head(n)).norm() < tol; });
  });
}

}  // namespace

FiberSamples sample_fibers(const CriticalProblem& problem, std::size_t nu, const LimitConfig& cfg,
                           std::uint64_t seed) {
  cfg.validate();
  const ProblemInstance& inst = problem.instance();
  FiberSamples fs;
  fs.line = DeformationLine::random(inst.k, inst.n, seed);
  fs.base_angle = 2.0 * std::numbers::pi * Rng(seed + 1).uniform();
  fs.radii = cfg.radii;
  fs.samples = cfg.samples;
  const double step = 2.0 * std::numbers::pi / cfg.samples;

  std::uint64_t solve_seed = seed + 2;
  auto fresh = [&](std::size_t ri, std::size_t j) {
    CriticalPointSet set = problem.solve(fs.deformation(ri, j), nu, solve_seed++, cfg.solver);
    ++fs.stats.fresh_solves;
    fs.stats.solver_attempts += static_cast<std::size_t>(set.diagnostics.attempts);
    return std::move(set.points);
  };

  for (std::size_t ri = 0; ri < cfg.radii.size(); ++ri) {
    const double r = cfg.radii[ri];
    std::vector<std::vector<CriticalPoint>> circle;
    circle.push_back(fresh(ri, 0));
    std::vector<Eigen::VectorXcd> first;
    for (const auto& p : circle.front()) first.push_back(to_vector(p));
    std::vector<Eigen::VectorXcd> current = first;

    for (int j = 0; j < cfg.samples; ++j) {
      const double theta = fs.base_angle + step * j;
      auto next = track_arc(problem, fs.line, r, theta, step, current, cfg.solver);
      ++fs.stats.arcs_tracked;
      const auto target = static_cast<std::size_t>(j + 1);
      if (j + 1 == cfg.samples) {
        fs.stats.monodromy_closed = next.has_value() && same_set(*next, first, inst.n, 1e-6 * r);
        break;
      }
      const Deformation d = fs.deformation(ri, target);
      std::vector<CriticalPoint> pts;
      if (next) {
        for (const auto& z : *next) pts.push_back(problem.make_point(z, d));
        CriticalProblem::sort_canonical(pts);
      } else {
        pts = fresh(ri, target);
      }
      current.clear();
      for (const auto& p : pts) current.push_back(to_vector(p));
      circle.push_back(std::move(pts));
    }
    for (const auto& pts : circle) {
      for (const auto& p : pts) fs.stats.max_residual = std::max(fs.stats.max_residual, p.residual);
    }
    fs.points.push_back(std::move(circle));
  }
  return fs;
}

RValue limit_from_means(std::vector<cd> means, const LimitConfig& cfg) {
  RValue v;
  v.means = std::move(means);
  v.numeric = v.means.back();
  v.deviation = v.means.size() >= 2 ? relative_deviation(v.means[v.means.size() - 2], v.means.back()) : 0.0;
  const double scale = std::max(1.0, std::abs(v.numeric));
  if (v.deviation <= cfg.tol_match && std::abs(v.numeric.imag()) <= cfg.tol_match * scale) {
    v.exact = reconstruct_rational(v.numeric.real(), cfg.tol_match * scale, cfg.max_denominator);
  }
  return v;
}

RValue circle_mean(const FiberSamples& samples, const PointFunctional& fn, const LimitConfig& cfg) {
  std::vector<cd> means;
  for (std::size_t ri = 0; ri < samples.points.size(); ++ri) {
    cd sum = 0.0;
    for (std::size_t j = 0; j < samples.points[ri].size(); ++j) {
      sum += fn(samples.points[ri][j], samples.deformation(ri, j));
    }
    means.push_back(sum / static_cast<double>(samples.points[ri].size()));
  }
  return limit_from_means(std::move(means), cfg);
}

cd residue_sum(const std::vector<CriticalPoint>& points, const Poly& phi) {
  cd sum = 0.0;
  for (const auto& p : points) sum += eval(phi, p.x) / p.jtilde;
  return sum;
}

cd r_at(const ProblemInstance& inst, const Deformation& d, const Poly& phi, std::size_t nu, std::uint64_t seed,
        const SolverConfig& cfg) {
  return residue_sum(CriticalProblem(inst).solve(d, nu, seed, cfg).points, phi);
}

RValue r_limit(const FiberSamples& samples, const Poly& phi, const LimitConfig& cfg) {
  RValue v = circle_mean(
      samples, [&](const std::vector<CriticalPoint>& pts, const Deformation&) { return residue_sum(pts, phi); }, cfg);
  if (v.deviation > cfg.tol_match) {
    throw NonConvergent("r_limit: circle means disagree (relative deviation " + std::to_string(v.deviation) + ")",
                        v.deviation);
  }
  return v;
}

RValue r_limit(const ProblemInstance& inst, const Poly& phi, const LimitConfig& cfg, std::uint64_t seed) {
  const Colength nu = index_nu(inst);
  if (nu.is_infinite()) throw NotIsolated("r_limit: index is infinite");
  const CriticalProblem problem(inst);
  return r_limit(sample_fibers(problem, nu.value(), cfg, seed), phi, cfg);
}

bool CheckReport::passed() const {
  return std::all_of(items.begin(), items.end(), [](const CheckItem& i) { return i.passed; });
}

CheckReport verify_ideal_vanishing(const ProblemInstance& inst, const FiberSamples& samples, const LimitConfig& cfg,
                                   std::uint64_t seed, int multipliers) {
  CheckReport rep;
  rep.name = "ideal_vanishing";
  rep.tolerance = cfg.tol_match;
  const auto mons = monomials_below(inst.n, 3);
  Rng rng(seed + 101);
  const auto gens = build_ideal(inst);
  for (std::size_t g = 0; g < gens.size(); ++g) {
    for (int t = 0; t < multipliers; ++t) {
      const Monomial& h = mons[static_cast<std::size_t>(rng.integer(0, static_cast<long>(mons.size()) - 1))];
      const Poly phi = gens[g].shifted(h);
      const RValue v = circle_mean(
          samples, [&](const std::vector<CriticalPoint>& pts, const Deformation&) { return residue_sum(pts, phi); },
          cfg);
      CheckItem item;
      item.label = "generator " + std::to_string(g + 1) + " times " + to_string(h, inst.vars);
      item.value = std::abs(v.numeric);
      item.passed = item.value < cfg.tol_match;
      rep.max_deviation = std::max(rep.max_deviation, item.value);
      rep.items.push_back(std::move(item));
    }
  }
  return rep;
}

CheckReport verify_ideal_vanishing(const ProblemInstance& inst, const LimitConfig& cfg, std::uint64_t seed) {
  const Colength nu = index_nu(inst);
  if (nu.is_infinite()) throw NotIsolated("verify_ideal_vanishing: index is infinite");
  const CriticalProblem problem(inst);
  return verify_ideal_vanishing(inst, sample_fibers(problem, nu.value(), cfg, seed), cfg, seed);
}

namespace {

Poly random_linear(int n, Rng& rng) {
  Poly p = Poly::constant(n, Rational(rng.integer(-2, 2)));
  for (int l = 0; l < n; ++l) p += Poly::variable(n, l) * Rational(rng.integer(-2, 2));
  return p;
}

}  // namespace

FormPerturbation FormPerturbation::random(int n, std::uint64_t seed) {
  Rng rng(seed);
  FormPerturbation p;
  for (int j = 0; j < n; ++j) p.eta.push_back(random_linear(n, rng));
  p.h = random_linear(n, rng);
  return p;
}

ProblemInstance FormPerturbation::apply(const ProblemInstance& inst) const {
  if (inst.k < 1) throw std::invalid_argument("FormPerturbation: needs an equation");
  std::vector<Poly> a = inst.A;
  const Poly& f1 = inst.f.front();
  for (int j = 0; j < inst.n; ++j) {
    const auto uj = static_cast<std::size_t>(j);
    a[uj] += f1 * eta[uj] + h * diff(f1, j);
  }
  return ProblemInstance::make(inst.f, std::move(a), inst.vars);
}

PolyMatrix FormPerturbation::coupling(const ProblemInstance& inst) const {
  PolyMatrix c(static_cast<std::size_t>(inst.k), std::vector<Poly>(static_cast<std::size_t>(inst.n), Poly(inst.n)));
  c.front() = eta;
  return c;
}

CheckReport verify_class_invariance(const ProblemInstance& inst, const LimitConfig& cfg, std::uint64_t seed,
                                    int trials) {
  if (inst.k < 1) throw std::invalid_argument("verify_class_invariance: needs k >= 1");
  CheckReport rep;
  rep.name = "class_invariance";
  rep.tolerance = cfg.tol_match;
  const QuotientAlgebra alg = local_algebra(inst);
  if (alg.colength().is_infinite()) throw NotIsolated("verify_class_invariance: index is infinite");
  const std::size_t nu = alg.dim();

  auto probe_values = [&](const CriticalProblem& problem) {
    const FiberSamples fs = sample_fibers(problem, nu, cfg, seed);
    std::vector<cd> vals;
    for (const Monomial& b : alg.basis()) vals.push_back(r_limit(fs, Poly::term(b), cfg).numeric);
    return vals;
  };
  const std::vector<cd> reference = probe_values(CriticalProblem(inst));
  for (int t = 0; t < trials; ++t) {
    const FormPerturbation pert = FormPerturbation::random(inst.n, seed + 1000 + static_cast<std::uint64_t>(t));
    const std::vector<cd> vals = probe_values(CriticalProblem(pert.apply(inst), pert.coupling(inst)));
    for (std::size_t b = 0; b < vals.size(); ++b) {
      CheckItem item;
      item.label = "trial " + std::to_string(t + 1) + " probe " + to_string(alg.basis()[b], inst.vars);
      item.value = relative_deviation(reference[b], vals[b]);
      item.passed = item.value < cfg.tol_match;
      rep.max_deviation = std::max(rep.max_deviation, item.value);
      rep.items.push_back(std::move(item));
    }
  }
  return rep;
}

}  // namespace icisqf
