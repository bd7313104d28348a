#include "icisqf/critpts.hpp"

#include <algorithm>
#include <cmath>

namespace icisqf {

std::vector<cd> Deformation::parameters() const {
  std::vector<cd> p = eps;
  p.insert(p.end(), alpha.begin(), alpha.end());
  return p;
}

Deformation Deformation::from_parameters(int k, std::span<const cd> p) {
  Deformation d;
  d.eps.assign(p.begin(), p.begin() + k);
  d.alpha.assign(p.begin() + k, p.end());
  return d;
}

DeformationLine DeformationLine::random(int k, int n, std::uint64_t seed) {
  Rng rng(seed);
  DeformationLine line;
  line.k = k;
  double norm = 0;
  for (int i = 0; i < k + n; ++i) {
    line.direction.push_back(rng.complex_normal());
    norm += std::norm(line.direction.back());
  }
  for (cd& c : line.direction) c /= std::sqrt(norm);
  return line;
}

Deformation DeformationLine::at(cd t) const {
  std::vector<cd> p;
  for (cd c : direction) p.push_back(t * c);
  return Deformation::from_parameters(k, p);
}

namespace {

// Same polynomial in more variables (the new ones appended).
Poly lift(const Poly& p, int nvars) {
  Poly out(nvars);
  for (const auto& [m, c] : p.terms()) {
    std::vector<int> e = m.exponents();
    e.resize(static_cast<std::size_t>(nvars), 0);
    out.add_term(Monomial(std::move(e)), c);
  }
  return out;
}

bool valid_coupling(const PolyMatrix& c, int k, int n) {
  if (c.empty()) return true;
  if (static_cast<int>(c.size()) != k) return false;
  return std::all_of(c.begin(), c.end(), [&](const auto& row) {
    return static_cast<int>(row.size()) == n &&
           std::all_of(row.begin(), row.end(), [&](const Poly& p) { return p.nvars() == n; });
  });
}

}  // namespace

ParametricSystem critical_system(const ProblemInstance& inst, const PolyMatrix& coupling) {
  const int n = inst.n, k = inst.k, nv = n + k;
  if (!valid_coupling(coupling, k, n)) throw std::invalid_argument("critical_system: coupling must be k x n");
  ParametricSystem sys;
  sys.n = n;
  sys.k = k;
  sys.coefficient.assign(static_cast<std::size_t>(k + n), std::vector<Poly>(static_cast<std::size_t>(nv), Poly(nv)));
  for (int i = 0; i < k; ++i) {
    sys.base.push_back(lift(inst.f[static_cast<std::size_t>(i)], nv));
    sys.coefficient[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = Poly::constant(nv, -1);
  }
  for (int j = 0; j < n; ++j) {
    const auto row = static_cast<std::size_t>(k + j);
    Poly eq = lift(inst.A[static_cast<std::size_t>(j)], nv);
    for (int i = 0; i < k; ++i) {
      eq -= Poly::variable(nv, n + i) * lift(diff(inst.f[static_cast<std::size_t>(i)], j), nv);
      if (!coupling.empty()) {
        sys.coefficient[static_cast<std::size_t>(i)][row] =
            -lift(coupling[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)], nv);
      }
    }
    sys.base.push_back(std::move(eq));
    sys.coefficient[static_cast<std::size_t>(k + j)][row] = Poly::constant(nv, -1);
  }
  return sys;
}

CriticalProblem::CriticalProblem(const ProblemInstance& inst, const PolyMatrix& coupling)
    : inst_(inst), coupling_(coupling), system_(critical_system(inst, coupling)) {
  const ParametricSystem& sys = system_;
  const int n = inst.n, k = inst.k;
  std::vector<CompiledPoly> base;
  for (const Poly& p : sys.base) base.emplace_back(p);
  base_ = CompiledSystem(std::move(base));
  for (const auto& eqs : sys.coefficient) {
    std::vector<CompiledPoly> c;
    for (const Poly& p : eqs) c.emplace_back(p);
    coefficient_.emplace_back(std::move(c));
  }
  for (int i = 0; i < k; ++i) {
    std::vector<CompiledPoly> row;
    std::vector<std::vector<CompiledPoly>> hess;
    for (int j = 0; j < n; ++j) {
      const Poly d = diff(inst.f[static_cast<std::size_t>(i)], j);
      row.emplace_back(d);
      std::vector<CompiledPoly> h;
      for (int l = 0; l < n; ++l) h.emplace_back(diff(d, l));
      hess.push_back(std::move(h));
    }
    df_.push_back(std::move(row));
    d2f_.push_back(std::move(hess));
  }
  for (int j = 0; j < n; ++j) {
    form_.emplace_back(inst.A[static_cast<std::size_t>(j)]);
    std::vector<CompiledPoly> g;
    for (int l = 0; l < n; ++l) g.emplace_back(diff(inst.A[static_cast<std::size_t>(j)], l));
    dform_.push_back(std::move(g));
  }
  for (int i = 0; i < k && !coupling.empty(); ++i) {
    std::vector<CompiledPoly> row;
    std::vector<std::vector<CompiledPoly>> grads;
    for (int j = 0; j < n; ++j) {
      const Poly& c = coupling[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      row.emplace_back(c);
      std::vector<CompiledPoly> g;
      for (int l = 0; l < n; ++l) g.emplace_back(diff(c, l));
      grads.push_back(std::move(g));
    }
    coupling_c_.push_back(std::move(row));
    dcoupling_.push_back(std::move(grads));
  }
}

CompiledSystem CriticalProblem::specialize(std::span<const cd> params) const {
  if (static_cast<int>(params.size()) != parameter_count()) {
    throw std::invalid_argument("CriticalProblem: wrong parameter count");
  }
  std::vector<CompiledPoly> eqs = base_.equations();
  for (std::size_t m = 0; m < params.size(); ++m) {
    for (std::size_t e = 0; e < eqs.size(); ++e) eqs[e].add(system_.coefficient[m][e], params[m]);
  }
  return CompiledSystem(std::move(eqs));
}

void CriticalProblem::evaluate(const Eigen::VectorXcd& z, std::span<const cd> params,
                               std::span<const cd> dparams, Eigen::VectorXcd& value, Eigen::MatrixXcd& jac,
                               Eigen::VectorXcd& dvalue) const {
  const std::span<const cd> zs(z.data(), static_cast<std::size_t>(z.size()));
  base_.evaluate(zs, value, jac);
  dvalue = Eigen::VectorXcd::Zero(value.size());
  Eigen::VectorXcd v;
  Eigen::MatrixXcd j;
  for (std::size_t m = 0; m < coefficient_.size(); ++m) {
    if (params[m] == 0.0 && dparams[m] == 0.0) continue;
    coefficient_[m].evaluate(zs, v, j);
    value += params[m] * v;
    jac += params[m] * j;
    dvalue += dparams[m] * v;
  }
}

Eigen::MatrixXcd CriticalProblem::df(const CPoint& x) const {
  Eigen::MatrixXcd m(inst_.k, inst_.n);
  for (int i = 0; i < inst_.k; ++i) {
    for (int j = 0; j < inst_.n; ++j) {
      m(i, j) = df_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].evaluate(x.coords());
    }
  }
  return m;
}

std::vector<Eigen::MatrixXcd> CriticalProblem::hessians(const CPoint& x) const {
  std::vector<Eigen::MatrixXcd> out;
  for (int i = 0; i < inst_.k; ++i) {
    Eigen::MatrixXcd h(inst_.n, inst_.n);
    for (int j = 0; j < inst_.n; ++j) {
      for (int l = 0; l < inst_.n; ++l) {
        h(j, l) = d2f_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)][static_cast<std::size_t>(l)]
                      .evaluate(x.coords());
      }
    }
    out.push_back(std::move(h));
  }
  return out;
}

Eigen::VectorXcd CriticalProblem::deformed_form(const CPoint& x, const Deformation& d) const {
  Eigen::VectorXcd a(inst_.n);
  for (int j = 0; j < inst_.n; ++j) {
    const auto uj = static_cast<std::size_t>(j);
    a(j) = form_[uj].evaluate(x.coords()) - d.alpha.at(uj);
    for (std::size_t i = 0; i < coupling_c_.size(); ++i) a(j) -= d.eps.at(i) * coupling_c_[i][uj].evaluate(x.coords());
  }
  return a;
}

Eigen::MatrixXcd CriticalProblem::deformed_form_gradient(const CPoint& x, const Deformation& d) const {
  Eigen::MatrixXcd g(inst_.n, inst_.n);
  for (int j = 0; j < inst_.n; ++j) {
    const auto uj = static_cast<std::size_t>(j);
    for (int l = 0; l < inst_.n; ++l) {
      const auto ul = static_cast<std::size_t>(l);
      g(j, l) = dform_[uj][ul].evaluate(x.coords());
      for (std::size_t i = 0; i < dcoupling_.size(); ++i) g(j, l) -= d.eps.at(i) * dcoupling_[i][uj][ul].evaluate(x.coords());
    }
  }
  return g;
}

namespace {

cd determinant(const Eigen::MatrixXcd& m) { return m.rows() == 0 ? cd(1.0) : m.determinant(); }

Eigen::MatrixXcd drop(const Eigen::MatrixXcd& m, Eigen::Index row, Eigen::Index col) {
  const Eigen::Index r = m.rows(), c = m.cols();
  Eigen::MatrixXcd out(r - 1, c - 1);
  for (Eigen::Index i = 0, oi = 0; i < r; ++i) {
    if (i == row) continue;
    for (Eigen::Index j = 0, oj = 0; j < c; ++j) {
      if (j == col) continue;
      out(oi, oj++) = m(i, j);
    }
    ++oi;
  }
  return out;
}

}  // namespace

JacobianValue CriticalProblem::jacobian_value(const CPoint& x, const Deformation& d) const {
  const Eigen::MatrixXcd jf = df(x);
  std::vector<int> best;
  double best_abs = -1;
  for (const auto& K : subsets(inst_.n, inst_.k)) {
    Eigen::MatrixXcd sub(inst_.k, inst_.k);
    for (int c = 0; c < inst_.k; ++c) sub.col(c) = jf.col(K[static_cast<std::size_t>(c)]);
    const double a = std::abs(determinant(sub));
    if (a > best_abs) {
      best_abs = a;
      best = K;
    }
  }
  return jacobian_value(x, d, best);
}

JacobianValue CriticalProblem::jacobian_value(const CPoint& x, const Deformation& d,
                                              const std::vector<int>& block) const {
  const int n = inst_.n, k = inst_.k;
  const Eigen::MatrixXcd jf = df(x);
  const auto hess = hessians(x);
  const Eigen::VectorXcd a = deformed_form(x, d);
  const Eigen::MatrixXcd da = deformed_form_gradient(x, d);

  Eigen::MatrixXcd sub(k, k);
  for (int c = 0; c < k; ++c) sub.col(c) = jf.col(block[static_cast<std::size_t>(c)]);
  const cd delta = determinant(sub);
  if (std::abs(delta) == 0.0) throw DegenerateChart("jacobian_value: Delta vanishes on the chosen block");

  const std::vector<int> rest = complement(n, block);
  // Rows: gradients of f_1..f_k, then of the minors m_j for j in the complement.
  Eigen::MatrixXcd jac(n, n);
  for (int i = 0; i < k; ++i) jac.row(i) = jf.row(i);
  for (std::size_t r = 0; r < rest.size(); ++r) {
    std::vector<int> cols = block;
    cols.push_back(rest[r]);
    Eigen::MatrixXcd m(k + 1, k + 1);
    for (int c = 0; c <= k; ++c) {
      const int col = cols[static_cast<std::size_t>(c)];
      for (int i = 0; i < k; ++i) m(i, c) = jf(i, col);
      m(k, c) = a(col);
    }
    Eigen::RowVectorXcd grad = Eigen::RowVectorXcd::Zero(n);
    for (int i = 0; i <= k; ++i) {
      for (int c = 0; c <= k; ++c) {
        const cd cof = ((i + c) % 2 == 0 ? 1.0 : -1.0) * determinant(drop(m, i, c));
        const int col = cols[static_cast<std::size_t>(c)];
        if (i < k) {
          grad += cof * hess[static_cast<std::size_t>(i)].row(col);
        } else {
          grad += cof * da.row(col);
        }
      }
    }
    jac.row(k + static_cast<Eigen::Index>(r)) = grad;
  }
  const double sign = shuffle_sign(block, rest);
  const cd jtilde = sign * jac.determinant() / std::pow(delta, n - k - 1);
  return {delta, jtilde, block};
}

CriticalPoint CriticalProblem::make_point(const Eigen::VectorXcd& z, const Deformation& d) const {
  CriticalPoint p;
  const int n = inst_.n;
  p.x = CPoint(std::vector<cd>(z.data(), z.data() + n));
  p.lambda.assign(z.data() + n, z.data() + z.size());
  const std::vector<cd> params = d.parameters();
  const std::vector<cd> none(params.size(), 0.0);
  Eigen::VectorXcd f, df_dp;
  Eigen::MatrixXcd jac;
  evaluate(z, params, none, f, jac, df_dp);
  p.residual = f.size() == 0 ? 0.0 : f.cwiseAbs().maxCoeff();
  const JacobianValue jv = jacobian_value(p.x, d);
  p.delta = jv.delta;
  p.jtilde = jv.jtilde;
  p.block = jv.block;
  return p;
}

void CriticalProblem::sort_canonical(std::vector<CriticalPoint>& pts) {
  std::sort(pts.begin(), pts.end(), [](const CriticalPoint& a, const CriticalPoint& b) {
    for (int i = 0; i < a.x.dim(); ++i) {
      if (a.x[i].real() != b.x[i].real()) return a.x[i].real() < b.x[i].real();
      if (a.x[i].imag() != b.x[i].imag()) return a.x[i].imag() < b.x[i].imag();
    }
    return false;
  });
}

namespace {

double x_norm(const Eigen::VectorXcd& z, int n) { return z.head(n).norm(); }

}  // namespace

CriticalPointSet CriticalProblem::solve(const Deformation& d, std::size_t expected, std::uint64_t seed,
                                        const SolverConfig& cfg) const {
  const int n = inst_.n;
  const std::vector<cd> params = d.parameters();
  double scale = 0;
  for (cd p : params) scale = std::max(scale, std::abs(p));
  const double merge_tol = cfg.merge_factor * std::max(scale, 1e-300);
  const CompiledSystem sys = specialize(params);

  CriticalPointSet out;
  std::vector<Eigen::VectorXcd> found;
  auto absorb = [&](const Eigen::VectorXcd& z) {
    if (x_norm(z, n) >= cfg.cluster_radius) return;
    Eigen::VectorXcd f;
    sys.evaluate({z.data(), static_cast<std::size_t>(z.size())}, f);
    if (f.size() > 0 && f.cwiseAbs().maxCoeff() > cfg.tol_residual) return;
    for (const auto& g : found) {
      if ((g.head(n) - z.head(n)).norm() < merge_tol) return;
    }
    found.push_back(z);
  };

  Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);
  for (int attempt = 0; attempt <= cfg.retries && found.size() != expected; ++attempt) {
    ++out.diagnostics.attempts;
    const cd gamma = rng.unit_complex();
    for (const auto& z : total_degree_solve(sys, gamma, cfg.threads, out.diagnostics.paths)) absorb(z);
  }
  if (found.size() < expected) {
    out.diagnostics.used_fallback = true;
    double lambda_scale = 1.0;
    for (const auto& z : found) lambda_scale = std::max(lambda_scale, z.tail(inst_.k).cwiseAbs().maxCoeff());
    for (int s = 0; s < 400 && found.size() < expected; ++s) {
      Eigen::VectorXcd z(n + inst_.k);
      for (int i = 0; i < n; ++i) z(i) = 0.5 * cfg.cluster_radius * rng.uniform() * rng.unit_complex();
      for (int i = n; i < z.size(); ++i) z(i) = lambda_scale * rng.complex_normal();
      const NewtonResult r = newton(sys, z, 60, 1e-15);
      if (std::isfinite(r.residual)) absorb(r.z);
    }
  }
  if (found.size() != expected) {
    throw CountMismatch("solve: found " + std::to_string(found.size()) + " critical points, expected " +
                            std::to_string(expected),
                        found.size(), expected);
  }
  for (const auto& z : found) out.points.push_back(make_point(z, d));
  sort_canonical(out.points);
  return out;
}

CriticalPointSet solve_all(const ProblemInstance& inst, const Deformation& d, std::size_t expected,
                           std::uint64_t seed, const SolverConfig& cfg) {
  return CriticalProblem(inst).solve(d, expected, seed, cfg);
}

JacobianValue jacobian_value(const ProblemInstance& inst, const Deformation& d, const CPoint& x) {
  return CriticalProblem(inst).jacobian_value(x, d);
}

void ParameterHomotopy::evaluate(const Eigen::VectorXcd& z, double s, Eigen::VectorXcd& h, Eigen::MatrixXcd& hz,
                                 Eigen::VectorXcd& hs) const {
  const std::vector<cd> p = path_(s);
  const std::vector<cd> dp = derivative_(s);
  problem_.evaluate(z, p, dp, h, hz, hs);
}

}  // namespace icisqf
