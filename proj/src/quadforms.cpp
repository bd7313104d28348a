#include "icisqf/quadforms.hpp"

#include "icisqf/sparse_echelon.hpp"

#include <algorithm>
#include <cmath>

namespace icisqf {

FormGenerator FormGenerator::omitting(int n, int i, Poly coefficient) {
  return {std::move(coefficient), complement(n, {i})};
}

std::string FormGenerator::label(const std::vector<std::string>& vars) const {
  std::string s = "(" + to_string(coefficient, vars) + ")*d";
  for (std::size_t i = 0; i < index_set.size(); ++i) {
    if (i > 0) s += "^d";
    s += vars[static_cast<std::size_t>(index_set[i])];
  }
  return s;
}

std::vector<FormGenerator> default_generators(const ProblemInstance& inst, const std::vector<Monomial>& basis) {
  std::vector<FormGenerator> out;
  for (const auto& L : subsets(inst.n, inst.n - inst.k)) {
    for (const Monomial& b : basis) out.push_back({Poly::term(b), L});
  }
  return out;
}

RankSignature rank_signature(const GramForm& g, double tol) {
  RankSignature rs;
  if (g.exact) {
    const Inertia in = exact_inertia(*g.exact);
    rs.rank = rs.rank_low = rs.rank_high = in.rank();
    rs.signature = in.signature();
    rs.exact = true;
    return rs;
  }
  if (g.numeric.size() == 0) return rs;
  const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXcd>(g.numeric).singularValues();
  const double top = sv.maxCoeff();
  if (top == 0.0) return rs;
  const double thr = tol * top;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    rs.rank += sv(i) > thr;
    rs.rank_low += sv(i) > 10 * thr;
    rs.rank_high += sv(i) > thr / 10;
  }
  if (g.numeric.imag().cwiseAbs().maxCoeff() <= tol * top) {
    const Eigen::MatrixXd re = g.numeric.real();
    rs.signature = numeric_inertia(0.5 * (re + re.transpose()), tol).signature();
  }
  return rs;
}

namespace {

void check_generator(const ProblemInstance& inst, const FormGenerator& g) {
  const auto& L = g.index_set;
  if (static_cast<int>(L.size()) != inst.n - inst.k) throw std::invalid_argument("FormGenerator: wrong degree");
  for (std::size_t i = 0; i < L.size(); ++i) {
    if (L[i] < 0 || L[i] >= inst.n || (i > 0 && L[i] <= L[i - 1])) {
      throw std::invalid_argument("FormGenerator: index set must be increasing and in range");
    }
  }
  if (g.coefficient.nvars() != inst.n) throw std::invalid_argument("FormGenerator: wrong variable count");
}

cd dot(const Coords& c, const std::vector<RValue>& values) {
  cd s = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] != 0) s += to_double(c[i]) * values[i].numeric;
  }
  return s;
}

}  // namespace

FormAnalysis::FormAnalysis(ProblemInstance inst, LimitConfig cfg, std::uint64_t seed, Rational volume_scale)
    : inst_(std::move(inst)), cfg_(std::move(cfg)), volume_scale_(std::move(volume_scale)) {
  if (volume_scale_ == 0) throw std::invalid_argument("FormAnalysis: volume scale must be nonzero");
  algebra_ = std::make_unique<QuotientAlgebra>(local_algebra(inst_));
  if (algebra_->colength().is_infinite()) throw NotIsolated("index is infinite: the form has a non-isolated zero");
  problem_ = std::make_unique<CriticalProblem>(inst_);
  samples_ = sample_fibers(*problem_, algebra_->dim(), cfg_, seed);
  exact_ = true;
  for (const Monomial& b : algebra_->basis()) {
    RValue v = r(Poly::term(b));
    if (v.deviation > cfg_.tol_match) {
      throw NonConvergent("circle means disagree for R(" + to_string(b, inst_.vars) + ")", v.deviation);
    }
    exact_ = exact_ && v.exact.has_value();
    basis_values_.push_back(std::move(v));
  }
}

RValue FormAnalysis::r(const Poly& phi) const {
  const double scale = to_double(volume_scale_ * volume_scale_);
  return circle_mean(
      samples_,
      [&](const std::vector<CriticalPoint>& pts, const Deformation&) {
        cd sum = 0.0;
        for (const auto& p : pts) sum += eval(phi, p.x) / (scale * p.jtilde);
        return sum;
      },
      cfg_);
}

cd FormAnalysis::r_of(const Coords& c) const { return dot(c, basis_values_); }

std::optional<Rational> FormAnalysis::r_of_exact(const Coords& c) const {
  if (!exact_) return std::nullopt;
  Rational s = 0;
  for (std::size_t i = 0; i < c.size(); ++i) s += c[i] * *basis_values_[i].exact;
  return s;
}

cd FormAnalysis::r_reduced(const Poly& phi) const { return r_of(algebra_->normal_form(phi)); }

std::optional<Rational> FormAnalysis::r_reduced_exact(const Poly& phi) const {
  return r_of_exact(algebra_->normal_form(phi));
}

GramForm FormAnalysis::gram_qa(int threads) const {
  const auto& basis = algebra_->basis();
  const std::size_t d = basis.size();
  GramForm g;
  for (const Monomial& b : basis) g.labels.push_back(to_string(b, inst_.vars));
  g.numeric = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = a; b < d; ++b) pairs.emplace_back(a, b);
  }
  std::vector<Coords> products(pairs.size());
  parallel_for(pairs.size(), threads, [&](std::size_t i) {
    products[i] = algebra_->normal_form(Poly::term(basis[pairs[i].first] * basis[pairs[i].second]));
  });
  if (exact_) g.exact = RationalMatrix(d, d);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto [a, b] = pairs[i];
    const cd v = r_of(products[i]);
    g.numeric(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = v;
    g.numeric(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(a)) = v;
    if (g.exact) {
      const Rational q = *r_of_exact(products[i]);
      (*g.exact)(a, b) = q;
      (*g.exact)(b, a) = q;
    }
  }
  return g;
}

Coords FormAnalysis::lambda(const FormGenerator& g) const {
  check_generator(inst_, g);
  const std::vector<int> K = complement(inst_.n, g.index_set);
  const Rational sign = shuffle_sign(K, g.index_set);
  return algebra_->normal_form(g.coefficient * jacobian_minor(inst_, K) * (sign * volume_scale_));
}

std::vector<Coords> FormAnalysis::lambda_image_basis() const {
  SparseEchelon echelon;
  std::vector<Coords> out;
  for (const auto& K : subsets(inst_.n, inst_.k)) {
    const Poly delta = jacobian_minor(inst_, K) * volume_scale_;
    for (const Monomial& b : algebra_->basis()) {
      Coords c = algebra_->normal_form(delta.shifted(b));
      SparseRow row;
      for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i] != 0) row.emplace_back(static_cast<int>(i), c[i]);
      }
      if (!row.empty() && echelon.insert(std::move(row))) out.push_back(std::move(c));
    }
  }
  return out;
}

namespace {

Rational bilinear(const Coords& u, const RationalMatrix& g, const Coords& v) {
  Rational s = 0;
  for (std::size_t a = 0; a < u.size(); ++a) {
    if (u[a] == 0) continue;
    for (std::size_t b = 0; b < v.size(); ++b) {
      if (v[b] != 0) s += u[a] * g(a, b) * v[b];
    }
  }
  return s;
}

cd bilinear(const Coords& u, const Eigen::MatrixXcd& g, const Coords& v) {
  cd s = 0.0;
  for (std::size_t a = 0; a < u.size(); ++a) {
    if (u[a] == 0) continue;
    for (std::size_t b = 0; b < v.size(); ++b) {
      if (v[b] != 0) {
        s += to_double(u[a]) * g(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) * to_double(v[b]);
      }
    }
  }
  return s;
}

}  // namespace

GramForm FormAnalysis::gram_qomega(const std::vector<FormGenerator>& gens) const {
  const GramForm qa = gram_qa();
  std::vector<Coords> images;
  GramForm g;
  for (const auto& gen : gens) {
    images.push_back(lambda(gen));
    g.labels.push_back(gen.label(inst_.vars));
  }
  const std::size_t m = gens.size();
  g.numeric.resize(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
  if (qa.exact) g.exact = RationalMatrix(m, m);
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = a; b < m; ++b) {
      const cd v = bilinear(images[a], qa.numeric, images[b]);
      g.numeric(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = v;
      g.numeric(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(a)) = v;
      if (g.exact) {
        const Rational q = bilinear(images[a], *qa.exact, images[b]);
        (*g.exact)(a, b) = q;
        (*g.exact)(b, a) = q;
      }
    }
  }
  return g;
}

std::size_t FormAnalysis::qomega_rank() const {
  const GramForm qa = gram_qa();
  const std::vector<Coords> image = lambda_image_basis();
  const std::size_t r = image.size();
  GramForm restricted;
  restricted.labels.assign(r, "");
  restricted.numeric.resize(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(r));
  if (qa.exact) restricted.exact = RationalMatrix(r, r);
  for (std::size_t a = 0; a < r; ++a) {
    for (std::size_t b = 0; b < r; ++b) {
      restricted.numeric(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) =
          bilinear(image[a], qa.numeric, image[b]);
      if (qa.exact) (*restricted.exact)(a, b) = bilinear(image[a], *qa.exact, image[b]);
    }
  }
  if (restricted.exact) return exact_rank(*restricted.exact);
  return rank_signature(restricted).rank;
}

cd FormAnalysis::restricted_coefficient(const CriticalPoint& p, const FormGenerator& g) const {
  const int n = inst_.n, k = inst_.k;
  const std::vector<int>& K = p.block;
  const std::vector<int> L = complement(n, K);
  // Columns of phi express dx in terms of dx_L on the fiber.
  Eigen::MatrixXcd phi = Eigen::MatrixXcd::Zero(n, n - k);
  for (int r = 0; r < n - k; ++r) phi(L[static_cast<std::size_t>(r)], r) = 1.0;
  if (k > 0) {
    const Eigen::MatrixXcd df = problem_->df(p.x);
    Eigen::MatrixXcd dk(k, k), dl(k, n - k);
    for (int c = 0; c < k; ++c) dk.col(c) = df.col(K[static_cast<std::size_t>(c)]);
    for (int c = 0; c < n - k; ++c) dl.col(c) = df.col(L[static_cast<std::size_t>(c)]);
    const Eigen::MatrixXcd sol = -dk.partialPivLu().solve(dl);
    for (int r = 0; r < k; ++r) phi.row(K[static_cast<std::size_t>(r)]) = sol.row(r);
  }
  Eigen::MatrixXcd rows(n - k, n - k);
  for (int r = 0; r < n - k; ++r) rows.row(r) = phi.row(g.index_set[static_cast<std::size_t>(r)]);
  const cd minor = n - k == 0 ? cd(1.0) : rows.determinant();
  return eval(g.coefficient, p.x) * minor;
}

std::vector<std::vector<RValue>> FormAnalysis::qomega_numeric(const std::vector<FormGenerator>& gens) const {
  for (const auto& g : gens) check_generator(inst_, g);
  const std::size_t m = gens.size();
  const double c = to_double(volume_scale_);
  std::vector<std::vector<std::vector<cd>>> means(m, std::vector<std::vector<cd>>(m));
  for (std::size_t ri = 0; ri < samples_.points.size(); ++ri) {
    std::vector<std::vector<cd>> sums(m, std::vector<cd>(m, 0.0));
    for (const auto& pts : samples_.points[ri]) {
      for (const auto& p : pts) {
        std::vector<cd> coeffs;
        for (const auto& g : gens) coeffs.push_back(restricted_coefficient(p, g));
        // J = J~ / Delta^2 in the scaled convention.
        const cd delta = c * p.delta;
        const cd weight = delta * delta / (c * c * p.jtilde);
        for (std::size_t a = 0; a < m; ++a) {
          for (std::size_t b = a; b < m; ++b) sums[a][b] += coeffs[a] * coeffs[b] * weight;
        }
      }
    }
    const double count = static_cast<double>(samples_.points[ri].size());
    for (std::size_t a = 0; a < m; ++a) {
      for (std::size_t b = a; b < m; ++b) means[a][b].push_back(sums[a][b] / count);
    }
  }
  std::vector<std::vector<RValue>> out(m, std::vector<RValue>(m));
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = a; b < m; ++b) {
      out[a][b] = limit_from_means(means[a][b], cfg_);
      out[b][a] = out[a][b];
    }
  }
  return out;
}

RValue FormAnalysis::qomega_numeric(const FormGenerator& g1, const FormGenerator& g2) const {
  return qomega_numeric(std::vector<FormGenerator>{g1, g2})[0][1];
}

GramForm gram_qa(const ProblemInstance& inst, const LimitConfig& cfg, std::uint64_t seed) {
  return FormAnalysis(inst, cfg, seed).gram_qa(cfg.solver.threads);
}

Coords lambda_map(const ProblemInstance& inst, const QuotientAlgebra& alg, const FormGenerator& g) {
  check_generator(inst, g);
  const std::vector<int> K = complement(inst.n, g.index_set);
  const Rational sign = shuffle_sign(K, g.index_set);
  return alg.normal_form(g.coefficient * jacobian_minor(inst, K) * sign);
}

GramForm gram_qomega(const ProblemInstance& inst, const std::vector<FormGenerator>& gens, const LimitConfig& cfg,
                     std::uint64_t seed) {
  return FormAnalysis(inst, cfg, seed).gram_qomega(gens);
}

cd qomega_numeric(const ProblemInstance& inst, const FormGenerator& g1, const FormGenerator& g2,
                  const LimitConfig& cfg, std::uint64_t seed) {
  return FormAnalysis(inst, cfg, seed).qomega_numeric(g1, g2).numeric;
}

InequalityReport inequalities_report(const FormAnalysis& a) {
  if (!a.exact()) throw std::runtime_error("inequalities_report: exact values unavailable");
  InequalityReport rep;
  rep.nu = a.nu();
  rep.omega_dim = omega_module_dim(a.instance()).dim;
  rep.tau_prime = tau_prime(a.instance());
  rep.rank_qa = exact_rank(*a.gram_qa().exact);
  rep.rank_qomega = a.qomega_rank();
  rep.image_dim = a.lambda_image_basis().size();
  return rep;
}

InequalityReport inequalities_report(const ProblemInstance& inst, const LimitConfig& cfg, std::uint64_t seed) {
  return inequalities_report(FormAnalysis(inst, cfg, seed));
}

ElkhResult elkh(const std::vector<Poly>& maps, const LimitConfig& cfg, std::uint64_t seed) {
  if (maps.empty()) throw std::invalid_argument("elkh: no maps");
  const FormAnalysis a(ProblemInstance::make({}, maps), cfg, seed);
  ElkhResult r;
  r.form = a.gram_qa(cfg.solver.threads);
  r.rank = rank_signature(r.form);
  r.dim = a.nu();
  return r;
}

std::size_t multiplication_rank(const QuotientAlgebra& alg, const Poly& g) {
  const std::size_t d = alg.dim();
  RationalMatrix m(d, d);
  for (std::size_t j = 0; j < d; ++j) {
    const Coords c = alg.normal_form(g.shifted(alg.basis()[j]));
    for (std::size_t i = 0; i < d; ++i) m(i, j) = c[i];
  }
  return exact_rank(m);
}

HypersurfaceBridge hypersurface_bridge(const ProblemInstance& hypersurface, const LimitConfig& cfg,
                                       std::uint64_t seed) {
  const int n = hypersurface.n;
  if (hypersurface.k != 1) throw std::invalid_argument("hypersurface_bridge: needs one equation");
  for (int j = 0; j < n; ++j) {
    if (hypersurface.A[static_cast<std::size_t>(j)] != Poly::constant(n, j == 0 ? 1 : 0)) {
      throw std::invalid_argument("hypersurface_bridge: the 1-form must be dx_1");
    }
  }
  const Poly& f = hypersurface.f.front();
  std::vector<Poly> map{f};
  for (int j = 1; j < n; ++j) map.push_back(-diff(f, j));

  const FormAnalysis icis(hypersurface, cfg, seed);
  const FormAnalysis classical(ProblemInstance::make({}, map, hypersurface.vars), cfg, seed);
  if (icis.algebra().basis() != classical.algebra().basis()) {
    throw std::logic_error("hypersurface_bridge: the two algebras differ");
  }
  HypersurfaceBridge out;
  out.n = static_cast<std::size_t>(n);
  const Poly d1 = diff(f, 0);
  const Poly weight = d1.pow(static_cast<unsigned>(n - 2));
  const GramForm qa = icis.gram_qa();
  const auto& basis = icis.algebra().basis();
  for (std::size_t a = 0; a < basis.size(); ++a) {
    for (std::size_t b = 0; b < basis.size(); ++b) {
      const cd rhs = classical.r_reduced(weight.shifted(basis[a] * basis[b]));
      const cd lhs = qa.numeric(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
      out.max_deviation = std::max(out.max_deviation, std::abs(lhs - rhs));
    }
  }
  if (n == 2) {
    const GramForm qe = classical.gram_qa();
    out.coincide = qa.exact && qe.exact && *qa.exact == *qe.exact;
  }
  out.rank_qomega = icis.qomega_rank();
  out.rank_power_n_minus_1 = multiplication_rank(icis.algebra(), d1.pow(static_cast<unsigned>(n - 1)));
  out.rank_power_n = multiplication_rank(icis.algebra(), d1.pow(static_cast<unsigned>(n)));
  return out;
}

}  // namespace icisqf
