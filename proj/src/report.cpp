#include "icisqf/report.hpp"

#include "icisqf/homotopy.hpp"

#include <algorithm>
#include <cmath>

namespace icisqf {

using nlohmann::json;

namespace {

constexpr double kTwoRouteTol = 1e-6;
constexpr double kCountResidualTol = 1e-10;

json numeric_json(const Eigen::MatrixXcd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j).real());
    rows.push_back(std::move(row));
  }
  return rows;
}

double max_imag(const Eigen::MatrixXcd& m) { return m.size() == 0 ? 0.0 : m.imag().cwiseAbs().maxCoeff(); }

json form_json(const GramForm& g, const RankSignature& rs, bool exact) {
  json out;
  out["labels"] = g.labels;
  out["numeric"] = numeric_json(g.numeric);
  out["max_imaginary"] = max_imag(g.numeric);
  out["exact"] = exact && g.exact ? exact_json(*g.exact) : json(nullptr);
  out["rank"] = rs.rank;
  out["rank_mode"] = rs.exact ? "exact" : "numeric";
  if (!rs.exact) out["rank_interval"] = {rs.rank_low, rs.rank_high};
  out["signature"] = rs.signature ? json(*rs.signature) : json(nullptr);
  return out;
}

Check make_check(std::string name, double tolerance, double value, std::string detail = {}) {
  return {std::move(name), tolerance, value, value < tolerance, std::move(detail)};
}

Check exact_check(std::string name, bool ok, std::string detail) {
  return {std::move(name), 0, ok ? 0.0 : 1.0, ok, std::move(detail)};
}

json check_json(const Check& c) {
  json out = {{"name", c.name}, {"tolerance", c.tolerance}, {"value", c.value}, {"passed", c.passed}};
  if (!c.detail.empty()) out["detail"] = c.detail;
  return out;
}

std::string worst_item(const CheckReport& rep) {
  const auto it = std::max_element(rep.items.begin(), rep.items.end(),
                                   [](const CheckItem& a, const CheckItem& b) { return a.value < b.value; });
  return it == rep.items.end() ? std::string() : "worst: " + it->label;
}

/// Solves at `trials` random deformations of radius r_0 and reports the worst
/// residual; a wrong count throws.
double certify_count(const ProblemInstance& inst, std::size_t nu, const AnalyzeOptions& opts) {
  const CriticalProblem problem(inst);
  double worst = 0;
  for (int t = 0; t < opts.count_trials; ++t) {
    const std::uint64_t s = opts.seed + 500 + static_cast<std::uint64_t>(t);
    const DeformationLine line = DeformationLine::random(inst.k, inst.n, s);
    Rng rng(s);
    const cd where = opts.limits.radii.front() * rng.unit_complex();
    const CriticalPointSet set = problem.solve(line.at(where), nu, s, opts.limits.solver);
    for (const auto& p : set.points) worst = std::max(worst, p.residual);
  }
  return worst;
}

}  // namespace

json exact_json(const RationalMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_string(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

json config_json(const AnalyzeOptions& opts) {
  return {{"radii", opts.limits.radii},
          {"samples", opts.limits.samples},
          {"tol_match", opts.limits.tol_match},
          {"max_denominator", opts.limits.max_denominator},
          {"tol_residual", opts.limits.solver.tol_residual},
          {"cluster_radius", opts.limits.solver.cluster_radius},
          {"seed", opts.seed},
          {"exact", opts.exact}};
}

bool Report::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

std::string Report::dump() const { return doc.dump(2) + "\n"; }

Report analyze(const ProblemFile& problem, const AnalyzeOptions& opts) {
  opts.limits.validate();
  const ProblemInstance inst = problem.instance();
  const Colength nu = index_nu(inst);
  if (nu.is_infinite()) throw NotIsolated("index_nu INFINITE: the 1-form has a non-isolated zero on V");

  const FormAnalysis a(inst, opts.limits, opts.seed);
  const QuotientAlgebra& alg = a.algebra();
  const bool exact = opts.exact && a.exact();
  const double tol = opts.limits.tol_match;

  Report rep;
  json& doc = rep.doc;
  doc["problem"] = problem.to_json();
  doc["config"] = config_json(opts);
  doc["nu"] = a.nu();
  doc["truncation_order"] = alg.truncation_order();

  std::vector<std::string> basis;
  for (const Monomial& b : alg.basis()) basis.push_back(to_string(b, inst.vars));
  doc["basis"] = basis;

  json rvals = json::array();
  double limit_dev = 0;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const RValue& v = a.basis_values()[i];
    limit_dev = std::max(limit_dev, v.deviation);
    json e = {{"monomial", basis[i]}, {"numeric", v.numeric.real()}, {"imaginary", v.numeric.imag()},
              {"deviation", v.deviation}};
    e["exact"] = opts.exact && v.exact ? json(to_string(*v.exact)) : json(nullptr);
    rvals.push_back(std::move(e));
  }
  doc["r_values"] = rvals;

  const GramForm qa = a.gram_qa(opts.limits.solver.threads);
  GramForm qa_used = qa;
  if (!exact) qa_used.exact.reset();
  const RankSignature qa_rs = rank_signature(qa_used);
  const std::string qa_key = problem.mode == Mode::elkh ? "gram_elkh" : "gram_qa";
  doc[qa_key] = form_json(qa, qa_rs, exact);

  // Raw products against their normal forms.
  double reduction_dev = 0;
  for (std::size_t i = 0; i < alg.basis().size(); ++i) {
    for (std::size_t j = i; j < alg.basis().size(); ++j) {
      const RValue raw = a.r(Poly::term(alg.basis()[i] * alg.basis()[j]));
      reduction_dev = std::max(reduction_dev, relative_deviation(raw.numeric, qa.numeric(i, j)));
      limit_dev = std::max(limit_dev, raw.deviation);
    }
  }

  const CheckReport vanishing = verify_ideal_vanishing(inst, a.samples(), opts.limits, opts.seed);
  rep.checks.push_back(make_check("ideal_vanishing", tol, vanishing.max_deviation, worst_item(vanishing)));
  rep.checks.push_back(make_check("reduction_independence", tol, reduction_dev));
  rep.checks.push_back(make_check("count_certification", kCountResidualTol, certify_count(inst, a.nu(), opts),
                                  std::to_string(opts.count_trials) + " deformations, " +
                                      std::to_string(a.nu()) + " points each"));
  if (opts.exact) {
    rep.checks.push_back(exact_check("exact_reconstruction", a.exact(), "every R value on the basis is rational"));
  }
  if (qa_rs.exact && qa.numeric.size() > 0) {
    const Eigen::MatrixXd re = qa.numeric.real();
    const Inertia num = numeric_inertia(0.5 * (re + re.transpose()), 1e-9);
    rep.checks.push_back(exact_check("signature_consistency",
                                     num.rank() == qa_rs.rank && num.signature() == *qa_rs.signature,
                                     "exact congruence vs eigenvalue signs"));
  }

  if (problem.mode == Mode::elkh) {
    rep.checks.push_back(exact_check("nondegenerate", qa_rs.rank == a.nu(), "rank equals dimension"));
    doc["local_degree"] = qa_rs.signature ? json(*qa_rs.signature) : json(nullptr);
  } else {
    const std::size_t tp = tau_prime(inst);
    const OmegaDimension od = omega_module_dim(inst);
    doc["tau_prime"] = tp;
    doc["omega_dim"] = od.dim;
    doc["omega_dim_degree"] = od.degree;

    const std::vector<FormGenerator> gens = default_generators(inst, alg.basis());
    const GramForm qo = a.gram_qomega(gens);
    GramForm qo_used = qo;
    if (!exact) qo_used.exact.reset();
    const RankSignature qo_rs = rank_signature(qo_used);
    doc["gram_qomega"] = form_json(qo, qo_rs, exact);
    doc["shuffle_sign_convention"] = "Lambda(h dx_L) = sgn(K, L) h Delta_K, K the complement of L";

    const auto numeric = a.qomega_numeric(gens);
    double two_route = 0;
    for (std::size_t i = 0; i < gens.size(); ++i) {
      for (std::size_t j = i; j < gens.size(); ++j) {
        two_route = std::max(two_route, relative_deviation(numeric[i][j].numeric, qo.numeric(i, j)));
        limit_dev = std::max(limit_dev, numeric[i][j].deviation);
      }
    }

    InequalityReport ineq;
    ineq.nu = a.nu();
    ineq.omega_dim = od.dim;
    ineq.tau_prime = tp;
    ineq.rank_qa = qa_rs.rank;
    ineq.image_dim = a.lambda_image_basis().size();
    ineq.rank_qomega = exact ? a.qomega_rank() : qo_rs.rank;
    doc["ranks"] = {{"qa", ineq.rank_qa},
                    {"qomega", ineq.rank_qomega},
                    {"image_lambda", ineq.image_dim},
                    {"tight", ineq.tight()}};

    rep.checks.push_back(make_check("two_route_qomega", kTwoRouteTol, two_route, "relative"));
    rep.checks.push_back(exact_check("qomega_rank_consistency", qo_rs.rank == ineq.rank_qomega,
                                     "generator Gram rank vs rank on the image of Lambda"));
    rep.checks.push_back(exact_check("omega_dim_equals_nu", od.dim == a.nu(), "dim Omega = nu"));
    rep.checks.push_back(exact_check("rank_order", ineq.rank_order(), "rk Q^Omega <= rk Q^A"));
    rep.checks.push_back(exact_check("corank_bound", ineq.corank_bound(), "dim Omega - rk Q^Omega >= tau'"));
    rep.checks.push_back(exact_check("rank_gap", ineq.rank_gap(), "0 <= rk Q^A - rk Q^Omega <= 2 tau'"));
    rep.checks.push_back(exact_check("image_dimension", ineq.image_dimension(), "dim Im Lambda = nu - tau'"));
    if (inst.k >= 1) {
      const CheckReport invariance = verify_class_invariance(inst, opts.limits, opts.seed, opts.class_trials);
      rep.checks.push_back(make_check("class_invariance", tol, invariance.max_deviation, worst_item(invariance)));
    }
  }
  rep.checks.push_back(make_check("limit_stability", tol, limit_dev, "relative, two smallest radii"));

  const FiberSamples& fs = a.samples();
  doc["diagnostics"] = {{"arcs_tracked", fs.stats.arcs_tracked},
                        {"fresh_solves", fs.stats.fresh_solves},
                        {"solver_attempts", fs.stats.solver_attempts},
                        {"monodromy_closed", fs.stats.monodromy_closed},
                        {"max_residual", fs.stats.max_residual},
                        {"base_angle", fs.base_angle},
                        {"max_limit_deviation", limit_dev}};

  json checks = json::array();
  for (const Check& c : rep.checks) checks.push_back(check_json(c));
  doc["checks"] = checks;
  doc["passed"] = rep.passed();
  return rep;
}

json error_report(const ProblemFile& problem, const std::string& kind, const std::string& message,
                  const AnalyzeOptions& opts) {
  return {{"problem", problem.to_json()},
          {"config", config_json(opts)},
          {"error", {{"kind", kind}, {"message", message}}},
          {"passed", false}};
}

}  // namespace icisqf
