#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "icisqf/parse.hpp"
#include "icisqf/residue.hpp"

#include <cmath>

using namespace icisqf;

namespace {

ProblemInstance weighted_quadric(int n) {
  const auto vars = default_variable_names(n);
  std::string f;
  std::vector<std::string> A;
  long a = 1;
  for (int i = 0; i < n; ++i) {
    f += (i ? " + " : "") + vars[static_cast<std::size_t>(i)] + "^2";
    A.push_back(std::to_string(a) + "*" + vars[static_cast<std::size_t>(i)]);
    a *= 2;
  }
  return ProblemInstance::parse({f}, A, vars);
}

ProblemInstance cusp() { return ProblemInstance::parse({"x^2 - y^3"}, {"1", "0"}, {"x", "y"}); }

Poly P(const std::string& s, const ProblemInstance& inst) { return parse(s, inst.vars); }

}  // namespace

TEST_CASE("relative deviation") {
  CHECK(relative_deviation(cd(1), cd(1)) == 0);
  CHECK(relative_deviation(cd(0), cd(1e-9)) == doctest::Approx(1e-9));
  CHECK(relative_deviation(cd(100), cd(101)) == doctest::Approx(1.0 / 101));
}

TEST_CASE("limit configuration is validated") {
  LimitConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.radii = {1e-2, 2e-2};
  CHECK_THROWS(cfg.validate());
  cfg.radii = {1e-2, 5e-3};
  cfg.samples = 15;
  CHECK_THROWS(cfg.validate());
  cfg.samples = 8;
  CHECK_THROWS(cfg.validate());
  cfg.samples = 16;
  cfg.radii = {-1e-2};
  CHECK_THROWS(cfg.validate());
}

TEST_CASE("limits from means reconstruct rationals") {
  const LimitConfig cfg;
  const RValue v = limit_from_means({cd(0.5 + 1e-10), cd(0.5 + 1e-13)}, cfg);
  REQUIRE(v.exact);
  CHECK(*v.exact == Rational(1, 2));
  CHECK(v.deviation == doctest::Approx(1e-10).epsilon(1e-2));
  const RValue far = limit_from_means({cd(0.5), cd(0.6)}, cfg);
  CHECK_FALSE(far.exact);
}

TEST_CASE("R at one deformation of the weighted quadric") {
  const ProblemInstance inst = weighted_quadric(2);
  const Deformation d{{cd(0.01)}, {cd(0), cd(0)}};
  CHECK(std::abs(r_at(inst, d, P("x1^2", inst), 4, 1) - cd(0.5)) < 1e-12);
  CHECK(std::abs(r_at(inst, d, P("x2^2", inst), 4, 1) - cd(-0.5)) < 1e-12);
  CHECK(std::abs(r_at(inst, d, P("1", inst), 4, 1)) < 1e-10);
  // f equals eps on the fiber and sum 1/J~ vanishes.
  CHECK(std::abs(r_at(inst, d, inst.f[0], 4, 1)) < 1e-10);
}

TEST_CASE("R of a nondegenerate map germ is 1/det") {
  const ProblemInstance inst = ProblemInstance::parse({}, {"x + 2*y", "3*y"}, {"x", "y"});
  const Deformation d{{}, {cd(0.01, 0.002), cd(-0.003)}};
  CHECK(std::abs(r_at(inst, d, P("1", inst), 1, 1) - cd(1.0 / 3)) < 1e-12);
}

TEST_CASE("limit values on the weighted quadric") {
  const LimitConfig cfg;
  const ProblemInstance two = weighted_quadric(2);
  const RValue a = r_limit(two, P("x1^2", two), cfg, 42);
  REQUIRE(a.exact);
  CHECK(*a.exact == Rational(1, 2));
  const RValue b = r_limit(two, P("x2^2", two), cfg, 42);
  REQUIRE(b.exact);
  CHECK(*b.exact == Rational(-1, 2));

  const ProblemInstance three = weighted_quadric(3);
  for (const std::string& phi : {"1", "x1", "x2", "x3"}) {
    const RValue v = r_limit(three, P(phi, three), cfg, 42);
    REQUIRE(v.exact);
    CHECK(*v.exact == 0);
  }
}

TEST_CASE("R is linear, real and vanishes on the ideal") {
  const LimitConfig cfg;
  const ProblemInstance inst = cusp();
  const CriticalProblem problem(inst);
  const FiberSamples s = sample_fibers(problem, 4, cfg, 42);
  const Poly phi = P("x*y + 2*y", inst), psi = P("1 - x", inst);
  const cd rphi = r_limit(s, phi, cfg).numeric, rpsi = r_limit(s, psi, cfg).numeric;
  CHECK(std::abs(rphi.imag()) < 1e-9);
  CHECK(std::abs(rpsi.imag()) < 1e-9);
  const cd combo = r_limit(s, Rational(2) * phi + Rational(-3) * psi, cfg).numeric;
  CHECK(relative_deviation(combo, 2.0 * rphi - 3.0 * rpsi) < 1e-9);
  // Adding f times anything does not change R.
  const cd shifted = r_limit(s, phi + P("1 + y", inst) * inst.f[0], cfg).numeric;
  CHECK(relative_deviation(shifted, rphi) < 1e-8);

  const CheckReport rep = verify_ideal_vanishing(inst, s, cfg, 42);
  CHECK(rep.passed());
  CHECK(rep.max_deviation < cfg.tol_match);
  CHECK(verify_ideal_vanishing(weighted_quadric(3), cfg, 7).passed());
}

TEST_CASE("R depends only on the class of omega") {
  const LimitConfig cfg;
  const ProblemInstance inst = weighted_quadric(2);
  const QuotientAlgebra alg = local_algebra(inst);
  const CriticalProblem base(inst);
  const FiberSamples s0 = sample_fibers(base, alg.dim(), cfg, 42);

  // omega + f dx1 + x2 df.
  FormPerturbation pert;
  pert.eta = {P("1", inst), P("0", inst)};
  pert.h = P("x2", inst);
  const ProblemInstance moved = pert.apply(inst);
  CHECK(moved.A[0] == P("x1 + x1^2 + x2^2 + 2*x1*x2", inst));
  const CriticalProblem shifted(moved, pert.coupling(inst));
  const FiberSamples s1 = sample_fibers(shifted, alg.dim(), cfg, 43);
  for (const Monomial& b : alg.basis()) {
    const RValue v0 = r_limit(s0, Poly::term(b), cfg), v1 = r_limit(s1, Poly::term(b), cfg);
    CHECK(relative_deviation(v0.numeric, v1.numeric) < cfg.tol_match);
  }

  const CheckReport rep = verify_class_invariance(cusp(), cfg, 42, 3);
  CHECK(rep.passed());
  CHECK(rep.items.size() >= 3);
}

TEST_CASE("sampling is reproducible for a seed") {
  LimitConfig cfg;
  cfg.samples = 16;
  const ProblemInstance inst = cusp();
  const CriticalProblem problem(inst);
  const FiberSamples a = sample_fibers(problem, 4, cfg, 5), b = sample_fibers(problem, 4, cfg, 5);
  CHECK(a.base_angle == b.base_angle);
  CHECK(a.points.size() == 2);
  CHECK(a.points[1][3][2].x.coords() == b.points[1][3][2].x.coords());
  CHECK(a.stats.monodromy_closed);
}
