#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "icisqf/icis.hpp"
#include "icisqf/parse.hpp"
#include "oracles.hpp"

using namespace icisqf;

namespace {

const std::vector<std::string> X12{"x1", "x2"};
const std::vector<std::string> XYZ{"x", "y", "z"};

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

ProblemInstance space_curve() {
  return ProblemInstance::parse({"x^2 - y^2", "y^2 - z^2"}, {"x + y", "2*y", "3*z"}, XYZ);
}

std::size_t binomial(int n, int r) {
  std::size_t b = 1;
  for (int i = 0; i < r; ++i) b = b * static_cast<std::size_t>(n - i) / static_cast<std::size_t>(i + 1);
  return b;
}

}  // namespace

TEST_CASE("instances validate their input") {
  CHECK_THROWS(ProblemInstance::parse({"x1 + 1"}, {"x1", "x2"}, X12));
  CHECK_THROWS(ProblemInstance::parse({"x1"}, {"x1"}, X12));
  CHECK_THROWS(ProblemInstance::parse({"x1", "x2"}, {"x1", "x2"}, X12));
  const ProblemInstance inst = ProblemInstance::make({parse("x1*x2", X12)}, {parse("1", X12), parse("0", X12)});
  CHECK(inst.vars == X12);
  CHECK(inst.n == 2);
  CHECK(inst.k == 1);
}

TEST_CASE("subsets, complements and shuffle signs") {
  const auto s = subsets(4, 2);
  REQUIRE(s.size() == 6);
  CHECK(s.front() == std::vector<int>{0, 1});
  CHECK(s[1] == std::vector<int>{0, 2});
  CHECK(s.back() == std::vector<int>{2, 3});
  CHECK(subsets(3, 0).size() == 1);
  CHECK(complement(4, {1, 3}) == std::vector<int>{0, 2});
  CHECK(shuffle_sign({0}, {1}) == 1);
  CHECK(shuffle_sign({1}, {0}) == -1);
  CHECK(shuffle_sign({0, 2}, {1}) == -1);
  CHECK(shuffle_sign({1, 2}, {0}) == 1);
  CHECK(shuffle_sign({}, {0, 1, 2}) == 1);
}

TEST_CASE("build_ideal for the weighted quadric at n = 2") {
  const ProblemInstance inst = weighted_quadric(2);
  const auto gens = build_ideal(inst);
  REQUIRE(gens.size() == 2);
  CHECK(gens[0] == parse("x1^2 + x2^2", X12));
  // det [[2 x1, 2 x2], [x1, 2 x2]].
  CHECK(gens[1] == parse("2*x1*x2", X12));
}

TEST_CASE("build_ideal has k + C(n, k+1) generators") {
  CHECK(build_ideal(weighted_quadric(3)).size() == 1 + binomial(3, 2));
  CHECK(build_ideal(weighted_quadric(4)).size() == 1 + binomial(4, 2));
  CHECK(build_ideal(space_curve()).size() == 2 + binomial(3, 3));
  const ProblemInstance map = ProblemInstance::parse({}, {"x", "y"}, {"x", "y"});
  CHECK(build_ideal(map).size() == binomial(2, 1));
}

TEST_CASE("form minors alternate in the columns") {
  for (const ProblemInstance& inst : {weighted_quadric(3), space_curve()}) {
    const int k = inst.k;
    const auto cols = subsets(inst.n, k + 1).front();
    std::vector<int> swapped = cols;
    std::swap(swapped[0], swapped[1]);
    CHECK(form_minor(inst, swapped) == -form_minor(inst, cols));
  }
}

TEST_CASE("index of the weighted quadric is 2n") {
  for (int n = 2; n <= 4; ++n) CHECK(index_nu(weighted_quadric(n)).value() == static_cast<std::size_t>(2 * n));
}

TEST_CASE("index of small instances") {
  CHECK(index_nu(cusp()).value() == 4);
  CHECK(index_nu(ProblemInstance::parse({"x1"}, {"0", "x2"}, X12)).value() == 1);
  CHECK(index_nu(ProblemInstance::parse({}, {"x^3 - 3*x*y^2", "3*x^2*y - y^3"}, {"x", "y"})).value() == 9);
  CHECK(index_nu(ProblemInstance::parse({"x1"}, {"x1", "0"}, X12)).is_infinite());
}

TEST_CASE("index depends only on the ideal of f and the class of omega") {
  const ProblemInstance base = cusp();
  const std::size_t nu = index_nu(base).value();
  // f times a unit.
  const Poly u = parse("1 + x + 2*y", base.vars);
  CHECK(index_nu(ProblemInstance::make({u * base.f[0]}, base.A, base.vars)).value() == nu);
  // omega + f eta + h df.
  std::vector<Poly> A = base.A;
  const Poly h = parse("3 - y", base.vars);
  for (int j = 0; j < base.n; ++j) A[static_cast<std::size_t>(j)] += parse("x + 1", base.vars) * base.f[0] + h * diff(base.f[0], j);
  CHECK(index_nu(ProblemInstance::make(base.f, A, base.vars)).value() == nu);

  const ProblemInstance curve = space_curve();
  const std::size_t nu_curve = index_nu(curve).value();
  std::vector<Poly> f2{curve.f[0] + curve.f[1], curve.f[0] - Rational(2) * curve.f[1]};
  CHECK(index_nu(ProblemInstance::make(f2, curve.A, curve.vars)).value() == nu_curve);
}

TEST_CASE("index matches the Macaulay oracle") {
  for (const ProblemInstance& inst : {weighted_quadric(3), cusp(), space_curve()}) {
    const auto gens = build_ideal(inst);
    const QuotientAlgebra alg(gens);
    const int N = alg.truncation_order();
    CHECK(oracle::macaulay_colength(gens, inst.n, N) == alg.dim());
    CHECK(oracle::macaulay_colength(gens, inst.n, N + 1) == alg.dim());
  }
}

TEST_CASE("tau prime") {
  CHECK(tau_prime(weighted_quadric(2)) == 1);
  CHECK(tau_prime(weighted_quadric(4)) == 1);
  CHECK(tau_prime(cusp()) == 2);
  CHECK(tau_prime(ProblemInstance::parse({"x1"}, {"0", "x2"}, X12)) == 0);
  CHECK(tau_prime(ProblemInstance::parse({}, {"x", "y"}, {"x", "y"})) == 0);
  // (x^2 - y^3, 2x, -3y^2) has colength 2 by the oracle too.
  const ProblemInstance c = cusp();
  std::vector<Poly> gens{c.f[0], diff(c.f[0], 0), diff(c.f[0], 1)};
  CHECK(oracle::macaulay_colength(gens, 2, 6) == 2);
}

TEST_CASE("tau prime vanishes exactly when some minor is a unit") {
  // x1 + x2^2 is smooth; its first partial is a unit.
  CHECK(tau_prime(ProblemInstance::parse({"x1 + x2^2"}, {"x2", "x1"}, X12)) == 0);
  CHECK(tau_prime(ProblemInstance::parse({"x1*x2"}, {"x1", "x2"}, X12)) == 1);
}

TEST_CASE("dimension of the module of forms equals the index") {
  struct Case {
    ProblemInstance inst;
    std::size_t dim;
  };
  const std::vector<Case> cases{{weighted_quadric(2), 4}, {weighted_quadric(3), 6},
                                {ProblemInstance::parse({"x1"}, {"0", "x2"}, X12), 1}, {cusp(), 4}};
  for (const auto& c : cases) {
    const OmegaDimension od = omega_module_dim(c.inst);
    CHECK(od.dim == c.dim);
    CHECK(od.dim == index_nu(c.inst).value());
  }
  const ProblemInstance curve = space_curve();
  CHECK(omega_module_dim(curve).dim == index_nu(curve).value());
}
