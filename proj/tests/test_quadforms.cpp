#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "icisqf/parse.hpp"
#include "icisqf/quadforms.hpp"

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

RationalMatrix rational_matrix(const std::vector<std::vector<Rational>>& rows) {
  RationalMatrix m(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

Coords coords(std::initializer_list<long> v) {
  Coords c;
  for (long x : v) c.emplace_back(x);
  return c;
}

std::vector<Poly> parse_all(const std::vector<std::string>& text, const std::vector<std::string>& vars) {
  std::vector<Poly> out;
  for (const auto& t : text) out.push_back(parse(t, vars));
  return out;
}

const LimitConfig kCfg;

}  // namespace

TEST_CASE("form generator labels") {
  const auto vars = default_variable_names(3);
  CHECK(FormGenerator::omitting(3, 1, parse("2*x1", vars)).label(vars) == "(2*x1)*dx1^dx3");
  CHECK(FormGenerator::omitting(3, 1, parse("1", vars)).index_set == std::vector<int>{0, 2});
}

TEST_CASE("Q^A on the weighted quadric at n = 2") {
  const FormAnalysis a(weighted_quadric(2), kCfg, 42);
  REQUIRE(a.exact());
  const GramForm g = a.gram_qa();
  REQUIRE(g.exact);
  const Rational h(1, 2);
  CHECK(*g.exact == rational_matrix({{0, 0, 0, h}, {0, h, 0, 0}, {0, 0, -h, 0}, {h, 0, 0, 0}}));
  const RankSignature rs = rank_signature(g);
  CHECK(rs.exact);
  CHECK(rs.rank == 4);
  CHECK(rs.signature == 0);
  // Q^A(1, x1^2) = Q^A(x1, x1).
  CHECK((*g.exact)(0, 3) == (*g.exact)(1, 1));
  CHECK((g.numeric - g.exact->to_double().cast<cd>()).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("Q^A of a smooth fiber is the 1x1 form [1]") {
  const ProblemInstance line = ProblemInstance::parse({"x1"}, {"0", "x2"}, {"x1", "x2"});
  const GramForm g = gram_qa(line, kCfg, 42);
  REQUIRE(g.exact);
  CHECK(*g.exact == rational_matrix({{1}}));
}

TEST_CASE("the comparison map on the weighted quadric at n = 2") {
  const ProblemInstance inst = weighted_quadric(2);
  const QuotientAlgebra alg = local_algebra(inst);
  // dx2 pairs with the minor 2 x1; dx1 with -2 x2 after the shuffle sign.
  CHECK(lambda_map(inst, alg, FormGenerator::omitting(2, 0, parse("1", inst.vars))) == coords({0, 2, 0, 0}));
  CHECK(lambda_map(inst, alg, FormGenerator::omitting(2, 1, parse("1", inst.vars))) == coords({0, 0, -2, 0}));
  CHECK(lambda_map(inst, alg, FormGenerator::omitting(2, 0, parse("x1", inst.vars))) == coords({0, 0, 0, 2}));
}

TEST_CASE("Q^Omega on the weighted quadric at n = 2") {
  const ProblemInstance inst = weighted_quadric(2);
  const std::vector<FormGenerator> gens{FormGenerator::omitting(2, 0, parse("1", inst.vars)),
                                        FormGenerator::omitting(2, 1, parse("1", inst.vars))};
  const GramForm g = gram_qomega(inst, gens, kCfg, 42);
  REQUIRE(g.exact);
  CHECK(*g.exact == rational_matrix({{2, 0}, {0, -2}}));
  const cd direct = qomega_numeric(inst, gens[0], gens[0], kCfg, 42);
  CHECK(std::abs(direct - cd(2)) < 1e-8);
  CHECK(std::abs(qomega_numeric(inst, gens[1], gens[1], kCfg, 42) - cd(-2)) < 1e-8);
}

TEST_CASE("two routes to Q^Omega agree on the weighted quadric at n = 3") {
  const FormAnalysis a(weighted_quadric(3), kCfg, 42);
  const auto gens = default_generators(a.instance(), a.algebra().basis());
  CHECK(gens.size() == 3 * a.nu());
  const GramForm g = a.gram_qomega(gens);
  const auto numeric = a.qomega_numeric(gens);
  double worst = 0;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (std::size_t j = i; j < gens.size(); ++j) {
      worst = std::max(worst, relative_deviation(numeric[i][j].numeric, g.numeric(i, j)));
    }
  }
  CHECK(worst < 1e-6);
  // Generators run over L, then the basis. The form omitting dx_i has value
  // 2 / prod (a_j - a_i) with a = (1, 2, 4).
  const std::size_t nu = a.nu();
  CHECK(g.labels[nu] == "(1)*dx1^dx3");
  CHECK((*g.exact)(0, 0) == Rational(1, 3));
  CHECK((*g.exact)(nu, nu) == Rational(-1));
  CHECK((*g.exact)(2 * nu, 2 * nu) == Rational(2, 3));
}

TEST_CASE("R through normal forms equals R of raw products") {
  const FormAnalysis a(cusp(), kCfg, 42);
  const auto& basis = a.algebra().basis();
  const GramForm g = a.gram_qa();
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = i; j < basis.size(); ++j) {
      const RValue raw = a.r(Poly::term(basis[i] * basis[j]));
      CHECK(relative_deviation(raw.numeric, g.numeric(i, j)) < kCfg.tol_match);
      CHECK(a.r_reduced_exact(Poly::term(basis[i] * basis[j])) == (*g.exact)(i, j));
    }
  }
}

TEST_CASE("rank inequalities on the weighted quadric") {
  for (int n = 2; n <= 3; ++n) {
    const InequalityReport r = inequalities_report(weighted_quadric(n), kCfg, 42);
    CHECK(r.nu == static_cast<std::size_t>(2 * n));
    CHECK(r.omega_dim == r.nu);
    CHECK(r.tau_prime == 1);
    CHECK(r.rank_qa == static_cast<std::size_t>(n + 2));
    CHECK(r.rank_qomega == static_cast<std::size_t>(n));
    CHECK(r.image_dim == r.nu - 1);
    CHECK(r.all());
    CHECK(r.tight());
  }
  const InequalityReport c = inequalities_report(cusp(), kCfg, 42);
  CHECK(c.all());
  CHECK(c.tau_prime == 2);
}

TEST_CASE("local degree of map germs") {
  const ElkhResult z3 = elkh(parse_all({"x^3 - 3*x*y^2", "3*x^2*y - y^3"}, {"x", "y"}), kCfg, 42);
  CHECK(z3.dim == 9);
  CHECK(z3.rank.rank == 9);
  CHECK(z3.rank.signature == 3);
  const ElkhResult id = elkh(parse_all({"x", "y"}, {"x", "y"}), kCfg, 42);
  CHECK(id.dim == 1);
  CHECK(id.rank.signature == 1);
  // An orientation reversing linear map has degree -1.
  const ElkhResult flip = elkh(parse_all({"x", "-1*y"}, {"x", "y"}), kCfg, 42);
  CHECK(flip.rank.signature == -1);
}

TEST_CASE("volume scale divides R by its square and keeps Q^Omega") {
  const ProblemInstance inst = weighted_quadric(2);
  const FormAnalysis one(inst, kCfg, 42), three(inst, kCfg, 42, Rational(3));
  for (std::size_t i = 0; i < one.nu(); ++i) {
    REQUIRE(one.basis_values()[i].exact);
    REQUIRE(three.basis_values()[i].exact);
    CHECK(*three.basis_values()[i].exact == *one.basis_values()[i].exact / Rational(9));
  }
  const FormGenerator g = FormGenerator::omitting(2, 0, parse("1", inst.vars));
  Coords scaled = one.lambda(g);
  for (auto& c : scaled) c *= Rational(3);
  CHECK(three.lambda(g) == scaled);
  const auto gens = default_generators(inst, one.algebra().basis());
  CHECK(*one.gram_qomega(gens).exact == *three.gram_qomega(gens).exact);
}

TEST_CASE("rank and signature do not depend on the coordinate labels") {
  // The weighted quadric at n = 2 with the two coordinates exchanged.
  const ProblemInstance swapped = ProblemInstance::parse({"x1^2 + x2^2"}, {"2*x1", "x2"}, {"x1", "x2"});
  const RankSignature a = rank_signature(gram_qa(weighted_quadric(2), kCfg, 42));
  const RankSignature b = rank_signature(gram_qa(swapped, kCfg, 42));
  CHECK(a.rank == b.rank);
  CHECK(a.signature == b.signature);
}

TEST_CASE("numeric rank reports an interval near the threshold") {
  GramForm g;
  g.labels = {"a", "b", "c"};
  g.numeric = Eigen::MatrixXcd::Zero(3, 3);
  g.numeric(0, 0) = 1;
  g.numeric(1, 1) = -1;
  g.numeric(2, 2) = 3e-9;
  const RankSignature rs = rank_signature(g);
  CHECK_FALSE(rs.exact);
  CHECK(rs.rank_low == 2);
  CHECK(rs.rank_high == 3);
  CHECK(rs.rank >= rs.rank_low);
  CHECK(rs.rank <= rs.rank_high);

  g.numeric(2, 2) = 0;
  const RankSignature clear = rank_signature(g);
  CHECK(clear.rank == 2);
  CHECK(clear.rank_low == clear.rank_high);
  CHECK(clear.signature == 0);
}

TEST_CASE("exact and numeric signatures agree") {
  const FormAnalysis a(cusp(), kCfg, 42);
  const GramForm g = a.gram_qa();
  const Inertia ex = exact_inertia(*g.exact);
  const Eigen::MatrixXd re = g.numeric.real();
  const Inertia num = numeric_inertia(0.5 * (re + re.transpose()));
  CHECK(ex.rank() == num.rank());
  CHECK(ex.signature() == num.signature());
}

TEST_CASE("multiplication rank") {
  const QuotientAlgebra alg(parse_all({"x^2", "y^2"}, {"x", "y"}));
  CHECK(multiplication_rank(alg, parse("x", {"x", "y"})) == 2);
  CHECK(multiplication_rank(alg, parse("1 + x", {"x", "y"})) == 4);
  CHECK(multiplication_rank(alg, parse("x*y", {"x", "y"})) == 1);
}

TEST_CASE("the cusp against its map germ") {
  const HypersurfaceBridge b = hypersurface_bridge(cusp(), kCfg, 42);
  CHECK(b.n == 2);
  CHECK(b.max_deviation < 1e-8);
  REQUIRE(b.coincide);
  CHECK(*b.coincide);
  CHECK(b.rank_qomega == 0);
  CHECK(b.rank_power_n == 0);
  // Multiplication by 2x itself has rank 2 on (x^2, y^2).
  CHECK(b.rank_power_n_minus_1 == 2);
}
