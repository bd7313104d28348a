#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "icisqf/homotopy.hpp"
#include "icisqf/parse.hpp"
#include "icisqf/poly.hpp"

using namespace icisqf;

namespace {

const std::vector<std::string> XY{"x", "y"};

Poly P(const std::string& s, const std::vector<std::string>& vars = XY) { return parse(s, vars); }

Poly random_poly(Rng& rng, int n, int max_deg, int terms) {
  Poly p(n);
  for (int t = 0; t < terms; ++t) {
    std::vector<int> e(static_cast<std::size_t>(n));
    for (int& v : e) v = static_cast<int>(rng.integer(0, max_deg));
    p.add_term(Monomial(e), Rational(rng.integer(-5, 5), rng.integer(1, 4)));
  }
  return p;
}

}  // namespace

TEST_CASE("parse builds the expected terms") {
  const Poly p = P("x^2 + y^2");
  CHECK(p.size() == 2);
  CHECK(p.coeff(Monomial({2, 0})) == 1);
  CHECK(p.coeff(Monomial({0, 2})) == 1);

  const Poly q = P("3/2*x*y - y");
  CHECK(q.size() == 2);
  CHECK(q.coeff(Monomial({1, 1})) == Rational(3, 2));
  CHECK(q.coeff(Monomial({0, 1})) == -1);

  const Poly f = P("x1^2+x2^2+x3^2", {"x1", "x2", "x3"});
  CHECK(f.size() == 3);
  for (int i = 0; i < 3; ++i) CHECK(f.coeff(Monomial::unit(3, i, 2)) == 1);
}

TEST_CASE("parse handles grouping, powers and whitespace") {
  CHECK(P("(x+y)^2") == P("x^2 + 2*x*y + y^2"));
  CHECK(P("  -1 * x  *  y ") == P("-1*x*y"));
  CHECK_THROWS_AS(P("-x"), ParseError);
  CHECK(P("-3/6") == Poly::constant(2, Rational(-1, 2)));
  CHECK(P("x - x") .is_zero());
  CHECK(P("2^3*x") == P("8*x"));
}

TEST_CASE("parse reports errors with a position") {
  CHECK_THROWS_AS(P("x y"), ParseError);
  CHECK_THROWS_AS(P("2x"), ParseError);
  CHECK_THROWS_AS(P("x + z"), ParseError);
  CHECK_THROWS_AS(P("(x + y"), ParseError);
  CHECK_THROWS_AS(P("x^"), ParseError);
  CHECK_THROWS_AS(P("1/0"), ParseError);
  CHECK_THROWS_AS(P(""), ParseError);
  try {
    P("x + * y");
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 4);
  }
}

TEST_CASE("printing then parsing is idempotent") {
  Rng rng(11);
  for (int t = 0; t < 50; ++t) {
    const Poly p = random_poly(rng, 3, 3, 5);
    const auto vars = default_variable_names(3);
    const std::string s = to_string(p, vars);
    const Poly q = parse(s, vars);
    CHECK(q == p);
    CHECK(to_string(q, vars) == s);
  }
}

TEST_CASE("diff") {
  CHECK(diff(P("x^2 + y^2"), 0) == P("2*x"));
  // Hand differentiation: d/dy (x^2 - y^3) = -3 y^2.
  CHECK(diff(P("x^2 - y^3"), 1) == P("-3*y^2"));
  CHECK(diff(P("7"), 1).is_zero());
  CHECK_THROWS(diff(P("x"), 2));
  CHECK_THROWS(diff(P("x"), -1));
}

TEST_CASE("det") {
  CHECK(det({{P("2*x"), P("2*y")}, {P("x"), P("2*y")}}) == P("2*x*y"));
  // The weighted quadric block with a = (1, 2): rows (2x1, 2x2), (a1 x1, a2 x2).
  const std::vector<std::string> v{"x1", "x2"};
  CHECK(det({{P("2*x1", v), P("2*x2", v)}, {P("x1", v), P("2*x2", v)}}) == P("2*x1*x2", v));
  // Hand expansion: 2x*0 - (-3y^2)*1.
  CHECK(det({{P("2*x"), P("-3*y^2")}, {P("1"), P("0")}}) == P("3*y^2"));
  CHECK_THROWS(det({{P("x"), P("y")}}));
}

TEST_CASE("det is alternating and agrees across expansion methods") {
  Rng rng(5);
  for (int size : {2, 3, 5, 6}) {
    PolyMatrix m(static_cast<std::size_t>(size), std::vector<Poly>(static_cast<std::size_t>(size)));
    for (auto& row : m) {
      for (auto& e : row) e = random_poly(rng, 2, 1, 2);
    }
    const Poly d = det(m);
    PolyMatrix swapped = m;
    std::swap(swapped[0], swapped[1]);
    CHECK(det(swapped) == -d);
    PolyMatrix repeated = m;
    repeated[1] = repeated[0];
    CHECK(det(repeated).is_zero());
    // Laplace expansion along the first row as an independent check.
    Poly laplace(2);
    for (int j = 0; j < size; ++j) {
      PolyMatrix minor;
      for (int r = 1; r < size; ++r) {
        std::vector<Poly> row;
        for (int c = 0; c < size; ++c) {
          if (c != j) row.push_back(m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]);
        }
        minor.push_back(row);
      }
      const Poly term = m[0][static_cast<std::size_t>(j)] * det(minor);
      laplace += (j % 2 == 0) ? term : -term;
    }
    CHECK(laplace == d);
  }
}

TEST_CASE("eval") {
  CHECK(eval(P("x^2 + y^2"), CPoint({1.0, 2.0})) == cd(5.0));
  CHECK(eval(P("x"), CPoint({cd(0.3, 0.4), 0.0})) == cd(0.3, 0.4));
  const std::vector<std::string> v{"x1", "x2"};
  CHECK(eval(P("2*(2-1)*x1*x2", v), CPoint({0.01, 0.0})) == cd(0.0));
  CHECK_THROWS(eval(P("x"), CPoint({1.0})));
  CHECK_THROWS(CPoint({cd(std::nan(""), 0.0)}));
}

TEST_CASE("ring axioms and Leibniz rule on random polynomials") {
  Rng rng(2024);
  for (int t = 0; t < 30; ++t) {
    const Poly p = random_poly(rng, 3, 3, 4);
    const Poly q = random_poly(rng, 3, 3, 4);
    const Poly r = random_poly(rng, 3, 3, 4);
    CHECK((p + q) * r == p * r + q * r);
    CHECK(p * q == q * p);
    CHECK((p * q) * r == p * (q * r));
    for (int j = 0; j < 3; ++j) CHECK(diff(p * q, j) == diff(p, j) * q + p * diff(q, j));
  }
}

TEST_CASE("eval is a ring homomorphism") {
  Rng rng(77);
  for (int t = 0; t < 30; ++t) {
    const Poly p = random_poly(rng, 3, 3, 4);
    const Poly q = random_poly(rng, 3, 3, 4);
    const CPoint pt({rng.complex_normal(), rng.complex_normal(), rng.complex_normal()});
    const cd ps = eval(p + q, pt), pp = eval(p * q, pt);
    const cd a = eval(p, pt), b = eval(q, pt);
    CHECK(std::abs(ps - (a + b)) <= 1e-12 * std::max(1.0, std::abs(ps)));
    CHECK(std::abs(pp - a * b) <= 1e-12 * std::max(1.0, std::abs(pp)));
  }
}

TEST_CASE("exact_divide") {
  CHECK(exact_divide(P("x^2 - y^2"), P("x - y")) == P("x + y"));
  CHECK_THROWS_AS(exact_divide(P("x^2 + 1"), P("x - y")), std::domain_error);
}

TEST_CASE("rational reconstruction keeps a gap") {
  CHECK(reconstruct_rational(2.0 / 3.0, 1e-10, 1000000) == Rational(2, 3));
  CHECK(reconstruct_rational(-1.0 / 84.0, 1e-10, 1000000) == Rational(-1, 84));
  CHECK(reconstruct_rational(0.0, 1e-10, 1000000) == Rational(0));
  CHECK_FALSE(reconstruct_rational(std::acos(-1.0), 1e-10, 1000000).has_value());
  CHECK(to_string(Rational(1, 2)) == "1/2");
  CHECK(to_string(Rational(-4)) == "-4");
  CHECK(parse_rational("-4/8") == Rational(-1, 2));
  CHECK_FALSE(parse_rational("1/0").has_value());
}
