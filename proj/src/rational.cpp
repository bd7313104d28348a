#include "icisqf/rational.hpp"

#include <cctype>
#include <cmath>

namespace icisqf {

std::string to_string(const Rational& q) {
  return q.get_str();
}

std::optional<Rational> parse_rational(std::string_view text) {
  std::size_t i = 0;
  auto digits = [&](std::string& out) {
    std::size_t start = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      out.push_back(text[i]);
      ++i;
    }
    return i > start;
  };
  std::string num;
  if (i < text.size() && text[i] == '-') {
    num.push_back('-');
    ++i;
  }
  if (!digits(num)) return std::nullopt;
  std::string den = "1";
  if (i < text.size() && text[i] == '/') {
    ++i;
    den.clear();
    if (!digits(den)) return std::nullopt;
  }
  if (i != text.size()) return std::nullopt;
  mpz_class n(num), d(den);
  if (d == 0) return std::nullopt;
  Rational q(n, d);
  q.canonicalize();
  return q;
}

double to_double(const Rational& q) {
  return q.get_d();
}

std::optional<Rational> reconstruct_rational(double x, double tol,
                                             long max_denominator, double gap) {
  if (!std::isfinite(x)) return std::nullopt;
  const bool negative = x < 0;
  double rest = std::fabs(x);
  const double target = rest;
  // Convergents h/k with the usual recurrence; long double keeps the tail of
  // the expansion from overflowing before we stop.
  long double h_prev = 1, h = std::floor(rest);
  long double k_prev = 0, k = 1;
  double frac = rest - std::floor(rest);
  for (int step = 0; step < 64; ++step) {
    if (k > static_cast<long double>(max_denominator)) return std::nullopt;
    const double approx = static_cast<double>(h / k);
    const bool close = std::fabs(target - approx) <= tol;
    bool terminated = frac <= 0.0;
    long double h_next = 0, k_next = 0;
    double next_frac = 0;
    if (!terminated) {
      rest = 1.0 / frac;
      if (!std::isfinite(rest)) {
        terminated = true;
      } else {
        const double a = std::floor(rest);
        next_frac = rest - a;
        h_next = a * h + h_prev;
        k_next = a * k + k_prev;
      }
    }
    if (close && (terminated || k_next > gap * k)) {
      Rational q(mpz_class(std::to_string(static_cast<long long>(h))),
                 mpz_class(std::to_string(static_cast<long long>(k))));
      q.canonicalize();
      if (negative) q = -q;
      return q;
    }
    if (terminated) return std::nullopt;
    h_prev = h;
    k_prev = k;
    h = h_next;
    k = k_next;
    frac = next_frac;
  }
  return std::nullopt;
}

}  // namespace icisqf
