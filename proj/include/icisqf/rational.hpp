#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

namespace icisqf {

using Rational = mpq_class;

/// "p/q", or "p" when the denominator is one.
std::string to_string(const Rational& q);

/// Parses "p" or "p/q" (optional leading '-'); returns nullopt on malformed
/// input or a zero denominator.
std::optional<Rational> parse_rational(std::string_view text);

double to_double(const Rational& q);

/// Continued-fraction reconstruction of a real number.
///
/// A convergent p/q is accepted when q <= max_denominator, |x - p/q| <= tol and
/// either the expansion terminates there or the next convergent's denominator
/// exceeds `gap` times q. The gap test rejects accidental small-denominator
/// matches of values that are not actually rational.
std::optional<Rational> reconstruct_rational(double x, double tol,
                                             long max_denominator,
                                             double gap = 1e3);

}  // namespace icisqf
