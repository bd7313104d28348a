#pragma once

#include "icisqf/poly.hpp"

#include <vector>

namespace icisqf {

/// Anti-graded degree reverse lexicographic order on monomials.
///
/// Lower total degree is larger, so 1 is the largest monomial. Ties are broken
/// by degrevlex on the permuted exponent vector y_i = a[priority[i]]: the
/// monomial with the smaller entry at the last differing position of y is
/// larger. The default priority is the reversed variable list, which makes
/// x1 the last-compared variable; with it LM(x1^2 + x2^2) = x2^2.
class LocalOrder {
 public:
  explicit LocalOrder(int nvars);
  LocalOrder(int nvars, std::vector<int> priority);

  int nvars() const { return static_cast<int>(priority_.size()); }
  const std::vector<int>& priority() const { return priority_; }

  /// Strictly greater in the order.
  bool greater(const Monomial& a, const Monomial& b) const;
  /// Comparator for sorting in decreasing order.
  bool operator()(const Monomial& a, const Monomial& b) const { return greater(a, b); }

 private:
  std::vector<int> priority_;
};

}  // namespace icisqf
