#include "icisqf/local_order.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace icisqf {

LocalOrder::LocalOrder(int nvars) : priority_(static_cast<std::size_t>(nvars)) {
  std::iota(priority_.rbegin(), priority_.rend(), 0);
}

LocalOrder::LocalOrder(int nvars, std::vector<int> priority) : priority_(std::move(priority)) {
  std::vector<int> check = priority_;
  std::sort(check.begin(), check.end());
  std::vector<int> ident(static_cast<std::size_t>(nvars));
  std::iota(ident.begin(), ident.end(), 0);
  if (check != ident) throw std::invalid_argument("LocalOrder: priority is not a permutation");
}

bool LocalOrder::greater(const Monomial& a, const Monomial& b) const {
  const int da = a.degree(), db = b.degree();
  if (da != db) return da < db;
  for (int i = nvars() - 1; i >= 0; --i) {
    const int v = priority_[static_cast<std::size_t>(i)];
    if (a[v] != b[v]) return a[v] < b[v];
  }
  return false;
}

}  // namespace icisqf
