#include "icisqf/sparse_echelon.hpp"

namespace icisqf {

SparseRow SparseEchelon::reduce(const SparseRow& row) const {
  std::map<int, Rational> acc;
  for (const auto& [c, v] : row) {
    if (v != 0) acc[c] += v;
  }
  auto it = acc.begin();
  while (it != acc.end()) {
    if (it->second == 0) {
      it = acc.erase(it);
      continue;
    }
    auto piv = pivots_.find(it->first);
    if (piv == pivots_.end()) {
      ++it;
      continue;
    }
    const int col = it->first;
    const Rational factor = it->second;
    for (const auto& [c, v] : piv->second) acc[c] -= factor * v;
    // Entries introduced by the subtraction all sit at columns > col.
    acc.erase(col);
    it = acc.upper_bound(col);
  }
  SparseRow out;
  out.reserve(acc.size());
  for (auto& [c, v] : acc) {
    if (v != 0) out.emplace_back(c, std::move(v));
  }
  return out;
}

bool SparseEchelon::insert(SparseRow row) {
  SparseRow r = reduce(row);
  if (r.empty()) return false;
  const Rational lead = r.front().second;
  for (auto& [c, v] : r) v /= lead;
  const int col = r.front().first;
  pivots_.emplace(col, std::move(r));
  return true;
}

std::vector<int> SparseEchelon::pivot_columns() const {
  std::vector<int> cols;
  cols.reserve(pivots_.size());
  for (const auto& [c, r] : pivots_) cols.push_back(c);
  return cols;
}

}  // namespace icisqf
