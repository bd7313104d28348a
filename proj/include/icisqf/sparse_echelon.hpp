#pragma once

#include "icisqf/rational.hpp"

#include <map>
#include <utility>
#include <vector>

namespace icisqf {

/// Sparse row vector: (column, value) pairs sorted by column, no zeros.
using SparseRow = std::vector<std::pair<int, Rational>>;

/// Incrementally built row-echelon basis of a subspace of Q^m.
///
/// Each stored row has leading coefficient 1 at its pivot column. Reduction
/// eliminates pivot columns in increasing column order, so the remainder of a
/// vector is supported on non-pivot columns only and is canonical for its
/// coset modulo the span.
class SparseEchelon {
 public:
  /// Returns true when the row was independent of the span so far.
  bool insert(SparseRow row);
  SparseRow reduce(const SparseRow& row) const;

  std::size_t rank() const { return pivots_.size(); }
  bool is_pivot(int col) const { return pivots_.contains(col); }
  std::vector<int> pivot_columns() const;

 private:
  std::map<int, SparseRow> pivots_;
};

}  // namespace icisqf
