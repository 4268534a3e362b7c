#pragma once

#include <cstdint>
#include <vector>

#include "weilforge/field.hpp"

namespace weilforge {

/// Sparse row with strictly increasing column indices and nonzero values.
struct SparseRow {
  std::vector<std::uint32_t> cols;
  std::vector<Elem> vals;

  std::size_t size() const noexcept { return cols.size(); }
  bool empty() const noexcept { return cols.empty(); }
  friend bool operator==(const SparseRow&, const SparseRow&) = default;
};

struct RrefOptions {
  /// Switch to the dense kernel once the echelon rows exceed this fill ratio.
  double dense_threshold = 0.02;
  /// Worker threads for dense row elimination; 0 or 1 runs inline.
  unsigned threads = 1;
  /// Off: stop at echelon form (rows not back-substituted); rank is unchanged.
  bool reduce = true;
};

struct RrefOutput {
  /// Nonzero rows of the reduced echelon form, ordered by pivot column.
  std::vector<SparseRow> rows;
  std::vector<std::uint32_t> pivots;
  bool went_dense = false;
};

/// Canonical reduced row echelon form; pivots are 1.
RrefOutput rref_rows(const Field& field, std::size_t ncols, std::vector<SparseRow> rows,
                     const RrefOptions& opts = {});

}  // namespace weilforge
