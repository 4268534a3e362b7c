#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "weilforge/error.hpp"
#include "weilforge/groebner.hpp"
#include "weilforge/linalg.hpp"
#include "weilforge/ring.hpp"

namespace weilforge {

enum class MacaulayShape {
  /// All monomials of degree <= d.
  UpToDegree,
  /// Only monomials of degree exactly d; meaningful for homogeneous systems.
  ExactDegree,
};

struct MacaulayMatrix {
  RingPtr ring;
  unsigned degree = 0;
  MacaulayShape shape = MacaulayShape::UpToDegree;
  /// Column monomials, degrevlex-decreasing.
  std::vector<Monomial> columns;
  struct RowLabel {
    std::size_t generator;
    Monomial shift;
  };
  std::vector<RowLabel> labels;
  std::vector<SparseRow> rows;

  std::size_t nrows() const noexcept { return rows.size(); }
  std::size_t ncols() const noexcept { return columns.size(); }
  /// Polynomial whose coefficients are read from `row` against the columns.
  Polynomial row_polynomial(const SparseRow& row) const;
};

/// Monomials of exactly degree d in `nvars` variables, degrevlex-decreasing.
std::vector<Monomial> monomials_of_degree(std::size_t nvars, unsigned d);

/// Rows are generator-major, then shift monomial degrevlex-decreasing.
/// Throws EmptyMatrix when no generator fits in degree d.
MacaulayMatrix build_macaulay(const PolySystem& F, unsigned d, MacaulayShape shape = MacaulayShape::UpToDegree);

struct EliminationResult {
  std::vector<SparseRow> rows;
  std::vector<std::uint32_t> pivots;
  std::size_t input_rows = 0;
  std::size_t cols = 0;
  double elapsed_ms = 0;
  bool went_dense = false;

  std::size_t rank() const noexcept { return rows.size(); }
  std::vector<Polynomial> polynomials(const MacaulayMatrix& M) const;
};

EliminationResult rref(const MacaulayMatrix& M, const RrefOptions& opts = {});

struct TraceEntry {
  unsigned d = 0;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t rank = 0;
  double elapsed_ms = 0;
  bool is_gb = false;
};

struct SolvingDegreeOptions {
  unsigned max_degree = 30;
  /// Eliminate one degree block at a time; requires a homogeneous system.
  bool homogeneous_blocks = false;
  RrefOptions elimination;
  GbOptions groebner;
};

struct SolvingDegreeResult {
  unsigned degree = 0;
  std::vector<TraceEntry> trace;
};

/// Raised when no degree up to the cap yields a Groebner basis.
class SolvingDegreeCapExceeded : public Error {
 public:
  SolvingDegreeCapExceeded(unsigned cap, std::vector<TraceEntry> trace)
      : Error(ErrorKind::CapExceeded, "no Groebner basis up to degree " + std::to_string(cap)),
        trace_(std::move(trace)) {}
  const std::vector<TraceEntry>& trace() const noexcept { return trace_; }

 private:
  std::vector<TraceEntry> trace_;
};

/// Least d such that the rows of RREF(M_{<=d}) form a Groebner basis of (F).
SolvingDegreeResult solving_degree(const PolySystem& F, const SolvingDegreeOptions& opts = {});

/// Header `d,rows,cols,rank,elapsed_ms,is_gb`. With `timings` off the
/// elapsed column is left empty so output is reproducible byte for byte.
std::string trace_csv(const std::vector<TraceEntry>& trace, bool timings = true);

/// Header `d m q`, then one `row col value` line per nonzero entry, where
/// value is the field element code.
std::string dump_triplets(const MacaulayMatrix& M);

}  // namespace weilforge
