#include "weilforge/macaulay.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>

namespace weilforge {

namespace {

void enumerate(std::size_t nvars, std::size_t i, unsigned left, Monomial& cur, std::vector<Monomial>& out) {
  if (i + 1 == nvars) {
    cur.set(i, left);
    out.push_back(cur);
    cur.set(i, 0);
    return;
  }
  for (unsigned e = 0; e <= left; ++e) {
    cur.set(i, e);
    enumerate(nvars, i + 1, left - e, cur, out);
  }
  cur.set(i, 0);
}

std::vector<Monomial> monomials_up_to(std::size_t nvars, unsigned d) {
  std::vector<Monomial> out;
  for (unsigned e = d + 1; e-- > 0;) {
    auto block = monomials_of_degree(nvars, e);
    out.insert(out.end(), block.begin(), block.end());
  }
  return out;
}

double ms_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

bool covers(const std::vector<Monomial>& leading, const MonomialIdeal& target) {
  for (const auto& g : target.generators) {
    const bool hit = std::any_of(leading.begin(), leading.end(), [&](const Monomial& m) { return m.divides(g); });
    if (!hit) return false;
  }
  return true;
}

}  // namespace

std::vector<Monomial> monomials_of_degree(std::size_t nvars, unsigned d) {
  std::vector<Monomial> out;
  if (nvars == 0) {
    if (d == 0) out.emplace_back(0);
    return out;
  }
  Monomial cur(nvars);
  enumerate(nvars, 0, d, cur, out);
  std::sort(out.begin(), out.end(), [](const Monomial& a, const Monomial& b) { return degrevlex_cmp(a, b) > 0; });
  return out;
}

Polynomial MacaulayMatrix::row_polynomial(const SparseRow& row) const {
  std::vector<Term> terms;
  terms.reserve(row.size());
  for (std::size_t k = 0; k < row.size(); ++k) terms.push_back({columns[row.cols[k]], row.vals[k]});
  return Polynomial(ring, std::move(terms));
}

MacaulayMatrix build_macaulay(const PolySystem& F, unsigned d, MacaulayShape shape) {
  if (F.empty()) throw Error(ErrorKind::EmptyMatrix, "empty system");
  MacaulayMatrix M;
  M.ring = F.front().ring();
  M.degree = d;
  M.shape = shape;
  const std::size_t m = M.ring->nvars();
  M.columns = shape == MacaulayShape::UpToDegree ? monomials_up_to(m, d) : monomials_of_degree(m, d);
  std::unordered_map<Monomial, std::uint32_t, MonomialHash> index;
  index.reserve(M.columns.size());
  for (std::size_t c = 0; c < M.columns.size(); ++c) index.emplace(M.columns[c], static_cast<std::uint32_t>(c));

  for (std::size_t j = 0; j < F.size(); ++j) {
    const Polynomial& f = F[j];
    require_same_ring(*f.ring(), *M.ring);
    if (f.is_zero()) continue;
    const unsigned df = f.degree();
    if (df > d) continue;
    if (shape == MacaulayShape::ExactDegree && !f.is_homogeneous()) {
      throw Error(ErrorKind::NotHomogeneous, "degree blocks need homogeneous generators");
    }
    const auto shifts = shape == MacaulayShape::UpToDegree ? monomials_up_to(m, d - df) : monomials_of_degree(m, d - df);
    for (const auto& s : shifts) {
      SparseRow row;
      row.cols.reserve(f.size());
      row.vals.reserve(f.size());
      std::vector<std::pair<std::uint32_t, Elem>> entries;
      entries.reserve(f.size());
      for (const auto& t : f.terms()) entries.emplace_back(index.at(t.mono * s), t.coeff);
      std::sort(entries.begin(), entries.end());
      for (const auto& [c, v] : entries) {
        row.cols.push_back(c);
        row.vals.push_back(v);
      }
      M.labels.push_back({j, s});
      M.rows.push_back(std::move(row));
    }
  }
  if (M.rows.empty()) throw Error(ErrorKind::EmptyMatrix, "no generator of degree <= " + std::to_string(d));
  return M;
}

std::vector<Polynomial> EliminationResult::polynomials(const MacaulayMatrix& M) const {
  std::vector<Polynomial> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(M.row_polynomial(r));
  return out;
}

EliminationResult rref(const MacaulayMatrix& M, const RrefOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  RrefOutput r = rref_rows(*M.ring->field(), M.ncols(), M.rows, opts);
  EliminationResult out;
  out.rows = std::move(r.rows);
  out.pivots = std::move(r.pivots);
  out.input_rows = M.nrows();
  out.cols = M.ncols();
  out.went_dense = r.went_dense;
  out.elapsed_ms = ms_since(start);
  return out;
}

SolvingDegreeResult solving_degree(const PolySystem& F, const SolvingDegreeOptions& opts) {
  if (F.empty() || std::all_of(F.begin(), F.end(), [](const Polynomial& f) { return f.is_zero(); })) {
    throw Error(ErrorKind::ZeroPolynomial, "system generates the zero ideal");
  }
  if (opts.homogeneous_blocks && !is_homogeneous(F)) {
    throw Error(ErrorKind::NotHomogeneous, "degree blocks need a homogeneous system");
  }
  const GroebnerBasis G = buchberger_reduced_gb(F, opts.groebner);
  const MonomialIdeal target = initial_ideal(G);

  // Pivots are all the test needs, so stop at echelon form.
  RrefOptions elimination = opts.elimination;
  elimination.reduce = false;
  SolvingDegreeResult result;
  std::vector<Monomial> block_leading;
  TraceEntry cumulative;
  for (unsigned d = 1; d <= opts.max_degree; ++d) {
    const auto start = std::chrono::steady_clock::now();
    TraceEntry entry;
    entry.d = d;
    std::vector<Monomial> leading;
    if (opts.homogeneous_blocks) {
      for (unsigned e = d == 1 ? 0 : d; e <= d; ++e) {
        cumulative.cols += monomials_of_degree(F.front().ring()->nvars(), e).size();
        try {
          const MacaulayMatrix M = build_macaulay(F, e, MacaulayShape::ExactDegree);
          const EliminationResult E = rref(M, elimination);
          cumulative.rows += M.nrows();
          cumulative.rank += E.rank();
          for (const auto p : E.pivots) block_leading.push_back(M.columns[p]);
        } catch (const Error& err) {
          if (err.kind() != ErrorKind::EmptyMatrix) throw;
        }
      }
      if (cumulative.rows == 0) continue;
      entry.rows = cumulative.rows;
      entry.cols = cumulative.cols;
      entry.rank = cumulative.rank;
      leading = block_leading;
    } else {
      MacaulayMatrix M;
      try {
        M = build_macaulay(F, d);
      } catch (const Error& e) {
        if (e.kind() == ErrorKind::EmptyMatrix) continue;
        throw;
      }
      const EliminationResult E = rref(M, elimination);
      entry.rows = M.nrows();
      entry.cols = M.ncols();
      entry.rank = E.rank();
      for (const auto p : E.pivots) leading.push_back(M.columns[p]);
    }
    entry.is_gb = covers(leading, target);
    entry.elapsed_ms = ms_since(start);
    result.trace.push_back(entry);
    if (entry.is_gb) {
      result.degree = d;
      return result;
    }
  }
  throw SolvingDegreeCapExceeded(opts.max_degree, std::move(result.trace));
}

std::string trace_csv(const std::vector<TraceEntry>& trace, bool timings) {
  std::ostringstream os;
  os << "d,rows,cols,rank,elapsed_ms,is_gb\n";
  for (const auto& t : trace) {
    os << t.d << ',' << t.rows << ',' << t.cols << ',' << t.rank << ',';
    if (timings) os << t.elapsed_ms;
    os << ',' << (t.is_gb ? "true" : "false") << '\n';
  }
  return os.str();
}

std::string dump_triplets(const MacaulayMatrix& M) {
  std::ostringstream os;
  os << M.degree << ' ' << M.ring->nvars() << ' ' << M.ring->field()->size() << '\n';
  for (std::size_t r = 0; r < M.nrows(); ++r) {
    const SparseRow& row = M.rows[r];
    for (std::size_t k = 0; k < row.size(); ++k) os << r << ' ' << row.cols[k] << ' ' << row.vals[k] << '\n';
  }
  return os.str();
}

}  // namespace weilforge
