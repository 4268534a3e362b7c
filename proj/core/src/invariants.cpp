#include "weilforge/invariants.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <unordered_map>

#include "weilforge/error.hpp"
#include "weilforge/linalg.hpp"
#include "weilforge/macaulay.hpp"
#include "weilforge/random.hpp"

namespace weilforge {

namespace {

void require_homogeneous(const GroebnerBasis& I) {
  for (const auto& g : I.elements) {
    if (!g.is_homogeneous()) throw Error(ErrorKind::NotHomogeneous, "ideal must be homogeneous");
  }
}

std::uint64_t choose(unsigned n, unsigned k) {
  if (k > n) return 0;
  std::uint64_t r = 1;
  for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Replaces the last variable v occurring in l by the solution of l = 0.
GroebnerBasis eliminate_linear(const GroebnerBasis& G, const Polynomial& l, const GbOptions& opts) {
  const Ring& R = *G.ring;
  const Field& F = *R.field();
  std::size_t v = 0;
  Elem c = 0;
  for (const auto& t : l.terms()) {
    for (std::size_t i = 0; i < R.nvars(); ++i) {
      if (t.mono[i] && i >= v) {
        v = i;
        c = t.coeff;
      }
    }
  }
  std::vector<std::string> names;
  for (std::size_t i = 0; i < R.nvars(); ++i) {
    if (i != v) names.push_back(R.name(i));
  }
  RingPtr smaller = Ring::make(R.field(), names);
  Assignment images(R.nvars());
  const Elem s = F.neg(F.inv(c));
  std::vector<Term> solved;
  for (const auto& t : l.terms()) {
    if (t.mono[v]) continue;
    std::size_t i = 0;
    while (!t.mono[i]) ++i;
    Monomial m(smaller->nvars());
    m.set(i < v ? i : i - 1, 1);
    solved.push_back({m, F.mul(s, t.coeff)});
  }
  for (std::size_t i = 0; i < R.nvars(); ++i) {
    if (i == v) {
      images[i] = Polynomial(smaller, solved);
    } else {
      images[i] = Polynomial::variable(smaller, i < v ? i : i - 1);
    }
  }
  PolySystem gens;
  for (const auto& g : G.elements) gens.push_back(substitute(g, smaller, images));
  return buchberger_reduced_gb(smaller, gens, opts);
}

// Cuts by regular linear forms while any can be found; Betti numbers are kept.
GroebnerBasis drop_regular_linear_forms(GroebnerBasis G, const BettiOptions& opts) {
  SplitMix64 rng(opts.seed);
  for (;;) {
    const Ring& R = *G.ring;
    const std::size_t m = R.nvars();
    if (m == 0 || G.is_unit_ideal()) return G;
    const HilbertSeries hs = hilbert_series(G);
    if (hs.dimension == 0) return G;
    const HilbertSeries target = hs_times_one_minus_z(hs, 1);

    std::vector<Polynomial> candidates;
    for (std::size_t i = m; i-- > 0;) candidates.push_back(Polynomial::variable(G.ring, i));
    const std::uint64_t q = R.field()->size();
    for (unsigned a = 0; a < opts.attempts; ++a) {
      std::vector<Term> terms;
      for (std::size_t i = 0; i < m; ++i) {
        Monomial x(m);
        x.set(i, 1);
        terms.push_back({x, static_cast<Elem>(rng.below(q))});
      }
      Polynomial l(G.ring, std::move(terms));
      if (!l.is_zero()) candidates.push_back(std::move(l));
    }
    bool found = false;
    for (const auto& l : candidates) {
      const GroebnerBasis cut = sum(G, {l}, opts.groebner);
      if (hilbert_series(cut) == target) {
        G = eliminate_linear(G, l, opts.groebner);
        found = true;
        break;
      }
    }
    if (!found) return G;
  }
}

unsigned taylor_bound(const MonomialIdeal& J, std::size_t nvars) {
  std::vector<unsigned> degs;
  Monomial all(J.nvars);
  for (const auto& g : J.generators) {
    degs.push_back(g.degree());
    all = all.lcm(g);
  }
  std::sort(degs.rbegin(), degs.rend());
  unsigned best = 0;
  unsigned prefix = 0;
  for (std::size_t i = 0; i < degs.size() && i < nvars; ++i) {
    prefix += degs[i];
    best = std::max(best, std::min(prefix, all.degree()));
  }
  return best;
}

class Koszul {
 public:
  Koszul(const GroebnerBasis& G, unsigned top) : G_(G), m_(G.ring->nvars()), J_(initial_ideal(G)) {
    basis_.resize(top + 2);
    index_.resize(top + 2);
    mult_.resize(top + 2);
    for (unsigned e = 0; e < basis_.size(); ++e) {
      for (const auto& mono : monomials_of_degree(m_, e)) {
        if (J_.contains(mono)) continue;
        index_[e].emplace(mono, static_cast<std::uint32_t>(basis_[e].size()));
        basis_[e].push_back(mono);
      }
    }
    masks_.resize(m_ + 1);
    subset_index_.assign(std::size_t{1} << m_, 0);
    for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << m_); ++mask) {
      auto& bucket = masks_[static_cast<std::size_t>(std::popcount(mask))];
      subset_index_[mask] = static_cast<std::uint32_t>(bucket.size());
      bucket.push_back(mask);
    }
  }

  std::size_t hf(unsigned e) const { return e < basis_.size() ? basis_[e].size() : 0; }

  // Rank of the Koszul differential K_i -> K_{i-1} in internal degree j.
  std::size_t rank(unsigned i, unsigned j) {
    if (i == 0 || i > m_ || j < i) return 0;
    const unsigned a = j - i;
    if (hf(a) == 0 || hf(a + 1) == 0) return 0;
    const Field& F = *G_.ring->field();
    const std::size_t width = hf(a + 1);
    std::vector<SparseRow> rows;
    rows.reserve(masks_[i].size() * hf(a));
    std::vector<std::pair<std::uint32_t, Elem>> entries;
    for (const auto mask : masks_[i]) {
      for (std::uint32_t mu = 0; mu < hf(a); ++mu) {
        entries.clear();
        unsigned pos = 0;
        for (std::size_t s = 0; s < m_; ++s) {
          if (!(mask >> s & 1u)) continue;
          const std::size_t base = subset_index_[mask & ~(std::uint32_t{1} << s)] * width;
          const bool negate = pos++ % 2 == 1;
          for (const auto& [col, val] : times_variable(a, mu, s)) {
            entries.emplace_back(static_cast<std::uint32_t>(base + col), negate ? F.neg(val) : val);
          }
        }
        if (entries.empty()) continue;
        std::sort(entries.begin(), entries.end());
        SparseRow row;
        for (const auto& [c, v] : entries) {
          row.cols.push_back(c);
          row.vals.push_back(v);
        }
        rows.push_back(std::move(row));
      }
    }
    RrefOptions ro;
    ro.reduce = false;
    return rref_rows(F, masks_[i - 1].size() * width, std::move(rows), ro).rows.size();
  }

  std::size_t nvars() const { return m_; }

 private:
  // Normal form of x_s * mu over the degree-(a+1) standard monomials.
  const std::vector<std::pair<std::uint32_t, Elem>>& times_variable(unsigned a, std::uint32_t mu, std::size_t s) {
    auto& table = mult_[a];
    if (table.empty()) table.resize(basis_[a].size() * m_);
    auto& slot = table[mu * m_ + s];
    if (slot) return *slot;
    slot.emplace();
    Monomial p = basis_[a][mu];
    p.set(s, p[s] + 1);
    if (!J_.contains(p)) {
      slot->emplace_back(index_[a + 1].at(p), 1);
    } else {
      const Polynomial nf = normal_form(Polynomial::monomial(G_.ring, p, 1), G_);
      for (const auto& t : nf.terms()) slot->emplace_back(index_[a + 1].at(t.mono), t.coeff);
      std::sort(slot->begin(), slot->end());
    }
    return *slot;
  }

  const GroebnerBasis& G_;
  std::size_t m_;
  MonomialIdeal J_;
  std::vector<std::vector<Monomial>> basis_;
  std::vector<std::unordered_map<Monomial, std::uint32_t, MonomialHash>> index_;
  std::vector<std::vector<std::optional<std::vector<std::pair<std::uint32_t, Elem>>>>> mult_;
  std::vector<std::vector<std::uint32_t>> masks_;
  std::vector<std::uint32_t> subset_index_;
};

}  // namespace

HilbertSeries hilbert_series(const GroebnerBasis& I) {
  require_homogeneous(I);
  return hilbert_series(initial_ideal(I));
}

std::int64_t hilbert_function(const GroebnerBasis& I, unsigned d) { return hilbert_series(I).coefficient(d); }

std::size_t krull_dimension(const GroebnerBasis& I) { return hilbert_series(I).dimension; }

std::int64_t multiplicity(const GroebnerBasis& I) {
  if (I.is_unit_ideal()) throw Error(ErrorKind::ImproperIdeal, "multiplicity of the zero ring");
  return hilbert_series(I).multiplicity();
}

unsigned degree_of_regularity(const PolySystem& F, const GbOptions& opts) {
  if (F.empty()) throw Error(ErrorKind::NotZeroDimensionalTop, "empty system");
  PolySystem top;
  for (const auto& f : F) {
    if (!f.is_zero()) top.push_back(top_part(f));
  }
  const GroebnerBasis G = buchberger_reduced_gb(F.front().ring(), top, opts);
  const HilbertSeries hs = hilbert_series(G);
  if (hs.dimension != 0) {
    throw Error(ErrorKind::NotZeroDimensionalTop,
                "R/(F^top) has dimension " + std::to_string(hs.dimension) + ", so no degree of regularity exists");
  }
  return static_cast<unsigned>(hs.reduced.size());
}

std::uint64_t BettiTable::at(unsigned i, unsigned j) const {
  const auto it = entries.find({i, j});
  return it == entries.end() ? 0 : it->second;
}

std::string BettiTable::render() const {
  unsigned max_i = 0;
  int min_row = 0;
  int max_row = 0;
  bool any = false;
  for (const auto& [key, v] : entries) {
    const int row = static_cast<int>(key.second) - static_cast<int>(key.first);
    if (!any) min_row = max_row = row;
    any = true;
    max_i = std::max(max_i, key.first);
    min_row = std::min(min_row, row);
    max_row = std::max(max_row, row);
  }
  std::ostringstream os;
  if (!any) return "       (zero module)\n";
  const auto cell = [](const std::string& s) { return std::string(s.size() < 6 ? 6 - s.size() : 0, ' ') + s; };
  os << "      ";
  for (unsigned i = 0; i <= max_i; ++i) os << cell(std::to_string(i));
  os << "\ntotal:";
  for (unsigned i = 0; i <= max_i; ++i) {
    std::uint64_t t = 0;
    for (const auto& [key, v] : entries) {
      if (key.first == i) t += v;
    }
    os << cell(std::to_string(t));
  }
  os << '\n';
  for (int row = min_row; row <= max_row; ++row) {
    const std::string label = std::to_string(row) + ":";
    os << std::string(label.size() < 6 ? 6 - label.size() : 0, ' ') << label;
    for (unsigned i = 0; i <= max_i; ++i) {
      const int j = row + static_cast<int>(i);
      const std::uint64_t v = j < 0 ? 0 : at(i, static_cast<unsigned>(j));
      os << cell(v ? std::to_string(v) : ".");
    }
    os << '\n';
  }
  return os.str();
}

std::string BettiTable::to_json() const {
  std::ostringstream os;
  os << "{\"nvars\":" << nvars << ",\"cap\":" << cap << ",\"closed\":" << (closed ? "true" : "false")
     << ",\"entries\":[";
  bool first = true;
  for (const auto& [key, v] : entries) {
    if (!first) os << ',';
    first = false;
    os << "{\"i\":" << key.first << ",\"j\":" << key.second << ",\"beta\":" << v << '}';
  }
  os << "]}";
  return os.str();
}

BettiTable betti_table(const GroebnerBasis& I, const BettiOptions& opts) {
  require_homogeneous(I);
  BettiTable table;
  table.nvars = I.ring->nvars();
  if (I.is_unit_ideal()) {
    table.closed = true;
    return table;
  }
  const GroebnerBasis G = drop_regular_linear_forms(I, opts);
  const std::size_t m = G.ring->nvars();
  const MonomialIdeal J = initial_ideal(G);
  unsigned top = taylor_bound(J, m);
  const HilbertSeries hs = hilbert_series(J);
  if (hs.dimension == 0) top = std::min<unsigned>(top, static_cast<unsigned>(hs.reduced.size() - 1 + m));
  if (top > opts.cap) {
    throw Error(ErrorKind::CapTooSmall, "syzygies may reach degree " + std::to_string(top) + " but the cap is " +
                                            std::to_string(opts.cap) + "; rerun with cap >= " + std::to_string(top));
  }
  if (m > 20) throw Error(ErrorKind::TooManyVariables, "Koszul complex on more than 20 variables");
  Koszul K(G, top);
  std::vector<std::size_t> ranks(m + 2, 0);
  for (unsigned j = 0; j <= top; ++j) {
    for (unsigned i = 1; i <= m; ++i) ranks[i] = K.rank(i, j);
    for (unsigned i = 0; i <= m && i <= j; ++i) {
      const std::uint64_t dim = choose(static_cast<unsigned>(m), i) * K.hf(j - i);
      const std::uint64_t beta = dim - ranks[i] - ranks[i + 1];
      if (beta) table.entries[{i, j}] = beta;
    }
  }
  table.cap = top;
  table.closed = true;
  return table;
}

HomologicalInvariants derive_homological_invariants(const BettiTable& B, const GroebnerBasis& I) {
  if (!B.closed) throw Error(ErrorKind::OpenTable, "Betti table is not closed");
  if (I.is_unit_ideal()) throw Error(ErrorKind::ImproperIdeal, "invariants of the zero ring");
  HomologicalInvariants out;
  bool any = false;
  for (const auto& [key, v] : B.entries) {
    const int row = static_cast<int>(key.second) - static_cast<int>(key.first);
    out.reg_quotient = any ? std::max(out.reg_quotient, row) : row;
    any = true;
    out.projective_dimension = std::max(out.projective_dimension, key.first);
    if (key.first == 1) out.minimal_generators += v;
  }
  out.reg_ideal = out.reg_quotient + 1;
  out.dimension = krull_dimension(I);
  out.height = I.ring->nvars() - out.dimension;
  out.cohen_macaulay = out.projective_dimension == out.height;
  out.complete_intersection = out.minimal_generators == out.height;
  return out;
}

bool alternating_sum_identity(const BettiTable& B, const HilbertSeries& hs) {
  if (hs.nvars != B.nvars) return false;
  const std::size_t top = std::max<std::size_t>(B.cap + 1, hs.numerator.size());
  for (std::size_t j = 0; j < top; ++j) {
    std::int64_t alt = 0;
    for (const auto& [key, v] : B.entries) {
      if (key.second == j) alt += key.first % 2 ? -static_cast<std::int64_t>(v) : static_cast<std::int64_t>(v);
    }
    const std::int64_t want = j < hs.numerator.size() ? hs.numerator[j] : 0;
    if (alt != want) return false;
  }
  return true;
}

bool linear_regular_sequence_check(const GroebnerBasis& I, const PolySystem& L, const GbOptions& opts) {
  for (const auto& l : L) {
    require_same_ring(*l.ring(), *I.ring);
    if (l.is_zero() || !l.is_homogeneous() || l.degree() != 1) {
      throw Error(ErrorKind::NotLinear, "expected a linear form, got " + l.render());
    }
  }
  const HilbertSeries before = hilbert_series(I);
  const HilbertSeries after = hilbert_series(sum(I, L, opts));
  return after == hs_times_one_minus_z(before, static_cast<unsigned>(L.size()));
}

}  // namespace weilforge
