#include "weilforge/groebner.hpp"

#include <algorithm>
#include <queue>
#include <unordered_map>

#include "weilforge/error.hpp"
#include "weilforge/hilbert.hpp"

namespace weilforge {

namespace {

using Terms = std::vector<Term>;

// out = a[ai..] - c * m * b[bi..], merged in ring order.
void sub_mul(const Ring& R, const Field& F, const Terms& a, std::size_t ai, Elem c, const Monomial& m,
             const Terms& b, std::size_t bi, Terms& out) {
  out.clear();
  out.reserve(a.size() - ai + b.size() - bi);
  const Elem nc = F.neg(c);
  Monomial shifted;
  bool have = false;
  while (ai < a.size() || bi < b.size()) {
    if (!have && bi < b.size()) {
      shifted = b[bi].mono * m;
      have = true;
    }
    int cmp;
    if (ai == a.size()) {
      cmp = -1;
    } else if (bi == b.size()) {
      cmp = 1;
    } else {
      cmp = R.compare(a[ai].mono, shifted);
    }
    if (cmp > 0) {
      out.push_back(a[ai++]);
    } else if (cmp < 0) {
      out.push_back({shifted, F.mul(nc, b[bi].coeff)});
      ++bi;
      have = false;
    } else {
      const Elem v = F.add(a[ai].coeff, F.mul(nc, b[bi].coeff));
      if (v) out.push_back({shifted, v});
      ++ai;
      ++bi;
      have = false;
    }
  }
}

struct Reducer {
  Monomial lm;
  const Terms* terms;  // monic
};

class ReducerSet {
 public:
  void add(const Polynomial& g) { items_.push_back({g.leading_monomial(), &g.terms()}); }
  void clear() { items_.clear(); }

  const Reducer* find(const Monomial& m) const {
    for (const auto& r : items_) {
      if (r.lm.divides(m)) return &r;
    }
    return nullptr;
  }

 private:
  std::vector<Reducer> items_;
};

// Full reduction; reducers must be monic. Short inputs use a sorted merge;
// long ones a hash accumulator whose live monomials sit in a max-heap.
Terms reduce_merge(const Ring& R, Terms p, const ReducerSet& reducers, bool tail) {
  const Field& F = *R.field();
  Terms result;
  Terms buf;
  std::size_t head = 0;
  while (head < p.size()) {
    const Term lt = p[head];
    const Reducer* r = reducers.find(lt.mono);
    if (!r) {
      if (!tail) {
        result.assign(p.begin() + static_cast<std::ptrdiff_t>(head), p.end());
        return result;
      }
      result.push_back(lt);
      ++head;
      continue;
    }
    sub_mul(R, F, p, head + 1, lt.coeff, lt.mono / r->lm, *r->terms, 1, buf);
    std::swap(p, buf);
    head = 0;
  }
  return result;
}

Terms reduce_heap(const Ring& R, const Terms& p, const ReducerSet& reducers, bool tail) {
  const Field& F = *R.field();
  std::unordered_map<Monomial, Elem, MonomialHash> acc;
  acc.reserve(p.size() * 4);
  auto less = [&R](const Monomial& a, const Monomial& b) { return R.compare(a, b) < 0; };
  std::priority_queue<Monomial, std::vector<Monomial>, decltype(less)> heap(less);
  for (const auto& t : p) {
    acc.emplace(t.mono, t.coeff);
    heap.push(t.mono);
  }
  Terms result;
  while (!heap.empty()) {
    const Monomial m = heap.top();
    heap.pop();
    const auto it = acc.find(m);
    if (it == acc.end()) continue;
    const Elem c = it->second;
    acc.erase(it);
    const Reducer* r = reducers.find(m);
    if (!r) {
      result.push_back({m, c});
      if (tail) continue;
      // Head is irreducible: drain the rest in order.
      while (!heap.empty()) {
        const Monomial rest = heap.top();
        heap.pop();
        const auto jt = acc.find(rest);
        if (jt == acc.end()) continue;
        result.push_back({rest, jt->second});
        acc.erase(jt);
      }
      return result;
    }
    const Monomial shift = m / r->lm;
    const Elem nc = F.neg(c);
    const Terms& g = *r->terms;
    for (std::size_t k = 1; k < g.size(); ++k) {
      const Monomial mk = g[k].mono * shift;
      const Elem v = F.mul(nc, g[k].coeff);
      auto [jt, fresh] = acc.try_emplace(mk, v);
      if (fresh) {
        heap.push(mk);
      } else {
        jt->second = F.add(jt->second, v);
        if (!jt->second) acc.erase(jt);
      }
    }
  }
  return result;
}

Terms reduce(const Ring& R, Terms p, const ReducerSet& reducers, bool tail = true) {
  if (p.size() < 48) return reduce_merge(R, std::move(p), reducers, tail);
  return reduce_heap(R, p, reducers, tail);
}

Polynomial make_monic(Polynomial p) { return p.monic(); }

struct Pair {
  std::size_t i, j;
  Monomial lcm;
};

class Buchberger {
 public:
  Buchberger(RingPtr ring, const GbOptions& opts) : ring_(std::move(ring)), opts_(opts) {}

  GroebnerBasis run(const PolySystem& F) {
    const Ring& R = *ring_;
    for (const auto& f : F) {
      require_same_ring(*f.ring(), R);
      if (f.is_zero()) continue;
      if (f.is_constant()) return unit();
    }
    // Interreduce inputs first so duplicates and multiples vanish early.
    for (const auto& f : F) {
      if (f.is_zero()) continue;
      Terms h = reduce(R, f.terms(), active_reducers());
      if (h.empty()) continue;
      Polynomial hp = make_monic(Polynomial(ring_, std::move(h)));
      if (hp.is_constant()) return unit();
      insert(std::move(hp));
    }
    while (!pairs_.empty()) {
      const std::size_t k = select();
      const Pair pair = pairs_[k];
      pairs_.erase(pairs_.begin() + static_cast<std::ptrdiff_t>(k));
      if (pair.lcm.degree() > opts_.degree_cap) {
        throw Error(ErrorKind::DegreeCapExceeded, "S-pair of degree " + std::to_string(pair.lcm.degree()) +
                                                      " exceeds the cap " + std::to_string(opts_.degree_cap));
      }
      Terms s = spoly(pair);
      Terms h = reduce(R, std::move(s), active_reducers());
      if (h.empty()) continue;
      Polynomial hp = make_monic(Polynomial(ring_, std::move(h)));
      if (hp.is_constant()) return unit();
      insert(std::move(hp));
    }
    return finish();
  }

 private:
  GroebnerBasis unit() const { return {ring_, {Polynomial::constant(ring_, 1)}}; }

  const ReducerSet& active_reducers() {
    if (dirty_) {
      reducers_.clear();
      for (std::size_t i = 0; i < polys_.size(); ++i) {
        if (active_[i]) reducers_.add(polys_[i]);
      }
      dirty_ = false;
    }
    return reducers_;
  }

  Terms spoly(const Pair& p) const {
    const Ring& R = *ring_;
    const Polynomial& a = polys_[p.i];
    const Polynomial& b = polys_[p.j];
    const Monomial ma = p.lcm / a.leading_monomial();
    const Monomial mb = p.lcm / b.leading_monomial();
    Terms shifted_a;
    shifted_a.reserve(a.size() - 1);
    for (std::size_t k = 1; k < a.size(); ++k) shifted_a.push_back({a.terms()[k].mono * ma, a.terms()[k].coeff});
    Terms out;
    sub_mul(R, *R.field(), shifted_a, 0, 1, mb, b.terms(), 1, out);
    return out;
  }

  std::size_t select() const {
    const Ring& R = *ring_;
    std::size_t best = 0;
    for (std::size_t k = 1; k < pairs_.size(); ++k) {
      const Pair& a = pairs_[k];
      const Pair& b = pairs_[best];
      const int c = R.compare(a.lcm, b.lcm);
      if (c < 0 || (c == 0 && std::tie(a.j, a.i) < std::tie(b.j, b.i))) best = k;
    }
    return best;
  }

  // Gebauer-Moeller installation of a new basis element.
  void insert(Polynomial h) {
    const std::size_t hi = polys_.size();
    const Monomial H = h.leading_monomial();
    polys_.push_back(std::move(h));
    active_.push_back(true);
    dirty_ = true;

    std::vector<Pair> C;
    for (std::size_t g = 0; g < hi; ++g) {
      if (active_[g]) C.push_back({g, hi, H.lcm(polys_[g].leading_monomial())});
    }
    std::vector<Pair> D;
    for (std::size_t c = 0; c < C.size(); ++c) {
      const Pair& p = C[c];
      bool keep = H.coprime(polys_[p.i].leading_monomial());
      if (!keep) {
        keep = true;
        for (std::size_t o = c + 1; o < C.size() && keep; ++o) {
          if (C[o].lcm.divides(p.lcm)) keep = false;
        }
        for (const auto& d : D) {
          if (!keep) break;
          if (d.lcm.divides(p.lcm)) keep = false;
        }
      }
      if (keep) D.push_back(p);
    }
    std::vector<Pair> kept;
    for (const auto& p : pairs_) {
      if (H.divides(p.lcm) && !(H.lcm(polys_[p.i].leading_monomial()) == p.lcm) &&
          !(H.lcm(polys_[p.j].leading_monomial()) == p.lcm)) {
        continue;
      }
      kept.push_back(p);
    }
    for (const auto& p : D) {
      if (!H.coprime(polys_[p.i].leading_monomial())) kept.push_back(p);
    }
    pairs_ = std::move(kept);
    for (std::size_t g = 0; g < hi; ++g) {
      if (active_[g] && H.divides(polys_[g].leading_monomial())) active_[g] = false;
    }
  }

  GroebnerBasis finish() {
    const Ring& R = *ring_;
    std::vector<Polynomial> basis;
    for (std::size_t i = 0; i < polys_.size(); ++i) {
      if (active_[i]) basis.push_back(polys_[i]);
    }
    std::vector<Polynomial> reduced;
    reduced.reserve(basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i) {
      ReducerSet others;
      for (std::size_t j = 0; j < basis.size(); ++j) {
        if (j != i) others.add(basis[j]);
      }
      Terms tail(basis[i].terms().begin() + 1, basis[i].terms().end());
      Terms r = reduce(R, std::move(tail), others);
      r.insert(r.begin(), basis[i].leading_term());
      reduced.emplace_back(ring_, std::move(r));
    }
    std::sort(reduced.begin(), reduced.end(), [&](const Polynomial& a, const Polynomial& b) {
      return R.compare(a.leading_monomial(), b.leading_monomial()) < 0;
    });
    return {ring_, std::move(reduced)};
  }

  RingPtr ring_;
  GbOptions opts_;
  std::vector<Polynomial> polys_;
  std::vector<bool> active_;
  std::vector<Pair> pairs_;
  ReducerSet reducers_;
  bool dirty_ = true;
};

Polynomial divide_exact(const Polynomial& f, const Polynomial& g) {
  const Ring& R = *f.ring();
  const Field& F = *R.field();
  Terms p = f.terms();
  Terms q;
  Terms buf;
  const Elem lc_inv = F.inv(g.leading_coeff());
  const Monomial& lm = g.leading_monomial();
  while (!p.empty()) {
    if (!lm.divides(p[0].mono)) throw Error(ErrorKind::RingMismatch, "inexact polynomial division");
    const Monomial m = p[0].mono / lm;
    const Elem c = F.mul(p[0].coeff, lc_inv);
    q.push_back({m, c});
    sub_mul(R, F, p, 1, c, m, g.terms(), 1, buf);
    std::swap(p, buf);
  }
  return Polynomial(f.ring(), std::move(q));
}

void require_homogeneous(const GroebnerBasis& I) {
  for (const auto& g : I.elements) {
    if (!g.is_homogeneous()) throw Error(ErrorKind::NotHomogeneous, "ideal must be homogeneous");
  }
}

}  // namespace

unsigned GroebnerBasis::max_degree() const {
  unsigned d = 0;
  for (const auto& g : elements) d = std::max(d, g.degree());
  return d;
}

std::vector<Monomial> GroebnerBasis::leading_monomials() const {
  std::vector<Monomial> out;
  out.reserve(elements.size());
  for (const auto& g : elements) out.push_back(g.leading_monomial());
  return out;
}

bool operator==(const GroebnerBasis& a, const GroebnerBasis& b) {
  if (!a.ring->same_as(*b.ring)) return false;
  return a.elements == b.elements;
}

MonomialIdeal MonomialIdeal::minimalize(std::size_t nvars, std::vector<Monomial> gens) {
  std::sort(gens.begin(), gens.end(), [](const Monomial& a, const Monomial& b) {
    return degrevlex_cmp(a, b) < 0;
  });
  MonomialIdeal out;
  out.nvars = nvars;
  for (const auto& g : gens) {
    bool redundant = false;
    for (const auto& h : out.generators) {
      if (h.divides(g)) {
        redundant = true;
        break;
      }
    }
    if (!redundant) out.generators.push_back(g);
  }
  return out;
}

bool MonomialIdeal::contains(const Monomial& m) const {
  return std::any_of(generators.begin(), generators.end(), [&](const Monomial& g) { return g.divides(m); });
}

GroebnerBasis buchberger_reduced_gb(const RingPtr& ring, const PolySystem& F, const GbOptions& opts) {
  return Buchberger(ring, opts).run(F);
}

GroebnerBasis buchberger_reduced_gb(const PolySystem& F, const GbOptions& opts) {
  if (F.empty()) throw Error(ErrorKind::RingMismatch, "cannot infer the ring of an empty system");
  return buchberger_reduced_gb(F.front().ring(), F, opts);
}

Polynomial normal_form(const Polynomial& f, const std::vector<Polynomial>& reducers) {
  std::vector<Polynomial> monic;
  for (const auto& g : reducers) {
    require_same_ring(*g.ring(), *f.ring());
    if (!g.is_zero()) monic.push_back(g.monic());
  }
  ReducerSet set;
  for (const auto& g : monic) set.add(g);
  return Polynomial(f.ring(), reduce(*f.ring(), f.terms(), set));
}

Polynomial normal_form(const Polynomial& f, const GroebnerBasis& G) {
  require_same_ring(*f.ring(), *G.ring);
  ReducerSet set;
  for (const auto& g : G.elements) set.add(g);
  return Polynomial(f.ring(), reduce(*f.ring(), f.terms(), set));
}

unsigned max_gb_deg(const PolySystem& F, const GbOptions& opts) {
  return buchberger_reduced_gb(F, opts).max_degree();
}

bool is_groebner(const PolySystem& G) {
  std::vector<Polynomial> monic;
  for (const auto& g : G) {
    if (!g.is_zero()) monic.push_back(g.monic());
  }
  if (monic.empty()) return true;
  const Ring& R = *monic.front().ring();
  ReducerSet set;
  for (const auto& g : monic) set.add(g);
  for (std::size_t i = 0; i < monic.size(); ++i) {
    for (std::size_t j = i + 1; j < monic.size(); ++j) {
      const Monomial& a = monic[i].leading_monomial();
      const Monomial& b = monic[j].leading_monomial();
      if (a.coprime(b)) continue;
      const Monomial l = a.lcm(b);
      Terms shifted;
      for (std::size_t k = 1; k < monic[i].size(); ++k) {
        shifted.push_back({monic[i].terms()[k].mono * (l / a), monic[i].terms()[k].coeff});
      }
      Terms s;
      sub_mul(R, *R.field(), shifted, 0, 1, l / b, monic[j].terms(), 1, s);
      if (!reduce(R, std::move(s), set).empty()) return false;
    }
  }
  return true;
}

MonomialIdeal initial_ideal(const GroebnerBasis& G) {
  return MonomialIdeal::minimalize(G.ring->nvars(), G.leading_monomials());
}

GroebnerBasis saturate_by_variable(const GroebnerBasis& I, std::size_t v, const GbOptions& opts) {
  const Ring& R = *I.ring;
  if (R.order() != TermOrder::DegRevLex || v + 1 != R.nvars()) {
    throw Error(ErrorKind::VariableNotLast, "saturation variable must be the last degrevlex variable");
  }
  require_homogeneous(I);
  PolySystem gens;
  for (const auto& g : I.elements) {
    const unsigned k = g.leading_monomial()[v];
    if (k == 0) {
      gens.push_back(g);
      continue;
    }
    Monomial vk(R.nvars());
    vk.set(v, k);
    std::vector<Term> terms = g.terms();
    for (auto& t : terms) t.mono = t.mono / vk;
    gens.emplace_back(I.ring, std::move(terms));
  }
  return buchberger_reduced_gb(I.ring, gens, opts);
}

GroebnerBasis saturate(const GroebnerBasis& I, std::size_t v, const GbOptions& opts) {
  const Ring& R = *I.ring;
  require_homogeneous(I);
  if (I.is_zero_ideal() || I.is_unit_ideal()) return I;
  if (v + 1 == R.nvars() && R.order() == TermOrder::DegRevLex) return saturate_by_variable(I, v, opts);
  std::vector<std::string> names;
  for (std::size_t i = 0; i < R.nvars(); ++i) {
    if (i != v) names.push_back(R.name(i));
  }
  names.push_back(R.name(v));
  RingPtr moved = Ring::make(R.field(), names);
  PolySystem gens;
  for (const auto& g : I.elements) gens.push_back(rename_into(g, moved));
  const GroebnerBasis sat = saturate_by_variable(buchberger_reduced_gb(moved, gens, opts), R.nvars() - 1, opts);
  PolySystem back;
  for (const auto& g : sat.elements) back.push_back(rename_into(g, I.ring));
  return buchberger_reduced_gb(I.ring, back, opts);
}

GroebnerBasis intersect(const GroebnerBasis& I, const GroebnerBasis& J, const GbOptions& opts) {
  require_same_ring(*I.ring, *J.ring);
  if (I.is_zero_ideal() || J.is_unit_ideal()) return I;
  if (J.is_zero_ideal() || I.is_unit_ideal()) return J;
  const Ring& R = *I.ring;
  std::vector<std::string> names{"_u"};
  for (const auto& n : R.names()) names.push_back(n);
  RingPtr ext = Ring::make(R.field(), names, 0, TermOrder::EliminateFirst);
  const Polynomial u = Polynomial::variable(ext, 0);
  const Polynomial one_minus_u = Polynomial::constant(ext, 1) - u;
  PolySystem gens;
  for (const auto& f : I.elements) gens.push_back(u * rename_into(f, ext));
  for (const auto& g : J.elements) gens.push_back(one_minus_u * rename_into(g, ext));
  const GroebnerBasis G = buchberger_reduced_gb(ext, gens, opts);
  PolySystem out;
  for (const auto& g : G.elements) {
    if (g.leading_monomial()[0] == 0) out.push_back(rename_into(g, I.ring));
  }
  return buchberger_reduced_gb(I.ring, out, opts);
}

GroebnerBasis colon(const GroebnerBasis& I, const Polynomial& g, const GbOptions& opts) {
  require_same_ring(*I.ring, *g.ring());
  if (g.is_zero()) return {I.ring, {Polynomial::constant(I.ring, 1)}};
  const GroebnerBasis principal = buchberger_reduced_gb(I.ring, {g}, opts);
  const GroebnerBasis both = intersect(I, principal, opts);
  PolySystem quotients;
  for (const auto& h : both.elements) quotients.push_back(divide_exact(h, g));
  return buchberger_reduced_gb(I.ring, quotients, opts);
}

GroebnerBasis sum(const GroebnerBasis& I, const PolySystem& extra, const GbOptions& opts) {
  PolySystem gens = I.elements;
  gens.insert(gens.end(), extra.begin(), extra.end());
  return buchberger_reduced_gb(I.ring, gens, opts);
}

GroebnerBasis saturate_irrelevant(const GroebnerBasis& I, const GbOptions& opts) {
  require_homogeneous(I);
  if (I.is_zero_ideal() || I.is_unit_ideal()) return I;
  std::optional<GroebnerBasis> acc;
  for (std::size_t v = 0; v < I.ring->nvars(); ++v) {
    GroebnerBasis s = saturate(I, v, opts);
    if (s.is_unit_ideal()) continue;
    acc = acc ? intersect(*acc, s, opts) : std::move(s);
  }
  if (!acc) return {I.ring, {Polynomial::constant(I.ring, 1)}};
  return *acc;
}

GenericCoordsReport is_generic_coordinates(const GroebnerBasis& I, const GbOptions& opts) {
  require_homogeneous(I);
  GenericCoordsReport report;
  report.field = I.ring->field()->spec_string();
  const std::size_t m = I.ring->nvars();
  report.dimension = krull_dimension(initial_ideal(I));
  report.generic = true;
  PolySystem tail;
  for (std::size_t s = 0; s < report.dimension; ++s) {
    const std::size_t i = m - 1 - s;
    const GroebnerBasis J = tail.empty() ? I : sum(I, tail, opts);
    const GroebnerBasis Jsat = saturate_irrelevant(J, opts);
    const Polynomial xi = Polynomial::variable(I.ring, i);
    const bool nzd = colon(Jsat, xi, opts) == Jsat;
    report.steps.push_back({i, nzd});
    if (!nzd) {
      report.generic = false;
      break;
    }
    tail.push_back(xi);
  }
  return report;
}

}  // namespace weilforge
