#include "weilforge/weil.hpp"

#include <algorithm>

#include "weilforge/error.hpp"

namespace weilforge {

std::string weil_variable_name(const Ring& source, std::size_t i, unsigned j) {
  const std::string& name = source.name(i);
  if (source.is_homogenizing(i)) return name + std::to_string(j);
  return name + "_" + std::to_string(j);
}

WeilContext make_weil_context(const RingPtr& source) {
  const FieldPtr& K = source->field();
  if (K->is_prime()) throw Error(ErrorKind::InvalidField, "Weil restriction needs an extension field");
  WeilContext ctx;
  ctx.extension = K;
  ctx.base = K->base();
  ctx.source = source;
  const unsigned n = K->degree();

  std::vector<std::string> names;
  for (std::size_t i = 0; i < source->nvars(); ++i) {
    for (unsigned j = 1; j <= n; ++j) names.push_back(weil_variable_name(*source, i, j));
  }
  ctx.target = Ring::make(ctx.base, names, source->homogenizing_count() * n);
  ctx.lifted = Ring::make(K, names, source->homogenizing_count() * n);

  for (std::size_t i = 0; i < source->nvars(); ++i) {
    std::vector<Term> terms;
    for (unsigned j = 0; j < n; ++j) {
      Monomial m(names.size());
      m.set(ctx.target_index(i, j), 1);
      terms.push_back({m, K->basis()[j]});
    }
    ctx.psi.emplace_back(ctx.lifted, std::move(terms));
  }
  return ctx;
}

namespace {

std::vector<Polynomial> split_components(const WeilContext& ctx, const Polynomial& lifted) {
  const unsigned n = ctx.degree();
  std::vector<std::vector<Term>> comps(n);
  for (const auto& t : lifted.terms()) {
    const auto coords = ctx.extension->decompose(t.coeff);
    for (unsigned j = 0; j < n; ++j) {
      if (coords[j]) comps[j].push_back({t.mono, coords[j]});
    }
  }
  std::vector<Polynomial> out;
  out.reserve(n);
  // Terms arrive in order, and lifted shares the target's variables and order.
  for (auto& c : comps) out.emplace_back(ctx.target, std::move(c));
  return out;
}

Polynomial psi_image(const WeilContext& ctx, const Polynomial& f) {
  require_same_ring(*f.ring(), *ctx.source);
  Assignment images(ctx.psi.begin(), ctx.psi.end());
  return substitute(f, ctx.lifted, images);
}

}  // namespace

std::vector<Polynomial> weil_restrict_poly(const WeilContext& ctx, const Polynomial& f) {
  return split_components(ctx, psi_image(ctx, f));
}

PolySystem weil_restrict_system(const WeilContext& ctx, const PolySystem& F) {
  PolySystem out;
  out.reserve(F.size() * ctx.degree());
  for (const auto& f : F) {
    auto comps = weil_restrict_poly(ctx, f);
    for (auto& c : comps) out.push_back(std::move(c));
  }
  return out;
}

PolySystem field_equations(const RingPtr& ring, std::uint64_t q) {
  const Field& F = *ring->field();
  PolySystem out;
  for (std::size_t i = 0; i < ring->nvars(); ++i) {
    if (ring->is_homogenizing(i)) continue;
    Monomial xq(ring->nvars());
    xq.set(i, static_cast<unsigned>(q));
    Monomial x(ring->nvars());
    x.set(i, 1);
    out.emplace_back(ring, std::vector<Term>{{xq, 1}, {x, F.neg(1)}});
  }
  return out;
}

Polynomial galois_conjugate_poly(const Polynomial& f, GaloisAutomorphism sigma) {
  std::vector<Term> terms = f.terms();
  for (auto& t : terms) t.coeff = f.field().frobenius(t.coeff, sigma);
  return Polynomial(f.ring(), std::move(terms));
}

Polynomial lift_to_extension(const WeilContext& ctx, const Polynomial& g) {
  require_same_ring(*g.ring(), *ctx.target);
  return Polynomial(ctx.lifted, g.terms());
}

bool PsiIsoReport::holds() const {
  return std::all_of(entries.begin(), entries.end(), [](const Entry& e) { return e.equal; });
}

PsiIsoReport psi_iso_check(const WeilContext& ctx, const Polynomial& f) {
  const Field& K = *ctx.extension;
  const unsigned n = ctx.degree();
  const auto comps = weil_restrict_poly(ctx, f);
  PsiIsoReport report;
  for (const auto sigma : K.galois_group()) {
    Assignment images;
    for (std::size_t i = 0; i < ctx.source->nvars(); ++i) {
      std::vector<Term> terms;
      for (unsigned j = 0; j < n; ++j) {
        Monomial m(ctx.lifted->nvars());
        m.set(ctx.target_index(i, j), 1);
        terms.push_back({m, K.frobenius(K.basis()[j], sigma)});
      }
      images.emplace_back(Polynomial(ctx.lifted, std::move(terms)));
    }
    const Polynomial lhs = substitute(galois_conjugate_poly(f, sigma), ctx.lifted, images);
    Polynomial rhs(ctx.lifted);
    for (unsigned j = 0; j < n; ++j) {
      rhs = rhs + lift_to_extension(ctx, comps[j]).scaled(K.frobenius(K.basis()[j], sigma));
    }
    report.entries.push_back({sigma, lhs == rhs});
  }
  return report;
}

bool conjugate_basis_matrix_invertible(const Field& K) {
  const unsigned n = K.degree();
  std::vector<Elem> m(n * n);
  for (unsigned i = 0; i < n; ++i) {
    for (unsigned j = 0; j < n; ++j) m[i * n + j] = K.frobenius(K.basis()[j], {i});
  }
  for (unsigned col = 0, row = 0; col < n; ++col, ++row) {
    unsigned piv = row;
    while (piv < n && m[piv * n + col] == 0) ++piv;
    if (piv == n) return false;
    for (unsigned j = 0; j < n; ++j) std::swap(m[piv * n + j], m[row * n + j]);
    const Elem s = K.inv(m[row * n + col]);
    for (unsigned r = row + 1; r < n; ++r) {
      const Elem c = K.mul(m[r * n + col], s);
      for (unsigned j = 0; j < n; ++j) m[r * n + j] = K.sub(m[r * n + j], K.mul(c, m[row * n + j]));
    }
  }
  return true;
}

RingPtr weil_homogenized_ring(const WeilContext& ctx) { return ctx.target->with_homogenizing("t"); }

namespace {

Polynomial homogenize_to(const Polynomial& g, const RingPtr& target, unsigned d) {
  const std::size_t t = target->nvars() - 1;
  std::vector<Term> terms;
  terms.reserve(g.size());
  for (const auto& term : g.terms()) {
    Monomial m(target->nvars());
    for (std::size_t i = 0; i < g.ring()->nvars(); ++i) m.set(i, term.mono[i]);
    m.set(t, d - term.mono.degree());
    terms.push_back({m, term.coeff});
  }
  return Polynomial(target, std::move(terms));
}

}  // namespace

PolySystem weil_then_homogenize(const WeilContext& ctx, const PolySystem& F, const RingPtr& target_t) {
  PolySystem out;
  for (const auto& f : F) {
    const unsigned d = f.is_zero() ? 0 : f.degree();
    for (auto& c : weil_restrict_poly(ctx, f)) out.push_back(homogenize_to(c, target_t, d));
  }
  return out;
}

PolySystem weil_then_top(const WeilContext& ctx, const PolySystem& F) {
  PolySystem out;
  for (const auto& f : F) {
    const unsigned d = f.is_zero() ? 0 : f.degree();
    for (auto& c : weil_restrict_poly(ctx, f)) out.push_back(c.homogeneous_part(d));
  }
  return out;
}

CompatReport weil_homog_compat_check(const WeilContext& ctx, const PolySystem& F) {
  CompatReport report;
  if (is_homogeneous(F)) {
    report.vacuous = true;
    return report;
  }
  const RingPtr source_t = ctx.source->with_homogenizing("t");
  const WeilContext ctx_h = make_weil_context(source_t);
  const RingPtr target_t = weil_homogenized_ring(ctx);
  const unsigned n = ctx.degree();

  // t_1 -> t, t_j -> 0 for j >= 2; every x_{i,j} keeps its name.
  Assignment special(ctx_h.target->nvars());
  const std::size_t t_first = ctx_h.target->nvars() - n;
  special[t_first] = Polynomial::variable(target_t, target_t->nvars() - 1);
  for (unsigned j = 1; j < n; ++j) special[t_first + j] = Polynomial(target_t);

  const PolySystem rhs = weil_then_homogenize(ctx, F, target_t);
  std::size_t k = 0;
  for (const auto& f : F) {
    const auto g = weil_restrict_poly(ctx_h, homogenize(f, source_t));
    const auto plain = weil_restrict_poly(ctx, f);
    for (unsigned l = 0; l < n; ++l, ++k) {
      Polynomial lhs = substitute(g[l], target_t, special);
      if (!f.is_zero() && (plain[l].is_zero() || plain[l].degree() < f.degree())) ++report.degree_drops;
      report.holds = report.holds && lhs == rhs[k];
      report.pairs.emplace_back(std::move(lhs), rhs[k]);
    }
  }
  return report;
}

CompatReport weil_top_compat_check(const WeilContext& ctx, const PolySystem& F) {
  CompatReport report;
  const PolySystem lhs = weil_restrict_system(ctx, top_parts(F));
  const PolySystem rhs = weil_then_top(ctx, F);
  std::size_t k = 0;
  for (const auto& f : F) {
    const auto plain = weil_restrict_poly(ctx, f);
    for (unsigned l = 0; l < ctx.degree(); ++l, ++k) {
      if (!f.is_zero() && (plain[l].is_zero() || plain[l].degree() < f.degree())) ++report.degree_drops;
      report.holds = report.holds && lhs[k] == rhs[k];
      report.pairs.emplace_back(lhs[k], rhs[k]);
    }
  }
  report.vacuous = is_homogeneous(F);
  return report;
}

}  // namespace weilforge
