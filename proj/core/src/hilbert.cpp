#include "weilforge/hilbert.hpp"

#include <algorithm>
#include <bit>

#include "weilforge/macaulay.hpp"

namespace weilforge {

namespace {

void trim(ZPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

ZPoly zpoly_add(const ZPoly& a, const ZPoly& b, unsigned shift_b = 0) {
  ZPoly out(std::max(a.size(), b.size() + shift_b), 0);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i + shift_b] += b[i];
  trim(out);
  return out;
}

std::int64_t binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < k) return 0;
  k = std::min(k, n - k);
  std::int64_t r = 1;
  for (std::int64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Minimal generators; only the degree order matters for the divisibility sweep.
std::vector<Monomial> minimal(std::vector<Monomial> gens) {
  std::stable_sort(gens.begin(), gens.end(),
                   [](const Monomial& a, const Monomial& b) { return a.degree() < b.degree(); });
  std::vector<Monomial> out;
  out.reserve(gens.size());
  for (const auto& g : gens) {
    if (std::none_of(out.begin(), out.end(), [&](const Monomial& h) { return h.divides(g); })) out.push_back(g);
  }
  return out;
}

ZPoly one_minus_z_pow(unsigned d) {
  ZPoly f(d + 1, 0);
  f[0] = 1;
  f[d] -= 1;
  return f;
}

bool is_pure(const Monomial& g) { return std::popcount(g.support()) <= 1; }

ZPoly numerator_of(const std::vector<Monomial>& gens, std::size_t nvars);

// Generators split into blocks with pairwise disjoint variable sets; the
// numerator of a sum of such ideals is the product of the numerators.
bool split_components(const std::vector<Monomial>& gens, std::size_t nvars, ZPoly& out) {
  std::vector<std::uint32_t> masks;
  for (const auto& g : gens) {
    std::uint32_t m = g.support();
    for (auto it = masks.begin(); it != masks.end();) {
      if (*it & m) {
        m |= *it;
        it = masks.erase(it);
      } else {
        ++it;
      }
    }
    masks.push_back(m);
  }
  if (masks.size() < 2) return false;
  out = {1};
  for (const auto mask : masks) {
    std::vector<Monomial> part;
    for (const auto& g : gens) {
      if (g.support() & mask) part.push_back(g);
    }
    out = zpoly_mul(out, numerator_of(part, nvars));
  }
  return true;
}

ZPoly numerator_of(const std::vector<Monomial>& gens, std::size_t nvars) {
  if (gens.empty()) return {1};
  std::size_t mixed = 0;
  const Monomial* the_mixed = nullptr;
  ZPoly pure{1};
  for (const auto& g : gens) {
    if (is_pure(g)) {
      pure = zpoly_mul(pure, one_minus_z_pow(g.degree()));
    } else {
      ++mixed;
      the_mixed = &g;
    }
  }
  if (mixed == 0) return pure;
  if (mixed == 1) {
    // N(P + (m)) = N(P) - z^deg(m) N(P : m), and P : m is again pure powers.
    ZPoly colon{1};
    for (const auto& g : gens) {
      if (&g == the_mixed) continue;
      const std::size_t v = static_cast<std::size_t>(std::countr_zero(g.support()));
      const unsigned e = g[v] > (*the_mixed)[v] ? g[v] - (*the_mixed)[v] : 0;
      colon = zpoly_mul(colon, one_minus_z_pow(e));
    }
    ZPoly shifted(the_mixed->degree(), 0);
    for (const auto c : colon) shifted.push_back(-c);
    return zpoly_add(pure, shifted);
  }
  ZPoly split;
  if (split_components(gens, nvars, split)) return split;

  // Pivot on x^e with x the variable occurring in most mixed generators and
  // e the median of its positive exponents.
  std::vector<unsigned> count(nvars, 0);
  for (const auto& g : gens) {
    if (is_pure(g)) continue;
    for (std::size_t i = 0; i < nvars; ++i) count[i] += g[i] > 0;
  }
  const std::size_t x = static_cast<std::size_t>(std::max_element(count.begin(), count.end()) - count.begin());
  std::vector<unsigned> exps;
  for (const auto& g : gens) {
    if (g[x] > 0 && !is_pure(g)) exps.push_back(g[x]);
  }
  std::nth_element(exps.begin(), exps.begin() + static_cast<std::ptrdiff_t>(exps.size() / 2), exps.end());
  const unsigned e = exps[exps.size() / 2];
  Monomial pivot(nvars);
  pivot.set(x, e);

  // N(J) = N(J + (x^e)) + z^e N(J : x^e).
  std::vector<Monomial> with;
  with.reserve(gens.size() + 1);
  with.push_back(pivot);
  std::vector<Monomial> quotient;
  quotient.reserve(gens.size());
  for (const auto& g : gens) {
    if (!pivot.divides(g)) with.push_back(g);
    Monomial h = g;
    h.set(x, g[x] > e ? g[x] - e : 0);
    quotient.push_back(h);
  }
  const ZPoly a = numerator_of(minimal(std::move(with)), nvars);
  const ZPoly b = numerator_of(minimal(std::move(quotient)), nvars);
  return zpoly_add(a, b, e);
}

}  // namespace

ZPoly zpoly_mul(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZPoly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  trim(out);
  return out;
}

std::string render_zpoly(const ZPoly& p, const std::string& var) {
  if (p.empty()) return "0";
  std::string out;
  for (std::size_t k = 0; k < p.size(); ++k) {
    const std::int64_t c = p[k];
    if (!c) continue;
    const std::int64_t mag = c < 0 ? -c : c;
    if (c < 0) {
      out += "-";
    } else if (!out.empty()) {
      out += "+";
    }
    if (k == 0) {
      out += std::to_string(mag);
      continue;
    }
    if (mag != 1) out += std::to_string(mag) + "*";
    out += var;
    if (k > 1) out += "^" + std::to_string(k);
  }
  return out;
}

HilbertSeries HilbertSeries::from_numerator(ZPoly numerator, unsigned nvars) {
  trim(numerator);
  HilbertSeries hs;
  hs.numerator = numerator;
  hs.nvars = nvars;
  if (numerator.empty()) return hs;
  ZPoly r = std::move(numerator);
  unsigned dim = nvars;
  while (dim > 0) {
    std::int64_t at_one = 0;
    for (const auto c : r) at_one += c;
    if (at_one != 0) break;
    // r = (1-z) * q with q_k = r_0 + ... + r_k.
    ZPoly q(r.size() - 1, 0);
    std::int64_t run = 0;
    for (std::size_t k = 0; k + 1 < r.size(); ++k) {
      run += r[k];
      q[k] = run;
    }
    trim(q);
    r = std::move(q);
    --dim;
  }
  hs.reduced = std::move(r);
  hs.dimension = dim;
  return hs;
}

std::int64_t HilbertSeries::coefficient(unsigned d) const {
  if (dimension == 0) return d < reduced.size() ? reduced[d] : 0;
  std::int64_t v = 0;
  for (std::size_t k = 0; k < reduced.size() && k <= d; ++k) {
    v += reduced[k] * binomial(static_cast<std::int64_t>(d - k + dimension - 1), dimension - 1);
  }
  return v;
}

std::int64_t HilbertSeries::multiplicity() const {
  std::int64_t v = 0;
  for (const auto c : reduced) v += c;
  return v;
}

std::string HilbertSeries::render() const {
  std::string out = "(" + render_zpoly(reduced) + ")";
  if (dimension > 0) out += "/(1-z)^" + std::to_string(dimension);
  return out;
}

HilbertSeries hs_product(const HilbertSeries& a, const HilbertSeries& b) {
  return HilbertSeries::from_numerator(zpoly_mul(a.numerator, b.numerator), a.nvars + b.nvars);
}

HilbertSeries hs_power(const HilbertSeries& a, unsigned n) {
  HilbertSeries acc = HilbertSeries::from_numerator({1}, 0);
  for (unsigned i = 0; i < n; ++i) acc = hs_product(acc, a);
  return acc;
}

HilbertSeries hs_times_one_minus_z(const HilbertSeries& a, unsigned r) {
  ZPoly num = a.numerator;
  for (unsigned i = 0; i < r; ++i) num = zpoly_mul(num, {1, -1});
  return HilbertSeries::from_numerator(std::move(num), a.nvars);
}

HilbertSeries hilbert_series(const MonomialIdeal& J) {
  return HilbertSeries::from_numerator(numerator_of(J.generators, J.nvars), static_cast<unsigned>(J.nvars));
}

std::size_t krull_dimension(const MonomialIdeal& J) { return hilbert_series(J).dimension; }

std::uint64_t count_standard_monomials(const MonomialIdeal& J, unsigned d) {
  std::uint64_t n = 0;
  for (const auto& m : monomials_of_degree(J.nvars, d)) n += !J.contains(m);
  return n;
}

}  // namespace weilforge
