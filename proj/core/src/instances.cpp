#include "weilforge/instances.hpp"

#include <cmath>
#include <sstream>

#include "weilforge/error.hpp"
#include "weilforge/macaulay.hpp"
#include "weilforge/random.hpp"
#include "weilforge/weil.hpp"

namespace weilforge {

namespace {

bool is_prime(std::uint32_t p) {
  if (p < 2) return false;
  for (std::uint32_t d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

}  // namespace

std::string InstanceSpec::descriptor() const {
  std::ostringstream os;
  os << 'q' << q << 'n' << n << 'm' << m << 'r' << r << 'd' << min_degree << '-' << max_degree;
  if (homogeneous) os << "-h";
  if (field_equations) os << "-fe";
  if (density != 0.5) os << "-p" << density;
  os << "-s" << seed;
  return os.str();
}

FieldPtr default_extension(std::uint32_t q, unsigned n) {
  if (!is_prime(q)) throw Error(ErrorKind::InfeasibleSpec, "q must be prime, got " + std::to_string(q));
  FieldPtr base = Field::prime(q);
  if (n == 1) return base;
  std::uint64_t count = 1;
  for (unsigned i = 0; i < n; ++i) count *= q;
  for (std::uint64_t code = 0; code < count; ++code) {
    std::vector<Elem> modulus(n + 1, 0);
    std::uint64_t c = code;
    for (unsigned j = 0; j < n; ++j) {
      modulus[j] = static_cast<Elem>(c % q);
      c /= q;
    }
    modulus[n] = 1;
    if (modulus[0] == 0) continue;
    try {
      return Field::extension(base, modulus);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::ReducibleModulus) throw;
    }
  }
  throw Error(ErrorKind::InfeasibleSpec, "no irreducible polynomial found");
}

RingPtr instance_ring(const InstanceSpec& spec) {
  if (spec.n == 0 || spec.m == 0) throw Error(ErrorKind::InfeasibleSpec, "n and m must be positive");
  if (static_cast<std::size_t>(spec.n) * spec.m > kMaxVars) {
    throw Error(ErrorKind::InfeasibleSpec, "n*m exceeds the variable limit");
  }
  std::vector<std::string> names;
  for (unsigned i = 1; i <= spec.m; ++i) names.push_back("x" + std::to_string(i));
  return Ring::make(default_extension(spec.q, spec.n), names);
}

PolySystem random_system_gen(const InstanceSpec& spec) {
  if (spec.r == 0) throw Error(ErrorKind::InfeasibleSpec, "generator count must be positive");
  if (spec.max_degree == 0 || spec.min_degree == 0 || spec.min_degree > spec.max_degree) {
    throw Error(ErrorKind::InfeasibleSpec, "degree bounds must satisfy 1 <= min <= max");
  }
  if (!(spec.density >= 0.0 && spec.density <= 1.0)) throw Error(ErrorKind::InfeasibleSpec, "density outside [0, 1]");
  const RingPtr ring = instance_ring(spec);
  const Field& K = *ring->field();
  const std::uint64_t Q = K.size();
  const auto threshold = static_cast<std::uint64_t>(std::ldexp(spec.density, 32));

  SplitMix64 rng(spec.seed);
  PolySystem out;
  for (unsigned k = 0; k < spec.r; ++k) {
    const unsigned d = spec.min_degree + static_cast<unsigned>(rng.below(spec.max_degree - spec.min_degree + 1));
    const std::vector<Monomial> top = monomials_of_degree(spec.m, d);
    std::vector<Monomial> eligible;
    if (spec.homogeneous) {
      eligible = top;
    } else {
      for (unsigned e = d + 1; e-- > 0;) {
        auto block = monomials_of_degree(spec.m, e);
        eligible.insert(eligible.end(), block.begin(), block.end());
      }
    }
    std::vector<Term> terms;
    for (const auto& mono : eligible) {
      const bool include = (rng.next() >> 32) < threshold;
      if (!include) continue;
      terms.push_back({mono, static_cast<Elem>(rng.below(Q))});
    }
    // Force one top-degree monomial so the generator has degree exactly d.
    const Monomial forced = top[rng.below(top.size())];
    const Elem lead = static_cast<Elem>(1 + rng.below(Q - 1));
    bool replaced = false;
    for (auto& t : terms) {
      if (t.mono == forced) {
        t.coeff = lead;
        replaced = true;
      }
    }
    if (!replaced) terms.push_back({forced, lead});
    out.emplace_back(ring, std::move(terms));
  }
  if (spec.field_equations) {
    for (auto& f : field_equations(ring, Q)) out.push_back(std::move(f));
  }
  return out;
}

}  // namespace weilforge
