#include "weilforge/field.hpp"

#include <algorithm>
#include <limits>

#include "weilforge/error.hpp"

namespace weilforge {

namespace {

constexpr std::uint32_t kNoLog = std::numeric_limits<std::uint32_t>::max();
// Extension fields keep three tables of this many entries.
constexpr std::uint64_t kMaxExtensionSize = std::uint64_t{1} << 22;

bool is_prime_number(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

// Univariate helpers over a field, coefficients low to high.
using Uni = std::vector<Elem>;

void trim(Uni& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

Uni remainder(const Field& F, Uni f, const Uni& g) {
  trim(f);
  const std::size_t dg = g.size() - 1;
  const Elem lead_inv = F.inv(g.back());
  while (f.size() > dg) {
    const Elem c = F.mul(f.back(), lead_inv);
    const std::size_t shift = f.size() - 1 - dg;
    for (std::size_t i = 0; i <= dg; ++i) {
      f[shift + i] = F.sub(f[shift + i], F.mul(c, g[i]));
    }
    trim(f);
  }
  return f;
}

// Trial division by every monic polynomial of degree <= n/2.
bool is_irreducible(const Field& B, const Uni& f) {
  const std::size_t n = f.size() - 1;
  if (n <= 1) return true;
  const std::uint64_t q = B.size();
  for (std::size_t d = 1; d <= n / 2; ++d) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= q;
    Uni g(d + 1, 0);
    g[d] = 1;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      std::uint64_t v = idx;
      for (std::size_t i = 0; i < d; ++i) {
        g[i] = static_cast<Elem>(v % q);
        v /= q;
      }
      if (remainder(B, f, g).empty()) return false;
    }
  }
  return true;
}

// Gauss-Jordan inverse of a row-major n x n matrix; nullopt when singular.
std::optional<std::vector<Elem>> invert(const Field& B, std::vector<Elem> m, std::size_t n) {
  std::vector<Elem> inv(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) inv[i * n + i] = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && m[piv * n + col] == 0) ++piv;
    if (piv == n) return std::nullopt;
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(m[piv * n + j], m[col * n + j]);
        std::swap(inv[piv * n + j], inv[col * n + j]);
      }
    }
    const Elem s = B.inv(m[col * n + col]);
    for (std::size_t j = 0; j < n; ++j) {
      m[col * n + j] = B.mul(m[col * n + j], s);
      inv[col * n + j] = B.mul(inv[col * n + j], s);
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || m[r * n + col] == 0) continue;
      const Elem c = m[r * n + col];
      for (std::size_t j = 0; j < n; ++j) {
        m[r * n + j] = B.sub(m[r * n + j], B.mul(c, m[col * n + j]));
        inv[r * n + j] = B.sub(inv[r * n + j], B.mul(c, inv[col * n + j]));
      }
    }
  }
  return inv;
}

std::string power_term(const std::string& sym, std::size_t j) {
  if (j == 0) return "";
  if (j == 1) return sym;
  return sym + "^" + std::to_string(j);
}

}  // namespace

FieldPtr Field::prime(std::uint32_t p) {
  if (p >= (std::uint32_t{1} << 31) || !is_prime_number(p)) {
    throw Error(ErrorKind::InvalidField, "GF(" + std::to_string(p) + ") needs a prime modulus below 2^31");
  }
  auto f = std::shared_ptr<Field>(new Field());
  f->p_ = p;
  f->size_ = p;
  f->n_ = 1;
  f->basis_ = {1};
  return f;
}

FieldPtr Field::extension(FieldPtr base, std::vector<Elem> modulus,
                          std::optional<std::vector<Elem>> basis, std::string generator) {
  if (!base) throw Error(ErrorKind::InvalidField, "extension needs a base field");
  if (modulus.size() < 2 || modulus.back() != 1) {
    throw Error(ErrorKind::InvalidField, "modulus must be monic of degree >= 1");
  }
  for (Elem c : modulus) {
    if (c >= base->size()) throw Error(ErrorKind::InvalidField, "modulus coefficient outside base field");
  }
  const unsigned n = static_cast<unsigned>(modulus.size() - 1);
  std::uint64_t size = 1;
  for (unsigned i = 0; i < n; ++i) {
    size *= base->size();
    if (size > kMaxExtensionSize) {
      throw Error(ErrorKind::InvalidField, "extension fields are limited to 2^22 elements");
    }
  }
  if (!is_irreducible(*base, modulus)) {
    throw Error(ErrorKind::ReducibleModulus, "modulus factors over " + base->spec_string());
  }

  auto f = std::shared_ptr<Field>(new Field());
  f->base_ = std::move(base);
  f->p_ = f->base_->characteristic();
  f->size_ = size;
  f->n_ = n;
  f->modulus_ = std::move(modulus);
  f->generator_ = std::move(generator);
  f->build_tables();

  const Elem qb = static_cast<Elem>(f->base_->size());
  if (!basis) {
    Elem power = 1;
    for (unsigned j = 0; j < n; ++j) {
      f->basis_.push_back(power);
      power *= qb;
    }
    f->default_basis_ = true;
  } else {
    if (basis->size() != n) {
      throw Error(ErrorKind::DependentBasis, "basis must have exactly " + std::to_string(n) + " elements");
    }
    if ((*basis)[0] != 1) throw Error(ErrorKind::BasisNotUnital, "the first basis element must be 1");
    std::vector<Elem> m(n * n, 0);
    for (unsigned j = 0; j < n; ++j) {
      if ((*basis)[j] >= size) throw Error(ErrorKind::DependentBasis, "basis element outside the field");
      const auto d = f->digits((*basis)[j]);
      for (unsigned i = 0; i < n; ++i) m[i * n + j] = d[i];
    }
    auto inv = invert(*f->base_, m, n);
    if (!inv) throw Error(ErrorKind::DependentBasis, "basis is not linearly independent over the base field");
    f->basis_ = *basis;
    f->basis_inverse_ = std::move(*inv);
    f->default_basis_ = true;
    for (unsigned j = 0; j < n; ++j) {
      Elem power = 1;
      for (unsigned i = 0; i < j; ++i) power *= qb;
      if (f->basis_[j] != power) f->default_basis_ = false;
    }
  }
  return f;
}

std::vector<Elem> Field::digits(Elem x) const {
  std::vector<Elem> d(n_, 0);
  const Elem qb = static_cast<Elem>(base_size());
  for (unsigned i = 0; i < n_; ++i) {
    d[i] = x % qb;
    x /= qb;
  }
  return d;
}

Elem Field::from_digits(std::span<const Elem> d) const {
  const Elem qb = static_cast<Elem>(base_size());
  Elem x = 0;
  for (std::size_t i = d.size(); i-- > 0;) x = x * qb + d[i];
  return x;
}

Elem Field::slow_mul(Elem a, Elem b) const {
  const Field& B = *base_;
  const auto da = digits(a);
  const auto db = digits(b);
  std::vector<Elem> prod(2 * n_ - 1, 0);
  for (unsigned i = 0; i < n_; ++i) {
    if (da[i] == 0) continue;
    for (unsigned j = 0; j < n_; ++j) {
      prod[i + j] = B.add(prod[i + j], B.mul(da[i], db[j]));
    }
  }
  for (std::size_t k = prod.size(); k-- > n_;) {
    const Elem c = prod[k];
    if (c == 0) continue;
    for (unsigned i = 0; i < n_; ++i) {
      prod[k - n_ + i] = B.sub(prod[k - n_ + i], B.mul(c, modulus_[i]));
    }
    prod[k] = 0;
  }
  return from_digits(std::span<const Elem>(prod.data(), n_));
}

void Field::build_tables() {
  const std::uint64_t order = size_ - 1;
  const auto factors = prime_factors(order);
  auto slow_pow = [&](Elem a, std::uint64_t e) {
    Elem r = 1;
    while (e) {
      if (e & 1) r = slow_mul(r, a);
      a = slow_mul(a, a);
      e >>= 1;
    }
    return r;
  };
  Elem g = 0;
  for (Elem cand = 1; cand < size_; ++cand) {
    bool primitive = true;
    for (auto r : factors) {
      if (slow_pow(cand, order / r) == 1) {
        primitive = false;
        break;
      }
    }
    if (primitive) {
      g = cand;
      break;
    }
  }
  if (g == 0) throw Error(ErrorKind::ReducibleModulus, "no primitive element; modulus is not irreducible");

  exp_.assign(2 * order, 0);
  log_.assign(size_, kNoLog);
  Elem x = 1;
  for (std::uint64_t i = 0; i < order; ++i) {
    exp_[i] = x;
    exp_[i + order] = x;
    log_[x] = static_cast<std::uint32_t>(i);
    x = slow_mul(x, g);
  }

  if (p_ != 2) {
    const Field& B = *base_;
    zech_.assign(order, kNoLog);
    for (std::uint64_t i = 0; i < order; ++i) {
      auto d = digits(exp_[i]);
      d[0] = B.add(d[0], 1);
      const Elem s = from_digits(d);
      zech_[i] = s == 0 ? kNoLog : log_[s];
    }
  }
}

Elem Field::generator() const {
  if (is_prime()) return 1;
  if (n_ == 1) return base_->neg(modulus_[0]);
  return static_cast<Elem>(base_size());
}

Elem Field::from_integer(long long value) const {
  long long r = value % static_cast<long long>(p_);
  if (r < 0) r += p_;
  return static_cast<Elem>(r);
}

Elem Field::add(Elem a, Elem b) const {
  if (p_ == 2) return a ^ b;
  if (is_prime()) {
    const std::uint64_t s = std::uint64_t{a} + b;
    return static_cast<Elem>(s >= p_ ? s - p_ : s);
  }
  if (a == 0) return b;
  if (b == 0) return a;
  const std::uint64_t order = size_ - 1;
  const std::uint32_t la = log_[a];
  const std::uint32_t lb = log_[b];
  const std::uint32_t d = lb >= la ? lb - la : static_cast<std::uint32_t>(lb + order - la);
  const std::uint32_t z = zech_[d];
  if (z == kNoLog) return 0;
  return exp_[la + z];
}

Elem Field::neg(Elem a) const {
  if (a == 0 || p_ == 2) return a;
  if (is_prime()) return p_ - a;
  return exp_[log_[a] + (size_ - 1) / 2];
}

Elem Field::mul(Elem a, Elem b) const {
  if (is_prime()) return static_cast<Elem>(std::uint64_t{a} * b % p_);
  if (a == 0 || b == 0) return 0;
  return exp_[log_[a] + log_[b]];
}

Elem Field::inv(Elem a) const {
  if (a == 0) throw Error(ErrorKind::DivisionByZero, "inverse of zero in " + spec_string());
  if (is_prime()) return pow(a, p_ - 2);
  const std::uint64_t order = size_ - 1;
  return exp_[(order - log_[a]) % order];
}

Elem Field::pow(Elem a, std::uint64_t e) const {
  if (e == 0) return 1;
  if (a == 0) return 0;
  if (is_prime()) {
    std::uint64_t r = 1, b = a;
    while (e) {
      if (e & 1) r = r * b % p_;
      b = b * b % p_;
      e >>= 1;
    }
    return static_cast<Elem>(r);
  }
  const std::uint64_t order = size_ - 1;
  return exp_[(log_[a] * (e % order)) % order];
}

std::vector<Elem> Field::decompose(Elem x) const {
  if (is_prime()) return {x};
  auto d = digits(x);
  if (default_basis_) return d;
  const Field& B = *base_;
  std::vector<Elem> c(n_, 0);
  for (unsigned i = 0; i < n_; ++i) {
    Elem acc = 0;
    for (unsigned j = 0; j < n_; ++j) acc = B.add(acc, B.mul(basis_inverse_[i * n_ + j], d[j]));
    c[i] = acc;
  }
  return c;
}

Elem Field::recompose(std::span<const Elem> coords) const {
  if (is_prime()) return coords.empty() ? 0 : coords[0];
  if (default_basis_) return from_digits(coords);
  const Field& B = *base_;
  std::vector<Elem> d(n_, 0);
  for (unsigned j = 0; j < n_; ++j) {
    if (coords[j] == 0) continue;
    const auto bj = digits(basis_[j]);
    for (unsigned i = 0; i < n_; ++i) d[i] = B.add(d[i], B.mul(bj[i], coords[j]));
  }
  return from_digits(d);
}

bool Field::in_base(Elem x) const {
  if (is_prime()) return true;
  const auto c = decompose(x);
  return std::all_of(c.begin() + 1, c.end(), [](Elem v) { return v == 0; });
}

Elem Field::frobenius(Elem x, GaloisAutomorphism sigma) const {
  if (is_prime() || x == 0) return x;
  const std::uint64_t order = size_ - 1;
  const unsigned power = sigma.power % n_;
  std::uint64_t e = 1;
  for (unsigned i = 0; i < power; ++i) e = (e * (base_size() % order)) % order;
  return exp_[(log_[x] * e) % order];
}

std::vector<GaloisAutomorphism> Field::galois_group() const {
  std::vector<GaloisAutomorphism> g;
  for (unsigned i = 0; i < n_; ++i) g.push_back({i});
  return g;
}

std::string Field::render(Elem x) const {
  if (is_prime()) return std::to_string(x);
  if (n_ == 1) return base_->render(x);
  const auto d = digits(x);
  std::string out;
  for (std::size_t j = n_; j-- > 0;) {
    if (d[j] == 0) continue;
    if (!out.empty()) out += "+";
    std::string coeff = base_->render(d[j]);
    const bool compound = coeff.find('+') != std::string::npos;
    if (j == 0) {
      out += compound ? "(" + coeff + ")" : coeff;
    } else if (d[j] == 1) {
      out += power_term(generator_, j);
    } else {
      out += (compound ? "(" + coeff + ")" : coeff) + "*" + power_term(generator_, j);
    }
  }
  return out.empty() ? "0" : out;
}

std::string Field::spec_string() const {
  if (is_prime()) return "GF(" + std::to_string(p_) + ")";
  std::string mod;
  for (std::size_t j = modulus_.size(); j-- > 0;) {
    const Elem c = modulus_[j];
    if (c == 0) continue;
    if (!mod.empty()) mod += "+";
    std::string coeff = base_->render(c);
    if (coeff.find('+') != std::string::npos) coeff = "(" + coeff + ")";
    if (j == 0) {
      mod += coeff;
    } else if (c == 1) {
      mod += power_term(generator_, j);
    } else {
      mod += coeff + "*" + power_term(generator_, j);
    }
  }
  std::string out = base_->spec_string() + "[" + generator_ + "]/(" + mod + ")";
  if (!default_basis_) {
    out += " basis = [";
    for (std::size_t j = 0; j < basis_.size(); ++j) {
      if (j) out += ", ";
      out += render(basis_[j]);
    }
    out += "]";
  }
  return out;
}

bool Field::same_as(const Field& other) const {
  return this == &other || spec_string() == other.spec_string();
}

bool operator==(const Field& a, const Field& b) { return a.same_as(b); }

}  // namespace weilforge
