#include "weilforge/ring.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

#include "weilforge/error.hpp"

namespace weilforge {

Monomial::Monomial(std::size_t nvars) {
  if (nvars > kMaxVars) {
    throw Error(ErrorKind::TooManyVariables, "at most " + std::to_string(kMaxVars) + " variables are supported");
  }
  nvars_ = static_cast<std::uint8_t>(nvars);
}

Monomial::Monomial(std::size_t nvars, std::span<const unsigned> exponents) : Monomial(nvars) {
  for (std::size_t i = 0; i < exponents.size() && i < nvars; ++i) set(i, exponents[i]);
}

void Monomial::set(std::size_t i, unsigned e) {
  if (e > 255) throw Error(ErrorKind::ExponentOverflow, "exponent " + std::to_string(e) + " exceeds 255");
  degree_ = static_cast<std::uint16_t>(degree_ - exp_[i] + e);
  exp_[i] = static_cast<std::uint8_t>(e);
  if (e) {
    support_ |= (std::uint32_t{1} << i);
  } else {
    support_ &= ~(std::uint32_t{1} << i);
  }
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial r = *this;
  for (std::size_t i = 0; i < nvars_; ++i) {
    const unsigned e = unsigned{exp_[i]} + other.exp_[i];
    if (e > 255) throw Error(ErrorKind::ExponentOverflow, "exponent overflow in monomial product");
    r.exp_[i] = static_cast<std::uint8_t>(e);
  }
  r.degree_ = static_cast<std::uint16_t>(degree_ + other.degree_);
  r.support_ = support_ | other.support_;
  return r;
}

Monomial Monomial::operator/(const Monomial& other) const {
  Monomial r = *this;
  r.support_ = 0;
  for (std::size_t i = 0; i < nvars_; ++i) {
    r.exp_[i] = static_cast<std::uint8_t>(exp_[i] - other.exp_[i]);
    if (r.exp_[i]) r.support_ |= (std::uint32_t{1} << i);
  }
  r.degree_ = static_cast<std::uint16_t>(degree_ - other.degree_);
  return r;
}

Monomial Monomial::lcm(const Monomial& other) const {
  Monomial r = *this;
  unsigned deg = 0;
  for (std::size_t i = 0; i < nvars_; ++i) {
    r.exp_[i] = std::max(exp_[i], other.exp_[i]);
    deg += r.exp_[i];
  }
  r.degree_ = static_cast<std::uint16_t>(deg);
  r.support_ = support_ | other.support_;
  return r;
}

std::size_t Monomial::hash() const noexcept {
  std::uint64_t h = 1469598103934665603ull;
  for (std::size_t i = 0; i < nvars_; ++i) {
    h ^= exp_[i];
    h *= 1099511628211ull;
  }
  return static_cast<std::size_t>(h);
}

int Ring::eliminate_first_cmp(const Monomial& a, const Monomial& b) noexcept {
  if (a[0] != b[0]) return a[0] > b[0] ? 1 : -1;
  const unsigned da = a.degree() - a[0];
  const unsigned db = b.degree() - b[0];
  if (da != db) return da > db ? 1 : -1;
  for (std::size_t i = a.nvars(); i-- > 1;) {
    if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
  }
  return 0;
}

RingPtr Ring::make(FieldPtr field, std::vector<std::string> names, std::size_t homogenizing, TermOrder order) {
  if (!field) throw Error(ErrorKind::InvalidField, "ring needs a coefficient field");
  if (names.size() > kMaxVars) {
    throw Error(ErrorKind::TooManyVariables, std::to_string(names.size()) + " variables exceed the limit of " +
                                                 std::to_string(kMaxVars));
  }
  if (homogenizing > names.size()) throw Error(ErrorKind::RingMismatch, "more homogenizing variables than variables");
  std::set<std::string> seen;
  for (const auto& n : names) {
    if (!seen.insert(n).second) throw Error(ErrorKind::RingMismatch, "duplicate variable name " + n);
  }
  auto r = std::shared_ptr<Ring>(new Ring());
  r->field_ = std::move(field);
  r->names_ = std::move(names);
  r->homogenizing_ = homogenizing;
  r->order_ = order;
  return r;
}

std::optional<std::size_t> Ring::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return i;
  }
  return std::nullopt;
}

RingPtr Ring::with_homogenizing(const std::string& name) const {
  auto names = names_;
  names.push_back(name);
  return make(field_, std::move(names), homogenizing_ + 1, order_);
}

RingPtr Ring::over(FieldPtr field) const { return make(std::move(field), names_, homogenizing_, order_); }

bool Ring::same_as(const Ring& other) const {
  if (this == &other) return true;
  return names_ == other.names_ && homogenizing_ == other.homogenizing_ && order_ == other.order_ &&
         field_->same_as(*other.field_);
}

void require_same_ring(const Ring& a, const Ring& b) {
  if (!a.same_as(b)) throw Error(ErrorKind::RingMismatch, "operands live in different rings");
}

Polynomial::Polynomial(RingPtr ring, std::vector<Term> terms) : ring_(std::move(ring)), terms_(std::move(terms)) {
  normalize();
}

void Polynomial::normalize() {
  const Ring& R = *ring_;
  const Field& F = *R.field();
  std::sort(terms_.begin(), terms_.end(),
            [&](const Term& a, const Term& b) { return R.compare(a.mono, b.mono) > 0; });
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (auto& t : terms_) {
    if (!out.empty() && out.back().mono == t.mono) {
      out.back().coeff = F.add(out.back().coeff, t.coeff);
    } else {
      out.push_back(t);
    }
  }
  std::erase_if(out, [](const Term& t) { return t.coeff == 0; });
  terms_ = std::move(out);
}

Polynomial Polynomial::constant(RingPtr ring, Elem c) {
  const std::size_t n = ring->nvars();
  Polynomial p(std::move(ring));
  if (c != 0) p.terms_.push_back({Monomial(n), c});
  return p;
}

Polynomial Polynomial::variable(RingPtr ring, std::size_t i) {
  Monomial m(ring->nvars());
  m.set(i, 1);
  return monomial(std::move(ring), m, 1);
}

Polynomial Polynomial::monomial(RingPtr ring, Monomial m, Elem c) {
  Polynomial p(std::move(ring));
  if (c != 0) p.terms_.push_back({m, c});
  return p;
}

unsigned Polynomial::degree() const {
  if (terms_.empty()) throw Error(ErrorKind::ZeroPolynomial, "degree of the zero polynomial");
  unsigned d = 0;
  for (const auto& t : terms_) d = std::max(d, t.mono.degree());
  return d;
}

bool Polynomial::is_homogeneous() const noexcept {
  for (const auto& t : terms_) {
    if (t.mono.degree() != terms_.front().mono.degree()) return false;
  }
  return true;
}

const Term& Polynomial::leading_term() const {
  if (terms_.empty()) throw Error(ErrorKind::ZeroPolynomial, "leading term of the zero polynomial");
  return terms_.front();
}

Elem Polynomial::coeff(const Monomial& m) const {
  for (const auto& t : terms_) {
    if (t.mono == m) return t.coeff;
  }
  return 0;
}

Polynomial Polynomial::operator+(const Polynomial& other) const {
  require_same_ring(*ring_, *other.ring_);
  const Ring& R = *ring_;
  const Field& F = *R.field();
  Polynomial r(ring_);
  r.terms_.reserve(terms_.size() + other.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() || j < other.terms_.size()) {
    int c;
    if (i == terms_.size()) {
      c = -1;
    } else if (j == other.terms_.size()) {
      c = 1;
    } else {
      c = R.compare(terms_[i].mono, other.terms_[j].mono);
    }
    if (c > 0) {
      r.terms_.push_back(terms_[i++]);
    } else if (c < 0) {
      r.terms_.push_back(other.terms_[j++]);
    } else {
      const Elem s = F.add(terms_[i].coeff, other.terms_[j].coeff);
      if (s) r.terms_.push_back({terms_[i].mono, s});
      ++i;
      ++j;
    }
  }
  return r;
}

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (auto& t : r.terms_) t.coeff = field().neg(t.coeff);
  return r;
}

Polynomial Polynomial::operator-(const Polynomial& other) const { return *this + (-other); }

Polynomial Polynomial::operator*(const Polynomial& other) const {
  require_same_ring(*ring_, *other.ring_);
  const Field& F = field();
  std::unordered_map<Monomial, Elem, MonomialHash> acc;
  acc.reserve(terms_.size() * other.terms_.size());
  for (const auto& a : terms_) {
    for (const auto& b : other.terms_) {
      auto [it, inserted] = acc.try_emplace(a.mono * b.mono, 0);
      it->second = F.add(it->second, F.mul(a.coeff, b.coeff));
    }
  }
  std::vector<Term> terms;
  terms.reserve(acc.size());
  for (auto& [m, c] : acc) {
    if (c) terms.push_back({m, c});
  }
  return Polynomial(ring_, std::move(terms));
}

Polynomial Polynomial::scaled(Elem c) const {
  if (c == 0) return Polynomial(ring_);
  Polynomial r = *this;
  for (auto& t : r.terms_) t.coeff = field().mul(t.coeff, c);
  return r;
}

Polynomial Polynomial::shifted(const Monomial& m, Elem c) const {
  if (c == 0) return Polynomial(ring_);
  // Multiplying by a monomial preserves the order of a monomial order.
  Polynomial r = *this;
  for (auto& t : r.terms_) {
    t.mono = t.mono * m;
    t.coeff = field().mul(t.coeff, c);
  }
  return r;
}

Polynomial Polynomial::monic() const {
  if (terms_.empty()) return *this;
  return scaled(field().inv(leading_coeff()));
}

Polynomial Polynomial::homogeneous_part(unsigned d) const {
  Polynomial r(ring_);
  for (const auto& t : terms_) {
    if (t.mono.degree() == d) r.terms_.push_back(t);
  }
  return r;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  if (!a.ring_ || !b.ring_) return a.terms_.empty() && b.terms_.empty();
  if (!a.ring_->same_as(*b.ring_)) return false;
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    if (!(a.terms_[i].mono == b.terms_[i].mono) || a.terms_[i].coeff != b.terms_[i].coeff) return false;
  }
  return true;
}

std::string Polynomial::render() const {
  if (terms_.empty()) return "0";
  const Ring& R = *ring_;
  std::string out;
  for (const auto& t : terms_) {
    if (!out.empty()) out += "+";
    std::string coeff = R.field()->render(t.coeff);
    if (coeff.find('+') != std::string::npos) coeff = "(" + coeff + ")";
    std::string mono;
    for (std::size_t i = 0; i < R.nvars(); ++i) {
      const unsigned e = t.mono[i];
      if (e == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += R.name(i);
      if (e > 1) mono += "^" + std::to_string(e);
    }
    if (mono.empty()) {
      out += coeff;
    } else if (t.coeff == 1) {
      out += mono;
    } else {
      out += coeff + "*" + mono;
    }
  }
  return out;
}

Polynomial top_part(const Polynomial& f) { return f.homogeneous_part(f.degree()); }

Polynomial homogenize(const Polynomial& f, const RingPtr& target) {
  const Ring& src = *f.ring();
  if (target->nvars() != src.nvars() + 1 || !target->field()->same_as(*src.field())) {
    throw Error(ErrorKind::RingMismatch, "homogenization target must append exactly one variable");
  }
  if (f.is_zero()) return Polynomial(target);
  const unsigned d = f.degree();
  const std::size_t t = src.nvars();
  std::vector<Term> terms;
  terms.reserve(f.size());
  for (const auto& term : f.terms()) {
    Monomial m(target->nvars());
    for (std::size_t i = 0; i < src.nvars(); ++i) m.set(i, term.mono[i]);
    m.set(t, d - term.mono.degree());
    terms.push_back({m, term.coeff});
  }
  return Polynomial(target, std::move(terms));
}

PolySystem homogenize(const PolySystem& F, const RingPtr& target) {
  PolySystem out;
  out.reserve(F.size());
  for (const auto& f : F) out.push_back(homogenize(f, target));
  return out;
}

PolySystem top_parts(const PolySystem& F) {
  PolySystem out;
  out.reserve(F.size());
  for (const auto& f : F) out.push_back(f.is_zero() ? f : top_part(f));
  return out;
}

bool is_homogeneous(const PolySystem& F) {
  return std::all_of(F.begin(), F.end(), [](const Polynomial& f) { return f.is_homogeneous(); });
}

unsigned max_degree(const PolySystem& F) {
  unsigned d = 0;
  for (const auto& f : F) {
    if (!f.is_zero()) d = std::max(d, f.degree());
  }
  return d;
}

Polynomial substitute(const Polynomial& f, const RingPtr& target, const Assignment& images) {
  const Ring& src = *f.ring();
  if (!src.field()->same_as(*target->field())) {
    throw Error(ErrorKind::RingMismatch, "substitution must preserve the coefficient field");
  }
  std::vector<std::vector<Polynomial>> powers(src.nvars());
  auto image = [&](std::size_t i) -> const Polynomial& {
    auto& pw = powers[i];
    if (pw.empty()) {
      pw.push_back(Polynomial::constant(target, 1));
      if (i < images.size() && images[i]) {
        require_same_ring(*images[i]->ring(), *target);
        pw.push_back(*images[i]);
      } else if (auto j = target->index_of(src.name(i))) {
        pw.push_back(Polynomial::variable(target, *j));
      } else {
        throw Error(ErrorKind::UnboundVariable, "no image for variable " + src.name(i));
      }
    }
    return pw[1];
  };
  auto power = [&](std::size_t i, unsigned e) -> const Polynomial& {
    image(i);
    auto& pw = powers[i];
    while (pw.size() <= e) pw.push_back(pw.back() * pw[1]);
    return pw[e];
  };

  Polynomial result(target);
  for (const auto& t : f.terms()) {
    Polynomial term = Polynomial::constant(target, t.coeff);
    for (std::size_t i = 0; i < src.nvars() && !term.is_zero(); ++i) {
      if (t.mono[i]) term = term * power(i, t.mono[i]);
    }
    result = result + term;
  }
  return result;
}

Polynomial rename_into(const Polynomial& f, const RingPtr& target) {
  const Ring& src = *f.ring();
  if (!src.field()->same_as(*target->field())) {
    throw Error(ErrorKind::RingMismatch, "renaming must preserve the coefficient field");
  }
  std::vector<std::size_t> map(src.nvars(), kMaxVars);
  for (std::size_t i = 0; i < src.nvars(); ++i) {
    if (auto j = target->index_of(src.name(i))) map[i] = *j;
  }
  std::vector<Term> terms;
  terms.reserve(f.size());
  for (const auto& t : f.terms()) {
    Monomial m(target->nvars());
    for (std::size_t i = 0; i < src.nvars(); ++i) {
      if (!t.mono[i]) continue;
      if (map[i] == kMaxVars) throw Error(ErrorKind::UnboundVariable, "target ring lacks " + src.name(i));
      m.set(map[i], t.mono[i]);
    }
    terms.push_back({m, t.coeff});
  }
  return Polynomial(target, std::move(terms));
}

Elem evaluate(const Polynomial& f, std::span<const Elem> point) {
  const Field& F = f.field();
  Elem acc = 0;
  for (const auto& t : f.terms()) {
    Elem v = t.coeff;
    for (std::size_t i = 0; i < t.mono.nvars() && v; ++i) {
      if (t.mono[i]) v = F.mul(v, F.pow(point[i], t.mono[i]));
    }
    acc = F.add(acc, v);
  }
  return acc;
}

std::string render(const PolySystem& F, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < F.size(); ++i) {
    if (i) out += sep;
    out += F[i].render();
  }
  return out;
}

}  // namespace weilforge
