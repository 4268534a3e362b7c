#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "weilforge/field.hpp"

namespace weilforge {

inline constexpr std::size_t kMaxVars = 32;

/// Exponent vector with cached total degree and support mask.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t nvars);
  Monomial(std::size_t nvars, std::span<const unsigned> exponents);

  std::size_t nvars() const noexcept { return nvars_; }
  unsigned degree() const noexcept { return degree_; }
  unsigned operator[](std::size_t i) const noexcept { return exp_[i]; }
  std::uint32_t support() const noexcept { return support_; }
  bool is_one() const noexcept { return degree_ == 0; }

  void set(std::size_t i, unsigned e);

  bool divides(const Monomial& other) const noexcept {
    if (degree_ > other.degree_ || (support_ & ~other.support_) != 0) return false;
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (exp_[i] > other.exp_[i]) return false;
    }
    return true;
  }
  bool coprime(const Monomial& other) const noexcept { return (support_ & other.support_) == 0; }

  Monomial operator*(const Monomial& other) const;
  /// Requires `other` to divide *this.
  Monomial operator/(const Monomial& other) const;
  Monomial lcm(const Monomial& other) const;

  friend bool operator==(const Monomial& a, const Monomial& b) noexcept {
    return a.nvars_ == b.nvars_ && a.exp_ == b.exp_;
  }

  std::size_t hash() const noexcept;

 private:
  std::array<std::uint8_t, kMaxVars> exp_{};
  std::uint32_t support_ = 0;
  std::uint16_t degree_ = 0;
  std::uint8_t nvars_ = 0;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept { return m.hash(); }
};

/// Degree reverse lexicographic comparison: -1, 0, +1.
inline int degrevlex_cmp(const Monomial& a, const Monomial& b) noexcept {
  if (a.degree() != b.degree()) return a.degree() > b.degree() ? 1 : -1;
  for (std::size_t i = a.nvars(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
  }
  return 0;
}

enum class TermOrder {
  DegRevLex,
  /// Variable 0 is eliminated: compare its exponent first, then degrevlex on
  /// the remaining variables. Used internally for intersections.
  EliminateFirst,
};

class Ring;
using RingPtr = std::shared_ptr<const Ring>;

/// Coefficient field plus ordered variable names. Homogenization variables
/// always occupy the final positions.
class Ring {
 public:
  static RingPtr make(FieldPtr field, std::vector<std::string> names, std::size_t homogenizing = 0,
                      TermOrder order = TermOrder::DegRevLex);

  const FieldPtr& field() const noexcept { return field_; }
  std::size_t nvars() const noexcept { return names_.size(); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  std::size_t homogenizing_count() const noexcept { return homogenizing_; }
  bool is_homogenizing(std::size_t i) const noexcept { return i + homogenizing_ >= names_.size(); }
  TermOrder order() const noexcept { return order_; }
  std::optional<std::size_t> index_of(const std::string& name) const;

  int compare(const Monomial& a, const Monomial& b) const noexcept {
    if (order_ == TermOrder::DegRevLex) return degrevlex_cmp(a, b);
    return eliminate_first_cmp(a, b);
  }

  /// Ring with `name` appended as a homogenizing variable.
  RingPtr with_homogenizing(const std::string& name) const;
  /// Same variables and order over another field.
  RingPtr over(FieldPtr field) const;

  bool same_as(const Ring& other) const;

 private:
  Ring() = default;
  static int eliminate_first_cmp(const Monomial& a, const Monomial& b) noexcept;

  FieldPtr field_;
  std::vector<std::string> names_;
  std::size_t homogenizing_ = 0;
  TermOrder order_ = TermOrder::DegRevLex;
};

void require_same_ring(const Ring& a, const Ring& b);

struct Term {
  Monomial mono;
  Elem coeff;
};

/// Sparse polynomial; terms sorted strictly decreasing in the ring order and
/// free of zero coefficients.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(RingPtr ring) : ring_(std::move(ring)) {}
  /// Sorts, merges duplicates and drops zero coefficients.
  Polynomial(RingPtr ring, std::vector<Term> terms);

  static Polynomial constant(RingPtr ring, Elem c);
  static Polynomial variable(RingPtr ring, std::size_t i);
  static Polynomial monomial(RingPtr ring, Monomial m, Elem c);

  const RingPtr& ring() const noexcept { return ring_; }
  const Field& field() const noexcept { return *ring_->field(); }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }

  /// Total degree; throws ZeroPolynomial on 0.
  unsigned degree() const;
  bool is_homogeneous() const noexcept;
  const Term& leading_term() const;
  const Monomial& leading_monomial() const { return leading_term().mono; }
  Elem leading_coeff() const { return leading_term().coeff; }
  /// Coefficient of `m`, zero when absent.
  Elem coeff(const Monomial& m) const;

  Polynomial operator+(const Polynomial& other) const;
  Polynomial operator-(const Polynomial& other) const;
  Polynomial operator-() const;
  Polynomial operator*(const Polynomial& other) const;
  Polynomial scaled(Elem c) const;
  Polynomial shifted(const Monomial& m, Elem c) const;
  Polynomial monic() const;
  /// Sum of the terms of exactly degree `d`.
  Polynomial homogeneous_part(unsigned d) const;

  friend bool operator==(const Polynomial& a, const Polynomial& b);

  std::string render() const;

 private:
  void normalize();

  RingPtr ring_;
  std::vector<Term> terms_;
};

using PolySystem = std::vector<Polynomial>;

/// The terms of highest degree.
Polynomial top_part(const Polynomial& f);
/// f^h in `target`, whose last variable is the homogenizing one and whose
/// leading variables match f's ring.
Polynomial homogenize(const Polynomial& f, const RingPtr& target);
PolySystem homogenize(const PolySystem& F, const RingPtr& target);
PolySystem top_parts(const PolySystem& F);
bool is_homogeneous(const PolySystem& F);
unsigned max_degree(const PolySystem& F);

/// Variable images for substitute(); absent entries default to the variable
/// of the same name in the target ring.
using Assignment = std::vector<std::optional<Polynomial>>;

/// Applies the ring homomorphism x_i -> images[i]. Both rings share the
/// coefficient field.
Polynomial substitute(const Polynomial& f, const RingPtr& target, const Assignment& images);

/// Moves a polynomial into a ring with the same field whose variable names
/// include every variable f uses.
Polynomial rename_into(const Polynomial& f, const RingPtr& target);

/// Value of f at a point of field coordinates.
Elem evaluate(const Polynomial& f, std::span<const Elem> point);

std::string render(const PolySystem& F, const std::string& sep = "\n");

}  // namespace weilforge
