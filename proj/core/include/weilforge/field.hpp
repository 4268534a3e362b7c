#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace weilforge {

/// Field elements are dense integer codes. For GF(p) the code is the
/// canonical representative in [0, p). For an extension K = B[a]/(f) of
/// degree n over B, the code of sum_j c_j a^j is sum_j code(c_j) * |B|^j, so
/// elements of B embed into K with unchanged codes.
using Elem = std::uint32_t;

class Field;
using FieldPtr = std::shared_ptr<const Field>;

/// sigma_i : x -> x^(q^i) where q is the size of the base field.
struct GaloisAutomorphism {
  unsigned power = 0;

  friend bool operator==(GaloisAutomorphism, GaloisAutomorphism) = default;
};

/// A finite field, either GF(p) or a single extension step over another
/// finite field. Immutable after construction and safe to share.
class Field {
 public:
  static FieldPtr prime(std::uint32_t p);

  /// `modulus` holds the coefficients (as base codes) from degree 0 up to the
  /// leading 1. `basis` lists K-elements by code; alpha_1 must be 1.
  static FieldPtr extension(FieldPtr base, std::vector<Elem> modulus,
                            std::optional<std::vector<Elem>> basis = std::nullopt,
                            std::string generator = "a");

  bool is_prime() const noexcept { return base_ == nullptr; }
  std::uint32_t characteristic() const noexcept { return p_; }
  std::uint64_t size() const noexcept { return size_; }
  /// Degree over the immediate base field (1 for prime fields).
  unsigned degree() const noexcept { return n_; }
  const FieldPtr& base() const noexcept { return base_; }
  /// Cardinality of the field Galois automorphisms are taken relative to.
  std::uint64_t base_size() const noexcept { return base_ ? base_->size() : size_; }
  const std::vector<Elem>& modulus() const noexcept { return modulus_; }
  const std::vector<Elem>& basis() const noexcept { return basis_; }
  const std::string& generator_symbol() const noexcept { return generator_; }

  Elem zero() const noexcept { return 0; }
  Elem one() const noexcept { return 1; }
  /// The class of the modulus variable `a`.
  Elem generator() const;
  Elem from_integer(long long value) const;

  Elem add(Elem a, Elem b) const;
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem neg(Elem a) const;
  Elem mul(Elem a, Elem b) const;
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t e) const;

  /// Coordinates of `x` over the base field in the fixed basis.
  std::vector<Elem> decompose(Elem x) const;
  Elem recompose(std::span<const Elem> coords) const;
  /// True when `x` lies in the base field.
  bool in_base(Elem x) const;

  Elem frobenius(Elem x, GaloisAutomorphism sigma) const;
  std::vector<GaloisAutomorphism> galois_group() const;

  /// Polynomial expression in the generator, e.g. "a^2+a+1".
  std::string render(Elem x) const;
  /// "GF(p)" or "GF(p)[a]/(modulus)" with a basis clause when non-default.
  std::string spec_string() const;

  bool same_as(const Field& other) const;

 private:
  Field() = default;

  void build_tables();
  Elem slow_mul(Elem a, Elem b) const;
  std::vector<Elem> digits(Elem x) const;
  Elem from_digits(std::span<const Elem> d) const;

  FieldPtr base_;
  std::uint32_t p_ = 0;
  std::uint64_t size_ = 0;
  unsigned n_ = 1;
  std::vector<Elem> modulus_;
  std::vector<Elem> basis_;
  std::string generator_ = "a";
  bool default_basis_ = true;
  // Inverse of the matrix whose columns are the power coordinates of basis_.
  std::vector<Elem> basis_inverse_;

  // Discrete-log tables for extension fields.
  std::vector<Elem> exp_;
  std::vector<std::uint32_t> log_;
  std::vector<std::uint32_t> zech_;  // log(1 + g^i), or kNoLog when zero
};

bool operator==(const Field& a, const Field& b);

}  // namespace weilforge
