#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "weilforge/groebner.hpp"

namespace weilforge {

using ZPoly = std::vector<std::int64_t>;

/// HS(z) = numerator(z) / (1-z)^nvars, kept alongside the form with every
/// (1-z) factor cancelled.
struct HilbertSeries {
  ZPoly numerator;
  unsigned nvars = 0;
  ZPoly reduced;
  /// Denominator exponent of the reduced form (Krull dimension).
  unsigned dimension = 0;

  /// Zero numerator: the quotient is the zero ring.
  bool is_zero() const noexcept { return reduced.empty(); }
  /// Value of the Hilbert function at d.
  std::int64_t coefficient(unsigned d) const;
  /// Reduced numerator at z = 1.
  std::int64_t multiplicity() const;
  /// E.g. "(1+2*z+z^2)/(1-z)^1".
  std::string render() const;

  static HilbertSeries from_numerator(ZPoly numerator, unsigned nvars);

  /// Equality as rational functions.
  friend bool operator==(const HilbertSeries& a, const HilbertSeries& b) {
    return a.dimension == b.dimension && a.reduced == b.reduced;
  }
};

ZPoly zpoly_mul(const ZPoly& a, const ZPoly& b);
std::string render_zpoly(const ZPoly& p, const std::string& var = "z");

HilbertSeries hs_product(const HilbertSeries& a, const HilbertSeries& b);
HilbertSeries hs_power(const HilbertSeries& a, unsigned n);
/// (1-z)^r * HS.
HilbertSeries hs_times_one_minus_z(const HilbertSeries& a, unsigned r);

/// Hilbert series of R/J for a monomial ideal J.
HilbertSeries hilbert_series(const MonomialIdeal& J);
std::size_t krull_dimension(const MonomialIdeal& J);
/// Number of degree-d monomials outside J, by enumeration.
std::uint64_t count_standard_monomials(const MonomialIdeal& J, unsigned d);

}  // namespace weilforge
