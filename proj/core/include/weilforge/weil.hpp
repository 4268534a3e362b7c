#pragma once

#include <string>
#include <vector>

#include "weilforge/field.hpp"
#include "weilforge/ring.hpp"

namespace weilforge {

/// Everything needed to restrict polynomials of R = K[x_1..x_m] to
/// S = k[x_{i,j}], where k is the immediate base field of K.
///
/// Variable x_i of R becomes x_i_1, ..., x_i_n in S (a homogenizing variable
/// t becomes t1, ..., tn), ordered block by block so that
/// x_{1,1} > ... > x_{1,n} > x_{2,1} > ... and homogenizing variables stay last.
struct WeilContext {
  FieldPtr extension;  // K
  FieldPtr base;       // k
  RingPtr source;      // R
  RingPtr target;      // S
  RingPtr lifted;      // S with coefficients in K
  /// psi(x_i) = sum_j alpha_j x_{i,j}, as polynomials of `lifted`.
  std::vector<Polynomial> psi;

  unsigned degree() const noexcept { return extension->degree(); }
  /// Index in S of x_{i,j} (both zero-based).
  std::size_t target_index(std::size_t i, std::size_t j) const noexcept { return i * degree() + j; }
};

WeilContext make_weil_context(const RingPtr& source);

/// Name of x_{i,j} in the restricted ring.
std::string weil_variable_name(const Ring& source, std::size_t i, unsigned j);

/// (f_1, ..., f_n) with sum_j f_j alpha_j = f(psi(x_1), ..., psi(x_m)).
std::vector<Polynomial> weil_restrict_poly(const WeilContext& ctx, const Polynomial& f);
/// Components of f_1 first, then f_2, ...; |Weil(F)| = n |F|.
PolySystem weil_restrict_system(const WeilContext& ctx, const PolySystem& F);

/// x_i^q - x_i for each non-homogenizing variable.
PolySystem field_equations(const RingPtr& ring, std::uint64_t q);

/// Same monomials, coefficients mapped by sigma.
Polynomial galois_conjugate_poly(const Polynomial& f, GaloisAutomorphism sigma);

/// Coefficient-preserving inclusion of a polynomial over k into `lifted`.
Polynomial lift_to_extension(const WeilContext& ctx, const Polynomial& g);

struct PsiIsoReport {
  struct Entry {
    GaloisAutomorphism sigma;
    bool equal = false;
  };
  std::vector<Entry> entries;
  bool holds() const;
};

/// For every sigma, compares f^sigma evaluated at x_i -> sum_j sigma(alpha_j) x_{i,j}
/// with sum_j sigma(alpha_j) f_j.
PsiIsoReport psi_iso_check(const WeilContext& ctx, const Polynomial& f);

/// The n x n matrix (sigma_{i}(alpha_j)) is invertible over K.
bool conjugate_basis_matrix_invertible(const Field& K);

/// Weil(F)^h in S[t]: each component of Weil(f) homogenized to degree deg f,
/// i.e. sum_l h_l alpha_l = sum_a f_a(psi) t^(deg f - a).
PolySystem weil_then_homogenize(const WeilContext& ctx, const PolySystem& F, const RingPtr& target_t);

/// Weil(F)^top: the degree-(deg f) part of each component of Weil(f).
PolySystem weil_then_top(const WeilContext& ctx, const PolySystem& F);

struct CompatReport {
  bool vacuous = false;
  bool holds = true;
  /// Pairs (left, right) rendered for each generator component, in order.
  std::vector<std::pair<Polynomial, Polynomial>> pairs;
  /// Components whose degree drops below the degree of their generator.
  std::size_t degree_drops = 0;
};

/// Weil(F^h) at t_1 = t, t_2 = ... = t_n = 0 against Weil(F)^h, pairwise.
CompatReport weil_homog_compat_check(const WeilContext& ctx, const PolySystem& F);

/// Weil(F^top) against Weil(F)^top, pairwise.
CompatReport weil_top_compat_check(const WeilContext& ctx, const PolySystem& F);

/// Ring S[t] used for Weil(F)^h: the target of ctx plus one homogenizing t.
RingPtr weil_homogenized_ring(const WeilContext& ctx);

}  // namespace weilforge
