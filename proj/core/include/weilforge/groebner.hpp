#pragma once

#include <string>
#include <vector>

#include "weilforge/ring.hpp"

namespace weilforge {

struct GbOptions {
  /// Pairs whose lcm exceeds this degree abort the computation.
  unsigned degree_cap = 30;
};

/// Reduced Groebner basis: monic, inter-reduced, sorted by leading monomial
/// ascending.
struct GroebnerBasis {
  RingPtr ring;
  std::vector<Polynomial> elements;

  bool is_zero_ideal() const noexcept { return elements.empty(); }
  bool is_unit_ideal() const noexcept { return elements.size() == 1 && elements[0].is_constant(); }
  unsigned max_degree() const;
  std::vector<Monomial> leading_monomials() const;
  friend bool operator==(const GroebnerBasis& a, const GroebnerBasis& b);
};

/// Minimal generators of a monomial ideal; none divides another.
struct MonomialIdeal {
  std::size_t nvars = 0;
  std::vector<Monomial> generators;

  static MonomialIdeal minimalize(std::size_t nvars, std::vector<Monomial> gens);
  bool contains(const Monomial& m) const;
};

GroebnerBasis buchberger_reduced_gb(const RingPtr& ring, const PolySystem& F, const GbOptions& opts = {});
/// F must contain at least one polynomial to fix the ring.
GroebnerBasis buchberger_reduced_gb(const PolySystem& F, const GbOptions& opts = {});

/// Fully reduced remainder of f modulo G.
Polynomial normal_form(const Polynomial& f, const GroebnerBasis& G);
Polynomial normal_form(const Polynomial& f, const std::vector<Polynomial>& reducers);

/// Largest degree in the reduced Groebner basis.
unsigned max_gb_deg(const PolySystem& F, const GbOptions& opts = {});

/// Buchberger's criterion: every S-polynomial reduces to zero.
bool is_groebner(const PolySystem& G);

MonomialIdeal initial_ideal(const GroebnerBasis& G);

/// I : v^oo for homogeneous I in degrevlex where v is the last variable.
GroebnerBasis saturate_by_variable(const GroebnerBasis& I, std::size_t v, const GbOptions& opts = {});
/// I : v^oo for homogeneous I and any variable v (reorders internally).
GroebnerBasis saturate(const GroebnerBasis& I, std::size_t v, const GbOptions& opts = {});
/// I : m^oo for the irrelevant ideal m.
GroebnerBasis saturate_irrelevant(const GroebnerBasis& I, const GbOptions& opts = {});
GroebnerBasis intersect(const GroebnerBasis& I, const GroebnerBasis& J, const GbOptions& opts = {});
/// I : (g).
GroebnerBasis colon(const GroebnerBasis& I, const Polynomial& g, const GbOptions& opts = {});
/// I + (extra).
GroebnerBasis sum(const GroebnerBasis& I, const PolySystem& extra, const GbOptions& opts = {});

struct GenericCoordsReport {
  bool generic = false;
  std::size_t dimension = 0;
  /// One entry per tested variable x_i, i = m, m-1, ..., m-d+1.
  struct Step {
    std::size_t variable;
    bool nonzerodivisor;
  };
  std::vector<Step> steps;
  /// The field the test ran over (closure-level genericity is not implied).
  std::string field;
};

/// x_i is a non-zerodivisor modulo (I + (x_m, ..., x_{i+1}))^sat for
/// i = m, ..., m-d+1 with d = dim R/I.
GenericCoordsReport is_generic_coordinates(const GroebnerBasis& I, const GbOptions& opts = {});

}  // namespace weilforge
