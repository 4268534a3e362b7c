#pragma once

#include <cstdint>
#include <string>

#include "weilforge/ring.hpp"

namespace weilforge {

/// Parameters of a seeded random system over GF(q^n) in m variables.
struct InstanceSpec {
  std::uint64_t seed = 0;
  /// Prime size of the base field.
  std::uint32_t q = 2;
  /// Extension degree; 1 means the system lives over GF(q) itself.
  unsigned n = 2;
  unsigned m = 2;
  /// Number of random generators (field equations come on top).
  unsigned r = 2;
  unsigned min_degree = 1;
  unsigned max_degree = 2;
  bool homogeneous = false;
  bool field_equations = false;
  /// Probability that an eligible monomial receives a random coefficient.
  double density = 0.5;

  /// Short stable identifier, e.g. "q2n2m2r2d1-2-h-s42".
  std::string descriptor() const;
};

/// GF(q)[a]/(p) where p is the least monic irreducible of degree n, ordering
/// candidates by their coefficient vector (c_{n-1}, ..., c_0) read as a
/// base-q number.
FieldPtr default_extension(std::uint32_t q, unsigned n);

/// Ring over default_extension(q, n) with variables x1, ..., xm.
RingPtr instance_ring(const InstanceSpec& spec);

/// Deterministic in `spec`; see docs/random-instances.md for the algorithm.
PolySystem random_system_gen(const InstanceSpec& spec);

}  // namespace weilforge
