#pragma once

#include <string>
#include <string_view>

#include "weilforge/ring.hpp"

namespace weilforge {

/// Text format, one item per line, `#` comments and blank lines ignored:
///
///     weilforge-v1
///     field GF(2)[a]/(a^3+a+1)
///     vars x, y
///     flags field-equations        (optional)
///     y^2+x*y+a*x+a^2              (one polynomial per line)
struct SystemFile {
  RingPtr ring;
  PolySystem polynomials;
  /// Append x^Q - x for every variable, Q the size of the field.
  bool field_equations = false;
  /// Weil-restrict over the base field of the declared extension.
  bool restrict = false;

  /// The polynomials plus field equations when flagged.
  PolySystem system() const;

  friend bool operator==(const SystemFile& a, const SystemFile& b);
};

inline constexpr std::string_view kSystemFileHeader = "weilforge-v1";

SystemFile parse_system_file(std::string_view text);
std::string render_system_file(const SystemFile& file);

}  // namespace weilforge
