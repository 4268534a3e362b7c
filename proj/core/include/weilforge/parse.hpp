#pragma once

#include <string_view>

#include "weilforge/field.hpp"
#include "weilforge/ring.hpp"

namespace weilforge {

/// `GF(p)` or `GF(p)[a]/(modulus)`, optionally followed by
/// `basis = [e1, ..., en]`.
FieldPtr parse_field_spec(std::string_view text);

/// Polynomial text: `+ - * ^`, parentheses, integer literals, the field
/// generator symbol and the ring's variable names. Whitespace is ignored and
/// `#` starts a comment. `line` is only used in error messages.
Polynomial parse_polynomial(std::string_view text, const RingPtr& ring, std::size_t line = 1);

/// A field element written as a polynomial in the generator.
Elem parse_element(std::string_view text, const FieldPtr& field);

}  // namespace weilforge
