#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "brmult/poly.hpp"

namespace brm {

/// Parses integer-coefficient polynomial text such as `3*x^2*y - y^3`.
///
/// Grammar: expr := ['+'|'-'] term (('+'|'-') term)*;
///          term := power ('*' power)*;
///          power := atom ['^' integer];
///          atom := integer | variable | '(' expr ')'.
/// Juxtaposition is rejected. Errors carry the 1-based column of the
/// offending character and, if given, the enclosing line number.
template <Field K>
Poly<K> parse_poly(std::string_view text, const std::vector<std::string>& vars, const K& field,
                   int line = 0, int column_offset = 0);

}  // namespace brm
