#pragma once

#include <string_view>

#include "mdlgauge/term.hpp"

namespace mdlgauge::term {

/// Encodes a C-family fragment as a term. Covers expressions, declarations,
/// blocks, for/while/if/return, function and struct definitions, and
/// template heads; enough for small listings, not a C++ front end.
///
/// A source that is a single expression encodes as that expression, so
/// "r*r + f(s)*f(s)" becomes (+ (* r r) (* (f s) (f s))). Calls whose callee is
/// a plain name encode as (name args...); other calls as (call callee args...).
///
/// Throws SyntaxError whose position is a token index.
Term encode_c(std::string_view source);

}  // namespace mdlgauge::term
