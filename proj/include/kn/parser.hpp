#pragma once

#include <string>

#include "kn/poly.hpp"
#include "kn/transform.hpp"

namespace kn {

// Parses a defining-function expression over z, zbar, u, |z|, Re(...),
// Im(...), rational/decimal/complex literals, ^, * (juxtaposition allowed),
// +, -. The result must be real-valued; a monomial without its conjugate
// partner is rejected by name.
Poly parse_real_poly(const std::string& text);

// Canonical rendering: diagonal terms as |z|^k, conjugate pairs grouped as
// Re(...), graded-lex term order. parse_real_poly(format_poly(P)) == P.
std::string format_poly(const Poly& P);

// Holomorphic expression in z and w (complex coefficients allowed).
HoloPoly parse_holo_poly(const std::string& text);

// "g = <expr>; f = <expr>" in the holomorphic grammar; either component
// may be omitted and defaults to 0. The map is validated against the
// group normalization.
HoloMap parse_holo_map(const std::string& text);

// Monomial rendering for diagnostics, e.g. "z^3*zbar*u^2".
std::string monomial_to_string(const Exponents& e);

}  // namespace kn
