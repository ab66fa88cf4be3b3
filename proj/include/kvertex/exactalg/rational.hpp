#pragma once

#include <gmpxx.h>

#include <string>

namespace kvertex::exactalg {

using Integer = mpz_class;
using Rational = mpq_class;

/// "p" or "p/q" in lowest terms.
std::string to_string(const Rational& r);
/// Parses "p" or "p/q"; throws std::invalid_argument on malformed input.
Rational parse_rational(const std::string& text);

}  // namespace kvertex::exactalg
