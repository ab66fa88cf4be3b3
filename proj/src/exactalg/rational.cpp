#include "kvertex/exactalg/rational.hpp"

#include <stdexcept>

namespace kvertex::exactalg {

std::string to_string(const Rational& r) { return r.get_str(); }

Rational parse_rational(const std::string& text) {
  Rational r;
  if (text.empty() || r.set_str(text, 10) != 0) {
    throw std::invalid_argument("malformed rational '" + text + "'");
  }
  if (r.get_den() == 0) throw std::invalid_argument("zero denominator");
  r.canonicalize();
  return r;
}

}  // namespace kvertex::exactalg
