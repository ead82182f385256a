// saito/poly_text.hpp — the canonical plain-text polynomial format.
//
// Grammar (no whitespace anywhere):
//   poly  := "0" | term+
//   term  := sign coeff factors?
//   sign  := "+" | "-"
//   coeff := digits | digits "/" digits          (lowest terms, den > 1 only)
//   factors := ("*" varname ("^" digits)?)+      (ring order, exponent >= 1,
//                                                 "^1" elided)
// Terms appear in canonical (graded-lex descending) order. serialize/parse
// round-trips bit-exactly; Strict parsing rejects any deviation (term order,
// unreduced fractions, stray "^1" or "/1") with a byte offset. Lenient mode
// accepts the same syntax with terms in any order and canonicalizes; it
// exists for transcribed input tables.
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "poly.hpp"

namespace saito {

class ParseError : public std::runtime_error {
  public:
    ParseError(std::size_t offset, const std::string& what)
        : std::runtime_error("offset " + std::to_string(offset) + ": " + what), offset_(offset) {}
    std::size_t offset() const { return offset_; }

  private:
    std::size_t offset_;
};

enum class ParseMode { Strict, Lenient };

std::string to_canonical_string(const Poly& p);

Poly parse_poly(const RingPtr& ring, std::string_view text, ParseMode mode = ParseMode::Strict);

}  // namespace saito
