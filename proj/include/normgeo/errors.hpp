#ifndef NORMGEO_ERRORS_HPP
#define NORMGEO_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace normgeo {

struct DimensionMismatch : std::invalid_argument {
  explicit DimensionMismatch(const std::string& what) : std::invalid_argument(what) {}
};

struct ZeroVector : std::invalid_argument {
  explicit ZeroVector(const std::string& what) : std::invalid_argument(what) {}
};

struct NonFiniteInput : std::invalid_argument {
  explicit NonFiniteInput(const std::string& what) : std::invalid_argument(what) {}
};

struct InvalidSpace : std::invalid_argument {
  explicit InvalidSpace(const std::string& what) : std::invalid_argument(what) {}
};

// Denominator of an angular-distance quotient fell below the degeneracy band.
struct DegenerateDenominator : std::domain_error {
  explicit DegenerateDenominator(const std::string& what) : std::domain_error(what) {}
};

struct InvalidExponent : std::invalid_argument {
  explicit InvalidExponent(const std::string& what) : std::invalid_argument(what) {}
};

// Space-descriptor / file parse failure, annotated with a byte offset into
// the offending text and a hint about what was expected there.
struct ParseError : std::runtime_error {
  std::size_t offset;
  std::string hint;
  ParseError(std::size_t off, const std::string& hint_text)
      : std::runtime_error("parse error at byte " + std::to_string(off) + ": " + hint_text),
        offset(off),
        hint(hint_text) {}
};

}  // namespace normgeo

#endif
