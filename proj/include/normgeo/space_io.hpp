#ifndef NORMGEO_SPACE_IO_HPP
#define NORMGEO_SPACE_IO_HPP

#include <string>

#include "normgeo/space.hpp"

namespace normgeo {

// Space descriptor grammar:
//   l<q>:<dim>              e.g. "l2:3", "linf:2", "l1.5:4"
//   wl<q>:<dim>:w1,w2,...   weighted lp
//   poly:@<path>            polyhedral unit ball from a JSON file
// Throws ParseError with a byte offset and an expected-token hint.
NormedSpace parse_space(const std::string& text);

// JSON format: {"type": "polyhedral", "dim": n, "vertices": [[...], ...]}.
// Asymmetric or degenerate vertex sets are rejected with a diagnostic naming
// the missing mirror vertex.
NormedSpace load_polyhedral_json(const std::string& path);

}  // namespace normgeo

#endif
