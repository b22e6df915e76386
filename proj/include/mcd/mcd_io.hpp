#pragma once

#include <cstdint>
#include <string>

#include "mcd/diagram.hpp"

namespace mcd {

// Strict parse of the .mcd JSON schema; all structural invariants are
// checked on load. Unknown top-level keys are rejected.
Diagram parse_diagram(const std::string& bytes);

// Canonical serialization: crossings sorted by id, edge endpoints and edges
// sorted. parse(emit(d)) reproduces emit(d) byte for byte.
std::string emit_diagram(const Diagram& d);

// Planar-diagram code import for multiplicity-2 diagrams, e.g.
// "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]". Slot order (a,b,c,d) is
// counterclockwise with `a` the incoming under-strand, so the under pass is
// (a,c) at level 2 and the over pass (b,d) at level 1.
Diagram parse_pd(const std::string& text);

uint64_t fnv1a64(const std::string& bytes);
std::string hex64(uint64_t v);

}  // namespace mcd
