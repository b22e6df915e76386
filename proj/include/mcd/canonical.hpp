#pragma once

#include <optional>
#include <set>

#include "mcd/bracket.hpp"
#include "mcd/patterns.hpp"

namespace mcd {

// Canonical code of a connected rotation system: minimum over all start
// darts (and, when allow_reflection, both orientations) of the breadth-first
// relabeling code. Two shadows have equal keys iff they are isomorphic on
// the sphere under that convention.
std::string canonical_key(const Diagram& d, bool allow_reflection = true);

// Number of orbits of faces under the automorphism group (orientation
// preserving only, or the full group). A plane diagram is a sphere diagram
// plus an outer face, so plane classes = sum of face orbits.
int face_orbit_count(const Diagram& d, bool allow_reflection);

struct EnumFilters {
    bool single_component = true;
    bool euler_valid = true;  // always applied; kept for reporting symmetry
    std::optional<std::set<MonogonClass>> monogon_classes;
    bool require_equal_class = false;  // same class on every crossing
};

struct Shadow {
    Diagram diagram;       // heights are the identity permutation
    std::string key;       // sphere + reflection canonical form
    std::string chiral_key;
};

// All perfect matchings on the slots of `crossing_count` crossings of the
// given multiplicity, filtered to spherical rotation systems and deduplicated
// by canonical key. Guard: crossing_count * multiplicity <= 12 strand passes.
std::vector<Shadow> enumerate_shadows(int crossing_count, int multiplicity,
                                      const EnumFilters& filters);

struct ConventionCounts {
    int sphere_reflective = 0;
    int sphere_chiral = 0;
    int plane_reflective = 0;
    int plane_chiral = 0;
};

ConventionCounts count_conventions(const std::vector<Shadow>& shadows);

struct Corollary210Report {
    ConventionCounts counts;
    std::string convention_with_15;  // empty when no convention yields 15
    int shadows = 0;
    int with_witness = 0;
    int reduced_to_single_9 = 0;
    int certificates_checked = 0;
    int certificates_passed = 0;
    int certificates_unchecked = 0;
    std::vector<std::string> failures;  // shadow keys with a failed assertion

    bool ok() const { return failures.empty(); }
};

// Runs the two-crossing multiplicity-5 enumeration, checks every shadow has
// an ACC/OCC witness and reduces to one multiplicity-9 crossing with F = 10,
// attaching bracket certificates for sampled height assignments.
Corollary210Report corollary_2_10_suite();

}  // namespace mcd
