#pragma once

#include <map>

#include "mcd/diagram.hpp"

namespace mcd {

// Face of the projection. Corners are listed in boundary order; size counts
// edge-sides, which equals the number of corners.
struct Face {
    std::vector<Corner> corners;
    int size() const { return static_cast<int>(corners.size()); }
    bool is_monogon() const { return size() == 1; }
    bool is_bigon() const { return size() == 2; }
};

struct FaceSet {
    std::vector<Face> faces;
    // face_at[c][gap] = index of the face owning that corner
    std::vector<std::vector<int>> face_at;

    int face_of(const Corner& c) const { return face_at[c.crossing][c.gap]; }
    int count() const { return static_cast<int>(faces.size()); }
};

// Orbit walk of the rotation system: from a corner (c,g) the boundary leaves
// along the edge at slot g+1 and arrives at that edge's far end (c',s'),
// whose corner is (c',s'). Faces partition all corners.
FaceSet trace_faces(const Diagram& d);

// One strand cycle, as the sequence of entry endpoints of its passes.
using StrandCycle = std::vector<Endpoint>;

// Follow edge -> enter slot s -> exit slot s+m -> next edge until closure.
std::vector<StrandCycle> trace_components(const Diagram& d);

// The two faces flanking edge e. side(0) contains the corner (a.crossing,
// a.slot); side(1) the corner at slot a.slot-1 (and symmetrically at b).
std::pair<int, int> edge_faces(const Diagram& d, const FaceSet& fs, const Edge& e);

// Proper 2-coloring of faces (exists because every vertex has even degree).
// Throws invariant_violation if propagation meets an odd dual cycle.
std::vector<int> checkerboard(const Diagram& d, const FaceSet& fs);

struct FaceCensus {
    std::map<int, int> counts;  // face size -> number of faces

    int total() const;
    int weighted() const;  // sum of size * count
};

// Counts faces by size and cross-checks the Euler identities; for a uniform
// multiplicity-n diagram also checks sum_k (2n - k(n-1)) f_k = 4n.
FaceCensus face_census(const Diagram& d);

struct ValidationReport {
    bool ok = false;
    std::vector<std::string> violations;
    int crossing_count = 0;
    int edge_count = 0;
    int face_count = 0;     // -1 when the matching is too broken to trace
    int component_count = 0;
    bool euler_ok = false;
};

// Checks matching completeness, height permutations, sphericity (V-E+F=2)
// and counts components. Violations are data, not failures.
ValidationReport validate(const Diagram& d);

// Throws error::kind::validation when the report is not ok.
void require_valid(const Diagram& d);

}  // namespace mcd
