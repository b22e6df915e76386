#pragma once

#include <array>
#include <map>

#include "mcd/faces.hpp"

namespace mcd {

enum class MonogonClass { none, one, two_almost_opposite, two_other, three_plus };

std::string to_string(MonogonClass c);

struct MonogonProfile {
    int crossing = -1;
    std::vector<int> monogon_gaps;  // wedges whose face is a loop monogon here
    MonogonClass classification = MonogonClass::none;
};

MonogonProfile monogon_profile(const Diagram& d, const FaceSet& fs, int crossing);
MonogonProfile monogon_profile(const Diagram& d, int crossing);

struct AdjoinedBigon {
    int face = -1;      // size-2 face with both corners at `crossing`
    int crossing = -1;
};

std::vector<AdjoinedBigon> find_adjoined_bigons(const Diagram& d);

// One traversed crossing of a segment: enters at wedge in_gap, leaves at the
// opposite wedge in_gap + m.
struct SegmentStep {
    int crossing = -1;
    int in_gap = -1;
};

struct CrossingSegment {
    std::vector<SegmentStep> steps;

    int out_gap(const Diagram& d, size_t i) const {
        const SegmentStep& s = steps[i];
        return (s.in_gap + d.crossings[s.crossing].multiplicity) % d.slots(s.crossing);
    }
    Corner entry() const { return {steps.front().crossing, steps.front().in_gap}; }
    Corner exit(const Diagram& d) const {
        return {steps.back().crossing, out_gap(d, steps.size() - 1)};
    }
    std::vector<int> traversals() const;
    CrossingSegment reversed(const Diagram& d) const;
};

// Soundness check: distinct traversals, consecutive corners share a face,
// no traversal of `avoid` (pass -1 to skip). Returns endpoint faces.
bool replay_segment(const Diagram& d, const FaceSet& fs, const CrossingSegment& s,
                    int avoid, int* from_face, int* to_face);

struct SegmentConstraints {
    int avoid = -1;            // crossing index the segment must not traverse
    int max_traversals = -1;   // default: crossing count
};

// Exhaustive backtracking over simple corner paths out of `from_face`.
// Deterministic order: lexicographic by traversal id sequence, then gaps.
std::vector<CrossingSegment> find_crossing_segments(const Diagram& d, const FaceSet& fs,
                                                    int from_face,
                                                    const SegmentConstraints& sc);

struct ConnectionWitness {
    enum class Kind { acc, occ };
    Kind kind = Kind::acc;
    int alpha = -1;
    int face_a = -1, face_b = -1;  // indices into trace_faces(d); entry in face_a
    int acc_slot = -1;             // ACC: slot at alpha of the edge both faces border
    int occ_gap = -1;              // OCC: faces sit at wedges occ_gap, occ_gap+m
    CrossingSegment segment;       // avoids alpha
};

std::string to_string(ConnectionWitness::Kind k);

// All ACC/OCC witnesses, one per qualifying (alpha, kind, face pair) carrying
// the lexicographically smallest connecting segment. Empty result means the
// diagram satisfies condition (3) of the three-condition theorem.
std::vector<ConnectionWitness> find_acc_occ(const Diagram& d);

// Revalidates a witness against the (possibly changed) diagram.
bool witness_valid(const Diagram& d, const FaceSet& fs, const ConnectionWitness& w,
                   std::string* why = nullptr);

struct Theorem29Report {
    bool uniform5 = true;  // false is reported as a warning, not a failure
    std::map<std::string, MonogonClass> monogon_class;
    bool cond1_monogons = false;
    bool cond2_no_adjoined = false;
    bool cond3_no_accocc = false;
    bool all() const { return cond1_monogons && cond2_no_adjoined && cond3_no_accocc; }
};

Theorem29Report theorem_2_9_conditions(const Diagram& d);

struct AdjacentBigonPair {
    int face_a = -1, face_b = -1;
    int edge = -1;  // shared edge index
};

struct BigonStructures {
    std::vector<AdjacentBigonPair> adjacent_bigon_pairs;
    std::vector<int> heavy_ngons;                 // size-n faces with >= n-1 bigon sides
    std::map<int, int> triangle_bigon_incidences; // triangle face -> adjacent bigons
    int chosen_triangle = -1;                     // first triangle with a bigon
    int triangles_sharing_crossing = -1;          // others sharing a crossing with it
};

BigonStructures bigon_structures(const Diagram& d);

// Figure-17 style labels around a multiplicity-5 crossing with a monogon.
// With reference monogon wedge m0: label L in 1..7 sits at gap m0-1-L,
// label 8 at m0+1 and label 9 at m0-1. Labels 8 and 9 always name the same
// face (the face wrapping the monogon loop).
struct MonogonLabels {
    int alpha = -1;
    int reference_gap = -1;
    std::array<Corner, 10> corner{};  // entries 1..9
    std::array<int, 10> face{};       // face index per label

    int label_of_gap(const Diagram& d, int gap) const;  // -1 if the monogon wedge
};

MonogonLabels label_monogon_faces(const Diagram& d, const FaceSet& fs, int alpha,
                                  int reference_gap = -1);

enum class Verdict { implies_c13_lt_c5, not_direct };

// The six label pairs of the classification table (9 canonicalized to 8).
bool table2_not_direct(int a, int b);

struct Table2Class {
    std::pair<int, int> face_pair;  // labels under the first labeling
    Verdict verdict = Verdict::implies_c13_lt_c5;
    bool same_face = false;         // endpoints lie in one face (no traversal needed)
    int gap_a = -1, gap_b = -1;     // the realized corner pair at alpha
};

// Classifies every realized corner pair at alpha. Two corners are connected
// when their faces coincide or a crossing segment avoiding alpha joins them.
// At a crossing with two monogons the verdict must fail under both labelings.
std::vector<Table2Class> classify_segments_table2(const Diagram& d, int alpha);

}  // namespace mcd
