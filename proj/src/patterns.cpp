#include "mcd/patterns.hpp"

#include <algorithm>
#include <set>

namespace mcd {

std::string to_string(MonogonClass c) {
    switch (c) {
        case MonogonClass::none: return "none";
        case MonogonClass::one: return "one";
        case MonogonClass::two_almost_opposite: return "two-almost-opposite";
        case MonogonClass::two_other: return "two-other";
        case MonogonClass::three_plus: return "three-plus";
    }
    return "?";
}

std::string to_string(ConnectionWitness::Kind k) {
    return k == ConnectionWitness::Kind::acc ? "ACC" : "OCC";
}

MonogonProfile monogon_profile(const Diagram& d, const FaceSet& fs, int crossing) {
    if (crossing < 0 || crossing >= static_cast<int>(d.crossings.size()))
        throw error(error::kind::precondition, "unknown crossing");
    MonogonProfile p;
    p.crossing = crossing;
    int n = d.slots(crossing);
    for (int g = 0; g < n; ++g) {
        int f = fs.face_of({crossing, g});
        if (fs.faces[f].is_monogon()) p.monogon_gaps.push_back(g);
    }
    size_t k = p.monogon_gaps.size();
    if (k == 0) {
        p.classification = MonogonClass::none;
    } else if (k == 1) {
        p.classification = MonogonClass::one;
    } else if (k == 2) {
        // Almost opposite: exactly two strand ends strictly between the two
        // monogon loops on one side, i.e. wedge distance 4 on a 2m-gon.
        int diff = p.monogon_gaps[1] - p.monogon_gaps[0];
        p.classification = (diff == 4 || diff == n - 4)
                               ? MonogonClass::two_almost_opposite
                               : MonogonClass::two_other;
    } else {
        p.classification = MonogonClass::three_plus;
    }
    return p;
}

MonogonProfile monogon_profile(const Diagram& d, int crossing) {
    return monogon_profile(d, trace_faces(d), crossing);
}

std::vector<AdjoinedBigon> find_adjoined_bigons(const Diagram& d) {
    FaceSet fs = trace_faces(d);
    std::vector<AdjoinedBigon> out;
    for (int f = 0; f < fs.count(); ++f) {
        const Face& face = fs.faces[f];
        if (face.size() == 2 && face.corners[0].crossing == face.corners[1].crossing)
            out.push_back({f, face.corners[0].crossing});
    }
    return out;
}

std::vector<int> CrossingSegment::traversals() const {
    std::vector<int> out;
    out.reserve(steps.size());
    for (const SegmentStep& s : steps) out.push_back(s.crossing);
    return out;
}

CrossingSegment CrossingSegment::reversed(const Diagram& d) const {
    CrossingSegment r;
    for (size_t i = steps.size(); i-- > 0;)
        r.steps.push_back({steps[i].crossing, out_gap(d, i)});
    return r;
}

bool replay_segment(const Diagram& d, const FaceSet& fs, const CrossingSegment& s,
                    int avoid, int* from_face, int* to_face) {
    if (s.steps.empty()) return false;
    std::set<int> seen;
    int prev_face = -1;
    for (size_t i = 0; i < s.steps.size(); ++i) {
        const SegmentStep& st = s.steps[i];
        if (st.crossing < 0 || st.crossing >= static_cast<int>(d.crossings.size()))
            return false;
        if (st.crossing == avoid) return false;
        if (!seen.insert(st.crossing).second) return false;
        if (st.in_gap < 0 || st.in_gap >= d.slots(st.crossing)) return false;
        int in_face = fs.face_of({st.crossing, st.in_gap});
        if (i == 0) {
            if (from_face) *from_face = in_face;
        } else if (in_face != prev_face) {
            return false;
        }
        prev_face = fs.face_of({st.crossing, s.out_gap(d, i)});
    }
    if (to_face) *to_face = prev_face;
    return true;
}

namespace {

// Lexicographic segment order: traversal id sequence, then entry gaps.
bool segment_less(const Diagram& d, const CrossingSegment& a, const CrossingSegment& b) {
    size_t n = std::min(a.steps.size(), b.steps.size());
    for (size_t i = 0; i < n; ++i) {
        const std::string& ia = d.crossings[a.steps[i].crossing].id;
        const std::string& ib = d.crossings[b.steps[i].crossing].id;
        if (ia != ib) return ia < ib;
    }
    if (a.steps.size() != b.steps.size()) return a.steps.size() < b.steps.size();
    for (size_t i = 0; i < n; ++i)
        if (a.steps[i].in_gap != b.steps[i].in_gap)
            return a.steps[i].in_gap < b.steps[i].in_gap;
    return false;
}

}  // namespace

std::vector<CrossingSegment> find_crossing_segments(const Diagram& d, const FaceSet& fs,
                                                    int from_face,
                                                    const SegmentConstraints& sc) {
    if (from_face < 0 || from_face >= fs.count())
        throw error(error::kind::precondition, "unknown face");
    int maxt = sc.max_traversals > 0 ? sc.max_traversals
                                     : static_cast<int>(d.crossings.size());
    std::vector<CrossingSegment> out;
    std::vector<char> visited(d.crossings.size(), 0);
    CrossingSegment cur;

    auto dfs = [&](auto&& self, int face) -> void {
        if (static_cast<int>(cur.steps.size()) >= maxt) return;
        for (const Corner& c : fs.faces[face].corners) {
            if (c.crossing == sc.avoid || visited[c.crossing]) continue;
            visited[c.crossing] = 1;
            cur.steps.push_back({c.crossing, c.gap});
            out.push_back(cur);
            int nxt = fs.face_of({c.crossing, cur.out_gap(d, cur.steps.size() - 1)});
            self(self, nxt);
            cur.steps.pop_back();
            visited[c.crossing] = 0;
        }
    };
    dfs(dfs, from_face);
    std::sort(out.begin(), out.end(),
              [&](const CrossingSegment& a, const CrossingSegment& b) {
                  return segment_less(d, a, b);
              });
    return out;
}

std::vector<ConnectionWitness> find_acc_occ(const Diagram& d) {
    FaceSet fs = trace_faces(d);
    SlotMap sm(d);
    std::vector<ConnectionWitness> out;

    // Deterministic crossing order: by id.
    std::vector<int> order(d.crossings.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return d.crossings[a].id < d.crossings[b].id; });

    for (int alpha : order) {
        int n = d.slots(alpha);
        int m = d.crossings[alpha].multiplicity;

        struct Candidate {
            ConnectionWitness::Kind kind;
            int fa, fb;
            int acc_slot, occ_gap;
        };
        std::vector<Candidate> cands;
        std::set<std::tuple<int, int, int>> seen;  // kind, min face, max face
        for (int s = 0; s < n; ++s) {
            const Edge& e = d.edges[sm.edge_at(alpha, s)];
            // A loop at alpha is not a strand connecting alpha to another crossing.
            if (e.a.crossing == alpha && e.b.crossing == alpha) continue;
            int fa = fs.face_of({alpha, s});
            int fb = fs.face_of({alpha, (s + n - 1) % n});
            if (fa == fb) continue;
            if (seen.insert({0, std::min(fa, fb), std::max(fa, fb)}).second)
                cands.push_back({ConnectionWitness::Kind::acc, fa, fb, s, -1});
        }
        for (int g = 0; g < m; ++g) {
            int fa = fs.face_of({alpha, g});
            int fb = fs.face_of({alpha, (g + m) % n});
            if (fa == fb) continue;
            if (seen.insert({1, std::min(fa, fb), std::max(fa, fb)}).second)
                cands.push_back({ConnectionWitness::Kind::occ, fa, fb, -1, g});
        }

        for (const Candidate& c : cands) {
            SegmentConstraints sc;
            sc.avoid = alpha;
            std::vector<CrossingSegment> segs = find_crossing_segments(d, fs, c.fa, sc);
            const CrossingSegment* best = nullptr;
            for (const CrossingSegment& s : segs) {
                int to = fs.face_of(s.exit(d));
                if (to != c.fb) continue;
                if (!best || segment_less(d, s, *best)) best = &s;
            }
            if (best) {
                ConnectionWitness w;
                w.kind = c.kind;
                w.alpha = alpha;
                w.face_a = c.fa;
                w.face_b = c.fb;
                w.acc_slot = c.acc_slot;
                w.occ_gap = c.occ_gap;
                w.segment = *best;
                out.push_back(std::move(w));
            }
        }
    }
    return out;
}

bool witness_valid(const Diagram& d, const FaceSet& fs, const ConnectionWitness& w,
                   std::string* why) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    if (w.alpha < 0 || w.alpha >= static_cast<int>(d.crossings.size()))
        return fail("witness references a deleted crossing");
    int n = d.slots(w.alpha);
    int m = d.crossings[w.alpha].multiplicity;
    int from = -1, to = -1;
    if (!replay_segment(d, fs, w.segment, w.alpha, &from, &to))
        return fail("segment does not replay");
    if (w.face_a >= fs.count() || w.face_b >= fs.count())
        return fail("witness faces out of range");
    if (from != w.face_a || to != w.face_b) return fail("segment endpoints moved");
    if (w.kind == ConnectionWitness::Kind::acc) {
        if (w.acc_slot < 0 || w.acc_slot >= n) return fail("acc slot out of range");
        SlotMap sm(d);
        const Edge& e = d.edges[sm.edge_at(w.alpha, w.acc_slot)];
        if (e.a.crossing == w.alpha && e.b.crossing == w.alpha)
            return fail("acc edge is a loop");
        int fa = fs.face_of({w.alpha, w.acc_slot});
        int fb = fs.face_of({w.alpha, (w.acc_slot + n - 1) % n});
        if (std::minmax(fa, fb) != std::minmax(w.face_a, w.face_b))
            return fail("acc faces no longer flank the edge");
    } else {
        if (w.occ_gap < 0 || w.occ_gap >= n) return fail("occ gap out of range");
        int fa = fs.face_of({w.alpha, w.occ_gap});
        int fb = fs.face_of({w.alpha, (w.occ_gap + m) % n});
        if (std::minmax(fa, fb) != std::minmax(w.face_a, w.face_b))
            return fail("occ faces no longer opposite");
    }
    return true;
}

Theorem29Report theorem_2_9_conditions(const Diagram& d) {
    require_valid(d);
    FaceSet fs = trace_faces(d);
    Theorem29Report r;
    for (const Crossing& c : d.crossings)
        if (c.multiplicity != 5) r.uniform5 = false;
    r.cond1_monogons = true;
    for (size_t c = 0; c < d.crossings.size(); ++c) {
        MonogonProfile p = monogon_profile(d, fs, static_cast<int>(c));
        r.monogon_class[d.crossings[c].id] = p.classification;
        if (p.classification != MonogonClass::none &&
            p.classification != MonogonClass::one &&
            p.classification != MonogonClass::two_almost_opposite)
            r.cond1_monogons = false;
    }
    r.cond2_no_adjoined = find_adjoined_bigons(d).empty();
    r.cond3_no_accocc = find_acc_occ(d).empty();
    return r;
}

BigonStructures bigon_structures(const Diagram& d) {
    FaceSet fs = trace_faces(d);
    BigonStructures out;

    // bigon side counts per face, via edge flanks
    std::vector<int> bigon_sides(fs.count(), 0);
    for (size_t ei = 0; ei < d.edges.size(); ++ei) {
        auto [f1, f2] = edge_faces(d, fs, d.edges[ei]);
        if (f1 == f2) continue;
        if (fs.faces[f1].is_bigon() && fs.faces[f2].is_bigon())
            out.adjacent_bigon_pairs.push_back(
                {std::min(f1, f2), std::max(f1, f2), static_cast<int>(ei)});
        if (fs.faces[f1].is_bigon()) bigon_sides[f2]++;
        if (fs.faces[f2].is_bigon()) bigon_sides[f1]++;
    }
    for (int f = 0; f < fs.count(); ++f) {
        int sz = fs.faces[f].size();
        if (sz >= 3 && bigon_sides[f] >= sz - 1) out.heavy_ngons.push_back(f);
        if (sz == 3) out.triangle_bigon_incidences[f] = bigon_sides[f];
    }
    for (auto& [f, cnt] : out.triangle_bigon_incidences) {
        if (cnt > 0) {
            out.chosen_triangle = f;
            break;
        }
    }
    if (out.chosen_triangle >= 0) {
        std::set<int> mine;
        for (const Corner& c : fs.faces[out.chosen_triangle].corners)
            mine.insert(c.crossing);
        int count = 0;
        for (auto& [f, cnt] : out.triangle_bigon_incidences) {
            if (f == out.chosen_triangle) continue;
            for (const Corner& c : fs.faces[f].corners)
                if (mine.count(c.crossing)) {
                    ++count;
                    break;
                }
        }
        out.triangles_sharing_crossing = count;
    }
    return out;
}

int MonogonLabels::label_of_gap(const Diagram& d, int gap) const {
    for (int l = 1; l <= 9; ++l)
        if (corner[l].gap == gap) return l;
    return -1;
}

MonogonLabels label_monogon_faces(const Diagram& d, const FaceSet& fs, int alpha,
                                  int reference_gap) {
    if (alpha < 0 || alpha >= static_cast<int>(d.crossings.size()))
        throw error(error::kind::precondition, "unknown crossing");
    if (d.crossings[alpha].multiplicity != 5)
        throw error(error::kind::precondition,
                    "face labeling requires multiplicity 5, got " +
                        std::to_string(d.crossings[alpha].multiplicity));
    MonogonProfile p = monogon_profile(d, fs, alpha);
    if (p.monogon_gaps.empty())
        throw error(error::kind::precondition,
                    d.crossings[alpha].id + " has no monogon");
    int m0 = reference_gap;
    if (m0 < 0) {
        m0 = p.monogon_gaps.front();
    } else if (std::find(p.monogon_gaps.begin(), p.monogon_gaps.end(), m0) ==
               p.monogon_gaps.end()) {
        throw error(error::kind::precondition, "reference gap is not a monogon wedge");
    }
    MonogonLabels out;
    out.alpha = alpha;
    out.reference_gap = m0;
    int n = d.slots(alpha);
    for (int l = 1; l <= 7; ++l)
        out.corner[l] = Corner{alpha, ((m0 - 1 - l) % n + n) % n};
    out.corner[8] = Corner{alpha, (m0 + 1) % n};
    out.corner[9] = Corner{alpha, (m0 + n - 1) % n};
    for (int l = 1; l <= 9; ++l) out.face[l] = fs.face_of(out.corner[l]);
    return out;
}

bool table2_not_direct(int a, int b) {
    if (a > b) std::swap(a, b);
    static const std::set<std::pair<int, int>> six = {
        {3, 5}, {1, 4}, {2, 4}, {4, 6}, {4, 7}, {4, 8}};
    return six.count({a, b}) > 0;
}

namespace {

int canon_label(int l) { return l == 9 ? 8 : l; }

}  // namespace

std::vector<Table2Class> classify_segments_table2(const Diagram& d, int alpha) {
    require_valid(d);
    FaceSet fs = trace_faces(d);
    MonogonProfile p = monogon_profile(d, fs, alpha);
    std::vector<MonogonLabels> labelings;
    labelings.push_back(label_monogon_faces(d, fs, alpha, -1));
    if (p.monogon_gaps.size() == 2)
        labelings.push_back(label_monogon_faces(d, fs, alpha, p.monogon_gaps[1]));
    else if (p.monogon_gaps.size() > 2)
        throw error(error::kind::precondition,
                    "classification requires at most two monogons");

    int n = d.slots(alpha);
    std::set<int> monogon_wedges(p.monogon_gaps.begin(), p.monogon_gaps.end());

    // Face-level connectivity avoiding alpha.
    std::vector<int> gaps;
    for (int g = 0; g < n; ++g)
        if (!monogon_wedges.count(g)) gaps.push_back(g);
    std::set<int> face_set;
    for (int g : gaps) face_set.insert(fs.face_of({alpha, g}));
    std::map<std::pair<int, int>, bool> face_connected;
    SegmentConstraints sc;
    sc.avoid = alpha;
    for (int fa : face_set) {
        std::vector<CrossingSegment> segs = find_crossing_segments(d, fs, fa, sc);
        for (const CrossingSegment& s : segs) {
            int to = fs.face_of(s.exit(d));
            if (face_set.count(to) && to != fa)
                face_connected[{std::min(fa, to), std::max(fa, to)}] = true;
        }
    }

    std::vector<Table2Class> out;
    for (size_t i = 0; i < gaps.size(); ++i) {
        for (size_t j = i + 1; j < gaps.size(); ++j) {
            int u = gaps[i], w = gaps[j];
            int fu = fs.face_of({alpha, u});
            int fw = fs.face_of({alpha, w});
            bool same = (fu == fw);
            bool connected =
                same || face_connected.count({std::min(fu, fw), std::max(fu, fw)});
            if (!connected) continue;
            int lu = labelings[0].label_of_gap(d, u);
            int lw = labelings[0].label_of_gap(d, w);
            if (lu < 0 || lw < 0) continue;  // second monogon wedge carries no label
            if (canon_label(lu) == canon_label(lw)) continue;
            bool nd = table2_not_direct(canon_label(lu), canon_label(lw));
            if (labelings.size() == 2 && nd) {
                int lu2 = labelings[1].label_of_gap(d, u);
                int lw2 = labelings[1].label_of_gap(d, w);
                nd = lu2 > 0 && lw2 > 0 &&
                     table2_not_direct(canon_label(lu2), canon_label(lw2));
            }
            Table2Class tc;
            tc.face_pair = {std::min(lu, lw), std::max(lu, lw)};
            tc.verdict = nd ? Verdict::not_direct : Verdict::implies_c13_lt_c5;
            tc.same_face = same;
            tc.gap_a = u;
            tc.gap_b = w;
            out.push_back(tc);
        }
    }
    return out;
}

}  // namespace mcd
