#include "mcd/faces.hpp"

#include <algorithm>
#include <numeric>

namespace mcd {

FaceSet trace_faces(const Diagram& d) {
    SlotMap sm(d);
    FaceSet fs;
    fs.face_at.resize(d.crossings.size());
    for (size_t c = 0; c < d.crossings.size(); ++c)
        fs.face_at[c].assign(d.crossings[c].slots(), -1);

    for (size_t c = 0; c < d.crossings.size(); ++c) {
        for (int g = 0; g < d.crossings[c].slots(); ++g) {
            if (fs.face_at[c][g] != -1) continue;
            int idx = fs.count();
            Face f;
            Corner cur{static_cast<int>(c), g};
            do {
                fs.face_at[cur.crossing][cur.gap] = idx;
                f.corners.push_back(cur);
                int n = d.slots(cur.crossing);
                Endpoint nxt = sm.other_end(d, cur.crossing, (cur.gap + 1) % n);
                cur = Corner{nxt.crossing, nxt.slot};
            } while (!(cur.crossing == static_cast<int>(c) && cur.gap == g));
            fs.faces.push_back(std::move(f));
        }
    }
    return fs;
}

std::vector<StrandCycle> trace_components(const Diagram& d) {
    SlotMap sm(d);
    std::vector<std::vector<char>> seen(d.crossings.size());
    for (size_t c = 0; c < d.crossings.size(); ++c)
        seen[c].assign(d.crossings[c].slots(), 0);

    std::vector<StrandCycle> cycles;
    for (size_t c = 0; c < d.crossings.size(); ++c) {
        for (int s = 0; s < d.crossings[c].slots(); ++s) {
            if (seen[c][s]) continue;
            StrandCycle cyc;
            Endpoint cur{static_cast<int>(c), s};
            do {
                seen[cur.crossing][cur.slot] = 1;
                cyc.push_back(cur);
                int out = d.pass_exit(cur.crossing, cur.slot);
                seen[cur.crossing][out] = 1;
                cur = sm.other_end(d, cur.crossing, out);
            } while (!(cur.crossing == static_cast<int>(c) && cur.slot == s));
            cycles.push_back(std::move(cyc));
        }
    }
    return cycles;
}

std::pair<int, int> edge_faces(const Diagram& d, const FaceSet& fs, const Edge& e) {
    int na = d.slots(e.a.crossing);
    int nb = d.slots(e.b.crossing);
    int side0 = fs.face_of({e.a.crossing, e.a.slot});
    int side1 = fs.face_of({e.a.crossing, (e.a.slot + na - 1) % na});
    // Consistency: side0 equals the face at (b, b.slot-1), side1 at (b, b.slot).
    (void)nb;
    return {side0, side1};
}

std::vector<int> checkerboard(const Diagram& d, const FaceSet& fs) {
    std::vector<int> color(fs.count(), -1);
    std::vector<int> stack;
    for (int start = 0; start < fs.count(); ++start) {
        if (color[start] != -1) continue;
        color[start] = 0;
        stack.push_back(start);
        while (!stack.empty()) {
            int f = stack.back();
            stack.pop_back();
            for (const Corner& c : fs.faces[f].corners) {
                int n = d.slots(c.crossing);
                // Both wedges adjacent across the flanking edges get the
                // opposite color.
                for (int g : {(c.gap + 1) % n, (c.gap + n - 1) % n}) {
                    int nb = fs.face_of({c.crossing, g});
                    if (color[nb] == -1) {
                        color[nb] = 1 - color[f];
                        stack.push_back(nb);
                    } else if (color[nb] == color[f]) {
                        throw error(error::kind::invariant_violation,
                                    "checkerboard propagation found an odd dual cycle");
                    }
                }
            }
        }
    }
    return color;
}

int FaceCensus::total() const {
    int t = 0;
    for (auto& [k, v] : counts) t += v;
    return t;
}

int FaceCensus::weighted() const {
    int t = 0;
    for (auto& [k, v] : counts) t += k * v;
    return t;
}

FaceCensus face_census(const Diagram& d) {
    FaceCensus fc;
    if (d.empty()) {
        // Crossingless unknot: two regions with empty boundaries.
        fc.counts[0] = 2;
        return fc;
    }
    FaceSet fs = trace_faces(d);
    for (const Face& f : fs.faces) fc.counts[f.size()]++;
    int V = static_cast<int>(d.crossings.size());
    int E = static_cast<int>(d.edges.size());
    if (fc.total() != E - V + 2)
        throw error(error::kind::invariant_violation, "face census violates V-E+F=2");
    if (fc.weighted() != 2 * E)
        throw error(error::kind::invariant_violation, "face census violates sum k*f_k=2E");
    bool uniform = !d.crossings.empty();
    int n = d.crossings.empty() ? 0 : d.crossings[0].multiplicity;
    for (const Crossing& c : d.crossings)
        if (c.multiplicity != n) uniform = false;
    if (uniform) {
        long long lhs = 0;
        for (auto& [k, v] : fc.counts) lhs += static_cast<long long>(2 * n - k * (n - 1)) * v;
        if (lhs != 4LL * n)
            throw error(error::kind::invariant_violation,
                        "face census violates sum (2n-k(n-1)) f_k = 4n");
    }
    return fc;
}

ValidationReport validate(const Diagram& d) {
    ValidationReport r;
    r.crossing_count = static_cast<int>(d.crossings.size());
    r.edge_count = static_cast<int>(d.edges.size());
    r.violations = matching_violations(d);

    for (size_t c = 0; c < d.crossings.size(); ++c) {
        const Crossing& x = d.crossings[c];
        if (x.multiplicity < 2)
            r.violations.push_back(x.id + ": multiplicity must be at least 2");
        if (static_cast<int>(x.heights.size()) != x.multiplicity) {
            r.violations.push_back(x.id + ": heights must list one level per pass");
        } else {
            std::vector<int> h = x.heights;
            std::sort(h.begin(), h.end());
            for (int i = 0; i < x.multiplicity; ++i)
                if (h[i] != i + 1) {
                    r.violations.push_back(x.id + ": heights not a permutation of 1.." +
                                           std::to_string(x.multiplicity));
                    break;
                }
        }
        for (size_t j = 0; j < c; ++j)
            if (d.crossings[j].id == x.id)
                r.violations.push_back("duplicate crossing id: " + x.id);
    }
    if (d.outer) {
        if (d.outer->crossing < 0 || d.outer->crossing >= r.crossing_count)
            r.violations.push_back("outer corner references unknown crossing");
        else if (d.outer->gap < 0 || d.outer->gap >= d.slots(d.outer->crossing))
            r.violations.push_back("outer corner gap out of range");
    }

    bool traceable = true;
    for (const std::string& v : r.violations)
        if (v.find("slot") != std::string::npos || v.find("endpoint") != std::string::npos)
            traceable = false;

    r.face_count = -1;
    if (d.empty()) {
        // Crossingless diagram: the unknot. One closed curve, two regions.
        r.face_count = 2;
        r.component_count = d.edges.empty() ? 1 : 0;
        r.euler_ok = d.edges.empty();
        if (!d.edges.empty()) r.violations.push_back("edges without crossings");
    } else if (traceable) {
        FaceSet fs = trace_faces(d);
        r.face_count = fs.count();
        r.component_count = static_cast<int>(trace_components(d).size());
        r.euler_ok =
            (r.crossing_count - r.edge_count + r.face_count == 2);
        if (!r.euler_ok)
            r.violations.push_back("not spherical: V-E+F = " +
                                   std::to_string(r.crossing_count - r.edge_count +
                                                  r.face_count));
    }
    r.ok = r.violations.empty();
    return r;
}

void require_valid(const Diagram& d) {
    ValidationReport r = validate(d);
    if (!r.ok) {
        std::string msg = "invalid diagram:";
        for (const std::string& v : r.violations) msg += " [" + v + "]";
        throw error(error::kind::validation, msg);
    }
}

}  // namespace mcd
