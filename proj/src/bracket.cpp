#include "mcd/bracket.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <sstream>
#include <thread>

#include "mcd/faces.hpp"

namespace mcd {

void LaurentPoly::add(int exp, long long c) {
    if (c == 0) return;
    auto it = coeffs.find(exp);
    if (it == coeffs.end()) {
        coeffs[exp] = c;
    } else {
        it->second += c;
        if (it->second == 0) coeffs.erase(it);
    }
}

LaurentPoly LaurentPoly::times_power(int exp) const {
    LaurentPoly out;
    for (auto& [e, c] : coeffs) out.coeffs[e + exp] = c;
    return out;
}

LaurentPoly LaurentPoly::mirror() const {
    LaurentPoly out;
    for (auto& [e, c] : coeffs) out.coeffs[-e] = c;
    return out;
}

std::string LaurentPoly::str() const {
    if (coeffs.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [e, c] : coeffs) {
        long long v = c;
        if (first) {
            if (v < 0) os << "-";
        } else {
            os << (v < 0 ? " - " : " + ");
        }
        long long a = v < 0 ? -v : v;
        if (a != 1 || e == 0) os << a;
        if (e != 0) {
            if (a != 1) os << "*";
            os << "A";
            if (e != 1) os << "^" << e;
        }
        first = false;
    }
    return os.str();
}

LaurentPoly BracketPolynomial::normalized() const {
    LaurentPoly f = bracket.times_power(-3 * writhe);
    if (writhe % 2 != 0)
        for (auto& [e, c] : f.coeffs) c = -c;
    return f;
}

int bracket_guard() {
    if (const char* env = std::getenv("MCD_GUARD")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    return 24;
}

Diagram expand_to_standard(const Diagram& d) {
    require_valid(d);
    Diagram out;
    // bound[c][s] = where the original edge endpoint (c,s) attaches now.
    std::vector<std::vector<Endpoint>> bound(d.crossings.size());

    for (size_t ci = 0; ci < d.crossings.size(); ++ci) {
        const Crossing& x = d.crossings[ci];
        int m = x.multiplicity;
        bound[ci].assign(2 * m, Endpoint{});
        if (m == 2) {
            Crossing copy = x;
            int nc = static_cast<int>(out.crossings.size());
            out.crossings.push_back(copy);
            for (int s = 0; s < 4; ++s) bound[ci][s] = Endpoint{nc, s};
            continue;
        }
        // Half-twist bundle: inputs 0..m-1 top-to-bottom on the left (slot 0
        // highest), outputs m..2m-1 bottom-to-top on the right. Bubble-sort
        // the reversed order; every pair of passes crosses exactly once.
        std::vector<int> pos(m + 1);
        for (int p = 1; p <= m; ++p) pos[p] = m - p;
        std::vector<Endpoint> dangle(m, Endpoint{-1, -1});
        bool swapped = true;
        while (swapped) {
            swapped = false;
            for (int p = 1; p < m; ++p) {
                int a = pos[p], b = pos[p + 1];
                if (a <= b) continue;
                // New standard crossing: slots ccw are upper-right(0),
                // upper-left(1), lower-left(2), lower-right(3). The strand
                // rising from position p enters lower-left and exits
                // upper-right, i.e. it is pass 0.
                Crossing sc;
                sc.id = x.id + "#" + std::to_string(out.crossings.size());
                sc.multiplicity = 2;
                bool rising_over = x.heights[a] < x.heights[b];
                sc.heights = rising_over ? std::vector<int>{1, 2}
                                         : std::vector<int>{2, 1};
                int nc = static_cast<int>(out.crossings.size());
                out.crossings.push_back(sc);
                auto attach = [&](int strand, Endpoint in) {
                    if (dangle[strand].crossing < 0)
                        bound[ci][strand] = in;  // left boundary, slot = pass
                    else
                        out.edges.push_back(Edge{dangle[strand], in});
                };
                attach(a, Endpoint{nc, 2});
                attach(b, Endpoint{nc, 1});
                dangle[a] = Endpoint{nc, 0};
                dangle[b] = Endpoint{nc, 3};
                pos[p] = b;
                pos[p + 1] = a;
                swapped = true;
            }
        }
        for (int i = 0; i < m; ++i) bound[ci][m + i] = dangle[i];
    }

    for (const Edge& e : d.edges)
        out.edges.push_back(Edge{bound[e.a.crossing][e.a.slot],
                                 bound[e.b.crossing][e.b.slot]});
    return out;
}

namespace {

// Smoothing arcs as slot pairings. With pass 0 over, the A-regions are the
// wedges at gaps 0 and 2, so the A-smoothing joins slots (1,2) and (3,0).
std::array<int, 4> smoothing(bool pass0_over, bool a_smoothing) {
    std::array<int, 4> p{};
    bool join12 = (pass0_over == a_smoothing);
    if (join12) {
        p[1] = 2; p[2] = 1; p[3] = 0; p[0] = 3;
    } else {
        p[0] = 1; p[1] = 0; p[2] = 3; p[3] = 2;
    }
    return p;
}

struct Tally {
    // tally[a][loops] over states with a A-smoothings
    std::vector<std::vector<long long>> t;
    Tally(int c) : t(c + 1, std::vector<long long>(2 * c + 2, 0)) {}
    void merge(const Tally& o) {
        for (size_t i = 0; i < t.size(); ++i)
            for (size_t j = 0; j < t[i].size(); ++j) t[i][j] += o.t[i][j];
    }
};

}  // namespace

BracketPolynomial kauffman_bracket(const Diagram& d) {
    for (const Crossing& c : d.crossings)
        if (c.multiplicity != 2)
            throw error(error::kind::precondition,
                        "kauffman_bracket requires a standard diagram (multiplicity 2)");
    int c = static_cast<int>(d.crossings.size());
    int guard = bracket_guard();
    if (c > guard)
        throw error(error::kind::resource_guard,
                    "state sum guard exceeded: " + std::to_string(c) + " > " +
                        std::to_string(guard));
    BracketPolynomial out;
    if (c == 0) {
        out.bracket.add(0, 1);  // crossingless unknot
        return out;
    }
    require_valid(d);

    int ends = 4 * c;
    std::vector<int> edge_partner(ends, -1);
    for (const Edge& e : d.edges) {
        int u = 4 * e.a.crossing + e.a.slot;
        int v = 4 * e.b.crossing + e.b.slot;
        edge_partner[u] = v;
        edge_partner[v] = u;
    }
    // arc[smoothing][crossing][slot]
    std::vector<std::array<int, 4>> arcA(c), arcB(c);
    for (int i = 0; i < c; ++i) {
        bool over0 = d.crossings[i].heights[0] < d.crossings[i].heights[1];
        arcA[i] = smoothing(over0, true);
        arcB[i] = smoothing(over0, false);
    }

    auto run = [&](uint64_t begin, uint64_t end, Tally& tally) {
        std::array<uint64_t, 2> visited{};
        for (uint64_t state = begin; state < end; ++state) {
            visited[0] = visited[1] = 0;
            int loops = 0;
            for (int start = 0; start < ends; ++start) {
                if (visited[start >> 6] & (1ull << (start & 63))) continue;
                ++loops;
                int e = start;
                do {
                    visited[e >> 6] |= 1ull << (e & 63);
                    int ci = e >> 2, s = e & 3;
                    int arc_to = (state >> ci) & 1 ? arcA[ci][s] : arcB[ci][s];
                    int via = (ci << 2) | arc_to;
                    visited[via >> 6] |= 1ull << (via & 63);
                    e = edge_partner[via];
                } while (e != start);
            }
            int a = static_cast<int>(__builtin_popcountll(state));
            tally.t[a][loops] += 1;
        }
    };

    uint64_t total = 1ull << c;
    Tally tally(c);
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (c >= 18 && hw > 1) {
        unsigned nthreads = std::min<uint64_t>(hw, 8);
        std::vector<Tally> parts(nthreads, Tally(c));
        std::vector<std::thread> threads;
        uint64_t chunk = total / nthreads;
        for (unsigned t = 0; t < nthreads; ++t) {
            uint64_t b = t * chunk;
            uint64_t e = (t + 1 == nthreads) ? total : b + chunk;
            threads.emplace_back([&, b, e, t] { run(b, e, parts[t]); });
        }
        for (auto& t : threads) t.join();
        for (auto& p : parts) tally.merge(p);
    } else {
        run(0, total, tally);
    }

    // delta^k for loop value -A^2 - A^-2
    std::vector<LaurentPoly> delta(2 * c + 2);
    delta[0].add(0, 1);
    for (size_t k = 1; k < delta.size(); ++k) {
        for (auto& [e, v] : delta[k - 1].coeffs) {
            delta[k].add(e + 2, -v);
            delta[k].add(e - 2, -v);
        }
    }
    for (int a = 0; a <= c; ++a)
        for (int loops = 1; loops < 2 * c + 2; ++loops) {
            long long n = tally.t[a][loops];
            if (!n) continue;
            for (auto& [e, v] : delta[loops - 1].coeffs)
                out.bracket.add(e + 2 * a - c, v * n);
        }

    // Writhe from orientations induced by the component trace.
    std::vector<std::array<int, 2>> entry(c, {-1, -1});  // entry slot per pass
    for (const StrandCycle& cyc : trace_components(d))
        for (const Endpoint& e : cyc)
            entry[e.crossing][e.slot % 2] = e.slot;
    int w = 0;
    for (int i = 0; i < c; ++i) {
        bool over0 = d.crossings[i].heights[0] < d.crossings[i].heights[1];
        int over_exit = (entry[i][over0 ? 0 : 1] + 2) % 4;
        int under_exit = (entry[i][over0 ? 1 : 0] + 2) % 4;
        w += (under_exit == (over_exit + 1) % 4) ? 1 : -1;
    }
    out.writhe = w;
    return out;
}

Certificate certify_rewrite(const Diagram& before, const Diagram& after) {
    Certificate cert;
    long long cb = 0, ca = 0;
    for (const Crossing& c : before.crossings)
        cb += static_cast<long long>(c.multiplicity) * (c.multiplicity - 1) / 2;
    for (const Crossing& c : after.crossings)
        ca += static_cast<long long>(c.multiplicity) * (c.multiplicity - 1) / 2;
    int guard = bracket_guard();
    if (cb > guard || ca > guard) {
        cert.status = Certificate::Status::unchecked;
        cert.detail = "unchecked: too large (" + std::to_string(cb) + " vs " +
                      std::to_string(ca) + " standard crossings, guard " +
                      std::to_string(guard) + ")";
        return cert;
    }
    BracketPolynomial pb = kauffman_bracket(expand_to_standard(before));
    BracketPolynomial pa = kauffman_bracket(expand_to_standard(after));
    if (pb.normalized() == pa.normalized()) {
        cert.status = Certificate::Status::pass;
        cert.detail = "normalized bracket " + pb.normalized().str();
    } else {
        cert.status = Certificate::Status::fail;
        cert.detail = "bracket mismatch: before " + pb.normalized().str() +
                      " vs after " + pa.normalized().str();
    }
    return cert;
}

}  // namespace mcd
