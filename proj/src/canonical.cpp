#include "mcd/canonical.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "mcd/rewrite.hpp"

namespace mcd {

namespace {

// Breadth-first relabeling code from one start dart. `dir` is +1 for the
// given orientation, -1 for the mirror.
std::vector<int> bfs_code(const Diagram& d, const SlotMap& sm, int c0, int s0, int dir) {
    int nc = static_cast<int>(d.crossings.size());
    std::vector<int> num(nc, -1), ref(nc, -1), order;
    num[c0] = 0;
    ref[c0] = s0;
    order.push_back(c0);
    std::vector<int> code;
    code.reserve(4 * d.edges.size());
    for (size_t qi = 0; qi < order.size(); ++qi) {
        int x = order[qi];
        int n = d.slots(x);
        code.push_back(d.crossings[x].multiplicity);
        for (int k = 0; k < n; ++k) {
            int s = ((ref[x] + dir * k) % n + n) % n;
            Endpoint p = sm.other_end(d, x, s);
            if (num[p.crossing] == -1) {
                num[p.crossing] = static_cast<int>(order.size());
                ref[p.crossing] = p.slot;
                order.push_back(p.crossing);
            }
            int pn = d.slots(p.crossing);
            int rel = ((p.slot - ref[p.crossing]) * dir % pn + pn) % pn;
            code.push_back(num[p.crossing]);
            code.push_back(rel);
        }
    }
    return code;
}

std::string serialize_code(const std::vector<int>& code) {
    std::ostringstream os;
    for (size_t i = 0; i < code.size(); ++i) {
        if (i) os << '.';
        os << code[i];
    }
    return os.str();
}

struct Labeling {
    std::vector<int> num, ref;  // per crossing
    int dir = 1;
};

Labeling bfs_labeling(const Diagram& d, const SlotMap& sm, int c0, int s0, int dir) {
    Labeling L;
    int nc = static_cast<int>(d.crossings.size());
    L.num.assign(nc, -1);
    L.ref.assign(nc, -1);
    L.dir = dir;
    std::vector<int> order;
    L.num[c0] = 0;
    L.ref[c0] = s0;
    order.push_back(c0);
    for (size_t qi = 0; qi < order.size(); ++qi) {
        int x = order[qi];
        int n = d.slots(x);
        for (int k = 0; k < n; ++k) {
            int s = ((L.ref[x] + dir * k) % n + n) % n;
            Endpoint p = sm.other_end(d, x, s);
            if (L.num[p.crossing] == -1) {
                L.num[p.crossing] = static_cast<int>(order.size());
                L.ref[p.crossing] = p.slot;
                order.push_back(p.crossing);
            }
        }
    }
    return L;
}

}  // namespace

std::string canonical_key(const Diagram& d, bool allow_reflection) {
    if (d.empty()) return "unknot";
    SlotMap sm(d);
    std::vector<int> best;
    bool got = false;
    for (size_t c = 0; c < d.crossings.size(); ++c) {
        for (int s = 0; s < d.slots(static_cast<int>(c)); ++s) {
            for (int dir : {1, -1}) {
                if (dir == -1 && !allow_reflection) continue;
                std::vector<int> code = bfs_code(d, sm, static_cast<int>(c), s, dir);
                if (!got || code < best) {
                    best = std::move(code);
                    got = true;
                }
            }
        }
    }
    return serialize_code(best);
}

int face_orbit_count(const Diagram& d, bool allow_reflection) {
    if (d.empty()) return 1;
    SlotMap sm(d);
    FaceSet fs = trace_faces(d);
    std::vector<int> code0 = bfs_code(d, sm, 0, 0, 1);
    Labeling L0 = bfs_labeling(d, sm, 0, 0, 1);

    // union-find over faces
    std::vector<int> parent(fs.count());
    for (size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };

    std::vector<int> inv_num0(d.crossings.size());
    for (size_t c = 0; c < d.crossings.size(); ++c) inv_num0[L0.num[c]] = static_cast<int>(c);

    for (size_t c = 0; c < d.crossings.size(); ++c) {
        for (int s = 0; s < d.slots(static_cast<int>(c)); ++s) {
            for (int dir : {1, -1}) {
                if (dir == -1 && !allow_reflection) continue;
                if (bfs_code(d, sm, static_cast<int>(c), s, dir) != code0) continue;
                Labeling L = bfs_labeling(d, sm, static_cast<int>(c), s, dir);
                std::vector<int> inv_num(d.crossings.size());
                for (size_t x = 0; x < d.crossings.size(); ++x)
                    inv_num[L.num[x]] = static_cast<int>(x);
                // The isomorphism maps L0-crossing k to L-crossing k; a slot at
                // offset t from ref maps to offset dir * t.
                for (size_t x0 = 0; x0 < d.crossings.size(); ++x0) {
                    int x1 = inv_num[L0.num[x0]];
                    int n = d.slots(static_cast<int>(x0));
                    for (int g = 0; g < n; ++g) {
                        int t = ((g - L0.ref[x0]) % n + n) % n;
                        int slot1 = ((L.ref[x1] + dir * t) % n + n) % n;
                        int gap1 = dir == 1 ? slot1 : ((slot1 - 1) % n + n) % n;
                        int fa = find(fs.face_of({static_cast<int>(x0), g}));
                        int fb = find(fs.face_of({x1, gap1}));
                        if (fa != fb) parent[fa] = fb;
                    }
                }
            }
        }
    }
    std::set<int> roots;
    for (int f = 0; f < fs.count(); ++f) roots.insert(find(f));
    return static_cast<int>(roots.size());
}

namespace {

// Raw matching explorer used by enumerate_shadows. Ends are numbered
// crossing * 2m + slot.
struct MatchSearch {
    int c, m, n2, ends;
    EnumFilters filters;
    std::vector<int> partner;
    std::vector<int> pass_parent, pass_size;
    std::vector<std::pair<int, int>> undo;
    int edges_placed = 0;

    std::map<std::string, Shadow>* result = nullptr;
    std::mutex* result_mu = nullptr;

    MatchSearch(int c_, int m_, const EnumFilters& f)
        : c(c_), m(m_), n2(2 * m_), ends(c_ * 2 * m_), filters(f) {
        partner.assign(ends, -1);
        pass_parent.resize(c * m);
        pass_size.assign(c * m, 1);
        for (size_t i = 0; i < pass_parent.size(); ++i)
            pass_parent[i] = static_cast<int>(i);
    }

    int pass_of(int end) const { return (end / n2) * m + (end % n2) % m; }
    int find(int x) {
        while (pass_parent[x] != x) x = pass_parent[x];
        return x;
    }
    bool link(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (pass_size[a] < pass_size[b]) std::swap(a, b);
        pass_parent[b] = a;
        pass_size[a] += pass_size[b];
        undo.emplace_back(a, b);
        return true;
    }
    void unlink() {
        auto [a, b] = undo.back();
        undo.pop_back();
        pass_parent[b] = b;
        pass_size[a] -= pass_size[b];
    }

    void place(int u, int v) {
        partner[u] = v;
        partner[v] = u;
        ++edges_placed;
    }
    void unplace(int u, int v) {
        partner[u] = partner[v] = -1;
        --edges_placed;
    }

    bool leaf_spherical() const {
        // Count face orbits of e -> partner[next slot].
        int F = 0;
        std::vector<char> seen(ends, 0);
        for (int s = 0; s < ends; ++s) {
            if (seen[s]) continue;
            ++F;
            int e = s;
            do {
                seen[e] = 1;
                int cr = e / n2, sl = e % n2;
                e = partner[cr * n2 + (sl + 1) % n2];
            } while (e != s);
        }
        int E = ends / 2;
        return F == E - c + 2;
    }

    bool leaf_classes_ok() const {
        if (!filters.monogon_classes && !filters.require_equal_class) return true;
        std::vector<MonogonClass> cls(c);
        for (int x = 0; x < c; ++x) {
            std::vector<int> gaps;
            for (int g = 0; g < n2; ++g) {
                // monogon wedge: the face walk from (x,g) returns immediately
                int e = x * n2 + (g + 1) % n2;
                if (partner[e] == x * n2 + g) gaps.push_back(g);
            }
            MonogonClass k;
            if (gaps.empty())
                k = MonogonClass::none;
            else if (gaps.size() == 1)
                k = MonogonClass::one;
            else if (gaps.size() == 2) {
                int diff = gaps[1] - gaps[0];
                k = (diff == 4 || diff == n2 - 4) ? MonogonClass::two_almost_opposite
                                                  : MonogonClass::two_other;
            } else
                k = MonogonClass::three_plus;
            cls[x] = k;
            if (filters.monogon_classes && !filters.monogon_classes->count(k)) return false;
        }
        if (filters.require_equal_class)
            for (int x = 1; x < c; ++x)
                if (cls[x] != cls[0]) return false;
        return true;
    }

    void emit_leaf() {
        if (!leaf_spherical() || !leaf_classes_ok()) return;
        Diagram d;
        for (int x = 0; x < c; ++x) {
            Crossing cr;
            cr.id = std::string(1, static_cast<char>('A' + x));
            cr.multiplicity = m;
            for (int i = 1; i <= m; ++i) cr.heights.push_back(i);
            d.crossings.push_back(std::move(cr));
        }
        for (int e = 0; e < ends; ++e) {
            if (partner[e] < e) continue;
            d.edges.push_back(Edge{{e / n2, e % n2}, {partner[e] / n2, partner[e] % n2}});
        }
        Shadow s;
        s.key = canonical_key(d, true);
        s.chiral_key = canonical_key(d, false);
        s.diagram = std::move(d);
        std::scoped_lock lock(*result_mu);
        result->emplace(s.key, std::move(s));
    }

    void dfs(int depth) {
        int u = -1;
        for (int e = 0; e < ends; ++e)
            if (partner[e] == -1) {
                u = e;
                break;
            }
        if (u == -1) {
            emit_leaf();
            return;
        }
        for (int v = u + 1; v < ends; ++v) {
            if (partner[v] != -1) continue;
            if (depth == 0 && !root_allowed(u, v)) continue;
            bool closes = find(pass_of(u)) == find(pass_of(v));
            if (filters.single_component && closes && edges_placed + 1 < ends / 2)
                continue;  // premature strand cycle
            bool linked = !closes && link(pass_of(u), pass_of(v));
            place(u, v);
            dfs(depth + 1);
            unplace(u, v);
            if (linked) unlink();
        }
    }

    // Symmetry reduction at the root: every sphere-isomorphism class of
    // matchings has a representative where end (A,0) is matched to (A,d)
    // with d <= m, or to (B,0).
    bool root_allowed(int u, int v) const {
        if (u != 0) return true;
        if (v <= m) return true;
        if (c >= 2 && v == n2) return true;
        return false;
    }
};

}  // namespace

std::vector<Shadow> enumerate_shadows(int crossing_count, int multiplicity,
                                      const EnumFilters& filters) {
    if (crossing_count < 1 || multiplicity < 2)
        throw error(error::kind::precondition, "need at least one crossing, multiplicity 2");
    if (crossing_count * multiplicity > 12)
        throw error(error::kind::resource_guard,
                    "enumeration guard: more than 12 strand passes");

    std::map<std::string, Shadow> dedup;
    std::mutex mu;

    // Branch on the root edge, then run branches on a small thread pool.
    std::vector<std::pair<int, int>> roots;
    {
        MatchSearch probe(crossing_count, multiplicity, filters);
        for (int v = 1; v < probe.ends; ++v)
            if (probe.root_allowed(0, v)) roots.emplace_back(0, v);
    }
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    unsigned nthreads = std::min<unsigned>(hw, roots.size());
    std::mutex queue_mu;
    size_t next = 0;
    auto worker = [&]() {
        for (;;) {
            size_t job;
            {
                std::scoped_lock lock(queue_mu);
                if (next >= roots.size()) return;
                job = next++;
            }
            MatchSearch ms(crossing_count, multiplicity, filters);
            ms.result = &dedup;
            ms.result_mu = &mu;
            auto [u, v] = roots[job];
            bool closes = ms.find(ms.pass_of(u)) == ms.find(ms.pass_of(v));
            if (filters.single_component && closes && ms.ends > 2) continue;
            if (!closes) ms.link(ms.pass_of(u), ms.pass_of(v));
            ms.place(u, v);
            ms.dfs(1);
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    std::vector<Shadow> out;
    out.reserve(dedup.size());
    for (auto& [k, s] : dedup) out.push_back(std::move(s));
    return out;
}

Diagram mirror_diagram(const Diagram& d) {
    Diagram m = d;
    for (Edge& e : m.edges) {
        int na = m.slots(e.a.crossing), nb = m.slots(e.b.crossing);
        e.a.slot = (na - e.a.slot) % na;
        e.b.slot = (nb - e.b.slot) % nb;
    }
    return m;
}

ConventionCounts count_conventions(const std::vector<Shadow>& shadows) {
    // Shadows arrive deduplicated by the reflective key. A reflective class
    // splits into one chiral class (amphichiral) or a mirror pair.
    ConventionCounts cc;
    cc.sphere_reflective = static_cast<int>(shadows.size());
    for (const Shadow& s : shadows) {
        std::string mirror_key = canonical_key(mirror_diagram(s.diagram), false);
        bool amphichiral = mirror_key == s.chiral_key;
        int orbits_full = face_orbit_count(s.diagram, true);
        int orbits_plus = face_orbit_count(s.diagram, false);
        cc.sphere_chiral += amphichiral ? 1 : 2;
        cc.plane_reflective += orbits_full;
        cc.plane_chiral += amphichiral ? orbits_plus : 2 * orbits_plus;
    }
    return cc;
}

Corollary210Report corollary_2_10_suite() {
    EnumFilters f;
    f.single_component = true;
    f.monogon_classes = std::set<MonogonClass>{MonogonClass::none, MonogonClass::one,
                                               MonogonClass::two_almost_opposite};
    f.require_equal_class = true;
    std::vector<Shadow> shadows = enumerate_shadows(2, 5, f);

    Corollary210Report r;
    r.shadows = static_cast<int>(shadows.size());
    r.counts = count_conventions(shadows);
    if (r.counts.sphere_reflective == 15) r.convention_with_15 = "sphere+reflection";
    else if (r.counts.sphere_chiral == 15) r.convention_with_15 = "sphere (chiral)";
    else if (r.counts.plane_reflective == 15) r.convention_with_15 = "plane+reflection";
    else if (r.counts.plane_chiral == 15) r.convention_with_15 = "plane (chiral)";

    const std::vector<std::vector<int>> samples = {
        {1, 2, 3, 4, 5}, {5, 4, 3, 2, 1}, {2, 4, 1, 5, 3}, {3, 1, 5, 2, 4}};

    for (const Shadow& s : shadows) {
        std::vector<ConnectionWitness> ws = find_acc_occ(s.diagram);
        if (ws.empty()) {
            r.failures.push_back(s.key + ": no ACC/OCC witness");
            continue;
        }
        ++r.with_witness;
        bool reduced_ok = true;
        for (size_t hi = 0; hi < samples.size(); ++hi) {
            Diagram before = s.diagram;
            before.crossings[0].heights = samples[hi];
            before.crossings[1].heights = samples[(hi + 1) % samples.size()];
            try {
                Diagram after = reduce_via_witness(before, ws[0]);
                after = uniformize(after, 9);
                if (after.crossings.size() != 1 ||
                    after.crossings[0].multiplicity != 9 ||
                    validate(after).face_count != 10) {
                    reduced_ok = false;
                    r.failures.push_back(s.key + ": reduction shape wrong");
                    break;
                }
                Certificate cert = certify_rewrite(before, after);
                if (cert.failed()) {
                    reduced_ok = false;
                    r.failures.push_back(s.key + ": " + cert.detail);
                    break;
                }
                if (cert.passed()) {
                    ++r.certificates_checked;
                    ++r.certificates_passed;
                } else {
                    ++r.certificates_unchecked;
                }
            } catch (const error& e) {
                reduced_ok = false;
                r.failures.push_back(s.key + ": " + e.what());
                break;
            }
        }
        if (reduced_ok) ++r.reduced_to_single_9;
    }
    return r;
}

}  // namespace mcd
