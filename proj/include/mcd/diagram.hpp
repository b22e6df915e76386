#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mcd {

// Error taxonomy shared by all modules. CLI maps kinds to exit codes.
class error : public std::runtime_error {
public:
    enum class kind {
        parse,
        validation,
        structural,
        precondition,
        pattern_mismatch,
        witness_mismatch,
        resource_guard,
        search_failure,
        invariant_violation,
        pipeline_stuck,
    };

    error(kind k, const std::string& msg) : std::runtime_error(msg), kind_(k) {}
    kind what_kind() const { return kind_; }

private:
    kind kind_;
};

// A multi-crossing: m strands meeting at one point. Slots 0..2m-1 are the
// strand ends in counterclockwise order; the pass entering at slot i leaves
// at slot i+m (mod 2m). heights[i] is the vertical level of pass i (the pass
// on slots {i, i+m}), with 1 = topmost.
struct Crossing {
    std::string id;
    int multiplicity = 2;
    std::vector<int> heights;

    int slots() const { return multiplicity > 0 ? 2 * multiplicity : 0; }
};

// Wedge between slot `gap` and slot `gap+1 (mod 2m)` of a crossing.
struct Corner {
    int crossing = -1;  // index into Diagram::crossings
    int gap = -1;

    friend bool operator==(const Corner& a, const Corner& b) {
        return a.crossing == b.crossing && a.gap == b.gap;
    }
    friend auto operator<=>(const Corner&, const Corner&) = default;
};

struct Endpoint {
    int crossing = -1;
    int slot = -1;

    friend bool operator==(const Endpoint&, const Endpoint&) = default;
    friend auto operator<=>(const Endpoint&, const Endpoint&) = default;
};

struct Edge {
    Endpoint a, b;

    bool is_loop() const { return a.crossing == b.crossing; }
    Endpoint other(const Endpoint& e) const { return e == a ? b : a; }
};

struct Diagram {
    std::vector<Crossing> crossings;
    std::vector<Edge> edges;
    std::optional<Corner> outer;

    int crossing_index(const std::string& id) const;  // -1 if absent
    const Crossing& at(int c) const { return crossings[c]; }
    int slots(int c) const { return crossings[c].slots(); }
    bool empty() const { return crossings.empty(); }

    // Partner slot of the pass through (c, s).
    int pass_exit(int c, int s) const {
        int n = slots(c);
        return (s + crossings[c].multiplicity) % n;
    }
};

// Slot -> edge lookup. Throws structural errors on incomplete/duplicate
// matchings, so face and component walks can assume totality.
class SlotMap {
public:
    explicit SlotMap(const Diagram& d);

    int edge_at(int c, int s) const { return at_[c][s]; }
    Endpoint other_end(const Diagram& d, int c, int s) const {
        const Edge& e = d.edges[at_[c][s]];
        return e.other(Endpoint{c, s});
    }

private:
    std::vector<std::vector<int>> at_;
};

// Builds a SlotMap but reports problems as a list instead of throwing.
std::vector<std::string> matching_violations(const Diagram& d);

std::string endpoint_name(const Diagram& d, const Endpoint& e);
std::string corner_name(const Diagram& d, const Corner& c);

}  // namespace mcd
