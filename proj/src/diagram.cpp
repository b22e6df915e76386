#include "mcd/diagram.hpp"

namespace mcd {

int Diagram::crossing_index(const std::string& id) const {
    for (size_t i = 0; i < crossings.size(); ++i)
        if (crossings[i].id == id) return static_cast<int>(i);
    return -1;
}

std::string endpoint_name(const Diagram& d, const Endpoint& e) {
    if (e.crossing < 0 || e.crossing >= static_cast<int>(d.crossings.size()))
        return "?." + std::to_string(e.slot);
    return d.crossings[e.crossing].id + "." + std::to_string(e.slot);
}

std::string corner_name(const Diagram& d, const Corner& c) {
    return d.crossings[c.crossing].id + ":g" + std::to_string(c.gap);
}

SlotMap::SlotMap(const Diagram& d) {
    at_.resize(d.crossings.size());
    for (size_t c = 0; c < d.crossings.size(); ++c)
        at_[c].assign(d.crossings[c].slots(), -1);
    for (size_t i = 0; i < d.edges.size(); ++i) {
        for (const Endpoint* e : {&d.edges[i].a, &d.edges[i].b}) {
            if (e->crossing < 0 || e->crossing >= static_cast<int>(d.crossings.size()))
                throw error(error::kind::structural,
                            "edge endpoint references unknown crossing");
            if (e->slot < 0 || e->slot >= d.crossings[e->crossing].slots())
                throw error(error::kind::structural,
                            "edge endpoint slot out of range: " + endpoint_name(d, *e));
            int& cell = at_[e->crossing][e->slot];
            if (cell != -1)
                throw error(error::kind::structural,
                            "slot matched twice: " + endpoint_name(d, *e));
            cell = static_cast<int>(i);
        }
    }
    for (size_t c = 0; c < at_.size(); ++c)
        for (size_t s = 0; s < at_[c].size(); ++s)
            if (at_[c][s] == -1)
                throw error(error::kind::structural,
                            "slot unmatched: " + endpoint_name(d, {static_cast<int>(c),
                                                                   static_cast<int>(s)}));
}

std::vector<std::string> matching_violations(const Diagram& d) {
    std::vector<std::string> out;
    std::vector<std::vector<int>> seen(d.crossings.size());
    for (size_t c = 0; c < d.crossings.size(); ++c)
        seen[c].assign(d.crossings[c].slots(), 0);
    for (const Edge& e : d.edges) {
        for (const Endpoint* p : {&e.a, &e.b}) {
            if (p->crossing < 0 || p->crossing >= static_cast<int>(d.crossings.size())) {
                out.push_back("edge endpoint references unknown crossing");
                continue;
            }
            if (p->slot < 0 || p->slot >= d.crossings[p->crossing].slots()) {
                out.push_back("slot out of range: " + endpoint_name(d, *p));
                continue;
            }
            if (++seen[p->crossing][p->slot] == 2)
                out.push_back("slot matched twice: " + endpoint_name(d, *p));
        }
        if (e.a == e.b) out.push_back("edge repeats an endpoint: " + endpoint_name(d, e.a));
    }
    for (size_t c = 0; c < seen.size(); ++c)
        for (size_t s = 0; s < seen[c].size(); ++s)
            if (seen[c][s] == 0)
                out.push_back("slot unmatched: " +
                              endpoint_name(d, {static_cast<int>(c), static_cast<int>(s)}));
    return out;
}

}  // namespace mcd
