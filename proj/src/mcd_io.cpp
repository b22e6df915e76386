#include "mcd/mcd_io.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <map>
#include <sstream>

#include <json.hpp>

#include "mcd/faces.hpp"

namespace mcd {

using nlohmann::json;

Diagram parse_diagram(const std::string& bytes) {
    json j;
    try {
        j = json::parse(bytes);
    } catch (const json::parse_error& e) {
        throw error(error::kind::parse,
                    "malformed .mcd at byte " + std::to_string(e.byte) + ": " + e.what());
    }
    if (!j.is_object()) throw error(error::kind::parse, ".mcd root must be an object");
    for (auto& [key, _] : j.items()) {
        if (key != "version" && key != "crossings" && key != "edges" && key != "outer")
            throw error(error::kind::parse, "unknown top-level key: " + key);
    }
    if (!j.contains("version") || !j["version"].is_number_integer() ||
        j["version"].get<int>() != 1)
        throw error(error::kind::parse, "missing or unsupported version (expected 1)");

    Diagram d;
    for (const json& jc : j.value("crossings", json::array())) {
        if (!jc.is_object()) throw error(error::kind::parse, "crossing must be an object");
        Crossing c;
        c.id = jc.value("id", std::string());
        if (c.id.empty()) throw error(error::kind::parse, "crossing without id");
        if (!jc.contains("multiplicity") || !jc["multiplicity"].is_number_integer())
            throw error(error::kind::parse, c.id + ": multiplicity must be an integer");
        c.multiplicity = jc["multiplicity"].get<int>();
        if (!jc.contains("heights") || !jc["heights"].is_array())
            throw error(error::kind::parse, c.id + ": heights must be an array");
        for (const json& h : jc["heights"]) {
            if (!h.is_number_integer())
                throw error(error::kind::parse, c.id + ": heights must be integers");
            c.heights.push_back(h.get<int>());
        }
        d.crossings.push_back(std::move(c));
    }

    auto parse_endpoint = [&](const json& je) -> Endpoint {
        if (!je.is_array() || je.size() != 2 || !je[0].is_string() ||
            !je[1].is_number_integer())
            throw error(error::kind::parse, "endpoint must be [crossing-id, slot]");
        int c = d.crossing_index(je[0].get<std::string>());
        if (c < 0)
            throw error(error::kind::parse,
                        "endpoint references unknown crossing " + je[0].get<std::string>());
        return Endpoint{c, je[1].get<int>()};
    };
    for (const json& je : j.value("edges", json::array())) {
        if (!je.is_array() || je.size() != 2)
            throw error(error::kind::parse, "edge must pair two endpoints");
        d.edges.push_back(Edge{parse_endpoint(je[0]), parse_endpoint(je[1])});
    }
    if (j.contains("outer")) {
        Endpoint e = parse_endpoint(j["outer"]);
        d.outer = Corner{e.crossing, e.slot};
    }

    ValidationReport r = validate(d);
    if (!r.ok) {
        std::string msg = "validation failed:";
        for (const std::string& v : r.violations) msg += " [" + v + "]";
        throw error(error::kind::validation, msg);
    }
    return d;
}

std::string emit_diagram(const Diagram& d) {
    std::vector<int> order(d.crossings.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return d.crossings[a].id < d.crossings[b].id;
    });

    json jc = json::array();
    for (int i : order) {
        const Crossing& c = d.crossings[i];
        jc.push_back({{"id", c.id},
                      {"multiplicity", c.multiplicity},
                      {"heights", c.heights}});
    }

    auto key = [&](const Endpoint& e) {
        return std::make_pair(d.crossings[e.crossing].id, e.slot);
    };
    std::vector<std::pair<Endpoint, Endpoint>> edges;
    for (const Edge& e : d.edges) {
        Endpoint a = e.a, b = e.b;
        if (key(b) < key(a)) std::swap(a, b);
        edges.emplace_back(a, b);
    }
    std::sort(edges.begin(), edges.end(),
              [&](const auto& x, const auto& y) {
                  return std::make_pair(key(x.first), key(x.second)) <
                         std::make_pair(key(y.first), key(y.second));
              });
    json je = json::array();
    for (const auto& [a, b] : edges)
        je.push_back({{d.crossings[a.crossing].id, a.slot},
                      {d.crossings[b.crossing].id, b.slot}});

    json j{{"version", 1}, {"crossings", jc}, {"edges", je}};
    if (d.outer)
        j["outer"] = {d.crossings[d.outer->crossing].id, d.outer->gap};
    return j.dump(2) + "\n";
}

Diagram parse_pd(const std::string& text) {
    // Accepts X[a,b,c,d] or X(a,b,c,d), whitespace/comma separated.
    std::vector<std::array<int, 4>> xs;
    size_t i = 0;
    while (i < text.size()) {
        char ch = text[i];
        if (ch == 'X' || ch == 'x') {
            ++i;
            while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
            if (i >= text.size() || (text[i] != '[' && text[i] != '('))
                throw error(error::kind::parse, "PD: expected [ after X");
            char close = text[i] == '[' ? ']' : ')';
            ++i;
            std::array<int, 4> t{};
            for (int k = 0; k < 4; ++k) {
                while (i < text.size() &&
                       !std::isdigit(static_cast<unsigned char>(text[i])) && text[i] != close)
                    ++i;
                size_t start = i;
                while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
                if (start == i) throw error(error::kind::parse, "PD: expected label");
                t[k] = std::stoi(text.substr(start, i - start));
            }
            while (i < text.size() && text[i] != close) ++i;
            if (i >= text.size()) throw error(error::kind::parse, "PD: unterminated tuple");
            ++i;
            xs.push_back(t);
        } else if (std::isspace(static_cast<unsigned char>(ch)) || ch == ',') {
            ++i;
        } else {
            throw error(error::kind::parse, std::string("PD: unexpected character '") + ch + "'");
        }
    }
    if (xs.empty()) throw error(error::kind::parse, "PD: no crossings");

    Diagram d;
    for (size_t c = 0; c < xs.size(); ++c) {
        Crossing x;
        x.id = "X" + std::to_string(c + 1);
        x.multiplicity = 2;
        x.heights = {2, 1};  // pass (a,c) under, pass (b,d) over
        d.crossings.push_back(std::move(x));
    }
    std::map<int, std::vector<Endpoint>> by_label;
    for (size_t c = 0; c < xs.size(); ++c)
        for (int s = 0; s < 4; ++s)
            by_label[xs[c][s]].push_back(Endpoint{static_cast<int>(c), s});
    for (auto& [label, ends] : by_label) {
        if (ends.size() != 2)
            throw error(error::kind::parse,
                        "PD: label " + std::to_string(label) + " used " +
                            std::to_string(ends.size()) + " times (need 2)");
        d.edges.push_back(Edge{ends[0], ends[1]});
    }
    require_valid(d);
    return d;
}

uint64_t fnv1a64(const std::string& bytes) {
    uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hex64(uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i) {
        s[i] = digits[v & 0xf];
        v >>= 4;
    }
    return s;
}

}  // namespace mcd
