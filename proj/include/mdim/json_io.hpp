#ifndef MDIM_JSON_IO_HPP
#define MDIM_JSON_IO_HPP

#include <cctype>
#include <cstdio>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "mdim/finite_graph.hpp"
#include "mdim/rayed.hpp"
#include "mdim/tail_product.hpp"

namespace mdim {

using nlohmann::json;

/// Marker for the infinite comb graph (spine plus one leaf per spine vertex).
struct CombGraph {};

/// Marker for a cartesian product of two infinite graphs (dimension is
/// infinite; nothing further is representable).
struct InfiniteProduct {};

using GraphInput = std::variant<FiniteGraph, RayedGraph, TailProduct, CombGraph, InfiniteProduct>;

// Graph JSON:
//   {"type":"finite","n":N,"edges":[[u,v],...]}
//   {"type":"family","kind":"path|cycle|complete","n":N}
//   {"type":"product","left":<graph>,"right":<graph>}
//   {"type":"rayed","core":<finite graph>,"rays":[attach,...]}
//   {"type":"tail_product","base":"one_way"|"two_way","H":<finite graph>}
//   {"type":"comb"}

namespace detail {

inline bool is_infinite_type(const json& j) {
    const std::string t = j.value("type", "");
    return t == "rayed" || t == "tail_product" || t == "comb";
}

} // namespace detail

inline FiniteGraph parse_finite_graph(const json& j) {
    const std::string type = j.value("type", "");
    if (type == "finite") {
        if (!j.contains("n") || !j.contains("edges"))
            throw InputError("finite graph needs \"n\" and \"edges\"");
        std::vector<std::pair<int, int>> edges;
        for (const auto& e : j.at("edges")) {
            if (!e.is_array() || e.size() != 2) throw InputError("edge must be a pair");
            edges.emplace_back(e[0].get<int>(), e[1].get<int>());
        }
        return build_graph(j.at("n").get<int>(), edges);
    }
    if (type == "family")
        return make_family(family_from_string(j.value("kind", "")), j.value("n", 0));
    if (type == "product")
        return cartesian_product(parse_finite_graph(j.at("left")),
                                 parse_finite_graph(j.at("right")));
    throw InputError("expected a finite graph, got type \"" + type + "\"");
}

inline GraphInput parse_graph(const json& j) {
    if (!j.is_object()) throw InputError("graph must be a JSON object");
    const std::string type = j.value("type", "");
    if (type == "rayed") {
        FiniteGraph core = parse_finite_graph(j.at("core"));
        std::vector<int> rays;
        for (const auto& r : j.at("rays")) rays.push_back(r.get<int>());
        return RayedGraph(std::move(core), std::move(rays));
    }
    if (type == "tail_product") {
        const std::string base = j.value("base", "");
        if (base != "one_way" && base != "two_way")
            throw InputError("tail product base must be one_way or two_way");
        return TailProduct(base == "one_way" ? TailBase::one_way : TailBase::two_way,
                           parse_finite_graph(j.at("H")));
    }
    if (type == "comb") return CombGraph{};
    if (type == "product" && detail::is_infinite_type(j.at("left")) &&
        detail::is_infinite_type(j.at("right")))
        return InfiniteProduct{};
    return parse_finite_graph(j);
}

// Landmark set grammar: comma-separated tokens.
//   finite graphs:  bare ids                 "0,3,5"
//   rayed graphs:   c:<id> | r:<ray>:<depth> "c:0,r:1:2"
//   tail products:  <level>:<h>              "0:0,-2:3"
//   comb:           u:<i> | v:<i>            "u:0,v:2"

namespace detail {

inline std::vector<std::string> split_tokens(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

inline int parse_int(const std::string& s) {
    try {
        size_t pos = 0;
        const int v = std::stoi(s, &pos);
        if (pos != s.size()) throw InputError("trailing characters in number: " + s);
        return v;
    } catch (const std::invalid_argument&) {
        throw InputError("expected a number, got: " + s);
    } catch (const std::out_of_range&) {
        throw InputError("number out of range: " + s);
    }
}

inline std::vector<std::string> split_colon(const std::string& tok) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : tok) {
        if (c == ':') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    return parts;
}

} // namespace detail

inline std::vector<int> parse_finite_set(const std::string& s) {
    std::vector<int> out;
    for (const auto& tok : detail::split_tokens(s)) out.push_back(detail::parse_int(tok));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

inline std::vector<RayedVertex> parse_rayed_set(const std::string& s) {
    std::vector<RayedVertex> out;
    for (const auto& tok : detail::split_tokens(s)) {
        const auto parts = detail::split_colon(tok);
        if (parts.size() == 2 && parts[0] == "c")
            out.push_back(RayedVertex::core(detail::parse_int(parts[1])));
        else if (parts.size() == 3 && parts[0] == "r")
            out.push_back(
                RayedVertex::ray(detail::parse_int(parts[1]), detail::parse_int(parts[2])));
        else
            throw InputError("rayed vertex token must be c:<id> or r:<ray>:<depth>: " + tok);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

inline std::vector<TPVertex> parse_tail_set(const std::string& s) {
    std::vector<TPVertex> out;
    for (const auto& tok : detail::split_tokens(s)) {
        const auto parts = detail::split_colon(tok);
        if (parts.size() != 2)
            throw InputError("product vertex token must be <level>:<h>: " + tok);
        out.push_back({detail::parse_int(parts[0]), detail::parse_int(parts[1])});
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

inline std::vector<CombVertex> parse_comb_set(const std::string& s) {
    std::vector<CombVertex> out;
    for (const auto& tok : detail::split_tokens(s)) {
        const auto parts = detail::split_colon(tok);
        if (parts.size() == 2 && parts[0] == "u")
            out.push_back(CombVertex::spine(detail::parse_int(parts[1])));
        else if (parts.size() == 2 && parts[0] == "v")
            out.push_back(CombVertex::leaf(detail::parse_int(parts[1])));
        else
            throw InputError("comb vertex token must be u:<i> or v:<i>: " + tok);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

inline std::string input_digest(const json& j) {
    const std::string dump = j.dump();
    uint64_t h = 1469598103934665603ull;
    for (char c : dump) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace mdim

#endif
