#pragma once

#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "cyclehom/graph.hpp"
#include "cyclehom/lists.hpp"

namespace cyclehom {

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

// Data lines are whatever is left after stripping comments ('#' to end of
// line) and blank lines.
inline bool next_data_line(std::istream& is, std::string& line, int& lineno) {
    while (std::getline(is, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        bool blank = true;
        for (char ch : line)
            if (!isspace(static_cast<unsigned char>(ch))) {
                blank = false;
                break;
            }
        if (!blank) return true;
    }
    return false;
}

}  // namespace detail

// Graph format: one "n m" line, then m lines "u v" with 0-based endpoints.
inline Graph read_graph(std::istream& is) {
    std::string line;
    int lineno = 0;
    if (!detail::next_data_line(is, line, lineno)) throw ParseError("graph: missing header line");
    std::istringstream head(line);
    int n = 0, m = 0;
    if (!(head >> n >> m)) throw ParseError("graph: bad header at line " + std::to_string(lineno));
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (int i = 0; i < m; ++i) {
        if (!detail::next_data_line(is, line, lineno))
            throw ParseError("graph: expected " + std::to_string(m) + " edges, got " +
                             std::to_string(i));
        std::istringstream es(line);
        int u = 0, v = 0;
        if (!(es >> u >> v))
            throw ParseError("graph: bad edge at line " + std::to_string(lineno));
        edges.emplace_back(u, v);
    }
    try {
        return build_graph(n, std::move(edges));
    } catch (const GraphError& e) {
        throw ParseError(std::string("graph: ") + e.what());
    }
}

inline void write_graph(std::ostream& os, const Graph& g) {
    os << g.n << ' ' << g.edges.size() << '\n';
    for (auto [u, v] : g.edges) os << u << ' ' << v << '\n';
}

// List format: lines "v: c1 c2 ...". Vertices without a line keep the full
// color range; a single color means the vertex is precolored.
inline ListAssignment read_lists(std::istream& is, int n, int k) {
    ListAssignment l = ListAssignment::full(k, n);
    std::vector<char> seen(n, 0);
    std::string line;
    int lineno = 0;
    while (detail::next_data_line(is, line, lineno)) {
        auto colon = line.find(':');
        if (colon == std::string::npos)
            throw ParseError("lists: missing ':' at line " + std::to_string(lineno));
        std::istringstream vs(line.substr(0, colon));
        int v = 0;
        if (!(vs >> v) || v < 0 || v >= n)
            throw ParseError("lists: bad vertex at line " + std::to_string(lineno));
        if (seen[v])
            throw ParseError("lists: duplicate vertex " + std::to_string(v) + " at line " +
                             std::to_string(lineno));
        seen[v] = 1;
        std::istringstream cs(line.substr(colon + 1));
        uint64_t mask = 0;
        int c = 0;
        while (cs >> c) {
            if (c < 1 || c > k)
                throw ParseError("lists: color out of range at line " + std::to_string(lineno));
            mask |= cbit(c, k);
        }
        l.lists[v] = mask;
    }
    return l;
}

// Writer emits only the non-full lists, vertices ascending, colors ascending.
inline void write_lists(std::ostream& os, const ListAssignment& l) {
    for (int v = 0; v < static_cast<int>(l.lists.size()); ++v) {
        if (l.lists[v] == full_mask(l.k)) continue;
        os << v << ':';
        for (int c : mask_to_colors(l.lists[v])) os << ' ' << c;
        os << '\n';
    }
}

// Coloring format: lines "v <vertex> <color>". A bare SAT/UNSAT status line
// is tolerated so solver output can be fed straight back in.
inline std::vector<int> read_coloring(std::istream& is, int n) {
    std::vector<int> f(n, 0);
    std::vector<char> seen(n, 0);
    std::string line;
    int lineno = 0;
    while (detail::next_data_line(is, line, lineno)) {
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        if (tag == "SAT" || tag == "UNSAT") continue;
        if (tag != "v") throw ParseError("coloring: bad line " + std::to_string(lineno));
        int v = 0, c = 0;
        if (!(ls >> v >> c) || v < 0 || v >= n)
            throw ParseError("coloring: bad entry at line " + std::to_string(lineno));
        if (seen[v])
            throw ParseError("coloring: duplicate vertex at line " + std::to_string(lineno));
        seen[v] = 1;
        f[v] = c;
    }
    for (int v = 0; v < n; ++v)
        if (!seen[v]) throw ParseError("coloring: vertex " + std::to_string(v) + " missing");
    return f;
}

inline void write_coloring(std::ostream& os, const std::vector<int>& f) {
    for (int v = 0; v < static_cast<int>(f.size()); ++v) os << "v " << v << ' ' << f[v] << '\n';
}

// Metadata sidecar: "key: value" lines in insertion order.
inline void write_metadata(std::ostream& os,
                           const std::vector<std::pair<std::string, std::string>>& meta) {
    for (const auto& [key, value] : meta) os << key << ": " << value << '\n';
}

inline std::vector<std::pair<std::string, std::string>> read_metadata(std::istream& is) {
    std::vector<std::pair<std::string, std::string>> meta;
    std::string line;
    int lineno = 0;
    while (detail::next_data_line(is, line, lineno)) {
        auto colon = line.find(':');
        if (colon == std::string::npos)
            throw ParseError("metadata: missing ':' at line " + std::to_string(lineno));
        std::string key = line.substr(0, colon);
        std::string value = line.substr(colon + 1);
        while (!key.empty() && isspace(static_cast<unsigned char>(key.back()))) key.pop_back();
        while (!value.empty() && isspace(static_cast<unsigned char>(value.front())))
            value.erase(value.begin());
        while (!value.empty() && isspace(static_cast<unsigned char>(value.back()))) value.pop_back();
        meta.emplace_back(key, value);
    }
    return meta;
}

}  // namespace cyclehom
