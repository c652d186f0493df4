#pragma once

#include <cstdint>
#include <cstdlib>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "graph.hpp"
#include "graph_io.hpp"
#include "lists.hpp"

// Instance generators for the hardness side of cycle homomorphism: edge
// subdivision, the degree-reducing chain gadget, and three reductions
// (non-rainbow hypergraph coloring -> extension, positive NAE-3-SAT ->
// plain coloring, monotone 3-SAT -> list coloring), plus a classifier that
// reports the known complexity of C_k-coloring restricted to F-free graphs.
//
// Every generator emits a GadgetInstance whose metadata records the source
// object, the parameters, and the equivalence claim the construction is
// supposed to satisfy. Structural certificates quoted in the metadata
// (bipartiteness, girth bounds, degree bounds, Gamma_p membership, branch
// vertex separation) are re-checked at construction time and a failure
// throws logic_error: a violated certificate means the generator is wrong,
// not the input.

namespace cyclehom {

// ---------------------------------------------------------------------------
// Source objects

enum class FormulaKind {
    ThreeSat,              // clauses of up to 3 literals, mixed signs
    NaeThreeSat,           // exactly 3 positive literals, not-all-equal semantics
    MonotoneThreeSat,      // 2-3 literals per clause, all positive or all negative
    NonRainbowHypergraph,  // clauses are 3-element hyperedges over the variables
};

// Clauses hold nonzero literals: +v means variable v, -v its negation
// (variables are 1-based). For hypergraphs a "clause" is a hyperedge and all
// entries are positive vertex ids.
struct Formula {
    FormulaKind kind = FormulaKind::ThreeSat;
    int variables = 0;
    std::vector<std::vector<int>> clauses;
};

inline void validate_formula(const Formula& f) {
    if (f.variables < 0) throw std::invalid_argument("formula: negative variable count");
    std::vector<int> uses(f.variables + 1, 0);
    for (const auto& cl : f.clauses) {
        if (cl.empty()) throw std::invalid_argument("formula: empty clause");
        std::set<int> seen;
        bool pos = false, neg = false;
        for (int lit : cl) {
            int v = lit < 0 ? -lit : lit;
            if (lit == 0 || v > f.variables)
                throw std::invalid_argument("formula: literal out of range");
            if (!seen.insert(v).second)
                throw std::invalid_argument("formula: repeated variable in a clause");
            (lit > 0 ? pos : neg) = true;
            ++uses[v];
        }
        switch (f.kind) {
            case FormulaKind::ThreeSat:
                if (cl.size() > 3)
                    throw std::invalid_argument("formula: 3-sat clause with more than three literals");
                break;
            case FormulaKind::NaeThreeSat:
                if (cl.size() != 3 || neg)
                    throw std::invalid_argument("formula: nae clause needs exactly three positive literals");
                break;
            case FormulaKind::NonRainbowHypergraph:
                if (cl.size() != 3 || neg)
                    throw std::invalid_argument("formula: hyperedge needs exactly three vertices");
                break;
            case FormulaKind::MonotoneThreeSat:
                if (cl.size() < 2 || cl.size() > 3)
                    throw std::invalid_argument("formula: monotone clause needs two or three literals");
                if (pos && neg)
                    throw std::invalid_argument("formula: monotone clause mixes signs");
                break;
        }
    }
    if (f.kind == FormulaKind::MonotoneThreeSat)
        for (int v = 1; v <= f.variables; ++v)
            if (uses[v] > 3)
                throw std::invalid_argument("formula: monotone variable in more than three clauses");
}

// Formula text format: '#' comments, a "vars <n>" header, then one clause
// per line as whitespace-separated literals. Hypergraph inputs may add
// "fix <vertex> <color>" lines pinning a vertex to a color in {1,2,3};
// `partial` is 0 for unconstrained vertices.
struct FormulaInput {
    Formula formula;
    std::vector<int> partial;
};

inline FormulaInput read_formula(std::istream& is, FormulaKind kind) {
    FormulaInput in;
    in.formula.kind = kind;
    std::string line;
    int lineno = 0;
    bool have_vars = false;
    while (detail::next_data_line(is, line, lineno)) {
        std::istringstream ls(line);
        if (!have_vars) {
            std::string tag;
            int n = -1;
            if (!(ls >> tag >> n) || tag != "vars" || n < 0)
                throw ParseError("formula: expected \"vars <n>\" at line " + std::to_string(lineno));
            in.formula.variables = n;
            in.partial.assign(n, 0);
            have_vars = true;
            continue;
        }
        if (line.rfind("fix", 0) == 0) {
            std::string tag;
            int v = 0, c = 0;
            if (!(ls >> tag >> v >> c) || v < 1 || v > in.formula.variables || c < 1 || c > 3)
                throw ParseError("formula: bad fix line " + std::to_string(lineno));
            in.partial[v - 1] = c;
            continue;
        }
        std::vector<int> clause;
        int lit = 0;
        while (ls >> lit) clause.push_back(lit);
        if (!ls.eof()) throw ParseError("formula: bad clause at line " + std::to_string(lineno));
        in.formula.clauses.push_back(std::move(clause));
    }
    if (!have_vars) throw ParseError("formula: missing \"vars\" header");
    validate_formula(in.formula);
    return in;
}

namespace detail {

inline std::string format_clause(const std::vector<int>& cl) {
    std::string out;
    for (size_t i = 0; i < cl.size(); ++i) {
        if (i) out += ' ';
        out += std::to_string(cl[i]);
    }
    return out;
}

}  // namespace detail

inline std::string formula_to_string(const Formula& f) {
    std::string out = "vars " + std::to_string(f.variables);
    for (const auto& cl : f.clauses) out += " ; " + detail::format_clause(cl);
    return out;
}

// Brute-force satisfiability of a small formula, the ground truth the
// reduction equivalences are tested against. NAE clauses demand at least one
// true and at least one false literal.
inline bool formula_satisfiable(const Formula& f) {
    if (f.kind == FormulaKind::NonRainbowHypergraph)
        throw std::invalid_argument("formula_satisfiable: use nonrainbow_extendable for hypergraphs");
    validate_formula(f);
    if (f.variables > 24) throw std::invalid_argument("formula_satisfiable: too many variables");
    for (uint32_t bits = 0; bits < (uint32_t{1} << f.variables); ++bits) {
        bool ok = true;
        for (const auto& cl : f.clauses) {
            int truecnt = 0;
            for (int lit : cl) {
                bool val = (bits >> (std::abs(lit) - 1)) & 1;
                if (lit < 0) val = !val;
                truecnt += val ? 1 : 0;
            }
            bool sat = f.kind == FormulaKind::NaeThreeSat
                           ? truecnt > 0 && truecnt < static_cast<int>(cl.size())
                           : truecnt > 0;
            if (!sat) {
                ok = false;
                break;
            }
        }
        if (ok) return true;
    }
    return false;
}

// Can `partial` be completed to a 3-coloring of the hypergraph vertices in
// which no hyperedge sees all three colors?
inline bool nonrainbow_extendable(const Formula& h, const std::vector<int>& partial) {
    if (h.kind != FormulaKind::NonRainbowHypergraph)
        throw std::invalid_argument("nonrainbow_extendable: expected a hypergraph");
    validate_formula(h);
    if (static_cast<int>(partial.size()) != h.variables)
        throw std::invalid_argument("nonrainbow_extendable: partial coloring size mismatch");
    if (h.variables > 15) throw std::invalid_argument("nonrainbow_extendable: too many vertices");
    std::vector<int> color(partial);
    auto rainbow_free = [&]() {
        for (const auto& e : h.clauses)
            if (color[e[0] - 1] != color[e[1] - 1] && color[e[0] - 1] != color[e[2] - 1] &&
                color[e[1] - 1] != color[e[2] - 1])
                return false;
        return true;
    };
    auto dfs = [&](auto&& self, int v) -> bool {
        if (v == h.variables) return rainbow_free();
        if (partial[v] != 0) return self(self, v + 1);
        for (int c = 1; c <= 3; ++c) {
            color[v] = c;
            if (self(self, v + 1)) return true;
        }
        color[v] = 0;
        return false;
    };
    return dfs(dfs, 0);
}

// ---------------------------------------------------------------------------
// Emitted instances

// A generated instance: the graph, optional lists (list-coloring targets),
// optional precoloring (extension targets), and the designated output
// vertices when the construction has any (chain gadget). Metadata is the
// sidecar content; certificates quoted there were re-checked during
// construction.
struct GadgetInstance {
    Graph graph;
    int k = 0;
    std::optional<ListAssignment> lists;
    std::vector<std::pair<Vertex, int>> precoloring;
    std::vector<Vertex> outputs;
    std::vector<std::pair<std::string, std::string>> metadata;
};

// The instance as one list assignment: explicit lists if present (full
// otherwise), with precolored vertices narrowed to singletons.
inline ListAssignment instance_lists(const GadgetInstance& gi) {
    ListAssignment l = gi.lists ? *gi.lists : ListAssignment::full(gi.k, gi.graph.n);
    for (auto [v, c] : gi.precoloring) l.lists[v] &= cbit(c, gi.k);
    return l;
}

namespace detail {

inline void certify(bool ok, const char* what) {
    if (!ok) throw std::logic_error(std::string("gadget certificate failed: ") + what);
}

inline std::string join_vertices(const std::vector<Vertex>& xs) {
    std::string out;
    for (size_t i = 0; i < xs.size(); ++i) {
        if (i) out += ' ';
        out += std::to_string(xs[i]);
    }
    return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Edge subdivision

// Replace every edge by a path with m edges (m-1 fresh internal vertices).
// Original vertex ids are preserved; internal vertices are appended in edge
// order, each chain running from the smaller endpoint to the larger. With
// m = 2s-1 this carries proper (2s+1)-coloring of g to C_{2s+1}-coloring of
// the output; it multiplies girth by m and puts the output in Gamma_m.
inline Graph subdivide(const Graph& g, int m) {
    if (m < 1) throw std::invalid_argument("subdivide: need m >= 1");
    std::vector<std::pair<Vertex, Vertex>> edges;
    int next = g.n;
    for (auto [u, v] : g.edges) {
        Vertex prev = u;
        for (int i = 1; i < m; ++i) {
            edges.emplace_back(prev, next);
            prev = next++;
        }
        edges.emplace_back(prev, v);
    }
    return build_graph(next, std::move(edges));
}

// ---------------------------------------------------------------------------
// Chain gadget

// A chain of d copies of C_k (k odd), consecutive copies glued along one
// edge so that in every C_k-coloring all d output vertices receive the same
// color, and each of the k colors is achievable. Copy j has cyclic vertices
// w_0..w_{k-1} with output w_0; the edge {w_1, w_2} of copy j is the edge
// {w_{k-1}, w_{k-2}} of copy j+1, putting both outputs o_j and o_{j+1}
// adjacent to the shared vertex w_1. Subcubic and triangle-free.
inline GadgetInstance build_chain_gadget(int d, int k) {
    if (d < 1) throw std::invalid_argument("chain gadget: need d >= 1");
    if (k < 5 || k % 2 == 0) throw std::invalid_argument("chain gadget: k must be odd, at least 5");
    GadgetInstance out;
    out.k = k;
    std::vector<std::pair<Vertex, Vertex>> edges;
    std::vector<Vertex> w(k);
    for (int t = 0; t < k; ++t) w[t] = t;
    int next = k;
    out.outputs.push_back(w[0]);
    for (int t = 0; t < k; ++t) edges.emplace_back(w[t], w[(t + 1) % k]);
    for (int j = 2; j <= d; ++j) {
        std::vector<Vertex> nw(k);
        nw[k - 1] = w[1];
        nw[k - 2] = w[2];
        for (int t = 0; t + 2 < k; ++t) nw[t] = next++;
        out.outputs.push_back(nw[0]);
        for (int t = 0; t < k; ++t) edges.emplace_back(nw[t], nw[(t + 1) % k]);
        w = std::move(nw);
    }
    out.graph = build_graph(next, std::move(edges));

    detail::certify(out.graph.n == d * k - 2 * (d - 1), "chain: vertex count");
    detail::certify(max_degree(out.graph) <= 3, "chain: subcubic");
    detail::certify(is_triangle_free(out.graph), "chain: triangle-free");
    out.metadata = {
        {"gadget", "chain"},
        {"k", std::to_string(k)},
        {"d", std::to_string(d)},
        {"vertices", std::to_string(out.graph.n)},
        {"edges", std::to_string(out.graph.edge_count())},
        {"outputs", detail::join_vertices(out.outputs)},
        {"max-degree", std::to_string(max_degree(out.graph))},
        {"triangle-free", "yes"},
        {"equivalence",
         "every C_k coloring assigns all outputs the same color, and every color occurs"},
    };
    return out;
}

// Repeatedly replace the smallest-id vertex of degree >= 4 by a chain gadget
// with one output per former neighbor (neighbors in ascending order matched
// to outputs in chain order). Preserves C_k-colorability for odd k and
// terminates with maximum degree <= 3.
inline Graph reduce_degree(const Graph& g, int k) {
    if (k < 5 || k % 2 == 0)
        throw std::invalid_argument("reduce_degree: k must be odd, at least 5");
    Graph cur = g;
    for (;;) {
        Vertex v = -1;
        for (Vertex u = 0; u < cur.n; ++u)
            if (cur.degree(u) >= 4) {
                v = u;
                break;
            }
        if (v < 0) return cur;
        int d = cur.degree(v);
        GadgetInstance gad = build_chain_gadget(d, k);
        auto remap = [v](Vertex u) { return u < v ? u : u - 1; };
        int base = cur.n - 1;
        std::vector<std::pair<Vertex, Vertex>> edges;
        for (auto [a, b] : cur.edges)
            if (a != v && b != v) edges.emplace_back(remap(a), remap(b));
        for (auto [a, b] : gad.graph.edges) edges.emplace_back(base + a, base + b);
        for (int i = 0; i < d; ++i)
            edges.emplace_back(remap(cur.adj[v][i]), base + gad.outputs[i]);
        cur = build_graph(base + gad.graph.n, std::move(edges));
    }
}

// ---------------------------------------------------------------------------
// Non-rainbow hypergraph coloring -> extension of a C_{2s+1}-precoloring

// Variable vertices come first (ids 0..n-1). A fixed vertex is precolored
// with its partial color. A free vertex gets 2s-2 fresh degree-1 anchors
// precolored 4..2s+1, each joined to it by a (2s-1)-edge path: a path with
// k-2 edges from a vertex colored c forbids exactly c at the far end, so the
// anchors restrict the variable vertex to {1,2,3} and nothing more. Each
// hyperedge contributes a vertex joined to its three variable vertices by
// s-edge paths; a color for it exists iff the three variable colors are not
// pairwise distinct. The output is bipartite and lies in Gamma_s: anchors
// have degree 1, so every path between branch vertices is a concatenation of
// the s-edge hyperedge segments.
inline GadgetInstance nonrainbow_to_extension(const Formula& h, const std::vector<int>& partial,
                                              int s) {
    if (h.kind != FormulaKind::NonRainbowHypergraph)
        throw std::invalid_argument("nonrainbow gadget: expected a hypergraph");
    validate_formula(h);
    if (s < 2) throw std::invalid_argument("nonrainbow gadget: need s >= 2");
    if (static_cast<int>(partial.size()) != h.variables)
        throw std::invalid_argument("nonrainbow gadget: partial coloring size mismatch");
    for (int c : partial)
        if (c < 0 || c > 3)
            throw std::invalid_argument("nonrainbow gadget: partial colors must be 0 or 1..3");

    GadgetInstance out;
    out.k = 2 * s + 1;
    int next = h.variables;
    std::vector<std::pair<Vertex, Vertex>> edges;
    auto add_path = [&](Vertex from, Vertex to, int len) {
        Vertex prev = from;
        for (int i = 1; i < len; ++i) {
            edges.emplace_back(prev, next);
            prev = next++;
        }
        edges.emplace_back(prev, to);
    };
    for (Vertex x = 0; x < h.variables; ++x) {
        if (partial[x] != 0) {
            out.precoloring.emplace_back(x, partial[x]);
            continue;
        }
        for (int c = 4; c <= 2 * s + 1; ++c) {
            Vertex anchor = next++;
            out.precoloring.emplace_back(anchor, c);
            add_path(anchor, x, 2 * s - 1);
        }
    }
    for (const auto& e : h.clauses) {
        Vertex ve = next++;
        for (int x : e) add_path(ve, x - 1, s);
    }
    out.graph = build_graph(next, std::move(edges));

    detail::certify(is_bipartite(out.graph), "nonrainbow: bipartite");
    detail::certify(is_in_gamma_p(out.graph, s), "nonrainbow: Gamma_s membership");
    std::string partial_str;
    for (size_t i = 0; i < partial.size(); ++i) {
        if (i) partial_str += ' ';
        partial_str += std::to_string(partial[i]);
    }
    out.metadata = {
        {"gadget", "nonrainbow-extension"},
        {"k", std::to_string(out.k)},
        {"s", std::to_string(s)},
        {"source", formula_to_string(h)},
        {"partial", partial_str},
        {"vertices", std::to_string(out.graph.n)},
        {"edges", std::to_string(out.graph.edge_count())},
        {"bipartite", "yes"},
        {"gamma-p", std::to_string(s)},
        {"equivalence",
         "the precoloring extends to a C_k homomorphism iff the partial 3-coloring extends "
         "with no rainbow hyperedge"},
    };
    return out;
}

// ---------------------------------------------------------------------------
// Positive NAE-3-SAT -> plain C_{2s+1}-coloring

// One special vertex z adjacent to every variable vertex; per clause three
// vertices pairwise joined by (2s-1)-edge paths (forcing three distinct
// colors on them), and per literal a connector path with 2d(2s-1)+1 edges
// from the variable vertex to the clause vertex, with z also adjacent to the
// connector vertices at positions j(2s-1) for j = 1..2d (counting from the
// variable vertex). Coloring z with 2 pins every variable vertex to {1,3};
// the periodic z-edges propagate that choice down the connector, and the
// clause triple is colorable iff its literals are not all equal. d is the
// branch-vertex spacing and must be a positive multiple of s(2s-1); 0
// selects that minimum.
inline GadgetInstance nae3sat_to_coloring(const Formula& f, int s, int d = 0) {
    if (f.kind != FormulaKind::NaeThreeSat)
        throw std::invalid_argument("nae gadget: expected a nae formula");
    validate_formula(f);
    if (s < 2) throw std::invalid_argument("nae gadget: need s >= 2");
    int unit = s * (2 * s - 1);
    if (d == 0) d = unit;
    if (d < 1 || d % unit != 0)
        throw std::invalid_argument("nae gadget: d must be a positive multiple of s(2s-1)");

    GadgetInstance out;
    out.k = 2 * s + 1;
    Vertex z = f.variables;
    int next = f.variables + 1;
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (Vertex v = 0; v < f.variables; ++v) edges.emplace_back(z, v);
    for (const auto& cl : f.clauses) {
        std::vector<Vertex> y(3);
        for (int t = 0; t < 3; ++t) y[t] = next++;
        auto add_path = [&](Vertex from, Vertex to, int len, bool tether) {
            Vertex prev = from;
            for (int i = 1; i < len; ++i) {
                edges.emplace_back(prev, next);
                if (tether && i % (2 * s - 1) == 0) edges.emplace_back(z, next);
                prev = next++;
            }
            edges.emplace_back(prev, to);
        };
        for (int a = 0; a < 3; ++a)
            for (int b = a + 1; b < 3; ++b) add_path(y[a], y[b], 2 * s - 1, false);
        for (int t = 0; t < 3; ++t) add_path(cl[t] - 1, y[t], 2 * d * (2 * s - 1) + 1, true);
    }
    out.graph = build_graph(next, std::move(edges));

    detail::certify(is_triangle_free(out.graph), "nae: triangle-free");
    out.metadata = {
        {"gadget", "nae-coloring"},
        {"k", std::to_string(out.k)},
        {"s", std::to_string(s)},
        {"d", std::to_string(d)},
        {"source", formula_to_string(f)},
        {"vertices", std::to_string(out.graph.n)},
        {"edges", std::to_string(out.graph.edge_count())},
        {"triangle-free", "yes"},
        {"equivalence", "the graph is C_k-colorable iff the formula is nae-satisfiable"},
    };
    return out;
}

// ---------------------------------------------------------------------------
// Monotone 3-SAT -> list C_{2s}-coloring

namespace detail {

// Colors reachable at the end of a list path when the first vertex is pinned
// to start_color: one forward sweep, since a path's feasible endpoint pairs
// are exactly what stepwise reachability allows.
inline uint64_t path_reach(const std::vector<uint64_t>& lists, int k, int start_color) {
    uint64_t cur = lists.front() & cbit(start_color, k);
    for (size_t i = 1; i < lists.size(); ++i) {
        uint64_t step = 0;
        for (int c : mask_to_colors(cur)) step |= pair_mask(c, k);
        cur = step & lists[i];
        if (cur == 0) return 0;
    }
    return cur;
}

// Connector path lists for the monotone reduction, targeting C_{2s}. The
// path starts at a variable vertex (list {1,3}, 1 = true, 3 = false) and
// ends at a clause vertex (list within {1,3,5}); i in {1,3,5} is the clause
// color slot this literal guards. Contract, verified by q_path_lists:
//   positive literal: start 1 reaches all of {1,3,5}; start 3 reaches
//   exactly {1,3,5} minus {i};
//   negated literal: same with start colors 1 and 3 swapped.
// The g-vertex alternating {1,3},{2s,4} prefix transports the start color
// unchanged (color 1 travels the 1/2s rail, color 3 the 3/4 rail) and keeps
// branch vertices more than g apart.
inline std::vector<uint64_t> q_path_lists(int i, bool negated, int s, int g, int k) {
    std::vector<std::vector<int>> body;
    if (!negated) {
        if (i == 1) {
            body = {{1, 3}, {2 * s, 2}, {2 * s - 1, 3}, {2 * s, 4}, {1, 3, 5}};
        } else if (i == 3) {
            body = {{1, 3}, {2, 2 * s}, {1, 2 * s - 1}};
            for (int w = 0; w <= s - 3; ++w) {
                if (w >= 1) body.push_back({1, 2 * s + 1 - 2 * w, 2 * s - 1 - 2 * w});
                body.push_back({2 * s, 2 * s - 2 * w, 2 * s - 2 - 2 * w});
            }
            body.push_back({1, 3, 5});
        } else {
            if (s == 3) {
                body = {{1, 3}, {6, 2}, {5, 3}, {6, 2}, {1, 3, 5}};
            } else {
                body = {{1, 3}, {2 * s, 2}};
                for (int j = 2 * s - 1; j >= 6; --j) body.push_back({j, j % 2 ? 3 : 2});
                body.push_back({1, 3, 5});
            }
        }
    } else {
        if (i == 1) {
            body = {{1, 3}};
            for (int t = 1; t <= 2 * s - 5; ++t) body.push_back({t % 2 ? 2 : 1, 3 + t});
            body.push_back({3, 2 * s - 1});
            body.push_back({4, 2 * s});
            body.push_back({1, 3, 5});
        } else if (i == 3) {
            body = {{1, 3}, {2, 4}, {1, 5}};
            for (int w = 0; w <= s - 3; ++w) {
                if (w >= 1) body.push_back({1, 2 * s + 1 - 2 * w, 5});
                body.push_back({2 * s, 2 * s - 2 * w, 4});
            }
            body.push_back({1, 3, 5});
        } else {
            body = {{1, 3}};
            for (int w = 0; w <= 2 * s - 2; ++w)
                body.push_back(w % 2 == 0 ? std::vector<int>{2, 4} : std::vector<int>{1, 5});
            body.push_back({1, 3, 5});
        }
    }
    std::vector<uint64_t> lists;
    for (int t = 0; t < g; ++t)
        lists.push_back(t % 2 == 0 ? colors_to_mask({1, 3}, k) : colors_to_mask({2 * s, 4}, k));
    for (const auto& cs : body) lists.push_back(colors_to_mask(cs, k));

    uint64_t slot = colors_to_mask({1, 3, 5}, k);
    int good = negated ? 3 : 1;
    certify(path_reach(lists, k, good) == slot, "connector path: satisfied-literal reach");
    certify(path_reach(lists, k, 4 - good) == (slot & ~cbit(i, k)),
            "connector path: falsified-literal reach");
    return lists;
}

}  // namespace detail

// Variable vertices 0..n-1 carry list {1,3}; clause vertices follow with
// list {1,3,5} ({1,3} for 2-literal clauses); each literal contributes a
// connector path between its variable vertex and its clause vertex whose
// lists force: the clause vertex can take slot color i only if some literal
// guarding i is satisfied. Subcubic (each variable in at most 3 clauses),
// girth above g, branch vertices pairwise further than g apart.
inline GadgetInstance monotone3sat_to_listinstance(const Formula& f, int s, int g) {
    if (f.kind != FormulaKind::MonotoneThreeSat)
        throw std::invalid_argument("monotone gadget: expected a monotone formula");
    validate_formula(f);
    if (s < 3) throw std::invalid_argument("monotone gadget: need s >= 3");
    if (g < 4 || g % 2 != 0) throw std::invalid_argument("monotone gadget: need even g >= 4");

    GadgetInstance out;
    out.k = 2 * s;
    int m = static_cast<int>(f.clauses.size());
    int next = f.variables + m;
    std::vector<uint64_t> lmask(next);
    for (Vertex v = 0; v < f.variables; ++v) lmask[v] = colors_to_mask({1, 3}, out.k);
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (int l = 0; l < m; ++l) {
        const auto& cl = f.clauses[l];
        Vertex dv = f.variables + l;
        lmask[dv] = cl.size() == 3 ? colors_to_mask({1, 3, 5}, out.k)
                                   : colors_to_mask({1, 3}, out.k);
        for (size_t p = 0; p < cl.size(); ++p) {
            auto pl = detail::q_path_lists(2 * static_cast<int>(p) + 1, cl[p] < 0, s, g, out.k);
            Vertex prev = std::abs(cl[p]) - 1;
            for (size_t t = 1; t + 1 < pl.size(); ++t) {
                lmask.push_back(pl[t]);
                edges.emplace_back(prev, next);
                prev = next++;
            }
            edges.emplace_back(prev, dv);
        }
    }
    out.graph = build_graph(next, std::move(edges));
    out.lists = ListAssignment{out.k, std::move(lmask)};

    detail::certify(max_degree(out.graph) <= 3, "monotone: subcubic");
    int gr = girth(out.graph);
    detail::certify(gr == -1 || gr > g, "monotone: girth above g");
    std::vector<Vertex> branches = branch_vertices(out.graph);
    for (Vertex b : branches) {
        auto dist = bfs_distances(out.graph, {b});
        for (Vertex c : branches)
            detail::certify(c == b || dist[c] > g, "monotone: branch vertex separation");
    }
    out.metadata = {
        {"gadget", "monotone-list"},
        {"k", std::to_string(out.k)},
        {"s", std::to_string(s)},
        {"g", std::to_string(g)},
        {"source", formula_to_string(f)},
        {"vertices", std::to_string(out.graph.n)},
        {"edges", std::to_string(out.graph.edge_count())},
        {"max-degree", std::to_string(max_degree(out.graph))},
        {"girth-above", std::to_string(g)},
        {"branch-distance-above", std::to_string(g)},
        {"equivalence", "the graph is list C_k-colorable iff the formula is satisfiable"},
    };
    return out;
}

// ---------------------------------------------------------------------------
// Complexity classifier

enum class Variant { Plain, Extension, List };
enum class ComplexityVerdict { PolynomialKnown, NPCompleteKnown, OpenOrUnknown };

// What is known about C_k-coloring (in the requested variant) restricted to
// F-free graphs. Polynomial: F an induced subgraph of the 9-vertex path,
// k in {5,7} or k >= 9 (the list result covers all variants). NP-complete:
// F not a subgraph of a subdivided claw -- equivalently F is neither a path
// nor a tree whose single branch vertex has degree exactly 3 -- for the
// extension variant with odd k >= 5, and for the list variant with any
// k >= 5 (even k directly, odd k because extension hardness carries over to
// lists). Everything else is open or simply not covered here.
inline ComplexityVerdict classify(const Graph& f, int k, Variant variant) {
    if (f.n < 1) throw std::invalid_argument("classify: empty forbidden graph");
    if (!is_connected(f)) throw std::invalid_argument("classify: forbidden graph must be connected");
    if (k < 3) throw std::invalid_argument("classify: need k >= 3");

    bool tree = f.edge_count() == f.n - 1;
    bool path = tree && max_degree(f) <= 2;
    if (path && f.n <= 9 && (k == 5 || k == 7 || k >= 9))
        return ComplexityVerdict::PolynomialKnown;

    std::vector<Vertex> branches = branch_vertices(f);
    bool claw_subgraph = path || (tree && branches.size() == 1 && f.degree(branches[0]) == 3);
    if (!claw_subgraph) {
        bool odd_hard = k >= 5 && k % 2 == 1;
        bool even_hard = k >= 6 && k % 2 == 0;
        if (variant == Variant::Extension && odd_hard) return ComplexityVerdict::NPCompleteKnown;
        if (variant == Variant::List && (odd_hard || even_hard))
            return ComplexityVerdict::NPCompleteKnown;
    }
    return ComplexityVerdict::OpenOrUnknown;
}

inline std::string to_string(ComplexityVerdict v) {
    switch (v) {
        case ComplexityVerdict::PolynomialKnown: return "PolynomialKnown";
        case ComplexityVerdict::NPCompleteKnown: return "NPCompleteKnown";
        default: return "OpenOrUnknown";
    }
}

}  // namespace cyclehom
