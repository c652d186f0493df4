#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cyclehom/graph.hpp"
#include "cyclehom/lists.hpp"

namespace cyclehom {

struct Lit {
    int var = 0;
    bool negated = false;
};

inline Lit pos(int var) { return {var, false}; }
inline Lit neg(int var) { return {var, true}; }

struct TwoSatFormula {
    int num_vars = 0;
    std::vector<std::pair<Lit, Lit>> clauses;

    int add_var() { return num_vars++; }
    void add_clause(Lit a, Lit b) { clauses.emplace_back(a, b); }
    void add_unary(Lit a) { clauses.emplace_back(a, a); }
};

// Tarjan SCC over the implication graph, iterative to keep deep formulas off
// the call stack. A variable is true iff its positive literal's component
// comes later in topological order (= smaller component id) than the
// negative one.
inline std::optional<std::vector<char>> solve_2sat(const TwoSatFormula& f) {
    int n_lits = 2 * f.num_vars;
    auto lit_node = [](Lit l) { return 2 * l.var + (l.negated ? 1 : 0); };
    auto negate_node = [](int node) { return node ^ 1; };

    std::vector<std::vector<int>> adj(n_lits);
    for (auto [a, b] : f.clauses) {
        adj[negate_node(lit_node(a))].push_back(lit_node(b));
        adj[negate_node(lit_node(b))].push_back(lit_node(a));
    }

    std::vector<int> index(n_lits, -1), low(n_lits, 0), comp(n_lits, -1);
    std::vector<char> on_stack(n_lits, 0);
    std::vector<int> scc_stack;
    int next_index = 0, next_comp = 0;

    struct Frame {
        int node;
        size_t edge;
    };
    std::vector<Frame> frames;

    for (int start = 0; start < n_lits; ++start) {
        if (index[start] != -1) continue;
        frames.push_back({start, 0});
        index[start] = low[start] = next_index++;
        scc_stack.push_back(start);
        on_stack[start] = 1;
        while (!frames.empty()) {
            Frame& fr = frames.back();
            int v = fr.node;
            if (fr.edge < adj[v].size()) {
                int w = adj[v][fr.edge++];
                if (index[w] == -1) {
                    index[w] = low[w] = next_index++;
                    scc_stack.push_back(w);
                    on_stack[w] = 1;
                    frames.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], index[w]);
                }
            } else {
                if (low[v] == index[v]) {
                    int w;
                    do {
                        w = scc_stack.back();
                        scc_stack.pop_back();
                        on_stack[w] = 0;
                        comp[w] = next_comp;
                    } while (w != v);
                    ++next_comp;
                }
                frames.pop_back();
                if (!frames.empty()) low[frames.back().node] = std::min(low[frames.back().node], low[v]);
            }
        }
    }

    std::vector<char> assignment(f.num_vars, 0);
    for (int v = 0; v < f.num_vars; ++v) {
        if (comp[2 * v] == comp[2 * v + 1]) return std::nullopt;
        assignment[v] = comp[2 * v] < comp[2 * v + 1];
    }
    return assignment;
}

inline std::string to_dimacs(const TwoSatFormula& f) {
    std::ostringstream os;
    os << "p cnf " << f.num_vars << ' ' << f.clauses.size() << '\n';
    for (auto [a, b] : f.clauses) {
        os << (a.negated ? -(a.var + 1) : a.var + 1) << ' '
           << (b.negated ? -(b.var + 1) : b.var + 1) << " 0\n";
    }
    return os.str();
}

struct ListTooLargeError : std::runtime_error {
    explicit ListTooLargeError(Vertex v)
        : std::runtime_error("2-SAT encoding needs lists of size at most 2, vertex " +
                             std::to_string(v) + " has more") {}
};

// 2-SAT encoding of list homomorphism to the k-cycle when every list has at
// most two colors. One variable per (vertex, color); vertex-major,
// color-ascending. Clauses: each vertex takes some list color, at most one
// of two, and edge endpoints get adjacent colors. An empty list becomes an
// immediately contradictory variable so callers can treat the formula
// uniformly.
struct ListHomEncoding {
    TwoSatFormula formula;
    std::vector<std::pair<Vertex, int>> var_meaning;     // var -> (vertex, color)
    std::vector<std::vector<std::pair<int, int>>> vertex_vars;  // vertex -> [(color, var)]
};

inline ListHomEncoding encode_list_hom(const Graph& g, const ListAssignment& l) {
    ListHomEncoding enc;
    enc.vertex_vars.resize(g.n);
    for (Vertex v = 0; v < g.n; ++v) {
        if (list_size(l.lists[v]) > 2) throw ListTooLargeError(v);
        for (int c : mask_to_colors(l.lists[v])) {
            int var = enc.formula.add_var();
            enc.var_meaning.emplace_back(v, c);
            enc.vertex_vars[v].emplace_back(c, var);
        }
        const auto& vars = enc.vertex_vars[v];
        if (vars.empty()) {
            int var = enc.formula.add_var();
            enc.var_meaning.emplace_back(v, 0);
            enc.formula.add_unary(pos(var));
            enc.formula.add_unary(neg(var));
        } else if (vars.size() == 1) {
            enc.formula.add_unary(pos(vars[0].second));
        } else {
            enc.formula.add_clause(pos(vars[0].second), pos(vars[1].second));
            enc.formula.add_clause(neg(vars[0].second), neg(vars[1].second));
        }
    }
    for (auto [u, v] : g.edges) {
        for (auto [cu, var_u] : enc.vertex_vars[u]) {
            for (auto [cv, var_v] : enc.vertex_vars[v]) {
                int diff = norm_color(cu - cv, l.k);
                if (diff != 1 && diff != l.k - 1) enc.formula.add_clause(neg(var_u), neg(var_v));
            }
        }
    }
    return enc;
}

// Read a coloring back out of a satisfying assignment; vertices with no
// chosen color (possible only for empty lists, which are unsatisfiable
// anyway) come back as 0.
inline std::vector<int> decode_coloring(const ListHomEncoding& enc,
                                        const std::vector<char>& assignment, int n) {
    std::vector<int> f(n, 0);
    for (Vertex v = 0; v < n; ++v)
        for (auto [c, var] : enc.vertex_vars[v])
            if (assignment[var]) {
                f[v] = c;
                break;
            }
    return f;
}

}  // namespace cyclehom
