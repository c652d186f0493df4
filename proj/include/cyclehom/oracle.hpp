#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cyclehom/graph.hpp"
#include "cyclehom/lists.hpp"

namespace cyclehom {

using Coloring = std::vector<int>;

// A coloring is a homomorphism to the k-cycle respecting the lists: every
// vertex gets a color from its list and every edge spans two cyclically
// adjacent colors.
inline bool verify(const Graph& g, const Coloring& f, const ListAssignment& l) {
    if (static_cast<int>(f.size()) != g.n) return false;
    for (Vertex v = 0; v < g.n; ++v) {
        if (f[v] < 1 || f[v] > l.k) return false;
        if (!has_color(l.lists[v], f[v], l.k)) return false;
    }
    for (auto [u, v] : g.edges) {
        int diff = norm_color(f[u] - f[v], l.k);
        if (diff != 1 && diff != l.k - 1) return false;
    }
    return true;
}

inline bool verify(const Graph& g, const Coloring& f, int k) {
    return verify(g, f, ListAssignment::full(k, g.n));
}

// Exact solver: backtracking with full arc consistency maintained after
// every assignment and minimum-remaining-values vertex selection (ties to
// the smaller id), colors tried ascending. Ground truth for everything else
// in the library; exponential only in the worst case.
inline std::optional<Coloring> solve_exact(const Graph& g, const ListAssignment& l) {
    Graph target = cycle_graph(l.k);
    auto root = arc_consistency(g, l, target);
    if (!root) return std::nullopt;

    auto recurse = [&](auto&& self, const ListAssignment& cur) -> std::optional<Coloring> {
        Vertex pick = -1;
        int best = 65;
        for (Vertex v = 0; v < g.n; ++v) {
            int size = list_size(cur.lists[v]);
            if (size >= 2 && size < best) {
                best = size;
                pick = v;
            }
        }
        if (pick == -1) {
            Coloring f(g.n);
            for (Vertex v = 0; v < g.n; ++v) f[v] = mask_to_colors(cur.lists[v])[0];
            return f;
        }
        for (int c : mask_to_colors(cur.lists[pick])) {
            ListAssignment next = cur;
            next.lists[pick] = cbit(c, l.k);
            auto ac = arc_consistency(g, std::move(next), target);
            if (!ac) continue;
            auto res = self(self, *ac);
            if (res) return res;
        }
        return std::nullopt;
    };
    return recurse(recurse, *root);
}

struct CapExceededError : std::runtime_error {
    CapExceededError()
        : std::runtime_error("enumeration cap exceeded: list-size product too large") {}
};

// All list-respecting homomorphisms, in lexicographic order of the coloring
// vector. The product of list sizes after the initial propagation must stay
// within `cap`; enumeration itself uses forward checking so the real work
// tracks the solution count, not the cap.
inline std::vector<Coloring> enumerate_all(const Graph& g, const ListAssignment& l,
                                           uint64_t cap = 10'000'000ull) {
    Graph target = cycle_graph(l.k);
    auto root = arc_consistency(g, l, target);
    if (!root) return {};

    long double product = 1.0L;
    for (Vertex v = 0; v < g.n; ++v) product *= list_size(root->lists[v]);
    if (product > static_cast<long double>(cap)) throw CapExceededError();

    std::vector<uint64_t> nbr_mask(l.k + 1, 0);
    for (int c = 1; c <= l.k; ++c) nbr_mask[c] = cbit(c - 1, l.k) | cbit(c + 1, l.k);

    std::vector<Coloring> out;
    Coloring f(g.n, 0);
    std::vector<uint64_t> dom = root->lists;

    auto dfs = [&](auto&& self, Vertex v) -> void {
        if (v == g.n) {
            out.push_back(f);
            return;
        }
        for (int c : mask_to_colors(dom[v])) {
            f[v] = c;
            // forward check: shrink later neighbours, bail on a wipeout
            std::vector<std::pair<Vertex, uint64_t>> saved;
            bool dead = false;
            for (Vertex w : g.adj[v]) {
                if (w <= v) continue;
                saved.emplace_back(w, dom[w]);
                dom[w] &= nbr_mask[c];
                if (dom[w] == 0) {
                    dead = true;
                    break;
                }
            }
            if (!dead) self(self, v + 1);
            for (auto [w, m] : saved) dom[w] = m;
        }
        f[v] = 0;
    };
    dfs(dfs, 0);
    return out;
}

// Extension variant: some vertices carry a fixed color, the rest are free.
inline std::optional<Coloring> solve_extension(const Graph& g,
                                               const std::vector<std::pair<Vertex, int>>& precoloring,
                                               int k) {
    ListAssignment l = ListAssignment::full(k, g.n);
    for (auto [v, c] : precoloring) l.lists[v] = cbit(c, k);
    return solve_exact(g, l);
}

}  // namespace cyclehom
