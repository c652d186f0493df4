#pragma once

// Structured solvers for list homomorphism into a cycle C_k.
//
// Two algorithms live here:
//
//  - solve_p9free: a five-phase branching algorithm for connected
//    triangle-free graphs and odd k in {5,7,9}.  It finds a small connected
//    "seed" that dominates the graph within distance 3, branches on seed
//    colorings, propagates list updates through a layer structure
//    (S, X, Y, Z), eliminates induced a-b-c obstructions ("bad paths") by a
//    bounded number of branching rounds, reduces the remaining lists to
//    size <= 2 plus a stable set of centered 3-lists, and finishes with a
//    2-SAT encoding.
//
//  - solve_localized: for k >= 10, every C_k-coloring of a connected
//    P_9-free graph uses at most 8 consecutive cycle colors, so the
//    instance is solved by scanning all k color windows and solving a
//    list homomorphism into an 8-vertex path per window.
//
// solve() dispatches between them on k and verifies every returned
// coloring.  Inputs outside the structured solvers' guarantees raise
// NotP9FreeError or UnsupportedError so callers can fall back to the
// exponential oracle.

#include <algorithm>
#include <chrono>
#include <climits>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "cyclehom/graph.hpp"
#include "cyclehom/lists.hpp"
#include "cyclehom/oracle.hpp"
#include "cyclehom/twosat.hpp"

namespace cyclehom {

// Raised when the input violates a structural guarantee that only holds for
// P_9-free graphs (or when a 9-vertex induced path is found outright).
// Callers may catch this and fall back to an exact exponential solver.
struct NotP9FreeError : std::runtime_error {
    explicit NotP9FreeError(const std::string& what) : std::runtime_error(what) {}
};

// Raised for cycle lengths the structured solvers do not cover (k in
// {3,4,6,8}).
struct UnsupportedError : std::runtime_error {
    explicit UnsupportedError(const std::string& what) : std::runtime_error(what) {}
};

// Raised by slope() when consecutive walk vertices are not adjacent.
struct NotAWalkError : std::runtime_error {
    explicit NotAWalkError(const std::string& what) : std::runtime_error(what) {}
};

// Counters describing one solve_p9free run; used to check the branching
// invariants (starter depth strictly increases per round, at most 4 rounds).
struct SolveStats {
    int seed_size = 0;
    long long seed_colorings = 0;     // seed colorings that reached phase II
    long long branches_explored = 0;  // phase-III children visited
    int max_round = 0;                // deepest branching round performed
    long long depth_checks = 0;       // child-vs-parent depth comparisons
    long long depth_violations = 0;   // failed comparisons (must stay 0)
    long long subinstances_solved = 0;  // bad-path-free leaves reaching 2-SAT
    // Wall time per phase: seed search, bad-path branching (self time, child
    // exploration excluded), and the leaf list-reduction + 2-SAT work.
    double seed_seconds = 0;
    double branch_seconds = 0;
    double twosat_seconds = 0;
};

// Partition of the vertices by distance from the seed: S (the seed itself),
// X = N(S), Y = N(X) \ (S u X), Z = everything farther away.  X and Y are
// sub-partitioned by color index: X_i collects vertices whose smallest
// seed-neighbor color is i, and Y_i collects vertices whose smallest
// X-neighbor index is i.  There are no edges between S and Y u Z, nor
// between X and Z.
struct LayerStructure {
    enum Layer { LayerS = 0, LayerX = 1, LayerY = 2, LayerZ = 3 };

    std::vector<Vertex> seed;                  // sorted
    std::vector<std::vector<Vertex>> x_parts;  // index 1..k, each sorted
    std::vector<std::vector<Vertex>> y_parts;  // index 1..k, each sorted
    std::vector<Vertex> z;                     // sorted
    std::vector<int> layer_of;                 // per vertex: Layer enum
    std::vector<int> index_of;  // color index for S/X_i/Y_i members, 0 for Z
};

// One branch of the search: a list assignment together with the layer
// structure it is canonical for, the number of bad-path branching rounds
// applied so far, and a human-readable trace of the guesses made.
struct Subinstance {
    ListAssignment lists;
    LayerStructure layers;
    int round = 0;
    std::string provenance;
};

// An induced path a-b-c with a in Y_i, b and c outside Y_i (but in Y u Z)
// and both anticomplete to X_i.  Such paths are the obstructions phase III
// eliminates; a is called the starter.
struct BadPath {
    Vertex a = -1;
    Vertex b = -1;
    Vertex c = -1;
    int index = 0;  // the i with a in Y_i
};

// Builds the layer structure for a seed whose vertices already carry
// singleton lists.  Sub-partition indices follow the smallest-color /
// smallest-index rule.
inline LayerStructure partition_layers(const Graph& g, const std::vector<Vertex>& seed,
                                       const ListAssignment& l) {
    const int k = l.k;
    LayerStructure ls;
    ls.seed = seed;
    std::sort(ls.seed.begin(), ls.seed.end());
    ls.x_parts.assign(k + 1, {});
    ls.y_parts.assign(k + 1, {});
    ls.layer_of.assign(g.n, LayerStructure::LayerZ);
    ls.index_of.assign(g.n, 0);
    std::vector<char> in_seed(g.n, 0);
    for (Vertex s : ls.seed) {
        if (s < 0 || s >= g.n) throw std::logic_error("partition_layers: seed vertex out of range");
        if (list_size(l.lists[s]) != 1)
            throw std::logic_error("partition_layers: seed vertex without singleton list");
        in_seed[s] = 1;
        ls.layer_of[s] = LayerStructure::LayerS;
        ls.index_of[s] = mask_to_colors(l.lists[s]).front();
    }
    for (Vertex v = 0; v < g.n; ++v) {
        if (in_seed[v]) continue;
        int idx = INT_MAX;
        for (Vertex u : g.adj[v])
            if (in_seed[u]) idx = std::min(idx, ls.index_of[u]);
        if (idx == INT_MAX) continue;
        ls.layer_of[v] = LayerStructure::LayerX;
        ls.index_of[v] = idx;
        ls.x_parts[idx].push_back(v);
    }
    for (Vertex v = 0; v < g.n; ++v) {
        if (ls.layer_of[v] != LayerStructure::LayerZ) continue;
        int idx = INT_MAX;
        for (Vertex u : g.adj[v])
            if (ls.layer_of[u] == LayerStructure::LayerX) idx = std::min(idx, ls.index_of[u]);
        if (idx == INT_MAX) continue;
        ls.layer_of[v] = LayerStructure::LayerY;
        ls.index_of[v] = idx;
        ls.y_parts[idx].push_back(v);
    }
    for (Vertex v = 0; v < g.n; ++v)
        if (ls.layer_of[v] == LayerStructure::LayerZ) ls.z.push_back(v);
    return ls;
}

// Propagates the seed colors one layer at a time and checks the resulting
// shapes.  Returns false when the subinstance is infeasible (conflicting
// singletons, an emptied list, or an edge inside some X_i, which admits no
// coloring for k >= 5).  After success every X_i list is inside
// {i-1, i+1} and every Y_i list is inside {i, i-2, i+2}.
inline bool canonicalize(const Graph& g, Subinstance& sub) {
    const int k = sub.lists.k;
    const LayerStructure& ls = sub.layers;
    auto& lists = sub.lists.lists;

    for (const auto& [u, v] : g.edges) {
        if (list_size(lists[u]) == 1 && list_size(lists[v]) == 1) {
            int cu = mask_to_colors(lists[u]).front();
            int cv = mask_to_colors(lists[v]).front();
            int d = norm_color(cu - cv, k);
            if (d != 1 && d != k - 1) return false;
        }
    }
    for (int i = 1; i <= k; ++i) {
        auto is_seed_i = [&](Vertex v) {
            return ls.layer_of[v] == LayerStructure::LayerS && lists[v] == cbit(i, k);
        };
        auto is_x_i = [&](Vertex v) {
            return ls.layer_of[v] == LayerStructure::LayerX && ls.index_of[v] == i;
        };
        auto is_y_i = [&](Vertex v) {
            return ls.layer_of[v] == LayerStructure::LayerY && ls.index_of[v] == i;
        };
        for (const auto& [u, v] : g.edges) {
            if (is_seed_i(u) && is_x_i(v)) update_in_place(sub.lists, v, u);
            else if (is_seed_i(v) && is_x_i(u)) update_in_place(sub.lists, u, v);
        }
        for (const auto& [u, v] : g.edges) {
            if (is_x_i(u) && is_y_i(v)) update_in_place(sub.lists, v, u);
            else if (is_x_i(v) && is_y_i(u)) update_in_place(sub.lists, u, v);
        }
    }
    for (Vertex v = 0; v < g.n; ++v)
        if (lists[v] == 0) return false;
    for (const auto& [u, v] : g.edges) {
        if (ls.layer_of[u] == LayerStructure::LayerX && ls.layer_of[v] == LayerStructure::LayerX &&
            ls.index_of[u] == ls.index_of[v])
            return false;
    }
    for (int i = 1; i <= k; ++i) {
        for (Vertex x : ls.x_parts[i])
            if ((lists[x] & ~pair_mask(i, k)) != 0)
                throw std::logic_error("canonicalize: X list escapes {i-1,i+1}");
        for (Vertex y : ls.y_parts[i])
            if ((lists[y] & ~triple_mask(i, k)) != 0)
                throw std::logic_error("canonicalize: Y list escapes {i,i-2,i+2}");
    }
    return true;
}

// Lists all bad paths, grouped by starter index; result[i] holds the paths
// of index i in lexicographic (a, b, c) order.
inline std::vector<std::vector<BadPath>> find_bad_paths(const Graph& g, const Subinstance& sub) {
    const int k = sub.lists.k;
    const LayerStructure& ls = sub.layers;
    std::vector<std::vector<BadPath>> result(k + 1);
    auto outside_y_i = [&](Vertex w, int i) {
        int lay = ls.layer_of[w];
        if (lay != LayerStructure::LayerY && lay != LayerStructure::LayerZ) return false;
        return !(lay == LayerStructure::LayerY && ls.index_of[w] == i);
    };
    auto anticomplete_x_i = [&](Vertex w, int i) {
        for (Vertex u : g.adj[w])
            if (ls.layer_of[u] == LayerStructure::LayerX && ls.index_of[u] == i) return false;
        return true;
    };
    for (Vertex a = 0; a < g.n; ++a) {
        if (ls.layer_of[a] != LayerStructure::LayerY) continue;
        int i = ls.index_of[a];
        for (Vertex b : g.adj[a]) {
            if (!outside_y_i(b, i) || !anticomplete_x_i(b, i)) continue;
            for (Vertex c : g.adj[b]) {
                if (c == a || g.mat[a][c]) continue;
                if (!outside_y_i(c, i) || !anticomplete_x_i(c, i)) continue;
                result[i].push_back({a, b, c, i});
            }
        }
    }
    return result;
}

// Depth of a Y_i vertex: the largest m such that every X_i neighbor x of a
// starts an induced path a-x-P with all of P inside the seed and m vertices
// total (equivalently, the minimum over x of the longest such path).  A
// 9-vertex path found along the way is an induced P_9, so the search throws
// NotP9FreeError instead of returning.
inline int starter_depth(const Graph& g, const Subinstance& sub, Vertex a) {
    const LayerStructure& ls = sub.layers;
    if (a < 0 || a >= g.n || ls.layer_of[a] != LayerStructure::LayerY)
        throw std::logic_error("starter_depth: vertex is not in layer Y");
    int i = ls.index_of[a];
    std::vector<char> in_seed(g.n, 0);
    for (Vertex s : ls.seed) in_seed[s] = 1;

    std::vector<Vertex> path;
    std::vector<char> on_path(g.n, 0);
    int longest = 0;
    std::function<void()> extend = [&]() {
        longest = std::max(longest, (int)path.size());
        if (path.size() >= 9) throw NotP9FreeError("found a 9-vertex induced path");
        Vertex last = path.back();
        for (Vertex u : g.adj[last]) {
            if (!in_seed[u] || on_path[u]) continue;
            bool induced = true;
            for (size_t e = 0; e + 1 < path.size() && induced; ++e)
                if (g.mat[u][path[e]]) induced = false;
            if (!induced) continue;
            path.push_back(u);
            on_path[u] = 1;
            extend();
            on_path[u] = 0;
            path.pop_back();
        }
    };

    int depth = INT_MAX;
    for (Vertex x : g.adj[a]) {
        if (ls.layer_of[x] != LayerStructure::LayerX || ls.index_of[x] != i) continue;
        path = {a, x};
        on_path[a] = on_path[x] = 1;
        longest = 0;
        extend();
        on_path[a] = on_path[x] = 0;
        depth = std::min(depth, longest);
    }
    if (depth == INT_MAX) throw std::logic_error("starter_depth: starter has no X_i neighbor");
    return depth;
}

namespace detail {

// Layer structure after coloring the set A: the seed absorbs A, vertices of
// Y u Z adjacent to the new seed move to X at the index of their smallest
// singleton seed-neighbor color, and the Y/Z layers are recomputed by the
// first-index rule.  Old X vertices keep their index.
inline LayerStructure rebuild_layers(const Graph& g, const LayerStructure& old,
                                     const std::vector<Vertex>& a_set, const ListAssignment& l) {
    const int k = l.k;
    std::vector<char> in_a(g.n, 0);
    for (Vertex v : a_set) in_a[v] = 1;
    std::vector<Vertex> seed = old.seed;
    for (Vertex v : a_set)
        if (old.layer_of[v] != LayerStructure::LayerS) seed.push_back(v);
    std::sort(seed.begin(), seed.end());
    seed.erase(std::unique(seed.begin(), seed.end()), seed.end());

    LayerStructure ls;
    ls.seed = seed;
    ls.x_parts.assign(k + 1, {});
    ls.y_parts.assign(k + 1, {});
    ls.layer_of.assign(g.n, LayerStructure::LayerZ);
    ls.index_of.assign(g.n, 0);
    std::vector<char> in_seed(g.n, 0);
    for (Vertex s : seed) {
        if (list_size(l.lists[s]) != 1)
            throw std::logic_error("rebuild_layers: seed vertex without singleton list");
        in_seed[s] = 1;
        ls.layer_of[s] = LayerStructure::LayerS;
        ls.index_of[s] = mask_to_colors(l.lists[s]).front();
    }
    // X' per index: old X_j members not absorbed into the seed, plus the
    // promoted vertices K_j.
    std::vector<std::vector<Vertex>> promoted(k + 1);
    for (Vertex v = 0; v < g.n; ++v) {
        int lay = old.layer_of[v];
        if ((lay != LayerStructure::LayerY && lay != LayerStructure::LayerZ) || in_a[v]) continue;
        int j = INT_MAX;
        for (Vertex u : g.adj[v])
            if (in_seed[u]) j = std::min(j, ls.index_of[u]);
        if (j != INT_MAX) promoted[j].push_back(v);
    }
    for (int j = 1; j <= k; ++j) {
        std::vector<Vertex> part;
        for (Vertex x : old.x_parts[j])
            if (!in_seed[x]) part.push_back(x);
        part.insert(part.end(), promoted[j].begin(), promoted[j].end());
        std::sort(part.begin(), part.end());
        for (Vertex x : part) {
            ls.layer_of[x] = LayerStructure::LayerX;
            ls.index_of[x] = j;
        }
        ls.x_parts[j] = std::move(part);
    }
    for (Vertex v = 0; v < g.n; ++v) {
        if (ls.layer_of[v] != LayerStructure::LayerZ) continue;
        int idx = INT_MAX;
        for (Vertex u : g.adj[v])
            if (ls.layer_of[u] == LayerStructure::LayerX) idx = std::min(idx, ls.index_of[u]);
        if (idx == INT_MAX) continue;
        ls.layer_of[v] = LayerStructure::LayerY;
        ls.index_of[v] = idx;
        ls.y_parts[idx].push_back(v);
    }
    for (Vertex v = 0; v < g.n; ++v)
        if (ls.layer_of[v] == LayerStructure::LayerZ) ls.z.push_back(v);
    return ls;
}

}  // namespace detail

// Phase-III branching.  For every subset I of the indices with bad paths,
// starters outside I are restricted to their own index; for each i in I a
// bad path and a starter color q in {i-2, i+2} are guessed (which forces
// the X_i neighbors of that starter to the unique color adjacent to both
// q and i); for each i outside I the bad path minimizing |N(a) n X_i| and
// one witness X_i neighbor are fixed; finally every list-respecting
// coloring of the guessed-path vertices Q is enumerated.  Each surviving
// child has its layers rebuilt around the newly colored set A and is
// re-canonicalized before being passed to the visitor.  Enumeration order
// is deterministic (subset masks ascending, paths lexicographic, colors
// ascending); the visitor returns true to stop early, and branch_phase3
// returns whether it was stopped.  The union of the children is equivalent
// to the parent.
inline bool branch_phase3(const Graph& g, const Subinstance& parent,
                          const std::function<bool(Subinstance&&)>& visit) {
    const int k = parent.lists.k;
    const LayerStructure& pls = parent.layers;
    auto paths = find_bad_paths(g, parent);
    std::vector<int> ne;
    for (int i = 1; i <= k; ++i)
        if (!paths[i].empty()) ne.push_back(i);
    if (ne.empty()) {
        Subinstance child = parent;
        return visit(std::move(child));
    }

    auto x_neighbors = [&](Vertex a, int i) {
        std::vector<Vertex> out;
        for (Vertex u : g.adj[a])
            if (pls.layer_of[u] == LayerStructure::LayerX && pls.index_of[u] == i) out.push_back(u);
        return out;
    };
    std::vector<std::vector<Vertex>> starters(k + 1);
    for (int i : ne) {
        for (const BadPath& p : paths[i]) starters[i].push_back(p.a);
        std::sort(starters[i].begin(), starters[i].end());
        starters[i].erase(std::unique(starters[i].begin(), starters[i].end()), starters[i].end());
    }

    const int t = (int)ne.size();
    for (uint64_t mask = 0; mask < (uint64_t{1} << t); ++mask) {
        std::vector<int> isel, istar;
        for (int b = 0; b < t; ++b) (((mask >> b) & 1) ? isel : istar).push_back(ne[b]);

        // Starters of unselected indices keep only their own index color.
        ListAssignment base = parent.lists;
        bool dead = false;
        for (int i : istar) {
            for (Vertex a : starters[i]) {
                base.lists[a] &= cbit(i, k);
                if (base.lists[a] == 0) {
                    dead = true;
                    break;
                }
            }
            if (dead) break;
        }
        if (dead) continue;

        // Minimizing bad path plus one X_i witness per unselected index.
        struct StarPick {
            BadPath p;
            Vertex x;
        };
        std::vector<StarPick> star_picks;
        for (int i : istar) {
            const BadPath* best = nullptr;
            size_t best_count = SIZE_MAX;
            for (const BadPath& p : paths[i]) {
                size_t count = x_neighbors(p.a, i).size();
                if (count < best_count) {
                    best = &p;
                    best_count = count;
                }
            }
            star_picks.push_back({*best, x_neighbors(best->a, i).front()});
        }

        std::vector<std::pair<const BadPath*, int>> digits(isel.size());
        std::vector<Vertex> q_set;
        std::vector<int> q_col;
        ListAssignment work{k, {}};

        // Emits one child per surviving Q-coloring; returns true when the
        // visitor asks to stop.
        auto emit_child = [&]() -> bool {
            ListAssignment child_lists = work;
            for (size_t qi = 0; qi < q_set.size(); ++qi)
                child_lists.lists[q_set[qi]] = cbit(q_col[qi], k);
            std::vector<Vertex> a_set;
            for (size_t d = 0; d < digits.size(); ++d) {
                const BadPath& p = *digits[d].first;
                for (Vertex x : x_neighbors(p.a, p.index)) a_set.push_back(x);
                a_set.push_back(p.a);
                a_set.push_back(p.b);
                a_set.push_back(p.c);
            }
            for (const StarPick& sp : star_picks) {
                a_set.push_back(sp.x);
                a_set.push_back(sp.p.a);
                a_set.push_back(sp.p.b);
                a_set.push_back(sp.p.c);
            }
            std::sort(a_set.begin(), a_set.end());
            a_set.erase(std::unique(a_set.begin(), a_set.end()), a_set.end());
            for (Vertex a : a_set) {
                for (Vertex u : g.adj[a]) {
                    update_in_place(child_lists, u, a);
                    if (child_lists.lists[u] == 0) return false;
                }
            }
            Subinstance child;
            child.lists = std::move(child_lists);
            child.layers = detail::rebuild_layers(g, pls, a_set, child.lists);
            child.round = parent.round + 1;
            child.provenance = parent.provenance + "|I={";
            for (size_t d = 0; d < isel.size(); ++d)
                child.provenance += (d ? "," : "") + std::to_string(isel[d]);
            child.provenance += "}";
            if (!canonicalize(g, child)) return false;
            return visit(std::move(child));
        };

        // Colors the guessed-path vertices Q in sorted order, pruning
        // against already-colored Q vertices and singleton neighbors.
        std::function<bool(size_t)> enum_q = [&](size_t pos) -> bool {
            if (pos == q_set.size()) return emit_child();
            Vertex v = q_set[pos];
            for (int c : mask_to_colors(work.lists[v])) {
                bool ok = true;
                for (size_t e = 0; e < pos && ok; ++e) {
                    if (!g.mat[v][q_set[e]]) continue;
                    int d = norm_color(q_col[e] - c, k);
                    ok = (d == 1 || d == k - 1);
                }
                for (size_t e = 0; e < g.adj[v].size() && ok; ++e) {
                    Vertex u = g.adj[v][e];
                    if (list_size(work.lists[u]) != 1) continue;
                    if (std::binary_search(q_set.begin(), q_set.end(), u)) continue;
                    int cu = mask_to_colors(work.lists[u]).front();
                    int d = norm_color(cu - c, k);
                    ok = (d == 1 || d == k - 1);
                }
                if (!ok) continue;
                q_col[pos] = c;
                if (enum_q(pos + 1)) return true;
            }
            return false;
        };

        // Applies one (path, starter color) tuple, then enumerates Q.
        auto emit_digit_combo = [&]() -> bool {
            work = base;
            for (size_t d = 0; d < isel.size(); ++d) {
                int i = isel[d];
                const BadPath& p = *digits[d].first;
                int q = digits[d].second;
                work.lists[p.a] = cbit(q, k);
                int forced =
                    (q == norm_color(i + 2, k)) ? norm_color(i + 1, k) : norm_color(i - 1, k);
                for (Vertex x : x_neighbors(p.a, i)) {
                    work.lists[x] &= cbit(forced, k);
                    if (work.lists[x] == 0) return false;
                }
            }
            q_set.clear();
            for (size_t d = 0; d < isel.size(); ++d) {
                q_set.push_back(digits[d].first->b);
                q_set.push_back(digits[d].first->c);
            }
            for (const StarPick& sp : star_picks) {
                q_set.push_back(sp.p.b);
                q_set.push_back(sp.p.c);
                q_set.push_back(sp.x);
            }
            std::sort(q_set.begin(), q_set.end());
            q_set.erase(std::unique(q_set.begin(), q_set.end()), q_set.end());
            q_col.assign(q_set.size(), 0);
            return enum_q(0);
        };

        std::function<bool(size_t)> enum_digits = [&](size_t pos) -> bool {
            if (pos == isel.size()) return emit_digit_combo();
            int i = isel[pos];
            for (const BadPath& p : paths[i]) {
                uint64_t qmask = base.lists[p.a] & (cbit(i - 2, k) | cbit(i + 2, k));
                for (int q : mask_to_colors(qmask)) {
                    digits[pos] = {&p, q};
                    if (enum_digits(pos + 1)) return true;
                }
            }
            return false;
        };

        if (enum_digits(0)) return true;
    }
    return false;
}

// Shrinks every Z list to at most two colors.  A vertex z whose Y neighbors
// live in Y_i can always avoid colors outside {i-1, i+1, i-3, i+3}, and
// within those, i-3 is only needed when i-1 is unavailable (symmetrically
// i+3 for i+1).  Structural requirements: Z is independent and each z sees
// exactly one Y index; both fail only on inputs with long induced paths.
inline void reduce_z_lists(const Graph& g, Subinstance& sub) {
    const int k = sub.lists.k;
    const LayerStructure& ls = sub.layers;
    for (Vertex z : ls.z) {
        int idx = 0;
        for (Vertex u : g.adj[z]) {
            switch (ls.layer_of[u]) {
                case LayerStructure::LayerZ:
                    throw NotP9FreeError("edge inside layer Z");
                case LayerStructure::LayerY: {
                    int i = ls.index_of[u];
                    if (idx == 0) idx = i;
                    else if (idx != i) throw NotP9FreeError("Z vertex adjacent to two Y classes");
                    break;
                }
                default:
                    throw std::logic_error("reduce_z_lists: Z vertex adjacent to seed or X");
            }
        }
        if (idx == 0) throw std::logic_error("reduce_z_lists: Z vertex without Y neighbor");
        uint64_t m = sub.lists.lists[z];
        uint64_t c1 = has_color(m, idx - 1, k) ? cbit(idx - 1, k) : (cbit(idx - 3, k) & m);
        uint64_t c2 = has_color(m, idx + 1, k) ? cbit(idx + 1, k) : (cbit(idx + 3, k) & m);
        sub.lists.lists[z] = c1 | c2;
    }
}

// Phase V: reduces on S u X u Y, reclassifies vertices by list shape
// (singletons, {i-1,i+1} pairs, subsets of {i,i-2,i+2}; Z stays Z), then
// prunes the 3-element lists component by component in the graph induced
// on the reclassified Y u Z:
//   - a component inside one class with an edge on its Y side collapses to
//     {i-2, i+2} when k = 5 and to nothing otherwise;
//   - an isolated Y vertex with a full 3-list is pinned to its center;
//   - a component spanning two consecutive classes i, i+1 drops i-2 on the
//     i side and i+3 on the other.
// Components spanning two non-consecutive classes keep their lists; three
// or more classes, mixed two-class-plus-Z components, or a two-class
// component with an internal same-class edge violate the bad-path-free
// structure and raise NotP9FreeError.  Returns false when some list
// becomes empty.
inline bool reduce_y_lists(const Graph& g, Subinstance& sub) {
    const int k = sub.lists.k;
    const LayerStructure& ls = sub.layers;
    auto& lists = sub.lists.lists;

    std::vector<char> active(g.n, 0);
    for (Vertex v = 0; v < g.n; ++v)
        active[v] = ls.layer_of[v] != LayerStructure::LayerZ;
    auto reduced = reduce_within(g, sub.lists, active);
    if (!reduced) return false;
    sub.lists = std::move(*reduced);
    for (Vertex v = 0; v < g.n; ++v)
        if (lists[v] == 0) return false;

    // Shape classes: 0 = singleton, 1 = pair {c-1,c+1}, 2 = inside a triple
    // {i,i-2,i+2} (only arises on layer Y), 3 = layer Z.
    std::vector<int> group(g.n, -1), gindex(g.n, 0);
    for (Vertex v = 0; v < g.n; ++v) {
        if (ls.layer_of[v] == LayerStructure::LayerZ) {
            group[v] = 3;
            continue;
        }
        if (list_size(lists[v]) == 1) {
            group[v] = 0;
            continue;
        }
        ListShape shape = classify_list(lists[v], k);
        if (shape.kind == ListShape::Pair) {
            group[v] = 1;
            gindex[v] = shape.center;
            continue;
        }
        if (ls.layer_of[v] == LayerStructure::LayerY) {
            int found = 0;
            for (int i = 1; i <= k && !found; ++i)
                if ((lists[v] & ~triple_mask(i, k)) == 0) found = i;
            if (found) {
                group[v] = 2;
                gindex[v] = found;
                continue;
            }
        }
        throw std::logic_error("reduce_y_lists: list shape escapes the expected classes");
    }

    std::vector<char> seen(g.n, 0);
    for (Vertex v0 = 0; v0 < g.n; ++v0) {
        if (seen[v0] || (group[v0] != 2 && group[v0] != 3)) continue;
        std::vector<Vertex> comp = {v0};
        seen[v0] = 1;
        for (size_t h = 0; h < comp.size(); ++h) {
            for (Vertex u : g.adj[comp[h]]) {
                if (seen[u] || (group[u] != 2 && group[u] != 3)) continue;
                seen[u] = 1;
                comp.push_back(u);
            }
        }
        std::sort(comp.begin(), comp.end());
        std::vector<int> idxs;
        bool has_z = false;
        for (Vertex v : comp) {
            if (group[v] == 3) has_z = true;
            else idxs.push_back(gindex[v]);
        }
        if (idxs.empty()) continue;  // purely Z component, nothing to do
        std::sort(idxs.begin(), idxs.end());
        idxs.erase(std::unique(idxs.begin(), idxs.end()), idxs.end());

        auto k5_or_empty = [&](Vertex v, int i) {
            lists[v] = (k == 5) ? (lists[v] & (cbit(i - 2, k) | cbit(i + 2, k))) : 0;
        };
        if (idxs.size() == 1) {
            int i = idxs[0];
            if (!has_z) {
                if (comp.size() >= 2) {
                    for (Vertex v : comp) k5_or_empty(v, i);
                } else if (list_size(lists[comp[0]]) == 3) {
                    lists[comp[0]] = cbit(i, k);
                }
            } else {
                bool y_edge = false;
                for (size_t p = 0; p < comp.size() && !y_edge; ++p)
                    for (size_t q = p + 1; q < comp.size() && !y_edge; ++q)
                        if (group[comp[p]] == 2 && group[comp[q]] == 2 &&
                            g.mat[comp[p]][comp[q]])
                            y_edge = true;
                if (y_edge) {
                    for (Vertex v : comp)
                        if (group[v] == 2) k5_or_empty(v, i);
                }
            }
        } else if (idxs.size() == 2) {
            if (has_z) throw NotP9FreeError("two-class Y component touches Z");
            for (Vertex v : comp)
                for (Vertex u : g.adj[v])
                    if (u > v && (group[u] == 2) && gindex[u] == gindex[v])
                        throw NotP9FreeError("two-class Y component has a same-class edge");
            int p = idxs[0], q = idxs[1];
            int i = 0;
            if (norm_color(p + 1, k) == q) i = p;
            else if (norm_color(q + 1, k) == p) i = q;
            if (i != 0) {
                int j = norm_color(i + 1, k);
                for (Vertex v : comp) {
                    if (list_size(lists[v]) != 3) continue;
                    if (gindex[v] == i) lists[v] &= ~cbit(i - 2, k);
                    else lists[v] &= ~cbit(j + 2, k);
                }
            }
        } else {
            throw NotP9FreeError("Y component spans three or more classes");
        }
    }
    for (Vertex v = 0; v < g.n; ++v)
        if (lists[v] == 0) return false;
    return true;
}

// Final step of a bad-path-free branch: every list now has size <= 2 except
// for a stable set A of centered 3-lists {i, i-2, i+2}.  The <=2 lists are
// encoded as 2-SAT directly; each A vertex is eliminated by clauses
// forbidding neighbor color pairs whose compatible subsets of its list are
// disjoint (the arising compatible sets are nested enough that pairwise
// intersection implies a common color, so the encoding is exact).  Returns
// the decoded coloring, with A vertices assigned the smallest color
// compatible with all their neighbors.
inline std::optional<Coloring> finalize_2sat(const Graph& g, const Subinstance& sub) {
    const int k = sub.lists.k;
    const auto& lists = sub.lists.lists;
    std::vector<Vertex> a_set;
    std::vector<char> in_a(g.n, 0);
    for (Vertex v = 0; v < g.n; ++v) {
        int size = list_size(lists[v]);
        if (size <= 2) continue;
        ListShape shape = classify_list(lists[v], k);
        if (size != 3 || shape.kind != ListShape::Triple)
            throw std::logic_error("finalize_2sat: wide list is not a centered triple");
        a_set.push_back(v);
        in_a[v] = 1;
    }
    for (Vertex v : a_set)
        for (Vertex u : g.adj[v])
            if (in_a[u]) throw std::logic_error("finalize_2sat: adjacent 3-lists");

    std::vector<Vertex> rest;
    for (Vertex v = 0; v < g.n; ++v)
        if (!in_a[v]) rest.push_back(v);
    InducedSubgraph isg = induced_subgraph(g, rest);
    std::vector<int> to_sub(g.n, -1);
    for (size_t idx = 0; idx < rest.size(); ++idx) to_sub[rest[idx]] = (int)idx;
    ListAssignment l2{k, {}};
    l2.lists.reserve(rest.size());
    for (Vertex v : rest) l2.lists.push_back(lists[v]);
    ListHomEncoding enc = encode_list_hom(isg.graph, l2);

    auto var_of = [&](Vertex u, int c) {
        for (const auto& [color, var] : enc.vertex_vars[to_sub[u]])
            if (color == c) return var;
        throw std::logic_error("finalize_2sat: missing variable for a list color");
    };
    auto window = [&](int c) { return cbit(c - 1, k) | cbit(c + 1, k); };
    for (Vertex v : a_set) {
        std::vector<std::tuple<Vertex, int, uint64_t>> choices;
        for (Vertex u : g.adj[v]) {
            for (int c : mask_to_colors(lists[u])) {
                uint64_t compat = window(c) & lists[v];
                if (compat == 0) enc.formula.add_unary(neg(var_of(u, c)));
                else choices.emplace_back(u, c, compat);
            }
        }
        for (size_t p = 0; p < choices.size(); ++p) {
            for (size_t q = p + 1; q < choices.size(); ++q) {
                if (std::get<0>(choices[p]) == std::get<0>(choices[q])) continue;
                if ((std::get<2>(choices[p]) & std::get<2>(choices[q])) != 0) continue;
                enc.formula.add_clause(neg(var_of(std::get<0>(choices[p]), std::get<1>(choices[p]))),
                                       neg(var_of(std::get<0>(choices[q]), std::get<1>(choices[q]))));
            }
        }
    }
    auto assignment = solve_2sat(enc.formula);
    if (!assignment) return std::nullopt;
    Coloring partial = decode_coloring(enc, *assignment, isg.graph.n);
    Coloring f(g.n, 0);
    for (size_t idx = 0; idx < rest.size(); ++idx) f[rest[idx]] = partial[idx];
    for (Vertex v : a_set) {
        uint64_t m = lists[v];
        for (Vertex u : g.adj[v]) m &= window(f[u]);
        if (m == 0) throw std::logic_error("finalize_2sat: no compatible color for a 3-list vertex");
        f[v] = mask_to_colors(m).front();
    }
    if (!verify(g, f, sub.lists))
        throw std::logic_error("finalize_2sat: produced coloring fails verification");
    return f;
}

namespace detail {

// Depth-first exploration of the phase-III branch tree.  parent_depth is 0
// at the root; once branching has started, every child that still has bad
// paths must have strictly larger minimum starter depth.
inline double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

inline std::optional<Coloring> explore(const Graph& g, Subinstance& sub, int parent_depth,
                                       SolveStats* stats) {
    auto t0 = std::chrono::steady_clock::now();
    auto paths = find_bad_paths(g, sub);
    bool any = false;
    for (const auto& part : paths)
        if (!part.empty()) any = true;
    if (!any) {
        if (stats) {
            stats->subinstances_solved++;
            stats->branch_seconds += seconds_since(t0);
        }
        auto t1 = std::chrono::steady_clock::now();
        std::optional<Coloring> leaf;
        reduce_z_lists(g, sub);
        if (reduce_y_lists(g, sub)) leaf = finalize_2sat(g, sub);
        if (stats) stats->twosat_seconds += seconds_since(t1);
        return leaf;
    }

    std::vector<Vertex> all_starters;
    for (const auto& part : paths)
        for (const BadPath& p : part) all_starters.push_back(p.a);
    std::sort(all_starters.begin(), all_starters.end());
    all_starters.erase(std::unique(all_starters.begin(), all_starters.end()), all_starters.end());
    int depth = INT_MAX;
    for (Vertex a : all_starters) depth = std::min(depth, starter_depth(g, sub, a));
    if (depth < 3) throw std::logic_error("explore: starter depth below 3");
    if (depth > 6)
        throw NotP9FreeError("bad-path starter depth exceeds the P_9-free bound");
    if (parent_depth > 0) {
        if (stats) stats->depth_checks++;
        if (depth <= parent_depth) {
            if (stats) stats->depth_violations++;
            throw NotP9FreeError("starter depth failed to increase across a branching round");
        }
    }
    if (sub.round >= 6) throw NotP9FreeError("bad paths persist after six branching rounds");
    if (stats) stats->max_round = std::max(stats->max_round, sub.round + 1);

    std::optional<Coloring> found;
    double child_seconds = 0;
    branch_phase3(g, sub, [&](Subinstance&& child) {
        if (stats) stats->branches_explored++;
        auto tc = std::chrono::steady_clock::now();
        auto result = explore(g, child, depth, stats);
        child_seconds += seconds_since(tc);
        if (result) {
            found = std::move(result);
            return true;
        }
        return false;
    });
    if (stats) stats->branch_seconds += seconds_since(t0) - child_seconds;
    return found;
}

}  // namespace detail

// Five-phase solver for connected triangle-free instances with k in
// {5,7,9}.  Returns the first coloring found in deterministic branch order,
// or nullopt when no branch succeeds.  Throws NotP9FreeError when the graph
// lacks a small dominating seed or violates a bad-path structure theorem —
// both certificates that it contains a long induced path.
inline std::optional<Coloring> solve_p9free(const Graph& g, const ListAssignment& l,
                                            SolveStats* stats = nullptr) {
    const int k = l.k;
    if (k != 5 && k != 7 && k != 9)
        throw std::invalid_argument("solve_p9free: k must be 5, 7, or 9");
    if ((int)l.lists.size() != g.n)
        throw std::invalid_argument("solve_p9free: list count differs from vertex count");
    if (g.n == 0) return Coloring{};
    if (!is_connected(g)) throw std::invalid_argument("solve_p9free: graph must be connected");
    if (!is_triangle_free(g))
        throw std::invalid_argument("solve_p9free: graph must be triangle-free");

    std::vector<Vertex> seed;
    auto t0 = std::chrono::steady_clock::now();
    try {
        seed = find_seed(g);
    } catch (const NoSeedError&) {
        throw NotP9FreeError("no connected 7-vertex set dominates within distance 3");
    }
    if (stats) {
        stats->seed_size = (int)seed.size();
        stats->seed_seconds += detail::seconds_since(t0);
    }

    // BFS order of the seed subgraph from its smallest vertex: each later
    // vertex has an earlier neighbor, so at most two colors survive the
    // adjacency prune per step.
    std::vector<char> in_seed(g.n, 0);
    for (Vertex s : seed) in_seed[s] = 1;
    std::vector<Vertex> order = {*std::min_element(seed.begin(), seed.end())};
    std::vector<char> queued(g.n, 0);
    queued[order[0]] = 1;
    for (size_t h = 0; h < order.size(); ++h) {
        for (Vertex u : g.adj[order[h]]) {
            if (!in_seed[u] || queued[u]) continue;
            queued[u] = 1;
            order.push_back(u);
        }
    }
    if (order.size() != seed.size()) throw std::logic_error("solve_p9free: seed is not connected");

    std::optional<Coloring> answer;
    std::vector<int> seed_colors(order.size(), 0);
    std::function<bool(size_t)> enum_seed = [&](size_t pos) -> bool {
        if (pos == order.size()) {
            if (stats) stats->seed_colorings++;
            Subinstance root;
            root.lists = l;
            for (size_t e = 0; e < order.size(); ++e)
                root.lists.lists[order[e]] = cbit(seed_colors[e], k);
            root.layers = partition_layers(g, seed, root.lists);
            root.round = 0;
            root.provenance = "seed";
            if (!canonicalize(g, root)) return false;
            auto result = detail::explore(g, root, 0, stats);
            if (result) {
                answer = std::move(result);
                return true;
            }
            return false;
        }
        Vertex s = order[pos];
        for (int c : mask_to_colors(l.lists[s])) {
            bool ok = true;
            for (size_t e = 0; e < pos && ok; ++e) {
                if (!g.mat[s][order[e]]) continue;
                int d = norm_color(seed_colors[e] - c, k);
                ok = (d == 1 || d == k - 1);
            }
            if (!ok) continue;
            seed_colors[pos] = c;
            if (enum_seed(pos + 1)) return true;
        }
        return false;
    };
    enum_seed(0);
    if (answer && !verify(g, *answer, l))
        throw std::logic_error("solve_p9free: coloring violates the input lists");
    return answer;
}

// Window-localization solver for k >= 10.  Asserts P_9-freeness up front
// (the 8-color window bound needs it), splits into connected components,
// and for each component tries every cyclic 8-color window with both
// bipartition-parity alignments.  Within a window the instance becomes a
// list homomorphism into an 8-vertex path; with parities separated, arc
// consistency followed by taking each smallest surviving position is exact.
// Non-bipartite components are unsatisfiable outright: a P_9-free graph has
// an induced odd cycle of length <= 9 < k, which no C_k admits.
inline std::optional<Coloring> solve_localized(const Graph& g, const ListAssignment& l,
                                               SolveStats* stats = nullptr) {
    (void)stats;
    const int k = l.k;
    if (k < 10) throw std::invalid_argument("solve_localized: k must be at least 10");
    if ((int)l.lists.size() != g.n)
        throw std::invalid_argument("solve_localized: list count differs from vertex count");
    if (find_induced_path(g, 9))
        throw NotP9FreeError("graph contains a 9-vertex induced path");
    if (g.n == 0) return Coloring{};

    const Graph target = path_graph(8);
    Coloring f(g.n, 0);
    for (const auto& comp : connected_components(g)) {
        InducedSubgraph isg = induced_subgraph(g, comp);
        const Graph& h = isg.graph;
        auto side = bipartition(h);
        if (!side) return std::nullopt;
        bool solved = false;
        for (int j = 1; j <= k && !solved; ++j) {
            for (int parity = 0; parity < 2 && !solved; ++parity) {
                // Position p (1..8) stands for color j + p - 1; vertices on
                // side 0 take odd positions when parity is 0, even when 1.
                ListAssignment pos_lists{8, std::vector<uint64_t>(h.n, 0)};
                for (Vertex v = 0; v < h.n; ++v) {
                    for (int p = 1; p <= 8; ++p) {
                        bool odd_position = (p % 2 == 1);
                        bool side_zero = ((*side)[v] == 0);
                        if ((odd_position == side_zero) != (parity == 0)) continue;
                        if (has_color(l.lists[isg.to_parent[v]], j + p - 1, k))
                            pos_lists.lists[v] |= cbit(p, 8);
                    }
                }
                auto consistent = arc_consistency(h, pos_lists, target);
                if (!consistent) continue;
                Coloring local(h.n, 0);
                for (Vertex v = 0; v < h.n; ++v) {
                    int p = mask_to_colors(consistent->lists[v]).front();
                    local[v] = norm_color(j + p - 1, k);
                }
                ListAssignment restricted{k, {}};
                for (Vertex v = 0; v < h.n; ++v)
                    restricted.lists.push_back(l.lists[isg.to_parent[v]]);
                if (!verify(h, local, restricted))
                    throw std::logic_error("solve_localized: window assignment is not a coloring");
                for (Vertex v = 0; v < h.n; ++v) f[isg.to_parent[v]] = local[v];
                solved = true;
            }
        }
        if (!solved) return std::nullopt;
    }
    return f;
}

// Entry point: dispatches on k.  k in {5,7,9} runs the five-phase solver
// per connected component after a triangle check (a triangle admits no
// homomorphism into a long cycle); k >= 10 runs the window solver; k in
// {3,4,6,8} is outside both algorithms' guarantees and raises
// UnsupportedError.
inline std::optional<Coloring> solve(const Graph& g, const ListAssignment& l,
                                     SolveStats* stats = nullptr) {
    const int k = l.k;
    if (k < 3 || k > 64) throw std::invalid_argument("solve: k must be between 3 and 64");
    if (k == 3 || k == 4 || k == 6 || k == 8)
        throw UnsupportedError("solve: no structured algorithm for k in {3,4,6,8}");
    if ((int)l.lists.size() != g.n)
        throw std::invalid_argument("solve: list count differs from vertex count");

    std::optional<Coloring> answer;
    if (k >= 10) {
        answer = solve_localized(g, l, stats);
    } else {
        Coloring f(g.n, 0);
        bool sat = true;
        for (const auto& comp : connected_components(g)) {
            InducedSubgraph isg = induced_subgraph(g, comp);
            if (!is_triangle_free(isg.graph)) {
                sat = false;
                break;
            }
            ListAssignment sub{k, {}};
            for (Vertex v : isg.to_parent) sub.lists.push_back(l.lists[v]);
            auto part = solve_p9free(isg.graph, sub, stats);
            if (!part) {
                sat = false;
                break;
            }
            for (Vertex v = 0; v < isg.graph.n; ++v) f[isg.to_parent[v]] = (*part)[v];
        }
        if (sat) answer = std::move(f);
    }
    if (answer && !verify(g, *answer, l))
        throw std::logic_error("solve: produced coloring fails verification");
    return answer;
}

// A homomorphism into C_k orients every edge toward the successor color.
// dir[u][v] is +1 for an arc u->v, -1 for v->u and 0 for a non-edge.
struct OrientedGraph {
    int n = 0;
    std::vector<std::pair<Vertex, Vertex>> arcs;
    std::vector<std::vector<int>> dir;
};

inline OrientedGraph orient_by_hom(const Graph& g, const Coloring& f, int k) {
    if (!verify(g, f, k)) throw std::invalid_argument("orient_by_hom: f is not a C_k-coloring");
    OrientedGraph og;
    og.n = g.n;
    og.dir.assign(g.n, std::vector<int>(g.n, 0));
    for (const auto& [u, v] : g.edges) {
        if (norm_color(f[v] - f[u], k) == 1) {
            og.arcs.emplace_back(u, v);
            og.dir[u][v] = 1;
            og.dir[v][u] = -1;
        } else {
            og.arcs.emplace_back(v, u);
            og.dir[v][u] = 1;
            og.dir[u][v] = -1;
        }
    }
    return og;
}

// Slope of a walk: forward arcs minus backward arcs.
inline int slope(const OrientedGraph& og, const std::vector<Vertex>& walk) {
    if (walk.empty()) throw NotAWalkError("slope: empty walk");
    for (Vertex v : walk)
        if (v < 0 || v >= og.n) throw NotAWalkError("slope: vertex out of range");
    int s = 0;
    for (size_t e = 0; e + 1 < walk.size(); ++e) {
        int d = og.dir[walk[e]][walk[e + 1]];
        if (d == 0) throw NotAWalkError("slope: consecutive walk vertices are not adjacent");
        s += d;
    }
    return s;
}

// Smallest cyclic color interval containing the image of f, as a
// (start, length) pair; ties favor the smallest start.  Found by locating
// the largest cyclic gap between consecutive used colors.
inline std::pair<int, int> image_window(const Coloring& f, int k) {
    uint64_t used = 0;
    for (int c : f) {
        if (c < 1 || c > k) throw std::invalid_argument("image_window: color out of range");
        used |= cbit(c, k);
    }
    std::vector<int> colors = mask_to_colors(used);
    if (colors.empty()) return {1, 0};
    int best_gap = -1, best_start = 0;
    for (size_t e = 0; e < colors.size(); ++e) {
        int cur = colors[e];
        int next = colors[(e + 1) % colors.size()];
        int gap = norm_color(next - cur, k);
        if (colors.size() == 1) gap = k;
        int start = next;
        if (gap > best_gap || (gap == best_gap && start < best_start)) {
            best_gap = gap;
            best_start = start;
        }
    }
    return {best_start, k - best_gap + 1};
}

}  // namespace cyclehom
