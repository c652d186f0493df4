#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cyclehom {

using Vertex = int;

struct GraphError : std::runtime_error {
    explicit GraphError(const std::string& what) : std::runtime_error(what) {}
};

// Simple undirected graph. Vertices are 0..n-1, edges stored once with
// first < second, adjacency lists sorted ascending. The dense matrix keeps
// adjacency tests O(1); instances here are small enough that n^2 bytes is
// never a concern.
struct Graph {
    int n = 0;
    std::vector<std::pair<Vertex, Vertex>> edges;
    std::vector<std::vector<Vertex>> adj;
    std::vector<std::vector<char>> mat;

    bool has_edge(Vertex u, Vertex v) const { return mat[u][v] != 0; }
    int degree(Vertex v) const { return static_cast<int>(adj[v].size()); }
    int edge_count() const { return static_cast<int>(edges.size()); }
};

inline Graph build_graph(int n, std::vector<std::pair<Vertex, Vertex>> edge_list) {
    if (n < 0) throw GraphError("vertex count must be nonnegative");
    Graph g;
    g.n = n;
    g.mat.assign(n, std::vector<char>(n, 0));
    g.adj.assign(n, {});
    for (auto& [u, v] : edge_list) {
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw GraphError("edge endpoint out of range: " + std::to_string(u) + " " +
                             std::to_string(v));
        if (u == v) throw GraphError("self-loop at vertex " + std::to_string(u));
        if (u > v) std::swap(u, v);
        if (g.mat[u][v]) continue;  // ignore duplicates
        g.mat[u][v] = g.mat[v][u] = 1;
        g.edges.emplace_back(u, v);
    }
    std::sort(g.edges.begin(), g.edges.end());
    for (auto [u, v] : g.edges) {
        g.adj[u].push_back(v);
        g.adj[v].push_back(u);
    }
    for (auto& nb : g.adj) std::sort(nb.begin(), nb.end());
    return g;
}

inline Graph cycle_graph(int k) {
    if (k < 3) throw GraphError("cycle needs at least 3 vertices");
    std::vector<std::pair<Vertex, Vertex>> e;
    for (int i = 0; i < k; ++i) e.emplace_back(i, (i + 1) % k);
    return build_graph(k, std::move(e));
}

inline Graph path_graph(int t) {
    if (t < 1) throw GraphError("path needs at least 1 vertex");
    std::vector<std::pair<Vertex, Vertex>> e;
    for (int i = 0; i + 1 < t; ++i) e.emplace_back(i, i + 1);
    return build_graph(t, std::move(e));
}

// Multi-source BFS; -1 marks unreachable vertices.
inline std::vector<int> bfs_distances(const Graph& g, const std::vector<Vertex>& sources) {
    std::vector<int> dist(g.n, -1);
    std::queue<Vertex> q;
    for (Vertex s : sources) {
        if (dist[s] == -1) {
            dist[s] = 0;
            q.push(s);
        }
    }
    while (!q.empty()) {
        Vertex u = q.front();
        q.pop();
        for (Vertex w : g.adj[u]) {
            if (dist[w] == -1) {
                dist[w] = dist[u] + 1;
                q.push(w);
            }
        }
    }
    return dist;
}

// Components sorted by smallest member, members ascending.
inline std::vector<std::vector<Vertex>> connected_components(const Graph& g) {
    std::vector<std::vector<Vertex>> comps;
    std::vector<char> seen(g.n, 0);
    for (Vertex s = 0; s < g.n; ++s) {
        if (seen[s]) continue;
        std::vector<Vertex> comp;
        std::queue<Vertex> q;
        seen[s] = 1;
        q.push(s);
        while (!q.empty()) {
            Vertex u = q.front();
            q.pop();
            comp.push_back(u);
            for (Vertex w : g.adj[u])
                if (!seen[w]) {
                    seen[w] = 1;
                    q.push(w);
                }
        }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    }
    return comps;
}

inline bool is_connected(const Graph& g) {
    if (g.n <= 1) return true;
    return connected_components(g).size() == 1;
}

struct InducedSubgraph {
    Graph graph;
    std::vector<Vertex> to_parent;  // new id -> original id
};

// vertices may arrive in any order; new ids follow ascending original ids.
inline InducedSubgraph induced_subgraph(const Graph& g, std::vector<Vertex> vertices) {
    std::sort(vertices.begin(), vertices.end());
    vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
    std::vector<int> to_child(g.n, -1);
    for (int i = 0; i < static_cast<int>(vertices.size()); ++i) to_child[vertices[i]] = i;
    std::vector<std::pair<Vertex, Vertex>> e;
    for (auto [u, v] : g.edges)
        if (to_child[u] >= 0 && to_child[v] >= 0) e.emplace_back(to_child[u], to_child[v]);
    InducedSubgraph sub;
    sub.graph = build_graph(static_cast<int>(vertices.size()), std::move(e));
    sub.to_parent = std::move(vertices);
    return sub;
}

inline int max_degree(const Graph& g) {
    int d = 0;
    for (Vertex v = 0; v < g.n; ++v) d = std::max(d, g.degree(v));
    return d;
}

inline bool is_triangle_free(const Graph& g) {
    for (auto [u, v] : g.edges)
        for (Vertex w : g.adj[u])
            if (w != v && g.has_edge(w, v)) return false;
    return true;
}

// Girth in edges; -1 when the graph is acyclic. BFS from every vertex, a
// non-tree edge at (u,w) closes a cycle of length dist[u]+dist[w]+1.
inline int girth(const Graph& g) {
    int best = -1;
    for (Vertex s = 0; s < g.n; ++s) {
        std::vector<int> dist(g.n, -1), parent(g.n, -1);
        std::queue<Vertex> q;
        dist[s] = 0;
        q.push(s);
        while (!q.empty()) {
            Vertex u = q.front();
            q.pop();
            for (Vertex w : g.adj[u]) {
                if (dist[w] == -1) {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    q.push(w);
                } else if (w != parent[u]) {
                    int len = dist[u] + dist[w] + 1;
                    if (best == -1 || len < best) best = len;
                }
            }
        }
    }
    return best;
}

inline std::optional<std::vector<char>> bipartition(const Graph& g) {
    std::vector<char> side(g.n, -1);
    for (Vertex s = 0; s < g.n; ++s) {
        if (side[s] != -1) continue;
        side[s] = 0;
        std::queue<Vertex> q;
        q.push(s);
        while (!q.empty()) {
            Vertex u = q.front();
            q.pop();
            for (Vertex w : g.adj[u]) {
                if (side[w] == -1) {
                    side[w] = static_cast<char>(1 - side[u]);
                    q.push(w);
                } else if (side[w] == side[u]) {
                    return std::nullopt;
                }
            }
        }
    }
    return side;
}

inline bool is_bipartite(const Graph& g) { return bipartition(g).has_value(); }

// First induced path on t vertices in DFS order (start vertices ascending,
// neighbours ascending; a vertex may extend the path only if its sole
// path-neighbour is the current endpoint). Empty optional if none exists.
inline std::optional<std::vector<Vertex>> find_induced_path(const Graph& g, int t) {
    if (t <= 0) return std::vector<Vertex>{};
    if (t == 1) return g.n > 0 ? std::optional<std::vector<Vertex>>{{0}} : std::nullopt;
    std::vector<Vertex> path;
    std::vector<char> in_path(g.n, 0);
    std::optional<std::vector<Vertex>> found;

    auto extend = [&](auto&& self) -> bool {
        if (static_cast<int>(path.size()) == t) {
            found = path;
            return true;
        }
        Vertex last = path.back();
        for (Vertex w : g.adj[last]) {
            if (in_path[w]) continue;
            bool ok = true;
            for (Vertex p : path)
                if (p != last && g.has_edge(p, w)) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            path.push_back(w);
            in_path[w] = 1;
            if (self(self)) return true;
            in_path[w] = 0;
            path.pop_back();
        }
        return false;
    };

    for (Vertex s = 0; s < g.n; ++s) {
        path = {s};
        std::fill(in_path.begin(), in_path.end(), 0);
        in_path[s] = 1;
        if (extend(extend)) return found;
    }
    return std::nullopt;
}

// P_t-free: no induced path on t vertices.
inline bool is_pt_free(const Graph& g, int t) { return !find_induced_path(g, t).has_value(); }

inline std::vector<Vertex> branch_vertices(const Graph& g) {
    std::vector<Vertex> out;
    for (Vertex v = 0; v < g.n; ++v)
        if (g.degree(v) >= 3) out.push_back(v);
    return out;
}

// Every simple path between two branch vertices (degree >= 3) has edge
// count divisible by p. Exhaustive path enumeration; intended for the small
// constructed instances where segment structure keeps this cheap.
inline bool is_in_gamma_p(const Graph& g, int p) {
    if (p <= 1) return true;
    std::vector<Vertex> branch = branch_vertices(g);
    if (branch.size() < 2) return true;
    std::vector<char> is_branch(g.n, 0);
    for (Vertex b : branch) is_branch[b] = 1;

    std::vector<char> in_path(g.n, 0);
    bool ok = true;
    auto dfs = [&](auto&& self, Vertex u, Vertex start, int len) -> void {
        if (!ok) return;
        if (u != start && is_branch[u] && len % p != 0) {
            ok = false;
            return;
        }
        for (Vertex w : g.adj[u]) {
            if (in_path[w]) continue;
            in_path[w] = 1;
            self(self, w, start, len + 1);
            in_path[w] = 0;
            if (!ok) return;
        }
    };
    for (Vertex b : branch) {
        std::fill(in_path.begin(), in_path.end(), 0);
        in_path[b] = 1;
        dfs(dfs, b, b, 0);
        if (!ok) return false;
    }
    return true;
}

struct NoSeedError : std::runtime_error {
    NoSeedError() : std::runtime_error("no connected set of at most 7 vertices dominates the graph within distance 3") {}
};

namespace detail {

// ESU-style enumeration of connected vertex sets: each set is generated
// exactly once, rooted at its smallest vertex, extensions ascending.
inline bool enumerate_connected_sets(const Graph& g, int size,
                                     const std::function<bool(const std::vector<Vertex>&)>& accept) {
    std::vector<Vertex> sub;
    std::vector<char> in_sub(g.n, 0);

    auto extend = [&](auto&& self, Vertex root, std::vector<Vertex> ext) -> bool {
        if (static_cast<int>(sub.size()) == size) return accept(sub);
        while (!ext.empty()) {
            Vertex w = ext.front();
            ext.erase(ext.begin());
            std::vector<Vertex> next_ext = ext;
            for (Vertex u : g.adj[w]) {
                if (u <= root || in_sub[u]) continue;
                bool fresh = true;  // not adjacent to the existing set and not queued
                for (Vertex s : sub)
                    if (g.has_edge(u, s)) {
                        fresh = false;
                        break;
                    }
                if (fresh && std::find(next_ext.begin(), next_ext.end(), u) == next_ext.end())
                    next_ext.push_back(u);
            }
            std::sort(next_ext.begin(), next_ext.end());
            sub.push_back(w);
            in_sub[w] = 1;
            if (self(self, root, std::move(next_ext))) return true;
            in_sub[w] = 0;
            sub.pop_back();
        }
        return false;
    };

    for (Vertex root = 0; root < g.n; ++root) {
        sub = {root};
        std::fill(in_sub.begin(), in_sub.end(), 0);
        in_sub[root] = 1;
        std::vector<Vertex> ext;
        for (Vertex u : g.adj[root])
            if (u > root) ext.push_back(u);
        std::sort(ext.begin(), ext.end());
        if (static_cast<int>(sub.size()) == size) {
            if (accept(sub)) return true;
        } else if (extend(extend, root, std::move(ext))) {
            return true;
        }
    }
    return false;
}

}  // namespace detail

// Smallest connected set S (|S| <= 7) whose distance-3 ball covers the whole
// graph; ties broken by enumeration order (roots ascending, extensions
// ascending). Throws NoSeedError when none exists.
inline std::vector<Vertex> find_seed(const Graph& g) {
    std::vector<Vertex> result;
    for (int size = 1; size <= 7 && size <= g.n; ++size) {
        bool hit = detail::enumerate_connected_sets(g, size, [&](const std::vector<Vertex>& s) {
            std::vector<int> dist = bfs_distances(g, s);
            for (int d : dist)
                if (d < 0 || d > 3) return false;
            std::vector<Vertex> sorted = s;
            std::sort(sorted.begin(), sorted.end());
            result = std::move(sorted);
            return true;
        });
        if (hit) return result;
    }
    throw NoSeedError();
}

}  // namespace cyclehom
