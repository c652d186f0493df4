// Acceptance suite: ten independent property checks, one PASS/FAIL line
// each, exit status nonzero when anything fails.  Ground truth throughout
// is the exhaustive oracle; every criterion pins its own instance counts
// and wall-clock budget as constants next to the code that uses them.

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <cyclehom/gadgets.hpp>
#include <cyclehom/graph.hpp>
#include <cyclehom/graph_io.hpp>
#include <cyclehom/lists.hpp>
#include <cyclehom/oracle.hpp>
#include <cyclehom/solver.hpp>
#include <cyclehom/twosat.hpp>

using namespace cyclehom;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Result {
    bool pass = false;
    std::string detail;
    double seconds = 0;
    double budget = 0;  // 0 = untimed
};

// ---------------------------------------------------------------------------
// instance generators
// ---------------------------------------------------------------------------

Graph from_edge_set(int n, const std::set<std::pair<int, int>>& es) {
    return build_graph(n, {es.begin(), es.end()});
}

// Layered random graph: vertices assigned to 2-4 BFS-style layers, every
// vertex attached to the previous layer, extra edges between and within
// layers.  Returns nullopt when the draw misses the structural filters.
std::optional<Graph> layered_random(std::mt19937& rng, int n, bool need_triangle_free) {
    int layers = 2 + (int)(rng() % 3);
    if (layers > n) return std::nullopt;
    std::vector<int> layer(n);
    for (int i = 0; i < n; ++i) layer[i] = i < layers ? i : (int)(rng() % layers);
    std::vector<std::vector<int>> by(layers);
    for (int i = 0; i < n; ++i) by[layer[i]].push_back(i);
    for (int l = 0; l < layers; ++l)
        if (by[l].empty()) return std::nullopt;

    std::set<std::pair<int, int>> es;
    for (int v = 0; v < n; ++v) {
        if (layer[v] == 0) continue;
        const auto& prev = by[layer[v] - 1];
        int u = prev[rng() % prev.size()];
        es.insert({std::min(u, v), std::max(u, v)});
    }
    std::uniform_real_distribution<double> coin(0, 1);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            int d = std::abs(layer[u] - layer[v]);
            double p = d == 1 ? 0.25 : d == 0 ? 0.12 : 0.0;
            if (p > 0 && coin(rng) < p) es.insert({u, v});
        }
    Graph g = from_edge_set(n, es);
    if (!is_connected(g)) return std::nullopt;
    if (need_triangle_free && !is_triangle_free(g)) return std::nullopt;
    if (find_induced_path(g, 9)) return std::nullopt;
    return g;
}

// Spider-frame random graph: a short center path, legs of length up to 3,
// and a few extra edges between deep leg vertices.  This family reaches the
// deepest branching the main solver performs at n <= 14.
std::optional<Graph> spider_random(std::mt19937& rng, int n) {
    std::set<std::pair<int, int>> es;
    int centers = 1 + (int)(rng() % 3);
    if (centers >= n) return std::nullopt;
    for (int i = 1; i < centers; ++i) es.insert({i - 1, i});
    std::vector<int> depth(n, 0);
    int next = centers;
    int guard = 0;
    while (next < n && guard++ < 400) {
        int u = (int)(rng() % next);
        if (depth[u] >= 3) continue;
        es.insert({u, next});
        depth[next] = depth[u] + 1;
        ++next;
    }
    if (next < n) return std::nullopt;
    int extras = 1 + (int)(rng() % 3);
    for (int e = 0; e < extras; ++e) {
        int u = (int)(rng() % n), v = (int)(rng() % n);
        if (u == v || depth[u] < 2 || depth[v] < 2) continue;
        es.insert({std::min(u, v), std::max(u, v)});
    }
    Graph g = from_edge_set(n, es);
    if (!is_connected(g) || !is_triangle_free(g) || find_induced_path(g, 9)) return std::nullopt;
    return g;
}

// Frozen spider-frame instances on which the main solver provably reaches a
// second branching round, so the depth-progression counters are exercised
// non-vacuously (criterion 10).
std::vector<Graph> deep_branching_graphs() {
    std::vector<Graph> out;
    out.push_back(build_graph(12, {{0, 1}, {0, 2}, {1, 3}, {2, 6}, {2, 8}, {3, 4}, {3, 5},
                                   {3, 11}, {4, 10}, {6, 7}, {6, 9}, {8, 10}, {9, 11}}));
    out.push_back(build_graph(13, {{0, 1},
                                   {0, 6},
                                   {1, 2},
                                   {1, 3},
                                   {1, 10},
                                   {2, 5},
                                   {3, 4},
                                   {3, 11},
                                   {4, 5},
                                   {6, 7},
                                   {7, 8},
                                   {7, 9},
                                   {7, 12},
                                   {10, 12}}));
    out.push_back(build_graph(11, {{0, 1},
                                   {0, 2},
                                   {1, 4},
                                   {1, 5},
                                   {1, 10},
                                   {2, 3},
                                   {3, 8},
                                   {3, 9},
                                   {4, 7},
                                   {5, 6},
                                   {5, 8},
                                   {6, 7}}));
    return out;
}

// Small base graphs whose subdivisions stay triangle-free, P_9-free and
// within 14 vertices; paired with the subdivision factor to use.
std::vector<std::pair<Graph, int>> subdivided_bases() {
    std::vector<std::pair<Graph, int>> out;
    Graph triangle = build_graph(3, {{0, 1}, {0, 2}, {1, 2}});
    Graph paw = build_graph(4, {{0, 1}, {0, 2}, {1, 2}, {2, 3}});
    Graph diamond = build_graph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {2, 3}});
    Graph k4 = build_graph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
    Graph k23 = build_graph(5, {{0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4}});
    Graph bull = build_graph(5, {{0, 1}, {0, 2}, {1, 2}, {1, 3}, {2, 4}});
    Graph butterfly = build_graph(5, {{0, 1}, {0, 2}, {1, 2}, {2, 3}, {2, 4}, {3, 4}});
    Graph wheel4 = build_graph(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2}, {2, 3}, {3, 4}, {1, 4}});
    out.push_back({triangle, 3});
    out.push_back({paw, 3});
    out.push_back({diamond, 3});
    out.push_back({k4, 2});
    out.push_back({k23, 2});
    out.push_back({bull, 2});
    out.push_back({butterfly, 2});
    out.push_back({wheel4, 2});
    return out;
}

// Random list draws.  Modes: 0 full lists, 1 mixed good shapes,
// 2 singleton-heavy, 3 arbitrary nonempty masks.
ListAssignment random_lists(std::mt19937& rng, int n, int k, int mode) {
    ListAssignment l = ListAssignment::full(k, n);
    std::uniform_real_distribution<double> coin(0, 1);
    for (int v = 0; v < n; ++v) {
        int i = 1 + (int)(rng() % k);
        switch (mode) {
            case 0:
                break;
            case 1:
                switch (rng() % 4) {
                    case 0: break;
                    case 1: l.lists[v] = cbit(i, k); break;
                    case 2: l.lists[v] = pair_mask(i, k); break;
                    case 3: l.lists[v] = triple_mask(i, k); break;
                }
                break;
            case 2:
                if (coin(rng) < 0.3) l.lists[v] = cbit(i, k);
                break;
            case 3: {
                uint64_t m = ((uint64_t)rng() << 32 | rng()) & full_mask(k);
                l.lists[v] = m ? m : full_mask(k);
                break;
            }
        }
    }
    return l;
}

// Brute-force proper q-colorability (ordinary graph coloring, adjacent
// vertices distinct), used as the source-side oracle for subdivisions.
bool properly_colorable(const Graph& g, int q) {
    std::vector<int> col(g.n, 0);
    std::function<bool(int)> go = [&](int v) -> bool {
        if (v == g.n) return true;
        for (int c = 1; c <= q; ++c) {
            bool ok = true;
            for (Vertex u : g.adj[v])
                if (u < v && col[u] == c) ok = false;
            if (!ok) continue;
            col[v] = c;
            if (go(v + 1)) return true;
        }
        col[v] = 0;
        return false;
    };
    return go(0);
}

// Tree path between two vertices of a connected graph, via BFS parents.
std::vector<Vertex> tree_path(const std::vector<Vertex>& parent, Vertex u, Vertex v) {
    std::vector<Vertex> up, vp;
    for (Vertex x = u; x != -1; x = parent[x]) up.push_back(x);
    for (Vertex x = v; x != -1; x = parent[x]) vp.push_back(x);
    std::reverse(up.begin(), up.end());
    std::reverse(vp.begin(), vp.end());
    size_t common = 0;
    while (common + 1 < up.size() && common + 1 < vp.size() && up[common + 1] == vp[common + 1])
        ++common;
    std::vector<Vertex> path(up.begin() + common, up.end());
    std::reverse(path.begin(), path.end());
    path.insert(path.end(), vp.begin() + common + 1, vp.end());
    return path;
}

// ---------------------------------------------------------------------------
// criterion 1 + 10: main solver vs oracle, plus branching-progress counters
// ---------------------------------------------------------------------------

struct BranchTally {
    long long entered = 0;       // instances with at least one branch
    long long checks = 0;        // depth comparisons performed
    long long violations = 0;    // failed comparisons (must stay 0)
    int max_round = 0;
    long long exceptions = 0;    // structural throws on filtered instances
    std::string first_error;
};

Result criterion1(BranchTally& tally) {
    constexpr int kMinInstances = 500;
    constexpr double kBudget = 300.0;
    auto t0 = Clock::now();

    std::mt19937 rng(101);
    const int ks[3] = {5, 7, 9};
    int total = 0, mismatches = 0, sat_count = 0;

    auto run_one = [&](const Graph& g, const ListAssignment& l) {
        ++total;
        auto exact = solve_exact(g, l);
        SolveStats st;
        std::optional<Coloring> fast;
        bool threw = false;
        try {
            fast = solve_p9free(g, l, &st);
        } catch (const std::exception& e) {
            threw = true;
            ++tally.exceptions;
            if (tally.first_error.empty()) tally.first_error = e.what();
        }
        bool ok = !threw && fast.has_value() == exact.has_value() &&
                  (!fast || verify(g, *fast, l));
        if (!ok) ++mismatches;
        if (exact) ++sat_count;
        if (st.branches_explored > 0) ++tally.entered;
        tally.checks += st.depth_checks;
        tally.violations += st.depth_violations;
        tally.max_round = std::max(tally.max_round, st.max_round);
    };

    // frozen deep-branching instances, all three k values, two list draws
    for (const Graph& g : deep_branching_graphs())
        for (int k : ks) {
            run_one(g, ListAssignment::full(k, g.n));
            run_one(g, random_lists(rng, g.n, k, 1));
        }

    // subdivided small graphs
    for (const auto& [base, m] : subdivided_bases()) {
        Graph g = subdivide(base, m);
        if (g.n > 14 || !is_triangle_free(g) || find_induced_path(g, 9)) continue;
        for (int k : ks)
            for (int mode : {0, 1, 2}) run_one(g, random_lists(rng, g.n, k, mode));
    }

    // layered and spider-frame randoms until the pinned count is reached
    int guard = 0;
    while (total < kMinInstances && guard++ < 100000) {
        int n = 6 + (int)(rng() % 9);
        std::optional<Graph> g = (rng() % 3 == 0) ? spider_random(rng, std::max(n, 10))
                                                  : layered_random(rng, n, true);
        if (!g) continue;
        int k = ks[rng() % 3];
        run_one(*g, random_lists(rng, g->n, k, (int)(rng() % 3)));
    }

    double dt = seconds_since(t0);
    std::ostringstream os;
    os << total << " instances (" << sat_count << " satisfiable), " << mismatches
       << " oracle mismatches, " << tally.exceptions << " structural throws";
    return {total >= kMinInstances && mismatches == 0 && tally.exceptions == 0, os.str(), dt,
            kBudget};
}

Result criterion10(const BranchTally& tally) {
    std::ostringstream os;
    os << tally.entered << " instances branched, " << tally.checks
       << " depth comparisons, " << tally.violations << " violations, deepest round "
       << tally.max_round;
    bool pass = tally.entered >= 1 && tally.checks >= 1 && tally.violations == 0 &&
                tally.max_round <= 4 && tally.exceptions == 0;
    return {pass, os.str(), 0, 0};
}

// ---------------------------------------------------------------------------
// criterion 2: localized solver vs oracle for k >= 10
// ---------------------------------------------------------------------------

Result criterion2() {
    constexpr int kMinInstances = 300;
    constexpr double kBudget = 120.0;
    auto t0 = Clock::now();

    std::mt19937 rng(202);
    int total = 0, mismatches = 0, sat_count = 0;
    int guard = 0;
    while (total < kMinInstances && guard++ < 100000) {
        int n = 5 + (int)(rng() % 10);
        // triangles allowed: the localized solver must reject them via parity
        auto g = layered_random(rng, n, rng() % 2 == 0);
        if (!g) continue;
        int k = 10 + (int)(rng() % 3);
        ListAssignment l = random_lists(rng, g->n, k, (int)(rng() % 2) * 3);
        ++total;
        auto exact = solve_exact(*g, l);
        std::optional<Coloring> fast;
        bool ok = true;
        try {
            fast = solve_localized(*g, l);
        } catch (const std::exception&) {
            ok = false;
        }
        ok = ok && fast.has_value() == exact.has_value() && (!fast || verify(*g, *fast, l));
        if (!ok) ++mismatches;
        if (exact) ++sat_count;
    }

    double dt = seconds_since(t0);
    std::ostringstream os;
    os << total << " instances (" << sat_count << " satisfiable), k in {10,11,12}, "
       << mismatches << " oracle mismatches";
    return {total >= kMinInstances && mismatches == 0, os.str(), dt, kBudget};
}

// ---------------------------------------------------------------------------
// criterion 3: the edge-update rule maps good list pairs to good-or-empty
// ---------------------------------------------------------------------------

Result criterion3() {
    constexpr long long kTriples = 100000;
    constexpr double kBudget = 10.0;
    auto t0 = Clock::now();

    std::mt19937 rng(303);
    const int ks[4] = {5, 7, 9, 11};
    auto draw_good = [&](int k) -> uint64_t {
        int i = 1 + (int)(rng() % k);
        switch (rng() % 4) {
            case 0: return cbit(i, k);
            case 1: return pair_mask(i, k);
            case 2: return triple_mask(i, k);
            default: return full_mask(k);
        }
    };
    long long bad = 0;
    for (long long it = 0; it < kTriples; ++it) {
        int k = ks[rng() % 4];
        uint64_t lv = draw_good(k), lw = draw_good(k);
        uint64_t next = update_list(lv, lw, k);
        if (next != 0 && !is_good_list(next, k)) ++bad;
    }

    double dt = seconds_since(t0);
    std::ostringstream os;
    os << kTriples << " random good-list edge updates, " << bad << " non-good non-empty results";
    return {bad == 0, os.str(), dt, kBudget};
}

// ---------------------------------------------------------------------------
// criterion 4: reduction preserves satisfiability; 2-SAT pipeline is exact
// ---------------------------------------------------------------------------

Result criterion4() {
    constexpr int kReduceInstances = 400;
    constexpr int kTwoSatInstances = 400;
    constexpr double kBudget = 60.0;
    auto t0 = Clock::now();

    std::mt19937 rng(404);
    const int ks[3] = {5, 7, 9};
    std::uniform_real_distribution<double> coin(0, 1);

    auto random_graph = [&](int n) {
        double p = 0.2 + 0.4 * coin(rng);
        std::set<std::pair<int, int>> es;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (coin(rng) < p) es.insert({u, v});
        return from_edge_set(n, es);
    };

    int reduce_bad = 0;
    for (int it = 0; it < kReduceInstances; ++it) {
        int n = 1 + (int)(rng() % 8);
        Graph g = random_graph(n);
        int k = ks[rng() % 3];
        ListAssignment l = random_lists(rng, n, k, 3);
        bool exact = solve_exact(g, l).has_value();
        auto reduced = reduce(g, l);
        bool ok = reduced ? solve_exact(g, *reduced).has_value() == exact : !exact;
        if (!ok) ++reduce_bad;
    }

    int twosat_bad = 0;
    for (int it = 0; it < kTwoSatInstances; ++it) {
        int n = 1 + (int)(rng() % 8);
        Graph g = random_graph(n);
        int k = ks[rng() % 3];
        ListAssignment l{k, std::vector<uint64_t>(n, 0)};
        for (int v = 0; v < n; ++v) {
            l.lists[v] = cbit(1 + (int)(rng() % k), k);
            if (rng() % 2) l.lists[v] |= cbit(1 + (int)(rng() % k), k);
        }
        auto exact = solve_exact(g, l);
        auto enc = encode_list_hom(g, l);
        auto asg = solve_2sat(enc.formula);
        bool ok = asg.has_value() == exact.has_value();
        if (ok && asg) ok = verify(g, decode_coloring(enc, *asg, n), l);
        if (!ok) ++twosat_bad;
    }

    double dt = seconds_since(t0);
    std::ostringstream os;
    os << kReduceInstances << " reduction instances (" << reduce_bad << " bad), "
       << kTwoSatInstances << " two-sat instances (" << twosat_bad << " bad), n <= 8";
    return {reduce_bad == 0 && twosat_bad == 0, os.str(), dt, kBudget};
}

// ---------------------------------------------------------------------------
// criteria 5 + 6: localization windows and slope laws over one enumeration
// ---------------------------------------------------------------------------

struct WindowSlopeOut {
    long long homs = 0;
    long long window_violations = 0;
    long long closed_slope_violations = 0;
    long long cycle_walks = 0;
    long long cycle_walk_violations = 0;
    int graphs = 0;
};

WindowSlopeOut enumerate_windows_and_slopes() {
    constexpr uint64_t kCap = 1'000'000'000'000ull;
    WindowSlopeOut out;
    std::mt19937 rng(505);

    // exhaustive labeled connected catalog for n <= 5, random for n in 6..9
    std::vector<Graph> catalog;
    for (int n = 1; n <= 5; ++n) {
        std::vector<std::pair<int, int>> pairs;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v) pairs.push_back({u, v});
        for (uint32_t mask = 0; mask < (1u << pairs.size()); ++mask) {
            std::vector<std::pair<Vertex, Vertex>> es;
            for (size_t b = 0; b < pairs.size(); ++b)
                if (mask >> b & 1) es.push_back(pairs[b]);
            Graph g = build_graph(n, es);
            if (is_connected(g)) catalog.push_back(g);
        }
    }
    std::uniform_real_distribution<double> coin(0, 1);
    for (int n = 6; n <= 9; ++n) {
        int kept = 0, guard = 0;
        while (kept < 60 && guard++ < 4000) {
            double p = 0.25 + 0.3 * coin(rng);
            std::set<std::pair<int, int>> es;
            for (int u = 0; u < n; ++u)
                for (int v = u + 1; v < n; ++v)
                    if (coin(rng) < p) es.insert({u, v});
            Graph g = from_edge_set(n, es);
            if (!is_connected(g) || !is_pt_free(g, 8)) continue;
            catalog.push_back(g);
            ++kept;
        }
    }
    out.graphs = (int)catalog.size();

    for (const Graph& g : catalog) {
        bool ptfree[9] = {};
        for (int t = 4; t <= 8; ++t) ptfree[t] = is_pt_free(g, t);

        // BFS spanning tree for the fundamental-cycle slope checks
        std::vector<Vertex> parent(g.n, -1);
        std::vector<char> seen(g.n, 0);
        std::vector<Vertex> queue = {0};
        seen[0] = 1;
        for (size_t h = 0; h < queue.size(); ++h) {
            Vertex u = queue[h];
            for (Vertex w : g.adj[u])
                if (!seen[w]) {
                    seen[w] = 1;
                    parent[w] = u;
                    queue.push_back(w);
                }
        }

        for (int k = 5; k <= 12; ++k) {
            int smallest_t = 0;
            for (int t = 4; t <= 8; ++t)
                if (ptfree[t] && t + 1 <= k && k <= t + 4) {
                    smallest_t = t;
                    break;
                }
            if (smallest_t == 0) continue;

            auto homs = enumerate_all(g, ListAssignment::full(k, g.n), kCap);
            out.homs += (long long)homs.size();
            for (const Coloring& f : homs) {
                for (int t = smallest_t; t <= 8; ++t)
                    if (ptfree[t] && t + 1 <= k && k <= t + 4 &&
                        image_window(f, k).second > t - 1)
                        ++out.window_violations;

                OrientedGraph og = orient_by_hom(g, f, k);
                for (const auto& [u, v] : g.edges) {
                    if (parent[v] == u || parent[u] == v) continue;
                    std::vector<Vertex> walk = tree_path(parent, u, v);
                    walk.push_back(u);  // close the cycle along the non-tree edge
                    if (slope(og, walk) != 0) ++out.closed_slope_violations;
                }
            }
        }
    }

    // walk slopes on the cycle itself: a walk from color a to color b has
    // slope congruent to b - a mod k
    for (int k = 5; k <= 12; ++k) {
        Graph ck = cycle_graph(k);
        Coloring ident(k);
        for (int v = 0; v < k; ++v) ident[v] = v + 1;
        OrientedGraph og = orient_by_hom(ck, ident, k);
        for (int it = 0; it < 3000; ++it) {
            std::vector<Vertex> walk = {(Vertex)(rng() % k)};
            int steps = 1 + (int)(rng() % 35);
            for (int s = 0; s < steps; ++s) {
                Vertex v = walk.back();
                walk.push_back(rng() % 2 ? (v + 1) % k : (v + k - 1) % k);
            }
            int s = slope(og, walk);
            int a = walk.front(), b = walk.back();
            ++out.cycle_walks;
            if (((s + a - b) % k + k) % k != 0) ++out.cycle_walk_violations;
        }
    }
    return out;
}

Result criterion5(const WindowSlopeOut& ws, double dt) {
    constexpr double kBudget = 180.0;
    std::ostringstream os;
    os << ws.homs << " homomorphisms over " << ws.graphs << " graphs, "
       << ws.window_violations << " image-window violations";
    return {ws.window_violations == 0 && ws.homs > 0, os.str(), dt, kBudget};
}

Result criterion6(const WindowSlopeOut& ws) {
    std::ostringstream os;
    os << ws.closed_slope_violations << " nonzero closed-walk slopes, " << ws.cycle_walks
       << " cycle walks with " << ws.cycle_walk_violations << " divisibility violations";
    return {ws.closed_slope_violations == 0 && ws.cycle_walk_violations == 0 &&
                ws.cycle_walks > 0,
            os.str(), 0, 0};
}

// ---------------------------------------------------------------------------
// criterion 7: chain gadget behaves as an equality chain with full range
// ---------------------------------------------------------------------------

Result criterion7() {
    constexpr uint64_t kCap = 1'000'000'000'000'000ull;
    constexpr double kBudget = 60.0;
    auto t0 = Clock::now();

    int bad = 0, cases = 0;
    std::ostringstream why;
    for (int k : {5, 7})
        for (int d : {1, 2, 3}) {
            ++cases;
            GadgetInstance gi = build_chain_gadget(d, k);
            const Graph& g = gi.graph;
            bool ok = max_degree(g) <= 3 && is_triangle_free(g);
            auto homs = enumerate_all(g, ListAssignment::full(k, g.n), kCap);
            ok = ok && !homs.empty();
            uint64_t attained = 0;
            for (const Coloring& f : homs) {
                int c = f[gi.outputs.front()];
                for (Vertex o : gi.outputs)
                    if (f[o] != c) ok = false;
                attained |= cbit(c, k);
            }
            ok = ok && attained == full_mask(k);
            if (!ok) {
                ++bad;
                why << " (failed at k=" << k << " d=" << d << ")";
            }
        }

    double dt = seconds_since(t0);
    std::ostringstream os;
    os << cases << " chain gadgets, outputs equal and all colors attained, subcubic, "
       << "triangle-free" << why.str();
    return {bad == 0, os.str(), dt, kBudget};
}

// ---------------------------------------------------------------------------
// criterion 8: reduction equivalences with structural certificates
// ---------------------------------------------------------------------------

Result criterion8() {
    constexpr double kBudget = 600.0;
    auto t0 = Clock::now();
    long long cases = 0, bad = 0;
    std::ostringstream why;
    auto record = [&](bool ok, const std::string& what) {
        ++cases;
        if (!ok) {
            ++bad;
            if (why.str().size() < 200) why << " [" << what << "]";
        }
    };

    // --- subdivision: proper 5-coloring of G vs C_5-coloring of G*3 ---
    for (int n = 1; n <= 5; ++n) {
        std::vector<std::pair<int, int>> pairs;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v) pairs.push_back({u, v});
        for (uint32_t mask = 0; mask < (1u << pairs.size()); ++mask) {
            std::vector<std::pair<Vertex, Vertex>> es;
            for (size_t b = 0; b < pairs.size(); ++b)
                if (mask >> b & 1) es.push_back(pairs[b]);
            Graph g = build_graph(n, es);
            Graph sg = subdivide(g, 3);
            bool src = properly_colorable(g, 5);
            bool inst = solve_exact(sg, ListAssignment::full(5, sg.n)).has_value();
            int sgg = girth(sg), gg = girth(g);
            bool structural = (sgg == (gg == -1 ? -1 : 3 * gg)) && is_in_gamma_p(sg, 3);
            record(src == inst && structural, "subdivide n=" + std::to_string(n));
        }
    }
    {
        // K_6 is the smallest non-5-colorable source
        std::vector<std::pair<Vertex, Vertex>> es;
        for (int u = 0; u < 6; ++u)
            for (int v = u + 1; v < 6; ++v) es.push_back({u, v});
        Graph k6 = build_graph(6, es);
        Graph sg = subdivide(k6, 3);
        record(!solve_exact(sg, ListAssignment::full(5, sg.n)).has_value(), "subdivide K6");
    }

    // --- not-all-equal clauses over three variables, s = 2 ---
    {
        std::vector<std::vector<std::vector<int>>> clause_sets = {{}};
        std::vector<std::vector<int>> perms;
        std::vector<int> p = {1, 2, 3};
        do {
            perms.push_back(p);
        } while (std::next_permutation(p.begin(), p.end()));
        for (const auto& c : perms) clause_sets.push_back({c});
        for (const auto& c1 : perms)
            for (const auto& c2 : perms) clause_sets.push_back({c1, c2});
        for (const auto& cs : clause_sets) {
            Formula f{FormulaKind::NaeThreeSat, 3, cs};
            GadgetInstance gi = nae3sat_to_coloring(f, 2);
            bool src = formula_satisfiable(f);
            bool inst = solve_exact(gi.graph, ListAssignment::full(5, gi.graph.n)).has_value();
            record(src == inst && is_triangle_free(gi.graph), "nae");
        }
    }

    // --- monotone clauses, s = 3, girth bound 4 (k = 6) ---
    {
        // all clauses over variables {1,2,3}: 2-3 distinct variables, one sign
        std::vector<std::vector<int>> clauses;
        for (uint32_t vm = 0; vm < 8u; ++vm) {
            std::vector<int> vars;
            for (int b = 0; b < 3; ++b)
                if (vm >> b & 1) vars.push_back(b + 1);
            if ((int)vars.size() < 2) continue;
            std::vector<int> negc;
            for (int v : vars) negc.push_back(-v);
            clauses.push_back(vars);
            clauses.push_back(negc);
        }

        std::vector<std::vector<std::vector<int>>> formulas;
        for (const auto& c : clauses) formulas.push_back({c});
        for (size_t i = 0; i < clauses.size(); ++i)
            for (size_t j = i; j < clauses.size(); ++j) formulas.push_back({clauses[i], clauses[j]});
        for (const auto& cs : formulas) {
            Formula f{FormulaKind::MonotoneThreeSat, 3, cs};
            GadgetInstance gi = monotone3sat_to_listinstance(f, 3, 4);
            bool src = formula_satisfiable(f);
            bool inst = solve_exact(gi.graph, instance_lists(gi)).has_value();
            bool structural = max_degree(gi.graph) <= 3;
            int gg = girth(gi.graph);
            structural = structural && (gg == -1 || gg > 4);
            auto branches = branch_vertices(gi.graph);
            for (size_t a = 0; a < branches.size() && structural; ++a) {
                auto dist = bfs_distances(gi.graph, {branches[a]});
                for (size_t b = a + 1; b < branches.size(); ++b)
                    if (dist[branches[b]] != -1 && dist[branches[b]] <= 4) structural = false;
            }
            record(src == inst && structural, "monotone");
        }
    }

    // --- non-rainbow hypergraph extension, s = 2 (k = 5) ---
    {
        struct Shape {
            int nvars;
            std::vector<std::vector<int>> edges;
        };
        std::vector<Shape> shapes = {
            {3, {}},
            {3, {{1, 2, 3}}},
            {3, {{1, 2, 3}, {1, 2, 3}}},
            {4, {{1, 2, 3}, {1, 2, 4}}},
            {5, {{1, 2, 3}, {1, 4, 5}}},
            {6, {{1, 2, 3}, {4, 5, 6}}},
        };
        for (const Shape& sh : shapes) {
            Formula h{FormulaKind::NonRainbowHypergraph, sh.nvars, sh.edges};
            long long total = 1;
            for (int i = 0; i < sh.nvars; ++i) total *= 4;
            for (long long pm = 0; pm < total; ++pm) {
                std::vector<int> partial(sh.nvars);
                long long x = pm;
                for (int i = 0; i < sh.nvars; ++i) {
                    partial[i] = (int)(x % 4);  // 0 = free, 1..3 = pinned color
                    x /= 4;
                }
                GadgetInstance gi = nonrainbow_to_extension(h, partial, 2);
                bool src = nonrainbow_extendable(h, partial);
                bool inst = solve_exact(gi.graph, instance_lists(gi)).has_value();
                bool structural = is_bipartite(gi.graph) && is_in_gamma_p(gi.graph, 2);
                record(src == inst && structural, "nonrainbow");
            }
        }
    }

    double dt = seconds_since(t0);
    std::ostringstream os;
    os << cases << " reduction instances across four constructions, " << bad
       << " disagreements or certificate failures" << why.str();
    return {bad == 0, os.str(), dt, kBudget};
}

// ---------------------------------------------------------------------------
// criterion 9: CLI byte-determinism
// ---------------------------------------------------------------------------

struct CliRun {
    int exit_code = 0;
    std::string out;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

CliRun run_cli(const std::string& args, const fs::path& scratch) {
    fs::path outfile = scratch / "stdout.txt";
    std::string cmd = std::string(CKHOM_BIN) + " " + args + " >" + outfile.string() + " 2>/dev/null";
    int status = std::system(cmd.c_str());
    CliRun r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(outfile);
    fs::remove(outfile);
    return r;
}

Result criterion9() {
    auto t0 = Clock::now();
    fs::path base = fs::temp_directory_path() / ("ckhom_acc_" + std::to_string(::getpid()));
    fs::create_directories(base);
    auto put = [&](const std::string& name, const std::string& content) {
        std::ofstream(base / name) << content;
        return (base / name).string();
    };
    std::string c5 = put("c5.graph", "5 5\n0 1\n1 2\n2 3\n3 4\n0 4\n");
    std::string p10 = put("p10.graph",
                          "10 9\n0 1\n1 2\n2 3\n3 4\n4 5\n5 6\n6 7\n7 8\n8 9\n");
    std::string star = put("k14.graph", "5 4\n0 1\n0 2\n0 3\n0 4\n");
    std::string petersen = put("petersen.graph",
                               "10 15\n0 1\n0 2\n0 3\n1 4\n1 5\n2 6\n2 7\n3 8\n3 9\n4 9\n5 6\n"
                               "5 8\n6 9\n7 8\n4 7\n");
    std::string hg = put("h.hg", "vars 3\n1 2 3\nfix 1 1\n");
    std::string nae = put("f.nae", "vars 3\n1 2 3\n");
    std::string mono = put("m.cnf", "vars 2\n1 2\n-1 -2\n");
    std::string coloring = put("c5.coloring", "v 0 1\nv 1 2\nv 2 3\nv 3 4\nv 4 5\n");

    std::vector<std::string> commands = {
        "solve " + c5 + " --k 5",
        "solve " + p10 + " --k 11",
        "solve " + c5 + " --k 5 --algo oracle --out {D}/answer.txt",
        "solve " + petersen + " --k 5 --bench",
        "verify " + c5 + " " + coloring + " --k 5",
        "generate subdivide --graph " + c5 + " --m 3 --out {D}/sub",
        "generate chain --d 2 --k 5 --out {D}/chain",
        "generate degree-reduce --graph " + star + " --k 5 --out {D}/dr",
        "generate nonrainbow --formula " + hg + " --s 2 --out {D}/nr",
        "generate nae --formula " + nae + " --s 2 --out {D}/nae",
        "generate monotone-list --formula " + mono + " --s 3 --g 4 --out {D}/mono",
        "check " + petersen + " --t 9 --p 3 --forbidden --k 5 --variant list",
    };

    int mismatched = 0;
    std::ostringstream why;
    for (size_t ci = 0; ci < commands.size(); ++ci) {
        CliRun runs[2];
        fs::path dirs[2];
        for (int r = 0; r < 2; ++r) {
            dirs[r] = base / ("run" + std::to_string(ci) + "_" + std::to_string(r));
            fs::create_directories(dirs[r]);
            std::string cmd = commands[ci];
            size_t pos;
            while ((pos = cmd.find("{D}")) != std::string::npos)
                cmd.replace(pos, 3, dirs[r].string());
            runs[r] = run_cli(cmd, dirs[r]);
            // normalize the per-run directory out of echoed file paths
            while ((pos = runs[r].out.find(dirs[r].string())) != std::string::npos)
                runs[r].out.replace(pos, dirs[r].string().size(), "{D}");
        }
        bool same = runs[0].exit_code == runs[1].exit_code && runs[0].exit_code != -1 &&
                    runs[0].out == runs[1].out;
        // every file emitted by run 0 must exist with identical bytes in run 1
        std::set<std::string> names[2];
        for (int r = 0; r < 2; ++r)
            for (const auto& e : fs::directory_iterator(dirs[r]))
                names[r].insert(e.path().filename().string());
        same = same && names[0] == names[1];
        if (same)
            for (const std::string& nm : names[0])
                if (slurp(dirs[0] / nm) != slurp(dirs[1] / nm)) same = false;
        if (!same) {
            ++mismatched;
            if (why.str().size() < 160) why << " [" << commands[ci].substr(0, 40) << "...]";
        }
    }
    std::error_code ec;
    fs::remove_all(base, ec);

    double dt = seconds_since(t0);
    std::ostringstream os;
    os << commands.size() << " command lines run twice, " << mismatched
       << " with differing exit codes, stdout, or emitted files" << why.str();
    return {mismatched == 0, os.str(), dt, 0};
}

}  // namespace

int main() {
    std::vector<std::pair<std::string, Result>> report;

    BranchTally tally;
    report.push_back({"main solver equals oracle on triangle-free instances", criterion1(tally)});
    report.push_back({"localized solver equals oracle for k >= 10", criterion2()});
    report.push_back({"edge updates keep good lists good or empty", criterion3()});
    report.push_back({"list reduction and 2-SAT pipeline are exact", criterion4()});

    auto t56 = Clock::now();
    WindowSlopeOut ws = enumerate_windows_and_slopes();
    double dt56 = seconds_since(t56);
    report.push_back({"homomorphism images fit a (t-1)-window", criterion5(ws, dt56)});
    report.push_back({"closed-walk slopes vanish; cycle walks obey divisibility", criterion6(ws)});

    report.push_back({"chain gadget forces equal outputs over all colors", criterion7()});
    report.push_back({"reductions agree with brute force and keep certificates", criterion8()});
    report.push_back({"CLI runs are byte-deterministic", criterion9()});
    report.push_back({"branching depth increases and rounds stay bounded", criterion10(tally)});

    bool all = true;
    for (size_t i = 0; i < report.size(); ++i) {
        const auto& [name, r] = report[i];
        bool timed_ok = r.budget == 0 || r.seconds < r.budget;
        bool pass = r.pass && timed_ok;
        all = all && pass;
        std::cout << "criterion " << (i + 1 < 10 ? " " : "") << i + 1 << ": "
                  << (pass ? "PASS" : "FAIL") << "  " << name << " — " << r.detail;
        if (r.budget > 0) {
            std::cout << "  [" << std::fixed << std::setprecision(1) << r.seconds << "s / "
                      << std::setprecision(0) << r.budget << "s]";
            std::cout.unsetf(std::ios::fixed);
            std::cout << std::setprecision(6);
            if (!timed_ok) std::cout << " (over budget)";
        }
        std::cout << "\n";
    }
    std::cout << (all ? "acceptance: all criteria passed\n" : "acceptance: FAILURES present\n");
    return all ? 0 : 1;
}
