#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <vector>

#include "cyclehom/graph.hpp"

namespace cyclehom {

// Colors are 1..k, arithmetic is cyclic (k+1 wraps to 1, 0 wraps to k).
inline int norm_color(int c, int k) { return ((c - 1) % k + k) % k + 1; }

// Bit (c-1) of a 64-bit mask represents color c; k <= 64 throughout.
inline uint64_t cbit(int c, int k) { return uint64_t{1} << (norm_color(c, k) - 1); }

inline int list_size(uint64_t mask) { return std::popcount(mask); }

inline bool has_color(uint64_t mask, int c, int k) { return (mask & cbit(c, k)) != 0; }

inline uint64_t full_mask(int k) { return k == 64 ? ~uint64_t{0} : (uint64_t{1} << k) - 1; }

inline std::vector<int> mask_to_colors(uint64_t mask) {
    std::vector<int> out;
    for (int c = 1; c <= 64 && mask; ++c, mask >>= 1)
        if (mask & 1) out.push_back(c);
    return out;
}

inline uint64_t colors_to_mask(const std::vector<int>& colors, int k) {
    uint64_t m = 0;
    for (int c : colors) m |= cbit(c, k);
    return m;
}

struct ListAssignment {
    int k = 0;
    std::vector<uint64_t> lists;

    static ListAssignment full(int k, int n) { return {k, std::vector<uint64_t>(n, full_mask(k))}; }
};

// The shapes a list can take in a reduced instance: {i}, {i-1,i+1},
// {i,i-2,i+2}, or everything. "center" is the defining color i (the smallest
// valid one when k is too small for uniqueness).
struct ListShape {
    enum Kind { Empty, Singleton, Pair, Triple, Full, Other };
    Kind kind = Other;
    int center = 0;
};

inline uint64_t pair_mask(int i, int k) { return cbit(i - 1, k) | cbit(i + 1, k); }
inline uint64_t triple_mask(int i, int k) { return cbit(i, k) | cbit(i - 2, k) | cbit(i + 2, k); }

inline ListShape classify_list(uint64_t mask, int k) {
    int size = list_size(mask);
    if (size == 0) return {ListShape::Empty, 0};
    if (mask == full_mask(k)) return {ListShape::Full, 0};
    if (size == 1) return {ListShape::Singleton, mask_to_colors(mask)[0]};
    if (size == 2) {
        for (int i = 1; i <= k; ++i)
            if (mask == pair_mask(i, k)) return {ListShape::Pair, i};
        return {ListShape::Other, 0};
    }
    if (size == 3) {
        for (int i = 1; i <= k; ++i)
            if (mask == triple_mask(i, k)) return {ListShape::Triple, i};
        return {ListShape::Other, 0};
    }
    return {ListShape::Other, 0};
}

inline bool is_good_list(uint64_t mask, int k) {
    ListShape::Kind kind = classify_list(mask, k).kind;
    return kind == ListShape::Singleton || kind == ListShape::Pair ||
           kind == ListShape::Triple || kind == ListShape::Full;
}

// One propagation step along an edge: shrink L(v) using the shape of L(w).
//   {i} at w        -> L(v) &= {i-1, i+1}
//   {i-1,i+1} at w  -> L(v) &= {i, i-2, i+2}
//   {i,i-2,i+2} at w, L(v) also a triple, k odd
//                   -> L(v) &= {i-1, i+1, i-3, i+3}
// Anything else leaves L(v) untouched. Returns the new list.
//
// The triple-triple step is skipped for k = 5 when both triples share the
// same center: there {i-2, i+2} are cyclically adjacent, so the edge is
// satisfiable, yet the intersection {i-2, i+2} is not a good shape. For
// odd k >= 7 the equal-center intersection is empty, a correct wipeout.
inline uint64_t update_list(uint64_t lv, uint64_t lw, int k) {
    ListShape w = classify_list(lw, k);
    switch (w.kind) {
        case ListShape::Singleton:
            return lv & pair_mask(w.center, k);
        case ListShape::Pair:
            return lv & triple_mask(w.center, k);
        case ListShape::Triple: {
            ListShape v = classify_list(lv, k);
            if (k % 2 == 1 && v.kind == ListShape::Triple &&
                !(k == 5 && v.center == w.center))
                return lv & (cbit(w.center - 1, k) | cbit(w.center + 1, k) |
                             cbit(w.center - 3, k) | cbit(w.center + 3, k));
            return lv;
        }
        default:
            return lv;
    }
}

// In-place variant; true iff the list strictly shrank.
inline bool update_in_place(ListAssignment& l, Vertex v, Vertex w) {
    uint64_t next = update_list(l.lists[v], l.lists[w], l.k);
    if (next == l.lists[v]) return false;
    l.lists[v] = next;
    return true;
}

namespace detail {

template <class EdgeFilter>
inline std::optional<ListAssignment> reduce_impl(const Graph& g, ListAssignment l,
                                                 EdgeFilter&& usable) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (auto [a, b] : g.edges) {
            if (!usable(a, b)) continue;
            changed |= update_in_place(l, b, a);
            changed |= update_in_place(l, a, b);
        }
    }
    for (uint64_t m : l.lists)
        if (m == 0) return std::nullopt;
    return l;
}

}  // namespace detail

// Exhaustively apply update_list along edges (ascending edge order, head
// from tail then tail from head) until nothing shrinks. Empty list anywhere
// means no homomorphism respects the input lists.
inline std::optional<ListAssignment> reduce(const Graph& g, ListAssignment l) {
    return detail::reduce_impl(g, std::move(l), [](Vertex, Vertex) { return true; });
}

// Same, restricted to edges with both endpoints in `active`.
inline std::optional<ListAssignment> reduce_within(const Graph& g, ListAssignment l,
                                                   const std::vector<char>& active) {
    return detail::reduce_impl(g, std::move(l),
                               [&](Vertex a, Vertex b) { return active[a] && active[b]; });
}

// Classic arc consistency against an arbitrary target graph whose vertices
// 0..t-1 stand for colors 1..t: color c survives at v iff every neighbour w
// keeps some c' with (c-1, c'-1) an edge of the target. Fixpoint sweep;
// empty list anywhere yields nullopt.
inline std::optional<ListAssignment> arc_consistency(const Graph& g, ListAssignment l,
                                                     const Graph& target) {
    int t = target.n;
    std::vector<uint64_t> nbr_mask(t + 1, 0);
    for (int c = 1; c <= t; ++c)
        for (Vertex u : target.adj[c - 1]) nbr_mask[c] |= cbit(u + 1, t);

    auto allowed = [&](uint64_t lw) {
        uint64_t m = 0;
        for (int c = 1; c <= t; ++c)
            if (lw & cbit(c, t)) m |= nbr_mask[c];
        return m;
    };

    bool changed = true;
    while (changed) {
        changed = false;
        for (auto [a, b] : g.edges) {
            uint64_t nb = l.lists[b] & allowed(l.lists[a]);
            if (nb != l.lists[b]) {
                l.lists[b] = nb;
                changed = true;
            }
            uint64_t na = l.lists[a] & allowed(l.lists[b]);
            if (na != l.lists[a]) {
                l.lists[a] = na;
                changed = true;
            }
        }
    }
    for (uint64_t m : l.lists)
        if (m == 0) return std::nullopt;
    return l;
}

}  // namespace cyclehom
