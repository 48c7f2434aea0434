#pragma once

#include <numeric>
#include <vector>

#include "dvr/core.hpp"

namespace dvr {

/// x lies in the lune of s iff every simplex obtained by substituting x for
/// one vertex of s precedes s in the filtration order.
inline bool in_lune(vertex_t x, const simplex& s, value_t diam_s, const distance_matrix& d) {
    if (s.contains(x)) return false;
    for (int i = 0; i < s.vertex_count(); ++i) {
        const simplex sub = s.replace_vertex(i, x);
        if (compare_keyed(diameter(sub, d), sub, diam_s, s) != simplex_order::less) return false;
    }
    return true;
}

/// All lune members of a simplex of dimension >= 1, in increasing vertex
/// order (which is the order the 0-simplices enter the filtration).
inline std::vector<vertex_t> compute_lune(const simplex& s, const distance_matrix& d) {
    if (s.dim() < 1) throw std::invalid_argument("lune requires a simplex of dimension >= 1");
    const value_t diam_s = diameter(s, d);
    std::vector<vertex_t> members;
    for (vertex_t x = 0; x < d.size(); ++x)
        if (in_lune(x, s, diam_s, d)) members.push_back(x);
    return members;
}

/// Edge test of the lune graph: p and q are joined iff every simplex formed
/// by substituting {p, q} for two vertices of s precedes s.
inline bool lune_pair_joined(vertex_t p, vertex_t q, const simplex& s, value_t diam_s,
                             const distance_matrix& d) {
    const int k = s.vertex_count();
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) {
            vertex_t buf[simplex::max_vertices];
            int cnt = 0;
            for (int t = 0; t < k; ++t)
                if (t != i && t != j) buf[cnt++] = s[t];
            buf[cnt++] = p;
            buf[cnt++] = q;
            std::sort(buf, buf + cnt);
            const simplex sub = simplex::of_sorted(buf, cnt);
            if (compare_keyed(diameter(sub, d), sub, diam_s, s) != simplex_order::less)
                return false;
        }
    return true;
}

/// Connected components of the lune graph, as disjoint blocks covering
/// `members`, each block sorted, blocks ordered by smallest member. Union-find
/// over explicit pairwise edge tests; once a single component remains no
/// further tests can change the answer, so the scan stops early.
inline std::vector<std::vector<vertex_t>> lune_components(const simplex& s,
                                                          const std::vector<vertex_t>& members,
                                                          const distance_matrix& d) {
    const int m = static_cast<int>(members.size());
    std::vector<int> parent(static_cast<std::size_t>(m));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    };

    const value_t diam_s = diameter(s, d);
    int components = m;
    for (int i = 0; i < m && components > 1; ++i)
        for (int j = i + 1; j < m && components > 1; ++j) {
            const int ri = find(i), rj = find(j);
            if (ri == rj) continue;
            if (lune_pair_joined(members[static_cast<std::size_t>(i)],
                                 members[static_cast<std::size_t>(j)], s, diam_s, d)) {
                parent[static_cast<std::size_t>(std::max(ri, rj))] = std::min(ri, rj);
                --components;
            }
        }

    std::vector<std::vector<vertex_t>> blocks;
    std::vector<int> block_of(static_cast<std::size_t>(m), -1);
    for (int i = 0; i < m; ++i) {
        const int r = find(i);
        if (block_of[static_cast<std::size_t>(r)] < 0) {
            block_of[static_cast<std::size_t>(r)] = static_cast<int>(blocks.size());
            blocks.emplace_back();
        }
        blocks[static_cast<std::size_t>(block_of[static_cast<std::size_t>(r)])].push_back(
            members[static_cast<std::size_t>(i)]);
    }
    // members is ascending, so each block is sorted and blocks are already
    // ordered by their minimum (their representative).
    return blocks;
}

/// Lune of a simplex with its component structure and one representative per
/// component: the member entering the filtration earliest, i.e. the smallest
/// vertex index.
struct lune_result {
    simplex s;
    std::vector<vertex_t> members;
    std::vector<std::vector<vertex_t>> components;
    std::vector<vertex_t> representatives;

    bool empty() const { return members.empty(); }
};

inline lune_result lune_representatives(const simplex& s, const distance_matrix& d) {
    lune_result out;
    out.s = s;
    out.members = compute_lune(s, d);
    if (out.members.empty()) return out;
    out.components = lune_components(s, out.members, d);
    out.representatives.reserve(out.components.size());
    for (const auto& block : out.components) out.representatives.push_back(block.front());
    return out;
}

}  // namespace dvr
