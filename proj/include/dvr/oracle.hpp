#pragma once

#include <unordered_map>
#include <utility>
#include <vector>

#include "dvr/core.hpp"

namespace dvr {

// Brute-force reference pipeline. Deliberately self-contained: it shares the
// core types and the filtration order with the rest of the library, but
// enumerates the full complex and reduces it with its own textbook code so
// that it can validate the distilled pipeline.

inline constexpr vertex_t oracle_default_cap = 40;

/// Every simplex of the full complex up to the given dimension, in
/// filtration order.
inline std::vector<weighted_simplex> full_vr_complex(const distance_matrix& d, int max_dim = 2) {
    std::vector<weighted_simplex> cells;
    const vertex_t n = d.size();
    binomial_table choose(n, max_dim + 1);
    vertex_t buf[simplex::max_vertices];
    for (int k = 1; k <= max_dim + 1; ++k) {
        const index_t total = choose(n, k);
        for (index_t r = 0; r < total; ++r) {
            unrank_combination(r, n, k, choose, buf);
            const simplex s = simplex::of_sorted(buf, k);
            cells.push_back({s, diameter(s, d)});
        }
    }
    std::sort(cells.begin(), cells.end(), filtration_less);
    return cells;
}

namespace oracle_detail {

inline void add_column(std::vector<std::int32_t>& col, const std::vector<std::int32_t>& other) {
    std::vector<std::int32_t> out;
    out.reserve(col.size() + other.size());
    std::size_t i = 0, j = 0;
    while (i < col.size() && j < other.size()) {
        if (col[i] < other[j])
            out.push_back(col[i++]);
        else if (other[j] < col[i])
            out.push_back(other[j++]);
        else {
            ++i;
            ++j;
        }
    }
    out.insert(out.end(), col.begin() + static_cast<std::ptrdiff_t>(i), col.end());
    out.insert(out.end(), other.begin() + static_cast<std::ptrdiff_t>(j), other.end());
    col = std::move(out);
}

}  // namespace oracle_detail

/// Degree-1 barcode of the full complex via plain left-to-right column
/// reduction. Refuses inputs beyond the cap instead of silently grinding.
inline barcode full_vr_barcode(const distance_matrix& d, vertex_t cap = oracle_default_cap) {
    if (d.size() > cap)
        throw cap_error("full complex reference is capped at " + std::to_string(cap) +
                        " points, got " + std::to_string(d.size()));

    const auto cells = full_vr_complex(d, 2);
    std::unordered_map<simplex, std::int32_t, simplex_hash> position;
    position.reserve(cells.size());
    for (std::size_t i = 0; i < cells.size(); ++i)
        position.emplace(cells[i].s, static_cast<std::int32_t>(i));

    std::unordered_map<std::int32_t, std::vector<std::int32_t>> pivot_col;
    barcode bars;
    for (std::size_t j = 0; j < cells.size(); ++j) {
        const simplex& s = cells[j].s;
        if (s.dim() == 0) continue;
        std::vector<std::int32_t> col;
        for (int i = 0; i < s.vertex_count(); ++i) col.push_back(position.at(s.facet(i)));
        std::sort(col.begin(), col.end());
        while (!col.empty()) {
            auto it = pivot_col.find(col.back());
            if (it == pivot_col.end()) break;
            oracle_detail::add_column(col, it->second);
        }
        if (col.empty()) continue;
        const std::int32_t low = col.back();
        const weighted_simplex& birth = cells[static_cast<std::size_t>(low)];
        if (birth.s.dim() == 1 && cells[j].diameter > birth.diameter)
            bars.push_back({1, birth.diameter, cells[j].diameter});
        pivot_col.emplace(low, std::move(col));
    }
    sort_bars(bars);
    return bars;
}

/// Apparent (edge, triangle) pairs by definitional scan: the triangle's
/// latest facet whose earliest coface is that triangle.
inline std::vector<std::pair<simplex, simplex>> brute_apparent_pairs(
    const distance_matrix& d, vertex_t cap = oracle_default_cap) {
    if (d.size() > cap)
        throw cap_error("apparent-pair scan is capped at " + std::to_string(cap) + " points, got " +
                        std::to_string(d.size()));

    std::vector<std::pair<simplex, simplex>> pairs;
    const vertex_t n = d.size();
    if (n < 3) return pairs;
    binomial_table choose(n, 3);
    const index_t total = choose(n, 3);
    vertex_t buf[simplex::max_vertices];
    for (index_t r = 0; r < total; ++r) {
        unrank_combination(r, n, 3, choose, buf);
        const simplex t = simplex::of_sorted(buf, 3);

        simplex latest = t.facet(0);
        value_t latest_diam = diameter(latest, d);
        for (int i = 1; i < 3; ++i) {
            const simplex f = t.facet(i);
            const value_t fd = diameter(f, d);
            if (compare_keyed(latest_diam, latest, fd, f) == simplex_order::less) {
                latest = f;
                latest_diam = fd;
            }
        }

        bool earliest = true;
        const value_t td = diameter(t, d);
        for (vertex_t z = 0; z < n && earliest; ++z) {
            if (latest.contains(z)) continue;
            const simplex coface = latest.with_vertex(z);
            if (coface == t) continue;
            if (compare_keyed(diameter(coface, d), coface, td, t) == simplex_order::less)
                earliest = false;
        }
        if (earliest) pairs.emplace_back(latest, t);
    }
    return pairs;
}

}  // namespace dvr
