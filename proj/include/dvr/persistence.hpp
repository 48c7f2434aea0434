#pragma once

#include <numeric>
#include <ostream>
#include <unordered_map>
#include <vector>

#include "dvr/core.hpp"

namespace dvr {

/// A face-closed simplex set sorted into the simplex-wise filtration order;
/// positions are 0-based.
class filtration {
public:
    static filtration build(std::vector<weighted_simplex> cells) {
        filtration f;
        std::sort(cells.begin(), cells.end(), filtration_less);
        f.cells_ = std::move(cells);
        f.position_.reserve(f.cells_.size());
        for (std::size_t i = 0; i < f.cells_.size(); ++i) {
            const auto [it, fresh] =
                f.position_.emplace(f.cells_[i].s, static_cast<std::int32_t>(i));
            if (!fresh) throw std::invalid_argument("filtration input contains a duplicate simplex");
            f.max_dim_ = std::max(f.max_dim_, f.cells_[i].s.dim());
        }
        // Faces sort strictly before their cofaces, so presence is the only
        // thing left to check.
        for (const auto& cell : f.cells_)
            for (int i = 0; i < cell.s.vertex_count() && cell.s.dim() >= 1; ++i)
                if (!f.position_.count(cell.s.facet(i)))
                    throw std::invalid_argument("complex is not closed under faces");
        return f;
    }

    const std::vector<weighted_simplex>& cells() const { return cells_; }
    std::int32_t size() const { return static_cast<std::int32_t>(cells_.size()); }
    int max_dim() const { return max_dim_; }

    std::int32_t position_of(const simplex& s) const {
        auto it = position_.find(s);
        if (it == position_.end()) throw std::invalid_argument("simplex not in filtration");
        return it->second;
    }

private:
    std::vector<weighted_simplex> cells_;
    std::unordered_map<simplex, std::int32_t, simplex_hash> position_;
    int max_dim_ = 0;
};

struct persistence_pair {
    int degree = 0;
    std::int32_t birth_index = 0;
    std::int32_t death_index = -1;  // -1: essential class
    value_t birth_diameter = 0;
    value_t death_diameter = inf_value;

    bool essential() const { return death_index < 0; }
};

namespace detail {

// Z2 column addition on sorted index vectors.
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

inline std::vector<std::int32_t> boundary_column(const filtration& f, std::int32_t j) {
    std::vector<std::int32_t> col;
    const simplex& s = f.cells()[static_cast<std::size_t>(j)].s;
    if (s.dim() == 0) return col;
    col.reserve(static_cast<std::size_t>(s.vertex_count()));
    for (int i = 0; i < s.vertex_count(); ++i) col.push_back(f.position_of(s.facet(i)));
    std::sort(col.begin(), col.end());
    return col;
}

}  // namespace detail

/// Z2 column reduction with lowest-one pairing. With clearing, dimensions are
/// processed from the top down and every column already known to be a birth
/// (its row was a pivot one dimension up) is skipped; without it, the plain
/// left-to-right pass runs over all columns. Both orders produce the same
/// pairs.
inline std::vector<persistence_pair> reduce(const filtration& f, bool clearing = true) {
    const std::int32_t m = f.size();
    std::vector<persistence_pair> pairs;

    auto make_pair = [&](std::int32_t birth, std::int32_t death) {
        pairs.push_back({f.cells()[static_cast<std::size_t>(birth)].s.dim(), birth, death,
                         f.cells()[static_cast<std::size_t>(birth)].diameter,
                         f.cells()[static_cast<std::size_t>(death)].diameter});
    };
    auto make_essential = [&](std::int32_t birth) {
        pairs.push_back({f.cells()[static_cast<std::size_t>(birth)].s.dim(), birth, -1,
                         f.cells()[static_cast<std::size_t>(birth)].diameter, inf_value});
    };

    if (clearing) {
        std::vector<std::vector<std::int32_t>> by_dim(static_cast<std::size_t>(f.max_dim()) + 1);
        for (std::int32_t j = 0; j < m; ++j)
            by_dim[static_cast<std::size_t>(f.cells()[static_cast<std::size_t>(j)].s.dim())]
                .push_back(j);

        std::vector<char> cleared(static_cast<std::size_t>(m), 0);
        for (int p = f.max_dim(); p >= 1; --p) {
            std::unordered_map<std::int32_t, std::vector<std::int32_t>> pivot_col;
            for (std::int32_t j : by_dim[static_cast<std::size_t>(p)]) {
                if (cleared[static_cast<std::size_t>(j)]) continue;
                auto col = detail::boundary_column(f, j);
                while (!col.empty()) {
                    auto it = pivot_col.find(col.back());
                    if (it == pivot_col.end()) break;
                    detail::add_column(col, it->second);
                }
                if (col.empty()) {
                    make_essential(j);
                } else {
                    const std::int32_t low = col.back();
                    cleared[static_cast<std::size_t>(low)] = 1;
                    make_pair(low, j);
                    pivot_col.emplace(low, std::move(col));
                }
            }
        }
        for (std::int32_t j : by_dim[0])
            if (!cleared[static_cast<std::size_t>(j)]) make_essential(j);
    } else {
        std::unordered_map<std::int32_t, std::vector<std::int32_t>> pivot_col;
        std::vector<char> killed(static_cast<std::size_t>(m), 0);
        std::vector<char> zeroed(static_cast<std::size_t>(m), 0);
        for (std::int32_t j = 0; j < m; ++j) {
            auto col = detail::boundary_column(f, j);
            while (!col.empty()) {
                auto it = pivot_col.find(col.back());
                if (it == pivot_col.end()) break;
                detail::add_column(col, it->second);
            }
            if (col.empty()) {
                zeroed[static_cast<std::size_t>(j)] = 1;
            } else {
                const std::int32_t low = col.back();
                killed[static_cast<std::size_t>(low)] = 1;
                make_pair(low, j);
                pivot_col.emplace(low, std::move(col));
            }
        }
        for (std::int32_t j = 0; j < m; ++j)
            if (zeroed[static_cast<std::size_t>(j)] && !killed[static_cast<std::size_t>(j)])
                make_essential(j);
    }

    std::sort(pairs.begin(), pairs.end(), [](const persistence_pair& a, const persistence_pair& b) {
        if (a.degree != b.degree) return a.degree < b.degree;
        return a.birth_index < b.birth_index;
    });
    return pairs;
}

/// Intervals of the requested degree with positive persistence, plus
/// [birth, inf) for essential classes, sorted by (birth, death).
inline barcode extract_barcode(const std::vector<persistence_pair>& pairs, int degree) {
    barcode bars;
    for (const auto& pr : pairs) {
        if (pr.degree != degree) continue;
        if (pr.essential())
            bars.push_back({degree, pr.birth_diameter, inf_value});
        else if (pr.death_diameter > pr.birth_diameter)
            bars.push_back({degree, pr.birth_diameter, pr.death_diameter});
    }
    sort_bars(bars);
    return bars;
}

namespace detail {

struct edge_ref {
    value_t length;
    vertex_t a, b;
};

inline std::vector<edge_ref> sorted_edges(const distance_matrix& d) {
    std::vector<edge_ref> edges;
    edges.reserve(static_cast<std::size_t>(d.size()) * (d.size() - 1) / 2);
    for (vertex_t i = 0; i < d.size(); ++i)
        for (vertex_t j = i + 1; j < d.size(); ++j) edges.push_back({d(i, j), i, j});
    std::sort(edges.begin(), edges.end(), [](const edge_ref& x, const edge_ref& y) {
        if (x.length != y.length) return x.length < y.length;
        if (x.a != y.a) return x.a < y.a;
        return x.b < y.b;
    });
    return edges;
}

class union_find {
public:
    explicit union_find(vertex_t n) : parent_(static_cast<std::size_t>(n)), rank_(static_cast<std::size_t>(n), 0) {
        std::iota(parent_.begin(), parent_.end(), 0);
    }
    vertex_t find(vertex_t x) {
        while (parent_[static_cast<std::size_t>(x)] != x) {
            parent_[static_cast<std::size_t>(x)] =
                parent_[static_cast<std::size_t>(parent_[static_cast<std::size_t>(x)])];
            x = parent_[static_cast<std::size_t>(x)];
        }
        return x;
    }
    bool link(vertex_t x, vertex_t y) {
        x = find(x);
        y = find(y);
        if (x == y) return false;
        if (rank_[static_cast<std::size_t>(x)] < rank_[static_cast<std::size_t>(y)]) std::swap(x, y);
        parent_[static_cast<std::size_t>(y)] = x;
        if (rank_[static_cast<std::size_t>(x)] == rank_[static_cast<std::size_t>(y)])
            ++rank_[static_cast<std::size_t>(x)];
        return true;
    }

private:
    std::vector<vertex_t> parent_;
    std::vector<std::uint8_t> rank_;
};

}  // namespace detail

/// Degree-0 barcode via union-find over the edges in filtration order:
/// n-1 merge intervals [0, merge distance) with zero-length ones dropped,
/// plus the single infinite class.
inline barcode ph0(const distance_matrix& d) {
    detail::union_find uf(d.size());
    barcode bars;
    for (const auto& e : detail::sorted_edges(d))
        if (uf.link(e.a, e.b) && e.length > 0) bars.push_back({0, 0.0, e.length});
    bars.push_back({0, 0.0, inf_value});
    sort_bars(bars);
    return bars;
}

/// The edges the union-find actually merges on: a minimum spanning tree under
/// the filtration order.
inline std::vector<weighted_simplex> mst_edges(const distance_matrix& d) {
    detail::union_find uf(d.size());
    std::vector<weighted_simplex> out;
    for (const auto& e : detail::sorted_edges(d))
        if (uf.link(e.a, e.b)) out.push_back({simplex{e.a, e.b}, e.length});
    return out;
}

/// CSV rows sorted by (dimension, birth, death); "inf" marks essential
/// classes.
inline void write_barcode_csv(barcode bars, std::ostream& os) {
    sort_bars(bars);
    os << "dimension,birth,death\n";
    for (const bar& b : bars)
        os << b.degree << ',' << format_double(b.birth) << ',' << format_double(b.death) << '\n';
}

}  // namespace dvr
