#pragma once

#include <algorithm>
#include <array>
#include <cassert>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace dvr {

using vertex_t = std::int32_t;
using index_t = std::int64_t;
using value_t = double;

inline constexpr value_t inf_value = std::numeric_limits<value_t>::infinity();

struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct cap_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Finite point set in R^D, one coordinate vector per row of the input.
class point_cloud {
public:
    point_cloud() = default;

    explicit point_cloud(std::vector<std::vector<value_t>> points) : points_(std::move(points)) {
        if (points_.empty()) throw io_error("point cloud must be non-empty");
        for (const auto& p : points_)
            if (p.size() != points_.front().size())
                throw io_error("point cloud rows have mixed dimensions");
        if (points_.front().empty()) throw io_error("point dimension must be at least 1");
    }

    vertex_t size() const { return static_cast<vertex_t>(points_.size()); }
    int dim() const { return points_.empty() ? 0 : static_cast<int>(points_.front().size()); }
    const std::vector<value_t>& operator[](vertex_t i) const {
        return points_[static_cast<std::size_t>(i)];
    }

private:
    std::vector<std::vector<value_t>> points_;
};

/// Dense symmetric matrix of pairwise distances. The triangle inequality is
/// not assumed anywhere; any symmetric nonnegative matrix with zero diagonal
/// is a valid input.
class distance_matrix {
public:
    distance_matrix() = default;

    explicit distance_matrix(vertex_t n) : n_(n), d_(static_cast<std::size_t>(n) * n, 0.0) {
        if (n <= 0) throw io_error("distance matrix must have at least one point");
    }

    static distance_matrix from_points(const point_cloud& pts) {
        distance_matrix d(pts.size());
        const int dim = pts.dim();
        for (vertex_t i = 0; i < pts.size(); ++i)
            for (vertex_t j = i + 1; j < pts.size(); ++j) {
                value_t s = 0;
                for (int k = 0; k < dim; ++k) {
                    const value_t diff = pts[i][static_cast<std::size_t>(k)] -
                                         pts[j][static_cast<std::size_t>(k)];
                    s += diff * diff;
                }
                d.set(i, j, std::sqrt(s));
            }
        return d;
    }

    vertex_t size() const { return n_; }

    value_t operator()(vertex_t i, vertex_t j) const {
        assert(i >= 0 && i < n_ && j >= 0 && j < n_);
        return d_[static_cast<std::size_t>(i) * n_ + j];
    }

    void set(vertex_t i, vertex_t j, value_t v) {
        d_[static_cast<std::size_t>(i) * n_ + j] = v;
        d_[static_cast<std::size_t>(j) * n_ + i] = v;
    }

    /// Reorder points by `perm`, where perm[new_index] = old_index.
    distance_matrix permuted(const std::vector<vertex_t>& perm) const {
        assert(static_cast<vertex_t>(perm.size()) == n_);
        distance_matrix out(n_);
        for (vertex_t i = 0; i < n_; ++i)
            for (vertex_t j = i + 1; j < n_; ++j) out.set(i, j, (*this)(perm[i], perm[j]));
        return out;
    }

private:
    vertex_t n_ = 0;
    std::vector<value_t> d_;
};

/// A simplex as a strictly increasing tuple of vertex indices. Inline storage
/// keeps hot loops allocation-free; max_vertices bounds the supported
/// dimension well beyond anything this library builds (dimension 3).
class simplex {
public:
    static constexpr int max_vertices = 8;

    simplex() = default;

    simplex(std::initializer_list<vertex_t> verts) {
        assert(verts.size() <= max_vertices);
        for (vertex_t v : verts) {
            assert(count_ == 0 || v > v_[count_ - 1]);
            v_[count_++] = v;
        }
    }

    static simplex single(vertex_t v) { return simplex{v}; }

    static simplex of_sorted(const vertex_t* data, int count) {
        simplex s;
        assert(count <= max_vertices);
        for (int i = 0; i < count; ++i) {
            assert(i == 0 || data[i] > data[i - 1]);
            s.v_[i] = data[i];
        }
        s.count_ = static_cast<std::int8_t>(count);
        return s;
    }

    static simplex of_unsorted(std::vector<vertex_t> verts) {
        std::sort(verts.begin(), verts.end());
        if (std::adjacent_find(verts.begin(), verts.end()) != verts.end())
            throw std::invalid_argument("simplex has repeated vertices");
        return of_sorted(verts.data(), static_cast<int>(verts.size()));
    }

    int vertex_count() const { return count_; }
    int dim() const { return count_ - 1; }
    bool empty() const { return count_ == 0; }

    vertex_t operator[](int i) const {
        assert(i >= 0 && i < count_);
        return v_[i];
    }
    vertex_t back() const { return v_[count_ - 1]; }

    const vertex_t* begin() const { return v_.data(); }
    const vertex_t* end() const { return v_.data() + count_; }

    bool contains(vertex_t x) const {
        for (int i = 0; i < count_; ++i)
            if (v_[i] == x) return true;
        return false;
    }

    /// Coface obtained by inserting a vertex not already present.
    simplex with_vertex(vertex_t x) const {
        assert(!contains(x) && count_ < max_vertices);
        simplex s;
        int i = 0;
        for (; i < count_ && v_[i] < x; ++i) s.v_[i] = v_[i];
        s.v_[i] = x;
        for (; i < count_; ++i) s.v_[i + 1] = v_[i];
        s.count_ = static_cast<std::int8_t>(count_ + 1);
        return s;
    }

    /// Facet obtained by deleting the vertex at position i.
    simplex facet(int i) const {
        assert(count_ > 1 && i >= 0 && i < count_);
        simplex s;
        for (int j = 0, k = 0; j < count_; ++j)
            if (j != i) s.v_[k++] = v_[j];
        s.count_ = static_cast<std::int8_t>(count_ - 1);
        return s;
    }

    /// Same dimension, with the vertex at position i substituted by x.
    simplex replace_vertex(int i, vertex_t x) const {
        assert(!contains(x));
        return facet(i).with_vertex(x);
    }

    friend bool operator==(const simplex& a, const simplex& b) {
        if (a.count_ != b.count_) return false;
        for (int i = 0; i < a.count_; ++i)
            if (a.v_[i] != b.v_[i]) return false;
        return true;
    }
    friend bool operator!=(const simplex& a, const simplex& b) { return !(a == b); }

private:
    std::array<vertex_t, max_vertices> v_{};
    std::int8_t count_ = 0;
};

inline bool vertex_lex_less(const simplex& a, const simplex& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

struct simplex_hash {
    std::size_t operator()(const simplex& s) const {
        std::uint64_t h = 14695981039346656037ull;
        for (vertex_t v : s) {
            h ^= static_cast<std::uint32_t>(v);
            h *= 1099511628211ull;
        }
        return static_cast<std::size_t>(h);
    }
};

/// Maximum pairwise distance among the vertices; zero for a single vertex.
inline value_t diameter(const simplex& s, const distance_matrix& d) {
    assert(!s.empty());
    if (s.back() >= d.size() || s[0] < 0) throw std::out_of_range("simplex vertex out of range");
    value_t m = 0;
    for (int i = 1; i < s.vertex_count(); ++i)
        for (int j = 0; j < i; ++j) m = std::max(m, d(s[i], s[j]));
    return m;
}

enum class simplex_order : std::int8_t { less = -1, equal = 0, greater = 1 };

/// Three-tier total order: diameter, then dimension, then lexicographic
/// vertex order. Diameters are compared as exact doubles; ties are resolved
/// combinatorially, never by epsilon.
inline simplex_order compare_keyed(value_t diam_a, const simplex& a, value_t diam_b,
                                   const simplex& b) {
    if (diam_a != diam_b) return diam_a < diam_b ? simplex_order::less : simplex_order::greater;
    if (a.vertex_count() != b.vertex_count())
        return a.vertex_count() < b.vertex_count() ? simplex_order::less : simplex_order::greater;
    for (int i = 0; i < a.vertex_count(); ++i)
        if (a[i] != b[i]) return a[i] < b[i] ? simplex_order::less : simplex_order::greater;
    return simplex_order::equal;
}

inline simplex_order compare(const simplex& a, const simplex& b, const distance_matrix& d) {
    return compare_keyed(diameter(a, d), a, diameter(b, d), b);
}

inline bool precedes(const simplex& a, const simplex& b, const distance_matrix& d) {
    return compare(a, b, d) == simplex_order::less;
}

/// Simplex together with its diameter (its entry scale into the filtration).
struct weighted_simplex {
    simplex s;
    value_t diameter = 0;

    friend bool operator==(const weighted_simplex& a, const weighted_simplex& b) {
        return a.s == b.s && a.diameter == b.diameter;
    }
};

inline bool filtration_less(const weighted_simplex& a, const weighted_simplex& b) {
    return compare_keyed(a.diameter, a.s, b.diameter, b.s) == simplex_order::less;
}

/// One barcode interval [birth, death); death is +inf for essential classes.
struct bar {
    int degree = 0;
    value_t birth = 0;
    value_t death = 0;

    friend bool operator==(const bar& a, const bar& b) {
        return a.degree == b.degree && a.birth == b.birth && a.death == b.death;
    }
};

using barcode = std::vector<bar>;

inline bool bar_less(const bar& a, const bar& b) {
    if (a.degree != b.degree) return a.degree < b.degree;
    if (a.birth != b.birth) return a.birth < b.birth;
    return a.death < b.death;
}

inline void sort_bars(barcode& bars) { std::sort(bars.begin(), bars.end(), bar_less); }

/// Shortest round-trip decimal form; integral values keep a trailing ".0" so
/// output columns stay visibly real-valued.
inline std::string format_double(value_t x) {
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    std::string out(buf, res.ptr);
    if (out.find_first_of(".eE") == std::string::npos) out += ".0";
    return out;
}

class binomial_table {
public:
    binomial_table(vertex_t n, int k) : n_(n), k_(k), c_(static_cast<std::size_t>(n + 1) * (k + 1)) {
        for (vertex_t i = 0; i <= n; ++i)
            for (int j = 0; j <= k; ++j) {
                index_t v;
                if (j == 0)
                    v = 1;
                else if (j > i)
                    v = 0;
                else
                    v = at(i - 1, j - 1) + at(i - 1, j);
                c_[static_cast<std::size_t>(i) * (k_ + 1) + j] = v;
            }
    }

    index_t operator()(vertex_t n, int k) const {
        if (k < 0 || k > k_ || n < 0) return 0;
        if (k > n) return 0;
        return at(n, k);
    }

private:
    index_t at(vertex_t i, int j) const { return c_[static_cast<std::size_t>(i) * (k_ + 1) + j]; }

    vertex_t n_;
    int k_;
    std::vector<index_t> c_;
};

/// k-subsets of {0,...,n-1} in lexicographic order; rank 0 is {0,...,k-1}.
inline void unrank_combination(index_t rank, vertex_t n, int k, const binomial_table& choose,
                               vertex_t* out) {
    vertex_t x = 0;
    for (int pos = 0; pos < k; ++pos) {
        while (choose(n - 1 - x, k - 1 - pos) <= rank) {
            rank -= choose(n - 1 - x, k - 1 - pos);
            ++x;
        }
        out[pos] = x++;
    }
}

}  // namespace dvr
