#pragma once

#include <Eigen/Dense>
#include <array>
#include <optional>
#include <ostream>
#include <vector>

#include "dvr/core.hpp"
#include "dvr/distill.hpp"
#include "dvr/lune.hpp"
#include "dvr/parallel.hpp"

namespace dvr {

inline bool lune_is_empty(const simplex& s, const distance_matrix& d) {
    const value_t ds = diameter(s, d);
    for (vertex_t x = 0; x < d.size(); ++x)
        if (in_lune(x, s, ds, d)) return false;
    return true;
}

/// All q-simplices with empty lune, in filtration order. For q = 1 this is
/// the relative neighborhood graph.
inline std::vector<weighted_simplex> rnc(const distance_matrix& d, int q, unsigned workers = 0) {
    if (q < 1) throw std::invalid_argument("relative neighborhood complex degree must be >= 1");
    const vertex_t n = d.size();
    const binomial_table choose(n, q + 1);
    const index_t total = choose(n, q + 1);

    const unsigned w = resolve_workers(workers);
    std::vector<std::vector<weighted_simplex>> local(w);
    parallel_chunks(total, w, [&](unsigned chunk, index_t begin, index_t end) {
        vertex_t buf[simplex::max_vertices];
        for (index_t r = begin; r < end; ++r) {
            unrank_combination(r, n, q + 1, choose, buf);
            const simplex s = simplex::of_sorted(buf, q + 1);
            if (lune_is_empty(s, d)) local[chunk].push_back({s, diameter(s, d)});
        }
    });

    std::vector<weighted_simplex> out;
    for (auto& ls : local) out.insert(out.end(), ls.begin(), ls.end());
    std::sort(out.begin(), out.end(), filtration_less);
    return out;
}

/// Clipped complex: the critical q-simplices (empty lune) that survive into
/// the distilled complex. Only the distilled q-faces need the lune test, so
/// no full enumeration happens here.
inline std::vector<weighted_simplex> crnc(const distance_matrix& d, int q,
                                          const build_options& opts = {}) {
    const distilled_complex complex = build_dvr(d, q, opts);
    std::vector<weighted_simplex> out;
    for (const auto& f : complex.faces)
        if (f.s.dim() == q && lune_is_empty(f.s, d)) out.push_back(f);
    return out;  // faces are already in filtration order
}

/// Vertex positions plus the exported elements; positions come from the
/// input coordinates when available and from a 2-D spectral embedding of the
/// distance matrix otherwise.
struct skeleton {
    int q = 1;
    std::vector<std::array<value_t, 3>> vertices;
    std::vector<simplex> elements;
    bool from_layout = false;
};

/// Classical multidimensional scaling: double-centered squared distances,
/// top-two eigenpairs.
inline std::vector<std::array<value_t, 2>> spectral_layout_2d(const distance_matrix& d) {
    const vertex_t n = d.size();
    Eigen::MatrixXd b(n, n);
    for (vertex_t i = 0; i < n; ++i)
        for (vertex_t j = 0; j < n; ++j) b(i, j) = d(i, j) * d(i, j);

    const Eigen::VectorXd row_mean = b.rowwise().mean();
    const double grand_mean = row_mean.mean();
    for (vertex_t i = 0; i < n; ++i)
        for (vertex_t j = 0; j < n; ++j)
            b(i, j) = -0.5 * (b(i, j) - row_mean(i) - row_mean(j) + grand_mean);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(b);
    std::vector<std::array<value_t, 2>> coords(static_cast<std::size_t>(n), {0.0, 0.0});
    for (int k = 0; k < 2 && k < n; ++k) {
        const int idx = n - 1 - k;  // eigenvalues come back ascending
        const double lambda = std::max(es.eigenvalues()(idx), 0.0);
        const double scale = std::sqrt(lambda);
        for (vertex_t i = 0; i < n; ++i)
            coords[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] =
                es.eigenvectors()(i, idx) * scale;
    }
    return coords;
}

inline skeleton make_skeleton(int q, const std::vector<weighted_simplex>& elements,
                              const point_cloud* points, const distance_matrix& d) {
    skeleton out;
    out.q = q;
    out.elements.reserve(elements.size());
    for (const auto& e : elements) out.elements.push_back(e.s);

    if (points != nullptr) {
        const int dim = points->dim();
        for (vertex_t i = 0; i < points->size(); ++i) {
            std::array<value_t, 3> p{0.0, 0.0, 0.0};
            for (int k = 0; k < 3 && k < dim; ++k)
                p[static_cast<std::size_t>(k)] = (*points)[i][static_cast<std::size_t>(k)];
            out.vertices.push_back(p);
        }
    } else {
        out.from_layout = true;
        for (const auto& c : spectral_layout_2d(d)) out.vertices.push_back({c[0], c[1], 0.0});
    }
    return out;
}

/// Wavefront OBJ with 1-based indices: `l` elements for edges, `f` for
/// triangles.
inline void write_obj(const skeleton& sk, std::ostream& os) {
    for (const auto& v : sk.vertices)
        os << "v " << format_double(v[0]) << ' ' << format_double(v[1]) << ' '
           << format_double(v[2]) << '\n';
    for (const simplex& e : sk.elements) {
        os << (e.vertex_count() == 2 ? "l" : "f");
        for (vertex_t v : e) os << ' ' << v + 1;
        os << '\n';
    }
}

/// One `q,v0,v1[,v2]` row per element.
inline void write_skeleton_csv(const skeleton& sk, std::ostream& os) {
    for (const simplex& e : sk.elements) {
        os << e.dim();
        for (vertex_t v : e) os << ',' << v;
        os << '\n';
    }
}

}  // namespace dvr
