#pragma once

#include <chrono>
#include <unordered_set>
#include <vector>

#include "dvr/core.hpp"
#include "dvr/lune.hpp"
#include "dvr/morse.hpp"
#include "dvr/parallel.hpp"

namespace dvr {

struct build_options {
    unsigned workers = 0;    // 0 = hardware concurrency
    bool low_memory = false; // skip the matching cache, recompute lunes on demand
};

/// The distilled complex: the union of reach sets over the critical
/// (q+1)-simplices, closed under faces, with every vertex included so that
/// indexing stays uniform even for isolated points.
struct distilled_complex {
    int degree = 1;
    vertex_t n_points = 0;
    std::vector<weighted_simplex> tops;   // (q+1)-simplices, filtration order
    std::vector<weighted_simplex> faces;  // dimensions 0..q, filtration order
    index_t candidate_count = 0;          // q-simplices scanned by the main loop
    index_t multi_lune_count = 0;         // b(X): q-simplices with >1 lune component
    double match_ms = 0;
    double reach_ms = 0;
    double merge_ms = 0;

    /// All simplices merged into a single filtration-ordered list.
    std::vector<weighted_simplex> all_simplices() const {
        std::vector<weighted_simplex> out;
        out.reserve(faces.size() + tops.size());
        std::merge(faces.begin(), faces.end(), tops.begin(), tops.end(), std::back_inserter(out),
                   filtration_less);
        return out;
    }
};

struct distill_stats {
    vertex_t n_points = 0;
    index_t n_edges_total = 0;
    index_t b_x = 0;
    index_t n_top = 0;
    index_t n_faces = 0;
    double match_ms = 0;
    double reach_ms = 0;
    double merge_ms = 0;
};

inline distill_stats dvr_stats(const distilled_complex& c) {
    distill_stats s;
    s.n_points = c.n_points;
    s.n_edges_total = c.candidate_count;
    s.b_x = c.multi_lune_count;
    s.n_top = static_cast<index_t>(c.tops.size());
    s.n_faces = static_cast<index_t>(c.faces.size());
    s.match_ms = c.match_ms;
    s.reach_ms = c.reach_ms;
    s.merge_ms = c.merge_ms;
    return s;
}

/// Cofaces seeding the distilled complex for one q-simplex: one coface per
/// lune component beyond the first. The earliest representative spans the
/// matched coface and is skipped.
inline std::vector<simplex> critical_cofaces(const simplex& e, const distance_matrix& d) {
    const lune_result lr = lune_representatives(e, d);
    std::vector<simplex> out;
    for (std::size_t i = 1; i < lr.representatives.size(); ++i)
        out.push_back(e.with_vertex(lr.representatives[i]));
    return out;
}

namespace detail {

inline double elapsed_ms(std::chrono::steady_clock::time_point since) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since)
        .count();
}

}  // namespace detail

/// Build the degree-q distilled complex: scan every q-simplex, seed from the
/// non-earliest lune-component representatives, take reach closures, merge,
/// and close under faces. The scan parallelizes over disjoint rank ranges;
/// workers only write local buffers, so the result does not depend on the
/// worker count.
inline distilled_complex build_dvr(const distance_matrix& d, int q,
                                   const build_options& opts = {}) {
    if (q < 1) throw std::invalid_argument("distilled complex degree must be >= 1");
    const vertex_t n = d.size();

    distilled_complex out;
    out.degree = q;
    out.n_points = n;

    const matcher match(d, q, opts.low_memory ? cache_policy::none : cache_policy::automatic);
    const binomial_table choose(n, q + 1);
    out.candidate_count = choose(n, q + 1);

    const unsigned workers = resolve_workers(opts.workers);
    const auto t_match = std::chrono::steady_clock::now();

    // Phase 1: lunes and their components for every q-simplex; collect the
    // critical-coface seeds and fill the matching cache as a side effect.
    std::vector<std::vector<weighted_simplex>> chunk_seeds(workers);
    std::vector<index_t> chunk_multi(workers, 0);
    parallel_chunks(out.candidate_count, workers, [&](unsigned chunk, index_t begin, index_t end) {
        vertex_t buf[simplex::max_vertices];
        auto& seeds = chunk_seeds[chunk];
        for (index_t r = begin; r < end; ++r) {
            unrank_combination(r, n, q + 1, choose, buf);
            const simplex e = simplex::of_sorted(buf, q + 1);
            const std::vector<vertex_t> members = compute_lune(e, d);
            if (match.cache_enabled())
                match.prime(e, members.empty() ? matcher::no_partner : members.front());
            if (members.size() < 2) continue;
            const auto blocks = lune_components(e, members, d);
            if (blocks.size() < 2) continue;
            ++chunk_multi[chunk];
            const value_t de = diameter(e, d);
            for (std::size_t i = 1; i < blocks.size(); ++i)
                seeds.push_back({e.with_vertex(blocks[i].front()), de});
        }
    });
    out.match_ms = detail::elapsed_ms(t_match);

    std::vector<weighted_simplex> seeds;
    for (auto& cs : chunk_seeds) seeds.insert(seeds.end(), cs.begin(), cs.end());
    for (index_t c : chunk_multi) out.multi_lune_count += c;

    // Phase 2: reach closure from every seed; the cache is fully primed, so
    // this phase only reads shared state.
    const auto t_reach = std::chrono::steady_clock::now();
    std::vector<std::vector<weighted_simplex>> chunk_tops(workers);
    parallel_chunks(static_cast<index_t>(seeds.size()), workers,
                    [&](unsigned chunk, index_t begin, index_t end) {
                        auto& tops = chunk_tops[chunk];
                        for (index_t i = begin; i < end; ++i) {
                            for (const simplex& s : match.reach_set(seeds[static_cast<std::size_t>(i)].s))
                                tops.push_back({s, diameter(s, d)});
                        }
                        std::sort(tops.begin(), tops.end(), filtration_less);
                    });
    out.reach_ms = detail::elapsed_ms(t_reach);

    // Merge the per-worker sorted lists and close under faces.
    const auto t_merge = std::chrono::steady_clock::now();
    std::vector<weighted_simplex> tops;
    for (auto& ct : chunk_tops) {
        std::vector<weighted_simplex> merged;
        merged.reserve(tops.size() + ct.size());
        std::merge(tops.begin(), tops.end(), ct.begin(), ct.end(), std::back_inserter(merged),
                   filtration_less);
        tops = std::move(merged);
    }
    tops.erase(std::unique(tops.begin(), tops.end(),
                           [](const weighted_simplex& a, const weighted_simplex& b) {
                               return a.s == b.s;
                           }),
               tops.end());
    out.tops = std::move(tops);

    std::unordered_set<simplex, simplex_hash> face_set;
    for (vertex_t v = 0; v < n; ++v) face_set.insert(simplex::single(v));
    for (const auto& top : out.tops) {
        const int k = top.s.vertex_count();
        vertex_t buf[simplex::max_vertices];
        for (unsigned mask = 1; mask + 1 < (1u << k); ++mask) {
            int cnt = 0;
            for (int b = 0; b < k; ++b)
                if (mask & (1u << b)) buf[cnt++] = top.s[b];
            face_set.insert(simplex::of_sorted(buf, cnt));
        }
    }
    out.faces.reserve(face_set.size());
    for (const simplex& f : face_set) out.faces.push_back({f, diameter(f, d)});
    std::sort(out.faces.begin(), out.faces.end(), filtration_less);
    out.merge_ms = detail::elapsed_ms(t_merge);

    return out;
}

}  // namespace dvr
