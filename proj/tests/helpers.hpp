#pragma once

#include <atomic>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numeric>
#include <string>
#include <unordered_set>
#include <vector>

#include "dvr/core.hpp"
#include "dvr/distill.hpp"
#include "dvr/generators.hpp"
#include "dvr/lune.hpp"
#include "dvr/morse.hpp"
#include "dvr/persistence.hpp"

namespace testutil {

// Three points, all pairwise distances 1.
inline dvr::distance_matrix equilateral_triangle() {
    dvr::distance_matrix d(3);
    d.set(0, 1, 1.0);
    d.set(0, 2, 1.0);
    d.set(1, 2, 1.0);
    return d;
}

inline dvr::point_cloud unit_square_points() {
    return dvr::point_cloud(
        std::vector<std::vector<double>>{{0, 0}, {1, 0}, {0, 1}, {1, 1}});
}

// Unit square corners 0=(0,0), 1=(1,0), 2=(0,1), 3=(1,1): side edges have
// diameter 1, the diagonals sqrt(2).
inline dvr::distance_matrix unit_square() {
    return dvr::distance_matrix::from_points(unit_square_points());
}

inline std::filesystem::path temp_file(const std::string& name, const std::string& contents) {
    static std::atomic<unsigned> counter{0};
    const auto dir = std::filesystem::temp_directory_path() / "dvr_tests";
    std::filesystem::create_directories(dir);
    const auto path = dir / (std::to_string(counter++) + "_" + name);
    std::ofstream out(path);
    out << contents;
    return path;
}

/// Literal re-statement of the lune definition, kept separate from the
/// library implementation: enumerate the candidate cofaces and test every
/// substitution comparison directly.
inline std::vector<dvr::vertex_t> definitional_lune(const dvr::simplex& s,
                                                    const dvr::distance_matrix& d) {
    std::vector<dvr::vertex_t> out;
    for (dvr::vertex_t x = 0; x < d.size(); ++x) {
        if (s.contains(x)) continue;
        bool all_less = true;
        for (int i = 0; i < s.vertex_count() && all_less; ++i) {
            std::vector<dvr::vertex_t> verts;
            for (int j = 0; j < s.vertex_count(); ++j)
                if (j != i) verts.push_back(s[j]);
            verts.push_back(x);
            all_less = dvr::precedes(dvr::simplex::of_unsorted(verts), s, d);
        }
        if (all_less) out.push_back(x);
    }
    return out;
}

inline void for_each_simplex(dvr::vertex_t n, int k,
                             const std::function<void(const dvr::simplex&)>& fn) {
    dvr::binomial_table choose(n, k);
    const dvr::index_t total = choose(n, k);
    dvr::vertex_t buf[dvr::simplex::max_vertices];
    for (dvr::index_t r = 0; r < total; ++r) {
        dvr::unrank_combination(r, n, k, choose, buf);
        fn(dvr::simplex::of_sorted(buf, k));
    }
}

/// Top simplices of the distilled complex straight from its definition:
/// enumerate the reduced complex's (q+1)-simplices (one coface per lune
/// component), classify each through the downward matching, and close the
/// critical ones under reach.
inline std::vector<dvr::simplex> definitional_dvr_tops(const dvr::distance_matrix& d, int q) {
    dvr::matcher m(d, q, dvr::cache_policy::hashed);
    std::unordered_set<dvr::simplex, dvr::simplex_hash> reduced_tops;
    for_each_simplex(d.size(), q + 1, [&](const dvr::simplex& e) {
        const dvr::lune_result lr = dvr::lune_representatives(e, d);
        for (dvr::vertex_t rep : lr.representatives) reduced_tops.insert(e.with_vertex(rep));
    });

    std::unordered_set<dvr::simplex, dvr::simplex_hash> tops;
    for (const dvr::simplex& t : reduced_tops)
        if (!m.partner_down(t))
            for (const dvr::simplex& r : m.reach_set(t)) tops.insert(r);

    std::vector<dvr::simplex> out(tops.begin(), tops.end());
    std::sort(out.begin(), out.end(), dvr::vertex_lex_less);
    return out;
}

inline std::vector<dvr::simplex> lex_sorted(const std::vector<dvr::weighted_simplex>& ws) {
    std::vector<dvr::simplex> out;
    out.reserve(ws.size());
    for (const auto& w : ws) out.push_back(w.s);
    std::sort(out.begin(), out.end(), dvr::vertex_lex_less);
    return out;
}

inline dvr::barcode distilled_degree1(const dvr::distance_matrix& d,
                                      const dvr::build_options& opts = {}) {
    const dvr::distilled_complex complex = dvr::build_dvr(d, 1, opts);
    const dvr::filtration filt = dvr::filtration::build(complex.all_simplices());
    return dvr::extract_barcode(dvr::reduce(filt), 1);
}

/// Random cloud matching the validation suite's envelope: n in [4, 25],
/// dimension in {2, 3, 4}, alternating uniform and Gaussian.
inline dvr::point_cloud random_cloud(std::uint64_t rep, int max_n = 25) {
    dvr::rng64 rng(rep * 7919 + 13);
    const int n = 4 + static_cast<int>(rng.uniform() * (max_n - 3));
    const int dim = 2 + static_cast<int>(rep % 3);
    return (rep % 2 == 0) ? dvr::uniform_cloud(n, dim, 1000 + rep)
                          : dvr::gaussian_cloud(n, dim, 2000 + rep);
}

inline std::vector<dvr::vertex_t> random_permutation(dvr::vertex_t n, std::uint64_t seed) {
    std::vector<dvr::vertex_t> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    dvr::rng64 rng(seed);
    for (dvr::vertex_t i = n - 1; i > 0; --i) {
        const auto j = static_cast<dvr::vertex_t>(rng.uniform() * (i + 1));
        std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
    }
    return perm;
}

inline std::string simplex_list_string(const std::vector<dvr::weighted_simplex>& cells) {
    std::string out;
    for (const auto& c : cells) {
        for (dvr::vertex_t v : c.s) {
            out += std::to_string(v);
            out += ' ';
        }
        out += '(';
        out += dvr::format_double(c.diameter);
        out += ")\n";
    }
    return out;
}

}  // namespace testutil
