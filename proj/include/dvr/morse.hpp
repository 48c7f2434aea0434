#pragma once

#include <atomic>
#include <deque>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "dvr/core.hpp"
#include "dvr/lune.hpp"

namespace dvr {

enum class match_kind { matched_up, matched_down, critical };

/// Classification of a simplex under the lune matching: paired with the
/// coface of equal diameter one dimension up, paired with a facet one
/// dimension down, or critical.
struct match_class {
    match_kind kind = match_kind::critical;
    std::optional<simplex> partner;
};

enum class cache_policy {
    automatic,  // dense for degree 1, hashed otherwise
    dense,
    hashed,
    none  // recompute lunes on demand (low-memory mode)
};

/// The acyclic partial matching in a fixed degree q: each q-simplex with a
/// non-empty lune is paired with the coface spanned by its earliest lune
/// member. Matching queries are pure functions of (simplex, distances); the
/// cache only memoizes them, so concurrent writers always store identical
/// values and relaxed atomics suffice.
class matcher {
public:
    static constexpr vertex_t no_partner = -1;

    matcher(const distance_matrix& d, int degree, cache_policy policy = cache_policy::automatic)
        : d_(&d), q_(degree) {
        if (degree < 1) throw std::invalid_argument("matching degree must be >= 1");
        if (policy == cache_policy::automatic)
            policy = degree == 1 ? cache_policy::dense : cache_policy::hashed;
        if (policy == cache_policy::dense && degree != 1) policy = cache_policy::hashed;
        policy_ = policy;
        if (policy_ == cache_policy::dense)
            dense_.assign(static_cast<std::size_t>(d.size()) * d.size(), unset);
    }

    matcher(const matcher&) = delete;
    matcher& operator=(const matcher&) = delete;

    int degree() const { return q_; }
    const distance_matrix& dist() const { return *d_; }
    bool cache_enabled() const { return policy_ != cache_policy::none; }

    /// mu_q(s) for a q-simplex: the coface spanned by the earliest lune
    /// member, or nothing when the lune is empty.
    std::optional<simplex> partner_up(const simplex& s) const {
        assert(s.dim() == q_);
        const vertex_t x = partner_vertex(s);
        if (x == no_partner) return std::nullopt;
        return s.with_vertex(x);
    }

    /// Inverse direction: the unique facet matched into t, if any. Only the
    /// facet entering the filtration last can be matched into t.
    std::optional<simplex> partner_down(const simplex& t) const {
        assert(t.dim() == q_ + 1);
        const simplex u = latest_facet(t);
        const vertex_t x = partner_vertex(u);
        if (x != no_partner && u.with_vertex(x) == t) return u;
        return std::nullopt;
    }

    match_class classify(const simplex& s) const {
        if (s.dim() == q_) {
            if (auto p = partner_up(s)) return {match_kind::matched_up, std::move(p)};
        } else if (s.dim() == q_ + 1) {
            if (auto p = partner_down(s)) return {match_kind::matched_down, std::move(p)};
        }
        return {};
    }

    /// Out-edges of a (q+1)-simplex in the matching graph: the partners of
    /// its matched facets, excluding t itself, in filtration order.
    std::vector<simplex> neighbors(const simplex& t) const {
        assert(t.dim() == q_ + 1);
        std::vector<weighted_simplex> out;
        for (int i = 0; i < t.vertex_count(); ++i) {
            const simplex f = t.facet(i);
            const vertex_t x = partner_vertex(f);
            if (x == no_partner) continue;
            const simplex p = f.with_vertex(x);
            if (p == t) continue;
            out.push_back({p, diameter(p, *d_)});
        }
        std::sort(out.begin(), out.end(), filtration_less);
        std::vector<simplex> res;
        res.reserve(out.size());
        for (auto& ws : out)
            if (res.empty() || res.back() != ws.s) res.push_back(ws.s);
        return res;
    }

    /// Every (q+1)-simplex reachable from t in the matching graph, including
    /// t itself. Breadth-first with a filtration-ordered frontier; the result
    /// comes back in filtration order.
    std::vector<simplex> reach_set(const simplex& t) const {
        assert(t.dim() == q_ + 1);
        std::vector<weighted_simplex> res;
        std::unordered_set<simplex, simplex_hash> visited;
        std::deque<simplex> frontier;
        visited.insert(t);
        frontier.push_back(t);
        while (!frontier.empty()) {
            const simplex u = frontier.front();
            frontier.pop_front();
            res.push_back({u, diameter(u, *d_)});
            for (const simplex& v : neighbors(u))
                if (visited.insert(v).second) frontier.push_back(v);
        }
        std::sort(res.begin(), res.end(), filtration_less);
        std::vector<simplex> out;
        out.reserve(res.size());
        for (auto& ws : res) out.push_back(ws.s);
        return out;
    }

    /// Record a known matching result (vertex of the up-partner, or
    /// no_partner) so later queries hit the cache.
    void prime(const simplex& s, vertex_t partner) const {
        assert(s.dim() == q_);
        store(s, partner);
    }

    /// Cached or freshly computed vertex x with mu_q(s) = <x s>, else
    /// no_partner.
    vertex_t partner_vertex(const simplex& s) const {
        if (policy_ == cache_policy::dense) {
            std::int32_t& slot = dense_slot(s);
            std::atomic_ref<std::int32_t> ref(slot);
            std::int32_t v = ref.load(std::memory_order_relaxed);
            if (v == unset) {
                v = lune_min_scan(s);
                ref.store(v, std::memory_order_relaxed);
            }
            return v;
        }
        if (policy_ == cache_policy::hashed) {
            {
                std::shared_lock lock(hashed_mutex_);
                auto it = hashed_.find(s);
                if (it != hashed_.end()) return it->second;
            }
            const vertex_t v = lune_min_scan(s);
            std::unique_lock lock(hashed_mutex_);
            hashed_.emplace(s, v);
            return v;
        }
        return lune_min_scan(s);
    }

private:
    static constexpr std::int32_t unset = -2;

    vertex_t lune_min_scan(const simplex& s) const {
        const value_t ds = diameter(s, *d_);
        for (vertex_t x = 0; x < d_->size(); ++x)
            if (in_lune(x, s, ds, *d_)) return x;
        return no_partner;
    }

    simplex latest_facet(const simplex& t) const {
        simplex best = t.facet(0);
        value_t best_diam = diameter(best, *d_);
        for (int i = 1; i < t.vertex_count(); ++i) {
            const simplex f = t.facet(i);
            const value_t fd = diameter(f, *d_);
            if (compare_keyed(best_diam, best, fd, f) == simplex_order::less) {
                best = f;
                best_diam = fd;
            }
        }
        return best;
    }

    std::int32_t& dense_slot(const simplex& s) const {
        assert(s.vertex_count() == 2);
        return dense_[static_cast<std::size_t>(s[0]) * d_->size() + s[1]];
    }

    void store(const simplex& s, vertex_t v) const {
        if (policy_ == cache_policy::dense) {
            std::atomic_ref<std::int32_t> ref(dense_slot(s));
            ref.store(v, std::memory_order_relaxed);
        } else if (policy_ == cache_policy::hashed) {
            std::unique_lock lock(hashed_mutex_);
            hashed_.emplace(s, v);
        }
    }

    const distance_matrix* d_;
    int q_;
    cache_policy policy_;
    mutable std::vector<std::int32_t> dense_;
    mutable std::unordered_map<simplex, vertex_t, simplex_hash> hashed_;
    mutable std::shared_mutex hashed_mutex_;
};

/// True iff the matching graph on all (q+1)-simplices of diameter <= scale
/// has no directed cycle. Exhaustive enumeration; intended for small inputs
/// and validation runs.
inline bool verify_acyclic(const matcher& m, value_t scale = inf_value) {
    const distance_matrix& d = m.dist();
    const int k = m.degree() + 2;
    if (d.size() < k) return true;

    binomial_table choose(d.size(), k);
    const index_t total = choose(d.size(), k);
    std::vector<simplex> nodes;
    vertex_t buf[simplex::max_vertices];
    for (index_t r = 0; r < total; ++r) {
        unrank_combination(r, d.size(), k, choose, buf);
        const simplex s = simplex::of_sorted(buf, k);
        if (diameter(s, d) <= scale) nodes.push_back(s);
    }

    enum : char { white = 0, gray = 1, black = 2 };
    std::unordered_map<simplex, char, simplex_hash> color;
    struct frame {
        simplex node;
        std::vector<simplex> next;
        std::size_t idx = 0;
    };
    for (const simplex& start : nodes) {
        if (color[start] != white) continue;
        std::vector<frame> stack;
        stack.push_back({start, m.neighbors(start)});
        color[start] = gray;
        while (!stack.empty()) {
            frame& top = stack.back();
            if (top.idx < top.next.size()) {
                const simplex v = top.next[top.idx++];
                const char c = color[v];
                if (c == gray) return false;
                if (c == white) {
                    color[v] = gray;
                    stack.push_back({v, m.neighbors(v)});
                }
            } else {
                color[top.node] = black;
                stack.pop_back();
            }
        }
    }
    return true;
}

inline bool verify_acyclic(const distance_matrix& d, int degree, value_t scale = inf_value) {
    matcher m(d, degree);
    return verify_acyclic(m, scale);
}

}  // namespace dvr
