#pragma once

#include <cmath>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "dvr/core.hpp"

namespace dvr {

/// Seeded random source with explicit double extraction, so generated clouds
/// are reproducible byte-for-byte across platforms and standard-library
/// versions.
class rng64 {
public:
    explicit rng64(std::uint64_t seed) : eng_(seed) {}

    double uniform() {  // [0, 1)
        return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    }

    double normal() {  // Box-Muller
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform(), u2 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double mag = std::sqrt(-2.0 * std::log(u1));
        const double ang = 2.0 * pi * u2;
        spare_ = mag * std::sin(ang);
        have_spare_ = true;
        return mag * std::cos(ang);
    }

private:
    static constexpr double pi = 3.141592653589793238462643383279502884;
    std::mt19937_64 eng_;
    bool have_spare_ = false;
    double spare_ = 0;
};

inline point_cloud uniform_cloud(int n, int dim, std::uint64_t seed, double side = 1.0) {
    rng64 rng(seed);
    std::vector<std::vector<value_t>> pts(static_cast<std::size_t>(n));
    for (auto& p : pts) {
        p.resize(static_cast<std::size_t>(dim));
        for (auto& c : p) c = rng.uniform() * side;
    }
    return point_cloud(std::move(pts));
}

inline point_cloud gaussian_cloud(int n, int dim, std::uint64_t seed) {
    rng64 rng(seed);
    std::vector<std::vector<value_t>> pts(static_cast<std::size_t>(n));
    for (auto& p : pts) {
        p.resize(static_cast<std::size_t>(dim));
        for (auto& c : p) c = rng.normal();
    }
    return point_cloud(std::move(pts));
}

inline point_cloud unit_sphere_cloud(int n, std::uint64_t seed) {
    rng64 rng(seed);
    std::vector<std::vector<value_t>> pts(static_cast<std::size_t>(n));
    for (auto& p : pts) {
        double x, y, z, norm;
        do {
            x = rng.normal();
            y = rng.normal();
            z = rng.normal();
            norm = std::sqrt(x * x + y * y + z * z);
        } while (norm == 0.0);
        p = {x / norm, y / norm, z / norm};
    }
    return point_cloud(std::move(pts));
}

/// Small circles arranged evenly around a large circle; points are evenly
/// spaced on each small circle with a mild seeded angular jitter.
inline point_cloud circle_of_circles(int n_circles, int points_per_circle, double small_radius,
                                     double big_radius, std::uint64_t seed, double jitter = 0.2) {
    constexpr double tau = 6.283185307179586476925286766559;
    rng64 rng(seed);
    std::vector<std::vector<value_t>> pts;
    pts.reserve(static_cast<std::size_t>(n_circles) * points_per_circle);
    for (int c = 0; c < n_circles; ++c) {
        const double theta = tau * c / n_circles;
        const double cx = big_radius * std::cos(theta);
        const double cy = big_radius * std::sin(theta);
        for (int j = 0; j < points_per_circle; ++j) {
            const double step = tau / points_per_circle;
            const double phi = step * j + jitter * (rng.uniform() - 0.5) * step;
            pts.push_back({cx + small_radius * std::cos(phi), cy + small_radius * std::sin(phi)});
        }
    }
    return point_cloud(std::move(pts));
}

enum class sample_shape { cube, sphere, circle_of_circles };

inline std::optional<sample_shape> parse_shape(const std::string& name) {
    if (name == "cube") return sample_shape::cube;
    if (name == "sphere") return sample_shape::sphere;
    if (name == "circle-of-circles") return sample_shape::circle_of_circles;
    return std::nullopt;
}

/// Benchmark cloud of a given size: uniform in a 10x10x10 cube, uniform on
/// the unit sphere, or n points spread over twelve small circles.
inline point_cloud sample_cloud(sample_shape shape, int n, std::uint64_t seed) {
    switch (shape) {
        case sample_shape::cube:
            return uniform_cloud(n, 3, seed, 10.0);
        case sample_shape::sphere:
            return unit_sphere_cloud(n, seed);
        case sample_shape::circle_of_circles: {
            const int circles = 12;
            const int per = std::max(1, (n + circles - 1) / circles);
            point_cloud full = circle_of_circles(circles, per, 0.4, 4.5, seed);
            if (full.size() == n) return full;
            std::vector<std::vector<value_t>> pts;
            pts.reserve(static_cast<std::size_t>(n));
            for (vertex_t i = 0; i < n && i < full.size(); ++i) pts.push_back(full[i]);
            return point_cloud(std::move(pts));
        }
    }
    throw std::invalid_argument("unknown sample shape");
}

}  // namespace dvr
