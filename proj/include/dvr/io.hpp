#pragma once

#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "dvr/core.hpp"

namespace dvr {

enum class input_format { points_csv, dist_csv, dist_lower };

inline std::optional<input_format> parse_input_format(const std::string& name) {
    if (name == "points-csv") return input_format::points_csv;
    if (name == "dist-csv") return input_format::dist_csv;
    if (name == "dist-lower") return input_format::dist_lower;
    return std::nullopt;
}

/// Loaded input: the distance matrix plus the coordinates when the input was
/// a point file (coordinates feed mesh export; everything else runs off the
/// matrix alone).
struct dataset {
    distance_matrix dist;
    std::optional<point_cloud> points;
    double max_relative_asymmetry = 0.0;
    bool asymmetry_reported = false;
};

namespace detail {

inline std::vector<value_t> parse_csv_row(const std::string& line, std::size_t line_no) {
    std::vector<value_t> out;
    std::size_t pos = 0;
    while (pos <= line.size()) {
        std::size_t end = line.find(',', pos);
        if (end == std::string::npos) end = line.size();
        std::size_t a = pos, b = end;
        while (a < b && (line[a] == ' ' || line[a] == '\t')) ++a;
        while (b > a && (line[b - 1] == ' ' || line[b - 1] == '\t' || line[b - 1] == '\r')) --b;
        if (a == b) throw io_error("empty cell at line " + std::to_string(line_no));
        value_t v;
        auto res = std::from_chars(line.data() + a, line.data() + b, v);
        if (res.ec != std::errc() || res.ptr != line.data() + b)
            throw io_error("non-numeric cell '" + line.substr(a, b - a) + "' at line " +
                           std::to_string(line_no));
        out.push_back(v);
        if (end == line.size()) break;
        pos = end + 1;
    }
    return out;
}

inline bool blank_line(const std::string& line) {
    for (char c : line)
        if (c != ' ' && c != '\t' && c != '\r') return false;
    return true;
}

inline std::vector<std::vector<value_t>> read_rows(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open input file: " + path);
    std::vector<std::vector<value_t>> rows;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (blank_line(line)) continue;
        rows.push_back(parse_csv_row(line, line_no));
    }
    return rows;
}

inline void check_nonnegative(const std::vector<std::vector<value_t>>& rows) {
    for (const auto& row : rows)
        for (value_t v : row)
            if (v < 0) throw io_error("negative distance in input");
}

}  // namespace detail

/// Read a point or distance file and produce the pairwise distance matrix.
/// Full matrices are symmetrized by averaging; asymmetry beyond a 1e-9
/// relative tolerance is flagged on the returned dataset so callers can
/// report it.
inline dataset load_points(const std::string& path, input_format fmt) {
    auto rows = detail::read_rows(path);

    if (fmt == input_format::points_csv) {
        if (rows.empty()) throw io_error("no points in input file: " + path);
        point_cloud pts(std::move(rows));
        dataset out{distance_matrix::from_points(pts), std::move(pts)};
        return out;
    }

    if (fmt == input_format::dist_csv) {
        const vertex_t n = static_cast<vertex_t>(rows.size());
        if (n == 0) throw io_error("empty distance matrix: " + path);
        for (const auto& row : rows)
            if (static_cast<vertex_t>(row.size()) != n)
                throw io_error("distance matrix is not square");
        detail::check_nonnegative(rows);
        dataset out{distance_matrix(n), std::nullopt};
        for (vertex_t i = 0; i < n; ++i) {
            if (rows[i][static_cast<std::size_t>(i)] != 0)
                throw io_error("distance matrix has a nonzero diagonal entry");
            for (vertex_t j = i + 1; j < n; ++j) {
                const value_t a = rows[i][static_cast<std::size_t>(j)];
                const value_t b = rows[j][static_cast<std::size_t>(i)];
                if (a != b) {
                    const value_t scale = std::max(std::abs(a), std::abs(b));
                    const value_t rel = scale > 0 ? std::abs(a - b) / scale : 0.0;
                    out.max_relative_asymmetry = std::max(out.max_relative_asymmetry, rel);
                    if (rel > 1e-9) out.asymmetry_reported = true;
                }
                out.dist.set(i, j, (a + b) / 2);
            }
        }
        return out;
    }

    // dist-lower: row k holds the k distances to points 0..k-1; an empty
    // file is a single point.
    const vertex_t n = static_cast<vertex_t>(rows.size()) + 1;
    detail::check_nonnegative(rows);
    dataset out{distance_matrix(n), std::nullopt};
    for (vertex_t i = 1; i < n; ++i) {
        const auto& row = rows[static_cast<std::size_t>(i - 1)];
        if (static_cast<vertex_t>(row.size()) != i)
            throw io_error("lower-triangle row " + std::to_string(i) + " must have " +
                           std::to_string(i) + " entries");
        for (vertex_t j = 0; j < i; ++j) out.dist.set(i, j, row[static_cast<std::size_t>(j)]);
    }
    return out;
}

}  // namespace dvr
