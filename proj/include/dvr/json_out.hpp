#pragma once

#include <json.hpp>

#include "dvr/core.hpp"
#include "dvr/distill.hpp"

namespace dvr {

/// Stats as JSON. Timings are wall-clock and therefore not reproducible;
/// pass include_timings = false wherever byte-identical output matters.
inline nlohmann::ordered_json stats_to_json(const distill_stats& s, bool include_timings = true) {
    nlohmann::ordered_json j;
    j["n_points"] = s.n_points;
    j["n_edges_total"] = s.n_edges_total;
    j["b_x"] = s.b_x;
    j["n_top"] = s.n_top;
    j["n_faces"] = s.n_faces;
    j["phase_ms"] = {
        {"match", include_timings ? s.match_ms : 0.0},
        {"reach", include_timings ? s.reach_ms : 0.0},
        {"merge", include_timings ? s.merge_ms : 0.0},
    };
    return j;
}

/// Barcode as a JSON array sorted like the CSV; infinite deaths serialize as
/// null.
inline nlohmann::ordered_json barcode_to_json(barcode bars) {
    sort_bars(bars);
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const bar& b : bars) {
        nlohmann::ordered_json row;
        row["dimension"] = b.degree;
        row["birth"] = b.birth;
        if (std::isinf(b.death))
            row["death"] = nullptr;
        else
            row["death"] = b.death;
        arr.push_back(std::move(row));
    }
    return arr;
}

}  // namespace dvr
