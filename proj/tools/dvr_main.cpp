// dvr: degree-1 Vietoris-Rips persistence barcodes from distilled complexes,
// plus simplex-count benchmarks and (clipped) relative neighborhood complex
// export.

#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "dvr/distill.hpp"
#include "dvr/generators.hpp"
#include "dvr/io.hpp"
#include "dvr/json_out.hpp"
#include "dvr/oracle.hpp"
#include "dvr/persistence.hpp"
#include "dvr/rnc.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_usage = 1;
constexpr int exit_validation = 2;
constexpr int exit_cap = 3;

struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct validation_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct run_config {
    std::string input;
    std::string format = "points-csv";
    int degree = 1;
    unsigned workers = 0;
    bool low_memory = false;
    bool oracle = false;
    bool json = false;
    bool with_ph0 = false;
    bool no_timings = false;
    std::string output;

    // bench
    std::vector<int> sizes = {50, 100, 200, 300, 400, 500, 600, 700};
    std::string shape = "cube";
    std::uint64_t seed = 1;

    // crnc
    int q = 1;
    bool plain_rnc = false;
    int rnc_cap = 2000;
    bool csv = false;
};

void write_output(const run_config& cfg, const std::string& text) {
    if (cfg.output.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(cfg.output);
    if (!out) throw dvr::io_error("cannot open output file: " + cfg.output);
    out << text;
}

dvr::dataset load(const run_config& cfg) {
    const auto fmt = dvr::parse_input_format(cfg.format);
    if (!fmt) throw usage_error("unknown input format: " + cfg.format);
    if (cfg.input.empty()) throw usage_error("--input is required");
    dvr::dataset data = dvr::load_points(cfg.input, *fmt);
    if (data.asymmetry_reported)
        std::cerr << "warning: input matrix asymmetric (max relative deviation "
                  << dvr::format_double(data.max_relative_asymmetry)
                  << "); symmetrized by averaging\n";
    return data;
}

dvr::barcode distilled_degree1_barcode(const dvr::distance_matrix& d,
                                       const dvr::build_options& opts) {
    const dvr::distilled_complex complex = dvr::build_dvr(d, 1, opts);
    const dvr::filtration filt = dvr::filtration::build(complex.all_simplices());
    return dvr::extract_barcode(dvr::reduce(filt), 1);
}

int cmd_compute(const run_config& cfg) {
    if (cfg.degree != 1)
        throw usage_error("only degree-1 persistence is supported; higher degrees would need "
                          "distilled complexes whose construction is impractically slow");
    const dvr::dataset data = load(cfg);
    const dvr::build_options opts{cfg.workers, cfg.low_memory};

    dvr::barcode bars = distilled_degree1_barcode(data.dist, opts);

    if (cfg.oracle) {
        const dvr::barcode reference = dvr::full_vr_barcode(data.dist);
        if (!(bars == reference))
            throw validation_error("distilled barcode disagrees with the full-complex reference");
        std::cerr << "reference check passed: " << bars.size() << " interval(s)\n";
    }

    if (cfg.with_ph0) {
        const dvr::barcode deg0 = dvr::ph0(data.dist);
        bars.insert(bars.end(), deg0.begin(), deg0.end());
        dvr::sort_bars(bars);
    }

    std::ostringstream os;
    if (cfg.json)
        os << dvr::barcode_to_json(bars).dump(2) << '\n';
    else
        dvr::write_barcode_csv(bars, os);
    write_output(cfg, os.str());
    return exit_ok;
}

int cmd_stats(const run_config& cfg) {
    const dvr::dataset data = load(cfg);
    const dvr::distilled_complex complex =
        dvr::build_dvr(data.dist, 1, {cfg.workers, cfg.low_memory});
    std::ostringstream os;
    os << dvr::stats_to_json(dvr::dvr_stats(complex), !cfg.no_timings).dump(2) << '\n';
    write_output(cfg, os.str());
    return exit_ok;
}

int cmd_bench(const run_config& cfg) {
    const auto shape = dvr::parse_shape(cfg.shape);
    if (!shape) throw usage_error("unknown shape: " + cfg.shape);
    if (cfg.sizes.empty()) throw usage_error("--sizes must name at least one size");

    std::ostringstream os;
    os << "n,n_top,b_x,wall_ms\n";
    std::vector<std::pair<double, double>> points;
    for (int n : cfg.sizes) {
        if (n < 1) throw usage_error("sizes must be positive");
        const dvr::point_cloud pts = dvr::sample_cloud(*shape, n, cfg.seed);
        const dvr::distance_matrix d = dvr::distance_matrix::from_points(pts);
        const auto t0 = std::chrono::steady_clock::now();
        const dvr::distilled_complex complex = dvr::build_dvr(d, 1, {cfg.workers, false});
        const double ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                .count();
        os << n << ',' << complex.tops.size() << ',' << complex.multi_lune_count << ','
           << dvr::format_double(cfg.no_timings ? 0.0 : ms) << '\n';
        points.emplace_back(n, static_cast<double>(complex.tops.size()));
    }

    if (points.size() >= 2) {
        double sx = 0, sy = 0;
        for (auto [x, y] : points) sx += x, sy += y;
        const double mx = sx / static_cast<double>(points.size());
        const double my = sy / static_cast<double>(points.size());
        double sxy = 0, sxx = 0, syy = 0;
        for (auto [x, y] : points) {
            sxy += (x - mx) * (y - my);
            sxx += (x - mx) * (x - mx);
            syy += (y - my) * (y - my);
        }
        const double r2 = syy > 0 && sxx > 0 ? (sxy * sxy) / (sxx * syy) : 1.0;
        std::cerr << "linear fit of n_top vs n: R^2 = " << dvr::format_double(r2) << '\n';
    }
    write_output(cfg, os.str());
    return exit_ok;
}

int cmd_crnc(const run_config& cfg) {
    if (cfg.q != 1 && cfg.q != 2) throw usage_error("--q must be 1 or 2");
    const dvr::dataset data = load(cfg);
    if (cfg.q == 2 && data.dist.size() > cfg.rnc_cap)
        throw dvr::cap_error("degree-2 neighborhood complexes are capped at " +
                             std::to_string(cfg.rnc_cap) + " points (see --cap)");

    const std::vector<dvr::weighted_simplex> elements =
        cfg.plain_rnc ? dvr::rnc(data.dist, cfg.q, cfg.workers)
                      : dvr::crnc(data.dist, cfg.q, {cfg.workers, cfg.low_memory});

    const dvr::point_cloud* pts = data.points ? &*data.points : nullptr;
    const dvr::skeleton sk = dvr::make_skeleton(cfg.q, elements, pts, data.dist);
    if (sk.from_layout && cfg.q == 2)
        std::cerr << "warning: no input coordinates; face export uses a 2-D spectral layout\n";

    const bool as_csv =
        cfg.csv || (cfg.output.size() >= 4 && cfg.output.substr(cfg.output.size() - 4) == ".csv");
    std::ostringstream os;
    if (as_csv)
        dvr::write_skeleton_csv(sk, os);
    else
        dvr::write_obj(sk, os);
    write_output(cfg, os.str());
    return exit_ok;
}

void add_io_options(CLI::App* cmd, run_config& cfg) {
    cmd->add_option("--input", cfg.input, "input file")->required();
    cmd->add_option("--format", cfg.format,
                    "input format: points-csv, dist-csv or dist-lower (default points-csv)");
    cmd->add_option("--workers", cfg.workers, "worker threads (default: hardware count)");
    cmd->add_flag("--low-memory", cfg.low_memory,
                  "do not store the matching; recompute lunes on demand");
    cmd->add_option("--output", cfg.output, "output file (default: stdout)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"degree-1 Vietoris-Rips persistence via distilled complexes"};
    app.require_subcommand(1);
    run_config cfg;

    CLI::App* compute = app.add_subcommand("compute", "compute the degree-1 barcode");
    add_io_options(compute, cfg);
    compute->add_option("--degree", cfg.degree, "homology degree (only 1 is supported)");
    compute->add_flag("--oracle", cfg.oracle,
                      "cross-check against the full-complex reference (small inputs)");
    compute->add_flag("--json", cfg.json, "emit JSON instead of CSV");
    compute->add_flag("--with-ph0", cfg.with_ph0, "include degree-0 intervals");

    CLI::App* stats = app.add_subcommand("stats", "report distilled-complex statistics as JSON");
    add_io_options(stats, cfg);
    stats->add_flag("--no-timings", cfg.no_timings, "zero out wall-clock fields");

    CLI::App* bench = app.add_subcommand("bench", "simplex-count series over sampled point clouds");
    bench->add_option("--sizes", cfg.sizes, "point-cloud sizes")->delimiter(',');
    bench->add_option("--shape", cfg.shape, "cube, sphere or circle-of-circles");
    bench->add_option("--seed", cfg.seed, "generator seed");
    bench->add_option("--workers", cfg.workers, "worker threads (default: hardware count)");
    bench->add_flag("--no-timings", cfg.no_timings, "zero out the wall_ms column");
    bench->add_option("--output", cfg.output, "output file (default: stdout)");

    CLI::App* crnc = app.add_subcommand("crnc", "export (clipped) relative neighborhood complexes");
    add_io_options(crnc, cfg);
    crnc->add_option("--q", cfg.q, "complex degree: 1 (edges) or 2 (triangles)");
    crnc->add_flag("--rnc", cfg.plain_rnc, "export the unclipped complex (full enumeration)");
    crnc->add_option("--cap", cfg.rnc_cap, "point cap for degree-2 runs (default 2000)");
    crnc->add_flag("--csv", cfg.csv, "emit q,v0,v1[,v2] rows instead of OBJ");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        if (compute->parsed()) return cmd_compute(cfg);
        if (stats->parsed()) return cmd_stats(cfg);
        if (bench->parsed()) return cmd_bench(cfg);
        if (crnc->parsed()) return cmd_crnc(cfg);
        return exit_usage;
    } catch (const dvr::cap_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_cap;
    } catch (const validation_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_validation;
    } catch (const usage_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    }
}
