// Acceptance suite: one pass/fail line per criterion, nonzero exit when
// anything fails. An optional argv[1] names the CLI binary; when present the
// determinism criterion is additionally checked end to end through it.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "dvr/distill.hpp"
#include "dvr/generators.hpp"
#include "dvr/json_out.hpp"
#include "dvr/morse.hpp"
#include "dvr/oracle.hpp"
#include "dvr/persistence.hpp"
#include "dvr/rnc.hpp"

using namespace dvr;

namespace {

int failures = 0;

void report(int number, const std::string& name, bool pass, const std::string& detail = "") {
    std::printf("%s  criterion %d: %s%s%s\n", pass ? "PASS" : "FAIL", number, name.c_str(),
                detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

double elapsed_s(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

barcode distilled_degree1(const distance_matrix& d, const build_options& opts = {}) {
    const distilled_complex complex = build_dvr(d, 1, opts);
    const filtration filt = filtration::build(complex.all_simplices());
    return extract_barcode(reduce(filt), 1);
}

std::vector<distance_matrix> validation_instances(int count, int max_n) {
    std::vector<distance_matrix> out;
    out.reserve(static_cast<std::size_t>(count));
    for (std::uint64_t rep = 0; rep < static_cast<std::uint64_t>(count); ++rep) {
        rng64 rng(rep * 7919 + 13);
        const int n = 4 + static_cast<int>(rng.uniform() * (max_n - 3));
        const int dim = 2 + static_cast<int>(rep % 3);
        const point_cloud pts = (rep % 2 == 0) ? uniform_cloud(n, dim, 1000 + rep)
                                               : gaussian_cloud(n, dim, 2000 + rep);
        out.push_back(distance_matrix::from_points(pts));
    }
    return out;
}

distance_matrix unit_square() {
    return distance_matrix::from_points(
        point_cloud(std::vector<std::vector<double>>{{0, 0}, {1, 0}, {0, 1}, {1, 1}}));
}

distance_matrix equilateral_triangle() {
    distance_matrix d(3);
    d.set(0, 1, 1.0);
    d.set(0, 2, 1.0);
    d.set(1, 2, 1.0);
    return d;
}

std::vector<simplex> lex_sorted_tops(const std::vector<weighted_simplex>& ws) {
    std::vector<simplex> out;
    for (const auto& w : ws) out.push_back(w.s);
    std::sort(out.begin(), out.end(), vertex_lex_less);
    return out;
}

// criterion 5 reference: enumerate the reduced complex's top simplices, keep
// the ones with no downward partner, close under reach.
std::vector<simplex> definitional_dvr_tops(const distance_matrix& d, int q) {
    matcher m(d, q, cache_policy::hashed);
    binomial_table choose(d.size(), q + 1);
    const index_t total = choose(d.size(), q + 1);
    vertex_t buf[simplex::max_vertices];

    std::set<std::vector<vertex_t>> tops;
    std::vector<simplex> reduced;
    for (index_t r = 0; r < total; ++r) {
        unrank_combination(r, d.size(), q + 1, choose, buf);
        const simplex e = simplex::of_sorted(buf, q + 1);
        for (vertex_t rep : lune_representatives(e, d).representatives)
            reduced.push_back(e.with_vertex(rep));
    }
    for (const simplex& t : reduced)
        if (!m.partner_down(t))
            for (const simplex& r : m.reach_set(t))
                tops.insert(std::vector<vertex_t>(r.begin(), r.end()));

    std::vector<simplex> out;
    for (const auto& v : tops) out.push_back(simplex::of_sorted(v.data(), static_cast<int>(v.size())));
    return out;
}

std::string barcode_csv_string(const barcode& bars) {
    std::ostringstream os;
    write_barcode_csv(bars, os);
    return os.str();
}

std::string run_cli_capture(const std::string& cli, const std::string& args,
                            const std::filesystem::path& out, int* exit_code = nullptr) {
    const std::string cmd = cli + " " + args + " > " + out.string() + " 2>/dev/null";
    const int rc = std::system(cmd.c_str());
    if (exit_code) *exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    std::ifstream in(out);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace

int main(int argc, char** argv) {
    const std::string cli = argc > 1 ? argv[1] : "";
    const auto suite_t0 = std::chrono::steady_clock::now();

    // 1. distilled degree-1 barcodes equal the full-complex reference
    {
        const auto t0 = std::chrono::steady_clock::now();
        const auto instances = validation_instances(108, 25);
        int mismatches = 0;
        for (const auto& d : instances)
            if (!(distilled_degree1(d) == full_vr_barcode(d))) ++mismatches;
        const double secs = elapsed_s(t0);
        std::ostringstream detail;
        detail << instances.size() << " instances, " << mismatches << " mismatches, "
               << format_double(secs) << " s";
        report(1, "exact barcode agreement with the full-complex reference",
               mismatches == 0 && secs < 60.0, detail.str());
    }

    // 2. unit-square fixture
    {
        const barcode bars = distilled_degree1(unit_square());
        const bool pass = bars.size() == 1 && bars[0].degree == 1 && bars[0].birth == 1.0 &&
                          bars[0].death == 1.4142135623730951;
        std::ostringstream detail;
        detail << bars.size() << " interval(s)";
        for (const bar& b : bars)
            detail << "; [" << format_double(b.birth) << ", " << format_double(b.death) << ")";
        report(2, "unit-square barcode is exactly { [1, sqrt 2) }", pass, detail.str());
    }

    // 3. circle-of-circles: 12 short intervals and one long one
    {
        const point_cloud pts = circle_of_circles(12, 15, 0.4, 4.5, 7);
        const auto d = distance_matrix::from_points(pts);
        const barcode bars = distilled_degree1(d);
        std::vector<double> pers;
        for (const bar& b : bars)
            if (b.death - b.birth > 0.1) pers.push_back(b.death - b.birth);
        std::sort(pers.rbegin(), pers.rend());
        bool pass = pers.size() == 13;
        std::ostringstream detail;
        detail << pers.size() << " intervals above 0.1";
        if (pass) {
            std::vector<double> others(pers.begin() + 1, pers.end());
            const double median =
                (others[others.size() / 2 - 1] + others[others.size() / 2]) / 2.0;
            int dominant = 0;
            for (double p : pers)
                if (p > 5.0 * median) ++dominant;
            pass = dominant == 1;
            detail << ", " << dominant << " interval(s) above 5x median " << format_double(median);
        }
        report(3, "circle-of-circles reproduces 12 small classes plus one dominant class", pass,
               detail.str());
    }

    // 4. matching validity on the validation instances
    {
        const auto instances = validation_instances(108, 25);
        int bad = 0;
        for (const auto& d : instances) {
            matcher m(d, 1);
            bool ok = verify_acyclic(m);

            std::set<std::pair<std::vector<vertex_t>, std::vector<vertex_t>>> apparent;
            for (const auto& [tau, sigma] : brute_apparent_pairs(d))
                apparent.insert({std::vector<vertex_t>(tau.begin(), tau.end()),
                                 std::vector<vertex_t>(sigma.begin(), sigma.end())});

            binomial_table choose(d.size(), 2);
            const index_t total = choose(d.size(), 2);
            vertex_t buf[simplex::max_vertices];
            for (index_t r = 0; r < total && ok; ++r) {
                unrank_combination(r, d.size(), 2, choose, buf);
                const simplex e = simplex::of_sorted(buf, 2);
                const auto up = m.partner_up(e);
                if (!up) continue;
                ok = ok && diameter(*up, d) == diameter(e, d);
                ok = ok && m.partner_down(*up) == e;
                ok = ok && apparent.count({std::vector<vertex_t>(e.begin(), e.end()),
                                           std::vector<vertex_t>(up->begin(), up->end())}) == 1;
            }
            if (!ok) ++bad;
        }
        report(4, "matching is an involution, diameter-preserving, acyclic and apparent",
               bad == 0, std::to_string(bad) + " failing instances");
    }

    // 5. algorithmic seeding equals the definitional reach union
    {
        const auto instances = validation_instances(40, 12);
        int bad = 0;
        for (const auto& d : instances)
            if (lex_sorted_tops(build_dvr(d, 1).tops) != definitional_dvr_tops(d, 1)) ++bad;
        report(5, "seeded construction equals the definitional critical reach union", bad == 0,
               std::to_string(bad) + " failing instances");
    }

    // 6. top-simplex counts grow linearly on cube samples
    {
        const std::vector<int> sizes{50, 100, 200, 300, 400, 500, 600, 700};
        std::vector<double> xs, ys;
        index_t top100 = 0, top700 = 0;
        for (int n : sizes) {
            const auto d =
                distance_matrix::from_points(sample_cloud(sample_shape::cube, n, 42));
            const auto complex = build_dvr(d, 1);
            xs.push_back(n);
            ys.push_back(static_cast<double>(complex.tops.size()));
            if (n == 100) top100 = static_cast<index_t>(complex.tops.size());
            if (n == 700) top700 = static_cast<index_t>(complex.tops.size());
        }
        double mx = 0, my = 0;
        for (std::size_t i = 0; i < xs.size(); ++i) mx += xs[i], my += ys[i];
        mx /= static_cast<double>(xs.size());
        my /= static_cast<double>(ys.size());
        double sxy = 0, sxx = 0, syy = 0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            sxy += (xs[i] - mx) * (ys[i] - my);
            sxx += (xs[i] - mx) * (xs[i] - mx);
            syy += (ys[i] - my) * (ys[i] - my);
        }
        const double r2 = (sxy * sxy) / (sxx * syy);
        const double ratio = static_cast<double>(top700) / static_cast<double>(top100);
        std::ostringstream detail;
        detail << "R^2 = " << format_double(r2) << ", n_top(700)/n_top(100) = "
               << format_double(ratio);
        report(6, "cube-sample top-simplex counts fit a line and stay subquadratic",
               r2 >= 0.9 && ratio <= 10.0, detail.str());
    }

    // 7. byte-identical outputs across worker counts and repeated runs
    {
        bool pass = true;
        std::string why;

        const auto check_fixture = [&](const distance_matrix& d, const std::string& label) {
            const auto base_complex = build_dvr(d, 1, {1, false});
            const std::string base_csv = barcode_csv_string(distilled_degree1(d, {1, false}));
            const std::string base_stats =
                stats_to_json(dvr_stats(base_complex), false).dump();
            for (unsigned workers : {2u, 8u}) {
                const auto complex = build_dvr(d, 1, {workers, false});
                if (barcode_csv_string(distilled_degree1(d, {workers, false})) != base_csv ||
                    stats_to_json(dvr_stats(complex), false).dump() != base_stats) {
                    pass = false;
                    why = label + " differs at " + std::to_string(workers) + " workers";
                }
            }
        };
        check_fixture(unit_square(), "unit square");
        check_fixture(equilateral_triangle(), "triangle");
        check_fixture(distance_matrix::from_points(uniform_cloud(30, 3, 77, 10.0)), "cube-30");

        // same seed, fresh run
        const auto cloud_a = sample_cloud(sample_shape::cube, 60, 5);
        const auto cloud_b = sample_cloud(sample_shape::cube, 60, 5);
        const auto bars_a = distilled_degree1(distance_matrix::from_points(cloud_a));
        const auto bars_b = distilled_degree1(distance_matrix::from_points(cloud_b));
        if (barcode_csv_string(bars_a) != barcode_csv_string(bars_b)) {
            pass = false;
            why = "repeated seeded runs differ";
        }

        if (!cli.empty()) {
            const auto dir = std::filesystem::temp_directory_path() / "dvr_acceptance";
            std::filesystem::create_directories(dir);
            {
                std::ofstream f(dir / "sq4.csv");
                f << "0,0\n1,0\n0,1\n1,1\n";
            }
            const std::string in = (dir / "sq4.csv").string();
            std::string first;
            for (unsigned workers : {1u, 2u, 8u}) {
                const std::string text = run_cli_capture(
                    cli, "compute --workers " + std::to_string(workers) + " --input " + in,
                    dir / "out.csv");
                if (first.empty())
                    first = text;
                else if (text != first) {
                    pass = false;
                    why = "CLI output differs across worker counts";
                }
            }
            const std::string s1 =
                run_cli_capture(cli, "stats --no-timings --input " + in, dir / "s1.json");
            const std::string s2 = run_cli_capture(
                cli, "stats --no-timings --workers 8 --input " + in, dir / "s2.json");
            const std::string b1 = run_cli_capture(
                cli, "bench --sizes 24,36 --seed 3 --no-timings", dir / "b1.csv");
            const std::string b2 = run_cli_capture(
                cli, "bench --sizes 24,36 --seed 3 --no-timings", dir / "b2.csv");
            if (s1 != s2 || s1.empty()) {
                pass = false;
                why = "CLI stats differ across worker counts";
            }
            if (b1 != b2 || b1.empty()) {
                pass = false;
                why = "CLI bench output not reproducible";
            }
        }
        report(7, "barcodes and stats are byte-identical across workers and reruns", pass, why);
    }

    // 8. relabeling invariance
    {
        const auto d = distance_matrix::from_points(uniform_cloud(20, 3, 11));
        const barcode base = distilled_degree1(d);
        int bad = 0;
        rng64 rng(1234);
        for (int rep = 0; rep < 20; ++rep) {
            std::vector<vertex_t> perm(20);
            for (vertex_t i = 0; i < 20; ++i) perm[static_cast<std::size_t>(i)] = i;
            for (vertex_t i = 19; i > 0; --i) {
                const auto j = static_cast<vertex_t>(rng.uniform() * (i + 1));
                std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
            }
            if (!(distilled_degree1(d.permuted(perm)) == base)) ++bad;
        }
        report(8, "degree-1 barcode is invariant under point relabeling", bad == 0,
               std::to_string(bad) + " of 20 permutations differ");
    }

    // 9. clipped complexes are contained in the unclipped ones; spanning-tree
    //    edges always survive
    {
        bool pass = true;
        std::string why;
        const auto check = [&](const distance_matrix& d, int q, const std::string& label) {
            std::set<std::vector<vertex_t>> unclipped;
            for (const auto& e : rnc(d, q))
                unclipped.insert(std::vector<vertex_t>(e.s.begin(), e.s.end()));
            for (const auto& e : crnc(d, q))
                if (!unclipped.count(std::vector<vertex_t>(e.s.begin(), e.s.end()))) {
                    pass = false;
                    why = label + " clipped set escapes the unclipped one";
                }
        };
        check(equilateral_triangle(), 1, "triangle");
        check(unit_square(), 1, "square");
        const auto cube = distance_matrix::from_points(uniform_cloud(50, 3, 7, 10.0));
        check(cube, 1, "cube-50 q1");
        check(cube, 2, "cube-50 q2");
        for (std::uint64_t rep = 0; rep < 6; ++rep) {
            const auto d = distance_matrix::from_points(uniform_cloud(15, 3, 500 + rep));
            check(d, 1, "random q1");
            check(d, 2, "random q2");

            std::set<std::vector<vertex_t>> edges;
            for (const auto& e : rnc(d, 1))
                edges.insert(std::vector<vertex_t>(e.s.begin(), e.s.end()));
            for (const auto& e : mst_edges(d))
                if (!edges.count(std::vector<vertex_t>(e.s.begin(), e.s.end()))) {
                    pass = false;
                    why = "spanning-tree edge missing from the degree-1 complex";
                }
        }
        report(9, "clipped complexes nest in unclipped ones and keep spanning trees", pass, why);
    }

    std::printf("%s: %d criterion(s) failed, %.1f s total\n", failures == 0 ? "OK" : "FAILED",
                failures, elapsed_s(suite_t0));
    return failures == 0 ? 0 : 1;
}
