// Acceptance suite: one line per criterion, exit code = number of failures.
// The CLI binary path is expected as argv[1] (used by the determinism
// criterion).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "kising/kising.hpp"
#include "oracle_helpers.hpp"

using kising::pi;

namespace {

int failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
    std::printf("[%s] criterion %d: %s\n", pass ? "PASS" : "FAIL", criterion, detail.c_str());
    if (!pass) ++failures;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// --- criterion 1: Monte Carlo channel closure ------------------------------
void criterion_1() {
    const double J = pi / 4;
    const double variances[] = {0.5, 1.0, 288.0 / 127.0, 4.0};
    bool pass = true;
    double worst_diff = 0.0, worst_time = 0.0, worst_sin_ratio = 0.0;
    for (double var : variances) {
        const auto start = std::chrono::steady_clock::now();
        const kising::SamplerConfig cfg{1000000, 2024, J, var};
        const auto shrink = kising::empirical_shrink(cfg);
        const auto sin_moment = kising::empirical_sin_moment(cfg);
        const double elapsed = seconds_since(start);
        const double diff = std::abs(shrink.value - std::exp(-2.0 * J * J * var));
        const double sin_ratio =
            sin_moment.std_error > 0 ? std::abs(sin_moment.value) / sin_moment.std_error : 0.0;
        worst_diff = std::max(worst_diff, diff);
        worst_time = std::max(worst_time, elapsed);
        worst_sin_ratio = std::max(worst_sin_ratio, sin_ratio);
        pass = pass && diff <= 3e-3 && sin_ratio <= 3.0 && elapsed < 5.0;
    }
    report(1, pass,
           "channel closure at 10^6 samples: max |shrink - closed form| = " + fmt(worst_diff) +
               " (tol 3e-3), max |sin|/stderr = " + fmt(worst_sin_ratio) +
               " (tol 3), max time/point = " + fmt(worst_time) + " s (cap 5 s)");
}

// --- criterion 2: trivial limits --------------------------------------------
void criterion_2() {
    constexpr double tol = 1e-12;
    double worst_theta0 = 0.0;

    {  // theta_h = 0 in the five dynamical modes, t <= 20
        const kising::DriveParams p{pi / 4, 0.0, 20};
        const double xi = 288.0 / 127.0;
        for (auto mode : {kising::MeanFieldMode::unitary, kising::MeanFieldMode::dissipative}) {
            for (const auto& s : kising::run_meanfield(p, xi, mode).states) {
                worst_theta0 = std::max(worst_theta0, std::abs(s.z - 1.0));
            }
        }
        for (const auto& state : kising::run_lattice(kising::heavy_hex_canonical(), p).states) {
            worst_theta0 = std::max(worst_theta0, std::abs(kising::mean_magnetization(state) - 1.0));
        }
        for (const auto& s : kising::run_trajectories(p, xi, 20000, 7).mean_states) {
            worst_theta0 = std::max(worst_theta0, std::abs(s.z - 1.0));
        }
        for (const auto& rec : kising::evolve(kising::ring(10), p)) {
            worst_theta0 = std::max(worst_theta0, std::abs(rec.mean_z - 1.0));
        }
    }
    const bool pass_theta0 = worst_theta0 <= tol;

    double worst_half_pi = 0.0;
    std::string worst_mode = "-";
    {  // theta_h = pi/2: mean-field <Z>(t >= 1) = 0
        const kising::DriveParams p{pi / 4, pi / 4, 20};
        const double xi = 288.0 / 127.0;
        auto track = [&](double z, const char* mode) {
            if (std::abs(z) > worst_half_pi) {
                worst_half_pi = std::abs(z);
                worst_mode = mode;
            }
        };
        for (auto mode : {kising::MeanFieldMode::unitary, kising::MeanFieldMode::dissipative}) {
            const auto trace = kising::run_meanfield(p, xi, mode);
            for (int t = 1; t <= 20; ++t) {
                track(trace.states[t].z,
                      mode == kising::MeanFieldMode::unitary ? "mf-unitary" : "mf-dissipative");
            }
        }
        const auto lattice = kising::run_lattice(kising::heavy_hex_canonical(), p);
        for (int t = 1; t <= 20; ++t) {
            track(kising::mean_magnetization(lattice.states[t]), "mf-lattice");
        }
        const auto mc = kising::run_trajectories(p, xi, 20000, 7);
        for (int t = 1; t <= 20; ++t) track(mc.mean_states[t].z, "validate-channel");
    }
    const bool pass_half_pi = worst_half_pi <= tol;

    bool stab_exact = true;
    for (int t = 0; t <= 20; ++t) {
        stab_exact = stab_exact && kising::stabilizer_expectation({pi / 2, t}) == 1.0;
    }

    report(2, pass_theta0 && pass_half_pi && stab_exact,
           "trivial limits: theta_h=0 max |z-1| = " + fmt(worst_theta0) +
               " over five modes (tol 1e-12); theta_h=pi/2 max |z(t>=1)| = " +
               fmt(worst_half_pi) + " in " + worst_mode +
               " (tol 1e-12; even steps re-inject the coherence that survives "
               "the dephasing channel, so the engines cannot satisfy this clause); "
               "stabilizer == 1 exactly: " + (stab_exact ? "yes" : "no"));
}

// --- criterion 3: oracle cross-validation -----------------------------------
void criterion_3() {
    double worst = 0.0;
    const auto g = kising::ring(6);
    const double thetas[] = {0.0, pi / 8, pi / 4, 3 * pi / 8, pi / 2};
    const int steps[] = {1, 2, 3, 5, 8};
    for (double theta_h : thetas) {
        for (int t : steps) {
            const kising::DriveParams p{pi / 4, theta_h / 2, t};
            const auto fast = kising::evolve(g, p);
            const auto dense = oracle::dense_evolve_mean_z(g, p.J, p.h, t);
            for (int s = 0; s <= t; ++s) {
                worst = std::max(worst, std::abs(fast[s].mean_z - dense[s]));
            }
        }
    }
    double worst_free = 0.0;
    for (double theta_h : {0.3, 0.9, 1.5}) {
        const auto recs = kising::evolve(kising::ConnectivityGraph(3),
                                         {pi / 4, theta_h / 2, 20});
        for (int t = 0; t <= 20; ++t) {
            worst_free = std::max(worst_free, std::abs(recs[t].mean_z - std::cos(theta_h * t)));
        }
    }
    report(3, worst <= 1e-10 && worst_free <= 1e-10,
           "oracle cross-validation: gate vs dense (n=6, 5x5 grid) max diff = " + fmt(worst) +
               ", edgeless vs cos(theta t) max diff = " + fmt(worst_free) + " (tol 1e-10)");
}

// --- criterion 4: mean-field accuracy window --------------------------------
void criterion_4() {
    const auto start = std::chrono::steady_clock::now();
    const double thetas[] = {0.0, pi / 32, pi / 16, 3 * pi / 32, pi / 8};
    const auto g = kising::ring(12);
    double worst = 0.0;
    for (double theta_h : thetas) {
        const kising::DriveParams p{pi / 4, theta_h / 2, 5};
        const double mf =
            kising::run_meanfield(p, 2.0, kising::MeanFieldMode::dissipative).states.back().z;
        const double exact = kising::evolve(g, p).back().mean_z;
        worst = std::max(worst, std::abs(mf - exact));
    }
    const double elapsed = seconds_since(start);
    report(4, worst <= 0.05 && elapsed < 10.0,
           "mean-field vs exact on ring(12), t=5, theta_h <= pi/8: max |diff| = " + fmt(worst) +
               " (tol 0.05), time = " + fmt(elapsed) + " s (cap 10 s)");
}

// --- criterion 5: revival artifact -------------------------------------------
void criterion_5() {
    const double xi = 288.0 / 127.0;
    const auto grid = kising::parse_angle_grid("0:pi/2:97");
    std::vector<double> homog;
    for (double theta_h : grid) {
        homog.push_back(kising::run_meanfield({pi / 4, theta_h / 2, 5}, xi,
                                              kising::MeanFieldMode::dissipative)
                            .states.back()
                            .z);
    }
    bool found_local_max = false;
    double peak_theta = 0.0;
    for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
        if (grid[i] > pi / 8 && grid[i] < pi / 4 && homog[i] > homog[i - 1] &&
            homog[i] > homog[i + 1]) {
            found_local_max = true;
            peak_theta = grid[i];
        }
    }

    const auto hh = kising::heavy_hex_canonical();
    double homog_window_max = -2.0, lattice_window_max = -2.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (grid[i] > pi / 8 && grid[i] < pi / 4) {
            homog_window_max = std::max(homog_window_max, homog[i]);
            const auto trace = kising::run_lattice(hh, {pi / 4, grid[i] / 2, 5});
            lattice_window_max =
                std::max(lattice_window_max, kising::mean_magnetization(trace.states.back()));
        }
    }
    const bool suppressed = lattice_window_max <= homog_window_max + 1e-12;

    report(5, found_local_max && suppressed,
           std::string("revival: local max of z(theta_h) inside (pi/8, pi/4) ") +
               (found_local_max ? "found at theta_h = " + fmt(peak_theta)
                                : "NOT found (z decreases monotonically; no faithful reading "
                                  "of the channel equations produces one)") +
               "; lattice window max " + fmt(lattice_window_max) + " <= homogeneous " +
               fmt(homog_window_max) + ": " + (suppressed ? "yes" : "no"));
}

// --- criterion 6: regular-graph collapse -------------------------------------
void criterion_6() {
    double worst = 0.0;
    struct Case {
        kising::ConnectivityGraph g;
        double xi;
    };
    const Case cases[] = {{kising::ring(12), 2.0}, {kising::complete(5), 4.0}};
    for (const auto& c : cases) {
        for (double theta_h : {0.25, 0.7, 1.2}) {
            const kising::DriveParams p{pi / 4, theta_h / 2, 20};
            const auto homog = kising::run_meanfield(p, c.xi, kising::MeanFieldMode::dissipative);
            const auto lattice = kising::run_lattice(c.g, p);
            for (int t = 0; t <= 20; ++t) {
                for (const auto& s : lattice.states[t].sites) {
                    worst = std::max({worst, std::abs(s.x - homog.states[t].x),
                                      std::abs(s.y - homog.states[t].y),
                                      std::abs(s.z - homog.states[t].z)});
                }
            }
        }
    }
    report(6, worst <= 1e-10,
           "regular-graph collapse: ring(12) vs xi=2 and complete(5) vs xi=4, every site and "
           "step <= 20, max diff = " + fmt(worst) + " (tol 1e-10)");
}

// --- criterion 7: stabilizer law ----------------------------------------------
void criterion_7() {
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
        const double theta_h = pi / 2 * i / 49.0;
        const double lin = 1.0 - 2.0 * theta_h / pi;
        for (int t = 0; t <= 20; ++t) {
            const double closed = std::exp(-t * (pi * pi / 2.0) * lin * lin);
            worst = std::max(worst,
                             std::abs(kising::stabilizer_expectation({theta_h, t}) - closed));
        }
    }
    const double mc1 = kising::flip_process_simulate({pi / 4, 5}, 1000000, 99);
    const double diff1 = std::abs(mc1 - kising::stabilizer_expectation({pi / 4, 5}));
    const double mc2 = kising::flip_process_simulate({3 * pi / 8, 6}, 1000000, 99);
    const double diff2 = std::abs(mc2 - kising::stabilizer_expectation({3 * pi / 8, 6}));
    report(7, worst <= 1e-12 && diff1 <= 3e-3 && diff2 <= 3e-3,
           "stabilizer law: |(1-2p0)^t - exp form| max = " + fmt(worst) +
               " on the 50x21 grid (tol 1e-12); flip-chain MC diffs " + fmt(diff1) + ", " +
               fmt(diff2) + " (tol 3e-3)");
}

// --- criterion 8: topology statistics ----------------------------------------
void criterion_8() {
    const auto g = kising::heavy_hex_canonical();
    const bool pass = g.n_qubits() == 127 && g.n_edges() == 144 &&
                      std::abs(g.mean_degree() - 2.26772) <= 1e-5 && g.max_degree() == 3 &&
                      g.is_connected();
    std::ostringstream detail;
    detail << "heavy-hex canonical: L = " << g.n_qubits() << ", M = " << g.n_edges()
           << ", xi = " << kising::format_g12(g.mean_degree())
           << ", max degree = " << g.max_degree()
           << ", connected = " << (g.is_connected() ? "yes" : "no");
    report(8, pass, detail.str());
}

// --- criterion 9: byte-identical seeded CLI output ----------------------------
void criterion_9(const char* cli_path) {
    if (cli_path == nullptr) {
        report(9, false, "determinism: CLI path not supplied to the acceptance binary");
        return;
    }
    char tmpl[] = "/tmp/kising_accept_XXXXXX";
    const char* dir = mkdtemp(tmpl);
    if (dir == nullptr) {
        report(9, false, "determinism: cannot create temp dir");
        return;
    }
    auto slurp = [](const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    auto run = [&](const std::string& args, const std::string& out) {
        const std::string cmd = std::string("\"") + cli_path + "\" " + args + " --out " + out +
                                " 2>/dev/null";
        return std::system(cmd.c_str()) == 0;
    };
    const std::string base =
        "sweep --mode validate-channel --theta-h 0:pi/2:7 --steps 3 --samples 20000 --seed 7";
    const std::string d(dir);
    bool ok = run(base + " --workers 1", d + "/a.csv") && run(base + " --workers 1", d + "/b.csv") &&
              run(base + " --workers 3", d + "/c.csv");
    const std::string exact_base = "sweep --mode exact --topology ring:10 --theta-h 1.0 --steps 12";
    ok = ok && run(exact_base + " --workers 1", d + "/e1.csv") &&
         run(exact_base + " --workers 4", d + "/e2.csv");
    bool identical = false;
    if (ok) {
        const auto a = slurp(d + "/a.csv");
        identical = !a.empty() && a == slurp(d + "/b.csv") && a == slurp(d + "/c.csv") &&
                    slurp(d + "/e1.csv") == slurp(d + "/e2.csv");
    }
    report(9, ok && identical,
           std::string("determinism: seeded CLI runs repeated and re-run with different "
                       "worker counts are byte-identical: ") +
               (ok ? (identical ? "yes" : "no") : "CLI invocation failed"));
}

}  // namespace

int main(int argc, char** argv) {
    std::printf("acceptance suite\n");
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9(argc > 1 ? argv[1] : nullptr);
    std::printf("%d of 9 criteria passed\n", 9 - failures);
    return failures;
}
