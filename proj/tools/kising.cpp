// Command-line front end: parameter sweeps over the mean-field / exact
// engines, channel validation, CSV comparison and topology inspection.
//
// Exit codes: 0 success or comparison pass, 1 comparison/validation fail,
// 2 usage error, 3 resource error.

#include <cstdint>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "kising/kising.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_fail = 1;
constexpr int exit_usage = 2;
constexpr int exit_resource = 3;

/// Plain number or a simple fraction like 288/127.
double parse_ratio(const std::string& text) {
    const auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return std::stod(text);
        return std::stod(text.substr(0, slash)) / std::stod(text.substr(slash + 1));
    } catch (const std::exception&) {
        throw kising::validation_error("cannot parse number '" + text + "'");
    }
}

struct SweepCliOptions {
    std::string mode = "mf-dissipative";
    std::string theta_h = "0:pi/2:97";
    std::string theta_j = "pi/2";
    int steps = 5;
    std::string topology = "heavyhex";
    std::string observable = "mean-z";
    std::uint64_t seed = 1;
    std::uint64_t samples = 10000;
    int workers = 1;
    int qubit_cap = kising::StateVector::default_qubit_cap;
    std::string out;
    std::string plot;
};

int run_sweep_command(const SweepCliOptions& opt) {
    kising::SweepSpec spec;
    spec.mode = kising::sweep_mode_from_string(opt.mode);
    spec.theta_h_grid = kising::parse_angle_grid(opt.theta_h);
    spec.theta_j = kising::parse_angle(opt.theta_j);
    spec.steps = opt.steps;
    spec.topology = opt.topology;
    spec.observable = kising::parse_observable(opt.observable);
    spec.seed = opt.seed;
    spec.samples = opt.samples;
    spec.workers = opt.workers;
    spec.qubit_cap = opt.qubit_cap;

    const kising::SweepResult result = kising::run_sweep(spec);
    if (opt.out.empty()) {
        kising::emit_csv(result, std::cout);
    } else {
        kising::emit_csv(result, opt.out);
        std::cerr << "wrote " << result.rows.size() << " rows to " << opt.out << "\n";
    }
    if (!opt.plot.empty()) {
        kising::emit_plot(result, opt.plot);
        std::cerr << "wrote plot to " << opt.plot << "\n";
    }
    return exit_ok;
}

struct ValidateCliOptions {
    std::string theta_j = "pi/2";
    std::vector<std::string> variances = {"0.5", "1.0", "288/127", "4.0"};
    std::uint64_t samples = 1000000;
    std::uint64_t seed = 1;
    std::string out;
};

int run_validate_command(const ValidateCliOptions& opt) {
    const double J = kising::parse_angle(opt.theta_j) / 2.0;
    bool all_pass = true;
    kising::SweepResult csv_rows;

    std::printf("channel validation: J = %.6f, %llu samples, seed %llu\n", J,
                static_cast<unsigned long long>(opt.samples),
                static_cast<unsigned long long>(opt.seed));
    std::printf("%12s %14s %14s %10s %10s %12s %s\n", "variance", "shrink(MC)", "exp(-2J^2v)",
                "|diff|", "3/sqrt(n)", "sin-moment", "status");
    for (const auto& vtext : opt.variances) {
        const double variance = parse_ratio(vtext);
        kising::SamplerConfig cfg{opt.samples, opt.seed, J, variance};
        const auto shrink = kising::empirical_shrink(cfg);
        const auto sin_moment = kising::empirical_sin_moment(cfg);
        const double closed = std::exp(-2.0 * J * J * variance);
        const double diff = std::abs(shrink.value - closed);
        const double tol = 3.0 / std::sqrt(static_cast<double>(opt.samples));
        const bool shrink_ok = diff <= tol;
        const bool sin_ok = std::abs(sin_moment.value) <= 3.0 * sin_moment.std_error ||
                            sin_moment.value == 0.0;
        const bool ok = shrink_ok && sin_ok;
        all_pass = all_pass && ok;
        std::printf("%12.6f %14.9f %14.9f %10.2e %10.2e %12.2e %s\n", variance, shrink.value,
                    closed, diff, tol, sin_moment.value, ok ? "pass" : "FAIL");

        csv_rows.rows.push_back({"validate-channel", variance, 0, "shrink", shrink.value,
                                 shrink.std_error});
        csv_rows.rows.push_back({"validate-channel", variance, 0, "shrink-closed-form", closed,
                                 std::nullopt});
        csv_rows.rows.push_back({"validate-channel", variance, 0, "sin-moment", sin_moment.value,
                                 sin_moment.std_error});
    }
    if (!opt.out.empty()) {
        // For these rows the second CSV column holds the channel variance,
        // not an angle.
        kising::emit_csv(csv_rows, opt.out);
        std::cerr << "wrote " << csv_rows.rows.size() << " rows to " << opt.out << "\n";
    }
    return all_pass ? exit_ok : exit_fail;
}

struct CompareCliOptions {
    std::string file_a;
    std::string file_b;
    double tolerance = 0.0;
};

int run_compare_command(const CompareCliOptions& opt) {
    const auto report = kising::compare_csv_files(opt.file_a, opt.file_b, opt.tolerance);
    std::printf("compared %zu keys: max |diff| = %.6e at (%s), tolerance %.6e -> %s\n",
                report.n_keys, report.max_abs_diff, report.worst_key.c_str(), report.tolerance,
                report.pass ? "PASS" : "FAIL");
    return report.pass ? exit_ok : exit_fail;
}

struct TopologyCliOptions {
    std::string topology = "heavyhex";
    std::string out;
};

int run_topology_command(const TopologyCliOptions& opt) {
    const kising::ConnectivityGraph g = kising::make_topology(opt.topology);
    std::printf("topology %s\n", opt.topology.c_str());
    std::printf("  qubits      L  = %d\n", g.n_qubits());
    std::printf("  couplings   M  = %d\n", g.n_edges());
    std::printf("  mean degree xi = %.12g\n", g.mean_degree());
    std::printf("  max degree     = %d\n", g.max_degree());
    std::printf("  connected      = %s\n", g.is_connected() ? "yes" : "no");
    if (!opt.out.empty()) {
        std::ofstream out(opt.out);
        if (!out) {
            throw std::runtime_error("cannot open '" + opt.out + "' for writing");
        }
        g.to_edge_list(out);
        std::cerr << "wrote edge list to " << opt.out << "\n";
    }
    return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"kicked-Ising mean-field simulation toolkit"};
    app.require_subcommand(1);

    SweepCliOptions sweep_opt;
    auto* sweep = app.add_subcommand("sweep", "run a theta_h sweep with one engine");
    sweep->add_option("--mode", sweep_opt.mode,
                      "mf-unitary | mf-dissipative | mf-lattice | exact | stabilizer | "
                      "validate-channel")
        ->capture_default_str();
    sweep->add_option("--theta-h", sweep_opt.theta_h, "angle or start:stop:count (pi literals ok)")
        ->capture_default_str();
    sweep->add_option("--theta-j", sweep_opt.theta_j, "full ZZ angle (J = theta_j/2)")
        ->capture_default_str();
    sweep->add_option("--steps", sweep_opt.steps, "Trotter steps")->capture_default_str();
    sweep->add_option("--topology", sweep_opt.topology,
                      "heavyhex[:RxC] | ring:N | chain:N | complete:N | edge-list file")
        ->capture_default_str();
    sweep->add_option("--observable", sweep_opt.observable, "mean-z | site-z:<j> | coherence")
        ->capture_default_str();
    sweep->add_option("--seed", sweep_opt.seed, "RNG seed (validate-channel mode)")
        ->capture_default_str();
    sweep->add_option("--samples", sweep_opt.samples, "trajectories (validate-channel mode)")
        ->capture_default_str();
    sweep->add_option("--workers", sweep_opt.workers, "worker threads; 0 = hardware")
        ->capture_default_str();
    sweep->add_option("--qubit-cap", sweep_opt.qubit_cap, "statevector size guard")
        ->capture_default_str();
    sweep->add_option("--out", sweep_opt.out, "CSV output path (default stdout)");
    sweep->add_option("--plot", sweep_opt.plot, "also write an SVG plot");

    ValidateCliOptions validate_opt;
    auto* validate = app.add_subcommand(
        "validate-channel", "check the sampled dephasing channel against its closed form");
    validate->add_option("--theta-j", validate_opt.theta_j, "full ZZ angle (J = theta_j/2)")
        ->capture_default_str();
    validate->add_option("--variance", validate_opt.variances,
                         "variance values (numbers or fractions like 288/127)")
        ->capture_default_str();
    validate->add_option("--samples", validate_opt.samples, "Monte Carlo samples")
        ->capture_default_str();
    validate->add_option("--seed", validate_opt.seed, "RNG seed")->capture_default_str();
    validate->add_option("--out", validate_opt.out, "optional CSV output path");

    CompareCliOptions compare_opt;
    auto* compare = app.add_subcommand("compare", "compare two sweep CSVs key by key");
    compare->add_option("file_a", compare_opt.file_a, "first CSV")->required();
    compare->add_option("file_b", compare_opt.file_b, "second CSV")->required();
    compare->add_option("--tolerance", compare_opt.tolerance, "max allowed |difference|")
        ->required();

    TopologyCliOptions topo_opt;
    auto* topo = app.add_subcommand("topology", "inspect or export a connectivity graph");
    topo->add_option("--topology", topo_opt.topology,
                     "heavyhex[:RxC] | ring:N | chain:N | complete:N | edge-list file")
        ->capture_default_str();
    topo->add_option("--out", topo_opt.out, "write edge-list file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        if (sweep->parsed()) return run_sweep_command(sweep_opt);
        if (validate->parsed()) return run_validate_command(validate_opt);
        if (compare->parsed()) return run_compare_command(compare_opt);
        if (topo->parsed()) return run_topology_command(topo_opt);
    } catch (const kising::resource_error& e) {
        std::cerr << "resource error: " << e.what() << "\n";
        return exit_resource;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    }
    return exit_usage;
}
