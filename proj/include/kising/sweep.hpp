#pragma once

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "kising/bloch.hpp"
#include "kising/errors.hpp"
#include "kising/lattice.hpp"
#include "kising/meanfield.hpp"
#include "kising/stabilizer.hpp"
#include "kising/statevector.hpp"
#include "kising/stochastic.hpp"
#include "kising/topology.hpp"

namespace kising {

enum class SweepMode { mf_unitary, mf_dissipative, mf_lattice, exact, stabilizer, validate_channel };

[[nodiscard]] inline std::string to_string(SweepMode mode) {
    switch (mode) {
        case SweepMode::mf_unitary: return "mf-unitary";
        case SweepMode::mf_dissipative: return "mf-dissipative";
        case SweepMode::mf_lattice: return "mf-lattice";
        case SweepMode::exact: return "exact";
        case SweepMode::stabilizer: return "stabilizer";
        case SweepMode::validate_channel: return "validate-channel";
    }
    return "?";
}

[[nodiscard]] inline SweepMode sweep_mode_from_string(const std::string& s) {
    if (s == "mf-unitary") return SweepMode::mf_unitary;
    if (s == "mf-dissipative") return SweepMode::mf_dissipative;
    if (s == "mf-lattice") return SweepMode::mf_lattice;
    if (s == "exact") return SweepMode::exact;
    if (s == "stabilizer") return SweepMode::stabilizer;
    if (s == "validate-channel") return SweepMode::validate_channel;
    throw validation_error("unknown mode '" + s + "'");
}

struct ObservableSpec {
    enum class Kind { mean_z, site_z, coherence } kind = Kind::mean_z;
    int site = 0;  // used by site_z

    [[nodiscard]] std::string name() const {
        switch (kind) {
            case Kind::mean_z: return "mean-z";
            case Kind::site_z: return "site-z:" + std::to_string(site);
            case Kind::coherence: return "coherence";
        }
        return "?";
    }
};

[[nodiscard]] inline ObservableSpec parse_observable(const std::string& s) {
    if (s == "mean-z") return {ObservableSpec::Kind::mean_z, 0};
    if (s == "coherence") return {ObservableSpec::Kind::coherence, 0};
    if (s.rfind("site-z:", 0) == 0) {
        try {
            return {ObservableSpec::Kind::site_z, std::stoi(s.substr(7))};
        } catch (const std::exception&) {
            throw validation_error("bad site index in observable '" + s + "'");
        }
    }
    throw validation_error("unknown observable '" + s + "' (mean-z, site-z:<j>, coherence)");
}

/// Build a graph from a descriptor: "heavyhex[:RxC]", "ring:N", "chain:N",
/// "complete:N", or a path to an edge-list file.
[[nodiscard]] inline ConnectivityGraph make_topology(const std::string& descriptor) {
    auto size_arg = [&](const std::string& prefix) -> std::optional<int> {
        if (descriptor.rfind(prefix + ":", 0) != 0) return std::nullopt;
        try {
            return std::stoi(descriptor.substr(prefix.size() + 1));
        } catch (const std::exception&) {
            throw validation_error("bad size in topology '" + descriptor + "'");
        }
    };
    if (descriptor == "heavyhex") return heavy_hex_canonical();
    if (descriptor.rfind("heavyhex:", 0) == 0) {
        const std::string dims = descriptor.substr(9);
        const auto x = dims.find('x');
        if (x == std::string::npos) {
            throw validation_error("heavyhex topology wants RxC dimensions, got '" + descriptor +
                                   "'");
        }
        try {
            return heavy_hex(std::stoi(dims.substr(0, x)), std::stoi(dims.substr(x + 1)));
        } catch (const validation_error&) {
            throw;
        } catch (const std::exception&) {
            throw validation_error("bad dimensions in topology '" + descriptor + "'");
        }
    }
    if (auto n = size_arg("ring")) return ring(*n);
    if (auto n = size_arg("chain")) return chain(*n);
    if (auto n = size_arg("complete")) return complete(*n);
    std::ifstream in(descriptor);
    if (!in) {
        throw validation_error("unknown topology '" + descriptor +
                               "' (not a builtin and not a readable file)");
    }
    return load_edge_list(in);
}

struct SweepSpec {
    SweepMode mode = SweepMode::mf_dissipative;
    std::vector<double> theta_h_grid = {0.0};
    double theta_j = pi / 2;
    int steps = 5;
    std::string topology = "heavyhex";
    ObservableSpec observable;
    std::uint64_t seed = 1;
    std::uint64_t samples = 10000;
    int workers = 1;  // 0 = hardware concurrency
    int qubit_cap = StateVector::default_qubit_cap;
};

struct SweepRow {
    std::string mode;
    double theta_h = 0.0;
    int step = 0;
    std::string observable;
    double value = 0.0;
    std::optional<double> std_error;
};

struct SweepResult {
    std::vector<SweepRow> rows;
};

namespace detail {

inline double lattice_observable(const LatticeState& state, const ObservableSpec& obs) {
    switch (obs.kind) {
        case ObservableSpec::Kind::mean_z: return mean_magnetization(state);
        case ObservableSpec::Kind::site_z: {
            if (obs.site < 0 || obs.site >= static_cast<int>(state.sites.size())) {
                throw validation_error("site " + std::to_string(obs.site) + " out of range");
            }
            return state.sites[static_cast<std::size_t>(obs.site)].z;
        }
        case ObservableSpec::Kind::coherence: {
            double sum = 0.0;
            for (const auto& s : state.sites) sum += coherence(s);
            return sum / static_cast<double>(state.sites.size());
        }
    }
    return 0.0;
}

inline double bloch_observable(const BlochState& s, const ObservableSpec& obs) {
    switch (obs.kind) {
        case ObservableSpec::Kind::mean_z: return s.z;
        case ObservableSpec::Kind::site_z: return s.z;  // homogeneous: every site identical
        case ObservableSpec::Kind::coherence: return coherence(s);
    }
    return 0.0;
}

inline double exact_observable(const StepObservables& rec, const ObservableSpec& obs) {
    switch (obs.kind) {
        case ObservableSpec::Kind::mean_z: return rec.mean_z;
        case ObservableSpec::Kind::site_z: {
            if (obs.site < 0 || obs.site >= static_cast<int>(rec.z.size())) {
                throw validation_error("site " + std::to_string(obs.site) + " out of range");
            }
            return rec.z[static_cast<std::size_t>(obs.site)];
        }
        case ObservableSpec::Kind::coherence: {
            double sum = 0.0;
            for (std::size_t q = 0; q < rec.z.size(); ++q) sum += std::hypot(rec.x[q], rec.y[q]);
            return sum / static_cast<double>(rec.z.size());
        }
    }
    return 0.0;
}

/// All rows for one grid point, steps 0..t.
inline std::vector<SweepRow> sweep_point(const SweepSpec& spec, const ConnectivityGraph& graph,
                                         double theta_h) {
    const DriveParams params = DriveParams::from_full_angles(spec.theta_j, theta_h, spec.steps);
    const std::string mode_name = to_string(spec.mode);
    const std::string obs_name = spec.observable.name();
    std::vector<SweepRow> rows;
    rows.reserve(static_cast<std::size_t>(spec.steps) + 1);
    auto push = [&](int step, double value, std::optional<double> err = std::nullopt) {
        rows.push_back({mode_name, theta_h, step, obs_name, value, err});
    };

    switch (spec.mode) {
        case SweepMode::mf_unitary:
        case SweepMode::mf_dissipative: {
            const auto mode = spec.mode == SweepMode::mf_unitary ? MeanFieldMode::unitary
                                                                 : MeanFieldMode::dissipative;
            if (spec.observable.kind == ObservableSpec::Kind::site_z &&
                (spec.observable.site < 0 || spec.observable.site >= graph.n_qubits())) {
                throw validation_error("site " + std::to_string(spec.observable.site) +
                                       " out of range for topology");
            }
            const auto trace = run_meanfield(params, graph.mean_degree(), mode);
            for (int t = 0; t <= spec.steps; ++t) {
                push(t, bloch_observable(trace.states[static_cast<std::size_t>(t)],
                                         spec.observable));
            }
            break;
        }
        case SweepMode::mf_lattice: {
            const auto trace = run_lattice(graph, params);
            for (int t = 0; t <= spec.steps; ++t) {
                push(t, lattice_observable(trace.states[static_cast<std::size_t>(t)],
                                           spec.observable));
            }
            break;
        }
        case SweepMode::exact: {
            const auto records = evolve(graph, params, spec.qubit_cap);
            for (int t = 0; t <= spec.steps; ++t) {
                push(t, exact_observable(records[static_cast<std::size_t>(t)], spec.observable));
            }
            break;
        }
        case SweepMode::stabilizer: {
            if (spec.observable.kind != ObservableSpec::Kind::mean_z) {
                throw validation_error("stabilizer mode reports mean-z only");
            }
            for (int t = 0; t <= spec.steps; ++t) {
                push(t, stabilizer_expectation({theta_h, t}));
            }
            break;
        }
        case SweepMode::validate_channel: {
            const auto trace = run_trajectories(params, graph.mean_degree(), spec.samples,
                                                spec.seed);
            for (int t = 0; t <= spec.steps; ++t) {
                const auto& mean = trace.mean_states[static_cast<std::size_t>(t)];
                const auto& err = trace.std_errors[static_cast<std::size_t>(t)];
                switch (spec.observable.kind) {
                    case ObservableSpec::Kind::mean_z:
                    case ObservableSpec::Kind::site_z:
                        push(t, mean.z, err.z);
                        break;
                    case ObservableSpec::Kind::coherence:
                        push(t, coherence(mean));
                        break;
                }
            }
            break;
        }
    }
    return rows;
}

}  // namespace detail

/// Run a sweep over the theta_h grid. Grid points are dispatched to a small
/// worker pool; assembly is in grid order, so the result is identical for
/// any worker count.
[[nodiscard]] inline SweepResult run_sweep(const SweepSpec& spec) {
    if (spec.theta_h_grid.empty()) {
        throw validation_error("theta_h grid is empty");
    }
    if (spec.steps < 0) {
        throw validation_error("steps must be >= 0");
    }
    const ConnectivityGraph graph = make_topology(spec.topology);

    std::vector<std::vector<SweepRow>> per_point(spec.theta_h_grid.size());
    int workers = spec.workers;
    if (workers <= 0) {
        workers = static_cast<int>(std::thread::hardware_concurrency());
        if (workers < 1) workers = 1;
    }
    workers = std::min<int>(workers, static_cast<int>(spec.theta_h_grid.size()));

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= spec.theta_h_grid.size()) return;
            try {
                per_point[i] = detail::sweep_point(spec, graph, spec.theta_h_grid[i]);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);

    SweepResult result;
    for (auto& rows : per_point) {
        result.rows.insert(result.rows.end(), rows.begin(), rows.end());
    }
    std::stable_sort(result.rows.begin(), result.rows.end(),
                     [](const SweepRow& a, const SweepRow& b) {
                         return std::tie(a.mode, a.theta_h, a.step, a.observable) <
                                std::tie(b.mode, b.theta_h, b.step, b.observable);
                     });
    return result;
}

// ---------------------------------------------------------------------------
// CSV emission and comparison
// ---------------------------------------------------------------------------

inline constexpr const char* csv_header = "mode,theta_h,step,observable,value,stderr";

/// 12 significant digits, the precision contract of the CSV format.
[[nodiscard]] inline std::string format_g12(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

inline void emit_csv(const SweepResult& result, std::ostream& out) {
    out << csv_header << "\n";
    for (const auto& r : result.rows) {
        out << r.mode << ',' << format_g12(r.theta_h) << ',' << r.step << ',' << r.observable
            << ',' << format_g12(r.value) << ','
            << (r.std_error ? format_g12(*r.std_error) : "") << "\n";
    }
}

inline void emit_csv(const SweepResult& result, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot open '" + path + "' for writing");
    }
    emit_csv(result, out);
    if (!out.good()) {
        throw std::runtime_error("write failure on '" + path + "'");
    }
}

[[nodiscard]] inline SweepResult parse_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != csv_header) {
        throw parse_error("missing or malformed CSV header (expected '" +
                          std::string(csv_header) + "')");
    }
    SweepResult result;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::size_t pos = 0;
        while (true) {
            const auto comma = line.find(',', pos);
            if (comma == std::string::npos) {
                fields.push_back(line.substr(pos));
                break;
            }
            fields.push_back(line.substr(pos, comma - pos));
            pos = comma + 1;
        }
        if (fields.size() != 6) {
            throw parse_error("line " + std::to_string(line_no) + ": expected 6 fields, got " +
                              std::to_string(fields.size()));
        }
        try {
            SweepRow row;
            row.mode = fields[0];
            row.theta_h = std::stod(fields[1]);
            row.step = std::stoi(fields[2]);
            row.observable = fields[3];
            row.value = std::stod(fields[4]);
            if (!fields[5].empty()) row.std_error = std::stod(fields[5]);
            result.rows.push_back(std::move(row));
        } catch (const std::exception&) {
            throw parse_error("line " + std::to_string(line_no) + ": malformed row '" + line +
                              "'");
        }
    }
    return result;
}

[[nodiscard]] inline SweepResult parse_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open '" + path + "' for reading");
    }
    return parse_csv(in);
}

struct CompareReport {
    std::size_t n_keys = 0;
    double max_abs_diff = 0.0;
    std::string worst_key;
    double tolerance = 0.0;
    bool pass = true;
};

/// Join two results on (theta_h, step, observable) and report the largest
/// absolute difference against a tolerance. Mode is deliberately not part
/// of the key so different engines can be compared. Key mismatches are
/// structured errors listing the missing keys.
[[nodiscard]] inline CompareReport compare_results(const SweepResult& a, const SweepResult& b,
                                                   double tolerance) {
    auto key_of = [](const SweepRow& r) {
        return format_g12(r.theta_h) + "|" + std::to_string(r.step) + "|" + r.observable;
    };
    auto index = [&](const SweepResult& r, const char* label) {
        std::map<std::string, double> m;
        for (const auto& row : r.rows) {
            if (!m.emplace(key_of(row), row.value).second) {
                throw validation_error(std::string(label) + " contains duplicate key (" +
                                       key_of(row) + "); compare one mode per file");
            }
        }
        return m;
    };
    const auto ma = index(a, "first input");
    const auto mb = index(b, "second input");

    std::string missing;
    int n_missing = 0;
    auto collect_missing = [&](const auto& from, const auto& in, const char* where) {
        for (const auto& [k, v] : from) {
            if (in.find(k) == in.end()) {
                if (n_missing < 8) missing += "\n  (" + k + ") missing in " + where;
                ++n_missing;
            }
        }
    };
    collect_missing(ma, mb, "second input");
    collect_missing(mb, ma, "first input");
    if (n_missing > 0) {
        throw validation_error("key mismatch between inputs (" + std::to_string(n_missing) +
                               " keys):" + missing);
    }

    CompareReport report;
    report.tolerance = tolerance;
    for (const auto& [k, va] : ma) {
        const double diff = std::abs(va - mb.at(k));
        if (diff > report.max_abs_diff) {
            report.max_abs_diff = diff;
            report.worst_key = k;
        }
        ++report.n_keys;
    }
    report.pass = report.max_abs_diff <= tolerance;
    return report;
}

[[nodiscard]] inline CompareReport compare_csv_files(const std::string& path_a,
                                                     const std::string& path_b,
                                                     double tolerance) {
    return compare_results(parse_csv_file(path_a), parse_csv_file(path_b), tolerance);
}

}  // namespace kising
