// rydgrover: Grover-search simulator and error-budget toolkit for
// Rydberg-blockade pulse protocols on multi-level atom registers.

#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "rydgrover/dynamics.hpp"
#include "rydgrover/errorbudget.hpp"
#include "rydgrover/interactions.hpp"
#include "rydgrover/io.hpp"
#include "rydgrover/protocols.hpp"
#include "rydgrover/verify.hpp"

namespace fs = std::filesystem;
using namespace rydgrover;

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitBadInput = 2;

struct GlobalOpts {
    std::uint64_t seed = 12345;
    std::string out_dir = "out";
    std::string format = "both"; // csv | json | both
};

PairModel resolve_species(const std::string& name_or_path) {
    if (name_or_path == "cs_like") return cs_like();
    if (name_or_path == "rb_like") return rb_like();
    if (name_or_path == "cs_two_species") return cs_two_species();
    if (!fs::exists(name_or_path))
        throw std::invalid_argument("species file not found: " + name_or_path);
    return io::load_species(name_or_path);
}

// Custom pulse-sequence scripting: applies a JSON array of pulses to the
// prepared initial state and logs the marked-component probability per pulse.
int run_pulse_program(const GlobalOpts& global, const ProtocolConfig& config,
                      const std::string& pulses_path) {
    std::ifstream in(pulses_path);
    if (!in) throw std::invalid_argument("cannot open pulse program: " + pulses_path);
    io::json j;
    in >> j;
    std::vector<PulseSpec> program;
    for (const auto& entry : j) program.push_back(io::pulse_spec_from_json(entry));

    RegisterState state = initial_state(config);
    BasisLabel target(static_cast<std::size_t>(state.num_atoms()), 0);
    for (int i = 0; i < config.k; ++i)
        target[static_cast<std::size_t>(i)] = config.marked[static_cast<std::size_t>(i)];
    const std::size_t target_idx = state.flat_index(target);

    std::ostringstream csv;
    csv << "pulse,success_prob,norm\n";
    csv << 0 << ',' << io::format_double(std::norm(state.amp(target_idx))) << ','
        << io::format_double(std::sqrt(state.norm_sq())) << '\n';
    for (std::size_t i = 0; i < program.size(); ++i) {
        apply_pulse(state, program[i]);
        csv << i + 1 << ',' << io::format_double(std::norm(state.amp(target_idx))) << ','
            << io::format_double(std::sqrt(state.norm_sq())) << '\n';
    }

    io::ManifestWriter manifest("grover", global.seed);
    manifest.set_config(io::json{{"config", io::to_json(config)}, {"pulse_program", pulses_path}});
    const fs::path out(global.out_dir);
    manifest.write_file(out / "pulses_trace.csv", csv.str());
    manifest.write_file(out / "state.json", io::state_to_json(state).dump() + "\n");
    manifest.finalize(out / "manifest.json");
    std::cout << "grover: applied " << program.size() << " scripted pulses\n";
    return 0;
}

int cmd_grover(const GlobalOpts& global, const std::string& config_path, int iterations,
               bool emit_state, const std::string& pulses_path) {
    ProtocolConfig config;
    {
        std::ifstream in(config_path);
        if (!in) throw std::invalid_argument("cannot open config: " + config_path);
        io::json j;
        in >> j; // throws on malformed JSON before any output is created
        config = io::protocol_config_from_json(j);
    }
    if (!pulses_path.empty()) return run_pulse_program(global, config, pulses_path);

    const GroverTrace trace = grover_search(config, iterations);

    io::ManifestWriter manifest("grover", global.seed);
    manifest.set_config(io::to_json(config));
    const fs::path out(global.out_dir);
    if (global.format != "json")
        manifest.write_file(out / "trace.csv", io::trace_to_csv(trace));
    if (global.format != "csv")
        manifest.write_file(out / "trace.json", io::trace_to_json(trace).dump(2) + "\n");
    if (emit_state) {
        RegisterState state = initial_state(config);
        for (int i = 0; i < trace.iterations; ++i) grover_iteration(state, config);
        manifest.write_file(out / "state.json", io::state_to_json(state).dump() + "\n");
    }
    manifest.finalize(out / "manifest.json");

    std::cout << "grover: k=" << config.k << " arch=" << to_string(config.architecture)
              << " iterations=" << trace.iterations
              << " final success probability=" << io::format_double(trace.success_prob.back())
              << "\n";
    return 0;
}

int cmd_verify(const GlobalOpts& global, const std::string& level) {
    const VerifyLevel lvl = level == "full" ? VerifyLevel::Full : VerifyLevel::Fast;
    const auto results = run_verification(lvl, nullptr, global.seed);
    bool all = true;
    for (const CheckResult& r : results) {
        std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.name << " -- " << r.detail << "\n";
        all = all && r.pass;
    }
    std::cout << (all ? "verify: all checks passed\n" : "verify: FAILURES present\n");
    return all ? 0 : kExitFailure;
}

std::vector<double> make_grid(double lo, double hi, int points, bool log_spaced) {
    if (points < 1 || lo <= 0.0 || hi < lo) throw std::invalid_argument("sweep: empty or bad range");
    std::vector<double> grid;
    for (int i = 0; i < points; ++i) {
        const double t = points == 1 ? 0.0 : static_cast<double>(i) / (points - 1);
        grid.push_back(log_spaced ? lo * std::pow(hi / lo, t) : lo + (hi - lo) * t);
    }
    return grid;
}

int cmd_sweep(const GlobalOpts& global, const std::string& param, double lo, double hi, int points,
              double fixed_b, double fixed_tau, const std::string& species, double fixed_n,
              double fixed_d, int fixed_k, const std::string& mode) {
    std::ostringstream csv;
    io::json summary;
    const PairModel model = resolve_species(species);
    const SpeciesMode species_mode =
        mode == "two-species" ? SpeciesMode::TwoSpecies : SpeciesMode::SingleSpecies;

    // Optional fixed lattice for the d and n sweeps.
    std::optional<LatticeSpec> lattice;
    if (fixed_k > 0) {
        const int side = static_cast<int>(std::lround(std::sqrt(fixed_k)));
        if (side * side != fixed_k) throw std::invalid_argument("sweep: --k must be a square");
        lattice = LatticeSpec{side, fixed_d, species_mode == SpeciesMode::TwoSpecies};
    }

    if (param == "Omega") {
        csv << "omega,error,omega_opt,min_error_formula\n";
        const auto grid = make_grid(lo, hi, points, true);
        double best_w = 0.0, best_e = 1e300;
        for (const double w : grid) {
            const double e = controlled_phase_error(fixed_b, fixed_tau, w);
            if (e < best_e) {
                best_e = e;
                best_w = w;
            }
            csv << io::format_double(w) << ',' << io::format_double(e) << ','
                << io::format_double(optimal_rabi(fixed_b, fixed_tau)) << ','
                << io::format_double(min_error_formula(fixed_b, fixed_tau)) << '\n';
        }
        summary["omega_min"] = best_w;
        summary["error_min"] = best_e;
        summary["omega_opt"] = optimal_rabi(fixed_b, fixed_tau);
        summary["minimizer_ratio"] = best_w / optimal_rabi(fixed_b, fixed_tau);
    } else if (param == "B" || param == "tau") {
        csv << "B,tau,B_tau,omega_min,error_min,omega_opt,min_error_formula,local_slope\n";
        const auto grid = make_grid(lo, hi, points, true);
        std::vector<double> log_bt, log_e;
        std::vector<std::string> rows;
        for (const double v : grid) {
            const double b = param == "B" ? v : fixed_b;
            const double tau = param == "tau" ? v : fixed_tau;
            const ControlledPhaseMinimum m = minimize_controlled_phase_error(b, tau);
            log_bt.push_back(std::log(b * tau));
            log_e.push_back(std::log(m.error_min));
            std::ostringstream row;
            row << io::format_double(b) << ',' << io::format_double(tau) << ','
                << io::format_double(b * tau) << ',' << io::format_double(m.omega_min) << ','
                << io::format_double(m.error_min) << ',' << io::format_double(m.omega_opt_formula)
                << ',' << io::format_double(m.error_formula);
            rows.push_back(row.str());
        }
        // centered-window slope per grid point (one-sided at the ends)
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const std::size_t a = i == 0 ? 0 : i - 1;
            const std::size_t b = i + 1 == rows.size() ? i : i + 1;
            const double local =
                (a == b) ? 0.0 : (log_e[b] - log_e[a]) / (log_bt[b] - log_bt[a]);
            csv << rows[i] << ',' << io::format_double(local) << '\n';
        }
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        const auto n = static_cast<double>(log_bt.size());
        for (std::size_t i = 0; i < log_bt.size(); ++i) {
            sx += log_bt[i];
            sy += log_e[i];
            sxx += log_bt[i] * log_bt[i];
            sxy += log_bt[i] * log_e[i];
        }
        summary["fitted_slope"] = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        summary["target_slope"] = -2.0 / 3.0;
    } else if (param == "d") {
        csv << "d,pair_shift,pair_error" << (lattice ? ",lattice_mean_error" : "") << '\n';
        for (const double d : make_grid(lo, hi, points, true)) {
            const double shift = pair_shift(model, fixed_n, d);
            csv << io::format_double(d) << ',' << io::format_double(shift) << ','
                << io::format_double(min_error_formula(shift, lifetime(model, fixed_n)));
            if (lattice) {
                LatticeSpec spec = *lattice;
                spec.period = d;
                csv << ','
                    << io::format_double(lattice_average_error(model, fixed_n, spec,
                                                               lifetime(model, fixed_n), species_mode)
                                             .mean_error);
            }
            csv << '\n';
        }
        summary["note"] = "in the van der Waals regime the per-pair error grows as d^4";
    } else if (param == "n") {
        csv << "n,pair_shift_at_d,blockade_ceiling,ceiling_violated,tau"
            << (lattice ? ",lattice_mean_error" : "") << '\n';
        for (const double n_val : make_grid(lo, hi, points, false)) {
            const int n_int = static_cast<int>(std::lround(n_val));
            const double shift = pair_shift(model, n_int, fixed_d);
            const double ceiling = blockade_ceiling(model, n_int);
            csv << n_int << ',' << io::format_double(shift) << ',' << io::format_double(ceiling)
                << ',' << (shift > ceiling ? 1 : 0) << ','
                << io::format_double(lifetime(model, n_int));
            if (lattice)
                csv << ','
                    << io::format_double(lattice_average_error(model, n_int, *lattice,
                                                               lifetime(model, n_int), species_mode)
                                             .mean_error);
            csv << '\n';
        }
    } else if (param == "k") {
        csv << "k,side,mean_error,b_rule_error,max_shift,ceiling_violated\n";
        for (const double kv : make_grid(lo, hi, points, false)) {
            const int side = static_cast<int>(std::lround(std::sqrt(kv)));
            if (side * side != static_cast<int>(std::lround(kv))) continue;
            const LatticeSpec spec{side, fixed_d, species_mode == SpeciesMode::TwoSpecies};
            const auto res =
                lattice_average_error(model, fixed_n, spec, lifetime(model, fixed_n), species_mode);
            csv << static_cast<int>(kv) << ',' << side << ',' << io::format_double(res.mean_error)
                << ',' << io::format_double(res.b_rule_error) << ','
                << io::format_double(res.max_shift) << ',' << (res.ceiling_violated ? 1 : 0) << '\n';
        }
    } else {
        throw std::invalid_argument("sweep: unknown parameter " + param);
    }

    io::ManifestWriter manifest("sweep", global.seed);
    manifest.set_config(io::json{{"param", param},
                                 {"lo", lo},
                                 {"hi", hi},
                                 {"points", points},
                                 {"B", fixed_b},
                                 {"tau", fixed_tau},
                                 {"n", fixed_n},
                                 {"d", fixed_d},
                                 {"species", species}});
    const fs::path out(global.out_dir);
    manifest.write_file(out / ("sweep_" + param + ".csv"), csv.str());
    if (!summary.is_null())
        manifest.write_file(out / ("sweep_" + param + "_summary.json"), summary.dump(2) + "\n");
    manifest.finalize(out / "manifest.json");
    std::cout << "sweep: wrote " << (out / ("sweep_" + param + ".csv")).string() << "\n";
    if (summary.contains("fitted_slope"))
        std::cout << "sweep: fitted log-log slope " << io::format_double(summary["fitted_slope"])
                  << "\n";
    return 0;
}

int cmd_table(const GlobalOpts& global, const std::string& single_species,
              const std::string& two_species, double d_um, double e_a) {
    const PairModel single = resolve_species(single_species);
    const PairModel two = resolve_species(two_species);
    const TableReport report = table_report(single, two, d_um, e_a);

    io::ManifestWriter manifest("table", global.seed);
    manifest.set_config(io::json{{"single_species", single.name},
                                 {"two_species", two.name},
                                 {"d_um", d_um},
                                 {"E_a", e_a}});
    const fs::path out(global.out_dir);
    manifest.write_file(out / "table.txt", report.text());
    manifest.write_file(out / "table.json", io::table_report_to_json(report).dump(2) + "\n");
    manifest.finalize(out / "manifest.json");
    std::cout << report.text();
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Grover search with Rydberg-blockade pulse protocols"};
    app.require_subcommand(1);

    GlobalOpts global;
    app.add_option("--seed", global.seed, "random seed for sampled checks");
    app.add_option("--out", global.out_dir, "output directory");
    app.add_option("--format", global.format, "csv | json | both")
        ->check(CLI::IsMember({"csv", "json", "both"}));

    auto* grover = app.add_subcommand("grover", "run a Grover search and emit the trace");
    std::string config_path;
    std::string pulses_path;
    int iterations = -1;
    bool emit_state = false;
    grover->add_option("--config", config_path, "protocol config JSON")->required();
    grover->add_option("--iterations", iterations, "iteration count (default: auto)");
    grover->add_flag("--emit-state", emit_state, "also write the final state vector");
    grover->add_option("--pulses", pulses_path,
                       "apply a scripted pulse sequence (JSON array) instead of the search loop");

    auto* verify = app.add_subcommand("verify", "run the invariant suites");
    std::string level = "fast";
    verify->add_option("--level", level, "fast | full")->check(CLI::IsMember({"fast", "full"}));

    auto* sweep = app.add_subcommand("sweep", "parameter sweeps for the error model");
    std::string param;
    double lo = 0.0, hi = 0.0;
    int points = 9;
    double fixed_b = 1e4, fixed_tau = 1.0, fixed_n = 75.0, fixed_d = 5.0;
    int fixed_lattice_k = 0;
    std::string species = "cs_like";
    std::string lattice_mode = "single-species";
    sweep->add_option("--param", param, "B | tau | Omega | d | n | k")->required();
    sweep->add_option("--min", lo, "range start")->required();
    sweep->add_option("--max", hi, "range end")->required();
    sweep->add_option("--points", points, "grid size");
    sweep->add_option("--B", fixed_b, "fixed blockade strength, rad/s");
    sweep->add_option("--tau", fixed_tau, "fixed lifetime, s");
    sweep->add_option("--n", fixed_n, "principal quantum number");
    sweep->add_option("--d", fixed_d, "lattice period, um");
    sweep->add_option("--k", fixed_lattice_k,
                      "fixed square lattice size: adds lattice-averaged columns to d/n sweeps");
    sweep->add_option("--species", species, "species preset name or JSON file");
    sweep->add_option("--mode", lattice_mode, "single-species | two-species")
        ->check(CLI::IsMember({"single-species", "two-species"}));

    auto* table = app.add_subcommand("table", "error-budget comparison table");
    std::string single_species = "cs_like";
    std::string two_species = "cs_two_species";
    double table_d = 5.0, table_ea = 0.0;
    table->add_option("--species", single_species, "single-species preset or file");
    table->add_option("--two-species", two_species, "two-species preset or file");
    table->add_option("--d", table_d, "lattice period, um");
    table->add_option("--ea", table_ea, "ancilla comparison error E_a");

    CLI11_PARSE(app, argc, argv);

    try {
        if (grover->parsed())
            return cmd_grover(global, config_path, iterations, emit_state, pulses_path);
        if (verify->parsed()) return cmd_verify(global, level);
        if (sweep->parsed())
            return cmd_sweep(global, param, lo, hi, points, fixed_b, fixed_tau, species, fixed_n,
                             fixed_d, fixed_lattice_k, lattice_mode);
        if (table->parsed()) return cmd_table(global, single_species, two_species, table_d, table_ea);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    }
    return 0;
}
