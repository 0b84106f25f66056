#include "rydgrover/verify.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

#include "rydgrover/dynamics.hpp"
#include "rydgrover/errorbudget.hpp"

namespace rydgrover {

namespace {
constexpr double kPi = std::numbers::pi;

std::string fmt(const char* pattern, double a, double b = 0.0) {
    char buf[160];
    std::snprintf(buf, sizeof buf, pattern, a, b);
    return buf;
}
} // namespace

CMatrix assemble_qubit_block(const std::vector<AtomSpec>& atoms, int k,
                             const std::function<void(RegisterState&)>& op) {
    const int n = 1 << k;
    CMatrix m(n, n);
    for (int col = 0; col < n; ++col) {
        BasisLabel label(atoms.size(), 0);
        for (int a = 0; a < k; ++a) {
            const AtomSpec& spec = atoms[static_cast<std::size_t>(a)];
            const bool one = (col >> (k - 1 - a)) & 1;
            label[static_cast<std::size_t>(a)] =
                one ? spec.level(LevelRole::Ground1) : spec.level(LevelRole::Ground0);
        }
        for (std::size_t a = static_cast<std::size_t>(k); a < atoms.size(); ++a)
            label[a] = atoms[a].level(LevelRole::Ground0);

        RegisterState state = basis_state(atoms, label);
        op(state);

        for (int row = 0; row < n; ++row) {
            BasisLabel out = label;
            for (int a = 0; a < k; ++a) {
                const AtomSpec& spec = atoms[static_cast<std::size_t>(a)];
                const bool one = (row >> (k - 1 - a)) & 1;
                out[static_cast<std::size_t>(a)] =
                    one ? spec.level(LevelRole::Ground1) : spec.level(LevelRole::Ground0);
            }
            m(row, col) = state.amp(state.flat_index(out));
        }
    }
    return m;
}

CMatrix oracle_target_matrix(const BasisLabel& marked) {
    const int k = static_cast<int>(marked.size());
    const int n = 1 << k;
    int idx = 0;
    for (const int b : marked) idx = idx * 2 + b;
    CMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = (i == idx) ? 1.0 : -1.0;
    return m;
}

CMatrix diffusion_target_matrix(int k) {
    const int n = 1 << k;
    CMatrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = 2.0 / n - (i == j ? 1.0 : 0.0);
    return m;
}

namespace {

BasisLabel bits_of(int value, int k) {
    BasisLabel label(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) label[static_cast<std::size_t>(i)] = (value >> (k - 1 - i)) & 1;
    return label;
}

CheckResult check_rotation_algebra() {
    CheckResult r{"rotation-block algebra", true, ""};
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> uni(0.0, 2.0 * kPi);
    double worst = 0.0;
    for (int i = 0; i < 8; ++i) {
        const double phi = uni(rng);
        const CMatrix round_trip = rotation_block(kPi, phi) * rotation_block(kPi, phi);
        const CMatrix inverse_trip = rotation_block(kPi, phi + kPi) * rotation_block(kPi, phi);
        CMatrix minus_i = CMatrix::identity(2);
        minus_i(0, 0) = -1.0;
        minus_i(1, 1) = -1.0;
        worst = std::max(worst, max_abs_diff(round_trip, minus_i));
        worst = std::max(worst, max_abs_diff(inverse_trip, CMatrix::identity(2)));
        worst = std::max(worst, max_abs_diff(rotation_block(2.0 * kPi, phi), minus_i));
    }
    r.pass = worst < 1e-12;
    r.detail = fmt("max deviation %.2e", worst);
    return r;
}

CheckResult check_oracle_matrices(int k_max, const FaultInjection* fault, std::uint64_t seed,
                                  int random_marks_above) {
    CheckResult r{"sequential oracle matrix = 2|x0><x0| - I", true, ""};
    const double offset = fault != nullptr ? fault->deexcite_phase_offset : 0.0;
    std::mt19937_64 rng(seed);
    double worst = 0.0;
    for (int k = 1; k <= k_max; ++k) {
        const std::vector<AtomSpec> atoms(static_cast<std::size_t>(k), AtomSpec::qubit());
        std::vector<int> marks;
        if (k <= random_marks_above) {
            for (int x = 0; x < (1 << k); ++x) marks.push_back(x);
        } else {
            std::uniform_int_distribution<int> pick(0, (1 << k) - 1);
            for (int i = 0; i < 8; ++i) marks.push_back(pick(rng));
        }
        for (const int x : marks) {
            const BasisLabel marked = bits_of(x, k);
            const CMatrix got = assemble_qubit_block(atoms, k, [&](RegisterState& s) {
                oracle_sequential_with_phases(s, marked, 0.0, offset, true);
            });
            worst = std::max(worst, max_abs_diff_mod_phase(got, oracle_target_matrix(marked)));
        }
    }
    r.pass = worst < 1e-10;
    r.detail = fmt("max entrywise deviation %.2e (k <= %.0f)", worst, static_cast<double>(k_max));
    return r;
}

CheckResult check_diffusion_matrices(int k_max) {
    CheckResult r{"sequential diffusion matrix = 2P - I", true, ""};
    double worst = 0.0;
    for (int k = 1; k <= k_max; ++k) {
        const std::vector<AtomSpec> atoms(static_cast<std::size_t>(k), AtomSpec::qubit());
        const CMatrix got =
            assemble_qubit_block(atoms, k, [&](RegisterState& s) { diffusion_sequential(s); });
        worst = std::max(worst, max_abs_diff_mod_phase(got, diffusion_target_matrix(k)));
    }
    r.pass = worst < 1e-10;
    r.detail = fmt("max entrywise deviation %.2e (k <= %.0f)", worst, static_cast<double>(k_max));
    return r;
}

CheckResult check_architecture_equivalence(bool include_subregister) {
    CheckResult r{"architecture equivalence (qubit-block match mod phase)", true, ""};
    double worst = 0.0;
    for (int k = 1; k <= (include_subregister ? 4 : 3); ++k) {
        for (int x = 0; x < (1 << k); ++x) {
            const BasisLabel marked = bits_of(x, k);
            const CMatrix seq_oracle = oracle_target_matrix(marked);
            const CMatrix seq_diff = diffusion_target_matrix(k);

            std::vector<AtomSpec> sim_atoms(static_cast<std::size_t>(k) + 1, AtomSpec::two_species());
            const CMatrix sim_oracle = assemble_qubit_block(
                sim_atoms, k, [&](RegisterState& s) { oracle_simultaneous(s, marked); });
            const CMatrix sim_diff = assemble_qubit_block(
                sim_atoms, k, [&](RegisterState& s) { diffusion_simultaneous(s); });
            worst = std::max(worst, max_abs_diff_mod_phase(sim_oracle, seq_oracle));
            worst = std::max(worst, max_abs_diff_mod_phase(sim_diff, seq_diff));
        }
    }
    if (include_subregister) {
        ProtocolConfig config;
        config.architecture = Architecture::Subregister;
        config.k = 4;
        config.n_s = 2;
        config.k_s = 2;
        const std::vector<AtomSpec> atoms = register_atoms(config);
        for (int x = 0; x < 16; ++x) {
            config.marked = bits_of(x, 4);
            const CMatrix sub_oracle = assemble_qubit_block(atoms, 4, [&](RegisterState& s) {
                grover_step_subregister(s, config, StepVariant::Oracle);
            });
            const CMatrix sub_diff = assemble_qubit_block(atoms, 4, [&](RegisterState& s) {
                grover_step_subregister(s, config, StepVariant::Diffusion);
            });
            worst = std::max(worst, max_abs_diff_mod_phase(sub_oracle, oracle_target_matrix(config.marked)));
            worst = std::max(worst, max_abs_diff_mod_phase(sub_diff, diffusion_target_matrix(4)));
        }
    }
    r.pass = worst < 1e-10;
    r.detail = fmt("max entrywise deviation %.2e", worst);
    return r;
}

CheckResult check_grover_law(int k_max, std::uint64_t seed) {
    CheckResult r{"Grover success law sin^2((2m+1) asin(2^{-k/2}))", true, ""};
    std::mt19937_64 rng(seed);
    double worst = 0.0;
    for (int k = 2; k <= k_max; ++k) {
        std::uniform_int_distribution<int> pick(0, (1 << k) - 1);
        ProtocolConfig config;
        config.architecture = Architecture::Sequential;
        config.k = k;
        config.marked = bits_of(pick(rng), k);
        const GroverTrace trace = grover_search(config);
        const double theta = std::asin(std::pow(2.0, -0.5 * k));
        for (int m = 1; m <= trace.iterations; ++m) {
            const double want = std::pow(std::sin((2 * m + 1) * theta), 2);
            worst = std::max(worst, std::abs(trace.success_prob[static_cast<std::size_t>(m)] - want));
        }
    }
    r.pass = worst < 1e-9;
    r.detail = fmt("max probability deviation %.2e (k <= %.0f)", worst, static_cast<double>(k_max));
    return r;
}

CheckResult check_formulas() {
    CheckResult r{"closed-form checks (optimal rabi, minimum error, threshold)", true, ""};
    double worst = 0.0;
    worst = std::max(worst, std::abs(optimal_rabi(1.0, 1.0) - std::cbrt(7.0 * kPi)));
    worst = std::max(worst, std::abs(optimal_rabi(8.0, 1.0) - 4.0 * optimal_rabi(1.0, 1.0)));
    worst = std::max(worst, std::abs(optimal_rabi(1.0, 8.0) - optimal_rabi(1.0, 1.0) / 2.0));
    worst = std::max(worst,
                     std::abs(min_error_formula(1.0, 1.0) - 3.0 * std::pow(7.0 * kPi, 2.0 / 3.0) / 8.0));
    worst = std::max(worst, std::abs(min_error_formula(1000.0, 1.0) - min_error_formula(1.0, 1.0) / 100.0));
    bool display_ok = format_two_sig(shenvi_threshold(256)) == ".25" &&
                      format_two_sig(shenvi_threshold(512)) == ".21" &&
                      format_two_sig(shenvi_threshold(32768)) == ".074" &&
                      format_two_sig(shenvi_threshold(65536)) == ".063" &&
                      format_two_sig(shenvi_threshold(16777216)) == ".016";
    r.pass = worst < 1e-12 && display_ok;
    r.detail = fmt("max formula deviation %.2e, threshold display ", worst) +
               (display_ok ? "ok" : "WRONG");
    return r;
}

CheckResult check_pulse_counts() {
    CheckResult r{"pulse accounting matches instrumented executions", true, ""};
    bool ok = true;
    for (int k = 1; k <= 6; ++k) {
        ProtocolConfig config;
        config.architecture = Architecture::Sequential;
        config.k = k;
        config.marked = bits_of(0, k);
        const GroverTrace trace = grover_search(config, 1);
        ok = ok && trace.cumulative_pulses.back() == pulse_count(Architecture::Sequential, k);
    }
    for (int k = 1; k <= 3; ++k) {
        ProtocolConfig config;
        config.architecture = Architecture::Simultaneous;
        config.k = k;
        config.marked = bits_of(0, k);
        const GroverTrace trace = grover_search(config, 1);
        ok = ok && trace.cumulative_pulses.back() == pulse_count(Architecture::Simultaneous, k);
    }
    {
        ProtocolConfig config;
        config.architecture = Architecture::Subregister;
        config.k = 4;
        config.n_s = 2;
        config.k_s = 2;
        config.marked = bits_of(5, 4);
        const GroverTrace trace = grover_search(config, 1);
        ok = ok && trace.cumulative_pulses.back() == pulse_count(Architecture::Subregister, 4, 2);
    }
    r.pass = ok;
    r.detail = ok ? "sequential 4k, simultaneous 8, subregister 32 n_s - 12" : "mismatch";
    return r;
}

CheckResult check_and_pair() {
    CheckResult r{"and-pair truth table", true, ""};
    const std::vector<AtomSpec> atoms(2, AtomSpec::tree_ancilla());
    const int truth[4][2] = {{0, 0}, {0, 1}, {0, 2}, {1, 1}}; // images of 00,01,10,11
    double worst = 0.0;
    for (int in = 0; in < 4; ++in) {
        RegisterState s = basis_state(atoms, {in >> 1, in & 1});
        and_pair(s, 0, 1);
        const std::size_t idx = s.flat_index({truth[in][0], truth[in][1]});
        worst = std::max(worst, std::abs(s.amp(idx) - Complex{1.0}));
        and_pair_inverse(s, 0, 1);
        const std::size_t back = s.flat_index({in >> 1, in & 1});
        worst = std::max(worst, std::abs(s.amp(back) - Complex{1.0}));
    }
    r.pass = worst < 1e-12;
    r.detail = fmt("max amplitude deviation %.2e", worst);
    return r;
}

CheckResult check_enhancement() {
    CheckResult r{"collective Rabi enhancement sqrt(m)", true, ""};
    double worst = 0.0;
    for (int m = 1; m <= 3; ++m) {
        const EnhancementResult res = collective_enhancement(m, 1.0, 100.0);
        worst = std::max(worst, std::abs(res.ratio - std::sqrt(static_cast<double>(m))) /
                                    std::sqrt(static_cast<double>(m)));
    }
    r.pass = worst < 1e-2;
    r.detail = fmt("max relative deviation %.2e", worst);
    return r;
}

// Assemble the full register matrix of a random pulse sequence at k = 6
// (729-dimensional) column by column and check unitarity.
CheckResult check_full_matrix_unitarity(std::uint64_t seed) {
    CheckResult r{"assembled k=6 pulse-sequence matrix is unitary", true, ""};
    const int k = 6;
    const std::vector<AtomSpec> atoms(static_cast<std::size_t>(k), AtomSpec::qubit());
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(0.0, 2.0 * kPi);

    struct Step {
        int atom;
        bool bright;
        double theta, phi;
        int from;
    };
    std::vector<Step> sequence;
    for (int i = 0; i < 16; ++i)
        sequence.push_back({static_cast<int>(rng() % k), (rng() % 2) == 0, uni(rng), uni(rng),
                            static_cast<int>(rng() % 2)});

    const std::size_t dim = 729;
    CMatrix m(static_cast<int>(dim), static_cast<int>(dim));
    for (std::size_t col = 0; col < dim; ++col) {
        RegisterState s(atoms);
        s.amp(col) = 1.0;
        for (const Step& step : sequence) {
            BlockadeCondition cond;
            for (int a = 0; a < step.atom; ++a) cond.atoms.push_back(a);
            cond.levels = {2};
            const BlockadeCondition* cptr = cond.atoms.empty() ? nullptr : &cond;
            if (step.bright)
                bright_pulse(s, step.atom, step.theta, step.phi, 2, cptr);
            else
                pi_pulse(s, step.atom, step.from, 2, step.phi, cptr);
        }
        for (std::size_t row = 0; row < dim; ++row)
            m(static_cast<int>(row), static_cast<int>(col)) = s.amp(row);
    }

    // column norms and a full sample of column-pair inner products
    double worst = 0.0;
    std::vector<Complex> col_i(dim), col_j(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        Complex nrm{};
        for (std::size_t row = 0; row < dim; ++row) nrm += std::conj(m(static_cast<int>(row), static_cast<int>(i))) * m(static_cast<int>(row), static_cast<int>(i));
        worst = std::max(worst, std::abs(nrm - 1.0));
    }
    std::uniform_int_distribution<std::size_t> pick(0, dim - 1);
    for (int rep = 0; rep < 4000; ++rep) {
        const std::size_t i = pick(rng);
        std::size_t j = pick(rng);
        if (i == j) j = (j + 1) % dim;
        Complex dot{};
        for (std::size_t row = 0; row < dim; ++row)
            dot += std::conj(m(static_cast<int>(row), static_cast<int>(i))) * m(static_cast<int>(row), static_cast<int>(j));
        worst = std::max(worst, std::abs(dot));
    }
    r.pass = worst < 1e-10;
    r.detail = fmt("max orthonormality deviation %.2e over all columns and 4000 pairs", worst);
    return r;
}

CheckResult check_error_scaling() {
    CheckResult r{"controlled-phase error scaling vs B*tau", true, ""};
    const double tau = 1.0;
    std::vector<double> log_bt, log_e;
    double worst_omega = 0.0, worst_err = 0.0;
    for (const double bt : {1e3, 3.16e3, 1e4, 3.16e4, 1e5}) {
        const ControlledPhaseMinimum m = minimize_controlled_phase_error(bt, tau);
        log_bt.push_back(std::log(bt));
        log_e.push_back(std::log(m.error_min));
        worst_omega = std::max(worst_omega, std::abs(m.omega_min / m.omega_opt_formula - 1.0));
        const double ratio = m.error_min / m.error_formula;
        worst_err = std::max(worst_err, std::max(ratio, 1.0 / ratio));
    }
    // Least-squares slope of log E against log(B tau).
    const auto n = static_cast<double>(log_bt.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < log_bt.size(); ++i) {
        sx += log_bt[i];
        sy += log_e[i];
        sxx += log_bt[i] * log_bt[i];
        sxy += log_bt[i] * log_e[i];
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    r.pass = slope > -0.75 && slope < -0.58 && worst_omega < 0.10 && worst_err < 2.0;
    r.detail = fmt("fitted exponent %.4f (target -2/3), worst minimizer offset %.1f%%", slope,
                   100.0 * worst_omega) +
               fmt(", worst min-error ratio %.2f", worst_err);
    return r;
}

} // namespace

std::vector<CheckResult> run_verification(VerifyLevel level, const FaultInjection* fault,
                                          std::uint64_t seed) {
    std::vector<CheckResult> results;
    const bool full = level == VerifyLevel::Full;

    results.push_back(check_rotation_algebra());
    results.push_back(check_oracle_matrices(full ? 6 : 3, fault, seed, 4));
    results.push_back(check_diffusion_matrices(full ? 6 : 3));
    results.push_back(check_architecture_equivalence(full));
    results.push_back(check_grover_law(full ? 8 : 5, seed));
    results.push_back(check_formulas());
    results.push_back(check_pulse_counts());
    results.push_back(check_and_pair());
    if (full) {
        results.push_back(check_full_matrix_unitarity(seed));
        results.push_back(check_enhancement());
        results.push_back(check_error_scaling());
    }
    return results;
}

} // namespace rydgrover
