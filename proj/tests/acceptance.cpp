// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Tolerances are pinned in the individual checks.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "rydgrover/dynamics.hpp"
#include "rydgrover/errorbudget.hpp"
#include "rydgrover/interactions.hpp"
#include "rydgrover/protocols.hpp"
#include "rydgrover/verify.hpp"

using namespace rydgrover;

namespace {

constexpr double kPi = std::numbers::pi;

struct Criterion {
    int number;
    std::string label;
    bool pass;
    std::string detail;
    double seconds;
};

std::vector<Criterion> g_results;

class Timer {
  public:
    Timer() : start_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

  private:
    std::chrono::steady_clock::time_point start_;
};

void record(int number, const std::string& label, bool pass, const std::string& detail,
            double seconds) {
    g_results.push_back({number, label, pass, detail, seconds});
}

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
    char buf[200];
    std::snprintf(buf, sizeof buf, pattern, a, b, c);
    return buf;
}

BasisLabel bits_of(int value, int k) {
    BasisLabel label(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) label[static_cast<std::size_t>(i)] = (value >> (k - 1 - i)) & 1;
    return label;
}

std::vector<int> marks_for(int k, std::mt19937_64& rng) {
    std::vector<int> marks;
    if (k <= 4) {
        for (int x = 0; x < (1 << k); ++x) marks.push_back(x);
    } else {
        std::uniform_int_distribution<int> pick(0, (1 << k) - 1);
        for (int i = 0; i < 8; ++i) marks.push_back(pick(rng));
    }
    return marks;
}

// 1. Sequential oracle matrices for k in 1..6.
void criterion_oracle() {
    Timer timer;
    std::mt19937_64 rng(2024);
    double worst = 0.0;
    for (int k = 1; k <= 6; ++k) {
        const std::vector<AtomSpec> atoms(static_cast<std::size_t>(k), AtomSpec::qubit());
        for (const int x : marks_for(k, rng)) {
            const BasisLabel marked = bits_of(x, k);
            const CMatrix got = assemble_qubit_block(
                atoms, k, [&](RegisterState& s) { oracle_sequential(s, marked); });
            worst = std::max(worst, max_abs_diff_mod_phase(got, oracle_target_matrix(marked)));
        }
    }
    const double secs = timer.seconds();
    record(1, "sequential oracle equals 2|x0><x0| - I (k <= 6)", worst < 1e-10 && secs < 60.0,
           fmt("max entrywise deviation %.2e, tolerance 1e-10", worst), secs);
}

// 2. Sequential diffusion matrices for k in 1..6.
void criterion_diffusion() {
    Timer timer;
    double worst = 0.0;
    for (int k = 1; k <= 6; ++k) {
        const std::vector<AtomSpec> atoms(static_cast<std::size_t>(k), AtomSpec::qubit());
        const CMatrix got =
            assemble_qubit_block(atoms, k, [&](RegisterState& s) { diffusion_sequential(s); });
        worst = std::max(worst, max_abs_diff_mod_phase(got, diffusion_target_matrix(k)));
    }
    const double secs = timer.seconds();
    record(2, "sequential diffusion equals 2P - I (k <= 6)", worst < 1e-10 && secs < 60.0,
           fmt("max entrywise deviation %.2e, tolerance 1e-10", worst), secs);
}

// 3. Simultaneous (k <= 4) and sub-register (k = 4, n_s = 2) back-ends match.
void criterion_equivalence() {
    Timer timer;
    double worst = 0.0;
    for (int k = 1; k <= 4; ++k) {
        const std::vector<AtomSpec> atoms(static_cast<std::size_t>(k) + 1, AtomSpec::two_species());
        for (int x = 0; x < (1 << k); ++x) {
            const BasisLabel marked = bits_of(x, k);
            const CMatrix oracle = assemble_qubit_block(
                atoms, k, [&](RegisterState& s) { oracle_simultaneous(s, marked); });
            worst = std::max(worst, max_abs_diff_mod_phase(oracle, oracle_target_matrix(marked)));
        }
        const CMatrix diff =
            assemble_qubit_block(atoms, k, [&](RegisterState& s) { diffusion_simultaneous(s); });
        worst = std::max(worst, max_abs_diff_mod_phase(diff, diffusion_target_matrix(k)));
    }
    {
        ProtocolConfig config;
        config.architecture = Architecture::Subregister;
        config.k = 4;
        config.n_s = 2;
        config.k_s = 2;
        const std::vector<AtomSpec> atoms = register_atoms(config);
        for (int x = 0; x < 16; ++x) {
            config.marked = bits_of(x, 4);
            const CMatrix oracle = assemble_qubit_block(atoms, 4, [&](RegisterState& s) {
                grover_step_subregister(s, config, StepVariant::Oracle);
            });
            worst = std::max(worst, max_abs_diff_mod_phase(oracle, oracle_target_matrix(config.marked)));
        }
        config.marked = bits_of(0, 4);
        const CMatrix diff = assemble_qubit_block(atoms, 4, [&](RegisterState& s) {
            grover_step_subregister(s, config, StepVariant::Diffusion);
        });
        worst = std::max(worst, max_abs_diff_mod_phase(diff, diffusion_target_matrix(4)));
    }
    record(3, "simultaneous and sub-register back-ends match sequential", worst < 1e-10,
           fmt("max entrywise deviation %.2e, tolerance 1e-10", worst), timer.seconds());
}

// 4. Grover success law for k in 2..10.
void criterion_grover_law() {
    Timer timer;
    std::mt19937_64 rng(7);
    double worst_prob = 0.0;
    double worst_amp = 0.0;
    for (int k = 2; k <= 10; ++k) {
        std::uniform_int_distribution<int> pick(0, (1 << k) - 1);
        const double theta = std::asin(std::pow(2.0, -0.5 * k));
        const double n = std::pow(2.0, k);
        for (const int x : {0, pick(rng)}) {
            ProtocolConfig config;
            config.architecture = Architecture::Sequential;
            config.k = k;
            config.marked = bits_of(x, k);
            const GroverTrace trace = grover_search(config);
            for (int m = 0; m <= trace.iterations; ++m) {
                const double want = std::pow(std::sin((2 * m + 1) * theta), 2);
                worst_prob = std::max(
                    worst_prob, std::abs(trace.success_prob[static_cast<std::size_t>(m)] - want));
            }
            const double amp_want = 3.0 / std::sqrt(n) - 4.0 / std::pow(n, 1.5);
            worst_amp = std::max(worst_amp, std::abs(std::sqrt(trace.success_prob[1]) - amp_want));
        }
    }
    // N = 4 certainty after one iteration
    ProtocolConfig four;
    four.architecture = Architecture::Sequential;
    four.k = 2;
    four.marked = {1, 1};
    const GroverTrace trace4 = grover_search(four);
    const bool n4 = trace4.iterations == 1 && std::abs(trace4.success_prob.back() - 1.0) < 1e-9;

    const double secs = timer.seconds();
    record(4, "Grover law sin^2((2m+1) asin(2^{-k/2})) for k in 2..10",
           worst_prob < 1e-9 && worst_amp < 1e-9 && n4 && secs < 120.0,
           fmt("max prob deviation %.2e, first-step amplitude deviation %.2e", worst_prob, worst_amp),
           secs);
}

// 5. Collective Rabi enhancement sqrt(m) at B/Omega = 100.
void criterion_enhancement() {
    Timer timer;
    double worst = 0.0;
    for (int m = 1; m <= 3; ++m) {
        const EnhancementResult res = collective_enhancement(m, 1.0, 100.0);
        worst = std::max(worst, std::abs(res.ratio / std::sqrt(static_cast<double>(m)) - 1.0));
    }
    record(5, "collective enhancement sqrt(m) for m in {1,2,3}", worst < 0.01,
           fmt("max relative deviation %.3e, tolerance 1e-2", worst), timer.seconds());
}

// 6. Error scaling of the two-atom controlled phase.
void criterion_error_scaling() {
    Timer timer;
    std::vector<double> log_bt, log_e;
    double worst_omega = 0.0, worst_ratio = 1.0;
    for (const double bt : {1e3, 3.16e3, 1e4, 3.16e4, 1e5}) {
        const ControlledPhaseMinimum m = minimize_controlled_phase_error(bt, 1.0);
        log_bt.push_back(std::log(bt));
        log_e.push_back(std::log(m.error_min));
        if (bt == 1e3 || bt == 1e4 || bt == 1e5) {
            worst_omega = std::max(worst_omega, std::abs(m.omega_min / m.omega_opt_formula - 1.0));
            const double ratio = m.error_min / m.error_formula;
            worst_ratio = std::max(worst_ratio, std::max(ratio, 1.0 / ratio));
        }
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const auto n = static_cast<double>(log_bt.size());
    for (std::size_t i = 0; i < log_bt.size(); ++i) {
        sx += log_bt[i];
        sy += log_e[i];
        sxx += log_bt[i] * log_bt[i];
        sxy += log_bt[i] * log_e[i];
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const double secs = timer.seconds();
    record(6, "controlled-phase error scaling vs B*tau",
           slope > -0.75 && slope < -0.58 && worst_omega < 0.10 && worst_ratio < 2.0 && secs < 600.0,
           fmt("slope %.4f in [-0.75,-0.58], minimizer offset %.1f%%, min-error ratio %.2f", slope,
               100.0 * worst_omega, worst_ratio),
           secs);
}

// 7. Derived table columns: Shenvi displays and sub-register compositions.
void criterion_table_derived() {
    Timer timer;
    const bool shenvi = format_two_sig(shenvi_threshold(256)) == ".25" &&
                        format_two_sig(shenvi_threshold(512)) == ".21" &&
                        format_two_sig(shenvi_threshold(32768)) == ".074" &&
                        format_two_sig(shenvi_threshold(65536)) == ".063" &&
                        format_two_sig(shenvi_threshold(16777216)) == ".016";
    auto printed_sim = [](int) { return 0.08; };
    const bool composed = std::abs(subregister_error(2, 8, printed_sim, 0.0) - 0.16) < 1e-12 &&
                          std::abs(subregister_error(3, 8, printed_sim, 0.0) - 0.24) < 1e-12;
    record(7, "derived table columns (Shenvi displays, sub-register compositions)",
           shenvi && composed,
           std::string("Shenvi 5/5 ") + (shenvi ? "match" : "MISMATCH") +
               ", compositions .16/.24 " + (composed ? "exact" : "WRONG"),
           timer.seconds());
}

// 8. Absolute table cells: order-of-magnitude band and lattice monotonicity.
void criterion_table_absolute() {
    Timer timer;
    const PairModel cs = cs_like();
    const double tau = lifetime(cs, cs.n0);
    const double estimate =
        2.0 * lattice_average_error(cs, cs.n0, {3, 5.0, false}, tau).mean_error;
    const bool in_band = estimate >= kAgreementBandLow * 0.004 && estimate <= kAgreementBandHigh * 0.004;

    bool monotone = true;
    double prev = 0.0;
    for (const int side : {2, 3, 4, 5}) {
        const double e = lattice_average_error(cs, cs.n0, {side, 5.0, false}, tau).mean_error;
        monotone = monotone && e >= prev;
        prev = e;
    }
    record(8, "absolute table cells: k=9 sequential within [0.4x, 10x] of 0.004",
           in_band && monotone,
           fmt("estimate %.4g vs 0.004 (ratio %.2f), lattice average monotone in k: ", estimate,
               estimate / 0.004) +
               (monotone ? "yes" : "NO"),
           timer.seconds());
}

// 9. Pulse counts: 4k sequential, k-independent 8 simultaneous.
void criterion_pulse_counts() {
    Timer timer;
    bool ok = true;
    for (int k = 1; k <= 10; ++k) {
        ProtocolConfig config;
        config.architecture = Architecture::Sequential;
        config.k = k;
        config.marked = bits_of(0, k);
        const GroverTrace trace = grover_search(config, 1);
        ok = ok && trace.cumulative_pulses.back() == 4.0 * k;
    }
    for (int k = 1; k <= 4; ++k) {
        ProtocolConfig config;
        config.architecture = Architecture::Simultaneous;
        config.k = k;
        config.marked = bits_of(0, k);
        const GroverTrace trace = grover_search(config, 1);
        ok = ok && trace.cumulative_pulses.back() == 8.0;
    }
    record(9, "instrumented pulse counts: sequential 4k, simultaneous 8", ok,
           ok ? "exact for k in 1..10 and 1..4" : "MISMATCH", timer.seconds());
}

// 10. And-pair truth table and inverse.
void criterion_and_pair() {
    Timer timer;
    const std::vector<AtomSpec> atoms(2, AtomSpec::tree_ancilla());
    const int want[4][2] = {{0, 0}, {0, 1}, {0, 2}, {1, 1}};
    double worst = 0.0;
    for (int in = 0; in < 4; ++in) {
        RegisterState s = basis_state(atoms, {in >> 1, in & 1});
        and_pair(s, 0, 1);
        worst = std::max(worst,
                         std::abs(s.amp(s.flat_index({want[in][0], want[in][1]})) - Complex{1.0}));
        and_pair_inverse(s, 0, 1);
        worst = std::max(worst, std::abs(s.amp(s.flat_index({in >> 1, in & 1})) - Complex{1.0}));
    }
    record(10, "and-pair truth table and inverse", worst < 1e-12,
           fmt("max amplitude deviation %.2e, tolerance 1e-12", worst), timer.seconds());
}

} // namespace

int main() {
    criterion_oracle();
    criterion_diffusion();
    criterion_equivalence();
    criterion_grover_law();
    criterion_enhancement();
    criterion_error_scaling();
    criterion_table_derived();
    criterion_table_absolute();
    criterion_pulse_counts();
    criterion_and_pair();

    bool all = true;
    for (const Criterion& c : g_results) {
        std::printf("[%s] criterion %2d: %s -- %s (%.2f s)\n", c.pass ? "PASS" : "FAIL", c.number,
                    c.label.c_str(), c.detail.c_str(), c.seconds);
        all = all && c.pass;
    }
    std::printf("%s\n", all ? "acceptance: all criteria passed"
                            : "acceptance: FAILURES present");
    return all ? 0 : 1;
}
