#pragma once

#include <cstdint>
#include <memory>
#include <numbers>
#include <span>

#include "rydgrover/pulses.hpp"

namespace rydgrover {

// One pairwise blockade shift entry: the doubly-excited component with
// atom_a in level_a and atom_b in level_b is shifted by sign * magnitude.
struct PairShift {
    int atom_a = 0;
    int atom_b = 0;
    int level_a = 0;
    int level_b = 0;
    double magnitude = 0.0; // rad/s, >= 0
    int sign = 1;
};

// Decay attaches to a level role so heterogeneous registers share one table.
struct LevelDecay {
    LevelRole role = LevelRole::RydR;
    double gamma = 0.0; // 1/s
};

struct InteractionGraph {
    std::vector<PairShift> shifts;
    std::vector<LevelDecay> decay;

    double shift_between(int atom_a, int level_a, int atom_b, int level_b) const;
    void validate(const std::vector<AtomSpec>& atoms) const;
};

// All-pairs graph with a single shift on the given Rydberg role.
InteractionGraph uniform_graph(const std::vector<AtomSpec>& atoms, LevelRole role, double shift,
                               double gamma);

struct DriveTerm {
    int atom = 0;
    bool bright = false; // drive (|a> - |b>)/sqrt(2) instead of a bare level
    int a_level = 0;     // bare: the driven ground level; bright: first of the pair
    int b_level = -1;    // bright only: second of the pair
    int to_level = 0;    // Rydberg level
    double rabi = 0.0;   // rad/s
    double phase = 0.0;
};

struct DriveSpec {
    std::vector<DriveTerm> terms;
};

// Time evolution under
//   H = sum_i (rabi/2)(e^{i phi}|a><r| + h.c.)_i
//     + sum_{i<j} B_ij |r_i r_j><r_i r_j|
//     - (i/2) sum_i gamma * P_ryd,i
// Exact eigendecomposition up to dimension 256; adaptive embedded
// Runge-Kutta with relative tolerance 1e-10 above that. The norm decrease
// equals the accumulated spontaneous-emission probability.
class Propagator {
  public:
    Propagator(std::vector<AtomSpec> atoms, const DriveSpec& drive, const InteractionGraph& graph);
    ~Propagator();
    Propagator(Propagator&&) noexcept;
    Propagator& operator=(Propagator&&) noexcept;

    void advance(RegisterState& state, double dt) const;

    // Force the adaptive integrator even below the dense-path limit (used to
    // cross-check the two paths against each other).
    void force_integrator(bool on);

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

void evolve(RegisterState& state, const DriveSpec& drive, const InteractionGraph& graph,
            double duration);

// --- Collective excitation enhancement --------------------------------------

struct EnhancementResult {
    double ratio = 0.0; // extracted oscillation frequency / rabi
    bool weak_blockade_warning = false;
};

// Drives m mutually blockaded atoms from the ground state and extracts the
// dominant oscillation frequency of the ground-state population from the
// discrete spectrum. Under full blockade the ratio approaches sqrt(m).
EnhancementResult collective_enhancement(int m, double rabi, double blockade_b);

// --- Gate-error studies -------------------------------------------------------

struct FragmentStep {
    enum class Kind { Pulse, PairBright, Dwell };
    Kind kind = Kind::Pulse;
    PulseSpec pulse; // Kind::Pulse

    // Kind::PairBright: pulse on the generalized bright state
    // (|a> - |b>)/sqrt(2) of an arbitrary level pair.
    int atom = 0;
    int a_level = 0, b_level = 0, ryd_level = 0;
    double angle = 0.0, phase = 0.0;
    std::optional<BlockadeCondition> blockade;

    // Kind::Dwell: free evolution. In ideal mode the listed doubly-excited
    // component acquires exp(i * dwell_phase); dynamically the duration is
    // |dwell_phase| / B_ab from the graph.
    int dwell_atom_a = 0, dwell_atom_b = 0;
    int dwell_level_a = 0, dwell_level_b = 0;
    double dwell_phase = -std::numbers::pi;
};

struct Fragment {
    std::vector<AtomSpec> atoms;
    std::vector<FragmentStep> steps;
};

// Standard two-atom controlled-phase fragment: pi on the control (1 -> r),
// 2pi on the target (1 -> r) under blockade, pi back on the control.
Fragment controlled_phase_fragment();

// The sequential conditional-sign step on k qubit atoms as a pulse fragment
// (forward and reverse pi-pulse sweeps with cumulative blockade).
Fragment sequential_oracle_fragment(int k, const BasisLabel& marked);

// Controlled state transfer realized dynamically: control excitation, bright
// (a,b) excitation on the target, Rydberg dwell pi/dE_rr, inverse pulses.
Fragment controlled_transfer_fragment(const std::vector<AtomSpec>& atoms, int ctl_atom,
                                      int ctl_level, int tgt_atom, int a_level, int b_level);

RegisterState run_ideal(const Fragment& fragment, RegisterState state);
RegisterState run_dynamical(const Fragment& fragment, const InteractionGraph& graph, double omega,
                            RegisterState state);

std::vector<RegisterState> qubit_basis_inputs(const std::vector<AtomSpec>& atoms);
std::vector<RegisterState> random_qubit_inputs(const std::vector<AtomSpec>& atoms, int count,
                                               std::uint64_t seed);

// Mean over the inputs of
//   1 - fidelity_mod_phase(dynamical, ideal) + (1 - |dynamical|^2),
// i.e. misdirection within the surviving norm plus scattered population.
double gate_error(const Fragment& fragment, const InteractionGraph& graph, double omega,
                  std::span<const RegisterState> inputs);

// (7 pi)^{1/3} B^{2/3} / tau^{1/3}
double optimal_rabi(double blockade_b, double tau);

// (3 (7 pi)^{2/3} / 8) (B tau)^{-2/3}
double min_error_formula(double blockade_b, double tau);

// --- Controlled-phase error vs blockade strength ----------------------------

// On a lattice the pair shift varies from pair to pair, so the error study
// averages the two-atom gate error over a spread of shifts around the
// nominal value; this also removes commensurability artifacts of the
// blocked 2pi pulse at isolated shift/rabi ratios.
struct ControlledPhaseStudy {
    double b_spread = 0.3; // relative half-width of the shift average
    int b_samples = 24;
    int omega_points = 40; // coarse log grid before refinement
};

double controlled_phase_error(double blockade_b, double tau, double omega,
                              const ControlledPhaseStudy& study = {});

struct ControlledPhaseMinimum {
    double omega_min = 0.0;
    double error_min = 0.0;
    double omega_opt_formula = 0.0;
    double error_formula = 0.0;
};

ControlledPhaseMinimum minimize_controlled_phase_error(double blockade_b, double tau,
                                                       const ControlledPhaseStudy& study = {});

// Empirical prefactor c(k) of the conditional-sign step: the drive-minimized
// k-atom step error divided by (B tau)^{-2/3}, measured over all basis
// inputs with the same shift-spread averaging as the two-atom study.
double empirical_step_prefactor(int k, double b_tau, const ControlledPhaseStudy& study = {});

} // namespace rydgrover
