#pragma once

#include <optional>
#include <string>

#include "rydgrover/pulses.hpp"

namespace rydgrover {

enum class Architecture { Sequential, Simultaneous, Subregister };
enum class RunMode { Ideal, Dynamical };

std::string to_string(Architecture arch);
Architecture architecture_from_string(const std::string& s);

// Parameters for dynamical (finite-blockade, decaying) protocol execution.
struct DynamicsParams {
    double omega = 0.0;      // Rabi frequency, rad/s
    double blockade_b = 0.0; // uniform pair shift, rad/s
    double gamma = 0.0;      // Rydberg decay rate, 1/s
};

struct ProtocolConfig {
    Architecture architecture = Architecture::Sequential;
    int k = 1;          // qubit count
    BasisLabel marked;  // k binary digits (x0)
    int n_s = 0;        // sub-register count (subregister only)
    int k_s = 0;        // qubits per sub-register (subregister only)
    RunMode mode = RunMode::Ideal;
    std::optional<DynamicsParams> dynamics;

    void validate() const;
};

// Accumulates pulse-duration units during protocol execution. A single-atom
// pi pulse is one unit; a simultaneous full-register sweep is one unit; a
// 2pi pulse is two units.
struct PulseCounter {
    double units = 0.0;
    void add(double u) { units += u; }
};

// Atom layout for each architecture: sequential uses k qubit atoms;
// simultaneous appends one two-species ancilla; subregister appends n_s
// tree ancillas. Ancillas always follow the register atoms.
std::vector<AtomSpec> register_atoms(const ProtocolConfig& config);

// Uniform superposition over register qubit pairs, ancillas in |0>.
RegisterState initial_state(const ProtocolConfig& config);

// --- Sequential architecture (one atom addressed at a time) ---------------

// Conditional sign: the net map equals 2|x0><x0| - I on the qubit block.
void oracle_sequential(RegisterState& state, const BasisLabel& marked, PulseCounter* counter = nullptr);

// Inversion about the mean: net map equals 2P - I.
void diffusion_sequential(RegisterState& state, PulseCounter* counter = nullptr);

// Test/diagnostic variant with explicit sweep phases and optional same-order
// de-excitation; the production entry point uses phi_rev = phi_fwd and the
// reverse atom order.
void oracle_sequential_with_phases(RegisterState& state, const BasisLabel& marked, double phi_fwd,
                                   double phi_rev, bool reverse_order = true,
                                   PulseCounter* counter = nullptr);
void diffusion_sequential_with_phases(RegisterState& state, double phi_fwd, double phi_rev,
                                      bool reverse_order = true, PulseCounter* counter = nullptr);

// --- Simultaneous two-species architecture --------------------------------

// Requires the simultaneous atom layout (k two-species atoms + ancilla in
// |0>). Net map on the qubit block: -(2|x0><x0| - I).
void oracle_simultaneous(RegisterState& state, const BasisLabel& marked, PulseCounter* counter = nullptr);
void diffusion_simultaneous(RegisterState& state, PulseCounter* counter = nullptr);

// --- Sub-register architecture ---------------------------------------------

// |ctl_level>|a> <-> |ctl_level>|b> with amplitude +1 each way; identity when
// the control atom is not in ctl_level. Ideal-mode effective unitary.
void controlled_transfer(RegisterState& state, int ctl_atom, int ctl_level, int tgt_atom,
                         int a_level, int b_level);

// |00>->|00>, |01>->|01>, |10>->|02>, |11>->|11> on two tree ancillas; the
// first ancilla ends in |1> iff the input was |11>.
void and_pair(RegisterState& state, int first_ancilla, int second_ancilla);
void and_pair_inverse(RegisterState& state, int first_ancilla, int second_ancilla);

enum class StepVariant { Oracle, Diffusion };

// Comparison stage of the sub-register step: register excitation to |s>,
// blockaded ancilla transfers |0>->|r>->|1>, register de-excitation. After
// this each ancilla holds |1> iff its cluster passed the comparison.
void subregister_compare(RegisterState& state, const ProtocolConfig& config, StepVariant variant,
                         const BasisLabel& marked, PulseCounter* counter = nullptr);

// Binary-tree and-pair reduction; afterwards the root ancilla (index k)
// holds the AND of all sub-register comparisons.
void subregister_tree(RegisterState& state, const ProtocolConfig& config,
                      PulseCounter* counter = nullptr);

// compare + tree, and its exact inverse (the inverse ancilla transfer needs
// a live blockade, so the register is re-excited around it).
void subregister_forward(RegisterState& state, const ProtocolConfig& config, StepVariant variant,
                         const BasisLabel& marked, PulseCounter* counter = nullptr);
void subregister_reverse(RegisterState& state, const ProtocolConfig& config, StepVariant variant,
                         const BasisLabel& marked, PulseCounter* counter = nullptr);

// forward + root 2pi + reverse. Net map on the qubit block:
// -(2|x0><x0| - I) for Oracle, -(2P - I) for Diffusion; ancillas end in |0>.
void grover_step_subregister(RegisterState& state, const ProtocolConfig& config, StepVariant variant,
                             PulseCounter* counter = nullptr);

// --- Search loop ------------------------------------------------------------

// Nearest integer to pi/(4 asin(2^{-k/2})) - 1/2.
int auto_iterations(int k);

struct GroverTrace {
    int k = 0;
    BasisLabel marked;
    int iterations = 0;
    std::vector<double> success_prob;      // entry 0 = initial state
    std::vector<double> norm_sq;           // same indexing
    std::vector<double> cumulative_pulses; // pulse-duration units
};

// Prepares the initial state and alternates oracle and diffusion, recording
// |<x0|psi>|^2 per iteration. iterations < 0 selects the auto count.
GroverTrace grover_search(const ProtocolConfig& config, int iterations = -1);

// One oracle+diffusion pair in the configured architecture and mode.
void grover_iteration(RegisterState& state, const ProtocolConfig& config, PulseCounter* counter = nullptr);

} // namespace rydgrover
