#include "rydgrover/protocols.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "rydgrover/dynamics.hpp"

namespace rydgrover {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kRydbergPopulationTol = 1e-9;

// Ancilla Raman transfer phases: two pi pulses with phi1 - phi2 = pi land
// |0> -> |1> with amplitude +1.
constexpr double kTransferPhi1 = kPi;
constexpr double kTransferPhi2 = 0.0;

double total_rydberg_population(const RegisterState& state) {
    double pop = 0.0;
    for (int a = 0; a < state.num_atoms(); ++a) {
        const AtomSpec& spec = state.atoms()[static_cast<std::size_t>(a)];
        for (const LevelRole role : {LevelRole::RydS, LevelRole::RydR}) {
            const int lvl = spec.level(role);
            if (lvl >= 0) pop += marginal_population(state, a, lvl);
        }
    }
    return pop;
}

void require_no_rydberg_population(const RegisterState& state, const char* who) {
    if (total_rydberg_population(state) > kRydbergPopulationTol)
        throw std::invalid_argument(std::string(who) + ": pre-existing Rydberg population");
}

void check_marked(const BasisLabel& marked, int k) {
    if (static_cast<int>(marked.size()) != k)
        throw std::invalid_argument("marked element needs exactly k binary digits");
    for (const int b : marked)
        if (b != 0 && b != 1) throw std::invalid_argument("marked element digits must be 0 or 1");
}

// Blocking set for the sequential sweeps: lower-indexed atoms only (the only
// atoms that can hold an excitation at that point), all Rydberg roles.
BlockadeCondition lower_atom_blockade(const RegisterState& state, int atom) {
    BlockadeCondition cond;
    for (int a = 0; a < atom; ++a) cond.atoms.push_back(a);
    const AtomSpec& spec = state.atoms().front();
    for (const LevelRole role : {LevelRole::RydS, LevelRole::RydR}) {
        const int lvl = spec.level(role);
        if (lvl >= 0) cond.levels.push_back(lvl);
    }
    return cond;
}
} // namespace

std::string to_string(Architecture arch) {
    switch (arch) {
        case Architecture::Sequential: return "sequential";
        case Architecture::Simultaneous: return "simultaneous";
        case Architecture::Subregister: return "subregister";
    }
    return "unknown";
}

Architecture architecture_from_string(const std::string& s) {
    if (s == "sequential") return Architecture::Sequential;
    if (s == "simultaneous") return Architecture::Simultaneous;
    if (s == "subregister") return Architecture::Subregister;
    throw std::invalid_argument("unknown architecture: " + s);
}

void ProtocolConfig::validate() const {
    if (k < 1) throw std::invalid_argument("ProtocolConfig: k must be >= 1");
    check_marked(marked, k);
    if (architecture == Architecture::Subregister) {
        if (n_s < 2) throw std::invalid_argument("ProtocolConfig: subregister needs n_s >= 2");
        if (k_s < 1 || n_s * k_s != k)
            throw std::invalid_argument("ProtocolConfig: partition must satisfy k = n_s * k_s");
    }
    if (mode == RunMode::Dynamical) {
        if (!dynamics) throw std::invalid_argument("ProtocolConfig: dynamical mode needs parameters");
        if (dynamics->omega <= 0.0 || dynamics->blockade_b < 0.0 || dynamics->gamma < 0.0)
            throw std::invalid_argument("ProtocolConfig: bad dynamical parameters");
        if (architecture == Architecture::Subregister)
            throw std::invalid_argument(
                "ProtocolConfig: dynamical execution covers the sequential and simultaneous "
                "architectures; sub-register interaction gates are studied as fragments");
    }
}

std::vector<AtomSpec> register_atoms(const ProtocolConfig& config) {
    std::vector<AtomSpec> atoms;
    switch (config.architecture) {
        case Architecture::Sequential:
            atoms.assign(static_cast<std::size_t>(config.k), AtomSpec::qubit());
            break;
        case Architecture::Simultaneous:
            atoms.assign(static_cast<std::size_t>(config.k) + 1, AtomSpec::two_species());
            break;
        case Architecture::Subregister:
            atoms.assign(static_cast<std::size_t>(config.k), AtomSpec::two_species());
            for (int i = 0; i < config.n_s; ++i) atoms.push_back(AtomSpec::tree_ancilla());
            break;
    }
    return atoms;
}

RegisterState initial_state(const ProtocolConfig& config) {
    config.validate();
    const std::vector<AtomSpec> atoms = register_atoms(config);
    std::vector<std::vector<Complex>> per_atom;
    per_atom.reserve(atoms.size());
    const double amp = 1.0 / std::sqrt(2.0);
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        std::vector<Complex> v(static_cast<std::size_t>(atoms[i].num_levels), Complex{});
        if (static_cast<int>(i) < config.k) {
            v[static_cast<std::size_t>(atoms[i].level(LevelRole::Ground0))] = amp;
            v[static_cast<std::size_t>(atoms[i].level(LevelRole::Ground1))] = amp;
        } else {
            v[static_cast<std::size_t>(atoms[i].level(LevelRole::Ground0))] = 1.0;
        }
        per_atom.push_back(std::move(v));
    }
    return product_state(atoms, per_atom);
}

// ---------------------------------------------------------------------------
// Sequential architecture

void oracle_sequential_with_phases(RegisterState& state, const BasisLabel& marked, double phi_fwd,
                                   double phi_rev, bool reverse_order, PulseCounter* counter) {
    const int k = state.num_atoms();
    check_marked(marked, k);
    require_no_rydberg_population(state, "oracle_sequential");

    auto one_pulse = [&](int atom, double phi) {
        const AtomSpec& spec = state.atoms()[static_cast<std::size_t>(atom)];
        const int from = marked[static_cast<std::size_t>(atom)] == 0 ? spec.level(LevelRole::Ground1)
                                                                     : spec.level(LevelRole::Ground0);
        const BlockadeCondition cond = lower_atom_blockade(state, atom);
        pi_pulse(state, atom, from, spec.level(LevelRole::RydR), phi, cond.atoms.empty() ? nullptr : &cond);
        if (counter != nullptr) counter->add(1.0);
    };

    for (int atom = 0; atom < k; ++atom) one_pulse(atom, phi_fwd);
    if (reverse_order)
        for (int atom = k - 1; atom >= 0; --atom) one_pulse(atom, phi_rev);
    else
        for (int atom = 0; atom < k; ++atom) one_pulse(atom, phi_rev);
}

void oracle_sequential(RegisterState& state, const BasisLabel& marked, PulseCounter* counter) {
    oracle_sequential_with_phases(state, marked, 0.0, 0.0, true, counter);
}

void diffusion_sequential_with_phases(RegisterState& state, double phi_fwd, double phi_rev,
                                      bool reverse_order, PulseCounter* counter) {
    const int k = state.num_atoms();
    require_no_rydberg_population(state, "diffusion_sequential");

    auto one_pulse = [&](int atom, double phi) {
        const AtomSpec& spec = state.atoms()[static_cast<std::size_t>(atom)];
        const BlockadeCondition cond = lower_atom_blockade(state, atom);
        bright_pulse(state, atom, kPi, phi, spec.level(LevelRole::RydR),
                     cond.atoms.empty() ? nullptr : &cond);
        if (counter != nullptr) counter->add(1.0);
    };

    for (int atom = 0; atom < k; ++atom) one_pulse(atom, phi_fwd);
    if (reverse_order)
        for (int atom = k - 1; atom >= 0; --atom) one_pulse(atom, phi_rev);
    else
        for (int atom = 0; atom < k; ++atom) one_pulse(atom, phi_rev);
}

void diffusion_sequential(RegisterState& state, PulseCounter* counter) {
    diffusion_sequential_with_phases(state, 0.0, 0.0, true, counter);
}

// ---------------------------------------------------------------------------
// Simultaneous two-species architecture

namespace {

void check_simultaneous_layout(const RegisterState& state, const char* who) {
    for (const AtomSpec& spec : state.atoms())
        if (!spec.has(LevelRole::RydS) || !spec.has(LevelRole::RydR))
            throw std::invalid_argument(std::string(who) + ": needs the two-species atom layout");
}

void check_ancilla_ground(const RegisterState& state, int ancilla, const char* who) {
    const AtomSpec& spec = state.atoms()[static_cast<std::size_t>(ancilla)];
    const double pop = marginal_population(state, ancilla, spec.level(LevelRole::Ground0));
    if (std::abs(pop - state.norm_sq()) > kRydbergPopulationTol)
        throw std::invalid_argument(std::string(who) + ": ancilla not in |0>");
}

BlockadeCondition any_register_in_s(const RegisterState& state, int k) {
    BlockadeCondition cond;
    for (int a = 0; a < k; ++a) cond.atoms.push_back(a);
    cond.levels.push_back(state.atoms().front().level(LevelRole::RydS));
    return cond;
}

// Simultaneous register sweep: unblockaded pulses on every register atom,
// counted as a single pulse duration.
void simultaneous_sweep(RegisterState& state, int k, const BasisLabel* marked, double phi,
                        PulseCounter* counter) {
    for (int atom = 0; atom < k; ++atom) {
        const AtomSpec& spec = state.atoms()[static_cast<std::size_t>(atom)];
        const int s_level = spec.level(LevelRole::RydS);
        if (marked != nullptr) {
            const int from = (*marked)[static_cast<std::size_t>(atom)] == 0
                                 ? spec.level(LevelRole::Ground1)
                                 : spec.level(LevelRole::Ground0);
            pi_pulse(state, atom, from, s_level, phi);
        } else {
            bright_pulse(state, atom, kPi, phi, s_level);
        }
    }
    if (counter != nullptr) counter->add(1.0);
}

void simultaneous_step(RegisterState& state, const BasisLabel* marked, PulseCounter* counter,
                       const char* who) {
    check_simultaneous_layout(state, who);
    const int k = state.num_atoms() - 1;
    if (k < 1) throw std::invalid_argument(std::string(who) + ": needs at least one register atom");
    if (marked != nullptr) check_marked(*marked, k);
    const int ancilla = k;
    check_ancilla_ground(state, ancilla, who);
    require_no_rydberg_population(state, who);

    const AtomSpec& aspec = state.atoms()[static_cast<std::size_t>(ancilla)];

    simultaneous_sweep(state, k, marked, 0.0, counter);

    const BlockadeCondition cond = any_register_in_s(state, k);
    two_pi_pulse(state, ancilla, aspec.level(LevelRole::Ground0), aspec.level(LevelRole::RydR), 0.0,
                 &cond);
    if (counter != nullptr) counter->add(2.0);

    // De-excite with opposite sign so the sweeps contribute no net phase.
    simultaneous_sweep(state, k, marked, kPi, counter);
}

} // namespace

void oracle_simultaneous(RegisterState& state, const BasisLabel& marked, PulseCounter* counter) {
    simultaneous_step(state, &marked, counter, "oracle_simultaneous");
}

void diffusion_simultaneous(RegisterState& state, PulseCounter* counter) {
    simultaneous_step(state, nullptr, counter, "diffusion_simultaneous");
}

// ---------------------------------------------------------------------------
// Sub-register architecture

void controlled_transfer(RegisterState& state, int ctl_atom, int ctl_level, int tgt_atom,
                         int a_level, int b_level) {
    if (ctl_atom == tgt_atom) throw std::invalid_argument("controlled_transfer: overlapping atoms");
    const AtomSpec& cspec = state.atoms().at(static_cast<std::size_t>(ctl_atom));
    if (ctl_level < 0 || ctl_level >= cspec.num_levels)
        throw std::invalid_argument("controlled_transfer: bad control level");

    // Swap block on (a,b) of the target, applied only when the control atom
    // occupies ctl_level: block on every other control level.
    CMatrix swap(2, 2);
    swap(0, 1) = 1.0;
    swap(1, 0) = 1.0;
    BlockadeCondition cond;
    cond.atoms.push_back(ctl_atom);
    for (int lvl = 0; lvl < cspec.num_levels; ++lvl)
        if (lvl != ctl_level) cond.levels.push_back(lvl);
    const std::array<int, 2> levels{a_level, b_level};
    apply_block_unitary(state, tgt_atom, swap, levels, &cond);
}

void and_pair(RegisterState& state, int first_ancilla, int second_ancilla) {
    const AtomSpec& a = state.atoms().at(static_cast<std::size_t>(first_ancilla));
    const AtomSpec& b = state.atoms().at(static_cast<std::size_t>(second_ancilla));
    if (!a.has(LevelRole::Logical2) || !b.has(LevelRole::Logical2))
        throw std::invalid_argument("and_pair: ancillas need the |2> level");
    const int g0 = a.level(LevelRole::Ground0);
    const int g1 = a.level(LevelRole::Ground1);
    const int l2 = a.level(LevelRole::Logical2);
    // |10> -> |12> -> |02>
    controlled_transfer(state, first_ancilla, g1, second_ancilla, g0, l2);
    controlled_transfer(state, second_ancilla, l2, first_ancilla, g1, g0);
}

void and_pair_inverse(RegisterState& state, int first_ancilla, int second_ancilla) {
    const AtomSpec& a = state.atoms().at(static_cast<std::size_t>(first_ancilla));
    const int g0 = a.level(LevelRole::Ground0);
    const int g1 = a.level(LevelRole::Ground1);
    const int l2 = a.level(LevelRole::Logical2);
    controlled_transfer(state, second_ancilla, l2, first_ancilla, g1, g0);
    controlled_transfer(state, first_ancilla, g1, second_ancilla, g0, l2);
}

namespace {

// Binary-tree pairing by index adjacency; an odd survivor is promoted
// unchanged (equivalent to a virtual partner fixed in |1>).
std::vector<std::pair<int, int>> tree_pairs(int k, int n_s) {
    std::vector<int> active(static_cast<std::size_t>(n_s));
    for (int i = 0; i < n_s; ++i) active[static_cast<std::size_t>(i)] = k + i;
    std::vector<std::pair<int, int>> pairs;
    while (active.size() > 1) {
        std::vector<int> next;
        for (std::size_t i = 0; i + 1 < active.size(); i += 2) {
            pairs.emplace_back(active[i], active[i + 1]);
            next.push_back(active[i]);
        }
        if (active.size() % 2 == 1) next.push_back(active.back());
        active = std::move(next);
    }
    return pairs;
}

void subregister_sweep(RegisterState& state, const ProtocolConfig& config, StepVariant variant,
                       const BasisLabel& marked, double phi, PulseCounter* counter) {
    for (int atom = 0; atom < config.k; ++atom) {
        const AtomSpec& spec = state.atoms()[static_cast<std::size_t>(atom)];
        const int s_level = spec.level(LevelRole::RydS);
        if (variant == StepVariant::Oracle) {
            const int from = marked[static_cast<std::size_t>(atom)] == 0
                                 ? spec.level(LevelRole::Ground1)
                                 : spec.level(LevelRole::Ground0);
            pi_pulse(state, atom, from, s_level, phi);
        } else {
            bright_pulse(state, atom, kPi, phi, s_level);
        }
    }
    if (counter != nullptr) counter->add(1.0);
}

BlockadeCondition subregister_blockade(const ProtocolConfig& config, const RegisterState& state,
                                       int sub) {
    BlockadeCondition cond;
    for (int q = sub * config.k_s; q < (sub + 1) * config.k_s; ++q) cond.atoms.push_back(q);
    cond.levels.push_back(state.atoms().front().level(LevelRole::RydS));
    return cond;
}

// Blockade-conditioned Raman transfer |0> -> |r> -> |1> on every ancilla,
// all sub-registers in parallel (two pulse durations total).
void ancilla_transfers(RegisterState& state, const ProtocolConfig& config, bool inverse,
                       PulseCounter* counter) {
    for (int sub = 0; sub < config.n_s; ++sub) {
        const int anc = config.k + sub;
        const AtomSpec& spec = state.atoms()[static_cast<std::size_t>(anc)];
        const int g0 = spec.level(LevelRole::Ground0);
        const int g1 = spec.level(LevelRole::Ground1);
        const int r = spec.level(LevelRole::RydR);
        const BlockadeCondition cond = subregister_blockade(config, state, sub);
        if (!inverse) {
            pi_pulse(state, anc, g0, r, kTransferPhi1, &cond);
            pi_pulse(state, anc, g1, r, kTransferPhi2, &cond);
        } else {
            pi_pulse(state, anc, g1, r, kTransferPhi2 + kPi, &cond);
            pi_pulse(state, anc, g0, r, kTransferPhi1 + kPi, &cond);
        }
    }
    if (counter != nullptr) counter->add(2.0);
}

} // namespace

void subregister_compare(RegisterState& state, const ProtocolConfig& config, StepVariant variant,
                         const BasisLabel& marked, PulseCounter* counter) {
    subregister_sweep(state, config, variant, marked, 0.0, counter);
    ancilla_transfers(state, config, false, counter);
    subregister_sweep(state, config, variant, marked, kPi, counter);
}

void subregister_tree(RegisterState& state, const ProtocolConfig& config, PulseCounter* counter) {
    for (const auto& [first, second] : tree_pairs(config.k, config.n_s)) {
        and_pair(state, first, second);
        if (counter != nullptr) counter->add(8.0);
    }
}

void subregister_forward(RegisterState& state, const ProtocolConfig& config, StepVariant variant,
                         const BasisLabel& marked, PulseCounter* counter) {
    subregister_compare(state, config, variant, marked, counter);
    subregister_tree(state, config, counter);
}

void subregister_reverse(RegisterState& state, const ProtocolConfig& config, StepVariant variant,
                         const BasisLabel& marked, PulseCounter* counter) {
    const auto pairs = tree_pairs(config.k, config.n_s);
    for (auto it = pairs.rbegin(); it != pairs.rend(); ++it) {
        and_pair_inverse(state, it->first, it->second);
        if (counter != nullptr) counter->add(8.0);
    }
    // The ancilla transfer can only be undone under a live blockade, so the
    // register is re-excited around the inverse transfer.
    subregister_sweep(state, config, variant, marked, 0.0, counter);
    ancilla_transfers(state, config, true, counter);
    subregister_sweep(state, config, variant, marked, kPi, counter);
}

void grover_step_subregister(RegisterState& state, const ProtocolConfig& config, StepVariant variant,
                             PulseCounter* counter) {
    config.validate();
    if (config.architecture != Architecture::Subregister)
        throw std::invalid_argument("grover_step_subregister: config is not sub-register");
    if (state.num_atoms() != config.k + config.n_s)
        throw std::invalid_argument("grover_step_subregister: state does not match the partition");
    for (int sub = 0; sub < config.n_s; ++sub)
        check_ancilla_ground(state, config.k + sub, "grover_step_subregister");
    require_no_rydberg_population(state, "grover_step_subregister");

    subregister_forward(state, config, variant, config.marked, counter);

    // Conditional phase on the root witness: 2pi on |1> -> |r>.
    const int root = config.k;
    const AtomSpec& spec = state.atoms()[static_cast<std::size_t>(root)];
    two_pi_pulse(state, root, spec.level(LevelRole::Ground1), spec.level(LevelRole::RydR), 0.0);
    if (counter != nullptr) counter->add(2.0);

    subregister_reverse(state, config, variant, config.marked, counter);
}

// ---------------------------------------------------------------------------
// Search loop

int auto_iterations(int k) {
    if (k < 1) throw std::invalid_argument("auto_iterations: k must be >= 1");
    const double theta = std::asin(std::pow(2.0, -0.5 * k));
    return static_cast<int>(std::lround(kPi / (4.0 * theta) - 0.5));
}

namespace {

// Dynamical (finite-blockade) execution of the sequential and simultaneous
// iterations: every ideal pulse becomes a resonant drive of area/omega
// duration and the blockade is carried by the interaction graph.
struct DynamicalExecutor {
    const ProtocolConfig& config;
    InteractionGraph graph;

    explicit DynamicalExecutor(const ProtocolConfig& cfg, const std::vector<AtomSpec>& atoms)
        : config(cfg) {
        const DynamicsParams& p = *cfg.dynamics;
        if (cfg.architecture == Architecture::Sequential) {
            graph = uniform_graph(atoms, LevelRole::RydR, p.blockade_b, p.gamma);
        } else {
            // Two-species: only ancilla (r) to register (s) pairs interact.
            const int k = cfg.k;
            const int s_level = atoms.front().level(LevelRole::RydS);
            const int r_level = atoms.front().level(LevelRole::RydR);
            for (int q = 0; q < k; ++q) graph.shifts.push_back({q, k, s_level, r_level, p.blockade_b, 1});
            if (p.gamma > 0.0) {
                graph.decay.push_back({LevelRole::RydS, p.gamma});
                graph.decay.push_back({LevelRole::RydR, p.gamma});
            }
        }
    }

    void drive(RegisterState& state, const std::vector<DriveTerm>& terms, double area) const {
        DriveSpec spec;
        spec.terms = terms;
        evolve(state, spec, graph, area / config.dynamics->omega);
    }

    void run_iteration(RegisterState& state, PulseCounter* counter) const {
        if (config.architecture == Architecture::Sequential) {
            auto sweep = [&](bool oracle, double phi, bool reverse) {
                for (int i = 0; i < config.k; ++i) {
                    const int atom = reverse ? config.k - 1 - i : i;
                    const AtomSpec& spec = state.atoms()[static_cast<std::size_t>(atom)];
                    const int ryd = spec.level(LevelRole::RydR);
                    DriveTerm t;
                    if (oracle) {
                        const int from = config.marked[static_cast<std::size_t>(atom)] == 0
                                             ? spec.level(LevelRole::Ground1)
                                             : spec.level(LevelRole::Ground0);
                        t = {atom, false, from, -1, ryd, config.dynamics->omega, phi};
                    } else {
                        t = {atom, true, spec.level(LevelRole::Ground0), spec.level(LevelRole::Ground1),
                             ryd, config.dynamics->omega, phi};
                    }
                    drive(state, {t}, kPi);
                    if (counter != nullptr) counter->add(1.0);
                }
            };
            sweep(true, 0.0, false);
            sweep(true, 0.0, true);
            sweep(false, 0.0, false);
            sweep(false, 0.0, true);
        } else {
            const int k = config.k;
            const int ancilla = k;
            const AtomSpec& aspec = state.atoms()[static_cast<std::size_t>(ancilla)];
            auto sweep = [&](bool oracle, double phi) {
                std::vector<DriveTerm> terms;
                for (int atom = 0; atom < k; ++atom) {
                    const AtomSpec& spec = state.atoms()[static_cast<std::size_t>(atom)];
                    const int s_level = spec.level(LevelRole::RydS);
                    if (oracle) {
                        const int from = config.marked[static_cast<std::size_t>(atom)] == 0
                                             ? spec.level(LevelRole::Ground1)
                                             : spec.level(LevelRole::Ground0);
                        terms.push_back({atom, false, from, -1, s_level, config.dynamics->omega, phi});
                    } else {
                        terms.push_back({atom, true, spec.level(LevelRole::Ground0),
                                         spec.level(LevelRole::Ground1), s_level,
                                         config.dynamics->omega, phi});
                    }
                }
                drive(state, terms, kPi);
                if (counter != nullptr) counter->add(1.0);
            };
            auto ancilla_two_pi = [&] {
                DriveTerm t{ancilla, false, aspec.level(LevelRole::Ground0), -1,
                            aspec.level(LevelRole::RydR), config.dynamics->omega, 0.0};
                drive(state, {t}, 2.0 * kPi);
                if (counter != nullptr) counter->add(2.0);
            };
            for (const bool oracle : {true, false}) {
                sweep(oracle, 0.0);
                ancilla_two_pi();
                sweep(oracle, kPi);
            }
        }
    }
};

} // namespace

void grover_iteration(RegisterState& state, const ProtocolConfig& config, PulseCounter* counter) {
    if (config.mode == RunMode::Dynamical) {
        DynamicalExecutor exec(config, state.atoms());
        exec.run_iteration(state, counter);
        return;
    }
    switch (config.architecture) {
        case Architecture::Sequential:
            oracle_sequential(state, config.marked, counter);
            diffusion_sequential(state, counter);
            break;
        case Architecture::Simultaneous:
            oracle_simultaneous(state, config.marked, counter);
            diffusion_simultaneous(state, counter);
            break;
        case Architecture::Subregister:
            grover_step_subregister(state, config, StepVariant::Oracle, counter);
            grover_step_subregister(state, config, StepVariant::Diffusion, counter);
            break;
    }
}

GroverTrace grover_search(const ProtocolConfig& config, int iterations) {
    config.validate();
    const int m = iterations < 0 ? auto_iterations(config.k) : iterations;

    RegisterState state = initial_state(config);

    BasisLabel target(static_cast<std::size_t>(state.num_atoms()), 0);
    for (int i = 0; i < config.k; ++i) {
        const AtomSpec& spec = state.atoms()[static_cast<std::size_t>(i)];
        target[static_cast<std::size_t>(i)] = config.marked[static_cast<std::size_t>(i)] == 0
                                                  ? spec.level(LevelRole::Ground0)
                                                  : spec.level(LevelRole::Ground1);
    }
    for (int i = config.k; i < state.num_atoms(); ++i)
        target[static_cast<std::size_t>(i)] =
            state.atoms()[static_cast<std::size_t>(i)].level(LevelRole::Ground0);
    const std::size_t target_idx = state.flat_index(target);

    GroverTrace trace;
    trace.k = config.k;
    trace.marked = config.marked;
    trace.iterations = m;

    PulseCounter counter;
    trace.success_prob.push_back(std::norm(state.amp(target_idx)));
    trace.norm_sq.push_back(state.norm_sq());
    trace.cumulative_pulses.push_back(0.0);

    for (int it = 0; it < m; ++it) {
        grover_iteration(state, config, &counter);
        trace.success_prob.push_back(std::norm(state.amp(target_idx)));
        trace.norm_sq.push_back(state.norm_sq());
        trace.cumulative_pulses.push_back(counter.units);
    }
    return trace;
}

} // namespace rydgrover
