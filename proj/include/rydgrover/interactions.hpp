#pragma once

#include <array>
#include <string>

#include "rydgrover/dynamics.hpp"

namespace rydgrover {

// Two-channel pair interaction model. Coefficients are quoted at the
// reference principal quantum number n0 and rescaled as
//   C3(n) = C3 (n/n0)^4,  C6(n) = C6 (n/n0)^11,  delta(n) = delta (n/n0)^-3,
// with tau(n) = tau0 n^3 and an energy scale for the Rydberg level spacing.
struct PairModel {
    std::string name;
    double n0 = 0.0;
    double c3 = 0.0;           // rad/s um^3
    double c6 = 0.0;           // rad/s um^6 (vdW tail, consistent with c3^2/delta)
    double delta = 0.0;        // rad/s Foerster defect; 0 = pure resonant
    double tau0 = 0.0;         // s, lifetime base: tau(n) = tau0 n^3
    double energy_scale = 0.0; // rad/s, Rydberg unit for the level-spacing ceiling
};

double c3_at(const PairModel& model, double n);
double c6_at(const PairModel& model, double n);
double delta_at(const PairModel& model, double n);
double lifetime(const PairModel& model, double n);

// Eigenvalue shift of the two-channel Foerster model with V = C3(n)/R^3:
// |(-delta + sign(delta) sqrt(delta^2 + 4 V^2)) / 2|. Reduces to V for
// delta = 0 and to V^2/delta = C6(n)/R^6 for V << delta.
double pair_shift(const PairModel& model, double n, double r_um);

struct LatticeSpec {
    int side = 0;                 // sqrt(k) atoms per side
    double period = 0.0;          // um
    bool central_ancilla = false; // one site is the blocking ancilla
};

// Row-major grid positions. With central_ancilla the most central site is
// removed from the register list and appended last as the ancilla.
std::vector<std::array<double, 2>> lattice_positions(const LatticeSpec& spec);

// Half the spacing between adjacent Rydberg levels under U(n) = -E/n^2;
// falls off as n^-3.
double blockade_ceiling(const PairModel& model, int n);

enum class SpeciesMode { SingleSpecies, TwoSpecies };

// Pairwise shifts on the lattice. Single-species: every register pair via
// the r-r channel. Two-species: only ancilla-register s-r pairs interact;
// register-register s-s pairs carry ss_shift (0 by default).
InteractionGraph lattice_interaction_graph(const PairModel& model, double n, const LatticeSpec& spec,
                                           SpeciesMode mode, double gamma = 0.0,
                                           double ss_shift = 0.0);

struct LatticeErrorResult {
    double mean_error = 0.0;        // mean over pairs of min_error_formula(B_ij, tau)
    double b_rule_error = 0.0;      // alternative rule: formula applied to the mean B
    bool ceiling_violated = false;  // max shift above the level-spacing ceiling
    double max_shift = 0.0;
    double min_shift = 0.0;
    double ceiling = 0.0;
    int pair_count = 0;
};

// Lattice average of the per-pair minimum gate error. The per-pair-error
// average is the reported value; the apply-formula-to-mean-B alternative is
// carried along for comparison.
LatticeErrorResult lattice_average_error(const PairModel& model, double n, const LatticeSpec& spec,
                                         double tau, SpeciesMode mode = SpeciesMode::SingleSpecies);

// Shipped presets (tuned, order-of-magnitude species models).
PairModel cs_like();
PairModel rb_like();
PairModel cs_two_species();

} // namespace rydgrover
