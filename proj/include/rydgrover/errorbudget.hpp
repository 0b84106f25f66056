#pragma once

#include <functional>
#include <optional>
#include <string>

#include "rydgrover/interactions.hpp"
#include "rydgrover/protocols.hpp"

namespace rydgrover {

// N^{-1/4}: the per-step oracle phase error below which the quadratic
// search speedup survives.
double shenvi_threshold(double n_elements);

// E_sr = n_s E(k_s) + (n_s - 1) E_a
double subregister_error(int n_s, int k_s, const std::function<double(int)>& e_of_k, double e_a);

// Pulse-duration units per Grover iteration (oracle + diffusion):
//   sequential   -> 4k single-atom pi pulses
//   simultaneous -> 8 (each register sweep is one duration, each 2pi is two)
//   subregister  -> 32 n_s - 12 (sweeps, parallel ancilla transfers, 8 units
//                   per and-pair, root 2pi, full reversal)
double pulse_count(Architecture architecture, int k, int n_s = 0);

enum class Verdict { FullQuadratic, Degraded };

// Boundary inclusive: E equal to the threshold still counts as quadratic.
Verdict speedup_verdict(double e_step, double n_elements);

std::string to_string(Verdict v);

// Two-significant-digit display in the ".074" style.
std::string format_two_sig(double v);

struct ErrorBudget {
    std::string architecture;
    double n_elements = 0.0;
    double e_step = 0.0;
    double blockade_component = 0.0;
    double emission_component = 0.0;
    double ancilla_component = 0.0;
    double pulses_per_iteration = 0.0;
    double threshold = 0.0;
    Verdict verdict = Verdict::Degraded;
};

struct TableCell {
    double printed = 0.0;             // value from the published comparison table
    std::optional<double> model;      // this artifact's estimate, when computable
    std::string note;
    bool agree = false;               // model within the order-of-magnitude band
};

struct TableRow {
    double n_elements = 0.0;
    int k = 0;            // register qubits (sequential rows)
    int k_minus_1 = 0;    // register atoms around the ancilla (simultaneous rows)
    std::optional<TableCell> sequential;
    std::optional<TableCell> simultaneous;
    std::optional<TableCell> subregister; // printed/composed value with E_a = 0
    double subregister_with_ea = 0.0;     // same cell with the supplied E_a
    int sub_ks = 0, sub_ns = 0;
    double threshold = 0.0;
    std::string threshold_display;
};

struct TableReport {
    std::vector<TableRow> rows;
    std::vector<ErrorBudget> budgets;
    double e_a = 0.0;
    double lattice_d = 0.0;
    std::string text() const;
};

// Recomputes the error-comparison table: the Shenvi column and sub-register
// compositions exactly, the absolute cells from the lattice models with an
// order-of-magnitude agreement band [0.4x, 10x].
TableReport table_report(const PairModel& single_species, const PairModel& two_species, double d_um,
                         double e_a);

inline constexpr double kAgreementBandLow = 0.4;
inline constexpr double kAgreementBandHigh = 10.0;

} // namespace rydgrover
