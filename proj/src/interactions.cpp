#include "rydgrover/interactions.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace rydgrover {

double c3_at(const PairModel& model, double n) { return model.c3 * std::pow(n / model.n0, 4.0); }

double c6_at(const PairModel& model, double n) { return model.c6 * std::pow(n / model.n0, 11.0); }

double delta_at(const PairModel& model, double n) {
    return model.delta * std::pow(n / model.n0, -3.0);
}

double lifetime(const PairModel& model, double n) { return model.tau0 * n * n * n; }

double pair_shift(const PairModel& model, double n, double r_um) {
    if (r_um <= 0.0) throw std::invalid_argument("pair_shift: separation must be positive");
    const double v = c3_at(model, n) / (r_um * r_um * r_um);
    const double d = delta_at(model, n);
    if (d == 0.0) return std::abs(v);
    const double sign = d > 0.0 ? 1.0 : -1.0;
    return std::abs((-d + sign * std::sqrt(d * d + 4.0 * v * v)) / 2.0);
}

std::vector<std::array<double, 2>> lattice_positions(const LatticeSpec& spec) {
    if (spec.side < 1 || spec.period <= 0.0)
        throw std::invalid_argument("lattice_positions: bad lattice spec");
    const int c = (spec.side - 1) / 2; // most central site (exact for odd sides)
    std::vector<std::array<double, 2>> registers;
    std::array<double, 2> ancilla{};
    for (int row = 0; row < spec.side; ++row)
        for (int col = 0; col < spec.side; ++col) {
            const std::array<double, 2> p{col * spec.period, row * spec.period};
            if (spec.central_ancilla && row == c && col == c)
                ancilla = p;
            else
                registers.push_back(p);
        }
    if (spec.central_ancilla) registers.push_back(ancilla);
    return registers;
}

double blockade_ceiling(const PairModel& model, int n) {
    if (n < 2) throw std::invalid_argument("blockade_ceiling: n must be >= 2");
    const double lower = 1.0 / (static_cast<double>(n - 1) * (n - 1));
    const double upper = 1.0 / (static_cast<double>(n) * n);
    return model.energy_scale * (lower - upper) / 2.0;
}

namespace {
double distance(const std::array<double, 2>& a, const std::array<double, 2>& b) {
    const double dx = a[0] - b[0];
    const double dy = a[1] - b[1];
    return std::sqrt(dx * dx + dy * dy);
}
} // namespace

InteractionGraph lattice_interaction_graph(const PairModel& model, double n, const LatticeSpec& spec,
                                           SpeciesMode mode, double gamma, double ss_shift) {
    const auto positions = lattice_positions(spec);
    const int count = static_cast<int>(positions.size());
    InteractionGraph graph;

    if (mode == SpeciesMode::SingleSpecies) {
        const int r_level = AtomSpec::qubit().level(LevelRole::RydR);
        for (int i = 0; i < count; ++i)
            for (int j = i + 1; j < count; ++j) {
                const double b = pair_shift(model, n, distance(positions[static_cast<std::size_t>(i)],
                                                               positions[static_cast<std::size_t>(j)]));
                graph.shifts.push_back({i, j, r_level, r_level, b, 1});
            }
        if (gamma > 0.0) graph.decay.push_back({LevelRole::RydR, gamma});
    } else {
        if (!spec.central_ancilla)
            throw std::invalid_argument("lattice_interaction_graph: two-species mode needs the ancilla");
        const AtomSpec two = AtomSpec::two_species();
        const int s_level = two.level(LevelRole::RydS);
        const int r_level = two.level(LevelRole::RydR);
        const int ancilla = count - 1;
        for (int i = 0; i < ancilla; ++i) {
            const double b = pair_shift(model, n, distance(positions[static_cast<std::size_t>(i)],
                                                           positions[static_cast<std::size_t>(ancilla)]));
            graph.shifts.push_back({i, ancilla, s_level, r_level, b, 1});
        }
        if (ss_shift > 0.0)
            for (int i = 0; i < ancilla; ++i)
                for (int j = i + 1; j < ancilla; ++j)
                    graph.shifts.push_back({i, j, s_level, s_level, ss_shift, 1});
        if (gamma > 0.0) {
            graph.decay.push_back({LevelRole::RydS, gamma});
            graph.decay.push_back({LevelRole::RydR, gamma});
        }
    }
    return graph;
}

LatticeErrorResult lattice_average_error(const PairModel& model, double n, const LatticeSpec& spec,
                                         double tau, SpeciesMode mode) {
    if (tau <= 0.0) throw std::invalid_argument("lattice_average_error: tau must be positive");
    const InteractionGraph graph = lattice_interaction_graph(model, n, spec, mode);

    LatticeErrorResult result;
    result.ceiling = blockade_ceiling(model, static_cast<int>(std::lround(n)));
    result.min_shift = std::numeric_limits<double>::infinity();

    double error_sum = 0.0;
    double shift_sum = 0.0;
    for (const PairShift& s : graph.shifts) {
        error_sum += min_error_formula(s.magnitude, tau);
        shift_sum += s.magnitude;
        result.max_shift = std::max(result.max_shift, s.magnitude);
        result.min_shift = std::min(result.min_shift, s.magnitude);
        ++result.pair_count;
    }
    if (result.pair_count == 0) throw std::invalid_argument("lattice_average_error: no pairs");
    result.mean_error = error_sum / result.pair_count;
    result.b_rule_error = min_error_formula(shift_sum / result.pair_count, tau);
    result.ceiling_violated = result.max_shift > result.ceiling;
    return result;
}

PairModel cs_like() {
    PairModel m;
    m.name = "cs_like";
    m.n0 = 75.0;
    m.c3 = 4.0e11;          // rad/s um^3 near-Foerster channel
    m.delta = 2.0e8;        // rad/s
    m.c6 = m.c3 * m.c3 / m.delta;
    m.tau0 = 3.0e-10;       // s -> tau(75) ~ 127 us
    m.energy_scale = 2.07e16; // rad/s (Rydberg unit)
    return m;
}

PairModel rb_like() {
    PairModel m;
    m.name = "rb_like";
    m.n0 = 90.0;
    m.c3 = 6.0e11;
    m.delta = 1.5e8;
    m.c6 = m.c3 * m.c3 / m.delta;
    m.tau0 = 3.0e-10;
    m.energy_scale = 2.07e16;
    return m;
}

PairModel cs_two_species() {
    PairModel m;
    m.name = "cs_two_species";
    m.n0 = 60.0;
    m.c3 = 2.2e9; // resonant s-r dipole-dipole channel
    m.delta = 0.0;
    m.c6 = 0.0;
    m.tau0 = 3.0e-10; // tau(60) ~ 65 us
    m.energy_scale = 2.07e16;
    return m;
}

} // namespace rydgrover
