#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "rydgrover/interactions.hpp"

using namespace rydgrover;

namespace {
PairModel resonant_model() {
    PairModel m;
    m.name = "resonant";
    m.n0 = 75.0;
    m.c3 = 1.0e11;
    m.delta = 0.0;
    m.c6 = 0.0;
    m.tau0 = 3.0e-10;
    m.energy_scale = 2.07e16;
    return m;
}

PairModel crossover_model() {
    PairModel m = resonant_model();
    m.delta = 2.0e8;
    m.c6 = m.c3 * m.c3 / m.delta;
    return m;
}
} // namespace

TEST_CASE("pair shift limits") {
    const PairModel res = resonant_model();
    // delta = 0: exactly C3/R^3
    for (const double r : {2.0, 5.0, 11.0})
        CHECK(pair_shift(res, res.n0, r) == doctest::Approx(res.c3 / (r * r * r)).epsilon(1e-14));

    // V/delta = 0.01: van der Waals limit C3^2/(delta R^6) within 0.01%
    const PairModel cross = crossover_model();
    const double r_vdw = std::cbrt(cross.c3 / (0.01 * cross.delta));
    const double v = cross.c3 / std::pow(r_vdw, 3.0);
    CHECK(v / cross.delta == doctest::Approx(0.01).epsilon(1e-12));
    const double want = v * v / cross.delta;
    CHECK(pair_shift(cross, cross.n0, r_vdw) == doctest::Approx(want).epsilon(1e-4));

    // doubling R in the vdW regime divides the shift by 64 within 1%
    const double far = 4.0 * r_vdw;
    CHECK(pair_shift(cross, cross.n0, far) / pair_shift(cross, cross.n0, 2.0 * far) ==
          doctest::Approx(64.0).epsilon(0.01));

    CHECK_THROWS_AS((void)pair_shift(res, res.n0, 0.0), std::invalid_argument);
}

TEST_CASE("pair shift is strictly decreasing and continuous in R") {
    const PairModel cross = crossover_model();
    double prev = pair_shift(cross, cross.n0, 0.5);
    for (double r = 0.6; r < 40.0; r += 0.1) {
        const double s = pair_shift(cross, cross.n0, r);
        CHECK(s < prev);
        CHECK(std::abs(s - pair_shift(cross, cross.n0, r - 1e-7)) < 1e-5 * prev + 1e-9);
        prev = s;
    }
}

TEST_CASE("n-scaling hooks") {
    const PairModel cross = crossover_model();
    CHECK(c3_at(cross, 2.0 * cross.n0) == doctest::Approx(16.0 * cross.c3).epsilon(1e-12));
    CHECK(c6_at(cross, 2.0 * cross.n0) == doctest::Approx(std::pow(2.0, 11) * cross.c6).epsilon(1e-12));
    CHECK(delta_at(cross, 2.0 * cross.n0) == doctest::Approx(cross.delta / 8.0).epsilon(1e-12));
    CHECK(lifetime(cross, 75.0) == doctest::Approx(cross.tau0 * 75.0 * 75.0 * 75.0).epsilon(1e-12));
    // consistency of the stored C6 with the two-channel tail
    CHECK(cross.c6 == doctest::Approx(cross.c3 * cross.c3 / cross.delta).epsilon(1e-12));
}

TEST_CASE("lattice positions and brute-force separations") {
    // 2x2 at d=5: four points, max separation sqrt(2)*5
    const auto small = lattice_positions({2, 5.0, false});
    CHECK(small.size() == 4);
    auto max_sep = [](const std::vector<std::array<double, 2>>& pts) {
        double best = 0.0;
        for (std::size_t i = 0; i < pts.size(); ++i)
            for (std::size_t j = i + 1; j < pts.size(); ++j)
                best = std::max(best, std::hypot(pts[i][0] - pts[j][0], pts[i][1] - pts[j][1]));
        return best;
    };
    CHECK(max_sep(small) == doctest::Approx(std::sqrt(2.0) * 5.0).epsilon(1e-12));

    // Exhaustive pair scans over the row-major grid. A sqrt(k) x sqrt(k)
    // grid with period d has diameter sqrt(2) (sqrt(k)-1) d.
    const auto nine = lattice_positions({3, 5.0, false});
    CHECK(nine.size() == 9);
    CHECK(max_sep(nine) == doctest::Approx(2.0 * std::sqrt(2.0) * 5.0).epsilon(1e-12));

    const auto sixteen = lattice_positions({4, 1.0, false});
    CHECK(max_sep(sixteen) == doctest::Approx(std::sqrt(18.0)).epsilon(1e-12));

    // central-ancilla layout: the ancilla site comes last
    const auto with_anc = lattice_positions({3, 5.0, true});
    CHECK(with_anc.size() == 9);
    CHECK(with_anc.back()[0] == doctest::Approx(5.0));
    CHECK(with_anc.back()[1] == doctest::Approx(5.0));

    CHECK_THROWS_AS((void)lattice_positions({0, 5.0, false}), std::invalid_argument);
}

TEST_CASE("blockade ceiling scaling") {
    const PairModel m = resonant_model();
    for (const int n : {40, 50, 60}) {
        const double ratio = blockade_ceiling(m, 2 * n) / blockade_ceiling(m, n);
        CHECK(std::abs(ratio - 1.0 / 8.0) < 0.05 / 8.0 * 8.0); // within 5%
        CHECK(ratio == doctest::Approx(0.125).epsilon(0.05));
    }
    // difference formula vs local derivative of -E/n^2 agree within 2%
    const double diff = blockade_ceiling(m, 75);
    const double deriv = m.energy_scale / std::pow(74.5, 3.0); // d/dn (-1/n^2)/2 = 1/n^3
    CHECK(diff == doctest::Approx(deriv).epsilon(0.02));

    double prev = blockade_ceiling(m, 30);
    for (int n = 31; n <= 120; ++n) {
        const double c = blockade_ceiling(m, n);
        CHECK(c < prev);
        prev = c;
    }
    CHECK_THROWS_AS((void)blockade_ceiling(m, 1), std::invalid_argument);
}

TEST_CASE("lattice graphs: pair sets and symmetry") {
    const PairModel cross = crossover_model();
    const LatticeSpec spec{2, 5.0, false};
    const InteractionGraph g = lattice_interaction_graph(cross, cross.n0, spec, SpeciesMode::SingleSpecies);
    CHECK(g.shifts.size() == 6);
    std::vector<double> values;
    for (const PairShift& s : g.shifts) {
        CHECK(s.magnitude > 0.0);
        values.push_back(s.magnitude);
    }
    std::sort(values.begin(), values.end());
    // square symmetry: two distinct shifts (edge d, diagonal sqrt(2) d)
    CHECK(values[0] == doctest::Approx(values[1]).epsilon(1e-12));
    CHECK(values[2] == doctest::Approx(values[5]).epsilon(1e-12));
    CHECK(values[0] < values[2]);
    CHECK(std::abs(g.shift_between(0, 2, 1, 2) - g.shift_between(1, 2, 0, 2)) == 0.0);

    // the shift multiset is invariant under lattice rotation/reflection
    const auto positions = lattice_positions({3, 4.0, false});
    auto multiset_from = [&](auto transform) {
        std::vector<double> out;
        std::vector<std::array<double, 2>> pts;
        for (const auto& p : positions) pts.push_back(transform(p));
        for (std::size_t i = 0; i < pts.size(); ++i)
            for (std::size_t j = i + 1; j < pts.size(); ++j)
                out.push_back(pair_shift(cross, cross.n0,
                                         std::hypot(pts[i][0] - pts[j][0], pts[i][1] - pts[j][1])));
        std::sort(out.begin(), out.end());
        return out;
    };
    const auto base = multiset_from([](std::array<double, 2> p) { return p; });
    const auto rotated = multiset_from([](std::array<double, 2> p) { return std::array<double, 2>{-p[1], p[0]}; });
    const auto mirrored = multiset_from([](std::array<double, 2> p) { return std::array<double, 2>{p[1], p[0]}; });
    for (std::size_t i = 0; i < base.size(); ++i) {
        CHECK(base[i] == doctest::Approx(rotated[i]).epsilon(1e-12));
        CHECK(base[i] == doctest::Approx(mirrored[i]).epsilon(1e-12));
    }
}

TEST_CASE("two-species graph couples only the central ancilla") {
    const PairModel two = cs_two_species();
    const LatticeSpec spec{3, 5.0, true};
    const InteractionGraph g = lattice_interaction_graph(two, two.n0, spec, SpeciesMode::TwoSpecies);
    CHECK(g.shifts.size() == 8); // 8 ancilla links, no register-register entries
    const int ancilla = 8;
    for (const PairShift& s : g.shifts) {
        CHECK(s.atom_b == ancilla);
        CHECK(s.magnitude > 0.0);
    }

    // a residual s-s shift can be switched on for robustness studies
    const InteractionGraph robust =
        lattice_interaction_graph(two, two.n0, spec, SpeciesMode::TwoSpecies, 0.0, 1e3);
    CHECK(robust.shifts.size() == 8 + 28); // plus all register-register pairs
}

TEST_CASE("lattice-averaged error") {
    const PairModel cs = cs_like();
    const double tau = lifetime(cs, cs.n0);

    // the average over a 2x2 cell reduces to the direct per-pair mean
    const auto one = lattice_average_error(cs, cs.n0, {2, 30.0, false}, tau);
    // all four shifts are either edge or diagonal; compare against direct mean
    double direct = 0.0;
    const auto pts = lattice_positions({2, 30.0, false});
    int count = 0;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            direct += min_error_formula(
                pair_shift(cs, cs.n0, std::hypot(pts[i][0] - pts[j][0], pts[i][1] - pts[j][1])), tau);
            ++count;
        }
    CHECK(one.mean_error == doctest::Approx(direct / count).epsilon(1e-12));

    // shipped Cs-like preset: 3x3 lattice average lands in [0.001, 0.01]
    const auto nine = lattice_average_error(cs, cs.n0, {3, 5.0, false}, tau);
    CHECK(nine.mean_error > 0.001);
    CHECK(nine.mean_error < 0.01);
    CHECK_FALSE(nine.ceiling_violated);

    // monotone non-decreasing in k at fixed d and n
    double prev = 0.0;
    for (const int side : {2, 3, 4, 5}) {
        const auto r = lattice_average_error(cs, cs.n0, {side, 5.0, false}, tau);
        CHECK(r.mean_error >= prev);
        prev = r.mean_error;
    }

    // the per-pair-error rule is conservative relative to the mean-B rule
    CHECK(nine.mean_error >= nine.b_rule_error);
}

TEST_CASE("per-pair error grows as the fourth power of separation in the vdW regime") {
    const PairModel cross = crossover_model();
    const double tau = lifetime(cross, cross.n0);
    const double r_deep = std::cbrt(cross.c3 / (0.003 * cross.delta)); // V/delta = 0.003
    const double e1 = min_error_formula(pair_shift(cross, cross.n0, r_deep), tau);
    const double e2 = min_error_formula(pair_shift(cross, cross.n0, std::sqrt(2.0) * r_deep), tau);
    CHECK(e2 / e1 == doctest::Approx(4.0).epsilon(0.01));
}

TEST_CASE("ceiling-violation flag trips when n is pushed too high") {
    PairModel hot = cs_like();
    const LatticeSpec spec{3, 5.0, false};
    // raising n boosts C3 as n^4 while the ceiling falls as n^-3
    bool violated = false;
    for (double n = 75.0; n <= 300.0; n += 25.0) {
        const auto r = lattice_average_error(hot, n, spec, lifetime(hot, n));
        if (r.ceiling_violated) violated = true;
    }
    CHECK(violated);
}
