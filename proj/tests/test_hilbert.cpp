#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "rydgrover/hilbert.hpp"
#include "rydgrover/kernels.hpp"
#include "rydgrover/pulses.hpp"

using namespace rydgrover;

namespace {
constexpr double kPi = std::numbers::pi;

RegisterState random_state(const std::vector<AtomSpec>& atoms, std::uint64_t seed) {
    RegisterState state(atoms);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    for (auto& a : state.amplitudes()) a = Complex{gauss(rng), gauss(rng)};
    const double n = std::sqrt(state.norm_sq());
    for (auto& a : state.amplitudes()) a /= n;
    return state;
}

CMatrix random_unitary2(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> uni(0.0, 2.0 * kPi);
    CMatrix u = rotation_block(uni(rng), uni(rng));
    CMatrix phases(2, 2);
    phases(0, 0) = std::polar(1.0, uni(rng));
    phases(1, 1) = std::polar(1.0, uni(rng));
    return u * phases;
}
} // namespace

TEST_CASE("mixed-radix basis indexing") {
    const std::vector<AtomSpec> two(2, AtomSpec::qubit());
    RegisterState s = basis_state(two, {0, 1});
    CHECK(s.dim() == 9);
    CHECK(s.amp(1) == Complex{1.0});

    RegisterState one = basis_state({AtomSpec::qubit()}, {2});
    CHECK(one.amp(2) == Complex{1.0});

    // digits base 3: 1,1,1 -> 9 + 3 + 1 = 13
    const std::vector<AtomSpec> three(3, AtomSpec::qubit());
    RegisterState t = basis_state(three, {1, 1, 1});
    CHECK(t.dim() == 27);
    CHECK(t.amp(13) == Complex{1.0});
    for (std::size_t i = 0; i < t.dim(); ++i)
        if (i != 13) CHECK(t.amp(i) == Complex{});
}

TEST_CASE("invalid labels are rejected") {
    const std::vector<AtomSpec> two(2, AtomSpec::qubit());
    CHECK_THROWS_AS((void)basis_state(two, {0, 3}), std::invalid_argument);
    CHECK_THROWS_AS((void)basis_state(two, {0}), std::invalid_argument);
    CHECK_THROWS_AS((void)basis_state(two, {0, -1}), std::invalid_argument);
}

TEST_CASE("uniform qubit state") {
    RegisterState one = uniform_qubit_state(1);
    CHECK(std::abs(one.amp(0) - 1.0 / std::sqrt(2.0)) < 1e-15);
    CHECK(std::abs(one.amp(1) - 1.0 / std::sqrt(2.0)) < 1e-15);
    CHECK(one.amp(2) == Complex{});

    RegisterState two = uniform_qubit_state(2);
    int half_count = 0;
    for (std::size_t i = 0; i < two.dim(); ++i) {
        if (std::abs(two.amp(i) - 0.5) < 1e-15) ++half_count;
        else CHECK(two.amp(i) == Complex{});
    }
    CHECK(half_count == 4);

    CHECK(std::abs(uniform_qubit_state(10).norm_sq() - 1.0) < 1e-12);
}

TEST_CASE("inner products") {
    const std::vector<AtomSpec> atoms(2, AtomSpec::qubit());
    RegisterState e0 = basis_state(atoms, {0, 0});
    RegisterState e1 = basis_state(atoms, {0, 1});
    CHECK(inner(e0, e0) == Complex{1.0});
    CHECK(inner(e0, e1) == Complex{});
    CHECK(std::abs(inner(uniform_qubit_state(2), e1) - 0.5) < 1e-15);

    RegisterState other = basis_state({AtomSpec::qubit()}, {0});
    CHECK_THROWS_AS((void)inner(e0, other), std::invalid_argument);

    // conjugate-linear in the first argument
    RegisterState a = random_state(atoms, 1);
    RegisterState b = random_state(atoms, 2);
    const Complex phase = std::polar(1.0, 0.7);
    RegisterState a_scaled = a;
    for (auto& v : a_scaled.amplitudes()) v *= phase;
    CHECK(std::abs(inner(a_scaled, b) - std::conj(phase) * inner(a, b)) < 1e-14);

    // inner(a,a) equals the squared norm and is non-negative
    CHECK(std::abs(inner(a, a).real() - a.norm_sq()) < 1e-14);
    CHECK(std::abs(inner(a, a).imag()) < 1e-15);
}

TEST_CASE("fidelity is blind to global phase and sign") {
    const std::vector<AtomSpec> atoms(2, AtomSpec::qubit());
    RegisterState psi = random_state(atoms, 3);
    RegisterState minus = psi;
    for (auto& v : minus.amplitudes()) v = -v;
    RegisterState rotated = psi;
    for (auto& v : rotated.amplitudes()) v *= Complex{0.0, 1.0};

    CHECK(std::abs(fidelity_mod_phase(psi, minus) - 1.0) < 1e-14);
    CHECK(std::abs(fidelity_mod_phase(psi, rotated) - 1.0) < 1e-14);
    CHECK(fidelity_mod_phase(basis_state(atoms, {0, 0}), basis_state(atoms, {0, 1})) == 0.0);
}

TEST_CASE("apply_block_unitary basics") {
    const std::vector<AtomSpec> atoms(2, AtomSpec::qubit());

    RegisterState s = basis_state(atoms, {0, 1});
    const std::array<int, 2> levels{0, 1};
    apply_block_unitary(s, 0, CMatrix::identity(2), levels);
    CHECK(s.amp(s.flat_index({0, 1})) == Complex{1.0});

    CMatrix flip(2, 2);
    flip(0, 1) = 1.0;
    flip(1, 0) = 1.0;
    apply_block_unitary(s, 0, flip, levels);
    CHECK(std::abs(s.amp(s.flat_index({1, 1})) - 1.0) < 1e-15);

    // pi rotation applied twice flips the sign componentwise on any state
    // supported on the addressed level pair
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> uni(0.0, 2.0 * kPi);
    RegisterState t = product_state(atoms, {{Complex{0.6}, Complex{0.0, 0.8}, Complex{}},
                                            {Complex{}, Complex{0.28}, Complex{0.96}}});
    RegisterState expected = t;
    for (auto& v : expected.amplitudes()) v = -v;
    const double phi = uni(rng);
    const std::array<int, 2> pair{1, 2};
    apply_block_unitary(t, 1, rotation_block(kPi, phi), pair);
    apply_block_unitary(t, 1, rotation_block(kPi, phi), pair);
    double worst = 0.0;
    for (std::size_t i = 0; i < t.dim(); ++i) worst = std::max(worst, std::abs(t.amp(i) - expected.amp(i)));
    CHECK(worst < 1e-12);
}

TEST_CASE("apply_block_unitary rejects bad arguments") {
    const std::vector<AtomSpec> atoms(2, AtomSpec::qubit());
    RegisterState s = basis_state(atoms, {0, 0});
    CMatrix bad(2, 2);
    bad(0, 0) = 2.0;
    bad(1, 1) = 1.0;
    const std::array<int, 2> levels{0, 1};
    CHECK_THROWS_AS(apply_block_unitary(s, 0, bad, levels), std::invalid_argument);
    const std::array<int, 2> dup{1, 1};
    CHECK_THROWS_AS(apply_block_unitary(s, 0, CMatrix::identity(2), dup), std::invalid_argument);
    const std::array<int, 2> oob{0, 3};
    CHECK_THROWS_AS(apply_block_unitary(s, 0, CMatrix::identity(2), oob), std::invalid_argument);
}

TEST_CASE("blockade condition freezes matching groups") {
    const std::vector<AtomSpec> atoms(2, AtomSpec::qubit());
    // |r,0>: a pulse on atom 1 blocked by atom 0 in r leaves the state alone
    RegisterState s = basis_state(atoms, {2, 0});
    BlockadeCondition cond{{0}, {2}};
    const std::array<int, 2> levels{0, 2};
    apply_block_unitary(s, 1, rotation_block(kPi, 0.0), levels, &cond);
    CHECK(std::abs(s.amp(s.flat_index({2, 0})) - 1.0) < 1e-15);

    // |1,0>: same pulse runs
    RegisterState t = basis_state(atoms, {1, 0});
    apply_block_unitary(t, 1, rotation_block(kPi, 0.0), levels, &cond);
    CHECK(std::abs(t.amp(t.flat_index({1, 2})) - Complex{0.0, -1.0}) < 1e-15);
}

TEST_CASE("norm preserved and disjoint atoms commute") {
    const std::vector<AtomSpec> atoms(3, AtomSpec::qubit());
    std::mt19937_64 rng(6);
    for (int rep = 0; rep < 10; ++rep) {
        RegisterState a = random_state(atoms, 100 + static_cast<std::uint64_t>(rep));
        RegisterState b = a;
        const CMatrix u = random_unitary2(rng);
        const CMatrix v = random_unitary2(rng);
        const std::array<int, 2> lv01{0, 1};
        const std::array<int, 2> lv12{1, 2};

        apply_block_unitary(a, 0, u, lv01);
        CHECK(std::abs(a.norm_sq() - 1.0) < 1e-12);
        apply_block_unitary(a, 2, v, lv12);

        apply_block_unitary(b, 2, v, lv12);
        apply_block_unitary(b, 0, u, lv01);

        double worst = 0.0;
        for (std::size_t i = 0; i < a.dim(); ++i)
            worst = std::max(worst, std::abs(a.amp(i) - b.amp(i)));
        CHECK(worst < 1e-12);
    }
}

TEST_CASE("marginal populations") {
    const std::vector<AtomSpec> atoms(2, AtomSpec::qubit());
    RegisterState s = basis_state(atoms, {2, 0});
    CHECK(marginal_population(s, 0, 2) == 1.0);
    CHECK(marginal_population(s, 0, 0) == 0.0);

    RegisterState u = uniform_qubit_state(2);
    CHECK(marginal_population(u, 0, 2) == 0.0);
    CHECK(marginal_population(u, 1, 2) == 0.0);

    RegisterState half = product_state({AtomSpec::qubit()},
                                       {{Complex{1.0 / std::sqrt(2.0)}, Complex{}, Complex{1.0 / std::sqrt(2.0)}}});
    CHECK(std::abs(marginal_population(half, 0, 2) - 0.5) < 1e-15);

    CHECK_THROWS_AS((void)marginal_population(s, 5, 0), std::invalid_argument);
    CHECK_THROWS_AS((void)marginal_population(s, 0, 7), std::invalid_argument);
}

TEST_CASE("parallel kernel agrees with the serial reference") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> uni(0.0, 2.0 * kPi);
    // mixed level counts: qubit, two-species, tree ancilla
    const std::vector<AtomSpec> atoms{AtomSpec::qubit(), AtomSpec::two_species(),
                                      AtomSpec::tree_ancilla(), AtomSpec::qubit()};
    for (int rep = 0; rep < 20; ++rep) {
        RegisterState s = random_state(atoms, 200 + static_cast<std::uint64_t>(rep));
        const int atom = static_cast<int>(rng() % atoms.size());
        const AtomSpec& spec = atoms[static_cast<std::size_t>(atom)];

        std::vector<int> levels;
        const bool use_three = spec.num_levels >= 3 && rep % 3 == 0;
        if (use_three)
            levels = {0, 1, spec.num_levels - 1};
        else
            levels = {static_cast<int>(rng() % 2), spec.num_levels - 1};
        const CMatrix block = use_three ? bright_block(uni(rng), uni(rng))
                                        : rotation_block(uni(rng), uni(rng));

        kernels::BlockadeMask mask;
        BlockadeCondition cond;
        const BlockadeCondition* cond_ptr = nullptr;
        if (rep % 2 == 0) {
            for (int a = 0; a < static_cast<int>(atoms.size()); ++a)
                if (a != atom) cond.atoms.push_back(a);
            cond.levels = {2, 3};
            cond_ptr = &cond;
            for (const int a : cond.atoms) {
                std::uint32_t lm = 0;
                for (const int lvl : cond.levels)
                    if (lvl < atoms[static_cast<std::size_t>(a)].num_levels) lm |= 1u << lvl;
                mask.entries.push_back({s.stride(a), atoms[static_cast<std::size_t>(a)].num_levels, lm});
            }
        }

        std::vector<Complex> reference(s.dim());
        kernels::apply_block_reference(s.amplitudes().data(), reference.data(), s.dim(),
                                       s.stride(atom), spec.num_levels, block.data(), levels.data(),
                                       static_cast<int>(levels.size()),
                                       mask.entries.empty() ? nullptr : &mask);

        apply_block_unitary(s, atom, block, levels, cond_ptr);

        double worst = 0.0;
        for (std::size_t i = 0; i < s.dim(); ++i)
            worst = std::max(worst, std::abs(s.amp(i) - reference[i]));
        CHECK(worst < 1e-13);
    }
}

TEST_CASE("dot kernel agrees with the serial reference") {
    const std::vector<AtomSpec> atoms(7, AtomSpec::qubit());
    RegisterState a = random_state(atoms, 11);
    RegisterState b = random_state(atoms, 12);
    const Complex fast = kernels::dot(a.amplitudes().data(), b.amplitudes().data(), a.dim());
    const Complex slow = kernels::dot_reference(a.amplitudes().data(), b.amplitudes().data(), a.dim());
    CHECK(std::abs(fast - slow) < 1e-12);
}

TEST_CASE("assembled pulse-sequence matrix stays unitary") {
    // Feed every basis state through a fixed random pulse sequence and check
    // the resulting full matrix columns stay orthonormal.
    const int k = 3;
    const std::vector<AtomSpec> atoms(static_cast<std::size_t>(k), AtomSpec::qubit());
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> uni(0.0, 2.0 * kPi);

    struct Step {
        int atom;
        CMatrix block;
        std::array<int, 2> levels;
    };
    std::vector<Step> sequence;
    for (int i = 0; i < 12; ++i)
        sequence.push_back({static_cast<int>(rng() % k), random_unitary2(rng),
                            {static_cast<int>(rng() % 2), 2}});

    const std::size_t dim = basis_state(atoms, {0, 0, 0}).dim();
    CMatrix m(static_cast<int>(dim), static_cast<int>(dim));
    for (std::size_t col = 0; col < dim; ++col) {
        RegisterState s(atoms);
        s.amp(col) = 1.0;
        for (const Step& step : sequence) apply_block_unitary(s, step.atom, step.block, step.levels);
        for (std::size_t row = 0; row < dim; ++row) m(static_cast<int>(row), static_cast<int>(col)) = s.amp(row);
    }
    CHECK(m.is_unitary(1e-10));
}
