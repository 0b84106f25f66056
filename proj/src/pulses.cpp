#include "rydgrover/pulses.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>

#include "rydgrover/kernels.hpp"

namespace rydgrover {

namespace {
constexpr double kPi = std::numbers::pi;
const Complex kMinusI{0.0, -1.0};
constexpr double kInvSqrt2 = 0.70710678118654752440;
} // namespace

CMatrix rotation_block(double theta, double phi) {
    double c = std::cos(theta / 2.0);
    double s = std::sin(theta / 2.0);
    // Protocol angles are exact multiples of pi; snap the half-angle grid so
    // pi pulses transfer completely and 2pi pulses close the loop exactly.
    if (std::abs(c) < 1e-12) {
        c = 0.0;
        s = s > 0.0 ? 1.0 : -1.0;
    } else if (std::abs(s) < 1e-12) {
        s = 0.0;
        c = c > 0.0 ? 1.0 : -1.0;
    }
    const Complex ephi = std::polar(1.0, phi);
    CMatrix m(2, 2);
    m(0, 0) = c;
    m(0, 1) = kMinusI * ephi * s;
    m(1, 0) = kMinusI * std::conj(ephi) * s;
    m(1, 1) = c;
    return m;
}

CMatrix bright_block(double theta, double phi) {
    // Basis change between (|0>,|1>,|r>) and (dark, bright, r) coordinates;
    // the Hadamard-like 2x2 is its own inverse.
    CMatrix t(3, 3);
    t(0, 0) = kInvSqrt2;
    t(0, 1) = kInvSqrt2;
    t(1, 0) = kInvSqrt2;
    t(1, 1) = -kInvSqrt2;
    t(2, 2) = 1.0;

    const CMatrix r = rotation_block(theta, phi);
    CMatrix core = CMatrix::identity(3); // 1 on dark, rotation on (bright, r)
    core(1, 1) = r(0, 0);
    core(1, 2) = r(0, 1);
    core(2, 1) = r(1, 0);
    core(2, 2) = r(1, 1);

    return t * core * t;
}

void PulseSpec::validate(const std::vector<AtomSpec>& atoms) const {
    if (atom < 0 || atom >= static_cast<int>(atoms.size()))
        throw std::invalid_argument("PulseSpec: atom index out of range");
    const AtomSpec& spec = atoms[static_cast<std::size_t>(atom)];
    if (angle < 0.0 || angle > 4.0 * kPi)
        throw std::invalid_argument("PulseSpec: angle outside [0, 4pi]");
    if (to_level < 0 || to_level >= spec.num_levels)
        throw std::invalid_argument("PulseSpec: to_level out of range");
    if (kind == PulseKind::Bare) {
        if (from_level < 0 || from_level >= spec.num_levels || from_level == to_level)
            throw std::invalid_argument("PulseSpec: bad bare level pair");
    } else {
        if (!spec.has(LevelRole::Ground0) || !spec.has(LevelRole::Ground1))
            throw std::invalid_argument("PulseSpec: bright pulse needs both qubit roles");
        if (to_level == spec.level(LevelRole::Ground0) || to_level == spec.level(LevelRole::Ground1))
            throw std::invalid_argument("PulseSpec: bright target must differ from the qubit pair");
    }
    if (blockade) {
        for (const int a : blockade->atoms)
            if (a == atom) throw std::invalid_argument("PulseSpec: target atom inside blockade set");
    }
}

void apply_pulse(RegisterState& state, const PulseSpec& pulse) {
    pulse.validate(state.atoms());
    const BlockadeCondition* cond = pulse.blockade ? &*pulse.blockade : nullptr;
    if (pulse.kind == PulseKind::Bare) {
        const std::array<int, 2> levels{pulse.from_level, pulse.to_level};
        apply_block_unitary(state, pulse.atom, rotation_block(pulse.angle, pulse.phase), levels, cond);
    } else {
        const AtomSpec& spec = state.atoms()[static_cast<std::size_t>(pulse.atom)];
        pair_bright_pulse(state, pulse.atom, spec.level(LevelRole::Ground0),
                          spec.level(LevelRole::Ground1), pulse.to_level, pulse.angle, pulse.phase,
                          cond);
    }
}

void pi_pulse(RegisterState& state, int atom, int from_level, int ryd_level, double phi,
              const BlockadeCondition* blockade) {
    PulseSpec p{atom, PulseKind::Bare, from_level, ryd_level, kPi, phi, {}};
    if (blockade != nullptr) p.blockade = *blockade;
    apply_pulse(state, p);
}

void two_pi_pulse(RegisterState& state, int atom, int from_level, int ryd_level, double phi,
                  const BlockadeCondition* blockade) {
    PulseSpec p{atom, PulseKind::Bare, from_level, ryd_level, 2.0 * kPi, phi, {}};
    if (blockade != nullptr) p.blockade = *blockade;
    apply_pulse(state, p);
}

void bright_pulse(RegisterState& state, int atom, double theta, double phi, int ryd_level,
                  const BlockadeCondition* blockade) {
    PulseSpec p{atom, PulseKind::Bright, -1, ryd_level, theta, phi, {}};
    p.from_level = state.atoms()[static_cast<std::size_t>(atom)].level(LevelRole::Ground0);
    if (blockade != nullptr) p.blockade = *blockade;
    apply_pulse(state, p);
}

void pair_bright_pulse(RegisterState& state, int atom, int a_level, int b_level, int ryd_level,
                       double theta, double phi, const BlockadeCondition* blockade) {
    if (atom < 0 || atom >= state.num_atoms())
        throw std::invalid_argument("pair_bright_pulse: atom index out of range");
    const AtomSpec& spec = state.atoms()[static_cast<std::size_t>(atom)];
    for (const int lvl : {a_level, b_level, ryd_level})
        if (lvl < 0 || lvl >= spec.num_levels)
            throw std::invalid_argument("pair_bright_pulse: level out of range");
    if (a_level == b_level || a_level == ryd_level || b_level == ryd_level)
        throw std::invalid_argument("pair_bright_pulse: levels must be distinct");
    if (theta < 0.0 || theta > 4.0 * kPi)
        throw std::invalid_argument("pair_bright_pulse: angle outside [0, 4pi]");

    kernels::BlockadeMask mask;
    if (blockade != nullptr) {
        for (const int a : blockade->atoms) {
            if (a == atom) throw std::invalid_argument("pair_bright_pulse: target atom in blockade set");
            if (a < 0 || a >= state.num_atoms())
                throw std::invalid_argument("pair_bright_pulse: blockade atom out of range");
            const AtomSpec& bspec = state.atoms()[static_cast<std::size_t>(a)];
            std::uint32_t lm = 0;
            for (const int lvl : blockade->levels)
                if (lvl >= 0 && lvl < bspec.num_levels) lm |= 1u << lvl;
            if (lm != 0) mask.entries.push_back({state.stride(a), bspec.num_levels, lm});
        }
    }
    const CMatrix rot = rotation_block(theta, phi);
    kernels::apply_bright(state.amplitudes().data(), state.dim(), state.stride(atom), spec.num_levels,
                          a_level, b_level, ryd_level, rot.data(),
                          mask.entries.empty() ? nullptr : &mask);
}

} // namespace rydgrover
