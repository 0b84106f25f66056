#pragma once

#include <optional>

#include "rydgrover/hilbert.hpp"

namespace rydgrover {

// Resonant Rabi rotation on a level pair:
//   [[cos(t/2),            -i e^{+i phi} sin(t/2)],
//    [-i e^{-i phi} sin(t/2),           cos(t/2)]]
// With this convention a 2pi pulse equals -I, which carries the conditional
// sign, and a pi pulse is inverted by shifting the laser phase by pi.
CMatrix rotation_block(double theta, double phi);

// 3x3 block over (ground0, ground1, ryd): the dark state (|0>+|1>)/sqrt(2)
// is left exactly invariant while the bright state (|0>-|1>)/sqrt(2) and the
// Rydberg level are rotated by rotation_block(theta, phi).
CMatrix bright_block(double theta, double phi);

enum class PulseKind { Bare, Bright };

struct PulseSpec {
    int atom = 0;
    PulseKind kind = PulseKind::Bare;
    int from_level = 0; // bare only; ignored for bright
    int to_level = 0;   // Rydberg level for both kinds
    double angle = 0.0; // radians, in [0, 4pi]
    double phase = 0.0; // laser phase, radians
    std::optional<BlockadeCondition> blockade;

    void validate(const std::vector<AtomSpec>& atoms) const;
};

void apply_pulse(RegisterState& state, const PulseSpec& pulse);

// pi pulse between from_level and ryd_level.
void pi_pulse(RegisterState& state, int atom, int from_level, int ryd_level, double phi,
              const BlockadeCondition* blockade = nullptr);

// 2pi pulse: -I on the (from_level, ryd_level) span of unblocked groups.
void two_pi_pulse(RegisterState& state, int atom, int from_level, int ryd_level, double phi,
                  const BlockadeCondition* blockade = nullptr);

// Lambda-configuration pulse driving the bright state to ryd_level.
void bright_pulse(RegisterState& state, int atom, double theta, double phi, int ryd_level,
                  const BlockadeCondition* blockade = nullptr);

// Same drive on the generalized bright state (|a> - |b>)/sqrt(2) of an
// arbitrary level pair (used by the ancilla interaction gates).
void pair_bright_pulse(RegisterState& state, int atom, int a_level, int b_level, int ryd_level,
                       double theta, double phi, const BlockadeCondition* blockade = nullptr);

} // namespace rydgrover
