#pragma once

#include <functional>
#include <string>

#include "rydgrover/protocols.hpp"

namespace rydgrover {

enum class VerifyLevel { Fast, Full };

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

// Test hooks: deliberate deviations injected into the protocol under check so
// the suite's sensitivity can itself be verified.
struct FaultInjection {
    double deexcite_phase_offset = 0.0; // added to the second-sweep phase
};

// Assembles the qubit-block matrix of `op` by feeding qubit-subspace basis
// states (column by column) and reading back qubit-subspace amplitudes.
// `atoms` may include trailing ancillas, which are fed |0> and read at |0>.
CMatrix assemble_qubit_block(const std::vector<AtomSpec>& atoms, int k,
                             const std::function<void(RegisterState&)>& op);

// 2|x0><x0| - I over the qubit block.
CMatrix oracle_target_matrix(const BasisLabel& marked);

// 2P - I with P the uniform projector.
CMatrix diffusion_target_matrix(int k);

// Invariant suites behind `verify`. Fast: small-register matrices and
// closed-form checks, a few seconds. Full adds k <= 6 matrices, collective
// enhancement, and the error-scaling slope fit.
std::vector<CheckResult> run_verification(VerifyLevel level, const FaultInjection* fault = nullptr,
                                          std::uint64_t seed = 12345);

} // namespace rydgrover
