#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "rydgrover/cmatrix.hpp"

namespace rydgrover {

// Level roles an atom may expose. Every atom carries the two qubit storage
// states; Rydberg and ancilla-logical levels are optional.
enum class LevelRole { Ground0 = 0, Ground1, RydS, RydR, Logical2 };
inline constexpr int kRoleCount = 5;

struct AtomSpec {
    int num_levels = 0;
    std::array<int, kRoleCount> role_level{-1, -1, -1, -1, -1};

    // |0>, |1>, |r>
    static AtomSpec qubit();
    // |0>, |1>, |s>, |r> -- two Rydberg species
    static AtomSpec two_species();
    // |0>, |1>, |2>, |r> -- three logical levels plus Rydberg
    static AtomSpec tree_ancilla();

    int level(LevelRole role) const { return role_level[static_cast<int>(role)]; }
    bool has(LevelRole role) const { return level(role) >= 0; }
    bool is_rydberg_level(int lvl) const {
        return lvl == level(LevelRole::RydS) || lvl == level(LevelRole::RydR);
    }

    void validate() const; // throws std::invalid_argument on a bad spec

    bool operator==(const AtomSpec&) const = default;
};

// Per-atom level indices; atom 0 is the most significant mixed-radix digit.
using BasisLabel = std::vector<int>;

struct BlockadeCondition {
    std::vector<int> atoms;  // blocking atoms
    std::vector<int> levels; // blocking levels, checked on each listed atom
};

// Dense state vector over the tensor product of the atoms' level spaces.
class RegisterState {
  public:
    RegisterState() = default;
    explicit RegisterState(std::vector<AtomSpec> atoms);

    const std::vector<AtomSpec>& atoms() const { return atoms_; }
    int num_atoms() const { return static_cast<int>(atoms_.size()); }
    std::size_t dim() const { return amps_.size(); }
    std::size_t stride(int atom) const { return strides_[static_cast<std::size_t>(atom)]; }

    std::span<Complex> amplitudes() { return amps_; }
    std::span<const Complex> amplitudes() const { return amps_; }

    Complex& amp(std::size_t flat) { return amps_[flat]; }
    const Complex& amp(std::size_t flat) const { return amps_[flat]; }

    std::size_t flat_index(const BasisLabel& label) const; // validates digits
    int digit(std::size_t flat, int atom) const;

    double norm_sq() const;

    bool same_structure(const RegisterState& other) const { return atoms_ == other.atoms_; }

  private:
    std::vector<AtomSpec> atoms_;
    std::vector<std::size_t> strides_;
    std::vector<Complex> amps_;
};

// Unit amplitude on the labeled basis index.
RegisterState basis_state(std::vector<AtomSpec> atoms, const BasisLabel& label);

// Product state with one small amplitude vector per atom.
RegisterState product_state(std::vector<AtomSpec> atoms,
                            const std::vector<std::vector<Complex>>& per_atom);

// k qubit atoms, each in (|0>+|1>)/sqrt(2).
RegisterState uniform_qubit_state(int k);

// Conjugate-linear in a, linear in b.
Complex inner(const RegisterState& a, const RegisterState& b);

// Squared overlap |<a|b>|^2 normalized by both norms, so it is insensitive
// to global phase and to normalization of either argument.
double fidelity_mod_phase(const RegisterState& a, const RegisterState& b);

// Sum of |amplitude|^2 over basis labels whose digit at `atom` is `level`.
double marginal_population(const RegisterState& state, int atom, int level);

// Multiplies `block` onto the target atom's `levels` sub-vector within every
// amplitude group, skipping groups blocked by `cond` (ideal-blockade
// semantics: the blockade set occupying a blocking level freezes the group).
void apply_block_unitary(RegisterState& state, int atom, const CMatrix& block,
                         std::span<const int> levels, const BlockadeCondition* cond = nullptr);

} // namespace rydgrover
