#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

// Low-level amplitude kernels. The OpenMP versions are the production path;
// the *_reference versions are deliberately simple serial formulations kept
// as independent oracles for the tests and the benchmark.

namespace rydgrover::kernels {

using Complex = std::complex<double>;

// Per-register resolved blockade predicate: a basis index is "blocked" when
// any listed atom's digit falls in that atom's blocking-level mask.
struct BlockadeMask {
    struct Entry {
        std::size_t stride = 1;
        int dim = 0;
        std::uint32_t level_mask = 0;
    };
    std::vector<Entry> entries;

    bool empty() const { return entries.empty(); }

    bool blocked(std::size_t index) const {
        for (const Entry& e : entries) {
            const auto digit = static_cast<std::uint32_t>((index / e.stride) % static_cast<std::size_t>(e.dim));
            if (e.level_mask >> digit & 1u) return true;
        }
        return false;
    }
};

// In-place gather kernel: for every group of amplitudes that shares all
// other atoms' digits, the sub-vector on `levels` of the target atom is
// multiplied by `block` (n_levels x n_levels, row-major), unless the group
// is blocked. Groups are index-disjoint, so the loop parallelizes cleanly.
void apply_block(Complex* amps, std::size_t dim, std::size_t stride, int atom_dim,
                 const Complex* block, const int* levels, int n_levels,
                 const BlockadeMask* mask);

// Out-of-place scatter formulation over every flat index; structurally
// independent of apply_block and used to cross-check it.
void apply_block_reference(const Complex* in, Complex* out, std::size_t dim, std::size_t stride,
                           int atom_dim, const Complex* block, const int* levels, int n_levels,
                           const BlockadeMask* mask);

// Bright-state rotation in residual form: the update moves amplitude only
// between the bright combination (v_a - v_b)/sqrt(2) and the Rydberg level,
// so components with v_a == v_b and v_r == 0 are bit-exact invariant.
// rot2x2 is the 2x2 rotation acting on (bright, ryd).
void apply_bright(Complex* amps, std::size_t dim, std::size_t stride, int atom_dim, int a_level,
                  int b_level, int r_level, const Complex* rot2x2, const BlockadeMask* mask);

// <a|b> with conjugation on a.
Complex dot(const Complex* a, const Complex* b, std::size_t n);
Complex dot_reference(const Complex* a, const Complex* b, std::size_t n);

double norm_sq(const Complex* a, std::size_t n);

} // namespace rydgrover::kernels
