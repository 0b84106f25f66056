#include "rydgrover/kernels.hpp"

// Serial reference formulations of the amplitude kernels. These trade speed
// for obviousness: apply_block_reference walks every flat index and builds
// each output amplitude as an explicit row-times-column sum, which makes it
// an independent oracle for the gather kernel in kernels.cpp.

namespace rydgrover::kernels {

void apply_block_reference(const Complex* in, Complex* out, std::size_t dim, std::size_t stride,
                           int atom_dim, const Complex* block, const int* levels, int n_levels,
                           const BlockadeMask* mask) {
    for (std::size_t idx = 0; idx < dim; ++idx) {
        const int digit = static_cast<int>((idx / stride) % static_cast<std::size_t>(atom_dim));
        int pos = -1;
        for (int j = 0; j < n_levels; ++j)
            if (levels[j] == digit) pos = j;
        if (pos < 0 || (mask != nullptr && mask->blocked(idx))) {
            out[idx] = in[idx];
            continue;
        }
        Complex acc{};
        for (int j = 0; j < n_levels; ++j) {
            const std::ptrdiff_t offset =
                static_cast<std::ptrdiff_t>(levels[j] - digit) * static_cast<std::ptrdiff_t>(stride);
            acc += block[static_cast<std::size_t>(pos) * n_levels + j] *
                   in[static_cast<std::ptrdiff_t>(idx) + offset];
        }
        out[idx] = acc;
    }
}

Complex dot_reference(const Complex* a, const Complex* b, std::size_t n) {
    Complex acc{};
    for (std::size_t i = 0; i < n; ++i) acc += std::conj(a[i]) * b[i];
    return acc;
}

} // namespace rydgrover::kernels
