#include "rydgrover/kernels.hpp"

#include <stdexcept>

namespace rydgrover::kernels {

namespace {
// Below this many groups the parallel region costs more than it saves.
constexpr std::size_t kParallelThreshold = 2048;
constexpr int kMaxBlockDim = 8;
} // namespace

void apply_block(Complex* amps, std::size_t dim, std::size_t stride, int atom_dim,
                 const Complex* block, const int* levels, int n_levels,
                 const BlockadeMask* mask) {
    if (n_levels > kMaxBlockDim) throw std::invalid_argument("apply_block: block too large");
    const std::size_t n_groups = dim / static_cast<std::size_t>(atom_dim);
    const std::size_t span = stride * static_cast<std::size_t>(atom_dim);
    const bool has_mask = mask != nullptr && !mask->empty();

#pragma omp parallel for schedule(static) if (n_groups >= kParallelThreshold)
    for (std::size_t g = 0; g < n_groups; ++g) {
        const std::size_t hi = g / stride;
        const std::size_t lo = g % stride;
        const std::size_t base = hi * span + lo;
        if (has_mask && mask->blocked(base)) continue;

        Complex v[kMaxBlockDim];
        for (int j = 0; j < n_levels; ++j) v[j] = amps[base + static_cast<std::size_t>(levels[j]) * stride];
        for (int i = 0; i < n_levels; ++i) {
            Complex acc{};
            const Complex* row = block + static_cast<std::size_t>(i) * n_levels;
            for (int j = 0; j < n_levels; ++j) acc += row[j] * v[j];
            amps[base + static_cast<std::size_t>(levels[i]) * stride] = acc;
        }
    }
}

void apply_bright(Complex* amps, std::size_t dim, std::size_t stride, int atom_dim, int a_level,
                  int b_level, int r_level, const Complex* rot2x2, const BlockadeMask* mask) {
    const std::size_t n_groups = dim / static_cast<std::size_t>(atom_dim);
    const std::size_t span = stride * static_cast<std::size_t>(atom_dim);
    const bool has_mask = mask != nullptr && !mask->empty();
    constexpr double inv_sqrt2 = 0.70710678118654752440;
    const Complex r00m1 = rot2x2[0] - 1.0;
    const Complex r01 = rot2x2[1];
    const Complex r10 = rot2x2[2];
    const Complex r11m1 = rot2x2[3] - 1.0;

#pragma omp parallel for schedule(static) if (n_groups >= 2048)
    for (std::size_t g = 0; g < n_groups; ++g) {
        const std::size_t base = (g / stride) * span + g % stride;
        if (has_mask && mask->blocked(base)) continue;
        const std::size_t ia = base + static_cast<std::size_t>(a_level) * stride;
        const std::size_t ib = base + static_cast<std::size_t>(b_level) * stride;
        const std::size_t ir = base + static_cast<std::size_t>(r_level) * stride;
        const Complex bright = (amps[ia] - amps[ib]) * inv_sqrt2;
        const Complex vr = amps[ir];
        const Complex delta = (r00m1 * bright + r01 * vr) * inv_sqrt2;
        amps[ia] += delta;
        amps[ib] -= delta;
        amps[ir] += r10 * bright + r11m1 * vr;
    }
}

Complex dot(const Complex* a, const Complex* b, std::size_t n) {
    double re = 0.0, im = 0.0;
#pragma omp parallel for schedule(static) reduction(+ : re, im) if (n >= kParallelThreshold)
    for (std::size_t i = 0; i < n; ++i) {
        const Complex v = std::conj(a[i]) * b[i];
        re += v.real();
        im += v.imag();
    }
    return {re, im};
}

double norm_sq(const Complex* a, std::size_t n) {
    double acc = 0.0;
#pragma omp parallel for schedule(static) reduction(+ : acc) if (n >= kParallelThreshold)
    for (std::size_t i = 0; i < n; ++i) acc += std::norm(a[i]);
    return acc;
}

} // namespace rydgrover::kernels
