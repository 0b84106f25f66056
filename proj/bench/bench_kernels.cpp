// Benchmark comparing the OpenMP amplitude kernels against the serial
// reference formulations, and cross-checking their outputs while at it.
//
//   bench_kernels [--quick]

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstring>
#include <random>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "rydgrover/hilbert.hpp"
#include "rydgrover/kernels.hpp"
#include "rydgrover/pulses.hpp"

using namespace rydgrover;
using Clock = std::chrono::steady_clock;

namespace {

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

RegisterState random_register(int k, std::uint64_t seed) {
    RegisterState state(std::vector<AtomSpec>(static_cast<std::size_t>(k), AtomSpec::qubit()));
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    for (auto& a : state.amplitudes()) a = Complex{gauss(rng), gauss(rng)};
    const double n = std::sqrt(state.norm_sq());
    for (auto& a : state.amplitudes()) a /= n;
    return state;
}

} // namespace

int main(int argc, char** argv) {
    const bool quick = argc > 1 && std::strcmp(argv[1], "--quick") == 0;
    const std::vector<int> sizes = quick ? std::vector<int>{6, 8} : std::vector<int>{8, 10, 12};

#ifdef _OPENMP
    std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP: disabled at build time\n");
#endif
    std::printf("%4s %10s %14s %14s %9s %12s\n", "k", "dim", "parallel ms", "reference ms",
                "speedup", "max |diff|");

    for (const int k : sizes) {
        RegisterState state = random_register(k, 42);
        const std::size_t dim = state.dim();
        const int atom = k / 2;
        const int atom_dim = 3;
        const std::size_t stride = state.stride(atom);
        const CMatrix block = rotation_block(3.14159, 0.7);
        const int levels[2] = {0, 2};

        kernels::BlockadeMask mask;
        for (int a = 0; a < k; ++a) {
            if (a == atom) continue;
            mask.entries.push_back({state.stride(a), 3, 1u << 2});
        }

        const int reps = quick ? 20 : 60;

        // parallel gather kernel (in place, on a scratch copy)
        std::vector<Complex> scratch(state.amplitudes().begin(), state.amplitudes().end());
        const auto t_par = Clock::now();
        for (int r = 0; r < reps; ++r)
            kernels::apply_block(scratch.data(), dim, stride, atom_dim, block.data(), levels, 2,
                                 &mask);
        const double par_ms = ms_since(t_par) / reps;

        // serial reference (out of place, ping-pong buffers)
        std::vector<Complex> in(state.amplitudes().begin(), state.amplitudes().end());
        std::vector<Complex> out(dim);
        const auto t_ref = Clock::now();
        for (int r = 0; r < reps; ++r) {
            kernels::apply_block_reference(in.data(), out.data(), dim, stride, atom_dim,
                                           block.data(), levels, 2, &mask);
            in.swap(out);
        }
        const double ref_ms = ms_since(t_ref) / reps;

        // agreement after the same odd number of applications
        std::vector<Complex> check(state.amplitudes().begin(), state.amplitudes().end());
        kernels::apply_block(check.data(), dim, stride, atom_dim, block.data(), levels, 2, &mask);
        std::vector<Complex> ref_in(state.amplitudes().begin(), state.amplitudes().end());
        std::vector<Complex> ref_out(dim);
        kernels::apply_block_reference(ref_in.data(), ref_out.data(), dim, stride, atom_dim,
                                       block.data(), levels, 2, &mask);
        double worst = 0.0;
        for (std::size_t i = 0; i < dim; ++i)
            worst = std::max(worst, std::abs(check[i] - ref_out[i]));

        std::printf("%4d %10zu %14.3f %14.3f %9.2f %12.2e\n", k, dim, par_ms, ref_ms,
                    ref_ms / par_ms, worst);
    }

    // inner-product kernels
    std::printf("\ninner product:\n");
    std::printf("%4s %10s %14s %14s %9s %12s\n", "k", "dim", "parallel ms", "reference ms",
                "speedup", "|diff|");
    for (const int k : sizes) {
        RegisterState a = random_register(k, 1);
        RegisterState b = random_register(k, 2);
        const int reps = quick ? 50 : 200;

        Complex fast{};
        const auto t_par = Clock::now();
        for (int r = 0; r < reps; ++r)
            fast = kernels::dot(a.amplitudes().data(), b.amplitudes().data(), a.dim());
        const double par_ms = ms_since(t_par) / reps;

        Complex slow{};
        const auto t_ref = Clock::now();
        for (int r = 0; r < reps; ++r)
            slow = kernels::dot_reference(a.amplitudes().data(), b.amplitudes().data(), a.dim());
        const double ref_ms = ms_since(t_ref) / reps;

        std::printf("%4d %10zu %14.4f %14.4f %9.2f %12.2e\n", k, a.dim(), par_ms, ref_ms,
                    ref_ms / par_ms, std::abs(fast - slow));
    }
    return 0;
}
