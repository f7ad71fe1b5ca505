// Copyright 2026 The paritylab developers
//
//    Licensed under the Apache License, Version 2.0 (the "License");
//    you may not use this file except in compliance with the License.
//    You may obtain a copy of the License at
//
//        http://www.apache.org/licenses/LICENSE-2.0
//
//    Unless required by applicable law or agreed to in writing, software
//    distributed under the License is distributed on an "AS IS" BASIS,
//    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//    See the License for the specific language governing permissions and
//    limitations under the License.

// Benchmark of the OpenMP kernels against their serial reference
// implementations: brute-force ground-state search, H(s) matrix-vector
// products, and simulated-annealing sampling.

#include <chrono>
#include <cstdio>
#include <vector>

#include "paritylab/anneal.hpp"
#include "paritylab/ising.hpp"
#include "paritylab/sampler.hpp"
#include "paritylab/threads.hpp"

using namespace paritylab;

namespace {

using Clock = std::chrono::steady_clock;

double seconds(Clock::time_point a, Clock::time_point b) {
    return std::chrono::duration<double>(b - a).count();
}

IsingHamiltonian random_instance(int n, int pairs, std::uint64_t seed) {
    SplitMix64 rng(seed);
    IsingHamiltonian h(n);
    for (int i = 0; i < n; ++i) h.add_term({i}, rng.uniform() - 0.5);
    for (int p = 0; p < pairs; ++p) {
        int a = static_cast<int>(rng.below(n));
        int b = static_cast<int>(rng.below(n));
        if (a == b) continue;
        if (a > b) std::swap(a, b);
        h.add_term({a, b}, rng.uniform() - 0.5);
    }
    return h;
}

void row(const char* name, double serial, double parallel) {
    std::printf("%-28s %10.3f s %10.3f s %8.2fx\n", name, serial, parallel,
                serial / parallel);
}

}  // namespace

int main() {
    std::printf("threads: %d\n", thread_count());
    std::printf("%-28s %12s %12s %9s\n", "kernel", "serial", "parallel", "speedup");

    {
        const IsingHamiltonian h = random_instance(22, 60, 7);
        auto t0 = Clock::now();
        const GroundStates a = brute_force_ground_states_serial(h);
        auto t1 = Clock::now();
        const GroundStates b = brute_force_ground_states(h);
        auto t2 = Clock::now();
        if (a.min_energy != b.min_energy || a.states != b.states)
            std::printf("MISMATCH in brute force results\n");
        row("brute force (n=22)", seconds(t0, t1), seconds(t1, t2));
    }
    {
        const IsingHamiltonian h = random_instance(18, 40, 11);
        const AnnealOperator op(h);
        std::vector<double> x(op.dimension(), 1.0), y(op.dimension()), z(op.dimension());
        const int reps = 40;
        auto t0 = Clock::now();
        for (int r = 0; r < reps; ++r) op.apply_serial(0.5, x, y);
        auto t1 = Clock::now();
        for (int r = 0; r < reps; ++r) op.apply(0.5, x, z);
        auto t2 = Clock::now();
        if (y != z) std::printf("MISMATCH in matvec results\n");
        row("H(s) matvec (n=18, 40x)", seconds(t0, t1), seconds(t1, t2));
    }
    {
        const IsingHamiltonian h = random_instance(64, 200, 23);
        SaParams params;
        params.sweeps = 16;
        const int samples = 512;
        auto t0 = Clock::now();
#ifdef _OPENMP
        const int saved = omp_get_max_threads();
        omp_set_num_threads(1);
#endif
        const SampleSet a = simulated_anneal(h, params, 5, samples);
#ifdef _OPENMP
        omp_set_num_threads(saved);
#endif
        auto t1 = Clock::now();
        const SampleSet b = simulated_anneal(h, params, 5, samples);
        auto t2 = Clock::now();
        if (a.samples != b.samples) std::printf("MISMATCH in sampler results\n");
        row("annealing (512 samples)", seconds(t0, t1), seconds(t1, t2));
    }
    return 0;
}
