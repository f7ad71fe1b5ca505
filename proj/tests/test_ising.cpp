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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "paritylab/ising.hpp"
#include "paritylab/threads.hpp"

using namespace paritylab;

namespace {

IsingHamiltonian random_instance(int n, std::uint64_t seed, int order = 2) {
    SplitMix64 rng(seed);
    IsingHamiltonian h(n);
    for (int i = 0; i < n; ++i) h.add_term({i}, rng.uniform() - 0.5);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (rng.uniform() < 0.6) h.add_term({i, j}, rng.uniform() - 0.5);
    if (order >= 3)
        for (int t = 0; t < n; ++t) {
            int a = static_cast<int>(rng.below(n)), b = static_cast<int>(rng.below(n)),
                c = static_cast<int>(rng.below(n));
            std::vector<int> idx{a, b, c};
            std::sort(idx.begin(), idx.end());
            idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
            if (idx.size() == 3) h.add_term(idx, rng.uniform() - 0.5);
        }
    return h;
}

SpinAssignment random_spins(int n, std::uint64_t seed) {
    SplitMix64 rng(seed);
    SpinAssignment x(n);
    for (int i = 0; i < n; ++i) x[i] = rng.next() & 1 ? -1 : 1;
    return x;
}

}  // namespace

TEST_CASE("energy of elementary terms") {
    IsingHamiltonian pair(2, {{{0, 1}, -1.0}});
    CHECK(energy(pair, {1, 1}) == -1.0);

    IsingHamiltonian field(1, {{{0}, 2.0}});
    CHECK(energy(field, {-1}) == -2.0);

    IsingHamiltonian cubic(3, {{{0, 1, 2}, 1.0}});
    CHECK(energy(cubic, {1, -1, -1}) == 1.0);

    CHECK_THROWS(energy(pair, {1, 1, 1}));
}

TEST_CASE("duplicate index sets merge by addition") {
    IsingHamiltonian h(2, {{{0, 1}, 1.0}, {{0, 1}, 2.5}});
    CHECK(h.terms().size() == 1);
    CHECK(h.coefficient({0, 1}) == 3.5);
}

TEST_CASE("construction rejects bad terms") {
    CHECK_THROWS(IsingHamiltonian(2, {{{0, 2}, 1.0}}));
    CHECK_THROWS(IsingHamiltonian(3, {{{1, 0}, 1.0}}));
    CHECK_THROWS(IsingHamiltonian(3, {{{1, 1}, 1.0}}));
}

TEST_CASE("brute force on a ferromagnetic pair") {
    IsingHamiltonian h(2, {{{0, 1}, -1.0}});
    const GroundStates gs = brute_force_ground_states(h);
    CHECK(gs.min_energy == -1.0);
    REQUIRE(gs.states.size() == 2);
    CHECK(gs.states[0] == SpinAssignment{1, 1});
    CHECK(gs.states[1] == SpinAssignment{-1, -1});
}

TEST_CASE("brute force cap is enforced by name") {
    IsingHamiltonian h(25);
    CHECK_THROWS_WITH_AS(static_cast<void>(brute_force_ground_states(h)),
                         doctest::Contains("24"), std::invalid_argument);
}

TEST_CASE("every returned ground state attains the minimum") {
    const IsingHamiltonian h = random_instance(10, 3, 3);
    const GroundStates gs = brute_force_ground_states(h);
    REQUIRE(!gs.states.empty());
    for (const auto& x : gs.states)
        CHECK(std::abs(energy(h, x) - gs.min_energy) <= kEnergyTol);
}

TEST_CASE("parallel and serial brute force agree bitwise") {
    for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
        const IsingHamiltonian h = random_instance(12, seed, 3);
        const GroundStates a = brute_force_ground_states_serial(h);
        const GroundStates b = brute_force_ground_states(h);
        CHECK(a.min_energy == b.min_energy);
        CHECK(a.states == b.states);
    }
}

#ifdef _OPENMP
TEST_CASE("results do not depend on the thread count") {
    const IsingHamiltonian h = random_instance(13, 9, 3);
    const int saved = omp_get_max_threads();
    omp_set_num_threads(1);
    const GroundStates one = brute_force_ground_states(h);
    omp_set_num_threads(saved);
    const GroundStates many = brute_force_ground_states(h);
    CHECK(one.min_energy == many.min_energy);
    CHECK(one.states == many.states);
}
#endif

TEST_CASE("bias on the last spin") {
    IsingHamiltonian h(2, {{{0, 1}, -1.0}});

    SUBCASE("definition") {
        const IsingHamiltonian b = add_last_spin_bias(h, 0.01);
        CHECK(b.coefficient({0, 1}) == -1.0);
        CHECK(b.coefficient({1}) == 0.01);
    }
    SUBCASE("breaks the degenerate pair toward all-down") {
        const GroundStates gs = brute_force_ground_states(add_last_spin_bias(h, 0.01));
        REQUIRE(gs.states.size() == 1);
        CHECK(gs.states[0] == SpinAssignment{-1, -1});
    }
    SUBCASE("zero bias is rejected") { CHECK_THROWS(add_last_spin_bias(h, 0.0)); }
    SUBCASE("small bias only breaks exact degeneracies") {
        const IsingHamiltonian g = random_instance(6, 17);
        const auto spectrum = full_spectrum(g);
        std::vector<double> sorted = spectrum;
        std::sort(sorted.begin(), sorted.end());
        double spacing = HUGE_VAL;
        for (std::size_t i = 1; i < sorted.size(); ++i)
            if (sorted[i] - sorted[i - 1] > 1e-9)
                spacing = std::min(spacing, sorted[i] - sorted[i - 1]);
        const double eps = 0.4 * spacing;
        const GroundStates before = brute_force_ground_states(g);
        const GroundStates after = brute_force_ground_states(add_last_spin_bias(g, eps));
        for (const auto& x : after.states)
            CHECK(std::find(before.states.begin(), before.states.end(), x) !=
                  before.states.end());
    }
}

TEST_CASE("gauge transform") {
    IsingHamiltonian h(2, {{{0, 1}, -1.0}});

    SUBCASE("identity gauge changes nothing") {
        CHECK(gauge_transform(h, {1, 1}) == h);
    }
    SUBCASE("single flip negates the pair coupling") {
        CHECK(gauge_transform(h, {-1, 1}).coefficient({0, 1}) == 1.0);
    }
    SUBCASE("covariance, exhaustive at n=4") {
        const IsingHamiltonian g = random_instance(4, 5, 3);
        for (std::uint64_t gb = 0; gb < 16; ++gb) {
            const SpinAssignment gv = spins_from_bits(gb, 4);
            const IsingHamiltonian gg = gauge_transform(g, gv);
            for (std::uint64_t xb = 0; xb < 16; ++xb) {
                const SpinAssignment x = spins_from_bits(xb, 4);
                CHECK(energy(g, x) ==
                      doctest::Approx(energy(gg, elementwise_product(x, gv))).epsilon(1e-12));
            }
        }
    }
    SUBCASE("spectrum multiset is preserved, n=6") {
        const IsingHamiltonian g = random_instance(6, 9, 3);
        const SpinAssignment gv = random_spins(6, 2);
        auto a = full_spectrum(g);
        auto b = full_spectrum(gauge_transform(g, gv));
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        for (std::size_t i = 0; i < a.size(); ++i)
            CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-12));
    }
}

TEST_CASE("text format round-trips exactly") {
    const IsingHamiltonian h = random_instance(7, 21, 3);
    const IsingHamiltonian back = ising_from_text(to_text(h));
    CHECK(back == h);

    const IsingHamiltonian with_offset(2, {{{}, 0.12345678901234567}, {{0, 1}, -1.0 / 3.0}});
    CHECK(ising_from_text(to_text(with_offset)) == with_offset);

    CHECK_THROWS(ising_from_text("0 1 : 1.0\n"));  // missing header
    CHECK_THROWS(ising_from_text("n 2\n0 1 1.0\n"));
}
