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
#include <set>

#include "paritylab/ising.hpp"
#include "paritylab/paintshop.hpp"

using namespace paritylab;

namespace {

PaintShopInstance inst311() {
    PaintShopInstance inst;
    inst.cars = 3;
    inst.groups = {{0, 1, 2}};
    inst.black_counts = {1};
    return inst;
}

std::uint64_t binom(int n, int k) {
    std::uint64_t r = 1;
    for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

// independent oracle: feasible assignments with the fewest color switches
std::set<SpinAssignment> switch_minimal_feasible(const PaintShopInstance& inst) {
    std::set<SpinAssignment> best;
    int fewest = inst.cars + 1;
    for (std::uint64_t b = 0; b < (std::uint64_t{1} << inst.cars); ++b) {
        const SpinAssignment z = spins_from_bits(b, inst.cars);
        if (!check_feasibility(inst, z)) continue;
        const int s = count_switches(z);
        if (s < fewest) {
            fewest = s;
            best.clear();
        }
        if (s == fewest) best.insert(z);
    }
    return best;
}

}  // namespace

TEST_CASE("the (3,1,1) instance has the two one-switch optima") {
    const IsingHamiltonian h = make_instance(inst311());
    const GroundStates gs = brute_force_ground_states(h);
    REQUIRE(gs.states.size() == 2);
    const std::set<SpinAssignment> got(gs.states.begin(), gs.states.end());
    CHECK(got == std::set<SpinAssignment>{{1, -1, -1}, {-1, -1, 1}});
    for (const auto& z : gs.states) CHECK(count_switches(z) == 1);
}

TEST_CASE("at C=2 and lambda=1 the feasibility separation vanishes") {
    PaintShopInstance inst;
    inst.cars = 2;
    inst.groups = {{0, 1}};
    inst.black_counts = {1};
    const IsingHamiltonian h = make_instance(inst);
    const auto spectrum = full_spectrum(h);
    for (double e : spectrum) CHECK(e == doctest::Approx(spectrum[0]));
    CHECK(lambda_tie_warning(inst));
    inst.cars = 3;
    inst.groups = {{0, 1, 2}};
    CHECK(!lambda_tie_warning(inst));
}

TEST_CASE("penalty bracket is minimized exactly on feasible colorings") {
    for (int size = 2; size <= 5; ++size) {
        for (int k = 1; k < size; ++k) {
            auto bracket = [&](const SpinAssignment& z) {
                double v = (size - 2.0 * k) * 0.0;
                double sum = 0.0, pairs = 0.0;
                for (int i = 0; i < size; ++i) sum += z[i];
                for (int i = 0; i < size; ++i)
                    for (int j = i + 1; j < size; ++j) pairs += z[i] * z[j];
                return v + (size - 2.0 * k) * sum + pairs;
            };
            double feasible_value = 0.0;
            double minimum = HUGE_VAL;
            bool seen_feasible = false;
            for (std::uint64_t b = 0; b < (std::uint64_t{1} << size); ++b) {
                const SpinAssignment z = spins_from_bits(b, size);
                int black = 0;
                for (Spin s : z)
                    if (s == 1) ++black;
                const double v = bracket(z);
                minimum = std::min(minimum, v);
                if (black == k) {
                    if (seen_feasible)
                        CHECK(v == doctest::Approx(feasible_value));
                    feasible_value = v;
                    seen_feasible = true;
                }
            }
            CHECK(seen_feasible);
            CHECK(feasible_value == doctest::Approx(minimum));
        }
    }
}

TEST_CASE("enumeration matches the expected families") {
    SUBCASE("C=2 gives exactly one instance") {
        const auto list = enumerate_instances(2, 2);
        REQUIRE(list.size() == 1);
        CHECK(list[0].groups == std::vector<std::vector<int>>{{0, 1}});
        CHECK(list[0].black_counts == std::vector<int>{1});
    }
    SUBCASE("C=4 with two pairs has the three grouping patterns") {
        const auto list = enumerate_instances(4, 4);
        int two_pair = 0;
        for (const auto& inst : list) {
            if (inst.groups.size() == 2 && inst.groups[0].size() == 2) {
                ++two_pair;
                CHECK(inst.label.substr(0, 9) == "(4, 2, 1)");
            }
        }
        CHECK(two_pair == 3);
    }
    SUBCASE("no singleton groups and no duplicates") {
        const auto list = enumerate_instances(2, 5);
        std::set<std::string> seen;
        for (const auto& inst : list) {
            validate_instance(inst);
            for (const auto& g : inst.groups) CHECK(g.size() >= 2);
            CHECK(seen.insert(instance_to_text(inst)).second);
        }
    }
}

TEST_CASE("count_switches basics") {
    CHECK(count_switches({1, 1, 1}) == 0);
    CHECK(count_switches({1, -1, 1}) == 2);
}

TEST_CASE("feasibility and the feasible-set size") {
    const PaintShopInstance inst = inst311();
    CHECK(check_feasibility(inst, {1, -1, -1}));
    CHECK(!check_feasibility(inst, {1, 1, -1}));

    for (const auto& anyinst : enumerate_instances(2, 5)) {
        std::uint64_t feasible = 0;
        for (std::uint64_t b = 0; b < (std::uint64_t{1} << anyinst.cars); ++b)
            if (check_feasibility(anyinst, spins_from_bits(b, anyinst.cars))) ++feasible;
        std::uint64_t expected = 1;
        for (std::size_t j = 0; j < anyinst.groups.size(); ++j)
            expected *= binom(static_cast<int>(anyinst.groups[j].size()),
                              anyinst.black_counts[j]);
        CHECK(feasible == expected);
    }
}

TEST_CASE("ground states are the switch-minimal feasible colorings") {
    // lambda = 1 separates for C >= 3; C = 2 needs a larger penalty
    for (auto inst : enumerate_instances(2, 5)) {
        if (inst.cars == 2) inst.lambda = 3.0;
        const GroundStates gs = brute_force_ground_states(make_instance(inst));
        const std::set<SpinAssignment> got(gs.states.begin(), gs.states.end());
        CHECK(got == switch_minimal_feasible(inst));
    }
}

TEST_CASE("objective consistency on feasible colorings") {
    for (const auto& inst : enumerate_instances(3, 5)) {
        const IsingHamiltonian h = make_instance(inst);
        bool first = true;
        double offset = 0.0;
        for (std::uint64_t b = 0; b < (std::uint64_t{1} << inst.cars); ++b) {
            const SpinAssignment z = spins_from_bits(b, inst.cars);
            if (!check_feasibility(inst, z)) continue;
            const double scaled = -1.0 +
                2.0 * count_switches(z) / static_cast<double>(inst.cars - 1);
            if (first) {
                offset = energy(h, z) - scaled;
                first = false;
            }
            CHECK(energy(h, z) == doctest::Approx(scaled + offset).epsilon(1e-12));
        }
    }
}

TEST_CASE("instance text round-trips") {
    for (const auto& inst : enumerate_instances(2, 4)) {
        const PaintShopInstance back = instance_from_text(instance_to_text(inst));
        CHECK(back.cars == inst.cars);
        CHECK(back.groups == inst.groups);
        CHECK(back.black_counts == inst.black_counts);
        CHECK(back.lambda == inst.lambda);
    }
    CHECK_THROWS(instance_from_text("C=3; groups=[[0,1,2]]; k=[3]; lambda=1"));
}
