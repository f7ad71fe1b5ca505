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
#include "paritylab/parity.hpp"
#include "paritylab/threads.hpp"

using namespace paritylab;

namespace {

IsingHamiltonian all_to_all(int n, std::uint64_t seed) {
    SplitMix64 rng(seed);
    IsingHamiltonian h(n);
    for (int i = 0; i < n; ++i) h.add_term({i}, rng.uniform() - 0.5);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) h.add_term({i, j}, rng.uniform() - 0.5);
    return h;
}

ParityCompilation masked_lhz(const IsingHamiltonian& h, double penalty = 1.0) {
    ParityCompilation c = compile_lhz(h, penalty);
    return with_flip_mask(c, solve_flip_mask(c));
}

// counts assignments over the parity qubits satisfying every plaquette
std::uint64_t valid_count(const ParityCompilation& c) {
    const int k = c.num_parity_qubits();
    std::uint64_t count = 0;
    for (std::uint64_t b = 0; b < (std::uint64_t{1} << k); ++b) {
        const SpinAssignment x = spins_from_bits(b, k);
        bool ok = true;
        for (const auto& p : c.plaquettes())
            if (!plaquette_satisfied(c, p, x)) ok = false;
        count += ok;
    }
    return count;
}

int member_product(const ParityCompilation&, const Plaquette& p, const SpinAssignment& x) {
    int prod = 1;
    for (int m : p.members) prod *= x[m];
    return prod;
}

}  // namespace

TEST_CASE("LHZ triangle counting") {
    SUBCASE("N=2 is a single triangle over {0},{1},{0,1}") {
        const ParityCompilation c = compile_lhz(all_to_all(2, 1));
        CHECK(c.num_parity_qubits() == 3);
        REQUIRE(c.num_plaquettes() == 1);
        CHECK(c.plaquettes()[0].kind == PlaquetteKind::kTriangle);
        std::set<std::vector<int>> labels;
        for (int m : c.plaquettes()[0].members) labels.insert(c.qubits()[m].label);
        CHECK(labels == std::set<std::vector<int>>{{0}, {1}, {0, 1}});
    }
    SUBCASE("K = N(N+1)/2 and exactly K-N plaquettes with full coverage") {
        for (int n = 2; n <= 8; ++n) {
            const ParityCompilation c = compile_lhz(all_to_all(n, n));
            CHECK(c.num_parity_qubits() == n * (n + 1) / 2);
            CHECK(c.num_plaquettes() == c.num_parity_qubits() - n);
            std::vector<char> covered(c.num_parity_qubits(), 0);
            for (const auto& p : c.plaquettes()) {
                CHECK(plaquette_parity_check(c, p));
                for (int m : p.members) covered[m] = 1;
            }
            CHECK(std::count(covered.begin(), covered.end(), 1) == c.num_parity_qubits());
        }
    }
    SUBCASE("fields are carried and unused positions stay zero") {
        IsingHamiltonian h(3);
        h.add_term({0}, 0.5);
        h.add_term({0, 2}, -0.25);
        const ParityCompilation c = compile_lhz(h);
        CHECK(c.qubits()[c.qubit_index({0})].field_coefficient == 0.5);
        CHECK(c.qubits()[c.qubit_index({0, 2})].field_coefficient == -0.25);
        CHECK(c.qubits()[c.qubit_index({1, 2})].field_coefficient == 0.0);
    }
    SUBCASE("higher-order terms are rejected") {
        IsingHamiltonian h(3);
        h.add_term({0, 1, 2}, 1.0);
        CHECK_THROWS(compile_lhz(h));
    }
}

TEST_CASE("parity condition on plaquettes") {
    // {(i),(j,k),(i,p),(j,k,p)} with i=0 j=1 k=2 p=3
    std::vector<ParityQubit> qubits(4);
    qubits[0].label = {0};
    qubits[1].label = {0, 3};
    qubits[2].label = {1, 2};
    qubits[3].label = {1, 2, 3};
    Plaquette p;
    p.kind = PlaquetteKind::kSquare;
    p.members = {0, 1, 2, 3};
    const ParityCompilation c(4, qubits, {p});
    CHECK(plaquette_parity_check(c, c.plaquettes()[0]));

    // the 4-loop {(0,1),(1,2),(2,3),(0,3)}
    std::vector<ParityQubit> loop(4);
    loop[0].label = {0, 1};
    loop[1].label = {0, 3};
    loop[2].label = {1, 2};
    loop[3].label = {2, 3};
    Plaquette lp;
    lp.kind = PlaquetteKind::kSquare;
    lp.members = {0, 1, 2, 3};
    CHECK_NOTHROW(ParityCompilation(4, loop, {lp}));

    // an open path violates parity: indices 0 and 3 appear once
    std::vector<ParityQubit> open(3);
    open[0].label = {0, 1};
    open[1].label = {1, 2};
    open[2].label = {2, 3};
    Plaquette op;
    op.kind = PlaquetteKind::kTriangle;
    op.members = {0, 1, 2};
    CHECK_THROWS(ParityCompilation(4, open, {op}));
}

TEST_CASE("flip mask solving") {
    SUBCASE("an isolated square flips exactly one member") {
        const ParityCompilation c = single_square_compilation();
        const auto mask = solve_flip_mask(c);
        CHECK(std::count(mask.begin(), mask.end(), true) == 1);
        const ParityCompilation f = with_flip_mask(c, mask);
        CHECK(f.plaquettes()[0].form == PlaquetteForm::kOdd);
    }
    SUBCASE("an isolated triangle needs no flip and stays even") {
        const ParityCompilation c = single_triangle_compilation();
        const auto mask = solve_flip_mask(c);
        CHECK(std::count(mask.begin(), mask.end(), true) == 0);
        CHECK(with_flip_mask(c, mask).plaquettes()[0].form == PlaquetteForm::kEven);
    }
    SUBCASE("every square of an LHZ triangle ends up odd") {
        for (int n = 3; n <= 7; ++n) {
            const ParityCompilation c = masked_lhz(all_to_all(n, 40 + n));
            for (const auto& p : c.plaquettes()) {
                int flips = 0;
                for (int m : p.members) flips += c.qubits()[m].flipped;
                if (p.kind == PlaquetteKind::kSquare) {
                    CHECK(flips % 2 == 1);
                    CHECK(p.form == PlaquetteForm::kOdd);
                } else {
                    CHECK((p.form == PlaquetteForm::kOdd) == (flips % 2 == 1));
                }
            }
        }
    }
}

TEST_CASE("multibody compilation") {
    SUBCASE("N=2 even triangle carries a -penalty 3-body term") {
        IsingHamiltonian h(2);
        h.add_term({0}, 0.5);
        h.add_term({1}, -0.75);
        h.add_term({0, 1}, 0.25);
        const ParityCompilation c = compile_lhz(h, 1.0);
        const IsingHamiltonian hm = to_multibody(c);
        CHECK(hm.coefficient({0, 1, 2}) == -1.0);
        CHECK(hm.coefficient({c.qubit_index({0})}) == 0.5);
        CHECK(hm.coefficient({c.qubit_index({0, 1})}) == 0.25);
    }
    SUBCASE("flipping one qubit gives the odd form with matching ground sets") {
        IsingHamiltonian h(2);
        h.add_term({0}, 0.5);
        h.add_term({1}, -0.75);
        h.add_term({0, 1}, 0.25);
        const ParityCompilation even_c = compile_lhz(h, 1.0);
        const int flip_idx = even_c.qubit_index({0, 1});
        std::vector<bool> mask(3, false);
        mask[flip_idx] = true;
        const ParityCompilation odd_c = with_flip_mask(even_c, mask);
        const IsingHamiltonian he = to_multibody(even_c);
        const IsingHamiltonian ho = to_multibody(odd_c);
        CHECK(ho.coefficient({0, 1, 2}) == 1.0);
        CHECK(ho.coefficient({flip_idx}) == -0.25);

        const GroundStates ge = brute_force_ground_states(he);
        const GroundStates go = brute_force_ground_states(ho);
        REQUIRE(ge.states.size() == go.states.size());
        std::set<SpinAssignment> flipped;
        for (SpinAssignment x : ge.states) {
            x[flip_idx] = static_cast<Spin>(-x[flip_idx]);
            flipped.insert(x);
        }
        CHECK(flipped == std::set<SpinAssignment>(go.states.begin(), go.states.end()));
    }
    SUBCASE("all-zero logical coefficients leave only the penalty") {
        const ParityCompilation c = masked_lhz(all_to_all(3, 0));
        ParityCompilation zero(c.logical_n(), [&] {
            auto qs = c.qubits();
            for (auto& q : qs) q.field_coefficient = 0.0;
            return qs;
        }(), c.plaquettes(), 2.0);
        const IsingHamiltonian hm = to_multibody(zero);
        for (const auto& t : hm.terms()) CHECK(t.indices.size() >= 3);
    }
}

TEST_CASE("quadratized plaquettes") {
    SUBCASE("odd square: 8 ground states at energy zero") {
        ParityCompilation c = single_square_compilation();
        c = with_flip_mask(c, solve_flip_mask(c));
        const IsingHamiltonian h2 = quadratize(c);
        CHECK(h2.num_spins() == 5);
        const GroundStates gs = brute_force_ground_states(h2);
        CHECK(gs.min_energy == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(gs.states.size() == 8);
    }
    SUBCASE("even square is rejected") {
        CHECK_THROWS(quadratize(single_square_compilation()));
    }
    SUBCASE("odd triangle: 4 ground states with member product -1") {
        ParityCompilation c = single_triangle_compilation();
        std::vector<bool> mask{true, false, false};
        c = with_flip_mask(c, mask);
        REQUIRE(c.plaquettes()[0].form == PlaquetteForm::kOdd);
        const GroundStates gs = brute_force_ground_states(quadratize(c));
        CHECK(gs.min_energy == doctest::Approx(0.0).epsilon(1e-12));
        REQUIRE(gs.states.size() == 4);
        for (const auto& x : gs.states)
            CHECK(member_product(c, c.plaquettes()[0], x) == -1);
    }
    SUBCASE("even triangle: 4 ground states with member product +1") {
        const ParityCompilation c = single_triangle_compilation();
        const GroundStates gs = brute_force_ground_states(quadratize(c));
        CHECK(gs.min_energy == doctest::Approx(0.0).epsilon(1e-12));
        REQUIRE(gs.states.size() == 4);
        for (const auto& x : gs.states)
            CHECK(member_product(c, c.plaquettes()[0], x) == 1);
    }
    SUBCASE("projecting a quadratized plaquette matches the multibody ground set") {
        for (bool square : {true, false}) {
            ParityCompilation c =
                square ? single_square_compilation() : single_triangle_compilation();
            c = with_flip_mask(c, solve_flip_mask(c));
            const int k = c.num_parity_qubits();
            const GroundStates multi = brute_force_ground_states(to_multibody(c));
            const GroundStates two = brute_force_ground_states(quadratize(c));
            std::set<SpinAssignment> projected;
            std::set<SpinAssignment> multi_set(multi.states.begin(), multi.states.end());
            for (const auto& x : two.states) {
                SpinAssignment member_part(x.begin(), x.begin() + k);
                CHECK(projected.insert(member_part).second);  // unique aux completion
            }
            CHECK(projected == multi_set);
        }
    }
}

TEST_CASE("penalty tuning") {
    SUBCASE("all-zero logical Hamiltonian returns the scan floor") {
        const ParityCompilation c = masked_lhz(IsingHamiltonian(3));
        CHECK(tune_penalty(c, IsingHamiltonian(3)) == 0.25);
    }
    SUBCASE("paint shop (3,1,1): separation verified by enumeration") {
        PaintShopInstance inst;
        inst.cars = 3;
        inst.groups = {{0, 1, 2}};
        inst.black_counts = {1};
        const IsingHamiltonian h = make_instance(inst);
        ParityCompilation c = masked_lhz(h);
        const double lambda = tune_penalty(c, h);
        CHECK(lambda > 0.0);
        for (double factor : {1.0, 2.0}) {  // monotonicity probe
            c = with_penalty(c, factor * lambda);
            for (bool two_body : {false, true}) {
                const IsingHamiltonian hp = two_body ? quadratize(c) : to_multibody(c);
                const int k = c.num_parity_qubits();
                std::vector<double> valid, invalid;
                for (std::uint64_t b = 0; b < (std::uint64_t{1} << hp.num_spins()); ++b) {
                    const SpinAssignment x = spins_from_bits(b, hp.num_spins());
                    const SpinAssignment members(x.begin(), x.begin() + k);
                    bool ok = true;
                    for (const auto& p : c.plaquettes())
                        if (!plaquette_satisfied(c, p, members)) ok = false;
                    (ok ? valid : invalid).push_back(energy(hp, x));
                }
                std::sort(valid.begin(), valid.end());
                std::sort(invalid.begin(), invalid.end());
                REQUIRE(valid.size() >= 2);
                CHECK(invalid.front() >= valid[1] + 1e-6);
            }
        }
    }
}

TEST_CASE("encode and decode") {
    SUBCASE("all +1 encodes to all +1 on an unflipped compilation") {
        const ParityCompilation c = compile_lhz(all_to_all(4, 2));
        const SpinAssignment x = encode(c, SpinAssignment(4, 1));
        for (int q = 0; q < c.num_parity_qubits(); ++q) CHECK(x[q] == 1);
    }
    SUBCASE("pair qubit takes the product of its logical spins") {
        const ParityCompilation c = compile_lhz(all_to_all(2, 3));
        const SpinAssignment x = encode(c, {1, -1});
        CHECK(x[c.qubit_index({0, 1})] == -1);
    }
    SUBCASE("round trip and plaquette satisfaction, exhaustive N <= 5") {
        for (int n = 2; n <= 5; ++n) {
            const ParityCompilation c = masked_lhz(all_to_all(n, 50 + n));
            const IsingHamiltonian h2 = quadratize(c);
            IsingHamiltonian hl(c.num_physical_spins());
            for (int q = 0; q < c.num_parity_qubits(); ++q) {
                const auto& pq = c.qubits()[q];
                if (pq.field_coefficient != 0.0)
                    hl.add_term({q}, pq.flipped ? -pq.field_coefficient
                                                : pq.field_coefficient);
            }
            for (std::uint64_t zb = 0; zb < (std::uint64_t{1} << n); ++zb) {
                const SpinAssignment z = spins_from_bits(zb, n);
                const SpinAssignment x = encode(c, z);
                const DecodeResult back = decode(c, x);
                CHECK(back.valid);
                CHECK(back.logical == z);
                // the penalty contributes exactly zero on encoded states
                CHECK(energy(h2, x) == doctest::Approx(energy(hl, x)).epsilon(1e-12));
            }
        }
    }
    SUBCASE("single parity-qubit flips break validity") {
        const ParityCompilation c = masked_lhz(all_to_all(4, 7));
        const SpinAssignment x = encode(c, {1, -1, 1, 1});
        for (int q = 0; q < c.num_parity_qubits(); ++q) {
            SpinAssignment y = x;
            y[q] = static_cast<Spin>(-y[q]);
            CHECK(!decode(c, y).valid);
        }
    }
    SUBCASE("valid-set cardinality is exactly 2^N") {
        for (int n = 2; n <= 5; ++n) {
            const ParityCompilation c = masked_lhz(all_to_all(n, 60 + n));
            CHECK(valid_count(c) == (std::uint64_t{1} << n));
        }
    }
    SUBCASE("decode fails when a spin is outside the label span") {
        std::vector<ParityQubit> qubits(1);
        qubits[0].label = {0, 1};
        const ParityCompilation c(3, qubits, {});
        CHECK_THROWS_WITH_AS(static_cast<void>(decode(c, {1})),
                             doctest::Contains("reference"), std::invalid_argument);
    }
    SUBCASE("decode without singletons flags the global flip") {
        // pairs-only chain: {0,1}, {1,2}: spins decodable relative to spin 0
        std::vector<ParityQubit> qubits(2);
        qubits[0].label = {0, 1};
        qubits[1].label = {1, 2};
        const ParityCompilation c(3, qubits, {});
        const DecodeResult d = decode(c, {1, -1});
        CHECK(d.global_flip_ambiguous);
        CHECK(d.logical[0] == 1);
        CHECK(d.logical[1] == 1);
        CHECK(d.logical[2] == -1);
    }
}

TEST_CASE("ground-state preservation with a tuned penalty") {
    PaintShopInstance inst;
    inst.cars = 3;
    inst.groups = {{0, 1, 2}};
    inst.black_counts = {1};
    const IsingHamiltonian h = make_instance(inst);
    ParityCompilation c = masked_lhz(h);
    c = with_penalty(c, tune_penalty(c, h));

    const GroundStates logical = brute_force_ground_states(h);
    const std::set<SpinAssignment> want(logical.states.begin(), logical.states.end());

    for (bool two_body : {false, true}) {
        const IsingHamiltonian hp = two_body ? quadratize(c) : to_multibody(c);
        const GroundStates gs = brute_force_ground_states(hp);
        std::set<SpinAssignment> decoded;
        for (const auto& x : gs.states) {
            const DecodeResult d = decode(c, x);
            CHECK(d.valid);
            decoded.insert(d.logical);
        }
        CHECK(decoded == want);
    }
}

TEST_CASE("ground-state preservation on random Hamiltonians") {
    for (int n : {3, 4}) {
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            const IsingHamiltonian h = all_to_all(n, 1000 * n + seed);
            ParityCompilation c = masked_lhz(h);
            c = with_penalty(c, tune_penalty(c, h));

            const GroundStates logical = brute_force_ground_states(h);
            const std::set<SpinAssignment> want(logical.states.begin(),
                                                logical.states.end());
            for (bool two_body : {false, true}) {
                const IsingHamiltonian hp = two_body ? quadratize(c) : to_multibody(c);
                const GroundStates gs = brute_force_ground_states(hp);
                std::set<SpinAssignment> decoded;
                bool all_valid = true;
                for (const auto& x : gs.states) {
                    const DecodeResult d = decode(c, x);
                    all_valid = all_valid && d.valid;
                    decoded.insert(d.logical);
                }
                CHECK(all_valid);
                CHECK(decoded == want);
            }
        }
    }
}

TEST_CASE("compilation JSON round-trips deterministically") {
    const ParityCompilation c = masked_lhz(all_to_all(4, 9), 1.5);
    const std::string text = compilation_to_json(c);
    const ParityCompilation back = compilation_from_json(text);
    CHECK(compilation_to_json(back) == text);
    CHECK(back.num_parity_qubits() == c.num_parity_qubits());
    CHECK(back.penalty() == c.penalty());
    for (int q = 0; q < c.num_parity_qubits(); ++q) {
        CHECK(back.qubits()[q].label == c.qubits()[q].label);
        CHECK(back.qubits()[q].flipped == c.qubits()[q].flipped);
        CHECK(back.qubits()[q].grid_pos == c.qubits()[q].grid_pos);
    }
}
