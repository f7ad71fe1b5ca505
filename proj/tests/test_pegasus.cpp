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
#include <set>

#include "paritylab/pegasus.hpp"

using namespace paritylab;

TEST_CASE("generator agrees with the independent adjacency reference") {
    for (int m : {2, 3}) {
        const PegasusGraph g(m);
        CHECK(g.num_nodes() == 24 * m * (m - 1));
        std::set<std::pair<int, int>> reference;
        for (int a = 0; a < g.num_nodes(); ++a)
            for (int b = a + 1; b < g.num_nodes(); ++b)
                if (pegasus_adjacent_reference(m, g.coord(a), g.coord(b)))
                    reference.insert({a, b});
        const std::set<std::pair<int, int>> built(g.edges().begin(), g.edges().end());
        CHECK(built == reference);
    }
}

TEST_CASE("sizes below 2 are rejected") { CHECK_THROWS(PegasusGraph(1)); }

TEST_CASE("coordinate round trip and degree bound") {
    const PegasusGraph g(4);
    int maxdeg = 0;
    for (int id = 0; id < g.num_nodes(); ++id) {
        CHECK(g.node_id(g.coord(id)) == id);
        maxdeg = std::max(maxdeg, static_cast<int>(g.neighbors(id).size()));
    }
    // bulk qubits reach 12 internal + 2 external + 1 odd couplers
    CHECK(maxdeg == 15);
}

TEST_CASE("P_2 is an induced subgraph of P_3 under coordinate inclusion") {
    const PegasusGraph small(2), big(3);
    auto lift = [&](int id) {
        const PegasusCoord c = small.coord(id);
        return big.node_id(c);
    };
    for (const auto& [a, b] : small.edges()) CHECK(big.adjacent(lift(a), lift(b)));
}

TEST_CASE("defects remove nodes and their edges") {
    std::set<int> all;
    const PegasusGraph probe(2);
    for (int id = 0; id < probe.num_nodes(); ++id) all.insert(id);
    const PegasusGraph empty(2, all);
    CHECK(empty.edges().empty());

    const PegasusGraph g(2, {0});
    for (const auto& [a, b] : g.edges()) {
        CHECK(a != 0);
        CHECK(b != 0);
    }
}

TEST_CASE("graph text round-trips and rejects corrupted edge lists") {
    const PegasusGraph g(2, {5});
    const std::string text = pegasus_to_text(g);
    const PegasusGraph back = pegasus_from_text(text);
    CHECK(back.m() == 2);
    CHECK(back.defects() == g.defects());
    CHECK(back.edges() == g.edges());

    std::string corrupted = text;
    corrupted += "0 1\n";
    CHECK_THROWS(pegasus_from_text(corrupted));
}

TEST_CASE("diamond rows are numbered 0..2(m-2)") {
    for (int m : {3, 4}) {
        const PegasusGraph g(m);
        const auto rows = extract_diamonds(g);
        CHECK(static_cast<int>(rows.size()) == 2 * (m - 2) + 1);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            CHECK(!rows[r].empty());
            for (const auto& d : rows[r]) CHECK(d.row == static_cast<int>(r));
        }
    }
}

TEST_CASE("every diamond satisfies the adjacency contract") {
    const PegasusGraph g(3);
    for (const auto& row : extract_diamonds(g)) {
        for (const auto& d : row) {
            REQUIRE(d.external.size() == 4);
            REQUIRE(d.internal.size() == 4);
            for (int in : d.internal)
                for (int ex : d.external) CHECK(g.adjacent(in, ex));
        }
        // externals of adjacent diamonds in a row are pairwise connectable
        for (std::size_t i = 0; i + 1 < row.size(); ++i) {
            int links = 0;
            for (int a : row[i].external)
                for (int b : row[i + 1].external)
                    if (g.adjacent(a, b)) ++links;
            CHECK(links >= 4);
        }
    }
}

TEST_CASE("a fully defective graph flags every diamond") {
    std::set<int> all;
    const PegasusGraph probe(3);
    for (int id = 0; id < probe.num_nodes(); ++id) all.insert(id);
    const PegasusGraph g(3, all);
    for (const auto& row : extract_diamonds(g))
        for (const auto& d : row) CHECK(d.defective);
}
