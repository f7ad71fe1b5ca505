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

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "paritylab/ising.hpp"
#include "paritylab/parity.hpp"
#include "paritylab/pegasus.hpp"

namespace paritylab {

enum class EmbeddingStyle { kOriginal, kDense };

// Parity and auxiliary qubits live on an integer plane: parity sites at
// (u, v), plaquettes on unit blocks whose corner sites they constrain, one
// auxiliary site per block.  compile_lhz's qubit with label {i,j} sits at
// (u, v) = (j, i) and the singleton {i} at (N, i).
//
// The plane maps onto Pegasus unit cells: a site with u+v even is carried by
// the cell of vertical tracks 0..3 at column-tile c = (u+v)/2 crossing
// horizontal tracks 8..11 at row-tile r = (u-v)/2; odd sites by the mirrored
// cell family.  The original style uses chains of exactly 4 spins per site
// and per auxiliary; the dense style uses chains of at most 3 and fits two
// independent layers into the same cells, which is what makes its derived
// topology larger.
struct Embedding {
    EmbeddingStyle style = EmbeddingStyle::kOriginal;
    int pegasus_m = 0;
    double chain_prefactor = 1.414;  // p in the chain-strength rule
    // chain[q] = hardware nodes carrying qubit q (placement order: the
    // compilation's physical spin indexing, parity qubits then auxiliaries)
    std::vector<std::vector<int>> chains;
    // required 2-body couplings and the hardware edges realizing them
    std::map<std::pair<int, int>, std::vector<std::pair<int, int>>> couplings;
};

int max_chain_length(EmbeddingStyle style);  // 4 original, 5 dense

struct TopoSite {
    int u = 0, v = 0;   // parity site, or block corner (U, V) for an aux
    int layer = 0;      // dense packs two layers; original has one
    bool aux = false;
    bool present = true;  // false when the carrying chain touches a defect
};

struct DerivedTopology {
    EmbeddingStyle style = EmbeddingStyle::kOriginal;
    int m = 0;
    int layers = 1;
    std::vector<TopoSite> sites;
    std::vector<std::pair<int, int>> edges;  // available couplings, site indices
    int parity_sites_present = 0;
    int plaquette_sites_present = 0;  // blocks with aux and all corners present
};

struct BuiltEmbedding {
    EmbeddingStyle style = EmbeddingStyle::kOriginal;
    Embedding lattice;  // one chain per present site (parity and aux)
    DerivedTopology topology;
};

// Whole-lattice constructions on a Pegasus graph.
BuiltEmbedding build_original(const PegasusGraph& g);
BuiltEmbedding build_dense(const PegasusGraph& g);

struct LhzPlacement {
    int n = 0;           // base size of the largest complete LHZ triangle
    int u0 = 0, v0 = 0;  // plane anchor; either parity works
    int layer = 0;
};

// Largest complete LHZ triangle whose sites, blocks and couplings are all
// present; exhaustive over anchors and layers.
LhzPlacement find_largest_lhz(const DerivedTopology& t);

// Chains for one compiled problem.  LHZ compilations are placed from their
// labels; compilations consisting of a single plaquette are placed onto one
// block.  Throws when a required site or coupling is unavailable.
Embedding place_compilation(const PegasusGraph& g, EmbeddingStyle style,
                            const ParityCompilation& c, int u0, int v0,
                            int layer = 0);

struct ValidationReport {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

// Checks the embedding invariants: chains pairwise disjoint, connected,
// defect-free, within the style's chain-length bound, and every recorded
// coupling realized by real hardware edges.
ValidationReport validate_embedding(const Embedding& e, const PegasusGraph& g);

// c = p * RMS(nonzero fields and couplings) * sqrt(mean coupling degree).
double chain_strength(const IsingHamiltonian& h2, double prefactor = 1.414);

struct EmbeddedProblem {
    IsingHamiltonian hamiltonian;  // over compact spin indices
    std::vector<int> nodes;        // sorted hardware ids; spin i <-> nodes[i]
    double chain_strength = 0.0;
    std::vector<std::vector<int>> chain_spins;        // per qubit, compact indices
    std::vector<std::pair<int, int>> chain_bonds;     // ferromagnetic bonds (compact)
};

// Local fields split uniformly across chain members, couplings uniformly
// across the available edges, spanning-tree bonds at -chain_strength (with
// the embedding's prefactor).
EmbeddedProblem embed_problem(const IsingHamiltonian& h2, const Embedding& e,
                              const PegasusGraph& g);

// Embedding JSON round-trip.
std::string embedding_to_json(const Embedding& e);
Embedding embedding_from_json(const std::string& text);

}  // namespace paritylab
