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

#include <cstdint>
#include <string>
#include <vector>

#include "paritylab/embedding.hpp"
#include "paritylab/ising.hpp"

namespace paritylab {

struct SaParams {
    int sweeps = 64;                // Metropolis sweeps per temperature step
    std::vector<double> ladder;     // descending; empty selects the default
    int gauge_period = 100;         // samples per internal spin-reversal gauge
};

// Default geometric ladder: T_hot = max |coefficient| down to
// T_cold = 0.05 * min nonzero |coefficient|, 64 steps.
std::vector<double> default_ladder(const IsingHamiltonian& h, int steps = 64);

struct SampleSet {
    std::vector<SpinAssignment> samples;
    std::uint64_t seed = 0;
    SaParams params;
};

// Metropolis single-spin-flip annealing, one independent restart per sample,
// each sample on its own RNG stream derived from (seed, index).  A fresh
// random gauge is applied every gauge_period samples and undone on output.
// When `pre_gauge` is given, `h` is understood as the pre-gauged Hamiltonian
// and samples are reported in the un-gauged frame, making the output
// bit-identical to a run on the original problem.
SampleSet simulated_anneal(const IsingHamiltonian& h, const SaParams& params,
                           std::uint64_t seed, int num_samples,
                           const SpinAssignment* pre_gauge = nullptr);

enum class ChainValue : std::int8_t { kUp = 1, kDown = -1, kBroken = 0 };

struct ChainReport {
    std::vector<std::vector<ChainValue>> states;  // [sample][chain]
    std::vector<double> break_rate;               // per chain, in [0, 1]
};

ChainReport chain_states(const SampleSet& set, const EmbeddedProblem& ep);

// Collapses every chain to its majority value; exact ties fall to a
// deterministic coin drawn from (seed, chain index).
SpinAssignment majority_fix(const SpinAssignment& sample, const EmbeddedProblem& ep,
                            std::uint64_t seed);

struct GroundStateFraction {
    double raw = 0.0;      // unbroken samples decoding into the ground set
    double logical = 0.0;  // majority-fixed samples decoding into the ground set
};

GroundStateFraction gs_fraction(const SampleSet& set,
                                const std::vector<SpinAssignment>& exact_gs,
                                const EmbeddedProblem& ep, std::uint64_t fix_seed);

struct DistributionStats {
    std::vector<std::uint64_t> counts;  // matches exact_gs order
    std::uint64_t ground_total = 0;
    std::uint64_t num_samples = 0;      // counts plus non_ground sum to this
    std::uint64_t non_ground = 0;
    double uniform_reference = 0.0;     // num_samples / |ground set|
    double chi_square = 0.0;            // against uniform over found states
    std::vector<double> qubit_mean;     // fixed value stats over ground samples
    std::vector<double> qubit_variance;
};

DistributionStats distribution_stats(const SampleSet& set,
                                     const std::vector<SpinAssignment>& exact_gs,
                                     const EmbeddedProblem& ep, std::uint64_t fix_seed);

// physical energy == chain-bond part + (2-body energy of the chain values)
// for unbroken samples; exposed so tests can check the identity directly.
struct EnergyDecomposition {
    double physical = 0.0;
    double chain_terms = 0.0;
    double logical_of_fixed = 0.0;
    bool unbroken = false;
};

EnergyDecomposition decompose_energy(const SpinAssignment& sample,
                                     const EmbeddedProblem& ep,
                                     const IsingHamiltonian& h2,
                                     std::uint64_t fix_seed);

// Sample file: header lines "# seed <s>" / "# params <hash>", then one row
// of +-1 characters per sample in node-id order.
std::string samples_to_text(const SampleSet& set);
SampleSet samples_from_text(const std::string& text);

std::string stats_to_json(const DistributionStats& stats,
                          const GroundStateFraction& fraction);

}  // namespace paritylab
