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

#include "paritylab/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "paritylab/threads.hpp"

namespace paritylab {

std::vector<double> default_ladder(const IsingHamiltonian& h, int steps) {
    if (steps < 2) throw std::invalid_argument("ladder needs at least two steps");
    double hot = 0.0, cold_base = HUGE_VAL;
    for (const auto& t : h.terms()) {
        if (t.indices.empty() || t.coefficient == 0.0) continue;
        hot = std::max(hot, std::abs(t.coefficient));
        cold_base = std::min(cold_base, std::abs(t.coefficient));
    }
    if (hot == 0.0) {
        hot = 1.0;
        cold_base = 1.0;
    }
    const double cold = 0.05 * cold_base;
    std::vector<double> ladder(steps);
    for (int i = 0; i < steps; ++i)
        ladder[i] = hot * std::pow(cold / hot, static_cast<double>(i) / (steps - 1));
    return ladder;
}

namespace {

struct FlipTable {
    // per spin: the terms containing it
    std::vector<std::vector<int>> spin_terms;
    std::vector<double> coeffs;
    std::vector<std::vector<int>> term_indices;

    explicit FlipTable(const IsingHamiltonian& h) : spin_terms(h.num_spins()) {
        for (const auto& t : h.terms()) {
            if (t.indices.empty()) continue;
            const int id = static_cast<int>(coeffs.size());
            coeffs.push_back(t.coefficient);
            term_indices.push_back(t.indices);
            for (int i : t.indices) spin_terms[i].push_back(id);
        }
    }

    double flip_delta(const SpinAssignment& x, int spin) const {
        double local = 0.0;
        for (int id : spin_terms[spin]) {
            double prod = coeffs[id];
            for (int j : term_indices[id]) prod *= x[j];
            local += prod;
        }
        return -2.0 * local;
    }
};

void check_params(const SaParams& p) {
    if (p.sweeps < 1) throw std::invalid_argument("need at least one sweep");
    if (p.gauge_period < 1) throw std::invalid_argument("gauge period must be positive");
    for (std::size_t i = 1; i < p.ladder.size(); ++i)
        if (!(p.ladder[i] < p.ladder[i - 1]))
            throw std::invalid_argument("temperature ladder must be strictly descending");
    for (double t : p.ladder)
        if (!(t > 0.0)) throw std::invalid_argument("temperatures must be positive");
}

SpinAssignment gauge_for_period(std::uint64_t seed, std::uint64_t period, int n) {
    SplitMix64 rng(mix_seed(seed ^ 0x6761756765ull, period));
    SpinAssignment g(n);
    for (int i = 0; i < n; ++i) g[i] = rng.next() & 1 ? -1 : 1;
    return g;
}

}  // namespace

SampleSet simulated_anneal(const IsingHamiltonian& h, const SaParams& params,
                           std::uint64_t seed, int num_samples,
                           const SpinAssignment* pre_gauge) {
    check_params(params);
    if (num_samples < 0) throw std::invalid_argument("negative sample count");
    SaParams p = params;
    if (p.ladder.empty()) p.ladder = default_ladder(h);
    const int n = h.num_spins();
    if (pre_gauge && static_cast<int>(pre_gauge->size()) != n)
        throw std::invalid_argument("pre-gauge length mismatch");

    SampleSet set;
    set.seed = seed;
    set.params = p;
    set.samples.resize(num_samples);

    // Per-period gauged Hamiltonians.  The trajectory in a gauged frame is
    // the base trajectory transported, so internal gauging never changes the
    // emitted samples; it exercises the same pipeline the hardware runs.
    const std::uint64_t periods = num_samples ? (num_samples - 1) / p.gauge_period + 1 : 0;
    std::vector<IsingHamiltonian> gauged(periods);
    std::vector<SpinAssignment> totals(periods);
    for (std::uint64_t g = 0; g < periods; ++g) {
        SpinAssignment gp = gauge_for_period(seed, g, n);
        totals[g] = pre_gauge ? elementwise_product(*pre_gauge, gp) : gp;
        gauged[g] = gauge_transform(h, totals[g]);
    }

#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (int idx = 0; idx < num_samples; ++idx) {
        const std::uint64_t period = static_cast<std::uint64_t>(idx) / p.gauge_period;
        const FlipTable table(gauged[period]);
        const SpinAssignment gp = gauge_for_period(seed, period, n);
        SplitMix64 rng(mix_seed(seed, static_cast<std::uint64_t>(idx)));

        SpinAssignment x(n);
        for (int i = 0; i < n; ++i) x[i] = rng.next() & 1 ? -1 : 1;
        x = elementwise_product(x, gp);  // transport into the gauged frame

        for (double temp : p.ladder) {
            const double inv_t = 1.0 / temp;
            for (int sweep = 0; sweep < p.sweeps; ++sweep) {
                for (int i = 0; i < n; ++i) {
                    const double delta = table.flip_delta(x, i);
                    if (delta <= 0.0 || rng.uniform() < std::exp(-delta * inv_t))
                        x[i] = static_cast<Spin>(-x[i]);
                }
            }
        }
        // Un-gauge by the internal period gauge; reporting in the pre-gauge's
        // base frame cancels the pre-gauge factor exactly.
        set.samples[idx] = elementwise_product(x, gp);
    }
    return set;
}

ChainReport chain_states(const SampleSet& set, const EmbeddedProblem& ep) {
    ChainReport report;
    report.states.resize(set.samples.size());
    report.break_rate.assign(ep.chain_spins.size(), 0.0);
    for (std::size_t s = 0; s < set.samples.size(); ++s) {
        const SpinAssignment& x = set.samples[s];
        if (x.size() != ep.nodes.size())
            throw std::invalid_argument("sample width does not match the embedding");
        report.states[s].resize(ep.chain_spins.size());
        for (std::size_t q = 0; q < ep.chain_spins.size(); ++q) {
            Spin first = x[ep.chain_spins[q][0]];
            bool aligned = true;
            for (int spin : ep.chain_spins[q])
                if (x[spin] != first) aligned = false;
            report.states[s][q] = aligned ? (first > 0 ? ChainValue::kUp : ChainValue::kDown)
                                          : ChainValue::kBroken;
            if (!aligned) report.break_rate[q] += 1.0;
        }
    }
    if (!set.samples.empty())
        for (double& rate : report.break_rate) rate /= static_cast<double>(set.samples.size());
    return report;
}

SpinAssignment majority_fix(const SpinAssignment& sample, const EmbeddedProblem& ep,
                            std::uint64_t seed) {
    SpinAssignment fixed(ep.chain_spins.size());
    for (std::size_t q = 0; q < ep.chain_spins.size(); ++q) {
        int sum = 0;
        for (int spin : ep.chain_spins[q]) sum += sample[spin];
        if (sum > 0) {
            fixed[q] = 1;
        } else if (sum < 0) {
            fixed[q] = -1;
        } else {
            SplitMix64 coin(mix_seed(seed ^ 0x6669780aull, q));
            fixed[q] = coin.next() & 1 ? -1 : 1;
        }
    }
    return fixed;
}

namespace {

int find_ground_index(const SpinAssignment& fixed, const std::vector<SpinAssignment>& gs) {
    for (std::size_t i = 0; i < gs.size(); ++i)
        if (gs[i] == fixed) return static_cast<int>(i);
    return -1;
}

}  // namespace

GroundStateFraction gs_fraction(const SampleSet& set,
                                const std::vector<SpinAssignment>& exact_gs,
                                const EmbeddedProblem& ep, std::uint64_t fix_seed) {
    if (exact_gs.empty()) throw std::invalid_argument("empty ground-state set");
    const ChainReport report = chain_states(set, ep);
    std::uint64_t raw = 0, logical = 0;
    for (std::size_t s = 0; s < set.samples.size(); ++s) {
        bool unbroken = true;
        SpinAssignment chain_values(ep.chain_spins.size());
        for (std::size_t q = 0; q < ep.chain_spins.size(); ++q) {
            if (report.states[s][q] == ChainValue::kBroken) unbroken = false;
            chain_values[q] = static_cast<Spin>(report.states[s][q]);
        }
        if (unbroken && find_ground_index(chain_values, exact_gs) >= 0) ++raw;
        const SpinAssignment fixed = majority_fix(set.samples[s], ep, fix_seed);
        if (find_ground_index(fixed, exact_gs) >= 0) ++logical;
    }
    GroundStateFraction out;
    if (!set.samples.empty()) {
        out.raw = static_cast<double>(raw) / set.samples.size();
        out.logical = static_cast<double>(logical) / set.samples.size();
    }
    return out;
}

DistributionStats distribution_stats(const SampleSet& set,
                                     const std::vector<SpinAssignment>& exact_gs,
                                     const EmbeddedProblem& ep, std::uint64_t fix_seed) {
    if (exact_gs.empty()) throw std::invalid_argument("empty ground-state set");
    DistributionStats stats;
    stats.counts.assign(exact_gs.size(), 0);
    const std::size_t k = ep.chain_spins.size();
    std::vector<double> sum(k, 0.0), sum_sq(k, 0.0);
    for (const auto& sample : set.samples) {
        const SpinAssignment fixed = majority_fix(sample, ep, fix_seed);
        const int idx = find_ground_index(fixed, exact_gs);
        if (idx < 0) continue;
        ++stats.counts[idx];
        ++stats.ground_total;
        for (std::size_t q = 0; q < k; ++q) {
            sum[q] += fixed[q];
            sum_sq[q] += 1.0;  // fixed values are +-1
        }
    }
    stats.num_samples = set.samples.size();
    stats.non_ground = stats.num_samples - stats.ground_total;
    stats.uniform_reference = static_cast<double>(set.samples.size()) / exact_gs.size();
    if (stats.ground_total) {
        const double expected = static_cast<double>(stats.ground_total) / exact_gs.size();
        for (std::uint64_t c : stats.counts) {
            const double d = static_cast<double>(c) - expected;
            stats.chi_square += d * d / expected;
        }
        stats.qubit_mean.resize(k);
        stats.qubit_variance.resize(k);
        for (std::size_t q = 0; q < k; ++q) {
            stats.qubit_mean[q] = sum[q] / static_cast<double>(stats.ground_total);
            stats.qubit_variance[q] =
                sum_sq[q] / static_cast<double>(stats.ground_total) -
                stats.qubit_mean[q] * stats.qubit_mean[q];
        }
    }
    return stats;
}

EnergyDecomposition decompose_energy(const SpinAssignment& sample,
                                     const EmbeddedProblem& ep,
                                     const IsingHamiltonian& h2,
                                     std::uint64_t fix_seed) {
    EnergyDecomposition out;
    out.physical = energy(ep.hamiltonian, sample);
    for (auto [a, b] : ep.chain_bonds)
        out.chain_terms += -ep.chain_strength * sample[a] * sample[b];
    out.unbroken = true;
    for (const auto& chain : ep.chain_spins) {
        for (int spin : chain)
            if (sample[spin] != sample[chain[0]]) out.unbroken = false;
    }
    const SpinAssignment fixed = majority_fix(sample, ep, fix_seed);
    out.logical_of_fixed = energy(h2, fixed);
    return out;
}

std::string samples_to_text(const SampleSet& set) {
    std::ostringstream out;
    out << "# seed " << set.seed << "\n";
    out << "# sweeps " << set.params.sweeps << " gauge_period " << set.params.gauge_period
        << " ladder " << set.params.ladder.size() << "\n";
    for (const auto& sample : set.samples) {
        for (Spin s : sample) out << (s > 0 ? '+' : '-');
        out << "\n";
    }
    return out.str();
}

SampleSet samples_from_text(const std::string& text) {
    SampleSet set;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::istringstream ls(line);
            std::string hash, key;
            ls >> hash >> key;
            if (key == "seed") ls >> set.seed;
            continue;
        }
        SpinAssignment x;
        x.reserve(line.size());
        for (char ch : line) {
            if (ch == '+')
                x.push_back(1);
            else if (ch == '-')
                x.push_back(-1);
            else
                throw std::invalid_argument("bad sample character");
        }
        set.samples.push_back(std::move(x));
    }
    return set;
}

std::string stats_to_json(const DistributionStats& stats,
                          const GroundStateFraction& fraction) {
    nlohmann::ordered_json j;
    j["raw_fraction"] = fraction.raw;
    j["logical_fraction"] = fraction.logical;
    j["num_samples"] = stats.num_samples;
    j["ground_total"] = stats.ground_total;
    j["non_ground"] = stats.non_ground;
    j["uniform_reference"] = stats.uniform_reference;
    j["chi_square"] = stats.chi_square;
    j["counts"] = stats.counts;
    j["qubit_mean"] = stats.qubit_mean;
    j["qubit_variance"] = stats.qubit_variance;
    return j.dump(2) + "\n";
}

}  // namespace paritylab
