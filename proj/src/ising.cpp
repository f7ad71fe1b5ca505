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

#include "paritylab/ising.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "paritylab/threads.hpp"

namespace paritylab {

namespace {

void check_indices(const std::vector<int>& indices, int n) {
    for (std::size_t i = 0; i < indices.size(); ++i) {
        if (indices[i] < 0 || indices[i] >= n)
            throw std::invalid_argument("term index out of range");
        if (i > 0 && indices[i] <= indices[i - 1])
            throw std::invalid_argument("term indices must be strictly increasing");
    }
}

void check_assignment(const SpinAssignment& x, int n) {
    if (static_cast<int>(x.size()) != n)
        throw std::invalid_argument("assignment length does not match spin count");
    for (Spin s : x)
        if (s != 1 && s != -1)
            throw std::invalid_argument("spins must be +1 or -1");
}

}  // namespace

IsingHamiltonian::IsingHamiltonian(int n, std::vector<IsingTerm> terms) : n_(n) {
    if (n < 0) throw std::invalid_argument("negative spin count");
    std::map<std::vector<int>, double> merged;
    for (auto& t : terms) {
        check_indices(t.indices, n);
        merged[t.indices] += t.coefficient;
    }
    terms_.reserve(merged.size());
    for (auto& [idx, coeff] : merged) terms_.push_back({idx, coeff});
}

int IsingHamiltonian::max_order() const {
    std::size_t order = 0;
    for (const auto& t : terms_) order = std::max(order, t.indices.size());
    return static_cast<int>(order);
}

void IsingHamiltonian::add_term(std::vector<int> indices, double coeff) {
    check_indices(indices, n_);
    auto it = std::lower_bound(terms_.begin(), terms_.end(), indices,
                               [](const IsingTerm& t, const std::vector<int>& idx) {
                                   return t.indices < idx;
                               });
    if (it != terms_.end() && it->indices == indices) {
        it->coefficient += coeff;
    } else {
        terms_.insert(it, {std::move(indices), coeff});
    }
}

double IsingHamiltonian::coefficient(const std::vector<int>& indices) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), indices,
                               [](const IsingTerm& t, const std::vector<int>& idx) {
                                   return t.indices < idx;
                               });
    if (it != terms_.end() && it->indices == indices) return it->coefficient;
    return 0.0;
}

double energy(const IsingHamiltonian& h, const SpinAssignment& x) {
    check_assignment(x, h.num_spins());
    double total = 0.0;
    for (const auto& t : h.terms()) {
        double prod = t.coefficient;
        for (int i : t.indices) prod *= x[i];
        total += prod;
    }
    return total;
}

SpinAssignment spins_from_bits(std::uint64_t bits, int n) {
    SpinAssignment x(n);
    for (int i = 0; i < n; ++i) x[i] = (bits >> i) & 1 ? -1 : 1;
    return x;
}

std::uint64_t bits_from_spins(const SpinAssignment& x) {
    std::uint64_t bits = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i] < 0) bits |= std::uint64_t{1} << i;
    return bits;
}

CompiledEnergy::CompiledEnergy(const IsingHamiltonian& h) {
    masks.reserve(h.terms().size());
    coeffs.reserve(h.terms().size());
    for (const auto& t : h.terms()) {
        std::uint64_t m = 0;
        for (int i : t.indices) m |= std::uint64_t{1} << i;
        masks.push_back(m);
        coeffs.push_back(t.coefficient);
    }
}

double CompiledEnergy::operator()(std::uint64_t bits) const {
    double total = 0.0;
    for (std::size_t t = 0; t < masks.size(); ++t) {
        int par = std::popcount(bits & masks[t]) & 1;
        total += par ? -coeffs[t] : coeffs[t];
    }
    return total;
}

namespace {

GroundStates collect_states(const IsingHamiltonian& h, const CompiledEnergy& ce,
                            double emin) {
    const int n = h.num_spins();
    const std::uint64_t total = std::uint64_t{1} << n;
    GroundStates gs;
    gs.min_energy = emin;
    for (std::uint64_t b = 0; b < total; ++b) {
        if (std::abs(ce(b) - emin) <= kEnergyTol) gs.states.push_back(spins_from_bits(b, n));
    }
    return gs;
}

void check_cap(const IsingHamiltonian& h, int cap) {
    if (h.num_spins() > cap)
        throw std::invalid_argument("brute force limited to " + std::to_string(cap) +
                                    " spins, got " + std::to_string(h.num_spins()));
}

}  // namespace

GroundStates brute_force_ground_states_serial(const IsingHamiltonian& h, int cap) {
    check_cap(h, cap);
    const CompiledEnergy ce(h);
    const std::uint64_t total = std::uint64_t{1} << h.num_spins();
    double emin = ce(0);
    for (std::uint64_t b = 1; b < total; ++b) emin = std::min(emin, ce(b));
    return collect_states(h, ce, emin);
}

GroundStates brute_force_ground_states(const IsingHamiltonian& h, int cap) {
    check_cap(h, cap);
    const CompiledEnergy ce(h);
    const std::uint64_t total = std::uint64_t{1} << h.num_spins();

    // pass 1: global minimum (min is order-independent, so a plain parallel
    // reduction is already deterministic)
    const std::uint64_t nchunks = (total + kReduceChunk - 1) / kReduceChunk;
    std::vector<double> partial(nchunks, 0.0);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (std::int64_t c = 0; c < static_cast<std::int64_t>(nchunks); ++c) {
        const std::uint64_t lo = static_cast<std::uint64_t>(c) * kReduceChunk;
        const std::uint64_t hi = std::min<std::uint64_t>(lo + kReduceChunk, total);
        double m = ce(lo);
        for (std::uint64_t b = lo + 1; b < hi; ++b) m = std::min(m, ce(b));
        partial[static_cast<std::uint64_t>(c)] = m;
    }
    double emin = partial[0];
    for (double m : partial) emin = std::min(emin, m);

    // pass 2: collect attaining states in bit order
    std::vector<std::vector<std::uint64_t>> hits(nchunks);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (std::int64_t c = 0; c < static_cast<std::int64_t>(nchunks); ++c) {
        const std::uint64_t lo = static_cast<std::uint64_t>(c) * kReduceChunk;
        const std::uint64_t hi = std::min<std::uint64_t>(lo + kReduceChunk, total);
        for (std::uint64_t b = lo; b < hi; ++b)
            if (std::abs(ce(b) - emin) <= kEnergyTol)
                hits[static_cast<std::uint64_t>(c)].push_back(b);
    }
    GroundStates gs;
    gs.min_energy = emin;
    for (const auto& chunk : hits)
        for (std::uint64_t b : chunk) gs.states.push_back(spins_from_bits(b, h.num_spins()));
    return gs;
}

std::vector<double> full_spectrum(const IsingHamiltonian& h, int cap) {
    check_cap(h, cap);
    const CompiledEnergy ce(h);
    const std::uint64_t total = std::uint64_t{1} << h.num_spins();
    std::vector<double> energies(total);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (std::int64_t b = 0; b < static_cast<std::int64_t>(total); ++b)
        energies[static_cast<std::uint64_t>(b)] = ce(static_cast<std::uint64_t>(b));
    return energies;
}

IsingHamiltonian add_last_spin_bias(const IsingHamiltonian& h, double eps) {
    if (h.num_spins() < 1) throw std::invalid_argument("need at least one spin");
    if (eps == 0.0) throw std::invalid_argument("bias must be nonzero");
    IsingHamiltonian out = h;
    out.add_term({h.num_spins() - 1}, eps);
    return out;
}

IsingHamiltonian gauge_transform(const IsingHamiltonian& h, const SpinAssignment& g) {
    check_assignment(g, h.num_spins());
    std::vector<IsingTerm> terms = h.terms();
    for (auto& t : terms)
        for (int i : t.indices) t.coefficient *= g[i];
    return IsingHamiltonian(h.num_spins(), std::move(terms));
}

SpinAssignment elementwise_product(const SpinAssignment& a, const SpinAssignment& b) {
    if (a.size() != b.size()) throw std::invalid_argument("length mismatch");
    SpinAssignment out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] = static_cast<Spin>(a[i] * b[i]);
    return out;
}

std::string to_text(const IsingHamiltonian& h) {
    std::ostringstream out;
    out << "n " << h.num_spins() << "\n";
    char buf[64];
    for (const auto& t : h.terms()) {
        for (std::size_t i = 0; i < t.indices.size(); ++i) {
            if (i) out << ' ';
            out << t.indices[i];
        }
        std::snprintf(buf, sizeof buf, "%.17g", t.coefficient);
        out << " : " << buf << "\n";
    }
    return out.str();
}

IsingHamiltonian ising_from_text(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int n = -1;
    std::vector<IsingTerm> terms;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue;
        if (tok == "n") {
            if (!(ls >> n) || n < 0) throw std::invalid_argument("bad header line");
            continue;
        }
        if (n < 0) throw std::invalid_argument("missing 'n <count>' header");
        IsingTerm t;
        bool seen_colon = false;
        do {
            if (tok == ":") {
                seen_colon = true;
                break;
            }
            t.indices.push_back(std::stoi(tok));
        } while (ls >> tok);
        if (!seen_colon || !(ls >> t.coefficient))
            throw std::invalid_argument("malformed term line: " + line);
        terms.push_back(std::move(t));
    }
    if (n < 0) throw std::invalid_argument("missing 'n <count>' header");
    return IsingHamiltonian(n, std::move(terms));
}

IsingHamiltonian load_ising(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return ising_from_text(buf.str());
}

void save_ising(const IsingHamiltonian& h, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << to_text(h);
}

}  // namespace paritylab
