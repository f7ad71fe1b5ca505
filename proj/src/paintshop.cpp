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

#include "paritylab/paintshop.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace paritylab {

void validate_instance(const PaintShopInstance& inst) {
    if (inst.cars < 2) throw std::invalid_argument("need at least 2 cars");
    std::vector<int> seen(inst.cars, 0);
    for (const auto& g : inst.groups) {
        if (g.empty()) throw std::invalid_argument("empty group");
        for (int i : g) {
            if (i < 0 || i >= inst.cars) throw std::invalid_argument("car index out of range");
            if (seen[i]++) throw std::invalid_argument("car in two groups");
        }
    }
    for (int i = 0; i < inst.cars; ++i)
        if (!seen[i]) throw std::invalid_argument("car missing from groups");
    if (inst.black_counts.size() != inst.groups.size())
        throw std::invalid_argument("one black count per group required");
    for (std::size_t j = 0; j < inst.groups.size(); ++j) {
        int k = inst.black_counts[j];
        int size = static_cast<int>(inst.groups[j].size());
        if (k <= 0 || k >= size)
            throw std::invalid_argument("trivial group: need 0 < k_j < |G_j|");
    }
    if (inst.lambda <= 0) throw std::invalid_argument("lambda must be positive");
}

bool lambda_tie_warning(const PaintShopInstance& inst) {
    // largest single-flip objective change is 2/(C-1)
    return inst.lambda < 2.0 / (inst.cars - 1);
}

IsingHamiltonian make_instance(const PaintShopInstance& inst) {
    validate_instance(inst);
    const int c = inst.cars;
    IsingHamiltonian h(c);
    const double w = -1.0 / (c - 1);
    for (int i = 0; i + 1 < c; ++i) h.add_term({i, i + 1}, w);
    for (std::size_t j = 0; j < inst.groups.size(); ++j) {
        std::vector<int> g = inst.groups[j];
        std::sort(g.begin(), g.end());
        const double field = inst.lambda * (static_cast<double>(g.size()) -
                                            2.0 * inst.black_counts[j]);
        for (int i : g) h.add_term({i}, field);
        for (std::size_t a = 0; a < g.size(); ++a)
            for (std::size_t b = a + 1; b < g.size(); ++b)
                h.add_term({g[a], g[b]}, inst.lambda);
    }
    return h;
}

namespace {

// set partitions via restricted growth strings
void partitions_of(int n, std::vector<std::vector<std::vector<int>>>& out) {
    std::vector<int> rgs(n, 0);
    while (true) {
        int blocks = *std::max_element(rgs.begin(), rgs.end()) + 1;
        std::vector<std::vector<int>> part(blocks);
        for (int i = 0; i < n; ++i) part[rgs[i]].push_back(i);
        out.push_back(std::move(part));
        // next restricted growth string
        int i = n - 1;
        for (; i > 0; --i) {
            int cap = *std::max_element(rgs.begin(), rgs.begin() + i) + 1;
            if (rgs[i] < cap) break;
        }
        if (i == 0) break;
        ++rgs[i];
        std::fill(rgs.begin() + i + 1, rgs.end(), 0);
    }
}

std::string make_label(const PaintShopInstance& inst, int variant, int variants_total) {
    std::ostringstream out;
    out << "(" << inst.cars << ", " << inst.groups.size() << ", ";
    bool uniform = true;
    for (int k : inst.black_counts)
        if (k != inst.black_counts[0]) uniform = false;
    if (uniform) {
        out << inst.black_counts[0];
    } else {
        for (std::size_t j = 0; j < inst.black_counts.size(); ++j) {
            if (j) out << '.';
            out << inst.black_counts[j];
        }
    }
    out << ")";
    if (variants_total > 1) out << static_cast<char>('a' + variant);
    return out.str();
}

}  // namespace

std::vector<PaintShopInstance> enumerate_instances(int c_min, int c_max) {
    if (c_min < 2 || c_min > c_max) throw std::invalid_argument("bad car range");
    if (c_max > 10) throw std::invalid_argument("enumeration limited to 10 cars");
    std::vector<PaintShopInstance> all;
    for (int c = c_min; c <= c_max; ++c) {
        std::vector<std::vector<std::vector<int>>> parts;
        partitions_of(c, parts);
        std::vector<PaintShopInstance> batch;
        for (const auto& part : parts) {
            bool ok = true;
            for (const auto& g : part)
                if (g.size() < 2) ok = false;  // singleton forces 0 < k < 1
            if (!ok) continue;
            // all k vectors with 0 < k_j < |G_j|
            std::vector<int> k(part.size(), 1);
            while (true) {
                PaintShopInstance inst;
                inst.cars = c;
                inst.groups = part;
                inst.black_counts = k;
                batch.push_back(inst);
                std::size_t j = 0;
                for (; j < k.size(); ++j) {
                    if (k[j] + 1 < static_cast<int>(part[j].size())) {
                        ++k[j];
                        std::fill(k.begin(), k.begin() + j, 1);
                        break;
                    }
                }
                if (j == k.size()) break;
            }
        }
        // label, counting grouping variants that share (C, #groups, k)
        std::vector<std::string> bases(batch.size());
        for (std::size_t i = 0; i < batch.size(); ++i)
            bases[i] = make_label(batch[i], 0, 1);
        for (std::size_t i = 0; i < batch.size(); ++i) {
            int variant = 0, total = 0;
            for (std::size_t j = 0; j < batch.size(); ++j) {
                if (bases[j] == bases[i]) {
                    if (j < i) ++variant;
                    ++total;
                }
            }
            batch[i].label = make_label(batch[i], variant, total);
        }
        all.insert(all.end(), batch.begin(), batch.end());
    }
    return all;
}

int count_switches(const SpinAssignment& z) {
    int switches = 0;
    for (std::size_t i = 0; i + 1 < z.size(); ++i)
        if (z[i] != z[i + 1]) ++switches;
    return switches;
}

bool check_feasibility(const PaintShopInstance& inst, const SpinAssignment& z) {
    if (static_cast<int>(z.size()) != inst.cars)
        throw std::invalid_argument("assignment length mismatch");
    for (std::size_t j = 0; j < inst.groups.size(); ++j) {
        int black = 0;
        for (int i : inst.groups[j])
            if (z[i] == 1) ++black;
        if (black != inst.black_counts[j]) return false;
    }
    return true;
}

std::string instance_to_text(const PaintShopInstance& inst) {
    std::ostringstream out;
    out << "C=" << inst.cars << "; groups=[";
    for (std::size_t j = 0; j < inst.groups.size(); ++j) {
        if (j) out << ",";
        out << "[";
        for (std::size_t i = 0; i < inst.groups[j].size(); ++i) {
            if (i) out << ",";
            out << inst.groups[j][i];
        }
        out << "]";
    }
    out << "]; k=[";
    for (std::size_t j = 0; j < inst.black_counts.size(); ++j) {
        if (j) out << ",";
        out << inst.black_counts[j];
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", inst.lambda);
    out << "]; lambda=" << buf;
    return out.str();
}

namespace {

void expect(std::istringstream& in, const std::string& want) {
    for (char c : want) {
        int got = in.get();
        if (got != c) throw std::invalid_argument("bad instance syntax near '" + want + "'");
    }
}

std::vector<int> parse_int_list(std::istringstream& in) {
    std::vector<int> out;
    expect(in, "[");
    if (in.peek() == ']') {
        in.get();
        return out;
    }
    while (true) {
        int v;
        if (!(in >> v)) throw std::invalid_argument("bad integer in instance");
        out.push_back(v);
        int c = in.get();
        if (c == ']') break;
        if (c != ',') throw std::invalid_argument("bad list separator");
    }
    return out;
}

}  // namespace

PaintShopInstance instance_from_text(const std::string& line) {
    PaintShopInstance inst;
    std::istringstream in(line);
    expect(in, "C=");
    if (!(in >> inst.cars)) throw std::invalid_argument("bad car count");
    expect(in, "; groups=[");
    while (true) {
        inst.groups.push_back(parse_int_list(in));
        int c = in.get();
        if (c == ']') break;
        if (c != ',') throw std::invalid_argument("bad group separator");
    }
    expect(in, "; k=");
    inst.black_counts = parse_int_list(in);
    expect(in, "; lambda=");
    if (!(in >> inst.lambda)) throw std::invalid_argument("bad lambda");
    validate_instance(inst);
    return inst;
}

}  // namespace paritylab
