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

#include <string>
#include <vector>

#include "paritylab/ising.hpp"

namespace paritylab {

// Two-color multi-car paint shop instance: C cars on a fixed line, grouped
// into models G_j, with k_j cars of model j to be painted black (+1).
struct PaintShopInstance {
    int cars = 0;
    std::vector<std::vector<int>> groups;  // partition of 0..cars-1
    std::vector<int> black_counts;         // k_j per group
    double lambda = 1.0;

    // "(C, #groups, k)" with a letter suffix distinguishing grouping
    // variants that share the same tuple.
    std::string label;
};

void validate_instance(const PaintShopInstance& inst);

// True when lambda is too small to guarantee that penalty violations cost
// more than the best possible objective gain (happens at C=2 with lambda=1,
// where feasible and infeasible energies tie exactly).
bool lambda_tie_warning(const PaintShopInstance& inst);

// H = -(1/(C-1)) sum s_i s_{i+1}
//     + lambda * sum_j [ (|G_j|-2k_j) sum_{i in G_j} s_i
//                        + sum_{i<i' in G_j} s_i s_{i'} ]
IsingHamiltonian make_instance(const PaintShopInstance& inst);

// Every non-trivial instance for C in [c_min, c_max], up to group
// relabeling: all set partitions of the car line, all k vectors with
// 0 < k_j < |G_j|.
std::vector<PaintShopInstance> enumerate_instances(int c_min = 2, int c_max = 5);

int count_switches(const SpinAssignment& z);

bool check_feasibility(const PaintShopInstance& inst, const SpinAssignment& z);

// Instance file line: C=<n>; groups=[[...],[...]]; k=[...]; lambda=<v>
std::string instance_to_text(const PaintShopInstance& inst);
PaintShopInstance instance_from_text(const std::string& line);

}  // namespace paritylab
