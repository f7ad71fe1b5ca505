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

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "paritylab/ising.hpp"

namespace paritylab {

// A parity qubit represents the product of the logical spins in its label.
struct ParityQubit {
    std::vector<int> label;          // nonempty, strictly increasing
    double field_coefficient = 0.0;  // h_i or J_{...} carried from the logical H
    bool flipped = false;            // local basis negated by the flip mask
    std::optional<std::pair<int, int>> grid_pos;  // (row, col) in the LHZ layout
};

enum class PlaquetteKind { kTriangle, kSquare };
enum class PlaquetteForm { kEven, kOdd };  // even: member product +1; odd: -1

// A parity constraint over 3 or 4 parity qubits plus one auxiliary spin for
// the 2-body form.  The members' labels have empty symmetric difference.
struct Plaquette {
    PlaquetteKind kind = PlaquetteKind::kSquare;
    std::vector<int> members;  // parity qubit indices, size 3 or 4
    int aux = -1;              // auxiliary spin id (K + plaquette ordinal)
    PlaquetteForm form = PlaquetteForm::kEven;
};

// A compiled parity problem: K parity qubits, K-N plaquettes for LHZ
// triangles, and the penalty strength used by both compiled forms.
class ParityCompilation {
  public:
    ParityCompilation(int logical_n, std::vector<ParityQubit> qubits,
                      std::vector<Plaquette> plaquettes, double penalty = 1.0);

    int logical_n() const { return logical_n_; }
    int num_parity_qubits() const { return static_cast<int>(qubits_.size()); }
    int num_plaquettes() const { return static_cast<int>(plaquettes_.size()); }
    int num_physical_spins() const { return num_parity_qubits() + num_plaquettes(); }
    const std::vector<ParityQubit>& qubits() const { return qubits_; }
    const std::vector<Plaquette>& plaquettes() const { return plaquettes_; }
    double penalty() const { return penalty_; }

    int qubit_index(const std::vector<int>& label) const;  // -1 when absent

  private:
    int logical_n_;
    std::vector<ParityQubit> qubits_;  // sorted lexicographically by label
    std::vector<Plaquette> plaquettes_;
    double penalty_;
};

// All-to-all LHZ triangle for a Hamiltonian with fields and pair couplings:
// one parity qubit per singleton and per pair (K = N(N+1)/2), exactly K-N
// plaquettes (squares in the grid interior, triangles where the layout
// forces three members), fields copied from h.
ParityCompilation compile_lhz(const IsingHamiltonian& h, double penalty = 1.0);

// True iff every logical index appears an even number of times across the
// member labels (empty symmetric difference).
bool plaquette_parity_check(const ParityCompilation& c, const Plaquette& p);

// Flip mask making every square plaquette contain an odd number of flipped
// members, via a GF(2) solve of A x = 1 over the square-membership matrix.
// Triangles are unconstrained; their resulting parity lands in `form`.
std::vector<bool> solve_flip_mask(const ParityCompilation& c);

// Returns a copy with the mask applied: qubit flips set and plaquette forms
// recomputed from the number of flipped members.
ParityCompilation with_flip_mask(const ParityCompilation& c, const std::vector<bool>& mask);

ParityCompilation with_penalty(const ParityCompilation& c, double penalty);

// H~ = H_l + penalty * H_P over K spins: flip-adjusted local fields plus one
// 3- or 4-body term per plaquette (-penalty for even form, +penalty for odd).
IsingHamiltonian to_multibody(const ParityCompilation& c);

// 2-body form over K + P spins.  Per plaquette, in physical (flip-applied)
// variables:
//   odd square     (2a + n + e + w + s)^2
//   odd triangle   (1 + 2a + n + e + w)^2
//   even triangle  (1 - 2a - n - e - w)^2
// expanded into fields, pairs and a constant so each plaquette's ground
// energy is exactly 0.  Even squares are rejected (two auxiliaries needed).
IsingHamiltonian quadratize(const ParityCompilation& c);

// Smallest penalty on a doubling-then-bisection scan from 0.25 such that in
// the exact spectra of both compiled forms every parity-violating assignment
// sits strictly above the two lowest valid energies by at least `margin`.
double tune_penalty(const ParityCompilation& c, const IsingHamiltonian& h_logical,
                    double margin = 1e-6, int cap = kBruteForceCap);

// Physical assignment for a logical one: each parity qubit takes the product
// of its logical spins (negated when flipped); each auxiliary takes its
// unique energy-minimizing completion.  Length K + P.
SpinAssignment encode(const ParityCompilation& c, const SpinAssignment& z);

struct DecodeResult {
    SpinAssignment logical;
    bool valid = false;          // all plaquette parity conditions hold
    bool global_flip_ambiguous = false;  // decoded via a non-singleton basis
};

// Reads logical values back from a physical assignment (length K or K + P).
// Singleton rows are used directly; otherwise each e_i is solved as a GF(2)
// combination of available labels and the global-flip ambiguity is flagged.
DecodeResult decode(const ParityCompilation& c, const SpinAssignment& x);

// True iff x satisfies plaquette p (member product matches its form).
bool plaquette_satisfied(const ParityCompilation& c, const Plaquette& p,
                         const SpinAssignment& x);

// Deterministic JSON round-trip (qubits sorted by label).
std::string compilation_to_json(const ParityCompilation& c);
ParityCompilation compilation_from_json(const std::string& text);

// A free-standing odd/even square plaquette over labels {0},{1},{2},{0,1,2}
// (the smallest closed 4-member parity constraint; 2^3 valid states).
ParityCompilation single_square_compilation(double penalty = 1.0);
ParityCompilation single_triangle_compilation(double penalty = 1.0);

}  // namespace paritylab
