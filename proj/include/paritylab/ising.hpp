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
#include <iosfwd>
#include <string>
#include <vector>

namespace paritylab {

// Spins live in {-1, +1}.  Assignments are indexed 0..n-1.
using Spin = std::int8_t;
using SpinAssignment = std::vector<Spin>;

// One product term: strictly increasing index set and a real coefficient.
// An empty index set is a constant offset.
struct IsingTerm {
    std::vector<int> indices;
    double coefficient = 0.0;

    bool operator==(const IsingTerm&) const = default;
};

// Arbitrary-order Ising Hamiltonian over n spins.  Terms are held sorted by
// index set; duplicate index sets passed to the constructor are merged by
// coefficient addition (quadratization produces repeated pairs).
class IsingHamiltonian {
  public:
    IsingHamiltonian() = default;
    explicit IsingHamiltonian(int n) : n_(n) {}
    IsingHamiltonian(int n, std::vector<IsingTerm> terms);

    int num_spins() const { return n_; }
    const std::vector<IsingTerm>& terms() const { return terms_; }
    int max_order() const;

    // Adds coeff onto the term with this index set (insert if absent).
    void add_term(std::vector<int> indices, double coeff);
    double coefficient(const std::vector<int>& indices) const;

    bool operator==(const IsingHamiltonian& other) const = default;

  private:
    int n_ = 0;
    std::vector<IsingTerm> terms_;
};

double energy(const IsingHamiltonian& h, const SpinAssignment& x);

// Assignment encoded as a bit string; bit i set means spin i is -1.
SpinAssignment spins_from_bits(std::uint64_t bits, int n);
std::uint64_t bits_from_spins(const SpinAssignment& x);

// Precomputed term masks for fast evaluation over bit-encoded assignments.
struct CompiledEnergy {
    explicit CompiledEnergy(const IsingHamiltonian& h);
    double operator()(std::uint64_t bits) const;

    std::vector<std::uint64_t> masks;
    std::vector<double> coeffs;
};

struct GroundStates {
    double min_energy = 0.0;
    std::vector<SpinAssignment> states;  // in ascending bit order
};

inline constexpr int kBruteForceCap = 24;
inline constexpr double kEnergyTol = 1e-9;

// Exhaustive minimum over all 2^n assignments.  States within kEnergyTol of
// the minimum are all returned.  The parallel version partitions the range
// and merges deterministically; both produce identical results.
GroundStates brute_force_ground_states(const IsingHamiltonian& h,
                                       int cap = kBruteForceCap);
GroundStates brute_force_ground_states_serial(const IsingHamiltonian& h,
                                              int cap = kBruteForceCap);

// All 2^n energies in bit order (n capped as above).
std::vector<double> full_spectrum(const IsingHamiltonian& h,
                                  int cap = kBruteForceCap);

// Adds eps to the local field of spin n-1.  eps == 0 is rejected.
IsingHamiltonian add_last_spin_bias(const IsingHamiltonian& h, double eps);

// Spin-reversal transform: every coefficient is multiplied by the product of
// g over the term's indices, so energy(h, x) == energy(gauge(h, g), x*g).
IsingHamiltonian gauge_transform(const IsingHamiltonian& h,
                                 const SpinAssignment& g);

SpinAssignment elementwise_product(const SpinAssignment& a,
                                   const SpinAssignment& b);

// Text format: optional '#' comments, a "n <count>" header, then one term
// per line as "i j ... : coefficient" (empty index list = constant offset).
// Coefficients are written with 17 significant digits so files round-trip.
std::string to_text(const IsingHamiltonian& h);
IsingHamiltonian ising_from_text(const std::string& text);
IsingHamiltonian load_ising(const std::string& path);
void save_ising(const IsingHamiltonian& h, const std::string& path);

}  // namespace paritylab
