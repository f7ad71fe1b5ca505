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

#include "paritylab/ising.hpp"
#include "paritylab/paintshop.hpp"
#include "paritylab/parity.hpp"

namespace paritylab {

inline constexpr int kSimulationCap = 20;

// Piecewise-linear annealing schedule s(t), t in microseconds.  Pauses are
// flat segments.  Only the normalized-time profile is modeled here; the
// hardware pausing protocol itself is out of scope, but the schedule carries
// the minimum-gap location that protocol would probe.
struct SchedulePoint {
    double t = 0.0;
    double s = 0.0;
};

class Schedule {
  public:
    explicit Schedule(std::vector<SchedulePoint> breakpoints);

    const std::vector<SchedulePoint>& breakpoints() const { return points_; }
    double total_time() const { return points_.back().t; }
    double s_at(double t) const;
    bool has_pause() const;

  private:
    std::vector<SchedulePoint> points_;
};

Schedule linear_schedule(double total_time);

// Fast ramp to s_star by t = s_star/2, a hold of pause_duration, then a slow
// ramp finishing at total_time.
Schedule paused_schedule(double s_star, double pause_duration = 10.0,
                         double total_time = 20.0);

// H(s) = (1 - s) * sum_i sigma_x^i + s * H_f.  H_f is diagonal in the
// computational basis (any interaction order), so the operator is a diagonal
// plus the hypercube adjacency and a matrix-vector product costs O(n 2^n).
// Basis state b has spin i = -1 iff bit i of b is set.
class AnnealOperator {
  public:
    AnnealOperator(const IsingHamiltonian& h_f, int cap = kSimulationCap);

    int num_spins() const { return n_; }
    std::uint64_t dimension() const { return std::uint64_t{1} << n_; }
    const std::vector<double>& diagonal() const { return diag_; }

    // y = H(s) x
    void apply(double s, const std::vector<double>& x, std::vector<double>& y) const;
    void apply_serial(double s, const std::vector<double>& x, std::vector<double>& y) const;

  private:
    int n_;
    std::vector<double> diag_;
};

struct SpectrumOptions {
    int dense_cap = 12;       // dense solver up to this many spins
    double tol = 1e-10;       // iterative convergence target on Ritz values
    int max_basis = 160;      // Lanczos basis size per restart cycle
    int max_restarts = 12;
};

// k lowest eigenvalues of H(s), ascending.  Dense solver for small systems,
// Lanczos with full reorthogonalization and thick restarts above.
std::vector<double> low_spectrum(const AnnealOperator& op, double s, int k,
                                 const SpectrumOptions& opts = {});

struct GapScan {
    std::vector<double> grid;                 // s values
    std::vector<std::vector<double>> levels;  // lowest-k eigenvalues per s
    double min_gap = 0.0;
    double s_star = 0.0;
    bool biased = false;          // degeneracy broken by add_last_spin_bias
    IsingHamiltonian h_f_used;    // final Hamiltonian after any bias
};

// Evaluates eps1 - eps0 on a uniform grid, then refines the minimum by
// golden-section search to s-resolution 1e-4.  When the classical ground
// state of h_f is degenerate, a bias of eps is first added to the last spin.
GapScan gap_scan(const IsingHamiltonian& h_f, int grid_size = 201,
                 double bias_eps = 0.01, int k_levels = 8,
                 const SpectrumOptions& opts = {}, int cap = kSimulationCap);

struct EncodingRow {
    std::string encoding;  // "logical", "multibody", "2body"
    int n_qubits = 0;
    double min_gap = 0.0;
    double s_star = 0.0;
    double penalty = 0.0;  // tuned parity penalty (0 for logical)
    bool skipped = false;
    std::string note;
};

// Gap table for one paint shop instance in its three encodings.  The bias is
// applied to the last logical spin before compilation so all encodings break
// the same degeneracy; the parity penalty comes from tune_penalty.
std::vector<EncodingRow> compare_encodings(const PaintShopInstance& inst,
                                           int grid_size = 201, double bias_eps = 0.01,
                                           int cap = kSimulationCap,
                                           const SpectrumOptions& opts = {});

// CSV rows "s,eps0,...,epsk"; summary JSON {encoding, n_qubits, min_gap, s_star}.
std::string gap_scan_to_csv(const GapScan& scan);
std::string encoding_rows_to_json(const std::vector<EncodingRow>& rows,
                                  const std::string& instance_label);

}  // namespace paritylab
