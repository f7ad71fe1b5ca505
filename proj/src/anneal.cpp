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

#include "paritylab/anneal.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "paritylab/threads.hpp"

namespace paritylab {

Schedule::Schedule(std::vector<SchedulePoint> breakpoints) : points_(std::move(breakpoints)) {
    if (points_.size() < 2) throw std::invalid_argument("schedule needs two breakpoints");
    if (points_.front().s != 0.0 || points_.back().s != 1.0)
        throw std::invalid_argument("schedule must start at s=0 and end at s=1");
    for (std::size_t i = 1; i < points_.size(); ++i) {
        if (!(points_[i].t > points_[i - 1].t))
            throw std::invalid_argument("schedule times must be strictly increasing");
        if (points_[i].s < points_[i - 1].s)
            throw std::invalid_argument("schedule must be non-decreasing in s");
    }
    if (points_.front().t != 0.0)
        throw std::invalid_argument("schedule must start at t=0");
}

double Schedule::s_at(double t) const {
    if (t <= points_.front().t) return points_.front().s;
    if (t >= points_.back().t) return points_.back().s;
    for (std::size_t i = 1; i < points_.size(); ++i) {
        if (t <= points_[i].t) {
            const auto& a = points_[i - 1];
            const auto& b = points_[i];
            return a.s + (b.s - a.s) * (t - a.t) / (b.t - a.t);
        }
    }
    return 1.0;
}

bool Schedule::has_pause() const {
    for (std::size_t i = 1; i < points_.size(); ++i)
        if (points_[i].s == points_[i - 1].s) return true;
    return false;
}

Schedule linear_schedule(double total_time) {
    return Schedule({{0.0, 0.0}, {total_time, 1.0}});
}

Schedule paused_schedule(double s_star, double pause_duration, double total_time) {
    if (s_star <= 0.0 || s_star >= 1.0)
        throw std::invalid_argument("pause location must lie inside (0, 1)");
    const double reach = 0.5 * s_star;
    if (reach + pause_duration >= total_time)
        throw std::invalid_argument("pause does not fit into the total annealing time");
    return Schedule({{0.0, 0.0},
                     {reach, s_star},
                     {reach + pause_duration, s_star},
                     {total_time, 1.0}});
}

AnnealOperator::AnnealOperator(const IsingHamiltonian& h_f, int cap) : n_(h_f.num_spins()) {
    if (n_ < 1) throw std::invalid_argument("empty Hamiltonian");
    if (n_ > cap)
        throw std::invalid_argument("simulation limited to " + std::to_string(cap) +
                                    " spins, got " + std::to_string(n_));
    const CompiledEnergy ce(h_f);
    diag_.resize(dimension());
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (std::int64_t b = 0; b < static_cast<std::int64_t>(dimension()); ++b)
        diag_[static_cast<std::uint64_t>(b)] = ce(static_cast<std::uint64_t>(b));
}

void AnnealOperator::apply_serial(double s, const std::vector<double>& x,
                                  std::vector<double>& y) const {
    const std::uint64_t dim = dimension();
    const double a = 1.0 - s;
    for (std::uint64_t i = 0; i < dim; ++i) {
        double acc = s * diag_[i] * x[i];
        for (int j = 0; j < n_; ++j) acc += a * x[i ^ (std::uint64_t{1} << j)];
        y[i] = acc;
    }
}

void AnnealOperator::apply(double s, const std::vector<double>& x,
                           std::vector<double>& y) const {
    const std::uint64_t dim = dimension();
    const double a = 1.0 - s;
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (std::int64_t ii = 0; ii < static_cast<std::int64_t>(dim); ++ii) {
        const std::uint64_t i = static_cast<std::uint64_t>(ii);
        double acc = s * diag_[i] * x[i];
        for (int j = 0; j < n_; ++j) acc += a * x[i ^ (std::uint64_t{1} << j)];
        y[i] = acc;
    }
}

namespace {

std::vector<double> dense_spectrum(const AnnealOperator& op, double s, int k) {
    const std::uint64_t dim = op.dimension();
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
    const double a = 1.0 - s;
    for (std::uint64_t i = 0; i < dim; ++i) {
        m(i, i) = s * op.diagonal()[i];
        for (int j = 0; j < op.num_spins(); ++j) m(i, i ^ (std::uint64_t{1} << j)) = a;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
    std::vector<double> out(k);
    for (int i = 0; i < k; ++i) out[i] = es.eigenvalues()(i);
    return out;
}

double det_dot(const std::vector<double>& a, const std::vector<double>& b) {
    return deterministic_sum(a.size(), [&](std::uint64_t i) { return a[i] * b[i]; });
}

void axpy(double alpha, const std::vector<double>& x, std::vector<double>& y) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(y.size()); ++i)
        y[static_cast<std::uint64_t>(i)] += alpha * x[static_cast<std::uint64_t>(i)];
}

void scale(double alpha, std::vector<double>& y) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(y.size()); ++i)
        y[static_cast<std::uint64_t>(i)] *= alpha;
}

// Lanczos with full reorthogonalization and thick restarts: converged Ritz
// vectors are kept and the Krylov space rebuilt behind them.
std::vector<double> lanczos_spectrum(const AnnealOperator& op, double s, int k,
                                     const SpectrumOptions& opts) {
    const std::uint64_t dim = op.dimension();
    const int want = k;
    std::vector<std::vector<double>> basis;  // locked Ritz vectors + Lanczos vectors
    int locked = 0;

    std::vector<double> v(dim);
    SplitMix64 rng(0x9e3779b97f4a7c15ull);
    for (std::uint64_t i = 0; i < dim; ++i) v[i] = rng.uniform() - 0.5;

    std::vector<double> ritz;
    double prev_kth = HUGE_VAL, residual = HUGE_VAL;
    bool done = false;
    for (int cycle = 0; cycle < opts.max_restarts; ++cycle) {
        int mmax = static_cast<int>(std::min<std::uint64_t>(opts.max_basis, dim));
        if (dim >= (std::uint64_t{1} << 18)) mmax = std::min(mmax, 80);  // basis memory
        std::vector<double> alpha, beta;
        // orthonormalize the start vector against locked vectors
        for (int pass = 0; pass < 2; ++pass)
            for (int l = 0; l < locked; ++l) axpy(-det_dot(basis[l], v), basis[l], v);
        double nrm = std::sqrt(det_dot(v, v));
        if (nrm < 1e-12) {  // restart from a fresh vector
            SplitMix64 r2(0x2545f4914f6cdd1dull + cycle);
            for (std::uint64_t i = 0; i < dim; ++i) v[i] = r2.uniform() - 0.5;
            for (int pass = 0; pass < 2; ++pass)
                for (int l = 0; l < locked; ++l) axpy(-det_dot(basis[l], v), basis[l], v);
            nrm = std::sqrt(det_dot(v, v));
        }
        scale(1.0 / nrm, v);
        basis.resize(locked);
        basis.push_back(v);

        // cross(l, j) collects <v_l | H q_j>, the coupling between the locked
        // Ritz vectors and the fresh Krylov vectors, captured for free from
        // the reorthogonalization coefficients
        std::vector<std::vector<double>> cross(locked);
        std::vector<double> w(dim);
        for (int j = 0; j < mmax; ++j) {
            op.apply(s, basis.back(), w);
            const double a = det_dot(basis.back(), w);
            alpha.push_back(a);
            for (int l = 0; l < locked; ++l) cross[l].push_back(0.0);
            // full reorthogonalization against everything
            for (int pass = 0; pass < 2; ++pass) {
                for (std::size_t q = 0; q < basis.size(); ++q) {
                    const double coeff = det_dot(basis[q], w);
                    if (static_cast<int>(q) < locked) cross[q][j] += coeff;
                    axpy(-coeff, basis[q], w);
                }
            }
            const double b = std::sqrt(det_dot(w, w));
            if (b < 1e-13 || static_cast<int>(basis.size()) == static_cast<int>(dim)) {
                beta.push_back(0.0);
                break;
            }
            beta.push_back(b);
            scale(1.0 / b, w);
            basis.push_back(w);
        }

        // Rayleigh-Ritz over the locked + Krylov subspace: diagonal on the
        // locked block, tridiagonal on the Krylov block, plus the captured
        // cross couplings
        const int mloc = static_cast<int>(alpha.size());
        const int total = locked + mloc;
        Eigen::MatrixXd t = Eigen::MatrixXd::Zero(total, total);
        for (int l = 0; l < locked; ++l) {
            t(l, l) = ritz[l];
            for (int j = 0; j < mloc; ++j) {
                t(l, locked + j) = cross[l][j];
                t(locked + j, l) = cross[l][j];
            }
        }
        for (int j = 0; j < mloc; ++j) {
            t(locked + j, locked + j) = alpha[j];
            if (j + 1 < mloc && beta[j] != 0.0) {
                t(locked + j, locked + j + 1) = beta[j];
                t(locked + j + 1, locked + j) = beta[j];
            }
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
        const int keep = std::min(total, std::max(2 * want, want + 2));

        // assemble the lowest `keep` Ritz vectors
        std::vector<std::vector<double>> newbasis(keep, std::vector<double>(dim, 0.0));
        for (int r = 0; r < keep; ++r)
            for (int col = 0; col < total; ++col) {
                const double coeff = es.eigenvectors()(col, r);
                if (coeff != 0.0) axpy(coeff, basis[col], newbasis[r]);
            }
        ritz.assign(es.eigenvalues().data(), es.eigenvalues().data() + keep);
        const bool exhausted = total == static_cast<int>(dim);
        const double kth = ritz[std::min(want, keep) - 1];
        residual = std::abs(kth - prev_kth);
        prev_kth = kth;
        basis = std::move(newbasis);
        locked = keep;
        if (residual < opts.tol || exhausted) {
            done = true;
            break;
        }
        // next start vector: residual direction of the lowest unconverged
        v = basis[std::min(want, keep) - 1];
        op.apply(s, v, w);
        axpy(-ritz[std::min(want, keep) - 1], v, w);
        v = w;
    }
    if (!done) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.3e", residual);
        throw std::runtime_error(std::string("eigensolver did not converge; last Ritz "
                                             "change ") + buf);
    }
    ritz.resize(std::min<std::size_t>(ritz.size(), want));
    return ritz;
}

}  // namespace

std::vector<double> low_spectrum(const AnnealOperator& op, double s, int k,
                                 const SpectrumOptions& opts) {
    if (k < 1) throw std::invalid_argument("need k >= 1 eigenvalues");
    if (s < 0.0 || s > 1.0) throw std::invalid_argument("s must be in [0, 1]");
    k = std::min<std::uint64_t>(k, op.dimension());
    if (op.num_spins() <= opts.dense_cap) return dense_spectrum(op, s, k);
    return lanczos_spectrum(op, s, k, opts);
}

namespace {

double gap_at(const AnnealOperator& op, double s, const SpectrumOptions& opts) {
    auto ev = low_spectrum(op, s, 2, opts);
    return ev[1] - ev[0];
}

}  // namespace

GapScan gap_scan(const IsingHamiltonian& h_f, int grid_size, double bias_eps,
                 int k_levels, const SpectrumOptions& opts, int cap) {
    if (grid_size < 3) throw std::invalid_argument("grid must have at least 3 points");
    GapScan scan;
    scan.h_f_used = h_f;
    const GroundStates gs = brute_force_ground_states(h_f);
    if (gs.states.size() > 1) {
        scan.h_f_used = add_last_spin_bias(h_f, bias_eps);
        scan.biased = true;
    }
    const AnnealOperator op(scan.h_f_used, cap);
    const int k = static_cast<int>(std::min<std::uint64_t>(k_levels, op.dimension()));

    scan.grid.resize(grid_size);
    scan.levels.resize(grid_size);
    for (int i = 0; i < grid_size; ++i)
        scan.grid[i] = static_cast<double>(i) / (grid_size - 1);
    if (op.num_spins() <= opts.dense_cap) {
        // independent dense solves, stored by grid index
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
        for (int i = 0; i < grid_size; ++i)
            scan.levels[i] = low_spectrum(op, scan.grid[i], std::max(k, 2), opts);
    } else {
        // the iterative path parallelizes inside each matvec instead
        for (int i = 0; i < grid_size; ++i)
            scan.levels[i] = low_spectrum(op, scan.grid[i], std::max(k, 2), opts);
    }
    int imin = 0;
    double best = HUGE_VAL;
    for (int i = 0; i < grid_size; ++i) {
        const double gap = scan.levels[i][1] - scan.levels[i][0];
        if (gap < best) {
            best = gap;
            imin = i;
        }
    }
    // golden-section refinement on the bracketing interval
    double lo = scan.grid[std::max(0, imin - 1)];
    double hi = scan.grid[std::min(grid_size - 1, imin + 1)];
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - phi * (hi - lo), x2 = lo + phi * (hi - lo);
    double f1 = gap_at(op, x1, opts), f2 = gap_at(op, x2, opts);
    double s_best = scan.grid[imin];
    while (hi - lo > 1e-4) {
        if (f1 <= f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - phi * (hi - lo);
            f1 = gap_at(op, x1, opts);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + phi * (hi - lo);
            f2 = gap_at(op, x2, opts);
        }
    }
    for (auto [x, f] : {std::pair{x1, f1}, std::pair{x2, f2}}) {
        if (f < best) {
            best = f;
            s_best = x;
        }
    }
    scan.min_gap = best;
    scan.s_star = s_best;
    if (scan.min_gap < 1e-10)
        throw std::runtime_error("degeneracy unresolved: minimum gap is numerically zero");
    return scan;
}

std::vector<EncodingRow> compare_encodings(const PaintShopInstance& inst, int grid_size,
                                           double bias_eps, int cap,
                                           const SpectrumOptions& opts) {
    IsingHamiltonian h_log = make_instance(inst);
    const GroundStates gs = brute_force_ground_states(h_log);
    if (gs.states.size() > 1) h_log = add_last_spin_bias(h_log, bias_eps);

    std::vector<EncodingRow> rows;
    auto scan_row = [&](const std::string& name, const IsingHamiltonian& h, double penalty) {
        EncodingRow row;
        row.encoding = name;
        row.n_qubits = h.num_spins();
        row.penalty = penalty;
        if (h.num_spins() > cap) {
            row.skipped = true;
            row.note = "over simulation cap";
            return row;
        }
        try {
            // degeneracy already broken at the logical level
            const GapScan scan = gap_scan(h, grid_size, bias_eps, 2, opts, cap);
            row.min_gap = scan.min_gap;
            row.s_star = scan.s_star;
        } catch (const std::exception& e) {
            row.skipped = true;
            row.note = e.what();
        }
        return row;
    };

    rows.push_back(scan_row("logical", h_log, 0.0));

    ParityCompilation c = compile_lhz(h_log);
    c = with_flip_mask(c, solve_flip_mask(c));
    double lambda = 1.0;
    bool tuned = false;
    if (c.num_parity_qubits() <= kBruteForceCap) {
        lambda = tune_penalty(c, h_log);
        tuned = true;
    }
    c = with_penalty(c, lambda);

    EncodingRow multi = scan_row("multibody", to_multibody(c), lambda);
    EncodingRow two = scan_row("2body", quadratize(c), lambda);
    if (!tuned) {
        multi.note = multi.note.empty() ? "penalty untuned" : multi.note + "; penalty untuned";
        two.note = two.note.empty() ? "penalty untuned" : two.note + "; penalty untuned";
    }
    rows.push_back(std::move(multi));
    rows.push_back(std::move(two));
    return rows;
}

std::string gap_scan_to_csv(const GapScan& scan) {
    std::ostringstream out;
    const std::size_t k = scan.levels.empty() ? 0 : scan.levels[0].size();
    out << "s";
    for (std::size_t i = 0; i < k; ++i) out << ",eps" << i;
    out << "\n";
    char buf[64];
    for (std::size_t row = 0; row < scan.grid.size(); ++row) {
        std::snprintf(buf, sizeof buf, "%.17g", scan.grid[row]);
        out << buf;
        for (double e : scan.levels[row]) {
            std::snprintf(buf, sizeof buf, "%.17g", e);
            out << "," << buf;
        }
        out << "\n";
    }
    return out.str();
}

std::string encoding_rows_to_json(const std::vector<EncodingRow>& rows,
                                  const std::string& instance_label) {
    nlohmann::ordered_json j;
    j["instance"] = instance_label;
    j["rows"] = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
        nlohmann::ordered_json rj;
        rj["encoding"] = r.encoding;
        rj["n_qubits"] = r.n_qubits;
        rj["min_gap"] = r.min_gap;
        rj["s_star"] = r.s_star;
        rj["penalty"] = r.penalty;
        rj["skipped"] = r.skipped;
        if (!r.note.empty()) rj["note"] = r.note;
        j["rows"].push_back(std::move(rj));
    }
    return j.dump(2) + "\n";
}

}  // namespace paritylab
