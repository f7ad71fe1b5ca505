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

#include "paritylab/parity.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "paritylab/gf2.hpp"

namespace paritylab {

namespace {

using json = nlohmann::ordered_json;

void check_label(const std::vector<int>& label) {
    if (label.empty()) throw std::invalid_argument("empty parity qubit label");
    for (std::size_t i = 1; i < label.size(); ++i)
        if (label[i] <= label[i - 1])
            throw std::invalid_argument("label must be strictly increasing");
}

std::vector<int> symmetric_difference(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out;
    std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(),
                                  std::back_inserter(out));
    return out;
}

}  // namespace

ParityCompilation::ParityCompilation(int logical_n, std::vector<ParityQubit> qubits,
                                     std::vector<Plaquette> plaquettes, double penalty)
    : logical_n_(logical_n), qubits_(std::move(qubits)),
      plaquettes_(std::move(plaquettes)), penalty_(penalty) {
    if (logical_n_ < 1) throw std::invalid_argument("need at least one logical spin");
    if (penalty_ <= 0) throw std::invalid_argument("penalty must be positive");
    for (std::size_t q = 0; q < qubits_.size(); ++q) {
        check_label(qubits_[q].label);
        for (int i : qubits_[q].label)
            if (i < 0 || i >= logical_n_)
                throw std::invalid_argument("label index out of logical range");
        if (q > 0 && !(qubits_[q - 1].label < qubits_[q].label))
            throw std::invalid_argument("qubits must be sorted by label, no duplicates");
    }
    const int k = num_parity_qubits();
    std::vector<char> covered(k, 0);
    for (std::size_t p = 0; p < plaquettes_.size(); ++p) {
        Plaquette& pl = plaquettes_[p];
        const std::size_t want = pl.kind == PlaquetteKind::kSquare ? 4 : 3;
        if (pl.members.size() != want)
            throw std::invalid_argument("plaquette member count does not match kind");
        std::vector<int> diff;
        for (int m : pl.members) {
            if (m < 0 || m >= k) throw std::invalid_argument("plaquette member out of range");
            covered[m] = 1;
            diff = symmetric_difference(diff, qubits_[m].label);
        }
        if (!diff.empty())
            throw std::invalid_argument("plaquette violates the parity condition");
        pl.aux = k + static_cast<int>(p);
    }
    if (!plaquettes_.empty())
        for (int q = 0; q < k; ++q)
            if (!covered[q])
                throw std::invalid_argument("parity qubit not covered by any plaquette");
}

int ParityCompilation::qubit_index(const std::vector<int>& label) const {
    auto it = std::lower_bound(qubits_.begin(), qubits_.end(), label,
                               [](const ParityQubit& q, const std::vector<int>& l) {
                                   return q.label < l;
                               });
    if (it != qubits_.end() && it->label == label)
        return static_cast<int>(it - qubits_.begin());
    return -1;
}

ParityCompilation compile_lhz(const IsingHamiltonian& h, double penalty) {
    if (h.max_order() > 2)
        throw std::invalid_argument(
            "compile_lhz handles fields and pair couplings only; generalized "
            "parity compilation of higher orders is not implemented");
    const int n = h.num_spins();
    if (n < 1) throw std::invalid_argument("empty Hamiltonian");

    // The triangle is the standard pair-only LHZ layout over n+1 logical
    // indices, with the extra index v = n fixed to +1: the pair (i, n) is the
    // singleton qubit {i} carrying the local field h_i.
    const int virt = n;
    auto label_of = [&](int i, int j) {
        return j == virt ? std::vector<int>{i} : std::vector<int>{i, j};
    };

    std::vector<ParityQubit> qubits;
    for (int i = 0; i <= virt; ++i) {
        for (int j = i + 1; j <= virt; ++j) {
            ParityQubit q;
            q.label = label_of(i, j);
            q.field_coefficient = h.coefficient(q.label);
            q.grid_pos = std::pair<int, int>{j, i};
            qubits.push_back(std::move(q));
        }
    }
    std::sort(qubits.begin(), qubits.end(),
              [](const ParityQubit& a, const ParityQubit& b) { return a.label < b.label; });

    ParityCompilation staging(n, qubits, {}, penalty);
    auto idx = [&](int i, int j) {
        int q = staging.qubit_index(label_of(i, j));
        if (q < 0) throw std::logic_error("missing LHZ qubit");
        return q;
    };

    std::vector<Plaquette> plaquettes;
    for (int i = 0; i + 2 <= virt; ++i) {
        Plaquette t;
        t.kind = PlaquetteKind::kTriangle;
        t.members = {idx(i, i + 1), idx(i + 1, i + 2), idx(i, i + 2)};
        plaquettes.push_back(std::move(t));
    }
    for (int a = 1; a <= virt - 2; ++a) {
        for (int b = a + 1; b <= virt - 1; ++b) {
            Plaquette s;
            s.kind = PlaquetteKind::kSquare;
            s.members = {idx(a, b), idx(a - 1, b), idx(a, b + 1), idx(a - 1, b + 1)};
            plaquettes.push_back(std::move(s));
        }
    }
    return ParityCompilation(n, std::move(qubits), std::move(plaquettes), penalty);
}

bool plaquette_parity_check(const ParityCompilation& c, const Plaquette& p) {
    std::vector<int> diff;
    for (int m : p.members) diff = symmetric_difference(diff, c.qubits()[m].label);
    return diff.empty();
}

std::vector<bool> solve_flip_mask(const ParityCompilation& c) {
    const int k = c.num_parity_qubits();
    std::vector<const Plaquette*> squares;
    for (const auto& p : c.plaquettes())
        if (p.kind == PlaquetteKind::kSquare) squares.push_back(&p);
    if (squares.empty()) return std::vector<bool>(k, false);
    Gf2Matrix a(static_cast<int>(squares.size()), k);
    std::vector<bool> b(squares.size(), true);
    for (std::size_t r = 0; r < squares.size(); ++r)
        for (int m : squares[r]->members) a.set(static_cast<int>(r), m, !a.get(static_cast<int>(r), m));
    auto x = gf2_solve(std::move(a), std::move(b));
    if (!x)
        throw std::runtime_error("no flip mask gives every square odd parity");
    return *x;
}

ParityCompilation with_flip_mask(const ParityCompilation& c, const std::vector<bool>& mask) {
    if (static_cast<int>(mask.size()) != c.num_parity_qubits())
        throw std::invalid_argument("mask length mismatch");
    std::vector<ParityQubit> qubits = c.qubits();
    for (std::size_t q = 0; q < qubits.size(); ++q) qubits[q].flipped = mask[q];
    std::vector<Plaquette> plaquettes = c.plaquettes();
    for (auto& p : plaquettes) {
        int flips = 0;
        for (int m : p.members) flips += mask[m] ? 1 : 0;
        p.form = flips % 2 ? PlaquetteForm::kOdd : PlaquetteForm::kEven;
    }
    return ParityCompilation(c.logical_n(), std::move(qubits), std::move(plaquettes),
                             c.penalty());
}

ParityCompilation with_penalty(const ParityCompilation& c, double penalty) {
    return ParityCompilation(c.logical_n(), c.qubits(), c.plaquettes(), penalty);
}

IsingHamiltonian to_multibody(const ParityCompilation& c) {
    const double lam = c.penalty();
    IsingHamiltonian out(c.num_parity_qubits());
    for (int q = 0; q < c.num_parity_qubits(); ++q) {
        const auto& pq = c.qubits()[q];
        if (pq.field_coefficient != 0.0)
            out.add_term({q}, pq.flipped ? -pq.field_coefficient : pq.field_coefficient);
    }
    for (const auto& p : c.plaquettes()) {
        std::vector<int> idx = p.members;
        std::sort(idx.begin(), idx.end());
        out.add_term(idx, p.form == PlaquetteForm::kOdd ? lam : -lam);
    }
    return out;
}

IsingHamiltonian quadratize(const ParityCompilation& c) {
    const double lam = c.penalty();
    IsingHamiltonian out(c.num_physical_spins());
    for (int q = 0; q < c.num_parity_qubits(); ++q) {
        const auto& pq = c.qubits()[q];
        if (pq.field_coefficient != 0.0)
            out.add_term({q}, pq.flipped ? -pq.field_coefficient : pq.field_coefficient);
    }
    auto add_pair = [&](int a, int b, double coeff) {
        if (a > b) std::swap(a, b);
        out.add_term({a, b}, coeff);
    };
    for (const auto& p : c.plaquettes()) {
        const int a = p.aux;
        if (p.kind == PlaquetteKind::kSquare) {
            if (p.form == PlaquetteForm::kEven)
                throw std::invalid_argument(
                    "even square plaquette requires two auxiliary spins; apply a "
                    "flip mask so every square is odd");
            // (2a + n + e + w + s)^2 = 8 + 4 sum a*m + 2 sum m*m'
            out.add_term({}, 8.0 * lam);
            for (std::size_t i = 0; i < p.members.size(); ++i) {
                add_pair(a, p.members[i], 4.0 * lam);
                for (std::size_t j = i + 1; j < p.members.size(); ++j)
                    add_pair(p.members[i], p.members[j], 2.0 * lam);
            }
        } else {
            // odd:  (1 + 2a + n + e + w)^2 = 8 + 4a + 2 sum m + 4 sum a*m + 2 sum m*m'
            // even: (1 - 2a - n - e - w)^2 = 8 - 4a - 2 sum m + 4 sum a*m + 2 sum m*m'
            const double sign = p.form == PlaquetteForm::kOdd ? 1.0 : -1.0;
            out.add_term({}, 8.0 * lam);
            out.add_term({a}, sign * 4.0 * lam);
            for (std::size_t i = 0; i < p.members.size(); ++i) {
                out.add_term({p.members[i]}, sign * 2.0 * lam);
                add_pair(a, p.members[i], 4.0 * lam);
                for (std::size_t j = i + 1; j < p.members.size(); ++j)
                    add_pair(p.members[i], p.members[j], 2.0 * lam);
            }
        }
    }
    return out;
}

bool plaquette_satisfied(const ParityCompilation&, const Plaquette& p,
                         const SpinAssignment& x) {
    int prod = 1;
    for (int m : p.members) prod *= x[m];
    return prod == (p.form == PlaquetteForm::kOdd ? -1 : 1);
}

namespace {

struct FormScan {
    std::vector<double> base;  // logical-field part
    std::vector<double> pen;   // plaquette part at penalty 1
    std::vector<char> valid;
};

FormScan scan_form(const ParityCompilation& c, bool two_body) {
    const ParityCompilation unit = with_penalty(c, 1.0);
    const IsingHamiltonian hp = two_body ? quadratize(unit) : to_multibody(unit);
    const int n = hp.num_spins();
    if (n > kBruteForceCap)
        throw std::invalid_argument("compiled form exceeds the brute-force cap");

    // base = energy of H_l alone; pen = (full - base) at penalty 1
    IsingHamiltonian hl(n);
    for (int q = 0; q < c.num_parity_qubits(); ++q) {
        const auto& pq = c.qubits()[q];
        if (pq.field_coefficient != 0.0)
            hl.add_term({q}, pq.flipped ? -pq.field_coefficient : pq.field_coefficient);
    }
    const CompiledEnergy ce_full(hp), ce_hl(hl);
    std::vector<std::uint64_t> pmask(c.plaquettes().size(), 0);
    std::vector<char> odd(c.plaquettes().size(), 0);
    for (std::size_t p = 0; p < c.plaquettes().size(); ++p) {
        for (int m : c.plaquettes()[p].members) pmask[p] |= std::uint64_t{1} << m;
        odd[p] = c.plaquettes()[p].form == PlaquetteForm::kOdd;
    }
    const std::uint64_t total = std::uint64_t{1} << n;
    FormScan out;
    out.base.resize(total);
    out.pen.resize(total);
    out.valid.resize(total);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (std::int64_t bb = 0; bb < static_cast<std::int64_t>(total); ++bb) {
        const std::uint64_t b = static_cast<std::uint64_t>(bb);
        const double ehl = ce_hl(b);
        out.base[b] = ehl;
        out.pen[b] = ce_full(b) - ehl;
        bool v = true;
        for (std::size_t p = 0; p < pmask.size(); ++p) {
            const int neg = std::popcount(b & pmask[p]) & 1;  // product sign
            if (neg != (odd[p] ? 1 : 0)) v = false;
        }
        out.valid[b] = v;
    }
    return out;
}

bool separated(const FormScan& fs, double lam, double margin) {
    double v0 = HUGE_VAL, v1 = HUGE_VAL, inv = HUGE_VAL;
    for (std::size_t b = 0; b < fs.base.size(); ++b) {
        const double e = fs.base[b] + lam * fs.pen[b];
        if (fs.valid[b]) {
            if (e < v0) {
                v1 = v0;
                v0 = e;
            } else if (e < v1) {
                v1 = e;
            }
        } else if (e < inv) {
            inv = e;
        }
    }
    if (inv == HUGE_VAL) return true;  // nothing to separate from
    return inv >= v1 + margin;
}

}  // namespace

double tune_penalty(const ParityCompilation& c, const IsingHamiltonian& h_logical,
                    double margin, int cap) {
    if (h_logical.num_spins() != c.logical_n())
        throw std::invalid_argument("logical Hamiltonian size mismatch");
    if (c.num_parity_qubits() > cap)
        throw std::invalid_argument("compilation exceeds the brute-force cap");

    // rebuild with the logical coefficients in place (fields follow h_logical)
    std::vector<ParityQubit> qubits = c.qubits();
    for (auto& q : qubits) q.field_coefficient = h_logical.coefficient(q.label);
    ParityCompilation cc(c.logical_n(), std::move(qubits), c.plaquettes(), 1.0);

    // certify both compiled forms when they fit, the multibody one otherwise
    const bool with_two_body = cc.num_physical_spins() <= cap;
    const FormScan multi = scan_form(cc, false);
    const FormScan two = with_two_body ? scan_form(cc, true) : FormScan{};
    auto ok = [&](double lam) {
        return separated(multi, lam, margin) &&
               (!with_two_body || separated(two, lam, margin));
    };

    double lam = 0.25;
    if (ok(lam)) return lam;
    double lo = lam;
    int doublings = 0;
    while (!ok(lam)) {
        lo = lam;
        lam *= 2.0;
        if (++doublings > 60)
            throw std::runtime_error("penalty scan failed to separate the spectra");
    }
    double hi = lam;
    while (hi - lo > 1e-3 * hi) {
        const double mid = 0.5 * (lo + hi);
        if (ok(mid))
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

SpinAssignment encode(const ParityCompilation& c, const SpinAssignment& z) {
    if (static_cast<int>(z.size()) != c.logical_n())
        throw std::invalid_argument("logical assignment length mismatch");
    for (Spin s : z)
        if (s != 1 && s != -1) throw std::invalid_argument("spins must be +1 or -1");
    SpinAssignment x(c.num_physical_spins(), 1);
    for (int q = 0; q < c.num_parity_qubits(); ++q) {
        int prod = 1;
        for (int i : c.qubits()[q].label) prod *= z[i];
        x[q] = static_cast<Spin>(c.qubits()[q].flipped ? -prod : prod);
    }
    for (const auto& p : c.plaquettes()) {
        int s = 0;
        for (int m : p.members) s += x[m];
        // minimizer of the plaquette quadratic; unique (+-1) whenever the
        // plaquette has an odd-form quadratization, clamped otherwise
        int target;
        if (p.kind == PlaquetteKind::kSquare) {
            target = -s / 2;
        } else if (p.form == PlaquetteForm::kOdd) {
            target = -(1 + s) / 2;
        } else {
            target = (1 - s) / 2;
        }
        x[p.aux] = static_cast<Spin>(target >= 1 ? 1 : (target <= -1 ? -1 : 1));
    }
    return x;
}

DecodeResult decode(const ParityCompilation& c, const SpinAssignment& x) {
    const int k = c.num_parity_qubits();
    if (static_cast<int>(x.size()) != k &&
        static_cast<int>(x.size()) != c.num_physical_spins())
        throw std::invalid_argument("physical assignment must cover all parity qubits");

    DecodeResult out;
    out.valid = true;
    for (const auto& p : c.plaquettes())
        if (!plaquette_satisfied(c, p, x)) out.valid = false;

    const int n = c.logical_n();
    out.logical.assign(n, 1);
    // unflipped parity value of qubit q
    auto sigma = [&](int q) {
        return c.qubits()[q].flipped ? -x[q] : x[q];
    };

    std::vector<int> singleton(n, -1);
    bool all_singletons = true;
    for (int i = 0; i < n; ++i) {
        singleton[i] = c.qubit_index({i});
        if (singleton[i] < 0) all_singletons = false;
    }
    if (all_singletons) {
        for (int i = 0; i < n; ++i) out.logical[i] = static_cast<Spin>(sigma(singleton[i]));
        return out;
    }

    // Solve each unit vector e_i as a GF(2) combination of labels; if e_i is
    // outside the span, fall back to e_0 + e_i with spin 0 pinned to +1 and
    // flag the global-flip ambiguity.
    auto solve_combo = [&](const std::vector<int>& target) -> std::optional<std::vector<bool>> {
        Gf2Matrix a(n, k);
        for (int q = 0; q < k; ++q)
            for (int i : c.qubits()[q].label) a.set(i, q, !a.get(i, q));
        std::vector<bool> b(n, false);
        for (int i : target) b[i] = true;
        return gf2_solve(std::move(a), std::move(b));
    };
    for (int i = 0; i < n; ++i) {
        if (singleton[i] >= 0) {
            out.logical[i] = static_cast<Spin>(sigma(singleton[i]));
            continue;
        }
        auto combo = solve_combo({i});
        bool relative = false;
        if (!combo) {
            if (i == 0) {
                out.logical[0] = 1;
                out.global_flip_ambiguous = true;
                continue;
            }
            combo = solve_combo({0, i});
            relative = true;
            if (!combo)
                throw std::invalid_argument(
                    "cannot decode: logical spin outside the label span and no "
                    "reference set");
            out.global_flip_ambiguous = true;
        }
        int prod = 1;
        for (int q = 0; q < k; ++q)
            if ((*combo)[q]) prod *= sigma(q);
        out.logical[i] = static_cast<Spin>(relative ? prod * out.logical[0] : prod);
    }
    return out;
}

namespace {

json qubit_to_json(const ParityQubit& q) {
    json j;
    j["label"] = q.label;
    j["field"] = q.field_coefficient;
    j["flipped"] = q.flipped;
    if (q.grid_pos) j["grid_pos"] = {q.grid_pos->first, q.grid_pos->second};
    return j;
}

}  // namespace

std::string compilation_to_json(const ParityCompilation& c) {
    json j;
    j["logical_n"] = c.logical_n();
    j["penalty"] = c.penalty();
    j["parity_qubits"] = json::array();
    for (const auto& q : c.qubits()) j["parity_qubits"].push_back(qubit_to_json(q));
    j["plaquettes"] = json::array();
    for (const auto& p : c.plaquettes()) {
        json pj;
        pj["kind"] = p.kind == PlaquetteKind::kSquare ? "square" : "triangle";
        pj["members"] = p.members;
        pj["aux"] = p.aux;
        pj["form"] = p.form == PlaquetteForm::kOdd ? "odd" : "even";
        j["plaquettes"].push_back(std::move(pj));
    }
    return j.dump(2) + "\n";
}

ParityCompilation compilation_from_json(const std::string& text) {
    json j = json::parse(text);
    std::vector<ParityQubit> qubits;
    for (const auto& qj : j.at("parity_qubits")) {
        ParityQubit q;
        q.label = qj.at("label").get<std::vector<int>>();
        q.field_coefficient = qj.at("field").get<double>();
        q.flipped = qj.at("flipped").get<bool>();
        if (qj.contains("grid_pos"))
            q.grid_pos = std::pair<int, int>{qj["grid_pos"][0].get<int>(),
                                             qj["grid_pos"][1].get<int>()};
        qubits.push_back(std::move(q));
    }
    std::vector<Plaquette> plaquettes;
    for (const auto& pj : j.at("plaquettes")) {
        Plaquette p;
        p.kind = pj.at("kind").get<std::string>() == "square" ? PlaquetteKind::kSquare
                                                              : PlaquetteKind::kTriangle;
        p.members = pj.at("members").get<std::vector<int>>();
        p.aux = pj.at("aux").get<int>();
        p.form = pj.at("form").get<std::string>() == "odd" ? PlaquetteForm::kOdd
                                                           : PlaquetteForm::kEven;
        plaquettes.push_back(std::move(p));
    }
    return ParityCompilation(j.at("logical_n").get<int>(), std::move(qubits),
                             std::move(plaquettes), j.at("penalty").get<double>());
}

ParityCompilation single_square_compilation(double penalty) {
    std::vector<ParityQubit> qubits(4);
    qubits[0].label = {0};
    qubits[1].label = {0, 1, 2};
    qubits[2].label = {1};
    qubits[3].label = {2};
    Plaquette p;
    p.kind = PlaquetteKind::kSquare;
    p.members = {0, 1, 2, 3};
    return ParityCompilation(3, std::move(qubits), {p}, penalty);
}

ParityCompilation single_triangle_compilation(double penalty) {
    std::vector<ParityQubit> qubits(3);
    qubits[0].label = {0};
    qubits[1].label = {0, 1};
    qubits[2].label = {1};
    Plaquette p;
    p.kind = PlaquetteKind::kTriangle;
    p.members = {0, 1, 2};
    return ParityCompilation(2, std::move(qubits), {p}, penalty);
}

}  // namespace paritylab
