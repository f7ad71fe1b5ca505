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

#include "paritylab/pegasus.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace paritylab {

namespace {
constexpr int kVOff[12] = {2, 2, 2, 2, 6, 6, 6, 6, 10, 10, 10, 10};
constexpr int kHOff[12] = {6, 6, 6, 6, 2, 2, 2, 2, 10, 10, 10, 10};
}  // namespace

int PegasusGraph::vertical_offset(int k) { return kVOff[k]; }
int PegasusGraph::horizontal_offset(int k) { return kHOff[k]; }

int PegasusGraph::node_id(const PegasusCoord& c) const {
    return c.z + (m_ - 1) * (c.k + 12 * (c.w + m_ * c.u));
}

PegasusCoord PegasusGraph::coord(int id) const {
    PegasusCoord c;
    c.z = id % (m_ - 1);
    id /= (m_ - 1);
    c.k = id % 12;
    id /= 12;
    c.w = id % m_;
    c.u = id / m_;
    return c;
}

bool PegasusGraph::has_node(const PegasusCoord& c) const {
    if (c.u < 0 || c.u > 1 || c.k < 0 || c.k > 11) return false;
    if (c.w < 0 || c.w >= m_ || c.z < 0 || c.z >= m_ - 1) return false;
    return !is_defect(node_id(c));
}

PegasusGraph::PegasusGraph(int m, std::set<int> defects)
    : m_(m), defects_(std::move(defects)) {
    if (m < 2) throw std::invalid_argument("Pegasus size parameter must be >= 2");
    for (int id : defects_)
        if (id < 0 || id >= num_nodes()) throw std::invalid_argument("defect id out of range");

    adj_.resize(num_nodes());
    auto emit = [&](int a, int b) {
        if (is_defect(a) || is_defect(b)) return;
        edges_.emplace_back(std::min(a, b), std::max(a, b));
        adj_[a].push_back(b);
        adj_[b].push_back(a);
    };

    for (int u = 0; u <= 1; ++u) {
        for (int w = 0; w < m_; ++w) {
            for (int k = 0; k < 12; ++k) {
                for (int z = 0; z < m_ - 1; ++z) {
                    const int a = node_id({u, w, k, z});
                    // external: next parallel offset on the same line
                    if (z + 1 < m_ - 1) emit(a, node_id({u, w, k, z + 1}));
                    // odd: track partner 2j <-> 2j+1
                    if (!(k & 1)) emit(a, node_id({u, w, k + 1, z}));
                    // internal: emit from the vertical side only
                    if (u == 0) {
                        const int col = 12 * w + k;
                        const int row_lo = 12 * z + kVOff[k];
                        for (int row = row_lo; row < row_lo + 12; ++row) {
                            const int wh = row / 12, kh = row % 12;
                            if (wh >= m_) continue;
                            // column must fall in the horizontal qubit's span
                            const int zh_num = col - kHOff[kh];
                            if (zh_num < 0) continue;
                            const int zh = zh_num / 12;
                            if (zh >= m_ - 1) continue;
                            emit(a, node_id({1, wh, kh, zh}));
                        }
                    }
                }
            }
        }
    }
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
    for (auto& nbrs : adj_) {
        std::sort(nbrs.begin(), nbrs.end());
        nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
    }
}

bool PegasusGraph::adjacent(int a, int b) const {
    const auto& nbrs = adj_[a];
    return std::binary_search(nbrs.begin(), nbrs.end(), b);
}

bool pegasus_adjacent_reference(int m, const PegasusCoord& a, const PegasusCoord& b) {
    auto in_range = [&](const PegasusCoord& c) {
        return c.u >= 0 && c.u <= 1 && c.w >= 0 && c.w < m && c.k >= 0 && c.k < 12 &&
               c.z >= 0 && c.z < m - 1;
    };
    if (!in_range(a) || !in_range(b) || a == b) return false;
    if (a.u == b.u) {
        // external or odd coupler
        if (a.w != b.w) return false;
        if (a.k == b.k) return std::abs(a.z - b.z) == 1;
        return a.z == b.z && (a.k >> 1) == (b.k >> 1);
    }
    const PegasusCoord& v = a.u == 0 ? a : b;
    const PegasusCoord& h = a.u == 0 ? b : a;
    const int col = 12 * v.w + v.k;
    const int row = 12 * h.w + h.k;
    const int vlo = 12 * v.z + kVOff[v.k];
    const int hlo = 12 * h.z + kHOff[h.k];
    return row >= vlo && row < vlo + 12 && col >= hlo && col < hlo + 12;
}

std::string pegasus_to_text(const PegasusGraph& g) {
    std::ostringstream out;
    out << "pegasus " << g.m() << "\n";
    for (int d : g.defects()) out << "defect " << d << "\n";
    for (const auto& [a, b] : g.edges()) out << a << " " << b << "\n";
    return out.str();
}

PegasusGraph pegasus_from_text(const std::string& text) {
    std::istringstream in(text);
    std::string tok;
    if (!(in >> tok) || tok != "pegasus") throw std::invalid_argument("missing pegasus header");
    int m;
    if (!(in >> m)) throw std::invalid_argument("bad pegasus size");
    std::set<int> defects;
    std::vector<std::pair<int, int>> listed;
    while (in >> tok) {
        if (tok == "defect") {
            int d;
            if (!(in >> d)) throw std::invalid_argument("bad defect line");
            defects.insert(d);
        } else {
            int a = std::stoi(tok), b;
            if (!(in >> b)) throw std::invalid_argument("bad edge line");
            listed.emplace_back(std::min(a, b), std::max(a, b));
        }
    }
    PegasusGraph g(m, std::move(defects));
    std::sort(listed.begin(), listed.end());
    if (listed != g.edges())
        throw std::invalid_argument("edge list does not match Pegasus P_" + std::to_string(m));
    return g;
}

std::vector<std::vector<Diamond>> extract_diamonds(const PegasusGraph& g) {
    const int m = g.m();
    std::vector<std::vector<Diamond>> rows(2 * (m - 2) + 1);

    auto flag = [&](Diamond& d) {
        for (int id : d.external)
            if (g.is_defect(id)) d.defective = true;
        for (int id : d.internal)
            if (g.is_defect(id)) d.defective = true;
    };

    // family A at cell (c, r): externals = horizontal quad (1, r, 8..11, c-1),
    // internals = vertical quad (0, c, 0..3, r); diagonal row index c + r - 1.
    for (int c = 1; c <= m - 1; ++c) {
        for (int r = 0; r <= m - 2; ++r) {
            const int band = c + r - 1;
            if (band >= static_cast<int>(rows.size())) continue;
            Diamond d;
            d.row = band;
            d.position = 2 * c;
            for (int k = 8; k < 12; ++k) d.external.push_back(g.node_id({1, r, k, c - 1}));
            for (int k = 0; k < 4; ++k) d.internal.push_back(g.node_id({0, c, k, r}));
            flag(d);
            rows[band].push_back(std::move(d));
        }
    }
    // family B at cell (c, r): externals = vertical quad (0, c, 8..11, r),
    // internals = horizontal quad (1, r+1, 0..3, c); diagonal row index c + r.
    for (int c = 0; c <= m - 2; ++c) {
        for (int r = 0; r <= m - 2; ++r) {
            const int band = c + r;
            if (band >= static_cast<int>(rows.size())) continue;
            Diamond d;
            d.row = band;
            d.position = 2 * c + 1;
            for (int k = 8; k < 12; ++k) d.external.push_back(g.node_id({0, c, k, r}));
            for (int k = 0; k < 4; ++k) d.internal.push_back(g.node_id({1, r + 1, k, c}));
            flag(d);
            rows[band].push_back(std::move(d));
        }
    }
    for (auto& row : rows)
        std::sort(row.begin(), row.end(),
                  [](const Diamond& a, const Diamond& b) { return a.position < b.position; });
    return rows;
}

}  // namespace paritylab
