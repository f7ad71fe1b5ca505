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

#include "paritylab/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace paritylab {

namespace {

using json = nlohmann::ordered_json;

struct Cell {
    bool b = false;  // false: vertical-track cell family, true: mirrored family
    int c = 0, r = 0;
};

bool even_parity(int u, int v) { return ((u + v) % 2 + 2) % 2 == 0; }

Cell cell_of_site(int u, int v) {
    if (even_parity(u, v)) return {false, (u + v) / 2, (u - v) / 2};
    return {true, (u + v - 1) / 2, (u - v - 1) / 2};
}

using CoordChain = std::vector<PegasusCoord>;

// Parity-site chains.  The original style carries every site on 4 spins
// (two spins of the cell quad plus two crossing spins); the dense style
// drops to 3 and leaves enough of each cell free for a second layer.
CoordChain site_chain_coords(EmbeddingStyle st, int layer, const Cell& cell) {
    const int c = cell.c, r = cell.r;
    if (st == EmbeddingStyle::kOriginal) {
        if (!cell.b)
            return {{0, c, 2, r}, {0, c, 3, r}, {1, r, 9, c - 1}, {1, r, 10, c - 1}};
        return {{0, c, 9, r}, {0, c, 10, r}, {1, r + 1, 1, c}, {1, r + 1, 2, c}};
    }
    if (layer == 0) {
        if (!cell.b) return {{0, c, 2, r}, {1, r, 9, c - 1}, {1, r, 10, c - 1}};
        return {{0, c, 8, r}, {1, r + 1, 1, c}, {0, c, 10, r}};
    }
    if (!cell.b) return {{0, c, 3, r}, {1, r, 8, c - 1}, {1, r, 11, c - 1}};
    return {{0, c, 9, r}, {1, r + 1, 0, c}, {0, c, 11, r}};
}

// Auxiliary chains, one per unit block, built from tracks no parity chain
// touches.  Blocks come in two parities matching the corner-site kinds.
CoordChain aux_chain_coords(EmbeddingStyle st, int layer, int U, int V) {
    if (even_parity(U, V)) {
        const int c = (U + V) / 2, r = (U - V) / 2;
        if (st == EmbeddingStyle::kOriginal)
            return {{1, r, 6, c}, {1, r, 7, c}, {0, c + 1, 0, r}, {0, c + 1, 1, r}};
        if (layer == 0) return {{1, r, 6, c}, {0, c + 1, 0, r}};
        return {{1, r, 7, c}, {0, c + 1, 1, r}};
    }
    const int c = (U + V - 1) / 2, r = (U - V - 1) / 2;
    if (st == EmbeddingStyle::kOriginal)
        return {{0, c + 1, 4, r}, {0, c + 1, 5, r}, {1, r + 1, 4, c + 1}, {1, r + 1, 5, c + 1}};
    if (layer == 0) return {{0, c + 1, 4, r}, {1, r + 1, 4, c + 1}};
    return {{0, c + 1, 5, r}, {1, r + 1, 5, c + 1}};
}

std::optional<std::vector<int>> realize_chain(const PegasusGraph& g, const CoordChain& coords) {
    std::vector<int> nodes;
    nodes.reserve(coords.size());
    for (const auto& c : coords) {
        if (!g.has_node(c)) return std::nullopt;
        nodes.push_back(g.node_id(c));
    }
    return nodes;
}

std::vector<std::pair<int, int>> edges_between(const PegasusGraph& g,
                                               const std::vector<int>& a,
                                               const std::vector<int>& b) {
    std::vector<std::pair<int, int>> out;
    for (int x : a)
        for (int y : b)
            if (g.adjacent(x, y)) out.emplace_back(x, y);
    return out;
}

// block corner sites, in a fixed order used by single-plaquette placement
std::vector<std::pair<int, int>> block_corners(int U, int V) {
    return {{U, V}, {U + 1, V + 1}, {U + 1, V}, {U, V + 1}};
}

std::pair<int, int> site_of_label(const std::vector<int>& label, int logical_n) {
    if (label.size() == 1) return {logical_n, label[0]};
    if (label.size() == 2) return {label[1], label[0]};
    throw std::invalid_argument("only LHZ labels (size 1 or 2) have lattice sites");
}

}  // namespace

int max_chain_length(EmbeddingStyle style) {
    return style == EmbeddingStyle::kOriginal ? 4 : 5;
}

namespace {

struct LatticeBuilder {
    const PegasusGraph& g;
    EmbeddingStyle style;
    int layers;

    std::map<std::tuple<bool, int, int, int>, int> site_index;  // (aux,u,v,layer)
    std::vector<TopoSite> sites;
    std::vector<std::vector<int>> chains;  // per site index, may be empty if absent

    explicit LatticeBuilder(const PegasusGraph& graph, EmbeddingStyle st)
        : g(graph), style(st), layers(st == EmbeddingStyle::kOriginal ? 1 : 2) {}

    void add_site(bool aux, int u, int v, int layer, const CoordChain& coords) {
        auto nodes = realize_chain(g, coords);
        TopoSite s;
        s.u = u;
        s.v = v;
        s.layer = layer;
        s.aux = aux;
        s.present = nodes.has_value();
        site_index[{aux, u, v, layer}] = static_cast<int>(sites.size());
        sites.push_back(s);
        chains.push_back(nodes.value_or(std::vector<int>{}));
    }

    int find(bool aux, int u, int v, int layer) const {
        auto it = site_index.find({aux, u, v, layer});
        return it == site_index.end() ? -1 : it->second;
    }
};

}  // namespace

static BuiltEmbedding build_lattice(const PegasusGraph& g, EmbeddingStyle style) {
    const int m = g.m();
    LatticeBuilder lb(g, style);

    for (int layer = 0; layer < lb.layers; ++layer) {
        // parity sites: vertical-family cells then mirrored cells
        for (int c = 1; c <= m - 1; ++c)
            for (int r = 0; r <= m - 2; ++r)
                lb.add_site(false, c + r, c - r, layer,
                            site_chain_coords(style, layer, {false, c, r}));
        for (int c = 0; c <= m - 2; ++c)
            for (int r = 0; r <= m - 2; ++r)
                lb.add_site(false, c + r + 1, c - r, layer,
                            site_chain_coords(style, layer, {true, c, r}));
        // auxiliary sites, one per block
        for (int c = 1; c <= m - 2; ++c)
            for (int r = 1; r <= m - 2; ++r)
                lb.add_site(true, c + r, c - r, layer,
                            aux_chain_coords(style, layer, c + r, c - r));
        for (int c = 0; c <= m - 3; ++c)
            for (int r = 0; r <= m - 3; ++r)
                lb.add_site(true, c + r + 1, c - r, layer,
                            aux_chain_coords(style, layer, c + r + 1, c - r));
    }

    BuiltEmbedding out;
    out.style = style;
    out.topology.style = style;
    out.topology.m = m;
    out.topology.layers = lb.layers;
    out.topology.sites = lb.sites;

    Embedding& e = out.lattice;
    e.style = style;
    e.pegasus_m = m;
    e.chains = lb.chains;

    std::set<std::pair<int, int>> edge_set;
    auto couple = [&](int sa, int sb) {
        if (sa < 0 || sb < 0) return;
        if (!lb.sites[sa].present || !lb.sites[sb].present) return;
        auto he = edges_between(g, lb.chains[sa], lb.chains[sb]);
        if (he.empty()) return;
        const auto key = std::minmax(sa, sb);
        if (edge_set.insert({key.first, key.second}).second)
            e.couplings[{key.first, key.second}] = std::move(he);
    };

    for (int s = 0; s < static_cast<int>(lb.sites.size()); ++s) {
        const TopoSite& ts = lb.sites[s];
        if (ts.aux) {
            for (auto [cu, cv] : block_corners(ts.u, ts.v))
                couple(s, lb.find(false, cu, cv, ts.layer));
        } else {
            couple(s, lb.find(false, ts.u + 1, ts.v, ts.layer));
            couple(s, lb.find(false, ts.u, ts.v + 1, ts.layer));
            couple(s, lb.find(false, ts.u + 1, ts.v + 1, ts.layer));
            couple(s, lb.find(false, ts.u + 1, ts.v - 1, ts.layer));
        }
    }
    out.topology.edges.assign(edge_set.begin(), edge_set.end());

    for (const auto& ts : lb.sites)
        if (!ts.aux && ts.present) ++out.topology.parity_sites_present;

    // a block counts when its aux, corners, and all ten couplings exist
    for (int s = 0; s < static_cast<int>(lb.sites.size()); ++s) {
        const TopoSite& ts = lb.sites[s];
        if (!ts.aux || !ts.present) continue;
        bool ok = true;
        std::vector<int> corner_idx;
        for (auto [cu, cv] : block_corners(ts.u, ts.v)) {
            int ci = lb.find(false, cu, cv, ts.layer);
            if (ci < 0 || !lb.sites[ci].present) ok = false;
            corner_idx.push_back(ci);
        }
        if (ok) {
            auto has_edge = [&](int a, int b) {
                const auto key = std::minmax(a, b);
                return edge_set.count({key.first, key.second}) > 0;
            };
            for (int ci : corner_idx)
                if (!has_edge(s, ci)) ok = false;
            for (std::size_t i = 0; i < corner_idx.size() && ok; ++i)
                for (std::size_t j = i + 1; j < corner_idx.size() && ok; ++j)
                    if (!has_edge(corner_idx[i], corner_idx[j])) ok = false;
        }
        if (ok) ++out.topology.plaquette_sites_present;
    }

    // drop absent sites from the lattice embedding chain list
    std::vector<std::vector<int>> kept;
    for (int s = 0; s < static_cast<int>(lb.sites.size()); ++s)
        if (lb.sites[s].present) kept.push_back(lb.chains[s]);
    std::map<std::pair<int, int>, std::vector<std::pair<int, int>>> remapped;
    std::vector<int> newid(lb.sites.size(), -1);
    int next = 0;
    for (int s = 0; s < static_cast<int>(lb.sites.size()); ++s)
        if (lb.sites[s].present) newid[s] = next++;
    for (auto& [key, val] : e.couplings)
        remapped[{newid[key.first], newid[key.second]}] = val;
    e.chains = std::move(kept);
    e.couplings = std::move(remapped);
    return out;
}

BuiltEmbedding build_original(const PegasusGraph& g) {
    return build_lattice(g, EmbeddingStyle::kOriginal);
}

BuiltEmbedding build_dense(const PegasusGraph& g) {
    return build_lattice(g, EmbeddingStyle::kDense);
}

namespace {

struct TopoLookup {
    std::map<std::tuple<bool, int, int, int>, int> index;
    std::set<std::pair<int, int>> edges;
    const DerivedTopology* t;

    explicit TopoLookup(const DerivedTopology& topo) : t(&topo) {
        for (int s = 0; s < static_cast<int>(topo.sites.size()); ++s) {
            const TopoSite& ts = topo.sites[s];
            index[{ts.aux, ts.u, ts.v, ts.layer}] = s;
        }
        for (auto [a, b] : topo.edges) edges.insert({a, b});
    }

    bool site_present(int u, int v, int layer) const {
        auto it = index.find({false, u, v, layer});
        return it != index.end() && t->sites[it->second].present;
    }
    bool edge(int a, int b) const {
        if (a < 0 || b < 0) return false;
        const auto key = std::minmax(a, b);
        return edges.count({key.first, key.second}) > 0;
    }
    int find(bool aux, int u, int v, int layer) const {
        auto it = index.find({aux, u, v, layer});
        return it == index.end() ? -1 : it->second;
    }
    bool block_usable(int U, int V, int layer) const {
        int a = find(true, U, V, layer);
        if (a < 0 || !t->sites[a].present) return false;
        std::vector<int> corners;
        for (auto [cu, cv] : block_corners(U, V)) {
            int ci = find(false, cu, cv, layer);
            if (ci < 0 || !t->sites[ci].present) return false;
            corners.push_back(ci);
        }
        for (int ci : corners)
            if (!edge(a, ci)) return false;
        for (std::size_t i = 0; i < corners.size(); ++i)
            for (std::size_t j = i + 1; j < corners.size(); ++j)
                if (!edge(corners[i], corners[j])) return false;
        return true;
    }
};

bool lhz_fits(const TopoLookup& look, int n, int u0, int v0, int layer) {
    for (int jp = 1; jp <= n; ++jp)
        for (int i = 0; i < jp; ++i)
            if (!look.site_present(jp + u0, i + v0, layer)) return false;
    for (int i = 0; i + 2 <= n; ++i)
        if (!look.block_usable(i + 1 + u0, i + v0, layer)) return false;
    for (int a = 1; a <= n - 2; ++a)
        for (int b = a + 1; b <= n - 1; ++b)
            if (!look.block_usable(b + u0, a - 1 + v0, layer)) return false;
    return true;
}

}  // namespace

LhzPlacement find_largest_lhz(const DerivedTopology& t) {
    const TopoLookup look(t);
    int ulo = 0, uhi = 0, vlo = 0, vhi = 0;
    for (const auto& s : t.sites) {
        ulo = std::min(ulo, s.u);
        uhi = std::max(uhi, s.u);
        vlo = std::min(vlo, s.v);
        vhi = std::max(vhi, s.v);
    }
    // anchors are independent; scan them in parallel and reduce by
    // (largest n, then smallest layer/u0/v0) so the result is deterministic
    std::vector<LhzPlacement> anchors;
    for (int layer = 0; layer < t.layers; ++layer)
        for (int u0 = ulo - 1; u0 <= uhi; ++u0)
            for (int v0 = vlo - 1; v0 <= vhi; ++v0) anchors.push_back({0, u0, v0, layer});

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 8)
#endif
    for (std::int64_t a = 0; a < static_cast<std::int64_t>(anchors.size()); ++a) {
        LhzPlacement& spot = anchors[static_cast<std::size_t>(a)];
        while (lhz_fits(look, spot.n + 1, spot.u0, spot.v0, spot.layer)) ++spot.n;
    }
    LhzPlacement best;
    for (const auto& spot : anchors)
        if (spot.n > best.n) best = spot;
    return best;
}

Embedding place_compilation(const PegasusGraph& g, EmbeddingStyle style,
                            const ParityCompilation& c, int u0, int v0, int layer) {
    if (style == EmbeddingStyle::kOriginal && layer != 0)
        throw std::invalid_argument("original embedding has a single layer");
    if (layer < 0 || layer > 1) throw std::invalid_argument("layer must be 0 or 1");

    Embedding e;
    e.style = style;
    e.pegasus_m = g.m();
    e.chains.resize(c.num_physical_spins());

    bool lhz_labels = true;
    for (const auto& q : c.qubits())
        if (q.label.size() > 2) lhz_labels = false;

    std::vector<std::pair<int, int>> qubit_site(c.num_parity_qubits());
    std::vector<std::pair<int, int>> plaq_block(c.num_plaquettes());
    if (lhz_labels) {
        for (int q = 0; q < c.num_parity_qubits(); ++q) {
            auto [u, v] = site_of_label(c.qubits()[q].label, c.logical_n());
            qubit_site[q] = {u + u0, v + v0};
        }
        for (int p = 0; p < c.num_plaquettes(); ++p) {
            int bu = qubit_site[c.plaquettes()[p].members[0]].first;
            int bv = qubit_site[c.plaquettes()[p].members[0]].second;
            for (int mmb : c.plaquettes()[p].members) {
                bu = std::min(bu, qubit_site[mmb].first);
                bv = std::min(bv, qubit_site[mmb].second);
            }
            plaq_block[p] = {bu, bv};
        }
    } else {
        // single-plaquette compilations are pinned onto one block
        if (c.num_plaquettes() != 1)
            throw std::invalid_argument(
                "only LHZ-labeled or single-plaquette compilations can be placed");
        const auto corners = block_corners(u0, v0);
        const auto& members = c.plaquettes()[0].members;
        if (members.size() > corners.size())
            throw std::invalid_argument("plaquette too large for a block");
        for (std::size_t i = 0; i < members.size(); ++i)
            qubit_site[members[i]] = corners[i];
        plaq_block[0] = {u0, v0};
    }

    for (int q = 0; q < c.num_parity_qubits(); ++q) {
        auto [u, v] = qubit_site[q];
        auto nodes = realize_chain(g, site_chain_coords(style, layer, cell_of_site(u, v)));
        if (!nodes)
            throw std::invalid_argument("no chain available for parity qubit " +
                                        std::to_string(q));
        e.chains[q] = std::move(*nodes);
    }
    for (int p = 0; p < c.num_plaquettes(); ++p) {
        auto [bu, bv] = plaq_block[p];
        auto nodes = realize_chain(g, aux_chain_coords(style, layer, bu, bv));
        if (!nodes)
            throw std::invalid_argument("no chain available for auxiliary of plaquette " +
                                        std::to_string(p));
        e.chains[c.plaquettes()[p].aux] = std::move(*nodes);
    }

    // record hardware edges for every pair coupling of the 2-body form
    const IsingHamiltonian h2 = quadratize(with_penalty(c, 1.0));
    for (const auto& t : h2.terms()) {
        if (t.indices.size() != 2) continue;
        auto he = edges_between(g, e.chains[t.indices[0]], e.chains[t.indices[1]]);
        if (he.empty())
            throw std::invalid_argument("missing hardware coupling for pair (" +
                                        std::to_string(t.indices[0]) + ", " +
                                        std::to_string(t.indices[1]) + ")");
        e.couplings[{t.indices[0], t.indices[1]}] = std::move(he);
    }
    return e;
}

ValidationReport validate_embedding(const Embedding& e, const PegasusGraph& g) {
    ValidationReport report;
    auto complain = [&](const std::string& msg) { report.violations.push_back(msg); };

    std::map<int, int> owner;
    for (std::size_t q = 0; q < e.chains.size(); ++q) {
        const auto& chain = e.chains[q];
        if (chain.empty()) {
            complain("chain " + std::to_string(q) + " is empty");
            continue;
        }
        if (static_cast<int>(chain.size()) > max_chain_length(e.style))
            complain("chain " + std::to_string(q) + " exceeds max length " +
                     std::to_string(max_chain_length(e.style)));
        for (int node : chain) {
            if (node < 0 || node >= g.num_nodes()) {
                complain("chain " + std::to_string(q) + " uses an invalid node");
                continue;
            }
            if (g.is_defect(node))
                complain("chain " + std::to_string(q) + " uses defect " + std::to_string(node));
            auto [it, fresh] = owner.try_emplace(node, static_cast<int>(q));
            if (!fresh && it->second != static_cast<int>(q))
                complain("overlap: node " + std::to_string(node) + " in chains " +
                         std::to_string(it->second) + " and " + std::to_string(q));
        }
        // connectivity by BFS over the induced subgraph
        std::set<int> in_chain(chain.begin(), chain.end());
        std::set<int> seen;
        std::queue<int> fifo;
        fifo.push(chain[0]);
        seen.insert(chain[0]);
        while (!fifo.empty()) {
            int x = fifo.front();
            fifo.pop();
            for (int y : g.neighbors(x)) {
                if (in_chain.count(y) && !seen.count(y)) {
                    seen.insert(y);
                    fifo.push(y);
                }
            }
        }
        if (seen.size() != in_chain.size())
            complain("chain " + std::to_string(q) + " is disconnected");
    }
    for (const auto& [pair, edges] : e.couplings) {
        if (edges.empty()) {
            complain("coupling (" + std::to_string(pair.first) + ", " +
                     std::to_string(pair.second) + ") has no edges");
            continue;
        }
        for (auto [a, b] : edges) {
            if (!g.adjacent(a, b))
                complain("coupling (" + std::to_string(pair.first) + ", " +
                         std::to_string(pair.second) + ") lists a non-edge");
            const auto& ca = e.chains[pair.first];
            const auto& cb = e.chains[pair.second];
            const bool a_in_first = std::find(ca.begin(), ca.end(), a) != ca.end();
            const bool b_in_second = std::find(cb.begin(), cb.end(), b) != cb.end();
            const bool a_in_second = std::find(cb.begin(), cb.end(), a) != cb.end();
            const bool b_in_first = std::find(ca.begin(), ca.end(), b) != ca.end();
            if (!((a_in_first && b_in_second) || (a_in_second && b_in_first)))
                complain("coupling (" + std::to_string(pair.first) + ", " +
                         std::to_string(pair.second) + ") edge outside its chains");
        }
    }
    return report;
}

double chain_strength(const IsingHamiltonian& h2, double prefactor) {
    double sum_sq = 0.0;
    int count = 0;
    std::vector<int> degree(h2.num_spins(), 0);
    for (const auto& t : h2.terms()) {
        if (t.indices.empty()) continue;
        if (t.coefficient != 0.0) {
            sum_sq += t.coefficient * t.coefficient;
            ++count;
        }
        if (t.indices.size() == 2) {
            ++degree[t.indices[0]];
            ++degree[t.indices[1]];
        }
    }
    if (count == 0) return prefactor;
    const double rms = std::sqrt(sum_sq / count);
    double mean_degree = 0.0;
    for (int d : degree) mean_degree += d;
    mean_degree = h2.num_spins() ? mean_degree / h2.num_spins() : 0.0;
    return prefactor * rms * std::sqrt(std::max(mean_degree, 1.0));
}

EmbeddedProblem embed_problem(const IsingHamiltonian& h2, const Embedding& e,
                              const PegasusGraph& g) {
    if (static_cast<int>(e.chains.size()) != h2.num_spins())
        throw std::invalid_argument("embedding does not cover every problem spin");

    EmbeddedProblem out;
    for (const auto& chain : e.chains)
        for (int node : chain) out.nodes.push_back(node);
    std::sort(out.nodes.begin(), out.nodes.end());
    if (std::adjacent_find(out.nodes.begin(), out.nodes.end()) != out.nodes.end())
        throw std::invalid_argument("chains overlap");
    std::map<int, int> compact;
    for (std::size_t i = 0; i < out.nodes.size(); ++i)
        compact[out.nodes[i]] = static_cast<int>(i);

    out.chain_strength = chain_strength(h2, e.chain_prefactor);
    out.hamiltonian = IsingHamiltonian(static_cast<int>(out.nodes.size()));
    out.chain_spins.resize(e.chains.size());
    for (std::size_t q = 0; q < e.chains.size(); ++q)
        for (int node : e.chains[q]) out.chain_spins[q].push_back(compact.at(node));

    for (const auto& t : h2.terms()) {
        if (t.indices.empty()) {
            out.hamiltonian.add_term({}, t.coefficient);
        } else if (t.indices.size() == 1) {
            const auto& chain = out.chain_spins[t.indices[0]];
            const double split = t.coefficient / static_cast<double>(chain.size());
            for (int s : chain) out.hamiltonian.add_term({s}, split);
        } else if (t.indices.size() == 2) {
            auto it = e.couplings.find({t.indices[0], t.indices[1]});
            if (it == e.couplings.end() || it->second.empty())
                throw std::invalid_argument("no coupling for pair (" +
                                            std::to_string(t.indices[0]) + ", " +
                                            std::to_string(t.indices[1]) + ")");
            const double split = t.coefficient / static_cast<double>(it->second.size());
            for (auto [a, b] : it->second) {
                int x = compact.at(a), y = compact.at(b);
                if (x > y) std::swap(x, y);
                out.hamiltonian.add_term({x, y}, split);
            }
        } else {
            throw std::invalid_argument("embed_problem expects a 2-body Hamiltonian");
        }
    }

    // ferromagnetic bonds along a BFS spanning tree of each chain
    for (std::size_t q = 0; q < e.chains.size(); ++q) {
        const auto& chain = e.chains[q];
        std::set<int> in_chain(chain.begin(), chain.end());
        std::set<int> seen{chain[0]};
        std::queue<int> fifo;
        fifo.push(chain[0]);
        while (!fifo.empty()) {
            int x = fifo.front();
            fifo.pop();
            for (int y : g.neighbors(x)) {
                if (!in_chain.count(y) || seen.count(y)) continue;
                seen.insert(y);
                fifo.push(y);
                int a = compact.at(x), b = compact.at(y);
                if (a > b) std::swap(a, b);
                out.chain_bonds.emplace_back(a, b);
                out.hamiltonian.add_term({a, b}, -out.chain_strength);
            }
        }
        if (seen.size() != in_chain.size())
            throw std::invalid_argument("chain " + std::to_string(q) + " is disconnected");
    }
    return out;
}

std::string embedding_to_json(const Embedding& e) {
    json j;
    j["style"] = e.style == EmbeddingStyle::kOriginal ? "original" : "dense";
    j["pegasus_m"] = e.pegasus_m;
    j["chain_prefactor"] = e.chain_prefactor;
    j["chains"] = json::array();
    for (const auto& chain : e.chains) j["chains"].push_back(chain);
    j["couplings"] = json::array();
    for (const auto& [pair, edges] : e.couplings) {
        json cj;
        cj["qubits"] = {pair.first, pair.second};
        cj["edges"] = json::array();
        for (auto [a, b] : edges) cj["edges"].push_back({a, b});
        j["couplings"].push_back(std::move(cj));
    }
    return j.dump(2) + "\n";
}

Embedding embedding_from_json(const std::string& text) {
    json j = json::parse(text);
    Embedding e;
    e.style = j.at("style").get<std::string>() == "original" ? EmbeddingStyle::kOriginal
                                                             : EmbeddingStyle::kDense;
    e.pegasus_m = j.at("pegasus_m").get<int>();
    if (j.contains("chain_prefactor"))
        e.chain_prefactor = j.at("chain_prefactor").get<double>();
    for (const auto& cj : j.at("chains")) e.chains.push_back(cj.get<std::vector<int>>());
    for (const auto& cj : j.at("couplings")) {
        std::pair<int, int> key{cj.at("qubits")[0].get<int>(), cj.at("qubits")[1].get<int>()};
        std::vector<std::pair<int, int>> edges;
        for (const auto& ej : cj.at("edges"))
            edges.emplace_back(ej[0].get<int>(), ej[1].get<int>());
        e.couplings[key] = std::move(edges);
    }
    return e;
}

}  // namespace paritylab
