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
#include <set>
#include <string>
#include <vector>

namespace paritylab {

// Pegasus coordinate (u, w, k, z): u is the orientation (0 vertical,
// 1 horizontal), w the perpendicular tile offset, k the track (0..11), z the
// parallel tile offset.  A vertical qubit occupies column 12w + k and spans
// rows [12z + voff(k), 12z + voff(k) + 12); horizontals are the transpose
// with hoff.  Standard offsets: voff = 2,2,2,2,6,6,6,6,10,10,10,10 and
// hoff = 6,6,6,6,2,2,2,2,10,10,10,10.
struct PegasusCoord {
    int u = 0, w = 0, k = 0, z = 0;
    auto operator<=>(const PegasusCoord&) const = default;
};

class PegasusGraph {
  public:
    // Builds P_m (m >= 2) with the standard offsets and the linear node
    // numbering id = z + (m-1) * (k + 12 * (w + m * u)).
    explicit PegasusGraph(int m, std::set<int> defects = {});

    int m() const { return m_; }
    int num_nodes() const { return 24 * m_ * (m_ - 1); }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    const std::set<int>& defects() const { return defects_; }

    int node_id(const PegasusCoord& c) const;
    PegasusCoord coord(int id) const;
    bool has_node(const PegasusCoord& c) const;  // in range and not a defect
    bool is_defect(int id) const { return defects_.count(id) > 0; }

    bool adjacent(int a, int b) const;
    const std::vector<int>& neighbors(int id) const { return adj_[id]; }

    static int vertical_offset(int k);
    static int horizontal_offset(int k);

  private:
    int m_;
    std::set<int> defects_;
    std::vector<std::pair<int, int>> edges_;
    std::vector<std::vector<int>> adj_;
};

// Independent statement of the published adjacency rules, used to cross-check
// the constructive generator: decides adjacency from a pair of coordinates
// alone.  Defects are ignored here.
bool pegasus_adjacent_reference(int m, const PegasusCoord& a, const PegasusCoord& b);

// Graph file: header "pegasus <m>", "defect <id>" lines, then "u v" edges of
// the usable (defect-free) subgraph.
std::string pegasus_to_text(const PegasusGraph& g);
PegasusGraph pegasus_from_text(const std::string& text);

// An 8-qubit unit cell of the repetitive structure: 4 externals of one
// orientation fully crossed by 4 internals of the other (a K_{4,4} plus the
// odd couplers inside each quad).  Diamonds come in two interleaved families
// and are arranged in diagonal rows numbered 0..2(m-2).
struct Diamond {
    int row = 0;       // 0 .. 2(m-2)
    int position = 0;  // index along the row
    std::vector<int> external;  // 4 node ids
    std::vector<int> internal;  // 4 node ids
    bool defective = false;     // touches a defect
};

std::vector<std::vector<Diamond>> extract_diamonds(const PegasusGraph& g);

}  // namespace paritylab
