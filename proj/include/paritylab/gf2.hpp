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
#include <optional>
#include <vector>

namespace paritylab {

// Dense GF(2) linear algebra on bit-packed rows.  Small systems only (the
// flip-mask solve and decode reference sets are a few hundred variables).
class Gf2Matrix {
  public:
    Gf2Matrix(int rows, int cols)
        : rows_(rows), cols_(cols), words_((cols + 63) / 64),
          data_(static_cast<std::size_t>(rows) * words_, 0) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    bool get(int r, int c) const {
        return (data_[static_cast<std::size_t>(r) * words_ + c / 64] >> (c % 64)) & 1;
    }
    void set(int r, int c, bool v) {
        std::uint64_t& w = data_[static_cast<std::size_t>(r) * words_ + c / 64];
        const std::uint64_t bit = std::uint64_t{1} << (c % 64);
        if (v)
            w |= bit;
        else
            w &= ~bit;
    }
    void xor_rows(int dst, int src) {
        for (int w = 0; w < words_; ++w)
            data_[static_cast<std::size_t>(dst) * words_ + w] ^=
                data_[static_cast<std::size_t>(src) * words_ + w];
    }
    void swap_rows(int a, int b) {
        for (int w = 0; w < words_; ++w)
            std::swap(data_[static_cast<std::size_t>(a) * words_ + w],
                      data_[static_cast<std::size_t>(b) * words_ + w]);
    }

  private:
    int rows_, cols_, words_;
    std::vector<std::uint64_t> data_;
};

// Solves A x = b over GF(2).  Free variables are set to 0, so the result is
// deterministic.  Returns nullopt when the system is inconsistent.
inline std::optional<std::vector<bool>> gf2_solve(Gf2Matrix a, std::vector<bool> b) {
    const int rows = a.rows(), cols = a.cols();
    std::vector<int> pivot_col(rows, -1);
    int rank = 0;
    for (int c = 0; c < cols && rank < rows; ++c) {
        int p = -1;
        for (int r = rank; r < rows; ++r)
            if (a.get(r, c)) {
                p = r;
                break;
            }
        if (p < 0) continue;
        a.swap_rows(rank, p);
        std::swap(b[rank], b[p]);
        for (int r = 0; r < rows; ++r) {
            if (r != rank && a.get(r, c)) {
                a.xor_rows(r, rank);
                b[r] = b[r] != b[rank];
            }
        }
        pivot_col[rank] = c;
        ++rank;
    }
    for (int r = rank; r < rows; ++r)
        if (b[r]) return std::nullopt;
    std::vector<bool> x(cols, false);
    for (int r = 0; r < rank; ++r) x[pivot_col[r]] = b[r];
    return x;
}

}  // namespace paritylab
