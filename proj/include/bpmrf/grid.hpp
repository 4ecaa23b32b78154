#pragma once

#include <string>

#include "bpmrf/errors.hpp"

namespace bpmrf {

// The T x T lattice of year combinations for the bivariate surface.
// Axis 1 is the DBP-year index i, axis 2 the SBP-year index j. Cells are
// flattened row-major: (i,j) -> (i-1)*T + j for 1-based i,j.
struct GridSpec {
    int T;

    explicit GridSpec(int years) : T(years) {
        if (T < 2) throw validation_error("GridSpec: T must be >= 2, got " + std::to_string(T));
    }

    int size() const { return T * T; }

    // 1-based cell -> 0-based flat index.
    int flat(int i, int j) const {
        check_index(i, j);
        return (i - 1) * T + (j - 1);
    }

    // 0-based diagonal cell (t,t) for 1-based year t.
    int diag_cell(int t) const { return flat(t, t); }

    double centered(int t) const { return t - 0.5 * (T + 1); }

    void check_index(int i, int j) const {
        if (i < 1 || i > T || j < 1 || j > T)
            throw validation_error("GridSpec: cell (" + std::to_string(i) + "," +
                                   std::to_string(j) + ") outside 1.." + std::to_string(T));
    }
};

// Number of in-bounds cells of the 13-point second-order stencil centered at
// (i,j), counting the center. Takes values {6,8,9,11,12,13} on a T>=5 grid.
inline int neighbor_count(int i, int j, int T) {
    GridSpec(T).check_index(i, j);
    static constexpr int offs[13][2] = {{0, 0},  {1, 0},  {-1, 0}, {0, 1},  {0, -1},
                                        {2, 0},  {-2, 0}, {0, 2},  {0, -2}, {1, 1},
                                        {1, -1}, {-1, 1}, {-1, -1}};
    int count = 0;
    for (const auto& o : offs) {
        int a = i + o[0], b = j + o[1];
        if (a >= 1 && a <= T && b >= 1 && b <= T) ++count;
    }
    return count;
}

}  // namespace bpmrf
