#pragma once

#include <vector>

#include "boxlab/rational.hpp"

namespace boxlab {

// Exact rational simplex for  min c.z  s.t.  A z = b, z >= 0.
// Dense two-phase tableau; Dantzig pricing with a permanent switch to Bland's
// rule once degenerate pivots accumulate, so termination is guaranteed.
struct LpResult {
    enum class Status { Optimal, Infeasible, Unbounded };
    Status status = Status::Infeasible;
    Rat objective;
    std::vector<Rat> solution;  // primal point (size = columns) when Optimal
    // Farkas certificate when Infeasible: y with y.A_col <= 0 for every
    // column and y.b > 0, stated against the caller's row orientation.
    std::vector<Rat> farkas;
};

LpResult solve_lp(std::vector<std::vector<Rat>> A, std::vector<Rat> b, std::vector<Rat> c);

// Rank of a dense rational matrix (Gaussian elimination).
int matrix_rank(std::vector<std::vector<Rat>> m);

}  // namespace boxlab
