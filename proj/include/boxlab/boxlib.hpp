#pragma once

#include "boxlab/box.hpp"
#include "boxlab/boolfn.hpp"

namespace boxlab {

// P(a|x) = 2^{1-n} on the event XOR(a) = f(x), 0 otherwise.
Box full_correlation_box(const BooleanFunction& f);

Box n_pr_box(int n);
Box nk_pr_box(int n, int k);  // AND of the first k inputs on n ports
Box correlated_noise_box(int n);

struct ClosestLocal {
    Box box;
    Rat l1;  // 2 * hamming distance of the best affine approximation
    AffineApprox affine;
};

// The closest local full-correlation box (full_correlation_box of the best
// affine approximation) and its L1 distance from full_correlation_box(f).
ClosestLocal closest_local_fc_box(const BooleanFunction& f);

}  // namespace boxlab
