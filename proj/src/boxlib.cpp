#include "boxlab/boxlib.hpp"

#include <bit>
#include <stdexcept>

namespace boxlab {

Box full_correlation_box(const BooleanFunction& f) {
    if (f.var_count < 1) throw std::invalid_argument("full_correlation_box: need >= 1 variable");
    Box b(f.var_count);
    const Rat w = rat_pow2(1 - f.var_count);
    for (uint32_t x = 0; x < b.words(); ++x)
        for (uint32_t a = 0; a < b.words(); ++a)
            if ((std::popcount(a) & 1) == f(x)) b.at(x, a) = w;
    return b;
}

Box n_pr_box(int n) { return full_correlation_box(BooleanFunction::and_all(n)); }

Box nk_pr_box(int n, int k) {
    if (k < 1 || k > n) throw std::invalid_argument("nk_pr_box: need 1 <= k <= n");
    return full_correlation_box(BooleanFunction::and_first(n, k));
}

Box correlated_noise_box(int n) {
    return full_correlation_box(BooleanFunction::constant(n, 0));
}

ClosestLocal closest_local_fc_box(const BooleanFunction& f) {
    ClosestLocal res;
    res.affine = best_affine_approx(f);
    res.box = full_correlation_box(res.affine.g);
    // each disagreeing input contributes total variation 1, i.e. L1 of 2
    res.l1 = Rat(2) * Rat(static_cast<unsigned long>(res.affine.distance));
    return res;
}

}  // namespace boxlab
