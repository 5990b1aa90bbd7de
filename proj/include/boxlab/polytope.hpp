#pragma once

#include <vector>

#include "boxlab/box.hpp"
#include "boxlab/boolfn.hpp"
#include "boxlab/rational.hpp"

namespace boxlab {

// Deterministic local strategies are per-party functions from the party's
// full input word to its full output word; with one port per party there are
// 4^n of them.
struct LocalityResult {
    bool local = false;
    // when local: mixture weights over deterministic strategies (indexed by
    // the canonical enumeration order)
    std::vector<Rat> weights;
    // when not local: a violated Bell-type inequality from the LP dual —
    // sum_e coeffs[e] * P(e) <= bound for every local box, > bound for b.
    // Entries are indexed e = x * 2^m + a.
    std::vector<Rat> bell_coeffs;
    Rat bell_bound;
};

LocalityResult is_local(const Box& b, const PartyAssignment& assignment);
LocalityResult is_local(const Box& b);  // one port per party

// Minimum L1 distance from b to the local polytope, as an exact LP.
Rat l1_distance_to_local(const Box& b, const PartyAssignment& assignment);
Rat l1_distance_to_local(const Box& b);

// Extreme-point test for the non-signaling polytope: b is a vertex iff the
// only direction d with zero row sums, all non-signaling equalities, and
// d = 0 on the zero entries of b is d = 0 (exact rank computation).
bool is_vertex(const Box& b);

// Combinatorial classification of full-correlation boxes: extremal iff the
// nonlocal term set has a single empty-overlap block and f depends on all
// variables.
bool classify_fc_extremal(const BooleanFunction& f);

struct ConvexSplit {
    Box p1, p2;
    Rat weight;  // weight*p1 + (1-weight)*p2 recombines exactly
};

// Explicit convex split of a non-extremal full-correlation box: dummy-party
// split when f does not depend on all inputs, disjoint-block split of the
// nonlocal terms otherwise. Throws when the box is extremal or the affine
// full-dependence degenerate case.
ConvexSplit nonextremal_split(const BooleanFunction& f);

// Number of deterministic strategies for the given assignment (LP size guard).
unsigned long deterministic_strategy_count(const PartyAssignment& assignment);

}  // namespace boxlab
