#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "boxlab/boolfn.hpp"
#include "boxlab/box.hpp"
#include "boxlab/rational.hpp"

namespace boxlab {

// Two-point noise family  eps * FC(target) + (1 - eps) * correlated noise.
struct NoisyFamily {
    BooleanFunction target;
    Rat epsilon;

    Box realized() const;
};

struct TrajectoryPoint {
    int round = 0;
    Rat epsilon;
    Rat success_probability;
    Rat l1_to_target;
};
using Trajectory = std::vector<TrajectoryPoint>;

struct EpsilonResult {
    bool ok = false;
    Rat epsilon;
    std::string error;
    uint32_t bad_input = 0, bad_output = 0;  // offending entry on mismatch
};

// Exact reconstruction of the mixing parameter; fails when the box is not in
// the two-point family of f.
EpsilonResult epsilon_of(const Box& b, const BooleanFunction& f);

// One protocol round on two i.i.d. copies. Requires target = AND of all
// inputs; throws on a family-closure violation (that would falsify the
// family-invariance property and is not recoverable).
NoisyFamily bs_step(const NoisyFamily& family);

// Successive self-composition: round t+1 applies the protocol to two copies
// of the round-t box, which is the asymptotic many-copy iteration.
Trajectory distill_trajectory(const NoisyFamily& family, int rounds);

inline constexpr int kMaxRounds = 24;  // denominators square every round

// --- planner ---------------------------------------------------------------

struct PlanStep {
    enum class Type {
        Source,              // i.i.d. copies of the source noisy box
        CorrelatedNoise,     // locally constructible P^c (affine-only plans)
        Isolate,             // fix inputs outside `term` to 0, XOR-group ports
        BsIterate,           // `rounds` protocol rounds (-1: use rounds_per_unit)
        FixToOne,            // fix surplus inputs to 1 down to target_size
        RecursiveConstruct,  // build target_size-PR from children[0] + children[1] PRs
        Augment,             // embed into `parties` parties at `positions`
        XorCombine,          // combine all children through one wiring
        AffineCorrect,       // replay stripped affine part by local flips
    };
    Type type = Type::Source;
    uint32_t term = 0;           // Isolate / Augment positions source-variable mask
    int target_size = 0;         // FixToOne / RecursiveConstruct
    int rounds = -1;             // BsIterate
    int parties = 0;             // Augment
    uint32_t affine_linear = 0;  // AffineCorrect
    uint8_t affine_const = 0;    // AffineCorrect
    std::vector<PlanStep> children = {};
};

struct DistillationPlan {
    BooleanFunction target;
    PlanStep root;
};

// Deterministic planner over the ANF: strips the affine part, then per
// nonlocal term (size descending, then by mask) emits isolation, reduction
// from a larger isolable term, or recursive construction from smaller ones.
DistillationPlan make_plan(const BooleanFunction& f);

struct BranchReport {
    uint32_t term = 0;   // branch label: the covered nonlocal term (0 = none)
    int unit_ports = 0;  // size of the distilled unit inside that branch
    Trajectory trajectory;
};

struct ExecutionReport {
    std::vector<BranchReport> branches;
    Rat final_l1;  // distance of the result from FC(target)
    Box result;
};

ExecutionReport execute_plan(const DistillationPlan& plan, const Rat& eps0,
                             int rounds_per_unit);

std::string step_type_name(PlanStep::Type t);

}  // namespace boxlab
