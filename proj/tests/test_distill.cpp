#include <doctest.h>

#include "boxlab/boxlib.hpp"
#include "boxlab/distill.hpp"

using namespace boxlab;

namespace {

BooleanFunction example4() {
    AnfForm a;
    a.var_count = 4;
    a.monomials = {0b1111, 0b0111, 0b1100};
    return from_anf(a);
}

}  // namespace

TEST_SUITE("distill") {

TEST_CASE("epsilon_of reconstructs the mixing parameter") {
    const BooleanFunction f = BooleanFunction::and_all(2);
    CHECK(epsilon_of(full_correlation_box(f), f).epsilon == 1);
    CHECK(epsilon_of(correlated_noise_box(2), f).epsilon == 0);
    const EpsilonResult mid =
        epsilon_of(mix(full_correlation_box(f), correlated_noise_box(2), Rat(2, 7)), f);
    REQUIRE(mid.ok);
    CHECK(mid.epsilon == Rat(2, 7));
}

TEST_CASE("epsilon_of rejects boxes outside the family") {
    const BooleanFunction f = BooleanFunction::and_all(2);
    // a local deterministic box is not in the two-point family of AND
    Box det(2);
    for (uint32_t x = 0; x < 4; ++x) det.at(x, 0) = 1;
    const EpsilonResult r = epsilon_of(det, f);
    CHECK_FALSE(r.ok);
    CHECK_FALSE(r.error.empty());
    // degenerate target: the family is a single point, reconstruction refuses
    CHECK_FALSE(epsilon_of(correlated_noise_box(2), BooleanFunction::constant(2, 0)).ok);
    CHECK_FALSE(epsilon_of(n_pr_box(3), f).ok);  // dimension mismatch
}

TEST_CASE("bs_step matches the closed form for two parties on the 1/10 grid") {
    for (int k = 1; k <= 9; ++k) {
        const Rat eps = Rat(k) / 10;  // canonical form, unlike Rat(k, 10)
        const NoisyFamily out = bs_step({BooleanFunction::and_all(2), eps});
        CHECK(out.epsilon == (3 * eps - eps * eps) / 2);
        CHECK(out.epsilon > eps);
    }
}

TEST_CASE("bs_step is monotone for three parties and keeps the family closed") {
    const NoisyFamily out = bs_step({BooleanFunction::and_all(3), Rat(1, 2)});
    CHECK(out.epsilon > Rat(1, 2));
    CHECK(out.realized() ==
          mix(n_pr_box(3), correlated_noise_box(3), out.epsilon));
}

TEST_CASE("bs_step fixed points") {
    CHECK(bs_step({BooleanFunction::and_all(2), 1}).epsilon == 1);
    CHECK(bs_step({BooleanFunction::and_all(2), 0}).epsilon == 0);
}

TEST_CASE("bs_step requires the AND target") {
    AnfForm a{3, {0b011}};
    CHECK_THROWS(bs_step({from_anf(a), Rat(1, 2)}));
}

TEST_CASE("trajectory from zero noise stays at zero") {
    const Trajectory t = distill_trajectory({BooleanFunction::and_all(2), 0}, 3);
    REQUIRE(t.size() == 4);
    for (const TrajectoryPoint& p : t) {
        CHECK(p.epsilon == 0);
        CHECK(p.l1_to_target == 2);
        CHECK(p.success_probability == Rat(3, 4));
    }
}

TEST_CASE("trajectory is strictly increasing and rounds are numbered from 0") {
    const Trajectory t = distill_trajectory({BooleanFunction::and_all(2), Rat(1, 10)}, 5);
    REQUIRE(t.size() == 6);
    for (std::size_t i = 0; i < t.size(); ++i) CHECK(t[i].round == static_cast<int>(i));
    for (std::size_t i = 1; i < t.size(); ++i) {
        CHECK(t[i].epsilon > t[i - 1].epsilon);
        CHECK(t[i].l1_to_target < t[i - 1].l1_to_target);
    }
    CHECK(t[1].epsilon == Rat(29, 200));
}

TEST_CASE("round budget is enforced") {
    CHECK_THROWS(distill_trajectory({BooleanFunction::and_all(2), Rat(1, 2)}, -1));
    CHECK_THROWS(distill_trajectory({BooleanFunction::and_all(2), Rat(1, 2)},
                                    kMaxRounds + 1));
}

TEST_CASE("plan for the pure AND is a single isolated branch") {
    const DistillationPlan plan = make_plan(BooleanFunction::and_all(3));
    CHECK(plan.root.type == PlanStep::Type::AffineCorrect);
    CHECK(plan.root.affine_linear == 0);
    CHECK(plan.root.affine_const == 0);
    const PlanStep& combine = plan.root.children.at(0);
    CHECK(combine.type == PlanStep::Type::XorCombine);
    REQUIRE(combine.children.size() == 1);
    const PlanStep& aug = combine.children.at(0);
    CHECK(aug.type == PlanStep::Type::Augment);
    CHECK(aug.term == 0b111);
    const PlanStep& bs = aug.children.at(0);
    CHECK(bs.type == PlanStep::Type::BsIterate);
    CHECK(bs.children.at(0).type == PlanStep::Type::Isolate);
    CHECK(bs.children.at(0).children.at(0).type == PlanStep::Type::Source);
}

TEST_CASE("plan for the 4-party example covers each term once") {
    const DistillationPlan plan = make_plan(example4());
    const PlanStep& combine = plan.root.children.at(0);
    REQUIRE(combine.children.size() == 3);
    // term order: size descending, then by mask
    CHECK(combine.children[0].term == 0b1111);
    CHECK(combine.children[1].term == 0b0111);
    CHECK(combine.children[2].term == 0b1100);
    // the full term is built recursively from the isolable smaller ones
    const PlanStep& rec = combine.children[0].children.at(0);
    REQUIRE(rec.type == PlanStep::Type::RecursiveConstruct);
    CHECK(rec.target_size == 4);
    CHECK(rec.children.at(0).type == PlanStep::Type::BsIterate);
    CHECK(rec.children.at(1).type == PlanStep::Type::BsIterate);
    // the other two terms are isolated directly
    CHECK(combine.children[1].children.at(0).type == PlanStep::Type::BsIterate);
    CHECK(combine.children[2].children.at(0).type == PlanStep::Type::BsIterate);
}

TEST_CASE("plan builds a blocked term recursively from smaller units") {
    // f = x1*x2*x3 + x1*x2: {1,2} is a proper subset of {1,2,3}, so the
    // 3-term cannot be isolated and no isolable term of size >= 3 exists;
    // it is built recursively, while {1,2} isolates directly.
    AnfForm a{3, {0b111, 0b011}};
    const DistillationPlan plan = make_plan(from_anf(a));
    const PlanStep& combine = plan.root.children.at(0);
    REQUIRE(combine.children.size() == 2);
    CHECK(combine.children[0].term == 0b111);
    CHECK(combine.children[0].children.at(0).type == PlanStep::Type::RecursiveConstruct);
    CHECK(combine.children[1].term == 0b011);
    CHECK(combine.children[1].children.at(0).type == PlanStep::Type::BsIterate);
}

TEST_CASE("plan reduces a blocked term from a larger isolable one") {
    // {1,2,3} is blocked by its subset {1,2}; the isolable {4,5,6,7} is
    // larger, so the planner distills it and fixes surplus inputs to one.
    AnfForm a{7, {0b0000111, 0b0000011, 0b1111000}};
    const DistillationPlan plan = make_plan(from_anf(a));
    const PlanStep& combine = plan.root.children.at(0);
    REQUIRE(combine.children.size() == 3);
    CHECK(combine.children[0].term == 0b1111000);
    CHECK(combine.children[1].term == 0b0000111);
    CHECK(combine.children[2].term == 0b0000011);
    const PlanStep& fix = combine.children[1].children.at(0);
    REQUIRE(fix.type == PlanStep::Type::FixToOne);
    CHECK(fix.target_size == 3);
    CHECK(fix.children.at(0).type == PlanStep::Type::BsIterate);
}

TEST_CASE("plan strips and replays the affine part") {
    AnfForm a{2, {0b11, 0b01, 0}};
    const DistillationPlan plan = make_plan(from_anf(a));
    CHECK(plan.root.affine_linear == 0b01);
    CHECK(plan.root.affine_const == 1);
    const ExecutionReport rep = execute_plan(plan, 1, 1);
    CHECK(rep.final_l1 == 0);
    CHECK(rep.result == full_correlation_box(from_anf(a)));
}

TEST_CASE("affine functions get the empty plan") {
    const BooleanFunction f = affine_function(2, 0b10, 1);
    const DistillationPlan plan = make_plan(f);
    CHECK(plan.root.children.at(0).children.at(0).type ==
          PlanStep::Type::CorrelatedNoise);
    const ExecutionReport rep = execute_plan(plan, Rat(1, 3), 2);
    CHECK(rep.final_l1 == 0);
    CHECK(rep.result == full_correlation_box(f));
}

TEST_CASE("noiseless replay of the 4-party example plan is exact") {
    const DistillationPlan plan = make_plan(example4());
    const ExecutionReport rep = execute_plan(plan, 1, 1);
    CHECK(rep.final_l1 == 0);
    CHECK(rep.result == full_correlation_box(example4()));
    REQUIRE(rep.branches.size() >= 3);
}

TEST_CASE("noiseless replay is exact for every non-affine 2-variable function") {
    for (uint32_t bits = 0; bits < 16; ++bits) {
        BooleanFunction f(2, {static_cast<uint8_t>(bits & 1),
                              static_cast<uint8_t>((bits >> 1) & 1),
                              static_cast<uint8_t>((bits >> 2) & 1),
                              static_cast<uint8_t>((bits >> 3) & 1)});
        const ExecutionReport rep = execute_plan(make_plan(f), 1, 1);
        CHECK(rep.final_l1 == 0);
    }
}

TEST_CASE("more rounds do not increase the final distance") {
    AnfForm a{3, {0b011, 0b110}};
    const DistillationPlan plan = make_plan(from_anf(a));
    const Rat eps(3, 10);
    const Rat d1 = execute_plan(plan, eps, 1).final_l1;
    const Rat d3 = execute_plan(plan, eps, 3).final_l1;
    CHECK(d3 <= d1);
    CHECK(d3 < l1_distance(mix(full_correlation_box(from_anf(a)),
                               correlated_noise_box(3), eps),
                           full_correlation_box(from_anf(a))));
}

TEST_CASE("execute_plan validates its arguments") {
    const DistillationPlan plan = make_plan(BooleanFunction::and_all(2));
    CHECK_THROWS(execute_plan(plan, Rat(3, 2), 1));
    CHECK_THROWS(execute_plan(plan, Rat(1, 2), kMaxRounds + 1));
}

}  // TEST_SUITE
