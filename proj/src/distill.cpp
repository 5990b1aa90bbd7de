#include "boxlab/distill.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "boxlab/boxlib.hpp"
#include "boxlab/wiring.hpp"

namespace boxlab {

Box NoisyFamily::realized() const {
    return mix(full_correlation_box(target), correlated_noise_box(target.var_count), epsilon);
}

EpsilonResult epsilon_of(const Box& b, const BooleanFunction& f) {
    EpsilonResult res;
    if (b.port_count != f.var_count) {
        res.error = "dimension mismatch";
        return res;
    }
    uint32_t x1 = 0;
    bool found = false;
    for (uint32_t x = 0; x < f.size(); ++x)
        if (f(x)) {
            x1 = x;
            found = true;
            break;
        }
    const Box noise = correlated_noise_box(f.var_count);
    if (!found) {
        res.error = "degenerate family: FC(f) equals the correlated noise box";
        return res;
    }
    // at input x1 the output word 0 has mass 0 in FC(f) and 2^{1-n} in noise
    Rat eps = 1 - b.at(x1, 0) * rat_pow2(f.var_count - 1);
    if (eps < 0 || eps > 1) {
        res.error = "not in family: reconstructed epsilon outside [0,1]";
        res.bad_input = x1;
        return res;
    }
    const Box expected = mix(full_correlation_box(f), noise, eps);
    for (uint32_t x = 0; x < b.words(); ++x)
        for (uint32_t a = 0; a < b.words(); ++a)
            if (b.at(x, a) != expected.at(x, a)) {
                res.error = "not in family: entry mismatch";
                res.bad_input = x;
                res.bad_output = a;
                return res;
            }
    res.ok = true;
    res.epsilon = eps;
    return res;
}

NoisyFamily bs_step(const NoisyFamily& family) {
    const int n = family.target.var_count;
    if (family.target != BooleanFunction::and_all(n))
        throw std::invalid_argument("bs_step: target must be the AND of all inputs");
    const Box in = family.realized();
    const Box out = apply_wiring(bs_wiring(n), {in, in});
    EpsilonResult eps = epsilon_of(out, family.target);
    if (!eps.ok)
        throw std::logic_error("bs_step: family closure violated: " + eps.error);
    return NoisyFamily{family.target, eps.epsilon};
}

Trajectory distill_trajectory(const NoisyFamily& family, int rounds) {
    if (rounds < 0 || rounds > kMaxRounds)
        throw std::invalid_argument("distill_trajectory: round budget exceeded");
    Trajectory traj;
    NoisyFamily cur = family;
    const Box perfect = full_correlation_box(family.target);
    for (int r = 0; r <= rounds; ++r) {
        const Box box = cur.realized();
        traj.push_back({r, cur.epsilon, success_probability(box, family.target),
                        l1_distance(box, perfect)});
        if (r < rounds) cur = bs_step(cur);
    }
    return traj;
}

namespace {

bool is_isolable(uint32_t term, const std::set<uint32_t>& nonlocal) {
    for (uint32_t j : nonlocal)
        if (j != term && (j & ~term) == 0) return false;
    return true;
}

PlanStep source_step() { return PlanStep{PlanStep::Type::Source}; }

PlanStep isolate_step(uint32_t term, PlanStep child) {
    PlanStep s{PlanStep::Type::Isolate};
    s.term = term;
    s.children.push_back(std::move(child));
    return s;
}

PlanStep bs_step_node(PlanStep child) {
    PlanStep s{PlanStep::Type::BsIterate};
    s.children.push_back(std::move(child));
    return s;
}

PlanStep fix_step(int target_size, PlanStep child) {
    PlanStep s{PlanStep::Type::FixToOne};
    s.target_size = target_size;
    s.children.push_back(std::move(child));
    return s;
}

PlanStep augment_step(int parties, uint32_t positions, PlanStep child) {
    PlanStep s{PlanStep::Type::Augment};
    s.parties = parties;
    s.term = positions;
    s.children.push_back(std::move(child));
    return s;
}

// A distilled PR-type unit of the given size: isolate the chosen term,
// iterate the protocol, and reduce if the term is larger than needed.
PlanStep distilled_unit(uint32_t iso_term, int want_size) {
    PlanStep unit = bs_step_node(isolate_step(iso_term, source_step()));
    if (std::popcount(iso_term) > want_size) unit = fix_step(want_size, std::move(unit));
    return unit;
}

}  // namespace

DistillationPlan make_plan(const BooleanFunction& f) {
    const int n = f.var_count;
    const AnfForm anf = anf_decompose(f);
    const auto nonlocal = nonlocal_term_set(anf);

    uint32_t affine_linear = 0;
    uint8_t affine_const = 0;
    for (uint32_t t : anf.monomials) {
        if (t == 0) affine_const = 1;
        if (std::popcount(t) == 1) affine_linear |= t;
    }

    PlanStep combine{PlanStep::Type::XorCombine};
    if (nonlocal.empty()) {
        // affine functions need no distillation; P^c plus local flips
        combine.children.push_back(PlanStep{PlanStep::Type::CorrelatedNoise});
    } else {
        std::vector<uint32_t> terms(nonlocal.begin(), nonlocal.end());
        std::sort(terms.begin(), terms.end(), [](uint32_t a, uint32_t b) {
            const int pa = std::popcount(a), pb = std::popcount(b);
            return pa != pb ? pa > pb : a < b;
        });
        std::vector<uint32_t> isolable;
        for (uint32_t t : terms)
            if (is_isolable(t, nonlocal)) isolable.push_back(t);
        // minimal-size terms are always isolable
        if (isolable.empty()) throw std::logic_error("make_plan: no isolable term");

        for (uint32_t term : terms) {
            const int size = std::popcount(term);
            PlanStep branch;
            if (is_isolable(term, nonlocal)) {
                branch = bs_step_node(isolate_step(term, source_step()));
            } else {
                // largest isolable term (terms are pre-sorted, so front wins)
                const uint32_t big = isolable.front();
                if (std::popcount(big) >= size) {
                    branch = distilled_unit(big, size);
                } else {
                    // construct recursively from the largest isolable unit and
                    // distilled bipartite PRs
                    uint32_t pr_source = 0;
                    for (uint32_t t : isolable)
                        if (std::popcount(t) == 2) {
                            pr_source = t;
                            break;
                        }
                    if (pr_source == 0) pr_source = isolable.back();  // smallest isolable
                    PlanStep rec{PlanStep::Type::RecursiveConstruct};
                    rec.target_size = size;
                    rec.children.push_back(distilled_unit(big, std::popcount(big)));
                    rec.children.push_back(distilled_unit(pr_source, 2));
                    branch = std::move(rec);
                }
            }
            combine.children.push_back(augment_step(n, term, std::move(branch)));
        }
    }

    PlanStep root{PlanStep::Type::AffineCorrect};
    root.affine_linear = affine_linear;
    root.affine_const = affine_const;
    root.children.push_back(std::move(combine));

    return DistillationPlan{f, std::move(root)};
}

namespace {

struct ExecContext {
    const BooleanFunction* f = nullptr;
    int n = 0;
    Rat eps0;
    int rounds_per_unit = 0;
    std::vector<BranchReport>* branches = nullptr;
};

Box exec_step(const PlanStep& step, const ExecContext& ctx, uint32_t branch_label) {
    switch (step.type) {
        case PlanStep::Type::Source:
            return mix(full_correlation_box(*ctx.f), correlated_noise_box(ctx.n), ctx.eps0);
        case PlanStep::Type::CorrelatedNoise:
            return correlated_noise_box(ctx.n);
        case PlanStep::Type::Isolate: {
            Box in = exec_step(step.children.at(0), ctx, branch_label);
            Isolation iso = isolate_term(*ctx.f, step.term,
                                         default_isolation_assignment(ctx.n, step.term));
            if (!iso.ok) throw std::logic_error("execute_plan: " + iso.error);
            return apply_wiring(iso.wiring, {in});
        }
        case PlanStep::Type::BsIterate: {
            Box in = exec_step(step.children.at(0), ctx, branch_label);
            const int rounds = step.rounds < 0 ? ctx.rounds_per_unit : step.rounds;
            const BooleanFunction target = BooleanFunction::and_all(in.port_count);
            EpsilonResult eps = epsilon_of(in, target);
            if (!eps.ok) throw std::logic_error("execute_plan: " + eps.error);
            NoisyFamily fam{target, eps.epsilon};
            Trajectory traj = distill_trajectory(fam, rounds);
            ctx.branches->push_back({branch_label, in.port_count, traj});
            return NoisyFamily{target, traj.back().epsilon}.realized();
        }
        case PlanStep::Type::FixToOne: {
            Box in = exec_step(step.children.at(0), ctx, branch_label);
            const int from = in.port_count, to = step.target_size;
            if (to < 2 || to > from) throw std::logic_error("execute_plan: bad reduction");
            if (to == from) return in;
            std::map<int, int> fixes;
            PartyAssignment pa;
            pa.party_count = to;
            pa.party_of.resize(from);
            for (int p = 1; p <= from; ++p) pa.party_of[p - 1] = std::min(p, to);
            for (int p = to + 1; p <= from; ++p) fixes[p] = 1;
            return fix_inputs(in, fixes, pa);
        }
        case PlanStep::Type::RecursiveConstruct: {
            Box base = exec_step(step.children.at(0), ctx, branch_label);
            Box pr = exec_step(step.children.at(1), ctx, branch_label);
            if (pr.port_count != 2) throw std::logic_error("execute_plan: PR child not bipartite");
            Box cur = std::move(base);
            for (int j = cur.port_count + 1; j <= step.target_size; ++j) {
                RecursivePr rp = recursive_pr_wiring(j);
                std::vector<Box> boxes{cur};
                for (int i = 1; i < j; ++i) boxes.push_back(pr);
                cur = apply_wiring(rp.wiring, boxes);
            }
            return cur;
        }
        case PlanStep::Type::Augment: {
            Box in = exec_step(step.children.at(0), ctx, branch_label);
            return augment_at_positions(in, step.parties, step.term);
        }
        case PlanStep::Type::XorCombine: {
            std::vector<Box> boxes;
            for (const PlanStep& child : step.children)
                boxes.push_back(exec_step(child, ctx, child.term ? child.term : branch_label));
            // fold pairwise (associative), which keeps path enumeration small
            Box acc = boxes.front();
            for (std::size_t i = 1; i < boxes.size(); ++i) acc = xor_combine(acc, boxes[i]);
            return acc;
        }
        case PlanStep::Type::AffineCorrect: {
            Box in = exec_step(step.children.at(0), ctx, branch_label);
            if (step.affine_linear == 0 && step.affine_const == 0) return in;
            return apply_wiring(
                affine_correction_wiring(ctx.n, step.affine_linear, step.affine_const), {in});
        }
    }
    throw std::logic_error("execute_plan: unknown step");
}

}  // namespace

ExecutionReport execute_plan(const DistillationPlan& plan, const Rat& eps0,
                             int rounds_per_unit) {
    if (eps0 < 0 || eps0 > 1) throw std::invalid_argument("execute_plan: bad epsilon");
    if (rounds_per_unit < 0 || rounds_per_unit > kMaxRounds)
        throw std::invalid_argument("execute_plan: round budget exceeded");
    ExecutionReport report;
    ExecContext ctx{&plan.target, plan.target.var_count, eps0, rounds_per_unit,
                    &report.branches};
    report.result = exec_step(plan.root, ctx, 0);
    report.final_l1 = l1_distance(report.result, full_correlation_box(plan.target));
    return report;
}

std::string step_type_name(PlanStep::Type t) {
    switch (t) {
        case PlanStep::Type::Source: return "source";
        case PlanStep::Type::CorrelatedNoise: return "correlated_noise";
        case PlanStep::Type::Isolate: return "isolate";
        case PlanStep::Type::BsIterate: return "bs_iterate";
        case PlanStep::Type::FixToOne: return "fix_to_one";
        case PlanStep::Type::RecursiveConstruct: return "recursive_construct";
        case PlanStep::Type::Augment: return "augment";
        case PlanStep::Type::XorCombine: return "xor_combine";
        case PlanStep::Type::AffineCorrect: return "affine_correct";
    }
    return "?";
}

}  // namespace boxlab
