#pragma once

#include <string>

#include "boxlab/distill.hpp"

namespace boxlab {

// JSON encoding of a distillation plan, schema version "boxlab-plan/1":
// a document {version, parties, f, root} whose root is a tree of tagged step
// objects {type, term, fixes, rounds, children} (fields present where they
// apply). `term` and `positions` are lists of 1-based port indices; `fixes`
// maps port index to the pinned input bit.
std::string plan_to_json(const DistillationPlan& plan);

struct PlanLoadResult {
    bool ok = false;
    DistillationPlan plan;
    std::string error;
};

PlanLoadResult plan_from_json(const std::string& text);

}  // namespace boxlab
