#include "boxlab/plan_io.hpp"

#include <bit>
#include <map>

#include <json.hpp>

#include "boxlab/specfile.hpp"

namespace boxlab {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

json mask_to_list(uint32_t mask) {
    json list = json::array();
    for (int i = 0; i < 32; ++i)
        if (mask & (uint32_t{1} << i)) list.push_back(i + 1);
    return list;
}

uint32_t list_to_mask(const json& list, int parties) {
    uint32_t mask = 0;
    for (const auto& v : list) {
        const int i = v.get<int>();
        if (i < 1 || i > parties) throw std::invalid_argument("port index out of range");
        mask |= uint32_t{1} << (i - 1);
    }
    return mask;
}

// Number of ports a step delivers (needed to spell out reduction fixes).
int delivered_size(const PlanStep& step, int parties) {
    switch (step.type) {
        case PlanStep::Type::Source:
        case PlanStep::Type::CorrelatedNoise:
        case PlanStep::Type::Augment:
        case PlanStep::Type::XorCombine:
            return step.type == PlanStep::Type::Augment ? step.parties : parties;
        case PlanStep::Type::Isolate:
            return std::popcount(step.term);
        case PlanStep::Type::FixToOne:
        case PlanStep::Type::RecursiveConstruct:
            return step.target_size;
        case PlanStep::Type::BsIterate:
        case PlanStep::Type::AffineCorrect:
            return delivered_size(step.children.at(0), parties);
    }
    return parties;
}

ordered_json step_to_json(const PlanStep& step, int parties) {
    ordered_json j;
    j["type"] = step_type_name(step.type);
    switch (step.type) {
        case PlanStep::Type::Isolate: {
            j["term"] = mask_to_list(step.term);
            ordered_json fixes = ordered_json::object();
            for (int i = 0; i < parties; ++i)
                if (!(step.term & (uint32_t{1} << i))) fixes[std::to_string(i + 1)] = 0;
            j["fixes"] = std::move(fixes);
            break;
        }
        case PlanStep::Type::FixToOne: {
            j["target_size"] = step.target_size;
            const int from = delivered_size(step.children.at(0), parties);
            ordered_json fixes = ordered_json::object();
            for (int p = step.target_size + 1; p <= from; ++p) fixes[std::to_string(p)] = 1;
            j["fixes"] = std::move(fixes);
            break;
        }
        case PlanStep::Type::BsIterate:
            j["rounds"] = step.rounds;
            break;
        case PlanStep::Type::RecursiveConstruct:
            j["target_size"] = step.target_size;
            break;
        case PlanStep::Type::Augment:
            j["parties"] = step.parties;
            j["positions"] = mask_to_list(step.term);
            break;
        case PlanStep::Type::AffineCorrect:
            j["linear"] = mask_to_list(step.affine_linear);
            j["constant"] = static_cast<int>(step.affine_const);
            break;
        case PlanStep::Type::Source:
        case PlanStep::Type::CorrelatedNoise:
        case PlanStep::Type::XorCombine:
            break;
    }
    if (!step.children.empty()) {
        ordered_json kids = ordered_json::array();
        for (const PlanStep& c : step.children) kids.push_back(step_to_json(c, parties));
        j["children"] = std::move(kids);
    }
    return j;
}

PlanStep::Type type_from_name(const std::string& name) {
    static const std::map<std::string, PlanStep::Type> table = {
        {"source", PlanStep::Type::Source},
        {"correlated_noise", PlanStep::Type::CorrelatedNoise},
        {"isolate", PlanStep::Type::Isolate},
        {"bs_iterate", PlanStep::Type::BsIterate},
        {"fix_to_one", PlanStep::Type::FixToOne},
        {"recursive_construct", PlanStep::Type::RecursiveConstruct},
        {"augment", PlanStep::Type::Augment},
        {"xor_combine", PlanStep::Type::XorCombine},
        {"affine_correct", PlanStep::Type::AffineCorrect},
    };
    auto it = table.find(name);
    if (it == table.end()) throw std::invalid_argument("unknown step type '" + name + "'");
    return it->second;
}

PlanStep step_from_json(const json& j, int parties) {
    PlanStep step{type_from_name(j.at("type").get<std::string>())};
    switch (step.type) {
        case PlanStep::Type::Isolate:
            step.term = list_to_mask(j.at("term"), parties);
            break;
        case PlanStep::Type::FixToOne:
            step.target_size = j.at("target_size").get<int>();
            break;
        case PlanStep::Type::BsIterate:
            step.rounds = j.value("rounds", -1);
            break;
        case PlanStep::Type::RecursiveConstruct:
            step.target_size = j.at("target_size").get<int>();
            break;
        case PlanStep::Type::Augment:
            step.parties = j.at("parties").get<int>();
            step.term = list_to_mask(j.at("positions"), step.parties);
            break;
        case PlanStep::Type::AffineCorrect:
            step.affine_linear = list_to_mask(j.at("linear"), parties);
            step.affine_const = static_cast<uint8_t>(j.value("constant", 0));
            break;
        default:
            break;
    }
    if (j.contains("children"))
        for (const auto& c : j.at("children")) step.children.push_back(step_from_json(c, parties));
    return step;
}

}  // namespace

std::string plan_to_json(const DistillationPlan& plan) {
    const AnfForm anf = anf_decompose(plan.target);
    ordered_json doc;
    doc["version"] = "boxlab-plan/1";
    doc["parties"] = plan.target.var_count;
    doc["f"] = anf_string(anf);
    doc["root"] = step_to_json(plan.root, plan.target.var_count);
    return doc.dump(2) + "\n";
}

PlanLoadResult plan_from_json(const std::string& text) {
    PlanLoadResult res;
    try {
        const json doc = json::parse(text);
        if (doc.at("version").get<std::string>() != "boxlab-plan/1") {
            res.error = "unsupported plan version";
            return res;
        }
        const int parties = doc.at("parties").get<int>();
        if (parties < 1 || parties > 8) {
            res.error = "parties out of range";
            return res;
        }
        PolyParseResult poly = parse_poly(doc.at("f").get<std::string>(), parties, 1);
        if (!poly.ok) {
            res.error = "bad plan function: " + poly.error.message;
            return res;
        }
        res.plan.target = from_anf(poly.anf);
        res.plan.root = step_from_json(doc.at("root"), parties);
        res.ok = true;
    } catch (const std::exception& e) {
        res.error = e.what();
    }
    return res;
}

}  // namespace boxlab
