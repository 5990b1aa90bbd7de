// boxlab: exact analysis and distillation experiments on n-party
// non-signaling boxes described by small spec files.
//
// Exit codes: 0 = ok, 1 = a requested check failed, 2 = usage/parse error.
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "boxlab/boxlib.hpp"
#include "boxlab/distill.hpp"
#include "boxlab/plan_io.hpp"
#include "boxlab/polytope.hpp"
#include "boxlab/specfile.hpp"
#include "boxlab/wiring.hpp"

namespace {

using namespace boxlab;

bool g_json_errors = false;

// Machine-readable error channel (stdout, one JSON object) when requested.
int fail(int code, const std::string& kind, const std::string& message, int line = 0,
         int column = 0) {
    if (g_json_errors) {
        nlohmann::ordered_json j;
        j["error"]["kind"] = kind;
        j["error"]["message"] = message;
        if (line > 0) {
            j["error"]["line"] = line;
            j["error"]["column"] = column;
        }
        std::cout << j.dump() << "\n";
    } else {
        std::cerr << "error: " << message << "\n";
    }
    return code;
}

bool read_file(const std::string& path, std::string& out) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return false;
    std::ostringstream ss;
    ss << in.rdbuf();
    out = ss.str();
    return true;
}

// "p/q=decimal": exact value first, 12-significant-digit rendering second.
std::string rat_cell(const Rat& r) { return rat_string(r) + "=" + decimal_string(r, 12); }

int load_spec(const std::string& path, BoxSpec& spec) {
    std::string text;
    if (!read_file(path, text)) return fail(2, "io", "cannot read spec file: " + path);
    SpecParseResult res = parse_spec(text);
    if (!res.ok)
        return fail(2, "parse", path + ": " + res.error.describe(), res.error.line,
                    res.error.column);
    spec = res.spec;
    return 0;
}

Box realized_box(const BoxSpec& spec) {
    return mix(full_correlation_box(spec.f), correlated_noise_box(spec.parties),
               spec.epsilon);
}

int cmd_check(const std::string& spec_path, bool with_ns, bool with_local,
              bool with_extremal) {
    BoxSpec spec;
    if (int rc = load_spec(spec_path, spec)) return rc;
    const Box box = realized_box(spec);
    bool all_ok = true;

    const ValidityReport validity = validate_box(box);
    std::cout << "valid: " << (validity.ok ? "yes" : "no (" + validity.describe() + ")")
              << "\n";
    all_ok &= validity.ok;

    if (with_ns) {
        const NonSignalingReport ns = is_non_signaling(box);
        std::cout << "non-signaling: " << (ns.ok ? "yes" : "no (" + ns.describe() + ")")
                  << "\n";
        all_ok &= ns.ok;
    }
    if (with_local) {
        if (spec.parties > 4)
            return fail(2, "limit", "--local supports at most 4 parties");
        const LocalityResult loc = is_local(box);
        std::cout << "local: " << (loc.local ? "yes" : "no") << "\n";
        all_ok &= loc.local;
        if (!loc.local) {
            std::cout << "bell-violation: bound " << rat_string(loc.bell_bound)
                      << ", value ";
            Rat value = 0;
            const std::size_t words = box.words();
            for (uint32_t x = 0; x < words; ++x)
                for (uint32_t a = 0; a < words; ++a)
                    value += loc.bell_coeffs[x * words + a] * box.at(x, a);
            std::cout << rat_string(value) << "\n";
        }
    }
    if (with_extremal) {
        const bool thm = classify_fc_extremal(spec.f);
        std::cout << "theorem1: " << (thm ? "extremal" : "non-extremal");
        if (spec.parties <= 4) {
            const bool vx = is_vertex(full_correlation_box(spec.f));
            std::cout << "; vertex-oracle: " << (vx ? "extremal" : "non-extremal") << "; "
                      << (thm == vx ? "agree" : "DISAGREE");
            all_ok &= thm == vx;  // the check is the oracle agreement
        }
        std::cout << "\n";
    }
    return all_ok ? 0 : 1;
}

int cmd_bell(const std::string& spec_path) {
    BoxSpec spec;
    if (int rc = load_spec(spec_path, spec)) return rc;
    if (spec.parties > 4) return fail(2, "limit", "bell supports at most 4 parties");
    const Box box = realized_box(spec);
    std::cout << "success_probability: " << rat_cell(success_probability(box, spec.f))
              << "\n";
    std::cout << "l1_distance_to_local: " << rat_cell(l1_distance_to_local(box)) << "\n";
    return 0;
}

int cmd_closest_local(const std::string& spec_path) {
    BoxSpec spec;
    if (int rc = load_spec(spec_path, spec)) return rc;
    const ClosestLocal cl = closest_local_fc_box(spec.f);
    AnfForm g;
    g.var_count = spec.parties;
    if (cl.affine.constant) g.monomials.insert(0);
    for (int i = 0; i < spec.parties; ++i)
        if (cl.affine.linear_mask & (uint32_t{1} << i)) g.monomials.insert(uint32_t{1} << i);
    std::cout << "best_affine: " << anf_string(g) << "\n";
    std::cout << "hamming_distance: " << cl.affine.distance << "\n";
    std::cout << "l1_distance: " << rat_cell(cl.l1) << "\n";
    return 0;
}

int cmd_plan(const std::string& spec_path, const std::string& out_path) {
    BoxSpec spec;
    if (int rc = load_spec(spec_path, spec)) return rc;
    DistillationPlan plan;
    try {
        plan = make_plan(spec.f);
    } catch (const std::exception& e) {
        return fail(2, "plan", e.what());
    }
    const std::string json = plan_to_json(plan);
    std::ofstream out(out_path, std::ios::binary);
    if (!out) return fail(2, "io", "cannot write " + out_path);
    out << json;
    std::cout << "plan written: " << out_path << "\n";
    return 0;
}

void write_trajectory(std::ostream& os, const Trajectory& traj) {
    for (const TrajectoryPoint& pt : traj)
        os << pt.round << "," << rat_cell(pt.epsilon) << ","
           << rat_string(pt.success_probability) << "," << rat_string(pt.l1_to_target)
           << "\n";
}

int cmd_distill(const std::string& spec_path, int rounds, const std::string& plan_path,
                const std::string& out_path) {
    BoxSpec spec;
    if (int rc = load_spec(spec_path, spec)) return rc;
    if (rounds < 0 || rounds > kMaxRounds)
        return fail(2, "limit",
                    "--rounds must be in 0.." + std::to_string(kMaxRounds));

    std::ostringstream csv;
    csv << "round,epsilon,success_prob,l1_to_target\n";

    const bool is_and_all = spec.f == BooleanFunction::and_all(spec.parties);
    if (plan_path.empty() && is_and_all) {
        // single-family iteration of the protocol
        Trajectory traj;
        try {
            traj = distill_trajectory(NoisyFamily{spec.f, spec.epsilon}, rounds);
        } catch (const std::exception& e) {
            return fail(2, "distill", e.what());
        }
        write_trajectory(csv, traj);
    } else {
        DistillationPlan plan;
        if (plan_path.empty()) {
            try {
                plan = make_plan(spec.f);
            } catch (const std::exception& e) {
                return fail(2, "plan", e.what());
            }
        } else {
            std::string text;
            if (!read_file(plan_path, text))
                return fail(2, "io", "cannot read plan file: " + plan_path);
            PlanLoadResult loaded = plan_from_json(text);
            if (!loaded.ok) return fail(2, "parse", plan_path + ": " + loaded.error);
            if (loaded.plan.target != spec.f)
                return fail(2, "plan", "plan function does not match the spec function");
            plan = std::move(loaded.plan);
        }
        ExecutionReport report;
        try {
            report = execute_plan(plan, spec.epsilon, rounds);
        } catch (const std::exception& e) {
            return fail(2, "distill", e.what());
        }
        for (const BranchReport& br : report.branches) {
            csv << "# branch " << monomial_string(br.term) << " unit " << br.unit_ports
                << "-PR\n";
            write_trajectory(csv, br.trajectory);
        }
        csv << "# final_l1 " << rat_cell(report.final_l1) << "\n";
    }

    std::ofstream out(out_path, std::ios::binary);
    if (!out) return fail(2, "io", "cannot write " + out_path);
    out << csv.str();
    std::cout << "trajectory written: " << out_path << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact non-signaling box toolkit"};
    app.require_subcommand(1);
    app.add_flag("--json-errors", g_json_errors, "emit machine-readable error JSON");

    std::string spec_path, out_path, plan_path;
    int rounds = 0;
    bool with_ns = false, with_local = false, with_extremal = false;

    CLI::App* check = app.add_subcommand("check", "validate a box spec");
    check->add_option("spec", spec_path)->required();
    check->add_flag("--non-signaling", with_ns);
    check->add_flag("--local", with_local);
    check->add_flag("--extremal", with_extremal);

    CLI::App* bell = app.add_subcommand("bell", "success probability and local distance");
    bell->add_option("spec", spec_path)->required();

    CLI::App* closest = app.add_subcommand("closest-local", "closest local box");
    closest->add_option("spec", spec_path)->required();

    CLI::App* plan = app.add_subcommand("plan", "emit a distillation plan");
    plan->add_option("spec", spec_path)->required();
    plan->add_option("--out", out_path)->required();

    CLI::App* distill = app.add_subcommand("distill", "run distillation, write CSV");
    distill->add_option("spec", spec_path)->required();
    distill->add_option("--rounds", rounds)->required();
    distill->add_option("--plan", plan_path);
    distill->add_option("--out", out_path)->required();

    // accept the flag in subcommand position as well
    for (CLI::App* sub : {check, bell, closest, plan, distill})
        sub->add_flag("--json-errors", g_json_errors);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        std::ostringstream msg;
        msg << e.what();
        return fail(2, "usage", msg.str());
    }

    try {
        if (check->parsed()) return cmd_check(spec_path, with_ns, with_local, with_extremal);
        if (bell->parsed()) return cmd_bell(spec_path);
        if (closest->parsed()) return cmd_closest_local(spec_path);
        if (plan->parsed()) return cmd_plan(spec_path, out_path);
        if (distill->parsed()) return cmd_distill(spec_path, rounds, plan_path, out_path);
    } catch (const std::exception& e) {
        return fail(2, "internal", e.what());
    }
    return fail(2, "usage", "no subcommand");
}
