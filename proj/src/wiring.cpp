#include "boxlab/wiring.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <stdexcept>


namespace boxlab {

Formula Formula::one() {
    Formula f;
    f.kind = Kind::One;
    return f;
}
Formula Formula::input(int party) {
    Formula f;
    f.kind = Kind::Input;
    f.party = party;
    return f;
}
Formula Formula::stage_out(int stage, int port) {
    Formula f;
    f.kind = Kind::StageOut;
    f.stage = stage;
    f.port = port;
    return f;
}
Formula Formula::rand(int index) {
    Formula f;
    f.kind = Kind::Rand;
    f.rand_index = index;
    return f;
}
Formula Formula::x_or(Formula a, Formula b) {
    Formula f;
    f.kind = Kind::Xor;
    f.kids = {std::move(a), std::move(b)};
    return f;
}
Formula Formula::a_nd(Formula a, Formula b) {
    Formula f;
    f.kind = Kind::And;
    f.kids = {std::move(a), std::move(b)};
    return f;
}
Formula Formula::n_ot(Formula a) {
    Formula f;
    f.kind = Kind::Not;
    f.kids = {std::move(a)};
    return f;
}

int Formula::eval(const Context& ctx) const {
    switch (kind) {
        case Kind::Zero: return 0;
        case Kind::One: return 1;
        case Kind::Input: return (ctx.global_inputs >> (party - 1)) & 1;
        case Kind::StageOut: return ((*ctx.stage_outputs)[stage] >> (port - 1)) & 1;
        case Kind::Rand: return (ctx.rand_bits >> rand_index) & 1;
        case Kind::Xor: return kids[0].eval(ctx) ^ kids[1].eval(ctx);
        case Kind::And: return kids[0].eval(ctx) & kids[1].eval(ctx);
        case Kind::Not: return 1 - kids[0].eval(ctx);
    }
    return 0;
}

std::string Formula::str() const {
    switch (kind) {
        case Kind::Zero: return "0";
        case Kind::One: return "1";
        case Kind::Input: return "in[" + std::to_string(party) + "]";
        case Kind::StageOut:
            return "out[" + std::to_string(stage) + "," + std::to_string(port) + "]";
        case Kind::Rand: return "r[" + std::to_string(rand_index) + "]";
        case Kind::Xor: return "(" + kids[0].str() + "^" + kids[1].str() + ")";
        case Kind::And: return "(" + kids[0].str() + "&" + kids[1].str() + ")";
        case Kind::Not: return "!" + kids[0].str();
    }
    return "?";
}

namespace {

bool check_formula(const Formula& fm, int owner, int max_stage, const Wiring& w,
                   std::string& err) {
    switch (fm.kind) {
        case Formula::Kind::Zero:
        case Formula::Kind::One:
            return true;
        case Formula::Kind::Input:
            if (fm.party != owner) {
                err = "party " + std::to_string(owner) + " reads party " +
                      std::to_string(fm.party) + "'s input";
                return false;
            }
            return true;
        case Formula::Kind::StageOut: {
            if (fm.stage < 0 || fm.stage >= max_stage) {
                err = "formula of party " + std::to_string(owner) +
                      " references stage " + std::to_string(fm.stage) +
                      " which is not strictly earlier";
                return false;
            }
            const BoxSlot& slot = w.stages[fm.stage];
            if (fm.port < 1 || fm.port > slot.port_count) {
                err = "bad port reference";
                return false;
            }
            if (slot.owner[fm.port - 1] != owner) {
                err = "party " + std::to_string(owner) + " reads stage " +
                      std::to_string(fm.stage) + " port " + std::to_string(fm.port) +
                      " owned by party " + std::to_string(slot.owner[fm.port - 1]);
                return false;
            }
            return true;
        }
        case Formula::Kind::Rand: {
            if (fm.rand_index < 0 ||
                fm.rand_index >= static_cast<int>(w.shared_randomness.size())) {
                err = "bad shared-randomness index";
                return false;
            }
            const auto& vis = w.shared_randomness[fm.rand_index].visible_to;
            if (std::find(vis.begin(), vis.end(), owner) == vis.end()) {
                err = "party " + std::to_string(owner) + " reads shared bit " +
                      std::to_string(fm.rand_index) + " not visible to it";
                return false;
            }
            return true;
        }
        case Formula::Kind::Xor:
        case Formula::Kind::And:
        case Formula::Kind::Not:
            for (const Formula& k : fm.kids)
                if (!check_formula(k, owner, max_stage, w, err)) return false;
            return true;
    }
    return false;
}

void collect_used_stages(const Formula& fm, std::vector<bool>& used) {
    if (fm.kind == Formula::Kind::StageOut) used[fm.stage] = true;
    for (const Formula& k : fm.kids) collect_used_stages(k, used);
}

}  // namespace

LocalityReport check_locality(const Wiring& w) {
    LocalityReport r;
    auto fail = [&](std::string msg) {
        r.ok = false;
        r.message = std::move(msg);
        return r;
    };
    if (w.party_count < 1) return fail("no parties");
    if (static_cast<int>(w.final_output.size()) != w.party_count)
        return fail("final_output count != party_count");
    for (std::size_t s = 0; s < w.stages.size(); ++s) {
        const BoxSlot& slot = w.stages[s];
        if (slot.port_count < 1 || slot.port_count > kMaxPorts)
            return fail("slot " + std::to_string(s) + ": bad port count");
        if (static_cast<int>(slot.owner.size()) != slot.port_count ||
            static_cast<int>(slot.input.size()) != slot.port_count)
            return fail("slot " + std::to_string(s) + ": owner/input size mismatch");
        for (int o : slot.owner)
            if (o < 1 || o > w.party_count)
                return fail("slot " + std::to_string(s) + ": owner out of range");
        for (int p = 0; p < slot.port_count; ++p) {
            std::string err;
            if (!check_formula(slot.input[p], slot.owner[p], static_cast<int>(s), w, err))
                return fail("slot " + std::to_string(s) + " port " + std::to_string(p + 1) +
                            ": " + err);
        }
    }
    for (int party = 1; party <= w.party_count; ++party) {
        std::string err;
        if (!check_formula(w.final_output[party - 1], party,
                           static_cast<int>(w.stages.size()), w, err))
            return fail("final output of party " + std::to_string(party) + ": " + err);
    }
    std::vector<bool> used(w.stages.size(), false);
    for (const BoxSlot& slot : w.stages)
        for (const Formula& fm : slot.input) collect_used_stages(fm, used);
    for (const Formula& fm : w.final_output) collect_used_stages(fm, used);
    for (std::size_t s = 0; s < used.size(); ++s)
        if (!used[s]) return fail("slot " + std::to_string(s) + " is never used");
    return r;
}

Box apply_wiring(const Wiring& w, const std::vector<Box>& boxes) {
    LocalityReport loc = check_locality(w);
    if (!loc.ok) throw std::invalid_argument("apply_wiring: " + loc.message);
    if (boxes.size() != w.stages.size())
        throw std::invalid_argument("apply_wiring: box count != slot count");
    for (std::size_t s = 0; s < boxes.size(); ++s)
        if (boxes[s].port_count != w.stages[s].port_count)
            throw std::invalid_argument("apply_wiring: slot " + std::to_string(s) +
                                        " shape mismatch");

    Box out(w.party_count);
    const int rand_count = static_cast<int>(w.shared_randomness.size());
    std::vector<uint32_t> stage_outs(w.stages.size(), 0);

    // Work over integer numerators with one common denominator per slot, so
    // each path product is a plain integer multiply and rationals are
    // canonicalized once per output entry instead of once per path.
    std::vector<mpz_class> slot_den(w.stages.size(), 1);
    std::vector<std::vector<std::vector<mpz_class>>> slot_num(w.stages.size());
    for (std::size_t s = 0; s < w.stages.size(); ++s) {
        const Box& bx = boxes[s];
        for (uint32_t xx = 0; xx < bx.words(); ++xx)
            for (uint32_t aa = 0; aa < bx.words(); ++aa) {
                const mpz_class& den = bx.at(xx, aa).get_den();
                if (mpz_divisible_p(slot_den[s].get_mpz_t(), den.get_mpz_t())) continue;
                mpz_lcm(slot_den[s].get_mpz_t(), slot_den[s].get_mpz_t(), den.get_mpz_t());
            }
        slot_num[s].assign(bx.words(), std::vector<mpz_class>(bx.words()));
        for (uint32_t xx = 0; xx < bx.words(); ++xx)
            for (uint32_t aa = 0; aa < bx.words(); ++aa) {
                mpz_class scale;
                mpz_divexact(scale.get_mpz_t(), slot_den[s].get_mpz_t(),
                             bx.at(xx, aa).get_den().get_mpz_t());
                slot_num[s][xx][aa] = bx.at(xx, aa).get_num() * scale;
            }
    }
    mpz_class total_den = 1;
    for (const mpz_class& d : slot_den) total_den *= d;
    mpz_mul_2exp(total_den.get_mpz_t(), total_den.get_mpz_t(),
                 static_cast<unsigned long>(rand_count));

    std::vector<mpz_class> acc(out.words());
    for (uint32_t x = 0; x < out.words(); ++x) {
        for (mpz_class& v : acc) v = 0;
        for (uint32_t r = 0; r < (uint32_t{1} << rand_count); ++r) {
            Formula::Context ctx{x, r, &stage_outs};
            std::function<void(std::size_t, const mpz_class&)> walk =
                [&](std::size_t stage, const mpz_class& prob) {
                    if (stage == w.stages.size()) {
                        uint32_t a = 0;
                        for (int party = 1; party <= w.party_count; ++party)
                            a |= static_cast<uint32_t>(w.final_output[party - 1].eval(ctx))
                                 << (party - 1);
                        acc[a] += prob;
                        return;
                    }
                    const BoxSlot& slot = w.stages[stage];
                    uint32_t in_word = 0;
                    for (int p = 0; p < slot.port_count; ++p)
                        in_word |= static_cast<uint32_t>(slot.input[p].eval(ctx)) << p;
                    for (uint32_t a = 0; a < boxes[stage].words(); ++a) {
                        const mpz_class& pr = slot_num[stage][in_word][a];
                        if (pr == 0) continue;
                        stage_outs[stage] = a;
                        walk(stage + 1, stage == 0 ? pr : mpz_class(prob * pr));
                    }
                };
            walk(0, mpz_class(1));
        }
        for (uint32_t a = 0; a < out.words(); ++a)
            if (acc[a] != 0) {
                out.at(x, a) = Rat(acc[a], total_den);
                out.at(x, a).canonicalize();
            }
    }
    return out;
}

Wiring identity_wiring(int ports) {
    Wiring w;
    w.party_count = ports;
    BoxSlot slot;
    slot.port_count = ports;
    for (int i = 1; i <= ports; ++i) {
        slot.owner.push_back(i);
        slot.input.push_back(Formula::input(i));
    }
    w.stages.push_back(std::move(slot));
    for (int i = 1; i <= ports; ++i) w.final_output.push_back(Formula::stage_out(0, i));
    return w;
}

Wiring bs_wiring(int n) {
    if (n < 2) throw std::invalid_argument("bs_wiring: need n >= 2");
    Wiring w;
    w.party_count = n;
    BoxSlot first, second;
    first.port_count = second.port_count = n;
    for (int i = 1; i <= n; ++i) {
        first.owner.push_back(i);
        first.input.push_back(Formula::input(i));
        second.owner.push_back(i);
        second.input.push_back(
            Formula::a_nd(Formula::input(i), Formula::n_ot(Formula::stage_out(0, i))));
    }
    w.stages = {std::move(first), std::move(second)};
    for (int i = 1; i <= n; ++i)
        w.final_output.push_back(Formula::x_or(Formula::stage_out(0, i), Formula::stage_out(1, i)));
    return w;
}

RecursivePr recursive_pr_wiring(int n) {
    if (n < 3) throw std::invalid_argument("recursive_pr_wiring: need n >= 3");
    RecursivePr rp;
    Wiring& w = rp.wiring;
    w.party_count = n;
    BoxSlot head;  // the (n-1)-PR among parties 1..n-1
    head.port_count = n - 1;
    for (int i = 1; i < n; ++i) {
        head.owner.push_back(i);
        head.input.push_back(Formula::input(i));
    }
    w.stages.push_back(std::move(head));
    rp.box_ports.push_back(n - 1);
    for (int i = 1; i < n; ++i) {
        BoxSlot pr;  // bipartite PR between party i and party n
        pr.port_count = 2;
        pr.owner = {i, n};
        pr.input = {Formula::stage_out(0, i), Formula::input(n)};
        w.stages.push_back(std::move(pr));
        rp.box_ports.push_back(2);
    }
    // party i outputs only its bipartite-PR share: the head parities cancel in
    // pairs through the PR constraint, leaving XOR = x_n AND head-function
    for (int i = 1; i < n; ++i) w.final_output.push_back(Formula::stage_out(i, 1));
    Formula last = Formula::stage_out(1, 2);
    for (int i = 2; i < n; ++i) last = Formula::x_or(std::move(last), Formula::stage_out(i, 2));
    w.final_output.push_back(std::move(last));
    return rp;
}

PartyAssignment default_isolation_assignment(int n, uint32_t term_mask) {
    PartyAssignment pa;
    pa.party_count = std::popcount(term_mask);
    pa.party_of.resize(n);
    std::vector<int> term_vars;
    for (int v = 1; v <= n; ++v)
        if (term_mask & (uint32_t{1} << (v - 1))) term_vars.push_back(v);
    for (int port = 1; port <= n; ++port) {
        int party = 1;
        for (std::size_t k = 0; k < term_vars.size(); ++k) {
            if (term_vars[k] == port) {
                party = static_cast<int>(k) + 1;
                break;
            }
            if (term_vars[k] < port) party = static_cast<int>(k) + 1;
        }
        pa.party_of[port - 1] = party;
    }
    return pa;
}

Isolation isolate_term(const BooleanFunction& f, uint32_t term_mask,
                       const PartyAssignment& assignment) {
    Isolation iso;
    iso.term_mask = term_mask;
    const int n = f.var_count;
    const AnfForm anf = anf_decompose(f);
    const auto nonlocal = nonlocal_term_set(anf);
    if (!nonlocal.count(term_mask)) {
        iso.error = "term " + monomial_string(term_mask) + " is not a nonlocal term of f";
        return iso;
    }
    for (uint32_t j : nonlocal)
        if (j != term_mask && (j & ~term_mask) == 0) {
            iso.error = "term " + monomial_string(term_mask) +
                        " is not isolable: contains " + monomial_string(j);
            return iso;
        }
    const int k = std::popcount(term_mask);
    if (!assignment.valid(n) || assignment.party_count != k) {
        iso.error = "bad party assignment";
        return iso;
    }
    std::vector<int> term_vars;
    for (int v = 1; v <= n; ++v)
        if (term_mask & (uint32_t{1} << (v - 1))) term_vars.push_back(v);
    for (std::size_t rank = 0; rank < term_vars.size(); ++rank)
        if (assignment.party_of[term_vars[rank] - 1] != static_cast<int>(rank) + 1) {
            iso.error = "assignment must give term variable x" +
                        std::to_string(term_vars[rank]) + " to party " +
                        std::to_string(rank + 1);
            return iso;
        }

    Wiring w;
    w.party_count = k;
    BoxSlot slot;
    slot.port_count = n;
    for (int port = 1; port <= n; ++port) {
        const int owner = assignment.party_of[port - 1];
        slot.owner.push_back(owner);
        const bool genuine = term_mask & (uint32_t{1} << (port - 1));
        slot.input.push_back(genuine ? Formula::input(owner) : Formula::zero());
    }
    w.stages.push_back(std::move(slot));

    for (int party = 1; party <= k; ++party) {
        Formula out = Formula::zero();
        bool first = true;
        for (int port : assignment.ports_of(party)) {
            Formula term = Formula::stage_out(0, port);
            out = first ? std::move(term) : Formula::x_or(std::move(out), std::move(term));
            first = false;
        }
        // cancel surviving affine terms: linear x_v for v in the term, and the
        // constant (flipped by party 1)
        const int var = term_vars[party - 1];
        if (anf.monomials.count(uint32_t{1} << (var - 1)))
            out = Formula::x_or(std::move(out), Formula::input(party));
        if (party == 1 && anf.monomials.count(0u))
            out = Formula::x_or(std::move(out), Formula::one());
        w.final_output.push_back(std::move(out));
    }
    iso.wiring = std::move(w);
    iso.party_count = k;
    iso.target = BooleanFunction::and_all(k);
    iso.ok = true;
    return iso;
}

Wiring augment_wiring(int k, int n, uint32_t positions_mask) {
    if (std::popcount(positions_mask) != k || k > n || k < 1)
        throw std::invalid_argument("augment_wiring: bad positions");
    if (positions_mask >> n)
        throw std::invalid_argument("augment_wiring: position beyond party count");
    Wiring w;
    w.party_count = n;
    std::vector<int> pos;  // embedded parties, ascending
    for (int p = 1; p <= n; ++p)
        if (positions_mask & (uint32_t{1} << (p - 1))) pos.push_back(p);
    std::vector<int> embedded = pos;

    BoxSlot slot;
    slot.port_count = k;
    for (int i = 0; i < k; ++i) {
        slot.owner.push_back(pos[i]);
        slot.input.push_back(Formula::input(pos[i]));
    }
    w.stages.push_back(std::move(slot));

    std::vector<int> rand_of_party(n + 1, -1);
    for (int p = 1; p <= n; ++p) {
        if (positions_mask & (uint32_t{1} << (p - 1))) continue;
        RandBit rb;
        rb.visible_to = embedded;
        rb.visible_to.push_back(p);
        rand_of_party[p] = static_cast<int>(w.shared_randomness.size());
        w.shared_randomness.push_back(std::move(rb));
    }

    w.final_output.resize(n);
    for (int i = 0; i < k; ++i) w.final_output[pos[i] - 1] = Formula::stage_out(0, i + 1);
    // the first embedded party folds the XOR of all padding bits into its output
    for (int p = 1; p <= n; ++p)
        if (rand_of_party[p] >= 0) {
            w.final_output[p - 1] = Formula::rand(rand_of_party[p]);
            w.final_output[pos[0] - 1] = Formula::x_or(std::move(w.final_output[pos[0] - 1]),
                                                       Formula::rand(rand_of_party[p]));
        }
    return w;
}

Wiring xor_combine_wiring(int ports, int copies) {
    if (copies < 1) throw std::invalid_argument("xor_combine_wiring: need >= 1 copy");
    Wiring w;
    w.party_count = ports;
    for (int c = 0; c < copies; ++c) {
        BoxSlot slot;
        slot.port_count = ports;
        for (int i = 1; i <= ports; ++i) {
            slot.owner.push_back(i);
            slot.input.push_back(Formula::input(i));
        }
        w.stages.push_back(std::move(slot));
    }
    for (int i = 1; i <= ports; ++i) {
        Formula out = Formula::stage_out(0, i);
        for (int c = 1; c < copies; ++c)
            out = Formula::x_or(std::move(out), Formula::stage_out(c, i));
        w.final_output.push_back(std::move(out));
    }
    return w;
}

Wiring affine_correction_wiring(int n, uint32_t linear_mask, uint8_t constant) {
    Wiring w = identity_wiring(n);
    for (int i = 1; i <= n; ++i) {
        if (linear_mask & (uint32_t{1} << (i - 1)))
            w.final_output[i - 1] =
                Formula::x_or(std::move(w.final_output[i - 1]), Formula::input(i));
        if (i == 1 && (constant & 1))
            w.final_output[i - 1] =
                Formula::x_or(std::move(w.final_output[i - 1]), Formula::one());
    }
    return w;
}

Box xor_combine(const Box& p, const Box& q) {
    if (p.port_count != q.port_count) throw std::invalid_argument("xor_combine: port mismatch");
    return apply_wiring(xor_combine_wiring(p.port_count, 2), {p, q});
}

Box augment_shared_randomness(const Box& b, int n) {
    if (b.port_count > n) throw std::invalid_argument("augment: k > n");
    return augment_at_positions(b, n, (uint32_t{1} << b.port_count) - 1);
}

Box augment_at_positions(const Box& b, int n, uint32_t positions_mask) {
    if (b.port_count == n && positions_mask == (uint32_t{1} << n) - 1) return b;
    return apply_wiring(augment_wiring(b.port_count, n, positions_mask), {b});
}

Box fix_inputs(const Box& b, const std::map<int, int>& fixes,
               const PartyAssignment& assignment) {
    if (fixes.empty()) return b;
    if (!assignment.valid(b.port_count)) throw std::invalid_argument("fix_inputs: bad assignment");
    for (const auto& [port, bit] : fixes)
        if (port < 1 || port > b.port_count || (bit != 0 && bit != 1))
            throw std::invalid_argument("fix_inputs: bad fix");

    std::vector<int> remaining;  // old 1-based port indices, ascending
    for (int p = 1; p <= b.port_count; ++p)
        if (!fixes.count(p)) remaining.push_back(p);
    if (remaining.empty()) throw std::invalid_argument("fix_inputs: no ports left");
    const int m = static_cast<int>(remaining.size());

    // route each fixed port's output to the owner's lowest remaining port
    // (new index), or mark it dropped
    std::vector<int> route;    // same order as `fixes`
    std::vector<int> dropped;  // old port indices whose output is discarded
    std::vector<std::pair<int, int>> fixed_ports(fixes.begin(), fixes.end());
    for (const auto& [port, bit] : fixed_ports) {
        const int owner = assignment.party_of[port - 1];
        int target = -1;
        for (int i = 0; i < m; ++i)
            if (assignment.party_of[remaining[i] - 1] == owner) {
                target = i;
                break;
            }
        route.push_back(target);
        if (target < 0) dropped.push_back(port);
    }

    Box out(m);
    for (uint32_t xn = 0; xn < out.words(); ++xn) {
        uint32_t x = 0;
        for (int i = 0; i < m; ++i) x |= ((xn >> i) & 1) << (remaining[i] - 1);
        for (const auto& [port, bit] : fixed_ports) x |= static_cast<uint32_t>(bit) << (port - 1);

        // mass[a_new][dropped word]
        std::vector<std::vector<Rat>> mass(
            out.words(), std::vector<Rat>(std::size_t{1} << dropped.size(), Rat(0)));
        for (uint32_t a = 0; a < b.words(); ++a) {
            const Rat& pr = b.at(x, a);
            if (pr == 0) continue;
            uint32_t an = 0;
            for (int i = 0; i < m; ++i) an |= ((a >> (remaining[i] - 1)) & 1) << i;
            for (std::size_t fi = 0; fi < fixed_ports.size(); ++fi)
                if (route[fi] >= 0)
                    an ^= ((a >> (fixed_ports[fi].first - 1)) & 1) << route[fi];
            uint32_t d = 0;
            for (std::size_t di = 0; di < dropped.size(); ++di)
                d |= ((a >> (dropped[di] - 1)) & 1) << di;
            mass[an][d] += pr;
        }
        for (uint32_t an = 0; an < out.words(); ++an) {
            for (std::size_t d = 1; d < mass[an].size(); ++d)
                if (mass[an][d] != mass[an][0])
                    throw std::invalid_argument(
                        "fix_inputs: discarding a correlated output would change the "
                        "distribution (port without a remaining owner port)");
            Rat sum = 0;
            for (const Rat& v : mass[an]) sum += v;
            out.at(xn, an) = sum;
        }
    }
    return out;
}

}  // namespace boxlab
