#include "boxlab/polytope.hpp"

#include <bit>
#include <stdexcept>

#include "boxlab/simplex.hpp"

namespace boxlab {

namespace {

struct StrategySpace {
    int port_count = 0;
    std::vector<std::vector<int>> ports;  // 0-based port indices per party
    std::vector<unsigned long> counts;    // strategies per party
    unsigned long total = 1;
};

StrategySpace make_space(const Box& b, const PartyAssignment& pa) {
    if (!pa.valid(b.port_count)) throw std::invalid_argument("bad party assignment");
    StrategySpace sp;
    sp.port_count = b.port_count;
    sp.ports.resize(pa.party_count);
    for (int p = 0; p < b.port_count; ++p) sp.ports[pa.party_of[p] - 1].push_back(p);
    for (const auto& ps : sp.ports) {
        const int t = static_cast<int>(ps.size());
        if (t > 2) throw std::invalid_argument("strategy space too large (party holds > 2 ports)");
        // (2^t)^(2^t) functions from input word to output word
        unsigned long cnt = 1;
        const unsigned long outs = 1ul << t, ins = 1ul << t;
        for (unsigned long u = 0; u < ins; ++u) cnt *= outs;
        sp.counts.push_back(cnt);
        sp.total *= cnt;
    }
    if (sp.total > 2'000'000ul) throw std::invalid_argument("strategy space too large");
    return sp;
}

// Output word of strategy r on input word x (global ports).
uint32_t strategy_output(const StrategySpace& sp, unsigned long r, uint32_t x) {
    uint32_t a = 0;
    for (std::size_t party = 0; party < sp.ports.size(); ++party) {
        const auto& ps = sp.ports[party];
        const int t = static_cast<int>(ps.size());
        unsigned long s = r % sp.counts[party];
        r /= sp.counts[party];
        uint32_t u = 0;
        for (int i = 0; i < t; ++i) u |= ((x >> ps[i]) & 1u) << i;
        // strategy table: t bits of output per input word
        unsigned long out = (s >> (static_cast<unsigned long>(u) * t)) & ((1ul << t) - 1);
        for (int i = 0; i < t; ++i) a |= static_cast<uint32_t>((out >> i) & 1) << ps[i];
    }
    return a;
}

}  // namespace

unsigned long deterministic_strategy_count(const PartyAssignment& assignment) {
    unsigned long total = 1;
    std::vector<int> port_counts(assignment.party_count, 0);
    for (int p : assignment.party_of) ++port_counts[p - 1];
    for (int t : port_counts) {
        unsigned long per = 1;
        for (unsigned long u = 0; u < (1ul << t); ++u) per *= (1ul << t);
        total *= per;
    }
    return total;
}

LocalityResult is_local(const Box& b, const PartyAssignment& pa) {
    if (b.port_count > 4) throw std::invalid_argument("is_local: port count > 4");
    const StrategySpace sp = make_space(b, pa);
    const std::size_t words = b.words();
    const std::size_t entries = words * words;
    const std::size_t cols = sp.total;

    std::vector<std::vector<Rat>> A(entries + 1, std::vector<Rat>(cols, Rat(0)));
    std::vector<Rat> rhs(entries + 1);
    for (unsigned long r = 0; r < sp.total; ++r) {
        for (uint32_t x = 0; x < words; ++x)
            A[x * words + strategy_output(sp, r, x)][r] = 1;
        A[entries][r] = 1;
    }
    for (uint32_t x = 0; x < words; ++x)
        for (uint32_t a = 0; a < words; ++a) rhs[x * words + a] = b.at(x, a);
    rhs[entries] = 1;

    LpResult lp = solve_lp(std::move(A), std::move(rhs), std::vector<Rat>(cols, Rat(0)));
    LocalityResult res;
    if (lp.status == LpResult::Status::Optimal) {
        res.local = true;
        res.weights = std::move(lp.solution);
    } else {
        res.local = false;
        res.bell_coeffs.assign(lp.farkas.begin(), lp.farkas.begin() + entries);
        res.bell_bound = -lp.farkas[entries];
    }
    return res;
}

LocalityResult is_local(const Box& b) {
    return is_local(b, PartyAssignment::one_per_port(b.port_count));
}

Rat l1_distance_to_local(const Box& b, const PartyAssignment& pa) {
    if (b.port_count > 4) throw std::invalid_argument("l1_distance_to_local: port count > 4");
    const StrategySpace sp = make_space(b, pa);
    const std::size_t words = b.words();
    const std::size_t entries = words * words;
    const std::size_t w_cols = sp.total;
    const std::size_t cols = w_cols + 2 * entries;  // weights, then u and v slack pairs

    // b - A w = u - v, minimize sum(u + v) = sum_e |b_e - (Aw)_e|
    std::vector<std::vector<Rat>> A(entries + 1, std::vector<Rat>(cols, Rat(0)));
    std::vector<Rat> rhs(entries + 1);
    std::vector<Rat> cost(cols, Rat(0));
    for (unsigned long r = 0; r < sp.total; ++r) {
        for (uint32_t x = 0; x < words; ++x)
            A[x * words + strategy_output(sp, r, x)][r] = 1;
        A[entries][r] = 1;
    }
    for (std::size_t e = 0; e < entries; ++e) {
        A[e][w_cols + e] = 1;
        A[e][w_cols + entries + e] = -1;
        cost[w_cols + e] = 1;
        cost[w_cols + entries + e] = 1;
    }
    for (uint32_t x = 0; x < words; ++x)
        for (uint32_t a = 0; a < words; ++a) rhs[x * words + a] = b.at(x, a);
    rhs[entries] = 1;

    LpResult lp = solve_lp(std::move(A), std::move(rhs), std::move(cost));
    if (lp.status != LpResult::Status::Optimal)
        throw std::logic_error("l1_distance_to_local: LP must be feasible and bounded");
    return lp.objective;
}

Rat l1_distance_to_local(const Box& b) {
    return l1_distance_to_local(b, PartyAssignment::one_per_port(b.port_count));
}

bool is_vertex(const Box& b) {
    if (b.port_count > 4) throw std::invalid_argument("is_vertex: port count > 4");
    if (!validate_box(b).ok) throw std::invalid_argument("is_vertex: invalid box");
    if (!is_non_signaling(b).ok) throw std::invalid_argument("is_vertex: box is signaling");

    const int m = b.port_count;
    const std::size_t words = b.words();
    // columns: entries where b > 0 (directions are pinned to 0 elsewhere)
    std::vector<int> col_of(words * words, -1);
    int cols = 0;
    for (uint32_t x = 0; x < words; ++x)
        for (uint32_t a = 0; a < words; ++a)
            if (b.at(x, a) > 0) col_of[x * words + a] = cols++;
    if (cols == 0) return true;

    std::vector<std::vector<Rat>> rows;
    // normalization directions: zero row sums
    for (uint32_t x = 0; x < words; ++x) {
        std::vector<Rat> row(cols, Rat(0));
        bool any = false;
        for (uint32_t a = 0; a < words; ++a)
            if (col_of[x * words + a] >= 0) {
                row[col_of[x * words + a]] = 1;
                any = true;
            }
        if (any) rows.push_back(std::move(row));
    }
    // single-port non-signaling equalities: the marginal over port i's output
    // must not move with port i's input (these generate all subset conditions)
    for (int port = 0; port < m; ++port) {
        const uint32_t bit = uint32_t{1} << port;
        for (uint32_t x = 0; x < words; ++x) {
            if (x & bit) continue;  // pair (x, x|bit)
            for (uint32_t rest = 0; rest < words; ++rest) {
                if (rest & bit) continue;  // rest = outputs of the other ports
                std::vector<Rat> row(cols, Rat(0));
                bool any = false;
                for (uint32_t ai = 0; ai < 2; ++ai) {
                    const uint32_t a = rest | (ai << port);
                    int c0 = col_of[x * words + a];
                    int c1 = col_of[(x | bit) * words + a];
                    if (c0 >= 0) {
                        row[c0] += 1;
                        any = true;
                    }
                    if (c1 >= 0) {
                        row[c1] -= 1;
                        any = true;
                    }
                }
                if (any) rows.push_back(std::move(row));
            }
        }
    }
    return matrix_rank(std::move(rows)) == cols;
}

bool classify_fc_extremal(const BooleanFunction& f) {
    const AnfForm anf = anf_decompose(f);
    const auto nonlocal = nonlocal_term_set(anf);
    const auto part = empty_overlap_partition(nonlocal);
    // Extremal iff the nonlocal terms form a single block whose variables
    // cover every port. Affine terms never contribute: XORing a_i with
    // l_i x_i (xor a constant) is a local reversible relabeling, so only the
    // nonlocal part decides extremality. Counting linearly-entering variables
    // as dependencies would wrongly classify e.g. x1x2 + x3, whose box
    // relabels to the non-extremal full_correlation_box(x1x2).
    uint32_t support = 0;
    for (uint32_t t : nonlocal) support |= t;
    return part.block_count() == 1 &&
           support == (uint32_t{1} << f.var_count) - 1;
}

namespace {

// Full-correlation-style box from two disjoint XOR-group constraints:
// entries 1/2^{n-2} where XOR of outputs on mask1 equals f1(x) and XOR on
// mask2 equals f2(x).
Box two_constraint_box(int n, uint32_t mask1, const BooleanFunction& f1, uint32_t mask2,
                       const BooleanFunction& f2) {
    Box b(n);
    const Rat w = rat_pow2(2 - n);
    for (uint32_t x = 0; x < b.words(); ++x)
        for (uint32_t a = 0; a < b.words(); ++a)
            if ((std::popcount(a & mask1) & 1) == f1(x) &&
                (std::popcount(a & mask2) & 1) == f2(x))
                b.at(x, a) = w;
    return b;
}

BooleanFunction negate(const BooleanFunction& f) {
    BooleanFunction g = f;
    for (auto& v : g.truth_table) v ^= 1;
    return g;
}

}  // namespace

ConvexSplit nonextremal_split(const BooleanFunction& f) {
    const int n = f.var_count;
    if (classify_fc_extremal(f))
        throw std::invalid_argument("nonextremal_split: box is extremal");
    if (n < 2) throw std::invalid_argument("nonextremal_split: need at least 2 ports");

    const AnfForm anf = anf_decompose(f);
    const auto nonlocal = nonlocal_term_set(anf);
    uint32_t support = 0;
    for (uint32_t mm : anf.monomials) support |= mm;
    const int k = std::popcount(support);
    const uint32_t full = (uint32_t{1} << n) - 1;

    BooleanFunction f1(n, std::vector<uint8_t>(std::size_t{1} << n, 0));
    BooleanFunction f2 = f1;
    uint32_t mask1 = 0, mask2 = 0;

    if (k < n) {
        // dummy-party split: constrain the dependent ports to f and force the
        // XOR of the untouched ports to 0 / 1
        mask1 = support ? support : 1u;  // constant f still needs a nonempty group
        mask2 = full & ~mask1;
        f1 = f;
        // f2 stays identically 0
    } else {
        if (nonlocal.empty())
            throw std::invalid_argument(
                "nonextremal_split: affine function depending on all inputs has no "
                "two-group split");
        const auto part = empty_overlap_partition(nonlocal);
        // either >= 2 blocks, or one block whose support misses a variable
        // that enters only linearly; both split along the first block's support
        uint32_t block_support = 0;
        AnfForm a1, a2;
        a1.var_count = a2.var_count = n;
        for (uint32_t t : part.blocks[0]) block_support |= t;
        for (uint32_t t : anf.monomials) {
            const bool in_first = t != 0 && (t & ~block_support) == 0;
            (in_first ? a1 : a2).monomials.insert(t);
        }
        mask1 = block_support;
        mask2 = full & ~mask1;
        f1 = from_anf(a1);
        f2 = from_anf(a2);
    }

    ConvexSplit split;
    split.weight = Rat(1, 2);
    split.p1 = two_constraint_box(n, mask1, f1, mask2, f2);
    split.p2 = two_constraint_box(n, mask1, negate(f1), mask2, negate(f2));
    // the construction is only returned after exact verification
    const Box original = [&] {
        Box b(n);
        const Rat w = rat_pow2(1 - n);
        for (uint32_t x = 0; x < b.words(); ++x)
            for (uint32_t a = 0; a < b.words(); ++a)
                if ((std::popcount(a) & 1) == f(x)) b.at(x, a) = w;
        return b;
    }();
    if (mix(split.p1, split.p2, split.weight) != original)
        throw std::logic_error("nonextremal_split: halves do not recombine");
    if (split.p1 == split.p2) throw std::logic_error("nonextremal_split: halves coincide");
    if (!is_non_signaling(split.p1).ok || !is_non_signaling(split.p2).ok)
        throw std::logic_error("nonextremal_split: half is signaling");
    return split;
}

}  // namespace boxlab
