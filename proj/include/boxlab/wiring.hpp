#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "boxlab/box.hpp"
#include "boxlab/boolfn.hpp"

namespace boxlab {

// Boolean expression over the bits a wiring formula may read. XOR/AND/NOT is
// exactly expressive enough for every wiring in this project and keeps the
// locality check syntactic.
class Formula {
public:
    enum class Kind { Zero, One, Input, StageOut, Rand, Xor, And, Not };

    Kind kind = Kind::Zero;
    int party = 0;      // Input
    int stage = 0;      // StageOut
    int port = 0;       // StageOut (1-based)
    int rand_index = 0; // Rand
    std::vector<Formula> kids;

    static Formula zero() { return {}; }
    static Formula one();
    static Formula input(int party);
    static Formula stage_out(int stage, int port);
    static Formula rand(int index);
    static Formula x_or(Formula a, Formula b);
    static Formula a_nd(Formula a, Formula b);
    static Formula n_ot(Formula a);

    struct Context {
        uint32_t global_inputs = 0;                  // bit p-1 = party p's input
        uint32_t rand_bits = 0;                      // bit j = shared bit j
        const std::vector<uint32_t>* stage_outputs = nullptr;
    };
    int eval(const Context& ctx) const;
    std::string str() const;
};

// One box slot inside a wiring: who owns each port and what feeds it.
struct BoxSlot {
    int port_count = 0;
    std::vector<int> owner;      // owner[i] = party holding port i+1
    std::vector<Formula> input;  // input[i] feeds port i+1
};

struct RandBit {
    std::vector<int> visible_to;  // parties allowed to read this bit
};

// Declarative adaptive local wiring: staged box slots plus per-party final
// output formulas. Locality and causality are machine-checked, not assumed.
struct Wiring {
    int party_count = 0;
    std::vector<RandBit> shared_randomness;
    std::vector<BoxSlot> stages;
    std::vector<Formula> final_output;  // one per party, index = party-1
};

struct LocalityReport {
    bool ok = true;
    std::string message;
};

LocalityReport check_locality(const Wiring& w);

// Exact composition: enumerates shared randomness and all joint outcome
// tuples of the staged boxes and accumulates mass on final output words.
Box apply_wiring(const Wiring& w, const std::vector<Box>& boxes);

// --- generators -----------------------------------------------------------

Wiring identity_wiring(int ports);

// Protocol step: stage-1 inputs x_i, stage-2 inputs x_i AND NOT a_i,
// outputs a_i XOR b_i. One port per party per stage.
Wiring bs_wiring(int n);

struct RecursivePr {
    Wiring wiring;
    std::vector<int> box_ports;  // required slot shapes: {n-1, 2, 2, ..., 2}
};
// Builds an n-PR from an (n-1)-PR shared by parties 1..n-1 plus n-1 bipartite
// PR boxes each shared between party i and party n.
RecursivePr recursive_pr_wiring(int n);

// Default interface distribution for isolating `term_mask`: the k-th smallest
// variable of the term goes to party k; every other port goes to the party of
// the largest term variable below it (party 1 if there is none).
PartyAssignment default_isolation_assignment(int n, uint32_t term_mask);

struct Isolation {
    bool ok = false;
    std::string error;
    Wiring wiring;
    int party_count = 0;          // = popcount(term_mask)
    BooleanFunction target;       // AND of all party inputs
    uint32_t term_mask = 0;
};

// Fixes inputs outside the term to 0, XOR-groups each party's outputs, and
// cancels surviving affine ANF terms by local flips. Fails (ok = false) when
// another nonlocal term is a proper subset of `term_mask`.
Isolation isolate_term(const BooleanFunction& f, uint32_t term_mask,
                       const PartyAssignment& assignment);

// Embeds a k-port box into n parties sitting at the ports named by
// positions_mask; the remaining parties output shared-randomness bits whose
// XOR is folded into the first embedded party's output.
Wiring augment_wiring(int k, int n, uint32_t positions_mask);

Wiring xor_combine_wiring(int ports, int copies);

// Identity wiring that XORs l_i * x_i into party i's output for every bit of
// linear_mask, and flips party 1's output when constant is set.
Wiring affine_correction_wiring(int n, uint32_t linear_mask, uint8_t constant);

// --- convenience applications ---------------------------------------------

Box xor_combine(const Box& p, const Box& q);
Box augment_shared_randomness(const Box& b, int n);
Box augment_at_positions(const Box& b, int n, uint32_t positions_mask);

// Conditions the table on fixed inputs and folds each fixed port's output
// into the owner's lowest remaining port. A fixed port whose owner has no
// remaining port is discarded only if its output is exactly uniform and
// independent; otherwise this throws.
Box fix_inputs(const Box& b, const std::map<int, int>& fixes,
               const PartyAssignment& assignment);

}  // namespace boxlab
