#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "boxlab/boolfn.hpp"
#include "boxlab/rational.hpp"

namespace boxlab {

// Table-size guard: 4^8 rational entries.
inline constexpr int kMaxPorts = 8;

// Exact conditional distribution P(a | x) over binary ports. Bit i (0-based)
// of an integer-encoded word is port i+1; this convention is fixed here and
// used by every module.
struct Box {
    int port_count = 0;
    // table[x][a], x and a ranging over {0,1}^port_count
    std::vector<std::vector<Rat>> table;

    Box() = default;
    explicit Box(int ports);

    std::size_t words() const { return std::size_t{1} << port_count; }
    Rat& at(uint32_t x, uint32_t a) { return table[x][a]; }
    const Rat& at(uint32_t x, uint32_t a) const { return table[x][a]; }

    bool operator==(const Box& o) const = default;
};

// Map from port index (1-based) to party identifier (1..party_count).
struct PartyAssignment {
    std::vector<int> party_of;  // party_of[i] owns port i+1
    int party_count = 0;

    static PartyAssignment one_per_port(int ports);
    std::vector<int> ports_of(int party) const;  // 1-based port indices
    bool valid(int ports) const;
};

struct ValidityReport {
    bool ok = true;
    std::string violation;  // "negativity" or "row_sum"
    uint32_t input_word = 0;
    uint32_t output_word = 0;  // meaningful for negativity only
    std::string describe() const;
};

struct NonSignalingReport {
    bool ok = true;
    // On failure: strict port subset (bitmask), two input words agreeing on
    // it, and the output word (restricted to the subset) whose marginal differs.
    uint32_t subset_mask = 0;
    uint32_t input_a = 0;
    uint32_t input_b = 0;
    uint32_t marginal_word = 0;
    std::string describe() const;
};

ValidityReport validate_box(const Box& b);
NonSignalingReport is_non_signaling(const Box& b);

// Unnormalized double sum  sum_x sum_a |p(a|x) - q(a|x)|.
Rat l1_distance(const Box& p, const Box& q);

// Pr over uniform inputs and box outputs that the XOR of all outputs equals f.
Rat success_probability(const Box& b, const BooleanFunction& f);

// Entrywise convex combination  eps*p + (1-eps)*q.
Box mix(const Box& p, const Box& q, const Rat& eps);

// Marginal of a single port's output for a given input word: P(a_port = 1 | x).
Rat single_port_marginal_one(const Box& b, int port, uint32_t x);

}  // namespace boxlab
