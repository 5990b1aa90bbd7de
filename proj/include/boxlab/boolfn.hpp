#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

namespace boxlab {

// Truth table of a Boolean function on var_count inputs. Bit convention used
// throughout the project: bit i (0-based) of an integer-encoded input word is
// variable x_{i+1}.
struct BooleanFunction {
    int var_count = 0;
    std::vector<uint8_t> truth_table;  // size 2^var_count, values 0/1

    BooleanFunction() = default;
    BooleanFunction(int n, std::vector<uint8_t> table);

    uint8_t operator()(uint32_t x) const { return truth_table[x]; }
    std::size_t size() const { return truth_table.size(); }

    static BooleanFunction constant(int n, uint8_t value);
    // AND of all n inputs (the n-PR function).
    static BooleanFunction and_all(int n);
    // AND of the first k inputs, viewed on n variables.
    static BooleanFunction and_first(int n, int k);

    bool operator==(const BooleanFunction& o) const = default;
};

// XOR-of-ANDs decomposition: each mask m in `monomials` encodes the monomial
// AND_{i in m} x_{i+1}; mask 0 is the constant 1 term.
struct AnfForm {
    int var_count = 0;
    std::set<uint32_t> monomials;

    bool operator==(const AnfForm& o) const = default;
};

// Partition of a nonlocal term set into variable-disjoint blocks (connected
// components of the shares-a-variable graph on terms).
struct EmptyOverlapPartition {
    std::vector<std::vector<uint32_t>> blocks;
    int block_count() const { return static_cast<int>(blocks.size()); }
};

struct AffineApprox {
    uint32_t linear_mask = 0;  // g(x) = parity(linear_mask & x) XOR constant
    uint8_t constant = 0;
    uint64_t distance = 0;  // hamming distance |{x : f(x) != g(x)}|
    BooleanFunction g;
};

AnfForm anf_decompose(const BooleanFunction& f);
BooleanFunction from_anf(const AnfForm& a);

// Terms of the ANF with at least two variables (the set J).
std::set<uint32_t> nonlocal_term_set(const AnfForm& a);

EmptyOverlapPartition empty_overlap_partition(const std::set<uint32_t>& terms);

// Number of input variables the function actually depends on.
int dependent_variable_count(const BooleanFunction& f);

// Walsh spectrum of (-1)^f: W[u] = sum_x (-1)^{f(x) xor parity(u & x)}.
std::vector<int64_t> walsh_spectrum(const BooleanFunction& f);
std::vector<int64_t> walsh_spectrum_naive(const BooleanFunction& f);

// Closest affine function (constant xor subset-XOR of single inputs) under
// hamming distance. Ties broken by smallest linear mask, then constant 0.
AffineApprox best_affine_approx(const BooleanFunction& f);

BooleanFunction affine_function(int n, uint32_t linear_mask, uint8_t constant);

bool is_affine(const BooleanFunction& f);

std::string monomial_string(uint32_t mask);
std::string anf_string(const AnfForm& a);

}  // namespace boxlab
