#include "boxlab/boolfn.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace boxlab {

BooleanFunction::BooleanFunction(int n, std::vector<uint8_t> table)
    : var_count(n), truth_table(std::move(table)) {
    if (n < 0 || n > 16) throw std::invalid_argument("variable count out of range");
    if (truth_table.size() != (std::size_t{1} << n))
        throw std::invalid_argument("truth table length != 2^var_count");
    for (auto& b : truth_table) b &= 1;
}

BooleanFunction BooleanFunction::constant(int n, uint8_t value) {
    return BooleanFunction(n, std::vector<uint8_t>(std::size_t{1} << n, value & 1));
}

BooleanFunction BooleanFunction::and_all(int n) { return and_first(n, n); }

BooleanFunction BooleanFunction::and_first(int n, int k) {
    if (k < 0 || k > n) throw std::invalid_argument("and_first: bad k");
    std::vector<uint8_t> t(std::size_t{1} << n);
    const uint32_t mask = (k == 0) ? 0 : ((uint32_t{1} << k) - 1);
    for (uint32_t x = 0; x < t.size(); ++x) t[x] = ((x & mask) == mask) ? 1 : 0;
    return BooleanFunction(n, std::move(t));
}

// Binary Moebius transform; it is an involution, so the same butterfly maps
// truth table -> ANF coefficients and back.
static std::vector<uint8_t> moebius(std::vector<uint8_t> v) {
    const std::size_t n = v.size();
    for (std::size_t step = 1; step < n; step <<= 1)
        for (std::size_t i = 0; i < n; i += step << 1)
            for (std::size_t j = i; j < i + step; ++j) v[j + step] ^= v[j];
    return v;
}

AnfForm anf_decompose(const BooleanFunction& f) {
    auto coeff = moebius(f.truth_table);
    AnfForm a;
    a.var_count = f.var_count;
    for (uint32_t m = 0; m < coeff.size(); ++m)
        if (coeff[m]) a.monomials.insert(m);
    return a;
}

BooleanFunction from_anf(const AnfForm& a) {
    std::vector<uint8_t> coeff(std::size_t{1} << a.var_count, 0);
    for (uint32_t m : a.monomials) {
        if (m >= coeff.size()) throw std::invalid_argument("monomial variable out of range");
        coeff[m] = 1;
    }
    return BooleanFunction(a.var_count, moebius(std::move(coeff)));
}

std::set<uint32_t> nonlocal_term_set(const AnfForm& a) {
    std::set<uint32_t> j;
    for (uint32_t m : a.monomials)
        if (std::popcount(m) >= 2) j.insert(m);
    return j;
}

EmptyOverlapPartition empty_overlap_partition(const std::set<uint32_t>& terms) {
    std::vector<uint32_t> ts(terms.begin(), terms.end());
    std::vector<int> block_of(ts.size(), -1);
    EmptyOverlapPartition part;
    for (std::size_t seed = 0; seed < ts.size(); ++seed) {
        if (block_of[seed] >= 0) continue;
        std::vector<uint32_t> block{ts[seed]};
        block_of[seed] = part.block_count();
        uint32_t support = ts[seed];
        bool grew = true;
        while (grew) {
            grew = false;
            for (std::size_t i = 0; i < ts.size(); ++i) {
                if (block_of[i] >= 0 || !(ts[i] & support)) continue;
                block_of[i] = block_of[seed];
                block.push_back(ts[i]);
                support |= ts[i];
                grew = true;
            }
        }
        part.blocks.push_back(std::move(block));
    }
    return part;
}

int dependent_variable_count(const BooleanFunction& f) {
    uint32_t support = 0;
    for (uint32_t m : anf_decompose(f).monomials) support |= m;
    return std::popcount(support);
}

std::vector<int64_t> walsh_spectrum(const BooleanFunction& f) {
    std::vector<int64_t> w(f.size());
    for (std::size_t x = 0; x < w.size(); ++x) w[x] = f.truth_table[x] ? -1 : 1;
    for (std::size_t step = 1; step < w.size(); step <<= 1)
        for (std::size_t i = 0; i < w.size(); i += step << 1)
            for (std::size_t j = i; j < i + step; ++j) {
                int64_t a = w[j], b = w[j + step];
                w[j] = a + b;
                w[j + step] = a - b;
            }
    return w;
}

std::vector<int64_t> walsh_spectrum_naive(const BooleanFunction& f) {
    std::vector<int64_t> w(f.size(), 0);
    for (uint32_t u = 0; u < w.size(); ++u)
        for (uint32_t x = 0; x < f.size(); ++x) {
            int parity = f(x) ^ (std::popcount(u & x) & 1);
            w[u] += parity ? -1 : 1;
        }
    return w;
}

BooleanFunction affine_function(int n, uint32_t linear_mask, uint8_t constant) {
    std::vector<uint8_t> t(std::size_t{1} << n);
    for (uint32_t x = 0; x < t.size(); ++x)
        t[x] = static_cast<uint8_t>((std::popcount(linear_mask & x) & 1) ^ (constant & 1));
    return BooleanFunction(n, std::move(t));
}

AffineApprox best_affine_approx(const BooleanFunction& f) {
    auto w = walsh_spectrum(f);
    // d(f, u.x ^ c) = (2^n - (-1)^c W[u]) / 2; scan masks ascending so the
    // smallest maximizing u wins, with W[u] > 0 preferring constant 0.
    std::size_t best_u = 0;
    int64_t best_abs = -1;
    for (std::size_t u = 0; u < w.size(); ++u) {
        int64_t a = w[u] < 0 ? -w[u] : w[u];
        if (a > best_abs) {
            best_abs = a;
            best_u = u;
        }
    }
    AffineApprox res;
    res.linear_mask = static_cast<uint32_t>(best_u);
    res.constant = w[best_u] >= 0 ? 0 : 1;
    res.distance = static_cast<uint64_t>((static_cast<int64_t>(f.size()) - best_abs) / 2);
    res.g = affine_function(f.var_count, res.linear_mask, res.constant);
    return res;
}

bool is_affine(const BooleanFunction& f) {
    for (uint32_t m : anf_decompose(f).monomials)
        if (std::popcount(m) >= 2) return false;
    return true;
}

std::string monomial_string(uint32_t mask) {
    if (mask == 0) return "1";
    std::string s;
    for (int i = 0; i < 32; ++i)
        if (mask & (uint32_t{1} << i)) {
            if (!s.empty()) s += "*";
            s += "x" + std::to_string(i + 1);
        }
    return s;
}

std::string anf_string(const AnfForm& a) {
    if (a.monomials.empty()) return "0";
    // larger monomials first, then by mask, matching the planner's term order
    std::vector<uint32_t> ms(a.monomials.begin(), a.monomials.end());
    std::sort(ms.begin(), ms.end(), [](uint32_t a, uint32_t b) {
        int pa = std::popcount(a), pb = std::popcount(b);
        return pa != pb ? pa > pb : a < b;
    });
    std::string s;
    for (uint32_t m : ms) {
        if (!s.empty()) s += " + ";
        s += monomial_string(m);
    }
    return s;
}

}  // namespace boxlab
