#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace boxlab {

// All probabilities in this project are exact rationals; no floating point
// enters any computation. Decimal output is advisory formatting only.
using Rat = mpq_class;

inline Rat rat_pow2(int exponent) {
    Rat r = 1;  // keep the untouched side of the fraction at 1
    if (exponent >= 0) {
        mpz_ui_pow_ui(r.get_num_mpz_t(), 2, static_cast<unsigned long>(exponent));
    } else {
        mpz_ui_pow_ui(r.get_den_mpz_t(), 2, static_cast<unsigned long>(-exponent));
    }
    return r;
}

inline std::string rat_string(const Rat& r) { return r.get_str(); }

// Parses "p/q" or "p". Returns false on malformed input.
bool parse_rat(const std::string& text, Rat& out);

// Decimal rendering with the given number of significant digits, round half
// away from zero. Computed with integer arithmetic so the output is identical
// across platforms. Example: decimal_string(29/200, 12) == "0.145000000000".
std::string decimal_string(const Rat& r, int significant_digits);

}  // namespace boxlab
