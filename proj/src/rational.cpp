#include "boxlab/rational.hpp"

#include <cctype>

namespace boxlab {

bool parse_rat(const std::string& text, Rat& out) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) return false;
    // mpq_class accepts "p/q"; validate characters first since GMP aborts on
    // malformed strings in some versions.
    std::size_t slash = s.find('/');
    auto digits_ok = [](const std::string& t) {
        if (t.empty()) return false;
        std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
        if (i == t.size()) return false;
        for (; i < t.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
        return true;
    };
    if (slash == std::string::npos) {
        if (!digits_ok(s)) return false;
    } else {
        if (!digits_ok(s.substr(0, slash)) || !digits_ok(s.substr(slash + 1))) return false;
        if (s.substr(slash + 1).find('-') != std::string::npos) return false;
    }
    out = Rat(s);
    if (out.get_den() == 0) return false;
    out.canonicalize();
    return true;
}

std::string decimal_string(const Rat& r, int significant_digits) {
    const int s = significant_digits;
    if (r == 0) {
        std::string z = "0.";
        z.append(static_cast<std::size_t>(s - 1), '0');
        return z;
    }
    mpz_class p = abs(r.get_num());
    mpz_class q = r.get_den();

    // Find e with 10^e <= p/q < 10^{e+1}: start from the digit-count estimate
    // (exact up to +-1) and correct by comparison, so the search is constant
    // instead of linear in the number of digits.
    auto cmp_pow10 = [&](long ee) {  // sign of p/q - 10^ee
        mpz_class pow10, lhs = p, rhs = q;
        mpz_ui_pow_ui(pow10.get_mpz_t(), 10,
                      static_cast<unsigned long>(ee >= 0 ? ee : -ee));
        if (ee >= 0)
            rhs *= pow10;
        else
            lhs *= pow10;
        return cmp(lhs, rhs);
    };
    long e = static_cast<long>(mpz_sizeinbase(p.get_mpz_t(), 10)) -
             static_cast<long>(mpz_sizeinbase(q.get_mpz_t(), 10));
    while (cmp_pow10(e) < 0) --e;
    while (cmp_pow10(e + 1) >= 0) ++e;

    // digits = round(p * 10^{s-1-e} / q), half away from zero
    mpz_class num = p, den = q;
    long shift = s - 1 - e;
    mpz_class pow;
    mpz_ui_pow_ui(pow.get_mpz_t(), 10, static_cast<unsigned long>(shift >= 0 ? shift : -shift));
    if (shift >= 0)
        num *= pow;
    else
        den *= pow;
    mpz_class d = (2 * num + den) / (2 * den);
    std::string digits = d.get_str();
    if (static_cast<int>(digits.size()) > s) {
        // rounding carried over (e.g. 0.9999.. -> 1.000..)
        digits.resize(static_cast<std::size_t>(s));
        ++e;
    }

    std::string body;
    if (e < 0) {
        body = "0.";
        body.append(static_cast<std::size_t>(-e - 1), '0');
        body += digits;
    } else if (e + 1 >= s) {
        body = digits;
        body.append(static_cast<std::size_t>(e + 1 - s), '0');
    } else {
        body = digits.substr(0, static_cast<std::size_t>(e + 1)) + "." +
               digits.substr(static_cast<std::size_t>(e + 1));
    }
    return (r < 0 ? "-" : "") + body;
}

}  // namespace boxlab
