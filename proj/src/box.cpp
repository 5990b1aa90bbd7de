#include "boxlab/box.hpp"

#include <bit>
#include <stdexcept>

namespace boxlab {

Box::Box(int ports) : port_count(ports) {
    if (ports < 1 || ports > kMaxPorts) throw std::invalid_argument("port count out of range");
    table.assign(words(), std::vector<Rat>(words(), Rat(0)));
}

PartyAssignment PartyAssignment::one_per_port(int ports) {
    PartyAssignment pa;
    pa.party_count = ports;
    pa.party_of.resize(ports);
    for (int i = 0; i < ports; ++i) pa.party_of[i] = i + 1;
    return pa;
}

std::vector<int> PartyAssignment::ports_of(int party) const {
    std::vector<int> out;
    for (std::size_t i = 0; i < party_of.size(); ++i)
        if (party_of[i] == party) out.push_back(static_cast<int>(i) + 1);
    return out;
}

bool PartyAssignment::valid(int ports) const {
    if (static_cast<int>(party_of.size()) != ports || party_count < 1) return false;
    for (int p : party_of)
        if (p < 1 || p > party_count) return false;
    return true;
}

std::string ValidityReport::describe() const {
    if (ok) return "ok";
    return violation + " at x=" + std::to_string(input_word) +
           (violation == "negativity" ? " a=" + std::to_string(output_word) : "");
}

std::string NonSignalingReport::describe() const {
    if (ok) return "non-signaling";
    return "signaling: subset mask " + std::to_string(subset_mask) + ", inputs " +
           std::to_string(input_a) + "/" + std::to_string(input_b) + ", marginal word " +
           std::to_string(marginal_word);
}

ValidityReport validate_box(const Box& b) {
    ValidityReport r;
    const std::size_t n = b.words();
    if (b.table.size() != n) {
        r.ok = false;
        r.violation = "row_sum";
        return r;
    }
    for (uint32_t x = 0; x < n; ++x) {
        Rat sum = 0;
        for (uint32_t a = 0; a < n; ++a) {
            if (b.at(x, a) < 0) {
                r.ok = false;
                r.violation = "negativity";
                r.input_word = x;
                r.output_word = a;
                return r;
            }
            sum += b.at(x, a);
        }
        if (sum != 1) {
            r.ok = false;
            r.violation = "row_sum";
            r.input_word = x;
            return r;
        }
    }
    return r;
}

NonSignalingReport is_non_signaling(const Box& b) {
    NonSignalingReport r;
    const int m = b.port_count;
    const uint32_t full = static_cast<uint32_t>(b.words() - 1);
    // All inputs agreeing on a strict subset S must induce the same output
    // marginal on S; comparing every class member against its representative
    // (bits outside S zeroed) covers all pairs.
    for (uint32_t s = 1; s < full; ++s) {
        const uint32_t comp = full & ~s;
        // iterate over sub-words of s (inputs on S) as class representatives
        uint32_t xs = 0;
        do {
            std::vector<Rat> ref(b.words(), Rat(0));
            for (uint32_t a = 0; a <= full; ++a) ref[a & s] += b.at(xs, a);
            uint32_t xo = 0;
            do {
                const uint32_t x = xs | xo;
                if (x != xs) {
                    std::vector<Rat> marg(b.words(), Rat(0));
                    for (uint32_t a = 0; a <= full; ++a) marg[a & s] += b.at(x, a);
                    for (uint32_t w = 0; w <= full; ++w) {
                        if ((w & s) != w) continue;
                        if (marg[w] != ref[w]) {
                            r.ok = false;
                            r.subset_mask = s;
                            r.input_a = xs;
                            r.input_b = x;
                            r.marginal_word = w;
                            return r;
                        }
                    }
                }
                xo = (xo - comp) & comp;
            } while (xo != 0);
            xs = (xs - s) & s;
        } while (xs != 0);
    }
    (void)m;
    return r;
}

Rat l1_distance(const Box& p, const Box& q) {
    if (p.port_count != q.port_count) throw std::invalid_argument("l1_distance: port mismatch");
    Rat sum = 0;
    for (uint32_t x = 0; x < p.words(); ++x)
        for (uint32_t a = 0; a < p.words(); ++a) {
            Rat d = p.at(x, a) - q.at(x, a);
            sum += d < 0 ? -d : d;
        }
    return sum;
}

Rat success_probability(const Box& b, const BooleanFunction& f) {
    if (b.port_count != f.var_count)
        throw std::invalid_argument("success_probability: dimension mismatch");
    Rat sum = 0;
    for (uint32_t x = 0; x < b.words(); ++x)
        for (uint32_t a = 0; a < b.words(); ++a)
            if ((std::popcount(a) & 1) == f(x)) sum += b.at(x, a);
    return sum / Rat(static_cast<unsigned long>(b.words()));
}

Box mix(const Box& p, const Box& q, const Rat& eps) {
    if (p.port_count != q.port_count) throw std::invalid_argument("mix: port mismatch");
    if (eps < 0 || eps > 1) throw std::invalid_argument("mix: epsilon outside [0,1]");
    Box out(p.port_count);
    for (uint32_t x = 0; x < p.words(); ++x)
        for (uint32_t a = 0; a < p.words(); ++a)
            out.at(x, a) = eps * p.at(x, a) + (1 - eps) * q.at(x, a);
    return out;
}

Rat single_port_marginal_one(const Box& b, int port, uint32_t x) {
    if (port < 1 || port > b.port_count) throw std::invalid_argument("bad port");
    const uint32_t bit = uint32_t{1} << (port - 1);
    Rat sum = 0;
    for (uint32_t a = 0; a < b.words(); ++a)
        if (a & bit) sum += b.at(x, a);
    return sum;
}

}  // namespace boxlab
