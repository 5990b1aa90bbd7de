#include <doctest.h>

#include <bit>

#include "boxlab/boxlib.hpp"
#include "boxlab/wiring.hpp"

using namespace boxlab;

namespace {

BooleanFunction example4() {
    AnfForm a;
    a.var_count = 4;
    a.monomials = {0b1111, 0b0111, 0b1100};
    return from_anf(a);
}

Box noisy_and(int n, const Rat& eps) {
    return mix(full_correlation_box(BooleanFunction::and_all(n)),
               correlated_noise_box(n), eps);
}

}  // namespace

TEST_SUITE("wiring") {

TEST_CASE("generated wirings pass the locality check") {
    CHECK(check_locality(identity_wiring(3)).ok);
    CHECK(check_locality(bs_wiring(2)).ok);
    CHECK(check_locality(bs_wiring(4)).ok);
    CHECK(check_locality(recursive_pr_wiring(3).wiring).ok);
    CHECK(check_locality(recursive_pr_wiring(4).wiring).ok);
    CHECK(check_locality(augment_wiring(2, 4, 0b1010)).ok);
    CHECK(check_locality(xor_combine_wiring(3, 2)).ok);
    CHECK(check_locality(affine_correction_wiring(3, 0b101, 1)).ok);
}

TEST_CASE("locality violation: a party reading another party's observed bit") {
    Wiring w = identity_wiring(2);
    // party 1's final output reads the stage-0 output at port 2 (owned by party 2)
    w.final_output[0] = Formula::stage_out(0, 2);
    const LocalityReport r = check_locality(w);
    CHECK_FALSE(r.ok);
    CHECK(r.message.find("party 1") != std::string::npos);
}

TEST_CASE("causality violation: formula reading a non-earlier stage") {
    Wiring w = identity_wiring(2);
    w.stages[0].input[0] = Formula::stage_out(0, 1);  // own stage, not strictly earlier
    CHECK_FALSE(check_locality(w).ok);
}

TEST_CASE("shared randomness visibility is enforced") {
    Wiring w = identity_wiring(2);
    w.shared_randomness.push_back(RandBit{{2}});  // visible to party 2 only
    w.final_output[0] = Formula::x_or(w.final_output[0], Formula::rand(0));
    CHECK_FALSE(check_locality(w).ok);
    w.shared_randomness[0].visible_to = {1, 2};
    CHECK(check_locality(w).ok);
}

TEST_CASE("identity wiring reproduces the box") {
    for (const Box& b : {n_pr_box(2), nk_pr_box(3, 2)})
        CHECK(apply_wiring(identity_wiring(b.port_count), {b}) == b);
}

TEST_CASE("protocol step fixed points") {
    for (int n = 2; n <= 3; ++n) {
        const Box perfect = n_pr_box(n);
        const Box noise = correlated_noise_box(n);
        CHECK(apply_wiring(bs_wiring(n), {perfect, perfect}) == perfect);
        CHECK(apply_wiring(bs_wiring(n), {noise, noise}) == noise);
    }
}

TEST_CASE("protocol step on the noisy two-party family follows (3e - e^2)/2") {
    const Rat eps(1, 10);
    const Box in = noisy_and(2, eps);
    const Box out = apply_wiring(bs_wiring(2), {in, in});
    const Rat expect = (3 * eps - eps * eps) / 2;
    CHECK(expect == Rat(29, 200));
    CHECK(out == noisy_and(2, expect));
}

TEST_CASE("recursive construction is exact for n = 3") {
    const RecursivePr rp = recursive_pr_wiring(3);
    CHECK(rp.box_ports == std::vector<int>{2, 2, 2});
    const Box out = apply_wiring(rp.wiring, {n_pr_box(2), n_pr_box(2), n_pr_box(2)});
    CHECK(out == n_pr_box(3));
}

TEST_CASE("recursive construction output obeys the parity law on its support") {
    const RecursivePr rp = recursive_pr_wiring(3);
    const Box out = apply_wiring(rp.wiring, {n_pr_box(2), n_pr_box(2), n_pr_box(2)});
    for (uint32_t x = 0; x < out.words(); ++x)
        for (uint32_t a = 0; a < out.words(); ++a)
            if (out.at(x, a) != 0)
                CHECK((std::popcount(a) & 1) == (x == out.words() - 1 ? 1 : 0));
}

TEST_CASE("recursive construction from noisy parts lands strictly inside") {
    const RecursivePr rp = recursive_pr_wiring(3);
    const Box pr = noisy_and(2, Rat(1, 2));
    const Box out = apply_wiring(rp.wiring, {pr, pr, pr});
    CHECK(is_non_signaling(out).ok);
    const Rat s = success_probability(out, BooleanFunction::and_all(3));
    CHECK(s > Rat(1, 2));  // above random guessing
    CHECK(s < 1);
}

TEST_CASE("isolating the 3-variable term of the 4-party example yields the 3-PR box") {
    const BooleanFunction f = example4();
    const Isolation iso =
        isolate_term(f, 0b0111, default_isolation_assignment(4, 0b0111));
    REQUIRE(iso.ok);
    CHECK(iso.party_count == 3);
    CHECK(check_locality(iso.wiring).ok);
    CHECK(apply_wiring(iso.wiring, {full_correlation_box(f)}) == n_pr_box(3));
}

TEST_CASE("isolating the bipartite term of the 4-party example yields the PR box") {
    const BooleanFunction f = example4();
    const Isolation iso =
        isolate_term(f, 0b1100, default_isolation_assignment(4, 0b1100));
    REQUIRE(iso.ok);
    CHECK(apply_wiring(iso.wiring, {full_correlation_box(f)}) == n_pr_box(2));
}

TEST_CASE("the full term of the 4-party example is not isolable") {
    const BooleanFunction f = example4();
    const Isolation iso =
        isolate_term(f, 0b1111, default_isolation_assignment(4, 0b1111));
    CHECK_FALSE(iso.ok);
    CHECK_FALSE(iso.error.empty());
}

TEST_CASE("isolation cancels surviving affine terms") {
    // f = x1*x2 + x2 + 1: fixing nothing, the affine remainder is flipped away
    AnfForm a;
    a.var_count = 2;
    a.monomials = {0b11, 0b10, 0};
    const BooleanFunction f = from_anf(a);
    const Isolation iso = isolate_term(f, 0b11, default_isolation_assignment(2, 0b11));
    REQUIRE(iso.ok);
    CHECK(apply_wiring(iso.wiring, {full_correlation_box(f)}) == n_pr_box(2));
}

TEST_CASE("shared-randomness augmentation matches the (n,k)-PR family") {
    CHECK(augment_shared_randomness(n_pr_box(2), 3) == nk_pr_box(3, 2));
    CHECK(augment_shared_randomness(n_pr_box(2), 4) == nk_pr_box(4, 2));
    CHECK(augment_shared_randomness(n_pr_box(3), 3) == n_pr_box(3));  // no padding
}

TEST_CASE("augmentation commutes with the noise mixture") {
    const Rat eps(1, 3);
    const Box lhs = augment_shared_randomness(noisy_and(2, eps), 3);
    const Box rhs = mix(nk_pr_box(3, 2), correlated_noise_box(3), eps);
    CHECK(lhs == rhs);
}

TEST_CASE("augment_at_positions embeds at the named ports") {
    const Box b = augment_at_positions(n_pr_box(2), 3, 0b110);
    // parity of all three outputs = x2*x3, party 1 is padding
    const AnfForm expect{3, {0b110}};
    CHECK(b == full_correlation_box(from_anf(expect)));
}

TEST_CASE("xor_combine on full-correlation boxes is XOR on functions") {
    const BooleanFunction f = BooleanFunction::and_first(3, 2);  // x1*x2
    AnfForm g_anf{3, {0b110}};                                   // x2*x3
    const BooleanFunction g = from_anf(g_anf);
    AnfForm zero{3, {}};
    CHECK(xor_combine(full_correlation_box(f), full_correlation_box(from_anf(zero))) ==
          full_correlation_box(f));
    AnfForm sum{3, {0b011, 0b110}};
    CHECK(xor_combine(full_correlation_box(f), full_correlation_box(g)) ==
          full_correlation_box(from_anf(sum)));
    // commutativity and associativity spot checks
    const Box pf = full_correlation_box(f), pg = full_correlation_box(g);
    const Box pz = full_correlation_box(from_anf(AnfForm{3, {0b111}}));
    CHECK(xor_combine(pf, pg) == xor_combine(pg, pf));
    CHECK(xor_combine(xor_combine(pf, pg), pz) == xor_combine(pf, xor_combine(pg, pz)));
}

TEST_CASE("combining the 3-PR embedding with the (3,2)-PR") {
    const Box lhs = xor_combine(n_pr_box(3), nk_pr_box(3, 2));
    AnfForm a{3, {0b111, 0b011}};
    CHECK(lhs == full_correlation_box(from_anf(a)));
}

TEST_CASE("fix_inputs reductions of the 3-PR box") {
    PartyAssignment pa;
    pa.party_count = 2;
    pa.party_of = {1, 2, 2};  // port 3 belongs to party 2
    SUBCASE("x3 := 1 collapses onto the PR box") {
        CHECK(fix_inputs(n_pr_box(3), {{3, 1}}, pa) == n_pr_box(2));
    }
    SUBCASE("x3 := 0 collapses onto correlated noise") {
        CHECK(fix_inputs(n_pr_box(3), {{3, 0}}, pa) == correlated_noise_box(2));
    }
    SUBCASE("fixing nothing is the identity") {
        CHECK(fix_inputs(n_pr_box(3), {}, PartyAssignment::one_per_port(3)) ==
              n_pr_box(3));
    }
}

TEST_CASE("fix_inputs refuses to discard a correlated ownerless output") {
    // port 2's output is perfectly correlated with port 1's, so dropping it
    // silently would change the distribution
    CHECK_THROWS(fix_inputs(n_pr_box(2), {{2, 1}}, PartyAssignment::one_per_port(2)));
}

TEST_CASE("fix_inputs may discard a provably independent output") {
    // product of a PR box with an independent uniform port: port 3 is ownerless
    // after fixing but exactly uniform and independent
    Box b(3);
    const Box pr = n_pr_box(2);
    for (uint32_t x = 0; x < 8; ++x)
        for (uint32_t a = 0; a < 8; ++a)
            b.at(x, a) = pr.at(x & 3, a & 3) / 2;
    const Box cut = fix_inputs(b, {{3, 0}}, PartyAssignment::one_per_port(3));
    CHECK(cut == pr);
}

TEST_CASE("affine correction replays linear and constant flips") {
    const BooleanFunction f = BooleanFunction::and_all(2);
    const Box base = full_correlation_box(f);
    AnfForm shifted{2, {0b11, 0b01, 0}};
    CHECK(apply_wiring(affine_correction_wiring(2, 0b01, 1), {base}) ==
          full_correlation_box(from_anf(shifted)));
    CHECK(apply_wiring(affine_correction_wiring(2, 0, 0), {base}) == base);
}

TEST_CASE("apply_wiring outputs stay non-signaling") {
    const Box out1 = apply_wiring(bs_wiring(3), {noisy_and(3, Rat(1, 3)),
                                                 noisy_and(3, Rat(1, 3))});
    CHECK(is_non_signaling(out1).ok);
    const Box out2 = augment_at_positions(n_pr_box(2), 4, 0b1001);
    CHECK(is_non_signaling(out2).ok);
    CHECK(validate_box(out1).ok);
    CHECK(validate_box(out2).ok);
}

TEST_CASE("apply_wiring rejects shape mismatches") {
    CHECK_THROWS(apply_wiring(bs_wiring(2), {n_pr_box(2)}));
    CHECK_THROWS(apply_wiring(bs_wiring(2), {n_pr_box(2), n_pr_box(3)}));
}

}  // TEST_SUITE
