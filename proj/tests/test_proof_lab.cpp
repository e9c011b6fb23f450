#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "growthlab/proof_lab.hpp"

using namespace growthlab;

namespace {

FpSet random_shift_safe(u64 p, u64 size, u64 seed) {
    SplitMix64 rng(seed);
    std::set<u64> xs;
    while (xs.size() < size) {
        const u64 x = 1 + rng.below(p - 2); // avoids 0 and p-1
        xs.insert(x);
    }
    return FpSet::from_residues(p, {xs.begin(), xs.end()});
}

// |(a+1)A cap (b0+1)A| recomputed with std::set
u64 anchor_count_oracle(const FpSet& a, u64 av, u64 b0) {
    const u64 p = a.modulus();
    std::set<u64> lhs, rhs;
    for (u64 x : a.elements()) {
        lhs.insert(mul_mod(av + 1, x, p));
        rhs.insert(mul_mod(b0 + 1, x, p));
    }
    u64 c = 0;
    for (u64 v : lhs) c += rhs.count(v);
    return c;
}

GkQuadruple quadruple_for(const FpSet& a, const AnchorDecomposition& dec) {
    if (dec.a1.size() >= 2) {
        const GkResult gk = gk_dichotomy(dec.a1);
        if (const auto* q = std::get_if<GkQuadruple>(&gk)) return *q;
        return GkQuadruple{dec.a1.elements()[0], dec.a1.elements()[1], dec.a1.elements()[0],
                           dec.a1.elements()[1]};
    }
    (void)a;
    const u64 e = dec.a1.elements()[0];
    return GkQuadruple{e, e, e, e};
}

} // namespace

TEST_CASE("popular_anchor on the fixed tiny instance") {
    const FpSet a = FpSet::from_residues(7, {1, 2});
    const auto [b0, total] = popular_anchor(a);
    REQUIRE(b0 == 1); // ties go to the smallest element
    REQUIRE(total == 2);
}

TEST_CASE("popular_anchor maximizes the oracle total and satisfies the inequality") {
    SplitMix64 rng(41);
    for (int trial = 0; trial < 10; ++trial) {
        const u64 p = trial % 2 == 0 ? 101 : 499;
        const FpSet a = random_shift_safe(p, 4 + rng.below(8), rng.next());
        const auto [b0, total] = popular_anchor(a);
        REQUIRE(a.contains(b0));
        u64 oracle_best = 0;
        for (u64 cand : a.elements()) {
            u64 t = 0;
            for (u64 av : a.elements()) t += anchor_count_oracle(a, av, cand);
            oracle_best = std::max(oracle_best, t);
        }
        REQUIRE(total == oracle_best);
        REQUIRE(total * shifted_product(a).size() >= a.size() * a.size() * a.size());
    }
}

TEST_CASE("popular_anchor rejects sets touching 0 or -1") {
    REQUIRE_THROWS_AS(popular_anchor(FpSet::from_residues(7, {0, 2})), std::domain_error);
    REQUIRE_THROWS_AS(popular_anchor(FpSet::from_residues(7, {2, 6})), std::domain_error);
    REQUIRE_THROWS_AS(popular_anchor(FpSet::empty(7)), std::domain_error);
}

TEST_CASE("dyadic_levels on the fixed tiny instance") {
    const FpSet a = FpSet::from_residues(7, {1, 2});
    const AnchorDecomposition dec = dyadic_levels(a, 1); // counts are {2, 0}
    REQUIRE(dec.total == 2);
    REQUIRE(dec.level == 2);
    REQUIRE(dec.a1.elements() == std::vector<u64>{1});
    REQUIRE(dec.class_count == 1);
}

TEST_CASE("dyadic_levels structural properties on random sets") {
    SplitMix64 rng(43);
    for (int trial = 0; trial < 15; ++trial) {
        const u64 p = trial % 2 == 0 ? 101 : 499;
        const FpSet a = random_shift_safe(p, 12, rng.next());
        const auto [b0, total] = popular_anchor(a);
        const AnchorDecomposition dec = dyadic_levels(a, b0);
        REQUIRE(dec.total == total);
        // A1 is exactly the slice of A whose anchor count lies in [N, 2N)
        for (u64 av : a.elements()) {
            const u64 c = anchor_count_oracle(a, av, b0);
            REQUIRE(dec.a1.contains(av) == (dec.level <= c && c < 2 * dec.level));
        }
        // the exact pigeonhole the constructor asserts, recomputed here
        REQUIRE(dec.level * dec.a1.size() * dec.class_count >= dec.total);
        REQUIRE(dec.class_count >= 1);
        REQUIRE(dec.a1.size() >= 1);
    }
}

TEST_CASE("dyadic_levels requires b0 in A") {
    const FpSet a = FpSet::from_residues(101, {1, 2, 3});
    REQUIRE_THROWS_AS(dyadic_levels(a, 5), std::domain_error);
}

TEST_CASE("bg_injection_audit verifies the five-coordinate injection") {
    SplitMix64 rng(71);
    for (int trial = 0; trial < 8; ++trial) {
        const u64 p = trial % 2 == 0 ? 101 : 499;
        const FpSet a = random_shift_safe(p, 8, rng.next());
        const auto [b0, total] = popular_anchor(a);
        (void)total;
        const AnchorDecomposition dec = dyadic_levels(a, b0);
        const GkQuadruple q = quadruple_for(a, dec);
        const InjectionRecord rec = bg_injection_audit(a, dec, q);
        REQUIRE(rec.injective);
        REQUIRE(rec.counting_ok);
        REQUIRE(rec.level == dec.level);
        REQUIRE(rec.size_diff == difference_set(a, a).size());
        // the counting inequality, recomputed
        const unsigned __int128 n4 = static_cast<unsigned __int128>(rec.level) * rec.level *
                                     rec.level * rec.level;
        const unsigned __int128 rhs = static_cast<unsigned __int128>(rec.size_diff) *
                                      rec.size_diff * rec.size_diff * rec.size_diff *
                                      rec.size_2a2a;
        REQUIRE(static_cast<unsigned __int128>(rec.size_s) * n4 <= rhs);
    }
}

TEST_CASE("bg_injection_audit enforces its preconditions") {
    const FpSet a = random_shift_safe(101, 8, 5);
    const auto [b0, total] = popular_anchor(a);
    (void)total;
    const AnchorDecomposition dec = dyadic_levels(a, b0);
    // b_i outside A1
    u64 outsider = 1;
    while (dec.a1.contains(outsider)) ++outsider;
    REQUIRE_THROWS_AS(bg_injection_audit(a, dec, GkQuadruple{outsider, outsider, outsider, outsider}),
                      std::domain_error);
}

TEST_CASE("bsg_witness_search finds a witness on the full relation") {
    SplitMix64 rng(83);
    for (int trial = 0; trial < 10; ++trial) {
        const FpSet a = random_shift_safe(101, 2 + rng.below(7), rng.next());
        const FpSet b = random_shift_safe(101, 2 + rng.below(7), rng.next());
        const PairRelation e = PairRelation::full(a, b);
        const BsgWitness w = bsg_witness_search(a, b, e);
        REQUIRE(w.found);
        REQUIRE(w.a_prime.size() >= w.min_size);
        for (u64 x : w.a_prime.elements()) REQUIRE(a.contains(x));

        // recompute the cleared-denominator inequality for the returned subset
        const u64 p = 101;
        std::set<u64> dset;
        for (u64 x : w.a_prime.elements())
            for (u64 y : w.a_prime.elements()) dset.insert((x + p - y) % p);
        const u64 na = a.size(), nb = b.size(), ne = e.pairs.size();
        const u64 d4 = restricted_difference(e).size();
        unsigned __int128 lhs = static_cast<unsigned __int128>(d4) * d4 * d4 * d4 * 10000;
        for (int i = 0; i < 5; ++i) lhs *= static_cast<unsigned __int128>(na) * nb;
        unsigned __int128 rhs = static_cast<unsigned __int128>(dset.size()) * na * nb * nb;
        for (int i = 0; i < 5; ++i) rhs *= ne;
        REQUIRE(lhs >= rhs);
    }
}

TEST_CASE("bsg_witness_search finds a witness on dense random relations") {
    SplitMix64 rng(97);
    for (int trial = 0; trial < 10; ++trial) {
        const FpSet a = random_shift_safe(101, 6, rng.next());
        const FpSet b = random_shift_safe(101, 6, rng.next());
        std::vector<std::pair<u64, u64>> pairs;
        for (u64 x : a.elements())
            for (u64 y : b.elements())
                if (rng.below(4) != 0) pairs.emplace_back(x, y);
        if (pairs.size() < a.size() * b.size() / 2) continue; // keep |E| >= |A||B|/2
        const BsgWitness w = bsg_witness_search(a, b, PairRelation::make(a, b, pairs));
        REQUIRE(w.found);
    }
}

TEST_CASE("bsg_witness_search enforces the exhaustive-search cap") {
    const FpSet a = random_shift_safe(101, 13, 3);
    const FpSet b = random_shift_safe(101, 4, 4);
    REQUIRE_THROWS_AS(bsg_witness_search(a, b, PairRelation::full(a, b)), resource_error);
    const FpSet small_a = random_shift_safe(101, 3, 5);
    REQUIRE_THROWS_AS(
        bsg_witness_search(small_a, b, PairRelation::make(small_a, b, {})),
        std::domain_error);
}

TEST_CASE("ruzsa_mult_audit on the fixed tiny instance") {
    const FpSet a = FpSet::from_residues(7, {1, 2});
    const RuzsaReport rep = ruzsa_mult_audit(a);
    REQUIRE(rep.size_aa == 3);      // {1, 2, 4}
    REQUIRE(rep.size_shifted == 4); // {2, 3, 4, 6}
    REQUIRE(rep.ok);
}

TEST_CASE("ruzsa_mult_audit holds on random sets") {
    SplitMix64 rng(101);
    for (int trial = 0; trial < 30; ++trial) {
        const u64 p = trial % 2 == 0 ? 101 : 1009;
        const FpSet a = random_shift_safe(p, 3 + rng.below(15), rng.next());
        const RuzsaReport rep = ruzsa_mult_audit(a);
        REQUIRE(rep.ok);
        REQUIRE(rep.size_aa * rep.size_a <= rep.size_shifted * rep.size_shifted);
    }
}

TEST_CASE("lemma2_audit and theorem1_exponent report flags") {
    SplitMix64 rng(113);
    for (int trial = 0; trial < 5; ++trial) {
        const FpSet a = random_shift_safe(10007, 50, rng.next());
        const Lemma2Report lr = lemma2_audit(a);
        REQUIRE(lr.exponent > 0.0);
        REQUIRE(lr.above_13 == (lr.exponent >= 13.0));
        REQUIRE(lr.sketch_above_11 == (lr.sketch_exponent >= 11.0));
        const Theorem1Report tr = theorem1_exponent(a);
        REQUIRE(tr.beta > 0.0);
        REQUIRE(tr.above == (tr.beta >= 106.0 / 105.0));
        REQUIRE(std::abs(tr.k_ratio - static_cast<double>(tr.size_shifted) / tr.size_a) < 1e-12);
    }
    REQUIRE_THROWS_AS(lemma2_audit(random_shift_safe(101, 12, 1)), std::domain_error);
    REQUIRE_THROWS_AS(theorem1_exponent(random_shift_safe(101, 12, 1)), std::domain_error);
    REQUIRE_THROWS_AS(lemma2_audit(FpSet::from_residues(101, {3})), std::domain_error);
}
