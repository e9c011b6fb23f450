#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "growthlab/characters.hpp"

using namespace growthlab;

namespace {

FpSet random_units(u64 p, u64 size, u64 seed, bool avoid_p_minus_1 = false) {
    SplitMix64 rng(seed);
    std::set<u64> xs;
    while (xs.size() < size) {
        const u64 x = 1 + rng.below(p - 1);
        if (avoid_p_minus_1 && x == p - 1) continue;
        xs.insert(x);
    }
    return FpSet::from_residues(p, {xs.begin(), xs.end()});
}

} // namespace

TEST_CASE("characters are multiplicative and principal on chi_0") {
    const CharacterTable t = CharacterTable::build(PrimeField::make(101));
    SplitMix64 rng(8);
    for (int i = 0; i < 100; ++i) {
        const u64 j = rng.below(t.order);
        const u64 x = 1 + rng.below(100), y = 1 + rng.below(100);
        const auto lhs = t.eval(j, mul_mod(x, y, 101));
        const auto rhs = t.eval(j, x) * t.eval(j, y);
        REQUIRE(std::abs(lhs - rhs) < 1e-12);
    }
    for (u64 x = 1; x < 101; ++x) REQUIRE(std::abs(t.eval(0, x) - std::complex<double>(1, 0)) < 1e-12);
    REQUIRE(t.eval(5, 0) == std::complex<double>(0, 0));
    REQUIRE(std::abs(std::abs(t.eval(7, 13)) - 1.0) < 1e-12);
}

TEST_CASE("orthogonality over x: sum of chi_j(x) is 0 unless j = 0") {
    for (u64 p : {13ull, 101ull}) {
        const CharacterTable t = CharacterTable::build(PrimeField::make(p));
        for (u64 j = 0; j < t.order; ++j) {
            KahanComplex acc;
            for (u64 x = 1; x < p; ++x) acc.add(t.eval(j, x));
            const double expect = j == 0 ? static_cast<double>(p - 1) : 0.0;
            REQUIRE(std::abs(acc.value() - std::complex<double>(expect, 0)) < 1e-9);
        }
    }
}

TEST_CASE("orthogonality over j: sum of chi_j(x) is 0 unless x = 1") {
    const u64 p = 101;
    const CharacterTable t = CharacterTable::build(PrimeField::make(p));
    for (u64 x = 1; x < p; ++x) {
        KahanComplex acc;
        for (u64 j = 0; j < t.order; ++j) acc.add(t.eval(j, x));
        const double expect = x == 1 ? static_cast<double>(p - 1) : 0.0;
        REQUIRE(std::abs(acc.value() - std::complex<double>(expect, 0)) < 1e-9);
    }
}

TEST_CASE("incomplete_char_sum equals the direct double loop") {
    const u64 p = 101;
    const CharacterTable t = CharacterTable::build(PrimeField::make(p));
    SplitMix64 rng(99);
    for (int trial = 0; trial < 10; ++trial) {
        const FpSet c = random_units(p, 3 + rng.below(8), rng.next());
        const FpSet ts = random_units(p, 3 + rng.below(8), rng.next());
        for (u64 j : {0ull, 1ull, 17ull, 99ull}) {
            KahanComplex direct;
            for (u64 z : c.elements()) {
                const u64 zi = mod_inverse(p, z);
                for (u64 tt : ts.elements())
                    direct.add(t.eval(j, (mul_mod(zi, tt, p) + p - 1) % p));
            }
            REQUIRE(std::abs(incomplete_char_sum(t, j, c, ts) - direct.value()) < 1e-9);
        }
    }
    REQUIRE_THROWS_AS(incomplete_char_sum(t, 1, FpSet::from_residues(p, {0, 2}), random_units(p, 3, 1)),
                      std::domain_error);
}

TEST_CASE("worst nonprincipal sum is attained and within the Weil-type bound") {
    for (u64 p : {101ull, 499ull}) {
        const CharacterTable t = CharacterTable::build(PrimeField::make(p));
        SplitMix64 rng(p);
        for (int trial = 0; trial < 5; ++trial) {
            const FpSet c = random_units(p, 4 + rng.below(10), rng.next());
            const FpSet ts = random_units(p, 4 + rng.below(10), rng.next());
            const double worst = worst_nonprincipal_char_sum(t, c, ts);
            const double bound =
                std::sqrt(static_cast<double>(p) * c.size() * ts.size());
            REQUIRE(worst <= bound + 1e-6);
            // attained: no nonprincipal j exceeds it, at least one matches
            double max_seen = 0.0;
            for (u64 j = 1; j < t.order; ++j)
                max_seen = std::max(max_seen, std::abs(incomplete_char_sum(t, j, c, ts)));
            REQUIRE(std::abs(max_seen - worst) < 1e-9);
        }
    }
}

TEST_CASE("brute and fast solution counts agree and handle edge content") {
    const u64 p = 101;
    SplitMix64 rng(123);
    for (int trial = 0; trial < 20; ++trial) {
        const FpSet x = random_units(p, 2 + rng.below(10), rng.next());
        const FpSet y = random_units(p, 2 + rng.below(10), rng.next());
        const FpSet z = random_units(p, 2 + rng.below(10), rng.next());
        const FpSet t = random_units(p, 2 + rng.below(10), rng.next());
        REQUIRE(count_solutions_brute(x, y, z, t) == count_solutions_fast(x, y, z, t));
    }
    const FpSet with_zero = FpSet::from_residues(p, {0, 3});
    const FpSet ok = FpSet::from_residues(p, {1, 2});
    REQUIRE_THROWS_AS(count_solutions_fast(with_zero, ok, ok, ok), std::domain_error);
    REQUIRE_THROWS_AS(count_solutions_fast(ok, ok, with_zero, ok), std::domain_error);
}

TEST_CASE("solution count on a worked example") {
    // x in {1,2}, y = z = 1, t in {2,3} over F_7: x = t - 1 gives exactly 2
    const FpSet x = FpSet::from_residues(7, {1, 2});
    const FpSet one = FpSet::from_residues(7, {1});
    const FpSet t = FpSet::from_residues(7, {2, 3});
    REQUIRE(count_solutions_fast(x, one, one, t) == 2);
    REQUIRE(count_solutions_brute(x, one, one, t) == 2);
}

TEST_CASE("theorem2_audit on a fixed tiny instance") {
    const FpSet a = FpSet::from_residues(7, {1, 2});
    const FpSet b = FpSet::from_residues(7, {1});
    const FpSet c = FpSet::from_residues(7, {1});
    const JAudit audit = theorem2_audit(a, b, c, Theorem2Options{true});
    REQUIRE(audit.solutions == 2);
    REQUIRE(audit.lower == 2);
    REQUIRE(audit.size_ab == 2);
    REQUIRE(audit.size_t == 2);
    REQUIRE(audit.decomposition_checked);
    REQUIRE(std::abs(audit.decomposition - 2.0) < 1e-6);
}

TEST_CASE("theorem2_audit sandwich holds on random instances") {
    SplitMix64 rng(7);
    for (u64 p : {101ull, 499ull}) {
        for (int trial = 0; trial < 5; ++trial) {
            const FpSet a = random_units(p, 6, rng.next(), true);
            const FpSet b = random_units(p, 6, rng.next());
            const FpSet c = random_units(p, 6, rng.next());
            const JAudit audit = theorem2_audit(a, b, c);
            REQUIRE(audit.solutions >= audit.lower);
            REQUIRE(static_cast<double>(audit.solutions) <=
                    (audit.upper_main + audit.upper_error) * (1.0 + 1e-9));
            REQUIRE(audit.char_worst <=
                    std::sqrt(static_cast<double>(p) * audit.size_c * audit.size_t) + 1e-6);
            REQUIRE(audit.min_bound > 0.0);
        }
    }
}

TEST_CASE("character decomposition recovers the exact count") {
    SplitMix64 rng(55);
    for (int trial = 0; trial < 3; ++trial) {
        const FpSet a = random_units(101, 4, rng.next(), true);
        const FpSet b = random_units(101, 4, rng.next());
        const FpSet c = random_units(101, 4, rng.next());
        const JAudit audit = theorem2_audit(a, b, c, Theorem2Options{true});
        const double rel = std::abs(audit.decomposition - static_cast<double>(audit.solutions)) /
                           std::max(1.0, static_cast<double>(audit.solutions));
        REQUIRE(rel <= 1e-6);
    }
}

TEST_CASE("theorem2_audit rejects degenerate inputs") {
    const FpSet ok = FpSet::from_residues(101, {1, 2});
    REQUIRE_THROWS_AS(theorem2_audit(FpSet::from_residues(101, {0, 1}), ok, ok),
                      std::domain_error);
    REQUIRE_THROWS_AS(theorem2_audit(ok, FpSet::from_residues(101, {0, 1}), ok),
                      std::domain_error);
    REQUIRE_THROWS_AS(theorem2_audit(FpSet::from_residues(101, {1, 100}), ok, ok),
                      std::domain_error);
    REQUIRE_THROWS_AS(theorem2_audit(FpSet::empty(101), ok, ok), std::domain_error);
}
