#include <catch2/catch_amalgamated.hpp>

#include "growthlab/incidence.hpp"

using namespace growthlab;

namespace {

std::vector<Rational> ints(std::initializer_list<i64> xs) {
    std::vector<Rational> out;
    for (i64 x : xs) out.emplace_back(x);
    return out;
}

std::vector<Rational> random_ints(u64 size, u64 value_max, u64 seed) {
    SplitMix64 rng(seed);
    std::vector<i64> vals;
    while (vals.size() < size) {
        const i64 v = static_cast<i64>(rng.below(value_max)) + 1;
        if (std::find(vals.begin(), vals.end(), v) == vals.end()) vals.push_back(v);
    }
    std::vector<Rational> out;
    for (i64 v : vals) out.emplace_back(v);
    return out;
}

} // namespace

TEST_CASE("Rational is always canonical") {
    REQUIRE(Rational(BigInt(2), BigInt(-4)) == Rational(BigInt(-1), BigInt(2)));
    REQUIRE(Rational(BigInt(0), BigInt(-7)) == Rational(0));
    REQUIRE(Rational(BigInt(6), BigInt(3)).is_integer());
    REQUIRE(Rational(BigInt(6), BigInt(3)).str() == "2");
    REQUIRE(Rational(BigInt(1), BigInt(3)).str() == "1/3");
    REQUIRE_THROWS_AS(Rational(BigInt(1), BigInt(0)), std::domain_error);
}

TEST_CASE("Rational arithmetic and ordering") {
    const Rational half(BigInt(1), BigInt(2)), third(BigInt(1), BigInt(3));
    REQUIRE(half + third == Rational(BigInt(5), BigInt(6)));
    REQUIRE(half - third == Rational(BigInt(1), BigInt(6)));
    REQUIRE(half * third == Rational(BigInt(1), BigInt(6)));
    REQUIRE(half / third == Rational(BigInt(3), BigInt(2)));
    REQUIRE(third < half);
    REQUIRE(Rational(-3) < Rational(BigInt(-1), BigInt(2)));
    REQUIRE_THROWS_AS(half / Rational(0), std::domain_error);
    // hash agrees on equal values built differently
    REQUIRE(RationalHash()(Rational(BigInt(2), BigInt(4))) ==
            RationalHash()(Rational(BigInt(-1), BigInt(-2))));
}

TEST_CASE("build_elekes_config on a fixed tiny instance") {
    const IncidenceConfig cfg = build_elekes_config(ints({1, 2}), ints({1}), ints({1}));
    REQUIRE(cfg.xs == ints({1, 2}));
    REQUIRE(cfg.ys == ints({2, 3}));
    REQUIRE(cfg.lines.size() == 1);
    REQUIRE(cfg.lines[0].slope == Rational(1));
    REQUIRE(cfg.lines[0].intercept == Rational(1));
    REQUIRE(cfg.integral);
    REQUIRE(cfg.point_count() == 4);
    REQUIRE(count_incidences(cfg) == 2);
}

TEST_CASE("build_elekes_config validates inputs") {
    REQUIRE_THROWS_AS(build_elekes_config(ints({0, 2}), ints({1}), ints({1})), std::domain_error);
    REQUIRE_THROWS_AS(build_elekes_config(ints({-1, 2}), ints({1}), ints({1})), std::domain_error);
    REQUIRE_THROWS_AS(build_elekes_config(ints({1}), ints({0}), ints({1})), std::domain_error);
    REQUIRE_THROWS_AS(build_elekes_config(ints({1}), ints({1}), ints({0})), std::domain_error);
    REQUIRE_THROWS_AS(build_elekes_config({}, ints({1}), ints({1})), std::domain_error);
}

TEST_CASE("line family has exactly |B||C| distinct lines") {
    const IncidenceConfig cfg =
        build_elekes_config(ints({1, 2, 3}), ints({1, 2, 4}), ints({1, 3, 9}));
    REQUIRE(cfg.line_count() == 9);
    for (const ElekesLine& l : cfg.lines) REQUIRE(l.slope == l.z / l.t);
}

TEST_CASE("all counting methods agree on integral configs") {
    SplitMix64 rng(2718);
    for (int trial = 0; trial < 10; ++trial) {
        const IncidenceConfig cfg = build_elekes_config(random_ints(5, 60, rng.next()),
                                                        random_ints(4, 60, rng.next()),
                                                        random_ints(4, 60, rng.next()));
        REQUIRE(cfg.integral);
        const u64 brute = count_incidences_with(cfg, IncidenceMethod::Brute);
        REQUIRE(count_incidences_with(cfg, IncidenceMethod::PerLine) == brute);
        REQUIRE(count_incidences_with(cfg, IncidenceMethod::Join) == brute);
        REQUIRE(count_incidences_with(cfg, IncidenceMethod::Divisor) == brute);
        REQUIRE(count_incidences(cfg) == brute);
    }
}

TEST_CASE("rational (non-integral) configs agree across their methods") {
    SplitMix64 rng(99);
    const Rational half(BigInt(1), BigInt(2)), third(BigInt(1), BigInt(3));
    for (int trial = 0; trial < 5; ++trial) {
        std::vector<Rational> a = random_ints(4, 40, rng.next());
        std::vector<Rational> b = random_ints(3, 40, rng.next());
        std::vector<Rational> c = random_ints(3, 40, rng.next());
        a.push_back(half + Rational(static_cast<i64>(rng.below(10))));
        b.push_back(third);
        const IncidenceConfig cfg = build_elekes_config(a, b, c);
        REQUIRE_FALSE(cfg.integral);
        const u64 brute = count_incidences_with(cfg, IncidenceMethod::Brute);
        REQUIRE(count_incidences_with(cfg, IncidenceMethod::PerLine) == brute);
        REQUIRE(count_incidences_with(cfg, IncidenceMethod::Join) == brute);
        REQUIRE(count_incidences(cfg) == brute);
    }
}

TEST_CASE("theorem3_audit on a fixed tiny instance") {
    const Theorem3Report rep = theorem3_audit(ints({1, 2}), ints({1}), ints({1}));
    REQUIRE(rep.incidences == 2);
    REQUIRE(rep.incidence_lower == 2);
    REQUIRE(rep.line_count == 1);
    REQUIRE(rep.prod_lhs == 4);
    REQUIRE(rep.growth_ok); // 16 >= 8
    REQUIRE(std::abs(rep.ratio - 4.0 / std::sqrt(8.0)) < 1e-12);
}

TEST_CASE("theorem3_audit holds on random integer triples") {
    SplitMix64 rng(31337);
    for (int trial = 0; trial < 6; ++trial) {
        const Theorem3Report rep = theorem3_audit(random_ints(8, 1000, rng.next()),
                                                  random_ints(8, 1000, rng.next()),
                                                  random_ints(8, 1000, rng.next()));
        REQUIRE(rep.incidences >= rep.incidence_lower);
        REQUIRE(rep.line_count == rep.size_b * rep.size_c);
        REQUIRE(rep.growth_ok);
        REQUIRE(rep.st_rhs > 0.0);
    }
}

TEST_CASE("theorem3_audit on structured (AP and GP) inputs") {
    // AP x AP: many coincidences between grid values, still exact
    const Theorem3Report ap = theorem3_audit(ints({2, 5, 8, 11}), ints({3, 6, 9}), ints({1, 4, 7}));
    REQUIRE(ap.incidences >= ap.incidence_lower);
    REQUIRE(ap.growth_ok);
    const Theorem3Report gp = theorem3_audit(ints({2, 4, 8, 16}), ints({3, 9, 27}), ints({5, 25}));
    REQUIRE(gp.incidences >= gp.incidence_lower);
    REQUIRE(gp.growth_ok);
}

TEST_CASE("incidence counting survives values near the int64 mirror boundary") {
    // large values force the rational fallback; small ones use int64 paths
    const i64 big = i64(1) << 40;
    const IncidenceConfig cfg =
        build_elekes_config(ints({big, big + 1}), ints({big + 2}), ints({big + 3}));
    REQUIRE_FALSE(cfg.integral); // products would pass 2^62
    const u64 brute = count_incidences_with(cfg, IncidenceMethod::Brute);
    REQUIRE(count_incidences(cfg) == brute);
}
