#pragma once

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "growthlab/common.hpp"
#include "growthlab/rational.hpp"

namespace growthlab {

// Line y = (z/t) x + z, keyed by its source pair (z, t) in C x B.
struct ElekesLine {
    Rational slope;
    Rational intercept;
    Rational z;
    Rational t;
};

// Point grid AB x (A+1)C plus the line family {l(z,t)}. The grid is stored
// as its two axes; |points| is their product.
struct IncidenceConfig {
    std::vector<Rational> source_a, source_b, source_c;
    std::vector<Rational> xs; // AB, sorted
    std::vector<Rational> ys; // (A+1)C, sorted
    std::vector<ElekesLine> lines;

    // int64 mirror, valid when every value involved fits comfortably
    bool integral = false;
    std::vector<i64> xs_i, ys_i, b_i, c_i;

    u64 point_count() const { return static_cast<u64>(xs.size()) * ys.size(); }
    u64 line_count() const { return static_cast<u64>(lines.size()); }
};

namespace detail {

inline std::vector<Rational> sorted_unique(std::vector<Rational> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

inline bool fits_i64(const BigInt& v) {
    static const BigInt lo = std::numeric_limits<i64>::min();
    static const BigInt hi = std::numeric_limits<i64>::max();
    return v >= lo && v <= hi;
}

// int64 mirror is used only when cross products stay below 2^62
inline bool integral_mirror(const std::vector<Rational>& vals, std::vector<i64>& out) {
    out.clear();
    out.reserve(vals.size());
    for (const Rational& r : vals) {
        if (!r.is_integer() || !fits_i64(r.num)) return false;
        out.push_back(static_cast<i64>(r.num));
    }
    return true;
}

inline i64 max_abs(const std::vector<i64>& v) {
    i64 m = 0;
    for (i64 x : v) m = std::max(m, std::abs(x));
    return m;
}

struct I64PairHash {
    std::size_t operator()(const std::pair<i64, i64>& p) const {
        u64 h = static_cast<u64>(p.first) * 0x9e3779b97f4a7c15ull;
        h ^= static_cast<u64>(p.second) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        return static_cast<std::size_t>(h);
    }
};

// binary gcd of positive inputs; noticeably faster than std::gcd in the
// multi-million-call join/divisor loops
inline u64 gcd_u64(u64 a, u64 b) {
    if (a == 0) return b;
    if (b == 0) return a;
    const int shift = __builtin_ctzll(a | b);
    a >>= __builtin_ctzll(a);
    while (b != 0) {
        b >>= __builtin_ctzll(b);
        if (a > b) std::swap(a, b);
        b -= a;
    }
    return a << shift;
}

// reduced n/d with d > 0
inline std::pair<i64, i64> reduce_i64(i64 n, i64 d) {
    if (n == 0) return {0, 1};
    i64 g = static_cast<i64>(gcd_u64(static_cast<u64>(std::abs(n)), static_cast<u64>(std::abs(d))));
    n /= g;
    d /= g;
    if (d < 0) {
        n = -n;
        d = -d;
    }
    return {n, d};
}

} // namespace detail

// Points AB x (A+1)C, lines y = (z/t)x + z for (z,t) in C x B. Inputs must
// avoid the degeneracies the configuration needs: A disjoint from {0,-1},
// 0 outside B and C.
inline IncidenceConfig build_elekes_config(std::vector<Rational> a, std::vector<Rational> b,
                                           std::vector<Rational> c) {
    a = detail::sorted_unique(std::move(a));
    b = detail::sorted_unique(std::move(b));
    c = detail::sorted_unique(std::move(c));
    if (a.empty() || b.empty() || c.empty())
        throw std::domain_error("build_elekes_config: empty input set");
    const Rational zero(0), minus_one(-1);
    for (const Rational& v : a)
        if (v == zero || v == minus_one)
            throw std::domain_error("build_elekes_config: A must avoid {0, -1}");
    for (const Rational& v : b)
        if (v == zero) throw std::domain_error("build_elekes_config: 0 in B");
    for (const Rational& v : c)
        if (v == zero) throw std::domain_error("build_elekes_config: 0 in C");

    IncidenceConfig cfg;
    std::vector<Rational> xs, ys;
    xs.reserve(a.size() * b.size());
    ys.reserve(a.size() * c.size());
    const Rational one(1);
    for (const Rational& av : a) {
        for (const Rational& bv : b) xs.push_back(av * bv);
        for (const Rational& cv : c) ys.push_back((av + one) * cv);
    }
    cfg.xs = detail::sorted_unique(std::move(xs));
    cfg.ys = detail::sorted_unique(std::move(ys));

    // (z,t) -> line is injective (intercept recovers z, slope then t), but we
    // deduplicate canonically anyway and check the claimed cardinality.
    for (const Rational& zv : c) {
        for (const Rational& tv : b) cfg.lines.push_back(ElekesLine{zv / tv, zv, zv, tv});
    }
    std::sort(cfg.lines.begin(), cfg.lines.end(), [](const ElekesLine& l, const ElekesLine& r) {
        if (l.slope != r.slope) return l.slope < r.slope;
        return l.intercept < r.intercept;
    });
    for (std::size_t i = 1; i < cfg.lines.size(); ++i) {
        if (cfg.lines[i].slope == cfg.lines[i - 1].slope &&
            cfg.lines[i].intercept == cfg.lines[i - 1].intercept)
            throw audit_error("build_elekes_config: distinct (z,t) produced equal lines");
    }
    if (cfg.lines.size() != b.size() * c.size())
        throw audit_error("build_elekes_config: |lines| != |B||C|");

    cfg.source_a = std::move(a);
    cfg.source_b = std::move(b);
    cfg.source_c = std::move(c);

    // int64 fast path: everything integral and products far from overflow
    std::vector<i64> xi, yi, bi, ci;
    if (detail::integral_mirror(cfg.xs, xi) && detail::integral_mirror(cfg.ys, yi) &&
        detail::integral_mirror(cfg.source_b, bi) && detail::integral_mirror(cfg.source_c, ci)) {
        const unsigned __int128 lim = static_cast<unsigned __int128>(1) << 62;
        const u64 mx = static_cast<u64>(detail::max_abs(xi));
        const u64 my = static_cast<u64>(detail::max_abs(yi));
        const u64 mb = static_cast<u64>(detail::max_abs(bi));
        const u64 mc = static_cast<u64>(detail::max_abs(ci));
        if (static_cast<unsigned __int128>(mc) * (static_cast<unsigned __int128>(mx) + mb) < lim &&
            static_cast<unsigned __int128>(my) * mb < lim) {
            cfg.integral = true;
            cfg.xs_i = std::move(xi);
            cfg.ys_i = std::move(yi);
            cfg.b_i = std::move(bi);
            cfg.c_i = std::move(ci);
        }
    }
    return cfg;
}

namespace detail {

// O(|P||L|) substitution over materialized points. Tiny configs only.
inline u64 incidences_brute(const IncidenceConfig& cfg) {
    u64 count = 0;
    for (const Rational& x : cfg.xs)
        for (const Rational& y : cfg.ys)
            for (const ElekesLine& l : cfg.lines)
                if (y == l.slope * x + l.intercept) ++count;
    return count;
}

// Per line, evaluate y(x) over the x-axis and look the value up on the
// y-axis (canonical-rational keyed).
inline u64 incidences_per_line_rational(const IncidenceConfig& cfg) {
    std::unordered_set<Rational, RationalHash> ys(cfg.ys.begin(), cfg.ys.end());
    u64 count = 0;
    for (const ElekesLine& l : cfg.lines)
        for (const Rational& x : cfg.xs)
            if (ys.count(l.slope * x + l.intercept)) ++count;
    return count;
}

inline u64 incidences_per_line_i64(const IncidenceConfig& cfg) {
    std::unordered_set<i64> ys(cfg.ys_i.begin(), cfg.ys_i.end());
    u64 count = 0;
    for (i64 t : cfg.b_i) {
        for (i64 z : cfg.c_i) {
            // y = z (x + t) / t
            for (i64 x : cfg.xs_i) {
                const i64 num = z * (x + t);
                if (num % t == 0 && ys.count(num / t)) ++count;
            }
        }
    }
    return count;
}

// (x,y) on l(z,t) iff y/z = x/t + 1: join the two ratio multisets.
inline u64 incidences_join_rational(const IncidenceConfig& cfg) {
    const Rational one(1);
    std::unordered_map<Rational, u64, RationalHash> mult;
    for (const Rational& x : cfg.xs)
        for (const Rational& t : cfg.source_b) ++mult[x / t + one];
    u64 count = 0;
    for (const Rational& y : cfg.ys)
        for (const Rational& z : cfg.source_c) {
            auto it = mult.find(y / z);
            if (it != mult.end()) count += it->second;
        }
    return count;
}

// packs a reduced nonnegative ratio n/d into one u64 when it fits
inline bool pack_ratio(i64 n, i64 d, u64& out) {
    if (n < 0 || n >= (i64(1) << 42) || d >= (i64(1) << 21)) return false;
    out = (static_cast<u64>(n) << 21) | static_cast<u64>(d);
    return true;
}

inline u64 join_sorted_merge(std::vector<u64>& left, std::vector<u64>& right) {
    std::sort(left.begin(), left.end());
    std::sort(right.begin(), right.end());
    u64 count = 0;
    std::size_t i = 0, j = 0;
    while (i < left.size() && j < right.size()) {
        if (left[i] < right[j]) {
            ++i;
        } else if (right[j] < left[i]) {
            ++j;
        } else {
            std::size_t i2 = i, j2 = j;
            while (i2 < left.size() && left[i2] == left[i]) ++i2;
            while (j2 < right.size() && right[j2] == right[j]) ++j2;
            count += static_cast<u64>(i2 - i) * (j2 - j);
            i = i2;
            j = j2;
        }
    }
    return count;
}

// fast path: every reduced ratio on both sides packs into a u64 key
inline bool incidences_join_i64_packed(const IncidenceConfig& cfg, u64& count) {
    std::vector<u64> left, right;
    left.reserve(cfg.xs_i.size() * cfg.b_i.size());
    right.reserve(cfg.ys_i.size() * cfg.c_i.size());
    u64 key;
    for (i64 x : cfg.xs_i)
        for (i64 t : cfg.b_i) {
            const auto [n, d] = reduce_i64(x + t, t);
            if (!pack_ratio(n, d, key)) return false;
            left.push_back(key);
        }
    for (i64 y : cfg.ys_i)
        for (i64 z : cfg.c_i) {
            const auto [n, d] = reduce_i64(y, z);
            if (!pack_ratio(n, d, key)) return false;
            right.push_back(key);
        }
    count = join_sorted_merge(left, right);
    return true;
}

inline u64 incidences_join_i64(const IncidenceConfig& cfg) {
    u64 packed_count;
    if (incidences_join_i64_packed(cfg, packed_count)) return packed_count;
    // sorted-vector join: build both reduced-ratio multisets, sort, merge.
    // Much faster than hashing at the multi-million-pair scale.
    std::vector<std::pair<i64, i64>> left, right;
    left.reserve(cfg.xs_i.size() * cfg.b_i.size());
    right.reserve(cfg.ys_i.size() * cfg.c_i.size());
    for (i64 x : cfg.xs_i)
        for (i64 t : cfg.b_i) left.push_back(reduce_i64(x + t, t)); // x/t + 1 = (x+t)/t
    for (i64 y : cfg.ys_i)
        for (i64 z : cfg.c_i) right.push_back(reduce_i64(y, z));
    std::sort(left.begin(), left.end());
    std::sort(right.begin(), right.end());
    u64 count = 0;
    std::size_t i = 0, j = 0;
    while (i < left.size() && j < right.size()) {
        if (left[i] < right[j]) {
            ++i;
        } else if (right[j] < left[i]) {
            ++j;
        } else {
            std::size_t i2 = i, j2 = j;
            while (i2 < left.size() && left[i2] == left[i]) ++i2;
            while (j2 < right.size() && right[j2] == right[j]) ++j2;
            count += static_cast<u64>(i2 - i) * (j2 - j);
            i = i2;
            j = j2;
        }
    }
    return count;
}

// Third exact route for integral data: for each (z, y) the slope condition
// forces t = d k, x = n k with (n, d) = reduced (y-z)/z, so walk multiples
// of d inside B's value range.
inline u64 incidences_divisor_i64(const IncidenceConfig& cfg) {
    std::unordered_set<i64> bset(cfg.b_i.begin(), cfg.b_i.end());
    std::unordered_set<i64> xset(cfg.xs_i.begin(), cfg.xs_i.end());
    const i64 max_b = max_abs(cfg.b_i);
    const i64 max_x = max_abs(cfg.xs_i);
    u64 count = 0;
    for (i64 z : cfg.c_i) {
        for (i64 y : cfg.ys_i) {
            if (y == z) {
                // x/t = 0 for every t, so x = 0
                if (xset.count(0)) count += cfg.b_i.size();
                continue;
            }
            const auto [n, d] = reduce_i64(y - z, z);
            if (max_b / d >= static_cast<i64>(cfg.b_i.size())) {
                // small denominator: walking its multiples would be longer
                // than just scanning B for members divisible by d
                for (i64 t : cfg.b_i) {
                    if (t % d != 0) continue;
                    const __int128 xc = static_cast<__int128>(n) * (t / d);
                    if (xc > max_x || xc < -static_cast<__int128>(max_x)) continue;
                    if (xset.count(static_cast<i64>(xc))) ++count;
                }
                continue;
            }
            for (i64 sign : {i64(1), i64(-1)}) {
                for (i64 k = sign;; k += sign) {
                    const i64 t = d * k;
                    if (std::abs(t) > max_b) break;
                    const __int128 xc = static_cast<__int128>(n) * k;
                    if (xc > max_x || xc < -static_cast<__int128>(max_x)) break;
                    if (bset.count(t) && xset.count(static_cast<i64>(xc))) ++count;
                }
            }
        }
    }
    return count;
}

} // namespace detail

// Names the independent counting routes; exposed so tests can cross them.
enum class IncidenceMethod { Brute, PerLine, Join, Divisor };

inline u64 count_incidences_with(const IncidenceConfig& cfg, IncidenceMethod m) {
    switch (m) {
        case IncidenceMethod::Brute:
            return detail::incidences_brute(cfg);
        case IncidenceMethod::PerLine:
            return cfg.integral ? detail::incidences_per_line_i64(cfg)
                                : detail::incidences_per_line_rational(cfg);
        case IncidenceMethod::Join:
            return cfg.integral ? detail::incidences_join_i64(cfg)
                                : detail::incidences_join_rational(cfg);
        case IncidenceMethod::Divisor:
            return detail::incidences_divisor_i64(cfg);
    }
    throw std::logic_error("unreachable");
}

// Exact incidence count, always computed by two independent routes which
// must agree. Route choice is by cost only; every route is exact.
inline u64 count_incidences(const IncidenceConfig& cfg) {
    const double np = static_cast<double>(cfg.point_count());
    const double nl = static_cast<double>(cfg.line_count());
    const double nx = static_cast<double>(cfg.xs.size());
    const double ny = static_cast<double>(cfg.ys.size());

    std::vector<std::pair<double, IncidenceMethod>> candidates;
    const double rational_penalty = cfg.integral ? 1.0 : 40.0;
    if (np * nl < 4e6) candidates.push_back({np * nl * 40.0, IncidenceMethod::Brute});
    candidates.push_back({nl * nx * rational_penalty, IncidenceMethod::PerLine});
    candidates.push_back(
        {(nx * cfg.source_b.size() + ny * cfg.source_c.size()) * 8.0 * rational_penalty,
         IncidenceMethod::Join});
    if (cfg.integral)
        candidates.push_back({ny * cfg.source_c.size() * 24.0, IncidenceMethod::Divisor});
    std::sort(candidates.begin(), candidates.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    const u64 first = count_incidences_with(cfg, candidates[0].second);
    const u64 second = count_incidences_with(cfg, candidates[1].second);
    if (first != second)
        throw audit_error("count_incidences: independent counting methods disagree");
    return first;
}

struct Theorem3Report {
    u64 size_a = 0, size_b = 0, size_c = 0;
    u64 size_ab = 0, size_t = 0;
    u64 line_count = 0;
    u64 incidences = 0;
    u64 incidence_lower = 0; // |A||B||C|
    u64 prod_lhs = 0;        // |AB| * |(A+1)C|
    bool growth_ok = false;  // prod_lhs >= sqrt(|A|^3 |B||C|), exact
    double ratio = 0.0;      // prod_lhs / sqrt(|A|^3 |B||C|)
    double st_rhs = 0.0;     // |P| + |L| + c_st (|P||L|)^{2/3}
    bool st_within = false;  // incidences <= st_rhs (reported, not asserted)
};

// Audits the whole Elekes configuration: each line carries the |A| witness
// points (at, (a+1)z) exactly, total incidences reach |A||B||C|, and the
// product-set growth inequality holds as an exact integer comparison. The
// Szemeredi-Trotter side is reported against a configurable constant.
inline Theorem3Report theorem3_audit(const std::vector<Rational>& a, const std::vector<Rational>& b,
                                     const std::vector<Rational>& c, double c_st = 2.5) {
    const IncidenceConfig cfg = build_elekes_config(a, b, c);

    Theorem3Report rep;
    rep.size_a = cfg.source_a.size();
    rep.size_b = cfg.source_b.size();
    rep.size_c = cfg.source_c.size();
    rep.size_ab = cfg.xs.size();
    rep.size_t = cfg.ys.size();
    rep.line_count = cfg.line_count();

    // (i) witnesses (at, (a+1)z) for a in A: on the line, in the grid,
    // pairwise distinct (x = at is injective in a).
    std::vector<i64> a_i;
    if (cfg.integral && detail::integral_mirror(cfg.source_a, a_i)) {
        // int64 route: y = z(x+t)/t cleared to y*t == z*(x+t); products stay
        // below 2^62 by the mirror's admission check
        std::unordered_set<i64> xs_set(cfg.xs_i.begin(), cfg.xs_i.end());
        std::unordered_set<i64> ys_set(cfg.ys_i.begin(), cfg.ys_i.end());
        for (i64 z : cfg.c_i) {
            for (i64 t : cfg.b_i) {
                for (i64 av : a_i) {
                    const i64 x = av * t;
                    const i64 y = (av + 1) * z;
                    if (static_cast<__int128>(y) * t != static_cast<__int128>(z) * (x + t))
                        throw audit_error("theorem3_audit: witness point fell off its line");
                    if (!xs_set.count(x) || !ys_set.count(y))
                        throw audit_error("theorem3_audit: witness point outside the grid");
                }
            }
        }
    } else {
        const Rational one(1);
        std::unordered_set<Rational, RationalHash> xs_set(cfg.xs.begin(), cfg.xs.end());
        std::unordered_set<Rational, RationalHash> ys_set(cfg.ys.begin(), cfg.ys.end());
        for (const ElekesLine& l : cfg.lines) {
            for (const Rational& av : cfg.source_a) {
                const Rational x = av * l.t;
                const Rational y = (av + one) * l.z;
                if (y != l.slope * x + l.intercept)
                    throw audit_error("theorem3_audit: witness point fell off its line");
                if (!xs_set.count(x) || !ys_set.count(y))
                    throw audit_error("theorem3_audit: witness point outside the grid");
            }
        }
    }

    rep.incidences = count_incidences(cfg);
    rep.incidence_lower = rep.size_a * rep.size_b * rep.size_c;
    if (rep.incidences < rep.incidence_lower)
        throw audit_error("theorem3_audit: incidences below |A||B||C|");

    rep.prod_lhs = rep.size_ab * rep.size_t;
    const unsigned __int128 lhs_sq =
        static_cast<unsigned __int128>(rep.prod_lhs) * rep.prod_lhs;
    const unsigned __int128 rhs_sq = static_cast<unsigned __int128>(rep.size_a) * rep.size_a *
                                     rep.size_a * rep.size_b * rep.size_c;
    rep.growth_ok = lhs_sq >= rhs_sq;
    rep.ratio = static_cast<double>(rep.prod_lhs) /
                std::sqrt(static_cast<double>(rep.size_a) * rep.size_a * rep.size_a * rep.size_b *
                          rep.size_c);

    const double np = static_cast<double>(cfg.point_count());
    const double nl = static_cast<double>(cfg.line_count());
    rep.st_rhs = np + nl + c_st * std::pow(np * nl, 2.0 / 3.0);
    rep.st_within = static_cast<double>(rep.incidences) <= rep.st_rhs;
    return rep;
}

} // namespace growthlab
