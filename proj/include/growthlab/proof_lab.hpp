#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <unordered_set>
#include <vector>

#include "growthlab/common.hpp"
#include "growthlab/fp_set.hpp"

namespace growthlab {

namespace detail {

inline void require_shift_safe(const FpSet& a, const char* who) {
    if (a.is_empty()) throw std::domain_error(std::string(who) + ": empty set");
    if (a.contains(0) || a.contains(a.modulus() - 1))
        throw std::domain_error(std::string(who) + ": A must avoid {0, -1}");
}

// counts[i] = |(a_i + 1)A cap (b0 + 1)A| for each a_i in A
inline std::vector<u64> anchor_counts(const FpSet& a, u64 b0) {
    const u64 p = a.modulus();
    std::vector<bool> anchor_bits(p, false);
    for (u64 x : a.elements()) anchor_bits[mul_mod(b0 + 1, x, p)] = true;
    std::vector<u64> counts;
    counts.reserve(a.size());
    for (u64 av : a.elements()) {
        u64 c = 0;
        for (u64 x : a.elements()) c += anchor_bits[mul_mod(av + 1, x, p)];
        counts.push_back(c);
    }
    return counts;
}

} // namespace detail

// The anchor b0 in A maximizing sum over a of |(a+1)A cap (b0+1)A| (ties to
// the smallest element), with the averaging inequality
// total * |A(A+1)| >= |A|^3 checked as exact integers.
inline std::pair<u64, u64> popular_anchor(const FpSet& a) {
    detail::require_shift_safe(a, "popular_anchor");
    u64 best_b0 = 0, best_total = 0;
    bool first = true;
    for (u64 b0 : a.elements()) {
        u64 total = 0;
        for (u64 c : detail::anchor_counts(a, b0)) total += c;
        if (first || total > best_total) {
            best_b0 = b0;
            best_total = total;
            first = false;
        }
    }
    const u64 card_shifted = shifted_product(a).size();
    const unsigned __int128 lhs = static_cast<unsigned __int128>(best_total) * card_shifted;
    const unsigned __int128 rhs =
        static_cast<unsigned __int128>(a.size()) * a.size() * a.size();
    if (lhs < rhs) throw audit_error("popular_anchor: total * |A(A+1)| < |A|^3");
    return {best_b0, best_total};
}

// Level set A1 = {a : N <= |(a+1)A cap (b0+1)A| < 2N} plus the dyadic class
// structure around it.
struct AnchorDecomposition {
    FpSet a;
    u64 b0 = 0;
    u64 total = 0;       // sum of all counts
    u64 level = 0;       // N
    FpSet a1;
    u64 class_count = 0; // nonempty dyadic classes among the counts
    double paper_form_rhs = 0.0; // |A|^3 / (2 |A(A+1)| log2 |A|)
    bool paper_form_ok = false;  // N |A1| >= paper_form_rhs
};

// Chooses N maximizing N * |A1(N)| over all candidate levels (ties toward
// larger N), where A1(N) collects the counts in [N, 2N). The exact pigeonhole
// N * |A1| * class_count >= total is asserted; class_count comes from the
// dyadic partition of the nonzero counts.
inline AnchorDecomposition dyadic_levels(const FpSet& a, u64 b0) {
    detail::require_shift_safe(a, "dyadic_levels");
    if (!a.contains(b0)) throw std::domain_error("dyadic_levels: b0 not in A");

    const std::vector<u64> counts = detail::anchor_counts(a, b0);
    const std::vector<u64>& elems = a.elements();

    u64 total = 0, max_count = 0;
    std::unordered_set<u64> classes;
    for (u64 c : counts) {
        total += c;
        max_count = std::max(max_count, c);
        if (c > 0) {
            u64 k = 0;
            while ((u64(2) << k) <= c) ++k; // c in [2^k, 2^{k+1})
            classes.insert(k);
        }
    }
    if (max_count == 0) throw audit_error("dyadic_levels: all counts zero despite b0 in A");

    u64 best_level = 0, best_value = 0;
    for (u64 level = 1; level <= max_count; ++level) {
        u64 members = 0;
        for (u64 c : counts)
            if (level <= c && c < 2 * level) ++members;
        const u64 value = level * members;
        if (value > best_value || (value == best_value && level > best_level)) {
            best_value = value;
            best_level = level;
        }
    }

    FpSetBuilder a1(a.modulus());
    u64 a1_size = 0;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        if (best_level <= counts[i] && counts[i] < 2 * best_level) {
            a1.insert(elems[i]);
            ++a1_size;
        }
    }

    AnchorDecomposition dec{a, b0, total, best_level, a1.build(),
                            static_cast<u64>(classes.size())};
    if (dec.a1.size() != a1_size) throw audit_error("dyadic_levels: duplicate class members");
    if (dec.level * dec.a1.size() * dec.class_count < total)
        throw audit_error("dyadic_levels: pigeonhole N|A1|*classes < total failed");

    const u64 card_shifted = shifted_product(a).size();
    const double la = std::log2(static_cast<double>(a.size()));
    dec.paper_form_rhs = la > 0
        ? static_cast<double>(a.size()) * a.size() * a.size() / (2.0 * card_shifted * la)
        : 0.0;
    dec.paper_form_ok = static_cast<double>(dec.level) * dec.a1.size() >= dec.paper_form_rhs;
    return dec;
}

struct InjectionRecord {
    u64 b0 = 0, b1 = 0, b2 = 0, b3 = 0, b4 = 0;
    u64 size_s = 0;       // |(b1-b2)A + (b3-b4)A|
    u64 level = 0;        // N from the decomposition
    u64 size_diff = 0;    // |A - A|
    u64 size_2a2a = 0;    // |2A - 2A|
    u64 domain_size = 0;  // |S| * |S1| * |S2| * |S3| * |S4|
    bool injective = false;
    bool counting_ok = false; // |S| N^4 <= |A-A|^4 |2A-2A|
    double ratio_ks = 0.0;    // |S| / (|A1|^3 / |A-A|)
};

// Builds the five-coordinate map from S x S1 x ... x S4 into
// (2A-2A) x (A-A)^4 with fixed first-found representations, checks the
// recovery identity on every tuple, proves injectivity by exhaustive image
// comparison, and checks the counting inequality exactly.
inline InjectionRecord bg_injection_audit(const FpSet& a, const AnchorDecomposition& dec,
                                          const GkQuadruple& q) {
    detail::require_shift_safe(a, "bg_injection_audit");
    const u64 p = a.modulus();
    if (p >= 7131) throw resource_error("bg_injection_audit: p too large for packed image keys");
    for (u64 b : {q.b1, q.b2, q.b3, q.b4})
        if (!dec.a1.contains(b)) throw std::domain_error("bg_injection_audit: b_i not in A1");

    const u64 c1 = (q.b1 + p - q.b2) % p; // b1 - b2
    const u64 c2 = (q.b3 + p - q.b4) % p; // b3 - b4

    // S with one fixed representation x = c1 a(x) + c2 a'(x), first found
    // under ascending (a, a') iteration.
    std::vector<u64> rep_a(p, p), rep_ap(p, p);
    FpSetBuilder s_builder(p);
    for (u64 av : a.elements()) {
        const u64 lhs = mul_mod(c1, av, p);
        for (u64 apv : a.elements()) {
            const u64 x = (lhs + mul_mod(c2, apv, p)) % p;
            if (rep_a[x] == p) {
                rep_a[x] = av;
                rep_ap[x] = apv;
            }
            s_builder.insert(x);
        }
    }
    const FpSet s = s_builder.build();

    // S_i = (b_i+1)A cap (b0+1)A; the two representations of x_i are unique
    // because multiplication by a unit is a bijection.
    const u64 inv_b0 = mod_inverse(p, (dec.b0 + 1) % p);
    std::array<std::vector<u64>, 4> s_i;        // elements
    std::array<std::vector<u64>, 4> rep_i;      // a_i(x_i) aligned with s_i
    std::array<std::vector<u64>, 4> rep_i_p;    // a_i'(x_i)
    const std::array<u64, 4> bs{q.b1, q.b2, q.b3, q.b4};
    FpSet anchor_img = affine_image(a, (dec.b0 + 1) % p, 0);
    for (int i = 0; i < 4; ++i) {
        const u64 inv_bi = mod_inverse(p, (bs[i] + 1) % p);
        for (u64 av : a.elements()) {
            const u64 x = mul_mod((bs[i] + 1) % p, av, p);
            if (anchor_img.contains(x)) {
                s_i[i].push_back(x);
                rep_i[i].push_back(mul_mod(x, inv_bi, p));
                rep_i_p[i].push_back(mul_mod(x, inv_b0, p));
            }
        }
        if (s_i[i].empty())
            throw audit_error("bg_injection_audit: empty S_i despite b_i in A1");
    }

    const FpSet diff = difference_set(a, a);
    const FpSet two2 = two_a_minus_two_a(a);

    InjectionRecord rec;
    rec.b0 = dec.b0;
    rec.b1 = q.b1;
    rec.b2 = q.b2;
    rec.b3 = q.b3;
    rec.b4 = q.b4;
    rec.size_s = s.size();
    rec.level = dec.level;
    rec.size_diff = diff.size();
    rec.size_2a2a = two2.size();
    rec.domain_size =
        s.size() * s_i[0].size() * s_i[1].size() * s_i[2].size() * s_i[3].size();

    std::unordered_set<u64> images;
    images.reserve(rec.domain_size * 2);
    const u64 k1 = (q.b1 + 1) % p, k2 = (q.b2 + 1) % p, k3 = (q.b3 + 1) % p,
              k4 = (q.b4 + 1) % p, k0 = (dec.b0 + 1) % p;
    for (u64 x : s.elements()) {
        const u64 ax = rep_a[x], apx = rep_ap[x];
        for (std::size_t i1 = 0; i1 < s_i[0].size(); ++i1)
            for (std::size_t i2 = 0; i2 < s_i[1].size(); ++i2)
                for (std::size_t i3 = 0; i3 < s_i[2].size(); ++i3)
                    for (std::size_t i4 = 0; i4 < s_i[3].size(); ++i4) {
                        const u64 u = (rep_i_p[0][i1] + p - rep_i_p[1][i2] + rep_i_p[2][i3] + p -
                                       rep_i_p[3][i4]) %
                                      p;
                        const u64 u1 = (ax + p - rep_i[0][i1]) % p;
                        const u64 u2 = (ax + p - rep_i[1][i2]) % p;
                        const u64 u3 = (apx + p - rep_i[2][i3]) % p;
                        const u64 u4 = (apx + p - rep_i[3][i4]) % p;
                        if (!two2.contains(u) || !diff.contains(u1) || !diff.contains(u2) ||
                            !diff.contains(u3) || !diff.contains(u4))
                            throw audit_error("bg_injection_audit: image outside its codomain");
                        const u64 recovered =
                            (mul_mod(k1, u1, p) + p - mul_mod(k2, u2, p) + mul_mod(k3, u3, p) +
                             p - mul_mod(k4, u4, p) + mul_mod(k0, u, p)) %
                            p;
                        if (recovered != x)
                            throw audit_error("bg_injection_audit: recovery identity failed");
                        const u64 key = (((u * p + u1) * p + u2) * p + u3) * p + u4;
                        if (!images.insert(key).second)
                            throw audit_error("bg_injection_audit: image collision, map not injective");
                    }
    }
    rec.injective = true;

    const unsigned __int128 n4 = static_cast<unsigned __int128>(rec.level) * rec.level *
                                 rec.level * rec.level;
    const unsigned __int128 lhs = static_cast<unsigned __int128>(rec.size_s) * n4;
    const unsigned __int128 rhs = static_cast<unsigned __int128>(rec.size_diff) * rec.size_diff *
                                  rec.size_diff * rec.size_diff * rec.size_2a2a;
    if (lhs > rhs) throw audit_error("bg_injection_audit: |S| N^4 > |A-A|^4 |2A-2A|");
    rec.counting_ok = true;

    const double a1s = static_cast<double>(dec.a1.size());
    rec.ratio_ks = static_cast<double>(rec.size_s) * rec.size_diff / (a1s * a1s * a1s);
    return rec;
}

struct BsgWitness {
    bool found = false;
    FpSet a_prime;
    u64 min_size = 0; // ceil(0.1 |A| / K)
};

// Exhaustive search for the BSG witness subset A' of A, smallest subsets
// first. All comparisons are integer after clearing the rational K = |A||B|/|E|:
//   |A -E B|^4 * 10^4 * (|A||B|)^5  >=  |A'-A'| * |A| * |B|^2 * |E|^5.
// Returning "not found" would falsify the lemma, hence the audit_error.
inline BsgWitness bsg_witness_search(const FpSet& a, const FpSet& b, const PairRelation& e) {
    if (e.pairs.empty()) throw std::domain_error("bsg_witness_search: empty relation");
    if (a.size() > 12)
        throw resource_error("bsg_witness_search: exhaustive subset search capped at |A| <= 12");
    require_same_modulus(a, b, "bsg_witness_search");

    const u64 p = a.modulus();
    const u64 na = a.size(), nb = b.size(), ne = e.pairs.size();
    const u64 d4 = restricted_difference(e).size();

    unsigned __int128 lhs = static_cast<unsigned __int128>(d4) * d4 * d4 * d4 * 10000;
    const unsigned __int128 nanb = static_cast<unsigned __int128>(na) * nb;
    for (int i = 0; i < 5; ++i) lhs *= nanb;

    const unsigned __int128 ne5 =
        static_cast<unsigned __int128>(ne) * ne * ne * ne * ne;
    const unsigned __int128 rhs_fixed = static_cast<unsigned __int128>(na) * nb * nb * ne5;

    const u64 min_size = std::max<u64>(1, (ne + 10 * nb - 1) / (10 * nb)); // ceil(|E|/(10|B|))
    const std::vector<u64>& elems = a.elements();

    std::vector<u64> idx;
    for (u64 size = min_size; size <= na; ++size) {
        // combinations of `size` indices in lexicographic order
        idx.assign(size, 0);
        for (u64 i = 0; i < size; ++i) idx[i] = i;
        while (true) {
            u64 diff_card = 0;
            std::vector<bool> seen(p, false);
            for (u64 i : idx)
                for (u64 j : idx) {
                    const u64 d = (elems[i] + p - elems[j]) % p;
                    if (!seen[d]) {
                        seen[d] = true;
                        ++diff_card;
                    }
                }
            if (lhs >= static_cast<unsigned __int128>(diff_card) * rhs_fixed) {
                std::vector<u64> chosen;
                for (u64 i : idx) chosen.push_back(elems[i]);
                return BsgWitness{true, FpSet::from_residues(p, chosen), min_size};
            }
            // next combination
            i64 pos = static_cast<i64>(size) - 1;
            while (pos >= 0 && idx[pos] == na - size + pos) --pos;
            if (pos < 0) break;
            ++idx[pos];
            for (u64 j = pos + 1; j < size; ++j) idx[j] = idx[j - 1] + 1;
        }
    }
    throw audit_error("bsg_witness_search: exhausted all subsets, lemma falsified");
}

struct RuzsaReport {
    u64 size_a = 0, size_aa = 0, size_shifted = 0;
    bool ok = false; // |AA| |A| <= |A(A+1)|^2
};

// Multiplicative Ruzsa triangle: |AA| <= |A(A+1)|^2 / |A|, exact integers.
inline RuzsaReport ruzsa_mult_audit(const FpSet& a) {
    detail::require_shift_safe(a, "ruzsa_mult_audit");
    RuzsaReport rep;
    rep.size_a = a.size();
    rep.size_aa = product_set(a, a).size();
    rep.size_shifted = shifted_product(a).size();
    const unsigned __int128 lhs = static_cast<unsigned __int128>(rep.size_aa) * rep.size_a;
    const unsigned __int128 rhs =
        static_cast<unsigned __int128>(rep.size_shifted) * rep.size_shifted;
    if (lhs > rhs) throw audit_error("ruzsa_mult_audit: |AA||A| > |A(A+1)|^2");
    rep.ok = true;
    return rep;
}

struct Lemma2Report {
    u64 size_a = 0, size_diff = 0, size_2a2a = 0, size_shifted = 0;
    double exponent = 0.0;        // (8 ln|A-A| + 4 ln|A(A+1)|) / ln|A|
    bool above_13 = false;        // report flag, o(1) is not machine checkable
    double sketch_exponent = 0.0; // (5 ln|A-A| + ln|2A-2A| + 4 ln|A(A+1)|) / ln|A|
    bool sketch_above_11 = false;
};

inline Lemma2Report lemma2_audit(const FpSet& a) {
    if (a.size() < 2) throw std::domain_error("lemma2_audit: need |A| >= 2");
    if (a.size() * a.size() >= a.modulus())
        throw std::domain_error("lemma2_audit: requires |A| < sqrt(p)");
    Lemma2Report rep;
    rep.size_a = a.size();
    rep.size_diff = difference_set(a, a).size();
    rep.size_2a2a = two_a_minus_two_a(a).size();
    rep.size_shifted = shifted_product(a).size();
    const double la = std::log(static_cast<double>(rep.size_a));
    rep.exponent = (8.0 * std::log(static_cast<double>(rep.size_diff)) +
                    4.0 * std::log(static_cast<double>(rep.size_shifted))) /
                   la;
    rep.above_13 = rep.exponent >= 13.0;
    rep.sketch_exponent = (5.0 * std::log(static_cast<double>(rep.size_diff)) +
                           std::log(static_cast<double>(rep.size_2a2a)) +
                           4.0 * std::log(static_cast<double>(rep.size_shifted))) /
                          la;
    rep.sketch_above_11 = rep.sketch_exponent >= 11.0;
    return rep;
}

struct Theorem1Report {
    u64 size_a = 0, size_shifted = 0;
    double beta = 0.0;    // ln|A(A+1)| / ln|A|
    bool above = false;   // beta >= 106/105
    double k_ratio = 0.0; // |A(A+1)| / |A|
};

inline Theorem1Report theorem1_exponent(const FpSet& a) {
    if (a.size() < 2) throw std::domain_error("theorem1_exponent: need |A| >= 2");
    if (a.size() * a.size() >= a.modulus())
        throw std::domain_error("theorem1_exponent: requires |A| < sqrt(p)");
    Theorem1Report rep;
    rep.size_a = a.size();
    rep.size_shifted = shifted_product(a).size();
    rep.beta = std::log(static_cast<double>(rep.size_shifted)) /
               std::log(static_cast<double>(rep.size_a));
    rep.above = rep.beta >= 106.0 / 105.0;
    rep.k_ratio = static_cast<double>(rep.size_shifted) / rep.size_a;
    return rep;
}

} // namespace growthlab
