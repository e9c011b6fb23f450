#pragma once

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "growthlab/common.hpp"
#include "growthlab/field.hpp"
#include "growthlab/fp_set.hpp"

namespace growthlab {

// Witness set A inside the exponent window {g^{L+1}, ..., g^{L+M}} whose
// elements all have a+1 a small power of g. Achieves |A(A+1)| on the order
// of sqrt(p|A|).
struct ExtremalResult {
    u64 p = 0;
    u64 requested_size = 0; // N
    u64 g = 0;
    u64 window_length = 0; // M = floor(2*sqrt(N*p))
    u64 window_offset = 0; // L
    FpSet a;
    u64 window_count = 0;
};

// Maximizes, over circular offsets L in [0, m), the number of exponents in
// `logs` lying in the window {L+1, ..., L+M} mod m. Ties go to the smallest L.
// O(|logs| + m).
inline std::pair<u64, u64> best_window_offset(const std::vector<u64>& logs, u64 window_length,
                                              u64 cycle) {
    if (cycle < 1) throw std::domain_error("best_window_offset: cycle must be positive");
    if (logs.empty()) return {0, 0};
    if (window_length >= cycle) return {0, static_cast<u64>(logs.size())};

    // prefix[i] = number of logs < i
    std::vector<u64> prefix(cycle + 1, 0);
    for (u64 k : logs) {
        if (k >= cycle) throw std::domain_error("best_window_offset: log outside [0, cycle)");
        ++prefix[k + 1];
    }
    for (u64 i = 1; i <= cycle; ++i) prefix[i] += prefix[i - 1];

    auto count_at = [&](u64 offset) {
        u64 lo = (offset + 1) % cycle;
        u64 hi = (offset + window_length) % cycle;
        if (lo <= hi) return prefix[hi + 1] - prefix[lo];
        return (prefix[cycle] - prefix[lo]) + prefix[hi + 1];
    };

    u64 best_offset = 0, best_count = count_at(0);
    for (u64 offset = 1; offset < cycle; ++offset) {
        u64 c = count_at(offset);
        if (c > best_count) {
            best_count = c;
            best_offset = offset;
        }
    }
    return {best_offset, best_count};
}

// Builds A = X cap {g^{L+1},...,g^{L+M}} where X = {g^n - 1 : n = 1..M},
// M = floor(2*sqrt(Np)), and L is the pigeonhole-best window offset.
inline ExtremalResult build_extremal_set(u64 p, u64 requested_size) {
    if (!is_prime(p)) throw std::domain_error("build_extremal_set: p is not prime");
    if (requested_size == 0) throw std::domain_error("build_extremal_set: N must be positive");
    if (10 * requested_size >= p)
        throw std::domain_error("build_extremal_set: precondition N < 0.1p violated");

    const u64 window_length = isqrt(4 * requested_size * p); // floor(2*sqrt(Np))
    if (window_length < 1 || window_length > p - 2)
        throw std::domain_error("build_extremal_set: window length M out of [1, p-2]");

    const PrimeField field = PrimeField::make(p);
    const DlogTable table = DlogTable::build(field);
    const u64 cycle = p - 1;

    // X = {g^n - 1 : n = 1..M}, tracked by the discrete log of each element.
    // g^n - 1 = 0 would need (p-1) | n, impossible for n <= M <= p-2, but we
    // filter anyway and record if it ever fires.
    std::vector<u64> logs;
    logs.reserve(window_length);
    u64 zero_hits = 0;
    u64 power = 1;
    std::vector<bool> seen(p, false);
    for (u64 n = 1; n <= window_length; ++n) {
        power = mul_mod(power, field.g, p);
        const u64 x = (power + p - 1) % p;
        if (x == 0) {
            ++zero_hits;
            continue;
        }
        if (!seen[x]) {
            seen[x] = true;
            logs.push_back(table.log_of[x]);
        }
    }
    if (zero_hits != 0)
        throw audit_error("build_extremal_set: g^n - 1 vanished for n <= M (impossible)");
    std::sort(logs.begin(), logs.end());

    const auto [offset, count] = best_window_offset(logs, window_length, cycle);

    FpSetBuilder builder(p);
    for (u64 k : logs) {
        u64 j = (k + cycle - (offset + 1) % cycle) % cycle; // position within window
        if (j < window_length) builder.insert(pow_mod(field.g, k, p));
    }
    ExtremalResult result{p, requested_size, field.g, window_length, offset, builder.build(), count};

    if (result.a.size() != count)
        throw audit_error("build_extremal_set: window count disagrees with materialized set");
    if (count < requested_size)
        throw audit_error("build_extremal_set: pigeonhole failed, |A| < N");
    return result;
}

struct ExtremalReport {
    bool pass = false;
    u64 product_size = 0;   // |A(A+1)| by brute force
    double ratio = 0.0;     // |A(A+1)| / sqrt(p |A|)
    std::string detail;
};

// Recomputes A(A+1) with an independent double loop and checks the exact
// consequences of the construction. Structural invariant violations are
// reported, not thrown, so hand-built bogus results can be diagnosed.
inline ExtremalReport verify_extremal(const ExtremalResult& r) {
    ExtremalReport rep;
    std::ostringstream why;

    const u64 p = r.p;
    if (!is_prime(p) || r.a.modulus() != p) {
        rep.detail = "invalid field data";
        return rep;
    }
    if (r.window_length != isqrt(4 * r.requested_size * p)) {
        rep.detail = "M != floor(2*sqrt(Np))";
        return rep;
    }
    const PrimeField field{p, r.g};
    if (!field.has_primitive_root()) {
        rep.detail = "g is not a primitive root";
        return rep;
    }
    const DlogTable table = DlogTable::build(field);
    const u64 cycle = p - 1;
    for (u64 a : r.a.elements()) {
        if (a == 0 || a + 1 == p) {
            rep.detail = "element with a = 0 or a + 1 = 0";
            return rep;
        }
        const u64 shift_log = table.log_of[a + 1]; // a+1 = g^n with 1 <= n <= M
        const u64 n = shift_log == 0 ? cycle : shift_log;
        if (n > r.window_length) {
            why << "element " << a << ": a+1 = g^" << n << " outside {g^1..g^M}";
            rep.detail = why.str();
            return rep;
        }
        const u64 j = (table.log_of[a] + cycle - (r.window_offset + 1) % cycle) % cycle;
        if (j >= r.window_length) {
            why << "element " << a << " outside the exponent window";
            rep.detail = why.str();
            return rep;
        }
    }
    if (r.a.size() != r.window_count || r.window_count < r.requested_size) {
        rep.detail = "|A| disagrees with window_count or |A| < N";
        return rep;
    }

    // brute-force A(A+1)
    std::vector<bool> hit(p, false);
    u64 card = 0;
    for (u64 a : r.a.elements())
        for (u64 b : r.a.elements()) {
            u64 v = mul_mod(a, (b + 1) % p, p);
            if (!hit[v]) {
                hit[v] = true;
                ++card;
            }
        }
    rep.product_size = card;
    rep.ratio = static_cast<double>(card) / std::sqrt(static_cast<double>(p) * r.a.size());

    if (card > 2 * r.window_length) {
        why << "|A(A+1)| = " << card << " exceeds 2M = " << 2 * r.window_length;
        rep.detail = why.str();
        return rep;
    }
    // |A(A+1)| <= 4 sqrt(p|A|), compared as integers: card^2 <= 16 p |A|
    if (static_cast<unsigned __int128>(card) * card >
        static_cast<unsigned __int128>(16) * p * r.a.size()) {
        why << "|A(A+1)| = " << card << " exceeds 4*sqrt(p|A|)";
        rep.detail = why.str();
        return rep;
    }
    rep.pass = true;
    rep.detail = "ok";
    return rep;
}

} // namespace growthlab
