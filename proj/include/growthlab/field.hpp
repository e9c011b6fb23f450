#pragma once

#include <algorithm>
#include <vector>

#include "growthlab/common.hpp"

namespace growthlab {

// Deterministic Miller-Rabin. The witness set below is exact for all n < 3.3e24,
// which covers the full 64-bit range.
inline bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % q == 0) return n == q;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 0; i < s - 1; ++i) {
            x = mul_mod(x, x, n);
            if (x == n - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

// Distinct prime factors by trial division. Desk-scale inputs only (the
// moduli we handle keep p-1 well under 2^54).
inline std::vector<u64> distinct_prime_factors(u64 n) {
    std::vector<u64> out;
    for (u64 q = 2; q * q <= n; ++q) {
        if (n % q == 0) {
            out.push_back(q);
            while (n % q == 0) n /= q;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

inline u64 mod_inverse(u64 p, u64 x) {
    x %= p;
    if (x == 0) throw std::domain_error("mod_inverse: x is divisible by p");
    return pow_mod(x, p - 2, p);
}

// Smallest primitive root mod p. "Smallest" (not "any") so that repeated
// experiments are reproducible.
inline u64 find_primitive_root(u64 p) {
    if (!is_prime(p)) throw std::domain_error("find_primitive_root: modulus is not prime");
    if (p == 2) return 1;
    const std::vector<u64> qs = distinct_prime_factors(p - 1);
    for (u64 g = 2; g < p; ++g) {
        bool ok = true;
        for (u64 q : qs) {
            if (pow_mod(g, (p - 1) / q, p) == 1) { ok = false; break; }
        }
        if (ok) return g;
    }
    throw audit_error("find_primitive_root: no generator found (impossible for prime p)");
}

struct PrimeField {
    u64 p;
    u64 g;

    static PrimeField make(u64 p) { return PrimeField{p, find_primitive_root(p)}; }

    bool has_primitive_root() const {
        if (p == 2) return g == 1;
        if (g == 0 || g >= p) return false;
        for (u64 q : distinct_prime_factors(p - 1)) {
            if (pow_mod(g, (p - 1) / q, p) == 1) return false;
        }
        return true;
    }
};

// Full index of F_p*: log_of[x] is the k in [0, p-2] with g^k = x.
// Dense array, so we cap p explicitly instead of degrading.
struct DlogTable {
    static constexpr u64 kMaxModulus = u64(1) << 27;

    PrimeField field;
    std::vector<u64> log_of; // index 0 unused

    static DlogTable build(const PrimeField& field) {
        if (field.p >= kMaxModulus)
            throw resource_error("DlogTable: modulus exceeds the dense-table cap 2^27");
        if (!field.has_primitive_root())
            throw std::domain_error("DlogTable: g is not a primitive root mod p");
        DlogTable t{field, std::vector<u64>(field.p, 0)};
        u64 x = 1;
        for (u64 k = 0; k + 1 < field.p; ++k) {
            t.log_of[x] = k;
            x = mul_mod(x, field.g, field.p);
        }
        return t;
    }

    u64 log(u64 x) const {
        if (x == 0 || x >= field.p) throw std::domain_error("DlogTable::log: x outside F_p*");
        return log_of[x];
    }
};

} // namespace growthlab
