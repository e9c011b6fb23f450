#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace growthlab {

using u64 = std::uint64_t;
using i64 = std::int64_t;

// Raised when an exact check that should hold by theorem fails on real data.
// Never swallowed: reaching a catch block for this means the math (or the
// implementation) is wrong, and callers must surface it loudly.
struct audit_error : std::runtime_error {
    explicit audit_error(const std::string& what) : std::runtime_error(what) {}
};

// Raised when an input exceeds a documented capability cap (table too large,
// exhaustive search infeasible).
struct resource_error : std::runtime_error {
    explicit resource_error(const std::string& what) : std::runtime_error(what) {}
};

inline u64 mul_mod(u64 a, u64 b, u64 p) {
    return static_cast<u64>(static_cast<unsigned __int128>(a) * b % p);
}

inline u64 pow_mod(u64 base, u64 exp, u64 p) {
    u64 r = 1 % p;
    base %= p;
    while (exp) {
        if (exp & 1) r = mul_mod(r, base, p);
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    return r;
}

// floor(sqrt(n)) for 64-bit n, exact.
inline u64 isqrt(u64 n) {
    if (n == 0) return 0;
    u64 r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

// SplitMix64. Fixed algorithm so seeded runs reproduce across platforms.
struct SplitMix64 {
    u64 state;
    explicit SplitMix64(u64 seed) : state(seed) {}
    u64 next() {
        u64 z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    // uniform in [0, bound)
    u64 below(u64 bound) { return next() % bound; }
};

} // namespace growthlab
