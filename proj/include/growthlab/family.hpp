#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "growthlab/common.hpp"
#include "growthlab/extremal.hpp"
#include "growthlab/field.hpp"
#include "growthlab/fp_set.hpp"
#include "growthlab/rational.hpp"

namespace growthlab {

enum class FamilyKind { Random, Interval, Ap, Gp, Extremal };

inline FamilyKind family_kind_from_string(const std::string& s) {
    if (s == "random") return FamilyKind::Random;
    if (s == "interval") return FamilyKind::Interval;
    if (s == "ap") return FamilyKind::Ap;
    if (s == "gp") return FamilyKind::Gp;
    if (s == "extremal") return FamilyKind::Extremal;
    throw std::invalid_argument("unknown family kind: " + s);
}

inline std::string to_string(FamilyKind k) {
    switch (k) {
        case FamilyKind::Random: return "random";
        case FamilyKind::Interval: return "interval";
        case FamilyKind::Ap: return "ap";
        case FamilyKind::Gp: return "gp";
        case FamilyKind::Extremal: return "extremal";
    }
    return "?";
}

struct FamilySpec {
    FamilyKind kind = FamilyKind::Random;
    u64 p = 0;
    u64 size = 0;      // target cardinality (N for the extremal kind)
    u64 start = 1;     // interval / ap / gp
    u64 step = 1;      // ap
    u64 generator = 0; // gp ratio; 0 means "use the primitive root"
    u64 seed = 0;
};

// Deterministic for a fixed seed on every platform (SplitMix64 stream).
// Excluded residues (the audits' {0, -1} preconditions) are skipped during
// generation, with a bounded retry budget for the random kind.
inline FpSet generate_family(const FamilySpec& spec, const std::vector<u64>& exclude = {}) {
    if (!is_prime(spec.p)) throw std::invalid_argument("generate_family: p must be prime");
    const u64 p = spec.p;
    if (spec.size == 0) throw std::invalid_argument("generate_family: size must be positive");

    std::vector<bool> excluded(p, false);
    u64 excluded_count = 0;
    for (u64 e : exclude) {
        if (!excluded[e % p]) {
            excluded[e % p] = true;
            ++excluded_count;
        }
    }
    if (spec.kind != FamilyKind::Extremal && spec.size > p - excluded_count)
        throw std::invalid_argument("generate_family: size exceeds available residues");

    std::vector<bool> taken(p, false);
    std::vector<u64> out;
    out.reserve(spec.size);
    auto take = [&](u64 x) {
        x %= p;
        if (excluded[x] || taken[x]) return false;
        taken[x] = true;
        out.push_back(x);
        return true;
    };

    switch (spec.kind) {
        case FamilyKind::Random: {
            SplitMix64 rng(spec.seed);
            u64 budget = 1000 * spec.size + 1000;
            while (out.size() < spec.size && budget-- > 0) take(rng.below(p));
            if (out.size() < spec.size)
                throw std::invalid_argument("generate_family: retry budget exhausted");
            break;
        }
        case FamilyKind::Interval: {
            u64 x = spec.start % p;
            for (u64 attempts = 0; out.size() < spec.size; ++attempts) {
                if (attempts > p) throw std::invalid_argument("generate_family: interval wrapped");
                take(x);
                x = (x + 1) % p;
            }
            break;
        }
        case FamilyKind::Ap: {
            if (spec.step % p == 0) throw std::invalid_argument("generate_family: step is 0 mod p");
            u64 x = spec.start % p;
            for (u64 attempts = 0; out.size() < spec.size; ++attempts) {
                if (attempts > p) throw std::invalid_argument("generate_family: ap cycled");
                take(x);
                x = (x + spec.step) % p;
            }
            break;
        }
        case FamilyKind::Gp: {
            const u64 ratio = spec.generator ? spec.generator % p : find_primitive_root(p);
            if (ratio == 0) throw std::invalid_argument("generate_family: gp ratio is 0 mod p");
            u64 x = spec.start % p;
            if (x == 0) throw std::invalid_argument("generate_family: gp start is 0 mod p");
            for (u64 attempts = 0; out.size() < spec.size; ++attempts) {
                if (attempts > p) throw std::invalid_argument("generate_family: gp cycled");
                take(x);
                x = mul_mod(x, ratio, p);
            }
            break;
        }
        case FamilyKind::Extremal:
            return build_extremal_set(p, spec.size).a;
    }
    return FpSet::from_residues(p, out);
}

// Integer-valued families for the real/rational incidence audits.
// `value_max` bounds the sampled values for the random kind.
inline std::vector<Rational> generate_integer_family(FamilyKind kind, u64 size, u64 value_max,
                                                     u64 seed, u64 start = 2, u64 step = 3,
                                                     u64 ratio = 2) {
    if (size == 0) throw std::invalid_argument("generate_integer_family: size must be positive");
    std::vector<Rational> out;
    out.reserve(size);
    switch (kind) {
        case FamilyKind::Random: {
            if (value_max < size + 1)
                throw std::invalid_argument("generate_integer_family: value_max too small");
            SplitMix64 rng(seed);
            std::vector<i64> vals;
            u64 budget = 1000 * size + 1000;
            while (vals.size() < size && budget-- > 0) {
                i64 v = static_cast<i64>(rng.below(value_max)) + 1;
                if (std::find(vals.begin(), vals.end(), v) == vals.end()) vals.push_back(v);
            }
            if (vals.size() < size)
                throw std::invalid_argument("generate_integer_family: retry budget exhausted");
            for (i64 v : vals) out.emplace_back(v);
            break;
        }
        case FamilyKind::Ap:
            for (u64 k = 0; k < size; ++k)
                out.emplace_back(static_cast<i64>(start + k * step));
            break;
        case FamilyKind::Gp: {
            BigInt v = start;
            for (u64 k = 0; k < size; ++k) {
                out.push_back(Rational(v, BigInt(1)));
                v *= ratio;
            }
            break;
        }
        default:
            throw std::invalid_argument("generate_integer_family: unsupported kind");
    }
    return out;
}

} // namespace growthlab
