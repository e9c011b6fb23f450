#pragma once

#include <algorithm>
#include <utility>
#include <variant>
#include <vector>

#include "growthlab/common.hpp"
#include "growthlab/field.hpp"

namespace growthlab {

// Subset of F_p, the universal currency of all the set arithmetic here.
// Dense membership bits give O(1) lookup; the sorted element list drives
// the O(|A||B|) kernels. Immutable after construction.
class FpSet {
public:
    FpSet() = default;

    static FpSet empty(u64 p) {
        check_modulus(p);
        FpSet s;
        s.p_ = p;
        s.bits_.assign(p, false);
        return s;
    }

    // Elements are normalized to canonical residues in [0, p-1);
    // negative inputs wrap.
    static FpSet from_elements(u64 p, const std::vector<i64>& xs) {
        FpSet s = empty(p);
        for (i64 x : xs) {
            i64 r = x % static_cast<i64>(p);
            if (r < 0) r += static_cast<i64>(p);
            s.bits_[static_cast<u64>(r)] = true;
        }
        s.finalize();
        return s;
    }

    static FpSet from_residues(u64 p, std::vector<u64> xs) {
        FpSet s = empty(p);
        for (u64 x : xs) s.bits_[x % p] = true;
        s.finalize();
        return s;
    }

    static FpSet full_units(u64 p) {
        FpSet s = empty(p);
        for (u64 x = 1; x < p; ++x) s.bits_[x] = true;
        s.finalize();
        return s;
    }

    u64 modulus() const { return p_; }
    u64 size() const { return static_cast<u64>(elems_.size()); }
    bool is_empty() const { return elems_.empty(); }
    bool contains(u64 x) const { return x < p_ && bits_[x]; }
    const std::vector<u64>& elements() const { return elems_; }

    bool operator==(const FpSet& o) const { return p_ == o.p_ && elems_ == o.elems_; }

private:
    static void check_modulus(u64 p) {
        if (p < 2 || p >= DlogTable::kMaxModulus)
            throw std::domain_error("FpSet: modulus out of supported range");
    }

    void finalize() {
        elems_.clear();
        for (u64 x = 0; x < p_; ++x)
            if (bits_[x]) elems_.push_back(x);
    }

    friend class FpSetBuilder;

    u64 p_ = 0;
    std::vector<bool> bits_;
    std::vector<u64> elems_;
};

// Accumulates residues into a bit array, then freezes into an FpSet.
class FpSetBuilder {
public:
    explicit FpSetBuilder(u64 p) : set_(FpSet::empty(p)) {}
    void insert(u64 x) { set_.bits_[x % set_.p_] = true; }
    FpSet build() {
        set_.finalize();
        return std::move(set_);
    }

private:
    FpSet set_;
};

inline void require_same_modulus(const FpSet& a, const FpSet& b, const char* op) {
    if (a.modulus() != b.modulus())
        throw std::domain_error(std::string(op) + ": modulus mismatch");
}

inline FpSet sumset(const FpSet& a, const FpSet& b) {
    require_same_modulus(a, b, "sumset");
    const u64 p = a.modulus();
    FpSetBuilder out(p);
    for (u64 x : a.elements())
        for (u64 y : b.elements()) out.insert(x + y >= p ? x + y - p : x + y);
    return out.build();
}

inline FpSet product_set(const FpSet& a, const FpSet& b) {
    require_same_modulus(a, b, "product_set");
    const u64 p = a.modulus();
    FpSetBuilder out(p);
    for (u64 x : a.elements())
        for (u64 y : b.elements()) out.insert(mul_mod(x, y, p));
    return out.build();
}

// {c*a + d : a in A}
inline FpSet affine_image(const FpSet& a, u64 c, u64 d) {
    const u64 p = a.modulus();
    c %= p;
    d %= p;
    FpSetBuilder out(p);
    for (u64 x : a.elements()) out.insert(mul_mod(c, x, p) + d);
    return out.build();
}

inline FpSet difference_set(const FpSet& a, const FpSet& b) {
    require_same_modulus(a, b, "difference_set");
    return sumset(a, affine_image(b, b.modulus() - 1, 0));
}

// A(A+1) = {a * (a' + 1) : a, a' in A}
inline FpSet shifted_product(const FpSet& a) {
    return product_set(a, affine_image(a, 1, 1));
}

inline FpSet two_a_minus_two_a(const FpSet& a) {
    FpSet aa = sumset(a, a);
    return difference_set(aa, aa);
}

// A pair relation E inside A x B, the graph the BSG lemma restricts to.
struct PairRelation {
    FpSet left;
    FpSet right;
    std::vector<std::pair<u64, u64>> pairs;

    static PairRelation make(FpSet a, FpSet b, std::vector<std::pair<u64, u64>> pairs) {
        require_same_modulus(a, b, "PairRelation");
        std::sort(pairs.begin(), pairs.end());
        pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
        for (const auto& [x, y] : pairs) {
            if (!a.contains(x) || !b.contains(y))
                throw std::domain_error("PairRelation: pair outside A x B");
        }
        return PairRelation{std::move(a), std::move(b), std::move(pairs)};
    }

    static PairRelation full(const FpSet& a, const FpSet& b) {
        std::vector<std::pair<u64, u64>> ps;
        ps.reserve(a.size() * b.size());
        for (u64 x : a.elements())
            for (u64 y : b.elements()) ps.emplace_back(x, y);
        return make(a, b, std::move(ps));
    }
};

// {a - b : (a, b) in E}
inline FpSet restricted_difference(const PairRelation& e) {
    const u64 p = e.left.modulus();
    FpSetBuilder out(p);
    for (const auto& [a, b] : e.pairs) out.insert(a + p - b);
    return out.build();
}

// (A1 - A1) / (A1 - A1), denominators nonzero.
inline FpSet ratio_set(const FpSet& a1) {
    if (a1.size() < 2) throw std::domain_error("ratio_set: need at least 2 elements");
    const u64 p = a1.modulus();
    FpSet diff = difference_set(a1, a1);
    FpSetBuilder out(p);
    for (u64 n : diff.elements()) {
        for (u64 d : diff.elements()) {
            if (d == 0) continue;
            out.insert(mul_mod(n, mod_inverse(p, d), p));
        }
    }
    return out.build();
}

struct AllOfFp {};
struct GkQuadruple {
    u64 b1, b2, b3, b4;
};
using GkResult = std::variant<AllOfFp, GkQuadruple>;

// Either (A1-A1)/(A1-A1) covers F_p, or some quadruple's shifted ratio
// escapes it. Returns the lexicographically first such quadruple over the
// sorted elements of A1. A failure of both branches would falsify the
// dichotomy, so it throws rather than returning anything.
inline GkResult gk_dichotomy(const FpSet& a1) {
    if (a1.size() < 2) throw std::domain_error("gk_dichotomy: need at least 2 elements");
    const u64 p = a1.modulus();
    FpSet ratios = ratio_set(a1);
    if (ratios.size() == p) return AllOfFp{};
    for (u64 b1 : a1.elements())
        for (u64 b2 : a1.elements())
            for (u64 b3 : a1.elements())
                for (u64 b4 : a1.elements()) {
                    if (b3 == b4) continue;
                    u64 r = mul_mod(b1 + p - b2, mod_inverse(p, b3 + p - b4), p);
                    u64 check = (r + p - 1) % p;
                    if (!ratios.contains(check)) return GkQuadruple{b1, b2, b3, b4};
                }
    throw audit_error("gk_dichotomy: ratio set is proper yet no escaping quadruple exists");
}

} // namespace growthlab
