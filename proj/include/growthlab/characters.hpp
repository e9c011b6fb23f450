#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "growthlab/common.hpp"
#include "growthlab/field.hpp"
#include "growthlab/fp_set.hpp"

namespace growthlab {

// Compensated (Kahan) accumulator for complex doubles, used by every
// character sum so bounds checked at 1e-9 stay meaningful.
class KahanComplex {
public:
    void add(std::complex<double> v) {
        add_part(re_, re_c_, v.real());
        add_part(im_, im_c_, v.imag());
    }
    std::complex<double> value() const { return {re_, im_}; }

private:
    static void add_part(double& sum, double& comp, double v) {
        double y = v - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    double re_ = 0, im_ = 0, re_c_ = 0, im_c_ = 0;
};

// Multiplicative characters mod p: chi_j(x) = zeta^(j * log x) with
// zeta = e^{2 pi i/(p-1)}, chi_j(0) = 0, chi_0 principal.
struct CharacterTable {
    DlogTable dlog;
    u64 order; // p - 1
    std::vector<std::complex<double>> unit; // unit[k] = e^{2 pi i k / order}

    static CharacterTable build(const PrimeField& field) {
        CharacterTable t{DlogTable::build(field), field.p - 1, {}};
        t.unit.resize(t.order);
        for (u64 k = 0; k < t.order; ++k) {
            double angle = 2.0 * std::numbers::pi * static_cast<double>(k) /
                           static_cast<double>(t.order);
            t.unit[k] = std::polar(1.0, angle);
        }
        return t;
    }

    u64 p() const { return dlog.field.p; }

    std::complex<double> eval(u64 j, u64 x) const {
        x %= p();
        if (x == 0) return {0.0, 0.0};
        return unit[mul_mod(j % order, dlog.log_of[x], order)];
    }
};

// Histogram of log(z^{-1} t - 1) over (z, t) in C x T; zero arguments are
// dropped (chi(0) = 0). Shared by the per-character sum and the worst-case
// scan so both see identical arguments.
inline std::vector<u64> shifted_ratio_log_histogram(const CharacterTable& table, const FpSet& c,
                                                    const FpSet& t_set) {
    const u64 p = table.p();
    if (c.contains(0)) throw std::domain_error("incomplete_char_sum: 0 in C");
    if (c.modulus() != p || t_set.modulus() != p)
        throw std::domain_error("incomplete_char_sum: modulus mismatch");
    std::vector<u64> hist(table.order, 0);
    for (u64 z : c.elements()) {
        const u64 zi = mod_inverse(p, z);
        for (u64 t : t_set.elements()) {
            const u64 arg = (mul_mod(zi, t, p) + p - 1) % p;
            if (arg != 0) ++hist[table.dlog.log_of[arg]];
        }
    }
    return hist;
}

// sum over z in C, t in T of chi_j(z^{-1} t - 1)
inline std::complex<double> incomplete_char_sum(const CharacterTable& table, u64 j, const FpSet& c,
                                                const FpSet& t_set) {
    const std::vector<u64> hist = shifted_ratio_log_histogram(table, c, t_set);
    KahanComplex acc;
    j %= table.order;
    for (u64 l = 0; l < table.order; ++l) {
        if (hist[l] == 0) continue;
        acc.add(static_cast<double>(hist[l]) * table.unit[mul_mod(j, l, table.order)]);
    }
    return acc.value();
}

// max over nonprincipal j of |incomplete_char_sum(j, C, T)|
inline double worst_nonprincipal_char_sum(const CharacterTable& table, const FpSet& c,
                                          const FpSet& t_set) {
    const std::vector<u64> hist = shifted_ratio_log_histogram(table, c, t_set);
    double worst = 0.0;
    for (u64 j = 1; j < table.order; ++j) {
        KahanComplex acc;
        for (u64 l = 0; l < table.order; ++l) {
            if (hist[l] == 0) continue;
            acc.add(static_cast<double>(hist[l]) * table.unit[mul_mod(j, l, table.order)]);
        }
        worst = std::max(worst, std::abs(acc.value()));
    }
    return worst;
}

namespace detail {
inline void check_solution_domains(const FpSet& x, const FpSet& y, const FpSet& z,
                                   const FpSet& t) {
    const u64 p = x.modulus();
    if (y.modulus() != p || z.modulus() != p || t.modulus() != p)
        throw std::domain_error("count_solutions: modulus mismatch");
    if (x.contains(0) || z.contains(0))
        throw std::domain_error("count_solutions: zero in an inverted position");
}
} // namespace detail

// Exact number of (x,y,z,t) in X x Y x Z x T with x^{-1} y (z^{-1} t - 1) = 1,
// by full quadruple enumeration. The innermost loop compares y(z^{-1}t - 1)
// against each x in turn.
inline u64 count_solutions_brute(const FpSet& x_set, const FpSet& y_set, const FpSet& z_set,
                                 const FpSet& t_set) {
    detail::check_solution_domains(x_set, y_set, z_set, t_set);
    const u64 p = x_set.modulus();
    const std::vector<u64>& xs = x_set.elements();
    u64 count = 0;
    for (u64 z : z_set.elements()) {
        const u64 zi = mod_inverse(p, z);
        for (u64 t : t_set.elements()) {
            const u64 r = (mul_mod(zi, t, p) + p - 1) % p;
            for (u64 y : y_set.elements()) {
                const u64 v = mul_mod(y, r, p);
                u64 hits = 0;
                for (u64 x : xs) hits += (x == v);
                count += hits;
            }
        }
    }
    return count;
}

// Same count in O(|Y||Z||T|): x is determined as y(z^{-1}t - 1), so test
// membership against X's bit array.
inline u64 count_solutions_fast(const FpSet& x_set, const FpSet& y_set, const FpSet& z_set,
                                const FpSet& t_set) {
    detail::check_solution_domains(x_set, y_set, z_set, t_set);
    const u64 p = x_set.modulus();
    u64 count = 0;
    for (u64 z : z_set.elements()) {
        const u64 zi = mod_inverse(p, z);
        for (u64 t : t_set.elements()) {
            const u64 r = (mul_mod(zi, t, p) + p - 1) % p;
            if (r == 0) continue; // argument 0 cannot land in X (0 not in X)
            for (u64 y : y_set.elements()) {
                if (x_set.contains(mul_mod(y, r, p))) ++count;
            }
        }
    }
    return count;
}

// Everything the Theorem 2 proof asserts about one (A, B, C) instance.
struct JAudit {
    u64 p = 0;
    u64 size_a = 0, size_b = 0, size_c = 0;
    u64 size_ab = 0, size_t = 0; // |AB|, |(A+1)C|
    u64 solutions = 0;           // J, exact (both methods agree)
    u64 lower = 0;               // |A||B||C|
    double upper_main = 0.0;     // |AB||B||C||T|/(p-1)
    double upper_error = 0.0;    // sqrt(p |C||T||AB||B|)
    double char_worst = 0.0;     // max nonprincipal |incomplete sum|
    double min_bound = 0.0;      // min(p|A|, |A|^2|B||C|/p)
    double ratio = 0.0;          // |AB||T| / min_bound
    double decomposition = 0.0;  // J recovered from the character sum (if run)
    bool decomposition_checked = false;
};

struct Theorem2Options {
    bool check_decomposition = false; // direct character decomposition of J
};

// Full audit of the J-counting argument: both J methods, the exact sandwich
// |A||B||C| <= J <= |AB||B||C||T|/(p-1) + sqrt(p|C||T||AB||B|), the worst
// nonprincipal character sum, and optionally the character decomposition of
// J itself. Exact-bound failures would falsify the theorem and throw.
inline JAudit theorem2_audit(const FpSet& a, const FpSet& b, const FpSet& c,
                             const Theorem2Options& opts = {}) {
    const u64 p = a.modulus();
    require_same_modulus(a, b, "theorem2_audit");
    require_same_modulus(a, c, "theorem2_audit");
    if (a.is_empty() || b.is_empty() || c.is_empty())
        throw std::domain_error("theorem2_audit: empty input set");
    if (a.contains(0) || b.contains(0) || c.contains(0))
        throw std::domain_error("theorem2_audit: sets must avoid 0");
    if (a.contains(p - 1))
        throw std::domain_error("theorem2_audit: p-1 in A puts 0 into (A+1)C");

    const FpSet ab = product_set(a, b);
    const FpSet t = product_set(affine_image(a, 1, 1), c);

    JAudit audit;
    audit.p = p;
    audit.size_a = a.size();
    audit.size_b = b.size();
    audit.size_c = c.size();
    audit.size_ab = ab.size();
    audit.size_t = t.size();

    audit.solutions = count_solutions_fast(ab, b, c, t);
    const u64 brute = count_solutions_brute(ab, b, c, t);
    if (brute != audit.solutions)
        throw audit_error("theorem2_audit: brute and fast solution counts disagree");

    audit.lower = a.size() * b.size() * c.size();
    if (audit.solutions < audit.lower)
        throw audit_error("theorem2_audit: J < |A||B||C|");

    const double pd = static_cast<double>(p);
    audit.upper_main = static_cast<double>(ab.size()) * b.size() * c.size() * t.size() / (pd - 1.0);
    audit.upper_error =
        std::sqrt(pd * c.size() * t.size() * static_cast<double>(ab.size()) * b.size());
    const double upper = audit.upper_main + audit.upper_error;
    if (static_cast<double>(audit.solutions) > upper * (1.0 + 1e-9))
        throw audit_error("theorem2_audit: J exceeds the character-sum upper bound");

    const CharacterTable table = CharacterTable::build(PrimeField{p, find_primitive_root(p)});
    audit.char_worst = worst_nonprincipal_char_sum(table, c, t);

    audit.min_bound = std::min(pd * a.size(),
                               static_cast<double>(a.size()) * a.size() * b.size() * c.size() / pd);
    audit.ratio = static_cast<double>(ab.size()) * t.size() / audit.min_bound;

    if (opts.check_decomposition) {
        // Histogram the logs of x^{-1} y (z^{-1} t - 1) over all quadruples,
        // then average over all characters numerically.
        std::vector<u64> hist(table.order, 0);
        u64 zero_args = 0;
        for (u64 x : ab.elements()) {
            const u64 xi = mod_inverse(p, x);
            for (u64 z : c.elements()) {
                const u64 zi = mod_inverse(p, z);
                for (u64 tt : t.elements()) {
                    const u64 r = (mul_mod(zi, tt, p) + p - 1) % p;
                    for (u64 y : b.elements()) {
                        const u64 v = mul_mod(mul_mod(xi, y, p), r, p);
                        if (v == 0)
                            ++zero_args;
                        else
                            ++hist[table.dlog.log_of[v]];
                    }
                }
            }
        }
        (void)zero_args; // chi(0) = 0 terms vanish for every character
        KahanComplex total;
        for (u64 j = 0; j < table.order; ++j) {
            for (u64 l = 0; l < table.order; ++l) {
                if (hist[l] == 0) continue;
                total.add(static_cast<double>(hist[l]) * table.unit[mul_mod(j, l, table.order)]);
            }
        }
        audit.decomposition = total.value().real() / static_cast<double>(table.order);
        audit.decomposition_checked = true;
        const double rel = std::abs(audit.decomposition - static_cast<double>(audit.solutions)) /
                           std::max(1.0, static_cast<double>(audit.solutions));
        if (rel > 1e-6)
            throw audit_error("theorem2_audit: character decomposition disagrees with exact J");
    }
    return audit;
}

} // namespace growthlab
