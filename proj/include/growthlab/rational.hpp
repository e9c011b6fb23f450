#pragma once

#include <boost/functional/hash.hpp>
#include <boost/multiprecision/cpp_int.hpp>
#include <string>

#include "growthlab/common.hpp"

namespace growthlab {

using BigInt = boost::multiprecision::cpp_int;

// Exact rational with arbitrary-precision integers. Always canonical:
// gcd(|num|, den) = 1, den >= 1, zero is 0/1. Incidence predicates are
// equality tests, so nothing here may round.
struct Rational {
    BigInt num = 0;
    BigInt den = 1;

    Rational() = default;
    Rational(const BigInt& n, const BigInt& d) { *this = canonical(n, d); }
    explicit Rational(i64 n) : num(n), den(1) {}

    static Rational canonical(BigInt n, BigInt d) {
        if (d == 0) throw std::domain_error("Rational: zero denominator");
        if (d < 0) {
            n = -n;
            d = -d;
        }
        if (n == 0) return from_canonical(0, 1);
        BigInt g = boost::multiprecision::gcd(boost::multiprecision::abs(n), d);
        return from_canonical(n / g, d / g);
    }

    bool is_integer() const { return den == 1; }

    Rational operator+(const Rational& o) const {
        return canonical(num * o.den + o.num * den, den * o.den);
    }
    Rational operator-(const Rational& o) const {
        return canonical(num * o.den - o.num * den, den * o.den);
    }
    Rational operator*(const Rational& o) const { return canonical(num * o.num, den * o.den); }
    Rational operator/(const Rational& o) const {
        if (o.num == 0) throw std::domain_error("Rational: division by zero");
        return canonical(num * o.den, den * o.num);
    }

    bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
    bool operator!=(const Rational& o) const { return !(*this == o); }
    bool operator<(const Rational& o) const { return num * o.den < o.num * den; }

    std::string str() const {
        if (den == 1) return num.str();
        return num.str() + "/" + den.str();
    }

private:
    static Rational from_canonical(BigInt n, BigInt d) {
        Rational r;
        r.num = std::move(n);
        r.den = std::move(d);
        return r;
    }
};

inline Rational rational_canonical(const BigInt& num, const BigInt& den) {
    return Rational::canonical(num, den);
}

struct RationalHash {
    std::size_t operator()(const Rational& r) const {
        std::size_t seed = boost::hash<BigInt>()(r.num);
        boost::hash_combine(seed, boost::hash<BigInt>()(r.den));
        return seed;
    }
};

} // namespace growthlab
