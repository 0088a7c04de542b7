#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/miller_rabin.hpp>

namespace diagcubic {

using Integer = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>, boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend, boost::multiprecision::et_off>;

/// Least nonnegative residue of a modulo m (m > 0).
/// n / d as a rational; the two-argument backend constructor rejects negative denominators.
inline Rational ratio(const Integer& n, const Integer& d) {
    if (d == 0) throw std::domain_error("ratio: zero denominator");
    return d < 0 ? Rational(-n) / Rational(-d) : Rational(n) / Rational(d);
}

inline Integer mod_floor(const Integer& a, const Integer& m) {
    Integer r = a % m;
    if (r < 0) r += m;
    return r;
}

inline Integer pow_mod(const Integer& base, const Integer& exp, const Integer& m) {
    return boost::multiprecision::powm(mod_floor(base, m), exp, m);
}

inline Integer gcd(Integer a, Integer b) {
    return boost::multiprecision::gcd(abs(a), abs(b));
}

/// Inverse of a modulo m; throws if gcd(a, m) != 1.
inline Integer inverse_mod(const Integer& a, const Integer& m) {
    Integer r0 = m, r1 = mod_floor(a, m);
    Integer s0 = 0, s1 = 1;
    while (r1 != 0) {
        Integer q = r0 / r1;
        Integer t = r0 - q * r1;
        r0 = r1;
        r1 = t;
        t = s0 - q * s1;
        s0 = s1;
        s1 = t;
    }
    if (r0 != 1) throw std::domain_error("inverse_mod: not invertible");
    return mod_floor(s0, m);
}

/// p-adic valuation of a nonzero integer.
inline int valuation(Integer n, const Integer& p) {
    if (n == 0) throw std::domain_error("valuation of zero");
    int v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

inline int valuation(const Rational& u, const Integer& p) {
    return valuation(Integer(numerator(u)), p) - valuation(Integer(denominator(u)), p);
}

/// Floor of the real cube root of n >= 0.
inline Integer floor_cbrt(const Integer& n) {
    if (n < 0) throw std::domain_error("floor_cbrt of negative");
    if (n < 2) return n;
    Integer lo = 0, hi = 1;
    while (hi * hi * hi <= n) hi <<= 1;
    while (hi - lo > 1) {
        Integer mid = (lo + hi) >> 1;
        if (mid * mid * mid <= n)
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

/// The integer cube root of n when n is a perfect cube.
inline std::optional<Integer> exact_cbrt(const Integer& n) {
    Integer r = floor_cbrt(abs(n));
    if (r * r * r != abs(n)) return std::nullopt;
    return n < 0 ? Integer(-r) : r;
}

inline bool is_cube(const Rational& u) {
    if (u == 0) return true;
    return exact_cbrt(Integer(numerator(u))) && exact_cbrt(Integer(denominator(u)));
}

inline bool is_prime(const Integer& n) {
    if (n < 2) return false;
    static thread_local std::mt19937_64 gen(0x5eed);
    return boost::multiprecision::miller_rabin_test(n, 25, gen);
}

namespace detail {

inline Integer pollard_brent(const Integer& n, std::uint64_t seed) {
    if (n % 2 == 0) return 2;
    std::mt19937_64 gen(seed);
    for (;;) {
        Integer y = Integer(gen()) % n;
        Integer c = Integer(gen()) % (n - 1) + 1;
        Integer g = 1, q = 1, x, ys;
        std::size_t r = 1;
        const std::size_t m = 64;
        auto step = [&](const Integer& v) { return (v * v + c) % n; };
        do {
            x = y;
            for (std::size_t i = 0; i < r; ++i) y = step(y);
            std::size_t k = 0;
            do {
                ys = y;
                for (std::size_t i = 0; i < std::min(m, r - k); ++i) {
                    y = step(y);
                    q = (q * abs(x - y)) % n;
                }
                g = gcd(q, n);
                k += m;
            } while (k < r && g == 1);
            r <<= 1;
        } while (g == 1);
        if (g == n) {
            do {
                ys = step(ys);
                g = gcd(abs(x - ys), n);
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

inline void factor_into(const Integer& n, std::map<Integer, int>& out, std::uint64_t& seed) {
    if (n == 1) return;
    if (is_prime(n)) {
        ++out[n];
        return;
    }
    Integer d = pollard_brent(n, seed++);
    factor_into(d, out, seed);
    factor_into(n / d, out, seed);
}

}  // namespace detail

/// Factorization of |n| into rational primes, sorted ascending.
/// Trial division up to 2^14, Pollard-Brent for whatever is left.
inline std::vector<std::pair<Integer, int>> factor_integer(Integer n) {
    n = abs(n);
    if (n == 0) throw std::domain_error("factor_integer of zero");
    std::map<Integer, int> out;
    for (unsigned p = 2; p < (1u << 14) && Integer(p) * p <= n; p += (p == 2 ? 1 : 2)) {
        while (n % p == 0) {
            n /= p;
            ++out[Integer(p)];
        }
    }
    std::uint64_t seed = 1;
    detail::factor_into(n, out, seed);
    return {out.begin(), out.end()};
}

inline std::int64_t to_i64(const Integer& n) {
    if (n > std::numeric_limits<std::int64_t>::max() || n < std::numeric_limits<std::int64_t>::min())
        throw std::overflow_error("integer does not fit in 64 bits");
    return static_cast<std::int64_t>(n);
}

}  // namespace diagcubic
