#pragma once

#include <stdexcept>
#include <string>

#include "diagcubic/eisenstein.hpp"
#include "diagcubic/factor.hpp"
#include "diagcubic/integer.hpp"

namespace diagcubic {

/// A cube root of unity w^exponent, the value of a cubic residue symbol.
struct CubicSymbol {
    int exponent = 0;

    bool trivial() const { return exponent == 0; }
    friend CubicSymbol operator+(CubicSymbol l, CubicSymbol r) { return {(l.exponent + r.exponent) % 3}; }
    friend CubicSymbol operator-(CubicSymbol l, CubicSymbol r) { return {(l.exponent - r.exponent + 3) % 3}; }
    friend CubicSymbol operator*(int k, CubicSymbol s) { return {((k % 3 + 3) * s.exponent) % 3}; }
    friend bool operator==(CubicSymbol, CubicSymbol) = default;

    std::string to_string() const {
        static const char* names[] = {"1", "w", "w^2"};
        return names[exponent];
    }
};

/// Residue of x modulo q, as the remainder of nearest-point division.
inline Eisenstein reduce_mod(const Eisenstein& x, const Eisenstein& q) {
    return divrem(x, q).second;
}

/**
 * The cubic residue symbol (alpha / q)_3: the exponent e with
 * alpha^((N(q) - 1) / 3) = w^e (mod q). q must be a prime not above 3 and
 * coprime to alpha.
 */
inline CubicSymbol cubic_symbol(const Eisenstein& alpha, const Eisenstein& q) {
    const Integer n = q.norm();
    if (n <= 1 || mod_floor(n, 3) == 0) throw std::domain_error("cubic_symbol: q must be a prime not dividing 3");
    if (divides(q, alpha)) throw std::domain_error("cubic_symbol: alpha is not coprime to q");
    Integer e = (n - 1) / 3;
    Eisenstein base = reduce_mod(alpha, q), acc(1);
    while (e > 0) {
        if ((e & 1) != 0) acc = reduce_mod(acc * base, q);
        base = reduce_mod(base * base, q);
        e >>= 1;
    }
    for (int j = 0; j < 3; ++j)
        if (divides(q, acc - Eisenstein::zeta_pow(j))) return {j};
    throw std::domain_error("cubic_symbol: power is not a cube root of unity (q not prime?)");
}

/// Membership of u in (Q_p^*)^3.
inline bool is_cube_in_Qp(const Rational& u, const Integer& p) {
    if (u == 0) throw std::domain_error("is_cube_in_Qp: zero");
    const Integer num = numerator(u), den = denominator(u);
    int v = valuation(num, p) - valuation(den, p);
    if (((v % 3) + 3) % 3 != 0) return false;
    Integer n = num, d = den;
    while (n % p == 0) n /= p;
    while (d % p == 0) d /= p;
    if (p == 3) {
        Integer w = mod_floor(n * inverse_mod(d, 9), 9);
        return w == 1 || w == 8;
    }
    if (mod_floor(p, 3) == 2) return true;
    Integer w = mod_floor(n * inverse_mod(d, p), p);
    return pow_mod(w, (p - 1) / 3, p) == 1;
}

/// Class 3^k 2^i of a nonzero rational in Q_3^* / (Q_3^*)^3.
struct Q3Class {
    int k = 0;
    int i = 0;
    friend bool operator==(Q3Class, Q3Class) = default;
};

inline Q3Class cube_class_Q3(const Rational& u) {
    if (u == 0) throw std::domain_error("cube_class_Q3: zero");
    const Integer num = numerator(u), den = denominator(u);
    int v = valuation(num, Integer(3)) - valuation(den, Integer(3));
    Integer n = num, d = den;
    while (n % 3 == 0) n /= 3;
    while (d % 3 == 0) d /= 3;
    Integer w = mod_floor(n * inverse_mod(d, 9), 9);
    if (w > 4) w = 9 - w;  // -1 is a cube
    int i = w == 1 ? 0 : (w == 2 ? 1 : 2);
    return {((v % 3) + 3) % 3, i};
}

/**
 * Class of u in Q_p^* / (Q_p^*)^3 as (valuation mod 3, unit index).
 * The unit index is 0 for p = 2 mod 3, the 2-exponent for p = 3, and for
 * p = 1 mod 3 the e with u^((p-1)/3) = r^e, r the least nontrivial cube
 * root of unity mod p.
 */
struct QpCubeClass {
    int valuation = 0;
    int unit = 0;
    friend bool operator==(QpCubeClass, QpCubeClass) = default;
    friend auto operator<=>(QpCubeClass, QpCubeClass) = default;
};

inline QpCubeClass cube_class_Qp(const Rational& u, const Integer& p) {
    if (p == 3) {
        Q3Class c = cube_class_Q3(u);
        return {c.k, c.i};
    }
    if (u == 0) throw std::domain_error("cube_class_Qp: zero");
    const Integer num = numerator(u), den = denominator(u);
    int v = valuation(num, p) - valuation(den, p);
    v = ((v % 3) + 3) % 3;
    if (mod_floor(p, 3) == 2) return {v, 0};
    Integer n = num, d = den;
    while (n % p == 0) n /= p;
    while (d % p == 0) d /= p;
    Integer w = pow_mod(n * inverse_mod(d, p), (p - 1) / 3, p);
    if (w == 1) return {v, 0};
    Integer r = 2;
    while (pow_mod(r, 3, p) != 1) ++r;
    return {v, w == r ? 1 : 2};
}

/// A rational representative of a class in Q_p^* / (Q_p^*)^3.
inline Integer cube_class_representative(const QpCubeClass& cls, const Integer& p) {
    Integer unit = 1;
    if (p == 3) {
        unit = cls.unit == 0 ? 1 : (cls.unit == 1 ? 2 : 4);
    } else if (mod_floor(p, 3) == 1 && cls.unit != 0) {
        // smallest positive integer in the requested unit class
        for (Integer g = 2;; ++g) {
            if (g % p == 0) continue;
            if (cube_class_Qp(Rational(g), p).unit == cls.unit) {
                unit = g;
                break;
            }
        }
    }
    return unit * boost::multiprecision::pow(p, static_cast<unsigned>(cls.valuation));
}

}  // namespace diagcubic
