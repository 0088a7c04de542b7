#pragma once

#include <algorithm>
#include <stdexcept>
#include <utility>
#include <vector>

#include "diagcubic/eisenstein.hpp"
#include "diagcubic/integer.hpp"

namespace diagcubic {

/// x = unit * prod prime^exponent, primes pairwise non-associate and sorted by norm_order_less.
struct EisensteinFactorization {
    Eisenstein unit{1};
    std::vector<std::pair<Eisenstein, int>> factors;

    Eisenstein expand() const {
        Eisenstein r = unit;
        for (const auto& [q, e] : factors) r *= q.pow(static_cast<unsigned>(e));
        return r;
    }
};

/// Primary means congruent to 2 mod 3, i.e. a = 2 (mod 3) and b = 0 (mod 3).
inline bool is_primary(const Eisenstein& x) {
    return mod_floor(x.a, 3) == 2 && mod_floor(x.b, 3) == 0;
}

inline bool is_associate_of_lambda(const Eisenstein& x) {
    return x.norm() == 3;
}

/// Returns (unit, primary) with q = unit * primary.
inline std::pair<Eisenstein, Eisenstein> primary_associate(const Eisenstein& q) {
    if (q.is_zero()) throw std::domain_error("primary_associate: zero");
    if (mod_floor(q.norm(), 3) == 0)
        throw std::domain_error("primary_associate: associate of lambda has no primary form");
    for (int m = 0; m < 3; ++m) {
        for (int s : {1, -1}) {
            Eisenstein u = Eisenstein::zeta_pow(m) * Eisenstein(s);
            // u^{-1} = s * w^{-m}
            Eisenstein cand = q * (Eisenstein::zeta_pow(-m) * Eisenstein(s));
            if (is_primary(cand)) return {u, cand};
        }
    }
    throw std::domain_error("primary_associate: no primary associate (not a prime?)");
}

/// The primary prime of norm p (p = 1 mod 3) whose residue ring sends w to the smallest root.
inline Eisenstein split_prime_above(const Integer& p) {
    if (mod_floor(p, 3) != 1) throw std::domain_error("split_prime_above: p must be 1 mod 3");
    // A nontrivial cube root of unity mod p; gcd(p, w - r) is a prime of norm p.
    for (Integer g = 2; g < p; ++g) {
        Integer r = pow_mod(g, (p - 1) / 3, p);
        if (r == 1) continue;
        Eisenstein pi = gcd(Eisenstein(p), Eisenstein(-r, Integer(1)));
        if (pi.norm() != p) throw std::logic_error("split_prime_above: p is not prime");
        return primary_associate(pi).second;
    }
    throw std::logic_error("split_prime_above: no cube root of unity");
}

/// Exponent of the prime q in x (x != 0).
inline int valuation(Eisenstein x, const Eisenstein& q) {
    if (x.is_zero()) throw std::domain_error("valuation of zero");
    int v = 0;
    while (divides(q, x)) {
        x = divide_exact(x, q);
        ++v;
    }
    return v;
}

inline EisensteinFactorization factor(const Eisenstein& x) {
    if (x.is_zero()) throw std::domain_error("factor: zero");
    EisensteinFactorization out;
    Eisenstein rest = x;
    auto take = [&](const Eisenstein& q) {
        int e = 0;
        while (divides(q, rest)) {
            rest = divide_exact(rest, q);
            ++e;
        }
        if (e > 0) out.factors.emplace_back(q, e);
    };
    for (const auto& [p, e] : factor_integer(x.norm())) {
        (void)e;
        if (p == 3) {
            take(Eisenstein::lambda());
        } else if (mod_floor(p, 3) == 2) {
            take(Eisenstein(p));
        } else {
            Eisenstein pi = split_prime_above(p);
            take(pi);
            take(primary_associate(pi.conj()).second);
        }
    }
    if (!is_unit(rest)) throw std::logic_error("factor: leftover is not a unit");
    out.unit = rest;
    std::sort(out.factors.begin(), out.factors.end(),
              [](const auto& l, const auto& r) { return norm_order_less(l.first, r.first); });
    return out;
}

/// x = cubefree * cube^3, cubefree carrying only exponents 0..2 and a unit in {1, w, w^2}.
inline std::pair<Eisenstein, Eisenstein> cube_free_decompose(const Eisenstein& x) {
    EisensteinFactorization f = factor(x);
    auto [sign, m] = unit_decompose(f.unit);
    Eisenstein free = Eisenstein::zeta_pow(m);
    Eisenstein cube(sign);
    for (const auto& [q, e] : f.factors) {
        free *= q.pow(static_cast<unsigned>(e % 3));
        cube *= q.pow(static_cast<unsigned>(e / 3));
    }
    return {free, cube};
}

/// Distinct primes of Z[w] dividing x, in canonical order.
inline std::vector<Eisenstein> prime_divisors(const Eisenstein& x) {
    std::vector<Eisenstein> out;
    for (const auto& [q, e] : factor(x).factors) out.push_back(q);
    return out;
}

}  // namespace diagcubic
