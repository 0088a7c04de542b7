#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "diagcubic/eisenstein.hpp"
#include "diagcubic/factor.hpp"
#include "diagcubic/integer.hpp"

namespace diagcubic {

enum class PlaceKind {
    rational,   // Q_p
    split,      // k_q with N(q) = p = 1 mod 3
    inert,      // k_p with p = 2 mod 3
    ramified,   // k_lambda
};

/// A finite place of Q or of k = Q(w), identified by its uniformizer.
struct Place {
    PlaceKind kind = PlaceKind::rational;
    Integer p = 2;          // residue characteristic
    Eisenstein uniformizer{2};

    static Place rational(const Integer& p) {
        if (!is_prime(p)) throw std::invalid_argument("not a rational prime: " + p.str());
        return {PlaceKind::rational, p, Eisenstein(p)};
    }

    static Place lambda() { return {PlaceKind::ramified, 3, Eisenstein::lambda()}; }

    /// The place of k above the prime element q.
    static Place over(const Eisenstein& q) {
        const Integer n = q.norm();
        if (n == 3) return lambda();
        if (is_prime(n) && mod_floor(n, 3) == 1)
            return {PlaceKind::split, n, primary_associate(q).second};
        Integer p = boost::multiprecision::sqrt(n);
        if (p * p == n && is_prime(p) && mod_floor(p, 3) == 2 && divides(Eisenstein(p), q))
            return {PlaceKind::inert, p, Eisenstein(p)};
        throw std::invalid_argument("not a prime of Z[w]: " + diagcubic::to_string(q));
    }

    /// Places of k above the rational prime p.
    static std::vector<Place> above(const Integer& p) {
        if (p == 3) return {lambda()};
        if (mod_floor(p, 3) == 2) return {over(Eisenstein(p))};
        Eisenstein pi = split_prime_above(p);
        return {over(pi), over(pi.conj())};
    }

    bool over_k() const { return kind != PlaceKind::rational; }

    /// Valuation of 3 at this place.
    int v3() const {
        if (kind == PlaceKind::ramified) return 2;
        if (kind == PlaceKind::rational && p == 3) return 1;
        return 0;
    }

    Integer residue_size() const { return kind == PlaceKind::inert ? Integer(p * p) : p; }

    /// Depth at which residue search is conclusive: 2 (v(3) + 2) + 1.
    int certified_depth() const { return 2 * (v3() + 2) + 1; }

    std::string to_string() const {
        switch (kind) {
            case PlaceKind::rational: return "Q_" + p.str();
            case PlaceKind::ramified: return "k_lambda";
            case PlaceKind::inert: return "k_" + p.str();
            case PlaceKind::split: return "k_(" + diagcubic::to_string(uniformizer) + ")";
        }
        return "?";
    }

    friend bool operator==(const Place& l, const Place& r) {
        return l.kind == r.kind && l.uniformizer == r.uniformizer;
    }
};

/// Normalized valuation of a nonzero element at the place.
inline int valuation(const Place& place, const Eisenstein& x) {
    if (x.is_zero()) throw std::domain_error("valuation of zero");
    switch (place.kind) {
        case PlaceKind::rational:
        case PlaceKind::inert: {
            int va = x.a == 0 ? std::numeric_limits<int>::max() : valuation(x.a, place.p);
            int vb = x.b == 0 ? std::numeric_limits<int>::max() : valuation(x.b, place.p);
            return std::min(va, vb);
        }
        default: return valuation(x, place.uniformizer);
    }
}

/**
 * The truncated completion O / pi^D at a place, with elements stored as
 * machine-word coordinates.
 *
 * - rational and split places: Z / p^D (for split q, w maps to the root r
 *   of r^2 + r + 1 with q | w - r);
 * - inert places: (Z / p^D)[w];
 * - lambda: (Z / 3^K)[w] with K = ceil(D / 2), since lambda^2 = -3w.
 *
 * Every element of the ring is the image of an element of Z[w], and lift()
 * returns such a representative, so a residue point is an honest point of
 * O^3 on which exact valuations can be taken.
 */
class LocalRing {
public:
    struct Element {
        std::int64_t a = 0;
        std::int64_t b = 0;
        friend bool operator==(const Element&, const Element&) = default;
    };

    LocalRing(const Place& place, int precision) : place_(place), precision_(precision) {
        if (precision < 1) throw std::invalid_argument("LocalRing: precision must be positive");
        int k = place.kind == PlaceKind::ramified ? (precision + 1) / 2 : precision;
        Integer m = boost::multiprecision::pow(place.p, static_cast<unsigned>(k));
        if (m > (Integer(1) << 62)) throw std::domain_error("LocalRing: " + place.to_string() + " too large for residue search");
        modulus_ = static_cast<std::int64_t>(m);
        p_ = static_cast<std::int64_t>(place.p);
        if (place.kind == PlaceKind::split) root_ = split_root();
        build_digits();
        pi_ = from(place.uniformizer);
    }

    const Place& place() const { return place_; }
    int precision() const { return precision_; }
    std::int64_t modulus() const { return modulus_; }
    const std::vector<Element>& digits() const { return digits_; }
    bool paired() const { return place_.kind == PlaceKind::inert || place_.kind == PlaceKind::ramified; }

    Element from(const Eisenstein& x) const {
        if (place_.kind == PlaceKind::rational) {
            if (!x.is_rational()) throw std::invalid_argument("LocalRing: non-rational element at " + place_.to_string());
            return {reduce(x.a), 0};
        }
        if (place_.kind == PlaceKind::split) {
            Integer v = x.a + x.b * root_;
            return {reduce(v), 0};
        }
        return {reduce(x.a), reduce(x.b)};
    }

    Eisenstein lift(const Element& e) const { return {Integer(e.a), Integer(e.b)}; }

    Element add(const Element& x, const Element& y) const { return {addm(x.a, y.a), addm(x.b, y.b)}; }
    Element sub(const Element& x, const Element& y) const { return {addm(x.a, modulus_ - y.a), addm(x.b, modulus_ - y.b)}; }
    Element mul(const Element& x, const Element& y) const {
        if (!paired()) return {mulm(x.a, y.a), 0};
        std::int64_t bb = mulm(x.b, y.b);
        return {addm(mulm(x.a, y.a), modulus_ - bb),
                addm(addm(mulm(x.a, y.b), mulm(x.b, y.a)), modulus_ - bb)};
    }
    Element cube(const Element& x) const { return mul(mul(x, x), x); }
    Element scale(const Element& x, std::int64_t k) const { return mul(x, {reduce(Integer(k)), 0}); }

    /// pi^n as a ring element (zero once n >= precision).
    Element uniformizer_power(int n) const {
        Element r{1 % modulus_, 0};
        for (int i = 0; i < n; ++i) r = mul(r, pi_);
        return r;
    }

    /// Valuation, capped at the precision (so zero has valuation precision()).
    int valuation(const Element& x) const {
        switch (place_.kind) {
            case PlaceKind::rational:
            case PlaceKind::split: return std::min(vp(x.a), precision_);
            case PlaceKind::inert: return std::min(std::min(vp(x.a), vp(x.b)), precision_);
            case PlaceKind::ramified: {
                if (x.a == 0 && x.b == 0) return precision_;
                int t = std::min(vp(x.a), vp(x.b));
                std::int64_t scale = 1;
                for (int i = 0; i < t; ++i) scale *= 3;
                std::int64_t a1 = x.a / scale, b1 = x.b / scale;
                int v = 2 * t + ((a1 + b1) % 3 == 0 ? 1 : 0);
                return std::min(v, precision_);
            }
        }
        return 0;
    }

    bool is_zero(const Element& x) const { return x.a == 0 && x.b == 0; }

private:
    std::int64_t reduce(const Integer& v) const { return static_cast<std::int64_t>(mod_floor(v, modulus_)); }
    std::int64_t addm(std::int64_t x, std::int64_t y) const {
        std::int64_t s = x + y;
        return s >= modulus_ ? s - modulus_ : s;
    }
    std::int64_t mulm(std::int64_t x, std::int64_t y) const {
        return static_cast<std::int64_t>((static_cast<__int128>(x) * y) % modulus_);
    }
    int vp(std::int64_t v) const {
        if (v == 0) return std::numeric_limits<int>::max() / 4;
        int k = 0;
        while (v % p_ == 0) {
            v /= p_;
            ++k;
        }
        return k;
    }

    Integer split_root() const {
        // q = a + b w | w - r  <=>  a + b r = 0 (mod p); then Newton on r^2 + r + 1.
        const Eisenstein& q = place_.uniformizer;
        Integer r = mod_floor(-q.a * inverse_mod(q.b, place_.p), place_.p);
        Integer m = modulus_;
        for (int i = 0; i < 8; ++i) {
            Integer f = r * r + r + 1;
            Integer df = 2 * r + 1;
            r = mod_floor(r - f * inverse_mod(df, m), m);
        }
        if (mod_floor(r * r + r + 1, m) != 0) throw std::logic_error("LocalRing: Hensel lift of w failed");
        return r;
    }

    void build_digits() {
        if (place_.kind == PlaceKind::inert) {
            for (std::int64_t i = 0; i < p_; ++i)
                for (std::int64_t j = 0; j < p_; ++j) digits_.push_back({i, j});
        } else {
            for (std::int64_t i = 0; i < p_; ++i) digits_.push_back({i, 0});
        }
    }

    Place place_;
    int precision_;
    std::int64_t modulus_ = 1;
    std::int64_t p_ = 2;
    Integer root_ = 0;
    Element pi_;
    std::vector<Element> digits_;
};

}  // namespace diagcubic
