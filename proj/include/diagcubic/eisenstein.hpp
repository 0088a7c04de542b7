#pragma once

#include <cctype>
#include <compare>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <type_traits>
#include <utility>

#include "diagcubic/integer.hpp"

namespace diagcubic {

/**
 * An element a + b*w of Z[w], w a primitive cube root of unity (w^2 = -1 - w).
 *
 * The coordinates in the basis {1, w} are canonical, so equality is
 * coordinate-wise. The integer type only needs the usual ring operations
 * plus truncating division.
 */
template <class Int>
struct basic_eisenstein {
    Int a{0};
    Int b{0};

    basic_eisenstein() = default;
    basic_eisenstein(Int a_, Int b_ = Int(0)) : a(std::move(a_)), b(std::move(b_)) {}
    template <class I>
        requires std::is_integral_v<I> && (!std::is_same_v<I, Int>)
    basic_eisenstein(I a_) : a(a_), b(0) {}

    static basic_eisenstein zeta() { return {Int(0), Int(1)}; }
    /// lambda = 1 - w, the prime above 3.
    static basic_eisenstein lambda() { return {Int(1), Int(-1)}; }

    /// w^m for any integer m.
    static basic_eisenstein zeta_pow(int m) {
        switch (((m % 3) + 3) % 3) {
            case 0: return {Int(1), Int(0)};
            case 1: return {Int(0), Int(1)};
            default: return {Int(-1), Int(-1)};
        }
    }

    bool is_zero() const { return a == 0 && b == 0; }
    bool is_rational() const { return b == 0; }

    Int norm() const { return a * a - a * b + b * b; }
    basic_eisenstein conj() const { return {a - b, -b}; }
    basic_eisenstein mul_zeta() const { return {-b, a - b}; }

    basic_eisenstein operator-() const { return {-a, -b}; }
    friend basic_eisenstein operator+(const basic_eisenstein& x, const basic_eisenstein& y) {
        return {x.a + y.a, x.b + y.b};
    }
    friend basic_eisenstein operator-(const basic_eisenstein& x, const basic_eisenstein& y) {
        return {x.a - y.a, x.b - y.b};
    }
    friend basic_eisenstein operator*(const basic_eisenstein& x, const basic_eisenstein& y) {
        Int bb = x.b * y.b;
        return {x.a * y.a - bb, x.a * y.b + x.b * y.a - bb};
    }
    basic_eisenstein& operator+=(const basic_eisenstein& y) { return *this = *this + y; }
    basic_eisenstein& operator-=(const basic_eisenstein& y) { return *this = *this - y; }
    basic_eisenstein& operator*=(const basic_eisenstein& y) { return *this = *this * y; }

    friend bool operator==(const basic_eisenstein& x, const basic_eisenstein& y) {
        return x.a == y.a && x.b == y.b;
    }
    friend bool operator!=(const basic_eisenstein& x, const basic_eisenstein& y) { return !(x == y); }

    basic_eisenstein pow(unsigned e) const {
        basic_eisenstein r(1), base = *this;
        while (e) {
            if (e & 1u) r *= base;
            base *= base;
            e >>= 1;
        }
        return r;
    }
};

using Eisenstein = basic_eisenstein<Integer>;

namespace detail {

/// n/d rounded to nearest, ties toward zero. d > 0.
template <class Int>
Int round_div(const Int& n, const Int& d) {
    Int q = n / d;
    Int r = n - q * d;
    Int twice = r < 0 ? Int(-2 * r) : Int(2 * r);
    if (twice > d) q += (n < 0 ? Int(-1) : Int(1));
    return q;
}

}  // namespace detail

/// x = q*y + r with norm(r) <= 3/4 norm(y).
template <class Int>
std::pair<basic_eisenstein<Int>, basic_eisenstein<Int>> divrem(const basic_eisenstein<Int>& x,
                                                               const basic_eisenstein<Int>& y) {
    if (y.is_zero()) throw std::domain_error("divrem: division by zero");
    const Int n = y.norm();
    const basic_eisenstein<Int> t = x * y.conj();
    basic_eisenstein<Int> q{detail::round_div(t.a, n), detail::round_div(t.b, n)};
    return {q, x - q * y};
}

template <class Int>
bool divides(const basic_eisenstein<Int>& y, const basic_eisenstein<Int>& x) {
    if (y.is_zero()) return x.is_zero();
    const Int n = y.norm();
    const basic_eisenstein<Int> t = x * y.conj();
    return t.a % n == 0 && t.b % n == 0;
}

/// x / y; throws unless y divides x.
template <class Int>
basic_eisenstein<Int> divide_exact(const basic_eisenstein<Int>& x, const basic_eisenstein<Int>& y) {
    if (y.is_zero()) throw std::domain_error("divide_exact: division by zero");
    const Int n = y.norm();
    const basic_eisenstein<Int> t = x * y.conj();
    if (t.a % n != 0 || t.b % n != 0) throw std::domain_error("divide_exact: not divisible");
    return {t.a / n, t.b / n};
}

template <class Int>
basic_eisenstein<Int> gcd(basic_eisenstein<Int> x, basic_eisenstein<Int> y) {
    while (!y.is_zero()) {
        auto r = divrem(x, y).second;
        x = std::move(y);
        y = std::move(r);
    }
    return x;
}

/// (g, s, t) with g = s*x + t*y a gcd of x and y.
template <class Int>
std::tuple<basic_eisenstein<Int>, basic_eisenstein<Int>, basic_eisenstein<Int>> xgcd(
    basic_eisenstein<Int> x, basic_eisenstein<Int> y) {
    using E = basic_eisenstein<Int>;
    E s0(1), s1(0), t0(0), t1(1);
    while (!y.is_zero()) {
        auto [q, r] = divrem(x, y);
        x = std::move(y);
        y = std::move(r);
        E s2 = s0 - q * s1, t2 = t0 - q * t1;
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    return {x, s0, t0};
}

template <class Int>
bool is_unit(const basic_eisenstein<Int>& x) {
    return x.norm() == 1;
}

/// (sign, m) with x = sign * w^m; throws if x is not a unit.
template <class Int>
std::pair<int, int> unit_decompose(const basic_eisenstein<Int>& x) {
    using E = basic_eisenstein<Int>;
    for (int m = 0; m < 3; ++m) {
        E z = E::zeta_pow(m);
        if (x == z) return {1, m};
        if (x == -z) return {-1, m};
    }
    throw std::domain_error("unit_decompose: not a unit");
}

/// Canonical ordering of primes and other elements: by norm, then (a, b).
template <class Int>
bool norm_order_less(const basic_eisenstein<Int>& x, const basic_eisenstein<Int>& y) {
    Int nx = x.norm(), ny = y.norm();
    if (nx != ny) return nx < ny;
    if (x.a != y.a) return x.a < y.a;
    return x.b < y.b;
}

template <class Int>
std::string to_string(const basic_eisenstein<Int>& x) {
    std::ostringstream os;
    if (x.b == 0) {
        os << x.a;
        return os.str();
    }
    if (x.a != 0) os << x.a << (x.b < 0 ? "-" : "+");
    else if (x.b < 0) os << "-";
    Int mag = x.b < 0 ? Int(-x.b) : x.b;
    if (mag != 1) os << mag << "*";
    os << "w";
    return os.str();
}

template <class Int>
std::ostream& operator<<(std::ostream& os, const basic_eisenstein<Int>& x) {
    return os << to_string(x);
}

/// Parses sums of terms like "3", "-2*w", "w", "4w"; whitespace is ignored.
inline Eisenstein parse_eisenstein(std::string_view text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw std::invalid_argument("empty Eisenstein integer");
    Eisenstein out;
    std::size_t i = 0;
    while (i < s.size()) {
        int sign = 1;
        if (s[i] == '+' || s[i] == '-') {
            sign = s[i] == '-' ? -1 : 1;
            ++i;
        } else if (i != 0) {
            throw std::invalid_argument("malformed Eisenstein integer: " + s);
        }
        std::size_t start = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        Integer coeff = 1;
        bool has_digits = i > start;
        if (has_digits) coeff = Integer(s.substr(start, i - start));
        bool is_w = false;
        if (i < s.size() && s[i] == '*') {
            if (!has_digits) throw std::invalid_argument("malformed Eisenstein integer: " + s);
            ++i;
            if (i >= s.size() || s[i] != 'w') throw std::invalid_argument("malformed Eisenstein integer: " + s);
        }
        if (i < s.size() && s[i] == 'w') {
            is_w = true;
            ++i;
        }
        if (!has_digits && !is_w) throw std::invalid_argument("malformed Eisenstein integer: " + s);
        if (is_w)
            out.b += sign * coeff;
        else
            out.a += sign * coeff;
    }
    return out;
}

}  // namespace diagcubic
