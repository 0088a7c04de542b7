#pragma once

#include <stdexcept>
#include <string>

#include "diagcubic/eisenstein.hpp"

namespace diagcubic {

/// The diagonal plane cubic a x^3 + b y^3 = c z^3.
struct CurveSpec {
    Eisenstein a{1};
    Eisenstein b{1};
    Eisenstein c{1};

    CurveSpec() = default;
    CurveSpec(Eisenstein a_, Eisenstein b_, Eisenstein c_) : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)) {
        if (a.is_zero() || b.is_zero() || c.is_zero()) throw std::invalid_argument("curve coefficients must be nonzero");
    }

    bool is_rational() const { return a.is_rational() && b.is_rational() && c.is_rational(); }

    std::string to_string() const {
        auto term = [](const Eisenstein& k, const char* var) {
            std::string s = diagcubic::to_string(k);
            if (!k.is_rational() && k.a != 0) s = "(" + s + ")";
            return s + "*" + var + "^3";
        };
        return term(a, "x") + " + " + term(b, "y") + " = " + term(c, "z");
    }

    friend bool operator==(const CurveSpec&, const CurveSpec&) = default;
};

/// A projective point (x : y : z), not all zero.
struct CurvePoint {
    Eisenstein x, y, z;

    bool is_zero() const { return x.is_zero() && y.is_zero() && z.is_zero(); }
    friend bool operator==(const CurvePoint&, const CurvePoint&) = default;
};

/// a x^3 + b y^3 - c z^3.
inline Eisenstein evaluate(const CurveSpec& curve, const CurvePoint& pt) {
    return curve.a * pt.x.pow(3) + curve.b * pt.y.pow(3) - curve.c * pt.z.pow(3);
}

inline bool on_curve(const CurveSpec& curve, const CurvePoint& pt) {
    return !pt.is_zero() && evaluate(curve, pt).is_zero();
}

}  // namespace diagcubic
