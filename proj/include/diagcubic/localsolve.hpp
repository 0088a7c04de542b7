#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "diagcubic/completion.hpp"
#include "diagcubic/curve.hpp"
#include "diagcubic/eisenstein.hpp"
#include "diagcubic/factor.hpp"
#include "diagcubic/residues.hpp"

namespace diagcubic {

enum class Certificate {
    residue_point,      // Hensel-certified residue vector
    good_reduction,     // smooth reduction, a point exists over the residue field
    residue_symbol,     // cubic residue symbol value
    valuation_pattern,  // coefficient valuations alone decide
    classification,     // canonical 3-adic form
    exhaustion,         // no certifiable residue at the stated depth
};

inline const char* to_string(Certificate c) {
    switch (c) {
        case Certificate::residue_point: return "residue_point";
        case Certificate::good_reduction: return "good_reduction";
        case Certificate::residue_symbol: return "residue_symbol";
        case Certificate::valuation_pattern: return "valuation_pattern";
        case Certificate::classification: return "classification";
        case Certificate::exhaustion: return "exhaustion";
    }
    return "?";
}

/// A residue vector on `curve` (the curve after normalization at the place).
struct ResidueWitness {
    CurveSpec curve;
    CurvePoint point;
    int depth = 0;
    int value_valuation = 0;
    int gradient_valuation = 0;
};

struct LocalVerdict {
    bool solvable = false;
    std::string place;
    std::string rule;
    Certificate certificate = Certificate::exhaustion;
    std::string detail;
    std::optional<CubicSymbol> symbol;
    std::optional<ResidueWitness> residue;
};

/// C_{A,alpha} cleared of denominators: alpha^2 x^3 + y^3 = alpha A z^3.
inline CurveSpec torsor_curve(const Eisenstein& A, const Eisenstein& alpha) {
    return CurveSpec(alpha * alpha, Eisenstein(1), alpha * A);
}

namespace detail {

struct PlaceNormalForm {
    CurveSpec curve;
    std::array<int, 3> val{};
};

inline Eisenstein uniformizer_pow(const Place& place, int n) {
    return place.uniformizer.pow(static_cast<unsigned>(n));
}

/**
 * Scales variables and the equation by powers of the uniformizer until the
 * coefficient valuations are one of (0,0,0), (0,0,t), (0,1,2) up to order.
 */
inline PlaceNormalForm normalize_at(const CurveSpec& curve, const Place& place) {
    std::array<Eisenstein, 3> k{curve.a, curve.b, curve.c};
    std::array<int, 3> v{};
    for (int i = 0; i < 3; ++i) {
        v[i] = valuation(place, k[i]);
        if (v[i] >= 3) k[i] = divide_exact(k[i], uniformizer_pow(place, 3 * (v[i] / 3)));
        v[i] %= 3;
    }
    int lo = std::min({v[0], v[1], v[2]});
    if (lo > 0) {
        for (int i = 0; i < 3; ++i) {
            k[i] = divide_exact(k[i], uniformizer_pow(place, lo));
            v[i] -= lo;
        }
    }
    // (0, t, t) -> (3 - t, 0, 0)
    for (int i = 0; i < 3; ++i) {
        int j = (i + 1) % 3, l = (i + 2) % 3;
        if (v[i] == 0 && v[j] == v[l] && v[j] > 0) {
            int t = v[j];
            k[i] = k[i] * uniformizer_pow(place, 3 - t);
            v[i] = 3 - t;
            k[j] = divide_exact(k[j], uniformizer_pow(place, t));
            k[l] = divide_exact(k[l], uniformizer_pow(place, t));
            v[j] = v[l] = 0;
            break;
        }
    }
    return {CurveSpec(k[0], k[1], k[2]), v};
}

inline std::string pattern_string(const std::array<int, 3>& v) {
    return "(" + std::to_string(v[0]) + "," + std::to_string(v[1]) + "," + std::to_string(v[2]) + ")";
}

/// Symbol of the unit part x / q^v_q(x).
inline CubicSymbol unit_symbol(const Eisenstein& x, const Place& place) {
    int v = valuation(place, x);
    Eisenstein u = v > 0 ? divide_exact(x, uniformizer_pow(place, v)) : x;
    return cubic_symbol(u, place.uniformizer);
}

}  // namespace detail

/**
 * Decides local solvability by residue search with Hensel certification.
 *
 * Each of the three projective branches (x = 1), (x = 0 mod pi, y = 1),
 * (x, y = 0 mod pi, z = 1) is refined one pi-adic digit at a time. A node
 * knows F only modulo pi^N; it is discarded when v(F) < N, accepted when
 * v(F) > 2 v(grad F). With a unit coordinate the gradient valuation is at
 * most v(3) + 2, so every node reaching N >= d is accepted or discarded.
 */
inline LocalVerdict solvable_generic_local(const CurveSpec& curve, const Place& place,
                                           std::optional<int> depth_override = std::nullopt) {
    if (place.kind == PlaceKind::rational && !curve.is_rational())
        throw std::invalid_argument("solvable_generic_local: curve over k at a place of Q");
    int d = place.certified_depth();
    if (depth_override) {
        if (*depth_override < d)
            throw std::domain_error("solvable_generic_local: depth " + std::to_string(*depth_override) +
                                    " is below the certified bound " + std::to_string(d));
        d = *depth_override;
    }
    const detail::PlaceNormalForm nf = detail::normalize_at(curve, place);
    const LocalRing R(place, d);
    using El = LocalRing::Element;
    const std::array<El, 3> coef{R.from(nf.curve.a), R.from(nf.curve.b), R.from(-nf.curve.c)};
    const El three = R.from(Eisenstein(3));
    const int e = place.v3();

    std::vector<El> pi_pow;
    for (int i = 0; i <= d; ++i) pi_pow.push_back(R.uniformizer_power(i));

    struct Var {
        El rep;
        int known;  // digits known; -1 when the coordinate is exactly rep
    };
    using Node = std::array<Var, 3>;
    const El zero{0, 0}, one{1 % R.modulus(), 0};
    std::vector<Node> stack{
        {Var{zero, 1}, Var{zero, 1}, Var{one, -1}},
        {Var{zero, 1}, Var{one, -1}, Var{zero, 0}},
        {Var{one, -1}, Var{zero, 0}, Var{zero, 0}},
    };
    constexpr int inf = std::numeric_limits<int>::max();
    std::uint64_t nodes = 0;
    while (!stack.empty()) {
        Node n = stack.back();
        stack.pop_back();
        if (++nodes > 400'000'000ULL) throw std::runtime_error("solvable_generic_local: search too large");
        El F = zero;
        int vG = inf, N = inf, refine = -1;
        for (int i = 0; i < 3; ++i) {
            El sq = R.mul(n[i].rep, n[i].rep);
            F = R.add(F, R.mul(coef[i], R.mul(sq, n[i].rep)));
            vG = std::min(vG, R.valuation(R.mul(three, R.mul(coef[i], sq))));
            if (n[i].known >= 0) {
                int m = n[i].known;
                int w = std::min(R.valuation(n[i].rep), m);
                int T = nf.val[i] + std::min(e + 2 * w + m, 3 * m);
                if (T < N) {
                    N = T;
                    refine = i;
                }
            }
        }
        int vF = R.valuation(F);
        if (vF > 2 * vG) {
            ResidueWitness w{nf.curve, {R.lift(n[0].rep), R.lift(n[1].rep), R.lift(n[2].rep)}, d, vF, vG};
            LocalVerdict out;
            out.solvable = true;
            out.place = place.to_string();
            out.rule = "Hensel-certified residue";
            out.certificate = Certificate::residue_point;
            out.detail = "v(F) = " + std::to_string(vF) + " > 2 * " + std::to_string(vG) + " at depth " + std::to_string(d);
            out.residue = std::move(w);
            return out;
        }
        if (vF < N || N >= d) continue;
        Var& v = n[refine];
        const El step = pi_pow[v.known];
        const El base = v.rep;
        ++v.known;
        const auto& digits = R.digits();
        for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
            v.rep = R.add(base, R.mul(step, *it));
            stack.push_back(n);
        }
    }
    LocalVerdict out;
    out.solvable = false;
    out.place = place.to_string();
    out.rule = "certified residue exhaustion";
    out.certificate = Certificate::exhaustion;
    out.detail = "no certifiable residue at depth " + std::to_string(d) + " (" + std::to_string(nodes) + " nodes)";
    return out;
}

/**
 * Q_3 solvability through the canonical forms 3^k x^3 + 2^i y^3 = 2^j z^3
 * and x^3 + 3b y^3 = 9c z^3.
 */
inline LocalVerdict solvable_Q3(const CurveSpec& curve) {
    if (!curve.is_rational()) throw std::invalid_argument("solvable_Q3: coefficients must be rational");
    std::array<Q3Class, 3> cls{cube_class_Q3(Rational(curve.a.a)), cube_class_Q3(Rational(curve.b.a)),
                               cube_class_Q3(Rational(curve.c.a))};
    auto pow2 = [](int i) { return Integer(1) << ((i % 3 + 3) % 3); };
    auto pow3 = [](int k) { return boost::multiprecision::pow(Integer(3), static_cast<unsigned>(k)); };
    LocalVerdict out;
    out.place = "Q_3";
    out.certificate = Certificate::classification;
    const int k0 = cls[0].k, k1 = cls[1].k, k2 = cls[2].k;
    if (k0 == k1 && k1 == k2) {
        int i = cls[1].i - cls[0].i, j = cls[2].i - cls[0].i;
        CurveSpec canon(Eisenstein(1), Eisenstein(pow2(i)), Eisenstein(pow2(j)));
        std::set<int> units{0, (i % 3 + 3) % 3, (j % 3 + 3) % 3};
        out.solvable = units.size() < 3;
        out.rule = out.solvable ? "unit classes repeat" : "mod-9 obstruction";
        out.detail = "canonical form " + canon.to_string();
        return out;
    }
    if (k0 != k1 && k1 != k2 && k0 != k2) {
        int z = k0 == 0 ? 0 : (k1 == 0 ? 1 : 2);
        int o1 = 0, o2 = 0;
        for (int t = 0; t < 3; ++t) {
            if (cls[t].k == 1) o1 = t;
            if (cls[t].k == 2) o2 = t;
        }
        CurveSpec canon(Eisenstein(1), Eisenstein(3 * pow2(cls[o1].i - cls[z].i)),
                        Eisenstein(9 * pow2(cls[o2].i - cls[z].i)));
        out.solvable = false;
        out.rule = "3-adic valuation obstruction";
        out.detail = "canonical form " + canon.to_string();
        return out;
    }
    int odd = k1 == k2 ? 0 : (k0 == k2 ? 1 : 2);
    int p1 = (odd + 1) % 3, p2 = (odd + 2) % 3;
    int k = ((cls[odd].k - cls[p1].k) % 3 + 3) % 3;
    int i = cls[p1].i - cls[odd].i, j = cls[p2].i - cls[odd].i;
    CurveSpec canon(Eisenstein(pow3(k)), Eisenstein(pow2(i)), Eisenstein(pow2(j)));
    out.solvable = k == 1 || (pow2(i) == pow2(j));
    out.rule = k == 1 ? "3-adic classification, k = 1" : "3-adic classification, k = 2";
    out.detail = "canonical form " + canon.to_string();
    return out;
}

/// Q_p solvability of a curve with rational coefficients, for any prime p.
inline LocalVerdict solvable_Qp(const CurveSpec& curve, const Integer& p) {
    if (!curve.is_rational()) throw std::invalid_argument("solvable_Qp: coefficients must be rational");
    if (p == 3) return solvable_Q3(curve);
    const Place place = Place::rational(p);
    const detail::PlaceNormalForm nf = detail::normalize_at(curve, place);
    LocalVerdict out;
    out.place = place.to_string();
    const std::string pattern = detail::pattern_string(nf.val);
    int zeros = static_cast<int>(std::count(nf.val.begin(), nf.val.end(), 0));
    if (zeros == 3) {
        out.solvable = true;
        out.rule = "good reduction";
        out.certificate = Certificate::good_reduction;
        out.detail = "valuation pattern " + pattern;
        return out;
    }
    if (zeros == 1) {
        out.solvable = false;
        out.rule = "valuation obstruction";
        out.certificate = Certificate::valuation_pattern;
        out.detail = "valuation pattern " + pattern;
        return out;
    }
    // (0, 0, t): the two unit terms must cancel modulo p
    std::array<Integer, 3> term{nf.curve.a.a, nf.curve.b.a, -nf.curve.c.a};
    std::vector<int> units;
    for (int i = 0; i < 3; ++i)
        if (nf.val[i] == 0) units.push_back(i);
    out.detail = "valuation pattern " + pattern;
    if (mod_floor(p, 3) == 2) {
        out.solvable = true;
        out.rule = "units are cubes";
        out.certificate = Certificate::valuation_pattern;
        return out;
    }
    const Eisenstein q = split_prime_above(p);
    CubicSymbol s = cubic_symbol(Eisenstein(term[units[1]]), q) - cubic_symbol(Eisenstein(term[units[0]]), q);
    out.solvable = s.trivial();
    out.rule = "unit ratio cube test";
    out.certificate = Certificate::residue_symbol;
    out.symbol = s;
    out.detail += ", symbol at " + to_string(q) + " = " + s.to_string();
    return out;
}

/// Completion at lambda: rational curves go through Q_3, others through residue search.
inline LocalVerdict solvable_lambda(const CurveSpec& curve) {
    for (int m = 0; m < 3; ++m) {
        Eisenstein u = Eisenstein::zeta_pow(m);
        CurveSpec scaled(curve.a * u, curve.b * u, curve.c * u);
        if (scaled.is_rational()) {
            LocalVerdict v = solvable_Q3(scaled);
            v.place = "k_lambda";
            v.rule += " (curve over Q, via Q_3)";
            return v;
        }
    }
    return solvable_generic_local(curve, Place::lambda());
}

/// Local solvability of alpha^2 x^3 + y^3 = alpha A z^3 at a prime q not above 3.
inline LocalVerdict solvable_kq_torsor(const Eisenstein& A, const Eisenstein& alpha, const Eisenstein& q) {
    if (A.is_zero() || alpha.is_zero()) throw std::invalid_argument("solvable_kq_torsor: zero input");
    if (is_associate_of_lambda(q)) throw std::invalid_argument("solvable_kq_torsor: q lies above 3");
    const Place place = Place::over(q);
    const int vA = valuation(place, A), va = valuation(place, alpha);
    if (vA > 2 || va > 2) throw std::invalid_argument("solvable_kq_torsor: A and alpha must be cube-free at q");
    LocalVerdict out;
    out.place = place.to_string();
    if (vA == 0) {
        out.solvable = va == 0;
        out.rule = va == 0 ? "good reduction" : "q divides alpha but not A";
        out.certificate = va == 0 ? Certificate::good_reduction : Certificate::valuation_pattern;
        out.detail = "v(A) = 0, v(alpha) = " + std::to_string(va);
        return out;
    }
    if (vA == 2 && va > 0) {
        LocalVerdict v = solvable_generic_local(torsor_curve(A, alpha), place);
        v.rule = "q^2 || A, q | alpha: " + v.rule;
        return v;
    }
    CubicSymbol s;
    if (va == 0) {
        s = detail::unit_symbol(alpha, place);
        out.rule = vA == 1 ? "q || A, q does not divide alpha" : "q^2 || A, q does not divide alpha";
        out.detail = "symbol(alpha) = " + s.to_string();
    } else if (va == 1) {
        s = detail::unit_symbol(A, place) - detail::unit_symbol(alpha, place);
        out.rule = "q || A, q || alpha";
        out.detail = "symbol(A / alpha) = " + s.to_string();
    } else {
        s = detail::unit_symbol(A * alpha, place);
        out.rule = "q || A, q^2 || alpha";
        out.detail = "symbol(A alpha / q^3) = " + s.to_string();
    }
    out.solvable = s.trivial();
    out.certificate = Certificate::residue_symbol;
    out.symbol = s;
    return out;
}

/// Inert p = 2 mod 3 with p || A: solvable iff the unit part of alpha is a cube mod p.
inline LocalVerdict solvable_inert_rational(const Integer& A, const Eisenstein& alpha, const Integer& p) {
    if (alpha.is_zero() || A == 0) throw std::invalid_argument("solvable_inert_rational: zero input");
    if (!is_prime(p) || mod_floor(p, 3) != 2) throw std::invalid_argument("solvable_inert_rational: p must be a prime = 2 mod 3");
    if (valuation(A, p) != 1) throw std::invalid_argument("solvable_inert_rational: p must divide A exactly once");
    const Place place = Place::over(Eisenstein(p));
    if (valuation(place, alpha) > 2) throw std::invalid_argument("solvable_inert_rational: alpha must be cube-free at p");
    CubicSymbol s = detail::unit_symbol(alpha, place);
    LocalVerdict out;
    out.solvable = s.trivial();
    out.place = place.to_string();
    out.rule = "inert prime, symbol of unit part of alpha";
    out.certificate = Certificate::residue_symbol;
    out.symbol = s;
    out.detail = "symbol(alpha p^-v) = " + s.to_string();
    return out;
}

/// Rational primes dividing 3abc.
inline std::vector<Integer> bad_primes(const CurveSpec& curve) {
    if (!curve.is_rational()) throw std::invalid_argument("bad_primes: coefficients must be rational");
    std::set<Integer> ps{3};
    for (const Eisenstein* k : {&curve.a, &curve.b, &curve.c})
        for (const auto& [p, e] : factor_integer(abs(k->a))) ps.insert(p);
    return {ps.begin(), ps.end()};
}

/// Solvability at every place of Q; only primes dividing 3abc need work.
inline std::pair<bool, std::vector<LocalVerdict>> everywhere_locally_solvable(const CurveSpec& curve) {
    std::vector<LocalVerdict> verdicts;
    bool all = true;
    for (const Integer& p : bad_primes(curve)) {
        verdicts.push_back(solvable_Qp(curve, p));
        all = all && verdicts.back().solvable;
    }
    return {all, verdicts};
}

}  // namespace diagcubic
