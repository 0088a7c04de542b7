#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "diagcubic/curve.hpp"
#include "diagcubic/eisenstein.hpp"
#include "diagcubic/factor.hpp"
#include "diagcubic/integer.hpp"
#include "diagcubic/localsolve.hpp"

namespace diagcubic {

/// An element of k^* / (k^*)^3: w^unit_exp * prod prime^exp, exponents in {1, 2}.
struct CubeClass {
    int unit_exp = 0;
    std::vector<std::pair<Eisenstein, int>> support;  // canonical primes, sorted

    static CubeClass of(const Eisenstein& x) {
        EisensteinFactorization f = factor(x);
        CubeClass c;
        c.unit_exp = unit_decompose(f.unit).second;
        for (const auto& [q, e] : f.factors)
            if (e % 3 != 0) c.support.emplace_back(q, e % 3);
        return c;
    }

    bool trivial() const { return unit_exp == 0 && support.empty(); }

    /// The cube-free integral representative w^m prod q^e.
    Eisenstein representative() const {
        Eisenstein r = Eisenstein::zeta_pow(unit_exp);
        for (const auto& [q, e] : support) r *= q.pow(static_cast<unsigned>(e));
        return r;
    }

    /// Exponent of the prime q (0 if absent).
    int exponent(const Eisenstein& q) const {
        for (const auto& [p, e] : support)
            if (p == q) return e;
        return 0;
    }

    friend CubeClass operator*(const CubeClass& l, const CubeClass& r) {
        std::map<std::pair<Integer, Integer>, std::pair<Eisenstein, int>> acc;
        for (const auto* s : {&l.support, &r.support})
            for (const auto& [q, e] : *s) {
                auto& slot = acc[{q.a, q.b}];
                slot.first = q;
                slot.second += e;
            }
        CubeClass out;
        out.unit_exp = (l.unit_exp + r.unit_exp) % 3;
        for (const auto& [key, qe] : acc)
            if (qe.second % 3 != 0) out.support.emplace_back(qe.first, qe.second % 3);
        std::sort(out.support.begin(), out.support.end(),
                  [](const auto& x, const auto& y) { return norm_order_less(x.first, y.first); });
        return out;
    }

    CubeClass pow(int k) const {
        CubeClass out;
        for (int i = 0; i < ((k % 3) + 3) % 3; ++i) out = out * *this;
        return out;
    }

    std::string to_string() const {
        std::string s;
        auto append = [&s](const std::string& part) { s += (s.empty() ? "" : "*") + part; };
        if (unit_exp == 1) append("w");
        if (unit_exp == 2) append("w^2");
        for (const auto& [q, e] : support) {
            std::string base = diagcubic::to_string(q);
            if (!q.is_rational()) base = "(" + base + ")";
            append(e == 1 ? base : base + "^" + std::to_string(e));
        }
        return s.empty() ? "1" : s;
    }

    friend bool operator==(const CubeClass& l, const CubeClass& r) {
        return l.unit_exp == r.unit_exp && l.support == r.support;
    }
};

inline bool is_cube_free(const Integer& A) {
    if (A == 0) return false;
    for (const auto& [p, e] : factor_integer(abs(A)))
        if (e >= 3) return false;
    return true;
}

namespace detail {

inline void require_selmer_input(const Integer& A) {
    if (A == 0 || A == 1 || A == -1) throw std::invalid_argument("A must not be 0 or +-1");
    if (!is_cube_free(A)) throw std::invalid_argument("A must be cube-free: " + A.str());
}

/// Primes of Z[w] dividing A, in canonical order.
inline std::vector<Eisenstein> primes_of(const Integer& A) {
    return prime_divisors(Eisenstein(A));
}

}  // namespace detail

/// The 3^r classes w^m prod_{i<r} q_i^{m_i}: coset representatives of <A> in the allowed subgroup.
inline std::vector<CubeClass> candidate_alphas(const Integer& A) {
    detail::require_selmer_input(A);
    const std::vector<Eisenstein> primes = detail::primes_of(A);
    const std::size_t free = primes.size() - 1;
    std::vector<CubeClass> out;
    std::vector<int> digits(free + 1, 0);
    std::size_t total = 1;
    for (std::size_t i = 0; i <= free; ++i) total *= 3;
    for (std::size_t n = 0; n < total; ++n) {
        std::size_t t = n;
        CubeClass c;
        c.unit_exp = static_cast<int>(t % 3);
        t /= 3;
        for (std::size_t i = 0; i < free; ++i, t /= 3)
            if (t % 3 != 0) c.support.emplace_back(primes[i], static_cast<int>(t % 3));
        out.push_back(std::move(c));
    }
    return out;
}

/// Count of distinct prime factors = 2 mod 3, adjusted by A mod 9.
inline int s0_of(const Integer& A) {
    detail::require_selmer_input(A);
    int m = 0;
    for (const auto& [p, e] : factor_integer(abs(A)))
        if (mod_floor(p, 3) == 2) ++m;
    const Integer r = mod_floor(A, 9);
    if (r == 3 || r == 6) return m;
    if (r == 1 || r == 8) return m - 2;
    return m - 1;
}

/// Sign of the functional equation: -w_3 prod_{p | A, p = 2 mod 3} (-1).
inline int root_sign(const Integer& A) {
    detail::require_selmer_input(A);
    const Integer r = mod_floor(A, 9);
    int w3 = (r == 1 || r == 8 || r == 3 || r == 6) ? -1 : 1;
    int sign = -w3;
    for (const auto& [p, e] : factor_integer(abs(A)))
        if (mod_floor(p, 3) == 2) sign = -sign;
    return sign;
}

/// The curve x^3 + y^3 = A z^3 as a CurveSpec.
inline CurveSpec cube_sum_curve(const Integer& A) {
    return CurveSpec(Eisenstein(1), Eisenstein(1), Eisenstein(A));
}

/// Multiplication by sqrt(-3) on x^3 + y^3 = A z^3.
inline CurvePoint sqrt_minus3_map(const CurvePoint& P, const Integer& A) {
    const CurveSpec E = cube_sum_curve(A);
    if (!on_curve(E, P)) throw std::invalid_argument("sqrt_minus3_map: point is not on the curve");
    const Eisenstein w = Eisenstein::zeta(), w2 = Eisenstein::zeta_pow(2);
    const Eisenstein x3 = P.x.pow(3), y3 = P.y.pow(3);
    CurvePoint Q{w * x3 - w2 * y3, w * y3 - w2 * x3, (w - w2) * P.x * P.y * P.z};
    if (!on_curve(E, Q)) throw std::logic_error("sqrt_minus3_map: image is not on the curve");
    return Q;
}

namespace detail {

/// The c with c^3 = x, if x is a cube in Z[w].
inline std::optional<Eisenstein> exact_cube_root(const Eisenstein& x) {
    if (x.is_zero()) return Eisenstein(0);
    using C = std::complex<long double>;
    const long double s3 = std::sqrt(3.0L);
    C z(static_cast<long double>(x.a) - static_cast<long double>(x.b) / 2, static_cast<long double>(x.b) * s3 / 2);
    C r = std::polar(std::cbrt(std::abs(z)), std::arg(z) / 3);
    const C omega = std::polar(1.0L, 2 * 3.14159265358979323846264338327950288L / 3);
    for (int k = 0; k < 3; ++k, r *= omega) {
        long double bb = 2 * r.imag() / s3;
        long double aa = r.real() + bb / 2;
        Integer a0(std::llround(aa)), b0(std::llround(bb));
        for (int da = -1; da <= 1; ++da)
            for (int db = -1; db <= 1; ++db) {
                Eisenstein c(a0 + da, b0 + db);
                if (c.pow(3) == x) return c;
            }
    }
    return std::nullopt;
}

inline std::vector<Eisenstein> elements_up_to_norm(const Integer& bound) {
    std::vector<Eisenstein> out;
    // a^2 - ab + b^2 >= 3b^2/4, so |b| <= 2 sqrt(bound / 3)
    const std::int64_t B = static_cast<std::int64_t>(boost::multiprecision::sqrt(4 * bound / 3)) + 1;
    for (std::int64_t b = -B; b <= B; ++b)
        for (std::int64_t a = -2 * B; a <= 2 * B; ++a) {
            Eisenstein e(a, b);
            if (e.norm() <= bound) out.push_back(e);
        }
    std::sort(out.begin(), out.end(), [](const Eisenstein& l, const Eisenstein& r) { return norm_order_less(l, r); });
    return out;
}

}  // namespace detail

/**
 * Searches a x^3 + b y^3 = c z^3 for a point over k with N(x), N(z) <= bound,
 * solving for y. Coefficients are first reduced modulo cubes and the point
 * mapped back.
 */
inline std::optional<CurvePoint> curve_point_search(const CurveSpec& curve, const Integer& bound) {
    auto [a1, ua] = cube_free_decompose(curve.a);
    auto [b1, ub] = cube_free_decompose(curve.b);
    auto [c1, uc] = cube_free_decompose(curve.c);
    const std::vector<Eisenstein> elems = detail::elements_up_to_norm(bound);
    for (const Eisenstein& x : elems)
        for (const Eisenstein& z : elems) {
            if (x.is_zero() && z.is_zero()) continue;
            Eisenstein rhs = c1 * z.pow(3) - a1 * x.pow(3);
            if (!divides(b1, rhs)) continue;
            auto y = detail::exact_cube_root(divide_exact(rhs, b1));
            if (!y) continue;
            CurvePoint P{x * ub * uc, *y * ua * uc, z * ua * ub};
            if (!on_curve(curve, P)) throw std::logic_error("curve_point_search: mapped point is not on the curve");
            return P;
        }
    return std::nullopt;
}

/// A k-point on the cleared torsor of alpha, within the norm bound.
inline std::optional<CurvePoint> torsor_point_search(const Integer& A, const CubeClass& alpha, const Integer& bound) {
    const Eisenstein g = alpha.representative();
    const CurveSpec C = torsor_curve(Eisenstein(A), g);
    if (alpha.trivial()) return CurvePoint{Eisenstein(1), Eisenstein(-1), Eisenstein(0)};
    if (alpha == CubeClass::of(Eisenstein(A))) {
        // g = A t^3, so (A, 0, A t) lies on g^2 x^3 + y^3 = g A z^3
        if (auto s = detail::exact_cube_root(g * Eisenstein(A * A))) {
            const Eisenstein d = gcd(Eisenstein(A), *s);
            return CurvePoint{divide_exact(Eisenstein(A), d), Eisenstein(0), divide_exact(*s, d)};
        }
    }
    return curve_point_search(C, bound);
}

struct CandidateReport {
    CubeClass alpha;
    bool in_selmer = false;
    std::vector<LocalVerdict> verdicts;
};

struct SelmerWitness {
    CubeClass alpha;
    CurveSpec curve;
    CurvePoint point;
};

struct SelmerResult {
    Integer A;
    std::vector<CubeClass> basis;  // basis[0] is the class of A
    int dimension = 0;
    int s = 0;
    int s0 = 0;
    int root_sign = 0;
    std::vector<SelmerWitness> c_witnesses;
    std::size_t candidates_tested = 0;
    std::vector<CandidateReport> candidates;
    std::string c_status;                      // what is known about C(A)
    std::vector<std::string> conditional_hypotheses;
};

struct SelmerOptions {
    Integer witness_bound = 0;  // 0 skips the point search for non-trivial basis classes
    unsigned threads = 1;
};

/// Local test of the torsor of alpha at the place of k above the prime q of 3A.
inline LocalVerdict torsor_local_test(const Integer& A, const Eisenstein& alpha, const Eisenstein& q) {
    if (is_associate_of_lambda(q)) return solvable_lambda(torsor_curve(Eisenstein(A), alpha));
    if (q.is_rational() && valuation(A, abs(q.a)) == 1) return solvable_inert_rational(A, alpha, abs(q.a));
    return solvable_kq_torsor(Eisenstein(A), alpha, q);
}

namespace detail {

using Vec = std::vector<int>;

/// Reduced row echelon basis over F_3.
inline std::vector<Vec> f3_row_reduce(std::vector<Vec> rows) {
    if (rows.empty()) return rows;
    const std::size_t n = rows[0].size();
    std::size_t rank = 0;
    for (std::size_t col = 0; col < n && rank < rows.size(); ++col) {
        std::size_t piv = rank;
        while (piv < rows.size() && rows[piv][col] == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[rank], rows[piv]);
        int inv = rows[rank][col] == 1 ? 1 : 2;
        for (int& x : rows[rank]) x = x * inv % 3;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == rank || rows[r][col] == 0) continue;
            int f = rows[r][col];
            for (std::size_t c = 0; c < n; ++c) rows[r][c] = ((rows[r][c] - f * rows[rank][c]) % 3 + 3) % 3;
        }
        ++rank;
    }
    rows.resize(rank);
    return rows;
}

}  // namespace detail

/**
 * The sqrt(-3)-Selmer group of x^3 + y^3 = A z^3 over k. Every candidate is
 * tested at every prime above 3A so each rejection carries its certificates.
 */
inline SelmerResult compute_selmer(const Integer& A, const SelmerOptions& opts = {}) {
    detail::require_selmer_input(A);
    const std::vector<Eisenstein> primes = detail::primes_of(A);
    std::vector<Eisenstein> places = primes;
    if (std::none_of(places.begin(), places.end(), [](const Eisenstein& q) { return is_associate_of_lambda(q); }))
        places.insert(places.begin(), Eisenstein::lambda());

    SelmerResult res;
    res.A = A;
    std::vector<CubeClass> cands = candidate_alphas(A);
    res.candidates.resize(cands.size());
    auto work = [&](std::size_t lo, std::size_t step) {
        for (std::size_t i = lo; i < cands.size(); i += step) {
            CandidateReport rep{cands[i], true, {}};
            const Eisenstein alpha = cands[i].representative();
            for (const Eisenstein& q : places) {
                rep.verdicts.push_back(torsor_local_test(A, alpha, q));
                rep.in_selmer = rep.in_selmer && rep.verdicts.back().solvable;
            }
            res.candidates[i] = std::move(rep);
        }
    };
    const unsigned threads = std::max(1u, opts.threads);
    if (threads == 1) {
        work(0, 1);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t, threads);
        for (auto& th : pool) th.join();
    }
    res.candidates_tested = cands.size();

    // coordinates: unit exponent, then exponents at the first r - 1 primes
    auto coords = [&](const CubeClass& c) {
        detail::Vec v{c.unit_exp};
        for (std::size_t i = 0; i + 1 < primes.size(); ++i) v.push_back(c.exponent(primes[i]));
        return v;
    };
    std::vector<detail::Vec> survivors;
    for (const auto& rep : res.candidates)
        if (rep.in_selmer) survivors.push_back(coords(rep.alpha));
    std::vector<detail::Vec> basis_rows = detail::f3_row_reduce(survivors);
    std::size_t expected = 1;
    for (std::size_t i = 0; i < basis_rows.size(); ++i) expected *= 3;
    if (survivors.size() != expected)
        throw std::logic_error("compute_selmer: surviving candidates do not form a group (internal error)");

    const CubeClass classA = CubeClass::of(Eisenstein(A));
    res.basis.push_back(classA);
    for (const auto& row : basis_rows) {
        CubeClass c;
        c.unit_exp = row[0];
        for (std::size_t i = 1; i < row.size(); ++i)
            if (row[i] != 0) c.support.emplace_back(primes[i - 1], row[i]);
        res.basis.push_back(std::move(c));
    }
    res.dimension = static_cast<int>(res.basis.size());
    res.s = res.dimension - 1;
    res.s0 = s0_of(A);
    res.root_sign = root_sign(A);
    if (((res.s - res.s0) % 2 + 2) % 2 != 0)
        throw std::logic_error("compute_selmer: parity of s(A) disagrees with s0(A) (internal error)");

    bool all_witnessed = true;
    for (const CubeClass& c : res.basis) {
        std::optional<CurvePoint> P;
        if (c == classA || opts.witness_bound > 0) P = torsor_point_search(A, c, opts.witness_bound);
        if (P)
            res.c_witnesses.push_back({c, torsor_curve(Eisenstein(A), c.representative()), *P});
        else
            all_witnessed = false;
    }
    if (all_witnessed) {
        res.c_status = "C(A) = S(A): every basis class has a global point";
    } else if (res.dimension == 2) {
        res.c_status = "C(A) = S(A), conditional on finiteness of Ш(E_" + A.str() + "/Q)";
        res.conditional_hypotheses.push_back("Ш(E_" + A.str() + "/Q) is finite");
    } else {
        res.c_status = "C(A) contains the classes with recorded points; the rest is undetermined";
    }
    return res;
}

}  // namespace diagcubic
