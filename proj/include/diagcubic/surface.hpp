#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "diagcubic/curve.hpp"
#include "diagcubic/eisenstein.hpp"
#include "diagcubic/integer.hpp"
#include "diagcubic/localsolve.hpp"
#include "diagcubic/residues.hpp"
#include "diagcubic/selmer.hpp"

namespace diagcubic {

/// sum: a1 x1^3 + a2 x2^3 + a3 x3^3 + a4 x4^3 = 0; split: a1 x1^3 + a2 x2^3 = a3 x3^3 + a4 x4^3.
enum class SurfaceForm { sum, split };

inline const char* to_string(SurfaceForm f) { return f == SurfaceForm::sum ? "sum" : "split"; }

/**
 * A diagonal cubic surface with cube-free integer coefficients in split form.
 * The input coefficients relate to the stored ones by
 * input[i] * multiplier = a[i] * cube_factor[i]^3 (after the sign change of
 * a3, a4 for the sum form).
 */
struct SurfaceSpec {
    std::array<Integer, 4> a;
    SurfaceForm form = SurfaceForm::split;
    std::array<Rational, 4> input;
    Integer multiplier = 1;
    std::array<Integer, 4> cube_factor{1, 1, 1, 1};
    std::map<Integer, std::array<int, 4>> profile;

    Integer product() const { return a[0] * a[1] * a[2] * a[3]; }

    std::string to_string() const {
        return a[0].str() + "*x1^3 + " + a[1].str() + "*x2^3 = " + a[2].str() + "*x3^3 + " + a[3].str() + "*x4^3";
    }
};

using SurfacePoint = std::array<Integer, 4>;

namespace detail {

inline std::pair<Integer, Integer> strip_cubes(const Integer& n) {
    Integer free = n < 0 ? Integer(-1) : Integer(1), root = 1;
    for (const auto& [p, e] : factor_integer(abs(n))) {
        free *= boost::multiprecision::pow(p, static_cast<unsigned>(e % 3));
        root *= boost::multiprecision::pow(p, static_cast<unsigned>(e / 3));
    }
    return {free, root};
}

inline bool allowed_profile(std::array<int, 4> v) {
    std::sort(v.begin(), v.end());
    static const std::array<std::array<int, 4>, 5> ok{{{0, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, 0, 2}, {0, 0, 1, 1}, {0, 0, 1, 2}}};
    return std::find(ok.begin(), ok.end(), v) != ok.end();
}

inline std::set<Integer> prime_support(const std::array<Integer, 4>& a) {
    std::set<Integer> ps;
    for (const Integer& x : a)
        for (const auto& [p, e] : factor_integer(abs(x))) ps.insert(p);
    return ps;
}

}  // namespace detail

/// Clears denominators, strips cubes and shifts valuations per prime into a standard profile.
inline SurfaceSpec normalize(const std::array<Rational, 4>& coeffs, SurfaceForm form = SurfaceForm::split) {
    for (const Rational& c : coeffs)
        if (c == 0) throw std::invalid_argument("normalize: zero coefficient");
    SurfaceSpec s;
    s.form = form;
    s.input = coeffs;
    std::array<Rational, 4> split = coeffs;
    if (form == SurfaceForm::sum) {
        split[2] = -split[2];
        split[3] = -split[3];
    }
    Integer D = 1;
    for (const Rational& c : split) D = boost::multiprecision::lcm(D, denominator(c));
    std::array<Integer, 4> b;
    for (int i = 0; i < 4; ++i) {
        b[i] = numerator(split[i]) * (D / denominator(split[i]));
        auto [free, root] = detail::strip_cubes(b[i]);
        b[i] = free;
        s.cube_factor[i] = root;
    }
    Integer M = 1;
    for (const Integer& p : detail::prime_support(b)) {
        std::array<int, 4> v;
        for (int i = 0; i < 4; ++i) v[i] = valuation(b[i], p);
        for (int t = 0; t < 3; ++t) {
            std::array<int, 4> w;
            for (int i = 0; i < 4; ++i) w[i] = (v[i] + t) % 3;
            if (detail::allowed_profile(w)) {
                M *= boost::multiprecision::pow(p, static_cast<unsigned>(t));
                break;
            }
        }
    }
    for (int i = 0; i < 4; ++i) {
        auto [free, root] = detail::strip_cubes(b[i] * M);
        s.a[i] = free;
        s.cube_factor[i] *= root;
    }
    s.multiplier = D * M;
    for (const Integer& p : detail::prime_support(s.a)) {
        std::array<int, 4> v;
        for (int i = 0; i < 4; ++i) v[i] = valuation(s.a[i], p);
        s.profile[p] = v;
    }
    return s;
}

inline SurfaceSpec normalize(const std::array<Integer, 4>& coeffs, SurfaceForm form = SurfaceForm::split) {
    return normalize(std::array<Rational, 4>{Rational(coeffs[0]), Rational(coeffs[1]), Rational(coeffs[2]), Rational(coeffs[3])}, form);
}

/// Maps a point of the stored split-form equation to coordinates of the input equation.
inline SurfacePoint to_input_coordinates(const SurfaceSpec& s, const SurfacePoint& x) {
    Integer L = 1;
    for (const Integer& c : s.cube_factor) L = boost::multiprecision::lcm(L, c);
    SurfacePoint out;
    for (int i = 0; i < 4; ++i) out[i] = x[i] * (L / s.cube_factor[i]);
    if (s.form == SurfaceForm::sum) {
        out[2] = -out[2];
        out[3] = -out[3];
    }
    Integer g = 0;
    for (const Integer& c : out) g = gcd(g, abs(c));
    if (g > 1)
        for (Integer& c : out) c /= g;
    return out;
}

/// Exact check of a point on the split-form equation.
inline bool on_surface(const SurfaceSpec& s, const SurfacePoint& x) {
    if (std::all_of(x.begin(), x.end(), [](const Integer& c) { return c == 0; })) return false;
    Integer l = s.a[0] * x[0] * x[0] * x[0] + s.a[1] * x[1] * x[1] * x[1];
    Integer r = s.a[2] * x[2] * x[2] * x[2] + s.a[3] * x[3] * x[3] * x[3];
    return l == r;
}

/// Exact check of a point on the input equation.
inline bool on_input_surface(const SurfaceSpec& s, const SurfacePoint& x) {
    if (std::all_of(x.begin(), x.end(), [](const Integer& c) { return c == 0; })) return false;
    Rational t = 0;
    for (int i = 0; i < 4; ++i) {
        Rational term = s.input[i] * Rational(x[i] * x[i] * x[i]);
        t += (s.form == SurfaceForm::split && i >= 2) ? -term : term;
    }
    return t == 0;
}

namespace detail {

/// The three pairings a1a2/a3a4, a1a3/a2a4, a1a4/a2a3.
inline std::array<Rational, 3> pairing_ratios(const std::array<Integer, 4>& a) {
    return {ratio(a[0] * a[1], a[2] * a[3]), ratio(a[0] * a[2], a[1] * a[3]), ratio(a[0] * a[3], a[1] * a[2])};
}

}  // namespace detail

/// Index (0..2) of a pairing ratio that is a rational cube, if any.
inline std::optional<int> selmer_ratio_criterion(const SurfaceSpec& s) {
    auto r = detail::pairing_ratios(s.a);
    for (int i = 0; i < 3; ++i)
        if (is_cube(r[i])) return i;
    return std::nullopt;
}

inline bool birational_to_plane_over_Qp(const SurfaceSpec& s, const Integer& p) {
    for (const Rational& r : detail::pairing_ratios(s.a))
        if (is_cube_in_Qp(r, p)) return true;
    return false;
}

/// Primes where the surface may fail to have local points: 3 and the primes of a1a2a3a4.
inline std::vector<Integer> surface_bad_primes(const SurfaceSpec& s) {
    std::set<Integer> ps = detail::prime_support(s.a);
    ps.insert(3);
    return {ps.begin(), ps.end()};
}

/// A choice of C_p with the verdicts for a1 x^3 + a2 y^3 = C z^3 and a3 x^3 + a4 y^3 = C z^3.
struct LocalCondition {
    Integer p;
    Integer C;
    LocalVerdict first;
    LocalVerdict second;
};

/**
 * Candidate C_p in sweep order, one per class of Q_p^* / (Q_p^*)^3: first the
 * shapes a_i, a_i a_j and their multiples by p and p^2, then any class not
 * yet represented.
 */
inline std::vector<Integer> descent_constants(const SurfaceSpec& s, const Integer& p) {
    std::vector<Integer> shapes;
    for (int i = 0; i < 4; ++i) shapes.push_back(s.a[i]);
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) shapes.push_back(s.a[i] * s.a[j]);
    const std::size_t n = shapes.size();
    for (std::size_t k = 0; k < n; ++k) shapes.push_back(shapes[k] * p);
    for (std::size_t k = 0; k < n; ++k) shapes.push_back(shapes[k] * p * p);
    std::vector<Integer> out;
    std::set<QpCubeClass> seen;
    for (const Integer& c : shapes)
        if (seen.insert(cube_class_Qp(Rational(c), p)).second) out.push_back(c);
    const int units = p == 3 || mod_floor(p, 3) == 1 ? 3 : 1;
    for (int v = 0; v < 3; ++v)
        for (int u = 0; u < units; ++u) {
            QpCubeClass cls{v, u};
            if (seen.insert(cls).second) out.push_back(cube_class_representative(cls, p));
        }
    return out;
}

/// All C_p (one per cube class) for which both curves have Q_p-points.
inline std::vector<LocalCondition> local_conditions(const SurfaceSpec& s, const Integer& p) {
    std::vector<LocalCondition> out;
    for (const Integer& C : descent_constants(s, p)) {
        LocalVerdict v1 = solvable_Qp(CurveSpec(Eisenstein(s.a[0]), Eisenstein(s.a[1]), Eisenstein(C)), p);
        LocalVerdict v2 = solvable_Qp(CurveSpec(Eisenstein(s.a[2]), Eisenstein(s.a[3]), Eisenstein(C)), p);
        if (v1.solvable && v2.solvable) out.push_back({p, C, std::move(v1), std::move(v2)});
    }
    return out;
}

struct LocalSurfaceReport {
    bool solvable = true;
    std::vector<LocalCondition> conditions;  // first valid C_p at each bad prime
    std::vector<Integer> failing_primes;
};

/// V has points in every completion iff a valid C_p exists at every bad prime.
inline LocalSurfaceReport everywhere_local_surface(const SurfaceSpec& s) {
    LocalSurfaceReport out;
    for (const Integer& p : surface_bad_primes(s)) {
        auto conds = local_conditions(s, p);
        if (conds.empty()) {
            out.solvable = false;
            out.failing_primes.push_back(p);
        } else {
            out.conditions.push_back(std::move(conds.front()));
        }
    }
    return out;
}

/// A criterion from the catalogue that holds for V after relabelling the coefficients.
struct CriterionHit {
    std::string label;
    std::array<int, 4> order;  // coefficient indices playing a1..a4
    std::vector<Integer> primes;
    std::string detail;
};

struct CriteriaReport {
    bool locally_solvable = false;
    std::optional<int> ratio_cube;  // the Hasse principle already holds when set
    std::vector<CriterionHit> hits;
};

namespace detail {

inline std::string order_string(const std::array<int, 4>& o) {
    std::string s;
    for (int i = 0; i < 4; ++i) s += (i ? "," : "") + std::string("a") + std::to_string(o[i] + 1);
    return s;
}

/// Conditions of each sufficient criterion for the labelled tuple b.
inline void evaluate_criteria(const std::array<Integer, 4>& b, const std::array<int, 4>& order,
                              const std::vector<Integer>& primes, std::map<std::string, CriterionHit>& found) {
    auto add = [&](const std::string& label, std::vector<Integer> ps, std::string detail) {
        if (!found.count(label)) found[label] = CriterionHit{label, order, std::move(ps), std::move(detail)};
    };
    auto mask = [&](const Integer& p) {
        int m = 0;
        for (int i = 0; i < 4; ++i)
            if (b[i] % p == 0) m |= 1 << i;
        return m;
    };
    auto only = [](int i) { return 1 << i; };
    auto v3 = [&](int i) { return valuation(b[i], Integer(3)); };
    auto cls3 = [&](int i) { return cube_class_Q3(Rational(b[i])); };
    auto cube3 = [&](int i, int j) { return is_cube_in_Qp(ratio(b[i], b[j]), Integer(3)); };
    SurfaceSpec tmp;
    tmp.a = b;
    const bool plane3 = birational_to_plane_over_Qp(tmp, 3);

    std::vector<Integer> away;
    for (const Integer& p : primes)
        if (p != 3) away.push_back(p);

    // away from 3
    for (const Integer& p1 : away) {
        if (mask(p1) != only(0)) continue;
        for (const Integer& p3 : away)
            if (mask(p3) == only(2)) add("away3-a", {p1, p3}, "p1 divides only a1, p3 divides only a3");
        std::set<QpCubeClass> cl{cube_class_Qp(Rational(b[1]), p1), cube_class_Qp(Rational(b[2]), p1),
                                 cube_class_Qp(Rational(b[3]), p1)};
        if (cl.size() > 1) add("away3-b", {p1}, "p divides only a1; a2, a3, a4 not all in one cube class");
    }
    for (const Integer& p : away) {
        int m = mask(p);
        if (__builtin_popcount(static_cast<unsigned>(m)) == 2 && !birational_to_plane_over_Qp(tmp, p))
            add("away3-c", {p}, "p divides exactly two coefficients; not birational to a plane over Q_p");
    }

    const bool units234 = v3(1) == 0 && v3(2) == 0 && v3(3) == 0;
    auto prime_with_mask = [&](int m) -> std::optional<Integer> {
        for (const Integer& p : away)
            if (mask(p) == m) return p;
        return std::nullopt;
    };
    if (v3(0) > 0 && units234) {
        auto c2 = cls3(1), c3 = cls3(2), c4 = cls3(3);
        int same = (c2 == c3) + (c3 == c4) + (c2 == c4);
        if (same >= 1)
            if (auto p = prime_with_mask(only(2))) add("at3-i", {3, *p}, "3 | a1, two of a2, a3, a4 share a cube class");
        if (v3(0) == 1 && same < 3)
            if (auto p = prime_with_mask(only(0))) add("at3-ii", {3, *p}, "3 || a1, a2, a3, a4 not all in one cube class");
        if (v3(0) == 2 && same == 1) add("at3-iii", {3}, "9 || a1, exactly two of a2, a3, a4 share a cube class");
    }
    if (v3(0) == 1 && v3(2) == 1 && v3(1) == 0 && v3(3) == 0 && !plane3 && cube3(0, 2))
        add("at3-iv", {3}, "3 || a1, 3 || a3, a1/a3 a cube in Q_3");
    if (v3(0) == 2 && v3(2) == 1 && v3(1) == 0 && v3(3) == 0 && !plane3) {
        for (const Integer& p : primes) {
            int m = mask(p);
            if ((m == only(0) || m == only(1))) {
                add("at3-v", {3, p}, "9 || a1, 3 || a3, p divides exactly one of a1, a2");
                break;
            }
        }
    }
    if (v3(0) == 0 && units234 && !plane3 && cube3(0, 1) && cube3(1, 2) && !cube3(2, 3))
        if (auto p = prime_with_mask(only(0))) add("at3-vi", {3, *p}, "3 does not divide a1a2a3a4; a1/a2, a2/a3 cubes in Q_3");
}

}  // namespace detail

/**
 * Sufficient criteria for a rational point (conditional on finiteness of Ш of
 * the curves x^3 + y^3 = A z^3 over quadratic fields), tried under every
 * relabelling of the coefficients; each label is reported once, with the
 * first relabelling that satisfies it.
 */
inline CriteriaReport sufficient_criteria(const SurfaceSpec& s) {
    CriteriaReport out;
    out.ratio_cube = selmer_ratio_criterion(s);
    out.locally_solvable = everywhere_local_surface(s).solvable;
    if (!out.locally_solvable) return out;
    std::set<Integer> ps = detail::prime_support(s.a);
    std::vector<Integer> primes(ps.begin(), ps.end());
    std::array<int, 4> order{0, 1, 2, 3};
    std::map<std::string, CriterionHit> found;
    do {
        std::array<Integer, 4> b{s.a[order[0]], s.a[order[1]], s.a[order[2]], s.a[order[3]]};
        detail::evaluate_criteria(b, order, primes, found);
    } while (std::next_permutation(order.begin(), order.end()));
    static const std::vector<std::string> labels{"away3-a", "away3-b", "away3-c", "at3-i",  "at3-ii",
                                                 "at3-iii", "at3-iv",  "at3-v",   "at3-vi"};
    for (const auto& l : labels)
        if (found.count(l)) out.hits.push_back(found[l]);
    return out;
}

/// Local data making curve (3) insolvable at p1 and curve (4) insolvable at p3.
struct DescentWitness {
    std::array<int, 4> order{0, 1, 2, 3};  // input indices playing a1..a4
    std::array<Integer, 4> a;              // the relabelled split-form coefficients
    std::vector<LocalCondition> conditions;  // chosen C_p at every bad prime
    Integer p1, p3;
    Integer C1, C3;
    CurveSpec curve3, curve4;
    LocalVerdict obstruction3, obstruction4;
};

struct DescentSearch {
    bool locally_solvable = false;
    std::optional<int> ratio_cube;
    std::optional<DescentWitness> witness;
    std::string note;
};

/// a3^2 x^3 + a4^2 y^3 = a1a2a3a4 C z^3.
inline CurveSpec obstruction_curve3(const SurfaceSpec& s, const Integer& C) {
    return CurveSpec(Eisenstein(s.a[2] * s.a[2]), Eisenstein(s.a[3] * s.a[3]), Eisenstein(s.product() * C));
}

/// a1^2 x^3 + a2^2 y^3 = a1a2a3a4 C z^3.
inline CurveSpec obstruction_curve4(const SurfaceSpec& s, const Integer& C) {
    return CurveSpec(Eisenstein(s.a[0] * s.a[0]), Eisenstein(s.a[1] * s.a[1]), Eisenstein(s.product() * C));
}

/// The same surface written with the pairing {order[0], order[1]} | {order[2], order[3]}.
inline SurfaceSpec relabel(const SurfaceSpec& s, const std::array<int, 4>& order) {
    std::array<Integer, 4> sum{s.a[0], s.a[1], -s.a[2], -s.a[3]};
    SurfaceSpec t = s;
    t.a = {sum[order[0]], sum[order[1]], -sum[order[2]], -sum[order[3]]};
    t.profile.clear();
    for (const auto& [p, v] : s.profile) t.profile[p] = {v[order[0]], v[order[1]], v[order[2]], v[order[3]]};
    return t;
}

namespace detail {

inline std::optional<DescentWitness> witness_for_pairing(const SurfaceSpec& s, const std::vector<Integer>& primes,
                                                         const std::map<Integer, std::vector<LocalCondition>>& conds) {
    struct Hit {
        const LocalCondition* cond;
        LocalVerdict verdict;
    };
    std::map<Integer, std::vector<Hit>> s3, s4;
    for (const Integer& p : primes)
        for (const LocalCondition& c : conds.at(p)) {
            LocalVerdict v3 = solvable_Qp(obstruction_curve3(s, c.C), p);
            LocalVerdict v4 = solvable_Qp(obstruction_curve4(s, c.C), p);
            if (!v3.solvable) s3[p].push_back({&c, v3});
            if (!v4.solvable) s4[p].push_back({&c, v4});
        }
    for (const Integer& p1 : primes)
        for (const Hit& h3 : s3[p1])
            for (const Integer& p3 : primes)
                for (const Hit& h4 : s4[p3]) {
                    if (p1 == p3 && h3.cond->C != h4.cond->C) continue;
                    DescentWitness w;
                    w.a = s.a;
                    for (const Integer& p : primes) {
                        if (p == p1) w.conditions.push_back(*h3.cond);
                        else if (p == p3) w.conditions.push_back(*h4.cond);
                        else w.conditions.push_back(conds.at(p).front());
                    }
                    w.p1 = p1;
                    w.p3 = p3;
                    w.C1 = h3.cond->C;
                    w.C3 = h4.cond->C;
                    w.curve3 = obstruction_curve3(s, w.C1);
                    w.curve4 = obstruction_curve4(s, w.C3);
                    w.obstruction3 = h3.verdict;
                    w.obstruction4 = h4.verdict;
                    return w;
                }
    return std::nullopt;
}

}  // namespace detail

/**
 * Sweeps the C_p of every cube class at every bad prime (3 first) for a choice
 * meeting the obstruction conditions, under each of the three pairings of the
 * coefficients (the given one first). At good primes both obstruction curves
 * are always solvable, so they are never candidates for p1 or p3.
 */
inline DescentSearch descent_witness_search(const SurfaceSpec& s, bool stop_on_ratio = true) {
    DescentSearch out;
    out.ratio_cube = selmer_ratio_criterion(s);
    if (out.ratio_cube && stop_on_ratio) {
        out.note = "a pairing ratio is a rational cube; the Hasse principle applies without a witness";
        out.locally_solvable = everywhere_local_surface(s).solvable;
        return out;
    }
    std::vector<Integer> primes = surface_bad_primes(s);
    std::stable_partition(primes.begin(), primes.end(), [](const Integer& p) { return p == 3; });
    static const std::array<std::array<int, 4>, 3> pairings{{{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2}}};
    for (const auto& order : pairings) {
        const SurfaceSpec t = relabel(s, order);
        std::map<Integer, std::vector<LocalCondition>> conds;
        for (const Integer& p : primes) {
            conds[p] = local_conditions(t, p);
            if (conds[p].empty()) {
                out.locally_solvable = false;
                out.note = "no local points at " + p.str();
                return out;
            }
        }
        out.locally_solvable = true;
        if (auto w = detail::witness_for_pairing(t, primes, conds)) {
            w->order = order;
            out.witness = std::move(w);
            return out;
        }
    }
    out.note = "no witness over the full set of C_p classes at the bad primes, under any pairing";
    return out;
}

/**
 * Exhaustive search over primitive integer points of the stored split-form
 * equation with max |x_i| <= bound, solving for x4. The smallest point in
 * (max |x_i|, lexicographic) order wins, sign-normalized so the first nonzero
 * coordinate is positive.
 */
inline std::optional<SurfacePoint> surface_point_search(const SurfaceSpec& s, std::int64_t bound, unsigned threads = 1) {
    if (bound < 0) throw std::invalid_argument("surface_point_search: negative bound");
    if (bound > (1 << 16)) throw std::invalid_argument("surface_point_search: bound too large");
    for (const Integer& c : s.a)
        if (abs(c) > (Integer(1) << 60)) throw std::invalid_argument("surface_point_search: coefficients too large");
    using i128 = __int128;
    const std::array<i128, 4> a{static_cast<i128>(static_cast<std::int64_t>(s.a[0])), static_cast<i128>(static_cast<std::int64_t>(s.a[1])),
                                static_cast<i128>(static_cast<std::int64_t>(s.a[2])), static_cast<i128>(static_cast<std::int64_t>(s.a[3]))};
    using Key = std::pair<std::int64_t, std::array<std::int64_t, 4>>;
    auto icbrt = [](i128 v) -> std::optional<std::int64_t> {
        bool neg = v < 0;
        if (neg) v = -v;
        auto r = static_cast<std::int64_t>(std::llround(std::cbrt(static_cast<long double>(v))));
        for (std::int64_t c = std::max<std::int64_t>(0, r - 2); c <= r + 2; ++c)
            if (static_cast<i128>(c) * c * c == v) return neg ? -c : c;
        return std::nullopt;
    };
    auto scan = [&](std::int64_t x1lo, std::int64_t step) {
        std::optional<Key> best;
        for (std::int64_t x1 = -bound + x1lo; x1 <= bound; x1 += step)
            for (std::int64_t x2 = -bound; x2 <= bound; ++x2)
                for (std::int64_t x3 = -bound; x3 <= bound; ++x3) {
                    i128 rhs = a[0] * x1 * x1 * x1 + a[1] * x2 * x2 * x2 - a[2] * x3 * x3 * x3;
                    if (rhs % a[3] != 0) continue;
                    auto x4 = icbrt(rhs / a[3]);
                    if (!x4 || *x4 > bound || *x4 < -bound) continue;
                    std::array<std::int64_t, 4> x{x1, x2, x3, *x4};
                    std::int64_t g = 0, h = 0;
                    for (auto c : x) {
                        g = std::gcd(g, c < 0 ? -c : c);
                        h = std::max(h, c < 0 ? -c : c);
                    }
                    if (g != 1) continue;
                    auto first = std::find_if(x.begin(), x.end(), [](std::int64_t c) { return c != 0; });
                    if (*first < 0) continue;  // the negated tuple is also scanned
                    Key k{h, x};
                    if (!best || k < *best) best = k;
                }
        return best;
    };
    std::optional<Key> best;
    threads = std::max(1u, threads);
    if (threads == 1) {
        best = scan(0, 1);
    } else {
        std::vector<std::optional<Key>> parts(threads);
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back([&, t] { parts[t] = scan(static_cast<std::int64_t>(t), static_cast<std::int64_t>(threads)); });
        for (auto& th : pool) th.join();
        for (const auto& p : parts)
            if (p && (!best || *p < *best)) best = p;
    }
    if (!best) return std::nullopt;
    SurfacePoint P{Integer(best->second[0]), Integer(best->second[1]), Integer(best->second[2]), Integer(best->second[3])};
    if (!on_surface(s, P)) throw std::logic_error("surface_point_search: point fails the exact check");
    return P;
}

/// A point over k on the split-form equation.
using SurfacePointK = std::array<Eisenstein, 4>;

/**
 * Given P1 on a1 x^3 + a2 y^3 = B w^3 and P2 on a3 x^3 + a4 y^3 = B w^3,
 * rescales both to a common w and returns (x1, x2, x3, x4) on the split form.
 */
inline SurfacePointK combine_descent_point(const SurfaceSpec& s, const Eisenstein& B, const CurvePoint& P1, const CurvePoint& P2) {
    if (B.is_zero()) throw std::invalid_argument("combine_descent_point: B must be nonzero");
    const CurveSpec C1(Eisenstein(s.a[0]), Eisenstein(s.a[1]), B), C2(Eisenstein(s.a[2]), Eisenstein(s.a[3]), B);
    if (!on_curve(C1, P1) || !on_curve(C2, P2)) throw std::invalid_argument("combine_descent_point: points are not on the curves");
    SurfacePointK x;
    if (P1.z.is_zero() && P2.z.is_zero()) {
        x = {P1.x, P1.y, P2.x, P2.y};
    } else {
        x = {P1.x * P2.z, P1.y * P2.z, P2.x * P1.z, P2.y * P1.z};
    }
    Eisenstein l = Eisenstein(s.a[0]) * x[0].pow(3) + Eisenstein(s.a[1]) * x[1].pow(3);
    Eisenstein r = Eisenstein(s.a[2]) * x[2].pow(3) + Eisenstein(s.a[3]) * x[3].pow(3);
    if (l != r || std::all_of(x.begin(), x.end(), [](const Eisenstein& c) { return c.is_zero(); }))
        throw std::logic_error("combine_descent_point: combined point fails the exact check");
    return x;
}

/**
 * A rational point from a point P over k on sum c_i x_i^3 = 0: the line
 * through P and its conjugate is defined over Q and meets the surface in a
 * third point. Returns nothing when that construction degenerates.
 */
inline std::optional<SurfacePoint> rational_point_from_k_point(const std::array<Integer, 4>& c, const SurfacePointK& P) {
    auto on = [&](const SurfacePoint& x) {
        if (std::all_of(x.begin(), x.end(), [](const Integer& v) { return v == 0; })) return false;
        Integer t = 0;
        for (int i = 0; i < 4; ++i) t += c[i] * x[i] * x[i] * x[i];
        return t == 0;
    };
    auto primitive = [](SurfacePoint x) {
        Integer g = 0;
        for (const Integer& v : x) g = gcd(g, abs(v));
        if (g > 1)
            for (Integer& v : x) v /= g;
        auto first = std::find_if(x.begin(), x.end(), [](const Integer& v) { return v != 0; });
        if (first != x.end() && *first < 0)
            for (Integer& v : x) v = -v;
        return x;
    };
    if (std::all_of(P.begin(), P.end(), [](const Eisenstein& v) { return v.is_rational(); })) {
        SurfacePoint x{P[0].a, P[1].a, P[2].a, P[3].a};
        if (on(x)) return primitive(x);
    }
    Eisenstein B(0);
    for (int i = 0; i < 4; ++i) B += Eisenstein(c[i]) * P[i] * P[i] * P[i].conj();
    // third point conj(B) P - B conj(P), which is (1 + 2w) times minus the w-part of B conj(P)
    SurfacePoint R;
    for (int i = 0; i < 4; ++i) R[i] = -(B * P[i].conj()).b;
    if (on(R)) return primitive(R);
    // the line lies on the surface: its rational points include the trace
    SurfacePoint T;
    for (int i = 0; i < 4; ++i) T[i] = (P[i] + P[i].conj()).a;
    if (on(T)) return primitive(T);
    SurfacePoint D;
    for (int i = 0; i < 4; ++i) D[i] = (P[i] - P[i].conj()).b;
    if (on(D)) return primitive(D);
    return std::nullopt;
}

struct PrimeTripleReport {
    std::array<Integer, 3> primes;   // as given
    std::array<Integer, 3> ordered;  // relabelled so p3 is the odd one out
    std::string pattern;
    bool duplicates = false;
    SurfaceSpec surface;  // x1^3 + p1p2 x2^3 + p2p3 x3^3 + p3p1 x4^3 = 0
    std::optional<Integer> A;
    std::optional<SelmerResult> selmer;
    std::optional<CubeClass> distinguished;
    std::optional<CurveSpec> torsor;
    std::optional<CurvePoint> torsor_point;
    std::optional<SurfacePoint> surface_point;  // in the input (sum form) coordinates
    std::string conclusion;
    std::vector<std::string> conditional_hypotheses;
};

struct PipelineOptions {
    Integer torsor_bound = 400;
    std::int64_t surface_bound = 0;
    unsigned threads = 1;
};

/**
 * For primes p_i = 2, 5 (mod 9): the Selmer group of the matching A has order
 * 9, which (given finiteness of Ш(E_A/Q)) puts a k-point on the distinguished
 * torsor and hence a rational point on V.
 */
inline PrimeTripleReport prime_triple_pipeline(const std::array<Integer, 3>& p, const PipelineOptions& opts = {}) {
    for (const Integer& q : p) {
        if (!is_prime(q)) throw std::invalid_argument("not a prime: " + q.str());
        Integer r = mod_floor(q, 9);
        if (r != 2 && r != 5) throw std::invalid_argument("prime " + q.str() + " is not 2 or 5 mod 9");
    }
    PrimeTripleReport rep;
    rep.primes = p;
    rep.surface = normalize(std::array<Integer, 4>{1, p[0] * p[1], p[1] * p[2], p[2] * p[0]}, SurfaceForm::sum);
    auto sumform = [&](const SurfacePoint& x) {
        Integer t = x[0] * x[0] * x[0] + p[0] * p[1] * x[1] * x[1] * x[1] + p[1] * p[2] * x[2] * x[2] * x[2] +
                    p[2] * p[0] * x[3] * x[3] * x[3];
        return t == 0 && std::any_of(x.begin(), x.end(), [](const Integer& v) { return v != 0; });
    };
    if (p[0] == p[1] || p[1] == p[2] || p[0] == p[2]) {
        rep.duplicates = true;
        rep.ordered = p;
        rep.pattern = "repeated prime";
        // two equal coefficients give an obvious point
        SurfacePoint x{0, 0, 0, 0};
        if (p[0] == p[1]) x = {0, 0, 1, -1};       // p2p3 = p3p1
        else if (p[1] == p[2]) x = {0, 1, 0, -1};  // p1p2 = p3p1
        else x = {0, 1, -1, 0};                    // p1p2 = p2p3
        if (!sumform(x)) throw std::logic_error("prime_triple_pipeline: obvious point fails the exact check");
        rep.surface_point = x;
        rep.conclusion = "V(Q) is nonempty: exact point from two equal coefficients";
        return rep;
    }
    std::array<int, 3> r{};
    for (int i = 0; i < 3; ++i) r[i] = static_cast<int>(mod_floor(p[i], 9));
    std::array<Integer, 3> o = p;
    bool all_same = r[0] == r[1] && r[1] == r[2];
    if (!all_same) {
        int odd = r[1] == r[2] ? 0 : (r[0] == r[2] ? 1 : 2);
        std::array<Integer, 2> pair;
        int k = 0;
        for (int i = 0; i < 3; ++i)
            if (i != odd) pair[k++] = p[i];
        o = {pair[0], pair[1], p[odd]};
    }
    rep.ordered = o;
    auto res = [&](const Integer& q) { return std::to_string(static_cast<int>(mod_floor(q, 9))); };
    rep.pattern = "(" + res(o[0]) + "," + res(o[1]) + "," + res(o[2]) + ")";
    const Integer A = all_same ? (o[0] * o[1] * o[2]) * (o[0] * o[1] * o[2]) : o[0] * o[1] * o[2] * o[2];
    rep.A = A;
    SelmerOptions so;
    so.threads = opts.threads;
    rep.selmer = compute_selmer(A, so);
    if (rep.selmer->dimension != 2)
        throw std::logic_error("prime_triple_pipeline: Selmer group of " + A.str() + " does not have order 9 (internal error)");
    rep.distinguished = CubeClass::of(Eisenstein(o[0] * o[1] * o[1]));
    {
        bool inside = false;
        const CubeClass cA = rep.selmer->basis[0], b1 = rep.selmer->basis[1];
        for (int i = 0; i < 3 && !inside; ++i)
            for (int j = 0; j < 3 && !inside; ++j) inside = cA.pow(i) * b1.pow(j) == *rep.distinguished;
        if (!inside) throw std::logic_error("prime_triple_pipeline: p1 p2^2 is not in the Selmer group (internal error)");
    }
    // the torsor of p1 p2^2, written as p2p3 x^3 + p3p1 y^3 = C z^3
    const Integer C = all_same ? o[0] * o[1] : Integer(1);
    rep.torsor = CurveSpec(Eisenstein(o[1] * o[2]), Eisenstein(o[2] * o[0]), Eisenstein(C));
    const std::string sha = "Ш(E_" + A.str() + "/Q) is finite";
    rep.conditional_hypotheses.push_back(sha);
    rep.conclusion = "V(Q) is nonempty, conditional on: " + sha;
    if (opts.torsor_bound > 0) rep.torsor_point = curve_point_search(*rep.torsor, opts.torsor_bound);
    if (rep.torsor_point) {
        // p2p3 x^3 + p3p1 y^3 = C z^3 on V: x_j = x, x_k = y, and x1 or x2 carries z
        SurfacePointK P{Eisenstein(0), Eisenstein(0), Eisenstein(0), Eisenstein(0)};
        std::array<Integer, 4> coeff{1, p[0] * p[1], p[1] * p[2], p[2] * p[0]};
        auto slot = [&](const Integer& c) {
            for (int i = 0; i < 4; ++i)
                if (coeff[i] == c) return i;
            throw std::logic_error("prime_triple_pipeline: coefficient not found");
        };
        P[slot(o[1] * o[2])] = rep.torsor_point->x;
        P[slot(o[2] * o[0])] = rep.torsor_point->y;
        P[slot(all_same ? o[0] * o[1] : Integer(1))] = -rep.torsor_point->z;
        if (auto x = rational_point_from_k_point(coeff, P)) {
            if (!sumform(*x)) throw std::logic_error("prime_triple_pipeline: descended point fails the exact check");
            rep.surface_point = *x;
        }
    }
    if (!rep.surface_point && opts.surface_bound > 0)
        if (auto x = surface_point_search(rep.surface, opts.surface_bound, opts.threads))
            rep.surface_point = to_input_coordinates(rep.surface, *x);
    if (rep.surface_point)
        rep.conclusion = "V(Q) is nonempty: exact point found; the descent argument also gives this conditional on: " + sha;
    return rep;
}

}  // namespace diagcubic
