#include <gtest/gtest.h>

#include <algorithm>

#include "diagcubic/oracle.hpp"
#include "diagcubic/surface.hpp"
#include "support.hpp"

using namespace diagcubic;
using testing_support::uniform;

namespace {

const Eisenstein w = Eisenstein::zeta();

SurfaceSpec split(long a1, long a2, long a3, long a4) { return normalize(std::array<Integer, 4>{a1, a2, a3, a4}); }
SurfaceSpec sum(long a1, long a2, long a3, long a4) {
    return normalize(std::array<Integer, 4>{a1, a2, a3, a4}, SurfaceForm::sum);
}

bool has_label(const CriteriaReport& r, const std::string& label) {
    return std::any_of(r.hits.begin(), r.hits.end(), [&](const CriterionHit& h) { return h.label == label; });
}

/**
 * Q_p-point on a1 x1^3 + a2 x2^3 - a3 x3^3 - a4 x4^3 = 0 by digit-by-digit
 * search over all four coordinates, accepting a Hensel-certified residue.
 */
oracle::Outcome brute_surface(const std::array<Integer, 4>& a, long p) {
    const Place place = Place::rational(p);
    const int depth = place.certified_depth();
    const LocalRing R(place, depth);
    using El = LocalRing::Element;
    std::array<El, 4> c{R.from(Eisenstein(a[0])), R.from(Eisenstein(a[1])), R.from(Eisenstein(-a[2])), R.from(Eisenstein(-a[3]))};
    const El three = R.from(Eisenstein(3));
    bool truncated = false;
    std::uint64_t nodes = 0;
    struct Node {
        std::array<El, 4> x;
        int level;
    };
    for (int unit = 0; unit < 4; ++unit) {
        std::array<El, 4> start{};
        start[unit] = {1, 0};
        std::vector<Node> stack{{start, 0}};
        while (!stack.empty()) {
            Node n = stack.back();
            stack.pop_back();
            if (++nodes > 50'000'000ULL) return oracle::Outcome::unknown;
            El F{0, 0};
            int vG = depth;
            for (int i = 0; i < 4; ++i) {
                El sq = R.mul(n.x[i], n.x[i]);
                F = R.add(F, R.mul(c[i], R.mul(sq, n.x[i])));
                vG = std::min(vG, R.valuation(R.mul(three, R.mul(c[i], sq))));
            }
            int vF = R.valuation(F);
            if (n.level > 0 && vF > 2 * vG) return oracle::Outcome::solvable;
            if (vF < n.level) continue;
            if (n.level == depth) {
                truncated = true;
                continue;
            }
            const El step = R.uniformizer_power(n.level);
            std::array<int, 3> free{};
            for (int i = 0, k = 0; i < 4; ++i)
                if (i != unit) free[k++] = i;
            const long P = p;
            for (long d = 0; d < P * P * P; ++d) {
                std::array<long, 3> dig{d % P, d / P % P, d / P / P};
                bool ok = true;
                for (int k = 0; k < 3; ++k)
                    if (n.level == 0 && free[k] < unit && dig[k] != 0) ok = false;
                if (!ok) continue;
                Node m = n;
                for (int k = 0; k < 3; ++k) m.x[free[k]] = R.add(m.x[free[k]], R.mul(step, {dig[k], 0}));
                ++m.level;
                stack.push_back(m);
            }
        }
    }
    return truncated ? oracle::Outcome::unknown : oracle::Outcome::insolvable;
}

oracle::Outcome brute_curve(const CurveSpec& c, const Integer& p) {
    // strip p-cubes and the common power so the certified depth applies
    std::array<Integer, 3> k{c.a.a, c.b.a, c.c.a};
    for (Integer& x : k)
        while (x % (p * p * p) == 0) x /= p * p * p;
    int lo = std::min({valuation(k[0], p), valuation(k[1], p), valuation(k[2], p)});
    for (Integer& x : k)
        for (int i = 0; i < lo; ++i) x /= p;
    const Place place = Place::rational(p);
    return oracle::brute_local(CurveSpec(Eisenstein(k[0]), Eisenstein(k[1]), Eisenstein(k[2])), place, place.certified_depth()).outcome;
}

oracle::Outcome expected(bool b) { return b ? oracle::Outcome::solvable : oracle::Outcome::insolvable; }

std::array<Integer, 4> permuted(const std::array<Integer, 4>& a, const std::array<int, 4>& o) {
    return {a[o[0]], a[o[1]], a[o[2]], a[o[3]]};
}

long random_coefficient(std::mt19937_64& g) {
    static const std::vector<long> primes{2, 3, 5, 7, 11, 13};
    long c = uniform(g, 0, 1) ? 1 : -1;
    int k = static_cast<int>(uniform(g, 0, 2));
    for (int i = 0; i < k; ++i) c *= primes[static_cast<std::size_t>(uniform(g, 0, 5))];
    return c;
}

}  // namespace

TEST(Normalize, Examples) {
    SurfaceSpec s = sum(1, 10, 55, 22);
    EXPECT_EQ(s.a, (std::array<Integer, 4>{1, 10, -55, -22}));
    EXPECT_EQ(s.multiplier, 1);
    EXPECT_EQ(s.cube_factor, (std::array<Integer, 4>{1, 1, 1, 1}));
    EXPECT_EQ(s.profile.at(2), (std::array<int, 4>{0, 1, 0, 1}));
    EXPECT_EQ(s.profile.at(5), (std::array<int, 4>{0, 1, 1, 0}));
    EXPECT_EQ(s.profile.at(11), (std::array<int, 4>{0, 0, 1, 1}));

    EXPECT_EQ(split(8, 1, 1, 1).a, (std::array<Integer, 4>{1, 1, 1, 1}));
    EXPECT_EQ(split(8, 1, 1, 1).cube_factor[0], 2);

    SurfaceSpec t = split(1, 1, 9, 81);
    EXPECT_EQ(t.a, (std::array<Integer, 4>{1, 1, 9, 3}));
    EXPECT_EQ(t.profile.at(3), (std::array<int, 4>{0, 0, 2, 1}));
    EXPECT_EQ(t.to_string(), "1*x1^3 + 1*x2^3 = 9*x3^3 + 3*x4^3");

    EXPECT_THROW(split(1, 0, 2, 3), std::invalid_argument);
}

TEST(Normalize, RationalInput) {
    SurfaceSpec s = normalize(std::array<Rational, 4>{ratio(1, 2), Rational(3), ratio(5, 4), Rational(1)});
    for (const auto& [p, v] : s.profile) EXPECT_TRUE(detail::allowed_profile(v)) << p;
    for (int i = 0; i < 4; ++i) {
        Integer c = s.cube_factor[i];
        EXPECT_EQ(s.input[i] * Rational(s.multiplier), Rational(s.a[i] * c * c * c));
    }
}

TEST(Normalize, IdempotentWithAllowedProfiles) {
    auto g = testing_support::rng(31);
    for (int n = 0; n < 300; ++n) {
        std::array<Integer, 4> a{random_coefficient(g) * uniform(g, 1, 4), random_coefficient(g), random_coefficient(g) * 27,
                                 random_coefficient(g) * random_coefficient(g)};
        SurfaceSpec s = normalize(a);
        for (const auto& [p, v] : s.profile) ASSERT_TRUE(detail::allowed_profile(v));
        for (int i = 0; i < 4; ++i) {
            Integer c = s.cube_factor[i];
            ASSERT_EQ(s.input[i] * Rational(s.multiplier), Rational(s.a[i] * c * c * c));
            ASSERT_EQ(detail::strip_cubes(s.a[i]).second, 1);
        }
        SurfaceSpec t = normalize(s.a);
        ASSERT_EQ(t.a, s.a);
        ASSERT_EQ(t.multiplier, 1);
    }
}

TEST(Normalize, PreservesVerdicts) {
    auto g = testing_support::rng(32);
    for (int n = 0; n < 40; ++n) {
        std::array<Integer, 4> a{random_coefficient(g), random_coefficient(g), random_coefficient(g), random_coefficient(g)};
        SurfaceSpec s = normalize(a);
        long t = uniform(g, 2, 3), m = std::vector<long>{2, 3, 5, 7}[static_cast<std::size_t>(uniform(g, 0, 3))];
        std::array<Integer, 4> b{a[0] * m * t * t * t, a[1] * m, a[2] * m, a[3] * m};
        SurfaceSpec u = normalize(b);
        ASSERT_EQ(everywhere_local_surface(s).solvable, everywhere_local_surface(u).solvable);
        std::vector<std::string> l1, l2;
        for (const auto& h : sufficient_criteria(s).hits) l1.push_back(h.label);
        for (const auto& h : sufficient_criteria(u).hits) l2.push_back(h.label);
        ASSERT_EQ(l1, l2) << s.to_string() << " vs " << u.to_string();
        ASSERT_EQ(selmer_ratio_criterion(s).has_value(), selmer_ratio_criterion(u).has_value());
    }
}

TEST(Ratios, Examples) {
    EXPECT_EQ(selmer_ratio_criterion(split(1, 1, 2, 2)), std::optional<int>(1));
    EXPECT_FALSE(selmer_ratio_criterion(sum(1, 10, 55, 22)).has_value());
    EXPECT_FALSE(selmer_ratio_criterion(sum(5, 9, 10, 12)).has_value());

    SurfaceSpec v = sum(1, 10, 55, 22);
    EXPECT_FALSE(birational_to_plane_over_Qp(v, 3));
    for (long p : {2L, 5L, 11L}) EXPECT_TRUE(birational_to_plane_over_Qp(v, p)) << p;
    for (long p : {2L, 3L, 5L, 7L, 13L}) EXPECT_TRUE(birational_to_plane_over_Qp(split(1, 1, 1, 1), p));
}

TEST(Ratios, InvariantUnderPairingPermutationsAndCubes) {
    auto g = testing_support::rng(33);
    const std::vector<std::array<int, 4>> perms{{1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    for (int n = 0; n < 300; ++n) {
        std::array<Integer, 4> a{random_coefficient(g), random_coefficient(g), random_coefficient(g), random_coefficient(g)};
        SurfaceSpec s = normalize(a);
        bool r = selmer_ratio_criterion(s).has_value();
        std::vector<bool> loc;
        for (long p : {2L, 3L, 5L, 7L}) loc.push_back(birational_to_plane_over_Qp(s, p));
        auto same = [&](const SurfaceSpec& t) {
            ASSERT_EQ(selmer_ratio_criterion(t).has_value(), r);
            std::size_t k = 0;
            for (long p : {2L, 3L, 5L, 7L}) ASSERT_EQ(birational_to_plane_over_Qp(t, p), loc[k++]);
        };
        for (const auto& o : perms) same(normalize(permuted(s.a, o)));
        int i = static_cast<int>(uniform(g, 0, 3));
        std::array<Integer, 4> b = s.a;
        long t = uniform(g, 2, 4);
        b[static_cast<std::size_t>(i)] *= t * t * t;
        same(normalize(b));
    }
}

TEST(LocalSurface, Examples) {
    LocalSurfaceReport cg = everywhere_local_surface(sum(5, 9, 10, 12));
    EXPECT_TRUE(cg.solvable);
    EXPECT_TRUE(everywhere_local_surface(sum(1, 10, 55, 22)).solvable);
    SurfaceSpec s = split(1, 2, 5, 25);
    auto at3 = local_conditions(s, 3);
    EXPECT_EQ(!at3.empty(), brute_surface(s.a, 3) == oracle::Outcome::solvable);
}

TEST(LocalSurface, ConditionsUseOneConstantForBothCurves) {
    SurfaceSpec s = sum(5, 9, 10, 12);
    for (const Integer& p : surface_bad_primes(s))
        for (const LocalCondition& c : local_conditions(s, p)) {
            EXPECT_TRUE(c.first.solvable);
            EXPECT_TRUE(c.second.solvable);
            EXPECT_EQ(expected(true), brute_curve(CurveSpec(Eisenstein(s.a[0]), Eisenstein(s.a[1]), Eisenstein(c.C)), p));
            EXPECT_EQ(expected(true), brute_curve(CurveSpec(Eisenstein(s.a[2]), Eisenstein(s.a[3]), Eisenstein(c.C)), p));
        }
}

TEST(LocalSurface, AgreesWithSurfaceEnumeration) {
    auto g = testing_support::rng(34);
    int insolvable = 0;
    for (int n = 0; n < 80; ++n) {
        std::array<Integer, 4> a{random_coefficient(g), random_coefficient(g), random_coefficient(g), random_coefficient(g)};
        SurfaceSpec s = normalize(a);
        for (long p : {2L, 3L, 5L, 7L}) {
            bool ours = !local_conditions(s, p).empty();
            oracle::Outcome o = brute_surface(s.a, p);
            ASSERT_EQ(expected(ours), o) << s.to_string() << " at " << p;
            if (!ours) ++insolvable;
        }
    }
    // a fixed surface with no 7-adic points: x^3 + 2y^3 = 7(z^3 + 2w^3)... checked by both
    SurfaceSpec t = split(1, 2, 7, 14);
    EXPECT_EQ(expected(!local_conditions(t, 7).empty()), brute_surface(t.a, 7));
    (void)insolvable;
}

TEST(Criteria, Examples) {
    CriteriaReport r = sufficient_criteria(split(21, 1, 2, 5));
    EXPECT_TRUE(r.locally_solvable);
    EXPECT_TRUE(has_label(r, "at3-ii"));
    for (const CriterionHit& h : r.hits)
        if (h.label == "at3-ii") {
            EXPECT_EQ(h.order[0], 0);
            EXPECT_EQ(h.primes, (std::vector<Integer>{3, 7}));
        }
    EXPECT_TRUE(sufficient_criteria(sum(1, 10, 55, 22)).hits.empty());
    EXPECT_TRUE(sufficient_criteria(sum(1, 10, 55, 22)).locally_solvable);
}

TEST(Criteria, NotLocallySolvableGivesNoHits) {
    auto g = testing_support::rng(35);
    for (int n = 0; n < 60; ++n) {
        SurfaceSpec s = normalize(std::array<Integer, 4>{random_coefficient(g), random_coefficient(g), random_coefficient(g), random_coefficient(g)});
        CriteriaReport r = sufficient_criteria(s);
        ASSERT_EQ(r.locally_solvable, everywhere_local_surface(s).solvable);
        if (!r.locally_solvable) ASSERT_TRUE(r.hits.empty());
    }
}

TEST(Witness, ConstructiveExample) {
    SurfaceSpec s = split(21, 1, 2, 5);
    DescentSearch d = descent_witness_search(s);
    ASSERT_TRUE(d.locally_solvable);
    ASSERT_TRUE(d.witness.has_value());
    const DescentWitness& w = *d.witness;
    EXPECT_EQ(w.order, (std::array<int, 4>{0, 1, 2, 3}));
    EXPECT_EQ(w.p1, 3);
    EXPECT_TRUE(is_cube_in_Qp(ratio(w.C1, Integer(21)), 3));
    EXPECT_EQ(w.p3, 7);
    EXPECT_FALSE(w.obstruction3.solvable);
    EXPECT_FALSE(w.obstruction4.solvable);
    EXPECT_EQ(brute_curve(w.curve3, w.p1), oracle::Outcome::insolvable);
    EXPECT_EQ(brute_curve(w.curve4, w.p3), oracle::Outcome::insolvable);
    for (const LocalCondition& c : w.conditions) {
        EXPECT_EQ(brute_curve(CurveSpec(Eisenstein(s.a[0]), Eisenstein(s.a[1]), Eisenstein(c.C)), c.p), oracle::Outcome::solvable);
        EXPECT_EQ(brute_curve(CurveSpec(Eisenstein(s.a[2]), Eisenstein(s.a[3]), Eisenstein(c.C)), c.p), oracle::Outcome::solvable);
    }
    // the choice made in the constructive argument, C_7 = a2, also works at 7
    EXPECT_FALSE(solvable_Qp(obstruction_curve4(s, 1), 7).solvable);
    EXPECT_FALSE(local_conditions(s, 7).empty());
}

TEST(Witness, NoneForPrimeTripleSurface) {
    DescentSearch d = descent_witness_search(sum(1, 10, 55, 22));
    EXPECT_TRUE(d.locally_solvable);
    EXPECT_FALSE(d.witness.has_value());
    DescentSearch r = descent_witness_search(split(1, 1, 2, 2));
    EXPECT_TRUE(r.ratio_cube.has_value());
    EXPECT_FALSE(r.witness.has_value());
    EXPECT_FALSE(r.note.empty());
}

TEST(Witness, StoredVerdictsReproduce) {
    auto g = testing_support::rng(36);
    int found = 0;
    for (int n = 0; n < 120; ++n) {
        SurfaceSpec s = normalize(std::array<Integer, 4>{random_coefficient(g) * 3, random_coefficient(g), random_coefficient(g), random_coefficient(g)});
        DescentSearch d = descent_witness_search(s);
        if (!d.witness) continue;
        ++found;
        const DescentWitness& w = *d.witness;
        const SurfaceSpec t = relabel(s, w.order);
        ASSERT_EQ(t.a, w.a);
        ASSERT_EQ(w.curve3, obstruction_curve3(t, w.C1));
        ASSERT_EQ(w.curve4, obstruction_curve4(t, w.C3));
        for (const LocalCondition& c : w.conditions) {
            ASSERT_EQ(solvable_Qp(CurveSpec(Eisenstein(w.a[0]), Eisenstein(w.a[1]), Eisenstein(c.C)), c.p).solvable, c.first.solvable);
            ASSERT_EQ(solvable_Qp(CurveSpec(Eisenstein(w.a[2]), Eisenstein(w.a[3]), Eisenstein(c.C)), c.p).solvable, c.second.solvable);
            ASSERT_TRUE(c.first.solvable && c.second.solvable);
        }
        ASSERT_EQ(solvable_Qp(w.curve3, w.p1).solvable, w.obstruction3.solvable);
        ASSERT_EQ(solvable_Qp(w.curve4, w.p3).solvable, w.obstruction4.solvable);
        ASSERT_FALSE(w.obstruction3.solvable);
        ASSERT_FALSE(w.obstruction4.solvable);
        if (w.p1 == w.p3) ASSERT_EQ(w.C1, w.C3);
    }
    EXPECT_GT(found, 0);
}

TEST(Witness, CriteriaHitsComeWithWitnesses) {
    auto g = testing_support::rng(37);
    int hits = 0;
    for (int n = 0; n < 150; ++n) {
        SurfaceSpec s = normalize(std::array<Integer, 4>{random_coefficient(g) * (n % 2 ? 3 : 1), random_coefficient(g),
                                                         random_coefficient(g), random_coefficient(g)});
        CriteriaReport r = sufficient_criteria(s);
        if (r.hits.empty() || r.ratio_cube) continue;
        ++hits;
        ASSERT_TRUE(descent_witness_search(s).witness.has_value()) << s.to_string() << " " << r.hits.front().label;
    }
    EXPECT_GT(hits, 0);
}

TEST(Witness, RelabelKeepsTheSurface) {
    SurfaceSpec s = split(-63, -33, 1, 1);
    for (const auto& o : std::vector<std::array<int, 4>>{{0, 2, 1, 3}, {0, 3, 1, 2}, {2, 3, 0, 1}}) {
        SurfaceSpec t = relabel(s, o);
        // a point of s, moved along the relabelling, lies on t
        SurfacePoint x{1, -2, 1, 1};
        Integer lhs = s.a[0] * x[0] * x[0] * x[0] + s.a[1] * x[1] * x[1] * x[1] - s.a[2] * x[2] * x[2] * x[2] - s.a[3] * x[3] * x[3] * x[3];
        SurfacePoint y{x[o[0]], x[o[1]], x[o[2]], x[o[3]]};
        Integer rhs = t.a[0] * y[0] * y[0] * y[0] + t.a[1] * y[1] * y[1] * y[1] - t.a[2] * y[2] * y[2] * y[2] - t.a[3] * y[3] * y[3] * y[3];
        EXPECT_EQ(lhs, rhs);
    }
    DescentSearch d = descent_witness_search(s);
    ASSERT_TRUE(d.witness.has_value());
    EXPECT_NE(d.witness->order, (std::array<int, 4>{0, 1, 2, 3}));
}

TEST(PointSearch, Examples) {
    SurfaceSpec s = sum(1, 1, 1, 1);
    auto x = surface_point_search(s, 3);
    ASSERT_TRUE(x.has_value());
    EXPECT_TRUE(on_surface(s, *x));
    SurfacePoint in = to_input_coordinates(s, *x);
    EXPECT_TRUE(on_input_surface(s, in));
    long m = 0;
    for (const Integer& c : in) m = std::max(m, abs(c).convert_to<long>());
    EXPECT_EQ(m, 1);
    EXPECT_TRUE(on_input_surface(s, {1, -1, 1, -1}));
}

TEST(PointSearch, CasselsGuyHasNoSmallPoint) {
    EXPECT_FALSE(surface_point_search(sum(5, 9, 10, 12), 50).has_value());
}

TEST(PointSearch, HitsAreExactAndThreadIndependent) {
    auto g = testing_support::rng(38);
    for (int n = 0; n < 30; ++n) {
        SurfaceSpec s = normalize(std::array<Integer, 4>{uniform(g, 1, 9), uniform(g, 1, 9), uniform(g, 1, 9), uniform(g, 1, 9)});
        auto a = surface_point_search(s, 12), b = surface_point_search(s, 12, 3);
        ASSERT_EQ(a, b);
        if (a) {
            ASSERT_TRUE(on_surface(s, *a));
            ASSERT_TRUE(on_input_surface(s, to_input_coordinates(s, *a)));
        }
    }
}

TEST(Combine, Examples) {
    SurfaceSpec s = split(1, 1, 1, 1);
    CurvePoint P{Eisenstein(1), Eisenstein(1), Eisenstein(1)};
    SurfacePointK x = combine_descent_point(s, Eisenstein(2), P, P);
    EXPECT_EQ(x, (SurfacePointK{Eisenstein(1), Eisenstein(1), Eisenstein(1), Eisenstein(1)}));

    // B = a1 + a2 with (1, 1, 1) on the first curve
    SurfaceSpec t = split(2, 7, 4, 5);
    CurvePoint Q{Eisenstein(1), Eisenstein(1), Eisenstein(1)};
    CurvePoint R{Eisenstein(1), Eisenstein(1), Eisenstein(1)};
    SurfacePointK y = combine_descent_point(t, Eisenstein(9), Q, R);
    EXPECT_EQ(Eisenstein(2) * y[0].pow(3) + Eisenstein(7) * y[1].pow(3), Eisenstein(4) * y[2].pow(3) + Eisenstein(5) * y[3].pow(3));

    EXPECT_THROW(combine_descent_point(s, Eisenstein(3), P, P), std::invalid_argument);
    EXPECT_THROW(combine_descent_point(s, Eisenstein(0), P, P), std::invalid_argument);
}

TEST(Combine, RandomDescentPointsLieOnSurface) {
    auto g = testing_support::rng(39);
    for (int n = 0; n < 200; ++n) {
        // choose points first, then coefficients making them lie on the curves
        long x1 = uniform(g, -6, 6), y1 = uniform(g, 1, 6), x2 = uniform(g, -6, 6), y2 = uniform(g, 1, 6);
        long a1 = uniform(g, 1, 9), a3 = uniform(g, 1, 9);
        long B = a1 * x1 * x1 * x1 + y1 * y1 * y1 * uniform(g, 1, 5);
        long a2num = B - a1 * x1 * x1 * x1, a4num = B - a3 * x2 * x2 * x2;
        if (a2num == 0 || a4num == 0 || B == 0) continue;
        if (a2num % (y1 * y1 * y1) != 0 || a4num % (y2 * y2 * y2) != 0) continue;
        std::array<Integer, 4> a{a1, a2num / (y1 * y1 * y1), a3, a4num / (y2 * y2 * y2)};
        SurfaceSpec s;
        s.a = a;
        CurvePoint P1{Eisenstein(x1), Eisenstein(y1), Eisenstein(1)}, P2{Eisenstein(x2), Eisenstein(y2), Eisenstein(1)};
        SurfacePointK x = combine_descent_point(s, Eisenstein(B), P1, P2);
        ASSERT_EQ(Eisenstein(a[0]) * x[0].pow(3) + Eisenstein(a[1]) * x[1].pow(3), Eisenstein(a[2]) * x[2].pow(3) + Eisenstein(a[3]) * x[3].pow(3));
    }
}

TEST(Descent, RationalPointFromConjugateLine) {
    // (15, 0, 1, -7) on x^3 + 22y^3 + 55z^3 + 10w^3 = 0 comes from a k-point of the torsor
    std::array<Integer, 4> c{1, 22, 55, 10};
    auto x = rational_point_from_k_point(c, SurfacePointK{Eisenstein(15), Eisenstein(0), Eisenstein(1), Eisenstein(-7)});
    ASSERT_TRUE(x.has_value());
    EXPECT_EQ(*x, (SurfacePoint{15, 0, 1, -7}));

    // k-points built from rational points times w-multiples in one coordinate pair
    auto g = testing_support::rng(40);
    for (int n = 0; n < 100; ++n) {
        long u = uniform(g, 1, 5), v = uniform(g, 1, 5);
        std::array<Integer, 4> d{1, -1, Integer(u * u * u), Integer(-v * v * v)};
        // (w, w, v, u) lies on x^3 - y^3 + u^3 z^3 - v^3 t^3 = 0
        SurfacePointK P{w, w, Eisenstein(v), Eisenstein(u)};
        auto y = rational_point_from_k_point(d, P);
        ASSERT_TRUE(y.has_value());
        Integer t = 0;
        for (int i = 0; i < 4; ++i) t += d[i] * (*y)[i] * (*y)[i] * (*y)[i];
        ASSERT_EQ(t, 0);
    }
}

TEST(Pipeline, PatternTwoTwoFive) {
    PrimeTripleReport r = prime_triple_pipeline({2, 11, 5});
    EXPECT_EQ(r.pattern, "(2,2,5)");
    ASSERT_TRUE(r.A.has_value());
    EXPECT_EQ(*r.A, 550);
    ASSERT_TRUE(r.selmer.has_value());
    EXPECT_EQ(r.selmer->dimension, 2);
    EXPECT_EQ(*r.torsor, CurveSpec(Eisenstein(55), Eisenstein(10), Eisenstein(1)));
    ASSERT_EQ(r.conditional_hypotheses.size(), 1u);
    EXPECT_NE(r.conditional_hypotheses[0].find("E_550"), std::string::npos);
    ASSERT_TRUE(r.surface_point.has_value());
    const SurfacePoint& x = *r.surface_point;
    EXPECT_EQ(x[0] * x[0] * x[0] + 22 * x[1] * x[1] * x[1] + 55 * x[2] * x[2] * x[2] + 10 * x[3] * x[3] * x[3], 0);
}

TEST(Pipeline, PatternTwoTwoTwo) {
    PipelineOptions o;
    o.torsor_bound = 30;
    PrimeTripleReport r = prime_triple_pipeline({2, 11, 29}, o);
    EXPECT_EQ(r.pattern, "(2,2,2)");
    EXPECT_EQ(*r.A, 407044);
    EXPECT_EQ(*r.torsor, CurveSpec(Eisenstein(11 * 29), Eisenstein(29 * 2), Eisenstein(2 * 11)));
    EXPECT_NE(r.conclusion.find("conditional"), std::string::npos);
    if (r.surface_point) {
        const SurfacePoint& x = *r.surface_point;
        EXPECT_EQ(x[0] * x[0] * x[0] + 22 * x[1] * x[1] * x[1] + 319 * x[2] * x[2] * x[2] + 58 * x[3] * x[3] * x[3], 0);
    }
}

TEST(Pipeline, DuplicatesAndErrors) {
    PrimeTripleReport r = prime_triple_pipeline({2, 2, 5});
    EXPECT_TRUE(r.duplicates);
    ASSERT_TRUE(r.surface_point.has_value());
    EXPECT_TRUE(r.conditional_hypotheses.empty());
    EXPECT_TRUE(on_input_surface(r.surface, *r.surface_point));
    EXPECT_THROW(prime_triple_pipeline({2, 7, 5}), std::invalid_argument);
    EXPECT_THROW(prime_triple_pipeline({2, 11, 15}), std::invalid_argument);
}

TEST(Pipeline, PermutationsAgree) {
    for (const auto& p : std::vector<std::array<Integer, 3>>{{5, 2, 11}, {11, 5, 2}}) {
        PrimeTripleReport r = prime_triple_pipeline(p);
        EXPECT_EQ(*r.A, 550);
        EXPECT_EQ(r.ordered[2], 5);
    }
}
