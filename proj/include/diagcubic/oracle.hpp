#pragma once

// Brute-force cross-checks. Nothing here calls the decision procedures it is
// meant to validate; only the ring layer is shared.

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "diagcubic/completion.hpp"
#include "diagcubic/curve.hpp"
#include "diagcubic/integer.hpp"

namespace diagcubic::oracle {

struct ResidueReport {
    Integer modulus;
    std::uint64_t nontrivial_solutions = 0;
    std::vector<std::array<Integer, 3>> representatives;  // at most max_representatives
};

/// Counts (x, y, z) mod n with a x^3 + b y^3 = c z^3 (mod n), primitive at every prime of n.
inline ResidueReport count_solutions_mod(const CurveSpec& curve, const Integer& n, std::size_t max_representatives = 16) {
    if (!curve.is_rational()) throw std::invalid_argument("count_solutions_mod: coefficients must be rational");
    if (n < 2) throw std::invalid_argument("count_solutions_mod: modulus must be at least 2");
    if (n > 2000) throw std::invalid_argument("count_solutions_mod: modulus too large for exhaustion");
    const std::int64_t m = static_cast<std::int64_t>(n);
    std::vector<std::int64_t> primes;
    for (const auto& [p, e] : factor_integer(n)) primes.push_back(static_cast<std::int64_t>(p));
    const std::int64_t a = static_cast<std::int64_t>(mod_floor(curve.a.a, n));
    const std::int64_t b = static_cast<std::int64_t>(mod_floor(curve.b.a, n));
    const std::int64_t c = static_cast<std::int64_t>(mod_floor(curve.c.a, n));
    std::vector<std::int64_t> cube(m);
    for (std::int64_t t = 0; t < m; ++t) cube[t] = t * t % m * t % m;
    ResidueReport out{n, 0, {}};
    for (std::int64_t x = 0; x < m; ++x)
        for (std::int64_t y = 0; y < m; ++y)
            for (std::int64_t z = 0; z < m; ++z) {
                if ((a * cube[x] + b * cube[y] - c * cube[z]) % m != 0) continue;
                bool primitive = true;
                for (std::int64_t p : primes)
                    if (x % p == 0 && y % p == 0 && z % p == 0) primitive = false;
                if (!primitive) continue;
                ++out.nontrivial_solutions;
                if (out.representatives.size() < max_representatives)
                    out.representatives.push_back({Integer(x), Integer(y), Integer(z)});
            }
    return out;
}

/// Projective points of the reduced curve over the residue field of the place.
inline std::uint64_t finite_field_point_count(const CurveSpec& curve, const Place& place) {
    if (place.p == 3) throw std::domain_error("finite_field_point_count: bad reduction in characteristic 3");
    for (const Eisenstein* k : {&curve.a, &curve.b, &curve.c})
        if (valuation(place, *k) != 0) throw std::domain_error("finite_field_point_count: bad reduction at " + place.to_string());
    const LocalRing R(place, 1);
    using El = LocalRing::Element;
    const El a = R.from(curve.a), b = R.from(curve.b), c = R.from(-curve.c);
    auto F = [&](const El& x, const El& y, const El& z) {
        return R.add(R.add(R.mul(a, R.cube(x)), R.mul(b, R.cube(y))), R.mul(c, R.cube(z)));
    };
    const El zero{0, 0}, one{1, 0};
    std::uint64_t count = 0;
    for (const El& y : R.digits())
        for (const El& z : R.digits())
            if (R.is_zero(F(one, y, z))) ++count;
    for (const El& z : R.digits())
        if (R.is_zero(F(zero, one, z))) ++count;
    if (R.is_zero(F(zero, zero, one))) ++count;
    return count;
}

enum class Outcome { solvable, insolvable, unknown };

inline const char* to_string(Outcome o) {
    switch (o) {
        case Outcome::solvable: return "solvable";
        case Outcome::insolvable: return "insolvable";
        case Outcome::unknown: return "unknown";
    }
    return "?";
}

struct BruteVerdict {
    Outcome outcome = Outcome::unknown;
    std::string place;
    int depth = 0;
    std::optional<CurvePoint> point;
    int value_valuation = 0;
    int gradient_valuation = 0;
    std::uint64_t nodes = 0;
};

/**
 * Depth-first search refining all free coordinates together, one digit per
 * level. At level k a residue class is dropped when v(F) < k, and a residue
 * with v(F) > 2 v(grad F) proves solvability. Depth caps both the level and
 * the precision of F; nodes surviving to the cap make the answer unknown.
 */
inline BruteVerdict brute_local(const CurveSpec& curve, const Place& place, int depth) {
    if (depth < 1) throw std::invalid_argument("brute_local: depth must be positive");
    if (place.kind == PlaceKind::rational && !curve.is_rational())
        throw std::invalid_argument("brute_local: curve over k at a place of Q");
    const LocalRing R(place, depth);
    using El = LocalRing::Element;
    const std::array<El, 3> coef{R.from(curve.a), R.from(curve.b), R.from(-curve.c)};
    const El three = R.from(Eisenstein(3));
    std::vector<El> pi_pow;
    for (int i = 0; i <= depth; ++i) pi_pow.push_back(R.uniformizer_power(i));
    const auto& digits = R.digits();

    BruteVerdict out;
    out.place = place.to_string();
    out.depth = depth;
    bool truncated = false;

    // coordinate `unit` is exactly 1, coordinates before it are 0 mod pi
    struct Frame {
        std::array<El, 3> P;
        int level;
    };
    for (int unit = 0; unit < 3; ++unit) {
        std::vector<Frame> stack;
        std::array<El, 3> start{};
        start[unit] = {1 % R.modulus(), 0};
        stack.push_back({start, 0});
        while (!stack.empty()) {
            Frame f = stack.back();
            stack.pop_back();
            if (++out.nodes > 400'000'000ULL) throw std::runtime_error("brute_local: search too large");
            El F{0, 0};
            int vG = depth;
            for (int i = 0; i < 3; ++i) {
                El sq = R.mul(f.P[i], f.P[i]);
                F = R.add(F, R.mul(coef[i], R.mul(sq, f.P[i])));
                vG = std::min(vG, R.valuation(R.mul(three, R.mul(coef[i], sq))));
            }
            int vF = R.valuation(F);
            if (f.level > 0 && vF > 2 * vG) {
                out.outcome = Outcome::solvable;
                out.point = CurvePoint{R.lift(f.P[0]), R.lift(f.P[1]), R.lift(f.P[2])};
                out.value_valuation = vF;
                out.gradient_valuation = vG;
                return out;
            }
            if (vF < f.level) continue;
            if (f.level == depth) {
                truncated = true;
                continue;
            }
            // enumerate digit choices for the free coordinates
            std::vector<int> free;
            for (int i = 0; i < 3; ++i)
                if (i != unit) free.push_back(i);
            const El step = pi_pow[f.level];
            for (const El& d0 : digits) {
                if (f.level == 0 && free[0] < unit && !R.is_zero(d0)) continue;
                for (const El& d1 : digits) {
                    if (f.level == 0 && free[1] < unit && !R.is_zero(d1)) continue;
                    Frame g = f;
                    g.P[free[0]] = R.add(f.P[free[0]], R.mul(step, d0));
                    g.P[free[1]] = R.add(f.P[free[1]], R.mul(step, d1));
                    ++g.level;
                    stack.push_back(g);
                }
            }
        }
    }
    out.outcome = truncated ? Outcome::unknown : Outcome::insolvable;
    return out;
}

}  // namespace diagcubic::oracle
