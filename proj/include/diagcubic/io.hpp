#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "diagcubic/curve.hpp"
#include "diagcubic/integer.hpp"
#include "diagcubic/localsolve.hpp"
#include "diagcubic/selmer.hpp"
#include "diagcubic/surface.hpp"

namespace diagcubic::io {

using json = nlohmann::ordered_json;

/// Integers fitting in 64 bits become JSON numbers, larger ones decimal strings.
inline json integer(const Integer& n) {
    if (n >= std::numeric_limits<std::int64_t>::min() && n <= std::numeric_limits<std::int64_t>::max())
        return static_cast<std::int64_t>(n);
    return n.str();
}

inline json rational(const Rational& r) {
    if (denominator(r) == 1) return integer(numerator(r));
    return numerator(r).str() + "/" + denominator(r).str();
}

inline json eisenstein(const Eisenstein& x) { return diagcubic::to_string(x); }

inline json curve(const CurveSpec& c) {
    return json{{"a", eisenstein(c.a)}, {"b", eisenstein(c.b)}, {"c", eisenstein(c.c)}, {"equation", c.to_string()}};
}

inline json point(const CurvePoint& p) { return json::array({eisenstein(p.x), eisenstein(p.y), eisenstein(p.z)}); }

inline json point(const SurfacePoint& p) {
    json out = json::array();
    for (const Integer& x : p) out.push_back(integer(x));
    return out;
}

inline json verdict(const LocalVerdict& v) {
    json out{{"place", v.place},
             {"solvable", v.solvable},
             {"certificate", to_string(v.certificate)},
             {"rule", v.rule},
             {"detail", v.detail}};
    if (v.symbol) out["symbol"] = v.symbol->to_string();
    if (v.residue)
        out["residue"] = json{{"curve", curve(v.residue->curve)},
                              {"point", point(v.residue->point)},
                              {"depth", v.residue->depth},
                              {"value_valuation", v.residue->value_valuation},
                              {"gradient_valuation", v.residue->gradient_valuation}};
    return out;
}

inline json cube_class(const CubeClass& c) { return c.to_string(); }

inline json selmer(const SelmerResult& r) {
    json basis = json::array(), witnesses = json::array(), cands = json::array();
    for (const CubeClass& c : r.basis) basis.push_back(cube_class(c));
    for (const SelmerWitness& w : r.c_witnesses)
        witnesses.push_back(json{{"alpha", cube_class(w.alpha)}, {"curve", curve(w.curve)}, {"point", point(w.point)}});
    for (const CandidateReport& c : r.candidates) {
        json vs = json::array();
        for (const LocalVerdict& v : c.verdicts) vs.push_back(verdict(v));
        cands.push_back(json{{"alpha", cube_class(c.alpha)}, {"in_selmer", c.in_selmer}, {"verdicts", vs}});
    }
    return json{{"A", integer(r.A)},
                {"dimension", r.dimension},
                {"order", static_cast<std::int64_t>(std::pow(3, r.dimension))},
                {"basis", basis},
                {"s", r.s},
                {"s0", r.s0},
                {"root_sign", r.root_sign},
                {"candidates_tested", r.candidates_tested},
                {"c_status", r.c_status},
                {"c_witnesses", witnesses},
                {"candidates", cands}};
}

inline json surface(const SurfaceSpec& s) {
    json coeffs = json::array(), input = json::array(), cubes = json::array(), profile = json::object();
    for (const Integer& a : s.a) coeffs.push_back(integer(a));
    for (const Rational& a : s.input) input.push_back(rational(a));
    for (const Integer& c : s.cube_factor) cubes.push_back(integer(c));
    for (const auto& [p, v] : s.profile) profile[p.str()] = json(std::vector<int>(v.begin(), v.end()));
    return json{{"input", input},
                {"form", to_string(s.form)},
                {"coefficients", coeffs},
                {"equation", s.to_string()},
                {"multiplier", integer(s.multiplier)},
                {"cube_factor", cubes},
                {"valuation_profile", profile}};
}

inline json condition(const LocalCondition& c) {
    return json{{"p", integer(c.p)}, {"C", integer(c.C)}, {"first", verdict(c.first)}, {"second", verdict(c.second)}};
}

inline json witness(const DescentWitness& w) {
    json conds = json::array();
    for (const LocalCondition& c : w.conditions) conds.push_back(condition(c));
    json coeffs = json::array();
    for (const Integer& a : w.a) coeffs.push_back(integer(a));
    return json{{"pairing", detail::order_string(w.order)},
                {"coefficients", coeffs},
                {"p1", integer(w.p1)},
                {"C_p1", integer(w.C1)},
                {"p3", integer(w.p3)},
                {"C_p3", integer(w.C3)},
                {"curve3", curve(w.curve3)},
                {"curve4", curve(w.curve4)},
                {"obstruction3", verdict(w.obstruction3)},
                {"obstruction4", verdict(w.obstruction4)},
                {"conditions", conds}};
}

inline json criterion(const CriterionHit& h) {
    json ps = json::array();
    for (const Integer& p : h.primes) ps.push_back(integer(p));
    return json{{"label", h.label}, {"order", detail::order_string(h.order)}, {"primes", ps}, {"detail", h.detail}};
}

}  // namespace diagcubic::io
