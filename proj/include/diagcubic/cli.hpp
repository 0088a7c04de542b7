#pragma once

#include <algorithm>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "diagcubic/io.hpp"
#include "diagcubic/localsolve.hpp"
#include "diagcubic/oracle.hpp"
#include "diagcubic/residues.hpp"
#include "diagcubic/selmer.hpp"
#include "diagcubic/surface.hpp"

namespace diagcubic::cli {

inline constexpr const char* version = "0.1.0";

enum ExitCode : int { computed = 0, absent = 1, invalid = 2 };

/// Thrown for malformed arguments; reported with usage text and exit code 2.
struct InputError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

namespace detail {

inline Integer parse_integer(const std::string& s) {
    std::string t;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) t.push_back(c);
    std::size_t i = t.empty() || (t[0] != '-' && t[0] != '+') ? 0 : 1;
    if (i == t.size() || !std::all_of(t.begin() + static_cast<std::ptrdiff_t>(i), t.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
        throw InputError("not an integer: '" + s + "'");
    return Integer(t[0] == '+' ? t.substr(1) : t);
}

inline Rational parse_rational(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(parse_integer(s));
    Integer d = parse_integer(s.substr(slash + 1));
    if (d == 0) throw InputError("zero denominator: '" + s + "'");
    return ratio(parse_integer(s.substr(0, slash)), d);
}

inline Eisenstein parse_element(const std::string& s) {
    try {
        return parse_eisenstein(s);
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }
}

inline Integer parse_prime(const std::string& s) {
    Integer p = parse_integer(s);
    if (p < 2 || !is_prime(p)) throw InputError("not a rational prime: " + s);
    return p;
}

inline CurveSpec parse_curve(const std::string& a, const std::string& b, const std::string& c) {
    Eisenstein x = parse_element(a), y = parse_element(b), z = parse_element(c);
    if (x.is_zero() || y.is_zero() || z.is_zero()) throw InputError("curve coefficients must be nonzero");
    return CurveSpec(x, y, z);
}

/// A place given as a rational prime (Q_p for curves over Q) or a prime element of Z[w].
inline Place parse_place(const std::string& s, bool rational_curve) {
    Eisenstein q = parse_element(s);
    try {
        if (q.is_rational() && rational_curve) return Place::rational(abs(q.a));
        return Place::over(q);
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }
}

/// Column-aligned text table.
class Table {
public:
    explicit Table(std::vector<std::string> header) { rows_.push_back(std::move(header)); }
    void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }
    void print(std::ostream& out) const {
        std::vector<std::size_t> w;
        for (const auto& r : rows_)
            for (std::size_t i = 0; i < r.size(); ++i) {
                if (w.size() <= i) w.push_back(0);
                w[i] = std::max(w[i], display_width(r[i]));
            }
        for (const auto& r : rows_) {
            std::string line;
            for (std::size_t i = 0; i < r.size(); ++i) {
                line += r[i];
                if (i + 1 < r.size()) line += std::string(w[i] - display_width(r[i]) + 2, ' ');
            }
            out << line << '\n';
        }
    }

private:
    static std::size_t display_width(const std::string& s) {
        return static_cast<std::size_t>(std::count_if(s.begin(), s.end(), [](char c) { return (static_cast<unsigned char>(c) & 0xC0) != 0x80; }));
    }
    std::vector<std::vector<std::string>> rows_;
};

inline std::string join(const std::vector<std::string>& parts, const std::string& sep) {
    std::string s;
    for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? sep : "") + parts[i];
    return s;
}

inline std::string verdict_word(bool solvable) { return solvable ? "solvable" : "insolvable"; }

inline void print_verdicts(std::ostream& out, const std::vector<LocalVerdict>& vs) {
    Table t({"place", "verdict", "certificate", "rule", "detail"});
    for (const LocalVerdict& v : vs) t.add({v.place, verdict_word(v.solvable), to_string(v.certificate), v.rule, v.detail});
    t.print(out);
}

inline std::string point_string(const SurfacePoint& x) {
    return "(" + x[0].str() + ", " + x[1].str() + ", " + x[2].str() + ", " + x[3].str() + ")";
}

inline std::string point_string(const CurvePoint& x) {
    return "(" + to_string(x.x) + ", " + to_string(x.y) + ", " + to_string(x.z) + ")";
}

struct Outcome {
    io::json result;
    std::vector<std::string> hypotheses;
    int code = computed;
};

inline void emit(std::ostream& out, bool as_json, const std::string& command, const io::json& inputs, const Outcome& o) {
    if (!as_json) return;
    io::json env{{"command", command},
                 {"inputs", inputs},
                 {"result", o.result},
                 {"conditional_hypotheses", o.hypotheses},
                 {"version", version}};
    out << env.dump(2) << '\n';
}

}  // namespace detail

/**
 * Runs one command line (without the program name). Exit codes: 0 computed,
 * 1 requested property absent, 2 invalid input.
 */
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    using namespace detail;
    CLI::App app{"Local solvability, sqrt(-3)-Selmer groups and diagonal cubic surfaces", "diagcubic"};
    app.require_subcommand(1);
    app.set_version_flag("--version", version);
    bool as_json = false;
    unsigned threads = 1;
    auto common = [&](CLI::App* sub) {
        sub->add_flag("--json", as_json, "Emit a JSON envelope");
        sub->add_option("--threads", threads, "Worker threads")->check(CLI::Range(1u, 256u));
    };

    std::string s_alpha, s_q;
    auto* symbol = app.add_subcommand("symbol", "Cubic residue symbol (alpha/q)_3, printed as 1, w or w^2");
    symbol->add_option("alpha", s_alpha)->required();
    symbol->add_option("q", s_q)->required();
    common(symbol);

    std::string l_a, l_b, l_c, l_prime;
    bool l_all = false;
    auto* local = app.add_subcommand("local", "Local solvability of a x^3 + b y^3 = c z^3");
    local->add_option("a", l_a)->required();
    local->add_option("b", l_b)->required();
    local->add_option("c", l_c)->required();
    auto* l_prime_opt = local->add_option("--prime", l_prime, "A single place: rational prime or prime of Z[w]");
    local->add_flag("--all", l_all, "Every place where the curve may fail (default)")->excludes(l_prime_opt);
    common(local);

    std::string sel_A;
    std::string sel_bound = "0";
    auto* selmer = app.add_subcommand("selmer", "The sqrt(-3)-Selmer group S(A) of x^3 + y^3 = A z^3");
    selmer->add_option("A", sel_A)->required();
    selmer->add_option("--witness-bound", sel_bound, "Norm bound for global points on basis torsors");
    common(selmer);

    std::vector<std::string> sf_coeffs;
    std::string sf_form = "split";
    bool sf_criteria = false;
    std::int64_t sf_search = 0;
    auto* surface = app.add_subcommand("surface", "Diagonal cubic surface a1 x1^3 + a2 x2^3 = a3 x3^3 + a4 x4^3");
    surface->add_option("coefficients", sf_coeffs, "a1 a2 a3 a4 (rationals)")->required()->expected(4);
    surface->add_option("--form", sf_form, "sum: a1x1^3+...+a4x4^3 = 0; split: a1x1^3+a2x2^3 = a3x3^3+a4x4^3")
        ->check(CLI::IsMember({"sum", "split"}));
    surface->add_flag("--criteria", sf_criteria, "Evaluate the sufficient criteria and the descent witness search");
    surface->add_option("--search", sf_search, "Point search bound on max |x_i|")->check(CLI::Range(std::int64_t{0}, std::int64_t{1} << 16));
    common(surface);

    std::vector<std::string> tt_primes;
    std::int64_t tt_search = 0;
    std::string tt_torsor = "400";
    auto* triple = app.add_subcommand("theorem28", "x1^3 + p1p2 x2^3 + p2p3 x3^3 + p3p1 x4^3 = 0 for primes 2, 5 mod 9");
    triple->add_option("primes", tt_primes, "p1 p2 p3")->required()->expected(3);
    triple->add_option("--search", tt_search, "Surface point search bound")->check(CLI::Range(std::int64_t{0}, std::int64_t{1} << 16));
    triple->add_option("--torsor-bound", tt_torsor, "Norm bound for the torsor point search");
    common(triple);

    auto* oracle = app.add_subcommand("oracle", "Brute-force cross-checks");
    oracle->require_subcommand(1);
    std::string o_a, o_b, o_c, o_n, o_place;
    int o_depth = 0;
    auto* o_count = oracle->add_subcommand("count", "Primitive solutions modulo n");
    o_count->add_option("a", o_a)->required();
    o_count->add_option("b", o_b)->required();
    o_count->add_option("c", o_c)->required();
    o_count->add_option("n", o_n)->required();
    common(o_count);
    auto* o_brute = oracle->add_subcommand("brute", "Digit tree search at a place");
    o_brute->add_option("a", o_a)->required();
    o_brute->add_option("b", o_b)->required();
    o_brute->add_option("c", o_c)->required();
    o_brute->add_option("--place", o_place, "Rational prime or prime of Z[w]")->required();
    o_brute->add_option("--depth", o_depth, "Search depth (default: certified depth)");
    common(o_brute);
    auto* o_ff = oracle->add_subcommand("ffcount", "Points over the residue field");
    o_ff->add_option("a", o_a)->required();
    o_ff->add_option("b", o_b)->required();
    o_ff->add_option("c", o_c)->required();
    o_ff->add_option("--place", o_place, "Rational prime or prime of Z[w]")->required();
    common(o_ff);

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return computed;
    } catch (const CLI::CallForVersion&) {
        out << version << '\n';
        return computed;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return invalid;
    }

    CLI::App* used = app.get_subcommands().front();
    if (used == oracle) used = oracle->get_subcommands().front();
    try {
        Outcome o;
        io::json inputs;
        std::string command = used->get_name();
        if (used == symbol) {
            Eisenstein alpha = parse_element(s_alpha), q = parse_element(s_q);
            inputs = {{"alpha", io::eisenstein(alpha)}, {"q", io::eisenstein(q)}};
            Place pl = Place::lambda();
            try {
                pl = Place::over(q);
            } catch (const std::invalid_argument& e) {
                throw InputError(e.what());
            }
            if (pl.kind == PlaceKind::ramified) throw InputError("the symbol is defined only for primes not dividing 3");
            if (divides(q, alpha)) throw InputError("alpha must be coprime to q");
            CubicSymbol s = cubic_symbol(alpha, q);
            o.result = {{"symbol", s.to_string()}, {"exponent", s.exponent}};
            if (!as_json) out << s.to_string() << '\n';
        } else if (used == local) {
            CurveSpec curve = parse_curve(l_a, l_b, l_c);
            inputs = {{"curve", io::curve(curve)}};
            std::vector<LocalVerdict> vs;
            bool all = true;
            if (!l_prime.empty()) {
                Place pl = parse_place(l_prime, curve.is_rational());
                inputs["place"] = pl.to_string();
                if (pl.kind == PlaceKind::rational) {
                    vs.push_back(solvable_Qp(curve, pl.p));
                } else if (pl.kind == PlaceKind::ramified) {
                    vs.push_back(solvable_lambda(curve));
                } else {
                    vs.push_back(solvable_generic_local(curve, pl));
                }
                all = vs.front().solvable;
            } else if (curve.is_rational()) {
                auto [ok, verdicts] = everywhere_locally_solvable(curve);
                all = ok;
                vs = std::move(verdicts);
            } else {
                std::vector<Place> places{Place::lambda()};
                for (const Eisenstein& q : prime_divisors(curve.a * curve.b * curve.c)) {
                    Place pl = Place::over(q);
                    if (pl.kind != PlaceKind::ramified) places.push_back(pl);
                }
                for (const Place& pl : places) {
                    vs.push_back(pl.kind == PlaceKind::ramified ? solvable_lambda(curve) : solvable_generic_local(curve, pl));
                    all = all && vs.back().solvable;
                }
            }
            io::json arr = io::json::array();
            for (const LocalVerdict& v : vs) arr.push_back(io::verdict(v));
            o.result = {{"solvable", all}, {"verdicts", arr}};
            if (!as_json) {
                out << curve.to_string() << '\n';
                print_verdicts(out, vs);
                out << (l_prime.empty() ? "everywhere locally: " : "verdict: ") << verdict_word(all) << '\n';
            }
        } else if (used == selmer) {
            Integer A = parse_integer(sel_A);
            if (A == 0 || abs(A) == 1 || !is_cube_free(A)) throw InputError("A must be a cube-free integer other than 0, 1, -1");
            SelmerOptions so;
            so.witness_bound = parse_integer(sel_bound);
            if (so.witness_bound < 0) throw InputError("--witness-bound must be nonnegative");
            so.threads = threads;
            inputs = {{"A", io::integer(A)}, {"witness_bound", io::integer(so.witness_bound)}};
            SelmerResult r = compute_selmer(A, so);
            o.result = io::selmer(r);
            o.hypotheses = r.conditional_hypotheses;
            if (!as_json) {
                std::vector<std::string> basis;
                for (const CubeClass& c : r.basis) basis.push_back("[" + c.to_string() + "]");
                Table t({"field", "value"});
                t.add({"A", A.str()});
                t.add({"dimension", std::to_string(r.dimension)});
                t.add({"order", std::to_string(static_cast<long>(std::pow(3, r.dimension)))});
                t.add({"basis", join(basis, ", ")});
                t.add({"s", std::to_string(r.s)});
                t.add({"s0", std::to_string(r.s0)});
                t.add({"root_sign", std::to_string(r.root_sign)});
                t.add({"candidates", std::to_string(r.candidates_tested)});
                t.add({"C(A)", r.c_status});
                t.print(out);
                for (const SelmerWitness& w : r.c_witnesses)
                    out << "point on " << w.curve.to_string() << ": " << point_string(w.point) << '\n';
                for (const std::string& h : r.conditional_hypotheses) out << "assumes: " << h << '\n';
            }
        } else if (used == surface) {
            std::array<Rational, 4> coeffs;
            for (int i = 0; i < 4; ++i) coeffs[i] = parse_rational(sf_coeffs[i]);
            if (std::any_of(coeffs.begin(), coeffs.end(), [](const Rational& r) { return r == 0; }))
                throw InputError("surface coefficients must be nonzero");
            SurfaceSpec s = normalize(coeffs, sf_form == "sum" ? SurfaceForm::sum : SurfaceForm::split);
            inputs = {{"coefficients", io::json::array()}, {"form", sf_form}, {"criteria", sf_criteria}, {"search", sf_search}};
            for (const Rational& c : coeffs) inputs["coefficients"].push_back(io::rational(c));
            LocalSurfaceReport loc = everywhere_local_surface(s);
            std::optional<int> ratio_idx = selmer_ratio_criterion(s);
            io::json bir = io::json::object();
            for (const Integer& p : surface_bad_primes(s)) bir[p.str()] = birational_to_plane_over_Qp(s, p);
            io::json conds = io::json::array();
            for (const LocalCondition& c : loc.conditions) conds.push_back(io::condition(c));
            io::json failing = io::json::array();
            for (const Integer& p : loc.failing_primes) failing.push_back(io::integer(p));
            static const char* ratio_names[] = {"a1a2/a3a4", "a1a3/a2a4", "a1a4/a2a3"};
            o.result = {{"surface", io::surface(s)},
                        {"everywhere_local", loc.solvable},
                        {"local_conditions", conds},
                        {"failing_primes", failing},
                        {"ratio_criterion", ratio_idx.has_value()},
                        {"ratio", ratio_idx ? io::json(ratio_names[*ratio_idx]) : io::json(nullptr)},
                        {"birational_to_plane", bir}};
            bool found_requested = true;
            std::vector<std::string> text;
            if (sf_criteria) {
                if (ratio_idx && loc.solvable) {
                    o.result["criteria"] = io::json::array();
                    o.result["descent_witness"] = nullptr;
                    o.result["criteria_note"] = "ratio criterion applies: the Hasse principle holds for V, so criteria are not consulted";
                    text.push_back(o.result["criteria_note"].get<std::string>());
                } else {
                    CriteriaReport cr = sufficient_criteria(s);
                    DescentSearch ds = descent_witness_search(s, false);
                    io::json hits = io::json::array();
                    for (const CriterionHit& h : cr.hits) hits.push_back(io::criterion(h));
                    o.result["criteria"] = hits;
                    o.result["descent_witness"] = ds.witness ? io::witness(*ds.witness) : io::json(nullptr);
                    if (!ds.witness) o.result["criteria_note"] = loc.solvable ? ds.note : "not everywhere locally solvable";
                    found_requested = !cr.hits.empty() || ds.witness.has_value();
                    if (found_requested && loc.solvable)
                        o.hypotheses.push_back("Ш of x^3 + y^3 = A z^3 over every quadratic field is finite");
                    for (const CriterionHit& h : cr.hits)
                        text.push_back("criterion " + h.label + " [" + diagcubic::detail::order_string(h.order) + "]: " + h.detail);
                    if (ds.witness)
                        text.push_back("descent witness: pairing " + diagcubic::detail::order_string(ds.witness->order) + ", p1 = " + ds.witness->p1.str() + " (C = " + ds.witness->C1.str() + "), p3 = " +
                                       ds.witness->p3.str() + " (C = " + ds.witness->C3.str() + ")");
                    else
                        text.push_back("descent witness: none (" + o.result["criteria_note"].get<std::string>() + ")");
                }
            }
            if (sf_search > 0) {
                auto P = surface_point_search(s, sf_search, threads);
                o.result["point"] = P ? io::point(to_input_coordinates(s, *P)) : io::json(nullptr);
                if (P) {
                    if (!on_input_surface(s, to_input_coordinates(s, *P))) throw std::logic_error("point fails the exact check");
                    text.push_back("point: " + point_string(to_input_coordinates(s, *P)));
                } else {
                    text.push_back("point: none with max |x_i| <= " + std::to_string(sf_search));
                    found_requested = false;
                }
            }
            std::string conclusion;
            if (o.result.contains("point") && !o.result["point"].is_null()) conclusion = "V(Q) is nonempty: exact point found";
            else if (!loc.solvable) conclusion = "V(Q) is empty: no local points";
            else if (!o.hypotheses.empty()) conclusion = "V(Q) is nonempty, conditional on: " + o.hypotheses.front();
            else if (ratio_idx) conclusion = "everywhere locally solvable and the Hasse principle holds (ratio criterion)";
            else conclusion = "everywhere locally solvable; no conclusion about V(Q)";
            o.result["conclusion"] = conclusion;
            if (!found_requested) o.code = absent;
            if (!as_json) {
                out << s.to_string() << "  (normalized; input form " << sf_form << ")\n";
                Table t({"prime", "C_p", "birational to plane"});
                for (const Integer& p : surface_bad_primes(s)) {
                    auto it = std::find_if(loc.conditions.begin(), loc.conditions.end(), [&](const LocalCondition& c) { return c.p == p; });
                    t.add({p.str(), it == loc.conditions.end() ? "none" : it->C.str(), birational_to_plane_over_Qp(s, p) ? "yes" : "no"});
                }
                t.print(out);
                out << "everywhere locally solvable: " << (loc.solvable ? "yes" : "no") << '\n';
                out << "ratio criterion: " << (ratio_idx ? std::string("yes (") + ratio_names[*ratio_idx] + ")" : std::string("no")) << '\n';
                for (const std::string& line : text) out << line << '\n';
                out << conclusion << '\n';
            }
        } else if (used == triple) {
            std::array<Integer, 3> p;
            for (int i = 0; i < 3; ++i) {
                p[i] = parse_prime(tt_primes[i]);
                Integer r = mod_floor(p[i], 9);
                if (r != 2 && r != 5) throw InputError("prime " + p[i].str() + " is not 2 or 5 mod 9");
            }
            PipelineOptions po;
            po.surface_bound = tt_search;
            po.threads = threads;
            po.torsor_bound = parse_integer(tt_torsor);
            if (po.torsor_bound < 0) throw InputError("--torsor-bound must be nonnegative");
            inputs = {{"primes", {io::integer(p[0]), io::integer(p[1]), io::integer(p[2])}}, {"search", tt_search}, {"torsor_bound", io::integer(po.torsor_bound)}};
            PrimeTripleReport r = prime_triple_pipeline(p, po);
            o.hypotheses = r.conditional_hypotheses;
            o.result = {{"surface", io::surface(r.surface)},
                        {"ordered", {io::integer(r.ordered[0]), io::integer(r.ordered[1]), io::integer(r.ordered[2])}},
                        {"pattern", r.pattern},
                        {"duplicates", r.duplicates},
                        {"A", r.A ? io::integer(*r.A) : io::json(nullptr)},
                        {"selmer", r.selmer ? io::selmer(*r.selmer) : io::json(nullptr)},
                        {"distinguished_class", r.distinguished ? io::cube_class(*r.distinguished) : io::json(nullptr)},
                        {"torsor", r.torsor ? io::curve(*r.torsor) : io::json(nullptr)},
                        {"torsor_point", r.torsor_point ? io::point(*r.torsor_point) : io::json(nullptr)},
                        {"point", r.surface_point ? io::point(*r.surface_point) : io::json(nullptr)},
                        {"conclusion", r.conclusion}};
            if (tt_search > 0 && !r.surface_point) o.code = absent;
            if (!as_json) {
                Table t({"field", "value"});
                t.add({"surface", "x1^3 + " + (p[0] * p[1]).str() + "*x2^3 + " + (p[1] * p[2]).str() + "*x3^3 + " + (p[2] * p[0]).str() + "*x4^3 = 0"});
                t.add({"pattern mod 9", r.pattern});
                if (r.A) t.add({"A", r.A->str()});
                if (r.selmer) t.add({"S(A) order", std::to_string(static_cast<long>(std::pow(3, r.selmer->dimension)))});
                if (r.distinguished) t.add({"class", "[" + r.distinguished->to_string() + "]"});
                if (r.torsor) t.add({"torsor", r.torsor->to_string()});
                if (r.torsor_point) t.add({"torsor point", point_string(*r.torsor_point)});
                if (r.surface_point) t.add({"point on V", point_string(*r.surface_point)});
                t.print(out);
                out << r.conclusion << '\n';
            }
        } else if (used == o_count) {
            CurveSpec curve = parse_curve(o_a, o_b, o_c);
            if (!curve.is_rational()) throw InputError("oracle count needs rational coefficients");
            Integer n = parse_integer(o_n);
            if (n < 2 || n > 2000) throw InputError("modulus must be in [2, 2000]");
            inputs = {{"curve", io::curve(curve)}, {"n", io::integer(n)}};
            oracle::ResidueReport rr = oracle::count_solutions_mod(curve, n);
            io::json reps = io::json::array();
            for (const auto& t : rr.representatives) reps.push_back({io::integer(t[0]), io::integer(t[1]), io::integer(t[2])});
            o.result = {{"modulus", io::integer(rr.modulus)}, {"nontrivial_solutions", rr.nontrivial_solutions}, {"representatives", reps}};
            if (!as_json) out << rr.nontrivial_solutions << " primitive solutions mod " << n << '\n';
        } else if (used == o_brute || used == o_ff) {
            CurveSpec curve = parse_curve(o_a, o_b, o_c);
            Place pl = parse_place(o_place, curve.is_rational());
            inputs = {{"curve", io::curve(curve)}, {"place", pl.to_string()}};
            if (used == o_ff) {
                std::uint64_t n = 0;
                try {
                    n = oracle::finite_field_point_count(curve, pl);
                } catch (const std::domain_error& e) {
                    throw InputError(e.what());
                }
                o.result = {{"residue_field_size", io::integer(pl.residue_size())}, {"points", n}};
                if (!as_json) out << n << " points over the residue field of " << pl.to_string() << '\n';
            } else {
                int depth = o_depth > 0 ? o_depth : pl.certified_depth();
                inputs["depth"] = depth;
                oracle::BruteVerdict bv = oracle::brute_local(curve, pl, depth);
                o.result = {{"outcome", oracle::to_string(bv.outcome)},
                            {"place", bv.place},
                            {"depth", bv.depth},
                            {"nodes", bv.nodes},
                            {"point", bv.point ? io::point(*bv.point) : io::json(nullptr)}};
                if (!as_json) out << oracle::to_string(bv.outcome) << " at " << bv.place << " (depth " << bv.depth << ", " << bv.nodes << " nodes)\n";
            }
        }
        if (command == "count" || command == "brute" || command == "ffcount") command = "oracle " + command;
        emit(out, as_json, command, inputs, o);
        return o.code;
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n\n" << used->help();
        return invalid;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n\n" << used->help();
        return invalid;
    }
}

}  // namespace diagcubic::cli
