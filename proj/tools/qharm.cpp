// qharm: command-line front end.  Exit codes: 0 ok, 1 verification failure,
// 2 usage or parse error, 3 numeric non-convergence.

#include <CLI11.hpp>

#include <functional>
#include <iostream>
#include <sstream>

#include "output.hpp"
#include "qharm/config.hpp"
#include "qharm/expr.hpp"
#include "qharm/plancherel.hpp"
#include "qharm/verify.hpp"

using namespace qharm;
using qharm::cli::cjson;
using qharm::cli::Json;

namespace {

// Commands whose CSV form is not the row list of the JSON report (dense
// matrices) leave it here.
std::optional<cli::Table> g_csv;

enum Exit { kOk = 0, kVerifyFail = 1, kUsage = 2, kNoConvergence = 3 };

struct Args {
    // qseries
    std::string fn = "q-bessel";
    int m = 1, n = 0, k = 0, j = 0, power = 0;
    std::string a = "0", b = "0", c = "0", x = "0";
    double base = 0;
    // algebra / rep
    std::string group = "eq2", expr = "1", expr2 = "1", side = "r";
    std::optional<int> lo, hi;
    // matel
    std::string l_half = "1/2", i_half = "-1/2", j_half = "-1/2";
    std::string k_str = "0", jc_str = "0";
    double p = 1.0;
    int i = 0, jj = 0, terms = 0;
    bool extend = false;
    std::string phase = "unitary";
    std::string l_list = "5,10,20,40";
    int margin = 2;
    std::string mode = "jacobi";
    double theta = 0, phi = 0, rho = 0, zeta = 0, p_rho = 1.0;
    int count = 10;
    // plancherel
    int i2 = 0, j2 = 0, r = 2, imin = -4, imax = 4, jmin = -4, jmax = 4;
    // verify
    std::string suite = "all";
};

int parse_half(const std::string& s) {
    const auto slash = s.find('/');
    try {
        std::size_t used = 0;
        if (slash != std::string::npos) {
            if (s.substr(slash) != "/2") throw DomainError("");
            const int v = std::stoi(s.substr(0, slash), &used);
            if (used != slash) throw DomainError("");
            return v;
        }
        const double v = std::stod(s, &used);
        if (used != s.size() || std::abs(2 * v - std::round(2 * v)) > 1e-12) throw DomainError("");
        return static_cast<int>(std::lround(2 * v));
    } catch (const std::exception&) {
        throw DomainError("'" + s + "' is not a half-integer (use e.g. 3/2, -1/2, 1)");
    }
}

int parse_int(const std::string& s) {
    const int h = parse_half(s);
    if (h % 2 != 0) throw DomainError("'" + s + "' is not an integer");
    return h / 2;
}

cplx parse_complex(const std::string& s) {
    const auto e = to_element(parse_expression(s, GroupKind::EuclidE), GroupKind::EuclidE, 0.5);
    for (auto& [mon, c] : e.terms())
        if (!mon.is_unit()) throw DomainError("'" + s + "' is not a complex number");
    return e.coeff(Monomial{});
}

std::vector<double> parse_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double v = 0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0) throw DomainError("'" + item + "' in list '" + s + "' is not a number");
        out.push_back(v);
    }
    if (out.empty()) throw DomainError("empty list");
    return out;
}

Json monomial_json(const Monomial& m) { return Json::array({m.e[0], m.e[1], m.e[2], m.e[3]}); }

// Monomial part of the canonical text form, "1" for the unit.
std::string monomial_text(GroupKind kind, const Monomial& m) {
    if (m.is_unit()) return "1";
    std::string s;
    auto put = [&](const char* name, int e, bool half) {
        if (e == 0) return;
        if (!s.empty()) s += ' ';
        s += name;
        if (half) s += e % 2 == 0 ? "^" + std::to_string(e / 2) : "^" + std::to_string(e) + "/2";
        else if (e != 1) s += "^" + std::to_string(e);
    };
    if (kind == GroupKind::EuclidE) {
        put("d", m.e[0], true);
        put("z", m.e[1], false);
        put("zs", m.e[2], false);
    } else {
        put("x", m.e[0], false);
        put("u", m.e[1], false);
        put("us", m.e[2], false);
        put("xs", m.e[3], false);
    }
    return s;
}

Json element_json(const AlgebraElement& f) {
    Json rows = Json::array();
    for (auto& [m, c] : f.terms())
        rows.push_back({{"monomial", monomial_text(f.kind(), m)}, {"exponents", monomial_json(m)}, {"coeff", cjson(c)}});
    return rows;
}

BasisWindow default_window(GroupKind kind, const RunConfig& cfg, const Args& a) {
    if (kind == GroupKind::CompactSU)
        return BasisWindow(a.lo.value_or(0), a.hi.value_or(cfg.window - 1), Space::HalfLine);
    return BasisWindow(a.lo.value_or(-cfg.window / 2), a.hi.value_or(cfg.window - cfg.window / 2 - 1),
                       Space::FullLine);
}

Json config_json(const RunConfig& cfg) {
    return {{"q", cfg.q},       {"precision_bits", cfg.precision_bits}, {"window", cfg.window},
            {"tol", cfg.tol},   {"mmin", cfg.mmin},                     {"mmax", cfg.mmax}};
}

Side parse_side(const std::string& s) {
    if (s == "r" || s == "R") return Side::R;
    if (s == "l" || s == "L") return Side::L;
    throw DomainError("side must be l or r");
}

EqPhase parse_phase(const std::string& s) {
    if (s == "unitary") return EqPhase::Unitary;
    if (s == "printed") return EqPhase::Printed;
    throw DomainError("phase must be unitary or printed");
}

Json convergence_rows(const ConvergenceReport& rep) {
    Json rows = Json::array();
    for (std::size_t k = 0; k < rep.l.size(); ++k) rows.push_back({{"l", rep.l[k]}, {"deviation", rep.deviation[k]}});
    return rows;
}

// ------------------------------------------------------------------ qseries

Json cmd_qseries(const RunConfig& cfg, const Args& a) {
    Json j = {{"command", "qseries eval"}, {"fn", a.fn}, {"q", cfg.q}};
    const double base = a.base > 0 ? a.base : cfg.q * cfg.q;
    if (a.fn == "q-number") {
        j["m"] = a.m;
        j["value"] = q_number(a.m, cfg.q);
    } else if (a.fn == "q-factorial") {
        j["n"] = a.n;
        j["value"] = q_factorial(a.n, cfg.q);
    } else if (a.fn == "q-pochhammer") {
        j["a"] = cjson(parse_complex(a.a));
        j["base"] = base;
        j["k"] = a.k;
        j["value"] = cjson(q_pochhammer(parse_complex(a.a), base, a.k));
    } else if (a.fn == "q-binomial") {
        j["n"] = a.n;
        j["k"] = a.k;
        j["base"] = base;
        j["value"] = q_binomial(a.n, a.k, base);
    } else if (a.fn == "phi21") {
        const auto v = phi21(parse_complex(a.a), parse_complex(a.b), parse_complex(a.c), base, parse_complex(a.x),
                             cfg.precision_bits);
        j["a"] = cjson(parse_complex(a.a));
        j["b"] = cjson(parse_complex(a.b));
        j["c"] = cjson(parse_complex(a.c));
        j["base"] = base;
        j["x"] = cjson(parse_complex(a.x));
        j["value"] = cjson(v.value);
        j["cancellation_estimate"] = v.cancellation_estimate;
        j["terms_used"] = v.terms_used;
    } else if (a.fn == "q-bessel") {
        const auto v = q_bessel(a.j, parse_complex(a.x), DeformationParameter(cfg.q, cfg.precision_bits));
        j["j"] = a.j;
        j["x"] = cjson(parse_complex(a.x));
        j["value"] = cjson(v.value);
        j["cancellation_estimate"] = v.cancellation_estimate;
        j["terms_used"] = v.terms_used;
        j["bits_used"] = v.bits_used;
    } else if (a.fn == "jackson-unit") {
        const int s = a.power;
        const auto v = jackson_integral_unit([s](double xi) { return std::pow(xi, s); }, cfg.q, cfg.tol);
        j["integrand"] = "xi^" + std::to_string(s);
        j["value"] = v.value;
        j["tail_bound"] = v.tail_bound;
        j["terms"] = v.terms;
    } else {
        throw DomainError("unknown --fn '" + a.fn + "'");
    }
    return j;
}

// ------------------------------------------------------------------ algebra

Json cmd_algebra(const std::string& op, const RunConfig& cfg, const Args& a) {
    const GroupKind kind = parse_group(a.group);
    const Expr e = parse_expression(a.expr, kind);
    const AlgebraElement f = to_element(e, kind, cfg.q);
    Json j = {{"command", "algebra " + op}, {"group", group_name(kind)}, {"q", cfg.q},
              {"expr", print_expression(e, kind)}};
    if (op == "normal-order") {
        j["normal_form"] = to_text(f);
        j["rows"] = element_json(f);
    } else if (op == "antipode") {
        const auto s = antipode(f);
        j["result"] = to_text(s);
        j["rows"] = element_json(s);
    } else if (op == "coproduct") {
        const auto d = coproduct(f);
        j["result"] = to_text(d);
        Json rows = Json::array();
        for (auto& [mm, c] : d.terms)
            rows.push_back({{"left", monomial_text(kind, mm[0])}, {"right", monomial_text(kind, mm[1])}, {"coeff", cjson(c)}});
        j["rows"] = rows;
    } else if (op == "bigrade") {
        if (kind != GroupKind::EuclidE) throw DomainError("bigrade is defined on eq2");
        const Bigrade b = bigrade_of(f);
        j["i"] = b.i();
        j["j"] = b.j();
        j["homogeneous"] = b.homogeneous;
        Json rows = Json::array();
        std::map<std::pair<int, int>, AlgebraElement> parts;
        for (auto& [m, c] : f.terms()) {
            const Bigrade mb = monomial_bigrade(m);
            parts.try_emplace({mb.i2, mb.j2}, kind, cfg.q).first->second.add_term(m, c);
        }
        for (auto& [ij, part] : parts) rows.push_back({{"i", ij.first / 2.0}, {"j", ij.second / 2.0}, {"component", to_text(part)}});
        j["rows"] = rows;
    }
    return j;
}

// ------------------------------------------------------------------ rep

Json cmd_rep(const std::string& op, const RunConfig& cfg, const Args& a) {
    const GroupKind kind = parse_group(a.group);
    const Expr e = parse_expression(a.expr, kind);
    Json j = {{"command", "rep " + op}, {"group", group_name(kind)}, {"q", cfg.q}, {"expr", print_expression(e, kind)}};
    if (op == "matrix") {
        const BasisWindow w = default_window(kind, cfg, a);
        const RepOperator A = to_operator(e, kind, cfg.q, w);
        j["window"] = Json::array({w.lo, w.hi});
        Json bands = Json::array();
        for (auto& [shift, band] : A.bands()) {
            Json entries = Json::array();
            for (auto& v : band) entries.push_back(cjson(v));
            bands.push_back({{"offset", shift}, {"entries", entries}});
        }
        j["band_convention"] = "entries[n - lo] = <n+offset| A |n>";
        j["bands"] = bands;
        cli::Table t;
        t.header.push_back("row");
        for (int col = w.lo; col <= w.hi; ++col) {
            t.header.push_back(std::to_string(col) + "_re");
            t.header.push_back(std::to_string(col) + "_im");
        }
        for (int row = w.lo; row <= w.hi; ++row) {
            std::vector<std::string> cells{std::to_string(row)};
            for (int col = w.lo; col <= w.hi; ++col) {
                const cplx v = A.entry(row, col);
                cells.push_back(cli::number17(v.real()));
                cells.push_back(cli::number17(v.imag()));
            }
            t.rows.push_back(std::move(cells));
        }
        g_csv = std::move(t);
    } else if (op == "integral") {
        IntegralResult r;
        if (e.has_table()) r = invariant_integral(to_operator(e, kind, cfg.q, default_window(kind, cfg, a)), kind, cfg.q);
        else r = invariant_integral(to_element(e, kind, cfg.q), cfg.tol);
        j["value"] = cjson(r.value);
        j["tail_bound"] = r.tail_bound;
        j["window"] = Json::array({r.window.lo, r.window.hi});
    } else if (op == "inner") {
        const Expr e2 = parse_expression(a.expr2, kind);
        const Side side = parse_side(a.side);
        j["expr2"] = print_expression(e2, kind);
        j["side"] = side == Side::R ? "r" : "l";
        cplx v;
        if (e.has_table() || e2.has_table()) {
            const BasisWindow w = default_window(kind, cfg, a);
            v = scalar_product(to_operator(e, kind, cfg.q, w), to_operator(e2, kind, cfg.q, w), side, kind, cfg.q);
        } else {
            v = scalar_product(to_element(e, kind, cfg.q), to_element(e2, kind, cfg.q), side, cfg.tol);
        }
        j["value"] = cjson(v);
    }
    return j;
}

// ------------------------------------------------------------------ matel

Json cmd_matel(const std::string& op, const RunConfig& cfg, const Args& a, int& exit_code) {
    Json j = {{"command", "matel " + op}, {"q", cfg.q}};
    if (op == "su") {
        const CompactLabel lab{parse_half(a.l_half), parse_half(a.i_half), parse_half(a.j_half)};
        if (!lab.valid()) throw DomainError("invalid label " + lab.str());
        const auto t = a.extend ? su_corep_entry(lab, cfg.q) : su_matrix_element(lab, cfg.q);
        j["label"] = lab.str();
        j["in_formula_region"] = in_formula_region(lab);
        j["convention"] = frozen_su_convention().describe();
        j["counit"] = cjson(counit(t));
        j["element"] = to_text(t);
        j["rows"] = element_json(t);
    } else if (op == "eq") {
        const EuclidLabel lab{a.p, a.i, a.jj};
        if (!(lab.p > 0)) throw DomainError("p must be positive");
        const EqPhase ph = parse_phase(a.phase);
        const auto t = a.terms > 0 ? eq_matrix_element(lab, cfg.q, a.terms, ph)
                                   : eq_matrix_element_for_window(lab, cfg.q, default_window(GroupKind::EuclidE, cfg, a),
                                                                  1e-14, ph);
        j["p"] = lab.p;
        j["i"] = lab.i;
        j["j"] = lab.j;
        j["phase"] = a.phase;
        j["prefactor"] = cjson(eq_prefactor(lab.i, lab.j, cfg.q, ph));
        j["counit"] = cjson(counit(t));
        j["element"] = to_text(t);
        j["rows"] = element_json(t);
    } else if (op == "contract") {
        const auto ls = parse_list(a.l_list);
        const BasisWindow w(a.lo.value_or(-6), a.hi.value_or(16), Space::FullLine);
        const auto rep = contraction_check({a.p, a.i, a.jj}, ls, cfg.q, w, a.margin);
        j["p"] = a.p;
        j["i"] = a.i;
        j["j"] = a.jj;
        j["window"] = Json::array({w.lo, w.hi});
        j["margin"] = a.margin;
        j["strictly_decreasing"] = rep.strictly_decreasing;
        j["last_three_decreasing"] = rep.last_three_decreasing;
        j["rows"] = convergence_rows(rep);
        if (!rep.last_three_decreasing) exit_code = kNoConvergence;
    } else if (op == "classical") {
        j["mode"] = a.mode;
        if (a.mode == "jacobi") {
            const int l2 = parse_half(a.l_half), k2 = parse_half(a.k_str), j2 = parse_half(a.jc_str);
            j["l"] = l2 / 2.0;
            j["k"] = k2 / 2.0;
            j["j"] = j2 / 2.0;
            j["theta"] = a.theta;
            j["value"] = cjson(classical_jacobi(l2, k2, j2, a.theta));
        } else if (a.mode == "e2") {
            const ClassicalEuclidElement g{a.phi, a.rho, a.zeta};
            const int k = parse_int(a.k_str), jc = parse_int(a.jc_str);
            j["p"] = a.p;
            j["phi"] = a.phi;
            j["rho"] = a.rho;
            j["zeta"] = a.zeta;
            j["k"] = k;
            j["j"] = jc;
            j["value"] = cjson(classical_e2_element(a.p, g, k, jc));
        } else if (a.mode == "contraction") {
            const int k = parse_int(a.k_str), jc = parse_int(a.jc_str);
            const auto rep = classical_contraction_check(a.p_rho, k, jc, parse_list(a.l_list));
            j["p_rho"] = a.p_rho;
            j["k"] = k;
            j["j"] = jc;
            j["strictly_decreasing"] = rep.strictly_decreasing;
            j["rows"] = convergence_rows(rep);
            if (!rep.last_three_decreasing) exit_code = kNoConvergence;
        } else if (a.mode == "profile") {
            j["p"] = a.p;
            Json rows = Json::array();
            for (auto& r : classical_limit_profile(a.p, cfg.q, a.count))
                rows.push_back({{"n", r.n}, {"rho", r.rho}, {"quantum", r.quantum}, {"classical", r.classical}});
            j["rows"] = rows;
        } else {
            throw DomainError("--mode must be jacobi, e2, contraction or profile");
        }
    }
    return j;
}

// ------------------------------------------------------------------ plancherel

BasisWindow lattice_window(const RunConfig& cfg) {
    return BasisWindow(-cfg.window / 2, cfg.window - cfg.window / 2 - 1, Space::FullLine);
}

Json normalization_json(const NormalizationReport& rep) {
    return {{"c", rep.c},
            {"residual_R", rep.residual_R},
            {"residual_L", rep.residual_L},
            {"p_constancy", rep.p_constancy},
            {"r_i_dependence", rep.r_i_dependence},
            {"l_j_dependence", rep.l_j_dependence},
            {"lr_exponents", Json::array({rep.fit_LR.s_i, rep.fit_LR.s_j})},
            {"lr_vs_printed_ratio", rep.lr_vs_claim}};
}

BandFunction band_from(const Expr& e, const RunConfig& cfg, const BasisWindow& w) {
    const Bigrade b = expr_bigrade(e);
    if (!b.homogeneous) throw DomainError("roundtrip needs an expression of a single bigrade");
    return {to_operator(e, GroupKind::EuclidE, cfg.q, w), b.i2, b.j2};
}

Json cmd_plancherel(const std::string& op, const RunConfig& cfg, const Args& a) {
    Json j = {{"command", "plancherel " + op}};
    j.update(config_json(cfg));
    MomentumLattice lat(cfg.mmin, cfg.mmax, cfg.q);
    LatticeColumns cols(cfg.q, lattice_window(cfg));
    if (op == "gram") {
        const auto g = gram_matrix(a.i, a.jj, a.i2, a.j2, parse_side(a.side), lat, cols, cfg.tol);
        j["i"] = a.i;
        j["j"] = a.jj;
        j["i2"] = a.i2;
        j["j2"] = a.j2;
        j["side"] = a.side;
        j["zero_by_bigrade"] = g.zero_by_bigrade;
        j["offdiag_ratio"] = g.zero_by_bigrade ? 0.0 : g.offdiag_ratio();
        Json matrix = Json::array();
        cli::Table t;
        t.header.push_back("m");
        for (int mp = lat.mmin; mp <= lat.mmax; ++mp) {
            t.header.push_back(std::to_string(mp) + "_re");
            t.header.push_back(std::to_string(mp) + "_im");
        }
        for (int m = lat.mmin; m <= lat.mmax; ++m) {
            Json row = Json::array();
            std::vector<std::string> cells{std::to_string(m)};
            for (int mp = lat.mmin; mp <= lat.mmax; ++mp) {
                row.push_back(cjson(g.at(m, mp)));
                cells.push_back(cli::number17(g.at(m, mp).real()));
                cells.push_back(cli::number17(g.at(m, mp).imag()));
            }
            matrix.push_back(row);
            t.rows.push_back(std::move(cells));
        }
        j["matrix"] = matrix;
        g_csv = std::move(t);
    } else if (op == "fit") {
        const auto rep = extract_normalization(normalization_grams(a.r, lat, cols), false);
        j.update(normalization_json(rep));
        Json rows = Json::array();
        for (auto& e : rep.entries)
            rows.push_back({{"side", e.side == Side::R ? "r" : "l"}, {"i", e.i}, {"j", e.j}, {"a", e.a_mean}, {"spread", e.a_spread}});
        j["rows"] = rows;
        if (!rep.model_ok(1e-5)) throw InconsistencyError("normalization model misfits: see residuals");
    } else if (op == "transform" || op == "roundtrip") {
        const Expr e = parse_expression(a.expr, GroupKind::EuclidE);
        j["expr"] = print_expression(e, GroupKind::EuclidE);
        if (op == "transform") {
            const IndexWindow idx{a.imin, a.imax, a.jmin, a.jmax};
            const TransformTable tab =
                e.has_table() ? forward_transform(std::vector<BandFunction>{band_from(e, cfg, cols.window())}, lat, idx, cols)
                              : forward_transform(to_element(e, GroupKind::EuclidE, cfg.q), lat, idx, cols);
            j["edge_mass"] = tab.edge_mass;
            Json rows = Json::array();
            for (auto& [key, v] : tab.coeff) rows.push_back({{"m", key[0]}, {"i", key[1]}, {"j", key[2]}, {"value", cjson(v)}});
            j["rows"] = rows;
        } else {
            const double c = extract_normalization(normalization_grams(0, lat, cols), false).c;
            const auto rt = roundtrip(band_from(e, cfg, cols.window()), c, cols, (cfg.mmin + cfg.mmax) / 2);
            j["c"] = c;
            j["bigrade"] = Json::array({rt.a2 / 2.0, rt.b2 / 2.0});
            j["lattice"] = Json::array({rt.lattice.mmin, rt.lattice.mmax});
            j["edge_mass"] = rt.edge_mass;
            j["relative_error"] = rt.relative_error;
        }
    }
    return j;
}

// ------------------------------------------------------------------ verify

Json item_json(const CheckItem& it, const std::string& group) {
    return {{"group", group},
            {"name", it.name},
            {"measured", it.measured},
            {"tolerance", it.informational ? Json(nullptr) : Json(it.tolerance)},
            {"pass", it.pass},
            {"informational", it.informational},
            {"detail", it.detail}};
}

Json cmd_verify(const RunConfig& cfg, const Args& a, int& exit_code) {
    const SuiteResult res = run_suite(a.suite, cfg);
    Json j = {{"command", "verify"}, {"suite", a.suite}};
    j.update(config_json(cfg));
    j["passed"] = res.passed();
    Json crit = Json::array(), rows = Json::array();
    for (auto& c : res.criteria) {
        Json items = Json::array();
        const std::string g = "criterion " + std::to_string(c.id);
        for (auto& it : c.items) {
            // Wall time is reported on stderr only, so the JSON stays reproducible.
            if (it.name == "runtime (s)") continue;
            items.push_back(item_json(it, g));
            rows.push_back(item_json(it, g));
        }
        crit.push_back({{"id", c.id}, {"title", c.title}, {"passed", c.passed()}, {"items", items}});
    }
    Json extras = Json::array();
    for (auto& it : res.extras) {
        extras.push_back(item_json(it, "extra"));
        rows.push_back(item_json(it, "extra"));
    }
    j["criteria"] = crit;
    j["extras"] = extras;
    j["rows"] = rows;

    for (auto& c : res.criteria) {
        std::cerr << (c.passed() ? "PASS " : "FAIL ") << "criterion " << c.id << ": " << c.title << " ("
                  << cli::number17(c.seconds).substr(0, 6) << " s)\n";
        for (auto& it : c.items)
            if (!it.pass) std::cerr << "     failed: " << it.name << " = " << it.measured << " (tol " << it.tolerance << ")\n";
    }
    for (auto& it : res.extras)
        std::cerr << (it.informational ? "info " : it.pass ? "ok   " : "FAIL ") << it.name << " = " << it.measured << "\n";
    if (!res.passed()) exit_code = kVerifyFail;
    return j;
}

int exit_for(const std::exception& e) {
    if (dynamic_cast<const ParseError*>(&e) || dynamic_cast<const DomainError*>(&e) ||
        dynamic_cast<const UnsupportedRegion*>(&e) || dynamic_cast<const CoverageError*>(&e))
        return kUsage;
    if (dynamic_cast<const InconsistencyError*>(&e)) return kVerifyFail;
    if (dynamic_cast<const Error*>(&e)) return kNoConvergence;
    return kUsage;
}

const char* error_kind(const std::exception& e) {
    if (dynamic_cast<const ParseError*>(&e)) return "parse";
    if (dynamic_cast<const UnsupportedRegion*>(&e)) return "unsupported-region";
    if (dynamic_cast<const CoverageError*>(&e)) return "coverage";
    if (dynamic_cast<const DomainError*>(&e)) return "domain";
    if (dynamic_cast<const InconsistencyError*>(&e)) return "inconsistency";
    if (dynamic_cast<const WindowError*>(&e)) return "window";
    if (dynamic_cast<const PrecisionError*>(&e)) return "precision";
    if (dynamic_cast<const PoleError*>(&e)) return "pole";
    if (dynamic_cast<const Error*>(&e)) return "convergence";
    return "internal";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"qharm: harmonic analysis on SU_q(2) and E_q(2)"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Expand all subcommand help");

    RunConfig cfg;
    Args a;
    std::string output = "json", config_file;
    double q = cfg.q, tol = cfg.tol;
    int bits = cfg.precision_bits, window = cfg.window, mmin = cfg.mmin, mmax = cfg.mmax;
    std::vector<CLI::Option*> global;
    global.push_back(app.add_option("--q", q, "deformation parameter in (0,1)"));
    global.push_back(app.add_option("--precision-bits", bits, "working precision for series"));
    global.push_back(app.add_option("--window", window, "basis window size"));
    global.push_back(app.add_option("--tol", tol, "tolerance"));
    global.push_back(app.add_option("--mmin", mmin, "momentum lattice lower index"));
    global.push_back(app.add_option("--mmax", mmax, "momentum lattice upper index"));
    global.push_back(app.add_option("--output", output, "json or csv")->check(CLI::IsMember({"json", "csv"})));
    app.add_option("--config", config_file, "flat key = value file; flags override it");

    std::string leaf;
    std::function<Json(int&)> run;
    auto leaf_cmd = [&](CLI::App* parent, const std::string& name, const std::string& help) {
        auto* s = parent->add_subcommand(name, help);
        s->fallthrough();
        s->callback([&, s, parent] { leaf = parent->get_name() + " " + s->get_name(); });
        return s;
    };
    auto group_cmd = [&](const std::string& name, const std::string& help) {
        auto* s = app.add_subcommand(name, help);
        s->require_subcommand(1);
        s->fallthrough();
        return s;
    };
    auto add_group_expr = [&](CLI::App* s) {
        s->add_option("--group", a.group, "suq2 or eq2")->check(CLI::IsMember({"suq2", "eq2"}));
        s->add_option("--expr", a.expr, "expression, e.g. \"d^-1 * z zs\"");
    };
    auto add_window = [&](CLI::App* s) {
        s->add_option("--lo", a.lo, "first basis index");
        s->add_option("--hi", a.hi, "last basis index");
    };

    // qseries
    auto* qs = group_cmd("qseries", "scalar q-series");
    auto* qse = leaf_cmd(qs, "eval", "evaluate one q-series primitive");
    qse->add_option("--fn", a.fn, "q-number | q-factorial | q-pochhammer | q-binomial | phi21 | q-bessel | jackson-unit")
        ->check(CLI::IsMember({"q-number", "q-factorial", "q-pochhammer", "q-binomial", "phi21", "q-bessel", "jackson-unit"}));
    qse->add_option("--m", a.m);
    qse->add_option("--n", a.n);
    qse->add_option("--k", a.k);
    qse->add_option("--j", a.j);
    qse->add_option("--power", a.power, "jackson-unit integrand xi^power");
    qse->add_option("--a", a.a, "complex, e.g. 0.5 or (1+2i)");
    qse->add_option("--b", a.b);
    qse->add_option("--c", a.c);
    qse->add_option("--x", a.x);
    qse->add_option("--base", a.base, "series base (default q^2)");

    // algebra
    auto* alg = group_cmd("algebra", "normal ordering and Hopf maps");
    for (const char* op : {"normal-order", "coproduct", "antipode", "bigrade"}) add_group_expr(leaf_cmd(alg, op, op));

    // rep
    auto* rep = group_cmd("rep", "l2 representation");
    for (const char* op : {"matrix", "integral", "inner"}) {
        auto* s = leaf_cmd(rep, op, op);
        add_group_expr(s);
        add_window(s);
        if (std::string(op) == "inner") {
            s->add_option("--expr2", a.expr2, "second argument");
            s->add_option("--side", a.side, "l: psi(f* g), r: psi(f g*)");
        }
    }

    // matel
    auto* mat = group_cmd("matel", "matrix elements");
    auto* msu = leaf_cmd(mat, "su", "SU_q(2) element t^l_ij");
    msu->add_option("--l", a.l_half, "half-integer, e.g. 3/2");
    msu->add_option("--i", a.i_half);
    msu->add_option("--j", a.j_half);
    msu->add_flag("--extend", a.extend, "allow labels outside the formula region via symmetries");
    auto* meq = leaf_cmd(mat, "eq", "E_q(2) element t^p_ij");
    meq->add_option("--p", a.p);
    meq->add_option("--i", a.i);
    meq->add_option("--j", a.jj);
    meq->add_option("--terms", a.terms, "Bessel terms (default: adaptive for the window)");
    meq->add_option("--phase", a.phase, "unitary or printed");
    add_window(meq);
    auto* mco = leaf_cmd(mat, "contract", "SU_q(2) -> E_q(2) contraction");
    mco->add_option("--p", a.p);
    mco->add_option("--i", a.i);
    mco->add_option("--j", a.jj);
    mco->add_option("--l-list", a.l_list, "comma separated, increasing");
    mco->add_option("--margin", a.margin);
    add_window(mco);
    auto* mcl = leaf_cmd(mat, "classical", "classical SU(2)/E(2) formulas");
    mcl->add_option("--mode", a.mode, "jacobi | e2 | contraction | profile");
    mcl->add_option("--l", a.l_half, "jacobi: half-integer l");
    mcl->add_option("--k", a.k_str, "row index (half-integer for jacobi, integer otherwise)");
    mcl->add_option("--j", a.jc_str, "column index");
    mcl->add_option("--theta", a.theta);
    mcl->add_option("--p", a.p);
    mcl->add_option("--phi", a.phi);
    mcl->add_option("--rho", a.rho);
    mcl->add_option("--zeta", a.zeta);
    mcl->add_option("--p-rho", a.p_rho);
    mcl->add_option("--l-list", a.l_list);
    mcl->add_option("--count", a.count);

    // plancherel
    auto* pl = group_cmd("plancherel", "lattice orthogonality and transforms");
    auto* pg = leaf_cmd(pl, "gram", "Gram matrix on the momentum lattice");
    pg->add_option("--i", a.i);
    pg->add_option("--j", a.jj);
    pg->add_option("--i2", a.i2);
    pg->add_option("--j2", a.j2);
    pg->add_option("--side", a.side, "l or r");
    auto* pf = leaf_cmd(pl, "fit", "normalization constants");
    pf->add_option("--r", a.r, "index range [-r, r]^2");
    for (const char* op : {"transform", "roundtrip"}) {
        auto* s = leaf_cmd(pl, op, op);
        s->add_option("--expr", a.expr, "eq2 expression, e.g. \"z * f(rho2; -1:1, 0:0.5)\"");
        if (std::string(op) == "transform") {
            s->add_option("--imin", a.imin);
            s->add_option("--imax", a.imax);
            s->add_option("--jmin", a.jmin);
            s->add_option("--jmax", a.jmax);
        }
    }

    // verify
    auto* vf = app.add_subcommand("verify", "verification suites");
    vf->fallthrough();
    vf->add_option("suite", a.suite, "hopf | relations | haar | orthogonality | contraction | classical-limit | plancherel | all")
        ->check(CLI::IsMember(suite_names()));
    vf->callback([&] { leaf = "verify"; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e) == 0 ? kOk : kUsage;
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e) == 0 ? kOk : kUsage;
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    int exit_code = kOk;
    Json report;
    try {
        if (!config_file.empty()) cfg.apply(read_config_file(config_file));
        if (global[0]->count()) cfg.q = q;
        if (global[1]->count()) cfg.precision_bits = bits;
        if (global[2]->count()) cfg.window = window;
        if (global[3]->count()) cfg.tol = tol;
        if (global[4]->count()) cfg.mmin = mmin;
        if (global[5]->count()) cfg.mmax = mmax;
        if (global[6]->count()) cfg.output = output == "csv" ? OutputFormat::Csv : OutputFormat::Json;
        cfg.validate();

        const auto sp = leaf.find(' ');
        const std::string head = leaf.substr(0, sp), op = sp == std::string::npos ? "" : leaf.substr(sp + 1);
        if (head == "qseries") report = cmd_qseries(cfg, a);
        else if (head == "algebra") report = cmd_algebra(op, cfg, a);
        else if (head == "rep") report = cmd_rep(op, cfg, a);
        else if (head == "matel") report = cmd_matel(op, cfg, a, exit_code);
        else if (head == "plancherel") report = cmd_plancherel(op, cfg, a);
        else if (head == "verify") report = cmd_verify(cfg, a, exit_code);
        else throw DomainError("no command");
    } catch (const std::exception& e) {
        std::cerr << "qharm: " << e.what() << "\n";
        Json err = {{"error", {{"kind", error_kind(e)}, {"message", e.what()}}}};
        if (auto* pe = dynamic_cast<const ParseError*>(&e)) err["error"]["offset"] = pe->offset;
        if (cfg.output == OutputFormat::Json) {
            cli::dump(std::cout, err);
            std::cout << "\n";
        }
        return exit_for(e);
    }

    if (cfg.output == OutputFormat::Json) {
        cli::dump(std::cout, report);
        std::cout << "\n";
    } else {
        cli::write_csv(std::cout, g_csv ? *g_csv : report.contains("rows") ? cli::table_from_rows(report["rows"])
                                                          : cli::table_from_object(report));
    }
    return exit_code;
}
