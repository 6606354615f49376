#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qharm/algebra.hpp"
#include "qharm/config.hpp"
#include "qharm/errors.hpp"
#include "qharm/expr.hpp"
#include "qharm/matrixel.hpp"
#include "qharm/plancherel.hpp"
#include "qharm/qkernel.hpp"
#include "qharm/reps.hpp"
#include "qharm/verify.hpp"

namespace py = pybind11;
using namespace qharm;

namespace {

py::tuple exps(const Monomial& m) { return py::make_tuple(m.e[0], m.e[1], m.e[2], m.e[3]); }

Monomial to_monomial(const std::array<int, 4>& e) { return Monomial{e}; }

GroupKind group(const std::string& name) { return parse_group(name); }

AlgebraElement element(const std::string& text, const std::string& g, double q) {
    const GroupKind k = group(g);
    return to_element(parse_expression(text, k), k, q);
}

// Coproduct as a list of (left exponents, right exponents, coeff).
py::list tensor_rows(const TensorElement& t) {
    py::list out;
    for (auto& [k, c] : t.terms) out.append(py::make_tuple(exps(k[0]), exps(k[1]), c));
    return out;
}

std::vector<std::vector<cplx>> dense(const RepOperator& a) {
    const auto& w = a.window();
    std::vector<std::vector<cplx>> m(w.size(), std::vector<cplx>(w.size()));
    for (int r = w.lo; r <= w.hi; ++r)
        for (int c = w.lo; c <= w.hi; ++c) m[r - w.lo][c - w.lo] = a.entry(r, c);
    return m;
}

BasisWindow window_for(const std::string& g, int lo, int hi) {
    const Space s = space_of(group(g));
    return BasisWindow(s == Space::HalfLine ? std::max(lo, 0) : lo, hi, s);
}

py::dict item_dict(const CheckItem& it) {
    py::dict d;
    d["name"] = it.name;
    d["measured"] = it.measured;
    d["tolerance"] = it.tolerance;
    d["pass"] = it.pass;
    d["informational"] = it.informational;
    d["detail"] = it.detail;
    return d;
}

RunConfig make_config(double q, int window, double tol, int mmin, int mmax) {
    RunConfig c;
    c.q = q;
    c.window = window;
    c.tol = tol;
    c.mmin = mmin;
    c.mmax = mmax;
    c.validate();
    return c;
}

}  // namespace

PYBIND11_MODULE(_qharm, m) {
    m.doc() = "Quantum groups SU_q(2) and E_q(2): algebra, representations, matrix elements, Plancherel";

    auto err = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<DomainError>(m, "DomainError", err.ptr());
    py::register_exception<PoleError>(m, "PoleError", err.ptr());
    py::register_exception<DivergenceError>(m, "DivergenceError", err.ptr());
    py::register_exception<PrecisionError>(m, "PrecisionError", err.ptr());
    py::register_exception<InconsistencyError>(m, "InconsistencyError", err.ptr());
    py::register_exception<UnsupportedRegion>(m, "UnsupportedRegion", err.ptr());
    py::register_exception<ConvergenceFailure>(m, "ConvergenceFailure", err.ptr());
    py::register_exception<WindowError>(m, "WindowError", err.ptr());
    py::register_exception<ParseError>(m, "ParseError", err.ptr());
    py::register_exception<CoverageError>(m, "CoverageError", err.ptr());

    // q-series kernel
    m.def("q_number", &q_number, py::arg("m"), py::arg("q"));
    m.def("q_factorial", &q_factorial, py::arg("n"), py::arg("q"));
    m.def("q_pochhammer", &q_pochhammer, py::arg("a"), py::arg("base"), py::arg("k"));
    m.def("q_binomial", &q_binomial, py::arg("n"), py::arg("k"), py::arg("base"));
    m.def(
        "phi21",
        [](cplx a, cplx b, cplx c, double base, cplx x, int bits) { return phi21(a, b, c, base, x, bits).value; },
        py::arg("a"), py::arg("b"), py::arg("c"), py::arg("base"), py::arg("x"), py::arg("precision_bits") = 128);
    m.def(
        "q_bessel",
        [](int j, cplx x, double q, int bits) { return q_bessel(j, x, DeformationParameter(q, bits)).value; },
        py::arg("j"), py::arg("x"), py::arg("q"), py::arg("precision_bits") = 128);
    m.def(
        "jackson_integral_unit",
        [](const std::function<double(double)>& f, double q, double tol) {
            const auto r = jackson_integral_unit(f, q, tol);
            return py::make_tuple(r.value, r.tail_bound);
        },
        py::arg("f"), py::arg("q"), py::arg("tol") = 1e-16);

    // algebra
    py::class_<Bigrade>(m, "Bigrade")
        .def_property_readonly("i", &Bigrade::i)
        .def_property_readonly("j", &Bigrade::j)
        .def_readonly("homogeneous", &Bigrade::homogeneous)
        .def("__repr__", [](const Bigrade& b) {
            return "Bigrade(" + std::to_string(b.i()) + ", " + std::to_string(b.j()) +
                   (b.homogeneous ? ")" : ", inhomogeneous)");
        });

    py::class_<AlgebraElement>(m, "Element")
        .def_static("parse", &element, py::arg("text"), py::arg("group"), py::arg("q"))
        .def_static(
            "unit", [](const std::string& g, double q, cplx c) { return AlgebraElement::unit(group(g), q, c); },
            py::arg("group"), py::arg("q"), py::arg("c") = cplx(1))
        .def_static(
            "monomial",
            [](const std::string& g, double q, const std::array<int, 4>& e, cplx c) {
                return AlgebraElement::monomial(group(g), q, to_monomial(e), c);
            },
            py::arg("group"), py::arg("q"), py::arg("exponents"), py::arg("c") = cplx(1))
        .def_property_readonly("group", [](const AlgebraElement& f) { return std::string(group_name(f.kind())); })
        .def_property_readonly("q", &AlgebraElement::q)
        .def_property_readonly("terms",
                               [](const AlgebraElement& f) {
                                   py::dict d;
                                   for (auto& [k, c] : f.terms()) d[exps(k)] = c;
                                   return d;
                               })
        .def("coeff", [](const AlgebraElement& f, const std::array<int, 4>& e) { return f.coeff(to_monomial(e)); })
        .def("is_zero", &AlgebraElement::is_zero)
        .def("distance", &AlgebraElement::distance)
        .def("star", [](const AlgebraElement& f) { return star(f); })
        .def("antipode", [](const AlgebraElement& f) { return antipode(f); })
        .def("counit", [](const AlgebraElement& f) { return counit(f); })
        .def("coproduct", [](const AlgebraElement& f) { return tensor_rows(coproduct(f)); })
        .def("bigrade", [](const AlgebraElement& f) { return bigrade_of(f); })
        .def("__pow__", [](const AlgebraElement& f, int n) { return power(f, n); })
        .def(py::self + py::self)
        .def(py::self - py::self)
        .def(py::self * py::self)
        .def("__mul__", [](const AlgebraElement& f, cplx s) { return s * f; })
        .def("__rmul__", [](const AlgebraElement& f, cplx s) { return s * f; })
        .def("__str__", [](const AlgebraElement& f) { return to_text(f); })
        .def("__repr__", [](const AlgebraElement& f) { return "Element(" + to_text(f) + ")"; });

    m.def(
        "generator",
        [](const std::string& name, double q) {
            for (const char* n : {"x", "xs", "u", "us"})
                if (name == n) return element(name, "suq2", q);
            for (const char* n : {"z", "zs", "d", "ds"})
                if (name == n) return element(name, "eq2", q);
            throw DomainError("unknown generator '" + name + "'");
        },
        py::arg("name"), py::arg("q"), "One of x, xs, u, us (SU_q(2)) or z, zs, d, ds (E_q(2)).");
    m.def("normal_order", &element, py::arg("text"), py::arg("group"), py::arg("q"),
          "Parse an expression and return its normal form.");
    m.def(
        "hopf_deviation",
        [](const std::string& g, double q, const std::vector<AlgebraElement>& sample) {
            return hopf_axiom_check(group(g), q, sample).max_deviation();
        },
        py::arg("group"), py::arg("q"), py::arg("sample"));

    // representations
    m.def(
        "represent", [](const AlgebraElement& f, int lo, int hi) {
            return dense(represent(f, window_for(group_name(f.kind()), lo, hi)));
        },
        py::arg("f"), py::arg("lo"), py::arg("hi"),
        "Dense matrix of pi(f) on basis states lo..hi; entry [r][c] = <lo+r|pi(f)|lo+c>.");
    m.def(
        "invariant_integral",
        [](const AlgebraElement& f, double tol) {
            const auto r = invariant_integral(f, tol);
            return py::make_tuple(r.value, r.tail_bound);
        },
        py::arg("f"), py::arg("tol") = 1e-14);
    m.def(
        "scalar_product",
        [](const AlgebraElement& f, const AlgebraElement& g, const std::string& side) {
            if (side != "L" && side != "R") throw DomainError("side must be 'L' or 'R'");
            return scalar_product(f, g, side == "L" ? Side::L : Side::R);
        },
        py::arg("f"), py::arg("g"), py::arg("side") = "R");
    m.def("haar_weight", [](const std::string& g, int n, double q) { return haar_weight(group(g), n, q); },
          py::arg("group"), py::arg("n"), py::arg("q"));

    // matrix elements
    m.def(
        "su_matrix_element",
        [](double l, double i, double j, double q) { return su_matrix_element(CompactLabel::from_half(l, i, j), q); },
        py::arg("l"), py::arg("i"), py::arg("j"), py::arg("q"));
    m.def(
        "su_corep_entry",
        [](double l, double i, double j, double q) { return su_corep_entry(CompactLabel::from_half(l, i, j), q); },
        py::arg("l"), py::arg("i"), py::arg("j"), py::arg("q"));
    m.def(
        "su_corep_deviation",
        [](int l2, double q) {
            const auto c = check_su_corep(l2, q);
            return py::make_tuple(c.comultiplicativity, c.unitarity);
        },
        py::arg("l2"), py::arg("q"), "Comultiplicativity and unitarity defects for spin l2/2.");
    m.def(
        "eq_matrix_element",
        [](double p, int i, int j, double q, int terms) { return eq_matrix_element({p, i, j}, q, terms); },
        py::arg("p"), py::arg("i"), py::arg("j"), py::arg("q"), py::arg("terms") = 20);
    m.def(
        "eq_matrix_value", [](double p, int i, int j, int n, double q) { return eq_matrix_value({p, i, j}, n, q); },
        py::arg("p"), py::arg("i"), py::arg("j"), py::arg("n"), py::arg("q"));
    m.def("eq_lattice_value", [](int i, int j, int mm, int n, double q) { return eq_lattice_value(i, j, mm, n, q); },
          py::arg("i"), py::arg("j"), py::arg("m"), py::arg("n"), py::arg("q"));
    m.def("lattice_momentum", &lattice_momentum, py::arg("m"), py::arg("q"));
    m.def(
        "contraction_deviations",
        [](double p, int i, int j, const std::vector<double>& ls, double q, int lo, int hi) {
            return contraction_check({p, i, j}, ls, q, BasisWindow(lo, hi, Space::FullLine)).deviation;
        },
        py::arg("p"), py::arg("i"), py::arg("j"), py::arg("l_list"), py::arg("q"), py::arg("lo") = -6,
        py::arg("hi") = 16);
    m.def("classical_jacobi", [](double l, double k, double j, double theta) {
        const auto lab = CompactLabel::from_half(l, k, j);
        return classical_jacobi(lab.l2, lab.i2, lab.j2, theta);
    }, py::arg("l"), py::arg("k"), py::arg("j"), py::arg("theta"));

    // Plancherel
    m.def(
        "gram_matrix",
        [](int i, int j, const std::string& side, double q, int mmin, int mmax, int window) {
            if (side != "L" && side != "R") throw DomainError("side must be 'L' or 'R'");
            MomentumLattice lat(mmin, mmax, q);
            LatticeColumns cols(q, BasisWindow(-window / 2, window / 2 - 1, Space::FullLine));
            return gram_matrix(i, j, i, j, side == "L" ? Side::L : Side::R, lat, cols).G;
        },
        py::arg("i"), py::arg("j"), py::arg("side"), py::arg("q"), py::arg("mmin") = -3, py::arg("mmax") = 3,
        py::arg("window") = 512);
    m.def(
        "normalization_constant",
        [](double q, int r, int mmin, int mmax, int window) {
            MomentumLattice lat(mmin, mmax, q);
            LatticeColumns cols(q, BasisWindow(-window / 2, window / 2 - 1, Space::FullLine));
            return extract_normalization(normalization_grams(r, lat, cols)).c;
        },
        py::arg("q"), py::arg("r") = 1, py::arg("mmin") = -3, py::arg("mmax") = 3, py::arg("window") = 512);

    // verification suites
    m.def("suite_names", &suite_names);
    m.def(
        "verify",
        [](const std::string& suite, double q, int window, double tol, int mmin, int mmax) {
            const auto r = run_suite(suite, make_config(q, window, tol, mmin, mmax));
            py::list items;
            for (auto& c : r.criteria)
                for (auto& it : c.items) {
                    auto d = item_dict(it);
                    d["criterion"] = c.id;
                    items.append(d);
                }
            for (auto& it : r.extras) items.append(item_dict(it));
            py::dict out;
            out["suite"] = r.suite;
            out["passed"] = r.passed();
            out["items"] = items;
            return out;
        },
        py::arg("suite"), py::arg("q") = 0.7, py::arg("window") = 512, py::arg("tol") = 1e-12, py::arg("mmin") = -3,
        py::arg("mmax") = 3);
}
