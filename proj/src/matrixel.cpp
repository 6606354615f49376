#include "qharm/matrixel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace qharm {

namespace {

constexpr cplx I{0.0, 1.0};

std::string half(int twice) {
    if (twice % 2 == 0) return std::to_string(twice / 2);
    return std::to_string(twice) + "/2";
}

// [x] = (q^x - q^{-x}) / (q - q^{-1}) for real x.
double q_number_real(double x, double q) {
    return (std::pow(q, x) - std::pow(q, -x)) / (q - 1.0 / q);
}

cplx ipow(cplx base, int n) {
    cplx r = 1.0;
    if (n < 0) {
        base = 1.0 / base;
        n = -n;
    }
    while (n--) r *= base;
    return r;
}

} // namespace

CompactLabel CompactLabel::from_half(double l, double i, double j) {
    auto dbl = [](double v) {
        double t = 2.0 * v;
        if (std::abs(t - std::round(t)) > 1e-9) throw DomainError("label is not a half-integer");
        return static_cast<int>(std::lround(t));
    };
    return {dbl(l), dbl(i), dbl(j)};
}

bool CompactLabel::valid() const {
    return l2 >= 0 && std::abs(i2) <= l2 && std::abs(j2) <= l2 && (l2 - i2) % 2 == 0 &&
           (l2 - j2) % 2 == 0;
}

std::string CompactLabel::str() const {
    return "(l=" + half(l2) + ", i=" + half(i2) + ", j=" + half(j2) + ")";
}

std::string SuConvention::describe() const {
    std::ostringstream os;
    os << "binomial_lower=" << (lower_i_minus_j ? "i-j" : "j-i")
       << " binomial_uppers=" << (uppers_swapped ? "(l-j,l+i)" : "(l+j,l-j)")
       << " lambda_power=" << (lambda_power_alt ? "-(i-j)(l-i)" : "(l+i)(l-j)")
       << " second=" << (second_alt ? "q^{2(l-j+1)}" : "q^{2(j+l+1)}")
       << " third=" << (third_alt ? "q^{2(1+i-j)}" : "q^{2(l+i-j)}") << " argument="
       << (argument == 0 ? "q^3 uu*" : argument == 1 ? "q^2 uu*" : "q^{2(1+i+j)} uu*")
       << " v=" << (v_is_ustar ? "u*" : "u");
    return os.str();
}

SuConvention frozen_su_convention() {
#include "su_convention.inc"
    return kFrozen;
}

bool in_formula_region(const CompactLabel& lab) {
    return lab.valid() && lab.i2 + lab.j2 <= 0 && lab.j2 <= lab.i2;
}

AlgebraElement su_matrix_element(const CompactLabel& lab, double q, const SuConvention& conv) {
    DeformationParameter dp(q);
    if (!lab.valid()) throw DomainError("invalid label " + lab.str());
    if (!in_formula_region(lab))
        throw UnsupportedRegion("label " + lab.str() + " outside the region i+j <= 0, j <= i");
    // All of these are integers on valid labels.
    const int l_i = (lab.l2 + lab.i2) / 2, l_mi = (lab.l2 - lab.i2) / 2;
    const int l_j = (lab.l2 + lab.j2) / 2, l_mj = (lab.l2 - lab.j2) / 2;
    const int m = (lab.i2 - lab.j2) / 2;   // i - j >= 0
    const int s = -(lab.i2 + lab.j2) / 2;  // -(i+j) >= 0
    const double q2 = q * q;

    const int lower = conv.lower_i_minus_j ? m : -m;
    const int up1 = conv.uppers_swapped ? l_mj : l_j;
    const int up2 = conv.uppers_swapped ? l_i : l_mj;
    const double bin = q_binomial(up1, lower, q2) * q_binomial(up2, lower, q2);
    const double lam_pow = conv.lambda_power_alt ? -double(m) * l_mi : double(l_i) * l_mj;
    const double lambda = std::pow(q, lam_pow) * std::sqrt(bin);

    const double a = std::pow(q2, -l_j);
    const double b = conv.second_alt ? std::pow(q2, l_mj + 1) : std::pow(q2, l_j + 1);
    const double c = conv.third_alt ? std::pow(q2, 1 + m) : std::pow(q, lab.l2 + lab.i2 - lab.j2);
    const double arg = conv.argument == 0   ? q2 * q
                       : conv.argument == 1 ? q2
                                            : std::pow(q2, 1 - s);

    AlgebraElement out(GroupKind::CompactSU, q);
    if (lambda == 0.0) return out;
    // Terminates at k = l + j since a = q^{-2(l+j)}.
    cplx coef = 1.0;
    for (int k = 0; k <= l_j; ++k) {
        if (k > 0) {
            const double den = (1.0 - c * std::pow(q2, k - 1)) * (1.0 - std::pow(q2, k));
            if (std::abs(den) < 1e-300)
                throw PoleError("2phi1 lower parameter hits a pole at " + lab.str());
            coef *= (1.0 - a * std::pow(q2, k - 1)) * (1.0 - b * std::pow(q2, k - 1)) * arg / den;
        }
        if (coef == cplx(0)) break;
        Monomial mon;
        mon.e = conv.v_is_ustar ? std::array<int, 4>{s, k, k + m, 0}
                                : std::array<int, 4>{s, k + m, k, 0};
        out.add_term(mon, lambda * coef);
    }
    return out;
}

AlgebraElement su_corep_entry(const CompactLabel& lab, double q, const SuConvention& conv) {
    if (!lab.valid()) throw DomainError("invalid label " + lab.str());
    if (lab.i2 + lab.j2 > 0) {
        // kappa: x^a u^b u*^c x*^d -> x^d u^b u*^c x*^a, coefficients kept.
        AlgebraElement src = su_corep_entry({lab.l2, -lab.j2, -lab.i2}, q, conv);
        AlgebraElement out(GroupKind::CompactSU, q);
        for (const auto& [mon, c] : src.terms()) {
            Monomial k = mon;
            std::swap(k.e[0], k.e[3]);
            out.add_term(k, c);
        }
        return out;
    }
    if (lab.j2 > lab.i2) {
        AlgebraElement src = su_matrix_element({lab.l2, lab.j2, lab.i2}, q, conv);
        const cplx f = std::pow(-q, (lab.j2 - lab.i2) / 2);
        AlgebraElement out(GroupKind::CompactSU, q);
        for (const auto& [mon, c] : src.terms()) {
            Monomial t = mon;
            std::swap(t.e[1], t.e[2]);
            out.add_term(t, f * c);
        }
        return out;
    }
    return su_matrix_element(lab, q, conv);
}

std::vector<std::vector<AlgebraElement>> su_corep(int l2, double q, const SuConvention& conv) {
    std::vector<std::vector<AlgebraElement>> T;
    for (int i2 = -l2; i2 <= l2; i2 += 2) {
        T.emplace_back();
        for (int j2 = -l2; j2 <= l2; j2 += 2) T.back().push_back(su_corep_entry({l2, i2, j2}, q, conv));
    }
    return T;
}

CorepCheck check_su_corep(int l2, double q, const SuConvention& conv) {
    const auto T = su_corep(l2, q, conv);
    const int d = static_cast<int>(T.size());
    CorepCheck r;
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            TensorElement rhs{GroupKind::CompactSU, q, {}};
            AlgebraElement uu(GroupKind::CompactSU, q), uu2(GroupKind::CompactSU, q);
            for (int k = 0; k < d; ++k) {
                for (const auto& [m, c] : tensor(T[i][k], T[k][j]).terms) rhs.add_term(m, c);
                uu += T[i][k] * star(T[j][k]);
                uu2 += star(T[k][i]) * T[k][j];
            }
            r.comultiplicativity = std::max(r.comultiplicativity, coproduct(T[i][j]).distance(rhs));
            const auto delta = AlgebraElement::unit(GroupKind::CompactSU, q, i == j ? 1.0 : 0.0);
            r.unitarity = std::max({r.unitarity, uu.distance(delta), uu2.distance(delta)});
            r.counit = std::max(r.counit, std::abs(counit(T[i][j]) - (i == j ? 1.0 : 0.0)));
        }
    }
    return r;
}

CalibrationReport calibrate_su_convention(double q) {
    constexpr double tol = 1e-10;
    CalibrationReport rep;
    for (int bits = 0; bits < 64; ++bits) {
        for (int arg = 0; arg < 3; ++arg) {
            CalibrationRow row;
            SuConvention& c = row.conv;
            c.lower_i_minus_j = bits & 1;
            c.uppers_swapped = bits & 2;
            c.lambda_power_alt = bits & 4;
            c.second_alt = bits & 8;
            c.third_alt = bits & 16;
            c.v_is_ustar = bits & 32;
            c.argument = arg;
            try {
                // (a) l = 1/2: x at (-1/2,-1/2), a unit multiple of u or u* at (1/2,-1/2).
                const auto t00 = su_matrix_element({1, -1, -1}, q, c);
                const auto t10 = su_matrix_element({1, 1, -1}, q, c);
                double dev = t00.distance(AlgebraElement::generator(Gen::X, q));
                bool single = t10.terms().size() == 1;
                if (single) {
                    const auto& [mon, co] = *t10.terms().begin();
                    const bool gen = mon.e == std::array<int, 4>{0, 1, 0, 0} ||
                                     mon.e == std::array<int, 4>{0, 0, 1, 0};
                    dev = std::max(dev, gen ? std::abs(std::abs(co) - 1.0) : 1.0);
                }
                row.worst = single ? dev : 1.0;
                row.generators_ok = single && dev <= tol;
                if (!row.generators_ok) {
                    rep.rows.push_back(row);
                    continue;
                }
                // (b) counit diagonality on the region, l <= 2.
                double ce = 0;
                for (int l2 = 0; l2 <= 4; ++l2)
                    for (int i2 = -l2; i2 <= l2; i2 += 2)
                        for (int j2 = -l2; j2 <= i2; j2 += 2)
                            if (i2 + j2 <= 0)
                                ce = std::max(ce, std::abs(counit(su_matrix_element({l2, i2, j2}, q, c)) -
                                                           (i2 == j2 ? 1.0 : 0.0)));
                row.worst = ce;
                row.counit_ok = ce <= tol;
                if (!row.counit_ok) {
                    rep.rows.push_back(row);
                    continue;
                }
                // (c) corepresentation identity and unitarity at l = 1, 3/2.
                double cd = 0;
                for (int l2 : {2, 3}) {
                    const auto chk = check_su_corep(l2, q, c);
                    cd = std::max({cd, chk.comultiplicativity, chk.unitarity});
                }
                row.worst = cd;
                row.corep_ok = cd <= tol;
            } catch (const Error&) {
                row.worst = INFINITY;
            }
            if (row.passed()) {
                ++rep.passing;
                rep.selected = row.conv;
            }
            rep.rows.push_back(row);
        }
    }
    if (rep.passing != 1) rep.selected.reset();
    return rep;
}

// ---------------------------------------------------------------- E_q(2)

LadderImage LadderAction::image(const EuclidLabel& lab, double q) const {
    LadderImage im{lab.p, lab};
    const bool r = side == Side::R;
    switch (op) {
    case LadderOp::EPlus: (r ? im.target.i += 1 : im.target.j -= 1); break;
    case LadderOp::EMinus: (r ? im.target.i -= 1 : im.target.j += 1); break;
    case LadderOp::K: im.coeff = std::pow(q, -(r ? lab.i : lab.j)); break;
    case LadderOp::EPlusEMinus: im.coeff = lab.p * lab.p; break;
    }
    return im;
}

std::string LadderAction::relation() const {
    const bool r = side == Side::R;
    const std::string s = r ? "R" : "L";
    switch (op) {
    case LadderOp::EPlus: return s + "(E+) t^p_ij = p t^p_" + (r ? "{i+1,j}" : "{i,j-1}");
    case LadderOp::EMinus: return s + "(E-) t^p_ij = p t^p_" + (r ? "{i-1,j}" : "{i,j+1}");
    case LadderOp::K: return s + "(k) t^p_ij = q^" + (r ? "-i" : "-j") + " t^p_ij";
    case LadderOp::EPlusEMinus: return s + "(E+E-) t^p_ij = p^2 t^p_ij";
    }
    return {};
}

const std::vector<LadderAction>& declared_ladder_actions() {
    static const std::vector<LadderAction> all{
        {Side::R, LadderOp::EPlus}, {Side::R, LadderOp::EMinus}, {Side::R, LadderOp::K},
        {Side::L, LadderOp::EPlus}, {Side::L, LadderOp::EMinus}, {Side::L, LadderOp::K},
        {Side::R, LadderOp::EPlusEMinus}};
    return all;
}

cplx eq_prefactor(int i, int j, double q, EqPhase phase) {
    const int m = i - j;
    cplx printed = m >= 0 ? ipow(I / std::sqrt(q), m) : ipow(-I * std::sqrt(q), m);
    if (phase == EqPhase::Printed) return printed;
    return printed * std::pow(q, 0.5 * m);
}

namespace {

// Pieces of t^p_ij: prefactor * left * (Bessel series in zz*) * right.
struct EqParts {
    AlgebraElement left, right;
    int order; // Bessel index |i-j|
};

EqParts eq_parts(const EuclidLabel& lab, double q, EqPhase phase) {
    const auto K = GroupKind::EuclidE;
    const int m = std::abs(lab.i - lab.j);
    AlgebraElement dj = normal_order({{Gen::DH, -lab.j}}, K, q);
    AlgebraElement pw = power(lab.p * AlgebraElement::generator(lab.i >= lab.j ? Gen::ZS : Gen::Z, q), m);
    const cplx pre = eq_prefactor(lab.i, lab.j, q, phase);
    if (lab.i >= lab.j) return {pre * (dj * pw), dj, m};
    return {pre * dj, pw * dj, m};
}

// k-th Bessel term (-1)^k (q^{-m} p^2)^k / ([k]! [k+m]!) (zz*)^k.
AlgebraElement bessel_term(int m, int k, double p, double q) {
    const double c = std::pow(-1.0, k) * std::pow(std::pow(q, -m) * p * p, k) /
                     (q_factorial(k, q) * q_factorial(k + m, q));
    AlgebraElement zz = AlgebraElement::generator(Gen::Z, q) * AlgebraElement::generator(Gen::ZS, q);
    return c * power(zz, k);
}

} // namespace

AlgebraElement eq_matrix_element(const EuclidLabel& lab, double q, int terms, EqPhase phase) {
    DeformationParameter dp(q);
    if (!(lab.p > 0)) throw DomainError("p must be positive");
    auto parts = eq_parts(lab, q, phase);
    AlgebraElement series(GroupKind::EuclidE, q);
    for (int k = 0; k < terms; ++k) series += bessel_term(parts.order, k, lab.p, q);
    return parts.left * series * parts.right;
}

AlgebraElement eq_matrix_element_for_window(const EuclidLabel& lab, double q, BasisWindow w,
                                            double rel_tol, EqPhase phase) {
    DeformationParameter dp(q);
    if (!(lab.p > 0)) throw DomainError("p must be positive");
    auto parts = eq_parts(lab, q, phase);
    AlgebraElement out(GroupKind::EuclidE, q);
    double acc = 0;
    int small = 0;
    for (int k = 0; k < 2000; ++k) {
        AlgebraElement term = parts.left * bessel_term(parts.order, k, lab.p, q) * parts.right;
        const double norm = represent(term, w).max_abs();
        out += term;
        acc = std::max(acc, represent(out, w).max_abs());
        // Terms first grow then decay; stop after two consecutive small ones.
        small = (norm <= rel_tol * acc) ? small + 1 : 0;
        if (small >= 2) return out;
    }
    throw DivergenceError("q-Bessel series did not settle on the window");
}

namespace {

// <n+i+j| t |n> = prefactor * 2^log2_outer * J_m(p^2 q^{2 shift}).
struct EqColumn {
    double log2_outer = 0;
    int order = 0;
    int shift = 0;
};

EqColumn eq_column(int i, int j, double p, int n, double q) {
    EqColumn c;
    const double lp = std::log2(p), lq = std::log2(q);
    if (i >= j) {
        c.order = i - j;
        for (int r = 0; r < c.order; ++r) c.log2_outer += lp - (n + j + r + 1) * lq;
        c.shift = -(n + j + 1);
    } else {
        c.order = j - i;
        for (int r = 0; r < c.order; ++r) c.log2_outer += lp - (n + j - r) * lq;
        c.shift = -(n + j - c.order) - 1;
    }
    return c;
}

} // namespace

cplx eq_matrix_value(const EuclidLabel& lab, int n, double q, double abs_tol, EqPhase phase) {
    if (!(lab.p > 0)) throw DomainError("p must be positive");
    const auto c = eq_column(lab.i, lab.j, lab.p, n, q);
    const double x = lab.p * lab.p * std::pow(q, 2.0 * c.shift);
    const cplx pre = eq_prefactor(lab.i, lab.j, q, phase);
    return pre * q_bessel_abs(c.order, x, q, abs_tol / std::abs(pre), 128, 16384, c.log2_outer).value;
}

double lattice_momentum(int m, double q) { return std::pow(q, m) / (1.0 - q * q); }

cplx eq_lattice_value(int i, int j, int m, int n, double q, double abs_tol, EqPhase phase) {
    const auto c = eq_column(i, j, lattice_momentum(m, q), n, q);
    const cplx pre = eq_prefactor(i, j, q, phase);
    return pre * q_bessel_lattice(c.order, 2 * m + 2 * c.shift, q, abs_tol / std::abs(pre), 128,
                                  16384, c.log2_outer)
                     .value;
}

RepOperator eq_matrix_operator(const EuclidLabel& lab, BasisWindow w, double q, double abs_tol,
                               EqPhase phase) {
    RepOperator op(w);
    const int s = lab.i + lab.j;
    for (int n = w.lo; n <= w.hi; ++n)
        if (w.contains(n + s)) op.set(n + s, n, eq_matrix_value(lab, n, q, abs_tol, phase));
    return op;
}

// ----------------------------------------------------------- contraction

namespace {

void finish(ConvergenceReport& r) {
    const auto& d = r.deviation;
    r.strictly_decreasing = true;
    for (std::size_t k = 1; k < d.size(); ++k)
        if (!(d[k] < d[k - 1])) r.strictly_decreasing = false;
    r.last_three_decreasing = d.size() < 3 || (d[d.size() - 1] < d[d.size() - 2] &&
                                               d[d.size() - 2] < d[d.size() - 3]);
}

// u -> D_n |n>,  D_n = (p/[l]) (-iq)^{-1} q^{-n}.
cplx contracted_u(double p, double l, double q, int n) {
    return p / q_number_real(l, q) * (I / q) * std::pow(q, -n);
}

// Column n of the contracted image of a CompactSU element: row -> value.
std::map<int, cplx> contracted_column(const AlgebraElement& f, double p, double l, int n) {
    const double q = f.q();
    std::map<int, cplx> col;
    for (const auto& [mon, c] : f.terms()) {
        const auto& e = mon.e;
        int k = n - e[3];
        cplx d = contracted_u(p, l, q, k);
        cplx v = c * ipow(d, e[1]) * ipow(std::conj(d), e[2]);
        col[k + e[0]] += v;
    }
    return col;
}

CompactLabel contraction_source(const EuclidLabel& t, double l) {
    return CompactLabel::from_half(l, -t.i, -t.j);
}

} // namespace

ConvergenceReport contraction_check(const EuclidLabel& target, const std::vector<double>& l_list,
                                    double q, BasisWindow w, int margin) {
    DeformationParameter dp(q);
    ConvergenceReport rep;
    for (double l : l_list) {
        const auto lab = contraction_source(target, l);
        if (!lab.valid()) throw DomainError("label " + lab.str() + " is not admissible");
        const auto f = su_corep_entry(lab, q);
        double dev = 0;
        for (int n = w.lo + margin; n <= w.hi - margin; ++n) {
            auto col = contracted_column(f, target.p, l, n);
            col[n + target.i + target.j] -= eq_matrix_value(target, n, q);
            for (const auto& [row, v] : col) dev = std::max(dev, std::abs(v));
        }
        rep.l.push_back(l);
        rep.deviation.push_back(dev);
    }
    finish(rep);
    return rep;
}

std::vector<CoefficientCheck> contraction_coefficients(const EuclidLabel& target,
                                                       const std::vector<double>& l_list,
                                                       double q, int kmax) {
    // Term k of the finite-l series, contracted and read at column n = 0,
    // against term k of the limit Bessel series at the same entry.
    const int i = target.i, j = target.j;
    const int m = std::abs(i - j);
    double x, outer = 1.0;
    if (i >= j) {
        for (int r = 0; r < m; ++r) outer *= target.p * std::pow(q, -(j + r + 1));
        x = target.p * target.p * std::pow(q, -2.0 * (j + 1));
    } else {
        for (int r = 0; r < m; ++r) outer *= target.p * std::pow(q, -(j - r));
        x = target.p * target.p * std::pow(q, -2.0 * (j - m) - 2);
    }
    const cplx pre = eq_prefactor(i, j, q, EqPhase::Unitary) * outer;
    std::vector<CoefficientCheck> out;
    for (int k = 0; k <= kmax; ++k) {
        const cplx limit = pre * std::pow(-1.0, k) * std::pow(std::pow(q, -m) * x, k) /
                           (q_factorial(k, q) * q_factorial(k + m, q));
        CoefficientCheck cc{k, {}};
        for (double l : l_list) {
            const auto f = su_corep_entry(contraction_source(target, l), q);
            // Series degree is the common power of (u u*) beyond u^{i-j} or u*^{i-j}.
            AlgebraElement term(GroupKind::CompactSU, q);
            for (const auto& [mon, c] : f.terms())
                if (std::min(mon.e[1], mon.e[2]) == k) term.add_term(mon, c);
            const auto col = contracted_column(term, target.p, l, 0);
            cplx v = 0;
            for (const auto& [row, val] : col) v += val;
            cc.ratio.push_back(std::abs(limit) > 0 ? std::abs(v / limit) : 0.0);
        }
        out.push_back(cc);
    }
    return out;
}

// ------------------------------------------------------------- classical

namespace {

// Periodic trapezoid on [0, 2pi) with node doubling until two successive
// values differ by less than tol.
template <class F>
cplx periodic_mean(F&& f, int n0, double tol = 1e-10) {
    int n = std::max(8, n0);
    auto eval = [&](int nodes) {
        CompensatedSumC s;
        for (int k = 0; k < nodes; ++k) s.add(f(2.0 * std::numbers::pi * k / nodes));
        return s.value() / double(nodes);
    };
    cplx prev = eval(n);
    for (int it = 0; it < 20; ++it) {
        n *= 2;
        cplx cur = eval(n);
        if (std::abs(cur - prev) < tol) return cur;
        prev = cur;
    }
    throw ConvergenceFailure("periodic quadrature did not converge");
}

double reduce_angle(double a) {
    a = std::fmod(a, 2.0 * std::numbers::pi);
    return a < 0 ? a + 2.0 * std::numbers::pi : a;
}

} // namespace

cplx classical_jacobi(int l2, int k2, int j2, double theta) {
    CompactLabel lab{l2, k2, j2};
    if (!lab.valid()) throw DomainError("invalid label " + lab.str());
    const double l = l2 / 2.0, k = k2 / 2.0, j = j2 / 2.0;
    const double pref =
        std::exp(0.5 * (std::lgamma(l - j + 1) + std::lgamma(l + j + 1) - std::lgamma(l - k + 1) -
                        std::lgamma(l + k + 1)));
    const double s = std::sin(theta / 2), c = std::cos(theta / 2);
    const int a = (l2 - k2) / 2, b = (l2 + k2) / 2;
    auto f = [&](double psi) {
        const cplx h = std::exp(I * (psi / 2));
        const cplx e1 = I * s * h + c / h;
        const cplx e2 = I * s / h + c * h;
        return std::exp(-I * (j * psi)) * ipow(e1, a) * ipow(e2, b);
    };
    return pref * periodic_mean(f, 2 * l2 + 8);
}

cplx classical_su2_element(int l2, int k2, int j2, const ClassicalCompactElement& g) {
    const double k = k2 / 2.0, j = j2 / 2.0;
    return std::exp(-I * (k * reduce_angle(g.phi) + j * reduce_angle(g.phi_prime))) *
           classical_jacobi(l2, k2, j2, g.theta);
}

cplx bessel_integral(double x, int n) {
    auto f = [&](double psi) { return std::exp(I * (x * std::cos(psi) + n * psi)); };
    return periodic_mean(f, static_cast<int>(2 * std::abs(x)) + 2 * std::abs(n) + 8);
}

cplx classical_e2_element(double p, const ClassicalEuclidElement& g, int k, int j) {
    if (g.rho < 0) throw DomainError("rho must be nonnegative");
    const double phi = reduce_angle(g.phi), zeta = reduce_angle(g.zeta);
    return std::exp(-I * (k * phi + j * (zeta - phi))) * bessel_integral(p * g.rho, k - j);
}

ConvergenceReport classical_contraction_check(double p_rho, int k, int j,
                                              const std::vector<double>& l_list) {
    const cplx target = bessel_integral(p_rho, k - j);
    ConvergenceReport rep;
    for (double l : l_list) {
        const auto lab = CompactLabel::from_half(l, k, j);
        const double dev = std::abs(classical_jacobi(lab.l2, lab.i2, lab.j2, p_rho / l) - target);
        rep.l.push_back(l);
        rep.deviation.push_back(dev);
    }
    finish(rep);
    return rep;
}

std::vector<ProfileRow> classical_limit_profile(double p, double q, int count) {
    DeformationParameter dp(q);
    // rho_n = q^{-n-1} is nearest 1 around n = -1.
    std::vector<int> ns;
    for (int n = -1 - count; n <= -1 + count; ++n) ns.push_back(n);
    std::stable_sort(ns.begin(), ns.end(), [&](int a, int b) {
        return std::abs(std::log(std::pow(q, -a - 1))) < std::abs(std::log(std::pow(q, -b - 1)));
    });
    ns.resize(count);
    std::sort(ns.begin(), ns.end());
    std::vector<ProfileRow> rows;
    for (int n : ns) {
        const double rho = std::pow(q, -n - 1);
        const double quantum = eq_matrix_value({p, 0, 0}, n, q, 1e-15).real();
        // Symmetric q-factorials give J_0(2 sqrt(x)) at q = 1, so the matched radius is 2 rho.
        const double classical = bessel_integral(2.0 * p * rho, 0).real();
        rows.push_back({n, rho, quantum, classical});
    }
    return rows;
}

} // namespace qharm
