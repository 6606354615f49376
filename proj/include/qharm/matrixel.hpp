#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qharm/reps.hpp"

namespace qharm {

// Half-integer labels stored as twice their value.
struct CompactLabel {
    int l2 = 0, i2 = 0, j2 = 0;
    static CompactLabel from_half(double l, double i, double j);
    bool valid() const;
    std::string str() const;
};

struct EuclidLabel {
    double p = 1.0;
    int i = 0, j = 0;
};

// Choices left open by the printed SU_q(2) formula.  `false` is the printed
// reading in every slot.
struct SuConvention {
    bool lower_i_minus_j = false;  // binomial lower index j-i | i-j
    bool uppers_swapped = false;   // binomial uppers (l+j, l-j) | (l-j, l+i)
    bool lambda_power_alt = false; // q^{(l+i)(l-j)} | q^{-(i-j)(l-i)}
    bool second_alt = false;       // q^{2(j+l+1)} | q^{2(l-j+1)}
    bool third_alt = false;        // q^{2(l+i-j)} | q^{2(1+i-j)}
    int argument = 0;              // 0: q^3 uu* (printed -q^2 u v), 1: q^2 uu*, 2: q^{2(1+i+j)} uu*
    bool v_is_ustar = false;       // v = u | v = u*
    bool operator==(const SuConvention&) const = default;
    std::string describe() const;
};

// The convention selected by calibrate_su_convention, frozen at build time.
SuConvention frozen_su_convention();

bool in_formula_region(const CompactLabel& lab);

// lambda x^{-i-j} v^{i-j} 2phi1(q^{-2(l+j)}, b; c | q^2, s uu*) in the formula
// region i+j <= 0, j <= i.  Throws UnsupportedRegion elsewhere.
AlgebraElement su_matrix_element(const CompactLabel& lab, double q,
                                 const SuConvention& conv = frozen_su_convention());

// Any label: t_ij = (-q)^{j-i} theta(t_ji) for j > i, i+j <= 0 (theta swaps u
// and u*) and t_ij = kappa(t_{-j,-i}) for i+j > 0 (kappa is the
// antiautomorphism x <-> x* fixing u, u*).
AlgebraElement su_corep_entry(const CompactLabel& lab, double q,
                              const SuConvention& conv = frozen_su_convention());

// Rows/columns ordered i = -l, ..., l.
std::vector<std::vector<AlgebraElement>> su_corep(int l2, double q,
                                                  const SuConvention& conv = frozen_su_convention());

struct CorepCheck {
    double comultiplicativity = 0; // |Delta t_ij - sum_k t_ik (x) t_kj|
    double unitarity = 0;          // |T T* - 1| and |T* T - 1|
    double counit = 0;             // |eps(t_ij) - delta_ij|
};
CorepCheck check_su_corep(int l2, double q, const SuConvention& conv = frozen_su_convention());

struct CalibrationRow {
    SuConvention conv;
    bool generators_ok = false;
    bool counit_ok = false;
    bool corep_ok = false;
    double worst = 0; // largest deviation seen in the failing (or last) test
    bool passed() const { return generators_ok && counit_ok && corep_ok; }
};
struct CalibrationReport {
    std::vector<CalibrationRow> rows;
    std::optional<SuConvention> selected; // set when exactly one candidate passes
    int passing = 0;
};
CalibrationReport calibrate_su_convention(double q);

// ---------------------------------------------------------------- E_q(2)

enum class EqPhase { Unitary, Printed };

// Declared ladder actions of the dual algebra on t^p_ij.  Metadata only: the
// duality pairing is not implemented, so nothing here is evaluated on
// algebra elements.  image() returns the declared right-hand side.
enum class LadderOp { EPlus, EMinus, K, EPlusEMinus };
struct LadderImage {
    cplx coeff{};
    EuclidLabel target;
};
struct LadderAction {
    Side side = Side::R;
    LadderOp op = LadderOp::K;
    LadderImage image(const EuclidLabel& lab, double q) const;
    std::string relation() const;
};
// R(E+-), R(k), L(E+-), L(k), R(E+E-).
const std::vector<LadderAction>& declared_ladder_actions();

// Scalar in front of delta^{-j/2} (p z*)^{i-j} J_{i-j}(p^2 z z*) delta^{-j/2} (i >= j)
// or delta^{-j/2} J_{j-i}(p^2 z z*) (p z)^{j-i} delta^{-j/2} (i < j).
// Printed: (i q^{-1/2})^{i-j} resp. (-i q^{1/2})^{i-j}; Unitary multiplies by q^{(i-j)/2}.
cplx eq_prefactor(int i, int j, double q, EqPhase phase);

// Normal-ordered element with the Bessel series cut after `terms` terms.
AlgebraElement eq_matrix_element(const EuclidLabel& lab, double q, int terms,
                                 EqPhase phase = EqPhase::Unitary);
// Cut where a term's largest represented entry on w drops below rel_tol of
// the accumulated largest entry.
AlgebraElement eq_matrix_element_for_window(const EuclidLabel& lab, double q, BasisWindow w,
                                            double rel_tol = 1e-14,
                                            EqPhase phase = EqPhase::Unitary);

// <n+i+j| pi(t^p_ij) |n>, Bessel factor evaluated in MPFR to absolute error abs_tol.
cplx eq_matrix_value(const EuclidLabel& lab, int n, double q, double abs_tol = 1e-22,
                     EqPhase phase = EqPhase::Unitary);
// Momentum lattice p_m = q^m / (1-q^2): there p^2 rho_n^2 (1-q^2)^2 is an integer
// power of q^2 and the Bessel factors decay in n.
double lattice_momentum(int m, double q);
// eq_matrix_value at p = lattice_momentum(m, q), with the Bessel argument formed exactly.
cplx eq_lattice_value(int i, int j, int m, int n, double q, double abs_tol = 1e-22,
                      EqPhase phase = EqPhase::Unitary);
RepOperator eq_matrix_operator(const EuclidLabel& lab, BasisWindow w, double q,
                               double abs_tol = 1e-22, EqPhase phase = EqPhase::Unitary);

// ----------------------------------------------------------- contraction

struct ConvergenceReport {
    std::vector<double> l;
    std::vector<double> deviation;
    bool strictly_decreasing = false;
    bool last_three_decreasing = false;
    double final_deviation() const { return deviation.empty() ? 0.0 : deviation.back(); }
};

// t^l_{-i,-j} evaluated on x -> pi(delta^{-1/2}), x* -> pi(delta^{1/2}),
// u -> (p/[l]) (-iq)^{-1} pi(delta^{-1/2} z), u* -> adjoint, compared with t^p_{ij}.
ConvergenceReport contraction_check(const EuclidLabel& target, const std::vector<double>& l_list,
                                    double q, BasisWindow w, int margin = 2);

struct CoefficientCheck {
    int k;
    std::vector<double> ratio; // finite-l coefficient / limit coefficient, per l
};
// Coefficient of z^a (zz*)^k-type monomials after substitution, against t^p_ij.
std::vector<CoefficientCheck> contraction_coefficients(const EuclidLabel& target,
                                                       const std::vector<double>& l_list,
                                                       double q, int kmax = 6);

// ------------------------------------------------------------- classical

struct ClassicalEuclidElement {
    double phi = 0, rho = 0, zeta = 0;
};
struct ClassicalCompactElement {
    double phi = 0, theta = 0, phi_prime = 0;
};

// P^l_{kj}(cos theta) by periodic trapezoid quadrature; labels doubled.
cplx classical_jacobi(int l2, int k2, int j2, double theta);
cplx classical_su2_element(int l2, int k2, int j2, const ClassicalCompactElement& g);
cplx classical_e2_element(double p, const ClassicalEuclidElement& g, int k, int j);
// (1/2pi) int exp(i x cos psi) exp(i n psi) dpsi
cplx bessel_integral(double x, int n);

ConvergenceReport classical_contraction_check(double p_rho, int k, int j,
                                              const std::vector<double>& l_list);

struct ProfileRow {
    int n;
    double rho;       // rho_n = q^{-n-1}
    double quantum;   // <n|pi(t^p_00)|n>
    double classical; // J_0(2 p rho_n) as the Bessel integral
};
// The `count` lattice sites nearest rho = 1.
std::vector<ProfileRow> classical_limit_profile(double p, double q, int count = 10);

} // namespace qharm
