#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qharm/algebra.hpp"

namespace qharm {

enum class Space { HalfLine, FullLine };

struct BasisWindow {
    int lo = 0, hi = 0;
    Space space = Space::FullLine;

    BasisWindow() = default;
    BasisWindow(int lo, int hi, Space space);
    int size() const { return hi - lo + 1; }
    bool contains(int n) const { return n >= lo && n <= hi; }
};

Space space_of(GroupKind k);

// Banded operator: band[s][n - lo] = <n+s| A |n>.
class RepOperator {
public:
    explicit RepOperator(BasisWindow w) : w_(w) {}
    static RepOperator identity(BasisWindow w);
    static RepOperator diagonal(BasisWindow w, const std::function<cplx(int)>& f);
    // Single band: |n> -> f(n) |n+shift>.
    static RepOperator shift(BasisWindow w, int shift, const std::function<cplx(int)>& f);

    const BasisWindow& window() const { return w_; }
    const std::map<int, std::vector<cplx>>& bands() const { return band_; }
    cplx entry(int row, int col) const;
    void set(int row, int col, cplx v);
    void add(int row, int col, cplx v);
    int bandwidth() const;

    RepOperator adjoint() const;
    RepOperator& operator+=(const RepOperator& o);
    RepOperator& operator*=(cplx s);
    // Largest entry difference restricted to rows and columns in [lo+margin, hi-margin].
    double max_abs_diff(const RepOperator& o, int margin) const;
    double max_abs(int margin = 0) const;

private:
    BasisWindow w_;
    std::map<int, std::vector<cplx>> band_;
};

RepOperator operator+(RepOperator a, const RepOperator& b);
RepOperator operator-(RepOperator a, const RepOperator& b);
RepOperator operator*(cplx s, RepOperator a);
// Product with intermediate states truncated to the window.
RepOperator operator*(const RepOperator& a, const RepOperator& b);

// Single generator action |n> -> coef |n'>; coef may be 0.
struct BasisImage {
    double coef;
    int n;
};
BasisImage generator_action(Gen g, int n, double q);

// Exact restriction of pi(f) to the window: intermediate states are not
// truncated, only the final row must lie in the window.
RepOperator represent(const AlgebraElement& f, BasisWindow w);
// Matrix of a single generator (the oracle used by the confluence test).
RepOperator generator_matrix(Gen g, BasisWindow w, double q);

// Spectrum of the Haar density: SU_q(2) xi = q^{2n}; E_q(2) rho^2 = q^{-2n-2}.
double haar_weight(GroupKind k, int n, double q);

struct RelationAudit {
    std::string relation;   // e.g. "x u = q^s u x"
    std::optional<int> exponent; // fitted s, if any
    std::optional<int> printed;  // the exponent in the printed relation, if it states one
    int printed_line = 0;        // display line of the printed relation (1-based), 0 if none
    double residual = 0;    // residual at the fitted exponent
    bool printed_ok = true;
};

std::vector<RelationAudit> audit_relations(GroupKind kind, double q, BasisWindow w);

struct IntegralResult {
    cplx value{};
    double tail_bound = 0;
    BasisWindow window;
};

// SU_q(2): (1-q^2) sum_{n>=0} <n|pi(f_00 xi)|n>.  E_q(2): (1-q^2) sum_n <n|pi(f_00 rho^2)|n>.
// f_00 is the part of f fixed by both phase rotations (xi- resp. zz*-polynomials);
// the plain trace would also see e.g. u or z delta^{-1/2} and is not invariant.
// Windows double until the weighted tail estimate is below tol (cap 2^16 states).
IntegralResult invariant_integral(const AlgebraElement& f, double tol = 1e-14);
// Plain weighted trace of an operator given on a window, for operators known
// to represent a torus-invariant element; tail_bound reports the
// weighted magnitude of the two outermost diagonal entries on each side.
IntegralResult invariant_integral(const RepOperator& a, GroupKind kind, double q);

struct IndexSet {
    std::vector<int> finite;
    std::optional<int> ray_from; // [a, +inf)
    std::optional<int> ray_to;   // (-inf, b]
};
double subset_measure(const IndexSet& J, GroupKind kind, double q);

enum class Side { L, R };
// L: psi(f* g), R: psi(f g*)
cplx scalar_product(const AlgebraElement& f, const AlgebraElement& g, Side side,
                    double tol = 1e-14);
// Operator form: plain weighted trace of F G^dagger (R) or F^dagger G (L).  Callers
// pairing different bigrades must project first.
cplx scalar_product(const RepOperator& f, const RepOperator& g, Side side, GroupKind kind,
                    double q);

// (f, f')_L = (A(f'), f)_R for f = M b1(rho^2), f' = M b2(rho^2) with smooth
// radial bumps, M an E_q(2) monomial and A one of the twists below.  tau acts
// on the radial part through tau(rho^2) = q^{-1} rho^2; sigma fixes rho^2;
// "claimed" scales a bigrade (i,j) element by q^{-2(i+j)}.
struct TwistedTraceRow {
    Monomial mon;
    Bigrade bigrade;
    cplx lhs{};
    double tau_factor = 0, sigma_factor = 0, claimed_factor = 0;
    double tau_defect = 0, sigma_defect = 0, claimed_defect = 0; // relative
};
TwistedTraceRow twisted_trace_check(const Monomial& m, double q);

struct HaarReport {
    cplx psi{};
    double left_deviation = 0;  // |(psi (x) id) Delta f - psi(f) 1|
    double right_deviation = 0; // |(id (x) psi) Delta f - psi(f) 1|
    double max_deviation() const { return std::max(left_deviation, right_deviation); }
};
// Legwise integration of the coproduct (SU_q(2) polynomials).
HaarReport haar_invariance_check(const AlgebraElement& f, double tol = 1e-14);

} // namespace qharm
