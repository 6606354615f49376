#pragma once

#include <map>
#include <optional>
#include <vector>

#include "qharm/matrixel.hpp"

namespace qharm {

// p_m = q^m / (1-q^2), m in [mmin, mmax].
struct MomentumLattice {
    int mmin = -3, mmax = 3;
    double q = 0.7;
    MomentumLattice(int mmin, int mmax, double q);
    int size() const { return mmax - mmin + 1; }
    double p(int m) const { return lattice_momentum(m, q); }
    // Jackson weight of p dp at p_m, and the lattice delta 1/((1-q) p_m) for dp.
    double jackson_weight(int m) const;
    double delta(int m) const;
};

// Columns <n+i+j| t^{p_m}_{ij} |n> on a window, shared between Gram matrices,
// transforms and the Haar check.  Above the peak the column is cut once
// |t|^2 rho^2 falls below 1e-36 of its maximum on four consecutive sites.
class LatticeColumns {
public:
    LatticeColumns(double q, BasisWindow w, double abs_tol = 1e-22);
    const std::vector<cplx>& column(int i, int j, int m);
    double q() const { return q_; }
    const BasisWindow& window() const { return w_; }
    // Largest weighted mass |t|^2 rho^2 at the lower window edge over all
    // columns built so far, relative to the column total.
    double lower_edge_mass() const { return edge_; }

private:
    double q_;
    BasisWindow w_;
    double tol_;
    double edge_ = 0;
    std::map<std::array<int, 3>, std::vector<cplx>> cache_;
};

struct GramMatrix {
    Side side = Side::R;
    int i = 0, j = 0, i2 = 0, j2 = 0;
    int mmin = 0, mmax = 0;
    double q = 0;
    BasisWindow window;
    bool zero_by_bigrade = false;
    std::vector<std::vector<cplx>> G; // G[m - mmin][m' - mmin]
    cplx at(int m, int mp) const { return G[m - mmin][mp - mmin]; }
    double hermiticity_defect() const;
    // max |off-diagonal| / min |diagonal|
    double offdiag_ratio() const;
};

// G[m,m'] = scalar_product(t^{p_m}_{ij}, t^{p_m'}_{i'j'}, side).  Distinct index
// pairs lie in distinct bigrades and give the zero matrix.
GramMatrix gram_matrix(int i, int j, int i2, int j2, Side side, const MomentumLattice& lat,
                       LatticeColumns& cols, double tol = 1e-12);

struct NormalizationEntry {
    int i, j;
    Side side;
    double a_mean;   // mean over m of G[m,m] (1-q) p_m^2
    double a_spread; // relative spread of that quantity over m
};

struct ExponentFit {
    double s_i = 0, s_j = 0; // a = c q^{s_i i + s_j j}
    double log_c = 0;
    double residual = 0;     // largest relative misfit
};

struct NormalizationReport {
    double c = 0;            // from side R: a = c q^{-2j}
    std::vector<NormalizationEntry> entries;
    double residual_R = 0;   // vs c q^{-2j}
    double residual_L = 0;   // vs c q^{2i}
    double p_constancy = 0;  // largest a_spread: diagonal * p constant in p
    double r_i_dependence = 0; // relative variation of a^r q^{2j} with i at fixed j
    double l_j_dependence = 0; // relative variation of a^l q^{-2i} with j at fixed i
    double lr_vs_claim = 0;  // largest |a^l / a^r / q^{2(i+j)} - 1|
    ExponentFit fit_R, fit_L, fit_LR;
    bool model_ok(double tol = 1e-4) const {
        return residual_R <= tol && residual_L <= tol && p_constancy <= tol;
    }
};

// Throws InconsistencyError when strict and the model misfits by more than 1e-4.
NormalizationReport extract_normalization(const std::vector<GramMatrix>& grams,
                                          bool strict = true);

// All same-index Gram matrices over (i,j) in [-r, r]^2, both sides.
std::vector<GramMatrix> normalization_grams(int r, const MomentumLattice& lat, LatticeColumns& cols);

struct ScalingReport {
    int n0 = 0;
    double beta_deviation = 0;   // |beta(t^p) - t^{p p0}| coefficientwise, relative
    double gram_deviation = 0;   // |G(p,p) - p0^2 G(p p0, p p0)| / |G(p,p)|
    double density_deviation = 0; // |c(p) - p0 c(p p0)| / c(p)
};
ScalingReport scaling_identity_check(int n0, const std::vector<std::pair<int, int>>& labels,
                                     const MomentumLattice& lat, LatticeColumns& cols);

// Index window for transforms.
struct IndexWindow {
    int imin = -4, imax = 4, jmin = -4, jmax = 4;
    bool contains(int i, int j) const { return i >= imin && i <= imax && j >= jmin && j <= jmax; }
};

struct TransformTable {
    MomentumLattice lattice;
    IndexWindow indices;
    // f_hat[{m, i, j}]; absent entries are zero.
    std::map<std::array<int, 3>, cplx> coeff;
    double edge_mass = 0; // |f_hat|^2 weight at the two lattice ends, relative
    cplx at(int m, int i, int j) const;
};

// f given on a window as an operator of pure bigrade (a, b) (doubled values).
struct BandFunction {
    RepOperator op;
    int a2 = 0, b2 = 0;
};

// Splits f into homogeneous components and represents each on the window.
std::vector<BandFunction> band_components(const AlgebraElement& f, BasisWindow w);

// f_hat[m,i,j] = (f, t^{p_m}_{ij})_R.  A component of bigrade (a, b) pairs with
// t_{-a,-b}; components with no partner in the index window raise CoverageError.
TransformTable forward_transform(const std::vector<BandFunction>& f, const MomentumLattice& lat,
                                 const IndexWindow& idx, LatticeColumns& cols);
TransformTable forward_transform(const AlgebraElement& f, const MomentumLattice& lat,
                                 const IndexWindow& idx, LatticeColumns& cols);

// (1/c) sum_m (1-q) p_m^2 sum_ij q^{2j} f_hat[m,i,j] t^{p_m}_{ij}
RepOperator inverse_transform_operator(const TransformTable& tab, double c, LatticeColumns& cols);
AlgebraElement inverse_transform(const TransformTable& tab, double c, double q, int terms = 40);

struct RoundtripReport {
    int a2 = 0, b2 = 0;
    MomentumLattice lattice{0, 0, 0.5};
    double relative_error = 0;
    double edge_mass = 0;
};
// Extends the lattice until the transform's edge mass is below edge_tol, then
// compares inverse(forward(f)) with f on the window interior.
RoundtripReport roundtrip(const BandFunction& f, double c, LatticeColumns& cols, int m_center,
                          double edge_tol = 1e-14, int margin = 8);

// Radial lattice bump sum_k w_k |n_k><n_k| times delta^{h/2} z^b z*^c.
BandFunction lattice_bump(const Monomial& left, const std::map<int, double>& weights, double q,
                          BasisWindow w);

// E_q(2) invariance on wave packets g = sum_m w_m t^{p_m}_{ab}: left on g* g,
// right on g g*, legwise through Delta t_ij = sum_k t_ik (x) t_kj, |k| <= K, with
// shells added until they stop contributing.
struct PacketHaarReport {
    double psi_left = 0, psi_right = 0;
    int shells = 0;
    double left_deviation = 0, right_deviation = 0; // relative to psi
    double max_deviation() const { return std::max(left_deviation, right_deviation); }
};
PacketHaarReport haar_packet_check(int a, int b, const std::map<int, cplx>& weights,
                                   LatticeColumns& cols, int K = 400, int margin = 16);

} // namespace qharm
