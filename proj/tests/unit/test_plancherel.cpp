#include <doctest.h>

#include <cmath>

#include "qharm/plancherel.hpp"

using namespace qharm;
using doctest::Approx;

namespace {

BasisWindow default_window() { return BasisWindow(-256, 255, Space::FullLine); }

}  // namespace

TEST_CASE("Gram matrices: bigrade zeros, near-diagonal, Hermitian, j-scaling") {
    for (double q : {0.5, 0.7, 0.9}) {
        MomentumLattice lat(-3, 3, q);
        LatticeColumns cols(q, default_window());
        const auto z = gram_matrix(0, 0, 1, 0, Side::R, lat, cols);
        CHECK(z.zero_by_bigrade);
        for (auto& row : z.G)
            for (auto& v : row) CHECK(v == cplx(0));
        const auto g00 = gram_matrix(0, 0, 0, 0, Side::R, lat, cols);
        CHECK(g00.offdiag_ratio() <= 1e-8);
        CHECK(g00.hermiticity_defect() <= 1e-10);
        const auto g01 = gram_matrix(0, 1, 0, 1, Side::R, lat, cols);
        for (int m = lat.mmin; m <= lat.mmax; ++m)
            CHECK(g01.at(m, m).real() / g00.at(m, m).real() == Approx(std::pow(q, -2)).epsilon(1e-6));
        const auto l11 = gram_matrix(1, -1, 1, -1, Side::L, lat, cols);
        CHECK(l11.offdiag_ratio() <= 1e-6);
        CHECK(l11.hermiticity_defect() <= 1e-10);
    }
}

TEST_CASE("normalization constant and its structure") {
    // The fitted constant matches q^2/(1+q) at every tested q; the closed form
    // was recognised from the q=0.7 fit and is checked independently at q=0.5.
    for (double q : {0.5, 0.7}) {
        MomentumLattice lat(-3, 3, q);
        LatticeColumns cols(q, default_window());
        const auto rep = extract_normalization(normalization_grams(2, lat, cols));
        CHECK(rep.c == Approx(q * q / (1 + q)).epsilon(1e-9));
        CHECK(rep.residual_R <= 1e-6);
        CHECK(rep.residual_L <= 1e-6);
        CHECK(rep.p_constancy <= 1e-6);
        CHECK(rep.r_i_dependence <= 1e-6);
        CHECK(rep.l_j_dependence <= 1e-6);
        CHECK(rep.model_ok(1e-5));
        CHECK(rep.fit_R.s_j == Approx(-2).epsilon(1e-6));
        CHECK(rep.fit_L.s_i == Approx(2).epsilon(1e-6));
        // Ratio of left to right constants.
        CHECK(rep.fit_LR.s_i == Approx(2).epsilon(1e-6));
        CHECK(rep.fit_LR.s_j == Approx(2).epsilon(1e-6));
        CHECK(rep.lr_vs_claim <= 1e-6);
    }
}

TEST_CASE("scaling covariance on the lattice") {
    const double q = 0.7;
    MomentumLattice lat(-3, 3, q);
    LatticeColumns cols(q, default_window());
    for (int n0 = -2; n0 <= 2; ++n0) {
        const auto rep = scaling_identity_check(n0, {{0, 0}, {1, 0}, {0, -1}}, lat, cols);
        CHECK(rep.beta_deviation <= 1e-12);
        CHECK(rep.gram_deviation <= 1e-8);
        CHECK(rep.density_deviation <= 1e-6);
    }
    const auto id = scaling_identity_check(0, {{0, 0}}, lat, cols);
    CHECK(id.beta_deviation == 0.0);
}

TEST_CASE("forward transform pairs bigrades and checks coverage") {
    const double q = 0.7;
    MomentumLattice lat(-3, 3, q);
    LatticeColumns cols(q, default_window());
    const IndexWindow idx{-2, 2, -2, 2};
    const auto zero = forward_transform(AlgebraElement(GroupKind::EuclidE, q), lat, idx, cols);
    for (auto& [k, v] : zero.coeff) CHECK(v == cplx(0));
    // Bigrade (1,0) pairs with t_{-1,0} only.
    const auto f = lattice_bump(Monomial{{0, 1, 0, 0}}, {{0, 1.0}, {1, 0.5}}, q, cols.window());
    const auto tab = forward_transform(std::vector<BandFunction>{f}, lat, idx, cols);
    bool some = false;
    for (auto& [k, v] : tab.coeff) {
        if (k[1] != -1 || k[2] != 0) CHECK(v == cplx(0));
        else some = some || std::abs(v) > 0;
    }
    CHECK(some);
    const auto far = lattice_bump(Monomial{{0, 3, 0, 0}}, {{0, 1.0}}, q, cols.window());
    CHECK_THROWS_AS(forward_transform(std::vector<BandFunction>{far}, lat, idx, cols), CoverageError);
}

TEST_CASE("inverse transform and roundtrip") {
    const double q = 0.7;
    MomentumLattice lat(-3, 3, q);
    LatticeColumns cols(q, default_window());
    const double c = extract_normalization(normalization_grams(0, lat, cols), false).c;
    TransformTable empty{lat, IndexWindow{}, {}, 0};
    CHECK(inverse_transform(empty, c, q).is_zero());
    CHECK(inverse_transform_operator(empty, c, cols).max_abs() == 0.0);
    // delta^0 times a two-point radial bump, and a grade (1,0) bump.
    for (Monomial m : {Monomial{{0, 0, 0, 0}}, Monomial{{0, 1, 0, 0}}, Monomial{{2, 0, 1, 0}}}) {
        const auto f = lattice_bump(m, {{-1, 1.0}, {0, -0.4}}, q, cols.window());
        const auto rt = roundtrip(f, c, cols, 0);
        CHECK(rt.relative_error <= 1e-6);
        CHECK(rt.a2 == f.a2);
        CHECK(rt.b2 == f.b2);
        CHECK(rt.edge_mass <= 1e-14);
    }
}

TEST_CASE("Haar invariance on an E_q(2) wave packet") {
    const double q = 0.5;
    LatticeColumns cols(q, default_window());
    const auto rep = haar_packet_check(0, 0, {{0, 1.0}, {1, cplx(0.3, -0.2)}}, cols);
    CHECK(rep.max_deviation() <= 1e-8);
    CHECK(rep.psi_left > 0);
    CHECK(rep.psi_right > 0);
}

TEST_CASE("momentum lattice") {
    const MomentumLattice lat(-2, 2, 0.6);
    CHECK(lat.size() == 5);
    CHECK(lat.p(1) == Approx(0.6 / (1 - 0.36)).epsilon(1e-15));
    CHECK(lat.delta(0) * (1 - 0.6) * lat.p(0) == Approx(1.0).epsilon(1e-15));
    CHECK_THROWS_AS(MomentumLattice(3, 2, 0.6), DomainError);
}
