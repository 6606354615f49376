#include <doctest.h>

#include <cmath>
#include <random>

#include "qharm/reps.hpp"

using namespace qharm;
using doctest::Approx;

namespace {

AlgebraElement gen(Gen g, double q) { return AlgebraElement::generator(g, q); }

AlgebraElement random_element(GroupKind kind, double q, std::mt19937& rng, int max_len = 3) {
    const auto gens = GeneratorSet{kind}.generators();
    std::uniform_int_distribution<int> pick(0, static_cast<int>(gens.size()) - 1), len(0, max_len), nterms(1, 3);
    std::uniform_real_distribution<double> c(-1, 1);
    AlgebraElement f(kind, q);
    for (int t = nterms(rng); t > 0; --t) {
        std::vector<Letter> w;
        for (int k = len(rng); k > 0; --k) w.push_back({gens[pick(rng)], 1});
        f += cplx(c(rng), c(rng)) * normal_order(w, kind, q);
    }
    return f;
}

// Direct action of a word on a basis vector, straight from the generator
// formulas: SU_q(2) on n >= 0, E_q(2) on all integers.
std::pair<double, int> act(Gen g, int n, double q) {
    switch (g) {
    case Gen::X: return {std::sqrt(1 - std::pow(q, 2 * n)), n - 1};
    case Gen::XS: return {std::sqrt(1 - std::pow(q, 2 * n + 2)), n + 1};
    case Gen::U: return {std::pow(q, n), n};
    case Gen::US: return {std::pow(q, n), n};
    case Gen::DH: return {1.0, n - 1};
    case Gen::DHI: return {1.0, n + 1};
    case Gen::Z: return {std::pow(q, -n), n - 1};
    case Gen::ZS: return {std::pow(q, -n - 1), n + 1};
    }
    return {0, n};
}

}  // namespace

TEST_CASE("represent examples") {
    const double q = 0.7;
    const BasisWindow w(-10, 10, Space::FullLine);
    const auto Z = represent(gen(Gen::Z, q), w);
    for (int j = w.lo + 1; j <= w.hi; ++j) CHECK(Z.entry(j - 1, j).real() == Approx(std::pow(q, -j)).epsilon(1e-14));
    CHECK(Z.bands().size() == 1);
    const auto I = represent(AlgebraElement::unit(GroupKind::EuclidE, q), w);
    CHECK(I.max_abs_diff(RepOperator::identity(w), 0) == 0.0);
    const auto ZZs = represent(gen(Gen::Z, q) * gen(Gen::ZS, q), w);
    for (int j = w.lo; j <= w.hi; ++j) CHECK(ZZs.entry(j, j).real() == Approx(std::pow(q, -2 * j - 2)).epsilon(1e-13));
    const BasisWindow h(0, 12, Space::HalfLine);
    const auto X = represent(gen(Gen::X, q), h);
    for (int n = 1; n <= 12; ++n) CHECK(X.entry(n - 1, n).real() == Approx(std::sqrt(1 - std::pow(q, 2 * n))).epsilon(1e-15));
    const auto D = represent(power(gen(Gen::DH, q), 2), w);
    CHECK(D.entry(0, 2) == cplx(1.0));
}

TEST_CASE("represent agrees with word-by-word generator actions") {
    std::mt19937 rng(21);
    for (GroupKind k : {GroupKind::CompactSU, GroupKind::EuclidE}) {
        const double q = 0.6;
        const BasisWindow w = k == GroupKind::EuclidE ? BasisWindow(-15, 15, Space::FullLine) : BasisWindow(0, 30, Space::HalfLine);
        const auto gens = GeneratorSet{k}.generators();
        std::uniform_int_distribution<int> pick(0, static_cast<int>(gens.size()) - 1);
        for (int t = 0; t < 40; ++t) {
            std::vector<Letter> word;
            for (int l = 0; l < 4; ++l) word.push_back({gens[pick(rng)], 1});
            const auto A = represent(normal_order(word, k, q), w);
            for (int n = w.lo + 5; n <= w.hi - 5; ++n) {
                double c = 1;
                int m = n;
                for (auto it = word.rbegin(); it != word.rend(); ++it) {
                    auto [f, m2] = act(it->gen, m, q);
                    c *= f;
                    m = m2;
                    if (k == GroupKind::CompactSU && m < 0) c = 0;
                }
                if (c == 0) continue;
                CHECK(std::abs(A.entry(m, n) - c) <= 1e-12 * std::max(1.0, std::abs(c)));
            }
            // Confluence: exact represent() equals the product of generator matrices
            // away from the truncation edges.
            RepOperator P = RepOperator::identity(w);
            for (auto& l : word) P = P * generator_matrix(l.gen, w, q);
            CHECK(A.max_abs_diff(P, 5) <= 1e-12 * std::max(1.0, A.max_abs(5)));
        }
    }
}

TEST_CASE("adjoint consistency on random elements") {
    std::mt19937 rng(23);
    for (int t = 0; t < 100; ++t) {
        const GroupKind k = t % 2 ? GroupKind::EuclidE : GroupKind::CompactSU;
        const double q = 0.7;
        const BasisWindow w = k == GroupKind::EuclidE ? BasisWindow(-12, 12, Space::FullLine) : BasisWindow(0, 24, Space::HalfLine);
        const auto f = random_element(k, q, rng);
        const auto A = represent(f, w), B = represent(star(f), w);
        CHECK(B.max_abs_diff(A.adjoint(), 4) <= 1e-12 * std::max(1.0, A.max_abs(4)));
    }
}

TEST_CASE("relation audit") {
    const double q = 0.7;
    auto find = [](const std::vector<RelationAudit>& rows, const std::string& rel) {
        for (auto& r : rows)
            if (r.relation == rel) return r;
        FAIL("missing relation " << rel);
        return RelationAudit{};
    };
    const auto E = audit_relations(GroupKind::EuclidE, q, BasisWindow(-20, 40, Space::FullLine));
    CHECK(find(E, "z zs = q^s zs z").exponent == -2);
    CHECK(find(E, "z d = q^s d z").exponent == 2);
    for (auto& r : E) CHECK(r.printed_ok);
    const auto S = audit_relations(GroupKind::CompactSU, q, BasisWindow(0, 40, Space::HalfLine));
    CHECK(find(S, "xs x + q^s u us = 1").exponent == 0);
    CHECK(find(S, "x xs + q^s u us = 1").exponent == 2);
    const auto xu = find(S, "x u = q^s u x");
    CHECK(xu.exponent == 1);
    CHECK(xu.printed == -1);
    CHECK_FALSE(xu.printed_ok);
    int failing = 0;
    for (auto& r : S) {
        CHECK(r.residual <= 1e-12);
        failing += !r.printed_ok;
    }
    CHECK(failing == 4);
}

TEST_CASE("invariant integral examples") {
    const double q = 0.7;
    CHECK(invariant_integral(AlgebraElement::unit(GroupKind::CompactSU, q)).value.real() == Approx(1.0).epsilon(1e-13));
    CHECK(invariant_integral(AlgebraElement::unit(GroupKind::CompactSU, 0.5)).value.real() == Approx(1.0).epsilon(1e-13));
    const auto xi = gen(Gen::U, q) * gen(Gen::US, q);
    CHECK(invariant_integral(xi).value.real() == Approx(1 / (1 + q * q)).epsilon(1e-13));
    CHECK(invariant_integral(gen(Gen::Z, q)).value == cplx(0));
    CHECK(invariant_integral(gen(Gen::U, q)).value == cplx(0));
    // psi(xi^k) = (1-q^2) / (1-q^{2(k+1)})
    for (int k = 2; k <= 5; ++k)
        CHECK(invariant_integral(power(xi, k)).value.real() ==
              Approx((1 - q * q) / (1 - std::pow(q, 2 * k + 2))).epsilon(1e-12));
}

TEST_CASE("trace form computed two ways") {
    const double q = 0.7;
    const BasisWindow w(-60, 60, Space::FullLine);
    // Radial bump on the lattice, then polynomials of bigrade (0,0) times it.
    const auto bump = RepOperator::diagonal(w, [](int n) { return std::exp(-0.2 * (n + 3) * (n + 3)); });
    const auto zzs = represent(gen(Gen::Z, q) * gen(Gen::ZS, q), w);
    const auto F = zzs * bump;
    const auto viaApi = invariant_integral(F, GroupKind::EuclidE, q).value;
    cplx diag = 0;
    for (int n = w.lo; n <= w.hi; ++n) diag += F.entry(n, n) * haar_weight(GroupKind::EuclidE, n, q);
    diag *= 1 - q * q;
    const auto rho2 = RepOperator::diagonal(w, [&](int n) { return haar_weight(GroupKind::EuclidE, n, q); });
    const auto G = F * rho2;
    cplx tr = 0;
    for (int n = w.lo; n <= w.hi; ++n) tr += G.entry(n, n);
    tr *= 1 - q * q;
    CHECK(std::abs(viaApi - diag) <= 1e-12 * std::abs(diag));
    CHECK(std::abs(tr - diag) <= 1e-12 * std::abs(diag));
}

TEST_CASE("subset measure examples and additivity") {
    const double q = 0.5;
    CHECK(subset_measure({{}, 0, {}}, GroupKind::CompactSU, 0.7) == Approx(1.0).epsilon(1e-15));
    CHECK(subset_measure({{0}, {}, {}}, GroupKind::CompactSU, 0.7) == Approx(1 - 0.49).epsilon(1e-15));
    CHECK(subset_measure({{1, 2}, {}, {}}, GroupKind::EuclidE, q) == Approx(15.0).epsilon(1e-15));
    const IndexSet a{{0, 3, 5}, {}, {}}, b{{1, 2}, 7, {}}, ab{{0, 1, 2, 3, 5}, 7, {}};
    CHECK(subset_measure(ab, GroupKind::CompactSU, q) ==
          Approx(subset_measure(a, GroupKind::CompactSU, q) + subset_measure(b, GroupKind::CompactSU, q)).epsilon(1e-15));
    const IndexSet e1{{4, 6}, {}, -2}, e2{{0, 1}, {}, {}}, e12{{0, 1, 4, 6}, {}, -2};
    CHECK(subset_measure(e12, GroupKind::EuclidE, q) ==
          Approx(subset_measure(e1, GroupKind::EuclidE, q) + subset_measure(e2, GroupKind::EuclidE, q)).epsilon(1e-15));
    CHECK_THROWS_AS(subset_measure({{}, 0, {}}, GroupKind::EuclidE, q), DivergenceError);
}

TEST_CASE("scalar products: examples, positivity, bigrade orthogonality") {
    const double q = 0.7;
    const BasisWindow w(-40, 40, Space::FullLine);
    const auto bump = RepOperator::diagonal(w, [](int n) { return n == 0 ? 1.0 : 0.0; });
    const auto F = represent(gen(Gen::Z, q), w) * bump;
    const cplx ff = scalar_product(F, F, Side::R, GroupKind::EuclidE, q);
    // z|0> = |−1>, so F F^dagger = |−1><−1| and the weight at −1 is q^0.
    CHECK(ff.real() == Approx(1 - q * q).epsilon(1e-14));
    CHECK(ff.imag() == 0.0);
    // Positivity and the Frobenius form with rho on the window.
    std::mt19937 rng(29);
    std::uniform_real_distribution<double> c(-1, 1);
    for (int t = 0; t < 10; ++t) {
        const auto radial = RepOperator::diagonal(w, [&](int n) { return std::abs(n + 2) < 4 ? cplx(c(rng), c(rng)) : cplx(0); });
        const auto G = represent(gen(Gen::Z, q) * gen(Gen::ZS, q) + gen(Gen::DH, q), w) * radial;
        const cplx gl = scalar_product(G, G, Side::L, GroupKind::EuclidE, q);
        const auto rho = RepOperator::diagonal(w, [&](int n) { return std::sqrt(haar_weight(GroupKind::EuclidE, n, q)); });
        const auto Gr = G * rho;
        double frob = 0;
        for (auto& [s, band] : Gr.bands())
            for (auto& v : band) frob += std::norm(v);
        CHECK(gl.real() >= 0);
        CHECK(gl.real() == Approx((1 - q * q) * frob).epsilon(1e-10));
    }
    // Distinct bigrades: empty diagonal, exactly zero.
    const auto A = represent(gen(Gen::Z, q), w) * bump, B = bump;
    CHECK(scalar_product(A, B, Side::L, GroupKind::EuclidE, q) == cplx(0));
    CHECK(scalar_product(A, B, Side::R, GroupKind::EuclidE, q) == cplx(0));
    const AlgebraElement zero(GroupKind::EuclidE, q);
    CHECK(scalar_product(zero, zero, Side::L) == cplx(0));
    // Polynomial form on SU_q(2): (u, u)_R = psi(u u*) = 1/(1+q^2).
    CHECK(scalar_product(gen(Gen::U, q), gen(Gen::U, q), Side::R).real() == Approx(1 / (1 + q * q)).epsilon(1e-12));
    CHECK(scalar_product(gen(Gen::U, q), gen(Gen::X, q), Side::R) == cplx(0));
}

TEST_CASE("Haar invariance on SU_q(2) polynomials") {
    const double q = 0.7;
    const auto r1 = haar_invariance_check(AlgebraElement::unit(GroupKind::CompactSU, q));
    CHECK(r1.max_deviation() == Approx(0.0).epsilon(1e-15));
    const auto xi = gen(Gen::U, q) * gen(Gen::US, q);
    const auto r2 = haar_invariance_check(xi);
    CHECK(r2.psi.real() == Approx(1 / (1 + q * q)).epsilon(1e-12));
    CHECK(r2.max_deviation() <= 1e-10);
    std::mt19937 rng(31);
    for (int t = 0; t < 10; ++t) CHECK(haar_invariance_check(random_element(GroupKind::CompactSU, q, rng, 4)).max_deviation() <= 1e-10);
}

TEST_CASE("trace twist: sigma holds, tau as printed does not") {
    for (double q : {0.5, 0.7})
        for (Monomial m : {Monomial{{0, 1, 0, 0}}, Monomial{{0, 0, 1, 0}}, Monomial{{2, 0, 0, 0}}, Monomial{{1, 2, 0, 0}},
                           Monomial{{-1, 0, 1, 0}}}) {
            const auto row = twisted_trace_check(m, q);
            CHECK(row.sigma_defect <= 1e-8);
            if (row.bigrade.i2 != 0 || row.bigrade.j2 != 0) CHECK(row.tau_defect > 1e-3);
        }
}

TEST_CASE("window validation") {
    CHECK_THROWS_AS(BasisWindow(5, 2, Space::FullLine), DomainError);
    CHECK_THROWS_AS(BasisWindow(-1, 5, Space::HalfLine), DomainError);
}
