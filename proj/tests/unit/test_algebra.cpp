#include <doctest.h>

#include <cmath>
#include <random>

#include "qharm/algebra.hpp"

using namespace qharm;
using doctest::Approx;

namespace {

AlgebraElement gen(Gen g, double q) { return AlgebraElement::generator(g, q); }
AlgebraElement one(GroupKind k, double q) { return AlgebraElement::unit(k, q); }

// Random element: a few products of random generator words with random
// complex coefficients.
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

double tdist(const TensorElement& a, const TensorElement& b) { return a.distance(b); }

// a + s b
TensorElement tsum(TensorElement a, const TensorElement& b, cplx s = 1.0) {
    for (auto& [m, c] : b.terms) a.add_term(m, s * c);
    return a;
}

}  // namespace

TEST_CASE("normal_order examples") {
    const double q = 0.7;
    const auto zsz = normal_order({{Gen::ZS, 1}, {Gen::Z, 1}}, GroupKind::EuclidE, q);
    CHECK(zsz.distance(q * q * (gen(Gen::Z, q) * gen(Gen::ZS, q))) <= 1e-15);
    CHECK(zsz.coeff(Monomial{{0, 1, 1, 0}}).real() == Approx(q * q));
    CHECK(normal_order({}, GroupKind::EuclidE, q).distance(one(GroupKind::EuclidE, q)) == 0.0);
    const auto zd = normal_order({{Gen::Z, 1}, {Gen::DH, 2}}, GroupKind::EuclidE, q);
    CHECK(zd.coeff(Monomial{{2, 1, 0, 0}}).real() == Approx(q * q));
    CHECK(zd.terms().size() == 1);
    // Negative powers only on the delta generators.
    const auto dinv = normal_order({{Gen::DH, -2}, {Gen::DH, 2}}, GroupKind::EuclidE, q);
    CHECK(dinv.distance(one(GroupKind::EuclidE, q)) <= 1e-15);
    CHECK_THROWS(normal_order({{Gen::Z, -1}}, GroupKind::EuclidE, q));
}

TEST_CASE("E_q(2) relations in normal form") {
    const double q = 0.55;
    const auto z = gen(Gen::Z, q), zs = gen(Gen::ZS, q), dh = gen(Gen::DH, q), dhi = gen(Gen::DHI, q);
    CHECK((z * zs).distance(std::pow(q, -2) * (zs * z)) <= 1e-14);
    CHECK((z * dh).distance(q * (dh * z)) <= 1e-15);
    CHECK((zs * dh).distance(q * (dh * zs)) <= 1e-15);
    CHECK((dh * dhi).distance(one(GroupKind::EuclidE, q)) == 0.0);
}

TEST_CASE("SU_q(2) relations in normal form") {
    const double q = 0.6;
    const auto x = gen(Gen::X, q), xs = gen(Gen::XS, q), u = gen(Gen::U, q), us = gen(Gen::US, q);
    const auto I = one(GroupKind::CompactSU, q);
    CHECK((xs * x + u * us).distance(I) <= 1e-15);
    CHECK((x * xs + q * q * (u * us)).distance(I) <= 1e-15);
    CHECK((x * u).distance(q * (u * x)) <= 1e-15);
    CHECK((u * us).distance(us * u) <= 1e-15);
}

TEST_CASE("multiply: unit law and associativity") {
    std::mt19937 rng(3);
    for (GroupKind k : {GroupKind::CompactSU, GroupKind::EuclidE}) {
        const double q = 0.65;
        for (int t = 0; t < 30; ++t) {
            const auto f = random_element(k, q, rng), g = random_element(k, q, rng), h = random_element(k, q, rng);
            CHECK((one(k, q) * f).distance(f) <= 1e-15);
            CHECK(((f * g) * h).distance(f * (g * h)) <= 1e-11);
        }
    }
    const double q = 0.65;
    const auto z = gen(Gen::Z, q), zs = gen(Gen::ZS, q), d = power(gen(Gen::DH, q), 2);
    CHECK(((z * zs) * d).distance(z * (zs * d)) <= 1e-15);
    CHECK((z * zs).coeff(Monomial{{0, 1, 1, 0}}) == cplx(1.0));
}

TEST_CASE("star: generator involution, antilinearity, involutivity") {
    const double q = 0.7;
    CHECK(star(gen(Gen::Z, q)).distance(gen(Gen::ZS, q)) == 0.0);
    CHECK(star(gen(Gen::DH, q)).distance(gen(Gen::DHI, q)) == 0.0);
    CHECK(star(gen(Gen::X, q)).distance(gen(Gen::XS, q)) == 0.0);
    CHECK(star(AlgebraElement::unit(GroupKind::EuclidE, q, {0, 1})).coeff(Monomial{}) == cplx(0, -1));
    const auto zzs = gen(Gen::Z, q) * gen(Gen::ZS, q);
    CHECK(star(zzs).distance(zzs) <= 1e-15);
    std::mt19937 rng(5);
    for (GroupKind k : {GroupKind::CompactSU, GroupKind::EuclidE})
        for (int t = 0; t < 30; ++t) {
            const auto f = random_element(k, q, rng), g = random_element(k, q, rng);
            CHECK(star(star(f)).distance(f) <= 1e-12);
            CHECK(star(f * g).distance(star(g) * star(f)) <= 1e-11);
        }
}

TEST_CASE("coproduct, counit, antipode on generators") {
    const double q = 0.7;
    const auto z = gen(Gen::Z, q), d = power(gen(Gen::DH, q), 2);
    const auto I = one(GroupKind::EuclidE, q);
    CHECK(tdist(coproduct(z), tsum(tensor(z, I), tensor(d, z))) <= 1e-15);
    const auto dh = gen(Gen::DH, q);
    CHECK(tdist(coproduct(dh), tensor(dh, dh)) == 0.0);
    CHECK(counit(dh) == cplx(1.0));
    CHECK(counit(z) == cplx(0.0));
    CHECK(antipode(dh).distance(gen(Gen::DHI, q)) == 0.0);
    CHECK(antipode(z).distance(-1.0 * (power(gen(Gen::DHI, q), 2) * z)) <= 1e-15);

    const auto x = gen(Gen::X, q), u = gen(Gen::U, q), us = gen(Gen::US, q), xs = gen(Gen::XS, q);
    CHECK(tdist(coproduct(x), tsum(tensor(x, x), tensor(us, u), -q)) <= 1e-15);
    CHECK(tdist(coproduct(u), tsum(tensor(u, x), tensor(xs, u))) <= 1e-15);
    CHECK(antipode(u).distance(-q * u) <= 1e-15);
    CHECK(antipode(us).distance((-1.0 / q) * us) <= 1e-15);
    CHECK(antipode(x).distance(xs) == 0.0);
    CHECK(counit(x) == cplx(1.0));
    CHECK(counit(u) == cplx(0.0));
}

TEST_CASE("coproduct and counit are homomorphisms, antipode an antihomomorphism") {
    std::mt19937 rng(9);
    for (GroupKind k : {GroupKind::CompactSU, GroupKind::EuclidE}) {
        const double q = 0.6;
        for (int t = 0; t < 25; ++t) {
            const auto f = random_element(k, q, rng, 2), g = random_element(k, q, rng, 2);
            CHECK(tdist(coproduct(f * g), multiply(coproduct(f), coproduct(g))) <= 1e-11);
            CHECK(std::abs(counit(f * g) - counit(f) * counit(g)) <= 1e-12);
            CHECK(antipode(f * g).distance(antipode(g) * antipode(f)) <= 1e-10);
        }
    }
}

TEST_CASE("Hopf axioms: examples and random samples") {
    const double q = 0.7;
    auto E = GroupKind::EuclidE, S = GroupKind::CompactSU;
    CHECK(hopf_axiom_check(E, q, {gen(Gen::Z, q), gen(Gen::ZS, q), power(gen(Gen::DH, q), 2)}).max_deviation() <= 1e-12);
    CHECK(hopf_axiom_check(E, q, {one(E, q)}).max_deviation() == 0.0);
    CHECK(hopf_axiom_check(S, q, {gen(Gen::U, q)}).max_deviation() <= 1e-12);
    std::mt19937 rng(13);
    for (GroupKind k : {S, E})
        for (double qq : {0.3, 0.8}) {
            std::vector<AlgebraElement> sample;
            for (int t = 0; t < 12; ++t) sample.push_back(random_element(k, qq, rng, 3));
            CHECK(hopf_axiom_check(k, qq, sample).max_deviation() <= 1e-10);
        }
}

TEST_CASE("bigrade examples and formula") {
    const double q = 0.7;
    CHECK(bigrade_of(gen(Gen::Z, q)) == Bigrade{2, 0, true});
    CHECK(bigrade_of(power(gen(Gen::DH, q), 2)) == Bigrade{2, 2, true});
    CHECK(bigrade_of(one(GroupKind::EuclidE, q)) == Bigrade{0, 0, true});
    CHECK(bigrade_of(gen(Gen::ZS, q)) == Bigrade{-2, 0, true});
    CHECK_FALSE(bigrade_of(gen(Gen::Z, q) + gen(Gen::ZS, q)).homogeneous);
    // i = h/2 + b - c, j = h/2 on every monomial.
    for (int h = -3; h <= 3; ++h)
        for (int b = 0; b <= 2; ++b)
            for (int c = 0; c <= 2; ++c) {
                const Monomial m{{h, b, c, 0}};
                const Bigrade want{h + 2 * b - 2 * c, h, true};
                CHECK(monomial_bigrade(m) == want);
                CHECK(bigrade_of(AlgebraElement::monomial(GroupKind::EuclidE, q, m)) == want);
            }
    const auto f = gen(Gen::Z, q) + 2.0 * gen(Gen::ZS, q);
    CHECK(bigrade_component(f, -2, 0).distance(2.0 * gen(Gen::ZS, q)) == 0.0);
}

TEST_CASE("automorphisms") {
    const double q = 0.7;
    const auto z = gen(Gen::Z, q), zs = gen(Gen::ZS, q);
    CHECK(apply_automorphism({AutoName::Tau}, z).distance(q * z) <= 1e-15);
    CHECK(apply_automorphism({AutoName::Tau}, zs).distance(std::pow(q, -2) * zs) <= 1e-15);
    CHECK(apply_automorphism({AutoName::Beta, 2.0}, z * zs).distance(4.0 * (z * zs)) <= 1e-15);
    // The trace twist scales bigrade (i,j) by q^{-2(i+j)}; the trace identity
    // itself is tested in the representation tests.
    CHECK(apply_automorphism({AutoName::Sigma}, z).distance(std::pow(q, -2) * z) <= 1e-15);
    const auto d = power(gen(Gen::DH, q), 2);
    CHECK(apply_automorphism({AutoName::Sigma}, d).distance(std::pow(q, -4) * d) <= 1e-15);
    // Automorphisms respect products.
    std::mt19937 rng(17);
    for (AutoName a : {AutoName::Tau, AutoName::Beta, AutoName::Sigma})
        for (int t = 0; t < 10; ++t) {
            const auto f = random_element(GroupKind::EuclidE, q, rng, 2), g = random_element(GroupKind::EuclidE, q, rng, 2);
            const AutomorphismSpec s{a, 1.3};
            CHECK(apply_automorphism(s, f * g).distance(apply_automorphism(s, f) * apply_automorphism(s, g)) <= 1e-11);
        }
}

TEST_CASE("text form") {
    const double q = 0.7;
    const auto z = gen(Gen::Z, q), zs = gen(Gen::ZS, q);
    CHECK(to_text(z) == "1 * z");
    CHECK(to_text(AlgebraElement(GroupKind::EuclidE, q)) == "0");
    CHECK(to_text(cplx(2, -1) * (z * zs) + one(GroupKind::EuclidE, q)) == "1 + (2-1i) * z zs");
    CHECK(to_text(gen(Gen::DH, q)) == "1 * d^1/2");
    CHECK(to_text(coproduct(z)) == "1 * [z] (x) [1] + 1 * [d] (x) [z]");
}
