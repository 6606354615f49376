#include <doctest.h>

#include <cmath>
#include <random>

#include "../oracle/oracle.hpp"
#include "qharm/qkernel.hpp"

using namespace qharm;
using doctest::Approx;

TEST_CASE("q_number examples") {
    CHECK(q_number(0, 0.3) == 0.0);
    CHECK(q_number(1, 0.3) == Approx(1.0).epsilon(1e-15));
    CHECK(q_number(2, 0.5) == Approx(2.5).epsilon(1e-15));
    CHECK(q_number(-3, 0.6) == Approx(-q_number(3, 0.6)).epsilon(1e-15));
}

TEST_CASE("q_factorial examples and domain") {
    CHECK(q_factorial(0, 0.5) == 1.0);
    CHECK(q_factorial(1, 0.5) == Approx(1.0).epsilon(1e-15));
    CHECK(q_factorial(2, 0.5) == Approx(2.5).epsilon(1e-15));
    CHECK_THROWS_AS(q_factorial(-1, 0.5), DomainError);
}

TEST_CASE("q_pochhammer examples") {
    CHECK(q_pochhammer({0.37, 0.2}, 0.3, 0) == cplx(1.0));
    CHECK(std::abs(q_pochhammer(1.0, 0.3, 1)) == 0.0);
    CHECK(q_pochhammer(0.5, 0.25, 2).real() == Approx(0.4375).epsilon(1e-15));
}

TEST_CASE("q_binomial examples") {
    const double q = 0.7;
    CHECK(q_binomial(5, 0, q * q) == Approx(1.0));
    CHECK(q_binomial(2, 1, q * q) == Approx(1 + q * q).epsilon(1e-15));
    CHECK(q_binomial(2, 3, q * q) == 0.0);
    CHECK(q_binomial(2, -1, q * q) == 0.0);
}

TEST_CASE("q_binomial against the Pascal recurrence oracle") {
    for (double qb : {0.1, 0.49, 0.81, 0.99})
        for (int n = 0; n <= 12; ++n)
            for (int k = 0; k <= n; ++k)
                CHECK(q_binomial(n, k, qb) ==
                      Approx(static_cast<double>(oracle::qbinomial(n, k, qb))).epsilon(1e-13));
}

TEST_CASE("q_number and q_factorial against oracle, q->1 monotone approach") {
    for (double q : {0.2, 0.5, 0.9})
        for (int m = 0; m <= 15; ++m) {
            CHECK(q_number(m, q) == Approx(static_cast<double>(oracle::qnum(m, q))).epsilon(1e-13));
            CHECK(q_factorial(m, q) == Approx(static_cast<double>(oracle::qfac(m, q))).epsilon(1e-12));
        }
    for (int n = 0; n <= 8; ++n) {
        const double nf = std::tgamma(n + 1.0);
        double prev = INFINITY;
        for (double q : {0.9, 0.99, 0.999}) {
            const double d = std::abs(q_factorial(n, q) - nf);
            CHECK(d <= prev);
            prev = d;
        }
        CHECK(prev <= 1e-2 * nf + 1e-12);
    }
}

TEST_CASE("phi21 examples") {
    CHECK(phi21(1.0, 0.3, 0.2, 0.5, 0.9).value == cplx(1.0));
    CHECK(phi21(0.4, 0.3, 0.2, 0.5, 0.0).value == cplx(1.0));
    const double qb = 0.5;
    const auto v = phi21(1 / qb, qb, qb * qb, qb, 1.0);
    const double two_term = 1 + (1 - 2) * (1 - 0.5) / ((1 - 0.25) * (1 - 0.5));
    CHECK(v.value.real() == Approx(two_term).epsilon(1e-15));
    CHECK(v.value.imag() == 0.0);
}

TEST_CASE("phi21 frozen non-terminating value from a high-precision oracle") {
    // derive_values.py: 80-digit direct summation.
    const auto v = phi21(0.5, {0.1, 0.2}, 0.3, 0.49, 0.4);
    CHECK(v.value.real() == Approx(1.8736331229804559208).epsilon(1e-14));
    CHECK(v.value.imag() == Approx(-0.24553164392910766804).epsilon(1e-14));
}

TEST_CASE("phi21 against oracle on random parameters") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(-0.6, 0.6), qd(0.2, 0.8);
    for (int t = 0; t < 30; ++t) {
        const cplx a{u(rng), u(rng)}, b{u(rng), u(rng)}, c{u(rng), u(rng)}, x{u(rng), u(rng)};
        const double qb = qd(rng);
        const auto got = phi21(a, b, c, qb, x).value;
        const auto want = oracle::to_c(oracle::phi21({a.real(), a.imag()}, {b.real(), b.imag()},
                                                     {c.real(), c.imag()}, qb, {x.real(), x.imag()}));
        CHECK(std::abs(got - want) <= 1e-13 * std::max(1.0, std::abs(want)));
    }
}

TEST_CASE("phi21 errors") {
    const double qb = 0.5;
    // a = q^{-3} terminates at k=3 but (c;q)_k vanishes at k=1.
    CHECK_THROWS_AS(phi21(std::pow(qb, -3), 0.3, 1.0, qb, 0.5), PoleError);
    CHECK_THROWS_AS(phi21(0.3, 0.3, 0.2, qb, 4.0), DivergenceError);
    CHECK_THROWS_AS(phi21(0.3, 0.3, 0.2, 1.5, 0.1), DomainError);
}

TEST_CASE("q_bessel examples") {
    const DeformationParameter dp(0.5, 128);
    CHECK(q_bessel(0, 0.0, dp).value == cplx(1.0));
    CHECK(q_bessel(2, 0.0, dp).value.real() == Approx(1.0 / q_factorial(2, 0.5)).epsilon(1e-15));
    const double brute = static_cast<double>(oracle::qbessel(0, 1, 0.5, 60).real());
    CHECK(std::abs(q_bessel(0, 1.0, dp).value.real() - brute) <= 1e-12);
}

TEST_CASE("q_bessel frozen values from a high-precision oracle") {
    // derive_values.py: 80-digit direct summation, 400 terms.
    CHECK(q_bessel(1, 2.5, DeformationParameter(0.6)).value.real() ==
          Approx(-0.13165558544727101157).epsilon(1e-14));
    CHECK(q_bessel(3, 1.7, DeformationParameter(0.8)).value.real() ==
          Approx(0.066615365818008331861).epsilon(1e-14));
    CHECK(q_bessel(0, 1.0, DeformationParameter(0.5)).value.real() ==
          Approx(0.15424631954556064231).epsilon(1e-14));
}

TEST_CASE("q_bessel against oracle, complex arguments") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(-3, 3), qd(0.3, 0.9);
    for (int t = 0; t < 40; ++t) {
        const int j = t % 4;
        const double q = qd(rng);
        const cplx x{u(rng), u(rng)};
        const auto want = oracle::to_c(oracle::qbessel(j, {x.real(), x.imag()}, q, 200));
        const auto got = q_bessel(j, x, DeformationParameter(q)).value;
        CHECK(std::abs(got - want) <= 1e-13 * std::max(1.0, std::abs(want)));
    }
}

TEST_CASE("q_bessel classical limit at q=0.999") {
    const DeformationParameter dp(0.999);
    for (int j = 0; j <= 3; ++j)
        for (double x : {-2.0, -1.0, 0.5, 1.0, 2.0})
            CHECK(std::abs(q_bessel(j, x, dp).value.real() - oracle::classical_bessel_series(j, x)) <= 1e-2);
}

TEST_CASE("q_bessel under heavy cancellation") {
    CHECK_THROWS_AS(q_bessel(-1, 1.0, DeformationParameter(0.5)), DomainError);
    // Near the lattice point x = q^-20/(1-q^2)^2 the value is 17 digits below
    // the largest term; 53 requested bits must escalate.
    const double q = 0.7, x = std::pow(q, -20) / std::pow(1 - q * q, 2);
    const auto v = q_bessel(0, x, DeformationParameter(q, 53));
    CHECK(v.cancellation_estimate > 1e16);
    CHECK(v.bits_used > 53);
    const double want = static_cast<double>(oracle::qbessel(0, x, q, 300).real());
    CHECK(v.value.real() == Approx(want).epsilon(1e-12));
}

TEST_CASE("lattice q-Bessel frozen values from a high-precision oracle") {
    // derive_values.py: 400-digit summation at x = q^e / (1-q^2)^2.
    CHECK(q_bessel_lattice(0, -20, 0.7, 1e-40).value.real() ==
          Approx(-1.1714398011682761588e-20).epsilon(1e-10));
    CHECK(q_bessel_lattice(2, -30, 0.7, 1e-70).value.real() ==
          Approx(5.3614116431737595717e-53).epsilon(1e-10));
    CHECK(q_bessel_lattice(1, -60, 0.5, 1e-140).value.real() ==
          Approx(-1.6777697032591768461e-122).epsilon(1e-10));
}

TEST_CASE("log2 scale multiplies the result") {
    const double base = q_bessel_lattice(1, -10, 0.7, 1e-30).value.real();
    const double scaled = q_bessel_lattice(1, -10, 0.7, 1e-30, 128, 16384, 10.0).value.real();
    CHECK(scaled == Approx(base * 1024).epsilon(1e-12));
    // Scaled largest term far below the tolerance: exact zero without summation.
    CHECK(q_bessel_abs(0, 3.0, 0.7, 1e-10, 128, 16384, -200).value == cplx(0));
}

TEST_CASE("jackson_integral_unit examples") {
    const double q = 0.6;
    CHECK(jackson_integral_unit([](double) { return 1.0; }, q).value == Approx(1.0).epsilon(1e-14));
    CHECK(jackson_integral_unit([](double x) { return x; }, q).value == Approx(1 / (1 + q * q)).epsilon(1e-14));
    CHECK(jackson_integral_unit([](double) { return 0.0; }, q).value == 0.0);
    for (int s = 2; s <= 6; ++s)
        CHECK(jackson_integral_unit([s](double x) { return std::pow(x, s); }, q).value ==
              Approx((1 - q * q) / (1 - std::pow(q, 2 * s + 2))).epsilon(1e-13));
    CHECK_THROWS_AS(jackson_integral_unit([](double x) { return 1 / (x * x); }, q), DivergenceError);
}

TEST_CASE("jackson_integral_halfline examples") {
    const double q = 0.5;
    CHECK(jackson_integral_halfline([](double) { return 0.0; }, q, -3, 3) == 0.0);
    auto spike = [q](double p) { return std::abs(p - 1.0) < 1e-12 ? 1.0 : 0.0; };
    CHECK(jackson_integral_halfline(spike, q, 0, 0) == Approx(1 - q).epsilon(1e-15));
    // g = p^2 on a window with decaying edges.
    const int lo = 2, hi = 30;
    const double closed = (1 - q) * std::pow(q, 4 * lo) * (1 - std::pow(q, 4 * (hi - lo + 1))) / (1 - std::pow(q, 4));
    CHECK(jackson_integral_halfline([](double p) { return p * p; }, q, lo, hi, 1.0, INFINITY) ==
          Approx(closed).epsilon(1e-13));
    CHECK_THROWS_AS(jackson_integral_halfline([](double) { return 1.0; }, q, -3, 3), WindowError);
}

TEST_CASE("DeformationParameter validation") {
    CHECK_THROWS_AS(DeformationParameter(1.0), DomainError);
    CHECK_THROWS_AS(DeformationParameter(0.0), DomainError);
    CHECK_THROWS_AS(DeformationParameter(0.5, 32), DomainError);
}

TEST_CASE("compensated sum keeps small terms") {
    CompensatedSum s;
    s.add(1.0);
    for (int k = 0; k < 1000; ++k) s.add(1e-17);
    s.add(-1.0);
    CHECK(s.value() == Approx(1e-14).epsilon(1e-10));
}
