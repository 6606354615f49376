#pragma once
// Reference implementations for the unit tests.  Written directly from the
// defining series and products in Boost multiprecision, sharing no code with
// the library.

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

#include <complex>
#include <vector>

namespace oracle {

using Real = boost::multiprecision::cpp_bin_float_100;
using Complex = boost::multiprecision::cpp_complex_100;

inline Real qnum(int m, Real q) { return (pow(q, m) - pow(q, -m)) / (q - 1 / q); }

inline Real qfac(int n, Real q) {
    Real r = 1;
    for (int k = 1; k <= n; ++k) r *= qnum(k, q);
    return r;
}

inline std::complex<double> to_c(const Complex& z) {
    return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

// sum_{k<terms} (-1)^k (q^{-j} x)^k / ([k]! [k+j]!)
inline Complex qbessel(int j, Complex x, Real q, int terms = 120) {
    Complex s = 0, y = x * pow(q, -j), pw = 1;
    Real fk = 1, fkj = qfac(j, q);
    for (int k = 0; k < terms; ++k) {
        if (k) {
            fk *= qnum(k, q);
            fkj *= qnum(k + j, q);
            pw *= -y;
        }
        s += pw / (fk * fkj);
    }
    return s;
}

// Classical J-type series sum (-1)^k x^k / (k! (k+j)!)
inline double classical_bessel_series(int j, double x, int terms = 60) {
    Real s = 0, pw = 1, fk = 1, fkj = 1;
    for (int k = 1; k <= j; ++k) fkj *= k;
    for (int k = 0; k < terms; ++k) {
        if (k) {
            fk *= k;
            fkj *= k + j;
            pw *= -Real(x);
        }
        s += pw / (fk * fkj);
    }
    return static_cast<double>(s);
}

inline Complex phi21(Complex a, Complex b, Complex c, Real qb, Complex x, int terms = 400) {
    Complex s = 0, t = 1;
    for (int k = 0; k < terms; ++k) {
        s += t;
        const Real qk = pow(qb, k);
        t *= (Complex(1) - a * qk) * (Complex(1) - b * qk) / ((Complex(1) - c * qk) * (1 - qb * qk)) * x;
    }
    return s;
}

// Gaussian binomial by the Pascal recurrence [n,k] = [n-1,k-1] + qb^k [n-1,k].
inline Real qbinomial(int n, int k, Real qb) {
    if (k < 0 || k > n) return 0;
    std::vector<std::vector<Real>> t(n + 1, std::vector<Real>(n + 1, Real(0)));
    for (int m = 0; m <= n; ++m) {
        t[m][0] = 1;
        for (int r = 1; r <= m; ++r) t[m][r] = t[m - 1][r - 1] + pow(qb, r) * (r <= m - 1 ? t[m - 1][r] : Real(0));
    }
    return t[n][k];
}

}  // namespace oracle
