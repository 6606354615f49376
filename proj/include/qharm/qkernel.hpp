#pragma once

#include <complex>
#include <functional>

#include "qharm/errors.hpp"

namespace qharm {

using cplx = std::complex<double>;

struct DeformationParameter {
    double q;
    int precision_bits;

    explicit DeformationParameter(double q, int precision_bits = 128);
};

struct QSeriesValue {
    cplx value{};
    double cancellation_estimate = 1.0; // largest |term| / |value|
    int terms_used = 1;
    int bits_used = 0;
};

double q_number(int m, double q);
double q_factorial(int n, double q);
cplx q_pochhammer(cplx a, double q_base, int k);
// Gaussian binomial; zero outside 0 <= k <= n.
double q_binomial(int n, int k, double q_base);

QSeriesValue phi21(cplx a, cplx b, cplx c, double q_base, cplx x, int precision_bits = 128);

// J_j(x) = sum_k (-1)^k (q^{-j} x)^k / ([k]! [k+j]!), symmetric q-numbers.
// Tries precision P, 2P, 4P; throws PrecisionError when even 4P leaves
// fewer than 20 good bits.
QSeriesValue q_bessel(int j, cplx x, const DeformationParameter& dp);

// Variant used on lattices: returns 2^log2_scale J_j(x) to absolute error
// abs_tol, with the working precision picked from an a-priori estimate of
// the largest term.  The scale lets callers fold in prefactors that would
// overflow a double; when even the scaled largest term is far below abs_tol
// the result is 0 without summation.
QSeriesValue q_bessel_abs(int j, cplx x, double q, double abs_tol, int min_bits = 128,
                          int max_bits = 16384, double log2_scale = 0);

// Same at x = q^e / (1-q^2)^2 with x formed at working precision.  On this
// lattice the value cancels far below the largest term, so rounding x to a
// double first would move it off the lattice.
QSeriesValue q_bessel_lattice(int j, int e, double q, double abs_tol, int min_bits = 128,
                              int max_bits = 16384, double log2_scale = 0);
// log2 of the largest term of the q-Bessel series (double estimate).
double q_bessel_log2_max_term(int j, double abs_x, double q);

struct JacksonResult {
    double value = 0;
    double tail_bound = 0;
    int terms = 0;
};

// (1-q^2) sum_{n>=0} q^{2n} f(q^{2n})
JacksonResult jackson_integral_unit(const std::function<double(double)>& f, double q,
                                    double tol = 1e-16);

// (1-q) sum_{m=mmin}^{mmax} p_m^2 g(p_m),  p_m = scale * q^m.
// Throws WindowError when g evaluated one step outside the window carries
// more than edge_tol of the window's mass.
double jackson_integral_halfline(const std::function<double(double)>& g, double q, int mmin,
                                 int mmax, double scale = 1.0, double edge_tol = 1e-12);

// Neumaier compensated sum helper.
class CompensatedSum {
public:
    void add(double v);
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0;
    double comp_ = 0;
};

class CompensatedSumC {
public:
    void add(cplx v) { re_.add(v.real()); im_.add(v.imag()); }
    cplx value() const { return {re_.value(), im_.value()}; }

private:
    CompensatedSum re_, im_;
};

} // namespace qharm
