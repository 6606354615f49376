#include "qharm/qkernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "mp.hpp"

namespace qharm {

DeformationParameter::DeformationParameter(double q_, int bits) : q(q_), precision_bits(bits) {
    if (!(q > 0.0 && q < 1.0)) throw DomainError("q must lie in (0,1)");
    if (precision_bits < 53) throw DomainError("precision_bits must be >= 53");
}

void CompensatedSum::add(double v) {
    double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v))
        comp_ += (sum_ - t) + v;
    else
        comp_ += (v - t) + sum_;
    sum_ = t;
}

double q_number(int m, double q) {
    if (m == 0) return 0.0;
    if (m < 0) return -q_number(-m, q);
    // sum_{k} q^{m-1-2k} avoids the cancellation in (q^m - q^-m)/(q - 1/q)
    double s = 0, t = std::pow(q, 1 - m), q2 = q * q;
    for (int k = 0; k < m; ++k) {
        s += t;
        t *= q2;
    }
    return s;
}

double q_factorial(int n, double q) {
    if (n < 0) throw DomainError("q_factorial: negative argument");
    double r = 1.0;
    for (int m = 2; m <= n; ++m) r *= q_number(m, q);
    return r;
}

cplx q_pochhammer(cplx a, double q_base, int k) {
    if (k < 0) throw DomainError("q_pochhammer: negative length");
    cplx r = 1.0;
    double p = 1.0;
    for (int s = 0; s < k; ++s) {
        r *= (1.0 - a * p);
        p *= q_base;
    }
    return r;
}

double q_binomial(int n, int k, double q_base) {
    if (n < 0) throw DomainError("q_binomial: negative n");
    if (k < 0 || k > n) return 0.0;
    k = std::min(k, n - k);
    double r = 1.0;
    for (int s = 1; s <= k; ++s)
        r *= (1.0 - std::pow(q_base, n - k + s)) / (1.0 - std::pow(q_base, s));
    return r;
}

namespace {

// a = q_base^{-N} for some integer N >= 0?
std::optional<int> terminating_index(cplx a, double q_base) {
    if (std::abs(a.imag()) > 1e-14 * std::abs(a) || a.real() <= 0) return std::nullopt;
    double n = -std::log(a.real()) / std::log(q_base);
    long N = std::lround(n);
    if (N < 0 || std::abs(n - static_cast<double>(N)) > 1e-9) return std::nullopt;
    return static_cast<int>(N);
}

template <class T>
QSeriesValue phi21_kernel(cplx a_, cplx b_, cplx c_, double qb_, cplx x_, int bits,
                          std::optional<int> stop) {
    using C = mp::cx<T>;
    const C a = mp::from<T>(a_), b = mp::from<T>(b_), c = mp::from<T>(c_), x = mp::from<T>(x_);
    const T qb(qb_), one(1), eps = ldexp(one, -bits);
    const auto cstop = terminating_index(c_, qb_);
    C term{one, T(0)}, sum = term;
    T maxabs = one, p = one;
    int k = 0;
    double prev_ratio = 0;
    for (;; ++k) {
        if (stop && k >= *stop) break;
        if (cstop && k >= *cstop) throw PoleError("phi21: (c;q)_k vanishes before termination");
        C num = (C{one, T(0)} + a * (-p)) * (C{one, T(0)} + b * (-p));
        C den = (C{one, T(0)} + c * (-p)) * C{one - p * qb, T(0)};
        term = term * num / den * x;
        sum = sum + term;
        p *= qb;
        T at = mp::abs(term);
        maxabs = std::max(maxabs, at);
        if (!stop) {
            if (at <= eps * mp::abs(sum)) break;
            if (k > 2000) {
                prev_ratio = static_cast<double>(at / maxabs);
                throw DivergenceError("phi21: non-terminating series does not decay (ratio " +
                                      std::to_string(prev_ratio) + ")");
            }
        }
    }
    QSeriesValue out;
    out.value = mp::to_double(sum);
    T av = mp::abs(sum);
    out.cancellation_estimate = av > 0 ? std::max(1.0, static_cast<double>(maxabs / av))
                                       : std::numeric_limits<double>::infinity();
    out.terms_used = k + 1;
    out.bits_used = static_cast<int>(mp::level_for(bits));
    return out;
}

// lattice_e != kNoLattice: x = q^e / (1-q^2)^2 formed at working precision,
// the argument is then exactly on the lattice of the given q.
constexpr int kNoLattice = std::numeric_limits<int>::min();

template <class T>
QSeriesValue bessel_kernel_from(int j, const mp::cx<T>& x, const T& q, int bits, double abs_tol,
                               double log2_scale = 0) {
    using C = mp::cx<T>;
    const T one(1), eps = ldexp(one, -bits);
    const T qinv = one / q, qmq = q - qinv;
    auto qnum = [&](int m) { return (pow(q, m) - pow(qinv, m)) / qmq; };
    T fact = one;
    for (int m = 2; m <= j; ++m) fact *= qnum(m);
    const C y = x * pow(qinv, j);
    C term{one / fact, T(0)}, sum = term;
    T maxabs = mp::abs(term), qk = q, qkj = pow(q, j + 1);
    int k = 0;
    for (;; ++k) {
        // [k+1] and [k+1+j] via running powers
        T n1 = (qk - one / qk) / qmq, n2 = (qkj - one / qkj) / qmq;
        qk *= q;
        qkj *= q;
        T ratio = mp::abs(y) / (n1 * n2);
        term = term * y * (T(-1) / (n1 * n2));
        sum = sum + term;
        T at = mp::abs(term);
        maxabs = std::max(maxabs, at);
        if (ratio < T(0.5)) {
            if (at <= eps * mp::abs(sum) || at == 0) break;
            if (abs_tol > 0 && at <= T(abs_tol) / 4) break;
        }
        if (k > 100000) throw DivergenceError("q_bessel: series did not terminate");
    }
    QSeriesValue out;
    out.value = mp::to_double(log2_scale == 0 ? sum : sum * T(exp2(T(log2_scale))));
    T av = mp::abs(sum);
    out.cancellation_estimate = av > 0 ? std::max(1.0, static_cast<double>(maxabs / av))
                                       : std::numeric_limits<double>::infinity();
    if (av == 0 && maxabs == 0) out.cancellation_estimate = 1.0;
    out.terms_used = k + 2;
    out.bits_used = static_cast<int>(mp::level_for(bits));
    return out;
}

template <class T>
QSeriesValue bessel_kernel(int j, cplx x_, double q_, int bits, double abs_tol,
                           int lattice_e = kNoLattice, double log2_scale = 0) {
    using C = mp::cx<T>;
    const T q(q_), one(1);
    if (lattice_e != kNoLattice) {
        const T d = one - q * q;
        const C xl{pow(q, lattice_e) / (d * d), T(0)};
        return bessel_kernel_from<T>(j, xl, q, bits, abs_tol, log2_scale);
    }
    return bessel_kernel_from<T>(j, mp::from<T>(x_), q, bits, abs_tol, log2_scale);
}

} // namespace

QSeriesValue phi21(cplx a, cplx b, cplx c, double q_base, cplx x, int precision_bits) {
    if (!(q_base > 0 && q_base < 1)) throw DomainError("phi21: q_base must lie in (0,1)");
    auto na = terminating_index(a, q_base), nb = terminating_index(b, q_base);
    std::optional<int> stop;
    if (na) stop = na;
    if (nb && (!stop || *nb < *stop)) stop = nb;
    if (x == cplx(0)) stop = 0;
    return mp::dispatch(precision_bits, [&](auto tag) {
        using T = decltype(tag);
        return phi21_kernel<T>(a, b, c, q_base, x, precision_bits, stop);
    });
}

double q_bessel_log2_max_term(int j, double abs_x, double q) {
    double lt = 0;
    for (int m = 2; m <= j; ++m) lt -= std::log(q_number(m, q));
    if (abs_x == 0) return lt / std::log(2.0);
    const double ly = std::log(abs_x) - j * std::log(q);
    double best = lt;
    for (int k = 0; k < 100000; ++k) {
        double step = ly - std::log(q_number(k + 1, q)) - std::log(q_number(k + 1 + j, q));
        lt += step;
        best = std::max(best, lt);
        if (step < -1.0) break;
    }
    return best / std::log(2.0);
}

QSeriesValue q_bessel(int j, cplx x, const DeformationParameter& dp) {
    if (j < 0) throw DomainError("q_bessel: negative order");
    const int P = dp.precision_bits;
    const double need = q_bessel_log2_max_term(j, std::abs(x), dp.q);
    QSeriesValue last;
    for (int level : {P, 2 * P, 4 * P}) {
        // skip levels that cannot leave 64 good bits (except the last)
        if (level < 4 * P && level < need + 64) continue;
        last = mp::dispatch(level, [&](auto tag) {
            return bessel_kernel<decltype(tag)>(j, x, dp.q, level, 0.0);
        });
        double lost = std::log2(last.cancellation_estimate);
        if (level - lost >= 64) return last;
        if (level == 4 * P && lost <= level - 20) return last;
    }
    throw PrecisionError("q_bessel: cancellation 2^" +
                         std::to_string(std::log2(last.cancellation_estimate)) +
                         " exceeds working precision " + std::to_string(4 * P) + " bits");
}

namespace {

// Shared driver: value * 2^log2_scale to absolute error abs_tol.
QSeriesValue bessel_scaled(int j, cplx x, int lattice_e, double q, double abs_tol, int min_bits,
                           int max_bits, double log2_scale) {
    if (j < 0) throw DomainError("q_bessel: negative order");
    const double ax = lattice_e == kNoLattice ? std::abs(x)
                                              : std::pow(q, lattice_e) / ((1 - q * q) * (1 - q * q));
    const double top = q_bessel_log2_max_term(j, ax, q) + log2_scale;
    // The sum never exceeds a few times its largest term.
    if (top < std::log2(abs_tol) - 8) {
        QSeriesValue z;
        z.value = 0;
        z.terms_used = 0;
        return z;
    }
    const double tol = std::ldexp(abs_tol, -static_cast<int>(std::floor(log2_scale)));
    const double need = top - std::log2(abs_tol) + 16;
    const int bits = std::max(min_bits, static_cast<int>(std::ceil(need)));
    if (bits > max_bits)
        throw PrecisionError("q_bessel: needs " + std::to_string(bits) + " bits");
    return mp::dispatch(bits, [&](auto tag) {
        return bessel_kernel<decltype(tag)>(j, x, q, bits, tol, lattice_e, log2_scale);
    });
}

} // namespace

QSeriesValue q_bessel_abs(int j, cplx x, double q, double abs_tol, int min_bits, int max_bits,
                          double log2_scale) {
    return bessel_scaled(j, x, kNoLattice, q, abs_tol, min_bits, max_bits, log2_scale);
}

QSeriesValue q_bessel_lattice(int j, int e, double q, double abs_tol, int min_bits, int max_bits,
                              double log2_scale) {
    return bessel_scaled(j, 0.0, e, q, abs_tol, min_bits, max_bits, log2_scale);
}

JacksonResult jackson_integral_unit(const std::function<double(double)>& f, double q,
                                    double tol) {
    const double q2 = q * q;
    CompensatedSum s;
    double w = 1.0 - q2, xi = 1.0, prev = std::numeric_limits<double>::infinity();
    for (int n = 0; n < 100000; ++n) {
        double t = w * f(xi);
        if (!std::isfinite(t)) throw DivergenceError("jackson_integral_unit: integrand is not finite");
        s.add(t);
        double scale = std::max(1.0, std::abs(s.value()));
        if (n >= 4 && std::abs(t) <= tol * scale && std::abs(prev) <= tol * scale) {
            return {s.value(), std::abs(t) * q2 / (1.0 - q2), n + 1};
        }
        prev = t;
        w *= q2;
        xi *= q2;
        if (xi == 0.0) {
            if (std::abs(t) > tol * scale) break;
            return {s.value(), 0.0, n + 1};
        }
    }
    throw DivergenceError("jackson_integral_unit: tail does not decay");
}

double jackson_integral_halfline(const std::function<double(double)>& g, double q, int mmin,
                                 int mmax, double scale, double edge_tol) {
    if (mmin > mmax) throw DomainError("jackson_integral_halfline: empty window");
    auto weighted = [&](int m) {
        double p = scale * std::pow(q, m);
        return p * p * g(p);
    };
    CompensatedSum s;
    double mass = 0;
    for (int m = mmin; m <= mmax; ++m) {
        double t = weighted(m);
        s.add(t);
        mass += std::abs(t);
    }
    double lo = std::abs(weighted(mmin - 1)), hi = std::abs(weighted(mmax + 1));
    if (lo > edge_tol * mass || hi > edge_tol * mass) {
        int grow = std::max(1, (mmax - mmin + 1) / 2);
        throw WindowError("jackson_integral_halfline: mass outside window [" +
                              std::to_string(mmin) + "," + std::to_string(mmax) + "]",
                          lo > edge_tol * mass ? mmin - grow : mmin,
                          hi > edge_tol * mass ? mmax + grow : mmax);
    }
    return (1.0 - q) * s.value();
}

} // namespace qharm
