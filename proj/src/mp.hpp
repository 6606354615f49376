#pragma once
// Fixed-precision MPFR types selected at run time.  Static precision keeps
// every evaluation independent of process-wide defaults.

#include <boost/multiprecision/mpfr.hpp>

#include <complex>
#include <stdexcept>
#include <type_traits>

namespace qharm::mp {

namespace bmp = boost::multiprecision;

constexpr unsigned digits10_for_bits(unsigned bits) { return (bits * 30103u) / 100000u + 1u; }

template <unsigned Bits>
using real = bmp::number<bmp::mpfr_float_backend<digits10_for_bits(Bits)>, bmp::et_off>;

inline constexpr unsigned kLevels[] = {128, 256, 512, 1024, 2048, 4096, 8192, 16384};

inline unsigned level_for(int bits) {
    for (unsigned l : kLevels)
        if (static_cast<int>(l) >= bits) return l;
    return 0;
}

// Calls f(real<B>{}) with the smallest level B >= bits.
template <class F>
decltype(auto) dispatch(int bits, F&& f) {
    switch (level_for(bits)) {
    case 128: return f(real<128>{});
    case 256: return f(real<256>{});
    case 512: return f(real<512>{});
    case 1024: return f(real<1024>{});
    case 2048: return f(real<2048>{});
    case 4096: return f(real<4096>{});
    case 8192: return f(real<8192>{});
    case 16384: return f(real<16384>{});
    default: throw std::out_of_range("precision above 16384 bits");
    }
}

template <class T>
struct cx {
    T re, im;
};

template <class T>
cx<T> operator+(const cx<T>& a, const cx<T>& b) { return {a.re + b.re, a.im + b.im}; }
template <class T>
cx<T> operator*(const cx<T>& a, const cx<T>& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
template <class T>
cx<T> operator*(const cx<T>& a, const T& s) { return {a.re * s, a.im * s}; }
template <class T>
cx<T> operator/(const cx<T>& a, const cx<T>& b) {
    T d = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}
template <class T>
T abs(const cx<T>& a) { return sqrt(a.re * a.re + a.im * a.im); }
template <class T>
cx<T> from(std::complex<double> z) { return {T(z.real()), T(z.imag())}; }
template <class T>
std::complex<double> to_double(const cx<T>& a) {
    return {static_cast<double>(a.re), static_cast<double>(a.im)};
}

} // namespace qharm::mp
