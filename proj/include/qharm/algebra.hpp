#pragma once

#include <array>
#include <compare>
#include <map>
#include <string>
#include <vector>

#include "qharm/qkernel.hpp"

namespace qharm {

enum class GroupKind { CompactSU, EuclidE };

// Generator symbols.  DH = delta^{1/2}, DHI = delta^{-1/2}.
enum class Gen { X, XS, U, US, DH, DHI, Z, ZS };

struct GeneratorSet {
    GroupKind kind;
    std::vector<Gen> generators() const;
    bool contains(Gen g) const;
};

const char* gen_name(Gen g);
Gen gen_star(Gen g);
GroupKind kind_of(Gen g);

// CompactSU: e = (a,b,c,d) for x^a u^b (u*)^c (x*)^d with a*d = 0.
// EuclidE:   e = (h,b,c,0) for delta^{h/2} z^b (z*)^c.
struct Monomial {
    std::array<int, 4> e{0, 0, 0, 0};
    auto operator<=>(const Monomial&) const = default;
    bool is_unit() const { return e == std::array<int, 4>{0, 0, 0, 0}; }
};

class AlgebraElement {
public:
    AlgebraElement(GroupKind kind, double q) : kind_(kind), q_(q) {}
    static AlgebraElement unit(GroupKind kind, double q, cplx c = 1.0);
    static AlgebraElement generator(Gen g, double q);
    static AlgebraElement monomial(GroupKind kind, double q, const Monomial& m, cplx c = 1.0);

    GroupKind kind() const { return kind_; }
    double q() const { return q_; }
    const std::map<Monomial, cplx>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    cplx coeff(const Monomial& m) const;

    void add_term(const Monomial& m, cplx c);
    AlgebraElement& operator+=(const AlgebraElement& o);
    AlgebraElement& operator-=(const AlgebraElement& o);
    AlgebraElement& operator*=(cplx s);

    // Largest |coefficient| of (this - o).
    double distance(const AlgebraElement& o) const;

private:
    GroupKind kind_;
    double q_;
    std::map<Monomial, cplx> terms_;
};

AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b);
AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b);
AlgebraElement operator*(cplx s, AlgebraElement a);
AlgebraElement multiply(const AlgebraElement& f, const AlgebraElement& g);
AlgebraElement operator*(const AlgebraElement& f, const AlgebraElement& g);
AlgebraElement power(const AlgebraElement& f, int n);

struct Letter {
    Gen gen;
    int exp = 1;
};

// Rewrites a word into normal order.  Negative powers are allowed only on
// the delta generators; DH^{-k} is read as DHI^{k}.
AlgebraElement normal_order(const std::vector<Letter>& word, GroupKind kind, double q);

// Word of generators whose product is the monomial (normal order).
std::vector<Gen> monomial_word(GroupKind kind, const Monomial& m);

AlgebraElement star(const AlgebraElement& f);

template <int N>
struct Tensor {
    GroupKind kind;
    double q;
    std::map<std::array<Monomial, N>, cplx> terms;

    void add_term(const std::array<Monomial, N>& m, cplx c) {
        if (c == cplx(0)) return;
        auto [it, fresh] = terms.emplace(m, c);
        if (!fresh) {
            it->second += c;
            if (it->second == cplx(0)) terms.erase(it);
        }
    }
    double distance(const Tensor& o) const;
};
using TensorElement = Tensor<2>;

TensorElement tensor(const AlgebraElement& a, const AlgebraElement& b);
TensorElement multiply(const TensorElement& a, const TensorElement& b);

// Hopf structure.  CompactSU: Delta(x) = x(x)x - q u*(x)u, Delta(u) = u(x)x + x*(x)u,
// S(x) = x*, S(u) = -q u, S(u*) = -q^{-1} u*, eps(x) = 1, eps(u) = 0.
// EuclidE: Delta(z) = z(x)1 + delta(x)z, Delta(delta^{1/2}) = delta^{1/2}(x)delta^{1/2},
// S(z) = -delta^{-1} z, S(z*) = -delta z*, eps(delta^{1/2}) = 1, eps(z) = 0.
TensorElement coproduct(const AlgebraElement& f);
cplx counit(const AlgebraElement& f);
AlgebraElement antipode(const AlgebraElement& f);

// Images of a single generator (exposed for tests and the relation audit).
TensorElement coproduct_of(Gen g, double q);
AlgebraElement antipode_of(Gen g, double q);

// Half-integer bigrade stored as twice its value.
struct Bigrade {
    int i2 = 0, j2 = 0;
    bool homogeneous = true;
    double i() const { return i2 / 2.0; }
    double j() const { return j2 / 2.0; }
    bool operator==(const Bigrade&) const = default;
};

Bigrade monomial_bigrade(const Monomial& m); // EuclidE only
// Bigrade from the coaction legs: (phi (x) id) Delta and (id (x) phi) Delta with
// phi(z) = 0, phi(delta^{1/2}) = t^{1/2}.
Bigrade bigrade_of(const AlgebraElement& f);
// Component of f in Phi[i2/2, j2/2].
AlgebraElement bigrade_component(const AlgebraElement& f, int i2, int j2);

// Tau: z -> q z, z* -> q^{-2} z*, delta -> q^{-4} delta.  Beta: z, z* -> p0 z, p0 z*.
// Sigma: the modular twist rho^{-2} (.) rho^2, i.e. q^{-2(i+j)} on bigrade (i,j),
// so that Tr(g f rho^2) = Tr(sigma(f) g rho^2).
enum class AutoName { Tau, Beta, Sigma };
struct AutomorphismSpec {
    AutoName name = AutoName::Tau;
    double p0 = 1.0;
};
AlgebraElement apply_automorphism(const AutomorphismSpec& spec, const AlgebraElement& f);

struct HopfReport {
    double coassociativity = 0;
    double counit_left = 0, counit_right = 0;
    double antipode_left = 0, antipode_right = 0;
    double max_deviation() const;
};
HopfReport hopf_axiom_check(GroupKind kind, double q, const std::vector<AlgebraElement>& sample);

// Text form: "coeff * d^h/2 z^b zs^c + ..." (EuclidE) or
// "coeff * x^a u^b us^c xs^d + ..." (CompactSU); zero exponents omitted.
std::string to_text(const AlgebraElement& f);
std::string to_text(const TensorElement& t);
std::string format_complex(cplx c);

} // namespace qharm
