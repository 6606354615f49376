#include "qharm/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace qharm {

std::vector<Gen> GeneratorSet::generators() const {
    if (kind == GroupKind::CompactSU) return {Gen::X, Gen::XS, Gen::U, Gen::US};
    return {Gen::DH, Gen::DHI, Gen::Z, Gen::ZS};
}

bool GeneratorSet::contains(Gen g) const { return kind_of(g) == kind; }

GroupKind kind_of(Gen g) {
    switch (g) {
    case Gen::X: case Gen::XS: case Gen::U: case Gen::US: return GroupKind::CompactSU;
    default: return GroupKind::EuclidE;
    }
}

const char* gen_name(Gen g) {
    switch (g) {
    case Gen::X: return "x";
    case Gen::XS: return "xs";
    case Gen::U: return "u";
    case Gen::US: return "us";
    case Gen::DH: return "d^1/2";
    case Gen::DHI: return "d^-1/2";
    case Gen::Z: return "z";
    case Gen::ZS: return "zs";
    }
    return "?";
}

Gen gen_star(Gen g) {
    switch (g) {
    case Gen::X: return Gen::XS;
    case Gen::XS: return Gen::X;
    case Gen::U: return Gen::US;
    case Gen::US: return Gen::U;
    case Gen::DH: return Gen::DHI;
    case Gen::DHI: return Gen::DH;
    case Gen::Z: return Gen::ZS;
    case Gen::ZS: return Gen::Z;
    }
    return g;
}

// ---------------------------------------------------------------- elements

AlgebraElement AlgebraElement::unit(GroupKind kind, double q, cplx c) {
    AlgebraElement r(kind, q);
    r.add_term(Monomial{}, c);
    return r;
}

AlgebraElement AlgebraElement::monomial(GroupKind kind, double q, const Monomial& m, cplx c) {
    AlgebraElement r(kind, q);
    r.add_term(m, c);
    return r;
}

AlgebraElement AlgebraElement::generator(Gen g, double q) {
    Monomial m;
    switch (g) {
    case Gen::X: m.e = {1, 0, 0, 0}; break;
    case Gen::U: m.e = {0, 1, 0, 0}; break;
    case Gen::US: m.e = {0, 0, 1, 0}; break;
    case Gen::XS: m.e = {0, 0, 0, 1}; break;
    case Gen::DH: m.e = {1, 0, 0, 0}; break;
    case Gen::DHI: m.e = {-1, 0, 0, 0}; break;
    case Gen::Z: m.e = {0, 1, 0, 0}; break;
    case Gen::ZS: m.e = {0, 0, 1, 0}; break;
    }
    return monomial(kind_of(g), q, m);
}

cplx AlgebraElement::coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? cplx(0) : it->second;
}

void AlgebraElement::add_term(const Monomial& m, cplx c) {
    if (c == cplx(0)) return;
    auto [it, fresh] = terms_.emplace(m, c);
    if (!fresh) {
        it->second += c;
        if (it->second == cplx(0)) terms_.erase(it);
    }
}

static void check_same(const AlgebraElement& a, const AlgebraElement& b) {
    if (a.kind() != b.kind() || a.q() != b.q())
        throw DomainError("algebra elements over different generator sets or q");
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& o) {
    check_same(*this, o);
    for (auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& o) {
    check_same(*this, o);
    for (auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

AlgebraElement& AlgebraElement::operator*=(cplx s) {
    if (s == cplx(0)) {
        terms_.clear();
        return *this;
    }
    for (auto& kv : terms_) kv.second *= s;
    return *this;
}

double AlgebraElement::distance(const AlgebraElement& o) const {
    AlgebraElement d = *this;
    d -= o;
    double m = 0;
    for (auto& kv : d.terms_) m = std::max(m, std::abs(kv.second));
    return m;
}

AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
AlgebraElement operator*(cplx s, AlgebraElement a) { return a *= s; }

// ------------------------------------------------------------ normal order

namespace {

struct Piece {
    double c;
    Monomial m;
};

// Normal-ordered monomial times a single generator on the right.
void right_mul(GroupKind kind, double q, const Monomial& m, Gen g, std::vector<Piece>& out) {
    auto [a, b, c, d] = m.e;
    if (kind == GroupKind::CompactSU) {
        switch (g) {
        case Gen::U: out.push_back({std::pow(q, -d), {{a, b + 1, c, d}}}); return;
        case Gen::US: out.push_back({std::pow(q, -d), {{a, b, c + 1, d}}}); return;
        case Gen::XS:
            if (a > 0) { // x w x* = q^{|w|} w (1 - q^2 u u*)
                double f = std::pow(q, b + c);
                out.push_back({f, {{a - 1, b, c, 0}}});
                out.push_back({-f * q * q, {{a - 1, b + 1, c + 1, 0}}});
            } else {
                out.push_back({1.0, {{0, b, c, d + 1}}});
            }
            return;
        case Gen::X:
            if (d > 0) { // x*x = 1 - u u*
                out.push_back({1.0, {{0, b, c, d - 1}}});
                out.push_back({-std::pow(q, -2 * (d - 1)), {{0, b + 1, c + 1, d - 1}}});
            } else {
                out.push_back({std::pow(q, -(b + c)), {{a + 1, b, c, 0}}});
            }
            return;
        default: break;
        }
    } else {
        int h = a;
        switch (g) {
        case Gen::Z: out.push_back({std::pow(q, 2 * c), {{h, b + 1, c, 0}}}); return;
        case Gen::ZS: out.push_back({1.0, {{h, b, c + 1, 0}}}); return;
        case Gen::DH: out.push_back({std::pow(q, b + c), {{h + 1, b, c, 0}}}); return;
        case Gen::DHI: out.push_back({std::pow(q, -(b + c)), {{h - 1, b, c, 0}}}); return;
        default: break;
        }
    }
    throw DomainError(std::string("generator ") + gen_name(g) + " not in this generator set");
}

AlgebraElement times_gen(const AlgebraElement& f, Gen g) {
    AlgebraElement r(f.kind(), f.q());
    std::vector<Piece> buf;
    for (auto& [m, c] : f.terms()) {
        buf.clear();
        right_mul(f.kind(), f.q(), m, g, buf);
        for (auto& p : buf) r.add_term(p.m, c * p.c);
    }
    return r;
}

} // namespace

std::vector<Gen> monomial_word(GroupKind kind, const Monomial& m) {
    std::vector<Gen> w;
    auto rep = [&](Gen g, int n) {
        for (int i = 0; i < n; ++i) w.push_back(g);
    };
    if (kind == GroupKind::CompactSU) {
        rep(Gen::X, m.e[0]);
        rep(Gen::U, m.e[1]);
        rep(Gen::US, m.e[2]);
        rep(Gen::XS, m.e[3]);
    } else {
        if (m.e[0] >= 0)
            rep(Gen::DH, m.e[0]);
        else
            rep(Gen::DHI, -m.e[0]);
        rep(Gen::Z, m.e[1]);
        rep(Gen::ZS, m.e[2]);
    }
    return w;
}

AlgebraElement multiply(const AlgebraElement& f, const AlgebraElement& g) {
    check_same(f, g);
    AlgebraElement r(f.kind(), f.q());
    for (auto& [m2, c2] : g.terms()) {
        AlgebraElement part = f;
        for (Gen x : monomial_word(g.kind(), m2)) part = times_gen(part, x);
        part *= c2;
        r += part;
    }
    return r;
}

AlgebraElement operator*(const AlgebraElement& f, const AlgebraElement& g) { return multiply(f, g); }

AlgebraElement power(const AlgebraElement& f, int n) {
    if (n < 0) throw DomainError("power: negative exponent");
    AlgebraElement r = AlgebraElement::unit(f.kind(), f.q());
    for (int i = 0; i < n; ++i) r = r * f;
    return r;
}

AlgebraElement normal_order(const std::vector<Letter>& word, GroupKind kind, double q) {
    AlgebraElement r = AlgebraElement::unit(kind, q);
    for (std::size_t pos = 0; pos < word.size(); ++pos) {
        Gen g = word[pos].gen;
        int n = word[pos].exp;
        if (kind_of(g) != kind)
            throw ParseError(std::string("unknown generator '") + gen_name(g) + "'", pos);
        if (n < 0) {
            if (g != Gen::DH && g != Gen::DHI)
                throw ParseError(std::string("negative power on non-invertible generator '") +
                                     gen_name(g) + "'",
                                 pos);
            g = gen_star(g);
            n = -n;
        }
        for (int k = 0; k < n; ++k) r = times_gen(r, g);
    }
    return r;
}

AlgebraElement star(const AlgebraElement& f) {
    AlgebraElement r(f.kind(), f.q());
    for (auto& [m, c] : f.terms()) {
        auto w = monomial_word(f.kind(), m);
        AlgebraElement part = AlgebraElement::unit(f.kind(), f.q(), std::conj(c));
        for (auto it = w.rbegin(); it != w.rend(); ++it) part = times_gen(part, gen_star(*it));
        r += part;
    }
    return r;
}

// ------------------------------------------------------------------ tensors

template <int N>
double Tensor<N>::distance(const Tensor& o) const {
    Tensor d = *this;
    for (auto& [m, c] : o.terms) d.add_term(m, -c);
    double r = 0;
    for (auto& kv : d.terms) r = std::max(r, std::abs(kv.second));
    return r;
}
template struct Tensor<2>;
template struct Tensor<3>;

TensorElement tensor(const AlgebraElement& a, const AlgebraElement& b) {
    check_same(a, b);
    TensorElement t{a.kind(), a.q(), {}};
    for (auto& [ma, ca] : a.terms())
        for (auto& [mb, cb] : b.terms()) t.add_term({ma, mb}, ca * cb);
    return t;
}

namespace {

AlgebraElement mono_product(GroupKind kind, double q, const Monomial& a, const Monomial& b) {
    return AlgebraElement::monomial(kind, q, a) * AlgebraElement::monomial(kind, q, b);
}

} // namespace

TensorElement multiply(const TensorElement& a, const TensorElement& b) {
    TensorElement t{a.kind, a.q, {}};
    std::map<std::pair<Monomial, Monomial>, AlgebraElement> cache;
    auto prod = [&](const Monomial& x, const Monomial& y) -> const AlgebraElement& {
        auto key = std::make_pair(x, y);
        auto it = cache.find(key);
        if (it == cache.end()) it = cache.emplace(key, mono_product(a.kind, a.q, x, y)).first;
        return it->second;
    };
    for (auto& [ma, ca] : a.terms)
        for (auto& [mb, cb] : b.terms) {
            const AlgebraElement& l = prod(ma[0], mb[0]);
            const AlgebraElement& r = prod(ma[1], mb[1]);
            for (auto& [ml, cl] : l.terms())
                for (auto& [mr, cr] : r.terms()) t.add_term({ml, mr}, ca * cb * cl * cr);
        }
    return t;
}

// -------------------------------------------------------------------- Hopf

TensorElement coproduct_of(Gen g, double q) {
    auto G = [&](Gen x) { return AlgebraElement::generator(x, q); };
    GroupKind k = kind_of(g);
    auto one = AlgebraElement::unit(k, q);
    TensorElement t{k, q, {}};
    auto acc = [&](const TensorElement& s, cplx c) {
        for (auto& [m, v] : s.terms) t.add_term(m, c * v);
    };
    switch (g) {
    case Gen::X: acc(tensor(G(Gen::X), G(Gen::X)), 1); acc(tensor(G(Gen::US), G(Gen::U)), -q); break;
    case Gen::XS: acc(tensor(G(Gen::XS), G(Gen::XS)), 1); acc(tensor(G(Gen::U), G(Gen::US)), -q); break;
    case Gen::U: acc(tensor(G(Gen::U), G(Gen::X)), 1); acc(tensor(G(Gen::XS), G(Gen::U)), 1); break;
    case Gen::US: acc(tensor(G(Gen::US), G(Gen::XS)), 1); acc(tensor(G(Gen::X), G(Gen::US)), 1); break;
    case Gen::DH: acc(tensor(G(Gen::DH), G(Gen::DH)), 1); break;
    case Gen::DHI: acc(tensor(G(Gen::DHI), G(Gen::DHI)), 1); break;
    case Gen::Z:
        acc(tensor(G(Gen::Z), one), 1);
        acc(tensor(G(Gen::DH) * G(Gen::DH), G(Gen::Z)), 1);
        break;
    case Gen::ZS:
        acc(tensor(G(Gen::ZS), one), 1);
        acc(tensor(G(Gen::DHI) * G(Gen::DHI), G(Gen::ZS)), 1);
        break;
    }
    return t;
}

AlgebraElement antipode_of(Gen g, double q) {
    auto G = [&](Gen x) { return AlgebraElement::generator(x, q); };
    switch (g) {
    case Gen::X: return G(Gen::XS);
    case Gen::XS: return G(Gen::X);
    case Gen::U: return cplx(-q) * G(Gen::U);
    case Gen::US: return cplx(-1.0 / q) * G(Gen::US);
    case Gen::DH: return G(Gen::DHI);
    case Gen::DHI: return G(Gen::DH);
    case Gen::Z: return cplx(-1) * (G(Gen::DHI) * G(Gen::DHI) * G(Gen::Z));
    case Gen::ZS: return cplx(-1) * (G(Gen::DH) * G(Gen::DH) * G(Gen::ZS));
    }
    return G(g);
}

static cplx counit_of(Gen g) {
    switch (g) {
    case Gen::X: case Gen::XS: case Gen::DH: case Gen::DHI: return 1.0;
    default: return 0.0;
    }
}

TensorElement coproduct(const AlgebraElement& f) {
    TensorElement t{f.kind(), f.q(), {}};
    for (auto& [m, c] : f.terms()) {
        TensorElement part = tensor(AlgebraElement::unit(f.kind(), f.q(), c),
                                    AlgebraElement::unit(f.kind(), f.q()));
        for (Gen g : monomial_word(f.kind(), m)) part = multiply(part, coproduct_of(g, f.q()));
        for (auto& [mm, v] : part.terms) t.add_term(mm, v);
    }
    return t;
}

cplx counit(const AlgebraElement& f) {
    cplx s = 0;
    for (auto& [m, c] : f.terms()) {
        cplx v = c;
        for (Gen g : monomial_word(f.kind(), m)) v *= counit_of(g);
        s += v;
    }
    return s;
}

AlgebraElement antipode(const AlgebraElement& f) {
    AlgebraElement r(f.kind(), f.q());
    for (auto& [m, c] : f.terms()) {
        auto w = monomial_word(f.kind(), m);
        AlgebraElement part = AlgebraElement::unit(f.kind(), f.q(), c);
        for (auto it = w.rbegin(); it != w.rend(); ++it) part = part * antipode_of(*it, f.q());
        r += part;
    }
    return r;
}

// ------------------------------------------------------------------ grading

Bigrade monomial_bigrade(const Monomial& m) {
    return {m.e[0] + 2 * m.e[1] - 2 * m.e[2], m.e[0], true};
}

Bigrade bigrade_of(const AlgebraElement& f) {
    if (f.kind() != GroupKind::EuclidE) throw DomainError("bigrade_of: EuclidE only");
    if (f.is_zero()) return {0, 0, true};
    // phi kills every monomial containing z or z*; phi(delta^{h/2}) = t^{h/2}
    auto pure_delta = [](const Monomial& m) { return m.e[1] == 0 && m.e[2] == 0; };
    TensorElement d = coproduct(f);
    std::map<int, AlgebraElement> left, right;
    for (auto& [mm, c] : d.terms) {
        if (pure_delta(mm[0]))
            left.try_emplace(mm[0].e[0], f.kind(), f.q()).first->second.add_term(mm[1], c);
        if (pure_delta(mm[1]))
            right.try_emplace(mm[1].e[0], f.kind(), f.q()).first->second.add_term(mm[0], c);
    }
    std::erase_if(left, [](auto& kv) { return kv.second.is_zero(); });
    std::erase_if(right, [](auto& kv) { return kv.second.is_zero(); });
    if (left.size() == 1 && right.size() == 1)
        return {left.begin()->first, right.begin()->first, true};
    return {0, 0, false};
}

AlgebraElement bigrade_component(const AlgebraElement& f, int i2, int j2) {
    AlgebraElement r(f.kind(), f.q());
    for (auto& [m, c] : f.terms()) {
        Bigrade b = monomial_bigrade(m);
        if (b.i2 == i2 && b.j2 == j2) r.add_term(m, c);
    }
    return r;
}

AlgebraElement apply_automorphism(const AutomorphismSpec& spec, const AlgebraElement& f) {
    if (f.kind() != GroupKind::EuclidE) throw DomainError("automorphisms act on EuclidE only");
    const double q = f.q();
    AlgebraElement r(f.kind(), q);
    for (auto& [m, c] : f.terms()) {
        auto [h, b, cc, unused] = m.e;
        (void)unused;
        double s = 1;
        switch (spec.name) {
        case AutoName::Tau: s = std::pow(q, b - 2 * cc - 2 * h); break;
        case AutoName::Beta: s = std::pow(spec.p0, b + cc); break;
        // rho^{-2} m rho^2: delta does not commute with rho^2 (rho^2 delta = q^4 delta rho^2).
        case AutoName::Sigma: s = std::pow(q, -2 * (h + b - cc)); break;
        }
        r.add_term(m, c * s);
    }
    return r;
}

// ---------------------------------------------------------- axiom checking

double HopfReport::max_deviation() const {
    return std::max({coassociativity, counit_left, counit_right, antipode_left, antipode_right});
}

HopfReport hopf_axiom_check(GroupKind kind, double q, const std::vector<AlgebraElement>& sample) {
    HopfReport rep;
    std::map<Monomial, TensorElement> dcache;
    auto delta_mono = [&](const Monomial& m) -> const TensorElement& {
        auto it = dcache.find(m);
        if (it == dcache.end())
            it = dcache.emplace(m, coproduct(AlgebraElement::monomial(kind, q, m))).first;
        return it->second;
    };
    for (const auto& f : sample) {
        TensorElement d = coproduct(f);
        Tensor<3> lhs{kind, q, {}}, rhs{kind, q, {}};
        AlgebraElement cl(kind, q), cr(kind, q), sl(kind, q), sr(kind, q);
        for (auto& [mm, c] : d.terms) {
            for (auto& [a, ca] : delta_mono(mm[0]).terms) lhs.add_term({a[0], a[1], mm[1]}, c * ca);
            for (auto& [a, ca] : delta_mono(mm[1]).terms) rhs.add_term({mm[0], a[0], a[1]}, c * ca);
            auto A = AlgebraElement::monomial(kind, q, mm[0]);
            auto B = AlgebraElement::monomial(kind, q, mm[1]);
            cl += (c * counit(A)) * B;
            cr += (c * counit(B)) * A;
            sl += c * (antipode(A) * B);
            sr += c * (A * antipode(B));
        }
        auto e1 = AlgebraElement::unit(kind, q, counit(f));
        rep.coassociativity = std::max(rep.coassociativity, lhs.distance(rhs));
        rep.counit_left = std::max(rep.counit_left, cl.distance(f));
        rep.counit_right = std::max(rep.counit_right, cr.distance(f));
        rep.antipode_left = std::max(rep.antipode_left, sl.distance(e1));
        rep.antipode_right = std::max(rep.antipode_right, sr.distance(e1));
    }
    return rep;
}

// ---------------------------------------------------------------- printing

std::string format_complex(cplx c) {
    char buf[96];
    if (c.imag() == 0.0) {
        std::snprintf(buf, sizeof buf, "%.17g", c.real());
    } else {
        std::snprintf(buf, sizeof buf, "(%.17g%+.17gi)", c.real(), c.imag());
    }
    return buf;
}

static std::string mono_text(GroupKind kind, const Monomial& m) {
    std::ostringstream os;
    bool first = true;
    auto put = [&](const char* name, int e) {
        if (e == 0) return;
        if (!first) os << ' ';
        first = false;
        os << name;
        if (e != 1) os << '^' << e;
    };
    if (kind == GroupKind::CompactSU) {
        put("x", m.e[0]);
        put("u", m.e[1]);
        put("us", m.e[2]);
        put("xs", m.e[3]);
    } else {
        if (m.e[0] % 2 == 0) {
            put("d", m.e[0] / 2);
        } else {
            os << "d^" << m.e[0] << "/2";
            first = false;
        }
        put("z", m.e[1]);
        put("zs", m.e[2]);
    }
    return os.str();
}

std::string to_text(const AlgebraElement& f) {
    if (f.is_zero()) return "0";
    std::string s;
    for (auto& [m, c] : f.terms()) {
        if (!s.empty()) s += " + ";
        s += format_complex(c);
        if (!m.is_unit()) s += " * " + mono_text(f.kind(), m);
    }
    return s;
}

std::string to_text(const TensorElement& t) {
    if (t.terms.empty()) return "0";
    std::string s;
    for (auto& [mm, c] : t.terms) {
        if (!s.empty()) s += " + ";
        s += format_complex(c) + " * [" + (mm[0].is_unit() ? "1" : mono_text(t.kind, mm[0])) +
             "] (x) [" + (mm[1].is_unit() ? "1" : mono_text(t.kind, mm[1])) + "]";
    }
    return s;
}

} // namespace qharm
