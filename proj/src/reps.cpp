#include "qharm/reps.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace qharm {

BasisWindow::BasisWindow(int lo_, int hi_, Space s) : lo(lo_), hi(hi_), space(s) {
    if (lo > hi) throw DomainError("BasisWindow: lo > hi");
    if (space == Space::HalfLine && lo < 0) throw DomainError("BasisWindow: half-line needs lo >= 0");
}

Space space_of(GroupKind k) { return k == GroupKind::CompactSU ? Space::HalfLine : Space::FullLine; }

// ------------------------------------------------------------ RepOperator

RepOperator RepOperator::identity(BasisWindow w) {
    return diagonal(w, [](int) { return cplx(1); });
}

RepOperator RepOperator::diagonal(BasisWindow w, const std::function<cplx(int)>& f) {
    return shift(w, 0, f);
}

RepOperator RepOperator::shift(BasisWindow w, int s, const std::function<cplx(int)>& f) {
    RepOperator r(w);
    for (int n = w.lo; n <= w.hi; ++n)
        if (w.contains(n + s)) r.set(n + s, n, f(n));
    return r;
}

cplx RepOperator::entry(int row, int col) const {
    if (!w_.contains(row) || !w_.contains(col)) return 0;
    auto it = band_.find(row - col);
    return it == band_.end() ? cplx(0) : it->second[col - w_.lo];
}

void RepOperator::set(int row, int col, cplx v) {
    if (!w_.contains(row) || !w_.contains(col)) return;
    auto& b = band_[row - col];
    if (b.empty()) b.assign(w_.size(), cplx(0));
    b[col - w_.lo] = v;
}

void RepOperator::add(int row, int col, cplx v) {
    if (!w_.contains(row) || !w_.contains(col)) return;
    auto& b = band_[row - col];
    if (b.empty()) b.assign(w_.size(), cplx(0));
    b[col - w_.lo] += v;
}

int RepOperator::bandwidth() const {
    int r = 0;
    for (auto& kv : band_) r = std::max(r, std::abs(kv.first));
    return r;
}

RepOperator RepOperator::adjoint() const {
    RepOperator r(w_);
    for (auto& [s, v] : band_)
        for (int n = w_.lo; n <= w_.hi; ++n)
            if (w_.contains(n + s)) r.set(n, n + s, std::conj(v[n - w_.lo]));
    return r;
}

RepOperator& RepOperator::operator+=(const RepOperator& o) {
    for (auto& [s, v] : o.band_)
        for (int n = w_.lo; n <= w_.hi; ++n)
            if (w_.contains(n + s) && o.w_.contains(n)) add(n + s, n, v[n - o.w_.lo]);
    return *this;
}

RepOperator& RepOperator::operator*=(cplx s) {
    for (auto& kv : band_)
        for (auto& x : kv.second) x *= s;
    return *this;
}

double RepOperator::max_abs_diff(const RepOperator& o, int margin) const {
    std::set<int> shifts;
    for (auto& kv : band_) shifts.insert(kv.first);
    for (auto& kv : o.band_) shifts.insert(kv.first);
    double m = 0;
    for (int s : shifts)
        for (int n = w_.lo + margin; n <= w_.hi - margin; ++n) {
            int r = n + s;
            if (r < w_.lo + margin || r > w_.hi - margin) continue;
            m = std::max(m, std::abs(entry(r, n) - o.entry(r, n)));
        }
    return m;
}

double RepOperator::max_abs(int margin) const {
    double m = 0;
    for (auto& [s, v] : band_)
        for (int n = w_.lo + margin; n <= w_.hi - margin; ++n) {
            int r = n + s;
            if (r < w_.lo + margin || r > w_.hi - margin) continue;
            m = std::max(m, std::abs(v[n - w_.lo]));
        }
    return m;
}

RepOperator operator+(RepOperator a, const RepOperator& b) { return a += b; }
RepOperator operator-(RepOperator a, const RepOperator& b) {
    RepOperator nb = b;
    nb *= -1.0;
    return a += nb;
}
RepOperator operator*(cplx s, RepOperator a) { return a *= s; }

RepOperator operator*(const RepOperator& a, const RepOperator& b) {
    const BasisWindow& w = a.window();
    RepOperator r(w);
    for (auto& [sb, vb] : b.bands())
        for (auto& [sa, va] : a.bands())
            for (int n = w.lo; n <= w.hi; ++n) {
                int m = n + sb;
                if (!w.contains(m) || !w.contains(m + sa)) continue;
                cplx x = vb[n - w.lo] * va[m - w.lo];
                if (x != cplx(0)) r.add(m + sa, n, x);
            }
    return r;
}

// ------------------------------------------------------------- represent

BasisImage generator_action(Gen g, int n, double q) {
    switch (g) {
    case Gen::X: return {std::sqrt(std::max(0.0, 1.0 - std::pow(q, 2 * n))), n - 1};
    case Gen::XS: return {std::sqrt(1.0 - std::pow(q, 2 * n + 2)), n + 1};
    case Gen::U: case Gen::US: return {std::pow(q, n), n};
    case Gen::DH: return {1.0, n - 1};
    case Gen::DHI: return {1.0, n + 1};
    case Gen::Z: return {std::pow(q, -n), n - 1};
    case Gen::ZS: return {std::pow(q, -n - 1), n + 1};
    }
    return {0, n};
}

namespace {

// Applies a word (rightmost letter first) to |n>.
BasisImage apply_word(const std::vector<Gen>& w, int n, double q) {
    double c = 1.0;
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
        BasisImage b = generator_action(*it, n, q);
        c *= b.coef;
        n = b.n;
        if (c == 0.0) break;
    }
    return {c, n};
}

} // namespace

RepOperator represent(const AlgebraElement& f, BasisWindow w) {
    if (w.space != space_of(f.kind())) throw DomainError("represent: window space mismatch");
    RepOperator r(w);
    for (auto& [m, c] : f.terms()) {
        auto word = monomial_word(f.kind(), m);
        if (static_cast<int>(word.size()) >= w.size() && w.size() < 3)
            throw DomainError("represent: window too small for the element's bandwidth");
        for (int n = w.lo; n <= w.hi; ++n) {
            BasisImage b = apply_word(word, n, f.q());
            if (b.coef != 0.0) r.add(b.n, n, c * b.coef);
        }
    }
    return r;
}

RepOperator generator_matrix(Gen g, BasisWindow w, double q) {
    RepOperator r(w);
    for (int n = w.lo; n <= w.hi; ++n) {
        BasisImage b = generator_action(g, n, q);
        if (b.coef != 0.0) r.set(b.n, n, b.coef);
    }
    return r;
}

double haar_weight(GroupKind k, int n, double q) {
    return k == GroupKind::CompactSU ? std::pow(q, 2 * n) : std::pow(q, -2 * n - 2);
}

// --------------------------------------------------------------- audit

std::vector<RelationAudit> audit_relations(GroupKind kind, double q, BasisWindow w) {
    // Words are multiplied as operators directly so the audit never uses
    // the rewriting rules it is meant to justify.
    auto word_op = [&](std::vector<Gen> gens) {
        RepOperator r = RepOperator::identity(w);
        for (Gen g : gens) r = r * generator_matrix(g, w, q);
        return r;
    };
    struct Item {
        std::string text;
        std::vector<Gen> a, b;
        bool sphere;
        std::optional<int> printed;
        int line = 0;
    };
    std::vector<Item> items;
    if (kind == GroupKind::EuclidE) {
        items = {
            {"z zs = q^s zs z", {Gen::Z, Gen::ZS}, {Gen::ZS, Gen::Z}, false, -2, 1},
            {"z d = q^s d z", {Gen::Z, Gen::DH, Gen::DH}, {Gen::DH, Gen::DH, Gen::Z}, false, 2, 1},
            {"zs d = q^s d zs", {Gen::ZS, Gen::DH, Gen::DH}, {Gen::DH, Gen::DH, Gen::ZS}, false, 2, 1},
            {"z d^1/2 = q^s d^1/2 z", {Gen::Z, Gen::DH}, {Gen::DH, Gen::Z}, false, std::nullopt},
            {"zs d^1/2 = q^s d^1/2 zs", {Gen::ZS, Gen::DH}, {Gen::DH, Gen::ZS}, false, std::nullopt},
            {"d^1/2 d^-1/2 = q^s 1", {Gen::DH, Gen::DHI}, {}, false, std::nullopt},
        };
    } else {
        items = {
            {"x u = q^s u x", {Gen::X, Gen::U}, {Gen::U, Gen::X}, false, -1, 1},
            {"xs u = q^s u xs", {Gen::XS, Gen::U}, {Gen::U, Gen::XS}, false, 1, 1},
            {"x us = q^s us x", {Gen::X, Gen::US}, {Gen::US, Gen::X}, false, std::nullopt},
            {"us xs = q^s xs us", {Gen::US, Gen::XS}, {Gen::XS, Gen::US}, false, std::nullopt},
            {"u us = q^s us u", {Gen::U, Gen::US}, {Gen::US, Gen::U}, false, 0, 1},
            {"x xs + q^s u us = 1", {Gen::X, Gen::XS}, {Gen::U, Gen::US}, true, 0, 2},
            {"xs x + q^s u us = 1", {Gen::XS, Gen::X}, {Gen::U, Gen::US}, true, 2, 2},
        };
    }
    const int margin = 4;
    std::vector<RelationAudit> out;
    for (auto& it : items) {
        RepOperator A = word_op(it.a), B = word_op(it.b);
        RepOperator I = RepOperator::identity(w);
        double scale = std::max(1e-300, std::max(A.max_abs(margin), B.max_abs(margin)));
        auto residual = [&](int s) {
            RepOperator lhs = it.sphere ? A + std::pow(q, s) * B : A;
            RepOperator rhs = it.sphere ? I : std::pow(q, s) * B;
            return lhs.max_abs_diff(rhs, margin) / scale;
        };
        RelationAudit a;
        a.relation = it.text;
        a.printed = it.printed;
        a.printed_line = it.line;
        double best = 1e300;
        for (int s = -4; s <= 4; ++s) {
            double r = residual(s);
            if (r < best) {
                best = r;
                if (r <= 1e-12) a.exponent = s;
            }
        }
        a.residual = best;
        if (a.printed) a.printed_ok = a.exponent && *a.exponent == *a.printed;
        out.push_back(a);
    }
    for (auto& a : out)
        if (!a.exponent)
            throw InconsistencyError("audit_relations: no exponent in [-4,4] fits '" + a.relation + "'");
    return out;
}

// ------------------------------------------------------------- integrals

namespace {

// Torus-invariant monomials: xi^k on SU_q(2), (z z*)^k on E_q(2).  Every
// other monomial is moved by one of the two phase rotations and integrates
// to zero, even when pi happens to give it a diagonal.
bool invariant_monomial(GroupKind k, const Monomial& m) {
    const auto& e = m.e;
    if (k == GroupKind::CompactSU) return e[0] == 0 && e[3] == 0 && e[1] == e[2];
    return e[0] == 0 && e[1] == e[2];
}

// Diagonal <n|pi(f_00)|n> evaluated exactly from the words.
struct DiagEval {
    std::vector<std::pair<std::vector<Gen>, cplx>> words;
    double q;
    explicit DiagEval(const AlgebraElement& f) : q(f.q()) {
        for (auto& [m, c] : f.terms())
            if (invariant_monomial(f.kind(), m)) words.emplace_back(monomial_word(f.kind(), m), c);
    }
    cplx operator()(int n) const {
        cplx s = 0;
        for (auto& [w, c] : words) {
            BasisImage b = apply_word(w, n, q);
            s += c * b.coef;
        }
        return s;
    }
};

} // namespace

IntegralResult invariant_integral(const AlgebraElement& f, double tol) {
    const double q = f.q();
    const GroupKind k = f.kind();
    DiagEval diag(f);
    IntegralResult res;
    if (diag.words.empty()) {
        res.window = k == GroupKind::CompactSU ? BasisWindow(0, 0, Space::HalfLine)
                                               : BasisWindow(0, 0, Space::FullLine);
        return res;
    }
    auto term = [&](int n) { return (1.0 - q * q) * haar_weight(k, n, q) * diag(n); };
    for (int N = 32; N <= (1 << 15); N *= 2) {
        CompensatedSumC s;
        BasisWindow w = k == GroupKind::CompactSU ? BasisWindow(0, 2 * N, Space::HalfLine)
                                                  : BasisWindow(-N, N, Space::FullLine);
        for (int n = w.lo; n <= w.hi; ++n) s.add(term(n));
        double tail = std::abs(term(w.hi)) + std::abs(term(w.hi - 1));
        if (k == GroupKind::EuclidE) tail += std::abs(term(w.lo)) + std::abs(term(w.lo + 1));
        tail /= (1.0 - q * q);
        res = {s.value(), tail, w};
        if (std::isfinite(tail) && tail < tol) return res;
    }
    throw DivergenceError("invariant_integral: tail " + std::to_string(res.tail_bound) +
                          " does not fall below tolerance");
}

IntegralResult invariant_integral(const RepOperator& a, GroupKind kind, double q) {
    const BasisWindow& w = a.window();
    IntegralResult res;
    res.window = w;
    auto it = a.bands().find(0);
    if (it == a.bands().end()) return res;
    CompensatedSumC s;
    auto t = [&](int n) { return (1.0 - q * q) * haar_weight(kind, n, q) * it->second[n - w.lo]; };
    for (int n = w.lo; n <= w.hi; ++n) s.add(t(n));
    double tail = std::abs(t(w.hi)) + (w.size() > 1 ? std::abs(t(w.hi - 1)) : 0.0);
    if (kind == GroupKind::EuclidE)
        tail += std::abs(t(w.lo)) + (w.size() > 1 ? std::abs(t(w.lo + 1)) : 0.0);
    res.value = s.value();
    res.tail_bound = tail;
    return res;
}

double subset_measure(const IndexSet& J, GroupKind kind, double q) {
    const double q2 = q * q;
    CompensatedSum s;
    std::set<int> pts(J.finite.begin(), J.finite.end());
    if (kind == GroupKind::CompactSU) {
        if (J.ray_to) throw DomainError("subset_measure: SU_q(2) index set must be bounded below by 0");
        for (int n : pts) {
            if (n < 0) throw DomainError("subset_measure: negative index on the half-line");
            if (J.ray_from && n >= *J.ray_from) continue;
            s.add((1 - q2) * std::pow(q2, n));
        }
        if (J.ray_from) {
            if (*J.ray_from < 0) throw DomainError("subset_measure: negative index on the half-line");
            s.add(std::pow(q2, *J.ray_from));
        }
    } else {
        if (J.ray_from) throw DivergenceError("subset_measure: E_q(2) sum over [a, inf) diverges");
        for (int n : pts) {
            if (J.ray_to && n <= *J.ray_to) continue;
            s.add((1 - q2) * std::pow(q, -2 * n));
        }
        if (J.ray_to) s.add(std::pow(q, -2 * *J.ray_to));
    }
    return s.value();
}

cplx scalar_product(const AlgebraElement& f, const AlgebraElement& g, Side side, double tol) {
    AlgebraElement p = side == Side::L ? star(f) * g : f * star(g);
    return invariant_integral(p, tol).value;
}

cplx scalar_product(const RepOperator& f, const RepOperator& g, Side side, GroupKind kind,
                    double q) {
    // L: sum_n w_n sum_m conj(F_mn) G_mn ;  R: sum_n w_n sum_m F_nm conj(G_nm)
    const BasisWindow& w = f.window();
    CompensatedSumC s;
    for (auto& [sh, fv] : f.bands()) {
        auto it = g.bands().find(sh);
        if (it == g.bands().end()) continue;
        const auto& gv = it->second;
        for (int m = w.lo; m <= w.hi; ++m) {
            if (!w.contains(m + sh)) continue;
            cplx a = fv[m - w.lo], b = gv[m - g.window().lo];
            if (side == Side::L)
                s.add(haar_weight(kind, m, q) * std::conj(a) * b);
            else
                s.add(haar_weight(kind, m + sh, q) * a * std::conj(b));
        }
    }
    return (1.0 - q * q) * s.value();
}

HaarReport haar_invariance_check(const AlgebraElement& f, double tol) {
    HaarReport rep;
    rep.psi = invariant_integral(f, tol).value;
    TensorElement d = coproduct(f);
    std::map<Monomial, cplx> cache;
    auto psi_mono = [&](const Monomial& m) {
        auto it = cache.find(m);
        if (it == cache.end())
            it = cache.emplace(m, invariant_integral(AlgebraElement::monomial(f.kind(), f.q(), m), tol).value)
                     .first;
        return it->second;
    };
    AlgebraElement left(f.kind(), f.q()), right(f.kind(), f.q());
    for (auto& [mm, c] : d.terms) {
        left.add_term(mm[1], c * psi_mono(mm[0]));
        right.add_term(mm[0], c * psi_mono(mm[1]));
    }
    auto target = AlgebraElement::unit(f.kind(), f.q(), rep.psi);
    rep.left_deviation = left.distance(target);
    rep.right_deviation = right.distance(target);
    return rep;
}

// ------------------------------------------------------------ twisted trace

TwistedTraceRow twisted_trace_check(const Monomial& mon, double q) {
    TwistedTraceRow row;
    row.mon = mon;
    row.bigrade = monomial_bigrade(mon);
    // rho^2 = q^{-2n-2}: the bumps vanish below 1e-30 well inside the window.
    const int lo = -static_cast<int>(std::ceil(40.0 / -std::log10(q) / 2)) - 8;
    const int hi = static_cast<int>(std::ceil(std::log(400.0) / -std::log(q) / 2)) + 8;
    const BasisWindow w(lo, hi, Space::FullLine);
    auto rho2 = [&](int n) { return haar_weight(GroupKind::EuclidE, n, q); };
    auto b1 = [](double x) { return x * std::exp(-x); };
    auto b2 = [](double x) { return x * x * std::exp(-x); };
    const RepOperator M = represent(AlgebraElement::monomial(GroupKind::EuclidE, q, mon), w);
    const RepOperator F = M * RepOperator::diagonal(w, [&](int n) { return cplx(b1(rho2(n))); });
    const RepOperator Fp = M * RepOperator::diagonal(w, [&](int n) { return cplx(b2(rho2(n))); });
    const RepOperator Fp_tau = M * RepOperator::diagonal(w, [&](int n) { return cplx(b2(rho2(n) / q)); });
    const RepOperator Fh = F.adjoint();
    row.lhs = invariant_integral(Fh * Fp, GroupKind::EuclidE, q).value;
    const cplx r_plain = invariant_integral(Fp * Fh, GroupKind::EuclidE, q).value;
    const cplx r_tau = invariant_integral(Fp_tau * Fh, GroupKind::EuclidE, q).value;

    auto factor = [&](AutoName n) {
        return apply_automorphism({n, 1.0}, AlgebraElement::monomial(GroupKind::EuclidE, q, mon))
            .coeff(mon)
            .real();
    };
    row.tau_factor = factor(AutoName::Tau);
    row.sigma_factor = factor(AutoName::Sigma);
    row.claimed_factor = std::pow(q, -(row.bigrade.i2 + row.bigrade.j2));
    const double den = std::abs(row.lhs);
    row.tau_defect = std::abs(row.lhs - row.tau_factor * r_tau) / den;
    row.sigma_defect = std::abs(row.lhs - row.sigma_factor * r_plain) / den;
    row.claimed_defect = std::abs(row.lhs - row.claimed_factor * r_plain) / den;
    return row;
}

} // namespace qharm
