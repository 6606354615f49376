#include "qharm/plancherel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

namespace qharm {

MomentumLattice::MomentumLattice(int mmin, int mmax, double q) : mmin(mmin), mmax(mmax), q(q) {
    if (mmin > mmax) throw DomainError("momentum lattice: mmin > mmax");
    DeformationParameter dp(q);
}

double MomentumLattice::jackson_weight(int m) const { return (1.0 - q) * p(m) * p(m); }
double MomentumLattice::delta(int m) const { return 1.0 / ((1.0 - q) * p(m)); }

// ------------------------------------------------------------------ columns

LatticeColumns::LatticeColumns(double q, BasisWindow w, double abs_tol)
    : q_(q), w_(w), tol_(abs_tol) {
    DeformationParameter dp(q);
}

const std::vector<cplx>& LatticeColumns::column(int i, int j, int m) {
    const std::array<int, 3> key{i, j, m};
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    std::vector<cplx> v(w_.size(), 0.0);
    const int s = i + j;
    double peak = 0, total = 0;
    int quiet = 0;
    for (int n = w_.lo; n <= w_.hi; ++n) {
        if (!w_.contains(n + s)) continue;
        const cplx t = eq_lattice_value(i, j, m, n, q_, tol_);
        v[n - w_.lo] = t;
        const double mass = std::norm(t) * haar_weight(GroupKind::EuclidE, n, q_);
        total += mass;
        if (mass > peak) {
            peak = mass;
            quiet = 0;
        } else if (mass < 1e-36 * peak) {
            if (++quiet >= 4) break;
        } else {
            quiet = 0;
        }
    }
    // Lower edge: the first column inside the window (rows may exclude a few).
    for (int n = w_.lo; n <= w_.hi; ++n) {
        if (!w_.contains(n + s)) continue;
        const double mass = std::norm(v[n - w_.lo]) * haar_weight(GroupKind::EuclidE, n, q_);
        if (total > 0) edge_ = std::max(edge_, mass / total);
        break;
    }
    return cache_.emplace(key, std::move(v)).first->second;
}

namespace {

// (1-q^2) sum_n weight * products of two columns, per side.
cplx pair_sum(const std::vector<cplx>& f, const std::vector<cplx>& g, int shift, Side side,
              const BasisWindow& w, double q) {
    CompensatedSumC s;
    for (int n = w.lo; n <= w.hi; ++n) {
        const cplx a = f[n - w.lo], b = g[n - w.lo];
        if (a == cplx(0) || b == cplx(0)) continue;
        if (side == Side::L)
            s.add(haar_weight(GroupKind::EuclidE, n, q) * std::conj(a) * b);
        else
            s.add(haar_weight(GroupKind::EuclidE, n + shift, q) * a * std::conj(b));
    }
    return (1.0 - q * q) * s.value();
}

cplx gram_entry(int i, int j, int m, int mp, Side side, LatticeColumns& cols) {
    return pair_sum(cols.column(i, j, m), cols.column(i, j, mp), i + j, side, cols.window(),
                    cols.q());
}

} // namespace

// -------------------------------------------------------------------- Gram

double GramMatrix::hermiticity_defect() const {
    double d = 0;
    for (std::size_t a = 0; a < G.size(); ++a)
        for (std::size_t b = 0; b < G.size(); ++b) d = std::max(d, std::abs(G[a][b] - std::conj(G[b][a])));
    return d;
}

double GramMatrix::offdiag_ratio() const {
    if (zero_by_bigrade) return 0.0;
    double off = 0, dmin = INFINITY;
    for (std::size_t a = 0; a < G.size(); ++a)
        for (std::size_t b = 0; b < G.size(); ++b) {
            if (a == b)
                dmin = std::min(dmin, std::abs(G[a][b]));
            else
                off = std::max(off, std::abs(G[a][b]));
        }
    return off / dmin;
}

GramMatrix gram_matrix(int i, int j, int i2, int j2, Side side, const MomentumLattice& lat,
                       LatticeColumns& cols, double tol) {
    GramMatrix g;
    g.side = side;
    g.i = i, g.j = j, g.i2 = i2, g.j2 = j2;
    g.mmin = lat.mmin, g.mmax = lat.mmax;
    g.q = lat.q;
    g.window = cols.window();
    const int n = lat.size();
    g.G.assign(n, std::vector<cplx>(n, 0.0));
    if (i != i2 || j != j2) {
        g.zero_by_bigrade = true;
        return g;
    }
    for (int a = 0; a < n; ++a)
        for (int b = a; b < n; ++b) {
            const cplx v = gram_entry(i, j, lat.mmin + a, lat.mmin + b, side, cols);
            g.G[a][b] = v;
            g.G[b][a] = std::conj(v);
        }
    if (cols.lower_edge_mass() > tol) {
        const auto& w = cols.window();
        throw WindowError("gram_matrix: lower window edge carries relative mass " +
                              std::to_string(cols.lower_edge_mass()),
                          w.lo - w.size() / 2, w.hi);
    }
    return g;
}

std::vector<GramMatrix> normalization_grams(int r, const MomentumLattice& lat, LatticeColumns& cols) {
    std::vector<GramMatrix> out;
    for (Side side : {Side::R, Side::L})
        for (int i = -r; i <= r; ++i)
            for (int j = -r; j <= r; ++j) out.push_back(gram_matrix(i, j, i, j, side, lat, cols));
    return out;
}

// ----------------------------------------------------------- normalization

namespace {

// Least squares for log a = log c + (s_i i + s_j j) log q.
ExponentFit fit_exponents(const std::vector<std::array<double, 3>>& pts, double q) {
    // pts: (i, j, a)
    double A[3][3] = {}, rhs[3] = {};
    const double lq = std::log(q);
    for (auto [i, j, a] : pts) {
        const double row[3] = {1.0, i * lq, j * lq};
        const double y = std::log(a);
        for (int r = 0; r < 3; ++r) {
            rhs[r] += row[r] * y;
            for (int c = 0; c < 3; ++c) A[r][c] += row[r] * row[c];
        }
    }
    // Gaussian elimination on the 3x3 normal equations.
    for (int c = 0; c < 3; ++c) {
        int piv = c;
        for (int r = c + 1; r < 3; ++r)
            if (std::abs(A[r][c]) > std::abs(A[piv][c])) piv = r;
        std::swap(A[c], A[piv]);
        std::swap(rhs[c], rhs[piv]);
        for (int r = 0; r < 3; ++r) {
            if (r == c || A[c][c] == 0) continue;
            const double f = A[r][c] / A[c][c];
            for (int k = 0; k < 3; ++k) A[r][k] -= f * A[c][k];
            rhs[r] -= f * rhs[c];
        }
    }
    ExponentFit fit;
    fit.log_c = rhs[0] / A[0][0];
    fit.s_i = A[1][1] != 0 ? rhs[1] / A[1][1] : 0;
    fit.s_j = A[2][2] != 0 ? rhs[2] / A[2][2] : 0;
    for (auto [i, j, a] : pts) {
        const double model = std::exp(fit.log_c) * std::pow(q, fit.s_i * i + fit.s_j * j);
        fit.residual = std::max(fit.residual, std::abs(a / model - 1.0));
    }
    return fit;
}

} // namespace

NormalizationReport extract_normalization(const std::vector<GramMatrix>& grams, bool strict) {
    NormalizationReport rep;
    std::map<std::array<int, 2>, double> aR, aL;
    double q = 0;
    for (const auto& g : grams) {
        if (g.zero_by_bigrade) continue;
        q = g.q;
        const MomentumLattice lat(g.mmin, g.mmax, g.q);
        double lo = INFINITY, hi = -INFINITY, sum = 0;
        for (int m = g.mmin; m <= g.mmax; ++m) {
            const double a = g.at(m, m).real() * lat.jackson_weight(m);
            lo = std::min(lo, a);
            hi = std::max(hi, a);
            sum += a;
        }
        const double mean = sum / lat.size();
        rep.entries.push_back({g.i, g.j, g.side, mean, (hi - lo) / std::abs(mean)});
        (g.side == Side::R ? aR : aL)[{g.i, g.j}] = mean;
        rep.p_constancy = std::max(rep.p_constancy, (hi - lo) / std::abs(mean));
    }
    if (rep.entries.empty()) throw DomainError("extract_normalization: no same-index Gram matrices");

    std::vector<std::array<double, 3>> ptsR, ptsL, ptsLR;
    double csum = 0;
    for (auto& [ij, a] : aR) {
        csum += a * std::pow(q, 2 * ij[1]);
        ptsR.push_back({double(ij[0]), double(ij[1]), a});
    }
    if (!aR.empty()) rep.c = csum / aR.size();
    else if (!aL.empty()) {
        for (auto& [ij, a] : aL) csum += a * std::pow(q, -2 * ij[0]);
        rep.c = csum / aL.size();
    }
    for (auto& [ij, a] : aR)
        rep.residual_R = std::max(rep.residual_R, std::abs(a / (rep.c * std::pow(q, -2 * ij[1])) - 1));
    for (auto& [ij, a] : aL) {
        rep.residual_L = std::max(rep.residual_L, std::abs(a / (rep.c * std::pow(q, 2 * ij[0])) - 1));
        ptsL.push_back({double(ij[0]), double(ij[1]), a});
        if (auto it = aR.find(ij); it != aR.end()) {
            ptsLR.push_back({double(ij[0]), double(ij[1]), a / it->second});
            rep.lr_vs_claim = std::max(
                rep.lr_vs_claim, std::abs(a / it->second / std::pow(q, 2 * (ij[0] + ij[1])) - 1));
        }
    }
    // i-independence of a^r q^{2j} at fixed j; j-independence of a^l q^{-2i} at fixed i.
    auto spread = [](const std::map<int, std::vector<double>>& groups) {
        double d = 0;
        for (auto& [k, v] : groups) {
            auto [lo, hi] = std::minmax_element(v.begin(), v.end());
            d = std::max(d, (*hi - *lo) / std::abs(*lo));
        }
        return d;
    };
    std::map<int, std::vector<double>> byj, byi;
    for (auto& [ij, a] : aR) byj[ij[1]].push_back(a);
    for (auto& [ij, a] : aL) byi[ij[0]].push_back(a);
    rep.r_i_dependence = spread(byj);
    rep.l_j_dependence = spread(byi);
    if (!ptsR.empty()) rep.fit_R = fit_exponents(ptsR, q);
    if (!ptsL.empty()) rep.fit_L = fit_exponents(ptsL, q);
    if (!ptsLR.empty()) rep.fit_LR = fit_exponents(ptsLR, q);
    if (strict && !rep.model_ok()) {
        std::ostringstream os;
        os << "normalization model mismatch: residual R " << rep.residual_R << ", L " << rep.residual_L
           << ", p-constancy " << rep.p_constancy << "; fitted exponents R (" << rep.fit_R.s_i << ", "
           << rep.fit_R.s_j << "), L (" << rep.fit_L.s_i << ", " << rep.fit_L.s_j << ")";
        throw InconsistencyError(os.str());
    }
    return rep;
}

// ----------------------------------------------------------------- scaling

ScalingReport scaling_identity_check(int n0, const std::vector<std::pair<int, int>>& labels,
                                     const MomentumLattice& lat, LatticeColumns& cols) {
    ScalingReport rep;
    rep.n0 = n0;
    const double q = lat.q, p0 = std::pow(q, n0);
    for (auto [i, j] : labels) {
        for (int m = lat.mmin; m <= lat.mmax; ++m) {
            const double p = lat.p(m);
            const auto lhs = apply_automorphism({AutoName::Beta, p0}, eq_matrix_element({p, i, j}, q, 12));
            const auto rhs = eq_matrix_element({lattice_momentum(m + n0, q), i, j}, q, 12);
            double scale = 0;
            for (auto& [mon, c] : rhs.terms()) scale = std::max(scale, std::abs(c));
            rep.beta_deviation = std::max(rep.beta_deviation, lhs.distance(rhs) / scale);

            const cplx g = gram_entry(i, j, m, m, Side::R, cols);
            const cplx gs = gram_entry(i, j, m + n0, m + n0, Side::R, cols);
            rep.gram_deviation = std::max(rep.gram_deviation, std::abs(g - p0 * p0 * gs) / std::abs(g));
            // Per-point constants c(p) = G (1-q) p q^{2j}.
            const double c1 = g.real() * (1 - q) * p * std::pow(q, 2 * j);
            const double c2 = gs.real() * (1 - q) * lattice_momentum(m + n0, q) * std::pow(q, 2 * j);
            rep.density_deviation = std::max(rep.density_deviation, std::abs(c1 - p0 * c2) / std::abs(c1));
        }
    }
    return rep;
}

// --------------------------------------------------------------- transforms

cplx TransformTable::at(int m, int i, int j) const {
    auto it = coeff.find({m, i, j});
    return it == coeff.end() ? cplx(0) : it->second;
}

std::vector<BandFunction> band_components(const AlgebraElement& f, BasisWindow w) {
    if (f.kind() != GroupKind::EuclidE) throw DomainError("transforms act on E_q(2) elements");
    std::map<std::array<int, 2>, AlgebraElement> parts;
    for (auto& [mon, c] : f.terms()) {
        const Bigrade b = monomial_bigrade(mon);
        parts.try_emplace({b.i2, b.j2}, GroupKind::EuclidE, f.q()).first->second.add_term(mon, c);
    }
    std::vector<BandFunction> out;
    for (auto& [g, part] : parts) out.push_back({represent(part, w), g[0], g[1]});
    return out;
}

BandFunction lattice_bump(const Monomial& left, const std::map<int, double>& weights, double q,
                          BasisWindow w) {
    RepOperator l = represent(AlgebraElement::monomial(GroupKind::EuclidE, q, left), w);
    RepOperator op(w);
    for (auto& [s, band] : l.bands())
        for (auto& [n, wt] : weights)
            if (w.contains(n) && w.contains(n + s)) op.set(n + s, n, band[n - w.lo] * wt);
    const Bigrade b = monomial_bigrade(left);
    return {op, b.i2, b.j2};
}

namespace {

double edge_mass(const TransformTable& t, bool low) {
    double edge = 0, total = 0;
    for (auto& [k, v] : t.coeff) {
        const double m = std::norm(v) * t.lattice.jackson_weight(k[0]);
        total += m;
        if (k[0] == (low ? t.lattice.mmin : t.lattice.mmax)) edge += m;
    }
    return total > 0 ? edge / total : 0.0;
}

} // namespace

TransformTable forward_transform(const std::vector<BandFunction>& f, const MomentumLattice& lat,
                                 const IndexWindow& idx, LatticeColumns& cols) {
    TransformTable tab{lat, idx, {}, 0};
    std::vector<std::string> missing;
    for (const auto& comp : f) {
        if (comp.a2 % 2 || comp.b2 % 2) {
            missing.push_back("(" + std::to_string(-comp.a2) + "/2," + std::to_string(-comp.b2) + "/2)");
            continue;
        }
        const int i = -comp.a2 / 2, j = -comp.b2 / 2;
        if (!idx.contains(i, j)) {
            missing.push_back("(" + std::to_string(i) + "," + std::to_string(j) + ")");
            continue;
        }
        const auto& w = cols.window();
        auto band = comp.op.bands().find(i + j);
        if (band == comp.op.bands().end()) continue;
        for (int m = lat.mmin; m <= lat.mmax; ++m) {
            const cplx v = pair_sum(band->second, cols.column(i, j, m), i + j, Side::R, w, cols.q());
            if (v != cplx(0)) tab.coeff[{m, i, j}] += v;
        }
    }
    if (!missing.empty()) {
        std::string msg = "forward_transform: index window misses";
        for (auto& s : missing) msg += " " + s;
        throw CoverageError(msg);
    }
    tab.edge_mass = std::max(edge_mass(tab, true), edge_mass(tab, false));
    return tab;
}

TransformTable forward_transform(const AlgebraElement& f, const MomentumLattice& lat,
                                 const IndexWindow& idx, LatticeColumns& cols) {
    return forward_transform(band_components(f, cols.window()), lat, idx, cols);
}

RepOperator inverse_transform_operator(const TransformTable& tab, double c, LatticeColumns& cols) {
    const auto& w = cols.window();
    RepOperator op(w);
    const double q = cols.q();
    for (auto& [k, v] : tab.coeff) {
        const auto [m, i, j] = k;
        const cplx coef = v * tab.lattice.jackson_weight(m) * std::pow(q, 2 * j) / c;
        const auto& col = cols.column(i, j, m);
        for (int n = w.lo; n <= w.hi; ++n)
            if (col[n - w.lo] != cplx(0)) op.add(n + i + j, n, coef * col[n - w.lo]);
    }
    return op;
}

AlgebraElement inverse_transform(const TransformTable& tab, double c, double q, int terms) {
    AlgebraElement out(GroupKind::EuclidE, q);
    for (auto& [k, v] : tab.coeff) {
        const auto [m, i, j] = k;
        const cplx coef = v * tab.lattice.jackson_weight(m) * std::pow(q, 2 * j) / c;
        out += coef * eq_matrix_element({tab.lattice.p(m), i, j}, q, terms);
    }
    return out;
}

RoundtripReport roundtrip(const BandFunction& f, double c, LatticeColumns& cols, int m_center,
                          double edge_tol, int margin) {
    const double q = cols.q();
    RoundtripReport rep;
    rep.a2 = f.a2, rep.b2 = f.b2;
    IndexWindow idx{-8, 8, -8, 8};
    int lo = m_center - 4, hi = m_center + 4;
    TransformTable tab{MomentumLattice(lo, hi, q), idx, {}, 0};
    for (int it = 0; it < 200; ++it) {
        tab = forward_transform(std::vector<BandFunction>{f}, MomentumLattice(lo, hi, q), idx, cols);
        const bool grow_lo = edge_mass(tab, true) > edge_tol, grow_hi = edge_mass(tab, false) > edge_tol;
        if (!grow_lo && !grow_hi) break;
        if (grow_lo) lo -= 4;
        if (grow_hi) hi += 4;
        if (hi - lo > 600) throw ConvergenceFailure("roundtrip: transform does not decay on the lattice");
    }
    rep.lattice = tab.lattice;
    rep.edge_mass = tab.edge_mass;
    const RepOperator back = inverse_transform_operator(tab, c, cols);
    const double scale = f.op.max_abs(margin);
    rep.relative_error = back.max_abs_diff(f.op, margin) / scale;
    return rep;
}

// --------------------------------------------------------------------- Haar

PacketHaarReport haar_packet_check(int a, int b, const std::map<int, cplx>& weights,
                                   LatticeColumns& cols, int K, int margin) {
    const auto& w = cols.window();
    const double q = cols.q();
    PacketHaarReport rep;
    auto packet_gram = [&](int i, int j, Side side) {
        cplx s = 0;
        for (auto& [m, wm] : weights)
            for (auto& [mp, wmp] : weights) {
                // L pairs conj(g) with g, R pairs g with conj(g).
                const cplx coef = side == Side::L ? std::conj(wm) * wmp : wm * std::conj(wmp);
                s += coef * gram_entry(i, j, m, mp, side, cols);
            }
        return s;
    };
    rep.psi_left = packet_gram(a, b, Side::L).real();
    rep.psi_right = packet_gram(a, b, Side::R).real();

    // Left: (psi (x) id) Delta(g* g) = sum_k G_L^{(a,k)} t_kb^* t_kb  (diagonal, column n).
    // Right: (id (x) psi) Delta(g g*) = sum_k G_R^{(k,b)} t_ak t_ak^*  (diagonal, row r).
    // Shells +-k are added until one changes nothing above 1e-12 psi on the
    // compared sites; the tail falls off like q^{2|k|}.

    // Compare where the k-truncation and window edges are immaterial: the
    // packet's own support, read off from |g|^2 rho^2.
    double peak = 0;
    std::vector<double> mass(w.size(), 0.0);
    for (int n = w.lo; n <= w.hi; ++n) {
        cplx g = 0;
        for (auto& [m, wm] : weights) g += wm * cols.column(a, b, m)[n - w.lo];
        mass[n - w.lo] = std::norm(g) * haar_weight(GroupKind::EuclidE, n, q);
        peak = std::isnan(mass[n - w.lo]) ? INFINITY : std::max(peak, mass[n - w.lo]);
    }
    std::vector<char> probe(w.size(), 0);
    for (int n = w.lo + margin; n <= w.hi - margin; ++n) probe[n - w.lo] = mass[n - w.lo] >= 1e-6 * peak;

    std::vector<double> left(w.size(), 0.0), right(w.size(), 0.0);
    auto add_shell = [&](int k) {
        double change = 0;
        auto track = [&](double d) { change = std::isnan(d) ? INFINITY : std::max(change, std::abs(d)); };
        for (auto& [m, wm] : weights)
            for (auto& [mp, wmp] : weights) {
                const cplx gl = std::conj(wm) * wmp * gram_entry(a, k, m, mp, Side::L, cols);
                const cplx gr = wm * std::conj(wmp) * gram_entry(k, b, m, mp, Side::R, cols);
                const auto& cl = cols.column(k, b, m);
                const auto& clp = cols.column(k, b, mp);
                const auto& cr = cols.column(a, k, m);
                const auto& crp = cols.column(a, k, mp);
                for (int n = w.lo; n <= w.hi; ++n) {
                    const double dl = (gl * std::conj(cl[n - w.lo]) * clp[n - w.lo]).real();
                    left[n - w.lo] += dl;
                    if (probe[n - w.lo]) track(dl);
                    const int r = n + a + k;
                    if (w.contains(r)) {
                        const double dr = (gr * cr[n - w.lo] * std::conj(crp[n - w.lo])).real();
                        right[r - w.lo] += dr;
                        if (probe[r - w.lo]) track(dr);
                    }
                }
            }
        return change;
    };
    const double scale = std::max(std::abs(rep.psi_left), std::abs(rep.psi_right));
    add_shell(0);
    int quiet = 0;
    for (int k = 1; k <= K; ++k) {
        const double ch = std::max(add_shell(k), add_shell(-k));
        rep.shells = k;
        quiet = ch < 1e-12 * scale ? quiet + 1 : 0;
        if (quiet >= 2) break;
    }
    // NaN must surface as a failure, so no std::max here.
    auto worse = [](double& acc, double v) {
        if (!(v <= acc)) acc = std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
    };
    int compared = 0;
    for (int n = w.lo + margin; n <= w.hi - margin; ++n) {
        if (!probe[n - w.lo]) continue;
        ++compared;
        worse(rep.left_deviation, std::abs(left[n - w.lo] - rep.psi_left) / rep.psi_left);
        worse(rep.right_deviation, std::abs(right[n - w.lo] - rep.psi_right) / rep.psi_right);
    }
    if (compared == 0 || !(peak > 0))
        rep.left_deviation = rep.right_deviation = std::numeric_limits<double>::infinity();
    return rep;
}

} // namespace qharm
