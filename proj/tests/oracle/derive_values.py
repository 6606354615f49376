"""Independent high-precision evaluations behind the frozen constants in the
unit tests.  Run: python3 tests/oracle/derive_values.py"""
from mpmath import mp, mpf, mpc, nsum, inf, fac, besselj

mp.dps = 80


def qnum(m, q):
    q = mpf(q)
    return (q**m - q**-m) / (q - 1 / q)


def qfac(n, q):
    r = mpf(1)
    for k in range(1, n + 1):
        r *= qnum(k, q)
    return r


def qbessel(j, x, q, terms=400):
    q = mpf(q)
    s = mpf(0)
    for k in range(terms):
        s += (-1) ** k * (q**-j * x) ** k / (qfac(k, q) * qfac(k + j, q))
    return s


def phi21(a, b, c, qb, x, terms=2000):
    s, t = mpc(0), mpc(1)
    for k in range(terms):
        s += t
        t *= (1 - a * qb**k) * (1 - b * qb**k) / ((1 - c * qb**k) * (1 - qb ** (k + 1))) * x
    return s


def lattice_bessel(j, e, q):
    q = mpf(q)
    return qbessel(j, q**e / (1 - q**2) ** 2, q, terms=1500)


if __name__ == "__main__":
    print("q_bessel(1, 2.5, q=0.6) =", mp.nstr(qbessel(1, mpf("2.5"), "0.6"), 20))
    print("q_bessel(3, 1.7, q=0.8) =", mp.nstr(qbessel(3, mpf("1.7"), "0.8"), 20))
    print("q_bessel(0, 1, q=0.5)   =", mp.nstr(qbessel(0, mpf(1), "0.5"), 20))
    v = phi21(mpc("0.5"), mpc("0.1", "0.2"), mpc("0.3"), mpf("0.49"), mpc("0.4"))
    print("phi21(0.5, 0.1+0.2i, 0.3; 0.49, 0.4) =", mp.nstr(v.real, 20), mp.nstr(v.imag, 20))
    mp.dps = 400
    for (j, e, q) in [(0, -20, "0.7"), (2, -30, "0.7"), (1, -60, "0.5")]:
        print(f"lattice J_{j} at e={e}, q={q} =", mp.nstr(lattice_bessel(j, e, q), 20))
    mp.dps = 40
    print("J0(2) classical series =", mp.nstr(besselj(0, 2), 20))
