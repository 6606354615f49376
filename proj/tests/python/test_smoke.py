import math

import pytest

import qharm


def test_q_numbers():
    q = 0.5
    assert qharm.q_number(3, q) == pytest.approx(q**-2 + 1 + q**2, rel=1e-15)
    assert qharm.q_binomial(4, 2, q) == pytest.approx(
        (1 - q**4) * (1 - q**3) / ((1 - q) * (1 - q**2)), rel=1e-14
    )
    assert qharm.q_binomial(2, 5, q) == 0.0


def test_q_bessel_small_argument():
    # J_0(x) = 1 - x + O(x^2) in the symmetric normalization.
    assert abs(qharm.q_bessel(0, 1e-8, 0.7) - (1 - 1e-8)) < 1e-15


def test_jackson_integral():
    value, tail = qharm.jackson_integral_unit(lambda x: x, 0.6)
    # int_0^1 x d_{q^2}x = 1 / (1 + q^2)
    assert value == pytest.approx(1 / (1 + 0.36), rel=1e-14)
    assert tail >= 0


def test_algebra_relations():
    q = 0.7
    comm = qharm.Element.parse("x xs - xs x", "suq2", q)
    assert comm.distance(qharm.Element.parse("(1 - 0.49) u us", "suq2", q)) < 1e-15
    x = qharm.generator("x", q)
    assert x.star().distance(qharm.generator("xs", q)) == 0.0
    assert x.counit() == 1
    assert (x * x.antipode()).distance(x * qharm.generator("xs", q)) == 0.0


def test_coproduct_and_bigrade():
    q = 0.7
    z = qharm.generator("z", q)
    # Delta(z) = z (x) 1 + delta (x) z
    rows = sorted(z.coproduct())
    assert rows == [((0, 1, 0, 0), (0, 0, 0, 0), 1), ((2, 0, 0, 0), (0, 1, 0, 0), 1)]
    b = z.bigrade()
    assert b.homogeneous and (b.i, b.j) == (1.0, 0.0)
    assert qharm.generator("ds", q).distance(qharm.Element.monomial("eq2", q, (-2, 0, 0, 0))) == 0.0


def test_parse_error():
    with pytest.raises(qharm.ParseError):
        qharm.Element.parse("z +* zs", "eq2", 0.7)
    with pytest.raises(qharm.Error):
        qharm.Element.parse("z", "so3", 0.7)


def test_haar_state():
    q = 0.5
    one, _ = qharm.invariant_integral(qharm.Element.unit("suq2", q))
    assert one == pytest.approx(1.0, abs=1e-14)
    # h(x x*) = 1 / (1 + q^2)
    v, _ = qharm.invariant_integral(qharm.Element.parse("x xs", "suq2", q))
    assert v.real == pytest.approx(1 / (1 + q * q), rel=1e-13)


def test_representation_matrix():
    q = 0.7
    m = qharm.represent(qharm.generator("us", q), 0, 4)
    assert len(m) == 5
    # u* is diagonal with entries of modulus q^n.
    for n in range(5):
        assert abs(m[n][n]) == pytest.approx(q**n, rel=1e-14)


def test_matrix_elements():
    q = 0.7
    assert qharm.su_matrix_element(0.5, -0.5, -0.5, q).distance(qharm.generator("x", q)) < 1e-15
    with pytest.raises(qharm.UnsupportedRegion):
        qharm.su_matrix_element(1, 1, 1, q)
    comult, unit = qharm.su_corep_deviation(2, q)
    assert comult < 1e-10 and unit < 1e-10
    t = qharm.eq_matrix_element(1.3, 0, 0, q, terms=6)
    assert t.counit() == pytest.approx(1.0)
    p = qharm.lattice_momentum(1, q)
    assert abs(qharm.eq_lattice_value(0, 0, 1, 0, q) - qharm.eq_matrix_value(p, 0, 0, 0, q)) < 1e-13


def test_classical_jacobi():
    for th in (0.3, 1.1):
        assert qharm.classical_jacobi(0.5, 0.5, 0.5, th).real == pytest.approx(math.cos(th / 2), abs=1e-10)


def test_normalization_constant():
    q = 0.7
    c = qharm.normalization_constant(q, r=0, mmin=-2, mmax=2)
    assert c == pytest.approx(q * q / (1 + q), rel=1e-8)
    g = qharm.gram_matrix(0, 0, "R", q, mmin=-1, mmax=1)
    assert len(g) == 3
    assert abs(g[0][1]) < 1e-8 * abs(g[0][0])


def test_verify_suite():
    r = qharm.verify("hopf")
    assert r["passed"]
    assert all("measured" in it for it in r["items"])
    assert "all" in qharm.suite_names()
