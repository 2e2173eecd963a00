import numpy as np
import pytest

from qdisc import qspecial, uqsl2, verify
from qdisc.uqsl2 import LaurentPolynomial as LP

Q = 0.5


def test_canonical_form():
    p = LP({2: 1.0, -1: 0.0, 0: 3})
    assert p.coefficients == {0: 3, 2: 1}
    assert p.degrees == (0, 2)
    assert LP().degrees is None
    assert (p - p) == LP()
    with pytest.raises(ValueError):
        LP({0.5: 1})
    with pytest.raises(AttributeError):
        p._coeffs = {}


def test_json_round_trip():
    p = LP({-3: 1 + 2j, 4: -0.5})
    assert LP.from_json(p.to_json()) == p


def test_H_and_K_examples():
    z = LP.monomial(1)
    assert uqsl2.act_H(LP.monomial(0)) == LP()
    assert uqsl2.act_H(z) == 2 * z
    assert uqsl2.act_H(LP.monomial(-3)) == -6 * LP.monomial(-3)
    assert uqsl2.act_K(LP.monomial(0), Q) == LP.monomial(0)
    assert uqsl2.act_K(z, Q) == Q**2 * z
    assert uqsl2.act_K(LP.monomial(-1), Q) == Q**-2 * LP.monomial(-1)


def test_Xplus_examples():
    xz = uqsl2.act_Xplus(LP.monomial(1), 0, Q)
    assert abs(xz[2] + Q**-0.5) < 1e-15 and xz.degrees == (2, 2)
    assert uqsl2.act_Xplus(LP.monomial(0), 0, Q) == LP()
    l = 0.3 + 0.4j
    got = uqsl2.act_Xplus(LP.monomial(0), l, Q)[1]
    assert abs(got - Q**-0.5 * (Q ** (-2 * l) - 1) / (1 / Q - Q)) < 1e-14
    # same constant in the x^l correspondence form
    assert abs(got - Q**-1.5 * (Q ** (-2 * l) - 1) / (Q**-2 - 1)) < 1e-14


def test_Xminus_examples():
    xz = uqsl2.act_Xminus(LP.monomial(1), 0, Q)
    assert abs(xz[0] - Q**0.5) < 1e-15 and xz.degrees == (0, 0)
    assert uqsl2.act_Xminus(LP.monomial(0), 0, Q) == LP()
    l = 0.3 + 0.4j
    got = uqsl2.act_Xminus(LP.monomial(0), l, Q)[-1]
    assert abs(got - Q**0.5 * (1 - Q ** (2 * l)) / (1 / Q - Q)) < 1e-14
    assert abs(got - Q**1.5 * (1 - Q ** (2 * l)) / (1 - Q * Q)) < 1e-14


def test_relations():
    rng = np.random.default_rng(30)
    for _ in range(20):
        l = complex(*rng.uniform(-2, 2, 2))
        d = verify.uqsl2_relation_defects(l, Q)
        assert d["[H,X+]"] < 1e-12 and d["[H,X-]"] < 1e-12
        assert d["KX+"] < 1e-13 and d["KX-"] < 1e-13
        assert d["[X+,X-]"] < 1e-12


def test_commutator_is_l_independent():
    z = LP.monomial(5)
    a = uqsl2.act_Xplus(uqsl2.act_Xminus(z, 0.2, Q), 0.2, Q) - uqsl2.act_Xminus(uqsl2.act_Xplus(z, 0.2, Q), 0.2, Q)
    b = uqsl2.act_Xplus(uqsl2.act_Xminus(z, 1 - 2j, Q), 1 - 2j, Q) - uqsl2.act_Xminus(uqsl2.act_Xplus(z, 1 - 2j, Q), 1 - 2j, Q)
    assert abs(a[5] - b[5]) < 1e-12 * abs(a[5])
    assert abs(a[5] - qspecial.qbracket(10, Q)) < 1e-12 * abs(a[5])


def test_casimir_on_constant():
    for l in (0.2, -1.3 + 0.5j, 2j):
        lam = qspecial.casimir_eigenvalue(l, Q)
        brute = uqsl2.xminus_coeff(1, l, Q) * uqsl2.xplus_coeff(0, l, Q)
        assert abs(brute - lam) < 1e-13 * max(1, abs(lam))
        assert abs(uqsl2.casimir(LP.monomial(0), l, Q)[0] - lam) < 1e-13 * max(1, abs(lam))


def test_casimir_on_monomials():
    rng = np.random.default_rng(31)
    for _ in range(20):
        m = int(rng.integers(-20, 21))
        l = complex(*rng.uniform(-2, 2, 2))
        assert verify.casimir_defect(LP.monomial(m), l, Q) < 1e-12


def test_casimir_on_random_polynomials():
    rng = np.random.default_rng(32)
    for _ in range(50):
        l = complex(*rng.uniform(-2, 2, 2))
        f = verify.random_laurent(rng)
        assert verify.casimir_defect(f, l, Q) < 1e-12
        lam = qspecial.casimir_eigenvalue(l, Q)
        assert abs(lam - Q * qspecial.lambda_eig(l, Q)) < 1e-13 * max(1, abs(lam))


def test_operator_form_matches_closed_form():
    assert verify.check_operator_form(Q, qspecial.DEFAULT_TOL).passed
    assert verify.check_operator_form(0.8, qspecial.DEFAULT_TOL).passed
