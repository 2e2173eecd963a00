"""Invariant suites behind ``qdisc verify``.

Every check returns a :class:`Check` record with the measured defect and the
tolerance it was held to.  Random draws use fixed seeds so reports are
reproducible.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Callable

import numpy as np

from . import eigen, lattice, qspecial, transform, uqsl2
from .lattice import Lattice, LatticeFunction
from .qspecial import DEFAULT_TOL, SeriesTolerance

__all__ = ["Check", "SUITES", "run_suite", "random_l", "green_defect_from_rows"]

SEED = 20241015


@dataclass
class Check:
    name: str
    defect: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return bool(np.isfinite(self.defect) and self.defect <= self.tolerance)

    def as_dict(self) -> dict:
        d = asdict(self)
        d["passed"] = self.passed
        return d


def random_l(rng: np.random.Generator, q: float, n: int, re_offset=(0.05, 1.5),
             min_singular_distance: float = 0.05) -> list[complex]:
    """Draw ``l`` with ``|Re l + 1/2|`` in ``re_offset`` and ``|Im l| < pi/h``.

    Points closer than ``min_singular_distance`` to ``{n/2 + i k pi/h}`` are redrawn.
    """
    period = math.pi / (-2.0 * math.log(q))
    out = []
    while len(out) < n:
        re = -0.5 + rng.choice([-1, 1]) * rng.uniform(*re_offset)
        l = complex(re, rng.uniform(-period, period))
        if qspecial.SpectralParameter(l, q).singular_distance() >= min_singular_distance:
            out.append(l)
    return out


def _rel(a, b) -> float:
    return abs(a - b) / max(abs(b), 1e-300)


# qseries


def check_qbinomial(q: float, tol: SeriesTolerance, n: int = 100) -> Check:
    rng = np.random.default_rng(SEED)
    worst = 0.0
    for _ in range(n):
        a = complex(*rng.uniform(-1, 1, 2))
        t = rng.uniform(0, 0.9) * np.exp(1j * rng.uniform(0, 2 * np.pi))
        series = qspecial.phi_1_0(a, q, t, tol)
        prod = qspecial.qpochhammer_infinite(a * t, q, tol) / qspecial.qpochhammer_infinite(t, q, tol)
        mass = sum(abs(x) for x in qspecial.phi_2_1_terms(a, 0, 0, q, t, 4000))
        worst = max(worst, abs(series - prod) / mass)
    return Check("q-binomial theorem (error / series l1 mass)", worst, 10 * tol.abs_tol)


def check_qgamma_functional(q: float, tol: SeriesTolerance, n: int = 50) -> Check:
    rng = np.random.default_rng(SEED + 1)
    qsq = q * q
    worst = 0.0
    for _ in range(n):
        z = complex(rng.uniform(0.2, 4), rng.uniform(-2, 2))
        lhs = qspecial.qgamma(z + 1, qsq, tol)
        rhs = (1 - qspecial.qpow(qsq, z)) / (1 - qsq) * qspecial.qgamma(z, qsq, tol)
        worst = max(worst, _rel(lhs, rhs))
    return Check("Gamma_{q^2}(z+1) = (1-q^2z)/(1-q^2) Gamma_{q^2}(z)", worst, 1e-12)


def check_cfunc_dual(q: float, tol: SeriesTolerance, n: int = 100) -> Check:
    rng = np.random.default_rng(SEED + 2)
    worst = 0.0
    for _ in range(n):
        l = complex(rng.uniform(-3, 3), rng.uniform(-3, 3))
        try:
            prod, gamma = qspecial.cfunc_forms(l, q, tol)
        except qspecial.SingularParameter:
            continue
        if gamma is not None:
            worst = max(worst, abs(prod - gamma) / max(1.0, abs(prod)))
    return Check("c-function product form = Gamma form", worst, 1e-11)


def check_phi32_reproducible(q: float, tol: SeriesTolerance) -> Check:
    l = complex(-0.3, 0.7)
    x = q**-6
    a, b = qspecial.phi_3_2_terminating(x, l, q), qspecial.phi_3_2_terminating(x, l, q)
    return Check("terminating 3Phi2 is bit-reproducible", 0.0 if a == b else 1.0, 0.0)


def check_lambda_symmetry(q: float, tol: SeriesTolerance, n: int = 100) -> Check:
    rng = np.random.default_rng(SEED + 3)
    worst = 0.0
    for _ in range(n):
        l = complex(rng.uniform(-3, 3), rng.uniform(-3, 3))
        lam = qspecial.lambda_eig(l, q)
        worst = max(worst, abs(lam - qspecial.lambda_eig(-1 - l, q)) / max(1.0, abs(lam)))
    return Check("lambda(l) = lambda(-1-l)", worst, 1e-13)


# lattice


def check_weight_gap(q: float, tol: SeriesTolerance) -> Check:
    lat = Lattice(q, 60)
    x, w = lat.points, lat.weights
    gap = float(np.max(np.abs(w[1:] - (x[1:] - x[:-1]))))
    formula = float(np.max(np.abs(w - (1 - q * q) * q ** (-2.0 * np.arange(61))) / w))
    return Check("w_j = x_j - x_{j-1} exactly, w_j = (1-q^2) q^-2j", max(gap, formula / 1e3), 1e-15)


def check_boundary_natural(q: float, tol: SeriesTolerance) -> Check:
    rng = np.random.default_rng(SEED + 4)
    lat = Lattice(q, 12)
    v = rng.normal(size=13) + 1j * rng.normal(size=13)
    base = lattice.apply_radial_laplacian(LatticeFunction(lat, v)).values[0]
    v2 = v.copy()
    v2[2:] = rng.normal(size=11)
    moved = lattice.apply_radial_laplacian(LatticeFunction(lat, v2)).values[0]
    return Check("(Box f)(x_0) depends only on f(x_0), f(x_1)", abs(base - moved), 0.0)


def _interior_function(rng, lat: Lattice, lo: int, hi: int, real=False) -> LatticeFunction:
    v = np.zeros(lat.J + 1, dtype=complex)
    v[lo:hi + 1] = rng.normal(size=hi - lo + 1)
    if not real:
        v[lo:hi + 1] += 1j * rng.normal(size=hi - lo + 1)
    return LatticeFunction(lat, v)


def check_self_adjoint(q: float, tol: SeriesTolerance, n: int = 20) -> Check:
    rng = np.random.default_rng(SEED + 5)
    J = 30
    lat = Lattice(q, J)
    worst = 0.0
    for _ in range(n):
        f = _interior_function(rng, lat, 1, J - 5)
        g = _interior_function(rng, lat, 1, J - 5)
        bf = lattice.apply_radial_laplacian(f).extend(J)
        bg = lattice.apply_radial_laplacian(g).extend(J)
        a, b = lattice.l2_inner(bf, g), lattice.l2_inner(f, bg)
        scale = lattice.l2_norm(bf) * lattice.l2_norm(g) + lattice.l2_norm(f) * lattice.l2_norm(bg)
        worst = max(worst, abs(a - b) / scale)
    return Check("(Box f, g) = (f, Box g) on interior support", worst, 1e-10)


def rayleigh_quotients(q: float, J: int, n: int, seed: int = SEED + 6) -> np.ndarray:
    rng = np.random.default_rng(seed)
    lat = Lattice(q, J)
    out = []
    for _ in range(n):
        hi = int(rng.integers(2, J - 5))
        lo = int(rng.integers(1, hi))
        f = _interior_function(rng, lat, lo, hi, real=True)
        bf = lattice.apply_radial_laplacian(f).extend(J)
        out.append((lattice.l2_inner(bf, f) / lattice.l2_inner(f, f)).real)
    return np.array(out)


def check_rayleigh(q: float, tol: SeriesTolerance, n: int = 200, J: int = 60) -> Check:
    lo, hi = transform.spectrum_segment(q)
    r = rayleigh_quotients(q, J, n)
    excess = max(0.0, float(lo - r.min()), float(r.max() - hi))
    return Check("Rayleigh quotients inside the spectral segment", excess, 1e-12 * abs(lo))


def check_leibniz(q: float, tol: SeriesTolerance, n: int = 200) -> Check:
    rng = np.random.default_rng(SEED + 7)
    worst = 0.0
    for _ in range(n):
        cu, cv = rng.normal(size=int(rng.integers(1, 6))), rng.normal(size=int(rng.integers(1, 6)))
        u, v = np.polynomial.Polynomial(cu), np.polynomial.Polynomial(cv)
        x = float(rng.uniform(0.5, 3))
        d = lattice.q_leibniz_defect(u, v, x, q)
        scale = max(1.0, abs(lattice.jackson_derivative(lambda y: u(y) * v(y), x, q)))
        worst = max(worst, abs(d) / scale)
    return Check("q-Leibniz rule", worst, 1e-12)


# eigen


def check_casimir_vs_laplacian(q: float, tol: SeriesTolerance, n: int = 200) -> Check:
    rng = np.random.default_rng(SEED + 8)
    worst = 0.0
    for _ in range(n):
        l = complex(rng.uniform(-3, 3), rng.uniform(-3, 3))
        lam = eigen.lambda_eig(l, q)
        worst = max(worst, abs(eigen.casimir_eigenvalue(l, q) - q * lam) / (1 + abs(lam)))
    return Check("Lambda(l) = q lambda(l)", worst, 1e-13)


def wronskian_spread(l: complex, q: float, js, tol: SeriesTolerance) -> tuple[float, float]:
    """Relative spread over ``js`` of W(psi_l, psi_{-1-l}) and its distance from [2l+1]_q."""
    lat = Lattice(q, max(js))
    a, b = eigen.psi_values(lat, l, tol), eigen.psi_values(lat, -1 - l, tol)
    w = np.array([lattice.wronskian(a, b, j) for j in js])
    target = qspecial.qbracket(2 * l + 1, q)
    spread = float(np.max(np.abs(w - w[0])) / abs(w[0]))
    value = float(np.max(np.abs(w - target)) / abs(target))
    return spread, value


def check_wronskian(q: float, tol: SeriesTolerance, n: int = 20) -> list[Check]:
    rng = np.random.default_rng(SEED + 9)
    spread = value = 0.0
    for l in random_l(rng, q, n):
        s, v = wronskian_spread(l, q, range(1, 26), tol)
        spread, value = max(spread, s), max(value, v)
    return [Check("Wronskian constant in j", spread, 1e-9),
            Check("W(psi_l, psi_{-1-l}) = [2l+1]_q", value, 1e-9)]


def connection_defect(l: complex, q: float, js, tol: SeriesTolerance) -> float:
    worst = 0.0
    for j in js:
        phi, a, b = eigen.connection_terms(q ** (-2 * j), l, q, tol)
        worst = max(worst, abs(phi - a - b) / (abs(a) + abs(b)))
    return worst


def check_connection(q: float, tol: SeriesTolerance, n: int = 20) -> Check:
    rng = np.random.default_rng(SEED + 10)
    worst = max(connection_defect(l, q, range(5, 16), tol) for l in random_l(rng, q, n))
    return Check("Phi_l = c(l) psi_l + c(-1-l) psi_{-1-l}", worst, 1e-7)


def green_delta_defect(kernel: eigen.GreenKernel, k: int, J: int) -> float:
    """Max relative deviation of ``(Box - lambda) G(., x_k)`` from ``delta_k / ((1-q^2) x_k)``."""
    lat = Lattice(kernel.q, J)
    col = LatticeFunction(lat, [kernel.at_indices(i, k) for i in range(J + 1)])
    resid = (lattice.apply_radial_laplacian(col).values - kernel.lam * col.values[:-1])
    target = np.zeros(J, dtype=complex)
    target[k] = 1 / ((1 - kernel.q**2) * lat.points[k])
    return float(np.max(np.abs(resid - target)) / abs(target[k]))


def check_green(q: float, tol: SeriesTolerance, n: int = 5) -> list[Check]:
    rng = np.random.default_rng(SEED + 11)
    defect = sym = 0.0
    for l in random_l(rng, q, n, re_offset=(0.1, 1.5)):
        kernel = eigen.GreenKernel(l, q, tol)
        for k in (0, 3, 7):
            defect = max(defect, green_delta_defect(kernel, k, 12))
        for _ in range(10):
            i, j = (int(v) for v in rng.integers(0, 20, 2))
            sym = max(sym, _rel(kernel.at_indices(i, j), kernel.at_indices(j, i)))
    return [Check("Green kernel delta defect", defect, 1e-8),
            Check("Green kernel symmetry", sym, 0.0)]


def check_ratio_law(q: float, tol: SeriesTolerance) -> Check:
    rng = np.random.default_rng(SEED + 12)
    worst = 0.0
    for l in random_l(rng, q, 5):
        x = q ** (-2 * int(rng.integers(0, 6)))
        a = qspecial.qpow(q, -2 * l)
        terms = qspecial.phi_2_1_terms(a, a, qspecial.qpow(q, -4 * l), q * q, q * q / x, 31)
        for m in range(30):
            if terms[m + 1] == 0 or terms[m] == 0:
                break
            law = (q * q * (1 - qspecial.qpow(q, -2 * l + 2 * m)) ** 2
                   / ((1 - q ** (2 * (m + 1))) * (1 - qspecial.qpow(q, -4 * l + 2 * m))) / x)
            worst = max(worst, _rel(terms[m + 1] / terms[m], law))
    return Check("psi_l coefficient ratio law", worst, 1e-12)


def check_psi_residual(q: float, tol: SeriesTolerance, n: int = 5) -> Check:
    rng = np.random.default_rng(SEED + 13)
    worst = 0.0
    lat = Lattice(q, 20)
    for l in random_l(rng, q, n, re_offset=(0.05, 2.0)):
        psi = eigen.psi_values(lat, l, tol)
        r = lattice.apply_radial_laplacian(psi).values[1:] - eigen.lambda_eig(l, q) * psi.values[1:-1]
        worst = max(worst, float(np.max(np.abs(r))) / (abs(eigen.lambda_eig(l, q)) * lattice.l2_norm(psi)))
    return Check("Box psi_l = lambda(l) psi_l", worst, 1e-9)


def check_poisson(q: float, tol: SeriesTolerance, J: int = 60) -> list[Check]:
    lat = Lattice(q, J)
    psi = eigen.poisson_delta_solution(lat, tol).values
    x = lat.points
    rec = psi[:-1] - psi[1:] + (1 / q**2 - 1) ** 2 * q**4 / x[:-1] / (1 - q * q / x[:-1])
    box = lattice.apply_radial_laplacian(LatticeFunction(lat, psi)).values.copy()
    box[0] -= 1.0
    return [Check("Poisson series recurrence", float(np.max(np.abs(rec))), 1e-12),
            Check("Box psi = f_0", float(np.max(np.abs(box))), 1e-10)]


# transform


def check_f0_transform(q: float, tol: SeriesTolerance, N: int) -> Check:
    grid = transform.SpectralGrid(q, N, tol)
    fh = transform.forward(Lattice(q, 8).delta(0), grid)
    return Check("forward(f_0) = 1 - q^2", float(np.max(np.abs(fh.values - (1 - q * q)))), 1e-13)


def random_finite_function(rng, q: float, J: int = 12, npts: int = 8) -> LatticeFunction:
    lat = Lattice(q, J)
    v = np.zeros(J + 1, dtype=complex)
    idx = rng.choice(J + 1, size=int(rng.integers(1, npts + 1)), replace=False)
    v[idx] = rng.normal(size=len(idx)) + 1j * rng.normal(size=len(idx))
    return LatticeFunction(lat, v)


def check_plancherel(q: float, tol: SeriesTolerance, N: int, n: int = 10) -> list[Check]:
    rng = np.random.default_rng(SEED + 14)
    grid = transform.SpectralGrid(q, N, tol)
    worst = max(transform.plancherel_defect(random_finite_function(rng, q), grid) for _ in range(n))
    mass = abs(transform.sigma_total(grid) * (1 - q * q) - 1)
    return [Check("Plancherel defect", worst, 1e-6),
            Check("int d sigma = 1/(1-q^2)", mass, 1e-6)]


def check_diagonalization(q: float, tol: SeriesTolerance, N: int, n: int = 5) -> Check:
    rng = np.random.default_rng(SEED + 15)
    grid = transform.SpectralGrid(q, min(N, 512), tol)
    worst = 0.0
    for _ in range(n):
        f = _interior_function(rng, Lattice(q, 12), 1, 7)
        worst = max(worst, transform.diagonalization_defect(f, grid) / lattice.l2_norm(f))
    return Check("forward(Box f) = lambda forward(f)", worst, 1e-9)


def check_dlambda(q: float, tol: SeriesTolerance) -> Check:
    h = -2 * math.log(q)
    worst = 0.0
    step = 1e-4
    for rho in np.linspace(0.1, math.pi / h - 0.1, 9):
        l = complex(-0.5, rho)
        num = (eigen.lambda_eig(l + step, q) - eigen.lambda_eig(l - step, q)) / (2 * step)
        worst = max(worst, _rel(num, eigen.dlambda_dl(l, q)))
    return Check("d lambda/dl closed form", worst, 1e-6)


def check_density_real(q: float, tol: SeriesTolerance) -> Check:
    h = -2 * math.log(q)
    worst = 0.0
    for rho in np.linspace(0.05, math.pi / h - 0.05, 25):
        pair = qspecial.cfunc(complex(-0.5, rho), q, tol) * qspecial.cfunc(complex(-0.5, -rho), q, tol)
        worst = max(worst, abs(pair.imag) / abs(pair))
    return Check("c(-1/2+i rho) c(-1/2-i rho) is real", worst, 1e-15)


def check_segment(q: float, tol: SeriesTolerance) -> Check:
    h = -2 * math.log(q)
    lo, hi = transform.spectrum_segment(q)
    d = max(abs(eigen.lambda_eig(complex(-0.5, math.pi / h), q) - lo),
            abs(eigen.lambda_eig(-0.5, q) - hi))
    return Check("spectrum end points = lambda(-1/2 + i pi/h), lambda(-1/2)", d, 1e-13)


# uqsl2


def random_laurent(rng, max_deg: int = 20, nterms: int = 6) -> uqsl2.LaurentPolynomial:
    ms = rng.choice(np.arange(-max_deg, max_deg + 1), size=nterms, replace=False)
    return uqsl2.LaurentPolynomial({int(m): complex(*rng.normal(size=2)) for m in ms})


def _poly_defect(a: uqsl2.LaurentPolynomial, b: uqsl2.LaurentPolynomial) -> float:
    return (a - b).max_abs() / max(1.0, b.max_abs())


def uqsl2_relation_defects(l: complex, q: float, ms=range(-20, 21)) -> dict[str, float]:
    out = {"[H,X+]": 0.0, "[H,X-]": 0.0, "KX+": 0.0, "KX-": 0.0, "[X+,X-]": 0.0}
    for m in ms:
        z = uqsl2.LaurentPolynomial.monomial(m)
        xp, xm = uqsl2.act_Xplus(z, l, q), uqsl2.act_Xminus(z, l, q)
        hx = uqsl2.act_H(xp) - uqsl2.act_Xplus(uqsl2.act_H(z), l, q)
        out["[H,X+]"] = max(out["[H,X+]"], _poly_defect(hx, 2 * xp))
        hx = uqsl2.act_H(xm) - uqsl2.act_Xminus(uqsl2.act_H(z), l, q)
        out["[H,X-]"] = max(out["[H,X-]"], _poly_defect(hx, -2 * xm))
        out["KX+"] = max(out["KX+"], _poly_defect(uqsl2.act_K(xp, q), q**2 * uqsl2.act_Xplus(uqsl2.act_K(z, q), l, q)))
        out["KX-"] = max(out["KX-"], _poly_defect(uqsl2.act_K(xm, q), q**-2 * uqsl2.act_Xminus(uqsl2.act_K(z, q), l, q)))
        comm = uqsl2.act_Xplus(xm, l, q) - uqsl2.act_Xminus(xp, l, q)
        kk = (uqsl2.act_K(z, q) - uqsl2.act_Kinv(z, q)) * (1 / (q - 1 / q))
        out["[X+,X-]"] = max(out["[X+,X-]"], _poly_defect(comm, kk))
        out["[X+,X-]"] = max(out["[X+,X-]"], _poly_defect(comm, qspecial.qbracket(2 * m, q) * z))
    return out


def check_uqsl2_relations(q: float, tol: SeriesTolerance, n: int = 20) -> list[Check]:
    rng = np.random.default_rng(SEED + 16)
    worst: dict[str, float] = {}
    for _ in range(n):
        l = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        for k, v in uqsl2_relation_defects(l, q).items():
            worst[k] = max(worst.get(k, 0.0), v)
    tols = {"[H,X+]": 1e-12, "[H,X-]": 1e-12, "KX+": 1e-13, "KX-": 1e-13, "[X+,X-]": 1e-12}
    return [Check(f"U_q sl2 relation {k}", worst[k], tols[k]) for k in tols]


def casimir_defect(f: uqsl2.LaurentPolynomial, l: complex, q: float) -> float:
    """Per-coefficient error of ``Omega f = Lambda(l) f``.

    Each coefficient is compared relative to the size of the two pieces
    ``B_{m+1} A_m`` and ``g(m)`` that cancel into ``Lambda(l)``; both grow like
    ``q^(-2|m|)``.
    """
    lam = qspecial.casimir_eigenvalue(l, q)
    out = uqsl2.casimir(f, l, q)
    worst = 0.0
    for m, c in f:
        g = (q ** (2 * m + 1) + q ** (-2 * m - 1) - q - 1 / q) / (1 / q - q) ** 2
        pieces = abs(uqsl2.xminus_coeff(m + 1, l, q) * uqsl2.xplus_coeff(m, l, q)) + abs(g) + abs(lam)
        worst = max(worst, abs(out[m] - lam * c) / (abs(c) * pieces))
    return worst


def check_casimir(q: float, tol: SeriesTolerance, n: int = 50) -> Check:
    rng = np.random.default_rng(SEED + 17)
    worst = 0.0
    for _ in range(n):
        l = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        worst = max(worst, casimir_defect(random_laurent(rng), l, q))
    return Check("Omega f = Lambda(l) f", worst, 1e-12)


def check_operator_form(q: float, tol: SeriesTolerance, n: int = 100) -> Check:
    rng = np.random.default_rng(SEED + 18)
    worst = 0.0
    for _ in range(n):
        l = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        f = random_laurent(rng, max_deg=6, nterms=4)
        xp, xm = uqsl2.act_Xplus(f, l, q), uqsl2.act_Xminus(f, l, q)
        op_p, op_m = uqsl2.xplus_operator(f, l, q), uqsl2.xminus_operator(f, l, q)
        for z in (0.7, 1.0, 1.3):
            scale = sum(abs(c) * z**m for m, c in xp) + sum(abs(c) * z**m for m, c in xm) + 1
            worst = max(worst, (abs(op_p(z) - xp(z)) + abs(op_m(z) - xm(z))) / scale)
    return Check("difference-operator form = monomial closed form", worst, 1e-12)


def _flatten(items) -> list[Check]:
    out = []
    for item in items:
        out.extend(item if isinstance(item, list) else [item])
    return out


SUITES: dict[str, Callable[[float, SeriesTolerance, int], list[Check]]] = {
    "qseries": lambda q, tol, N: _flatten([
        check_qbinomial(q, tol), check_qgamma_functional(q, tol), check_cfunc_dual(q, tol),
        check_phi32_reproducible(q, tol), check_lambda_symmetry(q, tol)]),
    "lattice": lambda q, tol, N: _flatten([
        check_weight_gap(q, tol), check_boundary_natural(q, tol), check_self_adjoint(q, tol),
        check_rayleigh(q, tol), check_leibniz(q, tol)]),
    "eigen": lambda q, tol, N: _flatten([
        check_casimir_vs_laplacian(q, tol), check_wronskian(q, tol), check_connection(q, tol),
        check_green(q, tol), check_ratio_law(q, tol), check_psi_residual(q, tol),
        check_poisson(q, tol), check_segment(q, tol)]),
    "transform": lambda q, tol, N: _flatten([
        check_f0_transform(q, tol, N), check_plancherel(q, tol, N), check_diagonalization(q, tol, N),
        check_dlambda(q, tol), check_density_real(q, tol), check_segment(q, tol)]),
    "uqsl2": lambda q, tol, N: _flatten([
        check_uqsl2_relations(q, tol), check_casimir(q, tol), check_operator_form(q, tol)]),
}


def run_suite(name: str, q: float, tol: SeriesTolerance = DEFAULT_TOL, N: int = 4096) -> list[Check]:
    if name == "all":
        return [c for suite in SUITES for c in SUITES[suite](q, tol, N)]
    return SUITES[name](q, tol, N)


def green_defect_from_rows(rows, q: float, lam: complex) -> list[Check]:
    """Delta-defect check on a kernel window emitted by ``qdisc green``.

    ``rows`` are ``(i, j, re, im)``.  Every column ``j`` whose rows cover a
    contiguous range ``0..r`` with ``r > j`` is checked at rows ``0..r-1``.
    """
    cols: dict[int, dict[int, complex]] = {}
    for i, j, re, im in rows:
        cols.setdefault(int(j), {})[int(i)] = complex(float(re), float(im))
    checks = []
    for j, col in sorted(cols.items()):
        r = 0
        while r + 1 in col:
            r += 1
        if 0 not in col or r <= j or r < 2:
            continue
        lat = Lattice(q, r)
        g = LatticeFunction(lat, [col[i] for i in range(r + 1)])
        resid = lattice.apply_radial_laplacian(g).values - lam * g.values[:-1]
        target = np.zeros(r, dtype=complex)
        target[j] = 1 / ((1 - q * q) * lat.points[j])
        checks.append(Check(f"delta defect in column xi_index={j}",
                            float(np.max(np.abs(resid - target)) / abs(target[j])), 1e-8))
    return checks
