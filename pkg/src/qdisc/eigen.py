"""Eigenfunctions of the radial Laplacian, its Green kernel and resolvent.

Two families of solutions of ``D x (x/q - 1) D f = lambda(l) f`` appear:

* ``psi_l(x) ~ x^l`` as ``x -> oo``, given by a ``2Phi1`` series in ``1/x``;
* ``Phi_l``, the solution normalised by ``Phi_l(1) = 1``, which is regular at
  the boundary point ``x = 1`` of the lattice.

``Phi_l = c(l) psi_l + c(-1-l) psi_{-1-l}`` ties them together.  The Green
kernel pairs ``Phi_l`` (at the smaller argument) with the member of
``{psi_l, psi_{-1-l}}`` that is square summable at infinity (at the larger).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import CriticalLine, EvaluationOutOfDomain, NonConvergence, SingularParameter, SupportTooWide
from .lattice import Lattice, LatticeFunction
from .qspecial import (
    DEFAULT_TOL,
    SeriesTolerance,
    SpectralParameter,
    casimir_eigenvalue,
    cfunc,
    check_q,
    csum,
    lambda_eig,
    lattice_index,
    phi_2_1,
    qbracket,
    qpow,
)

__all__ = [
    "CRITICAL_EPS",
    "PSI_SINGULAR_EPS",
    "EigenPair",
    "lambda_eig",
    "casimir_eigenvalue",
    "dlambda_dl",
    "psi_l",
    "psi_values",
    "phi_table",
    "phi_values",
    "phi_l",
    "connection_terms",
    "GreenKernel",
    "green_kernel",
    "resolvent_apply",
    "poisson_delta_solution",
    "jump_limit",
    "resolvent_jump",
]

CRITICAL_EPS = 1e-6
PSI_SINGULAR_EPS = 1e-8


@dataclass(frozen=True)
class EigenPair:
    l: SpectralParameter

    @property
    def lam(self) -> complex:
        return self.l.lam

    @property
    def Lam(self) -> complex:
        return self.l.Lam


def dlambda_dl(l: complex, q: float) -> complex:
    """Closed form of ``d lambda / d l``."""
    h = -2.0 * math.log(q)
    return h / (1 - q * q) ** 2 * (qpow(q, -2 * complex(l)) - qpow(q, 2 * complex(l) + 2))


def _psi_singular_distance(l: complex, q: float) -> float:
    # zeros of (q^-4l; q^2)_k: l = n/2 + i k pi/h with n >= 0
    period = math.pi / (-2.0 * math.log(q))
    n = max(0, round(2 * l.real))
    im = l.imag - round(l.imag / period) * period
    return math.hypot(l.real - n / 2, im)


def psi_l(x: float, l: complex, q: float, tol: SeriesTolerance | None = None) -> complex:
    """``x^l * 2Phi1(q^-2l, q^-2l; q^-4l; q^2, q^2/x)``.

    ``l = 0`` exactly is accepted (the series stops at its first term and
    ``psi_0 = 1``); any other ``l`` within ``1e-8`` of a pole of the lower
    parameter raises SingularParameter.
    """
    check_q(q)
    l = complex(l)
    x = float(x)
    if not x > q * q:
        raise EvaluationOutOfDomain(f"psi_l needs x > q^2, got x={x}")
    if l != 0 and _psi_singular_distance(l, q) < PSI_SINGULAR_EPS:
        raise SingularParameter(f"psi_l: l={l} is a pole of the lower parameter q^(-4l)")
    a = qpow(q, -2 * l)
    s = phi_2_1(a, a, qpow(q, -4 * l), q * q, q * q / x, tol)
    return qpow(x, l) * s


def psi_values(lattice: Lattice, l: complex, tol: SeriesTolerance | None = None) -> LatticeFunction:
    return LatticeFunction(lattice, [psi_l(x, l, lattice.q, tol) for x in lattice.points])


def phi_table(lattice: Lattice, ls) -> np.ndarray:
    """``Phi_l(x_j)`` for every lattice point and every ``l`` in ``ls``.

    Returns an array of shape ``(J + 1, len(ls))``.  Values come from the
    eigen-equation written as a flux recurrence::

        d_j = d_{j-1} + lambda (1/q - q)^2 x_j Phi(x_j),   d_{-1} = 0
        Phi(x_{j+1}) = Phi(x_j) + d_j / (x_{j+1} - 1)

    started from ``Phi(1) = 1``.
    """
    q = lattice.q
    ls = np.atleast_1d(np.asarray(ls, dtype=complex))
    lam = np.array([lambda_eig(l, q) for l in ls])
    x = lattice.points
    scale = (1 / q - q) ** 2
    out = np.empty((lattice.J + 1, len(ls)), dtype=complex)
    out[0] = 1.0
    flux = np.zeros(len(ls), dtype=complex)
    for j in range(lattice.J):
        flux = flux + lam * (scale * x[j]) * out[j]
        out[j + 1] = out[j] + flux / (x[j + 1] - 1.0)
    return out


def phi_values(lattice: Lattice, l: complex) -> LatticeFunction:
    return LatticeFunction(lattice, phi_table(lattice, [l])[:, 0])


def phi_l(x_lat: float, l: complex, q: float) -> complex:
    """``Phi_l`` at a lattice point; ``Phi_l(1) = 1``."""
    j = lattice_index(x_lat, check_q(q))
    return complex(phi_table(Lattice(q, j), [l])[j, 0])


def connection_terms(x: float, l: complex, q: float,
                     tol: SeriesTolerance | None = None) -> tuple[complex, complex, complex]:
    """Return ``(Phi_l(x), c(l) psi_l(x), c(-1-l) psi_{-1-l}(x))``.

    The first entry equals the sum of the other two away from ``l`` in ``1/2 + Z``.
    """
    l = complex(l)
    if abs(l.imag) < PSI_SINGULAR_EPS and abs(l.real - 0.5 - round(l.real - 0.5)) < PSI_SINGULAR_EPS:
        raise SingularParameter(f"connection formula does not hold at half-integer l={l}")
    return (
        phi_l(x, l, q),
        cfunc(l, q, tol) * psi_l(x, l, q, tol),
        cfunc(-1 - l, q, tol) * psi_l(x, -1 - l, q, tol),
    )


class GreenKernel:
    """Kernel ``G(x, xi, l)`` of ``(Box - lambda(l))^-1`` against ``d_{q^2} xi``.

    For ``Re l > -1/2`` the solution square summable at infinity is
    ``psi_{-1-l}`` and the kernel is::

        G = c2(l) * psi_{-1-l}(max(x, xi)) * Phi_l(min(x, xi)),  c2 = -1/(c(l) [2l+1]_q)

    For ``Re l < -1/2`` it is ``psi_l`` with ``c1 = 1/(c(-1-l) [2l+1]_q)``.
    In both cases the constant is ``1/W(recessive, Phi_l)``.
    """

    def __init__(self, l: complex, q: float, tol: SeriesTolerance | None = None):
        self.param = SpectralParameter(l, q, tol or DEFAULT_TOL)
        self.tol = self.param.tol
        l = self.param.l
        if abs(l.real + 0.5) <= CRITICAL_EPS:
            raise CriticalLine(f"Re l = {l.real} is within {CRITICAL_EPS} of -1/2")
        bracket = qbracket(2 * l + 1, q)
        if l.real > -0.5:
            self.regime = "upper"
            self.recessive = -1 - l
            self.constant = -1 / (cfunc(l, q, self.tol) * bracket)
        else:
            self.regime = "lower"
            self.recessive = l
            self.constant = 1 / (cfunc(-1 - l, q, self.tol) * bracket)
        self._phi = np.ones(1, dtype=complex)
        self._psi: dict[int, complex] = {}

    @property
    def l(self) -> complex:
        return self.param.l

    @property
    def q(self) -> float:
        return self.param.q

    @property
    def lam(self) -> complex:
        return self.param.lam

    def c1(self) -> complex:
        l, q = self.l, self.q
        return 1 / (cfunc(-1 - l, q, self.tol) * qbracket(2 * l + 1, q))

    def c2(self) -> complex:
        l, q = self.l, self.q
        return -1 / (cfunc(l, q, self.tol) * qbracket(2 * l + 1, q))

    def _phi_at(self, j: int) -> complex:
        if j >= len(self._phi):
            self._phi = phi_table(Lattice(self.q, max(j, 2 * len(self._phi))), [self.l])[:, 0]
        return self._phi[j]

    def _psi_at(self, j: int) -> complex:
        if j not in self._psi:
            self._psi[j] = psi_l(self.q ** (-2 * j), self.recessive, self.q, self.tol)
        return self._psi[j]

    def at_indices(self, i: int, j: int) -> complex:
        lo, hi = min(i, j), max(i, j)
        return self.constant * self._psi_at(hi) * self._phi_at(lo)

    def __call__(self, x: float, xi: float) -> complex:
        return self.at_indices(lattice_index(x, self.q), lattice_index(xi, self.q))

    def matrix(self, rows, cols) -> np.ndarray:
        return np.array([[self.at_indices(i, j) for j in cols] for i in rows], dtype=complex)


def green_kernel(x: float, xi: float, l: complex, q: float, tol: SeriesTolerance | None = None) -> complex:
    return GreenKernel(l, q, tol)(x, xi)


def resolvent_apply(psi: LatticeFunction, l: complex, tol: SeriesTolerance | None = None,
                    margin: int = 20) -> LatticeFunction:
    """``u(x_i) = sum_j w_j G(x_i, x_j, l) psi(x_j)`` on the whole lattice of ``psi``.

    ``psi`` must vanish on the last ``margin`` lattice points.
    """
    lat = psi.lattice
    support = psi.support
    if len(support) and support.max() > lat.J - margin:
        raise SupportTooWide(f"support reaches index {support.max()}, limit is {lat.J - margin}")
    kernel = GreenKernel(l, lat.q, tol)
    w = lat.weights
    out = np.zeros(lat.J + 1, dtype=complex)
    for i in range(lat.J + 1):
        out[i] = csum(w[j] * kernel.at_indices(i, j) * psi.values[j] for j in support)
    return LatticeFunction(lat, out)


def poisson_delta_solution(lattice: Lattice, tol: SeriesTolerance | None = None) -> LatticeFunction:
    """Square-summable solution of ``Box psi = f_0`` (indicator of ``x = 1``).

    ``psi(x) = -(q^-2 - 1)^2 q^2 sum_{m >= 1} q^(2m) / (1 - q^(2m)) x^(-m)``.
    """
    tol = tol or DEFAULT_TOL
    q = lattice.q
    qsq = q * q
    pref = -((1 / qsq - 1) ** 2) * qsq
    vals = []
    for x in lattice.points:
        terms = []
        for m in range(1, tol.max_terms + 1):
            t = qsq**m / (1 - qsq**m) * x ** (-m)
            terms.append(t)
            # term ratio is q^2/x * (1 - q^2m) / (1 - q^2(m+1)) < q^2/x
            r = qsq / x
            if r < 1 and t * r / (1 - r) <= tol.abs_tol * abs(terms[0]):
                break
        else:
            raise NonConvergence("Poisson series did not converge")
        vals.append(pref * math.fsum(terms))
    return LatticeFunction(lattice, vals)


def jump_limit(x: float, xi: float, rho: float, q: float, tol: SeriesTolerance | None = None) -> complex:
    """``Phi_l(xi) Phi_l(x) / (c(l) c(-1-l) [2l+1]_q)`` at ``l = -1/2 + i rho``."""
    l = complex(-0.5, rho)
    return (phi_l(x, l, q) * phi_l(xi, l, q)
            / (cfunc(l, q, tol) * cfunc(-1 - l, q, tol) * qbracket(2 * l + 1, q)))


def resolvent_jump(x: float, xi: float, rho: float, eps: float, q: float,
                   tol: SeriesTolerance | None = None) -> complex:
    """``G(x, xi, l - eps) - G(x, xi, l + eps)`` at ``l = -1/2 + i rho``.

    Moving ``l`` to the right of the critical line moves ``lambda(l)`` into the
    upper half plane, so this is ``R(lambda - i0) - R(lambda + i0)`` in the
    limit, which tends to :func:`jump_limit` as ``eps -> 0``.
    """
    h = -2.0 * math.log(q)
    if not 0 < rho < math.pi / h:
        raise EvaluationOutOfDomain(f"rho={rho} outside (0, pi/h)")
    if not 1e-6 < eps < 0.1:
        raise EvaluationOutOfDomain(f"eps={eps} outside (1e-6, 0.1)")
    l = complex(-0.5, rho)
    return green_kernel(x, xi, l - eps, q, tol) - green_kernel(x, xi, l + eps, q, tol)
