"""q-Pochhammer symbols, q-Gamma, q-brackets and basic hypergeometric series.

Everything here works in double-precision complex arithmetic.  Infinite
products and series stop on an explicit tail bound; running out of terms is
reported as :class:`~qdisc.errors.NonConvergence`, never silently truncated.
Finite sums are accumulated in ascending index order with ``math.fsum`` on
the real and imaginary parts, so repeated evaluations are bit-identical.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import (
    ConfigError,
    InternalInconsistency,
    NonConvergence,
    PoleOfC,
    PoleOfGamma,
    SingularParameter,
)

__all__ = [
    "Q_EPS_MIN",
    "POLE_EPS",
    "Deformation",
    "SeriesTolerance",
    "DEFAULT_TOL",
    "SpectralParameter",
    "check_q",
    "qpow",
    "csum",
    "qpochhammer_finite",
    "qpochhammer_infinite",
    "qgamma",
    "qbracket",
    "phi_1_0",
    "phi_2_1",
    "phi_2_1_terms",
    "phi_3_2_terminating",
    "lattice_index",
    "cfunc",
    "cfunc_forms",
    "lambda_eig",
    "casimir_eigenvalue",
]

Q_EPS_MIN = 1e-6
POLE_EPS = 1e-9


def check_q(q: float) -> float:
    q = float(q)
    if not (0.0 < q < 1.0 - Q_EPS_MIN):
        raise ConfigError(f"deformation parameter q={q!r} must lie in (0, {1.0 - Q_EPS_MIN})")
    return q


@dataclass(frozen=True)
class Deformation:
    """The deformation parameter ``q`` together with ``h = -2 ln q``."""

    q: float

    def __post_init__(self):
        object.__setattr__(self, "q", check_q(self.q))

    @property
    def h(self) -> float:
        return -2.0 * math.log(self.q)

    @property
    def rho_max(self) -> float:
        """Right end ``pi/h`` of the spectral segment in the ``rho`` variable."""
        return math.pi / self.h


@dataclass(frozen=True)
class SeriesTolerance:
    abs_tol: float = 1e-14
    max_terms: int = 10000

    def __post_init__(self):
        if not self.abs_tol >= 0:
            raise ConfigError("abs_tol must be >= 0")
        if int(self.max_terms) < 1:
            raise ConfigError("max_terms must be a positive integer")


DEFAULT_TOL = SeriesTolerance()


def qpow(q: float, a: complex) -> complex:
    """``q**a`` through the principal logarithm (``q`` is real positive)."""
    return cmath.exp(complex(a) * math.log(q))


def csum(terms: Iterable[complex]) -> complex:
    """Correctly rounded sum of complex terms, taken in the given order."""
    terms = [complex(t) for t in terms]
    return complex(math.fsum(t.real for t in terms), math.fsum(t.imag for t in terms))


def qpochhammer_finite(a: complex, q: float, n: int) -> complex:
    """Finite q-Pochhammer symbol ``(a; q)_n``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    a = complex(a)
    prod = 1 + 0j
    for k in range(n):
        prod *= 1 - a * q**k
    return prod


def _check_denominator(a: complex, q: float, exc: type[SingularParameter], what: str) -> None:
    # Only factors with |a q^k| > 1/2 can come near zero.
    a = complex(a)
    k = 0
    while abs(a) * q**k > 0.5:
        if abs(1 - a * q**k) < POLE_EPS:
            raise exc(f"{what}: factor k={k} of ({a};{q})_inf vanishes")
        k += 1


def qpochhammer_infinite(a: complex, q: float, tol: SeriesTolerance | None = None) -> complex:
    """Infinite q-Pochhammer symbol ``(a; q)_inf``.

    The product stops once ``|a q^k| / (1 - q)`` drops below ``abs_tol``; this
    bounds the relative size of the neglected tail.
    """
    tol = tol or DEFAULT_TOL
    a = complex(a)
    if a == 0:
        return 1 + 0j
    prod = 1 + 0j
    for k in range(tol.max_terms):
        term = a * q**k
        if abs(term) <= tol.abs_tol * (1 - q):
            return prod
        prod *= 1 - term
        if prod == 0:
            return prod
    raise NonConvergence(f"({a};{q})_inf did not converge in {tol.max_terms} factors")


def qgamma(z: complex, qsq: float, tol: SeriesTolerance | None = None) -> complex:
    """q-Gamma function with base ``qsq``.

    ``Gamma_qsq(z) = (qsq; qsq)_inf (1 - qsq)^(1 - z) / (qsq^z; qsq)_inf``
    """
    z = complex(z)
    a = qpow(qsq, z)
    _check_denominator(a, qsq, PoleOfGamma, f"Gamma_{qsq}({z})")
    den = qpochhammer_infinite(a, qsq, tol)
    if den == 0:
        raise PoleOfGamma(f"Gamma_{qsq}({z}) has a pole")
    num = qpochhammer_infinite(qsq, qsq, tol)
    return num * cmath.exp((1 - z) * math.log(1 - qsq)) / den


def qbracket(a: complex, q: float) -> complex:
    """q-number ``[a]_q = (q^-a - q^a) / (q^-1 - q)``."""
    return (qpow(q, -a) - qpow(q, a)) / (1 / q - q)


def _basic_series(upper: Sequence[complex], lower: Sequence[complex], q: float,
                  t: complex, tol: SeriesTolerance) -> complex:
    t = complex(t)
    terms = []
    term = 1 + 0j
    running = 0j
    for k in range(tol.max_terms):
        terms.append(term)
        running += term
        qk = q**k
        num = 1 + 0j
        for u in upper:
            num *= 1 - u * qk
        if num == 0:
            return csum(terms)
        den = 1 - q ** (k + 1)
        for v in lower:
            f = 1 - v * qk
            if abs(f) < POLE_EPS:
                raise SingularParameter(f"lower parameter {v} hits a zero at k={k}")
            den *= f
        ratio = num / den * t
        nxt = term * ratio
        if not cmath.isfinite(nxt):
            break
        bound = max(abs(ratio), abs(t))
        if bound < 1 and abs(nxt) / (1 - bound) <= tol.abs_tol * max(1.0, abs(running)):
            terms.append(nxt)
            return csum(terms)
        term = nxt
    raise NonConvergence(f"basic hypergeometric series did not converge in {tol.max_terms} terms")


def phi_1_0(a: complex, q: float, t: complex, tol: SeriesTolerance | None = None) -> complex:
    """``1Phi0(a; -; q, t) = sum_k (a;q)_k / (q;q)_k t^k``."""
    return _basic_series([complex(a)], [], q, t, tol or DEFAULT_TOL)


def phi_2_1(a: complex, b: complex, c: complex, q: float, t: complex,
            tol: SeriesTolerance | None = None) -> complex:
    """``2Phi1(a, b; c; q, t)``; raises SingularParameter if ``(c;q)_k`` vanishes first."""
    return _basic_series([complex(a), complex(b)], [complex(c)], q, t, tol or DEFAULT_TOL)


def phi_2_1_terms(a: complex, b: complex, c: complex, q: float, t: complex, n: int) -> list[complex]:
    """First ``n`` terms of the ``2Phi1`` series, built by the same term recursion."""
    out = []
    term = 1 + 0j
    for k in range(n):
        out.append(term)
        qk = q**k
        term = term * (1 - a * qk) * (1 - b * qk) / ((1 - c * qk) * (1 - q ** (k + 1))) * t
    return out


def lattice_index(x: float, q: float, rel_tol: float = 1e-12) -> int:
    """Return ``j`` with ``x = q^(-2j)``; raise NotOnLattice otherwise."""
    from .errors import NotOnLattice

    x = float(x)
    if not x > 0:
        raise NotOnLattice(f"x={x!r} is not a lattice point")
    j = int(round(math.log(x) / (-2.0 * math.log(q))))
    if j < 0 or abs(x - q ** (-2 * j)) > rel_tol * x:
        raise NotOnLattice(f"x={x!r} is not of the form q^(-2j) with q={q}")
    return j


def phi_3_2_terminating(x_lat: float, l: complex, q: float) -> complex:
    """``3Phi2[x, q^-2l, q^(2l+2); q^2, 0; q^2, q^2]`` at a lattice point.

    With ``x = q^(-2j)`` the factor ``(x; q^2)_k`` vanishes for ``k > j``, so
    this is an exact sum of ``j + 1`` terms.  The terms grow like
    ``q^(-j^2)``, which makes the sum useless beyond a handful of lattice
    points in double precision; :func:`qdisc.eigen.phi_l` uses the
    three-term recurrence instead and this routine serves as its oracle.
    """
    j = lattice_index(x_lat, q)
    x = float(x_lat)
    qsq = q * q
    a = qpow(q, -2 * complex(l))
    b = qpow(q, 2 * complex(l) + 2)
    terms = []
    term = 1 + 0j
    for k in range(j + 1):
        terms.append(term)
        qk = qsq**k
        term = term * (1 - x * qk) * (1 - a * qk) * (1 - b * qk) / (1 - qsq ** (k + 1)) ** 2 * qsq
    return csum(terms)


def cfunc_forms(l: complex, q: float, tol: SeriesTolerance | None = None) -> tuple[complex, complex | None]:
    """Return ``(product_form, gamma_form)`` of the c-function.

    ``c`` vanishes at ``l = -1, -2, ...``; ``gamma_form`` is None when only
    ``Gamma(l+1)`` has a pole.
    """
    tol = tol or DEFAULT_TOL
    l = complex(l)
    n = round(l.real)
    if n <= -1 and abs(l - n) < POLE_EPS:
        # double zero of the numerator over a simple zero of the denominator
        return 0j, 0j
    qsq = q * q
    den_arg = qpow(q, 2 * (2 * l + 1))
    _check_denominator(den_arg, qsq, PoleOfC, f"c({l})")
    den = qpochhammer_infinite(den_arg, qsq, tol)
    if den == 0:
        raise PoleOfC(f"c({l}) has a pole")
    num = qpochhammer_infinite(qpow(q, 2 * (l + 1)), qsq, tol)
    prod = num**2 / (den * qpochhammer_infinite(qsq, qsq, tol))
    try:
        gamma = qgamma(2 * l + 1, qsq, tol) / qgamma(l + 1, qsq, tol) ** 2
    except PoleOfGamma:
        gamma = None
    return prod, gamma


def cfunc(l: complex, q: float, tol: SeriesTolerance | None = None) -> complex:
    """q-analogue of Harish-Chandra's c-function.

    Evaluated both as a Gamma_{q^2} quotient and as an infinite-product
    quotient; the product form is returned after checking agreement.
    """
    tol = tol or DEFAULT_TOL
    prod, gamma = cfunc_forms(l, q, tol)
    if gamma is not None and abs(prod - gamma) > 100 * max(tol.abs_tol, 1e-15) * max(1.0, abs(prod)):
        raise InternalInconsistency(f"c({l}): product form {prod} vs Gamma form {gamma}")
    return prod


def lambda_eig(l: complex, q: float) -> complex:
    """Eigenvalue of the radial Laplacian on the ``l``-th eigenfunction."""
    l = complex(l)
    return -(1 - qpow(q, -2 * l)) * (1 - qpow(q, 2 * l + 2)) / (1 - q * q) ** 2


def casimir_eigenvalue(l: complex, q: float) -> complex:
    """Scalar by which the Casimir element acts on the weight-``l`` principal series."""
    l = complex(l)
    return (qpow(q, -l) - qpow(q, l)) * (qpow(q, -(l + 1)) - qpow(q, l + 1)) / (1 / q - q) ** 2


@dataclass(frozen=True)
class SpectralParameter:
    l: complex
    q: float
    tol: SeriesTolerance = field(default=DEFAULT_TOL, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "l", complex(self.l))
        object.__setattr__(self, "q", check_q(self.q))

    @property
    def h(self) -> float:
        return -2.0 * math.log(self.q)

    @property
    def lam(self) -> complex:
        return lambda_eig(self.l, self.q)

    @property
    def Lam(self) -> complex:
        return casimir_eigenvalue(self.l, self.q)

    @property
    def dual(self) -> "SpectralParameter":
        """The parameter ``-1 - l``, which has the same eigenvalue."""
        return SpectralParameter(-1 - self.l, self.q, self.tol)

    def c(self) -> complex:
        return cfunc(self.l, self.q, self.tol)

    def singular_distance(self) -> float:
        """Distance from ``l`` to ``{n/2 + i k pi/h : n, k integers}``.

        This set contains every point where one of ``psi_l``, ``psi_{-1-l}``
        degenerates and every half-integer excluded by the connection formula.
        """
        period = math.pi / self.h
        re = self.l.real - round(2 * self.l.real) / 2
        im = self.l.imag - round(self.l.imag / period) * period
        return math.hypot(re, im)
