"""Principal-series action of U_q sl2 on boundary Laurent polynomials.

On ``z^m`` the generators act by::

    H  z^m = 2m z^m
    K  z^m = q^(2m) z^m
    X+ z^m = A_m z^(m+1),   A_m = q^(-1/2) (q^(m-2l) - q^(-m)) / (q^-1 - q)
    X- z^m = B_m z^(m-1),   B_m = q^(1/2)  (q^(-m) - q^(m+2l)) / (q^-1 - q)

These closed forms coincide with the q-difference operators built from the
boundary Jackson derivative (see :func:`xplus_operator` and
:func:`xminus_operator`).
"""
from __future__ import annotations

import json
from typing import Callable, Mapping

from .lattice import jackson_derivative
from .qspecial import check_q, qpow

__all__ = [
    "LaurentPolynomial",
    "xplus_coeff",
    "xminus_coeff",
    "act_H",
    "act_K",
    "act_Kinv",
    "act_Xplus",
    "act_Xminus",
    "casimir",
    "xplus_operator",
    "xminus_operator",
]


class LaurentPolynomial:
    """Finite sum ``sum_m c_m z^m`` over integer exponents; zero coefficients are dropped."""

    __slots__ = ("_coeffs",)

    def __init__(self, coefficients: Mapping[int, complex] | None = None):
        coeffs = {}
        for m, c in (coefficients or {}).items():
            if int(m) != m:
                raise ValueError(f"exponent {m!r} is not an integer")
            c = complex(c)
            if c != 0:
                coeffs[int(m)] = c
        object.__setattr__(self, "_coeffs", dict(sorted(coeffs.items())))

    def __setattr__(self, name, value):
        raise AttributeError("LaurentPolynomial is immutable")

    @classmethod
    def monomial(cls, m: int, c: complex = 1.0) -> "LaurentPolynomial":
        return cls({m: c})

    @property
    def coefficients(self) -> dict[int, complex]:
        return dict(self._coeffs)

    @property
    def degrees(self) -> tuple[int, int] | None:
        if not self._coeffs:
            return None
        return min(self._coeffs), max(self._coeffs)

    def __iter__(self):
        return iter(self._coeffs.items())

    def __len__(self):
        return len(self._coeffs)

    def __getitem__(self, m: int) -> complex:
        return self._coeffs.get(m, 0j)

    def __eq__(self, other):
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self):
        return hash(tuple(self._coeffs.items()))

    def __repr__(self):
        return f"LaurentPolynomial({self._coeffs!r})"

    def __str__(self):
        if not self._coeffs:
            return "0"
        return " + ".join(f"({c:.17g})*z^{m}" for m, c in self._coeffs.items())

    def __add__(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        out = dict(self._coeffs)
        for m, c in other:
            out[m] = out.get(m, 0j) + c
        return LaurentPolynomial(out)

    def __sub__(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        return self + (-1) * other

    def __mul__(self, scalar: complex) -> "LaurentPolynomial":
        return LaurentPolynomial({m: c * scalar for m, c in self})

    __rmul__ = __mul__

    def __neg__(self):
        return (-1) * self

    def __call__(self, z: complex) -> complex:
        return sum(c * z**m for m, c in self._coeffs.items())

    def max_abs(self) -> float:
        return max((abs(c) for c in self._coeffs.values()), default=0.0)

    def map_monomials(self, rule: Callable[[int], tuple[int, complex]]) -> "LaurentPolynomial":
        """Apply a linear map given on monomials by ``z^m -> factor * z^shift(m)``."""
        out: dict[int, complex] = {}
        for m, c in self:
            m2, factor = rule(m)
            out[m2] = out.get(m2, 0j) + factor * c
        return LaurentPolynomial(out)

    def to_json(self) -> str:
        return json.dumps([{"m": m, "re": c.real, "im": c.imag} for m, c in self])

    @classmethod
    def from_json(cls, text: str) -> "LaurentPolynomial":
        out: dict[int, complex] = {}
        for term in json.loads(text):
            m = term["m"]
            out[m] = out.get(m, 0j) + complex(term["re"], term.get("im", 0.0))
        return cls(out)


def xplus_coeff(m: int, l: complex, q: float) -> complex:
    return q**-0.5 * (qpow(q, m - 2 * l) - q ** (-m)) / (1 / q - q)


def xminus_coeff(m: int, l: complex, q: float) -> complex:
    return q**0.5 * (q ** (-m) - qpow(q, m + 2 * l)) / (1 / q - q)


def act_H(f: LaurentPolynomial) -> LaurentPolynomial:
    return f.map_monomials(lambda m: (m, 2 * m))


def act_K(f: LaurentPolynomial, q: float) -> LaurentPolynomial:
    return f.map_monomials(lambda m: (m, q ** (2 * m)))


def act_Kinv(f: LaurentPolynomial, q: float) -> LaurentPolynomial:
    return f.map_monomials(lambda m: (m, q ** (-2 * m)))


def act_Xplus(f: LaurentPolynomial, l: complex, q: float) -> LaurentPolynomial:
    check_q(q)
    return f.map_monomials(lambda m: (m + 1, xplus_coeff(m, l, q)))


def act_Xminus(f: LaurentPolynomial, l: complex, q: float) -> LaurentPolynomial:
    check_q(q)
    return f.map_monomials(lambda m: (m - 1, xminus_coeff(m, l, q)))


def casimir(f: LaurentPolynomial, l: complex, q: float) -> LaurentPolynomial:
    """``Omega = X- X+ + (q^(H+1) + q^(-H-1) - q - q^-1) / (q^-1 - q)^2``."""
    gH = f.map_monomials(
        lambda m: (m, (q ** (2 * m + 1) + q ** (-2 * m - 1) - q - 1 / q) / (1 / q - q) ** 2)
    )
    return act_Xminus(act_Xplus(f, l, q), l, q) + gH


def xplus_operator(f: LaurentPolynomial, l: complex, q: float) -> Callable[[float], complex]:
    """``X+`` as a q-difference operator, returned as a function of ``z > 0``.

    ``-q^(-1/2) z^2 (Df)(z) + q^(-3/2) (q^-2l - 1)/(q^-2 - 1) z f(q z)``
    """
    mult = q**-1.5 * (qpow(q, -2 * l) - 1) / (q**-2 - 1)
    return lambda z: -(q**-0.5) * z * z * jackson_derivative(f, z, q) + mult * z * f(q * z)


def xminus_operator(f: LaurentPolynomial, l: complex, q: float) -> Callable[[float], complex]:
    """``X-`` as a q-difference operator: ``q^(1/2) (Df)(z) + q^(3/2) (1 - q^2l)/(1 - q^2) f(q z)/z``."""
    mult = q**1.5 * (1 - qpow(q, 2 * l)) / (1 - q * q)
    return lambda z: q**0.5 * jackson_derivative(f, z, q) + mult * f(q * z) / z
