"""Jackson q-calculus on the truncated lattice ``x_j = q^(-2j)``, ``j = 0..J``."""
from __future__ import annotations

import cmath
import csv
import io
import json
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Callable

import numpy as np

from .errors import (
    EvaluationOutOfDomain,
    IndexOutOfRange,
    LatticeMismatch,
    LatticeTooSmall,
    NotOnLattice,
)
from .qspecial import check_q, csum

__all__ = [
    "Lattice",
    "LatticeFunction",
    "jackson_derivative",
    "apply_radial_laplacian",
    "jackson_integral",
    "l2_inner",
    "l2_norm",
    "q_leibniz_defect",
    "wronskian",
]


@dataclass(frozen=True)
class Lattice:
    """Points ``x_j = q^(-2j)`` for ``j = 0..J`` with weights ``w_j = (1-q^2) q^(-2j)``.

    Points are produced by repeated multiplication so that
    ``x_{j+1} = q^-2 * x_j`` holds exactly in floating point.
    """

    q: float
    J: int

    def __post_init__(self):
        object.__setattr__(self, "q", check_q(self.q))
        if int(self.J) != self.J or self.J < 0:
            raise ValueError(f"J must be a nonnegative integer, got {self.J!r}")
        object.__setattr__(self, "J", int(self.J))

    @cached_property
    def points(self) -> np.ndarray:
        step = 1.0 / (self.q * self.q)
        x = np.empty(self.J + 1)
        x[0] = 1.0
        for j in range(self.J):
            x[j + 1] = x[j] * step
        x.flags.writeable = False
        return x

    @cached_property
    def weights(self) -> np.ndarray:
        # w_0 = 1 - q^2 and w_j = x_j - x_{j-1} afterwards; both equal (1-q^2) q^(-2j).
        x = self.points
        w = np.empty_like(x)
        w[0] = 1.0 - self.q * self.q
        w[1:] = x[1:] - x[:-1]
        w.flags.writeable = False
        return w

    def __len__(self) -> int:
        return self.J + 1

    def index_of(self, x: float) -> int:
        """Index ``j`` of a lattice point (relative tolerance 1e-12)."""
        x = float(x)
        j = int(round(math.log(x) / (-2.0 * math.log(self.q)))) if x > 0 else -1
        if not (0 <= j <= self.J) or abs(x - self.points[j]) > 1e-12 * x:
            raise NotOnLattice(f"{x!r} is not a point of {self}")
        return j

    def truncate(self, J: int) -> "Lattice":
        if not 0 <= J <= self.J:
            raise ValueError(f"cannot truncate lattice with J={self.J} to J={J}")
        return Lattice(self.q, J)

    def delta(self, j: int) -> "LatticeFunction":
        """Indicator function of the point ``x_j`` (``delta(0)`` is ``f_0``)."""
        if not 0 <= j <= self.J:
            raise IndexOutOfRange(f"index {j} outside 0..{self.J}")
        v = np.zeros(self.J + 1, dtype=complex)
        v[j] = 1.0
        return LatticeFunction(self, v)

    def sample(self, func: Callable[[float], complex]) -> "LatticeFunction":
        return LatticeFunction(self, np.array([func(x) for x in self.points], dtype=complex))


class LatticeFunction:
    """Complex values ``f(x_j)``, one per lattice point; immutable."""

    __slots__ = ("lattice", "values")

    def __init__(self, lattice: Lattice, values):
        values = np.array(values, dtype=complex)
        if values.shape != (lattice.J + 1,):
            raise ValueError(f"expected {lattice.J + 1} values, got shape {values.shape}")
        values.flags.writeable = False
        object.__setattr__(self, "lattice", lattice)
        object.__setattr__(self, "values", values)

    def __setattr__(self, name, value):
        raise AttributeError("LatticeFunction is immutable")

    def __repr__(self):
        return f"LatticeFunction(q={self.lattice.q}, J={self.lattice.J})"

    def __len__(self):
        return len(self.values)

    def __getitem__(self, j):
        return self.values[j]

    def _check(self, other: "LatticeFunction") -> None:
        if self.lattice != other.lattice:
            raise LatticeMismatch(f"{self.lattice} vs {other.lattice}")

    def __add__(self, other):
        self._check(other)
        return LatticeFunction(self.lattice, self.values + other.values)

    def __sub__(self, other):
        self._check(other)
        return LatticeFunction(self.lattice, self.values - other.values)

    def __mul__(self, scalar):
        return LatticeFunction(self.lattice, self.values * complex(scalar))

    __rmul__ = __mul__

    def __neg__(self):
        return LatticeFunction(self.lattice, -self.values)

    @property
    def support(self) -> np.ndarray:
        """Indices carrying a nonzero value."""
        return np.flatnonzero(self.values)

    def restrict(self, J: int) -> "LatticeFunction":
        return LatticeFunction(self.lattice.truncate(J), self.values[: J + 1])

    def extend(self, J: int) -> "LatticeFunction":
        """Zero-extend onto the larger lattice with index range ``0..J``."""
        if J < self.lattice.J:
            raise ValueError("use restrict() to shrink a lattice function")
        v = np.zeros(J + 1, dtype=complex)
        v[: self.lattice.J + 1] = self.values
        return LatticeFunction(Lattice(self.lattice.q, J), v)

    # serialization: rows (j, x_j, re, im)

    def rows(self) -> list[tuple[int, float, float, float]]:
        x = self.lattice.points
        return [(j, float(x[j]), float(v.real), float(v.imag)) for j, v in enumerate(self.values)]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["j", "x", "re", "im"])
        for j, x, re, im in self.rows():
            w.writerow([j, repr(x), repr(re), repr(im)])
        return buf.getvalue()

    def to_json(self) -> str:
        return json.dumps([{"j": j, "x": x, "re": re, "im": im} for j, x, re, im in self.rows()])

    @classmethod
    def from_records(cls, records, q: float) -> "LatticeFunction":
        """Build from ``(j, x, re, im)`` records; missing indices are zero."""
        records = list(records)
        if not records:
            raise ValueError("no records")
        J = max(int(r[0]) for r in records)
        lat = Lattice(q, J)
        v = np.zeros(J + 1, dtype=complex)
        for j, x, re, im in records:
            j = int(j)
            if j < 0:
                raise ValueError(f"negative index {j}")
            if x is not None and abs(float(x) - lat.points[j]) > 1e-12 * lat.points[j]:
                raise NotOnLattice(f"row j={j}: x={x} does not match q^(-2j) for q={q}")
            v[j] = complex(float(re), float(im))
        return cls(lat, v)

    @classmethod
    def from_json(cls, text: str, q: float) -> "LatticeFunction":
        data = json.loads(text)
        return cls.from_records(((d["j"], d.get("x"), d["re"], d.get("im", 0.0)) for d in data), q)

    @classmethod
    def from_csv(cls, text: str, q: float) -> "LatticeFunction":
        reader = csv.DictReader(io.StringIO(text))
        return cls.from_records(((r["j"], r.get("x") or None, r["re"], r.get("im") or 0.0) for r in reader), q)


def jackson_derivative(f: Callable[[float], complex], x: float, q: float) -> complex:
    """Symmetric Jackson derivative ``(f(x/q) - f(q x)) / ((1/q - q) x)``."""
    if not (isinstance(x, (int, float, complex)) and cmath.isfinite(x)) or x == 0 or complex(x).real <= 0:
        raise EvaluationOutOfDomain(f"Jackson derivative needs Re x > 0, got {x!r}")
    try:
        hi, lo = f(x / q), f(q * x)
    except (ValueError, ArithmeticError) as exc:
        raise EvaluationOutOfDomain(f"cannot evaluate f at {x / q!r} and {q * x!r}: {exc}") from exc
    return (hi - lo) / ((1 / q - q) * x)


def apply_radial_laplacian(f: LatticeFunction) -> LatticeFunction:
    """Apply ``D x (x/q - 1) D`` on the lattice.

    Expanded, for ``0 <= j < J``::

        [(x_{j+1} - 1)(f_{j+1} - f_j) - (x_j - 1)(f_j - f_{j-1})] / ((1/q - q)^2 x_j)

    The second bracket vanishes at ``j = 0`` (``x_0 = 1``).  The value at
    ``j = J`` would need ``f(x_{J+1})``, so the result lives on the lattice
    truncated to ``J - 1``.
    """
    lat = f.lattice
    if lat.J < 2:
        raise LatticeTooSmall(f"need J >= 2, got J={lat.J}")
    x = lat.points
    v = f.values
    q = lat.q
    up = (x[1:] - 1.0) * (v[1:] - v[:-1])  # flux across (j, j+1), j = 0..J-1
    down = np.empty_like(up)
    down[0] = 0.0
    down[1:] = up[:-1]
    out = (up - down) / ((1 / q - q) ** 2 * x[:-1])
    return LatticeFunction(lat.truncate(lat.J - 1), out)


def jackson_integral(f: LatticeFunction) -> complex:
    """``sum_j w_j f(x_j)`` with ``w_j = (1 - q^2) q^(-2j)``."""
    return csum(f.lattice.weights * f.values)


def l2_inner(f: LatticeFunction, g: LatticeFunction) -> complex:
    """``(f, g) = sum_j w_j f(x_j) conj(g(x_j))``."""
    f._check(g)
    if f is g:
        return complex(math.fsum(f.lattice.weights * np.abs(f.values) ** 2))
    return csum(f.lattice.weights * f.values * np.conj(g.values))


def l2_norm(f: LatticeFunction) -> float:
    return math.sqrt(max(l2_inner(f, f).real, 0.0))


def q_leibniz_defect(u: Callable[[float], complex], v: Callable[[float], complex], x: float, q: float) -> complex:
    """``D(uv)(x) - [(Du)(x) v(x/q) + u(q x) (Dv)(x)]``; zero up to rounding."""
    lhs = jackson_derivative(lambda y: u(y) * v(y), x, q)
    rhs = jackson_derivative(u, x, q) * v(x / q) + u(q * x) * jackson_derivative(v, x, q)
    return lhs - rhs


def wronskian(f: LatticeFunction, g: LatticeFunction, j: int) -> complex:
    """Discrete Wronskian evaluated at ``x = x_{j-1}`` (so ``q^-2 x = x_j``).

    ``x (x/q^2 - 1) [ (Df) g(x) - f(x) (Dg) ]`` with forward differences
    ``(Dh) = (h(x/q^2) - h(x)) / (x/q^2 - x)``.
    """
    f._check(g)
    if not 1 <= j <= f.lattice.J:
        raise IndexOutOfRange(f"Wronskian index {j} outside 1..{f.lattice.J}")
    x0, x1 = f.lattice.points[j - 1], f.lattice.points[j]
    df = (f.values[j] - f.values[j - 1]) / (x1 - x0)
    dg = (g.values[j] - g.values[j - 1]) / (x1 - x0)
    return complex(x0 * (x1 - 1.0) * (df * g.values[j - 1] - f.values[j - 1] * dg))
