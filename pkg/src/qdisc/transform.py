"""Spectral side of the radial Laplacian: density, forward and inverse transform.

The spectral variable is ``rho`` in ``[0, pi/h]`` with ``l = -1/2 + i rho``.
The forward transform is a finite lattice sum against ``Phi_l``; the inverse
integrates against ``d sigma`` with the composite trapezoid rule.
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .eigen import phi_table
from .errors import PoleOfC, SupportTooWide, ZeroFunction
from .lattice import Lattice, LatticeFunction, apply_radial_laplacian, l2_norm
from .qspecial import DEFAULT_TOL, SeriesTolerance, cfunc, check_q, lambda_eig

__all__ = [
    "SpectralGrid",
    "SpectralFunction",
    "spectral_density",
    "sigma_total",
    "forward",
    "inverse",
    "plancherel_defect",
    "diagonalization_defect",
    "spectrum_segment",
]


def spectral_density(rho: float, q: float, tol: SeriesTolerance | None = None) -> float:
    """Density of ``d sigma`` with respect to ``d rho``.

    ``(1/2pi) * h/(1-q^2) / (c(-1/2 + i rho) c(-1/2 - i rho))``; raises PoleOfC
    at the end points, where ``c`` has poles and the density vanishes.
    """
    q = check_q(q)
    h = -2.0 * math.log(q)
    pair = cfunc(complex(-0.5, rho), q, tol) * cfunc(complex(-0.5, -rho), q, tol)
    return (h / (1 - q * q) / (2 * math.pi) / pair).real


@dataclass(frozen=True)
class SpectralGrid:
    """Uniform nodes ``rho_k = k pi/(h N)``, ``k = 0..N``, with trapezoid weights."""

    q: float
    N: int
    tol: SeriesTolerance = DEFAULT_TOL

    def __post_init__(self):
        object.__setattr__(self, "q", check_q(self.q))
        if int(self.N) != self.N or self.N < 1:
            raise ValueError(f"N must be a positive integer, got {self.N!r}")
        object.__setattr__(self, "N", int(self.N))

    @property
    def h(self) -> float:
        return -2.0 * math.log(self.q)

    @property
    def rho_max(self) -> float:
        return math.pi / self.h

    @cached_property
    def nodes(self) -> np.ndarray:
        rho = np.linspace(0.0, self.rho_max, self.N + 1)
        rho.flags.writeable = False
        return rho

    @cached_property
    def weights(self) -> np.ndarray:
        w = np.full(self.N + 1, self.rho_max / self.N)
        w[0] *= 0.5
        w[-1] *= 0.5
        w.flags.writeable = False
        return w

    @cached_property
    def spectral_params(self) -> np.ndarray:
        return -0.5 + 1j * self.nodes

    @cached_property
    def eigenvalues(self) -> np.ndarray:
        return np.array([lambda_eig(l, self.q) for l in self.spectral_params])

    @cached_property
    def density(self) -> np.ndarray:
        """Density at every node; nodes sitting on a pole of ``c`` contribute 0."""
        out = np.empty(self.N + 1)
        for k, rho in enumerate(self.nodes):
            try:
                out[k] = spectral_density(rho, self.q, self.tol)
            except PoleOfC:
                out[k] = 0.0
        out.flags.writeable = False
        return out

    def phi(self, lattice: Lattice) -> np.ndarray:
        """``Phi_{-1/2 + i rho_k}(x_j)`` with shape ``(J + 1, N + 1)``."""
        return phi_table(lattice, self.spectral_params)

    def density_rows(self) -> list[tuple[int, float, float]]:
        return [(k, float(r), float(d)) for k, (r, d) in enumerate(zip(self.nodes, self.density))]


class SpectralFunction:
    """Values ``fh(rho_k)`` on a :class:`SpectralGrid`; immutable."""

    __slots__ = ("grid", "values")

    def __init__(self, grid: SpectralGrid, values):
        values = np.array(values, dtype=complex)
        if values.shape != (grid.N + 1,):
            raise ValueError(f"expected {grid.N + 1} values, got shape {values.shape}")
        values.flags.writeable = False
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "values", values)

    def __setattr__(self, name, value):
        raise AttributeError("SpectralFunction is immutable")

    def __repr__(self):
        return f"SpectralFunction(q={self.grid.q}, N={self.grid.N})"

    def __len__(self):
        return len(self.values)

    def rows(self) -> list[tuple[int, float, float, float]]:
        return [(k, float(r), float(v.real), float(v.imag))
                for k, (r, v) in enumerate(zip(self.grid.nodes, self.values))]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["k", "rho", "re", "im"])
        for k, rho, re, im in self.rows():
            w.writerow([k, repr(rho), repr(re), repr(im)])
        return buf.getvalue()

    def to_json(self) -> str:
        return json.dumps([{"k": k, "rho": rho, "re": re, "im": im} for k, rho, re, im in self.rows()])

    @classmethod
    def from_records(cls, records, q: float, tol: SeriesTolerance = DEFAULT_TOL) -> "SpectralFunction":
        records = list(records)
        if not records:
            raise ValueError("no records")
        N = max(int(r[0]) for r in records)
        grid = SpectralGrid(q, N, tol)
        v = np.zeros(N + 1, dtype=complex)
        for k, rho, re, im in records:
            k = int(k)
            if k < 0:
                raise ValueError(f"negative node index {k}")
            if rho is not None and abs(float(rho) - grid.nodes[k]) > 1e-12 * max(1.0, grid.rho_max):
                raise ValueError(f"row k={k}: rho={rho} does not match the uniform grid")
            v[k] = complex(float(re), float(im))
        return cls(grid, v)

    @classmethod
    def from_json(cls, text: str, q: float, tol: SeriesTolerance = DEFAULT_TOL) -> "SpectralFunction":
        data = json.loads(text)
        return cls.from_records(((d["k"], d.get("rho"), d["re"], d.get("im", 0.0)) for d in data), q, tol)

    @classmethod
    def from_csv(cls, text: str, q: float, tol: SeriesTolerance = DEFAULT_TOL) -> "SpectralFunction":
        reader = csv.DictReader(io.StringIO(text))
        return cls.from_records(((r["k"], r.get("rho") or None, r["re"], r.get("im") or 0.0) for r in reader), q, tol)


def sigma_total(grid: SpectralGrid) -> float:
    """Trapezoid approximation of the total mass of ``d sigma``."""
    return math.fsum(grid.weights * grid.density)


def forward(f: LatticeFunction, grid: SpectralGrid) -> SpectralFunction:
    """``fh(rho_k) = sum_j w_j Phi_{-1/2 + i rho_k}(x_j) f(x_j)`` over the support of ``f``."""
    if f.lattice.q != grid.q:
        raise ValueError(f"lattice q={f.lattice.q} differs from grid q={grid.q}")
    support = f.support
    out = np.zeros(grid.N + 1, dtype=complex)
    if len(support) == 0:
        return SpectralFunction(grid, out)
    lat = f.lattice.truncate(int(support.max()))
    phi = grid.phi(lat)
    w = lat.weights
    for j in support:
        out = out + (w[j] * f.values[j]) * phi[j]
    return SpectralFunction(grid, out)


def inverse(fh: SpectralFunction, lattice: Lattice) -> LatticeFunction:
    """``f(x_j) = sum_k t_k sigma'(rho_k) Phi_{-1/2 + i rho_k}(x_j) fh(rho_k)``."""
    grid = fh.grid
    if lattice.q != grid.q:
        raise ValueError(f"lattice q={lattice.q} differs from grid q={grid.q}")
    coeff = grid.weights * grid.density * fh.values
    phi = grid.phi(lattice)
    return LatticeFunction(lattice, (phi * coeff).sum(axis=1))


def plancherel_defect(f: LatticeFunction, grid: SpectralGrid) -> float:
    """``| int |fh|^2 d sigma - ||f||^2 | / ||f||^2``."""
    norm2 = l2_norm(f) ** 2
    if norm2 == 0:
        raise ZeroFunction("Plancherel defect is undefined for f = 0")
    fh = forward(f, grid)
    spectral = math.fsum(grid.weights * grid.density * np.abs(fh.values) ** 2)
    return abs(spectral - norm2) / norm2


def diagonalization_defect(f: LatticeFunction, grid: SpectralGrid, margin: int = 5) -> float:
    """``max_k |forward(Box f)(rho_k) - lambda(-1/2 + i rho_k) forward(f)(rho_k)|``.

    ``f`` must be supported in ``1 <= j <= J - margin``.
    """
    support = f.support
    if len(support) == 0:
        return 0.0
    if support.min() < 1 or support.max() > f.lattice.J - margin:
        raise SupportTooWide(f"support {support.min()}..{support.max()} not inside 1..{f.lattice.J - margin}")
    box_f = apply_radial_laplacian(f)
    lhs = forward(box_f, grid).values
    rhs = grid.eigenvalues * forward(f, grid).values
    return float(np.max(np.abs(lhs - rhs)))


def spectrum_segment(q: float) -> tuple[float, float]:
    """End points ``(-1/(1-q)^2, -1/(1+q)^2)`` of the spectrum."""
    q = check_q(q)
    return (-1.0 / (1 - q) ** 2, -1.0 / (1 + q) ** 2)
