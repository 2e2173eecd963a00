"""Independent reference computations shared by the test modules."""
import numpy as np

from qdisc import lattice


def box_literal(f, q):
    """``D o (x (x/q - 1)) o D`` composed literally from the symmetric Jackson derivative.

    Off-lattice values (only ``f(q^2)``, reached from ``x_0``) are multiplied by
    the vanishing factor ``x/q - 1`` and set to 0.
    """
    values = {0: 0.0, **{j + 1: v for j, v in enumerate(f.values)}}

    def fx(y):
        return values[int(round(np.log(y) / np.log(q**-2))) + 1]

    def inner(y):
        return y * (y / q - 1) * lattice.jackson_derivative(fx, y, q)

    return np.array([lattice.jackson_derivative(inner, x, q) for x in f.lattice.points[:-1]])


def poisson_downward(q, J, tail_J=250):
    """First-order recurrence for the delta-Poisson solution run down from 0 far out."""
    x = np.array([q ** (-2.0 * j) for j in range(tail_J + 1)])
    psi = np.zeros(tail_J + 1)
    for j in range(tail_J - 1, -1, -1):
        psi[j] = psi[j + 1] - (1 / q**2 - 1) ** 2 * q**4 / x[j] / (1 - q * q / x[j])
    return psi[: J + 1]


def laplacian_matrix(q, J):
    """Dense matrix of the radial Laplacian on ``x_0..x_J`` with ``f(x_{J+1}) = 0``."""
    x = np.array([q ** (-2.0 * j) for j in range(J + 2)])
    s = (1 / q - q) ** 2
    A = np.zeros((J + 1, J + 1))
    for j in range(J + 1):
        up = (x[j + 1] - 1) / (s * x[j])
        down = (x[j] - 1) / (s * x[j])
        A[j, j] = -up - down
        if j + 1 <= J:
            A[j, j + 1] = up
        if j >= 1:
            A[j, j - 1] = down
    return A, x[: J + 1]


def dense_green(q, J, l, lam):
    """``(A - lam)^-1 diag(1/w)``: kernel of the truncated resolvent against ``d_{q^2} xi``."""
    A, x = laplacian_matrix(q, J)
    w = (1 - q * q) * x
    return np.linalg.solve(A - lam * np.eye(J + 1), np.diag(1 / w).astype(complex))
