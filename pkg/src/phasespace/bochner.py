"""Fourier analysis of functions on Z_d and Bochner-style positivity tests.

Transform conventions:

    fourier:          fhat(x) = (1/d) sum_q omega^(-q x) f(q)
    inverse_fourier:  f(q)    = sum_x omega^(q x) g(x)        (no 1/d)

Two predicates, each paired with an independent oracle in the test suite:

    has_nonneg_fourier(f):          fhat >= 0 everywhere. Equivalent to the
        circulant matrix A[x][q] = f(x - q) being positive semidefinite
        (its eigenvalues are d * fhat up to ordering).
    has_constant_modulus_fourier(f): |fhat| is constant. Equivalent to the
        autocorrelation sum_x conj(f(x)) f(x - q) vanishing for every q != 0.

Thresholds are applied to values rescaled so that sum |f|^2 = 1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .qudit import DenseOperator, omega_table
from .zmod import PrimeDim


@dataclass(frozen=True, eq=False)
class CyclicFunction:
    """A complex-valued function on Z_d, stored as values[q]."""

    dim: PrimeDim
    values: np.ndarray

    def __post_init__(self) -> None:
        values = np.array(self.values, dtype=complex)
        if values.shape != (self.dim.d,):
            raise ValueError(f"function must have shape ({self.dim.d},)")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)


def fourier(f: CyclicFunction) -> CyclicFunction:
    """fhat(x) = (1/d) sum_q omega^(-q x) f(q)."""
    d = f.dim.d
    xq = np.outer(np.arange(d), np.arange(d))
    kernel = omega_table(d)[(-xq) % d]
    return CyclicFunction(f.dim, kernel @ f.values / d)


def inverse_fourier(g: CyclicFunction) -> CyclicFunction:
    """f(q) = sum_x omega^(q x) g(x); exact inverse of fourier."""
    d = g.dim.d
    qx = np.outer(np.arange(d), np.arange(d))
    kernel = omega_table(d)[qx % d]
    return CyclicFunction(g.dim, kernel @ g.values)


def circulant(f: CyclicFunction) -> DenseOperator:
    """The matrix A[x][q] = f(x - q)."""
    d = f.dim.d
    x = np.arange(d)[:, None]
    q = np.arange(d)[None, :]
    return DenseOperator(f.dim, f.values[(x - q) % d])


def autocorrelation(f: CyclicFunction) -> np.ndarray:
    """a(q) = sum_x conj(f(x)) f(x - q)."""
    d = f.dim.d
    x = np.arange(d)[:, None]
    q = np.arange(d)[None, :]
    return np.einsum("x,xq->q", f.values.conj(), f.values[(x - q) % d])


def _unit_scaled(values: np.ndarray) -> np.ndarray | None:
    norm = np.linalg.norm(values)
    if norm == 0.0:
        return None
    return values / norm


def has_nonneg_fourier(f: CyclicFunction, tol: float = 1e-9) -> bool:
    """True iff the transform of f is (real and) nonnegative within tol.

    Requires the Hermitian symmetry f(-q) = conj(f(q)), which makes the
    transform real; otherwise the question is ill-posed and a ValueError
    is raised.
    """
    values = _unit_scaled(f.values)
    if values is None:
        return True
    d = f.dim.d
    sym_gap = np.max(np.abs(values[(-np.arange(d)) % d].conj() - values))
    if sym_gap > 1e-12:
        raise ValueError("transform not real: f lacks the symmetry f(-q) = conj(f(q))")
    fhat = fourier(CyclicFunction(f.dim, values)).values
    return bool(fhat.real.min() >= -tol)


def has_constant_modulus_fourier(f: CyclicFunction, tol: float = 1e-9) -> bool:
    """True iff sum_x conj(f(x)) f(x - q) vanishes (within tol) for all q != 0,
    which holds exactly when |fhat| is constant."""
    values = _unit_scaled(f.values)
    if values is None:
        return True
    a = autocorrelation(CyclicFunction(f.dim, values))
    return bool(np.max(np.abs(a[1:])) <= tol)
