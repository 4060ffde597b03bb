"""The metaplectic representation of SL(2, Z_d) and stabilizer states.

metaplectic(S) returns the unitary mu(S) satisfying the exact conjugation
identity

    mu(S) w(v) mu(S)^dagger = w(S v)   for every phase point v,

built as a product over a short generator word for S. Each generator image
is chosen so that the identity holds with global phase exactly 1:

    fourier [[0,-1],[1,0]]  ->  inverse DFT, entries d^(-1/2) omega^(-jk)
    chirp   [[1,0],[c,1]]   ->  DFT diag(omega^(-2^-1 c k^2)) DFT^dagger
    scale   [[a,0],[0,a^-1]] -> permutation |k> -> |a^-1 k>

The overall phase of the product is then fixed deterministically by making
the first nonzero entry (row-major scan) real and positive, so mu is a
projective representation: mu(S) mu(T) equals mu(S T) up to a phase.

Stabilizer states of a single qudit of odd prime dimension are the d
position basis states together with the d^2 quadratic-phase states

    psi(q) = d^(-1/2) omega^(theta q^2 + x q),

d(d+1) states in total (an orbit of |0> under the Clifford group; the test
suite certifies this by brute-force orbit closure).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache, reduce

import numpy as np

from .qudit import DenseOperator, StateVector, omega_table, weyl
from .zmod import (
    Generator,
    ModScalar,
    PhasePoint,
    PrimeDim,
    SymplecticMatrix,
    half,
    sl2_apply,
    sl2_decompose,
)


def _forward_dft(d: int) -> np.ndarray:
    """Entries d^(-1/2) omega^(jk)."""
    jk = np.outer(np.arange(d), np.arange(d))
    return omega_table(d)[jk % d] / np.sqrt(d)


def _generator_unitary(g: Generator) -> np.ndarray:
    d = g.dim.d
    if g.kind == "fourier":
        return _forward_dft(d).conj()
    if g.kind == "chirp":
        h = half(g.dim).value
        k = np.arange(d)
        diag = np.diag(omega_table(d)[(-h * g.param * k * k) % d])
        dft = _forward_dft(d)
        return dft @ diag @ dft.conj().T
    # scale: |k> -> |a^-1 k>
    ainv = pow(g.param, -1, d)
    mat = np.zeros((d, d), dtype=complex)
    k = np.arange(d)
    mat[(ainv * k) % d, k] = 1.0
    return mat


def _fix_phase(mat: np.ndarray) -> np.ndarray:
    """Rescale so the first nonzero entry in row-major order is real positive."""
    flat = mat.ravel()
    idx = int(np.argmax(np.abs(flat) > 1e-9))
    pivot = flat[idx]
    return mat * (abs(pivot) / pivot)


@lru_cache(maxsize=None)
def _metaplectic_mat(S: SymplecticMatrix) -> np.ndarray:
    d = S.dim.d
    word = sl2_decompose(S)
    mat = reduce(lambda m, g: m @ _generator_unitary(g), word, np.eye(d, dtype=complex))
    mat = _fix_phase(mat)
    mat.setflags(write=False)
    return mat


def metaplectic(S: SymplecticMatrix) -> DenseOperator:
    """The unitary mu(S) with mu(S) w(v) mu(S)^dagger = w(S v)."""
    return DenseOperator(S.dim, _metaplectic_mat(S))


def projective_equal(u: DenseOperator, v: DenseOperator, tol: float = 1e-9) -> bool:
    """True iff u = (phase) v, tested as | |tr(u^dagger v)| - d | <= tol."""
    if u.dim != v.dim:
        raise ValueError("operator dimensions differ")
    return bool(abs(abs(np.trace(u.mat.conj().T @ v.mat)) - u.dim.d) <= tol)


@dataclass(frozen=True, eq=False)
class CliffordElement:
    """A Clifford group element w(shift) mu(symp)."""

    shift: PhasePoint
    symp: SymplecticMatrix
    unitary: DenseOperator

    @property
    def dim(self) -> PrimeDim:
        return self.shift.dim


def clifford_element(shift: PhasePoint, symp: SymplecticMatrix) -> CliffordElement:
    if shift.dim != symp.dim:
        raise ValueError("shift and matrix dimensions differ")
    return CliffordElement(shift, symp, weyl(shift) @ metaplectic(symp))


def compose(g: CliffordElement, h: CliffordElement) -> CliffordElement:
    """Group law: (u, S) (v, T) = (u + S v, S T), up to global phase."""
    return clifford_element(g.shift + sl2_apply(g.symp, h.shift), g.symp @ h.symp)


def clifford_apply(g: CliffordElement, psi: StateVector) -> StateVector:
    """Apply the unitary of g; the result is renormalized defensively."""
    if g.dim != psi.dim:
        raise ValueError("element and state dimensions differ")
    return StateVector.normalized(psi.dim, g.unitary.apply(psi))


# ---------------------------------------------------------------------------
# Stabilizer states
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class QuadraticStabilizer:
    """Parameters (theta, x) of psi(q) = d^(-1/2) omega^(theta q^2 + x q)."""

    theta: ModScalar
    x: ModScalar

    def __post_init__(self) -> None:
        if self.theta.dim != self.x.dim:
            raise ValueError("parameters live in different residue rings")

    @property
    def dim(self) -> PrimeDim:
        return self.theta.dim


def stabilizer_from_quadratic(s: QuadraticStabilizer) -> StateVector:
    d = s.dim.d
    q = np.arange(d)
    exps = (s.theta.value * q * q + s.x.value * q) % d
    return StateVector(s.dim, omega_table(d)[exps] / np.sqrt(d))


def enumerate_stabilizers(dim: PrimeDim) -> list[StateVector]:
    """All d(d+1) stabilizer states: basis states, then quadratic-phase states
    in lexicographic (theta, x) order."""
    states = [StateVector.basis(dim, k) for k in range(dim.d)]
    for theta in range(dim.d):
        for x in range(dim.d):
            s = QuadraticStabilizer(dim.scalar(theta), dim.scalar(x))
            states.append(stabilizer_from_quadratic(s))
    return states


def stabilizer_descriptors(dim: PrimeDim) -> list[dict]:
    """Descriptors aligned index-by-index with enumerate_stabilizers."""
    descs: list[dict] = [{"kind": "basis", "k": k} for k in range(dim.d)]
    for theta in range(dim.d):
        for x in range(dim.d):
            descs.append({"kind": "quadratic", "theta": theta, "x": x})
    return descs


@lru_cache(maxsize=None)
def _stabilizer_stack(d: int) -> np.ndarray:
    stack = np.stack([s.amp for s in enumerate_stabilizers(PrimeDim(d))])
    stack.setflags(write=False)
    return stack


def is_stabilizer(psi: StateVector, tol: float = 1e-9) -> bool:
    """True iff psi matches some stabilizer state up to phase within tol."""
    overlaps = np.abs(_stabilizer_stack(psi.dim.d).conj() @ psi.amp)
    return bool(overlaps.max() >= 1.0 - tol)
