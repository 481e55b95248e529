"""Small Hermitian linear algebra: density-matrix validation, a cyclic
Jacobi eigensolver and von Neumann entropy (bits)."""
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import InvalidArgs, NoConvergence, NotHermitian, NotPSD, TraceNotOne

HERMITIAN_TOL = 1e-10
TRACE_TOL = 1e-10
PSD_TOL = 1e-10
JACOBI_TOL = 1e-12
JACOBI_MAX_SWEEPS = 100


def as_matrix(m):
    a = np.asarray(m, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
        raise InvalidArgs(f"matrix must be square and non-empty, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise InvalidArgs("matrix entries must be finite")
    return a


def _check_hermitian(a):
    resid = float(np.max(np.abs(a - a.conj().T)))
    if resid > HERMITIAN_TOL:
        raise NotHermitian(f"matrix is not Hermitian: max|M - M^dagger| = {resid:.3e} > {HERMITIAN_TOL:g}")


@dataclass(frozen=True, eq=False)
class Spectrum:
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    sweeps: int = 0


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Validated d x d density matrix in the letter operator's eigenbasis."""

    matrix: np.ndarray

    def __post_init__(self):
        a = as_matrix(self.matrix)
        _check_hermitian(a)
        tr = np.trace(a).real
        if abs(tr - 1.0) > TRACE_TOL:
            raise TraceNotOne(f"trace must be 1: |tr - 1| = {abs(tr - 1.0):.3e} > {TRACE_TOL:g}")
        lo = hermitian_eig(a).eigenvalues[0]
        if lo < -PSD_TOL:
            raise NotPSD(f"matrix is not positive semidefinite: minimum eigenvalue {lo:.3e} < -{PSD_TOL:g}")
        a.setflags(write=False)
        object.__setattr__(self, "matrix", a)

    @property
    def dim(self):
        return self.matrix.shape[0]

    @classmethod
    def pure(cls, psi):
        psi = np.asarray(psi, dtype=np.complex128)
        psi = psi / np.linalg.norm(psi)
        return cls(np.outer(psi, psi.conj()))

    @classmethod
    def diagonal(cls, probs):
        return cls(np.diag(np.asarray(probs, dtype=np.complex128)))

    @classmethod
    def basis(cls, d, i):
        e = np.zeros(d)
        e[i] = 1.0
        return cls.pure(e)


def validate_density(m):
    if isinstance(m, DensityMatrix):
        return m
    return DensityMatrix(m)


def hermitian_eig(m):
    """Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.

    Eigenvalues come back ascending. Each eigenvector column is rotated so
    its largest-magnitude entry is real and positive, which makes the
    output deterministic for a given input.
    """
    a = as_matrix(m)
    _check_hermitian(a)
    a = 0.5 * (a + a.conj().T)
    w, v, sweeps, off = kernels.jacobi_eigh(a, JACOBI_TOL, JACOBI_MAX_SWEEPS)
    if off > JACOBI_TOL:
        raise NoConvergence(
            f"Jacobi eigensolver hit the {JACOBI_MAX_SWEEPS}-sweep cap "
            f"(relative off-diagonal norm {off:.3e})"
        )
    order = np.argsort(w, kind="stable")
    w = w[order]
    v = v[:, order]
    for k in range(v.shape[1]):
        col = v[:, k]
        j = int(np.argmax(np.abs(col) > np.abs(col).max() * (1 - 1e-12)))
        v[:, k] = col * (abs(col[j]) / col[j])
    return Spectrum(w, v, int(sweeps))


def _xlog2x(p):
    p = np.asarray(p, dtype=np.float64)
    out = np.zeros_like(p)
    pos = p > 0
    out[pos] = p[pos] * np.log2(p[pos])
    return out


def shannon_entropy(probs):
    return float(-np.sum(_xlog2x(probs)))


def von_neumann_entropy(rho):
    rho = validate_density(rho)
    lam = hermitian_eig(rho.matrix).eigenvalues
    lam = np.where((lam < 0) & (lam >= -PSD_TOL), 0.0, lam)
    return max(0.0, float(-np.sum(_xlog2x(lam))))


def random_density(d, rng, rank=None):
    """Ginibre-sampled density matrix ``G G^dagger / tr(G G^dagger)``."""
    k = d if rank is None else rank
    g = rng.standard_normal((d, k)) + 1j * rng.standard_normal((d, k))
    r = g @ g.conj().T
    r = 0.5 * (r + r.conj().T)
    return DensityMatrix(r / np.trace(r).real)
