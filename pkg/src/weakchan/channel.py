"""The weak Gaussian channel.

Every state is written in the letter operator's eigenbasis, so the
needle coupling never has to be built as a unitary: letter ``i`` shifts
the needle by ``x_i``, the reading ``Y`` is a Gaussian mixture over the
diagonal of ``rho``, and the non-selective map damps coherence
``rho_ij`` by ``exp(-(x_i - x_j)^2 / (8 sigma^2))``.
"""
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, InvalidSpec, NumericalError, ZeroDensity
from .linalg import DensityMatrix, validate_density
from .needle import GaussianMixture1D, NeedleSpec, mixture_entropy, mixture_sample

MI_NEG_SLACK = 1e-9
ZERO_DENSITY = 1e-300


@dataclass(frozen=True, eq=False)
class LetterOperator:
    eigenvalues: np.ndarray

    def __post_init__(self):
        x = np.atleast_1d(np.asarray(self.eigenvalues, dtype=np.float64)).copy()
        if x.ndim != 1 or x.size < 1:
            raise InvalidSpec("letter operator needs at least one eigenvalue")
        if not np.all(np.isfinite(x)):
            raise InvalidSpec("eigenvalues must be finite")
        if np.any(np.diff(x) <= 0):
            raise InvalidSpec(
                f"letter operator requires strictly increasing eigenvalues, got {x.tolist()}"
            )
        x.setflags(write=False)
        object.__setattr__(self, "eigenvalues", x)

    @property
    def dim(self):
        return self.eigenvalues.size

    def min_gap(self):
        return float(np.min(np.diff(self.eigenvalues))) if self.dim > 1 else float("inf")

    def eigenstate(self, i):
        return DensityMatrix.basis(self.dim, i)


@dataclass(frozen=True, eq=False)
class LetterEnsemble:
    probs: np.ndarray
    states: tuple

    def __post_init__(self):
        p = np.atleast_1d(np.asarray(self.probs, dtype=np.float64)).copy()
        states = tuple(validate_density(s) for s in self.states)
        if p.ndim != 1 or p.size != len(states) or p.size < 1:
            raise InvalidSpec("ensemble needs one probability per state")
        if np.any(p < 0) or abs(p.sum() - 1.0) > 1e-10:
            raise InvalidSpec(f"ensemble probabilities must be nonnegative and sum to 1 (sum {p.sum():.15g})")
        dims = {s.dim for s in states}
        if len(dims) != 1:
            raise DimensionMismatch(f"ensemble states have mixed dimensions {sorted(dims)}")
        p.setflags(write=False)
        object.__setattr__(self, "probs", p)
        object.__setattr__(self, "states", states)

    @property
    def dim(self):
        return self.states[0].dim

    def average(self):
        rho = sum(pi * s.matrix for pi, s in zip(self.probs, self.states))
        return DensityMatrix(rho)

    @classmethod
    def eigenstates(cls, probs):
        probs = np.asarray(probs, dtype=np.float64)
        d = probs.size
        return cls(probs, tuple(DensityMatrix.basis(d, i) for i in range(d)))


@dataclass(frozen=True, eq=False)
class ChannelSpec:
    operator: LetterOperator
    needle: NeedleSpec

    @classmethod
    def from_values(cls, eigenvalues, sigma):
        return cls(LetterOperator(eigenvalues), NeedleSpec(sigma))

    @property
    def sigma(self):
        return self.needle.sigma

    @property
    def dim(self):
        return self.operator.dim

    def weakness_ratio(self):
        """min eigenvalue gap / sigma; small values mean a weak measurement."""
        return self.operator.min_gap() / self.sigma


def _check_dim(rho, ch):
    if rho.dim != ch.dim:
        raise DimensionMismatch(f"state dimension {rho.dim} != operator dimension {ch.dim}")


def output_distribution(rho, ch):
    """Law of the needle reading: weights rho_ii at means x_i."""
    rho = validate_density(rho)
    _check_dim(rho, ch)
    w = np.clip(np.diag(rho.matrix).real, 0.0, None)
    w = w / w.sum()
    return GaussianMixture1D(w, ch.operator.eigenvalues, ch.sigma)


def reading_entropy(rho, ch):
    return mixture_entropy(output_distribution(rho, ch))


def weak_mutual_information(ens, ch):
    """I(X:Y) = H(Y | average state) - sum_i p_i H(Y | rho_i), in bits."""
    if ens.dim != ch.dim:
        raise DimensionMismatch(f"ensemble dimension {ens.dim} != operator dimension {ch.dim}")
    h_avg = reading_entropy(ens.average(), ch)
    h_cond = sum(p * reading_entropy(s, ch) for p, s in zip(ens.probs, ens.states) if p > 0)
    mi = h_avg - h_cond
    if mi < -MI_NEG_SLACK:
        raise NumericalError(f"mutual information came out negative ({mi:.3e} bits)")
    return float(max(mi, 0.0))


def needle_amplitude(y, mean, sigma):
    """phi(y - mean) = (2 pi sigma^2)^(-1/4) exp(-(y - mean)^2 / (4 sigma^2))."""
    return (2.0 * np.pi * sigma * sigma) ** -0.25 * np.exp(-((y - mean) ** 2) / (4.0 * sigma * sigma))


def posterior_state(rho, ch, y):
    """Post-measurement state rho_y and reading density p(y)."""
    rho = validate_density(rho)
    _check_dim(rho, ch)
    x = ch.operator.eigenvalues
    s = ch.sigma
    expo = -((y - x) ** 2) / (4.0 * s * s)
    diag = np.diag(rho.matrix).real
    p_y = float(np.sum(diag * (2.0 * np.pi * s * s) ** -0.5 * np.exp(2.0 * expo)))
    if p_y < ZERO_DENSITY:
        raise ZeroDensity(f"reading density p({y!r}) = {p_y:.3e} is numerically zero")
    # ratios only, so shift the exponents for range safety
    amp = np.exp(expo - expo.max())
    post = rho.matrix * np.outer(amp, amp)
    post = post / np.trace(post).real
    return DensityMatrix(0.5 * (post + post.conj().T)), p_y


def damping_matrix(ch, sigma=None):
    s = ch.sigma if sigma is None else sigma
    x = ch.operator.eigenvalues
    return np.exp(-((x[:, None] - x[None, :]) ** 2) / (8.0 * s * s))


def apply_weak_channel(rho, ch):
    """Non-selective weak measurement: coherences damped, populations kept."""
    rho = validate_density(rho)
    _check_dim(rho, ch)
    return DensityMatrix(rho.matrix * damping_matrix(ch))


def sample_measurement(rho, ch, rng, size=None):
    return mixture_sample(output_distribution(rho, ch), rng, size=size)
