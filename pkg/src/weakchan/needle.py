"""One-dimensional Gaussian needle and shared-sigma Gaussian mixtures.

Entropies are differential entropies in bits, integrated with composite
Gauss-Legendre quadrature.
"""
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import InvalidArgs, InvalidSpec, QuadratureNoConvergence

# Integration reaches this many sigmas past the outermost component; the
# Gaussian tail beyond 8 sigma carries < 1e-13 of the mass.
WINDOW_SIGMAS = 8.0
GL_ORDER = 16
ENTROPY_TOL = 1e-9
MAX_NODES = 1 << 20

_GL_X, _GL_W = np.polynomial.legendre.leggauss(GL_ORDER)


@dataclass(frozen=True)
class NeedleSpec:
    sigma: float

    def __post_init__(self):
        s = float(self.sigma)
        if not np.isfinite(s) or s <= 0:
            raise InvalidSpec(f"needle sigma must be positive and finite, got {self.sigma!r}")
        object.__setattr__(self, "sigma", s)


@dataclass(frozen=True, eq=False)
class GaussianMixture1D:
    weights: np.ndarray
    means: np.ndarray
    sigma: float

    def __post_init__(self):
        w = np.atleast_1d(np.asarray(self.weights, dtype=np.float64)).copy()
        mu = np.atleast_1d(np.asarray(self.means, dtype=np.float64)).copy()
        if w.ndim != 1 or w.shape != mu.shape or w.size < 1:
            raise InvalidSpec("weights and means must be equal-length, non-empty vectors")
        if not (np.all(np.isfinite(w)) and np.all(np.isfinite(mu))):
            raise InvalidSpec("weights and means must be finite")
        if np.any(w < 0):
            raise InvalidSpec("mixture weights must be nonnegative")
        if abs(w.sum() - 1.0) > 1e-10:
            raise InvalidSpec(f"mixture weights must sum to 1 (got {w.sum():.15g})")
        sigma = NeedleSpec(self.sigma).sigma
        w.setflags(write=False)
        mu.setflags(write=False)
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "means", mu)
        object.__setattr__(self, "sigma", sigma)

    @classmethod
    def single(cls, mean, sigma):
        return cls(np.ones(1), np.array([float(mean)]), sigma)

    def active(self):
        """(weights, means) with zero-weight components dropped."""
        keep = self.weights > 0
        return self.weights[keep], self.means[keep]


def mixture_logpdf(gm, y):
    w, mu = gm.active()
    y = np.atleast_1d(np.asarray(y, dtype=np.float64))
    return kernels.mixture_logpdf(y, np.log(w), mu, gm.sigma)


def mixture_pdf(gm, y):
    """Mixture density at ``y`` (scalar in, scalar out; arrays map elementwise)."""
    scalar = np.ndim(y) == 0
    f = np.exp(mixture_logpdf(gm, y))
    return float(f[0]) if scalar else f.reshape(np.shape(y))


def mixture_sample(gm, rng, size=None):
    """Draw from the mixture: pick component i w.p. w_i, then add N(0, sigma^2).

    ``rng`` is a ``numpy.random.Generator``; with ``size=None`` a float is
    returned.
    """
    n = 1 if size is None else int(size)
    comp = rng.choice(gm.weights.size, size=n, p=gm.weights)
    y = gm.means[comp] + gm.sigma * rng.standard_normal(n)
    return float(y[0]) if size is None else y


def integration_intervals(gm):
    """Merged [mu - 8 sigma, mu + 8 sigma] windows around active components."""
    _, mu = gm.active()
    half = WINDOW_SIGMAS * gm.sigma
    spans = []
    for m in np.sort(mu):
        lo, hi = m - half, m + half
        if spans and lo <= spans[-1][1]:
            spans[-1][1] = max(spans[-1][1], hi)
        else:
            spans.append([lo, hi])
    return [(float(a), float(b)) for a, b in spans]


def gauss_legendre_grid(intervals, panel_width):
    """Composite Gauss-Legendre nodes/weights with panels no wider than ``panel_width``."""
    nodes, weights = [], []
    for a, b in intervals:
        panels = max(1, int(np.ceil((b - a) / panel_width - 1e-9)))
        edges = np.linspace(a, b, panels + 1)
        half = 0.5 * np.diff(edges)
        mid = 0.5 * (edges[1:] + edges[:-1])
        nodes.append((mid[:, None] + half[:, None] * _GL_X[None, :]).ravel())
        weights.append((half[:, None] * _GL_W[None, :]).ravel())
    return np.concatenate(nodes), np.concatenate(weights)


def _entropy_on_grid(gm, y, wq):
    logf = mixture_logpdf(gm, y)
    f = np.exp(logf)
    return float(-np.sum(wq * f * logf)) / np.log(2.0)


def mixture_entropy(gm, tol=ENTROPY_TOL, max_nodes=MAX_NODES):
    """Differential entropy -int f log2 f of the mixture, in bits.

    Panels start one sigma wide and are halved until two successive
    estimates agree within ``tol``.
    """
    intervals = integration_intervals(gm)
    width = gm.sigma
    estimates = []
    while True:
        y, wq = gauss_legendre_grid(intervals, width)
        if y.size > max_nodes:
            last = estimates[-2:] if estimates else [None]
            raise QuadratureNoConvergence(
                f"mixture entropy quadrature would exceed {max_nodes} nodes; "
                f"last estimates {last}",
                previous=last[0],
                last=last[-1],
            )
        estimates.append(_entropy_on_grid(gm, y, wq))
        if len(estimates) > 1 and abs(estimates[-1] - estimates[-2]) < tol:
            return estimates[-1]
        width *= 0.5


def mixture_mass(gm):
    """Integral of the density over the quadrature window (should be ~1)."""
    y, wq = gauss_legendre_grid(integration_intervals(gm), gm.sigma / 2)
    return float(np.sum(wq * mixture_pdf(gm, y)))


def gaussian_entropy(sigma):
    """Closed form 0.5 * log2(2 pi e sigma^2)."""
    if sigma <= 0:
        raise InvalidArgs("sigma must be positive")
    return 0.5 * np.log2(2.0 * np.pi * np.e * sigma * sigma)
