"""Capacity of the weak channel.

Because eigenstate letters already achieve the optimum over all quantum
ensembles, the capacity reduces to max_p I(X; X + Z) for a discrete X on
the eigenvalues and Z ~ N(0, sigma^2). That classical problem is solved
with Blahut-Arimoto on a binned output axis.
"""
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize
from scipy.special import ndtr

from . import kernels
from ._accel import thread_cap
from .channel import ChannelSpec, LetterOperator
from .errors import InvalidArgs, InvalidTolerance, NoConvergence
from .needle import WINDOW_SIGMAS, NeedleSpec

LN2 = np.log(2.0)
INITIAL_BINS = 1024
MAX_BINS = 1 << 21
BA_MAX_ITER = 100_000


@dataclass(frozen=True, eq=False)
class CapacityResult:
    input_distribution: np.ndarray
    capacity_bits: float
    upper_bound_bits: float
    iterations: int
    ba_gap_bits: float
    output_bins: int

    @property
    def bound_gap_bits(self):
        return self.upper_bound_bits - self.capacity_bits


def power_budget(op):
    """Largest second moment any input distribution on the eigenvalues can have."""
    return float(np.max(op.eigenvalues**2))


def capacity_upper_bound(ch):
    return 0.5 * float(np.log2(power_budget(ch.operator) / ch.sigma**2 + 1.0))


def transition_matrix(ch, bins):
    """Gaussian bin masses P(bin j | letter i); the end bins absorb the tails."""
    x = ch.operator.eigenvalues
    s = ch.sigma
    edges = np.linspace(x[0] - WINDOW_SIGMAS * s, x[-1] + WINDOW_SIGMAS * s, bins + 1)
    z = (edges[None, :] - x[:, None]) / s
    z[:, 0] = -np.inf
    z[:, -1] = np.inf
    lo, hi = z[:, :-1], z[:, 1:]
    # evaluate right-of-mean bins through the upper tail to keep precision
    upper = lo > 0
    mass = np.where(upper, ndtr(-lo) - ndtr(-hi), ndtr(hi) - ndtr(lo))
    mass = np.clip(mass, 0.0, None)
    return mass / mass.sum(axis=1, keepdims=True)


def _ba(trans, tol_bits, p0, strict=True, max_iter=BA_MAX_ITER):
    p, it, mi, gap = kernels.blahut_arimoto(trans, p0, tol_bits * LN2, max_iter)
    if it > max_iter and strict:
        raise NoConvergence(
            f"Blahut-Arimoto hit the {max_iter}-iteration cap (gap {gap / LN2:.3e} bits)"
        )
    return p, it, mi / LN2, gap / LN2


def blahut_arimoto_capacity(ch, tol=1e-6, strict=True, max_iter=BA_MAX_ITER):
    """Capacity (bits) of the weak channel ``ch``.

    The output axis is cut into bins over [x_1 - 8 sigma, x_d + 8 sigma],
    starting at 1024 and doubling until the capacity moves by less than
    tol / 10. Each Blahut-Arimoto run stops once the optimality bracket
    max_i D_i - sum_i p_i D_i drops below tol / 100; the first run starts
    from the uniform distribution and each refinement from the previous
    optimum.

    With ``strict=False`` a run that hits the iteration cap returns the
    mutual information reached so far (a lower bound) instead of raising.
    """
    if not np.isfinite(tol) or tol <= 0:
        raise InvalidTolerance(f"tolerance must be positive and finite, got {tol!r}")
    bound = capacity_upper_bound(ch)
    inner = tol / 100.0
    bins = INITIAL_BINS
    prev = None
    p = np.full(ch.dim, 1.0 / ch.dim)
    while True:
        p, it, cap, gap = _ba(transition_matrix(ch, bins), inner, p, strict, max_iter)
        if prev is not None and abs(cap - prev) < tol / 10.0:
            break
        if bins * 2 > MAX_BINS:
            raise NoConvergence(
                f"output discretisation did not settle by {bins} bins "
                f"(last change {abs(cap - prev):.3e} bits)"
            )
        prev = cap
        bins *= 2
    return CapacityResult(
        input_distribution=p,
        capacity_bits=float(max(cap, 0.0)),
        upper_bound_bits=bound,
        iterations=int(it),
        ba_gap_bits=float(max(gap, 0.0)),
        output_bins=bins,
    )


def _placement(u, radius):
    """Strictly increasing eigenvalues in [-radius, radius] from d + 1 logits."""
    g = np.exp(u - u.max())
    g = g / g.sum()
    return -radius + 2.0 * radius * np.cumsum(g)[:-1]


def optimize_eigenvalue_placement(d, power, needle, restarts=4, rng=None, tol=1e-6,
                                  search_tol=1e-4, maxfev=120, search_iter=2000):
    """Heuristic search for the eigenvalues maximising capacity under max x_i^2 <= power.

    Runs Nelder-Mead from the evenly spaced placement and from ``restarts``
    random starts; the best candidate is re-scored at ``tol``. No global
    optimality guarantee.
    """
    if int(d) != d or d < 1:
        raise InvalidArgs(f"d must be a positive integer, got {d!r}")
    if not np.isfinite(power) or power <= 0:
        raise InvalidArgs(f"power must be positive, got {power!r}")
    if int(restarts) != restarts or restarts < 0:
        raise InvalidArgs(f"restarts must be a nonnegative integer, got {restarts!r}")
    needle = needle if isinstance(needle, NeedleSpec) else NeedleSpec(needle)
    rng = np.random.default_rng(0) if rng is None else rng
    radius = float(np.sqrt(power))
    d = int(d)

    def score(x, t, strict=True, max_iter=BA_MAX_ITER):
        return blahut_arimoto_capacity(ChannelSpec(LetterOperator(x), needle), t, strict, max_iter)

    if d == 1:
        op = LetterOperator([0.0])
        return op, score(op.eigenvalues, tol)

    grid = np.linspace(-radius, radius, d)
    candidates = [grid]
    starts = [rng.standard_normal(d + 1) for _ in range(int(restarts))]

    def local(u0):
        def objective(u):
            x = _placement(u, radius)
            if np.any(np.diff(x) <= 0):
                return 0.0
            return -score(x, search_tol, False, search_iter).capacity_bits

        res = minimize(objective, u0, method="Nelder-Mead",
                       options={"maxfev": maxfev, "xatol": 1e-4, "fatol": search_tol})
        return _placement(res.x, radius)

    with ThreadPoolExecutor(max_workers=thread_cap()) as pool:
        candidates.extend(pool.map(local, starts))

    best = None
    for x in candidates:
        if np.any(np.diff(x) <= 0):
            continue
        res = score(x, tol)
        key = (-res.capacity_bits, tuple(x))
        if best is None or key < best[0]:
            best = (key, x, res)
    _, x, res = best
    return LetterOperator(x), res
