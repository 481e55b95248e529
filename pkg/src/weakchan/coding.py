"""Random-coding experiment over the weak channel.

Codewords are i.i.d. eigenvalue strings (pure eigenstate letters), each
symbol is read out by its own needle, and Bob decodes by minimum
Euclidean distance, which is maximum likelihood for i.i.d. Gaussian noise.
"""
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import kernels
from ._accel import thread_cap
from .channel import ChannelSpec
from .errors import InvalidArgs, InvalidDimension, LengthMismatch, RateTooLowForTwoCodewords

DEFAULT_SEED = 20160405


@dataclass(frozen=True, eq=False)
class Codebook:
    codewords: np.ndarray
    n: int
    rate_bits: float

    @property
    def size(self):
        return self.codewords.shape[0]


@dataclass(frozen=True, eq=False)
class CodingExperimentConfig:
    channel: ChannelSpec
    input_distribution: np.ndarray
    n: int
    rate_bits: float
    codebooks: int = 20
    trials_per_codebook: int = 500
    seed: int = DEFAULT_SEED

    def __post_init__(self):
        p = _check_probs(self.input_distribution, self.channel.dim)
        object.__setattr__(self, "input_distribution", p)
        for name in ("n", "codebooks", "trials_per_codebook"):
            v = getattr(self, name)
            if int(v) != v or v < 1:
                raise InvalidArgs(f"{name} must be a positive integer, got {v!r}")
            object.__setattr__(self, name, int(v))
        if not np.isfinite(self.rate_bits) or self.rate_bits <= 0:
            raise InvalidArgs(f"rate must be positive, got {self.rate_bits!r}")
        if int(self.seed) != self.seed or not 0 <= self.seed < 2**64:
            raise InvalidArgs(f"seed must be a 64-bit unsigned integer, got {self.seed!r}")
        object.__setattr__(self, "seed", int(self.seed))
        codebook_size(self.n, self.rate_bits)


@dataclass(frozen=True)
class CodingExperimentResult:
    p_err: float
    stderr: float
    fano_floor: float
    trials_total: int
    errors: int
    codebook_size: int


def _check_probs(p, d):
    p = np.atleast_1d(np.asarray(p, dtype=np.float64))
    if p.shape != (d,) or np.any(p < 0) or abs(p.sum() - 1.0) > 1e-10:
        raise InvalidArgs(f"input distribution must be {d} nonnegative numbers summing to 1")
    return p / p.sum()


def codebook_size(n, rate_bits):
    """round(2^(n R)); at least two codewords are required."""
    m = int(np.round(2.0 ** (n * rate_bits)))
    if m < 2:
        raise RateTooLowForTwoCodewords(
            f"n={n}, R={rate_bits} gives round(2^(nR)) = {m} < 2 codewords"
        )
    return m


def generate_codebook(op, p, n, rate_bits, rng):
    p = _check_probs(p, op.dim)
    m = codebook_size(n, rate_bits)
    letters = rng.choice(op.dim, size=(m, n), p=p)
    return Codebook(op.eigenvalues[letters], int(n), float(rate_bits))


def transmit(codeword, needle, rng):
    """Needle readings y_j = x_j + N(0, sigma^2), one needle per symbol."""
    x = np.asarray(codeword, dtype=np.float64)
    return x + needle.sigma * rng.standard_normal(x.shape)


def ml_decode(cb, received):
    """Index of the nearest codeword; ties go to the lowest index."""
    r = np.asarray(received, dtype=np.float64)
    if r.ndim != 1 or r.size != cb.n:
        raise LengthMismatch(f"received length {r.size} != block length {cb.n}")
    return int(kernels.nearest_codeword(cb.codewords, r[None, :])[0])


def ml_decode_batch(cb, received):
    r = np.asarray(received, dtype=np.float64)
    if r.ndim != 2 or r.shape[1] != cb.n:
        raise LengthMismatch(f"received block shape {r.shape} incompatible with n={cb.n}")
    return kernels.nearest_codeword(cb.codewords, r)


def fano_lower_bound(rate_bits, chi_bits, d):
    """Asymptotic Fano floor clamp((R - chi) / log2 d, 0, 1).

    The binary-entropy term of the finite-n inequality is dropped, so this
    is a large-n diagnostic, not a strict finite-n bound.
    """
    if int(d) != d or d < 2:
        raise InvalidDimension(f"alphabet size must be >= 2, got {d!r}")
    return float(np.clip((rate_bits - chi_bits) / np.log2(d), 0.0, 1.0))


def _run_codebook(cfg, index):
    ss = np.random.SeedSequence(cfg.seed, spawn_key=(index,))
    cb = generate_codebook(cfg.channel.operator, cfg.input_distribution, cfg.n,
                           cfg.rate_bits, np.random.default_rng(ss))
    t = cfg.trials_per_codebook
    messages = np.empty(t, dtype=np.int64)
    received = np.empty((t, cfg.n))
    for k in range(t):
        rng = np.random.default_rng(np.random.SeedSequence(cfg.seed, spawn_key=(index, k)))
        messages[k] = rng.integers(cb.size)
        received[k] = transmit(cb.codewords[messages[k]], cfg.channel.needle, rng)
    decoded = ml_decode_batch(cb, received)
    return int(np.count_nonzero(decoded != messages))


def estimate_error_probability(cfg, chi_bits=None):
    """Pooled random-coding block error rate.

    Codebook ``b`` draws from seed stream ``(seed, b)`` and trial ``k`` of
    it from ``(seed, b, k)``, so results do not depend on thread count.
    ``chi_bits`` defaults to the channel capacity.
    """
    with ThreadPoolExecutor(max_workers=thread_cap()) as pool:
        errors = sum(pool.map(lambda b: _run_codebook(cfg, b), range(cfg.codebooks)))
    total = cfg.codebooks * cfg.trials_per_codebook
    p = errors / total
    if chi_bits is None:
        from .capacity import blahut_arimoto_capacity

        chi_bits = blahut_arimoto_capacity(cfg.channel).capacity_bits
    d = cfg.channel.dim
    floor = fano_lower_bound(cfg.rate_bits, chi_bits, d) if d >= 2 else 0.0
    return CodingExperimentResult(
        p_err=p,
        stderr=float(np.sqrt(p * (1.0 - p) / total)),
        fano_floor=floor,
        trials_total=total,
        errors=errors,
        codebook_size=codebook_size(cfg.n, cfg.rate_bits),
    )


def fixed_codebook_error_rate(cb, needle, trials, rng):
    """Error rate of one given codebook (used for degenerate-codebook checks)."""
    messages = rng.integers(cb.size, size=trials)
    received = transmit(cb.codewords[messages], needle, rng)
    decoded = ml_decode_batch(cb, received)
    p = float(np.mean(decoded != messages))
    return p, float(np.sqrt(p * (1 - p) / trials))
