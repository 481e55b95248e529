"""Weak eavesdropping: Eve weakly measures the letter operator in transit."""
from dataclasses import dataclass

import numpy as np

from .channel import (ChannelSpec, LetterEnsemble, apply_weak_channel,
                      weak_mutual_information)
from .errors import DimensionMismatch, InvalidArgs, NumericalError
from .linalg import DensityMatrix, von_neumann_entropy
from .needle import NeedleSpec

CHI_SLACK = 1e-9


@dataclass(frozen=True)
class TradeoffPoint:
    sigma_eve: float
    chi_before_bits: float
    chi_after_bits: float
    eve_info_bits: float


def holevo_chi(ens):
    """S(sum p_i rho_i) - sum p_i S(rho_i), bits."""
    chi = von_neumann_entropy(ens.average()) - sum(
        p * von_neumann_entropy(s) for p, s in zip(ens.probs, ens.states) if p > 0
    )
    if chi < -CHI_SLACK:
        raise NumericalError(f"Holevo chi came out negative ({chi:.3e} bits)")
    return float(max(chi, 0.0))


def intercept_ensemble(ens, ch_eve):
    if ens.dim != ch_eve.dim:
        raise DimensionMismatch(f"ensemble dimension {ens.dim} != Eve's operator dimension {ch_eve.dim}")
    return LetterEnsemble(ens.probs, tuple(apply_weak_channel(s, ch_eve) for s in ens.states))


def tradeoff_sweep(ens, op, sigma_grid):
    grid = [float(s) for s in np.atleast_1d(sigma_grid)]
    if not grid:
        raise InvalidArgs("sigma grid must not be empty")
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise InvalidArgs("sigma grid must be strictly ascending")
    before = holevo_chi(ens)
    points = []
    for s in grid:
        ch = ChannelSpec(op, NeedleSpec(s))
        points.append(TradeoffPoint(
            sigma_eve=s,
            chi_before_bits=before,
            chi_after_bits=holevo_chi(intercept_ensemble(ens, ch)),
            eve_info_bits=weak_mutual_information(ens, ch),
        ))
    return points


def plus_minus_ensemble():
    """Equiprobable |+> and |-> letters."""
    plus = np.array([1.0, 1.0]) / np.sqrt(2)
    minus = np.array([1.0, -1.0]) / np.sqrt(2)
    return LetterEnsemble([0.5, 0.5], (DensityMatrix.pure(plus), DensityMatrix.pure(minus)))
