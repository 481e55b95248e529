"""Capacity of quantum weak Gaussian channels.

A sender encodes letters as states of a finite quantum system; the
receiver weakly measures a Hermitian letter operator with a Gaussian
needle of spread ``sigma``. This package computes the needle-reading
law, its entropies and mutual information, the channel capacity with its
power-style upper bound, random-coding error rates, and the coherence
loss a weak eavesdropper causes.
"""
from .capacity import (CapacityResult, blahut_arimoto_capacity, capacity_upper_bound,
                       optimize_eigenvalue_placement, power_budget)
from .channel import (ChannelSpec, LetterEnsemble, LetterOperator, apply_weak_channel,
                      output_distribution, posterior_state, sample_measurement,
                      weak_mutual_information)
from .coding import (Codebook, CodingExperimentConfig, CodingExperimentResult,
                     estimate_error_probability, fano_lower_bound, generate_codebook,
                     ml_decode, transmit)
from .eavesdrop import TradeoffPoint, holevo_chi, intercept_ensemble, tradeoff_sweep
from .kernels import BACKEND
from .linalg import DensityMatrix, Spectrum, hermitian_eig, validate_density, von_neumann_entropy
from .needle import GaussianMixture1D, NeedleSpec, mixture_entropy, mixture_pdf, mixture_sample

__version__ = "0.1.0"
