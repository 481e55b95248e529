"""Time the numba kernels against their numpy twins.

    python benchmarks/bench_kernels.py [--repeat 5]

Each kernel is warmed up once (so numba compile time is excluded), then
timed as the best of ``--repeat`` runs.
"""
import argparse
import timeit

import numpy as np

from weakchan.capacity import transition_matrix
from weakchan.channel import ChannelSpec
from weakchan.kernels import _numba, _numpy


def cases(rng):
    g = rng.standard_normal((12, 12)) + 1j * rng.standard_normal((12, 12))
    herm = g + g.conj().T
    y = np.linspace(-20, 20, 1 << 18)
    w = rng.dirichlet(np.ones(6))
    mu = rng.uniform(-8, 8, 6)
    trans = transition_matrix(ChannelSpec.from_values([-3.0, -0.5, 1.0, 4.0], 1.2), 16384)
    slow = transition_matrix(ChannelSpec.from_values([-3.0, -2.9, 1.0, 4.0], 1.2), 1024)
    p0 = np.full(4, 0.25)
    cw = rng.choice([-1.0, 1.0], size=(4096, 16))
    recv = cw[rng.integers(4096, size=500)] + rng.standard_normal((500, 16))
    return {
        "jacobi_eigh (12x12 complex)": ("jacobi_eigh", (herm, 1e-12, 100)),
        "mixture_logpdf (2^18 pts, 6 comps)": ("mixture_logpdf", (y, np.log(w), mu, 0.9)),
        "blahut_arimoto (4 x 16384 bins)": ("blahut_arimoto", (trans, p0, 1e-9, 100000)),
        "blahut_arimoto (4 x 1024, 20k iters)": ("blahut_arimoto", (slow, p0, 1e-14, 20000)),
        "nearest_codeword (500 x 4096 x 16)": ("nearest_codeword", (cw, recv)),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    rng = np.random.default_rng(0)
    print(f"{'kernel':40s} {'numpy [ms]':>12s} {'numba [ms]':>12s} {'speedup':>9s}")
    for label, (name, a) in cases(rng).items():
        fnp, fnb = getattr(_numpy, name), getattr(_numba, name)
        fnb(*a)
        t_np = min(timeit.repeat(lambda: fnp(*a), number=1, repeat=args.repeat)) * 1e3
        t_nb = min(timeit.repeat(lambda: fnb(*a), number=1, repeat=args.repeat)) * 1e3
        print(f"{label:40s} {t_np:12.2f} {t_nb:12.2f} {t_np / t_nb:8.1f}x")


if __name__ == "__main__":
    main()
