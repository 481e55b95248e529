"""The numba and numpy kernel paths must agree."""
import os
import subprocess
import sys

import numpy as np
import pytest

from weakchan.kernels import _numpy

nb = pytest.importorskip("weakchan.kernels._numba")


def _herm(rng, d):
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    return g + g.conj().T


@pytest.mark.parametrize("d", [1, 2, 5, 12])
def test_jacobi_paths_agree(d, rng):
    a = _herm(rng, d)
    w1, v1, s1, off1 = nb.jacobi_eigh(a, 1e-12, 100)
    w2, v2, s2, off2 = _numpy.jacobi_eigh(a, 1e-12, 100)
    np.testing.assert_allclose(np.sort(w1), np.sort(w2), atol=1e-11)
    assert off1 <= 1e-12 and off2 <= 1e-12
    for w, v in ((w1, v1), (w2, v2)):
        assert np.max(np.abs(v @ np.diag(w) @ v.conj().T - a)) < 1e-9


def test_jacobi_sweep_cap_reported(rng):
    a = _herm(rng, 6)
    for impl in (nb, _numpy):
        _, _, sweeps, off = impl.jacobi_eigh(a, 1e-12, 1)
        assert sweeps == 1 and off > 1e-12


def test_mixture_logpdf_paths_agree(rng):
    y = rng.uniform(-30, 30, 5000)
    w = rng.dirichlet(np.ones(5))
    mu = rng.uniform(-10, 10, 5)
    a = nb.mixture_logpdf(y, np.log(w), mu, 0.7)
    b = _numpy.mixture_logpdf(y, np.log(w), mu, 0.7)
    np.testing.assert_allclose(a, b, rtol=1e-13, atol=1e-12)


def test_blahut_arimoto_paths_agree(rng):
    t = rng.dirichlet(np.ones(300), size=4)
    t[1, :50] = 0.0
    t /= t.sum(axis=1, keepdims=True)
    p0 = np.full(4, 0.25)
    pa, ia, ma, ga = nb.blahut_arimoto(t, p0, 1e-10, 100000)
    pb, ib, mb, gb = _numpy.blahut_arimoto(t, p0, 1e-10, 100000)
    assert ia == ib
    np.testing.assert_allclose(pa, pb, atol=1e-10)
    assert ma == pytest.approx(mb, abs=1e-12)


def test_nearest_codeword_paths_agree(rng):
    cw = rng.choice([-1.0, 1.0], size=(300, 12))
    cw[7] = cw[3]
    r = rng.normal(size=(400, 12)) + cw[rng.integers(300, size=400)]
    r[0] = cw[3]
    a = nb.nearest_codeword(cw, r)
    b = _numpy.nearest_codeword(cw, r)
    assert np.array_equal(a, b)
    assert a[0] == 3


@pytest.mark.parametrize("flag,expected", [("0", "numpy"), ("1", "numba")])
def test_env_flag_selects_backend(flag, expected):
    env = dict(os.environ, WEAKCHAN_NUMBA=flag)
    out = subprocess.run([sys.executable, "-c", "import weakchan; print(weakchan.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == expected


def test_numpy_backend_end_to_end():
    code = (
        "from weakchan import *\n"
        "c = ChannelSpec.from_values([-1, 1], 1.0)\n"
        "print(round(blahut_arimoto_capacity(c).capacity_bits, 6))\n"
        "print(round(float(hermitian_eig([[2, 1-1j], [1+1j, 3]]).eigenvalues[1]), 10))\n"
    )
    env = dict(os.environ, WEAKCHAN_NUMBA="0")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.split() == ["0.485944", "4.0"]
