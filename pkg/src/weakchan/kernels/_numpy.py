"""Pure-numpy implementations of the hot kernels.

Each function has the same signature and semantics as its twin in
``_numba``; results agree to rounding.
"""
import numpy as np

_LOG_SQRT_2PI = 0.5 * np.log(2.0 * np.pi)
_CHUNK = 1 << 16


def jacobi_eigh(a, tol, max_sweeps):
    a = np.array(a, dtype=np.complex128, copy=True)
    n = a.shape[0]
    v = np.eye(n, dtype=np.complex128)
    scale = max(1.0, np.sqrt(np.sum(np.abs(a) ** 2)))
    off = _off_norm(a)
    sweeps = 0
    while off > tol * scale and sweeps < max_sweeps:
        sweeps += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag = abs(apq)
                if mag == 0.0:
                    continue
                theta = (a[q, q].real - a[p, p].real) / (2.0 * mag)
                t = 1.0 / (abs(theta) + np.sqrt(theta * theta + 1.0))
                if theta < 0.0:
                    t = -t
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                ph = apq / mag
                u = np.array([[c, s * ph], [-s * np.conj(ph), c]])
                idx = [p, q]
                a[:, idx] = a[:, idx] @ u
                a[idx, :] = u.conj().T @ a[idx, :]
                v[:, idx] = v[:, idx] @ u
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
        off = _off_norm(a)
    return np.diag(a).real.copy(), v, sweeps, off / scale


def _off_norm(a):
    off = a - np.diag(np.diag(a))
    return float(np.sqrt(np.sum(np.abs(off) ** 2)))


def mixture_logpdf(y, log_w, means, sigma):
    y = np.asarray(y, dtype=np.float64)
    out = np.empty(y.shape[0])
    inv = 1.0 / (2.0 * sigma * sigma)
    norm = np.log(sigma) + _LOG_SQRT_2PI
    for start in range(0, y.shape[0], _CHUNK):
        yy = y[start:start + _CHUNK, None]
        e = log_w[None, :] - (yy - means[None, :]) ** 2 * inv
        m = e.max(axis=1)
        out[start:start + _CHUNK] = m + np.log(np.exp(e - m[:, None]).sum(axis=1)) - norm
    return out


def blahut_arimoto(trans, p0, tol_nats, max_iter):
    """Alternating maximisation on a row-stochastic transition matrix.

    Returns ``(p, iterations, mutual_info_nats, gap_nats)``; ``iterations``
    exceeds ``max_iter`` when the gap never fell below ``tol_nats``.
    """
    pos = trans > 0.0
    tlogt = np.sum(np.where(pos, trans * np.log(np.where(pos, trans, 1.0)), 0.0), axis=1)
    p = p0.copy()
    it = 0
    while True:
        q = p @ trans
        log_q = np.log(np.where(q > 0.0, q, 1.0))
        div = tlogt - trans @ log_q
        mi = float(p @ div)
        gap = float(div.max() - mi)
        if gap < tol_nats or it > max_iter:
            return p, it, mi, gap
        it += 1
        w = p * np.exp(div - div.max())
        p = w / w.sum()


def nearest_codeword(codewords, received):
    t = received.shape[0]
    out = np.empty(t, dtype=np.int64)
    step = max(1, (1 << 22) // max(1, codewords.size))
    for start in range(0, t, step):
        r = received[start:start + step]
        d = ((r[:, None, :] - codewords[None, :, :]) ** 2).sum(axis=2)
        out[start:start + step] = np.argmin(d, axis=1)
    return out
