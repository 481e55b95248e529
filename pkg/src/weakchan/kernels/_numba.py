"""Numba-compiled implementations of the hot kernels."""
import numpy as np
from numba import njit

_LOG_SQRT_2PI = 0.5 * np.log(2.0 * np.pi)


@njit(cache=True)
def _off_norm(a):
    n = a.shape[0]
    acc = 0.0
    for i in range(n):
        for j in range(n):
            if i != j:
                acc += a[i, j].real ** 2 + a[i, j].imag ** 2
    return np.sqrt(acc)


@njit(cache=True)
def jacobi_eigh(a, tol, max_sweeps):
    a = a.astype(np.complex128).copy()
    n = a.shape[0]
    v = np.eye(n, dtype=np.complex128)
    fro = 0.0
    for i in range(n):
        for j in range(n):
            fro += a[i, j].real ** 2 + a[i, j].imag ** 2
    scale = max(1.0, np.sqrt(fro))
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
                upq = s * ph
                uqp = -s * np.conj(ph)
                for k in range(n):
                    akp = a[k, p]
                    akq = a[k, q]
                    a[k, p] = akp * c + akq * uqp
                    a[k, q] = akp * upq + akq * c
                for k in range(n):
                    apk = a[p, k]
                    aqk = a[q, k]
                    a[p, k] = c * apk + np.conj(uqp) * aqk
                    a[q, k] = np.conj(upq) * apk + c * aqk
                for k in range(n):
                    vkp = v[k, p]
                    vkq = v[k, q]
                    v[k, p] = vkp * c + vkq * uqp
                    v[k, q] = vkp * upq + vkq * c
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
        off = _off_norm(a)
    w = np.empty(n)
    for i in range(n):
        w[i] = a[i, i].real
    return w, v, sweeps, off / scale


@njit(cache=True)
def mixture_logpdf(y, log_w, means, sigma):
    n = y.shape[0]
    k = means.shape[0]
    out = np.empty(n)
    inv = 1.0 / (2.0 * sigma * sigma)
    norm = np.log(sigma) + _LOG_SQRT_2PI
    e = np.empty(k)
    for i in range(n):
        m = -np.inf
        for j in range(k):
            d = y[i] - means[j]
            e[j] = log_w[j] - d * d * inv
            if e[j] > m:
                m = e[j]
        s = 0.0
        for j in range(k):
            s += np.exp(e[j] - m)
        out[i] = m + np.log(s) - norm
    return out


@njit(cache=True)
def blahut_arimoto(trans, p0, tol_nats, max_iter):
    # the two mat-vecs go through BLAS; the loop overhead is what gets compiled
    trans = np.ascontiguousarray(trans)
    d, m = trans.shape
    tlogt = np.zeros(d)
    for i in range(d):
        for j in range(m):
            if trans[i, j] > 0.0:
                tlogt[i] += trans[i, j] * np.log(trans[i, j])
    p = p0.copy()
    log_q = np.empty(m)
    div = np.empty(d)
    it = 0
    while True:
        q = np.dot(p, trans)
        for j in range(m):
            log_q[j] = np.log(q[j]) if q[j] > 0.0 else 0.0
        dmax = -np.inf
        mi = 0.0
        tq = np.dot(trans, log_q)
        for i in range(d):
            div[i] = tlogt[i] - tq[i]
            mi += p[i] * div[i]
            if div[i] > dmax:
                dmax = div[i]
        gap = dmax - mi
        if gap < tol_nats or it > max_iter:
            return p, it, mi, gap
        it += 1
        tot = 0.0
        for i in range(d):
            p[i] = p[i] * np.exp(div[i] - dmax)
            tot += p[i]
        for i in range(d):
            p[i] /= tot


@njit(cache=True)
def nearest_codeword(codewords, received):
    t, n = received.shape
    mcount = codewords.shape[0]
    out = np.empty(t, dtype=np.int64)
    for r in range(t):
        best = np.inf
        arg = 0
        for c in range(mcount):
            acc = 0.0
            for j in range(n):
                diff = received[r, j] - codewords[c, j]
                acc += diff * diff
                if acc >= best:
                    break
            if acc < best:
                best = acc
                arg = c
        out[r] = arg
    return out
