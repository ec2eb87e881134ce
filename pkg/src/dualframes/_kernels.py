"""Hot inner loops: cyclic Jacobi, Hessenberg/Francis QR, subset enumeration.

Kernels take and return plain float64 arrays and signal failure through
integer status values instead of exceptions, so that the same source runs
under ``numba.njit`` and as ordinary Python.
"""
import numpy as np

from ._jit import jit

EPS = 2.220446049250313e-16


@jit
def jacobi_eigh(a, tol, max_sweeps):
    """Cyclic Jacobi on a symmetric matrix.

    Returns ``(diag, vectors, sweeps, converged)``; ``diag`` is unsorted and
    column ``j`` of ``vectors`` belongs to ``diag[j]``.
    """
    n = a.shape[0]
    a = a.copy()
    v = np.eye(n)
    scale = np.sqrt(np.sum(a * a))
    if scale == 0.0:
        return np.zeros(n), v, 0, True
    for sweep in range(max_sweeps + 1):
        off = 0.0
        for p in range(n):
            for q in range(p + 1, n):
                off += a[p, q] * a[p, q]
        if np.sqrt(2.0 * off) < tol * scale:
            d = np.empty(n)
            for i in range(n):
                d[i] = a[i, i]
            return d, v, sweep, True
        if sweep == max_sweeps:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                diff = a[q, q] - a[p, p]
                if abs(diff) > 1e150 * abs(apq):
                    # theta would overflow; t ~ 1 / (2 theta)
                    t = apq / diff
                else:
                    theta = diff / (2.0 * apq)
                    t = 1.0 / (abs(theta) + np.sqrt(theta * theta + 1.0))
                    if theta < 0.0:
                        t = -t
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                colp = a[:, p].copy()
                colq = a[:, q].copy()
                a[:, p] = c * colp - s * colq
                a[:, q] = s * colp + c * colq
                rowp = a[p, :].copy()
                rowq = a[q, :].copy()
                a[p, :] = c * rowp - s * rowq
                a[q, :] = s * rowp + c * rowq
                a[p, q] = 0.0
                a[q, p] = 0.0
                vp = v[:, p].copy()
                vq = v[:, q].copy()
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
    d = np.empty(n)
    for i in range(n):
        d[i] = a[i, i]
    return d, v, max_sweeps, False


@jit
def balance(a):
    """Parlett-Reinsch balancing with radix-2 scalings (exact similarity)."""
    n = a.shape[0]
    radix = 2.0
    sqrdx = radix * radix
    done = False
    while not done:
        done = True
        for i in range(n):
            c = 0.0
            r = 0.0
            for j in range(n):
                if j != i:
                    c += abs(a[j, i])
                    r += abs(a[i, j])
            if c != 0.0 and r != 0.0:
                g = r / radix
                f = 1.0
                s = c + r
                while c < g:
                    f *= radix
                    c *= sqrdx
                g = r * radix
                while c > g:
                    f /= radix
                    c /= sqrdx
                if (c + r) / f < 0.95 * s:
                    done = False
                    g = 1.0 / f
                    for j in range(n):
                        a[i, j] *= g
                    for j in range(n):
                        a[j, i] *= f
    return a


@jit
def hessenberg(a):
    """In-place Householder reduction to upper Hessenberg form."""
    n = a.shape[0]
    for k in range(n - 2):
        m = n - k - 1
        v = np.empty(m)
        for i in range(m):
            v[i] = a[k + 1 + i, k]
        xnorm = np.sqrt(np.sum(v * v))
        if xnorm == 0.0:
            continue
        alpha = -xnorm if v[0] >= 0.0 else xnorm
        v[0] -= alpha
        vnorm = np.sqrt(np.sum(v * v))
        if vnorm == 0.0:
            continue
        v /= vnorm
        # H A with H = I - 2 v v^T acting on rows k+1..n-1
        for j in range(n):
            s = 0.0
            for i in range(m):
                s += v[i] * a[k + 1 + i, j]
            for i in range(m):
                a[k + 1 + i, j] -= 2.0 * s * v[i]
        # A H acting on columns k+1..n-1
        for i in range(n):
            s = 0.0
            for j in range(m):
                s += a[i, k + 1 + j] * v[j]
            for j in range(m):
                a[i, k + 1 + j] -= 2.0 * s * v[j]
        for i in range(k + 2, n):
            a[i, k] = 0.0
    return a


@jit
def hqr(h, max_iter):
    """Francis double-shift QR on an upper Hessenberg matrix.

    Eigenvalues only. Deflated 2x2 blocks are read off with the stable
    quadratic. Returns ``(wr, wi, iterations, ok)``.
    """
    n = h.shape[0]
    # 1-based working copy keeps the index arithmetic of the classical
    # formulation intact.
    a = np.zeros((n + 1, n + 1))
    for i in range(n):
        for j in range(n):
            a[i + 1, j + 1] = h[i, j]
    wr = np.zeros(n + 1)
    wi = np.zeros(n + 1)
    anorm = 0.0
    for i in range(1, n + 1):
        for j in range(max(i - 1, 1), n + 1):
            anorm += abs(a[i, j])
    nn = n
    t = 0.0
    total = 0
    x = 0.0
    y = 0.0
    z = 0.0
    w = 0.0
    p = 0.0
    q = 0.0
    r = 0.0
    while nn >= 1:
        its = 0
        while True:
            l = 1
            for ll in range(nn, 1, -1):
                sub = abs(a[ll, ll - 1])
                s = abs(a[ll - 1, ll - 1]) + abs(a[ll, ll])
                if s == 0.0:
                    if ll - 2 >= 1:
                        s += abs(a[ll - 1, ll - 2])
                    if ll + 1 <= nn:
                        s += abs(a[ll + 1, ll])
                # relative test first; the normwise one catches blocks whose
                # entries are all negligible next to the whole matrix
                if sub <= EPS * s or sub <= EPS * EPS * anorm:
                    a[ll, ll - 1] = 0.0
                    l = ll
                    break
            x = a[nn, nn]
            if l == nn:
                wr[nn] = x + t
                wi[nn] = 0.0
                nn -= 1
                break
            y = a[nn - 1, nn - 1]
            w = a[nn, nn - 1] * a[nn - 1, nn]
            if l == nn - 1:
                p = 0.5 * (y - x)
                q = p * p + w
                z = np.sqrt(abs(q))
                x += t
                if q >= 0.0:
                    z = p + (z if p >= 0.0 else -z)
                    wr[nn - 1] = x + z
                    wr[nn] = x + z
                    if z != 0.0:
                        wr[nn] = x - w / z
                    wi[nn - 1] = 0.0
                    wi[nn] = 0.0
                else:
                    wr[nn - 1] = x + p
                    wr[nn] = x + p
                    wi[nn - 1] = -z
                    wi[nn] = z
                nn -= 2
                break
            if total >= max_iter:
                return wr[1:], wi[1:], total, False
            if its > 0 and its % 10 == 0:
                # exceptional shift
                t += x
                for i in range(1, nn + 1):
                    a[i, i] -= x
                s = abs(a[nn, nn - 1]) + abs(a[nn - 1, nn - 2])
                x = 0.75 * s
                y = x
                w = -0.4375 * s * s
            its += 1
            total += 1
            m = nn - 2
            while m >= l:
                z = a[m, m]
                r = x - z
                s = y - z
                p = (r * s - w) / a[m + 1, m] + a[m, m + 1]
                q = a[m + 1, m + 1] - z - r - s
                r = a[m + 2, m + 1]
                s = abs(p) + abs(q) + abs(r)
                p /= s
                q /= s
                r /= s
                if m == l:
                    break
                u = abs(a[m, m - 1]) * (abs(q) + abs(r))
                v = abs(p) * (abs(a[m - 1, m - 1]) + abs(z) + abs(a[m + 1, m + 1]))
                if u <= EPS * v:
                    break
                m -= 1
            for i in range(m + 2, nn + 1):
                a[i, i - 2] = 0.0
                if i != m + 2:
                    a[i, i - 3] = 0.0
            for k in range(m, nn):
                if k != m:
                    p = a[k, k - 1]
                    q = a[k + 1, k - 1]
                    r = 0.0
                    if k != nn - 1:
                        r = a[k + 2, k - 1]
                    x = abs(p) + abs(q) + abs(r)
                    if x != 0.0:
                        p /= x
                        q /= x
                        r /= x
                s = np.sqrt(p * p + q * q + r * r)
                if p < 0.0:
                    s = -s
                if s != 0.0:
                    if k == m:
                        if l != m:
                            a[k, k - 1] = -a[k, k - 1]
                    else:
                        a[k, k - 1] = -s * x
                    p += s
                    x = p / s
                    y = q / s
                    z = r / s
                    q /= p
                    r /= p
                    for j in range(k, nn + 1):
                        p = a[k, j] + q * a[k + 1, j]
                        if k != nn - 1:
                            p += r * a[k + 2, j]
                            a[k + 2, j] -= p * z
                        a[k + 1, j] -= p * y
                        a[k, j] -= p * x
                    mmin = nn if nn < k + 3 else k + 3
                    for i in range(l, mmin + 1):
                        p = x * a[i, k] + y * a[i, k + 1]
                        if k != nn - 1:
                            p += z * a[i, k + 2]
                            a[i, k + 2] -= p * r
                        a[i, k + 1] -= p * q
                        a[i, k] -= p
            if l >= nn - 1:
                break
    return wr[1:], wi[1:], total, True


@jit
def real_eigvals(m, iter_factor):
    """Eigenvalues of a general real square matrix as ``(wr, wi, ok)``."""
    n = m.shape[0]
    if n == 1:
        return np.array([m[0, 0]]), np.zeros(1), True
    scale = pow2_scale(m)
    if scale == 0.0:
        return np.zeros(n), np.zeros(n), True
    a = m / scale
    balance(a)
    hessenberg(a)
    wr, wi, _, ok = hqr(a, iter_factor * n)
    return wr * scale, wi * scale, ok


@jit
def pow2_scale(m):
    """Power of two near max|m_ij| (0 for a zero matrix); dividing by it is exact."""
    big = np.max(np.abs(m))
    if big == 0.0:
        return 0.0
    return 2.0 ** np.floor(np.log2(big))


@jit
def subset_spectral_radii(a, k, count, iter_factor):
    """Spectral radius of every k x k principal submatrix of ``a``.

    Subsets are visited in lexicographic order. Returns ``(radii, failed)``
    where ``failed`` is the position of a non-converged subset or -1.
    """
    n = a.shape[0]
    idx = np.arange(k)
    out = np.zeros(count)
    sub = np.empty((k, k))
    for t in range(count):
        for r in range(k):
            for s in range(k):
                sub[r, s] = a[idx[r], idx[s]]
        if k == 1:
            out[t] = abs(sub[0, 0])
        else:
            wr, wi, ok = real_eigvals(sub, iter_factor)
            if not ok:
                return out, t
            best = 0.0
            for i in range(k):
                mod = np.sqrt(wr[i] * wr[i] + wi[i] * wi[i])
                if mod > best:
                    best = mod
            out[t] = best
        i = k - 1
        while i >= 0 and idx[i] == n - k + i:
            i -= 1
        if i < 0:
            break
        idx[i] += 1
        for j in range(i + 1, k):
            idx[j] = idx[j - 1] + 1
    return out, -1
