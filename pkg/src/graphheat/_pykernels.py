"""Pure numpy implementations of the hot kernels.

These mirror ``_ckernels.pyx`` call for call and are used whenever the
compiled extension is missing.  Inner loops are vectorised with numpy
slices; the outer loop structure follows the compiled version exactly so
both backends agree to rounding.
"""

import math

import numpy as np

EPS = 2.0 ** -52


def tred2(a):
    """Householder reduction of a symmetric matrix to tridiagonal form.

    Returns ``(d, e, V)`` where ``d`` is the diagonal, ``e[1:]`` the
    subdiagonal and ``V`` the accumulated orthogonal transformation.
    """
    V = np.array(a, dtype=np.float64, copy=True)
    n = V.shape[0]
    d = V[n - 1, :].copy()
    e = np.zeros(n)

    for i in range(n - 1, 0, -1):
        scale = np.abs(d[:i]).sum()
        h = 0.0
        if scale == 0.0:
            e[i] = d[i - 1]
            d[:i] = V[i - 1, :i]
            V[i, :i] = 0.0
            V[:i, i] = 0.0
        else:
            d[:i] /= scale
            h = float(d[:i] @ d[:i])
            f = d[i - 1]
            g = math.sqrt(h)
            if f > 0:
                g = -g
            e[i] = scale * g
            h -= f * g
            d[i - 1] = f - g
            e[:i] = 0.0
            # e[:i] = A[:i,:i] @ d[:i] using the lower triangle only
            lower = np.tril(V[:i, :i])
            V[:i, i] = d[:i]
            e[:i] = lower @ d[:i] + np.tril(lower, -1).T @ d[:i]
            e[:i] /= h
            f = float(e[:i] @ d[:i])
            hh = f / (h + h)
            e[:i] -= hh * d[:i]
            for j in range(i):
                V[j:i, j] -= d[j] * e[j:i] + e[j] * d[j:i]
            d[:i] = V[i - 1, :i]
            V[i, :i] = 0.0
        d[i] = h

    for i in range(n - 1):
        V[n - 1, i] = V[i, i]
        V[i, i] = 1.0
        h = d[i + 1]
        if h != 0.0:
            d[: i + 1] = V[: i + 1, i + 1] / h
            g = V[: i + 1, i + 1] @ V[: i + 1, : i + 1]
            V[: i + 1, : i + 1] -= np.outer(d[: i + 1], g)
        V[: i + 1, i + 1] = 0.0
    d[:] = V[n - 1, :]
    V[n - 1, :] = 0.0
    V[n - 1, n - 1] = 1.0
    e[0] = 0.0
    return d, e, V


def tql2(d, e, V, max_sweeps):
    """Implicit-shift QL on the tridiagonal ``(d, e)``, rotating ``V`` in place.

    Returns 0 on success, or ``l + 1`` when eigenvalue ``l`` did not
    converge within ``max_sweeps`` QL sweeps.  Eigenpairs are left
    unsorted.
    """
    n = d.shape[0]
    e[:-1] = e[1:]
    e[n - 1] = 0.0
    f = 0.0
    tst1 = 0.0
    for l in range(n):
        tst1 = max(tst1, abs(d[l]) + abs(e[l]))
        m = l
        while m < n:
            if abs(e[m]) <= EPS * tst1:
                break
            m += 1
        if m > l:
            sweeps = 0
            while True:
                sweeps += 1
                if sweeps > max_sweeps:
                    return l + 1
                g = d[l]
                p = (d[l + 1] - g) / (2.0 * e[l])
                r = math.hypot(p, 1.0)
                if p < 0:
                    r = -r
                d[l] = e[l] / (p + r)
                d[l + 1] = e[l] * (p + r)
                dl1 = d[l + 1]
                h = g - d[l]
                d[l + 2:] -= h
                f += h

                p = d[m]
                c = c2 = c3 = 1.0
                el1 = e[l + 1]
                s = s2 = 0.0
                for i in range(m - 1, l - 1, -1):
                    c3 = c2
                    c2 = c
                    s2 = s
                    g = c * e[i]
                    h = c * p
                    r = math.hypot(p, e[i])
                    e[i + 1] = s * r
                    s = e[i] / r
                    c = p / r
                    p = c * d[i] - s * g
                    d[i + 1] = h + s * (c * g + s * d[i])
                    vi = V[:, i].copy()
                    vi1 = V[:, i + 1]
                    V[:, i] = c * vi - s * vi1
                    V[:, i + 1] = s * vi + c * vi1
                p = -s * s2 * c3 * el1 * e[l] / dl1
                e[l] = s * p
                d[l] = c * p
                if abs(e[l]) <= EPS * tst1:
                    break
        d[l] += f
        e[l] = 0.0
    return 0


def laplacian_matvec(indptr, indices, degree, x):
    n = degree.shape[0]
    rows = np.repeat(np.arange(n), np.diff(indptr))
    return degree * x - np.bincount(rows, weights=x[indices], minlength=n)


def euler_evolve(indptr, indices, degree, u0, dt, steps, dt_last):
    """``steps`` explicit Euler steps of ``du/dt = -L u``; the last uses ``dt_last``."""
    n = degree.shape[0]
    rows = np.repeat(np.arange(n), np.diff(indptr))
    deg = degree.astype(np.float64)
    u = np.array(u0, dtype=np.float64, copy=True)
    for k in range(steps):
        h = dt_last if k == steps - 1 else dt
        lu = deg * u - np.bincount(rows, weights=u[indices], minlength=n)
        u -= h * lu
    return u
