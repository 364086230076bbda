"""Cyclic Jacobi eigenvalue kernel for dense symmetric matrices.

The kernel is compiled with numba when it is importable and runs as plain
Python otherwise; both paths execute the same rotation sequence.
"""

import numpy as np

try:
    from numba import njit
except ImportError:  # pragma: no cover - exercised only without numba
    def njit(*args, **kwargs):
        def wrap(fn):
            return fn
        return wrap


@njit(cache=True)
def jacobi_sweeps(a, rel_off, max_sweeps):
    """Diagonalize the symmetric matrix ``a`` in place.

    Returns ``(w, v, sweeps, converged)`` with ``a = v diag(w) v'``.
    Convergence is declared once the off-diagonal Frobenius mass drops below
    ``rel_off * ||a||_F``; one further sweep then runs, which by quadratic
    convergence leaves the off-diagonal at rounding level.
    """
    n = a.shape[0]
    v = np.eye(n)
    total = 0.0
    for i in range(n):
        for j in range(n):
            total += a[i, j] * a[i, j]
    target = rel_off * np.sqrt(total)

    sweeps = 0
    converged = False
    while True:
        if converged:
            break
        off = 0.0
        for i in range(n - 1):
            for j in range(i + 1, n):
                off += 2.0 * a[i, j] * a[i, j]
        if np.sqrt(off) <= target:
            converged = True
        elif sweeps >= max_sweeps:
            break
        sweeps += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                if theta >= 0.0:
                    t = 1.0 / (theta + np.sqrt(1.0 + theta * theta))
                else:
                    t = -1.0 / (-theta + np.sqrt(1.0 + theta * theta))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                tau = s / (1.0 + c)
                a[p, p] -= t * apq
                a[q, q] += t * apq
                a[p, q] = 0.0
                a[q, p] = 0.0
                for k in range(n):
                    if k != p and k != q:
                        akp = a[k, p]
                        akq = a[k, q]
                        a[k, p] = akp - s * (akq + tau * akp)
                        a[p, k] = a[k, p]
                        a[k, q] = akq + s * (akp - tau * akq)
                        a[q, k] = a[k, q]
                for k in range(n):
                    vkp = v[k, p]
                    vkq = v[k, q]
                    v[k, p] = vkp - s * (vkq + tau * vkp)
                    v[k, q] = vkq + s * (vkp - tau * vkq)
    w = np.empty(n)
    for i in range(n):
        w[i] = a[i, i]
    return w, v, sweeps, converged
