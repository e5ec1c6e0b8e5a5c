"""Hot counting kernels: exact integer sweeps over column tuples.

The determinant and triangle-area sweeps dominate experiment runtime, so
they run on denominator-cleared int64 data, JIT-compiled with numba when
available.  Set ZARANK_BACKEND=numpy to force the pure-numpy blocked
fallback (ZARANK_BACKEND=numba insists on numba); ZARANK_THREADS caps
the numba thread pool.  Callers are responsible for checking that the
cleared integers cannot overflow int64 (see geometry.fits_int64) and for
falling back to the big-integer python path when they might.

All kernels compute exact counts; backend choice never changes results.
"""

from __future__ import annotations

import os
import warnings

import numpy as np

try:
    import numba
    from numba import njit, prange

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    _HAVE_NUMBA = False


def active_backend() -> str:
    """Resolve the backend from ZARANK_BACKEND: auto | numba | numpy."""
    choice = os.environ.get("ZARANK_BACKEND", "auto").lower()
    if choice == "numpy":
        return "numpy"
    if choice == "numba":
        if not _HAVE_NUMBA:
            warnings.warn("ZARANK_BACKEND=numba but numba is unavailable; "
                          "using numpy")
            return "numpy"
        return "numba"
    return "numba" if _HAVE_NUMBA else "numpy"


def _apply_thread_cap() -> None:
    cap = os.environ.get("ZARANK_THREADS")
    if cap and _HAVE_NUMBA:
        try:
            n = max(1, int(cap))
        except ValueError:
            return
        numba.set_num_threads(min(n, numba.config.NUMBA_NUM_THREADS))


if _HAVE_NUMBA:

    @njit(cache=True, parallel=True)
    def _unit_pairs_numba(x, y, s):
        n = x.shape[0]
        total = 0
        for i in prange(n):
            c = 0
            xi = x[i]
            yi = y[i]
            si = s[i]
            for j in range(i + 1, n):
                d = xi * y[j] - yi * x[j]
                if d < 0:
                    d = -d
                if d == si * s[j]:
                    c += 1
            total += c
        return total

    @njit(cache=True, parallel=True)
    def _unit_triples_numba(x, y, z, s):
        n = x.shape[0]
        total = 0
        for i in prange(n):
            c = 0
            for j in range(i + 1, n):
                cxy = x[i] * y[j] - y[i] * x[j]
                cxz = x[i] * z[j] - z[i] * x[j]
                cyz = y[i] * z[j] - z[i] * y[j]
                sij = s[i] * s[j]
                for l in range(j + 1, n):
                    d = cxy * z[l] - cxz * y[l] + cyz * x[l]
                    if d < 0:
                        d = -d
                    if d == sij * s[l]:
                        c += 1
            total += c
        return total

    @njit(cache=True, parallel=True)
    def _area_triples_numba(x, y, lo_a, lo_b, hi_a, hi_b, scale2):
        # count i<j<l with lo_a/lo_b <= |cross|/(2*scale2) <= hi_a/hi_b
        n = x.shape[0]
        total = 0
        two_s = 2 * scale2
        for i in prange(n):
            c = 0
            for j in range(i + 1, n):
                ax = x[j] - x[i]
                ay = y[j] - y[i]
                for l in range(j + 1, n):
                    cross = ax * (y[l] - y[i]) - ay * (x[l] - x[i])
                    if cross < 0:
                        cross = -cross
                    if cross * lo_b >= two_s * lo_a and cross * hi_b <= two_s * hi_a:
                        c += 1
            total += c
        return total


def _unit_pairs_numpy(x, y, s, block: int = 2048) -> int:
    n = x.shape[0]
    total = 0
    for i0 in range(0, n, block):
        i1 = min(i0 + block, n)
        xi = x[i0:i1, None]
        yi = y[i0:i1, None]
        si = s[i0:i1, None]
        for j0 in range(i0, n, block):
            j1 = min(j0 + block, n)
            d = np.abs(xi * y[None, j0:j1] - yi * x[None, j0:j1])
            hit = d == si * s[None, j0:j1]
            if j0 == i0:
                ii, jj = np.nonzero(hit)
                total += int(np.count_nonzero(jj > ii))
            else:
                total += int(np.count_nonzero(hit))
    return total


def _unit_triples_numpy(x, y, z, s) -> int:
    n = x.shape[0]
    total = 0
    for i in range(n):
        for j in range(i + 1, n):
            cxy = x[i] * y[j] - y[i] * x[j]
            cxz = x[i] * z[j] - z[i] * x[j]
            cyz = y[i] * z[j] - z[i] * y[j]
            if j + 1 >= n:
                continue
            tail = slice(j + 1, n)
            d = np.abs(cxy * z[tail] - cxz * y[tail] + cyz * x[tail])
            total += int(np.count_nonzero(d == s[i] * s[j] * s[tail]))
    return total


def _area_triples_numpy(x, y, lo_a, lo_b, hi_a, hi_b, scale2) -> int:
    n = x.shape[0]
    two_s = 2 * scale2
    total = 0
    for i in range(n):
        ax = x[i + 1:] - x[i]
        ay = y[i + 1:] - y[i]
        for jo in range(ax.shape[0]):
            j = i + 1 + jo
            if j + 1 >= n:
                continue
            tail = slice(jo + 1, ax.shape[0])
            cross = np.abs(ax[jo] * ay[tail] - ay[jo] * ax[tail])
            ok = (cross * lo_b >= two_s * lo_a) & (cross * hi_b <= two_s * hi_a)
            total += int(np.count_nonzero(ok))
    return total


def count_unit_pairs(x: np.ndarray, y: np.ndarray, s: np.ndarray) -> int:
    """Pairs i<j with |x_i y_j - y_i x_j| == s_i s_j, exact in int64."""
    x = np.ascontiguousarray(x, dtype=np.int64)
    y = np.ascontiguousarray(y, dtype=np.int64)
    s = np.ascontiguousarray(s, dtype=np.int64)
    if active_backend() == "numba":
        _apply_thread_cap()
        return int(_unit_pairs_numba(x, y, s))
    return _unit_pairs_numpy(x, y, s)


def count_unit_triples(x: np.ndarray, y: np.ndarray, z: np.ndarray,
                       s: np.ndarray) -> int:
    """Triples i<j<l with |det(cols)| == s_i s_j s_l, exact in int64."""
    x = np.ascontiguousarray(x, dtype=np.int64)
    y = np.ascontiguousarray(y, dtype=np.int64)
    z = np.ascontiguousarray(z, dtype=np.int64)
    s = np.ascontiguousarray(s, dtype=np.int64)
    if active_backend() == "numba":
        _apply_thread_cap()
        return int(_unit_triples_numba(x, y, z, s))
    return _unit_triples_numpy(x, y, z, s)


def count_area_triples(x: np.ndarray, y: np.ndarray, lo_a: int, lo_b: int,
                       hi_a: int, hi_b: int, scale2: int) -> int:
    """Triples i<j<l whose doubled scaled cross product lies in the band
    [2*scale2*lo, 2*scale2*hi] with lo = lo_a/lo_b, hi = hi_a/hi_b."""
    x = np.ascontiguousarray(x, dtype=np.int64)
    y = np.ascontiguousarray(y, dtype=np.int64)
    if active_backend() == "numba":
        _apply_thread_cap()
        return int(_area_triples_numba(x, y, lo_a, lo_b, hi_a, hi_b, scale2))
    return _area_triples_numpy(x, y, lo_a, lo_b, hi_a, hi_b, scale2)
