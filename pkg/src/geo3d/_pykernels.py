"""Pure-Python (numpy) implementations of the hot kernels.

These mirror the compiled versions in ``geo3d._speedups`` operation for
operation; ``geo3d.kernels`` picks whichever is available.  Each function is
deterministic: repeated calls on the same inputs give identical bytes.
"""

from __future__ import annotations

import math

import numpy as np


def derivative_grids(
    values: np.ndarray, missing: np.ndarray, cellsize: float
) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """First and second partials of a height grid by 3x3 central differences.

    Returns (p, q, r, s, t, ok) where ok marks cells with a complete 3x3
    neighborhood (interior cell, no missing neighbors).  Values outside ok
    are zero-filled and must be ignored by callers.

    Sign convention: row 0 is the northernmost row, so +q points north.
    """
    nrows, ncols = values.shape
    h = float(cellsize)
    p = np.zeros((nrows, ncols), dtype=np.float64)
    q = np.zeros_like(p)
    r = np.zeros_like(p)
    s = np.zeros_like(p)
    t = np.zeros_like(p)
    ok = np.zeros((nrows, ncols), dtype=bool)
    if nrows < 3 or ncols < 3:
        return p, q, r, s, t, ok

    v = np.where(missing, 0.0, values)
    C = v[1:-1, 1:-1]
    N = v[:-2, 1:-1]
    S = v[2:, 1:-1]
    W = v[1:-1, :-2]
    E = v[1:-1, 2:]
    NW = v[:-2, :-2]
    NE = v[:-2, 2:]
    SW = v[2:, :-2]
    SE = v[2:, 2:]

    good = ~missing
    complete = (
        good[1:-1, 1:-1]
        & good[:-2, 1:-1] & good[2:, 1:-1]
        & good[1:-1, :-2] & good[1:-1, 2:]
        & good[:-2, :-2] & good[:-2, 2:]
        & good[2:, :-2] & good[2:, 2:]
    )

    p[1:-1, 1:-1] = (E - W) / (2.0 * h)
    q[1:-1, 1:-1] = (N - S) / (2.0 * h)
    r[1:-1, 1:-1] = (E - 2.0 * C + W) / (h * h)
    t[1:-1, 1:-1] = (N - 2.0 * C + S) / (h * h)
    s[1:-1, 1:-1] = (NE - NW - SE + SW) / (4.0 * h * h)
    ok[1:-1, 1:-1] = complete

    for a in (p, q, r, s, t):
        a[~ok] = 0.0
    return p, q, r, s, t, ok


def idw_many(
    x: np.ndarray,
    y: np.ndarray,
    z: np.ndarray,
    qx: np.ndarray,
    qy: np.ndarray,
    power: float,
    k: int,
) -> np.ndarray:
    """Inverse-distance-weighted estimates at many query locations.

    Sample arrays must already be in canonical order (callers sort by (y, x));
    neighbors are the k nearest by (squared distance, index) and weights are
    accumulated in ascending index order, which makes the result invariant to
    the caller's original point ordering.
    """
    n = x.shape[0]
    kk = min(int(k), n)
    expo = -power / 2.0
    out = np.empty(qx.shape[0], dtype=np.float64)
    for m in range(qx.shape[0]):
        d2 = (x - qx[m]) ** 2 + (y - qy[m]) ** 2
        if kk < n:
            order = np.argsort(d2, kind="stable")[:kk]
            order.sort()
        else:
            order = np.arange(n)
        hit = -1
        for idx in order:
            if d2[idx] < 1e-24:
                hit = idx
                break
        if hit >= 0:
            out[m] = z[hit]
            continue
        wsum = 0.0
        vsum = 0.0
        for idx in order:
            w = math.pow(d2[idx], expo)
            wsum += w
            vsum += w * z[idx]
        out[m] = vsum / wsum
    return out


def variogram_accumulate(
    x: np.ndarray, y: np.ndarray, z: np.ndarray, lag_width: float, n_lags: int
) -> tuple[np.ndarray, np.ndarray]:
    """Per-bin sums of squared value differences and pair counts.

    Bin b spans (b*w, (b+1)*w]; pairs beyond the last bin are dropped.  The
    i<j pair order fixes the summation order.
    """
    n = x.shape[0]
    sums = np.zeros(n_lags, dtype=np.float64)
    counts = np.zeros(n_lags, dtype=np.int64)
    w = float(lag_width)
    for i in range(n - 1):
        dx = x[i + 1 :] - x[i]
        dy = y[i + 1 :] - y[i]
        d = np.sqrt(dx * dx + dy * dy)
        idx = np.ceil(d / w).astype(np.int64) - 1
        keep = (idx >= 0) & (idx < n_lags)
        if not keep.any():
            continue
        dz = z[i + 1 :][keep] - z[i]
        np.add.at(sums, idx[keep], dz * dz)
        np.add.at(counts, idx[keep], 1)
    return sums, counts


def levenshtein(a: str, b: str) -> int:
    """Edit distance with unit insert/delete/substitute costs."""
    if a == b:
        return 0
    if not a:
        return len(b)
    if not b:
        return len(a)
    prev = list(range(len(b) + 1))
    cur = [0] * (len(b) + 1)
    for i, ca in enumerate(a, start=1):
        cur[0] = i
        for j, cb in enumerate(b, start=1):
            cost = 0 if ca == cb else 1
            cur[j] = min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + cost)
        prev, cur = cur, prev
    return prev[len(b)]
