# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels.

Each function mirrors its counterpart in ``geo3d._pykernels`` operation for
operation, including neighbor selection and accumulation order, so the two
backends agree to floating-point roundoff.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport ceil, pow, sqrt

cnp.import_array()


def derivative_grids(values, missing, cellsize):
    """First and second partials by 3x3 central differences; see
    geo3d._pykernels.derivative_grids for the contract."""
    cdef const double[:, ::1] v = np.ascontiguousarray(values, dtype=np.float64)
    cdef const cnp.uint8_t[:, ::1] miss = np.ascontiguousarray(
        np.asarray(missing, dtype=np.uint8)
    )
    cdef Py_ssize_t nrows = v.shape[0]
    cdef Py_ssize_t ncols = v.shape[1]
    cdef double h = cellsize

    p_arr = np.zeros((nrows, ncols), dtype=np.float64)
    q_arr = np.zeros((nrows, ncols), dtype=np.float64)
    r_arr = np.zeros((nrows, ncols), dtype=np.float64)
    s_arr = np.zeros((nrows, ncols), dtype=np.float64)
    t_arr = np.zeros((nrows, ncols), dtype=np.float64)
    ok_arr = np.zeros((nrows, ncols), dtype=np.uint8)
    cdef double[:, ::1] p = p_arr
    cdef double[:, ::1] q = q_arr
    cdef double[:, ::1] r = r_arr
    cdef double[:, ::1] s = s_arr
    cdef double[:, ::1] t = t_arr
    cdef cnp.uint8_t[:, ::1] ok = ok_arr

    cdef Py_ssize_t i, j, a, b
    cdef bint complete
    if nrows >= 3 and ncols >= 3:
        for i in range(1, nrows - 1):
            for j in range(1, ncols - 1):
                complete = True
                for a in range(i - 1, i + 2):
                    for b in range(j - 1, j + 2):
                        if miss[a, b]:
                            complete = False
                            break
                    if not complete:
                        break
                if not complete:
                    continue
                p[i, j] = (v[i, j + 1] - v[i, j - 1]) / (2.0 * h)
                q[i, j] = (v[i - 1, j] - v[i + 1, j]) / (2.0 * h)
                r[i, j] = (v[i, j + 1] - 2.0 * v[i, j] + v[i, j - 1]) / (h * h)
                t[i, j] = (v[i - 1, j] - 2.0 * v[i, j] + v[i + 1, j]) / (h * h)
                s[i, j] = (
                    v[i - 1, j + 1] - v[i - 1, j - 1] - v[i + 1, j + 1] + v[i + 1, j - 1]
                ) / (4.0 * h * h)
                ok[i, j] = 1

    return p_arr, q_arr, r_arr, s_arr, t_arr, ok_arr.view(np.bool_)


def idw_many(x, y, z, qx, qy, double power, int k):
    """IDW estimates at many queries; see geo3d._pykernels.idw_many."""
    cdef const double[::1] xv = np.ascontiguousarray(x, dtype=np.float64)
    cdef const double[::1] yv = np.ascontiguousarray(y, dtype=np.float64)
    cdef const double[::1] zv = np.ascontiguousarray(z, dtype=np.float64)
    cdef const double[::1] qxv = np.ascontiguousarray(qx, dtype=np.float64)
    cdef const double[::1] qyv = np.ascontiguousarray(qy, dtype=np.float64)
    cdef Py_ssize_t n = xv.shape[0]
    cdef Py_ssize_t nq = qxv.shape[0]
    cdef Py_ssize_t kk = k if k < n else n

    out_arr = np.empty(nq, dtype=np.float64)
    cdef double[::1] out = out_arr
    d2_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] d2 = d2_arr
    seld2_arr = np.empty(kk, dtype=np.float64)
    cdef double[::1] seld2 = seld2_arr
    selidx_arr = np.empty(kk, dtype=np.int64)
    cdef cnp.int64_t[::1] selidx = selidx_arr

    cdef double expo = -power / 2.0
    cdef Py_ssize_t m, i, cnt, lo, hi, mid, pos
    cdef double dx, dy, d2v, wsum, vsum, w
    cdef cnp.int64_t tmp_idx
    cdef Py_ssize_t hit, a, b_ins

    for m in range(nq):
        hit = -1
        if kk == n:
            # All samples participate; scan in index order directly.
            for i in range(n):
                dx = xv[i] - qxv[m]
                dy = yv[i] - qyv[m]
                d2[i] = dx * dx + dy * dy
            for i in range(n):
                if d2[i] < 1e-24:
                    hit = i
                    break
            if hit >= 0:
                out[m] = zv[hit]
                continue
            wsum = 0.0
            vsum = 0.0
            for i in range(n):
                w = pow(d2[i], expo)
                wsum += w
                vsum += w * zv[i]
            out[m] = vsum / wsum
            continue

        # Select the kk nearest by (squared distance, index): indices arrive
        # in ascending order, so ties insert after equal distances and the
        # sorted-selection invariant matches the lexicographic rule.
        cnt = 0
        for i in range(n):
            dx = xv[i] - qxv[m]
            dy = yv[i] - qyv[m]
            d2v = dx * dx + dy * dy
            d2[i] = d2v
            if cnt == kk and d2v >= seld2[kk - 1]:
                continue
            lo = 0
            hi = cnt
            while lo < hi:
                mid = (lo + hi) // 2
                if seld2[mid] > d2v:
                    hi = mid
                else:
                    lo = mid + 1
            if cnt < kk:
                cnt += 1
            for pos in range(cnt - 1, lo, -1):
                seld2[pos] = seld2[pos - 1]
                selidx[pos] = selidx[pos - 1]
            seld2[lo] = d2v
            selidx[lo] = i

        # Re-sort the selected indices ascending (insertion sort, kk small).
        for a in range(1, kk):
            tmp_idx = selidx[a]
            b_ins = a
            while b_ins > 0 and selidx[b_ins - 1] > tmp_idx:
                selidx[b_ins] = selidx[b_ins - 1]
                b_ins -= 1
            selidx[b_ins] = tmp_idx

        for a in range(kk):
            if d2[selidx[a]] < 1e-24:
                hit = selidx[a]
                break
        if hit >= 0:
            out[m] = zv[hit]
            continue
        wsum = 0.0
        vsum = 0.0
        for a in range(kk):
            i = selidx[a]
            w = pow(d2[i], expo)
            wsum += w
            vsum += w * zv[i]
        out[m] = vsum / wsum

    return out_arr


def variogram_accumulate(x, y, z, double lag_width, int n_lags):
    """Per-bin squared-difference sums and pair counts; see
    geo3d._pykernels.variogram_accumulate."""
    cdef const double[::1] xv = np.ascontiguousarray(x, dtype=np.float64)
    cdef const double[::1] yv = np.ascontiguousarray(y, dtype=np.float64)
    cdef const double[::1] zv = np.ascontiguousarray(z, dtype=np.float64)
    cdef Py_ssize_t n = xv.shape[0]

    sums_arr = np.zeros(n_lags, dtype=np.float64)
    counts_arr = np.zeros(n_lags, dtype=np.int64)
    cdef double[::1] sums = sums_arr
    cdef cnp.int64_t[::1] counts = counts_arr

    cdef Py_ssize_t i, j
    cdef double dx, dy, d, dz
    cdef long long idx
    for i in range(n - 1):
        for j in range(i + 1, n):
            dx = xv[j] - xv[i]
            dy = yv[j] - yv[i]
            d = sqrt(dx * dx + dy * dy)
            idx = <long long> ceil(d / lag_width) - 1
            if idx < 0 or idx >= n_lags:
                continue
            dz = zv[j] - zv[i]
            sums[idx] += dz * dz
            counts[idx] += 1
    return sums_arr, counts_arr


def levenshtein(a, b):
    """Edit distance; see geo3d._pykernels.levenshtein."""
    if a == b:
        return 0
    cdef Py_ssize_t la = len(a)
    cdef Py_ssize_t lb = len(b)
    if la == 0:
        return lb
    if lb == 0:
        return la

    cdef const cnp.uint32_t[::1] av = np.frombuffer(
        a.encode("utf-32-le"), dtype=np.uint32
    )
    cdef const cnp.uint32_t[::1] bv = np.frombuffer(
        b.encode("utf-32-le"), dtype=np.uint32
    )
    prev_arr = np.arange(lb + 1, dtype=np.int64)
    cur_arr = np.zeros(lb + 1, dtype=np.int64)
    cdef cnp.int64_t[::1] prev = prev_arr
    cdef cnp.int64_t[::1] cur = cur_arr

    cdef Py_ssize_t i, j
    cdef cnp.int64_t cost, best
    for i in range(1, la + 1):
        cur[0] = i
        for j in range(1, lb + 1):
            cost = 0 if av[i - 1] == bv[j - 1] else 1
            best = prev[j] + 1
            if cur[j - 1] + 1 < best:
                best = cur[j - 1] + 1
            if prev[j - 1] + cost < best:
                best = prev[j - 1] + cost
            cur[j] = best
        prev, cur = cur, prev
    return int(prev[lb])
