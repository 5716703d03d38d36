# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops.

Floating-point operations are performed in the same order as the pure-Python
fallback in ``_kernels_py`` (the extension is built with FMA contraction
disabled), so both backends return bit-identical results.
"""

import numpy as np

from libc.math cimport sqrt


def knn_search(const double[:, ::1] ref, const double[:, ::1] queries,
               Py_ssize_t k, const long long[::1] skip):
    """Exact k nearest reference rows of each query row.

    Rows are ranked by (Euclidean distance, row index). ``skip[q]`` is a
    reference row excluded for query ``q`` (-1 for none). The caller
    guarantees ``1 <= k <= eligible rows``.
    """
    cdef Py_ssize_t nq = queries.shape[0]
    cdef Py_ssize_t n = ref.shape[0]
    cdef Py_ssize_t d = ref.shape[1]
    out_idx = np.empty((nq, k), dtype=np.int64)
    out_dist = np.empty((nq, k), dtype=np.float64)
    cdef long long[:, ::1] oi = out_idx
    cdef double[:, ::1] od = out_dist
    cdef Py_ssize_t q, i, j, pos, filled
    cdef double s, diff, dist
    with nogil:
        for q in range(nq):
            filled = 0
            for i in range(n):
                if i == skip[q]:
                    continue
                s = 0.0
                for j in range(d):
                    diff = queries[q, j] - ref[i, j]
                    s = s + diff * diff
                dist = sqrt(s)
                if filled == k:
                    # scan runs in index order: an equal distance never displaces
                    if dist >= od[q, k - 1]:
                        continue
                    pos = k - 1
                else:
                    pos = filled
                    filled += 1
                while pos > 0 and od[q, pos - 1] > dist:
                    od[q, pos] = od[q, pos - 1]
                    oi[q, pos] = oi[q, pos - 1]
                    pos -= 1
                od[q, pos] = dist
                oi[q, pos] = i
    return out_idx, out_dist


def pegasos_train(const double[:, ::1] X, const double[::1] y,
                  const long long[::1] order, double lam, double[::1] w):
    """Run Pegasos updates over ``order`` in place on ``w``.

    ``X`` carries a trailing constant column for the bias. Step ``t`` (1-based)
    uses learning rate ``1 / (lam * t)`` and projects onto the ball of radius
    ``1 / sqrt(lam)``.
    """
    cdef Py_ssize_t d = X.shape[1]
    cdef Py_ssize_t n_steps = order.shape[0]
    cdef Py_ssize_t step, i, j
    cdef double eta, margin, scale, coef, norm2, radius, shrink
    radius = 1.0 / sqrt(lam)
    with nogil:
        for step in range(n_steps):
            i = order[step]
            eta = 1.0 / (lam * (step + 1))
            margin = 0.0
            for j in range(d):
                margin = margin + w[j] * X[i, j]
            margin = y[i] * margin
            scale = 1.0 - eta * lam
            for j in range(d):
                w[j] = w[j] * scale
            if margin < 1.0:
                coef = eta * y[i]
                for j in range(d):
                    w[j] = w[j] + coef * X[i, j]
            norm2 = 0.0
            for j in range(d):
                norm2 = norm2 + w[j] * w[j]
            if norm2 > 0.0:
                shrink = radius / sqrt(norm2)
                if shrink < 1.0:
                    for j in range(d):
                        w[j] = w[j] * shrink
