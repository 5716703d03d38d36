"""Pure-Python/numpy fallback for the compiled kernels in ``_kernels.pyx``.

Arithmetic mirrors the compiled loops operation for operation so the two
backends agree bit for bit.
"""

import math

import numpy as np

_BLOCK = 256


def knn_search(ref, queries, k, skip):
    nq, n = queries.shape[0], ref.shape[0]
    out_idx = np.empty((nq, k), dtype=np.int64)
    out_dist = np.empty((nq, k), dtype=np.float64)
    for start in range(0, nq, _BLOCK):
        stop = min(start + _BLOCK, nq)
        dist = _distances(queries[start:stop], ref)
        rows = np.arange(stop - start)
        sk = np.asarray(skip[start:stop])
        has_skip = sk >= 0
        dist[rows[has_skip], sk[has_skip]] = np.inf
        if k < n:
            kth = np.partition(dist, k - 1, axis=1)[:, k - 1]
        for r in range(stop - start):
            row = dist[r]
            if k < n:
                cand = np.flatnonzero(row <= kth[r])
            else:
                cand = np.arange(n)
            if has_skip[r]:
                cand = cand[cand != sk[r]]
            order = cand[np.argsort(row[cand], kind="stable")][:k]
            out_idx[start + r] = order
            out_dist[start + r] = row[order]
    return out_idx, out_dist


def _distances(queries, ref):
    # per-feature accumulation keeps the summation order of the compiled loop
    s = np.zeros((queries.shape[0], ref.shape[0]))
    for j in range(ref.shape[1]):
        diff = queries[:, j, None] - ref[None, :, j]
        s = s + diff * diff
    return np.sqrt(s)


def pegasos_train(X, y, order, lam, w):
    rows = X.tolist()
    ys = list(y)
    ws = list(w)
    d = len(ws)
    radius = 1.0 / math.sqrt(lam)
    for step, i in enumerate(order.tolist()):
        x = rows[i]
        eta = 1.0 / (lam * (step + 1))
        margin = 0.0
        for j in range(d):
            margin = margin + ws[j] * x[j]
        margin = ys[i] * margin
        scale = 1.0 - eta * lam
        ws = [v * scale for v in ws]
        if margin < 1.0:
            coef = eta * ys[i]
            ws = [ws[j] + coef * x[j] for j in range(d)]
        norm2 = 0.0
        for j in range(d):
            norm2 = norm2 + ws[j] * ws[j]
        if norm2 > 0.0:
            shrink = radius / math.sqrt(norm2)
            if shrink < 1.0:
                ws = [v * shrink for v in ws]
    w[:] = ws
