"""Pure-Python versions of the embedding kernels (fallback backend)."""

from __future__ import annotations

import numpy as np


def extensions(embs, rm, out_ptr, out_idx, out_dly, in_ptr, in_idx, in_dly):
    """All one-node forward extensions of every embedding.

    For row ``r`` and rightmost-path position ``i`` every neighbour ``y`` of
    ``embs[r, i]`` that is not already in the row yields one record
    ``(r, i, direction, delay id, y)``; direction 0 follows an out-edge,
    1 an in-edge.
    """
    rows, pos, dirs, dly, nbr = [], [], [], [], []
    out_ptr = out_ptr.tolist()
    in_ptr = in_ptr.tolist()
    out_idx = out_idx.tolist()
    in_idx = in_idx.tolist()
    out_dly = out_dly.tolist()
    in_dly = in_dly.tolist()
    rm = [int(i) for i in rm]
    for r, row in enumerate(embs.tolist()):
        used = set(row)
        for i in rm:
            x = row[i]
            for e in range(out_ptr[x], out_ptr[x + 1]):
                y = out_idx[e]
                if y not in used:
                    rows.append(r), pos.append(i), dirs.append(0), dly.append(out_dly[e]), nbr.append(y)
            for e in range(in_ptr[x], in_ptr[x + 1]):
                y = in_idx[e]
                if y not in used:
                    rows.append(r), pos.append(i), dirs.append(1), dly.append(in_dly[e]), nbr.append(y)
    return (np.asarray(rows, dtype=np.int64), np.asarray(pos, dtype=np.int32),
            np.asarray(dirs, dtype=np.int32), np.asarray(dly, dtype=np.int32),
            np.asarray(nbr, dtype=np.int32))


def induced(embs, ptr, idx, dly):
    """Induced adjacency of each embedding in pattern coordinates.

    ``out[r, p * k + q]`` is ``delay id + 1`` when the data graph has an edge
    from ``embs[r, p]`` to ``embs[r, q]`` and 0 otherwise.
    """
    n, k = embs.shape
    out = np.zeros((n, k * k), dtype=np.int32)
    ptr = ptr.tolist()
    idx = idx.tolist()
    dly = dly.tolist()
    for r, row in enumerate(embs.tolist()):
        where = {x: q for q, x in enumerate(row)}
        for p, x in enumerate(row):
            for e in range(ptr[x], ptr[x + 1]):
                q = where.get(idx[e])
                if q is not None:
                    out[r, p * k + q] = dly[e] + 1
    return out
