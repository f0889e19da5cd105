"""Pure-Python twin of the compiled tile-scan kernel.

Same contract as ``_tilescan.scan_tile`` but with arbitrary-precision
integers, so it has no determinant or dimension limits.  The dispatcher in
``tiles`` picks this implementation when the compiled extension is missing,
disabled, or the inputs exceed its int64-safe bounds.
"""

from __future__ import annotations

_DENSE_SEEN_LIMIT = 1 << 22


def scan_tile(diag, flat, det, prune):
    """Graded-lex scan of the nonnegative orthant, one point per coset.

    ``diag``: diagonal of the HNF basis; ``flat``: row-major basis entries;
    ``det``: product of ``diag``; ``prune``: -1 scans until all ``det``
    cosets are represented, otherwise the scan aborts as soon as a shell
    above ``prune`` starts with cosets still missing.

    Returns ``(complete, diameter, points)``.  On completion ``points`` is
    the full tile in scan order and ``diameter`` its largest norm; on a
    pruned abort the result is ``(False, -1, ())``.
    """
    n = len(diag)
    strides = [1] * n
    for i in range(1, n):
        strides[i] = strides[i - 1] * diag[i - 1]
    # residues are encoded in mixed radix over the fundamental box
    dense = det <= _DENSE_SEEN_LIMIT
    seen = bytearray(det) if dense else set()
    points = []
    found = 0
    diameter = 0
    s = 0
    c = [0] * n
    while True:
        if prune >= 0 and s > prune:
            return (False, -1, ())
        if s > det:
            raise RuntimeError("scan passed the determinant shell bound")
        for j in range(n - 1):
            c[j] = 0
        c[n - 1] = s
        while True:
            r = c.copy()
            for i in range(n - 1, -1, -1):
                q = r[i] // diag[i]
                if q:
                    base = i * n
                    for j in range(i + 1):
                        r[j] -= q * flat[base + j]
            idx = 0
            for j in range(n):
                idx += r[j] * strides[j]
            if dense:
                fresh = not seen[idx]
                if fresh:
                    seen[idx] = 1
            else:
                fresh = idx not in seen
                if fresh:
                    seen.add(idx)
            if fresh:
                points.append(tuple(c))
                found += 1
                diameter = s
                if found == det:
                    return (True, diameter, tuple(points))
            # advance to the next composition of s in lexicographic order
            p = n - 1
            while p >= 0 and c[p] == 0:
                p -= 1
            if p <= 0:
                break
            m = c[p] - 1
            c[p] = 0
            c[p - 1] += 1
            c[n - 1] = m
        s += 1
