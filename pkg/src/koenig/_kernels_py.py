"""Pure-Python row-reduction kernels (fallback for the compiled ``_kernels``)."""


def rref_inplace(rows, ncols):
    """Reduce ``rows`` (lists of field elements) to reduced echelon form.

    Pivots are monic; zero rows are dropped from ``rows``.  Returns the list
    of pivot columns, one per remaining row.
    """
    pivots = []
    rank = 0
    nrows = len(rows)
    for c in range(ncols):
        if rank == nrows:
            break
        pr = -1
        for r in range(rank, nrows):
            if rows[r][c]:
                pr = r
                break
        if pr < 0:
            continue
        rows[rank], rows[pr] = rows[pr], rows[rank]
        prow = rows[rank]
        inv = 1 / prow[c]
        if inv != 1:
            for j in range(c, ncols):
                if prow[j]:
                    prow[j] = prow[j] * inv
        nz = [j for j in range(c + 1, ncols) if prow[j]]
        for r in range(nrows):
            if r == rank:
                continue
            row = rows[r]
            f = row[c]
            if f:
                row[c] = row[c] - f
                for j in nz:
                    row[j] = row[j] - f * prow[j]
        pivots.append(c)
        rank += 1
    del rows[rank:]
    return pivots


def rref_modp(rows, ncols, p):
    """Same contract as :func:`rref_inplace` for rows of ints modulo ``p``."""
    rows[:] = [[x % p for x in row] for row in rows]
    pivots = []
    rank = 0
    nrows = len(rows)
    for c in range(ncols):
        if rank == nrows:
            break
        pr = -1
        for r in range(rank, nrows):
            if rows[r][c]:
                pr = r
                break
        if pr < 0:
            continue
        rows[rank], rows[pr] = rows[pr], rows[rank]
        prow = rows[rank]
        inv = pow(prow[c], -1, p)
        for j in range(c, ncols):
            prow[j] = prow[j] * inv % p
        nz = [j for j in range(c + 1, ncols) if prow[j]]
        for r in range(nrows):
            if r == rank:
                continue
            row = rows[r]
            f = row[c]
            if f:
                row[c] = 0
                for j in nz:
                    row[j] = (row[j] - f * prow[j]) % p
        pivots.append(c)
        rank += 1
    del rows[rank:]
    return pivots


def struct_mul(xs, ys, rows, out):
    """Accumulate ``x y`` into the dense list ``out``.

    ``xs``/``ys`` are lists of ``(index, coefficient)``; ``rows[i][j]`` is a
    list of ``(k, c)`` with ``b_i b_j = sum c b_k``.
    """
    for i, a in xs:
        row = rows.get(i)
        if not row:
            continue
        for j, b in ys:
            t = row.get(j)
            if t:
                ab = a * b
                for k, c in t:
                    out[k] = out[k] + ab * c
    return out
