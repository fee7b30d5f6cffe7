"""Pure-Python Gauss-Jordan elimination over Z/p (fallback kernel)."""


def rref_mod(a, p):
    """Reduce ``a`` (a list of int rows, or a 2-d uint64 array) to RREF in place.

    Returns the pivot columns.  Arrays are converted to Python ints for the
    elimination and written back at the end.
    """
    array_in = not isinstance(a, list)
    rows = [[int(x) for x in r] for r in a] if array_in else a
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        if r >= nrows:
            break
        piv = next((i for i in range(r, nrows) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], -1, p)
        prow = [x * inv % p for x in rows[r]]
        rows[r] = prow
        nz = [j for j in range(c, ncols) if prow[j]]
        for i in range(nrows):
            if i == r:
                continue
            row = rows[i]
            f = row[c]
            if f:
                for j in nz:
                    row[j] = (row[j] - f * prow[j]) % p
        pivots.append(c)
        r += 1
    if array_in:
        for i, row in enumerate(rows):
            a[i, :] = row
    return pivots
