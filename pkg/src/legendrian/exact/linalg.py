"""Dense rational matrices, canonical subspaces and fraction-free elimination.

A ``RatMatrix`` is a plain list of rows of ``Fraction``.  Constraint systems
are usually assembled as :class:`SparseMatrix` (rows are ``{col: value}``).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm


def to_fraction_matrix(rows):
    return [[Fraction(x) for x in row] for row in rows]


def zeros(m, n):
    return [[Fraction(0)] * n for _ in range(m)]


def identity(n):
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def transpose(a):
    return [list(col) for col in zip(*a)]


def matmul(a, b):
    bt = transpose(b)
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in bt] for row in a]


def matvec(a, v):
    return [sum((x * y for x, y in zip(row, v)), Fraction(0)) for row in a]


def is_symmetric(a):
    n = len(a)
    return all(a[i][j] == a[j][i] for i in range(n) for j in range(i + 1, n))


def is_skew(a):
    n = len(a)
    return all(a[i][j] == -a[j][i] for i in range(n) for j in range(i, n))


def clear_denominators(values):
    """Scale a sequence of rationals to coprime integers with positive scale."""
    den = 1
    for x in values:
        den = lcm(den, Fraction(x).denominator)
    ints = [int(Fraction(x) * den) for x in values]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g > 1:
        ints = [x // g for x in ints]
    return ints


def bareiss_det(a) -> Fraction:
    """Exact determinant via fraction-free elimination on the integer-scaled matrix."""
    n = len(a)
    if n == 0:
        return Fraction(1)
    if any(len(r) != n for r in a):
        raise ValueError("determinant of a non-square matrix")
    scale = Fraction(1)
    m = []
    for row in a:
        den = 1
        for x in row:
            den = lcm(den, Fraction(x).denominator)
        m.append([int(Fraction(x) * den) for x in row])
        scale /= den
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        pk = m[k][k]
        rk = m[k]
        for i in range(k + 1, n):
            ri = m[i]
            c = ri[k]
            for j in range(k + 1, n):
                ri[j] = (pk * ri[j] - c * rk[j]) // prev
            ri[k] = 0
        prev = pk
    return sign * m[n - 1][n - 1] * scale


def rref(rows, ncols=None):
    """Reduced row echelon form over Q.  Returns (nonzero rows, pivot columns).

    Pivots are sought only in the first ``ncols`` columns; any further
    columns are carried along by the row operations.
    """
    m = [[Fraction(x) for x in r] for r in rows]
    if ncols is None:
        ncols = len(m[0]) if m else 0
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        prow = [x * inv for x in m[r]]
        m[r] = prow
        nz = [j for j in range(c, len(prow)) if prow[j]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                row = m[i]
                for j in nz:
                    row[j] -= f * prow[j]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows):
    return len(rref(rows)[1])


def solve(a, b):
    """One solution x of a x = b over Q, or None if inconsistent."""
    ncols = len(a[0]) if a else 0
    aug = [list(r) + [Fraction(bi)] for r, bi in zip(a, b)]
    red, piv = rref(aug, ncols + 1)
    if ncols in piv:
        return None
    x = [Fraction(0)] * ncols
    for row, c in zip(red, piv):
        x[c] = row[ncols]
    return x


def inverse(a):
    n = len(a)
    aug = [list(map(Fraction, r)) + e for r, e in zip(a, identity(n))]
    red, piv = rref(aug, 2 * n)
    if piv[:n] != list(range(n)) or len(piv) < n or piv[n - 1] != n - 1:
        raise ValueError("matrix is singular")
    return [row[n:] for row in red[:n]]


@dataclass(frozen=True)
class LinSubspace:
    """A subspace of Q^ambient_dim stored by its reduced echelon basis.

    Two equal subspaces have identical ``basis`` tuples.
    """

    ambient_dim: int
    basis: tuple

    @classmethod
    def span(cls, ambient_dim, vectors):
        vecs = [list(map(Fraction, v)) for v in vectors]
        for v in vecs:
            if len(v) != ambient_dim:
                raise ValueError("vector length does not match ambient dimension")
        red, _ = rref(vecs, ambient_dim) if vecs else ([], [])
        return cls(ambient_dim, tuple(tuple(r) for r in red))

    @classmethod
    def whole(cls, n):
        return cls(n, tuple(tuple(r) for r in identity(n)))

    @classmethod
    def zero(cls, n):
        return cls(n, ())

    @property
    def dim(self):
        return len(self.basis)

    def pivots(self):
        return [next(j for j, x in enumerate(row) if x) for row in self.basis]

    def contains(self, v):
        v = [Fraction(x) for x in v]
        if len(v) != self.ambient_dim:
            raise ValueError("vector length does not match ambient dimension")
        for row, p in zip(self.basis, self.pivots()):
            c = v[p]
            if c:
                v = [a - c * b for a, b in zip(v, row)]
        return not any(v)

    def is_subspace_of(self, other):
        return all(other.contains(v) for v in self.basis)

    def is_rref(self):
        red, _ = rref(self.basis, self.ambient_dim) if self.basis else ([], [])
        return tuple(tuple(r) for r in red) == self.basis


class SparseMatrix:
    """Row-sparse rational matrix; rows are dicts ``{column: Fraction}``."""

    __slots__ = ("ncols", "rows")

    def __init__(self, ncols, rows=None):
        self.ncols = ncols
        self.rows = []
        for r in rows or ():
            self.add_row(r)

    @classmethod
    def from_dense(cls, dense, ncols=None):
        if ncols is None:
            ncols = len(dense[0]) if dense else 0
        return cls(ncols, [{j: x for j, x in enumerate(r) if x} for r in dense])

    def add_row(self, row):
        clean = {int(j): Fraction(x) for j, x in row.items() if x}
        if clean:
            if max(clean) >= self.ncols or min(clean) < 0:
                raise ValueError("column index out of range")
            self.rows.append(clean)

    @property
    def nrows(self):
        return len(self.rows)

    def to_dense(self):
        out = zeros(len(self.rows), self.ncols)
        for i, r in enumerate(self.rows):
            for j, x in r.items():
                out[i][j] = x
        return out

    def integer_rows(self):
        """Rows scaled to primitive integer vectors, duplicates removed, order kept."""
        seen = set()
        out = []
        for r in self.rows:
            cols = sorted(r)
            ints = clear_denominators([r[j] for j in cols])
            lead = next(x for x in ints if x)
            if lead < 0:
                ints = [-x for x in ints]
            key = tuple(zip(cols, ints))
            if key not in seen:
                seen.add(key)
                out.append(dict(key))
        return out

    def apply(self, v):
        return [sum((x * v[j] for j, x in r.items()), Fraction(0)) for r in self.rows]

    def annihilates(self, v):
        """Exact test M v = 0 using integer arithmetic."""
        ints = clear_denominators(v) if any(v) else [0] * len(v)
        for r in self.rows:
            s = 0
            for j, x in r.items():
                s += x * ints[j]
            if s:
                return False
        return True


def as_sparse(m):
    if isinstance(m, SparseMatrix):
        return m
    return SparseMatrix.from_dense(m)


def bareiss_echelon(int_rows, ncols):
    """Fraction-free (Bareiss) forward elimination on sparse integer rows.

    Rows not touched at a step are rescaled lazily: a row last updated at
    step s carries entries equal to the Bareiss values at s, and the exact
    value at a later step k is ``row * p[k] / p[s]``.  Returns the echelon
    rows with their pivot columns, in pivot order.
    """
    active = [(dict(r), 0) for r in int_rows if r]
    pivots = []
    echelon = []
    pivot_vals = [1]  # pivot_vals[k] = Bareiss pivot after k steps
    for c in range(ncols):
        if not active:
            break
        k = len(pivots)
        cand = [idx for idx, (r, _) in enumerate(active) if r.get(c)]
        if not cand:
            continue
        # sparsest candidate keeps fill-in low
        pidx = min(cand, key=lambda idx: (len(active[idx][0]), idx))
        prow, ps = active[pidx]
        if ps != k:
            prow = {j: x * pivot_vals[k] // pivot_vals[ps] for j, x in prow.items()}
        pk = prow[c]
        prev = pivot_vals[k]
        new_active = []
        for idx, (r, s) in enumerate(active):
            if idx == pidx:
                continue
            rc = r.get(c)
            if not rc:
                new_active.append((r, s))
                continue
            if s != k:
                num, den = pivot_vals[k], pivot_vals[s]
                r = {j: x * num // den for j, x in r.items()}
                rc = r[c]
            out = {}
            for j, x in r.items():
                if j != c:
                    out[j] = pk * x
            for j, y in prow.items():
                if j != c:
                    v = out.get(j, 0) - rc * y
                    if v:
                        out[j] = v
                    else:
                        out.pop(j, None)
            out = {j: v // prev for j, v in out.items()}
            if out:
                new_active.append((out, k + 1))
        active = new_active
        pivots.append(c)
        echelon.append(prow)
        pivot_vals.append(pk)
    return echelon, pivots


def kernel_from_echelon(echelon, pivots, ncols):
    """Null space basis from echelon rows by back substitution over Q."""
    pivset = set(pivots)
    free = [j for j in range(ncols) if j not in pivset]
    basis = []
    for f in free:
        x = {f: Fraction(1)}
        for row, c in zip(reversed(echelon), reversed(pivots)):
            s = Fraction(0)
            for j, v in row.items():
                if j != c and j in x:
                    s += v * x[j]
            if s:
                x[c] = -s / row[c]
        vec = [Fraction(0)] * ncols
        for j, v in x.items():
            vec[j] = v
        basis.append(vec)
    return basis


def kernel_bareiss(m) -> LinSubspace:
    sm = as_sparse(m)
    rows = sm.integer_rows()
    echelon, pivots = bareiss_echelon(rows, sm.ncols)
    return LinSubspace.span(sm.ncols, kernel_from_echelon(echelon, pivots, sm.ncols))


def rank_bareiss(m):
    sm = as_sparse(m)
    return len(bareiss_echelon(sm.integer_rows(), sm.ncols)[1])
