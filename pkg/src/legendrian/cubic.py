"""Symmetric trilinear forms and the operations used on them.

Convention: a cubic form ``f`` and its polynomial ``p`` are related by
``p(u) = f(u, u, u) / 6``, so ``f_ijk`` is the third partial derivative of
``p``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations_with_replacement, permutations

from .errors import PreconditionError
from .exact.kernel import kernel_basis
from .exact.linalg import LinSubspace, bareiss_det
from .exact.poly import MPoly

SYMBOLIC_HESSIAN_MAX_N = 10


def _key(i, j, k):
    return tuple(sorted((i, j, k)))


class CubicForm:
    """Symmetric rational tensor ``f_ijk`` on ``Q^n``, stored for i <= j <= k."""

    def __init__(self, n: int, coeffs=None):
        self.n = n
        clean = {}
        for idx, c in (coeffs or {}).items():
            key = _key(*idx)
            if not all(0 <= i < n for i in key):
                raise ValueError(f"index {idx} out of range for n = {n}")
            c = Fraction(c)
            if c:
                clean[key] = c
        self.coeffs = clean

    @classmethod
    def zero(cls, n):
        return cls(n)

    def entry(self, i, j, k):
        return self.coeffs.get(_key(i, j, k), Fraction(0))

    def is_zero(self):
        return not self.coeffs

    @cached_property
    def pair_table(self):
        """For each sorted pair (j, k): the list of (x, f_xjk) with f_xjk != 0."""
        table = {}
        for (i, j, k), c in self.coeffs.items():
            for x, a, b in {(i, j, k), (j, i, k), (k, i, j)}:
                table.setdefault((a, b), []).append((x, c))
        for v in table.values():
            v.sort()
        return table

    def full_items(self):
        """All ordered index triples with nonzero value."""
        for (i, j, k), c in self.coeffs.items():
            for t in set(permutations((i, j, k))):
                yield t, c

    def __call__(self, u, v, w):
        total = Fraction(0)
        for (i, j, k), c in self.full_items():
            if u[i] and v[j] and w[k]:
                total += c * u[i] * v[j] * w[k]
        return total

    def __eq__(self, other):
        if not isinstance(other, CubicForm):
            return NotImplemented
        return self.n == other.n and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.n, frozenset(self.coeffs.items())))

    def __neg__(self):
        return CubicForm(self.n, {k: -c for k, c in self.coeffs.items()})

    def __add__(self, other):
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, 0) + c
        return CubicForm(self.n, out)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return CubicForm(self.n, {k: c * v for k, v in self.coeffs.items()})

    def __repr__(self):
        return f"CubicForm(n={self.n}, coeffs={dict(sorted(self.coeffs.items()))})"

    def to_poly(self) -> MPoly:
        terms = {}
        for (i, j, k), c in self.coeffs.items():
            exp = [0] * self.n
            for a in (i, j, k):
                exp[a] += 1
            mult = len(set(permutations((i, j, k))))
            terms[tuple(exp)] = c * mult / 6
        return MPoly(self.n, terms)

    def to_json(self):
        return {
            "n": self.n,
            "coeffs": [
                {"ijk": list(k), "num": str(c.numerator), "den": str(c.denominator)}
                for k, c in sorted(self.coeffs.items())
            ],
        }

    @classmethod
    def from_json(cls, data):
        n = int(data["n"])
        coeffs = {}
        for t in data["coeffs"]:
            i, j, k = (int(x) for x in t["ijk"])
            if not i <= j <= k:
                raise ValueError(f"cubic coefficient index {[i, j, k]} is not sorted")
            coeffs[(i, j, k)] = Fraction(int(t["num"]), int(t.get("den", "1")))
        return cls(n, coeffs)


def cubic_from_poly(p: MPoly) -> CubicForm:
    if p.is_zero():
        return CubicForm.zero(p.arity)
    if not p.is_homogeneous(3):
        raise ValueError("cubic_from_poly needs a homogeneous polynomial of degree 3")
    coeffs = {}
    for key in combinations_with_replacement(range(p.arity), 3):
        c = p.derivative_at_zero(key)
        if c:
            coeffs[key] = c
    return CubicForm(p.arity, coeffs)


def cubic_to_poly(f: CubicForm) -> MPoly:
    return f.to_poly()


def _check_len(f, v, name="vector"):
    if len(v) != f.n:
        raise ValueError(f"{name} has length {len(v)}, expected {f.n}")


def contract1(f: CubicForm, u):
    """The symmetric matrix ``f(u, ., .)``."""
    _check_len(f, u)
    n = f.n
    m = [[Fraction(0)] * n for _ in range(n)]
    for (i, j, k), c in f.full_items():
        if u[i]:
            m[j][k] += c * u[i]
    return m


def contract2(f: CubicForm, u, v):
    """The covector ``f(u, v, .)``."""
    _check_len(f, u)
    _check_len(f, v)
    out = [Fraction(0)] * f.n
    for (i, j, k), c in f.full_items():
        if u[i] and v[j]:
            out[k] += c * u[i] * v[j]
    return out


def singular_member(f: CubicForm, v) -> bool:
    """Whether ``v`` lies on the affine cone over Sing(Y): f(v, v, .) = 0."""
    return not any(contract2(f, v, v))


def det_laplace(matrix, one, zero):
    """Determinant over any commutative ring by memoised Laplace expansion."""
    n = len(matrix)
    memo = {}

    def minor(row, cols):
        if row == n:
            return one
        key = (row, cols)
        if key in memo:
            return memo[key]
        total = zero
        for pos, j in enumerate(cols):
            a = matrix[row][j]
            if not a:
                continue
            sub = minor(row + 1, cols[:pos] + cols[pos + 1:])
            term = a * sub
            total = total - term if pos % 2 else total + term
        memo[key] = total
        return total

    return minor(0, tuple(range(n)))


@dataclass
class HessianResult:
    nonzero: bool
    witness: list | None = None
    det: Fraction | None = None
    method: str = "witness"
    trials: int = 0
    notes: list = field(default_factory=list)

    def __bool__(self):
        return self.nonzero


def hessian_nonzero(f: CubicForm, seed=0) -> HessianResult:
    """Decide whether det f_u is a nonzero polynomial in u.

    A nonzero value at any rational point is a proof; the witness is the
    first such point found among the basis vectors, the all-ones vector and
    seeded pseudo-random points.  If none is found, small n is settled by
    expanding det f_u symbolically; for n > 10 the answer "zero" rests on
    n + 1 random trials with coordinates from a set of size 4n + 1.
    """
    n = f.n
    if n == 0:
        return HessianResult(True, [], Fraction(1), "trivial")
    candidates = []
    for i in range(n):
        e = [Fraction(0)] * n
        e[i] = Fraction(1)
        candidates.append(e)
    candidates.append([Fraction(1)] * n)
    rng = random.Random(f"hessian:{seed}:{n}")
    trials = 0

    def try_point(u):
        nonlocal trials
        trials += 1
        d = bareiss_det(contract1(f, u))
        return d

    for u in candidates:
        d = try_point(u)
        if d:
            return HessianResult(True, u, d, "witness", trials)
    if n <= SYMBOLIC_HESSIAN_MAX_N:
        for _ in range(3):
            u = [Fraction(rng.randint(-2 * n, 2 * n)) for _ in range(n)]
            d = try_point(u)
            if d:
                return HessianResult(True, u, d, "witness", trials)
        gens = MPoly.gens(n)
        zero = MPoly.zero(n)
        mat = [[zero] * n for _ in range(n)]
        for (i, j, k), c in f.full_items():
            mat[j][k] = mat[j][k] + gens[i] * c
        det = det_laplace(mat, MPoly.const(n, 1), zero)
        if det.is_zero():
            return HessianResult(False, None, None, "symbolic", trials)
        # symbolic determinant nonzero: find a point where it does not vanish
        for _ in range(64 * n):
            u = [Fraction(rng.randint(-2 * n, 2 * n)) for _ in range(n)]
            if det.evaluate(u):
                return HessianResult(True, u, bareiss_det(contract1(f, u)), "symbolic", trials)
        raise AssertionError("nonzero determinant polynomial vanished at every sample")
    for _ in range(n + 1):
        u = [Fraction(rng.randint(-2 * n, 2 * n)) for _ in range(n)]
        d = try_point(u)
        if d:
            return HessianResult(True, u, d, "witness", trials)
    return HessianResult(
        False, None, None, "randomized", trials,
        [f"det f_u vanished at {trials} points; coordinates drawn from [-{2 * n}, {2 * n}]"],
    )


def change_basis(f: CubicForm, g) -> CubicForm:
    """The form ``(u, v, w) -> f(g u, g v, g w)``."""
    n = f.n
    if len(g) != n or any(len(r) != n for r in g):
        raise ValueError("change of basis must be an n x n matrix")
    if not bareiss_det(g):
        raise ValueError("change of basis matrix is singular")
    gens = MPoly.gens(n)
    images = [sum((gens[a] * Fraction(g[i][a]) for a in range(n)), MPoly.zero(n)) for i in range(n)]
    return cubic_from_poly(f.to_poly().substitute(images))


def gauss_fiber(f: CubicForm, w) -> LinSubspace:
    """{v : f(v, w, .) is proportional to f(w, w, .)}."""
    _check_len(f, w)
    fww = contract2(f, w, w)
    if not any(fww):
        raise PreconditionError("f(w, w, .) = 0: w is a singular point of the cone")
    fw = contract1(f, w)
    i0 = next(i for i, x in enumerate(fww) if x)
    rows = []
    for i in range(f.n):
        if i == i0:
            continue
        rows.append([fw[i][j] * fww[i0] - fw[i0][j] * fww[i] for j in range(f.n)])
    if not rows:
        return LinSubspace.whole(f.n)
    return kernel_basis(rows)
