"""Named cubic forms of Legendrian varieties attached to simple Lie algebras.

Each entry carries its cubic, a short geometric description and an
independent test for the singular locus of the cubic cone (used as an
oracle against ``f(v, v, .) = 0``).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .cubic import CubicForm, cubic_from_poly
from .errors import PreconditionError
from .exact.linalg import rank
from .exact.poly import MPoly
from .jordan import AlbertElement, albert_norm_generic, det3_generic, pfaffian_generic

NAMES = ("so7", "so8", "soN", "g2", "F4", "E6", "E7", "E8")


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    n: int
    cubic: CubicForm
    description: str
    singular_test: Callable
    algebra: str
    split_cubic: CubicForm | None = None

    def is_singular(self, v) -> bool:
        return self.singular_test([Fraction(x) for x in v])


def _sym3(v):
    a, b, c, d, e, f = v
    return [[a, d, e], [d, b, f], [e, f, c]]


def _full3(v):
    return [list(v[0:3]), list(v[3:6]), list(v[6:9])]


def _skew6(v):
    zero = v[0] * 0
    m = [[zero] * 6 for _ in range(6)]
    pos = 0
    for i in range(6):
        for j in range(i + 1, 6):
            m[i][j] = v[pos]
            m[j][i] = -v[pos]
            pos += 1
    return m


def _albert_parts(v):
    return list(v[:3]), [tuple(v[3:11]), tuple(v[11:19]), tuple(v[19:27])]


def _so_poly(n, signs):
    y = MPoly.gens(n)
    quad = MPoly.zero(n)
    for i in range(n - 1):
        quad = quad + y[i] * y[i] * signs[i]
    return y[n - 1] * quad


def so_singular_test(signs):
    """Singularity of y_n * sum s_i y_i^2: either y_n = 0 = q(head) or head = 0."""
    def test(v):
        n = len(v)
        head = v[: n - 1]
        if not any(head):
            return True
        q = sum(s * x * x for s, x in zip(signs, head))
        return v[n - 1] == 0 and q == 0

    return test


def catalog_list():
    return list(NAMES)


def catalog_cubic(name: str, n: int | None = None) -> CatalogEntry:
    """The catalog entry ``name``; ``soN`` needs its dimension ``n >= 4``."""
    if name == "so7":
        y = MPoly.gens(2)
        p = y[0] * y[0] * y[1]
        return CatalogEntry(
            "so7", 2, cubic_from_poly(p),
            "binary cubic s^2 t: a double point and a simple point on P^1; "
            "the singular locus is the double point",
            lambda v: v[0] == 0, "so(7)",
        )
    if name == "so8":
        y = MPoly.gens(3)
        p = y[0] * y[1] * y[2]
        return CatalogEntry(
            "so8", 3, cubic_from_poly(p),
            "xyz: three lines in P^2; the singular locus is their three intersection points",
            lambda v: sum(1 for x in v if x == 0) >= 2, "so(8)",
        )
    if name == "soN":
        if n is None:
            raise PreconditionError("soN needs a dimension n")
        if n < 4:
            raise PreconditionError(f"soN needs n >= 4, got {n}")
        plus = [1] * (n - 1)
        split = [(-1) ** i for i in range(n - 1)]
        return CatalogEntry(
            "soN", n, cubic_from_poly(_so_poly(n, plus)),
            "hyperplane y_n = 0 together with a quadric cone with vertex e_n; the singular "
            "locus is the vertex and the quadric inside the hyperplane",
            so_singular_test(plus), f"so({n + 5})",
            split_cubic=cubic_from_poly(_so_poly(n, split)),
        )
    if name == "g2":
        y = MPoly.gens(1)
        return CatalogEntry(
            "g2", 1, cubic_from_poly(y[0] ** 3),
            "s^3 in one variable: the cubic has no points in P^0; only 0 is singular",
            lambda v: v[0] == 0, "g2",
        )
    if name == "F4":
        p = det3_generic(_sym3(MPoly.gens(6)))
        return CatalogEntry(
            "F4", 6, cubic_from_poly(p),
            "determinant of symmetric 3 x 3 matrices (a11, a22, a33, a12, a13, a23); "
            "singular points have rank at most 1",
            lambda v: rank(_sym3(v)) <= 1, "f4",
        )
    if name == "E6":
        p = det3_generic(_full3(MPoly.gens(9)))
        return CatalogEntry(
            "E6", 9, cubic_from_poly(p),
            "determinant of 3 x 3 matrices in row-major coordinates; "
            "singular points have rank at most 1",
            lambda v: rank(_full3(v)) <= 1, "e6",
        )
    if name == "E7":
        p = pfaffian_generic(_skew6(MPoly.gens(15)))
        return CatalogEntry(
            "E7", 15, cubic_from_poly(p),
            "Pfaffian of skew 6 x 6 matrices, coordinates a_ij (i < j) in lexicographic order; "
            "singular points have rank at most 2",
            lambda v: rank(_skew6(v)) <= 2, "e7",
        )
    if name == "E8":
        alphas, xs = _albert_parts(MPoly.gens(27))
        p = albert_norm_generic(alphas, xs)
        return CatalogEntry(
            "E8", 27, cubic_from_poly(p),
            "cubic norm of the exceptional Jordan algebra, coordinates (a1, a2, a3, x1, x2, x3); "
            "singular points are the elements with X# = 0",
            lambda v: AlbertElement.from_vector(v).sharp().is_zero(), "e8",
        )
    raise PreconditionError(f"unknown catalog cubic {name!r}; known: {', '.join(NAMES)}")
