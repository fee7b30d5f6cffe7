"""Octonions, the Albert algebra and the rank-3 Jordan determinants.

The arithmetic helpers work on tuples of any commutative ring elements
(``Fraction`` or ``MPoly``), which is how the catalog cubics are produced
symbolically.
"""

from __future__ import annotations

from fractions import Fraction

from .exact.linalg import is_skew


# -- Cayley-Dickson ---------------------------------------------------------


def cd_conj(x):
    return (x[0],) + tuple(-c for c in x[1:])


def cd_mul(x, y):
    """Cayley-Dickson product with (a, b)(c, d) = (ac - conj(d) b, d a + b conj(c))."""
    if len(x) == 1:
        return (x[0] * y[0],)
    h = len(x) // 2
    a, b = x[:h], x[h:]
    c, d = y[:h], y[h:]
    left = tuple(p - q for p, q in zip(cd_mul(a, c), cd_mul(cd_conj(d), b)))
    right = tuple(p + q for p, q in zip(cd_mul(d, a), cd_mul(b, cd_conj(c))))
    return left + right


def cd_norm(x):
    total = x[0] * x[0]
    for c in x[1:]:
        total = total + c * c
    return total


def cd_trace(x):
    return x[0] + x[0]


class Octonion:
    __slots__ = ("c",)

    def __init__(self, coords):
        coords = tuple(Fraction(x) for x in coords)
        if len(coords) != 8:
            raise ValueError("an octonion has 8 coordinates")
        self.c = coords

    @classmethod
    def basis(cls, i):
        return cls([1 if j == i else 0 for j in range(8)])

    @classmethod
    def real(cls, r):
        return cls([r] + [0] * 7)

    def __mul__(self, other):
        if isinstance(other, Octonion):
            return Octonion(cd_mul(self.c, other.c))
        return Octonion([other * x for x in self.c])

    __rmul__ = __mul__

    def __add__(self, other):
        return Octonion([a + b for a, b in zip(self.c, other.c)])

    def __sub__(self, other):
        return Octonion([a - b for a, b in zip(self.c, other.c)])

    def __neg__(self):
        return Octonion([-a for a in self.c])

    def conj(self):
        return Octonion(cd_conj(self.c))

    def norm(self):
        return cd_norm(self.c)

    def trace(self):
        return 2 * self.c[0]

    def __eq__(self, other):
        return isinstance(other, Octonion) and self.c == other.c

    def __hash__(self):
        return hash(self.c)

    def __repr__(self):
        return f"Octonion({[str(x) for x in self.c]})"


def octonion_mul(x: Octonion, y: Octonion) -> Octonion:
    return x * y


# -- Albert algebra --------------------------------------------------------


class AlbertElement:
    """Hermitian octonionic 3x3 matrix

        [[a1,        x3,        conj(x2)],
         [conj(x3),  a2,        x1      ],
         [x2,        conj(x1),  a3      ]]

    with coordinates ordered (a1, a2, a3, x1, x2, x3) in ``to_vector``.
    """

    def __init__(self, alphas, xs):
        self.alphas = tuple(Fraction(a) for a in alphas)
        self.xs = tuple(x if isinstance(x, Octonion) else Octonion(x) for x in xs)
        if len(self.alphas) != 3 or len(self.xs) != 3:
            raise ValueError("an Albert element has three scalars and three octonions")

    @classmethod
    def from_vector(cls, v):
        if len(v) != 27:
            raise ValueError("an Albert element has 27 coordinates")
        return cls(v[:3], [v[3:11], v[11:19], v[19:27]])

    def to_vector(self):
        out = list(self.alphas)
        for x in self.xs:
            out.extend(x.c)
        return out

    @classmethod
    def identity(cls):
        z = Octonion([0] * 8)
        return cls((1, 1, 1), (z, z, z))

    def matrix(self):
        a1, a2, a3 = (Octonion.real(a) for a in self.alphas)
        x1, x2, x3 = self.xs
        return [[a1, x3, x2.conj()], [x3.conj(), a2, x1], [x2, x1.conj(), a3]]

    @classmethod
    def from_matrix(cls, m):
        for i in range(3):
            if any(m[i][i].c[1:]):
                raise ValueError("diagonal entries must be real")
        if not (m[1][0] == m[0][1].conj() and m[2][0] == m[0][2].conj() and m[2][1] == m[1][2].conj()):
            raise ValueError("matrix is not Hermitian")
        return cls([m[i][i].c[0] for i in range(3)], [m[1][2], m[2][0], m[0][1]])

    def __add__(self, other):
        return AlbertElement(
            [a + b for a, b in zip(self.alphas, other.alphas)],
            [a + b for a, b in zip(self.xs, other.xs)],
        )

    def scale(self, s):
        return AlbertElement([s * a for a in self.alphas], [x * s for x in self.xs])

    def __eq__(self, other):
        return isinstance(other, AlbertElement) and self.to_vector() == other.to_vector()

    def sharp(self):
        a1, a2, a3 = self.alphas
        x1, x2, x3 = self.xs
        return AlbertElement(
            (a2 * a3 - x1.norm(), a3 * a1 - x2.norm(), a1 * a2 - x3.norm()),
            ((x2 * x3).conj() - x1 * a1, (x3 * x1).conj() - x2 * a2, (x1 * x2).conj() - x3 * a3),
        )

    def is_zero(self):
        return not any(self.to_vector())

    def __repr__(self):
        return f"AlbertElement({[str(a) for a in self.alphas]}, {self.xs})"


def albert_norm_generic(alphas, xs):
    """Cubic norm a1 a2 a3 - sum a_i n(x_i) + t(x1 x2 x3) over any ring."""
    a1, a2, a3 = alphas
    x1, x2, x3 = xs
    t = cd_trace(cd_mul(cd_mul(x1, x2), x3))
    return a1 * a2 * a3 - a1 * cd_norm(x1) - a2 * cd_norm(x2) - a3 * cd_norm(x3) + t


def albert_det(A: AlbertElement) -> Fraction:
    return albert_norm_generic(A.alphas, [x.c for x in A.xs])


def _octo_matmul(x, y):
    zero = Octonion([0] * 8)
    out = [[zero] * 3 for _ in range(3)]
    for i in range(3):
        for j in range(3):
            s = zero
            for k in range(3):
                s = s + x[i][k] * y[k][j]
            out[i][j] = s
    return out


def jordan_product(x: AlbertElement, y: AlbertElement) -> AlbertElement:
    """(XY + YX) / 2 with octonionic matrix multiplication."""
    xy = _octo_matmul(x.matrix(), y.matrix())
    yx = _octo_matmul(y.matrix(), x.matrix())
    half = Fraction(1, 2)
    return AlbertElement.from_matrix([[(xy[i][j] + yx[i][j]) * half for j in range(3)] for i in range(3)])


# -- Pfaffians and 3x3 determinants --------------------------------------------


def pfaffian_generic(m):
    """Pfaffian by expansion along the first row; entries from any ring."""
    size = len(m)
    if size == 0:
        return 1
    if size % 2:
        return 0 * m[0][0]
    total = None
    for j in range(1, size):
        if not m[0][j]:
            continue
        keep = [k for k in range(1, size) if k != j]
        sub = [[m[a][b] for b in keep] for a in keep]
        term = m[0][j] * pfaffian_generic(sub)
        term = term if j % 2 == 1 else -term
        total = term if total is None else total + term
    return total if total is not None else 0 * m[0][1]


def pfaffian6(m) -> Fraction:
    if len(m) != 6 or any(len(r) != 6 for r in m):
        raise ValueError("pfaffian6 needs a 6 x 6 matrix")
    m = [[Fraction(x) for x in r] for r in m]
    if not is_skew(m):
        raise ValueError("matrix is not skew-symmetric")
    return Fraction(pfaffian_generic(m))


def det3_generic(m):
    return (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )
