import random
from fractions import Fraction

import pytest

from legendrian.acceptance import rank_one_albert
from legendrian.catalog import catalog_cubic, catalog_list, so_singular_test
from legendrian.cubic import change_basis, cubic_from_poly, hessian_nonzero, singular_member
from legendrian.errors import PreconditionError
from legendrian.exact.linalg import bareiss_det
from legendrian.exact.poly import MPoly
from legendrian.jordan import (
    AlbertElement,
    Octonion,
    albert_det,
    jordan_product,
    octonion_mul,
    pfaffian6,
)

e = [Octonion.basis(i) for i in range(8)]


def rand_oct(rng):
    return Octonion([Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(8)])


def test_octonion_unit_and_squares():
    x = Octonion([1, 2, 3, 4, 5, 6, 7, 8])
    assert e[0] * x == x == x * e[0]
    for i in range(1, 8):
        assert e[i] * e[i] == -e[0]
    for i in range(1, 8):
        for j in range(1, 8):
            if i != j:
                assert e[i] * e[j] == -(e[j] * e[i])


def test_octonion_norm_example():
    x = e[1] + e[3] * 2
    y = e[2] - e[7]
    assert x.norm() == 5 and y.norm() == 2
    assert octonion_mul(x, y).norm() == 10


def test_octonions_alternative_not_associative():
    rng = random.Random(2)
    a, b = rand_oct(rng), rand_oct(rng)
    assert (a * a) * b == a * (a * b)
    assert (b * a) * a == b * (a * a)
    assert (e[1] * e[2]) * e[4] != e[1] * (e[2] * e[4])
    assert (a * b).conj() == b.conj() * a.conj()
    assert a * a.conj() == Octonion.real(a.norm())


def test_albert_det_examples():
    z = Octonion([0] * 8)
    assert albert_det(AlbertElement([2, 3, 5], [z, z, z])) == 30
    assert albert_det(AlbertElement([1, 1, 1], [e[0], z, z])) == 0


def test_adjugate_identity_random():
    rng = random.Random(7)
    for _ in range(10):
        A = AlbertElement([rng.randint(-3, 3) for _ in range(3)], [rand_oct(rng) for _ in range(3)])
        assert jordan_product(A, A.sharp()) == AlbertElement.identity().scale(albert_det(A))
        # sharp of sharp is N(A) A
        assert A.sharp().sharp() == A.scale(albert_det(A))


def test_rank_one_albert():
    rng = random.Random(4)
    for _ in range(10):
        A = rank_one_albert(rng)
        assert A.sharp().is_zero() and albert_det(A) == 0


def test_albert_vector_roundtrip():
    v = list(range(27))
    assert AlbertElement.from_vector(v).to_vector() == v
    with pytest.raises(ValueError):
        AlbertElement.from_vector(v[:5])


def test_pfaffian6():
    J = [[0, 1], [-1, 0]]
    m = [[0] * 6 for _ in range(6)]
    for b in range(3):
        for i in range(2):
            for j in range(2):
                m[2 * b + i][2 * b + j] = J[i][j]
    assert pfaffian6(m) == 1
    rng = random.Random(1)
    for _ in range(20):
        a = [[Fraction(0)] * 6 for _ in range(6)]
        for i in range(6):
            for j in range(i + 1, 6):
                a[i][j] = Fraction(rng.randint(-5, 5), rng.randint(1, 3))
                a[j][i] = -a[i][j]
        assert pfaffian6(a) ** 2 == bareiss_det(a)
    u, v = [1, 2, 0, 1, 3, 1], [0, 1, 1, 2, 1, 5]
    assert pfaffian6([[u[i] * v[j] - u[j] * v[i] for j in range(6)] for i in range(6)]) == 0
    with pytest.raises(ValueError):
        pfaffian6([[1] * 6 for _ in range(6)])


def test_catalog_listing_and_errors():
    assert set(catalog_list()) >= {"so7", "so8", "soN", "g2", "F4", "E6", "E7", "E8"}
    with pytest.raises(PreconditionError):
        catalog_cubic("so3")
    with pytest.raises(PreconditionError):
        catalog_cubic("soN", 3)
    with pytest.raises(PreconditionError):
        catalog_cubic("soN")


@pytest.mark.parametrize("name, n, dim", [
    ("so7", None, 2), ("so8", None, 3), ("soN", 5, 5), ("g2", None, 1),
    ("F4", None, 6), ("E6", None, 9), ("E7", None, 15), ("E8", None, 27),
])
def test_catalog_dimensions_and_hessian(name, n, dim):
    entry = catalog_cubic(name, n)
    assert entry.n == dim == entry.cubic.n
    assert hessian_nonzero(entry.cubic)
    assert entry.description


def test_so8_singular_axes():
    f = catalog_cubic("so8").cubic
    assert f.coeffs == {(0, 1, 2): 1}
    assert all(singular_member(f, v) for v in ([1, 0, 0], [0, 2, 0], [0, 0, -1]))
    assert not singular_member(f, [1, 1, 0])


def test_son_split_form_matches_xyz_at_n3():
    # y3 (y1^2 - y2^2) is xyz after a rational change of basis
    split = catalog_cubic("soN", 4).split_cubic
    assert split.entry(0, 0, 3) == 2 and split.entry(1, 1, 3) == -2
    xyz = catalog_cubic("so8").cubic
    y = MPoly.gens(3)
    assert change_basis(xyz, [[1, 1, 0], [1, -1, 0], [0, 0, 1]]) == cubic_from_poly(y[2] * (y[0] ** 2 - y[1] ** 2))


def test_son_split_singular_points():
    n = 5
    f = catalog_cubic("soN", n).split_cubic
    test = so_singular_test([1, -1, 1, -1])
    for v in ([1, 1, 0, 0, 0], [2, 2, 3, 3, 0], [0, 0, 0, 0, 1], [1, 1, 0, 0, 1], [1, 0, 0, 0, 0]):
        assert singular_member(f, v) == test(v)
    assert singular_member(f, [0, 0, 0, 0, 1]) and not singular_member(f, [1, 1, 0, 0, 1])


def test_severi_rank_strata():
    rng = random.Random(8)
    f4, e6, e7 = catalog_cubic("F4"), catalog_cubic("E6"), catalog_cubic("E7")
    for _ in range(10):
        a = [rng.randint(-3, 3) for _ in range(3)]
        b = [rng.randint(-3, 3) for _ in range(3)]
        sym = [a[0] * a[0], a[1] * a[1], a[2] * a[2], a[0] * a[1], a[0] * a[2], a[1] * a[2]]
        assert singular_member(f4.cubic, sym) and f4.is_singular(sym)
        full = [a[i] * b[j] for i in range(3) for j in range(3)]
        assert singular_member(e6.cubic, full) and e6.is_singular(full)
        u = [rng.randint(-2, 2) for _ in range(6)]
        w = [rng.randint(-2, 2) for _ in range(6)]
        wedge = [u[i] * w[j] - u[j] * w[i] for i in range(6) for j in range(i + 1, 6)]
        assert singular_member(e7.cubic, wedge) and e7.is_singular(wedge)
    # rank two points lie on the cubic but are smooth
    assert not singular_member(f4.cubic, [1, 1, 0, 0, 0, 0])
    assert not singular_member(e6.cubic, [1, 0, 0, 0, 1, 0, 0, 0, 0])
    two = [1 if (i, j) in ((0, 1), (2, 3)) else 0 for i in range(6) for j in range(i + 1, 6)]
    assert not singular_member(e7.cubic, two)


def test_e8_singular_is_sharp_zero():
    rng = random.Random(9)
    e8 = catalog_cubic("E8")
    for _ in range(5):
        A = rank_one_albert(rng)
        assert singular_member(e8.cubic, A.to_vector())
        B = A + rank_one_albert(rng)
        assert albert_det(B) == 0
        assert singular_member(e8.cubic, B.to_vector()) == B.sharp().is_zero()
    # the cubic polynomial agrees with the norm
    A = AlbertElement([1, 2, 3], [rand_oct(rng) for _ in range(3)])
    assert e8.cubic.to_poly().evaluate(A.to_vector()) == albert_det(A)
