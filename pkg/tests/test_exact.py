import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from legendrian.errors import ComputationError
from legendrian.exact import modular
from legendrian.exact._modkernel_py import rref_mod as rref_mod_py
from legendrian.exact.kernel import kernel_basis
from legendrian.exact.linalg import (
    LinSubspace,
    SparseMatrix,
    bareiss_det,
    inverse,
    kernel_bareiss,
    matmul,
    identity,
    rank,
    rref,
    solve,
)
from legendrian.exact.poly import MPoly, monomials_upto

small = st.fractions(min_value=-5, max_value=5, max_denominator=4)


def random_matrix(rng, m, n, density=0.5, lo=-4, hi=4):
    return [
        [Fraction(rng.randint(lo, hi), rng.randint(1, 3)) if rng.random() < density else Fraction(0) for _ in range(n)]
        for _ in range(m)
    ]


def det_leibniz(a):
    from itertools import permutations

    n = len(a)
    total = Fraction(0)
    for p in permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if p[i] > p[j])
        term = Fraction(-1 if inv % 2 else 1)
        for i in range(n):
            term *= a[i][p[i]]
        total += term
    return total


# -- polynomials ------------------------------------------------------------


def test_poly_arithmetic_and_printing():
    x, y = MPoly.gens(2)
    p = (x + y) ** 2
    assert p == x * x + x * y * 2 + y * y
    assert str(p) == "y1^2 + 2*y1*y2 + y2^2"
    assert (p - p).is_zero()
    assert p.degree() == 2 and p.is_homogeneous(2)
    assert (p / 2).coeff((1, 1)) == 1


def test_poly_diff_eval_substitute():
    x, y = MPoly.gens(2)
    p = x ** 3 * y - y * 5 + 7
    assert p.diff(0) == x ** 2 * y * 3
    assert p.diff_multi((0, 0, 1)) == x * 6
    assert p.evaluate([2, 3]) == 24 - 15 + 7
    assert p.derivative_at_zero((0, 0, 0, 1)) == 6
    q = p.substitute([x + 1, y * 2])
    assert q.evaluate([1, 1]) == p.evaluate([2, 2])
    assert p.translate([1, -1]).evaluate([0, 0]) == p.evaluate([1, -1])


def test_poly_errors():
    x, _ = MPoly.gens(2)
    with pytest.raises(ValueError):
        x.diff(2)
    with pytest.raises(ValueError):
        x.evaluate([1])
    with pytest.raises(ValueError):
        MPoly(2, {(1,): 1})


def test_poly_json_roundtrip():
    x, y = MPoly.gens(2)
    p = x * y * Fraction(-3, 7) + y ** 4
    data = p.to_json()
    assert data["terms"][0]["exp"] == [0, 4]  # leading term first
    assert MPoly.from_json(data) == p


def test_monomials_upto_count():
    mons = monomials_upto(5, 2)
    assert len(mons) == 21
    assert mons[0] == (0,) * 5 and sum(mons[-1]) == 2


@settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3), small), max_size=5),
       st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3), small), max_size=5),
       st.tuples(small, small))
def test_poly_ring_homomorphism(ta, tb, pt):
    a = MPoly(2, {(i, j): c for i, j, c in ta})
    b = MPoly(2, {(i, j): c for i, j, c in tb})
    assert (a * b).evaluate(pt) == a.evaluate(pt) * b.evaluate(pt)
    assert (a + b).evaluate(pt) == a.evaluate(pt) + b.evaluate(pt)
    # Leibniz rule
    assert (a * b).diff(0) == a.diff(0) * b + a * b.diff(0)


# -- dense linear algebra -----------------------------------------------------


def test_bareiss_det_matches_leibniz():
    rng = random.Random(1)
    for n in range(1, 6):
        for _ in range(10):
            a = random_matrix(rng, n, n, density=0.7)
            assert bareiss_det(a) == det_leibniz(a)


def test_rref_solve_inverse():
    a = [[2, 1, 0], [1, 3, 1], [0, 1, 4]]
    inv = inverse(a)
    assert matmul(a, inv) == identity(3)
    x = solve(a, [1, 2, 3])
    assert [sum(Fraction(r[j]) * x[j] for j in range(3)) for r in a] == [1, 2, 3]
    assert solve([[1, 1], [2, 2]], [1, 3]) is None
    red, piv = rref([[0, 2, 4], [1, 1, 1]])
    assert piv == [0, 1] and red == [[1, 0, -1], [0, 1, 2]]
    with pytest.raises(ValueError):
        inverse([[1, 2], [2, 4]])


def test_linsubspace_canonical():
    s1 = LinSubspace.span(3, [[1, 2, 3], [2, 4, 7]])
    s2 = LinSubspace.span(3, [[0, 0, 1], [3, 6, 0]])
    assert s1 == s2 and s1.dim == 2 and s1.is_rref()
    assert s1.contains([1, 2, 0]) and not s1.contains([1, 0, 0])
    assert LinSubspace.zero(3).is_subspace_of(s1)
    assert s1.is_subspace_of(LinSubspace.whole(3))


# -- kernels: three routes --------------------------------------------------------


def kernel_oracle(m, ncols):
    """Kernel from the dense rref, written out independently."""
    red, piv = rref(m, ncols) if m else ([], [])
    free = [j for j in range(ncols) if j not in piv]
    vecs = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, c in zip(red, piv):
            v[c] = -row[f]
        vecs.append(v)
    return LinSubspace.span(ncols, vecs)


@pytest.mark.parametrize("seed", range(12))
def test_kernel_routes_agree(seed):
    rng = random.Random(seed)
    m, n = rng.randint(1, 14), rng.randint(1, 12)
    a = random_matrix(rng, m, n, density=rng.choice([0.2, 0.5, 0.9]))
    # force a dependency now and then
    if m > 2:
        a[-1] = [x + 2 * y for x, y in zip(a[0], a[1])]
    expected = kernel_oracle(a, n)
    assert kernel_bareiss(a) == expected
    assert modular.kernel_modular(a) == expected
    assert kernel_basis(a, "both") == expected
    assert expected.dim == n - rank(a)


def test_kernel_tall_matrix_uses_gram():
    rng = random.Random(5)
    a = random_matrix(rng, 40, 6, density=0.4)
    a = [r + [2 * r[0] - r[1]] for r in a]
    stats = {}
    k = modular.kernel_modular(a, stats=stats)
    assert stats["gram"] is True
    assert k == kernel_oracle(a, 7) and k.dim == 1


def test_kernel_large_entries_need_many_primes():
    big = 10 ** 60 + 7
    a = [[big, 1, 0], [0, big, 1]]
    stats = {}
    k = modular.kernel_modular(a, stats=stats)
    assert k == kernel_oracle(a, 3)
    assert stats["primes_used"] > 1


def test_kernel_reconstruction_failure_is_reported():
    big = 10 ** 80 + 1
    with pytest.raises(ComputationError):
        modular.kernel_modular([[big, 1, 0], [0, big, 1]], primes=[modular.default_primes()[0]], max_primes=1)


def test_sparse_matrix_basics():
    sm = SparseMatrix(3, [{0: Fraction(1, 2), 2: 1}, {}, {0: 1, 2: 2}])
    assert sm.nrows == 2
    assert sm.integer_rows() == [{0: 1, 2: 2}]
    assert sm.annihilates([2, 5, -1])
    with pytest.raises(ValueError):
        sm.add_row({3: 1})


# -- primes, CRT, reconstruction --------------------------------------------------


def test_primes_and_reconstruction():
    ps = modular.primes_below(2 ** 62, 4)
    assert all(p < 2 ** 62 for p in ps) and len(set(ps)) == 4
    assert all(pow(2, p - 1, p) == 1 for p in ps)
    assert not modular._is_probable_prime(2 ** 62 - 1)
    m = ps[0] * ps[1]
    for q in (Fraction(-3, 7), Fraction(123456789, 1000003), Fraction(0)):
        a = q.numerator * pow(q.denominator, -1, m) % m
        assert modular.rational_reconstruct(a, m) == q
    x, mod = modular.crt_pair(2, 5, 3, 7)
    assert x % 5 == 2 and x % 7 == 3 and mod == 35


def test_prime_override(monkeypatch):
    monkeypatch.setenv("LEGENDRIAN_PRIMES", "1000003,998244353")
    assert modular.default_primes() == (1000003, 998244353)
    monkeypatch.setenv("LEGENDRIAN_PRIMES", "1000001")
    with pytest.raises(ValueError):
        modular.default_primes()


# -- compiled kernel against the Python fallback ------------------------------------


@pytest.mark.parametrize("seed", range(6))
def test_backends_agree_on_rref_mod(seed):
    rng = random.Random(seed)
    p = modular.default_primes()[seed % 3]
    m, n = rng.randint(1, 12), rng.randint(1, 12)
    rows = [[rng.randrange(p) if rng.random() < 0.6 else 0 for _ in range(n)] for _ in range(m)]
    py = [list(r) for r in rows]
    piv_py = rref_mod_py(py, p)
    arr = np.array(rows, dtype=np.uint64)
    piv = modular.rref_mod(arr, p)
    assert list(piv) == list(piv_py)
    assert [[int(x) for x in r] for r in arr[: len(piv)]] == py[: len(piv_py)]


def test_pure_python_fallback_kernel(monkeypatch):
    rng = random.Random(11)
    a = random_matrix(rng, 9, 8, density=0.5)
    a.append([x - y for x, y in zip(a[0], a[3])])
    expected = modular.kernel_modular(a)
    monkeypatch.setattr(modular, "_compiled", None)
    assert modular.kernel_modular(a) == expected
