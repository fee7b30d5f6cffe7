from fractions import Fraction

import pytest

from legendrian.catalog import catalog_cubic
from legendrian.cubic import cubic_from_poly
from legendrian.errors import PreconditionError
from legendrian.exact.poly import MPoly
from legendrian.symmetry import (
    ProlongElement,
    XiCertificate,
    aut_character,
    character_map_rank,
    compute_aut,
    compute_prolongation,
    compute_xi,
    is_prolongation,
    lie_derivative,
    prolongation_character,
    xi_membership,
)
from legendrian.acceptance import aut_bruteforce_dim

HALF = Fraction(1, 2)


def xyz():
    y = MPoly.gens(3)
    return cubic_from_poly(y[0] * y[1] * y[2])


def s2t():
    y = MPoly.gens(2)
    return cubic_from_poly(y[0] ** 2 * y[1])


def fermat():
    y = MPoly.gens(3)
    return cubic_from_poly(y[0] ** 3 + y[1] ** 3 + y[2] ** 3)


def so7_fz():
    """Third fundamental form of the so7 model chart: f_122 = -2."""
    y = MPoly.gens(2)
    return cubic_from_poly(-(y[0] * y[1] ** 2))


def test_lie_derivative():
    f = xyz()
    I = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    assert lie_derivative(f, I) == f.scale(3)
    assert lie_derivative(f, [[2, 0, 0], [0, 3, 0], [0, 0, 5]]) == f.scale(10)
    assert lie_derivative(f, [[0] * 3] * 3).is_zero()


@pytest.mark.parametrize("f, dim", [(xyz(), 3), (s2t(), 2), (fermat(), 1)])
def test_aut_dimensions(f, dim):
    for method in ("bareiss", "modular", "both"):
        assert compute_aut(f, method).dim == dim
    assert aut_bruteforce_dim(f) == dim


def test_aut_xyz_is_diagonal_with_trace_character():
    r = compute_aut(xyz())
    for e in r.elements:
        phi = e.phi
        assert all(phi[i][j] == 0 for i in range(3) for j in range(3) if i != j)
        assert e.chi_value == phi[0][0] + phi[1][1] + phi[2][2]
        assert aut_character(xyz(), phi) == e.chi_value
    assert r.character_unique


def test_aut_s2t_character():
    for e in compute_aut(s2t()).elements:
        a, d = e.phi[0][0], e.phi[1][1]
        assert e.phi[0][1] == e.phi[1][0] == 0
        assert e.chi_value == 2 * a + d


def test_aut_character_rejects_non_symmetry():
    assert aut_character(xyz(), [[0, 1, 0], [0, 0, 0], [0, 0, 0]]) is None


def test_prolongation_dimensions():
    assert compute_prolongation(fermat()).dim == 0
    assert compute_prolongation(xyz()).dim == 3
    f4 = catalog_cubic("F4").cubic
    r = compute_prolongation(f4)
    assert r.dim == 6
    assert compute_prolongation(f4, "modular").space == r.space
    for A in r.elements:
        assert is_prolongation(f4, A)


def test_prolongation_of_degenerate_cubic():
    y = MPoly.gens(2)
    f = cubic_from_poly(y[0] ** 3)
    r = compute_prolongation(f)
    # slices only need to preserve the line {y1 = 0}: A^1_{ij} = 0 unless i = j = 1
    assert r.dim == 4
    for A in r.elements:
        assert A.A[0][0][1] == A.A[0][1][1] == 0


def test_prolongation_character_errors():
    A = ProlongElement.zero(3)
    A.A[0][1][1] = Fraction(1)
    with pytest.raises(PreconditionError):
        prolongation_character(xyz(), A)
    assert not is_prolongation(xyz(), A)
    with pytest.raises(ValueError):
        ProlongElement(2, [[[0, 1], [0, 0]], [[0, 0], [0, 0]]])


def test_xi_fermat_vanishes():
    for a in ("0", "1/2", "1", "-1", "2"):
        assert compute_xi(fermat(), Fraction(a)).dim == 0


def test_xi_xyz_nonzero():
    r = compute_xi(xyz(), HALF)
    assert r.dim == 3
    assert all(c.check(xyz()) for c in r.certificates)


def test_xi_so7_worked_certificate():
    f = so7_fz()
    A = ProlongElement.zero(2)
    A.A[0][0][0] = Fraction(2)
    cert = XiCertificate(A, [2, 0], [[0, 0], [0, HALF]], HALF)
    assert cert.check(f)
    r = compute_xi(f, HALF)
    assert r.space.contains(A.to_vector())
    found = xi_membership(f, A, HALF)
    assert found is not None and found.chi == [2, 0]
    assert found.check(f)


def test_xi_membership_zero_and_failure():
    f = xyz()
    for a in (0, HALF, 2):
        c = xi_membership(f, ProlongElement.zero(3), a)
        assert c is not None and c.chi == [0, 0, 0]
    # the degenerate cubic y1^3 in two variables has prolongations outside Xi^(1/2)
    g = cubic_from_poly(MPoly.gens(2)[0] ** 3)
    xi = compute_xi(g, HALF)
    outside = [A for A in compute_prolongation(g).elements if xi_membership(g, A, HALF) is None]
    assert outside
    assert all(not xi.space.contains(A.to_vector()) for A in outside)
    assert xi.dim == 2 < compute_prolongation(g).dim


def test_xi_quarter_flagged():
    assert compute_xi(xyz(), Fraction(1, 4)).outside_hypotheses


def test_character_map_injective_on_xyz():
    dim, rk = character_map_rank(xyz())
    assert dim == rk == 3


def test_zero_cubic_rejected():
    with pytest.raises(PreconditionError):
        compute_aut(cubic_from_poly(MPoly.zero(2)))
