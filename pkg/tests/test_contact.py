import random
from fractions import Fraction

import pytest

from legendrian.acceptance import model_chart
from legendrian.charts import chart_from_F, third_ff
from legendrian.contact import (
    ContactField,
    QuadraticHamiltonian,
    extract_jet,
    field_from_hamiltonian,
    hamiltonian_from_vector,
    hamiltonian_monomials,
    hamiltonian_to_vector,
    jet_map_rank,
    lie_identity_holds,
    restricted_field,
    tangency_test,
    tangent_hamiltonian_space,
    tangent_hamiltonians,
    theta_pairing,
    vanishing_conditions,
    verify_xi_half,
)
from legendrian.errors import PreconditionError
from legendrian.exact.poly import MPoly
from legendrian.symmetry import character_map_rank, compute_prolongation

HALF = Fraction(1, 2)
x = MPoly.gens(5)


def witness():
    return QuadraticHamiltonian(2, x[3] ** 2 * -HALF - x[0] * x[4] * 2)


def random_hamiltonian(rng, n):
    mons = hamiltonian_monomials(n)
    return hamiltonian_from_vector(n, [Fraction(rng.randint(-3, 3), rng.randint(1, 2)) for _ in mons])


def test_field_of_z():
    n = 2
    Q = QuadraticHamiltonian(n, x[4])
    X = field_from_hamiltonian(Q)
    expected = [x[0] * -HALF, x[1] * -HALF, x[2] * -HALF, x[3] * -HALF, -x[4]]
    assert list(X.components) == expected
    assert theta_pairing(X) == x[4]


def test_zero_field():
    X = field_from_hamiltonian(QuadraticHamiltonian(2, MPoly.zero(5)))
    assert all(c.is_zero() for c in X.components)
    assert theta_pairing(X).is_zero()


def test_theta_of_non_contact_field():
    X = ContactField(2, (x[0], x[1], MPoly.zero(5), MPoly.zero(5), MPoly.zero(5)))
    assert theta_pairing(X) == x[0] * x[2] + x[1] * x[3]


def test_contact_identities_random():
    rng = random.Random(1)
    for n in (1, 2, 3):
        for _ in range(5):
            Q = random_hamiltonian(rng, n)
            X = field_from_hamiltonian(Q)
            assert theta_pairing(X) == Q.q
            assert lie_identity_holds(Q)
            assert QuadraticHamiltonian.from_matrix(n, Q.to_matrix()) == Q
            assert hamiltonian_from_vector(n, hamiltonian_to_vector(Q)) == Q


def test_field_is_linear_in_q():
    rng = random.Random(2)
    P, Q = random_hamiltonian(rng, 2), random_hamiltonian(rng, 2)
    S = QuadraticHamiltonian(2, P.q * 3 - Q.q)
    fp, fq, fs = (field_from_hamiltonian(H).components for H in (P, Q, S))
    assert all(c == a * 3 - b for a, b, c in zip(fp, fq, fs))


def test_hamiltonian_validation():
    with pytest.raises(ValueError):
        QuadraticHamiltonian(2, x[0] ** 3)
    with pytest.raises(ValueError):
        QuadraticHamiltonian(1, x[0])
    with pytest.raises(ValueError):
        QuadraticHamiltonian.from_matrix(1, [[0, 1, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]])


def test_tangency_examples():
    c = model_chart("so7")
    assert tangency_test(QuadraticHamiltonian(2, x[0] * x[2] + x[4]), c)
    assert tangency_test(witness(), c)
    assert not tangency_test(QuadraticHamiltonian(2, x[0] * x[3]), c)
    with pytest.raises(PreconditionError):
        tangency_test(QuadraticHamiltonian(1, MPoly.gens(3)[0]), c)


@pytest.mark.parametrize("name, dims", [("so7", (6, 4, 2)), ("so8", (9, 6, 3)), ("so9", (13, 9, 4))])
def test_tangent_space_dimensions(name, dims):
    c = model_chart(name)
    assert tuple(tangent_hamiltonian_space(c, k).dim for k in (0, 1, 2)) == dims
    for Q in tangent_hamiltonians(c):
        assert tangency_test(Q, c)


def test_vanishing_orders():
    c = model_chart("so7")
    rep = vanishing_conditions(witness(), c)
    assert rep.label == "2+" and rep.a_zero and rep.b_zero
    rep = vanishing_conditions(QuadraticHamiltonian(2, x[0] * x[2] + x[4]), c)
    assert rep.label == "1"
    B = restricted_field(QuadraticHamiltonian(2, x[0] * x[2] + x[4]), c)
    assert B[1] == MPoly.gens(2)[1] * -HALF
    assert vanishing_conditions(QuadraticHamiltonian(2, MPoly.zero(5)), c).label == "2+"
    with pytest.raises(PreconditionError):
        vanishing_conditions(QuadraticHamiltonian(2, x[0] * x[3]), c)


def test_order_two_space_has_shape_a_b_zero():
    for name in ("so7", "so8", "so9"):
        c = model_chart(name)
        for Q in tangent_hamiltonians(c, 2):
            rep = vanishing_conditions(Q, c)
            assert rep.order == 2 and rep.a_zero and rep.b_zero


def test_witness_jet():
    c = model_chart("so7")
    B = restricted_field(witness(), c)
    y = MPoly.gens(2)
    assert B == [y[0] ** 2, MPoly.zero(2)]
    jet = extract_jet(witness(), c)
    assert jet.A.A == [[[2, 0], [0, 0]], [[0, 0], [0, 0]]]
    assert jet.nu == [1, 0] and jet.d == [-2, 0]
    assert jet.h == [[0, 0], [0, HALF]]
    assert jet.c == [[0, 0], [0, -HALF]]
    assert jet.star_holds(third_ff(c))


def test_zero_jet_and_order_errors():
    c = model_chart("so7")
    jet = extract_jet(QuadraticHamiltonian(2, MPoly.zero(5)), c)
    assert jet.A.is_zero() and jet.nu == [0, 0]
    assert verify_xi_half(QuadraticHamiltonian(2, MPoly.zero(5)), c).passed
    with pytest.raises(PreconditionError):
        extract_jet(QuadraticHamiltonian(2, x[0] * x[2] + x[4]), c)


def test_xi_half_witness():
    rep = verify_xi_half(witness(), model_chart("so7"), irreducible=True)
    assert rep.passed and rep.chi == [2, 0] and rep.hypotheses_note is None
    assert verify_xi_half(witness(), model_chart("so7")).hypotheses_note


@pytest.mark.parametrize("name", ["so7", "so8", "so9"])
def test_xi_half_on_order_two_basis(name):
    c = model_chart(name)
    hams = tangent_hamiltonians(c, 2)
    assert len(hams) == c.n
    for Q in hams:
        rep = verify_xi_half(Q, c)
        assert rep.passed, rep


def test_jet_map_is_linear():
    c = model_chart("so8")
    P, Q = tangent_hamiltonians(c, 2)[:2]
    S = QuadraticHamiltonian(3, P.q * 2 + Q.q * -5)
    a, b, s = (extract_jet(H, c).A.to_vector() for H in (P, Q, S))
    assert s == [2 * u - 5 * v for u, v in zip(a, b)]


@pytest.mark.parametrize("name", ["so7", "so8"])
def test_injectivity(name):
    c = model_chart(name)
    dim, rk = jet_map_rank(c)
    assert dim == rk > 0
    f = third_ff(c)
    pd, crk = character_map_rank(f, compute_prolongation(f))
    assert pd == crk


def test_higher_degree_chart():
    y = MPoly.gens(2)
    c = chart_from_F(2, y[0] * y[1] ** 2 + y[0] ** 4)
    # reported as computed; every basis element must be tangent
    for Q in tangent_hamiltonians(c):
        assert tangency_test(Q, c)
