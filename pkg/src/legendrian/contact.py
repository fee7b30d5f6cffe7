"""Quadratic Hamiltonians, their contact vector fields and 2-jets on a chart.

Coordinates on the affine piece of P(V) are x_0..x_{2n} (0-based):
``y_k = x_k``, ``p_k = x_{n+k}`` and ``z = x_{2n}``.  The contact form is

    theta = sum_k (p_k dy_k - y_k dp_k) - dz.

A quadratic Hamiltonian is a polynomial q of degree <= 2 in these
variables; homogenizing with x^0 = 1 gives a symmetric matrix.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .charts import GeneratingChart, third_ff
from .cubic import CubicForm
from .errors import ComputationError, PreconditionError
from .exact.kernel import kernel_basis
from .exact.linalg import LinSubspace, is_symmetric, rank
from .exact.poly import MPoly, monomials_upto
from .symmetry import (
    ProlongElement,
    XiCertificate,
    compute_prolongation,
    prolongation_character,
    xi_membership,
)

HALF = Fraction(1, 2)


# -- Hamiltonians ----------------------------------------------------------


class QuadraticHamiltonian:
    def __init__(self, n: int, q: MPoly):
        if q.arity != 2 * n + 1:
            raise ValueError(f"q must have {2 * n + 1} variables, got {q.arity}")
        if q.degree() > 2:
            raise ValueError("a quadratic Hamiltonian has degree at most 2")
        self.n = n
        self.q = q

    @classmethod
    def from_matrix(cls, n, S):
        """q(x) = X^T S X with X = (1, x_0, ..., x_{2n})."""
        size = 2 * n + 2
        S = [[Fraction(v) for v in row] for row in S]
        if len(S) != size or any(len(r) != size for r in S):
            raise ValueError(f"matrix must be {size} x {size}")
        if not is_symmetric(S):
            raise ValueError("matrix must be symmetric")
        m = 2 * n + 1
        X = [MPoly.const(m, 1)] + MPoly.gens(m)
        q = MPoly.zero(m)
        for i in range(size):
            for j in range(size):
                if S[i][j]:
                    q = q + X[i] * X[j] * S[i][j]
        return cls(n, q)

    def to_matrix(self):
        m = 2 * self.n + 1
        size = m + 1
        S = [[Fraction(0)] * size for _ in range(size)]
        for exp, c in self.q.terms.items():
            idx = [i + 1 for i, k in enumerate(exp) for _ in range(k)]
            idx += [0] * (2 - len(idx))
            i, j = idx
            if i == j:
                S[i][i] += c
            else:
                S[i][j] += c / 2
                S[j][i] += c / 2
        return S

    def __eq__(self, other):
        return isinstance(other, QuadraticHamiltonian) and self.n == other.n and self.q == other.q

    def __repr__(self):
        return f"QuadraticHamiltonian(n={self.n}, q={self.q})"


@dataclass(frozen=True)
class ContactField:
    n: int
    components: tuple  # coefficients of d/dx_i, i = 0..2n


def field_from_hamiltonian(Q: QuadraticHamiltonian) -> ContactField:
    n = Q.n
    q = Q.q
    m = 2 * n + 1
    x = MPoly.gens(m)
    dq = q.gradient()
    qz = dq[2 * n]
    comps = [None] * m
    for k in range(n):
        comps[k] = (dq[n + k] - qz * x[k]) * HALF
        comps[n + k] = (-dq[k] - qz * x[n + k]) * HALF
    last = MPoly.zero(m)
    for k in range(n):
        last = last + dq[k] * x[k] + dq[n + k] * x[n + k]
    comps[2 * n] = last * HALF - q
    return ContactField(n, tuple(comps))


def theta_coefficients(n):
    m = 2 * n + 1
    x = MPoly.gens(m)
    th = [None] * m
    for k in range(n):
        th[k] = x[n + k]
        th[n + k] = -x[k]
    th[2 * n] = MPoly.const(m, -1)
    return th


def theta_pairing(field: ContactField) -> MPoly:
    th = theta_coefficients(field.n)
    total = MPoly.zero(2 * field.n + 1)
    for a, b in zip(th, field.components):
        total = total + a * b
    return total


def lie_derivative_theta(field: ContactField):
    """Coefficients of Lie_X theta = d(theta(X)) + i_X d(theta)."""
    n = field.n
    m = 2 * n + 1
    th = theta_coefficients(n)
    X = field.components
    out = theta_pairing(field).gradient()
    for j in range(m):
        s = out[j]
        for i in range(m):
            # (d theta)_ij = d_i theta_j - d_j theta_i
            w = th[j].diff(i) - th[i].diff(j)
            if w:
                s = s + X[i] * w
        out[j] = s
    return out


def lie_identity_holds(Q: QuadraticHamiltonian) -> bool:
    """Lie_X theta == -(dq/dz) theta for X the field of Q."""
    n = Q.n
    lhs = lie_derivative_theta(field_from_hamiltonian(Q))
    qz = Q.q.diff(2 * n)
    return all(a == -(qz * t) for a, t in zip(lhs, theta_coefficients(n)))


# -- restriction to a chart ------------------------------------------------


def _chart_images(chart: GeneratingChart):
    return MPoly.gens(chart.n) + list(chart.Fk) + [chart.E]


def restrict(p: MPoly, chart: GeneratingChart) -> MPoly:
    """p(y, F^1(y), ..., F^n(y), E(y))."""
    return p.substitute(_chart_images(chart))


def _check_n(Q, chart):
    if Q.n != chart.n:
        raise PreconditionError(f"Hamiltonian has n = {Q.n} but the chart has n = {chart.n}")


def tangency_test(Q: QuadraticHamiltonian, chart: GeneratingChart) -> bool:
    """Tangent means q restricted to the chart is identically zero."""
    _check_n(Q, chart)
    return restrict(Q.q, chart).is_zero()


def hamiltonian_monomials(n):
    """Coordinate order for Hamiltonians: monomials of degree <= 2 in 2n+1 variables."""
    return monomials_upto(2 * n + 1, 2)


def hamiltonian_from_vector(n, vec) -> QuadraticHamiltonian:
    mons = hamiltonian_monomials(n)
    return QuadraticHamiltonian(n, MPoly(2 * n + 1, {e: c for e, c in zip(mons, vec)}))


def hamiltonian_to_vector(Q: QuadraticHamiltonian):
    return [Q.q.coeff(e) for e in hamiltonian_monomials(Q.n)]


def _mono(m, *idx):
    e = [0] * m
    for i in idx:
        e[i] += 1
    return tuple(e)


def _order_rows(n, min_order):
    """Linear conditions on Hamiltonian coordinates for vanishing to the given order."""
    m = 2 * n + 1
    pos = {e: i for i, e in enumerate(hamiltonian_monomials(n))}
    rows = []
    if min_order >= 1:
        rows.append({pos[_mono(m)]: 1})
        for k in range(2 * n):
            rows.append({pos[_mono(m, k)]: 1})
    if min_order >= 2:
        z = pos[_mono(m, 2 * n)]
        for mm in range(n):
            for k in range(n):
                row = {pos[_mono(m, mm, n + k)]: 1}
                if mm == k:
                    row[z] = -1
                rows.append(row)
    return rows


def tangent_hamiltonian_space(chart: GeneratingChart, min_order: int = 0) -> LinSubspace:
    """All Q with q restricted to the chart identically zero, in ``hamiltonian_monomials`` coordinates.

    ``min_order`` 1 or 2 additionally imposes vanishing of the field (and of
    the linear part of its restriction) at the origin.
    """
    n = chart.n
    mons = hamiltonian_monomials(n)
    images = _chart_images(chart)
    # restriction of each monomial, one column per Hamiltonian coordinate
    rows = {}
    for col, e in enumerate(mons):
        r = MPoly.const(n, 1)
        for i, k in enumerate(e):
            for _ in range(k):
                r = r * images[i]
        for ye, c in r.terms.items():
            rows.setdefault(ye, {})[col] = c
    mat = [rows[k] for k in sorted(rows)]
    mat += _order_rows(n, min_order)
    from .exact.linalg import SparseMatrix

    sm = SparseMatrix(len(mons), mat)
    if not sm.rows:
        return LinSubspace.whole(len(mons))
    return kernel_basis(sm)


def tangent_hamiltonians(chart: GeneratingChart, min_order: int = 0):
    space = tangent_hamiltonian_space(chart, min_order)
    return [hamiltonian_from_vector(chart.n, v) for v in space.basis]


# -- vanishing and jets ----------------------------------------------------


def restricted_field(Q: QuadraticHamiltonian, chart: GeneratingChart):
    """B^k = X^k restricted to the chart: the y-components of the field on Z."""
    X = field_from_hamiltonian(Q)
    return [restrict(X.components[k], chart) for k in range(chart.n)]


@dataclass
class VanishingReport:
    order: int  # 0, 1 or 2 (meaning "2 or more")
    first_order: bool  # q and its y, p derivatives vanish at 0
    second_order: bool  # mixed y-p second derivatives equal dq/dz(0) delta
    restricted_value_zero: bool
    restricted_linear_zero: bool
    a_zero: bool
    b_zero: bool

    @property
    def label(self):
        return "2+" if self.order >= 2 else str(self.order)


def vanishing_conditions(Q: QuadraticHamiltonian, chart: GeneratingChart) -> VanishingReport:
    if not tangency_test(Q, chart):
        raise PreconditionError("Q is not tangent to the chart: q does not vanish on it")
    n = chart.n
    m = 2 * n + 1
    q = Q.q
    first = not q.constant_term() and all(not q.coeff(_mono(m, k)) for k in range(2 * n))
    qz = q.coeff(_mono(m, 2 * n))
    second = all(
        q.derivative_at_zero((mm, n + k)) == (qz if mm == k else 0)
        for mm in range(n) for k in range(n)
    )
    B = restricted_field(Q, chart)
    val0 = all(not b.constant_term() for b in B)
    lin0 = all(b.homogeneous_part(1).is_zero() for b in B)
    if val0 != first or (first and lin0 != second):
        raise ComputationError("vanishing of q at 0 disagrees with vanishing of the restricted field")
    b_zero = all(not q.coeff(_mono(m, i, j)) for i in range(n) for j in range(i, n))
    order = 0 if not first else (1 if not second else 2)
    return VanishingReport(order, first, second, val0, lin0, qz == 0, b_zero)


@dataclass
class Jet2:
    A: ProlongElement
    nu: list
    h: list  # h[k][i]: coefficient of e_k in h(dy^i)
    d: list  # coefficients of x_i z in q
    c: list  # symmetric, q contains sum c_ij p_i p_j

    def star_holds(self, f: CubicForm) -> bool:
        """A_lm = nu(e_l) e_m + nu(e_m) e_l + h(f_lm)."""
        n = self.A.n
        for l in range(n):
            for mm in range(n):
                flm = [f.entry(l, mm, j) for j in range(n)]
                for k in range(n):
                    v = self.nu[l] * (k == mm) + self.nu[mm] * (k == l)
                    v += sum((self.h[k][j] * flm[j] for j in range(n)), Fraction(0))
                    if self.A.A[k][l][mm] != v:
                        return False
        return True


def extract_jet(Q: QuadraticHamiltonian, chart: GeneratingChart) -> Jet2:
    rep = vanishing_conditions(Q, chart)
    if rep.order < 2:
        raise PreconditionError(f"the field vanishes only to order {rep.label} at the origin")
    n = chart.n
    m = 2 * n + 1
    q = Q.q
    z = 2 * n
    f = third_ff(chart)

    B = restricted_field(Q, chart)
    A_sym = [[[B[k].derivative_at_zero((l, mm)) for mm in range(n)] for l in range(n)] for k in range(n)]

    qzm = [q.derivative_at_zero((z, i)) for i in range(n)]
    qpp = [[q.derivative_at_zero((n + j, n + k)) for k in range(n)] for j in range(n)]
    A_cf = [
        [
            [
                -HALF * qzm[mm] * (k == l) - HALF * qzm[l] * (k == mm)
                - HALF * sum((qpp[j][k] * f.entry(j, l, mm) for j in range(n)), Fraction(0))
                for mm in range(n)
            ]
            for l in range(n)
        ]
        for k in range(n)
    ]
    if A_sym != A_cf:
        raise ComputationError("second derivatives of the restricted field disagree with the closed form")

    nu = [-HALF * v for v in qzm]
    h = [[-HALF * qpp[i][k] for i in range(n)] for k in range(n)]
    d = [q.coeff(_mono(m, i, z)) for i in range(n)]
    c = [
        [q.coeff(_mono(m, n + i, n + j)) * (1 if i == j else HALF) for j in range(n)]
        for i in range(n)
    ]
    if nu != [-HALF * x for x in d] or h != [[-c[i][k] for i in range(n)] for k in range(n)]:
        raise ComputationError("nu, h disagree with the coefficients of q")
    jet = Jet2(ProlongElement(n, A_sym), nu, h, d, c)
    if not jet.star_holds(f):
        raise ComputationError("the 2-jet does not decompose through nu and h")
    return jet


@dataclass
class XiHalfReport:
    passed: bool
    prolongation_member: bool
    certificate_holds: bool
    membership_found: bool
    chi: list | None
    chi_is_2nu: bool
    chi_is_minus_d: bool
    hypotheses_note: str | None = None
    jet: Jet2 | None = field(default=None, repr=False)


def verify_xi_half(Q: QuadraticHamiltonian, chart: GeneratingChart, irreducible: bool | None = None) -> XiHalfReport:
    """Check that the 2-jet of Q lies in Xi^(1/2) of the third fundamental form.

    Three exact checks: A is a prolongation, (2 nu, h) certifies A in
    Xi^(1/2), and chi^A(e_i) = -d_i.
    """
    jet = extract_jet(Q, chart)
    f = third_ff(chart)
    note = None
    if irreducible is None:
        note = "irreducibility of the cubic hypersurface was not supplied; checks run regardless"
    elif not irreducible:
        note = "the cubic hypersurface was declared reducible"
    if f.is_zero():
        return XiHalfReport(False, False, False, False, None, False, False, "zero third fundamental form", jet)
    member = compute_prolongation(f).space.contains(jet.A.to_vector())
    chi = None
    cert_ok = found = is_2nu = is_d = False
    if member:
        chi = prolongation_character(f, jet.A)
        two_nu = [2 * v for v in jet.nu]
        is_2nu = chi == two_nu
        cert_ok = XiCertificate(jet.A, two_nu, jet.h, HALF).check(f)
        found = xi_membership(f, jet.A, HALF) is not None
        is_d = chi == [-v for v in jet.d]
    passed = member and cert_ok and found and is_2nu and is_d
    return XiHalfReport(passed, member, cert_ok, found, chi, is_2nu, is_d, note, jet)


def jet_map_rank(chart: GeneratingChart):
    """(dim of the order-2+ tangent space, rank of Q -> A on it)."""
    hams = tangent_hamiltonians(chart, 2)
    vecs = [extract_jet(Q, chart).A.to_vector() for Q in hams]
    return len(hams), (rank(vecs) if vecs else 0)
