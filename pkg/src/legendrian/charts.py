"""Adapted charts of a Legendrian variety from a generating function F.

In a chart the variety is the image of y -> (y, F^1(y), ..., F^n(y), E(y))
with F^k = dF/dy^k and E = 2F - sum y^k F^k.  The contact form
sum (p_k dy^k - y^k dp_k) - dz pulls back to zero.
"""

from __future__ import annotations

import random
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement

from .cubic import CubicForm, contract1, contract2, cubic_from_poly
from .errors import PreconditionError
from .exact.kernel import kernel_basis
from .exact.linalg import LinSubspace
from .exact.poly import MPoly


@dataclass(frozen=True)
class GeneratingChart:
    n: int
    F: MPoly
    Fk: tuple
    E: MPoly

    def to_json(self):
        return {"n": self.n, "F": self.F.to_json()}


def chart_from_F(n: int, F: MPoly) -> GeneratingChart:
    if F.arity != n:
        raise PreconditionError(f"F has {F.arity} variables, expected {n}")
    if F.constant_term():
        raise PreconditionError("F(0) must vanish (F is normalized by its value at the base point)")
    if not F.homogeneous_part(1).is_zero():
        raise PreconditionError("the first derivatives of F at 0 must vanish (dE(0) = 0 and F^k(0) = 0)")
    if not F.homogeneous_part(2).is_zero():
        raise PreconditionError("the second derivatives of F at 0 must vanish (d^2 F(0) = 0)")
    Fk = tuple(F.diff(k) for k in range(n))
    y = MPoly.gens(n)
    E = F * 2
    for k in range(n):
        E = E - y[k] * Fk[k]
    return GeneratingChart(n, F, Fk, E)


@dataclass
class LegendrianCheck:
    ok: bool
    failure: str | None = None
    details: dict = field(default_factory=dict)

    def __bool__(self):
        return self.ok


def verify_legendrian(chart: GeneratingChart) -> LegendrianCheck:
    """Check that the pulled-back contact form vanishes, coefficient by coefficient.

    The coefficient of dy^i is F^i - sum_k y^k dF^k/dy^i - dE/dy^i.  Also
    checks -d^N E(0) = (N - 2) d^N F(0) for N = 1, 2, 3.
    """
    n = chart.n
    y = MPoly.gens(n)
    for i in range(n):
        c = chart.Fk[i] - chart.E.diff(i)
        for k in range(n):
            c = c - y[k] * chart.Fk[k].diff(i)
        if not c.is_zero():
            exp, val = c.sorted_terms()[0]
            return LegendrianCheck(
                False, f"dy{i + 1}",
                {"component": i, "leading_exponent": list(exp), "coefficient": val},
            )
    for order in (1, 2, 3):
        for idx in combinations_with_replacement(range(n), order):
            lhs = -chart.E.derivative_at_zero(idx)
            rhs = (order - 2) * chart.F.derivative_at_zero(idx)
            if lhs != rhs:
                return LegendrianCheck(
                    False, f"origin order {order}",
                    {"indices": list(idx), "minus_dE": lhs, "scaled_dF": rhs},
                )
    return LegendrianCheck(True)


def second_ff(chart: GeneratingChart):
    """Matrices Q^k with (Q^k)_ij = d^2 F^k(0) / dy^i dy^j."""
    n = chart.n
    return [
        [[chart.Fk[k].derivative_at_zero((i, j)) for j in range(n)] for i in range(n)]
        for k in range(n)
    ]


def third_ff(chart: GeneratingChart) -> CubicForm:
    """The cubic f^z with f^z_ijk = d^3 E(0)."""
    f = cubic_from_poly(chart.E.homogeneous_part(3))
    if f.is_zero():
        warnings.warn("degenerate II: the chart has zero third fundamental form", stacklevel=2)
    return f


def null_space_II(chart: GeneratingChart) -> LinSubspace:
    """{v : f^z(v, ., .) = 0}."""
    n = chart.n
    Q = second_ff(chart)
    # v lies in the null space iff sum_i v^i (Q^k)_ij = 0 for all j, k
    rows = [[Q[k][i][j] for i in range(n)] for k in range(n) for j in range(n)]
    if not any(any(r) for r in rows):
        return LinSubspace.whole(n)
    return kernel_basis(rows)


def base_locus_member(chart: GeneratingChart, v) -> bool:
    """Whether every quadric of II vanishes at v."""
    Q = second_ff(chart)
    n = chart.n
    for k in range(n):
        s = sum((Q[k][i][j] * v[i] * v[j] for i in range(n) for j in range(n) if v[i] and v[j]), Fraction(0))
        if s:
            return False
    return True


def base_locus_tests(chart: GeneratingChart, count=8, seed=0):
    """Compare II-based and f^z-based singular membership on sample points.

    Samples are the basis vectors plus seeded random points with entries
    in [-2, 2].  Returns a list of dicts.
    """
    n = chart.n
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        f = third_ff(chart)
    rng = random.Random(f"base-locus:{seed}:{n}")
    pts = [[int(i == j) for j in range(n)] for i in range(n)]
    pts += [[rng.randint(-2, 2) for _ in range(n)] for _ in range(count)]
    out = []
    for v in pts:
        a = base_locus_member(chart, v)
        b = not any(contract2(f, v, v))
        out.append({"point": v, "second_ff": a, "third_ff": b, "agree": a == b})
    return out


def null_space_check(chart: GeneratingChart) -> bool:
    """null_space_II against the kernel of u -> f^z_u computed from contract1."""
    n = chart.n
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        f = third_ff(chart)
    rows = []
    for i in range(n):
        e = [0] * n
        e[i] = 1
        rows.extend(contract1(f, e))
    # kernel of v -> (f(e_i, e_j, v))_ij
    other = LinSubspace.whole(n) if not any(any(r) for r in rows) else kernel_basis(rows)
    return other == null_space_II(chart)


def recenter(chart: GeneratingChart, y0) -> GeneratingChart:
    """The chart renormalized at the point with coordinate y0.

    F_hat(t) = F(y0 + t) - F(y0) - dF(y0) t - t^T H t / 2 with H the
    Hessian of F at y0.
    """
    n = chart.n
    y0 = [Fraction(x) for x in y0]
    if len(y0) != n:
        raise PreconditionError(f"base point has length {len(y0)}, expected {n}")
    return chart_from_F(n, _drop_low(chart.F.translate(y0), 3))


def _drop_low(p: MPoly, d: int) -> MPoly:
    """Terms of total degree >= d."""
    return MPoly(p.arity, {e: c for e, c in p.terms.items() if sum(e) >= d})
