"""Infinitesimal automorphisms of a cubic cone and their prolongations.

All three spaces are null spaces of linear systems assembled from the
condition ``L_phi f = c f`` where

    (L_phi f)(u, v, w) = f(phi u, v, w) + f(u, phi v, w) + f(u, v, phi w).

Unknowns enter ``phi`` linearly; a "linear entry" below is a dict mapping
unknown index to coefficient.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement

from .cubic import CubicForm
from .errors import ComputationError, PreconditionError
from .exact.kernel import kernel_basis
from .exact.linalg import LinSubspace, SparseMatrix, rref, solve

PROLONG_EXACT_MAX_N = 15


def _require_nonzero(f):
    if f.is_zero():
        raise PreconditionError("the zero cubic has no well-defined character")


def sorted_triples(n):
    return list(combinations_with_replacement(range(n), 3))


def lie_derivative(f: CubicForm, phi) -> CubicForm:
    n = f.n
    if len(phi) != n or any(len(r) != n for r in phi):
        raise ValueError(f"phi must be {n} x {n}")
    out = {}
    for t in sorted_triples(n):
        s = Fraction(0)
        for slot in range(3):
            pair = tuple(sorted(t[:slot] + t[slot + 1:]))
            for x, c in f.pair_table.get(pair, ()):
                a = phi[x][t[slot]]
                if a:
                    s += a * c
        if s:
            out[t] = s
    return CubicForm(n, out)


def _lie_rows(f, phi_lin, char_lin):
    """Rows (one per sorted triple) of  L_phi f - chi * f  with linear entries."""
    rows = []
    for t in sorted_triples(f.n):
        row = {}
        for slot in range(3):
            pair = tuple(sorted(t[:slot] + t[slot + 1:]))
            for x, c in f.pair_table.get(pair, ()):
                for u, a in phi_lin[x][t[slot]].items():
                    row[u] = row.get(u, 0) + a * c
        ft = f.coeffs.get(t)
        if ft:
            for u, a in char_lin.items():
                row[u] = row.get(u, 0) - a * ft
        rows.append(row)
    return rows


def _solve_kernel(nunknowns, rows, method, stats):
    m = SparseMatrix(nunknowns)
    for r in rows:
        m.add_row(r)
    return kernel_basis(m, method=method, stats=stats)


# -- aut ------------------------------------------------------------------


@dataclass
class AutElement:
    phi: list
    chi_value: Fraction


@dataclass
class AutResult:
    n: int
    space: LinSubspace  # coordinates: phi row-major, then c
    elements: list
    character_unique: bool
    stats: dict = field(default_factory=dict)

    @property
    def dim(self):
        return len(self.elements)


def compute_aut(f: CubicForm, method="auto") -> AutResult:
    """Basis of {(phi, c) : L_phi f = c f}."""
    _require_nonzero(f)
    n = f.n
    phi_lin = [[{k * n + l: 1} for l in range(n)] for k in range(n)]
    rows = _lie_rows(f, phi_lin, {n * n: 1})
    stats = {}
    space = _solve_kernel(n * n + 1, rows, method, stats)
    elements = []
    for v in space.basis:
        phi = [list(v[k * n:(k + 1) * n]) for k in range(n)]
        elements.append(AutElement(phi, v[n * n]))
    proj = [v[: n * n] for v in space.basis]
    unique = len(rref(proj, n * n)[1]) == len(proj) if proj else True
    return AutResult(n, space, elements, unique, stats)


def aut_character(f: CubicForm, phi):
    """The c with L_phi f = c f, or None if phi is not in aut."""
    _require_nonzero(f)
    lf = lie_derivative(f, phi)
    key, fv = next(iter(sorted(f.coeffs.items())))
    c = lf.entry(*key) / fv
    return c if lf == f.scale(c) else None


# -- prolongations ------------------------------------------------------


class ProlongElement:
    """A symmetric bilinear map W x W -> W, stored as ``A[k][i][j]``."""

    def __init__(self, n, A):
        self.n = n
        self.A = [[[Fraction(A[k][i][j]) for j in range(n)] for i in range(n)] for k in range(n)]
        for k in range(n):
            for i in range(n):
                for j in range(i + 1, n):
                    if self.A[k][i][j] != self.A[k][j][i]:
                        raise ValueError("prolongation tensor must be symmetric in its lower indices")

    @classmethod
    def zero(cls, n):
        return cls(n, [[[0] * n for _ in range(n)] for _ in range(n)])

    @classmethod
    def from_vector(cls, n, vec):
        idx = prolong_index(n)
        A = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
        for (k, i, j), pos in idx.items():
            A[k][i][j] = A[k][j][i] = vec[pos]
        return cls(n, A)

    def to_vector(self):
        idx = prolong_index(self.n)
        vec = [Fraction(0)] * len(idx)
        for (k, i, j), pos in idx.items():
            vec[pos] = self.A[k][i][j]
        return vec

    def value(self, u, v):
        n = self.n
        return [
            sum((self.A[k][i][j] * u[i] * v[j] for i in range(n) for j in range(n) if u[i] and v[j]), Fraction(0))
            for k in range(n)
        ]

    def slice(self, w):
        """The endomorphism A_w : u -> A(w, u), as a matrix."""
        n = self.n
        return [
            [sum((w[m] * self.A[k][m][l] for m in range(n) if w[m]), Fraction(0)) for l in range(n)]
            for k in range(n)
        ]

    def is_zero(self):
        return not any(x for plane in self.A for row in plane for x in row)

    def __eq__(self, other):
        return isinstance(other, ProlongElement) and self.n == other.n and self.A == other.A

    def __repr__(self):
        nz = {
            (k, i, j): self.A[k][i][j]
            for k in range(self.n) for i in range(self.n) for j in range(i, self.n)
            if self.A[k][i][j]
        }
        return f"ProlongElement(n={self.n}, {nz})"


def prolong_index(n):
    """Position of the unknown A^k_{ij} (i <= j) in the flat coordinate vector."""
    idx = {}
    pos = 0
    for k in range(n):
        for i in range(n):
            for j in range(i, n):
                idx[(k, i, j)] = pos
                pos += 1
    return idx


@dataclass
class ProlongResult:
    n: int
    space: LinSubspace  # in ProlongElement.to_vector coordinates
    elements: list
    chis: list
    stats: dict = field(default_factory=dict)

    @property
    def dim(self):
        return len(self.elements)


def compute_prolongation(f: CubicForm, method="auto") -> ProlongResult:
    """Basis of {A in Hom(Sym^2 W, W) : A_w in aut for every w}."""
    _require_nonzero(f)
    n = f.n
    idx = prolong_index(n)
    na = len(idx)
    if method == "auto" and n > PROLONG_EXACT_MAX_N:
        method = "modular"
    rows = []
    for m in range(n):
        phi_lin = [[{idx[(k, min(m, l), max(m, l))]: 1} for l in range(n)] for k in range(n)]
        rows.extend(_lie_rows(f, phi_lin, {na + m: 1}))
    stats = {}
    full = _solve_kernel(na + n, rows, method, stats)
    # mu is determined by A since f != 0, so the projection is injective
    space = LinSubspace.span(na, [v[:na] for v in full.basis])
    elements, chis = [], []
    for v in space.basis:
        A = ProlongElement.from_vector(n, v)
        elements.append(A)
        chis.append(prolongation_character(f, A))
    return ProlongResult(n, space, elements, chis, stats)


def prolongation_character(f: CubicForm, A: ProlongElement):
    """chi^A with chi^A(e_m) the aut character of A_{e_m}; raises if A is not a prolongation."""
    chi = []
    for m in range(f.n):
        e = [0] * f.n
        e[m] = 1
        c = aut_character(f, A.slice(e))
        if c is None:
            raise PreconditionError(f"A is not a prolongation: slice {m} is not in aut")
        chi.append(c)
    return chi


def is_prolongation(f, A):
    try:
        prolongation_character(f, A)
    except PreconditionError:
        return False
    return True


# -- Xi^a -----------------------------------------------------------------


@dataclass
class XiCertificate:
    A: ProlongElement
    chi: list
    h: list  # h[k][j]: coefficient of e_k in h(dy^j), so h(xi) = h @ xi
    a: Fraction

    def check(self, f: CubicForm):
        """The defining identity on all basis pairs, plus chi == chi^A."""
        n = f.n
        for l in range(n):
            for m in range(l, n):
                flm = [f.entry(l, m, j) for j in range(n)]
                for k in range(n):
                    rhs = self.a * self.chi[l] * (k == m) + self.a * self.chi[m] * (k == l)
                    rhs += sum((self.h[k][j] * flm[j] for j in range(n) if flm[j]), Fraction(0))
                    if self.A.A[k][l][m] != rhs:
                        return False
        return prolongation_character(f, self.A) == list(self.chi)


@dataclass
class XiResult:
    n: int
    a: Fraction
    space: LinSubspace  # A-space, ProlongElement.to_vector coordinates
    certificates: list
    parameter_dim: int  # dimension of the (chi, h) solution space
    outside_hypotheses: bool
    stats: dict = field(default_factory=dict)

    @property
    def dim(self):
        return len(self.certificates)


def _xi_tensor(n, f, a, chi, h):
    A = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
    for l in range(n):
        for m in range(l, n):
            pairs = f.pair_table.get((l, m), ())
            for k in range(n):
                v = a * chi[l] * (k == m) + a * chi[m] * (k == l)
                for j, c in pairs:
                    v += h[k][j] * c
                A[k][l][m] = A[k][m][l] = v
    return A


def compute_xi(f: CubicForm, a, method="auto") -> XiResult:
    """Basis of Xi^a with (chi, h) certificates.

    Unknowns are chi (n) and h (n^2); A is the image of the solution space.
    """
    _require_nonzero(f)
    a = Fraction(a)
    n = f.n
    nu = n + n * n

    def hvar(k, j):
        return n + k * n + j

    rows = []
    for m in range(n):
        phi_lin = []
        for k in range(n):
            row = []
            for l in range(n):
                entry = {}
                if a and k == l:
                    entry[m] = entry.get(m, 0) + a
                if a and k == m:
                    entry[l] = entry.get(l, 0) + a
                for j, c in f.pair_table.get((min(m, l), max(m, l)), ()):
                    entry[hvar(k, j)] = entry.get(hvar(k, j), 0) + c
                row.append({u: x for u, x in entry.items() if x})
            phi_lin.append(row)
        rows.extend(_lie_rows(f, phi_lin, {m: 1}))
    if method == "auto" and n > PROLONG_EXACT_MAX_N:
        method = "modular"
    stats = {}
    params = _solve_kernel(nu, rows, method, stats)

    # image in A-coordinates, eliminating on the A part and carrying (chi, h)
    na = len(prolong_index(n))
    aug = []
    for v in params.basis:
        chi = list(v[:n])
        h = [list(v[n + k * n: n + (k + 1) * n]) for k in range(n)]
        A = ProlongElement(n, _xi_tensor(n, f, a, chi, h))
        aug.append(A.to_vector() + list(v))
    certs = []
    if aug:
        red, piv = rref(aug, na)
        for row, p in zip(red, piv):
            if p >= na:
                break
            v = row[na:]
            chi = list(v[:n])
            h = [list(v[n + k * n: n + (k + 1) * n]) for k in range(n)]
            certs.append(XiCertificate(ProlongElement.from_vector(n, row[:na]), chi, h, a))
    space = LinSubspace(na, tuple(tuple(c.A.to_vector()) for c in certs))
    if not space.is_rref():
        raise ComputationError("Xi image basis is not canonical")
    return XiResult(n, a, space, certs, params.dim, a == Fraction(1, 4), stats)


def xi_membership(f: CubicForm, A: ProlongElement, a):
    """A certificate (chi^A, h) for A in Xi^a, or None if none exists."""
    _require_nonzero(f)
    a = Fraction(a)
    n = f.n
    chi = prolongation_character(f, A)
    pairs = [(l, m) for l in range(n) for m in range(l, n)]
    coeff = [[f.entry(l, m, j) for j in range(n)] for l, m in pairs]
    h = []
    # the system decouples over the output index k
    for k in range(n):
        rhs = [A.A[k][l][m] - a * chi[l] * (k == m) - a * chi[m] * (k == l) for l, m in pairs]
        x = solve(coeff, rhs)
        if x is None:
            return None
        h.append(x)
    return XiCertificate(A, chi, h, a)


def character_map_rank(f: CubicForm, prolong: ProlongResult | None = None):
    """(dim aut^(1), rank of A -> chi^A)."""
    prolong = prolong or compute_prolongation(f)
    if not prolong.chis:
        return 0, 0
    return prolong.dim, len(rref(prolong.chis, f.n)[1])
