"""Sparse multivariate polynomials with rational coefficients."""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from numbers import Rational


def _grlex_key(exp):
    return (sum(exp), exp)


class MPoly:
    """Polynomial in ``arity`` variables, stored as ``{exponent tuple: Fraction}``.

    Zero coefficients are never stored.  Instances are treated as immutable.
    """

    __slots__ = ("arity", "terms")

    def __init__(self, arity: int, terms=None):
        self.arity = arity
        clean = {}
        if terms:
            for exp, c in terms.items():
                exp = tuple(exp)
                if len(exp) != arity:
                    raise ValueError(f"exponent {exp} does not have length {arity}")
                c = Fraction(c)
                if c:
                    clean[exp] = clean.get(exp, 0) + c
                    if not clean[exp]:
                        del clean[exp]
        self.terms = clean

    @classmethod
    def _raw(cls, arity, terms):
        p = cls.__new__(cls)
        p.arity = arity
        p.terms = terms
        return p

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, arity):
        return cls._raw(arity, {})

    @classmethod
    def const(cls, arity, c):
        c = Fraction(c)
        return cls._raw(arity, {(0,) * arity: c} if c else {})

    @classmethod
    def var(cls, arity, i):
        if not 0 <= i < arity:
            raise ValueError(f"variable index {i} out of range for arity {arity}")
        exp = [0] * arity
        exp[i] = 1
        return cls._raw(arity, {tuple(exp): Fraction(1)})

    @classmethod
    def monomial(cls, exp, c=1):
        return cls(len(exp), {tuple(exp): c})

    @classmethod
    def gens(cls, arity):
        return [cls.var(arity, i) for i in range(arity)]

    # -- queries ------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def degree(self):
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def min_degree(self):
        return min((sum(e) for e in self.terms), default=-1)

    def coeff(self, exp):
        return self.terms.get(tuple(exp), Fraction(0))

    def constant_term(self):
        return self.terms.get((0,) * self.arity, Fraction(0))

    def is_homogeneous(self, d=None):
        degs = {sum(e) for e in self.terms}
        if d is None:
            return len(degs) <= 1
        return degs <= {d}

    def homogeneous_part(self, d):
        return MPoly._raw(self.arity, {e: c for e, c in self.terms.items() if sum(e) == d})

    def truncate(self, d):
        """Drop all terms of total degree > d."""
        return MPoly._raw(self.arity, {e: c for e, c in self.terms.items() if sum(e) <= d})

    def sorted_terms(self):
        """Terms in graded lexicographic order, leading term first."""
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    # -- arithmetic ---------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, MPoly):
            if other.arity != self.arity:
                raise ValueError("arity mismatch")
            return other
        if isinstance(other, (Rational, int)):
            return MPoly.const(self.arity, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        t = dict(self.terms)
        for e, c in other.terms.items():
            s = t.get(e, 0) + c
            if s:
                t[e] = s
            else:
                t.pop(e, None)
        return MPoly._raw(self.arity, t)

    __radd__ = __add__

    def __neg__(self):
        return MPoly._raw(self.arity, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (Rational, int)):
            c = Fraction(other)
            if not c:
                return MPoly.zero(self.arity)
            return MPoly._raw(self.arity, {e: c * v for e, v in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        t = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = t.get(e, 0) + c1 * c2
                if s:
                    t[e] = s
                else:
                    t.pop(e, None)
        return MPoly._raw(self.arity, t)

    __rmul__ = __mul__

    def __truediv__(self, c):
        c = Fraction(c)
        return self * (1 / c)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = MPoly.const(self.arity, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, MPoly):
            return self.arity == other.arity and self.terms == other.terms
        if isinstance(other, (Rational, int)):
            return self.terms == MPoly.const(self.arity, other).terms
        return NotImplemented

    def __hash__(self):
        return hash((self.arity, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"MPoly({self.arity}, {self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for exp, c in self.sorted_terms():
            mono = "*".join(
                f"y{i + 1}" if k == 1 else f"y{i + 1}^{k}" for i, k in enumerate(exp) if k
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    # -- calculus and evaluation ------------------------------------------

    def diff(self, var: int):
        if not 0 <= var < self.arity:
            raise ValueError(f"variable index {var} out of range for arity {self.arity}")
        t = {}
        for e, c in self.terms.items():
            k = e[var]
            if k:
                e2 = e[:var] + (k - 1,) + e[var + 1:]
                t[e2] = c * k
        return MPoly._raw(self.arity, t)

    def diff_multi(self, vars_):
        p = self
        for v in vars_:
            p = p.diff(v)
            if not p.terms:
                break
        return p

    def derivative_at_zero(self, vars_):
        """The mixed partial derivative over ``vars_`` evaluated at the origin."""
        exp = [0] * self.arity
        for v in vars_:
            exp[v] += 1
        c = self.terms.get(tuple(exp))
        if c is None:
            return Fraction(0)
        f = 1
        for k in exp:
            for j in range(2, k + 1):
                f *= j
        return c * f

    def evaluate(self, point):
        if len(point) != self.arity:
            raise ValueError(f"point has length {len(point)}, expected {self.arity}")
        point = [Fraction(x) for x in point]
        total = Fraction(0)
        for e, c in self.terms.items():
            term = c
            for x, k in zip(point, e):
                if k:
                    term *= x**k
            total += term
        return total

    def substitute(self, polys):
        """Compose: replace variable i by ``polys[i]`` (all of equal arity)."""
        if len(polys) != self.arity:
            raise ValueError(f"need {self.arity} polynomials, got {len(polys)}")
        if not polys:
            return MPoly.const(0, self.constant_term())
        arity = polys[0].arity
        powers = [{0: MPoly.const(arity, 1)} for _ in polys]

        def pw(i, k):
            cache = powers[i]
            if k not in cache:
                cache[k] = pw(i, k - 1) * polys[i]
            return cache[k]

        result = MPoly.zero(arity)
        for e, c in self.terms.items():
            term = MPoly.const(arity, c)
            for i, k in enumerate(e):
                if k:
                    term = term * pw(i, k)
            result = result + term
        return result

    def translate(self, shift):
        """p(y + shift)."""
        shift = [Fraction(s) for s in shift]
        gens = MPoly.gens(self.arity)
        return self.substitute([g + s for g, s in zip(gens, shift)])

    def gradient(self):
        return [self.diff(i) for i in range(self.arity)]

    # -- serialization ------------------------------------------------

    def to_json(self):
        return {
            "arity": self.arity,
            "terms": [
                {"exp": list(e), "num": str(c.numerator), "den": str(c.denominator)}
                for e, c in self.sorted_terms()
            ],
        }

    @classmethod
    def from_json(cls, data):
        arity = int(data["arity"])
        terms = {}
        for t in data["terms"]:
            exp = tuple(int(k) for k in t["exp"])
            if any(k < 0 for k in exp):
                raise ValueError(f"negative exponent in {exp}")
            c = Fraction(int(t["num"]), int(t.get("den", "1")))
            terms[exp] = terms.get(exp, 0) + c
        return cls(arity, terms)


def poly_diff(p: MPoly, var: int) -> MPoly:
    return p.diff(var)


def poly_eval(p: MPoly, point) -> Fraction:
    return p.evaluate(point)


def monomials_upto(nvars, degree):
    """Exponent tuples of total degree <= ``degree`` in graded lex order, ascending."""
    out = [e for e in product(range(degree + 1), repeat=nvars) if sum(e) <= degree]
    out.sort(key=lambda e: (sum(e), tuple(-k for k in e)))
    return out
