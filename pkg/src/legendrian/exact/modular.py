"""Null spaces over Q from elimination modulo several primes.

Each prime gives the reduced echelon basis of the kernel mod p.  Images from
primes of maximal rank are combined by CRT, lifted by rational
reconstruction and then checked exactly against the original matrix.  A
lifted basis that passes the check is the canonical one: it has as many
vectors as the largest mod-p nullity allows, all exact kernel vectors.

The elimination kernel is compiled (``_modkernel``) when available; set
``LEGENDRIAN_PURE_PYTHON=1`` to force the Python fallback.  The prime list
can be overridden with ``LEGENDRIAN_PRIMES`` (comma separated).
"""

from __future__ import annotations

import os
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt

import numpy as np

from ..errors import ComputationError
from . import _modkernel_py
from .linalg import LinSubspace, as_sparse

_compiled = None
if not os.environ.get("LEGENDRIAN_PURE_PYTHON"):
    try:
        from . import _modkernel as _compiled
    except ImportError:
        _compiled = None

BACKEND = "cython" if _compiled is not None else "python"

PRIME_BITS = 62
DEFAULT_PRIME_COUNT = 16


def _is_probable_prime(n):
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for q in small:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    # deterministic for n < 3.3e24 with these bases
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@lru_cache(maxsize=None)
def primes_below(bound, count):
    out = []
    n = bound - 1
    while len(out) < count:
        if _is_probable_prime(n):
            out.append(n)
        n -= 1
    return tuple(out)


def default_primes():
    env = os.environ.get("LEGENDRIAN_PRIMES")
    if env:
        primes = tuple(int(x) for x in env.split(",") if x.strip())
        for p in primes:
            if not _is_probable_prime(p) or p >= 2**63:
                raise ValueError(f"LEGENDRIAN_PRIMES entry {p} is not a prime below 2^63")
        return primes
    return primes_below(2**PRIME_BITS, DEFAULT_PRIME_COUNT)


def extend_primes(primes, count):
    """``count`` further primes below the smallest of ``primes``."""
    return primes_below(min(primes), count)


def rational_reconstruct(a, m):
    """The fraction r/s with |r|, s <= sqrt(m/2) and r = s*a mod m, or None."""
    a %= m
    bound = isqrt(m // 2)
    r0, r1 = m, a
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound or gcd(r1, abs(s1)) != 1:
        return None
    if s1 < 0:
        r1, s1 = -r1, -s1
    return Fraction(r1, s1)


def crt_pair(a, m, b, p):
    """x with x = a mod m and x = b mod p, reduced mod m*p (m, p coprime)."""
    t = (b - a) * pow(m, -1, p) % p
    return (a + m * t) % (m * p), m * p


def rref_mod(matrix, p):
    """In-place RREF mod p with the active backend; returns pivot columns."""
    if _compiled is not None and isinstance(matrix, np.ndarray):
        return _compiled.rref_mod(matrix, np.uint64(p))
    return _modkernel_py.rref_mod(matrix, p)


def gram(int_rows, ncols):
    """Exact M^T M.  Over Q its kernel equals the kernel of M."""
    maxabs = max((abs(x) for r in int_rows for x in r.values()), default=0)
    if maxabs and maxabs * maxabs * len(int_rows) < 2**62:
        from scipy import sparse

        data, ri, ci = [], [], []
        for i, r in enumerate(int_rows):
            for j, x in r.items():
                ri.append(i)
                ci.append(j)
                data.append(x)
        m = sparse.csr_matrix(
            (np.array(data, dtype=np.int64), (np.array(ri), np.array(ci))),
            shape=(len(int_rows), ncols),
        )
        g = (m.T @ m).toarray().astype(np.int64)
        return [{j: int(x) for j, x in enumerate(row) if x} for row in g]
    acc = [dict() for _ in range(ncols)]
    for r in int_rows:
        items = list(r.items())
        for j, x in items:
            row = acc[j]
            for k, y in items:
                row[k] = row.get(k, 0) + x * y
    return [{k: v for k, v in row.items() if v} for row in acc]


def _reduced(int_rows, ncols, p):
    if _compiled is not None:
        a = np.zeros((len(int_rows), ncols), dtype=np.uint64)
        for i, r in enumerate(int_rows):
            for j, x in r.items():
                a[i, j] = x % p
        return a
    a = [[0] * ncols for _ in int_rows]
    for i, r in enumerate(int_rows):
        row = a[i]
        for j, x in r.items():
            row[j] = x % p
    return a


def kernel_mod_p(int_rows, ncols, p):
    """(rank, kernel RREF rows mod p, kernel pivot columns)."""
    a = _reduced(int_rows, ncols, p)
    pivots = rref_mod(a, p)
    rank = len(pivots)
    pivset = set(pivots)
    free = [j for j in range(ncols) if j not in pivset]
    if not free:
        return rank, [], []
    if isinstance(a, np.ndarray):
        red = [[int(x) for x in a[i]] for i in range(rank)]
    else:
        red = a[:rank]
    kern = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for i, c in enumerate(pivots):
            x = red[i][f]
            if x:
                v[c] = (p - x) % p
        kern.append(v)
    kpiv = _modkernel_py.rref_mod(kern, p)
    return rank, kern[: len(kpiv)], kpiv


def kernel_modular(m, primes=None, max_primes=256, use_gram=None, stats=None):
    """Exact kernel of ``m`` via multi-prime elimination and rational reconstruction.

    ``stats`` (a dict) receives primes used, rank, backend and whether the
    Gram reduction was applied.
    """
    sm = as_sparse(m)
    ncols = sm.ncols
    rows = sm.integer_rows()
    if use_gram is None:
        use_gram = len(rows) > 2 * ncols
    base = gram(rows, ncols) if use_gram else rows
    primes = tuple(primes) if primes else default_primes()
    if stats is None:
        stats = {}
    stats.update({"backend": BACKEND, "gram": bool(use_gram), "primes_used": 0})

    best_rank = -1
    groups = {}  # kernel pivots -> [residues, modulus]
    used = 0
    queue = list(primes)
    while used < max_primes:
        if not queue:
            queue = list(extend_primes(primes, DEFAULT_PRIME_COUNT))
            primes = primes + tuple(queue)
        p = queue.pop(0)
        used += 1
        rank, kern, kpiv = kernel_mod_p(base, ncols, p)
        if rank < best_rank:
            continue
        if rank > best_rank:
            best_rank = rank
            groups = {}
        stats.update(primes_used=used, rank=rank)
        if rank == ncols:
            return LinSubspace.zero(ncols)
        key = tuple(kpiv)
        if key not in groups:
            groups[key] = [[list(r) for r in kern], p]
        else:
            acc, mod = groups[key]
            for ra, rb in zip(acc, kern):
                for j in range(ncols):
                    ra[j] = crt_pair(ra[j], mod, rb[j], p)[0]
            groups[key][1] = mod * p
        acc, mod = groups[key]
        lifted = []
        for r in acc:
            vec = []
            for x in r:
                q = rational_reconstruct(x, mod)
                if q is None:
                    break
                vec.append(q)
            else:
                lifted.append(vec)
                continue
            break
        else:
            if all(sm.annihilates(v) for v in lifted):
                sub = LinSubspace(ncols, tuple(tuple(v) for v in lifted))
                if sub.is_rref():
                    return sub
    raise ComputationError(
        f"rational reconstruction failed after {used} primes (rank mod p = {best_rank})"
    )
