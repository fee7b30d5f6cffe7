"""Canonical JSON: sorted keys, integers and rationals as decimal strings."""

from __future__ import annotations

import hashlib
import json
from fractions import Fraction

from .cubic import CubicForm, cubic_from_poly
from .exact.linalg import LinSubspace
from .exact.poly import MPoly


def rat_str(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_rat(s) -> Fraction:
    if isinstance(s, bool):
        raise ValueError("boolean is not a rational")
    if isinstance(s, (int, Fraction)):
        return Fraction(s)
    if isinstance(s, str):
        return Fraction(s.strip())
    raise ValueError(f"cannot read {s!r} as a rational (use an integer or a string)")


def to_plain(obj):
    """Recursively convert to JSON-ready data with numbers as strings."""
    if isinstance(obj, bool) or obj is None:
        return obj
    if isinstance(obj, (int, Fraction)):
        return rat_str(obj)
    if isinstance(obj, str):
        return obj
    if isinstance(obj, dict):
        return {str(k): to_plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_plain(v) for v in obj]
    if isinstance(obj, (MPoly, CubicForm)):
        return to_plain(obj.to_json())
    if isinstance(obj, LinSubspace):
        return {"ambient_dim": obj.ambient_dim, "dim": obj.dim, "basis": [list(b) for b in obj.basis]}
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj) -> str:
    return json.dumps(to_plain(obj), sort_keys=True, indent=2, ensure_ascii=True) + "\n"


def digest(data: bytes | str) -> str:
    if isinstance(data, str):
        data = data.encode()
    return "sha256:" + hashlib.sha256(data).hexdigest()


def load_poly(data) -> MPoly:
    """A polynomial from ``{"arity", "terms"}`` JSON or a ``{"n", "coeffs"}`` cubic."""
    if "terms" in data:
        return MPoly.from_json(data)
    if "coeffs" in data:
        return CubicForm.from_json(data).to_poly()
    raise ValueError("polynomial JSON needs 'arity' and 'terms'")


def load_cubic(data) -> CubicForm:
    if "coeffs" in data:
        return CubicForm.from_json(data)
    if "terms" in data:
        return cubic_from_poly(MPoly.from_json(data))
    raise ValueError("cubic JSON needs 'n' and 'coeffs' (or polynomial 'arity' and 'terms')")


def load_vector(data):
    if isinstance(data, dict):
        data = data.get("point", data.get("vector"))
    if not isinstance(data, list):
        raise ValueError("vector JSON must be a list of rationals")
    return [parse_rat(x) for x in data]
