"""Exact rational scalars: coercion, parsing and the "p/q" text format."""
from typing import Any

from sympy import Integer, Rational

ZERO = Rational(0)
ONE = Rational(1)


def to_rational(value: Any) -> Rational:
    """Coerce ints, strings and sympy numbers to an exact Rational; floats are refused."""
    if isinstance(value, Rational):
        return value
    if isinstance(value, bool):
        return Rational(int(value))
    if isinstance(value, float):
        raise ValueError(f"Floating point value {value!r} is not an exact scalar")
    if isinstance(value, str):
        return parse_rational(value)
    result = Rational(value)
    if not isinstance(result, Rational):
        raise ValueError(f"Not a rational number: {value!r}")
    return result


def parse_rational(text: str) -> Rational:
    """Parse "n" or "p/q" (optional sign, no spaces inside) exactly."""
    raw = text.strip()
    if not raw:
        raise ValueError("Empty rational string")
    parts = raw.split("/")
    if len(parts) > 2:
        raise ValueError(f"Malformed rational {text!r}")
    try:
        numerator = int(parts[0])
        denominator = int(parts[1]) if len(parts) == 2 else 1
    except ValueError as exc:
        raise ValueError(f"Malformed rational {text!r}") from exc
    if denominator == 0:
        raise ValueError(f"Zero denominator in {text!r}")
    return Rational(numerator, denominator)


def format_rational(value: Any) -> str:
    value = to_rational(value)
    if value.q == 1:
        return str(value.p)
    return f"{value.p}/{value.q}"


def sign(parity: int) -> Integer:
    return Integer(-1) if parity % 2 else Integer(1)


def koszul(p: int, q: int) -> Integer:
    """The sign (-1)^(p*q)."""
    return sign(p * q)

