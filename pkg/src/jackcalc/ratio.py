"""Exact rational scalars and their canonical text form.

Everything outside the quadrature module computes over Fraction. JSON
output writes rationals as canonical strings "p/q" (or "p" when the
denominator is 1), which is exactly what str(Fraction) produces.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import InputError

Rat = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def rat(value, denom=None) -> Fraction:
    """Coerce ints, "p/q" strings, or Fractions to Fraction. Floats are
    rejected: they would silently break exactness."""
    if isinstance(value, float):
        raise InputError("floats are not exact; pass a Fraction or 'p/q' string")
    if denom is not None:
        return Fraction(value, denom)
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"not a rational: {value!r}") from exc
    raise InputError(f"cannot coerce {type(value).__name__} to a rational")


def rat_str(x: Fraction) -> str:
    return str(Fraction(x))


def rat_vector(text_or_seq, r: int | None = None) -> tuple[Fraction, ...]:
    """Parse "a/b,c,d" or coerce a sequence into a tuple of Fractions."""
    if isinstance(text_or_seq, str):
        parts = [p for p in text_or_seq.split(",") if p.strip() != ""]
        vec = tuple(rat(p) for p in parts)
    else:
        vec = tuple(rat(p) for p in text_or_seq)
    if r is not None and len(vec) != r:
        raise InputError(f"expected {r} components, got {len(vec)}")
    return vec
