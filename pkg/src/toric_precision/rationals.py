"""Arbitrary-precision rational scalars.

``fractions.Fraction`` already provides the canonical form this package
relies on (positive denominator, fully reduced), so ``Rational`` is an
alias rather than a reimplementation.  Serialized rationals use the
string form ``"p/q"`` with the denominator omitted when it is 1, which
is exactly ``str(Fraction)``.
"""

from __future__ import annotations

from fractions import Fraction

Rational = Fraction


def as_rational(value: int | str | Fraction) -> Fraction:
    """Coerce an int, "p/q" string, or Fraction to a Fraction."""
    if isinstance(value, bool):
        raise ValueError(f"not a rational scalar: {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational scalar: {value!r}") from exc
    raise ValueError(f"not a rational scalar: {value!r}")


def rational_str(value: Fraction) -> str:
    """Serialize a rational as "p/q", omitting "/q" when the denominator is 1."""
    return str(Fraction(value))
