"""Directed-rounding base-2 logarithms for certain floors.

Floors of expressions in log2 of rational arguments are decided in two
steps: arguments that are exact integer powers of two get integer logs
(the only case an expression can sit exactly on a floor boundary), and
every other rational has an irrational log2, so a finite-precision
enclosure eventually separates the expression from the nearest integer.

The enclosure uses the classic digit-by-digit method on fixed-point
integer bounds (floor on the lower bound, ceiling on the upper), so the
returned interval provably brackets the true logarithm.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Tuple


class PrecisionError(ArithmeticError):
    """A floor stayed ambiguous at the precision cap."""


def power_of_two_exponent(x: Fraction) -> Optional[int]:
    """s with x = 2**s, or None when x is not an integer power of two."""
    p, q = x.numerator, x.denominator
    if p <= 0:
        return None
    if p & (p - 1) or q & (q - 1):
        return None
    return p.bit_length() - q.bit_length()


def log2_bounds(x: Fraction, bits: int = 64) -> Tuple[Fraction, Fraction]:
    """An interval [lo, hi] containing log2(x), with hi - lo <= 2**-bits
    (wider only if the digit loop hits a rounding tie early, which still
    yields valid bounds)."""
    if x <= 0:
        raise ValueError("log2 needs a positive argument")
    exp = power_of_two_exponent(x)
    if exp is not None:
        return Fraction(exp), Fraction(exp)

    k = x.numerator.bit_length() - x.denominator.bit_length()
    while x < Fraction(2) ** k:
        k -= 1
    while x >= Fraction(2) ** (k + 1):
        k += 1

    guard = bits + 32
    scale = 1 << guard
    y = x / Fraction(2) ** k  # in [1, 2)
    lo = y.numerator * scale // y.denominator
    hi = -((-y.numerator * scale) // y.denominator)
    frac = Fraction(0)
    done = 0
    for i in range(1, bits + 1):
        lo = lo * lo // scale
        hi = -((-hi * hi) // scale)
        if lo >= 2 * scale:
            frac += Fraction(1, 2 ** i)
            lo //= 2
            hi = -((-hi) // 2)
        elif hi < 2 * scale:
            pass
        else:
            break  # bounds straddle 2: stop with what is certain
        done = i
    return Fraction(k) + frac, Fraction(k) + frac + Fraction(1, 2 ** done if done else 1)


def certain_floor(lo: Fraction, hi: Fraction) -> Optional[int]:
    import math
    flo = math.floor(lo)
    return flo if flo == math.floor(hi) else None


def floor_of_log2_squared(x: Fraction, max_bits: int = 512) -> int:
    """floor((log2 x)**2) for x >= 2, exact at power-of-two arguments."""
    exp = power_of_two_exponent(x)
    if exp is not None:
        return exp * exp
    bits = 64
    while bits <= max_bits:
        lo, hi = log2_bounds(x, bits)
        f = certain_floor(lo * lo, hi * hi)
        if f is not None:
            return f
        bits *= 2
    raise PrecisionError(f"floor((log2 {x})^2) ambiguous at {max_bits} bits")


def floor_of_ratio_to_log2(numerator: Fraction, x: Fraction, max_bits: int = 512) -> int:
    """floor(numerator / log2(x)) for x > 1, exact at power-of-two arguments."""
    if x <= 1:
        raise ValueError("denominator log needs an argument > 1")
    exp = power_of_two_exponent(x)
    if exp is not None:
        q = numerator / exp
        return q.numerator // q.denominator
    bits = 64
    while bits <= max_bits:
        lo, hi = log2_bounds(x, bits)
        f = certain_floor(numerator / hi, numerator / lo)
        if f is not None:
            return f
        bits *= 2
    raise PrecisionError(f"floor({numerator} / log2 {x}) ambiguous at {max_bits} bits")


def log2_value(x: Fraction, digits: int = 15) -> float:
    """Float log2 backed by a certified enclosure tight to ~10**-digits."""
    bits = int(digits * 3.33) + 8
    lo, hi = log2_bounds(x, bits)
    return float((lo + hi) / 2)
