"""Fixed-point decimal reals on top of Python integers.

A FixedReal stores value = scaled / 10**digits.  Every public constructor
and function here works internally at digits + GUARD_DIGITS (or more) and
rounds once at the end, so results carry an absolute error below
2 * 10**(-digits).  That conservative "2 ulp" contract is what the rest of
the package relies on; callers that need headroom simply ask for more
digits.

Constants (pi, sqrt(2), e) are computed from scratch with classical
integer-only series:

  - pi via Machin's formula 16 atan(1/5) - 4 atan(1/239),
  - e via sum 1/k!,
  - square roots via math.isqrt on the scaled radicand.

cos/sin reduce the argument modulo pi with a working precision widened by
the size of the quotient, so large arguments (subsequence verification
feeds in k*omega with k up to ~10^6) lose no accuracy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError

GUARD_DIGITS = 10


def _div_nearest(a: int, b: int) -> int:
    """Round a/b to the nearest integer, ties away from zero; b > 0."""
    if a >= 0:
        return (2 * a + b) // (2 * b)
    return -((-2 * a + b) // (2 * b))


@dataclass(frozen=True, order=False)
class FixedReal:
    """Immutable fixed-point decimal: value = scaled / 10**digits."""

    scaled: int
    digits: int

    def __post_init__(self):
        if self.digits < 1:
            raise DomainError("FixedReal needs at least one digit")

    # -- constructors -------------------------------------------------

    @classmethod
    def from_fraction(cls, x: Fraction, digits: int) -> "FixedReal":
        x = Fraction(x)
        return cls(_div_nearest(x.numerator * 10**digits, x.denominator), digits)

    @classmethod
    def from_int(cls, n: int, digits: int) -> "FixedReal":
        return cls(n * 10**digits, digits)

    @classmethod
    def from_decimal(cls, text: str, digits: int) -> "FixedReal":
        return cls.from_fraction(decimal_to_fraction(text), digits)

    # -- views ---------------------------------------------------------

    def to_fraction(self) -> Fraction:
        return Fraction(self.scaled, 10**self.digits)

    def to_decimal(self) -> str:
        """Canonical decimal string with exactly `digits` fractional digits."""
        sign = "-" if self.scaled < 0 else ""
        mag = abs(self.scaled)
        unit = 10**self.digits
        return f"{sign}{mag // unit}.{mag % unit:0{self.digits}d}"

    def to_float(self) -> float:
        if self.scaled == 0:
            return 0.0
        l10 = self.log10_abs()
        if l10 > 300:
            return math.copysign(math.inf, self.scaled)
        if l10 < -300:
            return math.copysign(0.0, self.scaled)
        # int/int true division rounds correctly at any operand size
        return self.scaled / 10**self.digits

    def log10_abs(self) -> float:
        """log10 |value|; value must be nonzero."""
        if self.scaled == 0:
            raise DomainError("log10 of zero")
        m = abs(self.scaled)
        nb = m.bit_length()
        shift = max(0, nb - 64)
        return (math.log10(m >> shift) + shift * math.log10(2.0)) - self.digits

    def rescale(self, digits: int) -> "FixedReal":
        if digits == self.digits:
            return self
        if digits > self.digits:
            return FixedReal(self.scaled * 10 ** (digits - self.digits), digits)
        return FixedReal(
            _div_nearest(self.scaled, 10 ** (self.digits - digits)), digits
        )

    # -- arithmetic (same-precision operands) ---------------------------

    def _check(self, other: "FixedReal") -> None:
        if self.digits != other.digits:
            raise DomainError("precision mismatch; rescale first")

    def __add__(self, other: "FixedReal") -> "FixedReal":
        self._check(other)
        return FixedReal(self.scaled + other.scaled, self.digits)

    def __sub__(self, other: "FixedReal") -> "FixedReal":
        self._check(other)
        return FixedReal(self.scaled - other.scaled, self.digits)

    def __neg__(self) -> "FixedReal":
        return FixedReal(-self.scaled, self.digits)

    def __abs__(self) -> "FixedReal":
        return FixedReal(abs(self.scaled), self.digits)

    def mul(self, other: "FixedReal") -> "FixedReal":
        self._check(other)
        return FixedReal(
            _div_nearest(self.scaled * other.scaled, 10**self.digits), self.digits
        )

    def mul_fraction(self, x: Fraction) -> "FixedReal":
        x = Fraction(x)
        return FixedReal(
            _div_nearest(self.scaled * x.numerator, x.denominator), self.digits
        )

    def __lt__(self, other):
        self._check(other)
        return self.scaled < other.scaled

    def __le__(self, other):
        self._check(other)
        return self.scaled <= other.scaled


def decimal_to_fraction(text: str) -> Fraction:
    """Exact rational value of a decimal or p/q literal."""
    text = text.strip()
    if "/" in text:
        num, den = text.split("/", 1)
        return Fraction(int(num), int(den))
    return Fraction(text)  # Fraction parses decimal strings exactly


# -- pi ---------------------------------------------------------------

_PI_CACHE: dict = {"digits": 0, "scaled": 0}


def _atan_inv_scaled(x: int, work: int) -> int:
    """atan(1/x) * 10**work, floor-error bounded by the term count."""
    scale = 10**work
    total = 0
    power = x
    x2 = x * x
    k = 0
    sign = 1
    while True:
        head = scale // power
        if head == 0:
            break
        total += sign * (scale // (power * (2 * k + 1)))
        power *= x2
        k += 1
        sign = -sign
    return total


def pi_scaled(digits: int) -> int:
    """pi * 10**digits rounded to nearest (error < 1 ulp)."""
    if _PI_CACHE["digits"] < digits:
        work = digits + GUARD_DIGITS + 5
        raw = 16 * _atan_inv_scaled(5, work) - 4 * _atan_inv_scaled(239, work)
        _PI_CACHE["digits"] = digits
        _PI_CACHE["scaled"] = _div_nearest(raw, 10 ** (work - digits))
    cached = _PI_CACHE["digits"]
    if cached == digits:
        return _PI_CACHE["scaled"]
    return _div_nearest(_PI_CACHE["scaled"], 10 ** (cached - digits))


def pi_fixed(digits: int) -> FixedReal:
    return FixedReal(pi_scaled(digits), digits)


def inv_pi_fraction(digits: int) -> Fraction:
    """1/pi as an exact rational with error below 10**(-digits)."""
    work = digits + GUARD_DIGITS
    return Fraction(10**work * 10**work // pi_scaled(work), 10**work)


# -- other constants --------------------------------------------------

def sqrt_fixed(x: Fraction, digits: int) -> FixedReal:
    """Floor square root of a nonnegative rational at `digits` digits."""
    x = Fraction(x)
    if x < 0:
        raise DomainError("square root of a negative rational")
    scaled = math.isqrt(x.numerator * 10 ** (2 * digits) // x.denominator)
    return FixedReal(scaled, digits)


def e_fixed(digits: int) -> FixedReal:
    work = digits + GUARD_DIGITS
    scale = 10**work
    total = 0
    term = scale  # 1/0!
    k = 0
    while term:
        total += term
        k += 1
        term //= k
    return FixedReal(_div_nearest(total, 10**GUARD_DIGITS), digits)


# -- trigonometry ------------------------------------------------------

def _cos_core(u: int, work: int) -> int:
    """cos(u/10**work) * 10**work for 0 <= u <= ~pi/2, Taylor series."""
    scale = 10**work
    total = scale
    term = scale
    k = 0
    while term:
        k += 1
        term = term * u // scale
        term = term * u // (scale * (2 * k - 1) * (2 * k))
        total += term if k % 2 == 0 else -term
    return total


def cos_pi_argument(pi_part: Fraction, addend: Fraction, digits: int) -> FixedReal:
    """cos(pi_part * pi + addend) at `digits` digits.

    The pi multiple is reduced modulo 2 exactly in the rationals before any
    rounding, so huge pi_part values (k*omega for k ~ 10^6) cost nothing in
    accuracy.  The residual real argument is then reduced modulo pi at a
    working precision widened by the quotient size.
    """
    pi_part = Fraction(pi_part) % 2  # cos is 2pi-periodic; exact reduction
    addend = Fraction(addend)

    # widen the working precision to absorb |addend|/pi quotient digits
    approx = abs(float(pi_part)) * 3.2 + 1.0
    try:
        approx += abs(addend.numerator / addend.denominator)
    except OverflowError:
        approx += 10.0 ** min(60, len(str(abs(addend.numerator)))) + 1
    extra = len(str(int(approx))) + 2
    work = digits + GUARD_DIGITS + extra

    pw = pi_scaled(work)
    scale = 10**work
    x = _div_nearest(pi_part.numerator * pw, pi_part.denominator)
    x += _div_nearest(addend.numerator * scale, addend.denominator)

    # reduce modulo pi: x = q*pi + r with 0 <= r < pi, cos flips sign per q
    q, r = divmod(x, pw)
    sign = -1 if q % 2 else 1
    half = pw // 2
    if r > half:
        r = pw - r
        sign = -sign
    val = sign * _cos_core(r, work)
    return FixedReal(_div_nearest(val, 10 ** (work - digits)), digits)


def sin_pi_multiple(x: Fraction, digits: int) -> FixedReal:
    """sin(pi * x) for rational x, via sin t = cos(t - pi/2)."""
    return cos_pi_argument(Fraction(x) - Fraction(1, 2), Fraction(0), digits)
