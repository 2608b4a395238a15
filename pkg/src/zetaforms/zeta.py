"""High-precision Riemann zeta values at integer arguments, two ways.

Primary method: Euler-Maclaurin with exact Bernoulli-number corrections.
For integer s every term is rational, so the only rounding happens when the
accumulated value is projected onto the fixed-point grid (one floor per
term, absorbed by guard digits).

Verification method: the alternating series eta(s) = sum (-1)^(k-1) k^(-s)
accelerated by Chebyshev-style weights (the d_k = coefficients derived from
(3+sqrt 8)^n scheme), which converges like 5.83^(-n) and shares nothing
with the Euler-Maclaurin route except Fraction arithmetic.

ZetaTable bundles values at one precision and refuses to exist unless the
two methods agree entry by entry.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import BudgetError, DomainError, InternalCheckError
from .fixedpoint import GUARD_DIGITS, FixedReal, _div_nearest

_BERNOULLI: list[Fraction] = [Fraction(1)]


def bernoulli(n: int) -> Fraction:
    """Bernoulli number B_n (B_1 = -1/2), exact, from the defining
    recurrence sum_{k=0}^{n} C(n+1,k) B_k = 0."""
    if n < 0:
        raise DomainError("Bernoulli index must be >= 0")
    while len(_BERNOULLI) <= n:
        m = len(_BERNOULLI)
        acc = Fraction(0)
        for k, bk in enumerate(_BERNOULLI):
            if bk:
                acc += math.comb(m + 1, k) * bk
        _BERNOULLI.append(-acc / (m + 1))
    return _BERNOULLI[n]


def power_tail_scaled(start: int, s: int, work: int) -> int:
    """sum_{k >= start} k^(-s) as a 10**work scaled integer.

    Euler-Maclaurin with the correction depth chosen from the standard
    remainder bound (|remainder| <= |first omitted term|, doubled for
    safety).  Raises BudgetError if no depth reaches 10**(-work) before the
    asymptotic terms start growing; callers retry with a larger `start`.
    """
    if start < 1 or s < 2:
        raise DomainError("power tail needs start >= 1 and s >= 2")
    scale = 10**work
    n = start
    # integral + half-term
    total = _div_nearest(scale, (s - 1) * n ** (s - 1))
    total += _div_nearest(scale, 2 * n**s)
    poch = Fraction(s)  # (s)_{2j-1} built incrementally
    best_bound = None
    j = 1
    while True:
        coeff = bernoulli(2 * j) / math.factorial(2 * j) * poch
        term = coeff / n ** (s + 2 * j - 1)
        bound = 2 * bernoulli(2 * j + 2) / math.factorial(2 * j + 2)
        bound = abs(bound * poch * (s + 2 * j - 1) * (s + 2 * j)) / n ** (s + 2 * j + 1)
        total += _div_nearest(scale * term.numerator, term.denominator)
        if bound * scale < 1:
            return total
        if best_bound is not None and bound > best_bound:
            raise BudgetError(
                f"Euler-Maclaurin tail for s={s} does not reach 10^-{work} "
                f"at cutoff {start}; increase the cutoff"
            )
        best_bound = bound
        poch *= (s + 2 * j - 1) * (s + 2 * j)
        j += 1


def zeta_euler_maclaurin(s: int, digits: int) -> FixedReal:
    """zeta(s) by direct summation to a cutoff plus Euler-Maclaurin tail."""
    if s < 2:
        raise DomainError("zeta engine handles integer s >= 2 only")
    if digits < 10:
        raise DomainError("ask for at least 10 digits")
    work = digits + GUARD_DIGITS + 8
    scale = 10**work
    cutoff = max(16, (work * 4) // (s + 2) + 8)
    while True:
        try:
            tail = power_tail_scaled(cutoff, s, work)
            break
        except BudgetError:
            cutoff *= 2
            if cutoff > 10**7:
                raise
    total = sum(scale // k**s for k in range(1, cutoff)) + tail
    return FixedReal(_div_nearest(total, 10 ** (work - digits)), digits)


def zeta_alternating(s: int, digits: int) -> FixedReal:
    """zeta(s) from the accelerated alternating series (verification route).

    eta(s) is evaluated with the integer acceleration weights built from the
    recurrence d_k = 6 d_{k-1} - d_{k-2} (values of ((3+sqrt8)^n+(3-sqrt8)^n)/2),
    giving error ~ (3+sqrt8)^(-n); then zeta = eta / (1 - 2^(1-s)).
    """
    if s < 2:
        raise DomainError("zeta engine handles integer s >= 2 only")
    work = digits + GUARD_DIGITS + 5
    n = int(work / math.log10(3 + math.sqrt(8))) + 6
    # d = ((3+sqrt8)^n + (3-sqrt8)^n) / 2 via the linear recurrence
    d_prev, d = 1, 3
    for _ in range(n - 1):
        d_prev, d = d, 6 * d - d_prev
    b = Fraction(-1)
    c = Fraction(-d)
    acc = Fraction(0)
    for k in range(n):
        c = b - c
        acc += c / (k + 1) ** s
        b = b * 2 * (k + n) * (k - n) / ((2 * k + 1) * (k + 1))
    eta = acc / d
    value = eta / (1 - Fraction(1, 2 ** (s - 1)))
    return FixedReal.from_fraction(value, digits)


def zeta_high_precision(s: int, digits: int) -> FixedReal:
    """zeta(s) with absolute error < 10**(-digits) (Euler-Maclaurin route)."""
    return zeta_euler_maclaurin(s, digits)


class ZetaTable:
    """Zeta values at one working precision, self-verified on construction.

    Every entry is computed by both internal methods; construction fails
    with InternalCheckError unless they agree to 10**(-digits+5).
    """

    VERIFY_MARGIN = 5

    def __init__(self, s_values, digits: int):
        if digits < 10:
            raise DomainError("table precision must be >= 10 digits")
        self.digits = digits
        self._values: dict[int, FixedReal] = {}
        allowed = 10**self.VERIFY_MARGIN  # in units of 10**(-digits)
        for s in sorted(set(s_values)):
            em = zeta_euler_maclaurin(s, digits)
            alt = zeta_alternating(s, digits)
            if abs(em.scaled - alt.scaled) > allowed:
                raise InternalCheckError(
                    f"zeta({s}) methods disagree at {digits} digits"
                )
            self._values[s] = em

    def __getitem__(self, s: int) -> FixedReal:
        if s not in self._values:
            raise DomainError(f"zeta({s}) not in table")
        return self._values[s]

    def __contains__(self, s: int) -> bool:
        return s in self._values

    @property
    def entries(self):
        return dict(self._values)
