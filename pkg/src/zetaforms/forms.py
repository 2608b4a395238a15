"""Exact linear forms in 1 and zeta values from factored rational functions.

The pipeline: build the factored function (a linear prefactor, rising-
factorial blocks in the numerator and denominator, one scalar), decompose
it exactly into partial fractions by local truncated-series expansion at
each integer pole, shift orders for the second derivative, and sum over
positive integer arguments using sum_{k>=1} (k+m)^(-s) = zeta(s) - H_m(s).

Everything up to the final numeric evaluation is exact rational
arithmetic; the two numeric routes (coefficient * zeta-table evaluation
vs. brute-force term summation) act as oracles for one another.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import BudgetError, DomainError, InternalCheckError
from .exact import (
    TruncatedSeries,
    factorial,
    harmonic_power_sum,
    lcm_of,
    log2_fraction,
    pochhammer,
)
from .fixedpoint import GUARD_DIGITS, FixedReal, _div_nearest
from .zeta import ZetaTable, power_tail_scaled


@dataclass(frozen=True)
class RisingBlock:
    """(t + shift)_length ** power, a block of consecutive linear factors."""

    shift: int
    length: int
    power: int

    def __post_init__(self):
        for value in (self.shift, self.length, self.power):
            if not isinstance(value, int):
                raise DomainError(
                    f"rising blocks take integer parameters (integer poles "
                    f"only), got {value!r}"
                )
        if self.length < 1 or self.power < 1:
            raise DomainError("rising block needs positive length and power")

    @property
    def degree(self) -> int:
        return self.length * self.power

    def zero_order_at(self, m: int) -> int:
        """Vanishing order at t = -m."""
        return self.power if self.shift <= m <= self.shift + self.length - 1 else 0


@dataclass(frozen=True)
class FactoredRationalFunction:
    """scalar * (c0 + c1 t) * prod(numerator) / prod(denominator)."""

    prefactor: tuple[int, int]  # (c0, c1) meaning c0 + c1*t
    numerator: tuple[RisingBlock, ...]
    denominator: tuple[RisingBlock, ...]
    scalar: Fraction = Fraction(1)

    @property
    def numerator_degree(self) -> int:
        d = sum(b.degree for b in self.numerator)
        c0, c1 = self.prefactor
        return d + (1 if c1 != 0 else 0)

    @property
    def denominator_degree(self) -> int:
        return sum(b.degree for b in self.denominator)

    @property
    def is_proper(self) -> bool:
        return self.numerator_degree < self.denominator_degree

    def numerator_zero_order_at(self, m: int) -> int:
        order = sum(b.zero_order_at(m) for b in self.numerator)
        c0, c1 = self.prefactor
        if c1 != 0 and c0 == c1 * m:
            order += 1
        return order

    def denominator_cover_at(self, m: int) -> int:
        return sum(b.zero_order_at(m) for b in self.denominator)

    def evaluate(self, t: Fraction) -> Fraction:
        """Exact value at a rational point away from the poles."""
        t = Fraction(t)
        c0, c1 = self.prefactor
        num = self.scalar * (c0 + c1 * t)
        for b in self.numerator:
            num *= pochhammer(t + b.shift, b.length) ** b.power
        den = Fraction(1)
        for b in self.denominator:
            den *= pochhammer(t + b.shift, b.length) ** b.power
        if den == 0:
            raise DomainError(f"evaluation at pole t={t}")
        return num / den


def build_zudilin(n: int) -> FactoredRationalFunction:
    """The degree-(162n+1 over 240n+10) well-poised rational function whose
    twice-differentiated values at t = 1, 2, ... sum to a linear form in
    1, zeta(5), zeta(7), zeta(9), zeta(11).

    Shape: (37n + 2t) (t - 27n)_{27n}^3 (t + 37n + 1)_{27n}^3 over
    prod_{j=1..10} (t + (12-j)n)_{(13+2j)n+1}, all times the scalar
    (1/2) prod_{j=1..10} ((13+2j)n)! / (27n)!^6.
    """
    if n < 1:
        raise DomainError(f"index must be >= 1, got {n}")
    numerator = (
        RisingBlock(-27 * n, 27 * n, 3),
        RisingBlock(37 * n + 1, 27 * n, 3),
    )
    denominator = tuple(
        RisingBlock((12 - j) * n, (13 + 2 * j) * n + 1, 1) for j in range(1, 11)
    )
    scalar = Fraction(1, 2)
    for j in range(1, 11):
        scalar *= factorial((13 + 2 * j) * n)
    scalar /= factorial(27 * n) ** 6
    return FactoredRationalFunction((37 * n, 2), numerator, denominator, scalar)


def pole_spectrum(f: FactoredRationalFunction) -> list[tuple[int, int]]:
    """Poles t = -m with their analytic multiplicities, sorted by m.

    Multiplicity = denominator cover count minus any numerator vanishing
    order at -m; entries with multiplicity < 1 are dropped.
    """
    cover: dict[int, int] = {}
    for b in f.denominator:
        for i in range(b.length):
            m = b.shift + i
            cover[m] = cover.get(m, 0) + b.power
    out = []
    for m in sorted(cover):
        mult = cover[m] - f.numerator_zero_order_at(m)
        if mult >= 1:
            out.append((m, mult))
    return out


@dataclass
class PartialFractionExpansion:
    """Exact coefficients a_{j,m} of 1/(t+m)^j; zero coefficients omitted.

    Treated as immutable once built (safe to share across tasks)."""

    terms: dict[tuple[int, int], Fraction] = field(default_factory=dict)  # (m, j)

    @property
    def max_order(self) -> int:
        return max((j for _, j in self.terms), default=0)

    @property
    def min_order(self) -> int:
        return min((j for _, j in self.terms), default=0)

    def evaluate(self, t: Fraction) -> Fraction:
        t = Fraction(t)
        return sum(
            (a / (t + m) ** j for (m, j), a in self.terms.items()), Fraction(0)
        )


def _int_series_mul_linear(coeffs: list[int], const: int, top: int) -> None:
    """In-place multiply an integer coefficient list by (const + u)."""
    for k in range(top, 0, -1):
        coeffs[k] = const * coeffs[k] + coeffs[k - 1]
    coeffs[0] *= const


def partial_fractions(f: FactoredRationalFunction) -> PartialFractionExpansion:
    """Exact partial-fraction expansion of a proper factored function.

    Per pole t = -m with denominator cover mu: substitute t = u - m, so
    every linear factor (t + c) becomes (c - m) + u; the mu vanishing
    denominator factors contribute u^mu and the rest are expanded as
    truncated series of order mu - 1.  Then a_{j,m} is the coefficient of
    u^(mu - j) in numerator_series * inverse(denominator_series), scaled by
    the function's scalar prefactor (so reconstruction reproduces the
    original including the scalar).
    """
    if not f.is_proper:
        raise DomainError(
            "partial fractions of a non-proper function would have a "
            f"polynomial part (degrees {f.numerator_degree} >= "
            f"{f.denominator_degree})"
        )
    cover: dict[int, int] = {}
    for b in f.denominator:
        for i in range(b.length):
            m = b.shift + i
            cover[m] = cover.get(m, 0) + b.power
    c0, c1 = f.prefactor
    out: dict[tuple[int, int], Fraction] = {}
    for m in sorted(cover):
        mu = cover[m]
        top = mu - 1
        num = [0] * (top + 1)
        num[0] = c0 - c1 * m
        if top >= 1:
            num[1] = c1
        if num[0] == 0 and c1 == 0:
            continue  # zero prefactor: the whole function is 0
        for b in f.numerator:
            for i in range(b.shift - m, b.shift - m + b.length):
                for _ in range(b.power):
                    _int_series_mul_linear(num, i, top)
        den = [1] + [0] * top
        for b in f.denominator:
            for i in range(b.shift - m, b.shift - m + b.length):
                if i == 0:
                    continue  # the u^mu factors handled by the order shift
                for _ in range(b.power):
                    _int_series_mul_linear(den, i, top)
        num_s = TruncatedSeries.from_coeffs(num, top)
        den_s = TruncatedSeries.from_coeffs(den, top)
        local = (num_s * den_s.inverse()).scale(f.scalar)
        for j in range(1, mu + 1):
            a = local[mu - j]
            if a != 0:
                out[(m, j)] = a
    return PartialFractionExpansion(out)


def second_derivative(p: PartialFractionExpansion) -> PartialFractionExpansion:
    """d^2/dt^2 termwise: a/(t+m)^j -> j(j+1) a/(t+m)^(j+2)."""
    return PartialFractionExpansion(
        {(m, j + 2): j * (j + 1) * a for (m, j), a in p.terms.items()}
    )


@dataclass
class ZetaLinearForm:
    """ell0 + sum_s ell_s zeta(s) with exact rational coefficients.

    Treated as immutable once built; zero coefficients are kept on purpose
    (the vanishing pattern is part of the result)."""

    n: int
    ell0: Fraction
    coefficients: dict[int, Fraction]  # s -> ell_s

    def nonzero_arguments(self) -> list[int]:
        return sorted(s for s, c in self.coefficients.items() if c != 0)

    def log2_height(self) -> float:
        vals = [self.ell0] + list(self.coefficients.values())
        return max(log2_fraction(v) for v in vals if v != 0)

    def to_json_dict(self, checks: dict | None = None) -> dict:
        doc = {
            "n": self.n,
            "ell0": fraction_str(self.ell0),
            "coeffs": {
                str(s): fraction_str(self.coefficients[s])
                for s in sorted(self.coefficients)
            },
            "denominator": str(common_denominator(self)[0]),
            "log2_height": round(self.log2_height(), 6),
        }
        doc["checks"] = checks if checks is not None else {}
        return doc


def fraction_str(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def sum_over_k(p: PartialFractionExpansion, n: int = 0) -> ZetaLinearForm:
    """Sum the expansion over t = 1, 2, 3, ... into a zeta linear form.

    Uses sum_{k>=1} (k+m)^(-s) = zeta(s) - H_m(s), so every order must be
    >= 2 (absolute convergence) and every m >= 0.
    """
    ell: dict[int, Fraction] = {}
    ell0 = Fraction(0)
    for (m, s), a in sorted(p.terms.items()):
        if s <= 1:
            raise DomainError(f"divergent order {s} at pole -{m}")
        if m < 0:
            raise DomainError(f"pole at positive integer t={-m} hits the sum range")
        ell[s] = ell.get(s, Fraction(0)) + a
        ell0 -= a * harmonic_power_sum(m, s)
    return ZetaLinearForm(n, ell0, ell)


ZUDILIN_ZETA_ARGUMENTS = (5, 7, 9, 11)
DEFAULT_MAX_N = 2


def check_form_budget(n: int, max_n: int = DEFAULT_MAX_N) -> None:
    if n < 1:
        raise DomainError(f"index must be >= 1, got {n}")
    if n > max_n:
        raise BudgetError(
            f"n={n} exceeds the configured cap {max_n}; pole count and "
            "precision grow ~34n and ~260n digits"
        )


def check_zudilin_vanishing(form: ZetaLinearForm) -> None:
    """Raise unless every zeta coefficient outside {5,7,9,11} is exactly 0
    (the strongest structural self-check of the whole pipeline)."""
    for s, coeff in form.coefficients.items():
        if s not in ZUDILIN_ZETA_ARGUMENTS and coeff != 0:
            raise InternalCheckError(
                f"zeta({s}) coefficient failed to vanish for n={form.n}"
            )


def zudilin_linear_form(n: int, max_n: int = DEFAULT_MAX_N) -> ZetaLinearForm:
    """The exact n-th linear form in 1, zeta(5), zeta(7), zeta(9), zeta(11).

    Composes build -> partial fractions -> second derivative -> sum, then
    asserts the vanishing pattern.
    """
    check_form_budget(n, max_n)
    form = sum_over_k(second_derivative(partial_fractions(build_zudilin(n))), n)
    check_zudilin_vanishing(form)
    return form


def required_digits(n: int) -> int:
    """Working precision needed to evaluate the n-th form numerically.

    Budget rule: 154.5n digits for coefficient size (513n bits) plus 99n
    for the e^(-C0 n) cancellation plus 60 headroom.
    """
    if n < 1:
        return 10
    return math.ceil(253.5 * n + 60)


def evaluate_numeric(form: ZetaLinearForm, table: ZetaTable) -> FixedReal:
    """ell0 + sum ell_s zeta(s) with rigorous error accounting.

    The result is rescaled to the number of digits actually guaranteed:
    table digits minus the cancellation budget log10(sum |ell_s|) minus one
    safety digit.
    """
    digits = table.digits
    if digits < required_digits(form.n):
        raise BudgetError(
            f"table precision {digits} below required {required_digits(form.n)}"
            f" for n={form.n}"
        )
    scale = 10**digits
    acc = _div_nearest(form.ell0.numerator * scale, form.ell0.denominator)
    weight = abs(form.ell0)
    for s, ell in sorted(form.coefficients.items()):
        if ell == 0:
            continue
        if s not in table:
            raise DomainError(f"table lacks zeta({s})")
        acc += _div_nearest(ell.numerator * table[s].scaled, ell.denominator)
        weight += abs(ell)
    # each table entry is good to 1 ulp, each product adds <= 1 ulp rounding
    lost = max(0.0, log2_fraction(weight + len(form.coefficients) + 2) * math.log10(2))
    out_digits = digits - math.ceil(lost) - 1
    if out_digits < 1:
        raise BudgetError("precision budget exhausted by coefficient size")
    return FixedReal(acc, digits).rescale(out_digits)


def _per_pole_polynomials(p: PartialFractionExpansion):
    """Group terms per pole: m -> (den, int_coeffs, J) with
    sum_j a_{j,m} x^(J-j) = poly(x) / den."""
    grouped: dict[int, dict[int, Fraction]] = {}
    for (m, j), a in p.terms.items():
        grouped.setdefault(m, {})[j] = a
    out = []
    for m in sorted(grouped):
        orders = grouped[m]
        big_j = max(orders)
        den = lcm_of(a.denominator for a in orders.values())
        coeffs = [0] * (big_j + 1)  # coeffs[d] multiplies x^d
        for j, a in orders.items():
            coeffs[big_j - j] = a.numerator * (den // a.denominator)
        out.append((m, den, coeffs, big_j))
    return out


def _poly_int(coeffs: list[int], x: int) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def direct_sum(
    n: int,
    digits: int,
    k_cut: int | None = None,
    expansion: PartialFractionExpansion | None = None,
) -> FixedReal:
    """Brute-force numeric value of the n-th sum: term-by-term exact
    evaluation of the twice-differentiated expansion at t = 1, 2, ...

    Completely independent of the zeta reduction in sum_over_k; this is
    the oracle side of the oracle/evaluation pair.  The cutoff comes from
    the crude tail bound |term(k)| <= C k^-(78n+11) with C measured from
    the computed terms times a 10^4 safety factor; pass k_cut to force a
    specific cutoff (used by the two-cutoff agreement check).
    """
    if expansion is None:
        expansion = second_derivative(partial_fractions(build_zudilin(n)))
    work = digits + GUARD_DIGITS + 5
    scale = 10**work
    poles = _per_pole_polynomials(expansion)
    decay = 78 * n + 11
    k_min = 140 * n  # past the hump where the polynomial decay sets in
    acc = 0
    c_run = 0  # max |term| * k^decay, in 10**-work units
    k = 0
    limit = k_cut if k_cut is not None else 10**7
    while k < limit:
        k += 1
        term = 0
        for m, den, coeffs, big_j in poles:
            base = k + m
            term += _div_nearest(_poly_int(coeffs, base) * scale, den * base**big_j)
        acc += term
        if k_cut is None:
            c_run = max(c_run, abs(term) * k**decay)
            if k >= k_min and 2 * c_run * 10**4 < (decay - 1) * k ** (
                decay - 1
            ) * 10 ** (work - digits):
                break
    else:
        if k_cut is None:
            raise BudgetError(f"direct sum cutoff budget exceeded at k={limit}")
    return FixedReal(_div_nearest(acc, 10 ** (work - digits)), digits)


def sum_expansion_numeric(p: PartialFractionExpansion, digits: int) -> FixedReal:
    """Numeric sum over t = 1, 2, ... of a generic expansion (orders >= 2).

    Exact summation to a cutoff plus an Euler-Maclaurin tail per term;
    handles slowly decaying expansions that the brute-force route cannot.
    """
    if p.min_order < 2 and p.terms:
        raise DomainError("expansion has a divergent order < 2")
    work = digits + GUARD_DIGITS + 5
    scale = 10**work
    poles = _per_pole_polynomials(p)
    cutoff = max(64, digits)
    while True:
        try:
            tail = 0
            for (m, j), a in sorted(p.terms.items()):
                t = power_tail_scaled(cutoff + m + 1, j, work)
                tail += _div_nearest(a.numerator * t, a.denominator)
            break
        except BudgetError:
            cutoff *= 2
            if cutoff > 10**6:
                raise
    acc = tail
    for k in range(1, cutoff + 1):
        for m, den, coeffs, big_j in poles:
            base = k + m
            acc += _div_nearest(_poly_int(coeffs, base) * scale, den * base**big_j)
    return FixedReal(_div_nearest(acc, 10 ** (work - digits)), digits)


def common_denominator(form: ZetaLinearForm) -> tuple[int, dict]:
    """LCM of all coefficient denominators, with a growth report.

    log(D_n)/n is informational: the asymptotic denominator growth rate is
    only an n -> infinity statement.
    """
    dens = [form.ell0.denominator] + [c.denominator for c in form.coefficients.values()]
    d = lcm_of(dens)
    log_d = log2_fraction(Fraction(d)) * math.log(2) if d > 1 else 0.0
    report = {
        "log_denominator": round(log_d, 6),
        "log_denominator_over_n": round(log_d / form.n, 6) if form.n >= 1 else None,
    }
    return d, report


def reconstruction_check(
    f: FactoredRationalFunction,
    p: PartialFractionExpansion,
    points: int | None = None,
    seed: int = 20260810,
) -> dict:
    """Exact equality of the expansion and the factored original at random
    non-integer rational sample points (so no pole can be hit)."""
    count = points if points is not None else p.max_order + 2
    rng = random.Random(seed)
    checked = []
    ok = True
    for _ in range(count):
        t = _non_integer_sample(rng)
        ok = ok and f.evaluate(t) == p.evaluate(t)
        checked.append(fraction_str(t))
    return {"ok": ok, "points": checked}


def _non_integer_sample(rng: random.Random) -> Fraction:
    """integer + 1/q is never an integer, so never a pole."""
    return rng.randint(-400, 400) + Fraction(1, rng.choice([2, 3, 5, 7, 11]))


def reflection_check(
    f: FactoredRationalFunction, total: int, points: int = 5, seed: int = 97
) -> dict:
    """Does t -> -total - t map the function to +f or -f?  Reported, not
    asserted: exact evaluation at random rational points."""
    rng = random.Random(seed)
    sign = None
    for _ in range(points):
        t = _non_integer_sample(rng)
        lhs = f.evaluate(Fraction(-total) - t)
        rhs = f.evaluate(t)
        if rhs == 0:
            continue
        ratio = lhs / rhs
        if ratio == 1:
            here = 1
        elif ratio == -1:
            here = -1
        else:
            return {"symmetric": False, "sign": None}
        if sign is None:
            sign = here
        elif sign != here:
            return {"symmetric": False, "sign": None}
    return {"symmetric": sign is not None, "sign": sign}
