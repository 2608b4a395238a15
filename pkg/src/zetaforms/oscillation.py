"""Oscillating subsequences via equidistribution on the torus.

Given angle pairs (omega_i, phi_i), the goal is an increasing psi with
psi(n)/n -> lambda and |cos(psi(n) omega_i + phi_i)| >= epsilon > 0 for
every n and i.  Three constructions cover the cases:

  - rational mode: omega/pi = c/d, take psi(n) = n d + a for a residue a
    that keeps |cos| constant and nonzero (d omega is a multiple of pi);
  - irrational single mode: one pair, omega/pi irrational; take the n with
    frac(n omega/pi) in the arc of width 1/2 centred at -phi/pi, which
    forces |cos| >= sqrt(2)/2, and the arc has density 1/2 (lambda = 2);
  - general mode: several pairs; rational parts fix a residue class mod d,
    irrational parts are driven through a torus box chosen so every
    cosine argument keeps a positive distance to pi/2 mod pi.

Angles are carried exactly as (rational multiple of pi) + (rational
addend); named constants are pinned to one canonical 120-digit rational
approximation at parse time, which makes every decision in this module a
deterministic exact-rational comparison.

"Irrational" always means irrational-at-precision: no convergent of
omega/pi with denominator <= d_max approximates it to tol.  The plan
records which branch was taken.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import (
    BudgetError,
    DomainError,
    HypothesisViolation,
    UndecidableAtPrecision,
)
from .exact import lcm_of
from .fixedpoint import (
    FixedReal,
    cos_pi_argument,
    decimal_to_fraction,
    e_fixed,
    inv_pi_fraction,
    sin_pi_multiple,
    sqrt_fixed,
)

CANONICAL_DIGITS = 120
DEFAULT_DIGITS = 60
BOUNDARY_GUARD = Fraction(1, 10**25)  # shrink-to-reject margin at box edges

_CONSTANTS: dict[str, Fraction] = {}


def named_constant(name: str) -> Fraction:
    """Canonical 120-digit rational pin of sqrt2 / e / pi."""
    if not _CONSTANTS:
        from .fixedpoint import pi_fixed

        _CONSTANTS["sqrt2"] = sqrt_fixed(Fraction(2), CANONICAL_DIGITS).to_fraction()
        _CONSTANTS["e"] = e_fixed(CANONICAL_DIGITS).to_fraction()
        _CONSTANTS["pi"] = pi_fixed(CANONICAL_DIGITS).to_fraction()
    if name not in _CONSTANTS:
        raise DomainError(f"unknown constant {name!r}")
    return _CONSTANTS[name]


@dataclass(frozen=True)
class Angle:
    """pi_mult * pi + addend, both exact rationals."""

    pi_mult: Fraction = Fraction(0)
    addend: Fraction = Fraction(0)

    @classmethod
    def of(cls, value) -> "Angle":
        """Coerce a number/str to a pure-addend angle ('1.5', 3, 1/2...)."""
        if isinstance(value, Angle):
            return value
        if isinstance(value, str):
            return parse_angle(value)
        return cls(Fraction(0), Fraction(value))

    @classmethod
    def pi_multiple(cls, mult) -> "Angle":
        return cls(Fraction(mult), Fraction(0))

    def scaled(self, k: int) -> "Angle":
        return Angle(self.pi_mult * k, self.addend * k)

    def __add__(self, other: "Angle") -> "Angle":
        return Angle(self.pi_mult + other.pi_mult, self.addend + other.addend)

    def over_pi(self, digits: int = CANONICAL_DIGITS) -> Fraction:
        """This angle divided by pi; exact when the addend vanishes."""
        if self.addend == 0:
            return self.pi_mult
        return self.pi_mult + self.addend * inv_pi_fraction(digits)

    def value(self) -> Fraction:
        """Numeric value at the canonical 120-digit pi pin."""
        return self.pi_mult * named_constant("pi") + self.addend

    def describe(self) -> str:
        parts = []
        if self.pi_mult:
            parts.append(f"{self.pi_mult}*pi")
        if self.addend or not parts:
            parts.append(str(self.addend))
        return " + ".join(parts)


def parse_angle(text: str) -> Angle:
    """Restricted grammar: sum of terms `rational [* name]` with names
    pi, sqrt2, e; rationals are p/q or decimal literals."""
    cleaned = text.strip().replace(" ", "")
    if not cleaned:
        raise DomainError("empty angle expression")
    # split into signed terms: insert '+' before any '-' that follows a value
    marked = []
    for i, ch in enumerate(cleaned):
        if ch == "-" and i > 0 and (cleaned[i - 1].isdigit() or cleaned[i - 1].isalpha()):
            marked.append("+-")
        else:
            marked.append(ch)
    total = Angle()
    for term in "".join(marked).split("+"):
        if not term:
            raise DomainError(f"malformed angle expression {text!r}")
        total = total + _parse_term(term, text)
    return total


def _parse_term(term: str, original: str) -> Angle:
    sign = 1
    while term.startswith("-"):
        sign = -sign
        term = term[1:]
    try:
        if "*" in term:
            rat_text, name = term.split("*", 1)
            rat = sign * decimal_to_fraction(rat_text)
        else:
            rat, name = Fraction(sign), term
        if name == "pi":
            return Angle.pi_multiple(rat)
        if name in ("sqrt2", "e"):
            return Angle(Fraction(0), rat * named_constant(name))
        return Angle(Fraction(0), rat * decimal_to_fraction(name))
    except (ValueError, ZeroDivisionError):
        raise DomainError(f"cannot parse angle term {term!r} in {original!r}") from None


@dataclass(frozen=True)
class AnglePair:
    omega: Angle
    phi: Angle


class CosEvaluator:
    """|cos(k omega + phi)| with the pi-multiple reduced exactly mod 1.

    When omega is an exact rational multiple of pi the reduced argument
    takes finitely many values, so results are memoised; the periodic
    structure is then exact, not approximate.
    """

    def __init__(self, pair: AnglePair, digits: int = DEFAULT_DIGITS):
        self.pair = pair
        self.digits = digits
        self._cache: Optional[dict] = {} if pair.omega.addend == 0 else None

    def abs_cos(self, k: int) -> FixedReal:
        om, ph = self.pair.omega, self.pair.phi
        pi_part = (k * om.pi_mult + ph.pi_mult) % 1  # |cos| is pi-periodic
        addend = k * om.addend + ph.addend
        if self._cache is None:
            return abs(cos_pi_argument(pi_part, addend, self.digits))
        got = self._cache.get(pi_part)
        if got is None:
            got = abs(cos_pi_argument(pi_part, addend, self.digits))
            self._cache[pi_part] = got
        return got


# -- rationality of omega/pi ------------------------------------------


@dataclass(frozen=True)
class PiRationalWitness:
    """omega/pi ~= c/d to within `residual` (reduced fraction)."""

    c: int
    d: int
    residual: Fraction


def continued_fraction_convergents(x: Fraction, q_limit: int):
    """Convergents p/q of x in CF order, while q <= q_limit."""
    p_back, p_last = 0, 1  # h_{-2}, h_{-1}
    q_back, q_last = 1, 0
    rest = Fraction(x)
    while True:
        a = math.floor(rest)
        p_back, p_last = p_last, a * p_last + p_back
        q_back, q_last = q_last, a * q_last + q_back
        if q_last > q_limit:
            return
        yield p_last, q_last
        frac_part = rest - a
        if frac_part == 0:
            return
        rest = 1 / frac_part


def detect_pi_rational(
    omega: Angle,
    d_max: int = 10**6,
    tol: Fraction = Fraction(1, 10**30),
    digits: int = DEFAULT_DIGITS,
) -> Optional[PiRationalWitness]:
    """First continued-fraction convergent of omega/pi with denominator
    <= d_max and residual < tol, or None (irrational at this precision)."""
    if d_max < 1 or tol <= 0:
        raise DomainError("detect_pi_rational needs d_max >= 1 and tol > 0")
    x = omega.over_pi(max(digits, DEFAULT_DIGITS))
    if omega.addend == 0 and x.denominator <= d_max:
        return PiRationalWitness(x.numerator, x.denominator, Fraction(0))
    for p, q in continued_fraction_convergents(x, d_max):
        residual = abs(x - Fraction(p, q))
        if residual < tol:
            return PiRationalWitness(p, q, residual)
    return None


# -- hypothesis checking ------------------------------------------------

CONGRUENCE_TOL = Fraction(1, 10**40)
UNDECIDABLE_BAND = 10**3


def _distance_to_integers(x: Fraction) -> Fraction:
    f = x % 1
    return min(f, 1 - f)


def _congruent(dist: Fraction, tol: Fraction, what: str) -> bool:
    if tol / UNDECIDABLE_BAND < dist < tol * UNDECIDABLE_BAND:
        raise UndecidableAtPrecision(
            f"{what}: distance {float(dist):.3e} sits on the decision "
            f"boundary (tolerance {float(tol):.0e})"
        )
    return dist < tol


def hypothesis_single(pair: AnglePair, digits: int = DEFAULT_DIGITS) -> bool:
    """True unless omega = 0 mod pi AND phi = pi/2 mod pi (both decided to
    tolerance 10^-40)."""
    om = _congruent(
        _distance_to_integers(pair.omega.over_pi(digits)),
        CONGRUENCE_TOL,
        "omega mod pi",
    )
    ph = _congruent(
        _distance_to_integers(pair.phi.over_pi(digits) - Fraction(1, 2)),
        CONGRUENCE_TOL,
        "phi mod pi",
    )
    return not (om and ph)


def _excluded_residues(
    pair: AnglePair, witness: PiRationalWitness, digits: int
) -> set[int]:
    """Residues a mod d with a*omega + phi = pi/2 mod pi, for omega/pi = c/d.

    The condition is a*c/d + phi/pi - 1/2 in Z, i.e. a*c = e (mod d) where
    e = d*(1/2 - phi/pi) -- solvable only when e is an integer.
    """
    c, d = witness.c, witness.d
    e_real = d * (Fraction(1, 2) - pair.phi.over_pi(digits))
    e0 = round(e_real)
    if not _congruent(abs(e_real - e0), Fraction(1, 10**25), "phase congruence"):
        return set()
    if c % d == 0:
        # omega = 0 mod pi forces d = 1; the congruence is all-or-nothing
        return {0} if e0 % d == 0 else set()
    return {(e0 * pow(c, -1, d)) % d}


def hypothesis_multi(
    pairs: Sequence[AnglePair], digits: int = DEFAULT_DIGITS
) -> bool:
    """Do infinitely many n satisfy n omega_i + phi_i != pi/2 mod pi for
    every i at once?

    Pi-irrational omegas exclude at most one n each, so only the rational
    ones matter: they exclude full residue classes, and the answer is
    whether some class mod lcm(d_i) escapes them all.
    """
    exclusions: list[tuple[int, set[int]]] = []
    for pair in pairs:
        w = detect_pi_rational(pair.omega, digits=digits)
        if w is not None:
            excl = _excluded_residues(pair, w, digits)
            if excl:
                exclusions.append((w.d, excl))
    if not exclusions:
        return True
    if sum(Fraction(len(e), d) for d, e in exclusions) < 1:
        return True  # the excluded classes cannot cover all residues
    big = lcm_of(d for d, _ in exclusions)
    return any(
        all(r % d not in excl for d, excl in exclusions) for r in range(big)
    )


# -- plans ---------------------------------------------------------------


@dataclass(frozen=True)
class TorusBox:
    """Product of arcs [center_i - eta, center_i + eta] on (R/Z)^s."""

    center: tuple[Fraction, ...]
    eta: Fraction

    def __post_init__(self):
        if not (0 < self.eta < Fraction(1, 2)):
            raise DomainError("box half-width must lie in (0, 1/2)")

    @property
    def dimension(self) -> int:
        return len(self.center)

    def contains(self, point: Sequence[Fraction]) -> bool:
        """Membership with the shrink-to-reject boundary guard."""
        limit = self.eta - BOUNDARY_GUARD
        for x, c in zip(point, self.center):
            delta = (x - c) % 1
            if min(delta, 1 - delta) > limit:
                return False
        return True


@dataclass(frozen=True)
class SubsequencePlan:
    """Everything needed to enumerate psi(n) = big_d * psi0(n) * d + a."""

    mode: str  # "rational" | "irrational_single" | "general"
    d: int = 1
    a: int = 0
    big_d: int = 1  # the integer clearing the relation coefficients
    box: Optional[TorusBox] = None
    theta: tuple[Fraction, ...] = ()
    epsilon: Fraction = Fraction(0)
    lambda_predicted: Fraction = Fraction(1)

    def to_json_dict(self) -> dict:
        from .forms import fraction_str

        return {
            "mode": self.mode,
            "d": self.d,
            "a": self.a,
            "relation_denominator": self.big_d,
            "box": None
            if self.box is None
            else {
                "center": [fraction_str(c) for c in self.box.center],
                "eta": fraction_str(self.box.eta),
            },
            "theta": [f"{float(t):.18f}" for t in self.theta],
            "epsilon": f"{float(self.epsilon):.15f}",
            "lambda_predicted": fraction_str(self.lambda_predicted),
        }


_SQRT2_HALF: dict[int, Fraction] = {}


def sqrt2_half_lower(digits: int = 50) -> Fraction:
    """sqrt(2)/2 truncated downward (a safe lower bound for the floor)."""
    if digits not in _SQRT2_HALF:
        v = sqrt_fixed(Fraction(1, 2), digits).to_fraction()
        _SQRT2_HALF[digits] = v - Fraction(2, 10**digits)
    return _SQRT2_HALF[digits]


def build_plan_single(
    pair: AnglePair, digits: int = DEFAULT_DIGITS
) -> SubsequencePlan:
    """The one-pair construction.

    Rational omega/pi = c/d: psi(n) = n d + a where a in {1..d} maximises
    |cos(a omega + phi)| (smallest such a); the cosine magnitude is then
    independent of n because d*omega is a multiple of pi, so epsilon is
    that value and lambda = d.

    Irrational omega/pi: collect n with frac(n omega/pi) inside the arc of
    half-width 1/4 centred at -phi/pi; then psi(n) omega/pi + phi/pi is
    within 1/4 of an integer, |cos| >= sqrt(2)/2, and the arc measure 1/2
    gives lambda = 2.
    """
    if not hypothesis_single(pair, digits):
        raise HypothesisViolation(
            "omega = 0 and phi = pi/2 (mod pi): every cosine vanishes"
        )
    witness = detect_pi_rational(pair.omega, digits=digits)
    if witness is not None:
        ev = CosEvaluator(pair, digits)
        best_a, best = None, None
        for a in range(1, witness.d + 1):
            val = ev.abs_cos(a)
            if best is None or val.scaled > best.scaled:
                best_a, best = a, val
        eps = best.to_fraction()
        if eps < Fraction(1, 10**30):
            raise HypothesisViolation(
                "all residues give vanishing cosine; hypothesis fails"
            )
        return SubsequencePlan(
            mode="rational",
            d=witness.d,
            a=best_a,
            epsilon=eps,
            lambda_predicted=Fraction(witness.d),
        )
    center = (-pair.phi.over_pi(CANONICAL_DIGITS)) % 1
    return SubsequencePlan(
        mode="irrational_single",
        box=TorusBox((center,), Fraction(1, 4)),
        theta=(pair.omega.over_pi(CANONICAL_DIGITS),),
        epsilon=sqrt2_half_lower(),
        lambda_predicted=Fraction(2),
    )


@dataclass(frozen=True)
class RelationData:
    """Caller-supplied rational dependencies omega_i/pi = r_{i,0} +
    sum_j r_{i,j} theta_j over a generator list theta_1..theta_s.

    The package does not hunt for integer relations itself; it only
    verifies the supplied ones numerically (residual below 10^-20).
    """

    generators: tuple[Fraction, ...]
    rows: tuple[tuple[Fraction, ...], ...]  # each row: (r_0, r_1, ..., r_s)


ETA_GRID = (Fraction(1, 4), Fraction(1, 8), Fraction(1, 16), Fraction(1, 32))


def _box_search(
    int_rows: list[list[int]], phases: list[Fraction]
) -> tuple[TorusBox, Fraction]:
    """Find a box avoiding every singular hyperplane with margin eta/2.

    Constraint for row i with integer coefficients v_ij and phase p_i:
    distance of sum_j v_ij z_j + p_i - 1/2 to the integers must exceed
    eta * sum_j |v_ij| + eta/2, so every point of the box keeps distance
    > eta/2 and the cosine floor is sin(pi eta / 2).
    """
    s = len(int_rows[0])
    weights = [sum(abs(v) for v in row) for row in int_rows]
    for eta in ETA_GRID:
        grid = 2 * math.ceil(1 / eta)
        margin = eta / 2

        def admissible(center):
            for row, w, phase in zip(int_rows, weights, phases):
                val = sum(v * z for v, z in zip(row, center)) + phase - Fraction(1, 2)
                if _distance_to_integers(val) <= eta * w + margin:
                    return False
            return True

        for index in range(grid**s):
            center = []
            rest = index
            for _ in range(s):
                center.append(Fraction(rest % grid, grid))
                rest //= grid
            if admissible(center):
                return TorusBox(tuple(center), eta), margin
    raise BudgetError(
        "no admissible torus box found down to eta = 1/32; the relation "
        "coefficients are too steep for the default grid"
    )


def build_plan_general(
    pairs: Sequence[AnglePair],
    relations: Optional[RelationData] = None,
    digits: int = DEFAULT_DIGITS,
) -> SubsequencePlan:
    """The full construction for several angle pairs.

    Splits pairs into pi-rational and pi-irrational parts; the rational
    part fixes the residue class a mod d exactly as in the single case,
    and the irrational part (transformed to d*omega_i, a*omega_i + phi_i)
    is handled through a torus box on the generators theta_j.  Without
    caller-supplied relations the generators default to the transformed
    omega_i/pi themselves with the identity relation matrix.
    """
    pairs = list(pairs)
    if not pairs:
        raise DomainError("need at least one angle pair")
    if len(pairs) == 1 and relations is None:
        return build_plan_single(pairs[0], digits)
    if not hypothesis_multi(pairs, digits):
        raise HypothesisViolation(
            "no residue class avoids all pi/2 congruences"
        )

    rational: list[tuple[int, AnglePair, PiRationalWitness]] = []
    irrational: list[tuple[int, AnglePair]] = []
    for i, pair in enumerate(pairs):
        w = detect_pi_rational(pair.omega, digits=digits)
        if w is not None:
            rational.append((i, pair, w))
        else:
            irrational.append((i, pair))

    # residue class for the rational part
    if rational:
        d = lcm_of(w.d for _, _, w in rational)
        evaluators = [(CosEvaluator(p, digits), p, w) for _, p, w in rational]
        best_a, best_floor = None, None
        for a in range(1, d + 1):
            excluded = False
            floor = None
            for ev, p, w in evaluators:
                if a % w.d in _excluded_residues(p, w, digits):
                    excluded = True
                    break
                val = ev.abs_cos(a).to_fraction()
                floor = val if floor is None else min(floor, val)
            if excluded:
                continue
            if best_floor is None or floor > best_floor:
                best_a, best_floor = a, floor
        if best_a is None or best_floor < Fraction(1, 10**30):
            raise HypothesisViolation("all residue classes are excluded")
        a = best_a
        rational_floor = best_floor
    else:
        d, a = 1, 0
        rational_floor = None

    if not irrational:
        return SubsequencePlan(
            mode="rational",
            d=d,
            a=a,
            epsilon=rational_floor,
            lambda_predicted=Fraction(d),
        )

    # transformed irrational system: omega' = d omega, phi' = a omega + phi
    transformed = [
        AnglePair(p.omega.scaled(d), p.omega.scaled(a) + p.phi)
        for _, p in irrational
    ]
    if relations is None:
        theta = tuple(tp.omega.over_pi(CANONICAL_DIGITS) for tp in transformed)
        rows = [
            [Fraction(0)] + [Fraction(int(i == j)) for j in range(len(transformed))]
            for i in range(len(transformed))
        ]
    else:
        if len(relations.rows) != len(irrational):
            raise DomainError(
                f"relation data has {len(relations.rows)} rows but there are "
                f"{len(irrational)} pi-irrational pairs"
            )
        theta = tuple(Fraction(t) for t in relations.generators)
        rows = []
        for row, (_, original) in zip(relations.rows, irrational):
            if len(row) != len(theta) + 1:
                raise DomainError("relation row length must be s + 1")
            target = original.omega.over_pi(CANONICAL_DIGITS)
            value = row[0] + sum(r * t for r, t in zip(row[1:], theta))
            if abs(target - value) > Fraction(1, 10**20):
                raise DomainError(
                    "inconsistent relation data: residual "
                    f"{float(abs(target - value)):.3e} for omega/pi"
                )
            rows.append([d * r for r in row])  # omega' = d omega

    big_d = lcm_of(
        r.denominator for row in rows for r in row
    )
    int_rows = [[int(big_d * r) for r in row[1:]] for row in rows]
    phases = [tp.phi.over_pi(CANONICAL_DIGITS) for tp in transformed]
    box, margin = _box_search(int_rows, phases)
    eps_irr = sin_pi_multiple(margin, digits).to_fraction() - Fraction(1, 10**40)
    epsilon = eps_irr if rational_floor is None else min(eps_irr, rational_floor)
    s = box.dimension
    lam = Fraction(d * big_d) / (2 * box.eta) ** s
    return SubsequencePlan(
        mode="general",
        d=d,
        a=a,
        big_d=big_d,
        box=box,
        theta=theta,
        epsilon=epsilon,
        lambda_predicted=lam,
    )


# -- enumeration and verification ----------------------------------------


def enumerate_psi(plan: SubsequencePlan, count: int) -> list[int]:
    """First `count` values of psi, strictly increasing.

    Irrational modes walk the orbit n theta_j mod 1 in exact rational
    arithmetic (incremental numerator addition mod the denominator), so the
    output is identical at every working precision.
    """
    if count < 1:
        raise DomainError("count must be >= 1")
    if plan.mode == "rational":
        return [n * plan.d + plan.a for n in range(1, count + 1)]
    if plan.box is None or not plan.theta:
        raise DomainError("irrational-mode plan lacks its box or generators")
    nums = [t.numerator % t.denominator for t in plan.theta]
    dens = [t.denominator for t in plan.theta]
    states = [0] * len(nums)
    out: list[int] = []
    n = 0
    cap = 10 * int(plan.lambda_predicted + 1) * count + 10**6
    while len(out) < count:
        n += 1
        if n > cap:
            raise BudgetError(f"orbit scan exceeded {cap} steps")
        for j in range(len(states)):
            states[j] = (states[j] + nums[j]) % dens[j]
        point = [Fraction(st, de) for st, de in zip(states, dens)]
        if plan.box.contains(point):
            out.append(plan.big_d * n * plan.d + plan.a)
    return out


@dataclass(frozen=True)
class PlanVerification:
    count: int
    min_abs_cos: Fraction
    epsilon: Fraction
    ratio: Fraction
    lambda_predicted: Fraction
    cosine_ok: bool
    lambda_ok: bool

    @property
    def passed(self) -> bool:
        return self.cosine_ok and self.lambda_ok

    def to_json_dict(self) -> dict:
        from .forms import fraction_str

        return {
            "count": self.count,
            "min_abs_cos": f"{float(self.min_abs_cos):.15f}",
            "epsilon": f"{float(self.epsilon):.15f}",
            "ratio": f"{float(self.ratio):.6f}",
            "lambda_predicted": fraction_str(self.lambda_predicted),
            "cosine_ok": self.cosine_ok,
            "lambda_ok": self.lambda_ok,
            "passed": self.passed,
        }


def verify_plan(
    plan: SubsequencePlan,
    pairs: Sequence[AnglePair],
    count: int,
    digits: int = DEFAULT_DIGITS,
) -> PlanVerification:
    """Exhaustively check the plan's two promises over psi(1..count):
    the cosine floor for every pair, and psi(count)/count within 5% of
    the predicted lambda."""
    psi = enumerate_psi(plan, count)
    evaluators = [CosEvaluator(p, digits) for p in pairs]
    min_cos: Optional[FixedReal] = None
    for k in psi:
        for ev in evaluators:
            v = ev.abs_cos(k)
            if min_cos is None or v.scaled < min_cos.scaled:
                min_cos = v
    ratio = Fraction(psi[-1], count)
    min_frac = min_cos.to_fraction()
    lam = plan.lambda_predicted
    return PlanVerification(
        count=count,
        min_abs_cos=min_frac,
        epsilon=plan.epsilon,
        ratio=ratio,
        lambda_predicted=lam,
        cosine_ok=min_frac >= plan.epsilon - Fraction(1, 10**30),
        lambda_ok=abs(ratio - lam) <= lam * Fraction(5, 100),
    )


# -- equidistribution counting -------------------------------------------


@dataclass(frozen=True)
class DensityReport:
    k_max: int
    hits: int
    empirical: float
    predicted: float
    rational_theta: bool  # orbit provably finite within the sample horizon

    def to_json_dict(self) -> dict:
        return {
            "k_max": self.k_max,
            "hits": self.hits,
            "empirical": f"{self.empirical:.8f}",
            "predicted": f"{self.predicted:.8f}",
            "rational_theta": self.rational_theta,
        }


def kw_density(
    theta: Sequence[Fraction],
    box: Sequence[tuple[Fraction, Fraction]],
    k_max: int,
    digits: int = 40,
) -> DensityReport:
    """Count n <= k_max with every frac(n theta_i) inside [x_i, y_i].

    The orbit advances by incremental addition of the scaled theta (no
    n*theta multiplication), so there is no rounding drift: the only error
    is the one-time truncation of theta to `digits` digits, which shifts
    each position by at most k_max * 10^-digits.
    """
    if k_max < 1:
        raise DomainError("k_max must be >= 1")
    theta = [Fraction(t) for t in theta]
    if len(theta) != len(box):
        raise DomainError("need one (lo, hi) interval per theta component")
    modulus = 10**digits
    steps, los, widths = [], [], []
    predicted = 1.0
    for t, (lo, hi) in zip(theta, box):
        lo, hi = Fraction(lo), Fraction(hi)
        if hi < lo:
            raise DomainError(f"malformed interval [{lo}, {hi}]")
        width = hi - lo
        predicted *= float(min(width, 1))
        steps.append((t % 1).numerator * modulus // (t % 1).denominator if t % 1 else 0)
        los.append((lo % 1).numerator * modulus // (lo % 1).denominator)
        widths.append(None if width >= 1 else width.numerator * modulus // width.denominator)
    positions = [0] * len(steps)
    hits = 0
    for _ in range(k_max):
        hit = True
        for j in range(len(steps)):
            positions[j] = (positions[j] + steps[j]) % modulus
            w = widths[j]
            if w is not None and (positions[j] - los[j]) % modulus > w:
                hit = False
        if hit:
            hits += 1
    rational = any(t.denominator <= k_max for t in theta)
    return DensityReport(
        k_max=k_max,
        hits=hits,
        empirical=hits / k_max,
        predicted=predicted,
        rational_theta=rational,
    )
