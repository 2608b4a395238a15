"""Command-line front-end: reproducible experiments, machine-readable output.

Four subcommands:

  form       exact linear form in 1, zeta(5), zeta(7), zeta(9), zeta(11)
             for index n, plus the numeric oracle pair and denominator report
  subseq     hypothesis check, subsequence plan, first psi values, and the
             plan verification report for one or more angle pairs
  density    equidistribution counting of frac(n theta) in a torus box
  criterion  dimension bound and approximation-exponent threshold from
             growth data (--zudilin for the pinned odd-zeta constants)

Exit codes: 0 success, 2 usage, 3 domain/hypothesis, 4 budget, 5 internal
assertion.  All output is UTF-8, line-feed terminated; JSON field order is
fixed and every number that may exceed double precision is a decimal
string, so identical inputs produce byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass, field
from typing import Optional

from . import __version__
from .criterion import (
    CriterionReport,
    GrowthData,
    dimension_bound,
    exponent_threshold,
    oscillating_report,
    zudilin_constants,
)
from .errors import (
    BudgetError,
    DomainError,
    InternalCheckError,
    ZetaformsError,
)
from .exact import log10_fraction
from .fixedpoint import decimal_to_fraction
from .forms import (
    build_zudilin,
    check_form_budget,
    check_zudilin_vanishing,
    common_denominator,
    direct_sum,
    evaluate_numeric,
    partial_fractions,
    reconstruction_check,
    reflection_check,
    required_digits,
    second_derivative,
    sum_over_k,
    DEFAULT_MAX_N,
    ZUDILIN_ZETA_ARGUMENTS,
)
from .oscillation import (
    AnglePair,
    RelationData,
    build_plan_general,
    enumerate_psi,
    hypothesis_multi,
    kw_density,
    parse_angle,
    verify_plan,
)
from .zeta import ZetaTable

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DOMAIN = 3
EXIT_BUDGET = 4
EXIT_INTERNAL = 5


@dataclass(frozen=True)
class RunConfig:
    """Parsed invocation; one instance drives one deterministic run."""

    command: str
    n: int = 1
    digits: int = 60
    k_max: int = 1
    count: int = 10
    angles: tuple[AnglePair, ...] = ()
    relations: Optional[RelationData] = None
    output: Optional[str] = None
    format: str = "json"
    extra: dict = field(default_factory=dict)


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _digits_arg(text: str) -> int:
    value = int(text)
    if value < 10:
        raise argparse.ArgumentTypeError(f"precision must be >= 10 digits, got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="zetaforms",
        description="exact odd-zeta linear forms, oscillating subsequences, "
        "and Diophantine bounds",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_form = sub.add_parser("form", help="compute the n-th linear form exactly")
    p_form.add_argument("--n", type=_positive_int, required=True)
    p_form.add_argument("--digits", type=_digits_arg, default=None,
                        help="zeta-table precision (default: the per-n budget rule)")
    p_form.add_argument("--max-n", type=_positive_int, default=DEFAULT_MAX_N)
    _common_output_flags(p_form)

    p_sub = sub.add_parser("subseq", help="build and verify a subsequence plan")
    p_sub.add_argument("--omega", action="append", required=True,
                       help="angle expression (repeatable; pairs with --phi)")
    p_sub.add_argument("--phi", action="append", required=True)
    p_sub.add_argument("--count", type=_positive_int, default=10)
    p_sub.add_argument("--relations", default=None,
                       help="JSON file with rational dependencies among omega_i/pi")
    _common_output_flags(p_sub)

    p_den = sub.add_parser("density", help="count torus-box hits of n*theta mod 1")
    p_den.add_argument("--theta", required=True,
                       help="comma-separated angle expressions (values, not /pi)")
    p_den.add_argument("--box", required=True,
                       help="comma-separated per-axis intervals lo:hi")
    p_den.add_argument("--kmax", type=_positive_int, required=True)
    _common_output_flags(p_den)

    p_cri = sub.add_parser("criterion", help="Diophantine bounds from growth data")
    p_cri.add_argument("--zudilin", action="store_true",
                       help="use the pinned odd-zeta constants")
    p_cri.add_argument("--alpha", type=float, default=None)
    p_cri.add_argument("--beta", type=float, default=None)
    p_cri.add_argument("--c0", type=float, default=None)
    p_cri.add_argument("--c1", type=float, default=None)
    p_cri.add_argument("--bits", type=int, default=None)
    p_cri.add_argument("--omega", action="append", default=None)
    p_cri.add_argument("--phi", action="append", default=None)
    _common_output_flags(p_cri)
    return parser


def _common_output_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=["json", "csv", "text"], default="json")
    p.add_argument("--output", default=None, help="write to file instead of stdout")


def _parse_pairs(omegas, phis, parser_error) -> tuple[AnglePair, ...]:
    if omegas is None or phis is None or len(omegas) != len(phis):
        parser_error("each --omega needs a matching --phi")
    try:
        return tuple(
            AnglePair(parse_angle(o), parse_angle(p)) for o, p in zip(omegas, phis)
        )
    except DomainError as exc:  # unparseable angles are usage errors
        parser_error(str(exc))


def _load_relations(path: Optional[str]) -> Optional[RelationData]:
    if path is None:
        return None
    with open(path, encoding="utf-8") as handle:
        doc = json.load(handle)
    generators = tuple(decimal_to_fraction(t) for t in doc["generators"])
    rows = tuple(
        tuple(decimal_to_fraction(r) for r in row) for row in doc["rows"]
    )
    return RelationData(generators, rows)


# -- commands -----------------------------------------------------------


def cmd_form(config: RunConfig) -> dict:
    n = config.n
    check_form_budget(n, config.extra.get("max_n", DEFAULT_MAX_N))
    digits = config.digits if config.digits else required_digits(n) + 90
    if digits < required_digits(n):
        raise BudgetError(
            f"--digits {digits} is below the required budget "
            f"{required_digits(n)} for n={n}"
        )
    factored = build_zudilin(n)
    expansion = partial_fractions(factored)
    differentiated = second_derivative(expansion)
    form = sum_over_k(differentiated, n)
    check_zudilin_vanishing(form)
    table = ZetaTable(form.nonzero_arguments(), digits)
    value = evaluate_numeric(form, table)
    ds_digits = min(digits, 200)
    direct = direct_sum(n, ds_digits, expansion=differentiated)
    delta = abs(value.to_fraction() - direct.to_fraction())
    height = form.log2_height()
    checks = {
        "vanishing_ok": True,  # check_zudilin_vanishing raised otherwise
        "zero_coefficients": [s for s in sorted(form.coefficients)
                              if s not in ZUDILIN_ZETA_ARGUMENTS],
        "reconstruction": reconstruction_check(factored, expansion, points=5),
        "reflection": reflection_check(factored, 37 * n),
        "log2_height_over_n": round(height / n, 6),
        "coefficient_bits_reference": 513,
    }
    denominator, den_report = common_denominator(form)
    return {
        "schema_version": SCHEMA_VERSION,
        "command": "form",
        "n": n,
        "digits": digits,
        "form": form.to_json_dict(checks),
        "denominator_report": den_report,
        "numeric": {
            "value": value.to_decimal(),
            "value_digits": value.digits,
            "log10_abs": round(value.log10_abs(), 6),
            "log10_abs_over_n": round(value.log10_abs() / n, 6),
            "direct_sum": direct.to_decimal(),
            "direct_sum_digits": ds_digits,
            "agreement_delta_log10": None
            if delta == 0
            else round(log10_fraction(delta), 6),
        },
    }


def cmd_subseq(config: RunConfig) -> dict:
    pairs = config.angles
    hypothesis = hypothesis_multi(pairs)
    plan = build_plan_general(pairs, relations=config.relations)
    psi = enumerate_psi(plan, config.count)
    verification = verify_plan(plan, pairs, config.count)
    return {
        "schema_version": SCHEMA_VERSION,
        "command": "subseq",
        "angles": [
            {"omega": p.omega.describe(), "phi": p.phi.describe()} for p in pairs
        ],
        "hypothesis_ok": hypothesis,
        "plan": plan.to_json_dict(),
        "psi": psi,
        "verification": verification.to_json_dict(),
    }


def cmd_density(config: RunConfig) -> dict:
    report = kw_density(
        config.extra["theta"], config.extra["box"], config.k_max
    )
    return {
        "schema_version": SCHEMA_VERSION,
        "command": "density",
        **report.to_json_dict(),
    }


def cmd_criterion(config: RunConfig) -> dict:
    growth: GrowthData = config.extra["growth"]
    source = config.extra["source"]
    doc = {
        "schema_version": SCHEMA_VERSION,
        "command": "criterion",
        "source": source,
        "log_alpha": f"{growth.log_alpha:.10f}",
        "log_beta": f"{growth.log_beta:.10f}",
    }
    if config.angles:
        report = oscillating_report(growth, config.angles)
        doc["report"] = report.to_json_dict()
    else:
        dim = dimension_bound(growth)
        kappa = exponent_threshold(growth)
        doc["report"] = CriterionReport(
            dim_lower_bound=dim,
            dim_lower_bound_ceiled=math.ceil(dim),
            kappa_threshold=kappa,
            hypothesis_ok=True,
            lambda_used=None,
        ).to_json_dict()
    return doc


# -- output formatting ----------------------------------------------------


def render(doc: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"
    if fmt == "csv":
        return _render_csv(doc)
    return _render_text(doc)


def _render_csv(doc: dict) -> str:
    lines = ["name,value"]
    if doc["command"] == "form":
        lines.append(f"ell0,{doc['form']['ell0']}")
        for s, coeff in doc["form"]["coeffs"].items():
            lines.append(f"ell{s},{coeff}")
    elif doc["command"] == "subseq":
        for i, k in enumerate(doc["psi"], start=1):
            lines.append(f"psi_{i},{k}")
    elif doc["command"] == "density":
        for key in ("k_max", "hits", "empirical", "predicted"):
            lines.append(f"{key},{doc[key]}")
    else:
        for key, value in doc["report"].items():
            lines.append(f"{key},{value}")
    return "\n".join(lines) + "\n"


def _flatten(prefix: str, obj, out: list) -> None:
    if isinstance(obj, dict):
        for key, value in obj.items():
            if isinstance(value, (dict, list)):
                _flatten(f"{prefix}{key}.", value, out)
            else:
                out.append(f"{prefix}{key} = {value}")
    elif isinstance(obj, list):
        out.append(f"{prefix.rstrip('.')} = {obj}")


def _render_text(doc: dict) -> str:
    out: list[str] = []
    _flatten("", doc, out)
    return "\n".join(out) + "\n"


# -- entry point -----------------------------------------------------------


def _config_from_args(args, parser) -> RunConfig:
    if args.command == "form":
        return RunConfig(
            command="form",
            n=args.n,
            digits=args.digits if args.digits else 0,
            output=args.output,
            format=args.format,
            extra={"max_n": args.max_n},
        )
    if args.command == "subseq":
        return RunConfig(
            command="subseq",
            count=args.count,
            angles=_parse_pairs(args.omega, args.phi, parser.error),
            relations=_load_relations(args.relations),
            output=args.output,
            format=args.format,
        )
    if args.command == "density":
        try:
            theta = [parse_angle(t).value() for t in args.theta.split(",")]
            box = []
            for part in args.box.split(","):
                if ":" not in part:
                    raise DomainError(f"box interval {part!r} must be lo:hi")
                lo, hi = part.split(":", 1)
                box.append((decimal_to_fraction(lo), decimal_to_fraction(hi)))
        except (DomainError, ValueError) as exc:
            parser.error(str(exc))
        if len(theta) != len(box):
            parser.error("need one box interval per theta component")
        return RunConfig(
            command="density",
            k_max=args.kmax,
            output=args.output,
            format=args.format,
            extra={"theta": theta, "box": box},
        )
    # criterion
    if args.zudilin:
        growth, source = zudilin_constants(), "zudilin"
    elif args.alpha is not None and args.beta is not None:
        growth, source = GrowthData.from_alpha_beta(args.alpha, args.beta), "alpha_beta"
    elif args.c0 is not None and args.c1 is not None and args.bits is not None:
        growth, source = GrowthData.from_constants(args.c0, args.c1, args.bits), "constants"
    else:
        parser.error("need --zudilin, or --alpha/--beta, or --c0/--c1/--bits")
    angles: tuple[AnglePair, ...] = ()
    if args.omega or args.phi:
        angles = _parse_pairs(args.omega, args.phi, parser.error)
    return RunConfig(
        command="criterion",
        angles=angles,
        output=args.output,
        format=args.format,
        extra={"growth": growth, "source": source},
    )


_COMMANDS = {
    "form": cmd_form,
    "subseq": cmd_subseq,
    "density": cmd_density,
    "criterion": cmd_criterion,
}


def _emit(text: str, output: Optional[str]) -> None:
    if output is None:
        sys.stdout.write(text)
    else:
        with open(output, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(text)


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = _config_from_args(args, parser)
        doc = _COMMANDS[config.command](config)
    except InternalCheckError as exc:
        _emit(_error_doc("internal", exc, args), None)
        return EXIT_INTERNAL
    except BudgetError as exc:
        _emit(_error_doc("budget", exc, args), None)
        return EXIT_BUDGET
    except (DomainError, ZetaformsError) as exc:
        _emit(_error_doc("domain", exc, args), None)
        return EXIT_DOMAIN
    _emit(render(doc, config.format), config.output)
    return EXIT_OK


def _error_doc(kind: str, exc: Exception, args) -> str:
    doc = {
        "schema_version": SCHEMA_VERSION,
        "command": getattr(args, "command", None),
        "error": {"kind": kind, "message": str(exc)},
    }
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


if __name__ == "__main__":
    sys.exit(main())
