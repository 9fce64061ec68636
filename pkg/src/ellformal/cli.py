"""Command-line surface: one deterministic computation per invocation.

Commands map onto the library layers: ``expand`` (series expansions),
``grouplaw`` (both group-law constructions plus axiom checks), ``honda``
(prime-by-prime congruence verification), ``bernoulli`` (universal and
elliptic Bernoulli numbers), ``param`` (numeric parametrization point)
and ``classical`` (the exp(T)-1 degeneration demo).

Exit codes: 0 success, 1 any failed check or refused computation,
2 usage or parse errors.  Reports go to stdout, diagnostics to stderr.
Rationals serialize as exact ``num/den`` strings; repeated runs with the
same configuration produce byte-identical output.  Every flag can also
be supplied through ``--config file.json`` under the same name; explicit
flags win.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass, replace
from fractions import Fraction

from .formal_group import (
    formal_exponential,
    formal_logarithm,
    group_law_closed_form,
    group_law_exp_log,
    s_coordinate,
    universal_bernoulli,
    verify_axioms,
)
from .lseries import classical_demo, honda_check
from .numeric_eval import param_point
from .series import BiSeries, LaurentSeries, UniSeries
from .weierstrass import Curve, bernoulli_hurwitz, wp_laurent, wp_prime_laurent


class UsageError(ValueError):
    """Bad flags, bad config file, or invalid field values."""


class RationalParseError(UsageError):
    def __init__(self, text: str, position: int, message: str):
        super().__init__(f"{message} in {text!r} at position {position}")
        self.text = text
        self.position = position


_RATIONAL = re.compile(r"[+-]?(?:\d+(?:/(?P<den>\d+))?|\d+\.\d*|\.\d+)\Z")
_RATIONAL_PREFIX = re.compile(r"[+-]?\d*(?:/\d*|\.\d*)?\Z")


def parse_rational(text: str) -> Fraction:
    """Exact rational from an integer, ``a/b``, or finite decimal string."""
    m = _RATIONAL.fullmatch(text)
    if not m:
        position = 0
        for i in range(len(text), -1, -1):
            if _RATIONAL_PREFIX.fullmatch(text[:i]):
                position = i
                break
        raise RationalParseError(text, position, "malformed rational")
    den = m.group("den")
    if den is not None and int(den) == 0:
        raise RationalParseError(text, text.index("/") + 1, "zero denominator")
    return Fraction(text)


COMMANDS = ("expand", "grouplaw", "honda", "bernoulli", "param", "classical")

_FIELDS = {
    "expand": ("g2", "g3", "order", "what", "format"),
    "grouplaw": ("g2", "g3", "order", "format"),
    "honda": ("g2", "g3", "pmax", "order", "format"),
    "bernoulli": ("g2", "g3", "order", "format"),
    "param": ("g2", "g3", "z", "order", "nmax", "precision", "format"),
    "classical": ("nmax", "order", "s", "format"),
}

_WHAT_CHOICES = ("fe", "fl", "wp", "wpp", "s", "an")
_WHAT_MIN_ORDER = {"fe": 1, "fl": 1, "an": 1, "wp": 2, "wpp": 2, "s": 3}


@dataclass(frozen=True)
class RunConfig:
    command: str
    format: str = "text"
    g2: Fraction | None = None
    g3: Fraction | None = None
    order: int | None = None
    pmax: int | None = None
    z: tuple[float, float] | None = None
    nmax: int | None = None
    what: str | None = None
    s: tuple[int, ...] | None = None
    precision: int | None = None


# -- flag / config resolution -------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ellformal",
        description="Exact formal-group engine for curves y^2 = 4x^3 - g2*x - g3",
        epilog="Negative rational values need the = form, e.g. --g2=-3/7.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_text, *, curve=False, order=False, pmax=False, z=False,
            nmax=False, what=False, s=False, precision=False):
        p = sub.add_parser(name, help=help_text)
        if curve:
            p.add_argument("--g2", help="rational, e.g. 4, -3/7 or 0.25")
            p.add_argument("--g3", help="rational")
        if order:
            p.add_argument("--order", type=int, help="series truncation order")
        if pmax:
            p.add_argument("--pmax", type=int, help="check primes 5..pmax")
        if z:
            p.add_argument("--z", help="upper half-plane point as re,im")
        if nmax:
            p.add_argument("--nmax", type=int, help="number of q-series terms")
        if what:
            p.add_argument("--what", choices=_WHAT_CHOICES,
                           help="which expansion to emit")
        if s:
            p.add_argument("--s", type=int, action="append",
                           help="Dirichlet exponent (repeatable)")
        if precision:
            p.add_argument("--precision", type=int,
                           help="working precision in bits (default 53)")
        p.add_argument("--format", choices=("text", "json"))
        p.add_argument("--config", help="JSON file with the same field names")
        return p

    add("expand", "emit one series expansion", curve=True, order=True, what=True)
    add("grouplaw", "build the group law both ways and verify axioms",
        curve=True, order=True)
    add("honda", "congruence a(p) = p+1-#E(F_p) mod p for good primes",
        curve=True, order=True, pmax=True)
    add("bernoulli", "universal and elliptic Bernoulli numbers",
        curve=True, order=True)
    add("param", "numeric parametrization point and curve residual",
        curve=True, order=True, z=True, nmax=True, precision=True)
    add("classical", "exp(T)-1 degeneration: log(1+T) and eta partial sums",
        nmax=True, order=True, s=True)
    return parser


def _parse_z(value) -> tuple[float, float]:
    if isinstance(value, (list, tuple)) and len(value) == 2:
        return float(value[0]), float(value[1])
    if isinstance(value, str):
        parts = value.split(",")
        if len(parts) == 2:
            try:
                return float(parts[0]), float(parts[1])
            except ValueError:
                pass
    raise UsageError(f"z must be 're,im', got {value!r}")


def _parse_int(name: str, value) -> int:
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise UsageError(f"{name} must be an integer, got {value!r}")
    try:
        return int(value)
    except ValueError:
        raise UsageError(f"{name} must be an integer, got {value!r}") from None


def _load_config_file(path: str, command: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            data = json.load(handle)
    except OSError as exc:
        raise UsageError(f"cannot read config file: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"config file is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise UsageError("config file must hold a JSON object")
    allowed = set(_FIELDS[command]) | {"command"}
    unknown = sorted(set(data) - allowed)
    if unknown:
        raise UsageError(
            f"config fields not used by '{command}': {', '.join(unknown)}"
        )
    if "command" in data and data["command"] != command:
        raise UsageError(
            f"config command {data['command']!r} does not match '{command}'"
        )
    return data


def resolve_config(argv=None) -> RunConfig:
    """Parse flags (and optional config file) into a validated RunConfig."""
    args = _build_parser().parse_args(argv)
    command = args.command
    file_values = _load_config_file(args.config, command) if args.config else {}

    def pick(field):
        flag = getattr(args, field, None)
        if flag is not None:
            return flag
        return file_values.get(field)

    values: dict = {"command": command}
    fmt = pick("format")
    if fmt is None:
        fmt = "text"
    if fmt not in ("text", "json"):
        raise UsageError(f"format must be text or json, got {fmt!r}")
    values["format"] = fmt

    fields = _FIELDS[command]
    if "g2" in fields:
        for name in ("g2", "g3"):
            raw = pick(name)
            if raw is None:
                raise UsageError(f"{command} requires --{name}")
            values[name] = parse_rational(str(raw))
    for name in ("order", "pmax", "nmax", "precision"):
        if name in fields:
            raw = pick(name)
            values[name] = None if raw is None else _parse_int(name, raw)
    if "z" in fields:
        raw = pick("z")
        if raw is None:
            raise UsageError(f"{command} requires --z")
        values["z"] = _parse_z(raw)
    if "what" in fields:
        raw = pick("what")
        if raw is None:
            raise UsageError(f"{command} requires --what")
        if raw not in _WHAT_CHOICES:
            raise UsageError(f"what must be one of {_WHAT_CHOICES}, got {raw!r}")
        values["what"] = raw
    if "s" in fields:
        raw = pick("s")
        if raw is None:
            raw = [1, 2]
        if isinstance(raw, int):
            raw = [raw]
        if not isinstance(raw, (list, tuple)) or not raw:
            raise UsageError(f"s must be a non-empty list of integers, got {raw!r}")
        values["s"] = tuple(_parse_int("s", v) for v in raw)

    return _validate(RunConfig(**values))


def _validate(config: RunConfig) -> RunConfig:
    c = config
    if c.command == "expand":
        minimum = _WHAT_MIN_ORDER[c.what]
        if c.order is None or c.order < minimum:
            raise UsageError(f"expand --what {c.what} needs --order >= {minimum}")
    elif c.command == "grouplaw":
        if c.order is None or c.order < 2:
            raise UsageError("grouplaw needs --order >= 2")
    elif c.command == "honda":
        if c.pmax is None or c.pmax < 5:
            raise UsageError("honda needs --pmax >= 5")
        order = c.pmax if c.order is None else c.order
        if order < c.pmax:
            raise UsageError("honda needs --order >= --pmax")
        c = replace(c, order=order)
    elif c.command == "bernoulli":
        if c.order is None or c.order < 0:
            raise UsageError("bernoulli needs --order >= 0")
    elif c.command == "param":
        if c.order is None or c.order < 2:
            raise UsageError("param needs --order >= 2")
        nmax = c.order if c.nmax is None else c.nmax
        if not 1 <= nmax <= c.order:
            raise UsageError("param needs 1 <= --nmax <= --order")
        precision = 53 if c.precision is None else c.precision
        if precision < 1:
            raise UsageError("precision must be >= 1 bit")
        if c.z[1] <= 0:
            raise UsageError("z must have positive imaginary part")
        c = replace(c, nmax=nmax, precision=precision)
    elif c.command == "classical":
        if c.nmax is None or c.nmax < 1:
            raise UsageError("classical needs --nmax >= 1")
        order = 16 if c.order is None else c.order
        if order < 1:
            raise UsageError("classical needs --order >= 1")
        if any(s < 1 for s in c.s):
            raise UsageError("classical needs every s >= 1")
        c = replace(c, order=order)
    return c


# -- serialization -----------------------------------------------------------


def _series_doc(series: UniSeries) -> dict:
    return {"order": series.order, "coeffs": [str(c) for c in series.coeffs]}


def _laurent_doc(series: LaurentSeries) -> dict:
    return {
        "valuation": series.valuation,
        "order": series.body.order,
        "coeffs": [str(c) for c in series.body.coeffs],
    }


def _bi_doc(series: BiSeries) -> dict:
    return {
        "order": series.order,
        "terms": [{"i": i, "j": j, "c": str(c)} for i, j, c in series.terms()],
    }


def _real_str(x, precision: int) -> str:
    if precision <= 53:
        return repr(float(x))
    import mpmath

    return mpmath.nstr(x, int(precision / 3.3219280948873626) + 3)


def _complex_doc(value, precision: int) -> dict:
    return {
        "re": _real_str(value.real, precision),
        "im": _real_str(value.imag, precision),
        "precision": precision,
    }


def _config_doc(config: RunConfig) -> dict:
    doc: dict = {"command": config.command}
    for field in _FIELDS[config.command]:
        value = getattr(config, field)
        if value is None:
            continue
        if isinstance(value, Fraction):
            doc[field] = str(value)
        elif field == "z":
            doc[field] = [value[0], value[1]]
        elif field == "s":
            doc[field] = list(value)
        else:
            doc[field] = value
    return doc


# -- command execution -------------------------------------------------------


def _run_expand(config: RunConfig) -> tuple[bool, dict]:
    curve = Curve(config.g2, config.g3)
    what, order = config.what, config.order
    if what == "fe":
        body = {"series": _series_doc(formal_exponential(curve, order).series)}
    elif what == "fl":
        flog = formal_logarithm(formal_exponential(curve, order))
        body = {"series": _series_doc(flog.series)}
    elif what == "an":
        flog = formal_logarithm(formal_exponential(curve, order))
        body = {"an": [str(a) for a in flog.an]}
    elif what == "wp":
        body = {"laurent": _laurent_doc(wp_laurent(curve, order))}
    elif what == "wpp":
        body = {"laurent": _laurent_doc(wp_prime_laurent(curve, order))}
    else:  # "s"
        body = {"series": _series_doc(s_coordinate(curve, order).series)}
    return True, body


def _run_grouplaw(config: RunConfig) -> tuple[bool, dict]:
    curve = Curve(config.g2, config.g3)
    fexp = formal_exponential(curve, config.order)
    flog = formal_logarithm(fexp)
    law_exp = group_law_exp_log(fexp, flog, config.order)
    law_closed = group_law_closed_form(curve, config.order)
    agree = law_exp.series == law_closed.series
    report = verify_axioms(law_exp)
    ok = agree and report.passed
    return ok, {
        "law": _bi_doc(law_exp.series),
        "constructions_agree": agree,
        "axioms": {
            "neutral": report.neutral,
            "commutative": report.commutative,
            "associative": report.associative,
            "passed": report.passed,
        },
        "checks_passed": ok,
    }


def _run_honda(config: RunConfig) -> tuple[bool, dict]:
    curve = Curve(config.g2, config.g3)
    flog = formal_logarithm(formal_exponential(curve, config.order))
    report = honda_check(curve, config.pmax, flog)
    entries = []
    for e in report.entries:
        entries.append(
            {
                "p": e.p,
                "trace": e.trace,
                "a_p": None if e.a_formal is None else str(e.a_formal),
                "congruent": e.congruent,
                "exact": e.exact,
                "skipped_reason": e.skipped_reason,
            }
        )
    return report.all_congruent, {
        "entries": entries,
        "all_congruent": report.all_congruent,
        "n_checked": report.n_checked,
        "n_skipped": report.n_skipped,
    }


def _run_bernoulli(config: RunConfig) -> tuple[bool, dict]:
    curve = Curve(config.g2, config.g3)
    order = config.order
    fexp = formal_exponential(curve, order + 1)
    universal = universal_bernoulli(fexp, order)
    hurwitz = [
        {"k": k, "value": str(bernoulli_hurwitz(curve, k))}
        for k in range(4, order + 1)
    ]
    body: dict = {
        "universal": [str(b) for b in universal],
        "bernoulli_hurwitz": hurwitz,
    }
    ok = True
    if order >= 6:
        checks = {
            "universal4_is_minus_6_bh4": universal[4] == -6 * bernoulli_hurwitz(curve, 4),
            "universal6_is_minus_15_bh6": universal[6] == -15 * bernoulli_hurwitz(curve, 6),
        }
        ok = all(checks.values())
        body["cross_checks"] = checks
    body["checks_passed"] = ok
    return ok, body


def _run_param(config: RunConfig) -> tuple[bool, dict]:
    curve = Curve(config.g2, config.g3)
    flog = formal_logarithm(formal_exponential(curve, config.order))
    result = param_point(
        curve, flog, config.z, config.nmax, config.order, config.precision
    )
    p = config.precision
    return True, {
        "z": _complex_doc(result.z, p),
        "q": _complex_doc(result.q, p),
        "w": _complex_doc(result.w, p),
        "alpha": _complex_doc(result.alpha, p),
        "beta": _complex_doc(result.beta, p),
        "residual": _real_str(result.residual, p),
        "relative_residual": repr(result.relative_residual),
        "truncation_estimate": _real_str(result.truncation_estimate, p),
    }


def _run_classical(config: RunConfig) -> tuple[bool, dict]:
    report = classical_demo(config.nmax, list(config.s), config.order)
    rows = []
    for row in report.sums:
        rows.append(
            {
                "s": row.s,
                "terms": row.terms,
                "partial_sum": repr(row.partial_sum),
                "reference": repr(row.reference),
                "abs_error": repr(row.abs_error),
                "bound": repr(row.bound),
                "within_bound": row.within_bound,
            }
        )
    return report.passed, {
        "series_order": report.series_order,
        "an": [str(a) for a in report.an],
        "an_alternating": report.an_alternating,
        "eta": rows,
        "passed": report.passed,
    }


_RUNNERS = {
    "expand": _run_expand,
    "grouplaw": _run_grouplaw,
    "honda": _run_honda,
    "bernoulli": _run_bernoulli,
    "param": _run_param,
    "classical": _run_classical,
}


def run(config: RunConfig) -> tuple[int, dict]:
    """Execute one resolved command; returns (exit code, report)."""
    ok, body = _RUNNERS[config.command](config)
    report = {"command": config.command, "config": _config_doc(config)}
    report.update(body)
    return (0 if ok else 1), report


# -- rendering ---------------------------------------------------------------


def _scalar(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    return str(v)


def _render_text(report: dict) -> str:
    lines: list[str] = []

    def emit(prefix: str, value) -> None:
        if isinstance(value, dict):
            for key, sub in value.items():
                emit(f"{prefix}{key}.", sub)
        elif isinstance(value, list):
            if all(not isinstance(v, (dict, list)) for v in value):
                lines.append(f"{prefix[:-1]}: {' '.join(_scalar(v) for v in value)}")
            else:
                for idx, v in enumerate(value):
                    emit(f"{prefix}{idx}.", v)
        else:
            lines.append(f"{prefix[:-1]}: {_scalar(value)}")

    emit("", report)
    return "\n".join(lines) + "\n"


def _render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2) + "\n"
    return _render_text(report)


def main(argv=None) -> int:
    try:
        config = resolve_config(argv)
    except SystemExit as exc:  # argparse already reported to stderr
        return int(exc.code) if exc.code else 0
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        code, report = run(config)
    except Exception as exc:  # refusal or computation failure, not usage
        print(f"error: {exc}", file=sys.stderr)
        return 1
    sys.stdout.write(_render(report, config.format))
    return code


def entry() -> None:
    raise SystemExit(main())


if __name__ == "__main__":  # pragma: no cover
    raise SystemExit(main())
