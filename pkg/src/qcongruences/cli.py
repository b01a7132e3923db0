"""Command-line interface.

Data goes to stdout, diagnostics to stderr. Exit codes: 0 when every check
passes, 1 when any check fails, 2 on usage or parameter errors.
"""

from __future__ import annotations

import csv
import io
import json
import logging
import sys
import time
from enum import Enum
from typing import Any, Optional

import typer
from pydantic import ValidationError

from . import __version__
from .checks import identities, theorems
from .checks.reports import RunReport, VerificationReport
from .checks.scanner import ScanConfig, ScanReport, run_scan
from .config import config
from .errors import QCongruenceError
from .qseries import oracle
from .qseries import qfactory as qf
from .qseries.oracle import PartitionSpec
from .qseries.qfactory import ThetaSpec

logger = logging.getLogger(__name__)

CSV_COLUMNS = [
    "family", "t", "s", "convention", "A", "B", "modulus", "n_max", "status", "first_fail_n"
]


class OutputFormat(str, Enum):
    text = "text"
    json = "json"
    csv = "csv"


class ConventionChoice(str, Enum):
    series = "series"
    squared = "squared"
    unsquared = "unsquared"


app = typer.Typer(
    name="qcongruences",
    help="Exact q-series, partition counts and congruence checks for Q_t^s.",
    no_args_is_help=True,
    add_completion=False,
)
verify_app = typer.Typer(
    help="Run identity, theorem and base-congruence checks.", no_args_is_help=True
)
app.add_typer(verify_app, name="verify")

FormatOption = typer.Option(OutputFormat.text, "--format", "-f", help="text, json or csv")
MaxTruncOption = typer.Option(None, "--max-trunc", help="Truncation ceiling per check")
ThreadsOption = typer.Option(
    None, "--threads", help="Worker threads (0 = auto); reports keep catalog and plan order"
)


def _version(value: bool) -> None:
    if value:
        typer.echo(__version__)
        raise typer.Exit()


@app.callback()
def main_callback(
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Debug logging on stderr"),
    version: bool = typer.Option(
        False, "--version", callback=_version, is_eager=True, help="Show the version and exit"
    ),
) -> None:
    level = logging.DEBUG if verbose else config.logging.level.upper()
    logging.basicConfig(
        level=level,
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        force=True,
    )


def _fail(message: str) -> typer.Exit:
    typer.echo(f"error: {message}", err=True)
    return typer.Exit(code=2)


def _guard(fn, *args, **kwargs):
    """Run fn, turning domain errors into exit code 2."""
    try:
        return fn(*args, **kwargs)
    except (QCongruenceError, ValidationError) as e:
        raise _fail(str(e)) from None


# =============================================================================
# Rendering
# =============================================================================


def _csv(rows: list[list[Any]], header: list[str]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue().rstrip("\n")


def _report_row(r: VerificationReport) -> list[Any]:
    fail_n = r.first_mismatch.n if r.first_mismatch else ""
    family = r.family or r.id
    values = [family, r.t, r.s, r.convention, r.A, r.B, r.modulus, r.n_max, r.status, fail_n]
    return ["" if v is None else v for v in values]


def _report_line(r: VerificationReport) -> str:
    parts = [f"{r.status.upper():<9}", r.id]
    if r.convention:
        parts.append(f"[{r.convention}{', advisory' if r.advisory else ''}]")
    if r.modulus:
        parts.append(f"mod {r.modulus}")
    parts.append(f"n<={r.n_max}" if r.n_max is not None else f"trunc {r.trunc}")
    if r.first_mismatch:
        m = r.first_mismatch
        parts.append(f"first mismatch at n={m.n}: {m.lhs} != {m.rhs}")
    if r.status == "skipped" and r.note:
        parts.append(f"({r.note})")
    parts.append(f"{r.millis:.1f} ms")
    return "  ".join(parts)


def _emit_run(report: RunReport, fmt: OutputFormat) -> None:
    if fmt == OutputFormat.json:
        typer.echo(report.to_json())
    elif fmt == OutputFormat.csv:
        typer.echo(_csv([_report_row(r) for r in report.reports], CSV_COLUMNS))
    else:
        for r in report.reports:
            typer.echo(_report_line(r))
        s = report.summary
        typer.echo(
            f"pass={s.passed} fail={s.failed} skipped={s.skipped} divergent={s.divergent} "
            f"({report.millis:.0f} ms)"
        )


def _emit_values(values: list[int], fmt: OutputFormat, meta: dict[str, Any]) -> None:
    if fmt == OutputFormat.json:
        typer.echo(json.dumps({**meta, "coeffs": values}))
    elif fmt == OutputFormat.csv:
        typer.echo(_csv([[n, v] for n, v in enumerate(values)], ["n", "value"]))
    else:
        typer.echo(",".join(str(v) for v in values))


def _finish(
    command: str,
    params: dict[str, Any],
    reports: list[VerificationReport],
    start: float,
    fmt: OutputFormat,
) -> None:
    millis = round((time.perf_counter() - start) * 1000, 3)
    report = RunReport.build(command, params, reports, millis)
    _emit_run(report, fmt)
    raise typer.Exit(code=report.exit_code)


# =============================================================================
# compute / oracle
# =============================================================================


@app.command()
def compute(
    kind: str = typer.Argument(..., help="qts, special, eta, theta, rr or cubic-a"),
    name: Optional[str] = typer.Argument(None, help="Special function name (phi, psi, ...)"),
    t: Optional[int] = typer.Option(None, "--t"),
    s: Optional[int] = typer.Option(None, "--s"),
    convention: ConventionChoice = typer.Option(ConventionChoice.series, "--convention"),
    k: Optional[int] = typer.Option(None, "--k", help="Index of f_k for eta"),
    x: int = typer.Option(1, "--x", help="Theta exponent of a"),
    y: int = typer.Option(1, "--y", help="Theta exponent of b"),
    negate_a: bool = typer.Option(False, "--negate-a", help="Use -q^x for a"),
    negate_b: bool = typer.Option(False, "--negate-b", help="Use -q^y for b"),
    trunc: int = typer.Option(20, "--trunc"),
    modulus: Optional[int] = typer.Option(None, "--modulus"),
    fmt: OutputFormat = FormatOption,
) -> None:
    """Print the coefficients 0..trunc of a named series."""
    theta = None
    if kind == "theta":
        theta = _guard(
            ThetaSpec, sign_a=-1 if negate_a else 1, exp_a=x, sign_b=-1 if negate_b else 1, exp_b=y
        )
    if trunc > config.limits.max_trunc:
        raise _fail(f"trunc {trunc} exceeds the ceiling {config.limits.max_trunc}")
    series = _guard(
        qf.build,
        kind,
        trunc,
        name=name,
        t=t,
        s=s,
        convention=convention.value,
        k=k,
        theta=theta,
        modulus=modulus,
    )
    meta = {
        "kind": kind,
        "name": name,
        "t": t,
        "s": s,
        "convention": convention.value,
        "trunc": trunc,
        "modulus": modulus,
    }
    _emit_values(series.to_list(), fmt, meta)


@app.command("oracle")
def oracle_cmd(
    kind: str = typer.Argument(..., help="qts, p, pd, po or b"),
    n: int = typer.Option(..., "--n", help="Argument of the counting function"),
    t: Optional[int] = typer.Option(None, "--t"),
    s: Optional[int] = typer.Option(None, "--s"),
    k: int = typer.Option(6, "--k", help="Forbidden divisor for b"),
    table: bool = typer.Option(False, "--table", help="Print every value 0..n"),
    witness: bool = typer.Option(False, "--witness", help="List the partitions (n <= 40)"),
    fmt: OutputFormat = FormatOption,
) -> None:
    """Count partitions combinatorially, independently of the series code."""
    if kind not in ("qts", "p", "pd", "po", "b"):
        raise _fail(f"unknown partition function {kind!r}; expected qts, p, pd, po or b")
    spec = None
    if kind == "qts":
        if t is None or s is None:
            raise _fail("qts needs --t and --s")
        spec = _guard(PartitionSpec, t=t, s=s)
    if witness and n > oracle.WITNESS_LIMIT:
        raise _fail(f"--witness is limited to n <= {oracle.WITNESS_LIMIT}")
    values = _guard(oracle.table, kind, n, spec=spec, k=k)
    parts = _guard(oracle.witnesses, kind, n, spec=spec, k=k) if witness else None

    if table:
        _emit_values(values, fmt, {"kind": kind, "t": t, "s": s, "k": k, "n": n})
        return
    if fmt == OutputFormat.json:
        payload: dict[str, Any] = {"kind": kind, "t": t, "s": s, "k": k, "n": n, "count": values[n]}
        if parts is not None:
            payload["partitions"] = [list(p) for p in parts]
        typer.echo(json.dumps(payload))
    elif fmt == OutputFormat.csv:
        typer.echo(_csv([[n, values[n]]], ["n", "count"]))
    else:
        typer.echo(values[n])
        for p in parts or []:
            typer.echo(oracle.format_partition(p))


# =============================================================================
# verify
# =============================================================================


@verify_app.command("identity")
def verify_identity(
    ids: list[str] = typer.Argument(..., help="Catalog ids, e.g. L27 or 'L23(7)'"),
    trunc: Optional[int] = typer.Option(None, "--trunc"),
    perturb: Optional[int] = typer.Option(None, "--perturb", help="Add q^j to the right side"),
    fmt: OutputFormat = FormatOption,
    threads: Optional[int] = ThreadsOption,
) -> None:
    """Verify catalog identities by exact expansion."""
    start = time.perf_counter()
    parsed = [_guard(identities.IdentityId.parse, i) for i in ids]
    reports = _guard(
        lambda: [identities.verify(i, trunc, perturb) for i in parsed]
        if perturb is not None
        else identities.verify_catalog(parsed, trunc, threads)
    )
    params = {"ids": ids, "trunc": trunc, "perturb": perturb}
    _finish("verify identity", params, reports, start, fmt)


@verify_app.command("theorem")
def verify_theorem(
    family: str = typer.Argument(..., help="T31 .. T39; T35, T36, T37 select both parts"),
    alpha: Optional[int] = typer.Option(None, "--alpha"),
    p: Optional[int] = typer.Option(None, "--p"),
    beta: int = typer.Option(0, "--beta"),
    j: Optional[int] = typer.Option(None, "--j"),
    nmax: Optional[int] = typer.Option(None, "--nmax"),
    convention: Optional[list[ConventionChoice]] = typer.Option(
        None, "--convention", help="Read Q under these conventions only"
    ),
    as_printed: bool = typer.Option(False, "--as-printed", help="Use the statement as printed"),
    fmt: OutputFormat = FormatOption,
    max_trunc: Optional[int] = MaxTruncOption,
    threads: Optional[int] = ThreadsOption,
) -> None:
    """Verify theorem instances; without parameters, the family's default instances.

    Reports are listed in instantiation order (by j, then convention), not sorted by id.
    """
    start = time.perf_counter()
    families = _guard(theorems.resolve_families, family)
    conventions = [c.value for c in convention] if convention else None
    explicit = alpha is not None or p is not None or j is not None or beta != 0
    if explicit or as_printed or conventions or nmax is not None:
        plan = []
        for fam in families:
            claims = _guard(
                theorems.instantiate,
                fam,
                alpha=alpha,
                p=p,
                beta=beta,
                j=j,
                as_printed=as_printed,
                conventions=conventions,
            )
            plan += [(c, nmax or _default_nmax(c)) for c in claims]
    else:
        plan = theorems.family_plan(family)
    reports = _guard(theorems.verify_plan, plan, max_trunc, threads)
    params = {
        "family": family,
        "alpha": alpha,
        "p": p,
        "beta": beta,
        "j": j,
        "nmax": nmax,
        "conventions": conventions,
        "as_printed": as_printed,
    }
    _finish("verify theorem", params, reports, start, fmt)


def _default_nmax(claim: theorems.CongruenceClaim) -> int:
    d = config.defaults
    if claim.alpha is None and claim.p is None:
        return d.base_nmax if claim.A == 1 and claim.reference else d.family_nmax
    if claim.A == 1:
        return d.base_nmax
    return d.claim_nmax_lifted if claim.beta else d.claim_nmax


@verify_app.command("base")
def verify_base(
    family: str = typer.Argument(..., help="T31, T32 or T36"),
    alpha: Optional[int] = typer.Option(None, "--alpha"),
    nmax: Optional[int] = typer.Option(None, "--nmax"),
    convention: Optional[list[ConventionChoice]] = typer.Option(None, "--convention"),
    fmt: OutputFormat = FormatOption,
    max_trunc: Optional[int] = MaxTruncOption,
) -> None:
    """Verify a beta = 0 series congruence (Q = f1 f_2a, f1 f_a mod 2; psi f2 mod 4)."""
    start = time.perf_counter()
    names = {"T36": "T36a", "T31": "T31a", "T32": "T32a"}
    conventions = [c.value for c in convention] if convention else None
    reports = _guard(
        theorems.verify_base_congruence,
        names.get(family, family),
        alpha=alpha,
        n_max=nmax,
        conventions=conventions,
        max_trunc=max_trunc,
    )
    params = {"family": family, "alpha": alpha, "nmax": nmax, "conventions": conventions}
    _finish("verify base", params, reports, start, fmt)


@verify_app.command("all")
def verify_all(
    trunc: Optional[int] = typer.Option(None, "--trunc", help="Identity truncation"),
    fmt: OutputFormat = FormatOption,
    max_trunc: Optional[int] = MaxTruncOption,
    threads: Optional[int] = ThreadsOption,
) -> None:
    """The identity catalog followed by the default theorem instances.

    Reports are listed in catalog order, then default plan order, not sorted by id.
    """
    start = time.perf_counter()
    reports = _guard(identities.verify_catalog, None, trunc, threads)
    reports += _guard(theorems.verify_plan, theorems.default_plan(), max_trunc, threads)
    _finish("verify all", {"trunc": trunc, "max_trunc": max_trunc}, reports, start, fmt)


# =============================================================================
# scan / serve
# =============================================================================


def _parse_moduli(text: str) -> list[int]:
    try:
        return [int(m) for m in text.split(",") if m.strip()]
    except ValueError:
        raise _fail(f"--moduli must be comma-separated integers, got {text!r}") from None


@app.command()
def scan(
    t: int = typer.Option(..., "--t"),
    s: int = typer.Option(..., "--s"),
    a_max: int = typer.Option(..., "--A-max", help="Largest progression modulus A"),
    moduli: str = typer.Option("", "--moduli", help="e.g. 2,4; empty scans for exact zeros"),
    samples: Optional[int] = typer.Option(None, "--samples"),
    convention: ConventionChoice = typer.Option(ConventionChoice.series, "--convention"),
    include_rejected: bool = typer.Option(False, "--include-rejected"),
    fmt: OutputFormat = FormatOption,
    max_trunc: Optional[int] = MaxTruncOption,
) -> None:
    """Search progressions An+B on which Q_t^s vanishes mod m (empirical)."""
    kwargs: dict[str, Any] = {}
    if samples is not None:
        kwargs["n_samples"] = samples
    cfg = _guard(
        ScanConfig,
        spec=_guard(PartitionSpec, t=t, s=s),
        convention=convention.value,
        moduli=_parse_moduli(moduli),
        A_max=a_max,
        include_rejected=include_rejected,
        **kwargs,
    )
    report: ScanReport = _guard(run_scan, cfg, max_trunc)
    if fmt == OutputFormat.json:
        typer.echo(report.to_json())
    elif fmt == OutputFormat.csv:
        rows = [[r.A, r.B, r.m, r.support, r.status] for r in report.rows]
        typer.echo(_csv(rows, ["A", "B", "m", "support", "status"]))
    else:
        for r in report.rows:
            m = f"mod {r.m}" if r.m else "exact"
            typer.echo(f"{r.A}n+{r.B}  {m:<7} {r.status:<17} support={r.support} ({r.evidence})")


@app.command()
def serve() -> None:
    """Run the MCP tool server on stdio."""
    from .server import main as serve_main

    serve_main()


def main() -> None:
    app()


if __name__ == "__main__":
    main()
