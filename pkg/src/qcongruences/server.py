"""
MCP server for qcongruences.

Exposes the command-line operations as tools for an agent over stdio:
- Series expansion - q-series coefficients
- Partition counts - the combinatorial oracle
- Identity and theorem checks - structured verification reports
- Congruence scan - empirical candidates
"""

from typing import Any

from mcp.server.fastmcp import FastMCP
from pydantic import ValidationError

from .checks import identities, theorems
from .checks.scanner import ScanConfig, run_scan
from .config import config
from .errors import QCongruenceError
from .qseries import oracle
from .qseries import qfactory as qf
from .qseries.oracle import PartitionSpec

mcp = FastMCP("qcongruences")


# =============================================================================
# TOOLS: Series and counts
# =============================================================================


@mcp.tool()
def compute_series(
    kind: str,
    trunc: int = 20,
    name: str | None = None,
    t: int | None = None,
    s: int | None = None,
    convention: str = "series",
    k: int | None = None,
    x: int = 1,
    y: int = 1,
    negate_a: bool = False,
    negate_b: bool = False,
    modulus: int | None = None,
) -> dict[str, Any]:
    """
    Expand a named q-series to a truncation order.

    Args:
        kind: qts, special, eta, theta, rr or cubic-a
        trunc: Highest power of q to compute
        name: Special function name for kind=special (phi, psi, f_neg, chi, ...)
        t: Modulus t for kind=qts
        s: Residue s for kind=qts
        convention: series, squared or unsquared (kind=qts)
        k: Index of f_k for kind=eta
        x: Exponent of a in f(a, b) for kind=theta
        y: Exponent of b in f(a, b) for kind=theta
        negate_a: Use a = -q^x (kind=theta)
        negate_b: Use b = -q^y (kind=theta)
        modulus: Reduce coefficients mod this value (optional)

    Returns:
        Coefficients 0..trunc, or an error message
    """
    if trunc > config.limits.max_trunc:
        return {"error": f"trunc {trunc} exceeds the ceiling {config.limits.max_trunc}"}
    try:
        theta = None
        if kind == "theta":
            theta = qf.ThetaSpec(
                sign_a=-1 if negate_a else 1, exp_a=x, sign_b=-1 if negate_b else 1, exp_b=y
            )
        series = qf.build(
            kind,
            trunc,
            name=name,
            t=t,
            s=s,
            convention=convention,
            k=k,
            theta=theta,
            modulus=modulus,
        )
    except (QCongruenceError, ValidationError) as e:
        return {"error": str(e)}
    return {"kind": kind, "trunc": trunc, "modulus": modulus, "coeffs": series.to_list()}


@mcp.tool()
def count_partitions(
    kind: str,
    n: int,
    t: int | None = None,
    s: int | None = None,
    k: int = 6,
    witness: bool = False,
) -> dict[str, Any]:
    """
    Count partitions of n by dynamic programming (independent of series code).

    Args:
        kind: qts (distinct parts avoiding s, t-s mod t), p, pd, po, or b (no part divisible by k)
        n: The number to partition
        t: Modulus for kind=qts
        s: Residue for kind=qts
        k: Forbidden divisor for kind=b
        witness: Also list the partitions (n <= 40)

    Returns:
        The count, and the partitions when requested
    """
    try:
        spec = PartitionSpec(t=t, s=s) if kind == "qts" and t and s else None
        count = oracle.table(kind, n, spec=spec, k=k)[n]
        result: dict[str, Any] = {"kind": kind, "n": n, "count": count}
        if witness:
            result["partitions"] = [
                oracle.format_partition(p) for p in oracle.witnesses(kind, n, spec=spec, k=k)
            ]
    except (QCongruenceError, ValueError) as e:
        return {"error": str(e)}
    return result


# =============================================================================
# TOOLS: Verification
# =============================================================================


@mcp.tool()
def verify_identity(identity: str, trunc: int | None = None) -> dict[str, Any]:
    """
    Verify a catalog identity by exact expansion of both sides.

    Args:
        identity: Catalog id such as L27, L23(7) or C_t7(1,2); see docs://identities
        trunc: Truncation order (default per identity, minimum 10)

    Returns:
        Verification report (status, first mismatch, timing)
    """
    try:
        report = identities.verify(identity, trunc)
    except (QCongruenceError, ValueError) as e:
        return {"error": str(e)}
    return report.model_dump(mode="json")


@mcp.tool()
def verify_theorem(
    family: str,
    alpha: int | None = None,
    p: int | None = None,
    beta: int = 0,
    j: int | None = None,
    n_max: int = 50,
    as_printed: bool = False,
) -> list[dict[str, Any]]:
    """
    Verify instances of a congruence theorem family.

    Args:
        family: T31, T31a, T32, T32a, T33, T34, T35a, T35b, T36a, T36b, T37a, T37b, T38, T39
            (T35, T36, T37 select both parts)
        alpha: Family parameter alpha where applicable
        p: Prime p where applicable
        beta: Lift exponent beta (default 0)
        j: Single j in 1..p-1 (default: all)
        n_max: Check 0 <= n <= n_max
        as_printed: Use the statement exactly as printed (T35b, T36)

    Returns:
        One report per claim and convention
    """
    try:
        plan = [
            (claim, n_max)
            for fam in theorems.resolve_families(family)
            for claim in theorems.instantiate(
                fam, alpha=alpha, p=p, beta=beta, j=j, as_printed=as_printed
            )
        ]
        reports = theorems.verify_plan(plan)
    except (QCongruenceError, ValueError) as e:
        return [{"error": str(e)}]
    return [r.model_dump(mode="json") for r in reports]


@mcp.tool()
def scan_congruences(
    t: int,
    s: int,
    a_max: int,
    moduli: list[int] | None = None,
    samples: int = 50,
    convention: str = "series",
) -> list[dict[str, Any]]:
    """
    Search progressions An+B on which Q_t^s vanishes mod m. Results are empirical.

    Args:
        t: Modulus t
        s: Residue s (1 <= s < t)
        a_max: Largest progression modulus A
        moduli: Moduli m to test; empty scans for exact zeros
        samples: Number of sampled n per progression (>= 20)
        convention: series, squared or unsquared

    Returns:
        Candidate and identically-zero rows ordered by (A, B, m)
    """
    try:
        cfg = ScanConfig(
            spec=PartitionSpec(t=t, s=s),
            convention=convention,
            moduli=moduli or [],
            A_max=a_max,
            n_samples=samples,
        )
        report = run_scan(cfg)
    except (QCongruenceError, ValueError) as e:
        return [{"error": str(e)}]
    return [row.model_dump() for row in report.rows]


# =============================================================================
# RESOURCES: Catalogs
# =============================================================================


@mcp.resource("docs://identities")
def docs_identities() -> str:
    """Identity catalog."""
    lines = ["# Identity catalog", ""]
    for entry in identities.describe():
        params = f" ({entry['parameters']} parameter(s))" if entry["parameters"] else ""
        mod = f" [mod {entry['modulus']}]" if entry["modulus"] else ""
        lines.append(f"- **{entry['name']}**{params}{mod}: {entry['statement']}")
    lines += ["", "Default run: " + ", ".join(str(i) for i in identities.catalog())]
    return "\n".join(lines)


@mcp.resource("docs://theorems")
def docs_theorems() -> str:
    """Theorem families and their statements."""
    lines = ["# Theorem families", ""]
    lines += [f"- **{family.value}**: {text}" for family, text in theorems.STATEMENTS.items()]
    lines += [
        "",
        "Conventions: series (theta quotient), squared (Pochhammer quotient),",
        "unsquared (partition oracle). They differ only when s = t - s (mod t);",
        "there the series reading decides and the others are advisory.",
    ]
    return "\n".join(lines)


# =============================================================================
# PROMPTS
# =============================================================================


@mcp.prompt()
def investigate_congruence(t: int, s: int) -> str:
    """Template for exploring congruences of Q_t^s."""
    return f"""# Congruences of Q_{t}^{s}

## Step 1: Values
Use count_partitions(kind="qts", t={t}, s={s}, n=10, witness=True) to see small cases.

## Step 2: Scan
Run scan_congruences(t={t}, s={s}, a_max=12, moduli=[2, 4]).
Candidates are empirical; identically-zero rows are exact vanishing.

## Step 3: Compare
Read docs://theorems and check whether a known family covers each candidate;
verify it with verify_theorem.
"""


# =============================================================================
# Entry point
# =============================================================================


def main():
    """Run the MCP server."""
    mcp.run()


if __name__ == "__main__":
    main()
