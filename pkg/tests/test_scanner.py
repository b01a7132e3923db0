import pytest
from pydantic import ValidationError

from qcongruences.checks.scanner import ScanConfig, run_scan, scan
from qcongruences.checks.theorems import instantiate
from qcongruences.errors import TruncationCeilingError
from qcongruences.qseries.oracle import PartitionSpec


def _cfg(t, s, a_max, moduli=(), samples=50, **kwargs):
    return ScanConfig(
        spec=PartitionSpec(t=t, s=s),
        moduli=list(moduli),
        A_max=a_max,
        n_samples=samples,
        **kwargs,
    )


def _cells(rows):
    return {(r.A, r.B, r.m): r.status for r in rows}


def test_exact_scan_of_three_two():
    rows = scan(_cfg(3, 2, 3))
    assert [(r.A, r.B, r.m, r.status) for r in rows] == [
        (3, 1, 0, "identically-zero"),
        (3, 2, 0, "identically-zero"),
    ]
    assert all(r.evidence == "empirical" and r.support == 50 for r in rows)


def test_scan_finds_twelve_two_mod_two():
    cells = _cells(scan(_cfg(12, 2, 6, [2])))
    assert cells[(3, 2, 2)] == "candidate"


def test_scan_finds_fourteen_seven_residues():
    cells = _cells(scan(_cfg(14, 7, 7, [2])))
    for b in (3, 4, 6):
        assert cells[(7, b, 2)] == "candidate"


def test_scan_four_three_odd_progression_vanishes():
    cells = _cells(scan(_cfg(4, 3, 2, [2])))
    assert cells[(2, 1, 2)] == "identically-zero"


def test_rows_sorted_by_progression_and_modulus():
    rows = scan(_cfg(12, 2, 6, [4, 2]))
    keys = [(r.A, r.B, r.m) for r in rows]
    assert keys == sorted(keys)


def test_include_rejected_reports_witnesses():
    rows = scan(_cfg(3, 2, 2, samples=20, include_rejected=True))
    assert [(r.A, r.B, r.status, r.witness_n) for r in rows] == [
        (1, 0, "rejected", 0),
        (2, 0, "rejected", 0),
        (2, 1, "rejected", 1),
    ]


@pytest.mark.parametrize(
    "family, params",
    [("T33", {"alpha": 2}), ("T34", {"alpha": 2}), ("T35a", {}), ("T37a", {}), ("T39", {})],
)
def test_scan_recovers_known_claims(family, params):
    for claim in instantiate(family, conventions=["series"], **params):
        moduli = [claim.modulus] if claim.modulus else []
        cells = _cells(scan(_cfg(claim.t, claim.s, claim.A, moduli)))
        assert cells[(claim.A, claim.B, claim.modulus or 0)] in ("candidate", "identically-zero")


def test_scan_is_deterministic():
    cfg = _cfg(10, 5, 5, [2, 4])
    assert scan(cfg) == scan(cfg)


def test_config_truncation_and_moduli():
    cfg = _cfg(12, 2, 6, [4, 2, 2])
    assert cfg.trunc == 6 * 50 + 6
    assert cfg.moduli == [2, 4]


@pytest.mark.parametrize(
    "kwargs",
    [{"samples": 10}, {"a_max": 1}, {"moduli": [1]}],
)
def test_config_validation(kwargs):
    args = {"t": 12, "s": 2, "a_max": 6, **kwargs}
    with pytest.raises(ValidationError):
        _cfg(**args)


def test_scan_ceiling():
    with pytest.raises(TruncationCeilingError):
        scan(_cfg(12, 2, 6, [2]), max_trunc=100)


def test_run_scan_report():
    report = run_scan(_cfg(3, 2, 3))
    assert report.command == "scan"
    assert report.params["trunc"] == 153
    assert len(report.rows) == 2
    assert '"identically-zero"' in report.to_json()
