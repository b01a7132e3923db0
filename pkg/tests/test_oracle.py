import pytest
from pydantic import ValidationError

from qcongruences.errors import SpecError
from qcongruences.qseries import oracle
from qcongruences.qseries import qfactory as qf
from qcongruences.qseries.oracle import PartitionSpec


@pytest.mark.parametrize(
    "t, s, n, expected",
    [
        (10, 5, 8, 4),
        (10, 5, 9, 6),
        (14, 7, 10, 8),
        (14, 7, 11, 10),
        (6, 2, 4, 1),
        (12, 2, 5, 2),
        (4, 3, 6, 2),
        (4, 3, 5, 0),
        (5, 1, 0, 1),
    ],
)
def test_count_qts_golden_values(t, s, n, expected):
    assert oracle.count_qts(PartitionSpec(t=t, s=s), n) == expected


def test_classical_counts():
    assert oracle.count_p(5) == 7
    assert oracle.count_p(100) == 190569292
    assert oracle.count_pd(10) == 10
    assert oracle.count_po(2) == 1
    assert oracle.count_po(3) == 2


def test_b_nondiv():
    assert oracle.count_b_nondiv(4, 6) == 5
    assert oracle.count_b_nondiv(0, 6) == 1
    assert oracle.count_b_nondiv(6, 6) == 10
    assert oracle.table_b_nondiv(5, 6) == oracle.table_p(5)


def test_b_nondiv_needs_k_at_least_two():
    with pytest.raises(SpecError):
        oracle.table_b_nondiv(10, 1)


def test_qts_three_two_vanishes_off_multiples_of_three():
    table = oracle.table_qts(PartitionSpec(t=3, s=2), 10)
    assert [n for n, v in enumerate(table) if v == 0] == [1, 2, 4, 5, 7, 8, 10]


def test_distinct_equals_odd():
    assert oracle.table_pd(500) == oracle.table_po(500)


def test_qts_bounded_by_distinct_partitions():
    pd = oracle.table_pd(300)
    for t, s in [(5, 2), (10, 5), (14, 7)]:
        table = oracle.table_qts(PartitionSpec(t=t, s=s), 300)
        assert all(q <= d for q, d in zip(table, pd))


def test_table_matches_scalar_counts():
    spec = PartitionSpec(t=5, s=2)
    table = oracle.table_qts(spec, 50)
    assert table == [oracle.count_qts(spec, n) for n in range(51)]


def test_modular_table():
    spec = PartitionSpec(t=12, s=2)
    exact = oracle.table_qts(spec, 200)
    assert oracle.table_qts(spec, 200, modulus=2) == [v % 2 for v in exact]
    assert oracle.table_p(200, modulus=4) == [v % 4 for v in oracle.table_p(200)]


@pytest.mark.parametrize("t", range(2, 13))
def test_oracle_equals_unsquared_product(t):
    n = 300
    for s in range(1, t):
        table = oracle.table_qts(PartitionSpec(t=t, s=s), n)
        assert table == qf.qts_product(t, s, n, squared=False).to_list(), (t, s)


def test_oracle_equals_series_when_not_self_paired():
    n = 300
    for t, s in [(5, 2), (7, 1), (12, 2), (11, 4)]:
        table = oracle.table_qts(PartitionSpec(t=t, s=s), n)
        assert table == qf.qts_series(t, s, n).to_list()


def test_partition_spec():
    spec = PartitionSpec(t=10, s=3)
    assert spec.forbidden == {3, 7}
    assert not spec.allows(13)
    assert spec.allows(5)
    assert str(spec) == "Q_10^3"
    assert PartitionSpec(t=4, s=4).forbidden == {0}


def test_partition_spec_validation():
    with pytest.raises(ValidationError):
        PartitionSpec(t=3, s=4)
    with pytest.raises(ValidationError):
        PartitionSpec(t=3, s=0)


def test_table_dispatch():
    spec = PartitionSpec(t=10, s=5)
    assert oracle.table("qts", 8, spec=spec)[8] == 4
    assert oracle.table("b", 4, k=6)[4] == 5
    assert oracle.table("p", 5)[5] == 7
    with pytest.raises(SpecError):
        oracle.table("qts", 8)
    with pytest.raises(SpecError):
        oracle.table("b", 8)
    with pytest.raises(SpecError):
        oracle.table("q", 8)


def test_negative_n_rejected():
    with pytest.raises(SpecError):
        oracle.table_p(-1)


# ---------------------------------------------------------------------------
# witnesses
# ---------------------------------------------------------------------------


def test_witnesses_fourteen_seven():
    parts = oracle.enumerate_qts(PartitionSpec(t=14, s=7), 10)
    assert parts == [
        (10,),
        (9, 1),
        (8, 2),
        (6, 4),
        (6, 3, 1),
        (5, 4, 1),
        (5, 3, 2),
        (4, 3, 2, 1),
    ]


def test_witnesses_ten_five():
    parts = oracle.witnesses("qts", 8, spec=PartitionSpec(t=10, s=5))
    assert [oracle.format_partition(p) for p in parts] == ["8", "7+1", "6+2", "4+3+1"]


def test_witness_counts_agree_with_tables():
    assert len(oracle.witnesses("b", 4, k=6)) == 5
    assert len(oracle.witnesses("p", 12)) == oracle.count_p(12)
    assert len(oracle.witnesses("pd", 15)) == oracle.count_pd(15)
    assert len(oracle.witnesses("po", 15)) == oracle.count_po(15)


def test_witness_limit():
    with pytest.raises(SpecError):
        oracle.enumerate_partitions(oracle.WITNESS_LIMIT + 1)


def test_format_empty_partition():
    assert oracle.witnesses("p", 0) == [()]
    assert oracle.format_partition(()) == "(empty)"


def test_euler_theorem_by_series_quotient():
    n = 500
    distinct = qf.pochhammer(qf.PochhammerSpec(sign=-1, start=1, step=1), n)
    odd = qf.pochhammer(qf.PochhammerSpec(sign=1, start=1, step=2), n).invert()
    assert distinct == odd
    assert distinct.to_list() == oracle.table_pd(n)
