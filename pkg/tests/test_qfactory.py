import itertools

import pytest
from pydantic import ValidationError

from qcongruences.errors import SpecError
from qcongruences.qseries import qfactory as qf
from qcongruences.qseries.qfactory import PochhammerSpec, ThetaSpec
from qcongruences.qseries.series import Series


def test_pochhammer_q_q():
    s = qf.pochhammer(PochhammerSpec(start=1, step=1), 7)
    assert s.to_list() == [1, -1, -1, 0, 0, 1, 0, 1]


def test_pochhammer_minus_q_counts_distinct_partitions():
    s = qf.pochhammer(PochhammerSpec(sign=-1, start=1, step=1), 10)
    assert s.to_list() == [1, 1, 1, 2, 2, 3, 4, 5, 6, 8, 10]


def test_pochhammer_trunc_zero():
    assert qf.pochhammer(PochhammerSpec(start=1, step=1), 0).to_list() == [1]


def test_pochhammer_spec_rejects_vanishing_product():
    with pytest.raises(ValidationError):
        PochhammerSpec(sign=1, start=0, step=3)
    assert PochhammerSpec(sign=-1, start=0, step=3).start == 0


def test_euler_f_small():
    assert qf.euler_f(1, 5).to_list() == [1, -1, -1, 0, 0, 1]


@pytest.mark.parametrize("k", [1, 2, 3, 5])
def test_euler_f_matches_pochhammer(k):
    n = 200
    assert qf.euler_f(k, n) == qf.pochhammer(PochhammerSpec(start=k, step=k), n)


def test_euler_f_modular():
    assert qf.euler_f(1, 50, modulus=2) == qf.euler_f(1, 50).reduce_mod(2)


def test_euler_f_rejects_bad_index():
    with pytest.raises(SpecError):
        qf.euler_f(0, 10)


def test_eta_quotient_f6_over_f3():
    n = 120
    assert qf.eta_quotient({6: 1, 3: -1}, n) == qf.euler_f(6, n) / qf.euler_f(3, n)


# ---------------------------------------------------------------------------
# theta functions
# ---------------------------------------------------------------------------


def test_theta_sum_phi():
    s = qf.theta_sum(ThetaSpec(exp_a=1, exp_b=1), 9)
    assert s.to_list() == [1, 2, 0, 0, 2, 0, 0, 0, 0, 2]


def test_theta_sum_psi_supported_on_triangular_numbers():
    n = 100
    psi = qf.theta_sum(ThetaSpec(exp_a=1, exp_b=3), n)
    triangular = {k * (k + 1) // 2 for k in range(15)}
    assert all(psi[i] == (1 if i in triangular else 0) for i in range(n + 1))


def test_theta_sum_euler_pentagonal():
    n = 100
    spec = ThetaSpec(sign_a=-1, exp_a=1, sign_b=-1, exp_b=2)
    assert qf.theta_sum(spec, n) == qf.euler_f(1, n)


def test_theta_septic_c_begins():
    spec = ThetaSpec(sign_a=-1, exp_a=1, sign_b=-1, exp_b=6)
    assert qf.theta_product(spec, 9).to_list() == [1, -1, 0, 0, 0, 0, -1, 0, 0, 1]


def test_theta_spec_needs_positive_base():
    with pytest.raises(ValidationError):
        ThetaSpec(exp_a=0, exp_b=0)
    assert str(ThetaSpec(sign_a=-1, exp_a=1, exp_b=2)) == "f(-q^1, q^2)"


@pytest.mark.parametrize("sign_a, sign_b", list(itertools.product((1, -1), repeat=2)))
def test_jacobi_triple_product(sign_a, sign_b):
    n = 300
    for x in range(9):
        for y in range(9):
            if x + y == 0:
                continue
            spec = ThetaSpec(sign_a=sign_a, exp_a=x, sign_b=sign_b, exp_b=y)
            assert qf.theta_sum(spec, n) == qf.theta_product(spec, n), str(spec)


def test_theta_product_modular():
    spec = ThetaSpec(exp_a=1, exp_b=5)
    assert qf.theta_product(spec, 100, modulus=4) == qf.theta_sum(spec, 100).reduce_mod(4)


# ---------------------------------------------------------------------------
# special functions and auxiliaries
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("name", qf.SPECIAL_NAMES)
def test_special_eta_form_matches_definition(name):
    n = 150
    assert qf.special(name, n) == qf.special_sum_form(name, n)


def test_special_unknown_name():
    with pytest.raises(SpecError):
        qf.special("theta3", 10)


def test_rr_quotient_begins():
    assert qf.rr_quotient(3).to_list() == [1, 1, 0, -1]


def test_septic_abc_constant_terms():
    a, b, c = qf.septic_abc(20)
    assert a[0] == b[0] == c[0] == 1
    assert c[1] == -1
    assert b[1] == 0 and b[2] == -1


def test_cubic_a_begins():
    a = qf.cubic_a(10)
    assert a[0] == 1
    assert a[1] == 5


# ---------------------------------------------------------------------------
# generating functions of Q_t^s
# ---------------------------------------------------------------------------


def test_qts_series_three_two_is_f6_over_f3():
    n = 200
    assert qf.qts_series(3, 2, n) == qf.euler_f(6, n) / qf.euler_f(3, n)


def test_qts_series_four_three_is_f4_over_f2():
    n = 200
    assert qf.qts_series(4, 3, n) == qf.euler_f(4, n) / qf.euler_f(2, n)


def test_qts_series_zero_pattern():
    s = qf.qts_series(3, 2, 12)
    assert s.to_list() == [1, 0, 0, 1, 0, 0, 1, 0, 0, 2, 0, 0, 2]


@pytest.mark.parametrize("t", range(2, 13))
def test_qts_series_equals_squared_product(t):
    n = 300
    for s in range(1, t):
        assert qf.qts_series(t, s, n) == qf.qts_product(t, s, n, squared=True), (t, s)


def test_conventions_agree_when_not_self_paired():
    n = 200
    for t, s in [(5, 1), (7, 3), (12, 2), (9, 4)]:
        assert not qf.is_self_paired(t, s)
        squared = qf.qts_product(t, s, n, squared=True)
        assert squared == qf.qts_product(t, s, n, squared=False)
        assert squared == qf.qts_series(t, s, n)


def test_self_paired_conventions_differ():
    assert qf.is_self_paired(10, 5)
    unsquared = qf.qts_product(10, 5, 9, squared=False)
    squared = qf.qts_product(10, 5, 9, squared=True)
    assert unsquared[8] == 4
    assert unsquared[9] == 6
    assert unsquared != squared


def test_qts_needs_residue_in_range():
    with pytest.raises(SpecError):
        qf.qts_series(5, 5, 10)
    with pytest.raises(SpecError):
        qf.qts_product(5, 0, 10, squared=True)


def test_qts_series_modular():
    n = 150
    assert qf.qts_series(14, 7, n, modulus=2) == qf.qts_series(14, 7, n).reduce_mod(2)


# ---------------------------------------------------------------------------
# dispatch
# ---------------------------------------------------------------------------


def test_build_dispatch():
    assert qf.build("special", 9, name="phi").to_list() == [1, 2, 0, 0, 2, 0, 0, 0, 0, 2]
    assert qf.build("eta", 5, k=1).to_list() == [1, -1, -1, 0, 0, 1]
    assert qf.build("rr", 3).to_list() == [1, 1, 0, -1]
    assert qf.build("qts", 9, t=10, s=5, convention="unsquared")[8] == 4
    assert isinstance(qf.build("cubic-a", 4), Series)
    theta = ThetaSpec(exp_a=1, exp_b=1)
    assert qf.build("theta", 9, theta=theta) == qf.theta_sum(theta, 9)


@pytest.mark.parametrize(
    "kind, kwargs",
    [
        ("qts", {"t": 3}),
        ("qts", {"t": 3, "s": 1, "convention": "cubed"}),
        ("special", {}),
        ("eta", {}),
        ("theta", {}),
        ("nope", {}),
    ],
)
def test_build_rejects_incomplete_requests(kind, kwargs):
    with pytest.raises(SpecError):
        qf.build(kind, 10, **kwargs)
