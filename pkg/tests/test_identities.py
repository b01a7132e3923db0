import pytest
from sympy import primerange
from sympy.ntheory import legendre_symbol

from qcongruences.checks import identities
from qcongruences.checks.identities import IdentityId
from qcongruences.errors import SpecError
from qcongruences.qseries import qfactory as qf

# ---------------------------------------------------------------------------
# number theory helpers
# ---------------------------------------------------------------------------


@pytest.mark.parametrize(
    "a, p",
    [(-2, 5), (-4, 7), (-4, 11), (-1, 7), (-3, 5), (-6, 13)],
)
def test_legendre_nonresidues(a, p):
    assert identities.legendre(a, p) == -1


def test_legendre_residues_and_zero():
    assert identities.legendre(4, 7) == 1
    assert identities.legendre(-6, 5) == 1
    assert identities.legendre(14, 7) == 0


def test_legendre_matches_sympy():
    for p in primerange(3, 60):
        for a in range(-30, 30):
            assert identities.legendre(a, p) == legendre_symbol(a % p, p), (a, p)


@pytest.mark.parametrize("p", [2, 9, 15])
def test_legendre_needs_odd_prime(p):
    with pytest.raises(SpecError):
        identities.legendre(3, p)


@pytest.mark.parametrize("p", [5, 7, 11, 13, 17, 19, 23])
def test_pentagonal_sign_index(p):
    k = identities.pentagonal_sign_index(p)
    assert abs(k) <= (p - 1) // 2
    assert (3 * k * k + k) // 2 == (p * p - 1) // 24


# ---------------------------------------------------------------------------
# dissections
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("p", [5, 7, 11, 13])
def test_f1_dissection_reassembles_f1(p):
    n = 300
    assert identities.f1_pdissection_rhs(p, n) == qf.euler_f(1, n)


@pytest.mark.parametrize("p", [3, 5, 7])
def test_psi_dissection_reassembles_psi(p):
    n = 300
    assert identities.psi_pdissection_rhs(p, n) == qf.special("psi", n)


def test_dissection_rejects_bad_primes():
    with pytest.raises(SpecError):
        identities.f1_pdissection_rhs(3, 50)
    with pytest.raises(SpecError):
        identities.f1_pdissection_rhs(9, 50)
    with pytest.raises(SpecError):
        identities.psi_pdissection_rhs(2, 50)


def test_dissection_support_f1_five():
    support = identities.dissection_support(5)
    assert support.residues == [0, 2]
    assert support.tail_residue == 1
    assert support.disjoint


def test_dissection_support_psi_five():
    support = identities.dissection_support(5, kind="psi")
    assert support.residues == [0, 1]
    assert support.tail_residue == 3
    assert support.disjoint


@pytest.mark.parametrize("p", [5, 7, 11, 13, 17, 19, 23])
def test_dissection_support_is_disjoint(p):
    assert identities.dissection_support(p, "f1").disjoint
    assert identities.dissection_support(p, "psi").disjoint


def test_dissection_support_unknown_kind():
    with pytest.raises(SpecError):
        identities.dissection_support(5, "phi")


# ---------------------------------------------------------------------------
# ids
# ---------------------------------------------------------------------------


def test_parse_prefix_with_parameter():
    ident = IdentityId.parse("L23(7)")
    assert ident.name == "L23_f1_pdissect"
    assert ident.params == (7,)
    assert str(ident) == "L23_f1_pdissect(7)"
    assert IdentityId.parse(str(ident)) == ident


def test_parse_exact_name_beats_prefix():
    assert IdentityId.parse("E_chi").name == "E_chi"
    assert IdentityId.parse("L27").name == "L27_cubic"
    assert IdentityId.parse("C_v7(3, 2)").params == (3, 2)


@pytest.mark.parametrize("text", ["E", "L2", "X99", "L23(3)", "L24(2)", "C_t7(1)", "C_t7(a,b)"])
def test_parse_rejects(text):
    with pytest.raises(SpecError):
        IdentityId.parse(text)


def test_catalog_order_and_contents():
    ids = [str(i) for i in identities.catalog()]
    assert ids[0] == "E_phi"
    assert ids.index("L23_f1_pdissect(5)") < ids.index("L23_f1_pdissect(13)")
    assert "L24_psi_pdissect(3)" in ids
    assert "C_t7(3,2)" in ids
    assert ids[-1] == "L28_fqq2_mod2"
    assert len(ids) == len(set(ids))


def test_describe_lists_every_entry():
    names = [entry["name"] for entry in identities.describe()]
    assert "L25_septic" in names
    assert {e["name"]: e["modulus"] for e in identities.describe()}["C_v7"] == 4


# ---------------------------------------------------------------------------
# verification
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("ident", identities.catalog(), ids=str)
def test_catalog_identity_holds(ident):
    report = identities.verify(ident)
    assert report.status == "pass", report.first_mismatch
    assert report.first_mismatch is None


def test_verify_uses_entry_default_truncation():
    assert identities.verify("L26").trunc == 150
    assert identities.verify("E_psi").trunc == 300


def test_verify_congruence_records_modulus():
    report = identities.verify("C_t7(1,1)", 200)
    assert report.modulus == 2
    assert report.passed


@pytest.mark.parametrize(
    "ident, trunc, j",
    [("L21", 20, 3), ("L27", 60, 0), ("L25", 200, 137), ("C_v7(2,1)", 40, 40), ("L28", 30, 7)],
)
def test_perturbation_fails_at_perturbed_index(ident, trunc, j):
    report = identities.verify(ident, trunc, perturb=j)
    assert report.status == "fail"
    assert report.first_mismatch.n == j


def test_perturbation_out_of_range():
    with pytest.raises(SpecError):
        identities.verify("L21", 20, perturb=21)


def test_verify_rejects_small_truncation():
    with pytest.raises(SpecError):
        identities.verify("L21", 9)


def test_verify_catalog_keeps_order():
    ids = [IdentityId.parse(x) for x in ("L27", "E_phi", "L23(11)", "C_t7(2,1)")]
    reports = identities.verify_catalog(ids, trunc=100, threads=2)
    assert [r.id for r in reports] == [str(i) for i in ids]
    assert all(r.passed for r in reports)
