from qcongruences import server


def test_compute_series():
    result = server.compute_series("special", 9, name="phi")
    assert result["coeffs"] == [1, 2, 0, 0, 2, 0, 0, 0, 0, 2]


def test_compute_series_errors():
    assert "error" in server.compute_series("qts", 10)
    assert "error" in server.compute_series("eta", 10**6, k=1)


def test_compute_series_theta():
    result = server.compute_series("theta", 7, x=1, y=2, negate_a=True, negate_b=True)
    assert result["coeffs"] == [1, -1, -1, 0, 0, 1, 0, 1]
    assert "error" in server.compute_series("theta", 7, x=0, y=0)


def test_count_partitions_with_witnesses():
    result = server.count_partitions("qts", 8, t=10, s=5, witness=True)
    assert result["count"] == 4
    assert result["partitions"] == ["8", "7+1", "6+2", "4+3+1"]


def test_count_partitions_errors():
    assert "error" in server.count_partitions("qts", 8)
    assert "error" in server.count_partitions("p", 50, witness=True)


def test_verify_identity_tool():
    assert server.verify_identity("L27", 200)["status"] == "pass"
    assert "error" in server.verify_identity("nope")


def test_verify_theorem_tool():
    reports = server.verify_theorem("T39", n_max=60)
    assert [r["status"] for r in reports] == ["pass"]
    assert "error" in server.verify_theorem("T36b", p=5)[0]


def test_scan_tool():
    rows = server.scan_congruences(12, 2, 6, [2])
    assert any(
        (r["A"], r["B"], r["m"], r["status"]) == (3, 2, 2, "candidate") for r in rows
    )
    assert "error" in server.scan_congruences(12, 2, 6, [2], samples=5)[0]


def test_resources_and_prompt():
    assert "L27_cubic" in server.docs_identities()
    assert "T36b" in server.docs_theorems()
    assert "Q_3^2" in server.investigate_congruence(3, 2)
