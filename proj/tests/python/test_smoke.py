import math
import os
import subprocess

import pytest

import exle


def test_diagonal_closed_form():
    e = exle.ExponentPair(2, 2)
    assert exle.largest_root_L(e).root == pytest.approx(4 + 2 * math.sqrt(2), abs=1e-10)
    r = exle.threshold_report(e)
    assert r.n_new == pytest.approx(10 + 4 * math.sqrt(2), abs=1e-9)
    assert r.improvement == 0.0


def test_asymmetric_report():
    r = exle.threshold_report(exle.ExponentPair(2, 3))
    assert r.s0 == pytest.approx(7.4930808441687973, rel=1e-11)
    assert r.n_new == pytest.approx(13.988929350670076, rel=1e-11)
    assert r.improvement > 0


def test_domain_error_maps_to_value_error():
    with pytest.raises(ValueError, match="p\\*theta must exceed 1"):
        exle.ExponentPair(1, 1)
    with pytest.raises(exle.DomainError):
        exle.ExponentPair(0.5, 1)


def test_identities_and_scan():
    entries = exle.check_polynomial_identities(exle.ExponentPair(2, 3), samples=50, seed=3)
    assert all(entry["passed"] for entry in entries)
    points, _, disagreements = exle.scan_stability_equivalence(exle.ExponentPair(2, 3), 2000)
    assert points == 2000
    assert disagreements == 0


def test_partial_bound():
    e = exle.ExponentPair(2, 2)
    assert exle.hausdorff_bound(e, 16) == pytest.approx(0.3431, abs=1e-4)
    assert exle.hausdorff_bound(e, 12) == 0.0
    assert exle.hausdorff_bound_proof_form(e, 2) is None


def test_branch_and_profile():
    branch = exle.continue_ray(exle.ExponentPair(2, 2), sigma=1.0, dim=3, nodes=64)
    assert branch["relative_width"] <= 1e-4
    assert branch["lambda_lo"] == pytest.approx(2.343255, rel=5e-3)
    assert min(point["mu1"] for point in branch["points"]) >= 1 - 1e-6
    assert exle.singular_profile(exle.ExponentPair(2, 2), 5, 1.0, 1.0) == pytest.approx((2.0, 2.0))


def test_minimal_solution_is_admissible():
    sol = exle.solve_minimal(exle.ExponentPair(2, 3), 1.0, 0.5, dim=3, nodes=64)
    assert sol["converged"]
    assert sol["u"][-1] == 0.0
    assert min(sol["u"]) >= 0.0
    assert len(sol["r"]) == 65


@pytest.mark.skipif("EXLE_CLI" not in os.environ, reason="CLI binary not provided")
def test_cli_roundtrip():
    out = subprocess.run([os.environ["EXLE_CLI"], "roots", "--p", "2", "--theta", "3"],
                         capture_output=True, text=True, check=True).stdout
    header, row = out.strip().split("\n")
    values = dict(zip(header.split(","), row.split(",")))
    assert float(values["n_new"]) == pytest.approx(exle.threshold_report(exle.ExponentPair(2, 3)).n_new)
