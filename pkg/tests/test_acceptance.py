"""Acceptance gate: every criterion at its stated tolerance, one line each.

Each test runs the corresponding seeded suite item (seed 7), prints a
PASS/FAIL line, and enforces the stated runtime budget where one exists.
"""

import time

from cbmlab import acceptance
from cbmlab.cli import main

SEED = 7
CFG = {"l_max": 1000, "prime_bound": 10_000, "grid": 1024}
ITEMS = dict(acceptance.ITEMS)


def run_item(name, budget=None):
    start = time.monotonic()
    details = ITEMS[name](SEED, CFG)
    elapsed = time.monotonic() - start
    verdict = "PASS" if details["passed"] else "FAIL"
    print(f"ACCEPT {name}: {verdict} ({elapsed:.2f}s) {details}")
    assert details["passed"], details
    if budget is not None:
        assert elapsed < budget, f"{name} took {elapsed:.2f}s, budget {budget}s"
    return details


def test_01_growth_rate_oracle_equivalence():
    details = run_item("01-growth-oracle", budget=5.0)
    assert details["max_oracle_error"] <= 1e-3
    assert details["max_formulation_gap"] <= 1e-3


def test_02_prime_pair_formula():
    details = run_item("02-prime-pairs", budget=10.0)
    assert details["max_gap"] <= 0.05


def test_03_growth_rate_product_inequality():
    details = run_item("03-product-inequality")
    assert details["min_product"] >= 1.0 - 2e-3


def test_04_pseudo_metric_norm_axioms_and_stabilization():
    details = run_item("04-pseudo-metric-and-norms")
    tol = 2.0 / CFG["l_max"]
    assert details["max_self_distance"] <= tol
    assert details["max_symmetry_gap"] <= tol
    assert details["max_triangle_excess"] <= tol
    assert details["norm_axioms_ok"]
    assert details["stabilization_cases"] == 50


def test_05_delta_anchors():
    details = run_item("05-delta-anchors")
    assert details["ball_delta_exact"]
    assert abs(details["square_disk_delta"] - 2.0**0.5) <= 1e-3
    assert details["dyadic_scaling_exact"]


def test_06_toric_exactness():
    details = run_item("06-toric-exactness")
    assert details["max_interval_width"] <= 1e-6
    assert details["max_scaling_error"] <= 1e-9
    assert details["upper_le_dc"]


def test_07_shape_invariant_functoriality():
    details = run_item("07-csh-functoriality")
    assert details["cover_rescale_exact"]
    assert details["constant_rescale_exact"]
    assert details["cover_composition_exact"]


def test_08_quasi_isometry_harness():
    details = run_item("08-qi-harness", budget=30.0)
    assert details["all_pairs_pass"]
    assert details["measured_c1"] <= 1.5
    assert details["composed_embedding_ok"]


def test_09_forms_pinch():
    details = run_item("09-forms-pinch")
    assert details["max_pinch_error"] <= 1e-9
    assert details["lower_le_upper"]


def test_10_hamiltonian_bridge():
    details = run_item("10-bridge")
    assert details["unit_hamiltonian_ok"]
    assert details["inequality_holds"]
    assert details["max_equality_gap"] <= 3.0 / CFG["l_max"]


def test_11_squeezability_certificate():
    details = run_item("11-squeezable-certificate")
    assert details["all_non_squeezable_with_certificate"]


def test_12_cli_determinism(tmp_path, capsys):
    first = tmp_path / "run1.json"
    second = tmp_path / "run2.json"
    assert main(["accept", "--seed", "7", "-o", str(first)]) == 0
    assert main(["accept", "--seed", "7", "-o", str(second)]) == 0
    b1, b2 = first.read_bytes(), second.read_bytes()
    assert b1 == b2
    print(f"ACCEPT 12-cli-determinism: PASS (byte-identical, {len(b1)} bytes)")
