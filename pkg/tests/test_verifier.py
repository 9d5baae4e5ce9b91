import json

import numpy as np
import pytest

from pclean.errors import UnknownTheoremId
from pclean.rings import RingTable, TableKernel, build_ring
from pclean.verifier import (
    CHECK_IDS,
    TheoremReport,
    VerifyEnv,
    load_catalog_file,
    replay_counterexample,
    run_suite,
    verify,
)


def test_check_ids_cover_the_numbered_claims():
    expected = {
        "T2.1", "T2.4", "C2.5", "L2.6", "L2.7", "T2.8", "L2.9", "P2.10", "T2.10",
        "C2.11", "C2.12", "T2.13", "C2.14", "L3.1", "T3.2", "C3.3", "T3.5", "C3.6",
        "P3.7", "L4.1", "T4.2", "T4.4", "C4.5", "E4.6", "T5.1", "C5.2", "E5.3",
        "T5.4", "P5.6",
    }
    assert set(CHECK_IDS) == expected


def test_unknown_theorem_id():
    with pytest.raises(UnknownTheoremId):
        verify("T9.9", ["Z4"])


def test_t3_5_holds_on_small_locals():
    checks = verify("T3.5", ["Z4", "Z8", "Z4[i]"])
    assert all(c.verdict == "HOLDS" for c in checks)


def test_e4_6_holds_only_on_z4():
    checks = verify("E4.6", ["Z4", "Z8"])
    by_ring = {c.ring: c.verdict for c in checks}
    assert by_ring == {"Z4": "HOLDS", "Z8": "SKIPPED"}


def test_t2_10_holds_with_both_sides_false():
    (check,) = verify("T2.10", ["T2(Z2)"])
    assert check.verdict == "HOLDS"
    from pclean import decompositions as dec
    from pclean import radicals as rad

    t2 = build_ring("T2(Z2)")
    assert not dec.is_uniquely_pclean_ring(t2)[0]
    assert not rad.is_abelian(t2)


def test_hypothesis_not_met_for_nonlocal():
    (check,) = verify("T3.5", ["Z6"])
    assert check.verdict == "HYPOTHESIS_NOT_MET"


def test_empty_catalog():
    report = run_suite([])
    assert report.exit_status == 0
    # only the catalog-independent C2.14 placeholder remains
    assert [c.id for c in report.checks] == ["C2.14"]
    assert report.checks[0].verdict == "SKIPPED"


def test_c2_14_always_skipped_with_reason():
    report = run_suite(["Z4"], only="C2.14")
    (check,) = report.checks
    assert check.verdict == "SKIPPED" and "scope" in check.note


def test_report_shape_and_determinism():
    env = VerifyEnv()
    r1 = run_suite(["Z4", "Z6"], env, only="T2.1").to_dict()
    r2 = run_suite(["Z4", "Z6"], env, only="T2.1").to_dict()
    for doc in (r1, r2):
        for entry in doc["checks"]:
            assert set(entry) >= {"id", "ring", "verdict", "counterexample", "millis"}
    strip = lambda d: [
        {k: v for k, v in e.items() if k != "millis"} for e in d["checks"]
    ]
    assert strip(r1) == strip(r2)
    assert json.dumps(strip(r1))  # JSON serializable


def _corrupted_z4(row: int, col: int, val: int, name: str) -> RingTable:
    z4 = build_ring("Z4")
    add = np.array([[z4.add(a, b) for b in range(4)] for a in range(4)])
    mul = np.array([[z4.mul(a, b) for b in range(4)] for a in range(4)])
    mul[row][col] = val
    return RingTable(TableKernel(add, mul, zero=0, one=1), name)


def test_corrupted_table_surfaces_counterexample():
    bad = _corrupted_z4(0, 2, 1, "Z4c_021")  # 0*2 = 1 breaks commutativity
    (check,) = verify("T2.10", [bad])
    assert check.verdict == "COUNTEREXAMPLE"
    vals = check.counterexample["values"]
    assert vals["uniquely_pclean_ring"] != (vals["abelian"] and vals["strongly_pclean_ring"])
    report = TheoremReport(catalog=["Z4c_021"], checks=[check])
    assert report.exit_status == 1
    # the payload re-validates against the same (fixture) ring
    assert replay_counterexample(check, ring=bad)


def test_corrupted_table_breaks_matrix_criteria():
    from pclean.matrices import matrix_ring

    bad = _corrupted_z4(2, 2, 2, "Z4c_222")  # 2*2 = 2 desynchronizes the criteria
    (check,) = verify("T4.4", [bad])
    assert check.verdict == "COUNTEREXAMPLE"
    crit = check.counterexample["criteria"]
    assert len(set(crit.values())) > 1
    assert replay_counterexample(check, ring=matrix_ring(bad))


def test_replay_detects_stale_payload():
    bad = _corrupted_z4(0, 2, 1, "Z4c_021b")
    (check,) = verify("T2.10", [bad])
    check.counterexample["values"]["abelian"] = True  # tamper
    assert not replay_counterexample(check, ring=bad)


def test_self_test_traps_fire_on_radical_breaking_corruption():
    # corrupting a unit product makes P escape J; the library refuses to
    # produce a radical rather than reporting nonsense
    from pclean import radicals as rad
    from pclean.errors import RadicalNotIdeal

    bad = _corrupted_z4(3, 3, 0, "Z4c_330")
    with pytest.raises(RadicalNotIdeal):
        rad.jacobson_radical(bad)


def test_catalog_file_loading(tmp_path):
    path = tmp_path / "catalog.txt"
    path.write_text("# comment line\nZ4\n  z8[i]  # inline\n\nT2(Z2)\n")
    assert load_catalog_file(str(path)) == ["Z4", "Z8[i]", "T2(Z2)"]


def test_l2_9_runs_on_pairs():
    checks = verify("L2.9", ["Z2", "Z4"])
    names = {c.ring for c in checks}
    assert names == {"Z2 x Z2", "Z2 x Z4", "Z4 x Z4"}
    assert all(c.verdict == "HOLDS" for c in checks)


def test_l2_9_product_verdicts_match_factors():
    from pclean import decompositions as dec
    from pclean.rings import ProductKernel

    ra, rb = build_ring("Z4"), build_ring("Z6")
    prod = RingTable(ProductKernel([ra, rb]), "Z4 x Z6")
    assert dec.is_strongly_pclean_ring(prod)[0] is False
    assert dec.is_strongly_pclean_ring(ra)[0] and not dec.is_strongly_pclean_ring(rb)[0]


def test_ideal_checks_skip_above_bound():
    checks = verify("L2.7", ["M2(Z4)"])
    assert checks[0].verdict == "SKIPPED"
    assert "64" in checks[0].note


def test_t3_5_notes_skipped_triangular_sizes():
    (check,) = verify("T3.5", ["Z8"])
    assert check.verdict == "HOLDS"
    assert "T3" in (check.note or "")


def test_verify_accepts_env_limits():
    env = VerifyEnv(limit=540_000)
    (check,) = verify("T3.5", ["Z9[w]"], env)
    assert check.verdict == "HOLDS"  # includes the order-531441 T2 scan


def test_criterion_mismatch_raised_on_corrupt_base():
    from pclean.errors import CriterionMismatch
    from pclean.matrices import Matrix2, classify_pclean_2x2

    bad = _corrupted_z4(2, 2, 2, "Z4c_222b")
    with pytest.raises(CriterionMismatch):
        for idx in range(bad.order**4 // 16):  # scan until the criteria split
            A = Matrix2(bad, idx // 4, idx % 4, 0, 2)
            classify_pclean_2x2(A)


def test_ring_too_large_guard_for_unit_enumeration():
    from pclean.errors import RingTooLarge

    big = build_ring("T2(Z9[w])", limit=540_000)
    with pytest.raises(RingTooLarge):
        big.unit_mask
