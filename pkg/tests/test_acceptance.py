"""Acceptance criteria, one test per criterion.

Each test appends a PASS/FAIL line to ``RESULTS``; the lines are printed in
the terminal summary (and directly when run as a script).
"""
import json
import subprocess
import sys
import time
from pathlib import Path

import pytest

from boroczky.arrangement import boroczky_lines, dual_hesse, expected_triple_points, incidence, triple_points
from boroczky.cli import main
from boroczky.groebner import free_resolution
from boroczky.ideals import (bocci_harbourne, containment_direct, ghm_check, hilbert_burch, product_of_lines,
                             radical_ideal, seceleanu_check, symbolic_power, validate_power_resolutions)
from boroczky.polyring import vanishes_to_order

RESULTS: list[str] = []


def record(k, title, checks: dict):
    ok = all(checks.values())
    bad = [name for name, v in checks.items() if not v]
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {k}: {title}"
    if bad:
        line += " -- failed: " + ", ".join(bad)
    RESULTS.append(line)
    print(line)
    assert ok, line


def test_criterion_1_triple_point_census():
    t0 = time.perf_counter()
    counts = [len(triple_points(boroczky_lines(n))) for n in range(4, 13)]
    doubles = incidence(boroczky_lines(12)).census().get(2)
    elapsed = time.perf_counter() - t0
    record(1, f"census {counts}, B_12 doubles {doubles}, {elapsed:.2f}s", {
        "counts": counts == [1, 2, 4, 5, 7, 10, 12, 15, 19],
        "formula": counts == [expected_triple_points(n) for n in range(4, 13)],
        "nine doubles": doubles == 9,
        "under 5 s": elapsed < 5,
    })


def test_criterion_2_main_theorem_table(capsys):
    t0 = time.perf_counter()
    code = main(["report", "4..12", "--json"])
    out = capsys.readouterr().out
    elapsed = time.perf_counter() - t0
    rows = json.loads(out)
    direct = {r["n"]: r["methods"]["direct"]["result"] for r in rows}
    record(2, f"direct verdicts {direct}, {elapsed:.1f}s", {
        "exit 0": code == 0,
        "holds 4..11": all(direct[n] == "holds" for n in range(4, 12)),
        "fails 12": direct[12] == "fails",
        "final verdicts": [r["holds"] for r in rows] == [True] * 8 + [False],
        "under 30 min": elapsed < 1800,
    })


def test_criterion_3_n10(cache):
    I = cache.radical(10)
    A = hilbert_burch(I)
    ghm = ghm_check(A)
    sec = seceleanu_check(I, A)
    bh = bocci_harbourne(I, cache.symbolic(10, 3))
    direct = containment_direct(cache.symbolic(10, 3), I ** 2)
    record(3, f"gens {I.generator_degrees()}, HB degrees ({A.d0},{A.d1}), GHM {ghm.evidence['entry_gens']}, "
              f"Seceleanu {sec.result}, BH {bh.result}, direct {direct.result}", {
        "three quartics": I.generator_degrees() == [4, 4, 4],
        "quadratic HB entries": (A.d0, A.d1) == (2, 2) and all(e.degree() == 2 for e in A.entries() if e),
        "a criterion proves": bool(ghm.holds or sec.holds or bh.holds),
        "direct concurs": direct.holds is True,
    })


def test_criterion_4_n11(cache):
    I = cache.radical(11)
    res = free_resolution(I ** 2)
    I3 = cache.symbolic(11, 3)
    bh = bocci_harbourne(I, I3, res=res)
    shapes = res.shapes()
    record(4, f"gens {I.generator_degrees()}, reg(I^2) {res.regularity()}, alpha {I3.alpha()}, "
              f"BH {bh.result}, Betti {shapes}", {
        "generator degrees": I.generator_degrees() == [4, 5, 5, 5],
        "reg 11": res.regularity() == 11,
        "alpha 11": I3.alpha() == 11,
        "BH fires": bh.holds is True,
        "Betti table": shapes == [{8: 1, 9: 3, 10: 6}, {10: 2, 11: 7, 12: 3}, {12: 1, 13: 2}],
    })


def test_criterion_5_n12_witness(cache):
    arr = boroczky_lines(12)
    T = triple_points(arr)
    prod = product_of_lines(arr)
    jets = all(vanishes_to_order(prod, p.coords, 3) for p in T)
    nf = (cache.radical(12) ** 2).normal_form(prod)
    record(5, f"product of 12 lines: order-3 jets vanish at {len(T)} points = {jets}, "
              f"normal form mod GB(I^2) has {len(nf)} terms", {
        "19 points": len(T) == 19,
        "jets vanish": jets,
        "in symbolic cube": cache.symbolic(12, 3).contains(prod),
        "nonzero normal form": bool(nf),
    })


def test_criterion_6_dual_hesse():
    arr = dual_hesse()
    T = triple_points(arr)
    I = radical_ideal(T)
    v = containment_direct(symbolic_power(T, 3), I ** 2)
    record(6, f"dual-Hesse: {len(T)} triple points, census {incidence(arr).census()}, direct {v.result}", {
        "12 triple points": len(T) == 12,
        "no double points": incidence(arr).census() == {3: 12},
        "direct fails": v.holds is False,
    })


def test_criterion_7_resolution_shapes(cache):
    A = hilbert_burch(cache.radical(10))
    rep = validate_power_resolutions(A)
    record(7, f"I^2 {rep['I2']}, I^3 {rep['I3']}, X and Y validated", {
        "I^2 shape": rep["I2"] == [{8: 6}, {10: 6}, {12: 1}],
        "I^3 shape": rep["I3"] == [{12: 10}, {14: 12}, {16: 3}],
    })


PROPERTY_SELECTION = " or ".join([
    "field_laws", "galois_maps_are_automorphisms", "ring_laws", "idempotent", "random_resolutions_are_exact",
    "resolutions_exact_on_fixtures", "containment_sandwich", "criterion_soundness",
    "galois_stability", "parallel_and_sequential", "orbit_grouping", "descent_is_faithful",
])


def test_criterion_8_property_suite():
    here = Path(__file__).parent
    files = [str(here / f) for f in ("test_exact.py", "test_polyring.py", "test_groebner.py",
                                     "test_arrangement.py", "test_ideals.py")]
    t0 = time.perf_counter()
    r = subprocess.run([sys.executable, "-m", "pytest", "-q", "-p", "no:cacheprovider", "-k", PROPERTY_SELECTION]
                       + files, capture_output=True, text=True, cwd=here.parent)
    elapsed = time.perf_counter() - t0
    summary = r.stdout.strip().splitlines()[-1] if r.stdout.strip() else r.stderr[-200:]
    record(8, f"property suite: {summary} in {elapsed:.1f}s", {
        "green": r.returncode == 0,
        "under 2 min": elapsed < 120,
    })


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s"]))
