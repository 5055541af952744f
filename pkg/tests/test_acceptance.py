"""Acceptance gate: one PASS/FAIL line per criterion, printed in the summary.

All comparisons are exact integer or field-element equalities; the only
tolerances are the wall-clock limits below.
"""

import itertools
import time

import numpy as np
import pytest

from conftest import RESULT_LINES
from gf2cdiff import circle, engine, verifier as V
from gf2cdiff.field import FieldElement, TowerView, make_field

APCN_LIMIT_S = 5.0
SPECTRUM_N4_LIMIT_S = 60.0
PROPS_LIMIT_S = 120.0
CONGRUENCE_LIMIT_S = 1.0

_records: list = []


def report(num, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {num}: {detail}"
    RESULT_LINES.append(line)
    print(line)
    return ok


def test_1_apcn_exhaustive():
    start = time.perf_counter()
    reps = [engine.verify_apcn(n) for n in (1, 2)]
    dt = time.perf_counter() - start
    ok = (all(r.passed and r.exhaustive for r in reps)
          and [r.cases_checked for r in reps] == [4, 16] and dt < APCN_LIMIT_S)
    assert report(1, ok, f"APcN at n=1,2 over 4+16 c, 0 counterexamples, {dt:.2f}s < {APCN_LIMIT_S}s")


def test_2_spectrum_closed_form():
    fails = []
    timings = {}
    for n in (1, 2, 3, 4):
        _, omega = engine.spectrum_formula(n)
        F = engine.apcn_power_function(n)
        start = time.perf_counter()
        recs = engine.power_spectra(F, circle.admissible_c(TowerView(F.field, n)), threads=1)
        timings[n] = time.perf_counter() - start
        _records.extend(recs)
        fails += [(n, r.c) for r in recs if r.omega != omega or r.delta != 2]
    assert engine.spectrum_formula(1)[1] == (6, 4, 6)
    assert engine.spectrum_formula(2)[1] == (120, 16, 120)
    assert engine.spectrum_formula(3)[1] == (2016, 64, 2016)
    ok = not fails and timings[4] < SPECTRUM_N4_LIMIT_S
    assert report(2, ok, f"spectra n=1..4 equal ((q^4-q^2)/2, q^2, (q^4-q^2)/2); "
                         f"n=4 (256 c) in {timings[4]:.2f}s < {SPECTRUM_N4_LIMIT_S}s; "
                         f"{len(fails)} mismatches")


PROP_IDS = ["P1a", "P1b", "P2", "P3", "P4", "P5", "P6", "P7"]


@pytest.mark.xfail(strict=True, reason="P4 stated for all v fails when Tr(v) != 0")
def test_3_identity_suite():
    start = time.perf_counter()
    results = {(pid, n): V.run_check(pid, n) for pid in PROP_IDS for n in (1, 2)}
    dt = time.perf_counter() - start
    bad = {k: len(r.counterexamples) for k, r in results.items() if not r.passed}
    exhaustive = all(r.exhaustive for r in results.values())
    ok = not bad and exhaustive and dt < PROPS_LIMIT_S
    detail = (f"P1..P7 at n=1,2, all c, exhaustive={exhaustive}, {dt:.2f}s; "
              + ("0 counterexamples" if not bad else
                 "counterexamples " + ", ".join(f"{p}@n={n}: {k}" for (p, n), k in bad.items())))
    assert report(3, ok, detail)


def test_3_supplement_p4_on_trace_zero_v():
    # the APcN count only ever uses v = b^q + b^(q^2), and those have Tr(v) = 0
    reps = [V.run_check("P4", n, domain="trace_zero") for n in (1, 2)]
    others = [V.run_check(pid, n) for pid in PROP_IDS if pid != "P4" for n in (1, 2)]
    ok = all(r.passed and r.exhaustive for r in reps + others)
    RESULT_LINES.append(
        f"[{'PASS' if ok else 'FAIL'}] criterion 3 (supplement, not a substitute): "
        f"P4 restricted to Tr(v)=0 and P1..P3, P5..P7 pass at n=1,2")
    assert ok


def test_4_coefficient_identity():
    reps = [V.run_check("P5", n, mode="symbolic") for n in (1, 2)]
    cases = [r.cases_checked for r in reps]
    ok = all(r.passed for r in reps) and cases == [16 * 4, 256 * 16]
    assert report(4, ok, f"G0..G4 = factor product coefficients, {cases[0]}+{cases[1]} (b, c) cases")


def test_5_congruence():
    start = time.perf_counter()
    reps = [V.congruence_check(n) for n in range(1, 17)]
    dt = time.perf_counter() - start
    ok = all(r.passed for r in reps) and dt < CONGRUENCE_LIMIT_S
    assert report(5, ok, f"gcd(d, q^4-1)=1 and d*q^2 congruence for n=1..16 in {dt:.3f}s")


def test_6_twisted_equation_spectrum():
    reps = [V.twisted_spectrum_match(n, c) for n in (1, 2) for c in V.admissible(n)]
    ok = len(reps) == 20 and all(r.passed for r in reps)
    assert report(6, ok, "twisted-equation count histogram equals spectrum for all 20 c at n=1,2")


def test_7_omega1_cross_check():
    bad = []
    for n in (1, 2, 3):
        F = engine.apcn_power_function(n)
        cs = V.admissible(n)
        for c, rec in zip(cs, engine.power_spectra(F, cs)):
            t = V.omega1_trace_count(n, c)
            if not t == (1 << 2 * n) == rec.omega[1]:
                bad.append((n, c, t, rec.omega[1]))
    assert report(7, not bad, f"trace count = q^2 = omega_1 for all c at n=1..3; {len(bad)} mismatches")


def test_8_unit_circle_quadratic_solver():
    mismatches = 0
    pairs = 0
    for m in (2, 3):
        f = make_field(2 * m)
        Q = 1 << m
        xs = f.elements()
        circ = f.pow(xs, Q + 1) == 1
        x2 = f.mul(xs, xs)
        for a, b in itertools.product(range(1, f.size), repeat=2):
            brute = int(np.count_nonzero(((x2 ^ f.mul(a, xs) ^ b) == 0) & circ))
            r = circle.unit_circle_quadratic(FieldElement(a, f), FieldElement(b, f), m)
            predicted = 0 if r.no_roots_in_field else r.predicted_count
            mismatches += (r.count != brute) + (predicted != brute)
            pairs += 1
    ok = mismatches == 0 and pairs == 15 * 15 + 63 * 63
    assert report(8, ok, f"classification = brute force on all {pairs} (a, b) in GF(16), GF(64)")


def test_9_property_suites():
    failures = []
    for m in range(1, 33):
        f = make_field(m)
        rng = np.random.default_rng(m)
        a, b, c = (rng.integers(0, f.size, 100_000, dtype=np.int64) for _ in range(3))
        mul = f.mul
        if not (np.array_equal(mul(a, b), mul(b, a))
                and np.array_equal(mul(mul(a, b), c), mul(a, mul(b, c)))
                and np.array_equal(mul(a, b ^ c), mul(a, b) ^ mul(a, c))
                and np.all(mul(a[a != 0], f.inv(a[a != 0])) == 1)):
            failures.append(f"axioms m={m}")
    for n in (1, 2, 3):
        f = make_field(4 * n)
        x = f.elements()
        if not np.array_equal(f.trace(f.trace(x, n), 1, n), f.trace(x)):
            failures.append(f"trace transitivity n={n}")
        tower = TowerView(f, n)
        for level in (1, 2):
            Q = 1 << (n * level)
            mu = circle.unit_circle(tower, level)
            base = x[(f.pow(x, Q) == x) & (x != 0)]
            prods = f.mul(mu[:, None], base[None, :]).ravel()
            dom = x[f.in_subfield(x, 2 * level * n) & (x != 0)]
            if np.bincount(prods, minlength=f.size)[dom].max() != 1:
                failures.append(f"polar uniqueness n={n} level={level}")
            for v in dom:
                lam, y = circle.polar_decompose(FieldElement(int(v), f), tower, level)
                if f.mul(lam.value, y.value) != v or f.pow(lam.value, Q + 1) != 1 \
                        or f.pow(y.value, Q) != y.value:
                    failures.append(f"polar round trip {v:#x}")
                    break
    recs = _records or [r for n in (1, 2, 3) for r in engine.power_spectra(
        engine.apcn_power_function(n), V.admissible(n))]
    bad_mass = [r.c for r in recs if not r.check_invariants()]
    if bad_mass:
        failures.append(f"mass invariants on {len(bad_mass)} records")
    detail = (f"axioms (1e5 triples, m=1..32), trace transitivity and polar round trip/"
              f"uniqueness (4n<=12), mass invariants on {len(recs)} records; "
              f"{len(failures)} failures {failures[:3]}")
    assert report(9, not failures, detail)
