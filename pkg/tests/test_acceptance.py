"""Acceptance criteria. Each test prints one PASS/FAIL line."""
import os
import random
import subprocess
import sys
import time
from fractions import Fraction

import pytest

from _points import random_point
from rootstrata.oracle import (OracleConfig, oracle_all_closed,
                               oracle_elliptic, oracle_trig)
from rootstrata.root_datum import build_datum, build_general_linear
from rootstrata.strata import (EllipticPoint, TorusPoint,
                               central_count_formula, component_group_order,
                               count_central_points, full_report,
                               sigma_of_point, _stabilizer_indices)
from rootstrata.subsystems import (ClosedSubset, closure, enumerate_elliptic,
                                   enumerate_trigonometric)
from rootstrata.weyl import generate_weyl


def report_line(capsys, number, ok, detail):
    with capsys.disabled():
        print(f"\nCRITERION {number}: {'PASS' if ok else 'FAIL'} - {detail}")


def subset(d, coefs):
    out = []
    for c in coefs:
        i = d.coefficient_index[tuple(c)]
        out += [i, d.negation[i]]
    return ClosedSubset(d, tuple(sorted(out)))


def check(cond, failures, msg):
    if not cond:
        failures.append(msg)


def test_criterion_1_g2_elliptic(capsys):
    t0 = time.perf_counter()
    d = build_datum("G2")
    w = generate_weyl(d)
    ell = enumerate_elliptic(d, w)
    reps = [full_report(d, w, c) for c in ell]
    elapsed = time.perf_counter() - t0
    failures = []
    labels = sorted(r.decorated_label for r in reps)
    expected = sorted(["G2", "A2(long)", "A1(long)", "A1(short)", "∅"])
    check(len(ell) == 5, failures, f"{len(ell)} classes, expected exactly 5")
    check(labels == expected, failures, f"labels {labels}")
    a2 = [r for r in reps if r.cartan_label == "A2"]
    check(len(a2) == 1 and a2[0].center.invariant_factors == (3,)
          and a2[0].is_isolated, failures, "A2 class center/isolation")
    check(elapsed < 1.0, failures, f"runtime {elapsed:.2f}s")
    report_line(capsys, 1, not failures,
                "; ".join(failures) or f"5 classes in {elapsed:.2f}s")
    assert not failures, failures


C3_S1 = [(0, 1, 0), (0, 0, 1), (0, 1, 1), (0, 2, 1), (2, 2, 1)]
C3_S2 = [(0, 0, 1), (1, 0, 0), (2, 2, 1), (1, 2, 1), (0, 2, 1)]
C3_S3 = [(0, 0, 1), (0, 2, 1), (2, 2, 1)]


def test_criterion_2_c3(capsys):
    t0 = time.perf_counter()
    d = build_datum("C3")
    w = generate_weyl(d)
    s1, s2, s3 = (subset(d, s) for s in (C3_S1, C3_S2, C3_S3))
    failures = []
    check(w.canonical_form(s1.indices) == w.canonical_form(s2.indices),
          failures, "Sigma1 and Sigma2 not conjugate")
    r1, r3 = full_report(d, w, s1), full_report(d, w, s3)
    check(r1.relative_order == 1, failures, f"W_rel(S1)={r1.relative_order}")
    check(r3.relative_order == 6, failures, f"W_rel(S3)={r3.relative_order}")
    check(r3.component_permutation_image == 6, failures,
          f"component image {r3.component_permutation_image}")
    check(r3.pi1 == (), failures, f"pi1(S3)={r3.pi1}")
    iso = {c.indices for c in enumerate_elliptic(d, w)
           if full_report(d, w, c).is_isolated}
    want = {tuple(range(d.n_roots)), w.canonical_form(s1.indices),
            w.canonical_form(s3.indices)}
    check(iso == want, failures, "isolated elliptic classes differ")
    elapsed = time.perf_counter() - t0
    check(elapsed < 1.0, failures, f"runtime {elapsed:.2f}s")
    report_line(capsys, 2, not failures,
                "; ".join(failures) or f"all checks in {elapsed:.2f}s")
    assert not failures, failures


D4_A1_4 = [(1, 0, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1), (1, 2, 1, 1)]


def test_criterion_3_d4(capsys):
    t0 = time.perf_counter()
    d = build_datum("D4")
    w = generate_weyl(d)
    failures = []
    amb = full_report(d, w, ClosedSubset(d, tuple(range(d.n_roots))))
    check(amb.center.invariant_factors == (2, 2), failures, "ambient center")
    r = full_report(d, w, subset(d, D4_A1_4))
    check(r.center.invariant_factors == (2, 2, 2), failures, "A1^4 center")
    check(r.pi1 == (2,), failures, f"pi1 {r.pi1}")
    check(r.relative_order == 4 and r.relative_abelian_invariants == (2, 2),
          failures, "relative group")
    n_iso = sum(full_report(d, w, c).is_isolated
                for c in enumerate_elliptic(d, w))
    check(n_iso == 2, failures, f"{n_iso} isolated classes")
    p = EllipticPoint(TorusPoint.parse("0,1/2,0,0"),
                      TorusPoint.parse("0,0,0,1/2"))
    check(sigma_of_point(d, p).indices == (), failures, "Sigma_p nonempty")
    check(component_group_order(d, w, p) >= 2, failures, "connected Aut")
    elapsed = time.perf_counter() - t0
    check(elapsed < 2.0, failures, f"runtime {elapsed:.2f}s")
    report_line(capsys, 3, not failures,
                "; ".join(failures) or f"all checks in {elapsed:.2f}s")
    assert not failures, failures


def test_criterion_4_rank_one(capsys):
    failures = []
    pgl2 = build_datum("A1", "adjoint")
    wp = generate_weyl(pgl2)
    half = [Fraction(0), Fraction(1, 2)]
    for a in half:
        for b in half:
            if a or b:
                p = EllipticPoint(TorusPoint.of([a]), TorusPoint.of([b]))
                check(component_group_order(pgl2, wp, p) == 2, failures,
                      f"PGL2 at {p}")
    sl2 = build_datum("A1")
    ws = generate_weyl(sl2)
    coords = sorted({Fraction(k, n) for n in range(1, 13) for k in range(n)})
    for a in coords:
        for b in coords:
            p = EllipticPoint(TorusPoint.of([a]), TorusPoint.of([b]))
            if component_group_order(sl2, ws, p) != 1:
                failures.append(f"SL2 at {p}")
    gl2 = build_general_linear(2)
    wg = generate_weyl(gl2)
    rng = random.Random(4)
    for _ in range(500):
        p = random_point(rng, 2)
        if component_group_order(gl2, wg, p) != 1:
            failures.append(f"GL2 at {p}")
    report_line(capsys, 4, not failures, "; ".join(failures[:3]) or
                f"PGL2 order 2, SL2 order 1 on {len(coords) ** 2} points, "
                "GL2 order 1 on 500 samples")
    assert not failures, failures[:5]


def test_criterion_5_oracle(capsys):
    t0 = time.perf_counter()
    failures = []
    cfg = OracleConfig(max_denominator=12)
    for name in ["A1", "A2", "B2", "G2"]:
        d = build_datum(name)
        w = generate_weyl(d)
        trig = [c.indices for c in enumerate_trigonometric(d, w)]
        ell = [c.indices for c in enumerate_elliptic(d, w)]
        check(trig == [c.indices for c in oracle_trig(d, cfg)], failures,
              f"{name} trigonometric")
        check(ell == [c.indices for c in oracle_elliptic(d, cfg)], failures,
              f"{name} elliptic")
        closed = {c.indices for c in oracle_all_closed(d)}
        check(set(trig) <= closed and set(ell) <= closed, failures,
              f"{name} not inside all closed")
    elapsed = time.perf_counter() - t0
    check(elapsed < 30.0, failures, f"runtime {elapsed:.2f}s")
    report_line(capsys, 5, not failures,
                "; ".join(failures) or f"A1, A2, B2, G2 match in {elapsed:.2f}s")
    assert not failures, failures


CASES = 1000


@pytest.mark.parametrize("name", ["A2", "B2", "C3", "D4"])
def test_criterion_6_properties(capsys, name):
    d = build_datum(name)
    w = generate_weyl(d)
    ell = enumerate_elliptic(d, w)
    base = {c.indices: full_report(d, w, c) for c in ell}
    rng = random.Random(hash(name) % 1000 + 17)
    failures = []
    for case in range(CASES):
        # (i) stabilizer sandwich
        p = random_point(rng, d.rank)
        sp = sigma_of_point(d, p)
        stab = set(_stabilizer_indices(w, p))
        wsig = set(w.reflection_subgroup_indices(sp.indices))
        norm = set(w.stabilizer_indices(sp.indices))
        if not wsig <= stab <= norm:
            failures.append(f"(i) case {case}")
        # (iv) component group order divides the relative order
        if (len(norm) // len(wsig)) % (len(stab) // len(wsig)):
            failures.append(f"(iv) case {case}")
        # (ii) closure is extensive and idempotent
        s = rng.sample(range(d.n_roots), rng.randint(0, min(5, d.n_roots)))
        c = closure(d, s)
        if not (set(s) <= set(c.indices) and closure(d, c.indices) == c):
            failures.append(f"(ii) case {case}")
        # (iii) W-invariance of the report
        cls = rng.choice(ell)
        k = rng.randrange(w.order)
        moved = ClosedSubset(d, w.act_on_set(k, cls.indices))
        if full_report(d, w, moved) != base[cls.indices]:
            failures.append(f"(iii) case {case}")
        # (v) brute-force count against the invariant-factor formula
        n = rng.randint(1, 6 if d.rank <= 3 else 4)
        got = count_central_points(d, w, cls, n)
        want = central_count_formula(base[cls.indices].center, n)
        if got.central_count != want:
            failures.append(f"(v) case {case}: N={n}")
    report_line(capsys, f"6[{name}]", not failures,
                "; ".join(failures[:3]) or f"{CASES} cases, zero failures")
    assert not failures, failures[:5]


def test_criterion_7_determinism(capsys):
    failures = []
    invocations = [
        ["enumerate", "--type", "D4", "--case", "elliptic", "--json"],
        ["report", "--type", "C3", "--subset", "0,0,1;0,2,1;2,2,1", "--json"],
        ["point", "--type", "D4", "--x1", "0,1/2,0,0", "--x2", "0,0,0,1/2",
         "--json"],
        ["count", "--type", "G2", "--subset", "0,1;3,1;3,2", "--modulus", "3",
         "--json"],
    ]
    for argv in invocations:
        outs = []
        for seed in ("1", "2", "3"):
            env = dict(os.environ, PYTHONHASHSEED=seed)
            res = subprocess.run([sys.executable, "-m", "rootstrata.cli", *argv],
                                 capture_output=True, env=env)
            outs.append((res.returncode, res.stdout))
        if len(set(outs)) != 1 or outs[0][0] != 0:
            failures.append(" ".join(argv[:3]))
    report_line(capsys, 7, not failures, "; ".join(failures) or
                f"{len(invocations)} commands byte-identical across 3 runs")
    assert not failures, failures
