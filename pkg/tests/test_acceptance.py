"""Acceptance criteria 1-13, one test each.

Every test prints one ``criterion N: PASS|FAIL`` line (collected again in
the pytest terminal summary) and then asserts the same condition.
"""

from __future__ import annotations

import time

import numpy as np

from modisom import grpalg, linalg, mip
from modisom.catalog import standard_instances
from modisom.pcgroup import (
    agemo,
    burnside_basis,
    center,
    consistency_check,
    frattini,
    gamma,
    nilpotency_class,
    relabel,
    subgroup_frattini,
    verify_power_commutator_identity,
)

P3_5 = 3**5


def _upto(limit):
    return [e for e in standard_instances() if e.presentation.order <= limit]


def _report(record, n, ok, detail, seconds, limit=None, timed="time"):
    timing = f"{timed} {seconds:.1f}s" + (f" (limit {limit}s)" if limit else "")
    ok = ok and (limit is None or seconds <= limit)
    record(n, ok, f"{detail}; {timing}")
    return ok


def test_criterion_01_consistency(acceptance_line):
    t0 = time.perf_counter()
    bad, modes = [], {}
    for e in standard_instances():
        G = e.presentation
        rep = consistency_check(G, samples=100_000, exhaustive_max=P3_5)
        want = "exhaustive" if G.order <= P3_5 else "sampled"
        modes[want] = modes.get(want, 0) + 1
        if not rep.consistent or rep.mode != want:
            bad.append(e.name)
    ok = _report(acceptance_line, 1, not bad, f"{modes} groups, failures {bad}", time.perf_counter() - t0, 60)
    assert ok


def test_criterion_02_power_commutator_identity(acceptance_line):
    t0 = time.perf_counter()
    violations, checked = 0, 0
    for e in standard_instances():
        G = e.presentation
        limit = P3_5 if G.p == 3 else 5**4
        if G.order > limit or nilpotency_class(G) > 3:
            continue
        r = verify_power_commutator_identity(G, exhaustive_max=limit)
        assert r.mode == "exhaustive"
        violations += r.violations
        checked += 1
    ok = _report(acceptance_line, 2, violations == 0 and checked > 0,
                 f"{checked} groups exhaustively, {violations} violations", time.perf_counter() - t0, 120)
    assert ok


def test_criterion_03_agemo_central(acceptance_line):
    t0 = time.perf_counter()
    bad, checked = [], 0
    for e in standard_instances():
        G = e.presentation
        if not mip.theorem_kernel(G).is_trivial:
            continue
        checked += 1
        if not agemo(G) <= center(G):
            bad.append(e.name)
    ok = _report(acceptance_line, 3, not bad and checked > 0, f"{checked} groups, violations {bad}",
                 time.perf_counter() - t0)
    assert ok


def test_criterion_04_frattini_from_algebra(acceptance_line):
    t0 = time.perf_counter()
    groups = _upto(P3_5)
    bad = [e.name for e in groups
           if grpalg.frattini_from_algebra(grpalg.GroupAlgebra(e.presentation)) != frattini(e.presentation)]
    ok = _report(acceptance_line, 4, not bad, f"{len(groups)} groups, mismatches {bad}", time.perf_counter() - t0)
    assert ok


def test_criterion_05_small_group_algebra_kernel(acceptance_line):
    t0 = time.perf_counter()
    groups = _upto(P3_5)
    bad = []
    dim_heis = None
    for e in groups:
        G = e.presentation
        S = grpalg.small_group_algebra(grpalg.GroupAlgebra(G))
        if grpalg.group_image(S).kernel != subgroup_frattini(gamma(G, 2)):
            bad.append(e.name)
        if e.name == "heisenberg_3":
            dim_heis = S.dim
    ok = _report(acceptance_line, 5, not bad and dim_heis == 10,
                 f"{len(groups)} groups, mismatches {bad}, dim S(Heisenberg 27) = {dim_heis}",
                 time.perf_counter() - t0)
    assert ok


def _left_ideal_generated(A, X):
    """FG * X: span of g x over all group elements g."""
    blocks = [A.left_mul_gen(g, X.basis) for g in range(A.dim)] if X.dim else []
    return linalg.span(A.p, A.dim, np.vstack(blocks)) if blocks else linalg.zero_subspace(A.p, A.dim)


def test_criterion_06_commutator_ideal_inclusions(acceptance_line):
    t0 = time.perf_counter()
    groups = _upto(3**4)
    bad = []
    for e in groups:
        A = grpalg.GroupAlgebra(e.presentation)
        K = grpalg.commutator_subspace(A)
        IG2 = grpalg.relative_augmentation_ideal(A, gamma(A.G, 2))
        I2 = grpalg.augmentation_times(A, grpalg.augmentation_ideal(A))
        if not (K <= IG2 and IG2 <= I2 and _left_ideal_generated(A, K) == IG2):
            bad.append(e.name)
    ok = _report(acceptance_line, 6, not bad, f"{len(groups)} groups, failures {bad}", time.perf_counter() - t0)
    assert ok


def test_criterion_07_center_decomposition(acceptance_line):
    t0 = time.perf_counter()
    groups = _upto(3**4)
    bad = []
    for e in groups:
        A = grpalg.GroupAlgebra(e.presentation)
        Z = grpalg.algebra_center(A)
        rhs = linalg.subspace_sum(grpalg.group_span(A, center(A.G)),
                                  linalg.subspace_intersect(Z, grpalg.commutator_subspace(A)))
        if Z != rhs:
            bad.append(e.name)
    ok = _report(acceptance_line, 7, not bad, f"{len(groups)} groups, failures {bad}", time.perf_counter() - t0)
    assert ok


def test_criterion_08_d_two_ways(acceptance_line):
    t0 = time.perf_counter()
    groups = _upto(P3_5)
    bad = [e.name for e in groups
           if mip.fingerprint(e.presentation).d != grpalg.compute_d_algebra(grpalg.GroupAlgebra(e.presentation))]
    ok = _report(acceptance_line, 8, not bad, f"{len(groups)} groups, mismatches {bad}", time.perf_counter() - t0)
    assert ok


def test_criterion_09_unit_group(acceptance_line):
    t0 = time.perf_counter()
    rows = []
    ok_all = True
    for e in [g for g in standard_instances() if g.name in ("heisenberg_3", "modular_3")]:
        G = e.presentation
        S = grpalg.small_group_algebra(grpalg.GroupAlgebra(G))
        basis = burnside_basis(G)
        img = grpalg.group_image(S)
        gbar = [S.image(g) for g in basis]
        gens = gbar + [a for _, a in grpalg.a_subgroup_generators(S, basis)]
        V = grpalg.unit_closure(S, gens)
        want = G.p ** (S.dim - 1)
        derived = grpalg.derived_unit_subgroup(S, gens).code_set()
        g2bar = set(grpalg.encode(G.p, img.images[gamma(G, 2).element_indices()]).tolist())
        ok = V.order == want and derived == g2bar
        ok_all &= ok
        rows.append(f"{e.name}: |V| = {V.order} (p^(dim S - 1) = {want}), gamma_2 match {derived == g2bar}")
    ok = _report(acceptance_line, 9, ok_all and len(rows) == 2, "; ".join(rows), time.perf_counter() - t0, 120)
    assert ok


def _theorem_b_groups():
    return [e for e in _upto(P3_5) if mip.check_theorem_b_hypotheses(e.presentation).holds]


def test_criterion_10_presentation_round_trip(acceptance_line):
    t0 = time.perf_counter()
    groups = _theorem_b_groups()
    bad = []
    for e in groups:
        ex = mip.extract_presentation(e.presentation)
        r = ex.rdata
        rank = linalg.rank(r.beta_matrix(), r.p) if r.m else 0
        if not mip.verify_relations(r, ex.quotient, ex.witnesses) or rank != r.m:
            bad.append(e.name)
    ok = _report(acceptance_line, 10, not bad and groups, f"{len(groups)} groups, failures {bad}",
                 time.perf_counter() - t0)
    assert ok


def test_criterion_11_theorem_b_relabeled(acceptance_line):
    groups = _theorem_b_groups()
    bad, slowest = [], 0.0
    for e in groups:
        t0 = time.perf_counter()
        G = e.presentation
        H, _ = relabel(G, seed=0)
        v = mip.theorem_b_pipeline(G, H)
        dt = time.perf_counter() - t0
        slowest = max(slowest, dt)
        if v.verdict != "isomorphic" or not v.witness or not v.witness["images"] or dt > 300:
            bad.append(e.name)
    ok = _report(acceptance_line, 11, not bad and groups, f"{len(groups)} pairs, failures {bad}",
                 slowest, 300, timed="slowest pair")
    assert ok


def test_criterion_12_order_5_7_examples(acceptance_line):
    t0 = time.perf_counter()
    five = [e for e in standard_instances() if e.name.startswith("G5_7_")]
    fps = {e.name: mip.fingerprint(e.presentation) for e in five}
    want = (5**7, 3, (25, 25), 125, 3, 2)
    facts = {n: (f.order, f.generator_rank, f.center_invariants, f.center_index, f.nilpotency_class, f.d)
             for n, f in fps.items()}
    bad = [n for n, v in facts.items() if v != want]
    names = sorted(fps)
    verdicts = [mip.compare_fingerprints(fps[a], fps[b]).verdict
                for i, a in enumerate(names) for b in names[i + 1:]]
    ok = len(five) == 3 and not bad and all(v == "indistinguishable" for v in verdicts)
    ok = _report(acceptance_line, 12, ok, f"fact mismatches {bad}, pairwise compare {verdicts}",
                 time.perf_counter() - t0, 600)
    assert ok


def test_criterion_13_center_index_p3(acceptance_line):
    t0 = time.perf_counter()
    bad, checked = [], 0
    for e in standard_instances():
        c = mip.center_index_p3_checks(e.presentation)
        if c.applicable:
            checked += 1
            if not c.holds:
                bad.append(e.name)
    ok = _report(acceptance_line, 13, not bad and checked > 0, f"{checked} groups, violations {bad}",
                 time.perf_counter() - t0)
    assert ok
