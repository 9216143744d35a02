"""Property suites over the catalog, shared by ``selftest`` and the test-suite.

Each suite returns a :class:`SuiteResult`; a suite passes when it records no
failures.  ``level="quick"`` restricts to groups of order at most 3^4 and
skips the order-5^7 groups.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from . import grpalg, linalg, mip
from .errors import InputError
from .catalog import builtin, check_expected_facts, standard_instances
from .pcgroup import (
    consistency_check,
    is_isomorphic_bruteforce,
    relabel,
    verify_power_commutator_identity,
)
from .pcgroup import subgroups as sg


@dataclass
class SuiteResult:
    name: str
    checked: int = 0
    failures: list[str] = field(default_factory=list)
    seconds: float = 0.0
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "checked": self.checked,
            "failures": self.failures,
            "notes": self.notes,
        }


def _groups(level: str, limit: int):
    cap = min(limit, 3**4) if level == "quick" else limit
    return [e for e in standard_instances() if e.presentation.order <= cap]


def suite_consistency(level="full", seed=0) -> SuiteResult:
    res = SuiteResult("consistency")
    for e in _groups(level, 5**7):
        rep = consistency_check(e.presentation, seed=seed)
        res.checked += 1
        if not rep:
            res.failures.append(f"{e.name}: {rep.mode} failure at {rep.failure}")
    return res


def suite_expected_facts(level="full", seed=0) -> SuiteResult:
    res = SuiteResult("expected_facts")
    for e in _groups(level, 5**7):
        for fld, want, got, ok in check_expected_facts(e):
            res.checked += 1
            if not ok:
                res.failures.append(f"{e.name}: {fld} expected {want}, got {got}")
    return res


def suite_power_commutator_identity(level="full", seed=0) -> SuiteResult:
    res = SuiteResult("power_commutator_identity")
    for e in _groups(level, 5**4):
        G = e.presentation
        if (G.p == 3 and G.order > 3**5) or sg.nilpotency_class(G) > 3:
            continue
        chk = verify_power_commutator_identity(G, seed=seed, exhaustive_max=max(3**5, 5**4))
        res.checked += chk.pairs
        if not chk:
            res.failures.append(f"{e.name}: {chk.violations} violations")
    return res


def suite_agemo_central(level="full", seed=0) -> SuiteResult:
    res = SuiteResult("agemo_central")
    for e in _groups(level, 5**7):
        ok = mip.check_agemo_central(e.presentation)
        if ok is None:
            continue
        res.checked += 1
        if not ok:
            res.failures.append(e.name)
    return res


def _algebras(level, limit):
    for e in _groups(level, limit):
        yield e, grpalg.GroupAlgebra(e.presentation)


def suite_frattini_from_algebra(level="full", seed=0) -> SuiteResult:
    res = SuiteResult("frattini_from_algebra")
    for e, A in _algebras(level, 3**5):
        res.checked += 1
        if grpalg.frattini_from_algebra(A) != sg.frattini(e.presentation):
            res.failures.append(e.name)
    return res


def suite_small_group_algebra(level="full", seed=0) -> SuiteResult:
    res = SuiteResult("small_group_algebra_kernel")
    for e, A in _algebras(level, 3**5):
        S = grpalg.small_group_algebra(A)
        img = grpalg.group_image(S, "S")
        res.checked += 1
        if not img.kernel_matches:
            res.failures.append(f"{e.name}: kernel {img.kernel.order} vs expected {img.expected_kernel.order}")
        S0 = grpalg.s0_algebra(A)
        if not grpalg.group_image(S0, "S0").kernel_matches:
            res.failures.append(f"{e.name}: S0 kernel mismatch")
    A = grpalg.GroupAlgebra(builtin("heisenberg", 3).presentation)
    if grpalg.small_group_algebra(A).dim != 10:
        res.failures.append("heisenberg_3: dim S != 10")
    return res


def suite_commutator_ideals(level="full", seed=0) -> SuiteResult:
    res = SuiteResult("commutator_ideals")
    for e, A in _algebras(level, 3**4):
        G = e.presentation
        K = grpalg.commutator_subspace(A)
        rel = grpalg.relative_augmentation_ideal(A, sg.gamma(G, 2))
        aug = grpalg.augmentation_ideal(A)
        i2 = grpalg.augmentation_times(A, aug)
        full = linalg.full_space(A.p, A.dim)
        res.checked += 1
        if not (K <= rel and rel <= i2):
            res.failures.append(f"{e.name}: inclusions")
        if grpalg.ideal_product(A, full, K) != rel or grpalg.ideal_product(A, K, full) != rel:
            res.failures.append(f"{e.name}: FG K(FG) != I(gamma_2) FG")
    return res


def suite_center_decomposition(level="full", seed=0) -> SuiteResult:
    res = SuiteResult("center_decomposition")
    for e, A in _algebras(level, 3**4):
        Zfg = grpalg.algebra_center(A)
        fz = grpalg.group_span(A, sg.center(e.presentation))
        rhs = linalg.subspace_sum(fz, linalg.subspace_intersect(Zfg, grpalg.commutator_subspace(A)))
        res.checked += 1
        if rhs != Zfg:
            res.failures.append(e.name)
    return res


def suite_remark_identity(level="full", seed=0) -> SuiteResult:
    """``I(N)FG + I(gamma_2)I(G) = span(N - 1) + I(gamma_2)I(G)`` for normal N inside gamma_2."""
    res = SuiteResult("relative_ideal_identity")
    for e, A in _algebras(level, 3**4):
        G = e.presentation
        g2 = sg.gamma(G, 2)
        base = grpalg.ideal_product(A, grpalg.subgroup_augmentation(A, g2), grpalg.augmentation_ideal(A))
        for N in {s for s in sg.lower_central_series(G)[1:]} | {sg.subgroup_frattini(g2), sg.intersection(g2, sg.center(G))}:
            lhs = linalg.subspace_sum(grpalg.relative_augmentation_ideal(A, N), base)
            rhs = linalg.subspace_sum(grpalg.subgroup_augmentation(A, N), base)
            res.checked += 1
            if lhs != rhs:
                res.failures.append(f"{e.name}: N of order {N.order}")
    return res


def suite_jennings(level="full", seed=0) -> SuiteResult:
    res = SuiteResult("jennings_filtration")
    for e, A in _algebras(level, 3**4):
        chain = grpalg.ideal_power_chain(A)
        got = [A.dim - chain[0].dim] + [chain[i].dim - chain[i + 1].dim for i in range(len(chain) - 1)]
        want = grpalg.jennings_prediction(e.presentation)
        res.checked += 1
        if got != want[: len(got)] or any(want[len(got):]):
            res.failures.append(f"{e.name}: {got} vs {want}")
    return res


def suite_d_two_ways(level="full", seed=0) -> SuiteResult:
    res = SuiteResult("d_two_ways")
    for e, A in _algebras(level, 3**5):
        res.checked += 1
        a, b = mip.fingerprint(e.presentation).d, grpalg.compute_d_algebra(A)
        if a != b:
            res.failures.append(f"{e.name}: group {a}, algebra {b}")
    return res


def suite_quotient_structure(level="full", seed=0) -> SuiteResult:
    res = SuiteResult("quotient_structure_constants")
    rng = np.random.default_rng(seed)
    for e, A in _algebras(level, 3**4):
        for q in (grpalg.small_group_algebra(A), grpalg.s0_algebra(A)):
            for _ in range(5):
                a, b = (rng.integers(0, A.p, size=A.dim) for _ in range(2))
                res.checked += 1
                lhs = q.multiply(q.project(a), q.project(b))
                rhs = q.project(grpalg.algebra_multiply(A, a, b))
                if not np.array_equal(lhs, rhs):
                    res.failures.append(f"{e.name}: {q.name} product mismatch")
    return res


def suite_unit_group(level="full", seed=0) -> SuiteResult:
    res = SuiteResult("unit_group")
    for name in ("heisenberg", "modular"):
        G = builtin(name, 3).presentation
        A = grpalg.GroupAlgebra(G)
        S = grpalg.small_group_algebra(A)
        basis = sg.burnside_basis(G)
        gens = grpalg.a_subgroup_generators(S, basis)
        law = grpalg.check_a_commutator_law(S, basis)
        res.checked += law.checked
        if not law:
            res.failures.append(f"{name}: commutator law fails for {law.failures[:3]}")
        gbar = [S.image(g) for g in G.gens]
        seeds = gbar + [a for _, a in gens]
        V = grpalg.unit_closure(S, seeds)
        res.checked += 1
        if V.order != G.p ** (S.dim - 1):
            res.failures.append(f"{name}: |closure| = {V.order}")
        dv = grpalg.derived_unit_subgroup(S, seeds)
        g2img = set(grpalg.encode(S.p, S.projection[sg.gamma(G, 2).element_indices()]).tolist())
        if dv.code_set() != g2img:
            res.failures.append(f"{name}: gamma_2(V(S)) != gamma_2(G image)")
    return res


def suite_presentation_round_trip(level="full", seed=0) -> SuiteResult:
    res = SuiteResult("presentation_round_trip")
    for e in _groups(level, 3**5):
        G = e.presentation
        if G.p == 2 or not mip.check_theorem_b_hypotheses(G).holds:
            continue
        ex = mip.extract_presentation(G)
        res.checked += 1
        if not mip.verify_relations(ex.rdata, ex.quotient, ex.witnesses):
            res.failures.append(e.name)
        if ex.rdata.m and linalg.rank(ex.rdata.beta_matrix(), G.p) != ex.rdata.m:
            res.failures.append(f"{e.name}: beta rank")
    return res


def suite_theorem_b_relabel(level="full", seed=0) -> SuiteResult:
    res = SuiteResult("theorem_b_relabel")
    for e in _groups(level, 3**5):
        G = e.presentation
        if G.p == 2 or not mip.check_theorem_b_hypotheses(G).holds:
            continue
        H, _ = relabel(G, seed + 1)
        v = mip.theorem_b_pipeline(G, H)
        res.checked += 1
        if v.verdict != "isomorphic":
            res.failures.append(f"{e.name}: {v.verdict}")
    return res


def suite_fingerprint_soundness(level="full", seed=0) -> SuiteResult:
    res = SuiteResult("fingerprint_soundness")
    for e in _groups(level, 3**5):
        G = e.presentation
        H, _ = relabel(G, seed + 2)
        if is_isomorphic_bruteforce(G, H) is None:
            res.failures.append(f"{e.name}: relabelled copy not found isomorphic")
            continue
        res.checked += 1
        if mip.compare_fingerprints(mip.fingerprint(G), mip.fingerprint(H)).verdict != "indistinguishable":
            res.failures.append(e.name)
    return res


def suite_center_index_p3(level="full", seed=0) -> SuiteResult:
    res = SuiteResult("center_index_p3_structure")
    for e in _groups(level, 5**7):
        chk = mip.center_index_p3_checks(e.presentation)
        if not chk.applicable:
            continue
        res.checked += 1
        if not chk.holds:
            res.failures.append(f"{e.name}: {chk.to_dict()}")
    return res


def suite_order_p3(level="full", seed=0) -> SuiteResult:
    res = SuiteResult("order_p3_distinct")
    gs = [builtin(n, q).presentation for n, q in
          (("cyclic", 27), ("elem_abelian", 27), ("c_p2_x_cp", 3), ("heisenberg", 3), ("modular", 3))]
    for i in range(len(gs)):
        for j in range(i + 1, len(gs)):
            res.checked += 1
            if is_isomorphic_bruteforce(gs[i], gs[j]) is not None:
                res.failures.append(f"{gs[i].name} ~ {gs[j].name}")
    return res


def suite_order_5_7_examples(level="full", seed=0) -> SuiteResult:
    res = SuiteResult("order_5_7_examples")
    if level == "quick":
        res.notes.append("skipped at quick level")
        return res
    names = ("G5_7_1599", "G5_7_1734", "G5_7_1766")
    fps = [mip.fingerprint(builtin(n, 5).presentation) for n in names]
    for n, f in zip(names, fps):
        res.checked += 1
        got = (f.order, f.generator_rank, f.center_invariants, f.center_index, f.nilpotency_class, f.d)
        if got != (5**7, 3, (25, 25), 125, 3, 2):
            res.failures.append(f"{n}: {got}")
    for i in range(3):
        for j in range(i + 1, 3):
            res.checked += 1
            if mip.compare_fingerprints(fps[i], fps[j]).verdict != "indistinguishable":
                res.failures.append(f"{names[i]} vs {names[j]}")
    return res


SUITES = [
    suite_consistency,
    suite_expected_facts,
    suite_power_commutator_identity,
    suite_agemo_central,
    suite_frattini_from_algebra,
    suite_small_group_algebra,
    suite_commutator_ideals,
    suite_center_decomposition,
    suite_remark_identity,
    suite_jennings,
    suite_d_two_ways,
    suite_quotient_structure,
    suite_unit_group,
    suite_presentation_round_trip,
    suite_theorem_b_relabel,
    suite_fingerprint_soundness,
    suite_center_index_p3,
    suite_order_p3,
    suite_order_5_7_examples,
]


def run_all(level: str = "quick", seed: int = 0) -> list[SuiteResult]:
    if level not in ("quick", "full"):
        raise InputError(f"unknown level {level!r}")
    out = []
    for suite in SUITES:
        t0 = time.perf_counter()
        r = suite(level, seed)
        r.seconds = time.perf_counter() - t0
        out.append(r)
    return out
