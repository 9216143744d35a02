"""Command-line front end.

Every subcommand writes one JSON report to stdout::

    {"command": ..., "inputs": [...], "settings": {...}, "result": {...}}

or, on failure, ``{"command": ..., "inputs": [...], "error": {"type", "message"}}``.
Diagnostics and timings go to stderr, so reports are byte-identical across
runs.  Exit codes: 0 success, 1 a checked invariant failed, 2 invalid input
or unmet precondition, 3 a resource cap was exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import grpalg, mip, suites
from .catalog import builtin, builtin_names, check_expected_facts, resolve
from .errors import InputError, InvariantViolation, PreconditionError, ResourceError
from .pcgroup import consistency_check
from .pcgroup import subgroups as sg

EXIT_OK, EXIT_INVARIANT, EXIT_INPUT, EXIT_RESOURCE = 0, 1, 2, 3


def _igs(s) -> list:
    return [list(t) for t in s.igs]


def _subgroup(s) -> dict:
    return {"order": s.order, "igs": _igs(s)}


def _relations(G) -> list[str]:
    out = []
    for i, w in enumerate(G.powers):
        if any(w):
            out.append(f"g{i + 1}^{G.p} = {G.format(w)}")
    for (j, i), w in G.commutators:
        out.append(f"[g{j + 1},g{i + 1}] = {G.format(w)}")
    return out


def _entry(ref: str):
    return resolve(ref)


def cmd_list(args) -> dict:
    rows = []
    for name in builtin_names():
        e = builtin(name)
        rows.append({"name": name, "default": e.name, "order": e.presentation.order, "provenance": e.provenance})
    return {"builtins": rows}


def cmd_info(args) -> dict:
    e = _entry(args.group)
    G = e.presentation
    rep = consistency_check(G, seed=args.seed)
    facts = [{"field": f, "expected": w, "observed": g, "ok": ok} for f, w, g, ok in check_expected_facts(e)]
    if not rep:
        raise InvariantViolation(f"presentation is inconsistent: {rep.failure}")
    if not all(f["ok"] for f in facts):
        raise InvariantViolation(f"expected facts fail: {[f for f in facts if not f['ok']]}")
    return {
        "name": e.name,
        "prime": G.p,
        "ngens": G.n,
        "order": G.order,
        "provenance": e.provenance,
        "relations": _relations(G),
        "consistency": {"consistent": rep.consistent, "mode": rep.mode, "checked": rep.checked},
        "expected_facts": facts,
    }


def cmd_series(args) -> dict:
    G = _entry(args.group).presentation
    return {
        "lower_central": [_subgroup(s) for s in sg.lower_central_series(G)],
        "jennings": [_subgroup(s) for s in sg.jennings_series(G)],
        "jennings_dims": sg.jennings_dims(G),
        "center": _subgroup(sg.center(G)),
        "frattini": _subgroup(sg.frattini(G)),
    }


def cmd_fingerprint(args) -> dict:
    return mip.fingerprint(_entry(args.group).presentation).to_dict()


def cmd_compare(args) -> dict:
    f1 = mip.fingerprint(_entry(args.group).presentation)
    f2 = mip.fingerprint(_entry(args.other).presentation)
    return mip.compare_fingerprints(f1, f2).to_dict()


def cmd_algebra(args) -> dict:
    G = _entry(args.group).presentation
    cap = args.max_dim if args.max_dim is not None else args.max_algebra_dim
    A = grpalg.GroupAlgebra(G, max_dim=cap)
    chain = grpalg.ideal_power_chain(A)
    S = grpalg.small_group_algebra(A)
    S0 = grpalg.s0_algebra(A)
    return {
        "dim_FG": A.dim,
        "dim_I_powers": [c.dim for c in chain],
        "jennings_prediction": grpalg.jennings_prediction(G)[: len(chain)],
        "dim_K": grpalg.commutator_subspace(A).dim,
        "dim_Z_FG": grpalg.algebra_center(A).dim,
        "dim_S": S.dim,
        "dim_S0": S0.dim,
        "S_kernel_matches": grpalg.group_image(S, "S").kernel_matches,
        "S0_kernel_matches": grpalg.group_image(S0, "S0").kernel_matches,
        "d_group": mip.d_invariant(G),
        "d_algebra": grpalg.compute_d_algebra(A),
    }


def cmd_check_hypotheses(args) -> dict:
    G = _entry(args.group).presentation
    return {
        "theorem_b_hypotheses": mip.check_theorem_b_hypotheses(G).to_dict(),
        "center_index_p3_checks": mip.center_index_p3_checks(G).to_dict(),
        "agemo_central": mip.check_agemo_central(G),
    }


def cmd_extract(args) -> dict:
    ex = mip.extract_presentation(_entry(args.group).presentation)
    return {
        "rdata": ex.rdata.to_dict(),
        "quotient_order": ex.quotient.order,
        "generators": [list(x) for x in ex.generators],
        "gamma3_basis": [list(z) for z in ex.gamma3_basis],
        "round_trip": mip.verify_relations(ex.rdata, ex.quotient, ex.witnesses),
    }


def cmd_theorem_b(args) -> dict:
    G, H = _entry(args.group).presentation, _entry(args.other).presentation
    return mip.theorem_b_pipeline(G, H, cap=args.max_order).to_dict()


def cmd_theorem_a(args) -> dict:
    G, H = _entry(args.group).presentation, _entry(args.other).presentation
    return mip.theorem_a_pipeline(G, H, cap=args.max_order, iso_cap=args.max_order).to_dict()


def cmd_selftest(args) -> dict:
    results = []
    for r in suites.run_all(args.level, args.seed):
        print(f"{r.name}: {'pass' if r.passed else 'FAIL'} ({r.checked} checks, {r.seconds:.2f}s)", file=sys.stderr)
        results.append(r.to_dict())
    failed = [r["name"] for r in results if not r["passed"]]
    out = {"level": args.level, "passed": not failed, "failed": failed, "suites": results}
    if failed:
        raise _SelftestFailure(out)
    return out


class _SelftestFailure(InvariantViolation):
    def __init__(self, report):
        super().__init__(f"suites failed: {report['failed']}")
        self.report = report


def _common() -> argparse.ArgumentParser:
    # usable before or after the subcommand; SUPPRESS keeps a later default
    # from overwriting an earlier explicit value
    c = argparse.ArgumentParser(add_help=False)
    c.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="JSON report (default)")
    c.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="seed for sampled checks (default 0)")
    c.add_argument("--max-order", type=int, default=argparse.SUPPRESS,
                   help=f"cap on |K| for tuple and isomorphism searches (default {mip.DEFAULT_SEARCH_CAP})")
    c.add_argument("--max-algebra-dim", type=int, default=argparse.SUPPRESS,
                   help=f"cap on dim FG (default {grpalg.DEFAULT_MAX_DIM})")
    return c


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    ap = argparse.ArgumentParser(
        prog="modisom",
        description="Invariants and isomorphism pipelines for finite p-groups and their modular group algebras.",
        parents=[common],
        epilog="Groups: builtin:NAME[:PARAM] (see 'list') or a JSON presentation file.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, func, help, groups=1):
        p = sub.add_parser(name, help=help, parents=[common])
        if groups >= 1:
            p.add_argument("group")
        if groups == 2:
            p.add_argument("other")
        p.set_defaults(func=func)
        return p

    add("list", cmd_list, "list builtin groups", groups=0)
    add("info", cmd_info, "presentation, consistency and expected facts")
    add("series", cmd_series, "lower central and Jennings series, center, Frattini subgroup")
    add("fingerprint", cmd_fingerprint, "group invariants with determined-by-FG tags")
    add("compare", cmd_compare, "compare fingerprints", groups=2)
    alg = add("algebra", cmd_algebra, "group algebra dimensions and d computed both ways")
    alg.add_argument("--max-dim", type=int, default=None, help="same as --max-algebra-dim")
    add("check-hypotheses", cmd_check_hypotheses, "hypotheses of the class-3 quotient theorem")
    add("extract", cmd_extract, "presentation data of G/gamma_2^p gamma_4")
    add("verify-theorem-b", cmd_theorem_b, "decide G/gamma_2^p gamma_4 vs H/gamma_2^p gamma_4", groups=2)
    add("verify-theorem-a", cmd_theorem_a, "decision pipeline for |G:Z(G)| = p^3", groups=2)
    st = add("selftest", cmd_selftest, "run the property suites", groups=0)
    st.add_argument("--level", choices=["quick", "full"], default="quick")
    return ap


def _defaults(args) -> None:
    for key, val in (("json", True), ("seed", 0), ("max_order", mip.DEFAULT_SEARCH_CAP),
                     ("max_algebra_dim", grpalg.DEFAULT_MAX_DIM)):
        if not hasattr(args, key):
            setattr(args, key, val)


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    _defaults(args)
    inputs = [getattr(args, k) for k in ("group", "other") if getattr(args, k, None) is not None]
    report = {
        "command": args.command,
        "inputs": inputs,
        "settings": {"seed": args.seed, "max_order": args.max_order, "max_algebra_dim": args.max_algebra_dim},
    }
    t0 = time.perf_counter()
    code = EXIT_OK
    try:
        report["result"] = args.func(args)
    except _SelftestFailure as exc:
        report["result"] = exc.report
        code = EXIT_INVARIANT
    except (InputError, PreconditionError) as exc:
        report["error"] = {"type": type(exc).__name__, "message": str(exc)}
        code = EXIT_INPUT
    except ResourceError as exc:
        report["error"] = {"type": "ResourceError", "message": str(exc)}
        code = EXIT_RESOURCE
    except InvariantViolation as exc:
        report["error"] = {"type": "InvariantViolation", "message": str(exc)}
        code = EXIT_INVARIANT
    if "error" in report:
        print(f"error: {report['error']['message']}", file=sys.stderr)
    print(f"{args.command}: {time.perf_counter() - t0:.2f}s", file=sys.stderr)
    json.dump(report, sys.stdout, indent=2, sort_keys=False)
    sys.stdout.write("\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
