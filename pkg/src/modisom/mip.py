"""Group invariants, the class-3 presentation data, and the two decision pipelines.

The pipelines never compare group algebras.  They combine invariants known
to be determined by ``F_p G`` (a difference certifies ``FG != FH``) with an
explicit search for generators satisfying the relations extracted from G;
a found tuple is then turned into an explicit isomorphism and checked.
"""

from __future__ import annotations

import itertools
from dataclasses import asdict, dataclass, field
from math import comb

import numpy as np

from . import linalg
from .errors import InputError, InvariantViolation, PreconditionError, ResourceError
from .pcgroup import PcPresentation, Subgroup, extend_homomorphism, is_isomorphic_bruteforce, quotient_presentation
from .pcgroup import subgroups as sg
from .pcgroup.quotient import QuotientMap
from .pcgroup.table import DEFAULT_MAX_TABLE

DEFAULT_SEARCH_CAP = 3**6
DEFAULT_ISO_CAP = 3**6

# Fields whose values agree for G and H whenever FG = FH (by results in the
# literature: order, abelianization, center, Jennings ranks, the quotient
# G/gamma_2^p gamma_3 and its invariants, d via the centre of FG, exponent,
# number of conjugacy classes).  Everything else is reported but not used
# as a certificate.
DETERMINED = {
    "order": True,
    "prime": True,
    "generator_rank": True,
    "nilpotency_class": False,
    "exponent": True,
    "abelianization": True,
    "center_invariants": True,
    "center_index": True,
    "d": True,
    "gamma_orders": False,
    "jennings_dims": True,
    "gamma2_quotient_order": True,
    "sandling_order": True,
    "sandling_invariants": True,
    "class_count": True,
    "class_sizes": False,
    "order_stats": False,
}


def _rel(G: PcPresentation, a: Subgroup, b: Subgroup) -> int:
    """``log_p |a : b|`` for ``b <= a``."""
    return a.log_order - b.log_order


def frattini_center(G: PcPresentation) -> Subgroup:
    return sg.closure(G, sg.center(G).igs, start=sg.frattini(G))


def d_invariant(G: PcPresentation) -> int:
    """``log_p |G / Phi(G) Z(G)|``."""
    return G.n - frattini_center(G).log_order


def sandling_kernel(G: PcPresentation) -> Subgroup:
    """``gamma_2(G)^p gamma_3(G)``."""
    return sg.closure(G, sg.power_subgroup(sg.gamma(G, 2)).igs, start=sg.gamma(G, 3))


def theorem_kernel(G: PcPresentation) -> Subgroup:
    """``gamma_2(G)^p gamma_4(G)``."""
    return sg.closure(G, sg.power_subgroup(sg.gamma(G, 2)).igs, start=sg.gamma(G, 4))


@dataclass(frozen=True)
class Fingerprint:
    order: int
    prime: int
    generator_rank: int
    nilpotency_class: int
    exponent: int
    abelianization: tuple[int, ...]
    center_invariants: tuple[int, ...]
    center_index: int
    d: int
    gamma_orders: tuple[int, ...]
    jennings_dims: tuple[int, ...]
    gamma2_quotient_order: int
    sandling_order: int
    sandling_invariants: tuple[int, ...]
    class_count: int
    class_sizes: tuple[tuple[int, int], ...]
    order_stats: tuple[tuple[int, int], ...]

    def fields(self) -> dict:
        return asdict(self)

    def to_dict(self) -> dict:
        return {
            name: {"value": _jsonable(v), "determined_by_FG": DETERMINED[name]}
            for name, v in self.fields().items()
        }


def _jsonable(v):
    if isinstance(v, tuple):
        return [_jsonable(x) for x in v]
    return v


def _abelianization(G: PcPresentation) -> tuple[int, ...]:
    Q, _ = quotient_presentation(G, sg.gamma(G, 2))
    return sg.abelian_invariants(sg.whole_group(Q))


def fingerprint(G: PcPresentation) -> Fingerprint:
    if G.order > DEFAULT_MAX_TABLE:
        raise ResourceError(f"|G| = {G.order} exceeds the enumeration cap {DEFAULT_MAX_TABLE}")
    p = G.p
    lcs = sg.lower_central_series(G)
    Z = sg.center(G)
    tab = G.table
    sand = sandling_kernel(G)
    Q, _ = quotient_presentation(G, sand)
    sizes = tab.class_sizes
    labels = tab.class_labels
    _, first = np.unique(labels, return_index=True)
    csize, ccount = np.unique(sizes[first], return_counts=True)
    ords, ocount = np.unique(tab.orders, return_counts=True)
    fp = Fingerprint(
        order=G.order,
        prime=p,
        generator_rank=sg.generator_rank(G),
        nilpotency_class=len(lcs) - 1,
        exponent=sg.exponent(G),
        abelianization=_abelianization(G),
        center_invariants=sg.abelian_invariants(Z),
        center_index=G.order // Z.order,
        d=d_invariant(G),
        gamma_orders=tuple(s.order for s in lcs),
        jennings_dims=tuple(sg.jennings_dims(G)),
        gamma2_quotient_order=p ** _rel(G, lcs[1] if len(lcs) > 1 else lcs[0], sand),
        sandling_order=Q.order,
        sandling_invariants=_abelianization(Q),
        class_count=int(first.size),
        class_sizes=tuple(zip(csize.tolist(), ccount.tolist())),
        order_stats=tuple(zip(ords.tolist(), ocount.tolist())),
    )
    prod = 1
    for a, b in zip(fp.gamma_orders, fp.gamma_orders[1:]):
        prod *= a // b
    if prod != fp.order or sum(c * s for s, c in fp.class_sizes) != fp.order:
        raise InvariantViolation("fingerprint is internally inconsistent")
    return fp


@dataclass
class Comparison:
    verdict: str  # "indistinguishable" or "distinguished"
    agree: list[str]
    differ: list[str]
    certificate: list[str]  # differing fields that are determined by FG

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "agree": self.agree,
            "differ": self.differ,
            "certificate_FG_not_isomorphic": self.certificate,
        }


def compare_fingerprints(f1: Fingerprint, f2: Fingerprint) -> Comparison:
    if f1.prime != f2.prime:
        raise InputError("fingerprints over different primes")
    a, b = f1.fields(), f2.fields()
    agree = [k for k in a if a[k] == b[k]]
    differ = [k for k in a if a[k] != b[k]]
    cert = [k for k in differ if DETERMINED[k]]
    return Comparison("indistinguishable" if not differ else "distinguished", agree, differ, cert)


# --- hypotheses and structure checks ---------------------------------------------

@dataclass
class Hypotheses:
    d: int
    cond_a: bool
    cond_b: bool
    cond_a_elementwise: bool
    gamma2_quotient_log: int

    @property
    def holds(self) -> bool:
        return self.cond_a and self.cond_b

    def to_dict(self) -> dict:
        return asdict(self) | {"holds": self.holds}


def check_theorem_b_hypotheses(G: PcPresentation) -> Hypotheses:
    """Conditions (a) and (b), with ``G^p`` read as the subgroup generated by p-th powers.

    ``cond_a_elementwise`` reports the reading with the set of p-th powers,
    which is implied by the subgroup reading.
    """
    d = d_invariant(G)
    g2 = sg.gamma(G, 2)
    sand = sandling_kernel(G)
    ag = sg.agemo(G)
    meet = sg.intersection(ag, g2)
    cond_a = meet <= sand
    tab = G.table
    pw = np.unique(tab.pth_power_map)
    in_g2 = np.isin(pw, g2.element_indices())
    cond_a_set = bool(np.all(np.isin(pw[in_g2], sand.element_indices())))
    r = _rel(G, g2, sand)
    return Hypotheses(d, bool(cond_a), r == comb(d, 2), cond_a_set, r)


@dataclass
class StructureChecks:
    applicable: bool
    class_at_most_3: bool = True
    gamma2_elementary_abelian: bool = True
    class2_or_d2: bool = True

    @property
    def holds(self) -> bool:
        return self.class_at_most_3 and self.gamma2_elementary_abelian and self.class2_or_d2

    def to_dict(self) -> dict:
        return asdict(self) | {"holds": self.holds}


def center_index_p3_checks(G: PcPresentation) -> StructureChecks:
    """The three structural consequences of ``|G : Z(G)| = p^3`` for odd p."""
    if G.p == 2 or G.order // sg.center(G).order != G.p**3:
        return StructureChecks(False)
    cls = sg.nilpotency_class(G)
    g2 = sg.gamma(G, 2)
    el_ab = sg.is_abelian_subgroup(g2) and all(x == G.p for x in sg.abelian_invariants(g2))
    return StructureChecks(True, cls <= 3, el_ab, cls == 2 or d_invariant(G) == 2)


def check_agemo_central(G: PcPresentation) -> bool | None:
    """If ``gamma_2^p gamma_4 = 1`` (odd p), whether every p-th power is central; None if not applicable."""
    if G.p == 2 or not theorem_kernel(G).is_trivial:
        return None
    return sg.agemo(G) <= sg.center(G)


# --- presentation data ------------------------------------------------------------

def theorem_quotient(G: PcPresentation) -> tuple[PcPresentation, QuotientMap]:
    """``G / gamma_2(G)^p gamma_4(G)``."""
    return quotient_presentation(G, theorem_kernel(G), name=f"{G.name}/g2^p g4")


@dataclass(frozen=True)
class RData:
    p: int
    k: int
    m: int
    d: int
    n: tuple[int, ...]
    alpha: tuple[tuple[int, ...], ...]  # k x m
    beta: tuple[tuple[tuple[tuple[int, ...], ...], ...], ...]  # d x d x d x m

    @property
    def log_order(self) -> int:
        """``log_p`` of the order of a group presented by these relations."""
        return sum(self.n) + comb(self.d, 2) + self.m

    def beta_matrix(self) -> np.ndarray:
        rows = [self.beta[i][j][l] for i, j, l in itertools.product(range(self.d), repeat=3)]
        return np.array(rows, dtype=np.int64).reshape(len(rows), self.m)

    def to_dict(self) -> dict:
        return {
            "p": self.p, "k": self.k, "m": self.m, "d": self.d, "n": list(self.n),
            "alpha": [list(r) for r in self.alpha],
            "beta": [[[list(c) for c in b] for b in a] for a in self.beta],
            "log_order": self.log_order,
        }


def _basis_mod(G: PcPresentation, lower: Subgroup) -> list:
    """Pc generators at the positions that are not depths of ``lower``."""
    return [G.gen(i) for i in range(G.n) if i not in lower.depths]


def _central_lifts(G: PcPresentation, Z: Subgroup, phi: Subgroup, count: int) -> list:
    out = []
    span = phi
    for t in Z.igs:
        if t not in span:
            out.append(t)
            span = sg.closure(G, [t], start=span)
    if len(out) != count:
        raise InvariantViolation("central lifts do not match |Z Phi / Phi|")
    return out


def _left_coords(G: PcPresentation, igs, x) -> tuple[int, ...] | None:
    """Exponents of ``x`` as a product of the canonical igs elements, or None if outside."""
    col = G.collector
    out = []
    for z in igs:
        e = x[G.depth(z)]
        out.append(e)
        if e:
            x = col.multiply(col.inverse(col.power(z, e)), x)
    return tuple(out) if not any(x) else None


def presentation_basis(G: PcPresentation) -> tuple[list, int]:
    """The Burnside basis ``x_1..x_k`` of G used for the presentation data, and d."""
    phi = sg.frattini(G)
    Z = sg.center(G)
    zphi = sg.closure(G, Z.igs, start=phi)
    xs = _basis_mod(G, zphi)
    d = len(xs)
    xs += _central_lifts(G, Z, phi, zphi.log_order - phi.log_order)
    return xs, d


@dataclass
class Extraction:
    rdata: RData
    quotient: PcPresentation
    projection: QuotientMap
    generators: list  # x_1..x_k in the quotient
    gamma3_basis: list  # z_1..z_m in the quotient

    @property
    def witnesses(self) -> list:
        return list(self.generators) + list(self.gamma3_basis)


def extract_presentation(G: PcPresentation) -> Extraction:
    if G.p == 2:
        raise PreconditionError("the presentation data is defined for odd p only")
    hyp = check_theorem_b_hypotheses(G)
    if not hyp.holds:
        raise PreconditionError(f"hypotheses fail: cond_a={hyp.cond_a}, cond_b={hyp.cond_b}")
    xs_g, d = presentation_basis(G)
    if d != hyp.d:
        raise InvariantViolation("basis size differs from d")
    Q, proj = theorem_quotient(G)
    xs = [proj(x) for x in xs_g]
    g3 = sg.gamma(Q, 3)
    zs = list(g3.igs)
    p, k, m = G.p, len(xs), len(zs)
    col = Q.collector
    g2 = sg.gamma(Q, 2)
    ns, alpha = [], []
    for x in xs:
        n, y = 0, x
        while y not in g2:
            y = col.power(y, p)
            n += 1
        if n == 0:
            raise InvariantViolation("Burnside basis element inside gamma_2")
        c = _left_coords(Q, zs, y)
        if c is None:
            raise InvariantViolation("p-power of a basis element not in gamma_3 of the quotient")
        ns.append(n)
        alpha.append(c)
    beta = []
    for i in range(d):
        bi = []
        for j in range(d):
            bij = []
            cij = col.commutator(xs[i], xs[j])
            for l in range(d):
                c = _left_coords(Q, zs, col.commutator(cij, xs[l]))
                if c is None:
                    raise InvariantViolation("triple commutator outside gamma_3")
                bij.append(c)
            bi.append(tuple(bij))
        beta.append(tuple(bi))
    r = RData(p, k, m, d, tuple(ns), tuple(alpha), tuple(beta))
    if m and linalg.rank(r.beta_matrix(), p) != m:
        raise InvariantViolation(f"rank of the triple-commutator matrix is below m = {m}")
    if r.log_order != Q.n:
        raise InvariantViolation("relation data does not account for the quotient order")
    return Extraction(r, Q, proj, xs, zs)


@dataclass
class BilinearMap:
    basis: list  # x_1..x_d in G
    table: np.ndarray  # (d, d, r) coordinates in gamma_2 / gamma_2^p gamma_3
    rank: int  # dimension spanned by the values
    p: int

    @property
    def antisymmetric(self) -> bool:
        return bool(np.all((self.table + self.table.transpose(1, 0, 2)) % self.p == 0))


def commutator_bilinear_map(G: PcPresentation) -> BilinearMap:
    xs_g, d = presentation_basis(G)
    xs_g = xs_g[:d]
    Q, proj = quotient_presentation(G, sandling_kernel(G))
    g2 = sg.gamma(Q, 2)
    col = Q.collector
    r = g2.log_order
    tab = np.zeros((d, d, r), dtype=np.int64)
    xs = [proj(x) for x in xs_g]
    for i in range(d):
        for j in range(d):
            c = _left_coords(Q, g2.igs, col.commutator(xs[i], xs[j]))
            if c is None:
                raise InvariantViolation("commutator outside gamma_2")
            tab[i, j] = c
    span = linalg.rank(tab.reshape(-1, r), G.p) if r else 0
    return BilinearMap(xs_g, tab, span, G.p)


# --- relation checking and the tuple search -------------------------------------------

def _product(K: PcPresentation, gens, exps):
    col = K.collector
    out = K.identity
    for g, e in zip(gens, exps):
        if e:
            out = col.multiply(out, col.power(g, e))
    return out


@dataclass
class RelationCheck:
    holds: bool
    failed: list[str] = field(default_factory=list)

    def __bool__(self):
        return self.holds


def check_relations(r: RData, K: PcPresentation, tup) -> RelationCheck:
    if r.p != K.p:
        return RelationCheck(False, ["prime"])
    if len(tup) != r.k + r.m:
        raise InputError(f"expected {r.k + r.m} elements, got {len(tup)}")
    tup = [K.check_element(x) for x in tup]
    gs, cs = tup[: r.k], tup[r.k:]
    col = K.collector
    p = r.p
    failed = []
    for i in range(r.k):
        if col.power(gs[i], p ** r.n[i]) != _product(K, cs, r.alpha[i]):
            failed.append(f"power relation for g{i + 1}")
    for i, j, l in itertools.product(range(r.d), repeat=3):
        lhs = col.commutator(col.commutator(gs[i], gs[j]), gs[l])
        if lhs != _product(K, cs, r.beta[i][j][l]):
            failed.append(f"triple commutator ({i + 1},{j + 1},{l + 1})")
    for i, j in itertools.combinations(range(r.d), 2):
        if any(col.power(col.commutator(gs[i], gs[j]), p)):
            failed.append(f"[g{i + 1},g{j + 1}]^p")
    for i in range(r.d, r.k):
        if any(any(col.commutator(gs[i], g)) for g in K.gens):
            failed.append(f"g{i + 1} not central")
    if sg.nilpotency_class(K) > 3:
        failed.append("class > 3")
    if sg.closure(K, tup).order != K.order:
        failed.append("tuple does not generate")
    return RelationCheck(not failed, failed)


def verify_relations(r: RData, K: PcPresentation, tup) -> bool:
    return bool(check_relations(r, K, tup))


def _coset_reps(K: PcPresentation, N: Subgroup) -> np.ndarray:
    """Indices of the elements with zero exponents at the depths of N (one per coset)."""
    digits = K.table.digits
    mask = np.ones(K.order, dtype=bool)
    for dpt in N.depths:
        mask &= digits[:, dpt] == 0
    return np.flatnonzero(mask)


class _Coords:
    """Linear coordinates on an elementary abelian section ``A / B`` given by canonical reps."""

    def __init__(self, K: PcPresentation, upper: Subgroup, lower: Subgroup):
        self.K = K
        self.lower = lower
        self.keep = [t for t in upper.igs if K.depth(t) not in lower.depths]
        self.dim = len(self.keep)
        self.proj = QuotientMap(K, lower, None, [])  # type: ignore[arg-type]

    def __call__(self, x) -> tuple[int, ...] | None:
        return _left_coords(self.K, self.keep, self.proj.representative(x))


@dataclass
class SearchStats:
    tuples_tried: int = 0
    reason: str = ""


def find_satisfying_tuple(r: RData, K: PcPresentation, cap: int = DEFAULT_SEARCH_CAP, stats: SearchStats | None = None):
    """A tuple ``(g_1..g_k, c_1..c_m)`` of K satisfying the relations and generating K, or None.

    Candidates for ``g_1..g_d`` run over coset representatives of Z(K): every
    relation except the power relation only depends on the coset, and a
    central correction for the power relation is solved for afterwards.
    The c-entries are forced by the triple-commutator relation (rank m).
    """
    stats = stats if stats is not None else SearchStats()
    if K.p != r.p:
        raise InputError("RData and group over different primes")
    if K.order > cap:
        raise ResourceError(f"|K| = {K.order} exceeds the tuple search cap {cap}")
    if K.n != r.log_order:
        stats.reason = "order mismatch"
        return None
    if sg.nilpotency_class(K) > 3:
        stats.reason = "class > 3"
        return None
    p = K.p
    col = K.collector
    tab = K.table
    Z = sg.center(K)
    phi = sg.frattini(K)
    zphi = sg.closure(K, Z.igs, start=phi)
    g3 = sg.gamma(K, 3)
    if not sg.is_abelian_subgroup(g3) or any(x != p for x in sg.abelian_invariants(g3)):
        stats.reason = "gamma_3 not elementary abelian"
        return None
    if g3.log_order != r.m or K.n - zphi.log_order != r.d:
        stats.reason = "gamma_3 or d mismatch"
        return None
    mod_zphi = _Coords(K, sg.whole_group(K), zphi)
    mod_phi = _Coords(K, sg.whole_group(K), phi)
    zs = list(g3.igs)
    reps = [tab.element(i) for i in _coset_reps(K, Z)]
    reps = [x for x in reps if x not in zphi]
    rep_coord = [np.array(mod_zphi(x), dtype=np.int64) for x in reps]
    z_idx = Z.element_indices()
    zpow = {}

    def central_power(n):
        if n not in zpow:
            zpow[n] = tab.pow(z_idx, p**n)
        return zpow[n]

    bmat = r.beta_matrix()
    rows = linalg.independent_rows(bmat, p) if r.m else []
    binv = linalg.inverse_mod(bmat[rows], p) if r.m else None
    triples = list(itertools.product(range(r.d), repeat=3))

    def solve_c(gs):
        w = []
        for i, j, l in triples:
            c = _left_coords(K, zs, col.commutator(col.commutator(gs[i], gs[j]), gs[l]))
            if c is None:
                return None
            w.append(c)
        w = np.array(w, dtype=np.int64).reshape(len(triples), r.m)
        if r.m == 0:
            return [] if not w.size or not np.any(w) else None
        cmat = linalg.matmul_mod(binv, w[rows], p)  # row s: coordinates of c_s
        if np.any(linalg.matmul_mod(bmat, cmat, p) != w):
            return None
        return [_product(K, zs, row) for row in cmat]

    def central_fix(g, n, target):
        # z in Z(K) with (g z)^(p^n) = target; g and z commute
        gp = tab.index(col.power(g, p**n))
        want = tab.index(target)
        hits = np.flatnonzero(tab.mul_left(gp, central_power(n)) == want)
        return None if hits.size == 0 else col.multiply(g, tab.element(z_idx[hits[0]]))

    def finish(gs):
        cs = solve_c(gs)
        if cs is None:
            return None
        out = []
        for i, g in enumerate(gs):
            fixed = central_fix(g, r.n[i], _product(K, cs, r.alpha[i]))
            if fixed is None:
                return None
            out.append(fixed)
        # central generators, independent modulo Phi
        options = []
        for i in range(r.d, r.k):
            target = tab.index(_product(K, cs, r.alpha[i]))
            ok = z_idx[central_power(r.n[i]) == target]
            seen, opts = set(), []
            for zi in ok:
                z = tab.element(zi)
                c = mod_phi(z)
                if any(c) and c not in seen:
                    seen.add(c)
                    opts.append((z, np.array(c, dtype=np.int64)))
            options.append(opts)
        base = [np.array(mod_phi(g), dtype=np.int64) for g in out]
        picked = _pick_independent(options, base, p)
        if picked is None:
            return None
        tup = out + picked + cs
        return tup if verify_relations(r, K, tup) else None

    chosen: list[int] = []

    def search(level):
        if level == r.d:
            stats.tuples_tried += 1
            return finish([reps[i] for i in chosen])
        for idx, x in enumerate(reps):
            vecs = [rep_coord[i] for i in chosen] + [rep_coord[idx]]
            if linalg.rank(np.array(vecs), p) != len(vecs):
                continue
            if any(any(col.power(col.commutator(reps[i], x), p)) for i in chosen):
                continue
            chosen.append(idx)
            found = search(level + 1)
            if found is not None:
                return found
            chosen.pop()
        return None

    found = search(0)
    if found is None:
        stats.reason = "search exhausted"
    return found


def _pick_independent(options, base, p):
    picked: list = []
    vecs = list(base)

    def rec(i):
        if i == len(options):
            return True
        for z, c in options[i]:
            trial = np.array(vecs + [c])
            if linalg.rank(trial, p) == len(trial):
                vecs.append(c)
                picked.append(z)
                if rec(i + 1):
                    return True
                vecs.pop()
                picked.pop()
        return False

    return picked if rec(0) else None


# --- pipelines ----------------------------------------------------------------------

@dataclass
class Verdict:
    verdict: str  # "isomorphic", "distinguished", "not_isomorphic"
    stage: str
    detail: dict = field(default_factory=dict)
    witness: dict | None = None
    flag: str = ""

    def to_dict(self) -> dict:
        return asdict(self)


def _require_odd(G: PcPresentation, H: PcPresentation) -> None:
    if G.p != H.p:
        raise InputError("groups over different primes")
    if G.p == 2:
        raise PreconditionError("the pipelines are for odd p only")


def _witness_map(src: PcPresentation, gens, dst: PcPresentation, imgs) -> dict | None:
    """Extend ``gens -> imgs`` to a map on all of ``src``; returns it if it is an isomorphism."""
    ts, td = src.table, dst.table
    phi = extend_homomorphism(src, [ts.index(g) for g in gens], dst, [td.index(h) for h in imgs])
    if phi is None or len(phi) != ts.size or len(set(phi.values())) != td.size:
        return None
    return phi


def theorem_b_pipeline(G: PcPresentation, H: PcPresentation, cap: int = DEFAULT_SEARCH_CAP) -> Verdict:
    _require_odd(G, H)
    cmp = compare_fingerprints(fingerprint(G), fingerprint(H))
    if cmp.certificate:
        return Verdict("distinguished", "fingerprint", {"fields": cmp.certificate},
                       flag="FG and FH are not isomorphic; the theorem is vacuous for this pair")
    ext = extract_presentation(G)
    Ht, _ = theorem_quotient(H)
    stats = SearchStats()
    tup = find_satisfying_tuple(ext.rdata, Ht, cap, stats)
    detail = {"rdata": ext.rdata.to_dict(), "quotient_order_G": ext.quotient.order,
              "quotient_order_H": Ht.order, "tuples_tried": stats.tuples_tried}
    if tup is None:
        detail["reason"] = stats.reason
        return Verdict("not_isomorphic", "tuple search", detail,
                       flag="quotients not isomorphic; contradicts the theorem only if FG and FH are isomorphic")
    phi = _witness_map(ext.quotient, ext.witnesses, Ht, tup)
    if phi is None:
        raise InvariantViolation("relations hold but the induced map is not an isomorphism")
    witness = {"source": [list(x) for x in ext.witnesses], "images": [list(x) for x in tup]}
    return Verdict("isomorphic", "tuple search", detail, witness)


def theorem_a_pipeline(G: PcPresentation, H: PcPresentation, cap: int = DEFAULT_SEARCH_CAP,
                       iso_cap: int = DEFAULT_ISO_CAP) -> Verdict:
    _require_odd(G, H)
    p = G.p
    for name, X in (("G", G), ("H", H)):
        idx = X.order // sg.center(X).order
        if idx != p**3:
            raise PreconditionError(f"|{name} : Z({name})| = {idx}, not p^3")
    checks = {name: center_index_p3_checks(X) for name, X in (("G", G), ("H", H))}
    for name, c in checks.items():
        if not c.holds:
            raise InvariantViolation(f"structure checks fail for {name}: {c.to_dict()}")
    detail = {"structure_checks": {k: v.to_dict() for k, v in checks.items()}}
    cmp = compare_fingerprints(fingerprint(G), fingerprint(H))
    if cmp.certificate:
        detail["fields"] = cmp.certificate
        return Verdict("distinguished", "fingerprint", detail,
                       flag="FG and FH are not isomorphic; the theorem is vacuous for this pair")
    cls = sg.nilpotency_class(G)
    detail["class"] = cls
    if cls == 2:
        Hs, _ = quotient_presentation(H, sandling_kernel(H))
        detail["branch"] = "class 2"
        iso = is_isomorphic_bruteforce(G, Hs, iso_cap) if Hs.order == G.order else None
        if iso is None:
            return Verdict("not_isomorphic", "class-2 comparison", detail,
                           flag="G is not isomorphic to H/gamma_2(H)^p gamma_3(H); contradicts the theorem only if FG and FH are isomorphic")
        witness = {"source": [list(x) for x in iso.basis], "images": [list(x) for x in iso.images]}
        if Hs.order != H.order:
            raise InvariantViolation("Sandling quotient of H is proper although fingerprints agree")
        return Verdict("isomorphic", "class-2 comparison", detail, witness)
    detail["branch"] = "class 3"
    if d_invariant(G) != 2 or not theorem_kernel(G).is_trivial:
        raise InvariantViolation("class-3 group with |G:Z| = p^3 must have d = 2 and gamma_2^p gamma_4 = 1")
    out = theorem_b_pipeline(G, H, cap)
    out.detail = detail | out.detail
    if out.verdict == "isomorphic" and out.detail.get("quotient_order_H") != H.order:
        raise InvariantViolation("quotient of H is proper although fingerprints agree")
    return out
