"""The modular group algebra F_p G and its quotients.

Elements of FG are coefficient vectors indexed by the enumeration of G
(lexicographic on exponent vectors; index 0 is the identity).  Ideals and
other subspaces are :class:`~modisom.linalg.Subspace` objects.  Quotients
``FG/J`` are carried by :class:`QuotientAlgebra`, which stores structure
constants on the coset basis given by the non-pivot coordinates of ``J``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import linalg
from .errors import InputError, PreconditionError, ResourceError
from .linalg import Subspace, matmul_mod
from .pcgroup import PcPresentation, Subgroup
from .pcgroup import subgroups as sg

DEFAULT_MAX_DIM = 3000
DEFAULT_UNIT_CAP = 3**10


class GroupAlgebra:
    """F_p G for an enumerated p-group."""

    def __init__(self, G: PcPresentation, max_dim: int = DEFAULT_MAX_DIM):
        if G.order > max_dim:
            raise ResourceError(f"dim FG = {G.order} exceeds the algebra dimension cap {max_dim}")
        self.G = G
        self.p = G.p
        self.dim = G.order
        self.table = G.table
        self.mult = self.table.mult_table

    def __repr__(self):
        return f"GroupAlgebra(F_{self.p}[{self.G.name or 'G'}], dim={self.dim})"

    def zero(self) -> np.ndarray:
        return np.zeros(self.dim, dtype=np.int64)

    def one(self) -> np.ndarray:
        return self.basis_element(0)

    def basis_element(self, g) -> np.ndarray:
        k = g if isinstance(g, (int, np.integer)) else self.table.index(g)
        v = self.zero()
        v[int(k)] = 1
        return v

    def element(self, terms: dict) -> np.ndarray:
        """Vector from ``{group element or index: coefficient}``."""
        v = self.zero()
        for g, c in terms.items():
            k = g if isinstance(g, (int, np.integer)) else self.table.index(g)
            v[int(k)] = (v[int(k)] + c) % self.p
        return v

    def left_mul_gen(self, g: int, vecs: np.ndarray) -> np.ndarray:
        """``g * v`` for each row ``v``."""
        vecs = np.atleast_2d(vecs)
        out = np.zeros_like(vecs)
        out[:, self.mult[g]] = vecs
        return out

    def right_mul_gen(self, vecs: np.ndarray, g: int) -> np.ndarray:
        """``v * g`` for each row ``v``."""
        vecs = np.atleast_2d(vecs)
        out = np.zeros_like(vecs)
        out[:, self.mult[:, g]] = vecs
        return out

    def right_matrix(self, v: np.ndarray) -> np.ndarray:
        """Matrix of ``u -> u * v`` acting on row vectors."""
        m = np.zeros((self.dim, self.dim), dtype=np.int64)
        m[np.arange(self.dim)[:, None], self.mult] = np.asarray(v, dtype=np.int64)[None, :]
        return m

    @cached_property
    def gen_indices(self) -> list[int]:
        return [self.table.index(g) for g in self.G.gens]


def algebra_multiply(A: GroupAlgebra, a, b) -> np.ndarray:
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    if a.shape != (A.dim,) or b.shape != (A.dim,):
        raise InputError("algebra elements of the wrong length")
    w = np.outer(a, b).reshape(-1).astype(np.float64)
    out = np.bincount(A.mult.reshape(-1), weights=w, minlength=A.dim)
    return np.mod(np.rint(out).astype(np.int64), A.p)


def augmentation(A: GroupAlgebra, a) -> int:
    return int(np.sum(a)) % A.p


def _span(A: GroupAlgebra, rows) -> Subspace:
    return linalg.span(A.p, A.dim, rows)


def augmentation_ideal(A: GroupAlgebra) -> Subspace:
    rows = np.eye(A.dim, dtype=np.int64)[1:]
    rows[:, 0] = A.p - 1
    return _span(A, rows)


def subgroup_augmentation(A: GroupAlgebra, N: Subgroup) -> Subspace:
    """``I(N)`` as a subspace of FG: the span of ``n - 1`` for ``n`` in N."""
    idx = N.element_indices()
    idx = idx[idx != 0]
    rows = np.zeros((idx.size, A.dim), dtype=np.int64)
    rows[np.arange(idx.size), idx] = 1
    rows[:, 0] = A.p - 1
    return _span(A, rows)


def ideal_product(A: GroupAlgebra, U: Subspace, V: Subspace) -> Subspace:
    """Span of all products ``u v`` of basis vectors."""
    if U.ambient_dim != A.dim or V.ambient_dim != A.dim:
        raise InputError("subspace not in this group algebra")
    out = linalg.zero_subspace(A.p, A.dim)
    if U.dim == 0 or V.dim == 0:
        return out
    for v in V.basis:
        out = linalg.extend(out, matmul_mod(U.basis, A.right_matrix(v), A.p))
    return out


def augmentation_times(A: GroupAlgebra, X: Subspace) -> Subspace:
    """``I(G) X`` for a left ideal ``X``, from the pc generators alone."""
    rows = []
    for g in A.gen_indices:
        rows.append((A.left_mul_gen(g, X.basis) - X.basis) % A.p)
    return _span(A, np.vstack(rows)) if rows else linalg.zero_subspace(A.p, A.dim)


def ideal_power_chain(A: GroupAlgebra) -> list[Subspace]:
    """``[I, I^2, ..., I^L = 0]``."""
    chain = [augmentation_ideal(A)]
    while chain[-1].dim:
        chain.append(augmentation_times(A, chain[-1]))
        if chain[-1].dim == chain[-2].dim:
            raise PreconditionError("augmentation ideal is not nilpotent")
    return chain


def relative_augmentation_ideal(A: GroupAlgebra, N: Subgroup) -> Subspace:
    """``I(N) FG``: span of ``(n - 1) g``."""
    rows = []
    tab = A.table
    allg = np.arange(A.dim)
    for t in N.igs:
        ti = tab.index(t)
        r = np.zeros((A.dim, A.dim), dtype=np.int64)
        r[allg, A.mult[ti]] += 1
        r[allg, allg] += A.p - 1
        rows.append(r % A.p)
    if not rows:
        return linalg.zero_subspace(A.p, A.dim)
    return _span(A, np.vstack(rows))


def commutator_subspace(A: GroupAlgebra) -> Subspace:
    """``K(FG)``: span of ``ab - ba``, equivalently of ``z - z^g``."""
    conj = A.table.gen_conjugation
    idx = np.arange(A.dim)
    rows = []
    for row in conj:
        moved = idx[row != idx]
        r = np.zeros((moved.size, A.dim), dtype=np.int64)
        r[np.arange(moved.size), moved] = 1
        r[np.arange(moved.size), row[moved]] = A.p - 1
        rows.append(r)
    rows = np.vstack(rows) if rows else np.zeros((0, A.dim), dtype=np.int64)
    return _span(A, rows)


def algebra_center(A: GroupAlgebra) -> Subspace:
    """``Z(FG)``: span of the conjugacy class sums."""
    labels = A.table.class_labels
    reps = np.unique(labels)
    rows = (labels[None, :] == reps[:, None]).astype(np.int64)
    return _span(A, rows)


def group_span(A: GroupAlgebra, N: Subgroup) -> Subspace:
    """``F N``: span of the elements of N."""
    idx = N.element_indices()
    rows = np.zeros((idx.size, A.dim), dtype=np.int64)
    rows[np.arange(idx.size), idx] = 1
    return _span(A, rows)


def is_two_sided_ideal(A: GroupAlgebra, J: Subspace) -> bool:
    if J.dim == 0:
        return True
    for g in A.gen_indices:
        if not (linalg.span(A.p, A.dim, A.left_mul_gen(g, J.basis)) <= J):
            return False
        if not (linalg.span(A.p, A.dim, A.right_mul_gen(J.basis, g)) <= J):
            return False
    return True


def elements_in(A: GroupAlgebra, X: Subspace, shift: int = 1) -> np.ndarray:
    """Indices of the group elements ``g`` with ``g - shift*1`` in X."""
    vecs = np.eye(A.dim, dtype=np.int64)
    vecs[:, 0] = (vecs[:, 0] - shift) % A.p
    return np.flatnonzero(~np.any(X.reduce(vecs), axis=1))


@dataclass
class QuotientAlgebra:
    """``FG / J`` on the coset basis of non-pivot coordinates of ``J``."""

    algebra: GroupAlgebra
    modulus: Subspace
    coset_basis: np.ndarray  # group element indices
    projection: np.ndarray  # (|G|, dim) image of every group element
    structure: np.ndarray  # (dim, dim, dim) structure constants
    name: str = ""

    @property
    def p(self) -> int:
        return self.algebra.p

    @property
    def dim(self) -> int:
        return int(self.coset_basis.size)

    @property
    def unit(self) -> np.ndarray:
        return self.projection[0].copy()

    def augmentation(self, u) -> int:
        return int(np.sum(u)) % self.p

    def project(self, v) -> np.ndarray:
        return matmul_mod(np.atleast_2d(np.asarray(v, dtype=np.int64)), self.projection, self.p).reshape(
            np.shape(v)[:-1] + (self.dim,)
        )

    def image(self, g) -> np.ndarray:
        k = g if isinstance(g, (int, np.integer)) else self.algebra.table.index(g)
        return self.projection[int(k)].copy()

    def right_matrix(self, v) -> np.ndarray:
        """Matrix of ``u -> u v`` on coordinate row vectors."""
        return np.mod(np.einsum("abc,b->ac", self.structure, np.asarray(v, dtype=np.int64)), self.p)

    def left_matrix(self, v) -> np.ndarray:
        """Matrix of ``u -> v u`` on coordinate row vectors."""
        return np.mod(np.einsum("abc,a->bc", self.structure, np.asarray(v, dtype=np.int64)), self.p)

    def multiply(self, u, v) -> np.ndarray:
        u = np.asarray(u, dtype=np.int64)
        return matmul_mod(np.atleast_2d(u), self.right_matrix(v), self.p).reshape(u.shape)

    def power(self, u, k: int) -> np.ndarray:
        out = self.unit
        base = np.asarray(u, dtype=np.int64)
        while k:
            if k & 1:
                out = self.multiply(out, base)
            k >>= 1
            if k:
                base = self.multiply(base, base)
        return out

    def unit_inverse(self, u) -> np.ndarray:
        """Inverse of a unit of augmentation 1 (all such units have p-power order)."""
        order = 1
        x = np.asarray(u, dtype=np.int64)
        while not np.array_equal(x, self.unit):
            x = self.power(x, self.p)
            order *= self.p
        return self.power(u, order - 1)

    def commutator(self, u, v) -> np.ndarray:
        return self.multiply(
            self.unit_inverse(self.multiply(v, u)), self.multiply(u, v)
        )

    @cached_property
    def augmentation_ideal(self) -> Subspace:
        rows = np.eye(self.dim, dtype=np.int64)
        rows = (rows - self.unit[None, :]) % self.p
        return linalg.span(self.p, self.dim, rows)


def quotient_algebra(A: GroupAlgebra, J: Subspace, name: str = "", check: bool = True) -> QuotientAlgebra:
    if J.ambient_dim != A.dim or J.p != A.p:
        raise InputError("subspace not in this group algebra")
    if check and not is_two_sided_ideal(A, J):
        raise PreconditionError("modulus is not a two-sided ideal")
    keep = np.array([c for c in range(A.dim) if c not in set(J.pivots)], dtype=np.int64)
    reduced = J.reduce(np.eye(A.dim, dtype=np.int64))
    proj = reduced[:, keep] if keep.size else np.zeros((A.dim, 0), dtype=np.int64)
    prod = A.mult[np.ix_(keep, keep)]
    structure = proj[prod]
    return QuotientAlgebra(A, J, keep, proj, structure, name)


def small_group_algebra_ideal(A: GroupAlgebra) -> Subspace:
    """``I(G) I(gamma_2(G))``."""
    g2 = sg.gamma(A.G, 2)
    return ideal_product(A, augmentation_ideal(A), subgroup_augmentation(A, g2))


def small_group_algebra(A: GroupAlgebra) -> QuotientAlgebra:
    return quotient_algebra(A, small_group_algebra_ideal(A), name="S")


def s0_ideal(A: GroupAlgebra) -> Subspace:
    """``I(G) I(gamma_2(G)) + (gamma_4(G) - 1)``."""
    g4 = sg.gamma(A.G, 4)
    return linalg.subspace_sum(small_group_algebra_ideal(A), subgroup_augmentation(A, g4))


def s0_algebra(A: GroupAlgebra) -> QuotientAlgebra:
    return quotient_algebra(A, s0_ideal(A), name="S0")


@dataclass
class GroupImage:
    images: np.ndarray  # (|G|, dim q) coordinates of every group element
    kernel: Subgroup
    expected_kernel: Subgroup | None
    distinct: np.ndarray  # distinct image coordinate rows, sorted

    @property
    def order(self) -> int:
        return int(self.distinct.shape[0])

    @property
    def kernel_matches(self) -> bool:
        return self.expected_kernel is not None and self.kernel == self.expected_kernel


def encode(p: int, coords: np.ndarray) -> np.ndarray:
    """Injective integer code of coordinate rows (base-p digits)."""
    coords = np.atleast_2d(coords)
    if coords.shape[1] * np.log2(p) > 62:
        raise ResourceError("quotient too large to encode unit coordinates")
    w = p ** np.arange(coords.shape[1] - 1, -1, -1, dtype=np.int64)
    return coords @ w


def decode(p: int, dim: int, codes) -> np.ndarray:
    codes = np.asarray(codes, dtype=np.int64)
    w = p ** np.arange(dim - 1, -1, -1, dtype=np.int64)
    return (codes[:, None] // w[None, :]) % p


def group_image(q: QuotientAlgebra, expected: str | None = None) -> GroupImage:
    """Image of G in ``q`` and the kernel of ``G -> V(q)``.

    ``expected`` names the subgroup the kernel is compared against:
    ``"S"`` for Phi(gamma_2(G)), ``"S0"`` for gamma_2(G)^p gamma_4(G).
    """
    G = q.algebra.G
    kernel_idx = np.flatnonzero(np.all(q.projection == q.unit[None, :], axis=1))
    kernel = sg.from_element_set(G, kernel_idx)
    expected = expected or q.name or None
    exp = None
    if expected == "S":
        exp = sg.subgroup_frattini(sg.gamma(G, 2))
    elif expected == "S0":
        g2 = sg.gamma(G, 2)
        exp = sg.closure(G, sg.power_subgroup(g2).igs, start=sg.gamma(G, 4))
    return GroupImage(q.projection, kernel, exp, np.unique(q.projection, axis=0))


def a_subgroup_generators(q: QuotientAlgebra, burnside) -> list[tuple[tuple[int, ...], np.ndarray]]:
    """Units ``1 + (g_1-1)^k_1 ... (g_m-1)^k_m`` with total degree >= 2.

    Returns ``[(k, coordinates), ...]`` for the nonzero products, by
    increasing degree then lexicographic ``k``.  Stops at the first degree
    where every product vanishes (all later ones vanish too).
    """
    one = q.unit
    xs = [(q.image(g) - one) % q.p for g in burnside]
    m = len(xs)
    out = []
    if m == 0:
        return out
    deg = 2
    while True:
        found = False
        for k in _compositions(deg, m):
            prod = None
            for x, e in zip(xs, k):
                for _ in range(e):
                    prod = x.copy() if prod is None else q.multiply(prod, x)
            if np.any(prod):
                found = True
                out.append((k, (one + prod) % q.p))
        if not found:
            return out
        deg += 1


def _compositions(total: int, parts: int):
    for k in itertools.product(range(total + 1), repeat=parts):
        if sum(k) == total:
            yield tuple(reversed(k))


class UnitGroup:
    """A finite group of units of a quotient algebra, stored by element codes."""

    def __init__(self, q: QuotientAlgebra, codes: np.ndarray, generators: list[np.ndarray]):
        self.q = q
        self.codes = np.sort(np.asarray(codes, dtype=np.int64))
        self.generators = generators

    @property
    def order(self) -> int:
        return int(self.codes.size)

    def contains(self, coords) -> np.ndarray:
        c = encode(self.q.p, np.atleast_2d(coords))
        pos = np.searchsorted(self.codes, c)
        pos = np.minimum(pos, self.codes.size - 1)
        return self.codes[pos] == c

    def coords(self) -> np.ndarray:
        return decode(self.q.p, self.q.dim, self.codes)

    def code_set(self) -> set[int]:
        return set(self.codes.tolist())


def unit_closure(q: QuotientAlgebra, seeds, cap: int = DEFAULT_UNIT_CAP) -> UnitGroup:
    """Subgroup of V(q) generated by ``seeds`` (units of augmentation 1)."""
    seeds = [np.asarray(s, dtype=np.int64) % q.p for s in seeds]
    for s in seeds:
        if q.augmentation(s) != 1:
            raise PreconditionError("unit_closure seeds must have augmentation 1")
    bound = q.p ** q.augmentation_ideal.dim
    if bound > cap:
        raise ResourceError(f"|V(q)| = {q.p}^{q.augmentation_ideal.dim} exceeds the unit closure cap {cap}")
    mats = [q.right_matrix(s) for s in seeds]
    start = q.unit.reshape(1, -1)
    seen = set(encode(q.p, start).tolist())
    frontier = start
    while frontier.shape[0]:
        fresh = []
        for m in mats:
            nxt = matmul_mod(frontier, m, q.p)
            codes = encode(q.p, nxt)
            codes, first = np.unique(codes, return_index=True)
            new = np.array([c not in seen for c in codes.tolist()], dtype=bool)
            if new.any():
                seen.update(codes[new].tolist())
                fresh.append(nxt[first[new]])
        frontier = np.vstack(fresh) if fresh else np.zeros((0, q.dim), dtype=np.int64)
        if len(seen) > cap:
            raise ResourceError("unit closure exceeded cap")
    return UnitGroup(q, np.fromiter(seen, dtype=np.int64), seeds)


def unit_normal_closure(q: QuotientAlgebra, elems, conjugators, cap: int = DEFAULT_UNIT_CAP) -> UnitGroup:
    """Smallest subgroup containing ``elems`` and stable under the conjugators."""
    gens = [np.asarray(e, dtype=np.int64) for e in elems]
    if not gens:
        return UnitGroup(q, encode(q.p, q.unit.reshape(1, -1)), [])
    inv = [(q.left_matrix(q.unit_inverse(c)), q.right_matrix(c)) for c in conjugators]
    while True:
        grp = unit_closure(q, gens, cap)
        pts = grp.coords()
        extra = []
        for left, right in inv:
            conj = matmul_mod(matmul_mod(pts, left, q.p), right, q.p)
            miss = ~grp.contains(conj)
            if miss.any():
                extra.append(conj[np.flatnonzero(miss)[0]])
        if not extra:
            return grp
        gens = gens + extra


def derived_unit_subgroup(q: QuotientAlgebra, generators) -> UnitGroup:
    """``gamma_2`` of the group generated by ``generators``."""
    comms = [q.commutator(x, y) for i, x in enumerate(generators) for y in generators[i + 1:]]
    comms = [c for c in comms if not np.array_equal(c, q.unit)]
    return unit_normal_closure(q, comms, generators)


def compute_d_algebra(A: GroupAlgebra) -> int:
    """``log_p |I / (Z(FG) cap I + I^2)|``."""
    aug = augmentation_ideal(A)
    i2 = augmentation_times(A, aug)
    zi = linalg.subspace_intersect(algebra_center(A), aug)
    return aug.dim - linalg.subspace_sum(zi, i2).dim


def frattini_from_algebra(A: GroupAlgebra) -> Subgroup:
    """``(1 + I(G)^2) cap G``."""
    i2 = augmentation_times(A, augmentation_ideal(A))
    return sg.from_element_set(A.G, elements_in(A, i2))


def jennings_prediction(G: PcPresentation, terms: int | None = None) -> list[int]:
    """``dim I^n / I^(n+1)`` predicted from the dimension subgroup ranks.

    Coefficients of ``prod_i ((1 - t^(i p)) / (1 - t^i))^(d_i)``, starting
    from ``n = 0``.
    """
    dims = sg.jennings_dims(G)
    p = G.p
    top = sum(i * d for i, d in enumerate(dims, start=1)) * (p - 1)
    terms = top + 1 if terms is None else terms
    poly = np.zeros(top + 1, dtype=object)
    poly[0] = 1
    for i, d in enumerate(dims, start=1):
        factor = np.zeros(top + 1, dtype=object)
        for k in range(p):
            if i * k <= top:
                factor[i * k] = 1
        for _ in range(d):
            poly = np.convolve(poly, factor)[: top + 1]
    out = [int(c) for c in poly[:terms]]
    return out + [0] * (terms - len(out))


@dataclass
class CommutatorLawCheck:
    holds: bool
    checked: int
    failures: list = field(default_factory=list)

    def __bool__(self):
        return self.holds


def check_a_commutator_law(q: QuotientAlgebra, burnside) -> CommutatorLawCheck:
    """``[g, a] = [g, g_1, .., g_1, g_2, ..]`` for every g in G and every A-generator.

    The left side is computed with units of ``q``; the right side is an
    iterated commutator in G, projected afterwards.
    """
    G = q.algebra.G
    col = G.collector
    tab = G.table
    failures = []
    checked = 0
    gens = a_subgroup_generators(q, burnside)
    for k, a in gens:
        for gi in range(tab.size):
            g = tab.element(gi)
            lhs = q.commutator(q.image(gi), a)
            c = g
            for b, e in zip(burnside, k):
                for _ in range(e):
                    c = col.commutator(c, b)
            rhs = q.image(c)
            checked += 1
            if not np.array_equal(lhs, rhs):
                failures.append((k, g))
    return CommutatorLawCheck(not failures, checked, failures)
