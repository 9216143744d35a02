"""Subgroups by induced generating sequences, and the standard series.

A :class:`Subgroup` stores its canonical induced generating sequence (igs):
elements with strictly increasing depths, leading exponent 1, and exponent
0 at the depths of the other members.  Two subgroups are equal exactly when
their canonical igs agree.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from ..errors import InputError, PreconditionError
from .presentation import Element, PcPresentation


@dataclass(frozen=True)
class Subgroup:
    group: PcPresentation
    igs: tuple[Element, ...]

    @property
    def order(self) -> int:
        return self.group.p ** len(self.igs)

    @property
    def log_order(self) -> int:
        return len(self.igs)

    @cached_property
    def depths(self) -> tuple[int, ...]:
        return tuple(self.group.depth(t) for t in self.igs)

    @cached_property
    def _by_depth(self) -> dict[int, list[Element]]:
        # depth -> [t^0, t^1, ..., t^(p-1)]
        col = self.group.collector
        out = {}
        for d, t in zip(self.depths, self.igs):
            pw = [self.group.identity, t]
            for _ in range(self.group.p - 2):
                pw.append(col.multiply(pw[-1], t))
            out[d] = pw
        return out

    def sift(self, x: Element) -> Element:
        """Remainder of ``x`` after reduction; the identity iff ``x`` is a member."""
        return _sift(self.group, self._by_depth, x)

    def __contains__(self, x) -> bool:
        return not any(self.sift(self.group.check_element(x)))

    def __le__(self, other: "Subgroup") -> bool:
        return all(t in other for t in self.igs)

    def __lt__(self, other: "Subgroup") -> bool:
        return self <= other and self.order < other.order

    @property
    def is_trivial(self) -> bool:
        return not self.igs

    def element_indices(self) -> np.ndarray:
        return self.group.table.subgroup_indices(self.igs)

    def elements(self) -> list[Element]:
        tab = self.group.table
        return [tab.element(k) for k in self.element_indices()]

    def __repr__(self):
        name = self.group.name or "G"
        return f"Subgroup(order={self.group.p}^{len(self.igs)} of {name})"


def _sift(G: PcPresentation, by_depth, x: Element) -> Element:
    col = G.collector
    p = G.p
    for d in range(G.n):
        e = x[d]
        if not e:
            continue
        pw = by_depth.get(d)
        if pw is None:
            return x
        x = col.multiply(x, pw[p - e])
    return x


def _canonical(G: PcPresentation, table: dict[int, Element]) -> tuple[Element, ...]:
    col = G.collector
    p = G.p
    depths = sorted(table)
    powers = {}
    for d in depths:
        t = table[d]
        pw = [G.identity, t]
        for _ in range(p - 2):
            pw.append(col.multiply(pw[-1], t))
        powers[d] = pw
    out = []
    for d in depths:
        t = table[d]
        for d2 in depths:
            if d2 > d and t[d2]:
                t = col.multiply(t, powers[d2][p - t[d2]])
        out.append(t)
    return tuple(out)


def closure(G: PcPresentation, gens: Iterable[Element], start: Subgroup | None = None) -> Subgroup:
    """Subgroup generated by ``gens`` (together with ``start`` if given)."""
    col = G.collector
    p = G.p
    table: dict[int, Element] = {}
    by_depth: dict[int, list[Element]] = {}

    def insert(t: Element) -> None:
        d = G.depth(t)
        a = t[d]
        if a != 1:
            t = col.power(t, pow(a, -1, p))
        table[d] = t
        pw = [G.identity, t]
        for _ in range(p - 2):
            pw.append(col.multiply(pw[-1], t))
        by_depth[d] = pw

    queue: list[Element] = []
    if start is not None:
        for t in start.igs:
            insert(t)
    queue.extend(G.check_element(g) for g in gens)
    while queue:
        x = _sift(G, by_depth, queue.pop())
        if not any(x):
            continue
        others = list(table.values())
        insert(x)
        t = table[G.depth(x)]
        queue.append(col.power(t, p))
        queue.extend(col.commutator(t, s) for s in others)
    return Subgroup(G, _canonical(G, table))


def trivial_subgroup(G: PcPresentation) -> Subgroup:
    return Subgroup(G, ())


def whole_group(G: PcPresentation) -> Subgroup:
    return Subgroup(G, tuple(G.gens))


def subgroup_closure(G: PcPresentation, gens: Iterable[Element]) -> Subgroup:
    return closure(G, gens)


def from_element_set(G: PcPresentation, indices) -> Subgroup:
    """Subgroup consisting of exactly the given element indices.

    The caller guarantees the set is a subgroup; this just finds its igs.
    """
    tab = G.table
    idx = np.unique(np.asarray(indices, dtype=np.int64))
    target = idx.size
    s = trivial_subgroup(G)
    for k in idx:
        if s.order == target:
            break
        x = tab.element(k)
        if x not in s:
            s = closure(G, [x], start=s)
    if s.order != target:
        raise InputError("element set is not a subgroup")
    return s


def is_normal(N: Subgroup) -> bool:
    G = N.group
    col = G.collector
    return all(col.conjugate(t, g) in N for t in N.igs for g in G.gens)


def normal_closure(G: PcPresentation, gens: Iterable[Element]) -> Subgroup:
    s = closure(G, gens)
    col = G.collector
    while True:
        new = [c for t in s.igs for g in G.gens if (c := col.conjugate(t, g)) not in s]
        if not new:
            return s
        s = closure(G, new, start=s)


def commutator_subgroup(a: Subgroup, b: Subgroup) -> Subgroup:
    """``[A, B]`` for normal subgroups A, B."""
    G = a.group
    col = G.collector
    return normal_closure(G, [col.commutator(x, y) for x in a.igs for y in b.igs])


def center(G: PcPresentation) -> Subgroup:
    """Z(G): elements commuting with every pc generator (scan of the enumeration)."""
    mask = G.table.central_mask
    return from_element_set(G, np.flatnonzero(mask))


def centralizer_of_elements(G: PcPresentation, xs: Sequence[Element]) -> Subgroup:
    tab = G.table
    idx = np.arange(tab.size, dtype=np.int64)
    mask = np.ones(tab.size, dtype=bool)
    for x in xs:
        xi = tab.index(x)
        mask &= tab.mul_right(idx, xi) == tab.mul_left(xi, idx)
    return from_element_set(G, np.flatnonzero(mask))


def lower_central_series(G: PcPresentation) -> list[Subgroup]:
    """``[G, gamma_2, ..., 1]`` ending with the trivial subgroup."""
    series = [whole_group(G)]
    whole = series[0]
    while not series[-1].is_trivial:
        series.append(commutator_subgroup(series[-1], whole))
        if series[-1] == series[-2]:
            raise PreconditionError("lower central series does not terminate; not a p-group presentation?")
    return series


def nilpotency_class(G: PcPresentation) -> int:
    return len(lower_central_series(G)) - 1 if G.n else 0


def gamma(G: PcPresentation, i: int) -> Subgroup:
    lcs = lower_central_series(G)
    return lcs[i - 1] if i - 1 < len(lcs) else lcs[-1]


def power_subgroup(s: Subgroup, k: int | None = None) -> Subgroup:
    """Subgroup generated by the ``k``-th powers of all elements (k = p by default)."""
    G = s.group
    tab = G.table
    k = G.p if k is None else k
    members = s.element_indices()
    pw = np.unique(tab.pow(members, k))
    sub = trivial_subgroup(G)
    for kk in pw:
        x = tab.element(kk)
        if x not in sub:
            sub = closure(G, [x], start=sub)
    return sub


def subgroup_power_p(s: Subgroup) -> Subgroup:
    return power_subgroup(s)


def agemo(G: PcPresentation) -> Subgroup:
    return power_subgroup(whole_group(G))


def subgroup_product(a: Subgroup, b: Subgroup) -> Subgroup:
    if a.group != b.group:
        raise InputError("subgroups of different groups")
    if not (is_normal(a) and is_normal(b)):
        raise PreconditionError("subgroup_product expects normal subgroups")
    return closure(a.group, b.igs, start=a)


def frattini(G: PcPresentation) -> Subgroup:
    col = G.collector
    gam2 = commutator_subgroup(whole_group(G), whole_group(G))
    return closure(G, [col.power(g, G.p) for g in G.gens], start=gam2)


def subgroup_frattini(s: Subgroup) -> Subgroup:
    """``Phi(S) = S^p [S, S]`` for a normal subgroup S."""
    return closure(s.group, power_subgroup(s).igs, start=commutator_subgroup(s, s))


def verbal_subgroups(G: PcPresentation) -> dict[str, Subgroup]:
    whole = whole_group(G)
    derived = commutator_subgroup(whole, whole)
    ag = agemo(G)
    return {"agemo": ag, "frattini": closure(G, ag.igs, start=derived), "derived": derived}


def intersection(a: Subgroup, b: Subgroup) -> Subgroup:
    if a.group != b.group:
        raise InputError("subgroups of different groups")
    small, big = (a, b) if a.order <= b.order else (b, a)
    G = a.group
    tab = G.table
    keep = [k for k in small.element_indices() if tab.element(k) in big]
    return from_element_set(G, keep)


def jennings_series(G: PcPresentation) -> list[Subgroup]:
    """Dimension subgroups ``D_i = [D_{i-1}, G] (D_{ceil(i/p)})^p`` down to 1."""
    whole = whole_group(G)
    series = [whole]
    i = 1
    while not series[-1].is_trivial:
        i += 1
        prev = series[-1]
        c = commutator_subgroup(prev, whole)
        src = series[-(-i // G.p) - 1]
        pw = power_subgroup(src)
        series.append(closure(G, pw.igs, start=c))
    return series


def jennings_dims(G: PcPresentation) -> list[int]:
    s = jennings_series(G)
    return [s[i].log_order - s[i + 1].log_order for i in range(len(s) - 1)]


def is_abelian_subgroup(s: Subgroup) -> bool:
    col = s.group.collector
    return all(not any(col.commutator(x, y)) for i, x in enumerate(s.igs) for y in s.igs[i + 1:])


def abelian_invariants(s: Subgroup) -> tuple[int, ...]:
    """Elementary divisors of an abelian subgroup, ascending."""
    if not is_abelian_subgroup(s):
        raise PreconditionError("abelian_invariants needs an abelian subgroup")
    G = s.group
    col = G.collector
    p = G.p
    sizes = [s.log_order]
    gens = list(s.igs)
    # the p^j-th powers of generators generate the p^j-th power subgroup
    while sizes[-1]:
        gens = [col.power(g, p) for g in gens]
        sizes.append(closure(G, gens).log_order)
    out = []
    for j in range(len(sizes) - 1):
        at_least = sizes[j] - sizes[j + 1]
        exactly = at_least - (sizes[j + 1] - sizes[j + 2] if j + 2 < len(sizes) else 0)
        out.extend([p ** (j + 1)] * exactly)
    return tuple(sorted(out))


def burnside_basis(G: PcPresentation) -> list[Element]:
    """Minimal generating set: pc generators not at the depths of Phi(G)."""
    phi = frattini(G)
    return [G.gen(i) for i in range(G.n) if i not in phi.depths]


def generator_rank(G: PcPresentation) -> int:
    return G.n - frattini(G).log_order


def exponent(G: PcPresentation) -> int:
    return int(G.table.orders.max()) if G.n else 1
