"""Brute-force isomorphism test for small p-groups.

Backtracking over images of a Burnside basis of ``G``.  A partial
assignment is accepted only if it extends to a well-defined homomorphism on
the subgroup generated so far, checked edge by edge on that subgroup's
Cayley graph.  Candidates are pruned by element order, conjugacy class size
and independence modulo the Frattini subgroup of ``H``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

import numpy as np

from ..errors import InputError, ResourceError
from ..linalg import rank as fp_rank
from .presentation import Element, PcPresentation
from .subgroups import burnside_basis, frattini

DEFAULT_ISO_CAP = 3**6


@dataclass
class Isomorphism:
    source: PcPresentation
    target: PcPresentation
    basis: list[Element]
    images: list[Element]
    table: np.ndarray  # index in G -> index in H

    def __call__(self, x: Element) -> Element:
        tg, th = self.source.table, self.target.table
        return th.element(self.table[tg.index(x)])


def extend_homomorphism(G: PcPresentation, gens: list[int], H: PcPresentation, imgs: list[int]) -> dict | None:
    """Extend ``gens[i] -> imgs[i]`` (element indices) over ``<gens>``.

    Returns ``{g_index: h_index}`` on the generated subgroup, or ``None`` if
    the assignment is not a homomorphism there.
    """
    tg, th = G.table, H.table
    phi = np.full(tg.size, -1, dtype=np.int64)
    phi[0] = 0
    frontier = np.zeros(1, dtype=np.int64)
    while frontier.size:
        fresh = []
        for s, h in zip(gens, imgs):
            nxt = tg.mul_right(frontier, s)
            img = th.mul_right(phi[frontier], h)
            known = phi[nxt] >= 0
            if np.any(phi[nxt[known]] != img[known]):
                return None
            new = ~known
            phi[nxt[new]] = img[new]
            if np.any(phi[nxt[new]] != img[new]):
                return None
            fresh.append(nxt[new])
        frontier = np.unique(np.concatenate(fresh)) if fresh else np.zeros(0, dtype=np.int64)
    dom = np.flatnonzero(phi >= 0)
    return dict(zip(dom.tolist(), phi[dom].tolist()))


def _order_profile(G: PcPresentation) -> Counter:
    tab = G.table
    return Counter(zip(tab.orders.tolist(), tab.class_sizes.tolist()))


def is_isomorphic_bruteforce(G: PcPresentation, H: PcPresentation, cap: int = DEFAULT_ISO_CAP) -> Isomorphism | None:
    """An isomorphism ``G -> H`` or ``None``.

    The first solution in the search order (images enumerated by increasing
    element index) is returned, so the result is deterministic.
    """
    if G.p != H.p:
        raise InputError("groups over different primes")
    if G.order != H.order:
        return None
    if G.order > cap:
        raise ResourceError(f"|G| = {G.order} exceeds the brute-force isomorphism cap {cap}")
    if _order_profile(G) != _order_profile(H):
        return None
    tg, th = G.table, H.table
    basis = burnside_basis(G)
    phi_h = frattini(H)
    if len(basis) != H.n - phi_h.log_order:
        return None
    keep_h = [i for i in range(H.n) if i not in phi_h.depths]

    def frattini_coords(k: int) -> tuple[int, ...]:
        # H/Phi(H) is elementary abelian; canonical coset reps give linear coordinates
        x = th.element(k)
        col = H.collector
        for d, t in zip(phi_h.depths, phi_h.igs):
            if x[d]:
                x = col.multiply(x, col.power(t, H.p - x[d]))
        return tuple(x[i] for i in keep_h)

    b_idx = [tg.index(b) for b in basis]
    cands = []
    for b in b_idx:
        ok = (th.orders == tg.orders[b]) & (th.class_sizes == tg.class_sizes[b])
        cands.append(np.flatnonzero(ok))
    coords = {}

    def coord(k):
        if k not in coords:
            coords[k] = np.array(frattini_coords(k), dtype=np.int64)
        return coords[k]

    chosen: list[int] = []

    def search(level: int):
        if level == len(b_idx):
            return extend_homomorphism(G, b_idx, H, chosen)
        for h in cands[level]:
            h = int(h)
            vecs = [coord(c) for c in chosen] + [coord(h)]
            if fp_rank(np.array(vecs), H.p) != len(vecs):
                continue
            chosen.append(h)
            if extend_homomorphism(G, b_idx[: level + 1], H, chosen) is not None:
                found = search(level + 1)
                if found is not None:
                    return found
            chosen.pop()
        return None

    phi = search(0)
    if phi is None:
        return None
    table = np.array([phi[k] for k in range(tg.size)], dtype=np.int64)
    if np.unique(table).size != th.size:
        return None
    return Isomorphism(G, H, basis, [th.element(k) for k in chosen], table)
