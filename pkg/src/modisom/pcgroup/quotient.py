"""Factor groups and change of pc basis."""

from __future__ import annotations

import random

from ..errors import PreconditionError
from .presentation import Element, PcPresentation
from .subgroups import Subgroup, is_normal


class QuotientMap:
    """The natural projection ``G -> G/N`` onto a pc presentation of ``G/N``.

    The quotient is generated by the images of the pc generators of ``G``
    that are not depths of ``N``'s igs.  Coset representatives are reduced by
    right multiplication with ``N``'s canonical igs, which zeroes the depth
    positions and leaves the quotient exponents in the others.
    """

    def __init__(self, G: PcPresentation, N: Subgroup, Q: PcPresentation, keep: list[int]):
        self.source = G
        self.kernel = N
        self.target = Q
        self.keep = keep
        self._by_depth = {d: t for d, t in zip(N.depths, N.igs)}

    def representative(self, x: Element) -> Element:
        col = self.source.collector
        p = self.source.p
        for d in sorted(self._by_depth):
            e = x[d]
            if e:
                x = col.multiply(x, col.power(self._by_depth[d], p - e))
        return x

    def __call__(self, x: Element) -> Element:
        r = self.representative(self.source.check_element(x))
        return tuple(r[k] for k in self.keep)

    def lift(self, y: Element) -> Element:
        v = [0] * self.source.n
        for k, e in zip(self.keep, y):
            v[k] = e
        return tuple(v)


def quotient_presentation(G: PcPresentation, N: Subgroup, name: str | None = None) -> tuple[PcPresentation, QuotientMap]:
    if not is_normal(N):
        raise PreconditionError("quotient by a non-normal subgroup")
    keep = [i for i in range(G.n) if i not in N.depths]
    pos = {k: a for a, k in enumerate(keep)}
    col = G.collector
    proj = QuotientMap(G, N, None, keep)  # type: ignore[arg-type]
    powers = []
    for i in keep:
        powers.append(proj(G.powers[i]))
    comms = []
    for a, i in enumerate(keep):
        for j in keep[a + 1:]:
            w = proj(col.commutator(G.gen(j), G.gen(i)))
            if any(w):
                comms.append(((pos[j], pos[i]), w))
    Q = PcPresentation(G.p, len(keep), tuple(powers), tuple(comms), name if name is not None else f"{G.name}/N")
    proj.target = Q
    return Q, proj


class Relabeling:
    """An isomorphism ``G' -> G`` from a change of pc basis.

    ``images[i]`` is the element of ``G`` that the i-th pc generator of
    ``G'`` maps to.
    """

    def __init__(self, source: PcPresentation, target: PcPresentation, images: list[Element]):
        self.source = source
        self.target = target
        self.images = images

    def __call__(self, x: Element) -> Element:
        col = self.target.collector
        out = self.target.identity
        for h, e in zip(self.images, x):
            if e:
                out = col.multiply(out, col.power(h, e))
        return out


def _coords(G: PcPresentation, basis: list[Element], leads: list[int], x: Element) -> Element:
    col = G.collector
    p = G.p
    out = []
    for d, h in enumerate(basis):
        e = (x[d] * pow(leads[d], -1, p)) % p
        out.append(e)
        if e:
            x = col.multiply(col.inverse(col.power(h, e)), x)
    assert not any(x)
    return tuple(out)


def relabel(G: PcPresentation, seed: int = 0, name: str | None = None) -> tuple[PcPresentation, Relabeling]:
    """A second pc presentation of ``G`` on a randomised pc basis.

    New generators are ``h_i = g_i^{s_i} r_i`` with ``s_i`` a unit mod p and
    ``r_i`` a random element of ``<g_{i+1}, ..., g_n>``; the pc series is
    unchanged but every relation word is rewritten.  Deterministic in ``seed``.
    """
    rng = random.Random(seed)
    p, n = G.p, G.n
    col = G.collector
    leads = [rng.randrange(1, p) for _ in range(n)]
    basis = []
    for i in range(n):
        v = [0] * n
        v[i] = leads[i]
        for k in range(i + 1, n):
            v[k] = rng.randrange(p)
        basis.append(tuple(v))
    powers = tuple(_coords(G, basis, leads, col.power(h, p)) for h in basis)
    comms = []
    for i in range(n):
        for j in range(i + 1, n):
            w = _coords(G, basis, leads, col.commutator(basis[j], basis[i]))
            if any(w):
                comms.append(((j, i), w))
    H = PcPresentation(p, n, powers, tuple(comms), name if name is not None else f"{G.name}~{seed}")
    return H, Relabeling(H, G, basis)
