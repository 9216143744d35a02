"""Associativity and commutator-identity checks on whole presentations."""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import comb

import numpy as np

from ..errors import PreconditionError
from .presentation import ConsistencyReport, PcPresentation, consistency_test_words, random_element
from .subgroups import nilpotency_class
from .table import DEFAULT_MAX_TABLE

EXHAUSTIVE_MAX = 3**5
SAMPLED_TRIPLES = 100_000


def consistency_check(
    pres: PcPresentation,
    seed: int = 0,
    samples: int = SAMPLED_TRIPLES,
    exhaustive_max: int = EXHAUSTIVE_MAX,
) -> ConsistencyReport:
    """Decide whether collection defines a group of order p^n.

    The standard overlap test words are checked first.  Then associativity
    ``(gh)k = g(hk)`` is tested on all triples when ``|G| <= exhaustive_max``
    and on ``samples`` random triples otherwise; a sampled pass is reported
    with mode ``"sampled"``.
    """
    words = consistency_test_words(pres)
    if not words:
        return words
    if pres.order <= exhaustive_max:
        return _exhaustive(pres, words.checked)
    rng = random.Random(seed)
    if pres.order <= DEFAULT_MAX_TABLE:
        tab = pres.table
        nrng = np.random.default_rng(seed)
        a, b, c = (nrng.integers(0, tab.size, size=samples) for _ in range(3))
        lhs = tab.mul(tab.mul(a, b), c)
        rhs = tab.mul(a, tab.mul(b, c))
        bad = np.flatnonzero(lhs != rhs)
        if bad.size:
            k = int(bad[0])
            fail = tuple(tab.element(v) for v in (a[k], b[k], c[k]))
            return ConsistencyReport(False, "sampled", words.checked + k + 1, fail)
    else:
        col = pres.collector
        for k in range(samples):
            g, h, x = (random_element(pres, rng) for _ in range(3))
            if col.multiply(col.multiply(g, h), x) != col.multiply(g, col.multiply(h, x)):
                return ConsistencyReport(False, "sampled", words.checked + k + 1, (g, h, x))
    return ConsistencyReport(True, "sampled", words.checked + samples, notes=["probabilistic pass"])


def _exhaustive(pres: PcPresentation, checked: int) -> ConsistencyReport:
    tab = pres.table
    t = tab.mult_table
    n = tab.size
    for a in range(n):
        lhs = t[t[a]]  # (a b) c, rows b, cols c
        rhs = t[a][t]  # a (b c)
        if not np.array_equal(lhs, rhs):
            b, c = np.argwhere(lhs != rhs)[0]
            return ConsistencyReport(False, "exhaustive", checked + a * n * n, (tab.element(a), tab.element(b), tab.element(c)))
    return ConsistencyReport(True, "exhaustive", checked + n**3)


@dataclass
class IdentityCheck:
    holds: bool
    pairs: int
    violations: int
    mode: str

    def __bool__(self):
        return self.holds


def verify_power_commutator_identity(
    pres: PcPresentation, seed: int = 0, exhaustive_max: int = 5**4, samples: int = 10_000
) -> IdentityCheck:
    """Check ``[x^p, y] = [x,y]^p [[x,y],x]^C(p,2)`` and its mirror image.

    Only meaningful for class at most 3; larger class raises
    :class:`PreconditionError`.
    """
    if nilpotency_class(pres) > 3:
        raise PreconditionError("identity only claimed for nilpotency class <= 3")
    tab = pres.table
    p = pres.p
    if tab.size <= exhaustive_max:
        idx = np.arange(tab.size, dtype=np.int64)
        x, y = (a.reshape(-1) for a in np.meshgrid(idx, idx, indexing="ij"))
        mode = "exhaustive"
    else:
        rng = np.random.default_rng(seed)
        x = rng.integers(0, tab.size, size=samples)
        y = rng.integers(0, tab.size, size=samples)
        mode = "sampled"
    xy = tab.comm(x, y)
    c2 = comb(p, 2)
    lhs1 = tab.comm(tab.pow(x, p), y)
    rhs1 = tab.mul(tab.pow(xy, p), tab.pow(tab.comm(xy, x), c2))
    lhs2 = tab.comm(x, tab.pow(y, p))
    rhs2 = tab.mul(tab.pow(xy, p), tab.pow(tab.comm(xy, y), c2))
    bad = int(np.count_nonzero((lhs1 != rhs1) | (lhs2 != rhs2)))
    return IdentityCheck(bad == 0, int(x.size), bad, mode)
