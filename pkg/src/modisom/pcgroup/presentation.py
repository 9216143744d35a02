"""Power-commutator presentations of finite p-groups and collection.

A presentation on pc generators ``g_1, ..., g_n`` (0-based internally) with
every relative order equal to ``p`` is given by

* ``powers[i]``: the normal form of ``g_i^p``, supported on indices > i;
* ``commutators[(j, i)]`` for ``j > i``: the normal form of ``[g_j, g_i]``,
  supported on indices > i.

Elements are plain tuples of exponents in ``[0, p)``; the tuple ``e`` stands
for ``g_1^e_1 ... g_n^e_n``.  Commutators follow ``[a, b] = a^-1 b^-1 a b``,
so ``g_j g_i = g_i g_j [g_j, g_i]``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping

from ..errors import InputError

Element = tuple[int, ...]


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    k = 2
    while k * k <= p:
        if p % k == 0:
            return False
        k += 1
    return True


@dataclass(frozen=True)
class PcPresentation:
    """A power-commutator presentation with all relative orders ``p``.

    ``commutators`` only lists nontrivial pairs; omitted pairs commute.
    Instances are immutable and hashable; collection caches live on a
    private :class:`Collector` created on first use.
    """

    p: int
    n: int
    powers: tuple[Element, ...]
    commutators: tuple[tuple[tuple[int, int], Element], ...] = ()
    name: str = ""

    def __post_init__(self):
        p, n = self.p, self.n
        if not isinstance(p, int) or not is_prime(p):
            raise InputError(f"p={p!r} is not a prime")
        if n < 0:
            raise InputError("negative generator count")
        if len(self.powers) != n:
            raise InputError(f"expected {n} power relations, got {len(self.powers)}")
        for i, w in enumerate(self.powers):
            self._check_word(w, i, f"power relation of g{i + 1}")
        seen = set()
        for (j, i), w in self.commutators:
            if not (0 <= i < j < n):
                raise InputError(f"commutator index pair ({j + 1}, {i + 1}) must satisfy n >= j > i >= 1")
            if (j, i) in seen:
                raise InputError(f"duplicate commutator relation [g{j + 1}, g{i + 1}]")
            seen.add((j, i))
            self._check_word(w, i, f"commutator [g{j + 1}, g{i + 1}]")

    def _check_word(self, w, i: int, what: str) -> None:
        if len(w) != self.n:
            raise InputError(f"{what}: word has length {len(w)}, expected {self.n}")
        for k, e in enumerate(w):
            if not (0 <= e < self.p):
                raise InputError(f"{what}: exponent {e} of g{k + 1} is not in [0, {self.p})")
            if e and k <= i:
                raise InputError(f"{what}: word involves g{k + 1}, only generators after g{i + 1} allowed")

    @classmethod
    def from_relations(
        cls,
        p: int,
        n: int,
        powers: Mapping[int, Iterable[tuple[int, int]]] | None = None,
        commutators: Mapping[tuple[int, int], Iterable[tuple[int, int]]] | None = None,
        name: str = "",
    ) -> "PcPresentation":
        """Build from sparse 1-based words ``[(generator, exponent), ...]``.

        ``powers[i]`` is ``g_i^p`` and ``commutators[(j, i)]`` is ``[g_j, g_i]``;
        missing entries are trivial.
        """
        def vec(word) -> Element:
            v = [0] * n
            last = 0
            for g, e in word:
                if not (1 <= g <= n):
                    raise InputError(f"generator index {g} out of range 1..{n}")
                if g <= last:
                    raise InputError("word is not in normal form (indices must increase)")
                last = g
                v[g - 1] = e
            return tuple(v)

        pw = [tuple([0] * n)] * n
        for i, w in (powers or {}).items():
            pw[i - 1] = vec(w)
        comm = []
        for (j, i), w in sorted((commutators or {}).items(), key=lambda kv: (kv[0][0], kv[0][1])):
            v = vec(w)
            if any(v):
                comm.append(((j - 1, i - 1), v))
        return cls(p, n, tuple(pw), tuple(comm), name)

    @property
    def order(self) -> int:
        return self.p ** self.n

    @cached_property
    def comm_table(self) -> dict[tuple[int, int], Element]:
        return dict(self.commutators)

    def comm_word(self, j: int, i: int) -> Element:
        return self.comm_table.get((j, i), self.identity)

    @property
    def identity(self) -> Element:
        return (0,) * self.n

    def gen(self, i: int) -> Element:
        v = [0] * self.n
        v[i] = 1
        return tuple(v)

    @property
    def gens(self) -> list[Element]:
        return [self.gen(i) for i in range(self.n)]

    def is_weighted(self) -> bool:
        """True if every ``[g_j, g_i]`` only involves generators after ``g_j``."""
        return all(not any(w[: j + 1]) for (j, _), w in self.commutators)

    @cached_property
    def collector(self) -> "Collector":
        return Collector(self)

    @cached_property
    def table(self):
        """Enumerated form (:class:`~modisom.pcgroup.table.GroupTable`)."""
        from .table import GroupTable

        return GroupTable(self)

    # element arithmetic ------------------------------------------------

    def check_element(self, x) -> Element:
        if len(x) != self.n or any(not (0 <= e < self.p) for e in x):
            raise InputError(f"{x!r} is not an element of {self.name or 'the group'} (n={self.n}, p={self.p})")
        return tuple(int(e) for e in x)

    def multiply(self, x: Element, y: Element) -> Element:
        return self.collector.multiply(self.check_element(x), self.check_element(y))

    def inverse(self, x: Element) -> Element:
        return self.collector.inverse(self.check_element(x))

    def power(self, x: Element, k: int) -> Element:
        return self.collector.power(self.check_element(x), k)

    def commutator(self, x: Element, y: Element) -> Element:
        return self.collector.commutator(self.check_element(x), self.check_element(y))

    def conjugate(self, x: Element, y: Element) -> Element:
        """``x^y = y^-1 x y``."""
        return self.collector.conjugate(self.check_element(x), self.check_element(y))

    def element_order(self, x: Element) -> int:
        return self.collector.element_order(self.check_element(x))

    def product(self, xs: Iterable[Element]) -> Element:
        out = self.identity
        for x in xs:
            out = self.collector.multiply(out, x)
        return out

    def word(self, letters: Iterable[tuple[int, int]]) -> Element:
        """Evaluate a sparse 1-based word ``[(generator, exponent), ...]``."""
        out = self.identity
        for g, e in letters:
            out = self.collector.multiply(out, self.collector.power(self.gen(g - 1), e))
        return out

    def depth(self, x: Element) -> int:
        """Index of the first nonzero exponent, or ``n`` for the identity."""
        for k, e in enumerate(x):
            if e:
                return k
        return self.n

    def format(self, x: Element) -> str:
        parts = [f"g{k + 1}" + (f"^{e}" if e > 1 else "") for k, e in enumerate(x) if e]
        return "*".join(parts) or "1"

    def elements(self):
        from itertools import product

        return product(range(self.p), repeat=self.n)


class Collector:
    """Collection to normal form for one presentation.

    Multiplication by a pc generator ``g_i`` on the right is

        x g_i = (prefix) g_i (tail)^{g_i},

    where ``tail`` is the part of ``x`` in ``G_{i+1} = <g_{i+1}, ..., g_n>``.
    Conjugation of tails by ``g_i`` only needs arithmetic in ``G_{i+1}``, so
    the recursion terminates; it is memoised per ``(i, tail)``, which bounds
    the work by the size of the subgroups in the pc series.
    """

    def __init__(self, pres: PcPresentation):
        self.pres = pres
        self.p = pres.p
        self.n = pres.n
        self.zero = pres.identity
        self._conj: dict[tuple[int, Element], Element] = {}
        self._wconj: dict[tuple[int, Element], Element] = {}
        self._cgen: dict[tuple[int, int, int], Element] = {}

    def _conjugated_gen_power(self, j: int, i: int, a: int) -> Element:
        """``(g_j^{g_i})^a`` for j > i."""
        key = (j, i, a)
        hit = self._cgen.get(key)
        if hit is not None:
            return hit
        if a == 1:
            base = [0] * self.n
            base[j] = 1
            res = self.multiply(tuple(base), self.pres.comm_word(j, i))
        else:
            res = self.multiply(self._conjugated_gen_power(j, i, a - 1), self._conjugated_gen_power(j, i, 1))
        self._cgen[key] = res
        return res

    def conj_tail(self, i: int, t: Element) -> Element:
        """``t^{g_i}`` for ``t`` in G_{i+1} (zeros at positions <= i)."""
        key = (i, t)
        hit = self._conj.get(key)
        if hit is not None:
            return hit
        j = i + 1
        n = self.n
        while j < n and t[j] == 0:
            j += 1
        if j == n:
            res = t
        else:
            rest = t[:j] + (0,) + t[j + 1:]
            res = self.multiply(self._conjugated_gen_power(j, i, t[j]), self.conj_tail(i, rest))
        self._conj[key] = res
        return res

    def _power_times_conj(self, i: int, t: Element) -> Element:
        key = (i, t)
        hit = self._wconj.get(key)
        if hit is not None:
            return hit
        res = self.multiply(self.pres.powers[i], self.conj_tail(i, t))
        self._wconj[key] = res
        return res

    def mul_gen(self, x: Element, i: int) -> Element:
        """``x * g_i``."""
        head = x[:i]
        tail = (0,) * (i + 1) + x[i + 1:]
        e = x[i] + 1
        if not any(x[i + 1:]):
            if e < self.p:
                return head + (e,) + x[i + 1:]
            return head + (0,) + self.pres.powers[i][i + 1:]
        if e < self.p:
            return head + (e,) + self.conj_tail(i, tail)[i + 1:]
        return head + (0,) + self._power_times_conj(i, tail)[i + 1:]

    def multiply(self, x: Element, y: Element) -> Element:
        r = x
        p = self.p
        for j, e in enumerate(y):
            if not e:
                continue
            if r[j] + e < p and not any(r[j + 1:]):
                r = r[:j] + (r[j] + e,) + r[j + 1:]
                continue
            for _ in range(e):
                r = self.mul_gen(r, j)
        return r

    def inverse(self, x: Element) -> Element:
        # right-multiply by g_i^{p - r_i} position by position; the factors
        # read off in order are already the normal form of x^-1
        r = x
        out = [0] * self.n
        p = self.p
        for i in range(self.n):
            if r[i]:
                t = p - r[i]
                out[i] = t
                for _ in range(t):
                    r = self.mul_gen(r, i)
        return tuple(out)

    def power(self, x: Element, k: int) -> Element:
        if k < 0:
            x, k = self.inverse(x), -k
        result = self.zero
        base = x
        while k:
            if k & 1:
                result = self.multiply(result, base)
            k >>= 1
            if k:
                base = self.multiply(base, base)
        return result

    def commutator(self, x: Element, y: Element) -> Element:
        return self.multiply(self.inverse(self.multiply(y, x)), self.multiply(x, y))

    def conjugate(self, x: Element, y: Element) -> Element:
        return self.multiply(self.inverse(y), self.multiply(x, y))

    def element_order(self, x: Element) -> int:
        order = 1
        while any(x):
            x = self.power(x, self.p)
            order *= self.p
        return order


@dataclass
class ConsistencyReport:
    consistent: bool
    mode: str  # "exhaustive" | "sampled" | "test-words"
    checked: int
    failure: tuple | None = None
    notes: list[str] = field(default_factory=list)

    def __bool__(self):
        return self.consistent


def consistency_test_words(pres: PcPresentation) -> ConsistencyReport:
    """The standard overlap checks for a pc presentation.

    Checks ``(g_k g_j) g_i = g_k (g_j g_i)``, ``(g_j^p) g_i = g_j^{p-1}(g_j g_i)``,
    ``g_j (g_i^p) = (g_j g_i) g_i^{p-1}`` and ``(g_i^p) g_i = g_i (g_i^p)``.
    """
    c = pres.collector
    n, p = pres.n, pres.p
    g = pres.gens
    checked = 0

    def gpow(i, e):
        v = [0] * n
        v[i] = e
        return tuple(v)

    for i in range(n):
        checked += 1
        if c.multiply(pres.powers[i], g[i]) != c.multiply(g[i], pres.powers[i]):
            return ConsistencyReport(False, "test-words", checked, (f"g{i+1}^p", f"g{i+1}"))
        for j in range(i + 1, n):
            checked += 2
            gji = c.multiply(g[j], g[i])
            if c.multiply(pres.powers[j], g[i]) != c.multiply(gpow(j, p - 1), gji):
                return ConsistencyReport(False, "test-words", checked, (f"g{j+1}^p", f"g{i+1}"))
            if c.multiply(g[j], pres.powers[i]) != c.multiply(gji, gpow(i, p - 1)):
                return ConsistencyReport(False, "test-words", checked, (f"g{j+1}", f"g{i+1}^p"))
            for k in range(j + 1, n):
                checked += 1
                if c.multiply(c.multiply(g[k], g[j]), g[i]) != c.multiply(g[k], gji):
                    return ConsistencyReport(False, "test-words", checked, (f"g{k+1}", f"g{j+1}", f"g{i+1}"))
    return ConsistencyReport(True, "test-words", checked)


def random_element(pres: PcPresentation, rng: random.Random) -> Element:
    return tuple(rng.randrange(pres.p) for _ in range(pres.n))
