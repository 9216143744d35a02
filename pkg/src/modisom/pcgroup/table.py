"""Enumerated groups: every element gets an integer index.

The index of ``(e_1, ..., e_n)`` is ``sum e_i p^(n-i)``, so index order is
lexicographic order on exponent vectors.  Right multiplication by each pc
generator is stored as one integer array; every other operation is a chain
of lookups in those arrays, vectorised over many elements at once.  This is
the same chain the collector performs, so results agree exactly with
:meth:`PcPresentation.multiply`.
"""

from __future__ import annotations

from functools import cached_property

import numpy as np

from ..errors import ResourceError
from .presentation import Element, PcPresentation

DEFAULT_MAX_TABLE = 5**7 * 3


class GroupTable:
    def __init__(self, pres: PcPresentation, max_order: int = DEFAULT_MAX_TABLE):
        if pres.order > max_order:
            raise ResourceError(f"|G| = {pres.order} exceeds the enumeration cap {max_order}")
        self.pres = pres
        self.p = pres.p
        self.n = pres.n
        self.size = pres.order
        idx = np.arange(self.size, dtype=np.int64)
        self.weights = np.array([self.p ** (self.n - 1 - k) for k in range(self.n)], dtype=np.int64)
        self.digits = (idx[:, None] // self.weights[None, :]) % self.p
        col = pres.collector
        elems = [tuple(int(v) for v in row) for row in self.digits]
        right = np.empty((self.n, self.size), dtype=np.int64)
        for j in range(self.n):
            right[j] = [self.index(col.mul_gen(x, j)) for x in elems]
        self.right = right

    def index(self, x) -> int:
        out = 0
        for e in x:
            out = out * self.p + int(e)
        return out

    def element(self, k: int) -> Element:
        return tuple(int(v) for v in self.digits[int(k)])

    def indices(self, elems) -> np.ndarray:
        a = np.asarray(list(elems), dtype=np.int64).reshape(-1, self.n)
        return a @ self.weights

    # vectorised arithmetic ----------------------------------------------

    def mul(self, a, b) -> np.ndarray:
        """Elementwise product of index arrays (broadcasting)."""
        a, b = np.broadcast_arrays(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
        out = a.copy()
        flat = out.reshape(-1)
        bd = self.digits[b.reshape(-1)]
        for j in range(self.n):
            col = bd[:, j]
            for t in range(1, self.p):
                mask = col >= t
                if not mask.any():
                    break
                flat[mask] = self.right[j][flat[mask]]
        return flat.reshape(a.shape)

    def mul_right(self, a, y: int) -> np.ndarray:
        """``a * y`` for a fixed element index ``y``."""
        out = np.asarray(a, dtype=np.int64).copy()
        for j, e in enumerate(self.digits[int(y)]):
            for _ in range(int(e)):
                out = self.right[j][out]
        return out

    def mul_left(self, x: int, b) -> np.ndarray:
        """``x * b`` for a fixed element index ``x``."""
        b = np.asarray(b, dtype=np.int64)
        return self.mul(np.full(b.shape, int(x), dtype=np.int64), b)

    @cached_property
    def inverse_map(self) -> np.ndarray:
        r = np.arange(self.size, dtype=np.int64)
        inv = np.zeros(self.size, dtype=np.int64)
        for i in range(self.n):
            t = (self.p - self.digits[r, i]) % self.p
            inv += t * self.weights[i]
            for s in range(1, self.p):
                mask = t >= s
                if not mask.any():
                    break
                r[mask] = self.right[i][r[mask]]
        return inv

    def inv(self, a) -> np.ndarray:
        return self.inverse_map[np.asarray(a, dtype=np.int64)]

    def pow(self, a, k: int) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if k < 0:
            a, k = self.inv(a), -k
        result = np.zeros_like(a)
        base = a.copy()
        while k:
            if k & 1:
                result = self.mul(result, base)
            k >>= 1
            if k:
                base = self.mul(base, base)
        return result

    @cached_property
    def pth_power_map(self) -> np.ndarray:
        return self.pow(np.arange(self.size, dtype=np.int64), self.p)

    @cached_property
    def orders(self) -> np.ndarray:
        """Order of every element."""
        out = np.ones(self.size, dtype=np.int64)
        cur = np.arange(self.size, dtype=np.int64)
        pm = self.pth_power_map
        while True:
            live = cur != 0
            if not live.any():
                return out
            out[live] *= self.p
            cur = pm[cur]

    def comm(self, a, b) -> np.ndarray:
        """``[a, b] = a^-1 b^-1 a b`` elementwise."""
        return self.mul(self.inv(self.mul(b, a)), self.mul(a, b))

    def conj(self, a, g) -> np.ndarray:
        """``a^g = g^-1 a g`` elementwise."""
        return self.mul(self.inv(g), self.mul(a, g))

    @cached_property
    def gen_conjugation(self) -> np.ndarray:
        """Row ``j`` maps each element to its conjugate by ``g_j``."""
        idx = np.arange(self.size, dtype=np.int64)
        rows = []
        for j in range(self.n):
            g = int(self.weights[j])
            rows.append(self.mul_left(int(self.inverse_map[g]), self.right[j][idx]))
        return np.array(rows)

    @cached_property
    def central_mask(self) -> np.ndarray:
        fixed = np.ones(self.size, dtype=bool)
        idx = np.arange(self.size, dtype=np.int64)
        for row in self.gen_conjugation:
            fixed &= row == idx
        return fixed

    @cached_property
    def class_labels(self) -> np.ndarray:
        """Conjugacy class label (least index in the class) of every element."""
        from scipy.sparse import coo_matrix
        from scipy.sparse.csgraph import connected_components

        idx = np.arange(self.size, dtype=np.int64)
        rows = np.concatenate([idx] * self.n)
        cols = self.gen_conjugation.reshape(-1)
        graph = coo_matrix((np.ones(rows.size, dtype=np.int8), (rows, cols)), shape=(self.size, self.size))
        _, labels = connected_components(graph, directed=True, connection="weak")
        least = np.full(labels.max() + 1, self.size, dtype=np.int64)
        np.minimum.at(least, labels, idx)
        return least[labels]

    @cached_property
    def class_sizes(self) -> np.ndarray:
        """Size of the conjugacy class of every element."""
        counts = np.bincount(self.class_labels, minlength=self.size)
        return counts[self.class_labels]

    @cached_property
    def mult_table(self) -> np.ndarray:
        """Full Cayley table ``T[x, y] = index(x * y)``; small groups only."""
        if self.size > 5000:
            raise ResourceError(f"Cayley table for |G| = {self.size} is too large")
        idx = np.arange(self.size, dtype=np.int64)
        return self.mul(idx[:, None], idx[None, :])

    def subgroup_indices(self, igs) -> np.ndarray:
        """All elements of the subgroup with induced generating sequence ``igs``."""
        cur = np.zeros(1, dtype=np.int64)
        for t in igs:
            ti = self.index(t)
            layers = [cur]
            for _ in range(self.p - 1):
                layers.append(self.mul_right(layers[-1], ti))
            cur = np.concatenate(layers)
        return np.sort(cur)
