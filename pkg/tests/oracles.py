"""Brute-force reference computations used only by the tests."""

from __future__ import annotations

import itertools

import numpy as np


def closure_indices(mult: np.ndarray, gens) -> set[int]:
    """Subgroup generated by ``gens`` by breadth-first search on a Cayley table."""
    seen = {0}
    frontier = [0]
    gens = [int(g) for g in gens]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = int(mult[x, g])
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def inverse_table(mult: np.ndarray) -> np.ndarray:
    return np.argmax(mult == 0, axis=1)


def commutator_index(mult, inv, a, b) -> int:
    return int(mult[mult[inv[a], inv[b]], mult[a, b]])


def commutator_subgroup(mult, A: set[int], B: set[int]) -> set[int]:
    """[A, B] for normal A, B (generated by all commutators, normal automatically)."""
    inv = inverse_table(mult)
    return closure_indices(mult, {commutator_index(mult, inv, a, b) for a in A for b in B})


def power_index(mult, a, k) -> int:
    x = 0
    for _ in range(k):
        x = int(mult[x, a])
    return x


def center_indices(mult) -> set[int]:
    return {a for a in range(mult.shape[0]) if np.array_equal(mult[a], mult[:, a])}


def lower_central(mult) -> list[set[int]]:
    whole = set(range(mult.shape[0]))
    out = [whole]
    while len(out[-1]) > 1:
        out.append(commutator_subgroup(mult, out[-1], whole))
    return out


def lazard_dimension_subgroups(mult, p) -> list[set[int]]:
    """D_i = prod over j p^k >= i of gamma_j^(p^k) (Lazard's formula), down to 1."""
    lcs = lower_central(mult)
    out = []
    i = 1
    while True:
        gens = set()
        for j, gj in enumerate(lcs, start=1):
            k = 0
            while True:
                if j * p**k >= i:
                    gens |= {power_index(mult, x, p**k) for x in gj}
                    break
                k += 1
        d = closure_indices(mult, gens)
        out.append(d)
        if len(d) == 1:
            return out
        i += 1


def unitriangular_heisenberg(p):
    """Upper unitriangular 3x3 matrices over F_p with their Cayley table."""
    elems = []
    for a, b, c in itertools.product(range(p), repeat=3):
        elems.append(np.array([[1, a, c], [0, 1, b], [0, 0, 1]], dtype=np.int64))
    key = {m.tobytes(): i for i, m in enumerate(elems)}
    n = len(elems)
    mult = np.zeros((n, n), dtype=np.int64)
    for i, x in enumerate(elems):
        for j, y in enumerate(elems):
            mult[i, j] = key[((x @ y) % p).tobytes()]
    return mult


def class_count(mult) -> int:
    inv = inverse_table(mult)
    n = mult.shape[0]
    seen, count = set(), 0
    for x in range(n):
        if x in seen:
            continue
        count += 1
        seen |= {int(mult[mult[inv[g], x], g]) for g in range(n)}
    return count


def element_orders(mult) -> list[int]:
    out = []
    for a in range(mult.shape[0]):
        x, k = a, 1
        while x != 0:
            x = int(mult[x, a])
            k += 1
        out.append(k)
    return out


def nullspace_mod_p(M: np.ndarray, p: int) -> list[list[int]]:
    """Basis of {x : M x = 0} over F_p by plain Gauss-Jordan elimination."""
    rows = [[int(v) % p for v in r] for r in np.asarray(M)]
    ncols = np.asarray(M).shape[1]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], -1, p)
        rows[r] = [(v * inv) % p for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [0] * ncols
        x[f] = 1
        for i, c in enumerate(pivots):
            x[c] = (-rows[i][f]) % p
        basis.append(x)
    return basis
