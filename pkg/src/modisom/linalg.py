"""Dense linear algebra over the prime field F_p.

Matrices are plain ``numpy`` integer arrays with entries in ``[0, p)``.
Everything downstream (ideals of group algebras, quotient algebras,
coordinates in elementary abelian sections) is built on :func:`rref` and
the :class:`Subspace` operations in this module.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InputError

# float64 matmul is exact while every partial sum stays below 2**53
_FLOAT_EXACT = 2**52


def _as_matrix(rows, cols: int | None = None) -> np.ndarray:
    a = np.asarray(rows, dtype=np.int64)
    if a.ndim == 1:
        if a.size == 0:
            a = a.reshape(0, cols or 0)
        else:
            a = a.reshape(1, -1)
    if a.ndim != 2:
        raise InputError(f"expected a 2-d matrix, got shape {a.shape}")
    if cols is not None and a.shape[1] != cols:
        raise InputError(f"row length {a.shape[1]} does not match ambient dimension {cols}")
    return a


def matmul_mod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Return ``a @ b mod p`` for residue matrices."""
    inner = a.shape[-1]
    if inner * (p - 1) ** 2 < _FLOAT_EXACT:
        out = np.asarray(a, dtype=np.float64) @ np.asarray(b, dtype=np.float64)
        return np.mod(out, p).astype(np.int64)
    return np.mod(np.asarray(a, dtype=object) @ np.asarray(b, dtype=object), p).astype(np.int64)


def _inverses(p: int) -> np.ndarray:
    inv = np.zeros(p, dtype=np.int64)
    for x in range(1, p):
        inv[x] = pow(x, -1, p)
    return inv


def _rref_inplace(a: np.ndarray, p: int, ncols: int | None = None) -> tuple[np.ndarray, list[int]]:
    """Row reduce ``a`` (modified) and return (nonzero rows, pivot columns).

    Pivots are searched in the first ``ncols`` columns only; row operations
    act on the full width.
    """
    inv = _inverses(p)
    nrows = a.shape[0]
    width = a.shape[1] if ncols is None else ncols
    pivots: list[int] = []
    r = 0
    for c in range(width):
        if r == nrows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            a[[r, k]] = a[[k, r]]
        lead = int(a[r, c])
        if lead != 1:
            a[r] = (a[r] * inv[lead]) % p
        col = a[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            a[hit] = (a[hit] - np.outer(col[hit], a[r])) % p
        pivots.append(c)
        r += 1
    return a[:r], pivots


def rref(m, p: int) -> tuple[np.ndarray, int]:
    """Reduced row echelon form of ``m`` over F_p with zero rows dropped.

    Pivoting is deterministic (first nonzero column, topmost row), so the
    result is the canonical RREF of the row space.
    """
    a = np.mod(_as_matrix(m), p)
    r, pivots = _rref_inplace(a.copy(), p)
    return r, len(pivots)


@dataclass(frozen=True, eq=False)
class Subspace:
    """A subspace of F_p^n stored by its canonical RREF basis."""

    p: int
    ambient_dim: int
    basis: np.ndarray
    pivots: tuple[int, ...]

    def __post_init__(self):
        self.basis.setflags(write=False)

    @property
    def dim(self) -> int:
        return len(self.pivots)

    rank = dim

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return (
            self.p == other.p
            and self.ambient_dim == other.ambient_dim
            and self.pivots == other.pivots
            and np.array_equal(self.basis, other.basis)
        )

    def __hash__(self):
        return hash((self.p, self.ambient_dim, self.pivots, self.basis.tobytes()))

    def __repr__(self):
        return f"Subspace(p={self.p}, dim={self.dim}, ambient_dim={self.ambient_dim})"

    def reduce(self, vecs) -> np.ndarray:
        """Reduce row vector(s) modulo the subspace; zero exactly on members."""
        x = np.mod(np.asarray(vecs, dtype=np.int64), self.p)
        if self.dim == 0:
            return x
        single = x.ndim == 1
        x2 = x.reshape(1, -1) if single else x
        out = (x2 - matmul_mod(x2[:, list(self.pivots)], self.basis, self.p)) % self.p
        return out[0] if single else out

    def __contains__(self, vec) -> bool:
        return contains(self, vec)

    def __le__(self, other: "Subspace") -> bool:
        _check_same(self, other)
        return not np.any(other.reduce(self.basis)) if self.dim else True


def zero_subspace(p: int, ambient_dim: int) -> Subspace:
    return Subspace(p, ambient_dim, np.zeros((0, ambient_dim), dtype=np.int64), ())


def full_space(p: int, ambient_dim: int) -> Subspace:
    return Subspace(p, ambient_dim, np.eye(ambient_dim, dtype=np.int64), tuple(range(ambient_dim)))


def _from_rref(p: int, dim: int, rows: np.ndarray, pivots) -> Subspace:
    return Subspace(p, dim, np.ascontiguousarray(rows, dtype=np.int64), tuple(int(c) for c in pivots))


def span(p: int, ambient_dim: int, rows, chunk: int | None = None) -> Subspace:
    """Row span of ``rows`` as a :class:`Subspace`.

    Large generating sets are absorbed in chunks: each chunk is first reduced
    against the basis found so far with one matrix product, and only the
    surviving rows are eliminated.
    """
    a = np.mod(_as_matrix(rows, ambient_dim), p)
    if a.shape[0] == 0:
        return zero_subspace(p, ambient_dim)
    chunk = chunk or max(2 * ambient_dim, 64)
    acc = zero_subspace(p, ambient_dim)
    for start in range(0, a.shape[0], chunk):
        acc = _absorb(acc, a[start:start + chunk])
        if acc.dim == ambient_dim:
            break
    return acc


def _absorb(acc: Subspace, block: np.ndarray) -> Subspace:
    rest = acc.reduce(block)
    rest = rest[np.any(rest, axis=1)]
    if rest.shape[0] == 0:
        return acc
    stacked = np.vstack([acc.basis, rest])
    rows, pivots = _rref_inplace(stacked, acc.p)
    return _from_rref(acc.p, acc.ambient_dim, rows, pivots)


def extend(u: Subspace, rows) -> Subspace:
    """Span of ``u`` together with extra rows."""
    a = np.mod(_as_matrix(rows, u.ambient_dim), u.p)
    if a.shape[0] == 0:
        return u
    out = u
    step = max(2 * u.ambient_dim, 64)
    for start in range(0, a.shape[0], step):
        out = _absorb(out, a[start:start + step])
    return out


def _check_same(u: Subspace, v: Subspace) -> None:
    if u.p != v.p or u.ambient_dim != v.ambient_dim:
        raise InputError(
            f"ambient mismatch: (p={u.p}, n={u.ambient_dim}) vs (p={v.p}, n={v.ambient_dim})"
        )


def subspace_sum(u: Subspace, v: Subspace) -> Subspace:
    _check_same(u, v)
    return extend(u, v.basis)


def subspace_intersect(u: Subspace, v: Subspace) -> Subspace:
    """U ∩ V by Zassenhaus elimination of ``[[U, U], [V, 0]]``."""
    _check_same(u, v)
    n, p = u.ambient_dim, u.p
    if u.dim == 0 or v.dim == 0:
        return zero_subspace(p, n)
    top = np.hstack([u.basis, u.basis])
    bottom = np.hstack([v.basis, np.zeros_like(v.basis)])
    rows, pivots = _rref_inplace(np.vstack([top, bottom]), p)
    # rows whose left half vanished carry the intersection on the right
    k = sum(1 for c in pivots if c < n)
    right = rows[k:, n:]
    rrows, rpiv = _rref_inplace(right.copy(), p)
    return _from_rref(p, n, rrows, rpiv)


def contains(u: Subspace, vec) -> bool:
    x = np.asarray(vec, dtype=np.int64)
    if x.ndim != 1 or x.shape[0] != u.ambient_dim:
        raise InputError(f"vector of length {x.shape} does not match ambient dimension {u.ambient_dim}")
    return not np.any(u.reduce(x))


def coordinates(u: Subspace, vecs) -> np.ndarray:
    """Coordinates of members of ``u`` with respect to its RREF basis."""
    x = np.mod(np.asarray(vecs, dtype=np.int64), u.p)
    single = x.ndim == 1
    x2 = x.reshape(1, -1) if single else x
    if np.any(u.reduce(x2)):
        raise InputError("vector not in subspace")
    c = x2[:, list(u.pivots)]
    return c[0] if single else c


def inverse_mod(m, p: int) -> np.ndarray:
    """Inverse of a square matrix over F_p; raises InputError if singular."""
    a = np.mod(_as_matrix(m), p)
    n = a.shape[0]
    if a.shape[1] != n:
        raise InputError("inverse_mod needs a square matrix")
    aug = np.hstack([a, np.eye(n, dtype=np.int64)])
    rows, pivots = _rref_inplace(aug, p, ncols=n)
    if len(pivots) != n:
        raise InputError("matrix is singular mod p")
    return rows[:, n:].copy()


def independent_rows(m, p: int) -> list[int]:
    """Indices of the first maximal set of linearly independent rows."""
    a = np.mod(_as_matrix(m), p)
    _, pivots = _rref_inplace(np.ascontiguousarray(a.T).copy(), p)
    return pivots


def rank(m, p: int) -> int:
    return rref(m, p)[1]
