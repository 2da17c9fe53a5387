"""Exact rational linear algebra.

The engine works on sparse rows ``{column: Fraction}``; the dense helpers
(``rref``, ``kernel``, ``image``, ``solve``) wrap it for list-of-lists input.
No floating point is used anywhere.
"""

from __future__ import annotations

from fractions import Fraction

__all__ = [
    "DimensionMismatchError",
    "echelonize",
    "reduce_vector",
    "rref",
    "kernel",
    "image",
    "solve",
    "sparse_solve",
    "Subspace",
    "subspace_intersect",
    "subspace_sum",
    "subspace_project_coords",
    "project_solutions",
    "kernel_sparse",
]


class DimensionMismatchError(ValueError):
    pass


def _insert(pivots, row):
    # reduce ``row`` by existing pivots until its leading column is new
    while row:
        c = min(row)
        p = pivots.get(c)
        if p is None:
            inv = 1 / row[c]
            if inv != 1:
                row = {k: v * inv for k, v in row.items()}
            pivots[c] = row
            return c
        f = row[c]
        for k, v in p.items():
            nv = row.get(k, 0) - f * v
            if nv:
                row[k] = nv
            else:
                row.pop(k, None)
    return None


def _back_reduce(pivots):
    for c in sorted(pivots, reverse=True):
        row = pivots[c]
        hits = [k for k in row if k != c and k in pivots]
        for q in hits:
            f = row.get(q)
            if not f:
                continue
            for k, v in pivots[q].items():
                nv = row.get(k, 0) - f * v
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)


def echelonize(rows, reduce=True, pivots=None):
    """Row-reduce sparse rows; returns ``{pivot_column: row}``.

    Pivots are leading (smallest-index) columns, normalized to 1. With
    ``reduce=True`` the result is the reduced row echelon form.
    """
    if pivots is None:
        pivots = {}
    for r in rows:
        r = {k: Fraction(v) for k, v in r.items() if v}
        _insert(pivots, r)
    if reduce:
        _back_reduce(pivots)
    return pivots


def reduce_vector(pivots, vec):
    """Remainder of ``vec`` modulo the span of fully reduced ``pivots``."""
    out = {k: v for k, v in vec.items() if v}
    for c in sorted(k for k in vec if k in pivots):
        f = out.get(c)
        if not f:
            continue
        for k, v in pivots[c].items():
            nv = out.get(k, 0) - f * v
            if nv:
                out[k] = nv
            else:
                out.pop(k, None)
    return out


def _dense_rows(M):
    rows = []
    width = None
    for r in M:
        if width is None:
            width = len(r)
        elif len(r) != width:
            raise DimensionMismatchError("ragged matrix")
        rows.append({j: Fraction(v) for j, v in enumerate(r) if v})
    return rows, (width or 0)


def rref(M):
    """Reduced row echelon form of a dense matrix.

    Returns ``(R, rank, pivot_columns)`` with ``R`` the same shape as ``M``.
    """
    rows, n = _dense_rows(M)
    piv = echelonize(rows)
    cols = sorted(piv)
    R = []
    for c in cols:
        R.append([piv[c].get(j, Fraction(0)) for j in range(n)])
    while len(R) < len(rows):
        R.append([Fraction(0)] * n)
    return R, len(cols), cols


def _kernel_from_pivots(piv, n):
    free = [j for j in range(n) if j not in piv]
    basis = []
    for j in free:
        v = {j: Fraction(1)}
        for c, row in piv.items():
            a = row.get(j)
            if a:
                v[c] = -a
        basis.append(v)
    return basis


def kernel(M, ncols=None):
    """Null space ``{x : M x = 0}`` as a Subspace."""
    rows, n = _dense_rows(M)
    if ncols is not None:
        n = ncols
    piv = echelonize(rows)
    return Subspace(n, _kernel_from_pivots(piv, n))


def image(M):
    """Column space of ``M`` as a Subspace of Q^rows."""
    rows, n = _dense_rows(M)
    m = len(rows)
    cols = [{i: r[j] for i, r in enumerate(rows) if j in r} for j in range(n)]
    return Subspace(m, cols)


def solve(M, b):
    """One exact solution of ``M x = b``, or None when inconsistent."""
    rows, n = _dense_rows(M)
    if len(b) != len(rows):
        raise DimensionMismatchError(f"{len(rows)} rows but rhs of length {len(b)}")
    sol = sparse_solve(rows, [Fraction(v) for v in b], n)
    if sol is None:
        return None
    return [sol.get(j, Fraction(0)) for j in range(n)]


def sparse_solve(rows, rhs, ncols):
    """Solve sparse ``rows . x = rhs``; returns ``{col: value}`` or None.

    Free variables are set to zero.
    """
    aug = []
    for r, b in zip(rows, rhs):
        row = dict(r)
        if b:
            row[ncols] = Fraction(b)
        aug.append(row)
    piv = echelonize(aug)
    if ncols in piv:
        return None
    return {c: row.get(ncols, Fraction(0)) for c, row in piv.items() if row.get(ncols)}


class Subspace:
    """A subspace of Q^n with a canonical reduced echelon basis."""

    __slots__ = ("ambient_dim", "_piv", "_key")

    def __init__(self, ambient_dim, vectors=(), pivots=None):
        self.ambient_dim = ambient_dim
        if pivots is None:
            rows = []
            for v in vectors:
                if not isinstance(v, dict):
                    if len(v) != ambient_dim:
                        raise DimensionMismatchError(f"vector of length {len(v)} in Q^{ambient_dim}")
                    v = {j: x for j, x in enumerate(v) if x}
                elif v and max(v) >= ambient_dim:
                    raise DimensionMismatchError(f"coordinate {max(v)} outside Q^{ambient_dim}")
                rows.append(v)
            pivots = echelonize(rows)
        self._piv = pivots
        self._key = None

    @property
    def dim(self):
        return len(self._piv)

    @property
    def pivots(self):
        return self._piv

    def sparse_basis(self):
        return [self._piv[c] for c in sorted(self._piv)]

    def basis(self):
        """Dense reduced echelon basis rows."""
        return [[row.get(j, Fraction(0)) for j in range(self.ambient_dim)]
                for row in self.sparse_basis()]

    def key(self):
        if self._key is None:
            self._key = (self.ambient_dim,
                         tuple((c, tuple(sorted(self._piv[c].items()))) for c in sorted(self._piv)))
        return self._key

    def __eq__(self, other):
        return isinstance(other, Subspace) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"

    def contains(self, vec):
        if not isinstance(vec, dict):
            vec = {j: x for j, x in enumerate(vec) if x}
        return not reduce_vector(self._piv, vec)

    def reduce(self, vec):
        return reduce_vector(self._piv, vec)

    def issubspace(self, other):
        return all(other.contains(v) for v in self.sparse_basis())


def _check_same(U, V):
    if U.ambient_dim != V.ambient_dim:
        raise DimensionMismatchError(f"ambient Q^{U.ambient_dim} vs Q^{V.ambient_dim}")


def subspace_sum(U, V):
    _check_same(U, V)
    return Subspace(U.ambient_dim, U.sparse_basis() + V.sparse_basis())


def subspace_intersect(U, V):
    """Intersection by the Zassenhaus construction."""
    _check_same(U, V)
    n = U.ambient_dim
    rows = []
    for u in U.sparse_basis():
        row = dict(u)
        row.update({n + k: v for k, v in u.items()})
        rows.append(row)
    for v in V.sparse_basis():
        rows.append(dict(v))
    piv = echelonize(rows, reduce=False)
    out = []
    for c, row in piv.items():
        if c >= n:
            out.append({k - n: v for k, v in row.items()})
    return Subspace(n, out)


def subspace_project_coords(U, window):
    """Image of U under the projection onto the coordinates in ``window``.

    ``window`` is a sequence of coordinate indices; the result lives in
    Q^len(window) with coordinates in that order.
    """
    window = list(window)
    if any(w < 0 or w >= U.ambient_dim for w in window):
        raise DimensionMismatchError("projection window outside ambient")
    pos = {w: i for i, w in enumerate(window)}
    out = []
    for row in U.sparse_basis():
        out.append({pos[k]: v for k, v in row.items() if k in pos})
    return Subspace(len(window), out)


def project_solutions(rows, ncols, keep_from):
    """Project the solution space of ``rows . x = 0`` onto ``x[keep_from:]``.

    Columns before ``keep_from`` are eliminated first; any echelon row whose
    leading column lies in the kept block constrains the kept variables
    alone. The projection is the kernel of those constraints.
    """
    piv = echelonize(rows, reduce=False)
    constraints = [{k - keep_from: v for k, v in row.items()}
                   for c, row in piv.items() if c >= keep_from]
    width = ncols - keep_from
    cpiv = echelonize(constraints)
    return Subspace(width, _kernel_from_pivots(cpiv, width))


def kernel_sparse(rows, ncols):
    """Null space of sparse ``rows`` acting on Q^ncols."""
    piv = echelonize(rows)
    return Subspace(ncols, _kernel_from_pivots(piv, ncols))
