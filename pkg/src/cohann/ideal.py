"""Ideals of a truncated local algebra, stored as coordinate subspaces."""

from __future__ import annotations

from fractions import Fraction

from .linalg import Subspace, echelonize, reduce_vector, subspace_intersect, subspace_sum
from .ring import Polynomial, grevlex_key

__all__ = [
    "NotAnIdealError",
    "AlgebraMismatchError",
    "TruncatedIdeal",
    "ideal_span",
    "ideal_from_generators",
    "is_ideal",
    "minimal_generators",
    "ideal_product",
    "power_containment",
]


class NotAnIdealError(ValueError):
    pass


class AlgebraMismatchError(ValueError):
    pass


def ideal_span(vectors, algebra):
    """Subspace spanned by all multiples ``b * v`` of the given sparse vectors."""
    rows = []
    for v in vectors:
        if not v:
            continue
        for i in range(algebra.dim):
            w = algebra.multiply({i: Fraction(1)}, v)
            if w:
                rows.append(w)
    return Subspace(algebra.dim, rows)


def is_ideal(space, algebra):
    """True when ``space`` is closed under multiplication by every variable."""
    ops = [algebra.mul_operator(Polynomial.variable(v, algebra.ambient)) for v in algebra.ambient]
    for row in space.sparse_basis():
        for op in ops:
            w = {}
            for j, c in row.items():
                for k, x in op[j].items():
                    w[k] = w.get(k, 0) + c * x
            if not space.contains({k: x for k, x in w.items() if x}):
                return False
    return True


def _maximal_times(space, algebra):
    ops = [algebra.mul_operator(Polynomial.variable(v, algebra.ambient)) for v in algebra.ambient]
    rows = []
    for row in space.sparse_basis():
        for op in ops:
            w = {}
            for j, c in row.items():
                for k, x in op[j].items():
                    w[k] = w.get(k, 0) + c * x
            w = {k: x for k, x in w.items() if x}
            if w:
                rows.append(w)
    return Subspace(algebra.dim, rows)


def minimal_generators(space, algebra, check=True):
    """Polynomials whose classes form a basis of ``I / m I``.

    Candidates are taken from the reduced echelon basis of ``I``, whose
    leading coordinates are the lowest-degree basis monomials, so
    lower-degree generators are preferred. Within one degree the
    grevlex-smallest leading monomial wins.
    """
    if check and not is_ideal(space, algebra):
        raise NotAnIdealError("subspace is not closed under multiplication")
    if space.dim == 0:
        return []
    mI = _maximal_times(space, algebra)
    piv = dict(mI.pivots)
    cand = space.sparse_basis()
    basis = algebra.basis
    cand.sort(key=lambda row: (sum(basis[min(row)]), grevlex_key(basis[min(row)])))
    gens = []
    for row in cand:
        rem = reduce_vector(piv, row)
        if rem:
            gens.append(algebra.to_poly(row))
            echelonize([rem], reduce=True, pivots=piv)
    if check:
        regen = ideal_span([algebra.nf(g) for g in gens], algebra)
        if regen != space:
            raise NotAnIdealError("generators do not regenerate the subspace")
    return gens


class TruncatedIdeal:
    """An ideal of a truncated local algebra.

    ``stabilized`` records whether recomputation at truncation ``N + 2``
    produced the same ideal; ``None`` means it was not checked.
    """

    def __init__(self, algebra, space, stabilized=None, check=True):
        if space.ambient_dim != algebra.dim:
            raise AlgebraMismatchError("subspace dimension does not match algebra")
        self.algebra = algebra
        self.space = space
        self.stabilized = stabilized
        self.generators = minimal_generators(space, algebra, check=check)

    @classmethod
    def from_generators(cls, gens, algebra, stabilized=None):
        return ideal_from_generators(gens, algebra, stabilized)

    @property
    def truncation(self):
        return self.algebra.N

    @property
    def dim_quotient(self):
        return self.algebra.dim - self.space.dim

    def _same(self, other):
        if self.algebra != other.algebra:
            raise AlgebraMismatchError("ideals live in different algebras")

    def __eq__(self, other):
        if not isinstance(other, TruncatedIdeal):
            return NotImplemented
        return self.algebra == other.algebra and self.space == other.space

    def __hash__(self):
        return hash((self.algebra, self.space))

    def __le__(self, other):
        self._same(other)
        return self.space.issubspace(other.space)

    def __and__(self, other):
        self._same(other)
        return TruncatedIdeal(self.algebra, subspace_intersect(self.space, other.space))

    def __add__(self, other):
        self._same(other)
        return TruncatedIdeal(self.algebra, subspace_sum(self.space, other.space))

    def __mul__(self, other):
        return ideal_product(self, other)

    def contains(self, p):
        return self.space.contains(self.algebra.nf(p))

    def is_unit(self):
        return self.algebra.dim > 0 and self.space.dim == self.algebra.dim

    def generator_strings(self):
        return [str(g) for g in self.generators]

    def to_json(self):
        return {
            "generators": self.generator_strings(),
            "dim_quotient": self.dim_quotient,
            "truncation": self.truncation,
            "stabilized": bool(self.stabilized),
        }

    def __repr__(self):
        gens = ", ".join(self.generator_strings())
        return f"TruncatedIdeal(({gens}), N={self.truncation}, codim={self.dim_quotient})"


def ideal_from_generators(gens, algebra, stabilized=None):
    """Truncated ideal generated by polynomials (or sparse vectors)."""
    vecs = [algebra.nf(g) if isinstance(g, Polynomial) else g for g in gens]
    return TruncatedIdeal(algebra, ideal_span(vecs, algebra), stabilized, check=False)


def ideal_product(I, J):
    I._same(J)
    alg = I.algebra
    rows = []
    for g in I.generators:
        gv = alg.nf(g)
        for v in J.space.sparse_basis():
            w = alg.multiply(gv, v)
            if w:
                rows.append(w)
    return TruncatedIdeal(alg, Subspace(alg.dim, rows), check=False)


def power_containment(I, J, k):
    """Decide whether ``I^k`` is contained in ``J`` within the truncation."""
    I._same(J)
    if k < 0:
        raise ValueError("k must be non-negative")
    alg = I.algebra
    P = ideal_from_generators([Polynomial.constant(1, alg.ambient)], alg)
    for _ in range(k):
        P = ideal_product(P, I)
    return P <= J
