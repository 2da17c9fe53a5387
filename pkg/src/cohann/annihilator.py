"""Stable annihilators of matrix factorizations.

An element ``r`` stably annihilates ``coker(A)`` exactly when multiplication
by ``r`` is null-homotopic on the 2-periodic complex of ``(A, B)``, i.e. when
there are matrices ``g, h`` with

    A g + h B = r I    and    B h + g A = r I.

All unknowns range over a truncated local algebra, so the whole search is one
exact linear system. ``ext2_annihilator`` computes the same ideal by a
different route, as the annihilator of ``Ext^2(M, M)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .ideal import TruncatedIdeal, ideal_from_generators
from .linalg import (Subspace, echelonize, kernel_sparse, project_solutions, reduce_vector,
                     sparse_solve, subspace_intersect)
from .mf import MatrixFactorization, knorrer_cover, mat_mul
from .ring import Polynomial, build_algebra, partial_derivative, poly_parse

__all__ = [
    "RelationMissingError",
    "HomotopyCertificate",
    "stable_annihilator",
    "element_test",
    "ambient_certificate",
    "knorrer_lift_certificate",
    "ext2_annihilator",
    "cohomology_annihilator_catalog",
    "jacobian_containment_check",
    "sann_space",
    "ext2_space",
]


class RelationMissingError(ValueError):
    """The algebra does not kill the factorized polynomial."""


@dataclass(frozen=True)
class HomotopyCertificate:
    r: Polynomial
    g: tuple
    h: tuple

    def residuals(self, M):
        """The two polynomial matrices ``A g + h B - r I`` and ``B h + g A - r I``."""
        n = M.n
        rI = lambda P: tuple(tuple(P[i][j] - (self.r if i == j else 0) for j in range(n)) for i in range(n))
        add = lambda X, Y: tuple(tuple(a + b for a, b in zip(rx, ry)) for rx, ry in zip(X, Y))
        e1 = rI(add(mat_mul(M.A, self.g), mat_mul(self.h, M.B)))
        e2 = rI(add(mat_mul(M.B, self.h), mat_mul(self.g, M.A)))
        return e1, e2

    def verify(self, M, algebra):
        """True when both identities hold after normal form in ``algebra``."""
        for E in self.residuals(M):
            for row in E:
                for p in row:
                    if algebra.nf(p):
                        return False
        return True


def _check_algebra(M, algebra):
    if M.ambient != algebra.ambient:
        raise RelationMissingError(f"factorization ambient {M.ambient} vs algebra {algebra.ambient}")
    if algebra.nf(M.f):
        raise RelationMissingError(f"{M.f} does not vanish in {algebra!r}")


def _ops(M, algebra):
    opA = [[algebra.mul_operator(p) for p in row] for row in M.A]
    opB = [[algebra.mul_operator(p) for p in row] for row in M.B]
    return opA, opB


def _homotopy_rows(M, algebra, with_r=True):
    """Sparse rows of the joint system in unknowns (g, h[, r]).

    Column layout: ``g[k][j]`` block, then ``h[i][k]``, then ``r``; each
    entry occupies ``d = algebra.dim`` coordinates.
    """
    n, d = M.n, algebra.dim
    opA, opB = _ops(M, algebra)
    gcol = lambda k, j, t: (k * n + j) * d + t
    hcol = lambda i, k, t: n * n * d + (i * n + k) * d + t
    rcol = lambda t: 2 * n * n * d + t
    e1 = lambda i, j, s: (i * n + j) * d + s
    e2 = lambda i, j, s: n * n * d + (i * n + j) * d + s
    rows = {}

    def add(row, col, c):
        r = rows.setdefault(row, {})
        v = r.get(col, 0) + c
        if v:
            r[col] = v
        else:
            r.pop(col, None)

    for i in range(n):
        for j in range(n):
            for k in range(n):
                # E1_ij: A_ik g_kj + h_ik B_kj
                for t, col in enumerate(opA[i][k]):
                    for s, c in col.items():
                        add(e1(i, j, s), gcol(k, j, t), c)
                for t, col in enumerate(opB[k][j]):
                    for s, c in col.items():
                        add(e1(i, j, s), hcol(i, k, t), c)
                # E2_ij: B_ik h_kj + g_ik A_kj
                for t, col in enumerate(opB[i][k]):
                    for s, c in col.items():
                        add(e2(i, j, s), hcol(k, j, t), c)
                for t, col in enumerate(opA[k][j]):
                    for s, c in col.items():
                        add(e2(i, j, s), gcol(i, k, t), c)
    if with_r:
        for i in range(n):
            for t in range(d):
                add(e1(i, i, t), rcol(t), -1)
                add(e2(i, i, t), rcol(t), -1)
    width = 2 * n * n * d + (d if with_r else 0)
    return rows, width


def sann_space(M, algebra):
    """Coordinate subspace of ``{r : r stably annihilates coker A}``."""
    _check_algebra(M, algebra)
    d = algebra.dim
    if d == 0:
        return Subspace(0)
    rows, width = _homotopy_rows(M, algebra)
    return project_solutions(list(rows.values()), width, 2 * M.n * M.n * d)


def _stabilized_ideal(compute, algebra):
    """Compute at N and N + 2; flag whether the N-generators explain N + 2."""
    space = compute(algebra)
    ideal = TruncatedIdeal(algebra, space)
    bigger = build_algebra(algebra.ambient, algebra.relations, algebra.N + 2)
    space2 = compute(bigger)
    regen = ideal_from_generators([g for g in ideal.generators], bigger)
    ideal.stabilized = regen.space == space2 and space.dim > 0
    return ideal


def stable_annihilator(M, algebra, stabilize=True):
    """Stable annihilator of ``coker(A)`` in the truncated algebra.

    The algebra must kill ``M.f``. With ``stabilize`` the computation is
    repeated at truncation ``N + 2`` and the result flagged accordingly.
    """
    if stabilize:
        return _stabilized_ideal(lambda alg: sann_space(M, alg), algebra)
    return TruncatedIdeal(algebra, sann_space(M, algebra))


def _solve_certificate(r, M, algebra):
    n, d = M.n, algebra.dim
    rows, width = _homotopy_rows(M, algebra, with_r=False)
    rvec = algebra.nf(r)
    rhs_of = {}
    for i in range(n):
        for s, c in rvec.items():
            rhs_of[(i * n + i) * d + s] = c
            rhs_of[n * n * d + (i * n + i) * d + s] = c
    keys = sorted(set(rows) | set(rhs_of))
    sol = sparse_solve([rows.get(k, {}) for k in keys], [rhs_of.get(k, 0) for k in keys], width)
    if sol is None:
        return None

    def entry(off):
        return algebra.to_poly({t: sol[off + t] for t in range(d) if off + t in sol})

    g = tuple(tuple(entry((k * n + j) * d) for j in range(n)) for k in range(n))
    h = tuple(tuple(entry(n * n * d + (i * n + k) * d) for k in range(n)) for i in range(n))
    cert = HomotopyCertificate(r, g, h)
    if not cert.verify(M, algebra):
        raise ArithmeticError("certificate failed re-verification")
    return cert


def element_test(r, M, algebra):
    """Homotopy certificate for ``r``, or None if ``r`` does not stably annihilate.

    A negative answer is relative to the truncation of ``algebra``.
    """
    _check_algebra(M, algebra)
    if isinstance(r, str):
        r = poly_parse(r, M.ambient)
    return _solve_certificate(r, M, algebra)


def ambient_certificate(r, M, N):
    """Certificate valid over the ambient ring ``k[x]/m^N`` (no relation f).

    Such certificates hold as polynomial identities up to degree ``N`` and
    therefore survive any change of the relation, e.g. passage to a cover.
    """
    algebra = build_algebra(M.ambient, (), N)
    return _solve_certificate(r, M, algebra)


def knorrer_lift_certificate(cert, M, z):
    """Lift a certificate for ``M`` to the Knörrer cover ``knorrer_cover(M, z)``.

    With cover matrices ``[[B, -zI], [zI, A]]`` and ``[[A, zI], [-zI, B]]``
    the block-diagonal pair ``g' = diag(h, g)``, ``h' = diag(g, h)`` satisfies
    both homotopy identities for the same ``r``.
    """
    cover = knorrer_cover(M, z)
    amb = cover.ambient
    n = M.n
    zero = Polynomial.zero(amb)
    ext = lambda X: [[p.extend(amb) for p in row] for row in X]
    g, h = ext(cert.g), ext(cert.h)

    def diag(P, Q):
        top = tuple(tuple(P[i]) + (zero,) * n for i in range(n))
        bot = tuple((zero,) * n + tuple(Q[i]) for i in range(n))
        return top + bot

    return cover, HomotopyCertificate(cert.r.extend(amb), diag(h, g), diag(g, h))


def ext2_space(M, algebra, lift=None):
    """Annihilator of ``Ext^2(coker A, coker A)`` by kernel/image computations.

    With the resolution ``... -A-> R^n -B-> R^n -A-> R^n -> M``, ``Hom(R^n, M)``
    is ``Mat_n(R) / A Mat_n(R)``; cycles are ``{phi : phi A in A Mat}`` and
    boundaries are ``{psi B} + A Mat``.

    Truncation creates spurious cycles in the top degrees, so the
    annihilator is computed ``lift`` orders deeper (default ``deg f + 1``)
    and then mapped down to ``algebra``.
    """
    _check_algebra(M, algebra)
    if lift is None:
        lift = M.f.degree() + 1
    if lift and algebra.dim:
        deep = build_algebra(algebra.ambient, algebra.relations, algebra.N + lift)
        space = _ext2_raw(M, deep)
        return Subspace(algebra.dim, [algebra.nf(deep.to_poly(r)) for r in space.sparse_basis()])
    return _ext2_raw(M, algebra)


def _ext2_raw(M, algebra):
    n, d = M.n, algebra.dim
    if d == 0:
        return Subspace(0)
    opA, opB = _ops(M, algebra)
    size = n * n * d
    at = lambda i, j, s: (i * n + j) * d + s

    bd_rows = []
    for k in range(n):
        for j in range(n):
            for t in range(d):
                v = {}
                for i in range(n):
                    for s, c in opA[i][k][t].items():
                        v[at(i, j, s)] = c
                if v:
                    bd_rows.append(v)
    for i in range(n):
        for k in range(n):
            for t in range(d):
                v = {}
                for j in range(n):
                    for s, c in opB[k][j][t].items():
                        v[at(i, j, s)] = c
                if v:
                    bd_rows.append(v)
    bd = echelonize(bd_rows)

    # unknowns: chi (first block) then phi; equations phi A - A chi = 0
    rows = {}
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for t, col in enumerate(opA[k][j]):
                    for s, c in col.items():
                        r = rows.setdefault(at(i, j, s), {})
                        r[size + at(i, k, t)] = r.get(size + at(i, k, t), 0) + c
                for t, col in enumerate(opA[i][k]):
                    for s, c in col.items():
                        r = rows.setdefault(at(i, j, s), {})
                        r[at(k, j, t)] = r.get(at(k, j, t), 0) - c
    cycles = project_solutions(list(rows.values()), 2 * size, size)

    reps = []
    quotient = dict(bd)
    for z in cycles.sparse_basis():
        rem = reduce_vector(quotient, z)
        if rem:
            reps.append(rem)
            echelonize([rem], pivots=quotient)
    if not reps:
        return Subspace(d, [{t: Fraction(1)} for t in range(d)])

    basis_ops = [algebra.mul_operator(Polynomial.monomial(b, algebra.ambient)) for b in algebra.basis]
    constraint = {}
    for l, e in enumerate(reps):
        for t in range(d):
            prod = {}
            for pos, c in e.items():
                blk, s = divmod(pos, d)
                for u, w in basis_ops[t][s].items():
                    key = blk * d + u
                    prod[key] = prod.get(key, 0) + c * w
            rem = reduce_vector(bd, {k: v for k, v in prod.items() if v})
            for q, c in rem.items():
                row = constraint.setdefault((l, q), {})
                row[t] = c
    return kernel_sparse(list(constraint.values()), d)


def ext2_annihilator(M, algebra, stabilize=True, lift=None):
    """Independent route to the stable annihilator via ``ann Ext^2(M, M)``."""
    if stabilize:
        return _stabilized_ideal(lambda alg: ext2_space(M, alg, lift), algebra)
    return TruncatedIdeal(algebra, ext2_space(M, algebra, lift))


def cohomology_annihilator_catalog(Ms, algebra, stabilize=True):
    """Intersection of the stable annihilators of all factorizations in ``Ms``.

    The caller asserts that ``Ms`` lists every indecomposable non-free
    maximal Cohen-Macaulay module.
    """
    Ms = list(Ms)
    if not Ms:
        raise ValueError("empty catalog")

    def compute(alg):
        space = None
        for M in Ms:
            s = sann_space(M, alg)
            space = s if space is None else subspace_intersect(space, s)
        return space

    if stabilize:
        return _stabilized_ideal(compute, algebra)
    return TruncatedIdeal(algebra, compute(algebra))


def jacobian_containment_check(M, algebra):
    """True when every partial derivative of ``f`` has a homotopy certificate."""
    _check_algebra(M, algebra)
    return all(_solve_certificate(partial_derivative(M.f, v), M, algebra) is not None
               for v in M.ambient)
