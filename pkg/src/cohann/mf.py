"""Matrix factorizations of a hypersurface polynomial and their constructions."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .ring import AmbientMismatchError, Polynomial, poly_parse

__all__ = [
    "MFValidationError",
    "MFFormatError",
    "MatrixFactorization",
    "BranchedCoverRing",
    "mat_mul",
    "mat_transpose",
    "determinant",
    "adjugate",
    "mf_validate",
    "mf_syzygy",
    "mf_dual",
    "mf_direct_sum",
    "knorrer_cover",
    "branched_cover_ring",
    "adjugate_partner",
    "generic_matrix",
    "mf_to_json",
    "mf_from_json",
]


class MFValidationError(ValueError):
    """A pair of matrices fails AB = BA = f I (or a related check)."""


class MFFormatError(ValueError):
    """A matrix factorization file is structurally malformed."""


def _zero(ambient):
    return Polynomial.zero(ambient)


def mat_mul(X, Y):
    n, m, p = len(X), len(Y), len(Y[0]) if Y else 0
    if X and len(X[0]) != m:
        raise ValueError("inner dimensions differ")
    amb = X[0][0].ambient
    out = []
    for i in range(n):
        row = []
        for j in range(p):
            s = _zero(amb)
            for k in range(m):
                if not X[i][k].is_zero() and not Y[k][j].is_zero():
                    s = s + X[i][k] * Y[k][j]
            row.append(s)
        out.append(tuple(row))
    return tuple(out)


def mat_transpose(X):
    return tuple(zip(*X)) if X else ()


def determinant(X):
    """Laplace expansion along the first row."""
    n = len(X)
    if n == 1:
        return X[0][0]
    amb = X[0][0].ambient
    total = _zero(amb)
    for j in range(n):
        if X[0][j].is_zero():
            continue
        minor = [row[:j] + row[j + 1:] for row in X[1:]]
        term = X[0][j] * determinant(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def adjugate(X):
    n = len(X)
    amb = X[0][0].ambient
    if n == 1:
        return ((Polynomial.constant(1, amb),),)
    out = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [row[:j] + row[j + 1:] for k, row in enumerate(X) if k != i]
            c = determinant(minor)
            # adj(X)[j][i] is the (i, j) cofactor
            out[j][i] = c if (i + j) % 2 == 0 else -c
    return tuple(tuple(r) for r in out)


def _as_matrix(X):
    return tuple(tuple(r) for r in X)


@dataclass(frozen=True)
class MatrixFactorization:
    """Square polynomial matrices with ``A B = B A = f I``.

    The module of interest is ``coker(A)`` over ``k[[x]]/(f)``. Build
    instances through :func:`mf_validate` (or ``MatrixFactorization.make``)
    so that the identity is checked.
    """

    f: Polynomial
    A: tuple
    B: tuple
    label: str = ""

    @property
    def n(self):
        return len(self.A)

    @property
    def ambient(self):
        return self.f.ambient

    @classmethod
    def make(cls, A, B, f, label=""):
        return mf_validate(A, B, f, label)

    def entries(self):
        return [p for M in (self.A, self.B) for row in M for p in row]

    def max_entry_degree(self):
        return max((p.degree() for p in self.entries()), default=0)

    def extend(self, ambient):
        ext = lambda M: tuple(tuple(p.extend(ambient) for p in row) for row in M)
        return MatrixFactorization(self.f.extend(ambient), ext(self.A), ext(self.B), self.label)


def mf_validate(A, B, f, label=""):
    A, B = _as_matrix(A), _as_matrix(B)
    n = len(A)
    if n == 0 or any(len(r) != n for r in A) or len(B) != n or any(len(r) != n for r in B):
        raise MFValidationError(f"{label or 'MF'}: matrices must be square of equal size")
    for p in (*(q for r in A for q in r), *(q for r in B for q in r)):
        if p.ambient != f.ambient:
            raise AmbientMismatchError(f"{label or 'MF'}: entry {p} has ambient {p.ambient}, f has {f.ambient}")
    zero = _zero(f.ambient)
    for name, P in (("AB", mat_mul(A, B)), ("BA", mat_mul(B, A))):
        for i in range(n):
            for j in range(n):
                want = f if i == j else zero
                if P[i][j] != want:
                    raise MFValidationError(
                        f"{label or 'MF'}: ({name})[{i}][{j}] = {P[i][j]}, expected {want}")
    return MatrixFactorization(f, A, B, label)


def mf_syzygy(M):
    """Syzygy of coker(A): the factorization (B, A)."""
    return MatrixFactorization(M.f, M.B, M.A, f"syz({M.label})")


def mf_dual(M):
    """Dual module: transpose both matrices."""
    return MatrixFactorization(M.f, mat_transpose(M.A), mat_transpose(M.B), f"dual({M.label})")


def _block_diag(X, Y, amb):
    n1, n2 = len(X), len(Y)
    z = _zero(amb)
    rows = [tuple(X[i]) + (z,) * n2 for i in range(n1)]
    rows += [(z,) * n1 + tuple(Y[i]) for i in range(n2)]
    return tuple(rows)


def mf_direct_sum(M1, M2):
    """Block-diagonal sum; ``None`` acts as the empty factorization."""
    if M2 is None:
        return M1
    if M1 is None:
        return M2
    if M1.f != M2.f:
        raise MFValidationError("direct sum of factorizations of different polynomials")
    amb = M1.ambient
    return MatrixFactorization(M1.f, _block_diag(M1.A, M2.A, amb), _block_diag(M1.B, M2.B, amb),
                               f"{M1.label}+{M2.label}")


def knorrer_cover(M, z):
    """Factorization of ``f + z^2`` from one of ``f``.

    Blocks are ``[[B, -zI], [zI, A]]`` and ``[[A, zI], [-zI, B]]``; the
    cokernel of the first is the syzygy over the cover of the pushforward.
    """
    if z in M.ambient:
        raise MFValidationError(f"variable {z!r} already in ambient {M.ambient}")
    amb = M.ambient + (z,)
    E = M.extend(amb)
    n = M.n
    zv = Polynomial.variable(z, amb)
    zero = _zero(amb)
    zI = lambda s: tuple(tuple(s * zv if i == j else zero for j in range(n)) for i in range(n))

    def block(P, Q, R, S):
        top = tuple(tuple(P[i]) + tuple(Q[i]) for i in range(n))
        bot = tuple(tuple(R[i]) + tuple(S[i]) for i in range(n))
        return top + bot

    A2 = block(E.B, zI(-1), zI(1), E.A)
    B2 = block(E.A, zI(1), zI(-1), E.B)
    f2 = E.f + zv * zv
    return mf_validate(A2, B2, f2, f"knorrer({M.label},{z})")


@dataclass(frozen=True)
class BranchedCoverRing:
    f: Polynomial
    var: str
    m: int
    cover: Polynomial = field(compare=False)

    @property
    def ambient(self):
        return self.cover.ambient


def branched_cover_ring(f, m, yname):
    """The ring ``S[[y]]/(f + y^m)``."""
    if m < 2:
        raise ValueError("branch exponent m must be >= 2")
    if yname in f.ambient:
        raise ValueError(f"variable {yname!r} already in ambient {f.ambient}")
    amb = f.ambient + (yname,)
    cover = f.extend(amb) + Polynomial.variable(yname, amb) ** m
    return BranchedCoverRing(f, yname, m, cover)


def adjugate_partner(A, f, label=""):
    A = _as_matrix(A)
    d = determinant(A)
    if d != f:
        raise MFValidationError(f"{label or 'MF'}: det(A) = {d}, expected {f}")
    return mf_validate(A, adjugate(A), f, label)


def generic_matrix(n, prefix="x"):
    """The n x n matrix of indeterminates ``x11..xnn`` and its ambient."""
    names = tuple(f"{prefix}{i + 1}{j + 1}" for i in range(n) for j in range(n))
    X = tuple(tuple(Polynomial.variable(names[i * n + j], names) for j in range(n)) for i in range(n))
    return X, names


def mf_to_json(M):
    return {
        "vars": list(M.ambient),
        "f": str(M.f),
        "A": [[str(p) for p in row] for row in M.A],
        "B": [[str(p) for p in row] for row in M.B],
        "label": M.label,
    }


def mf_from_json(obj):
    """Build and validate a factorization from its JSON object.

    ``"B": "adjugate"`` requests the adjugate of A as partner.
    """
    if isinstance(obj, str):
        obj = json.loads(obj)
    try:
        amb = tuple(obj["vars"])
        f = poly_parse(obj["f"], amb)
        A = [[poly_parse(s, amb) for s in row] for row in obj["A"]]
        Bspec = obj["B"]
        label = obj.get("label", "")
    except KeyError as exc:
        raise MFFormatError(f"missing field {exc.args[0]!r} in matrix factorization") from None
    except TypeError:
        raise MFFormatError("matrix factorization must be a JSON object with string entries") from None
    if Bspec == "adjugate":
        return adjugate_partner(A, f, label)
    B = [[poly_parse(s, amb) for s in row] for row in Bspec]
    return mf_validate(A, B, f, label)
