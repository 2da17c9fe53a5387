"""Sparse multivariate polynomials over Q and truncated local algebras.

A truncated local algebra models ``k[[x_1..x_m]] / ((relations) + m^N)``.
Modulo ``m^N`` polynomials and power series agree, so the model is exact
for the quotient ``R / m^N`` of the local ring ``R = k[[x]]/(relations)``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement
from math import comb

from .linalg import echelonize

__all__ = [
    "Polynomial",
    "PolynomialSyntaxError",
    "UnknownVariableError",
    "AmbientMismatchError",
    "poly_parse",
    "poly_mul",
    "partial_derivative",
    "grevlex_key",
    "monomials_below",
    "TruncatedLocalAlgebra",
    "build_algebra",
    "normal_form",
    "default_truncation",
]


class PolynomialSyntaxError(ValueError):
    def __init__(self, message, text, position):
        super().__init__(f"{message} at position {position} in {text!r}")
        self.text = text
        self.position = position


class UnknownVariableError(ValueError):
    pass


class AmbientMismatchError(ValueError):
    pass


def grevlex_key(exp):
    """Sort key: larger key means larger in graded reverse lexicographic order."""
    return (sum(exp), tuple(-e for e in reversed(exp)))


class Polynomial:
    """Immutable sparse polynomial with exact rational coefficients."""

    __slots__ = ("ambient", "_terms", "_hash")

    def __init__(self, terms, ambient):
        self.ambient = tuple(ambient)
        m = len(self.ambient)
        clean = {}
        for exp, c in dict(terms).items():
            exp = tuple(exp)
            if len(exp) != m:
                raise ValueError(f"exponent {exp} does not match ambient {self.ambient}")
            if any(e < 0 for e in exp):
                raise ValueError(f"negative exponent in {exp}")
            c = Fraction(c)
            if c:
                clean[exp] = clean.get(exp, 0) + c
                if not clean[exp]:
                    del clean[exp]
        self._terms = clean
        self._hash = None

    # construction helpers

    @classmethod
    def zero(cls, ambient):
        return cls({}, ambient)

    @classmethod
    def constant(cls, c, ambient):
        return cls({(0,) * len(ambient): c}, ambient)

    @classmethod
    def variable(cls, name, ambient):
        ambient = tuple(ambient)
        if name not in ambient:
            raise UnknownVariableError(f"unknown variable {name!r}; ambient is {ambient}")
        exp = tuple(int(v == name) for v in ambient)
        return cls({exp: 1}, ambient)

    @classmethod
    def monomial(cls, exp, ambient, coeff=1):
        return cls({tuple(exp): coeff}, ambient)

    @property
    def terms(self):
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coefficient(self, exp):
        return self._terms.get(tuple(exp), Fraction(0))

    def is_zero(self):
        return not self._terms

    def degree(self):
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    def order(self):
        """Lowest total degree among the terms; -1 for zero."""
        return min((sum(e) for e in self._terms), default=-1)

    def constant_term(self):
        return self._terms.get((0,) * len(self.ambient), Fraction(0))

    def _check(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(other, self.ambient)
        if other.ambient != self.ambient:
            raise AmbientMismatchError(f"ambient {self.ambient} vs {other.ambient}")
        return other

    def __add__(self, other):
        other = self._check(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return Polynomial(out, self.ambient)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial({e: -c for e, c in self._terms.items()}, self.ambient)

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            c = Fraction(other)
            return Polynomial({e: c * v for e, v in self._terms.items()}, self.ambient)
        other = self._check(other)
        out = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Polynomial(out, self.ambient)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative power")
        out = Polynomial.constant(1, self.ambient)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ambient == other.ambient and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == Polynomial.constant(other, self.ambient)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ambient, frozenset(self._terms.items())))
        return self._hash

    def truncate(self, n):
        """Drop all terms of total degree >= n."""
        return Polynomial({e: c for e, c in self._terms.items() if sum(e) < n}, self.ambient)

    def extend(self, ambient):
        """Re-express in a larger ambient that contains the current variables."""
        ambient = tuple(ambient)
        missing = [v for v in self.ambient if v not in ambient]
        if missing:
            raise AmbientMismatchError(f"variables {missing} not in {ambient}")
        pos = [ambient.index(v) for v in self.ambient]
        out = {}
        for e, c in self._terms.items():
            new = [0] * len(ambient)
            for p, k in zip(pos, e):
                new[p] = k
            out[tuple(new)] = c
        return Polynomial(out, ambient)

    def sorted_terms(self):
        return sorted(self._terms.items(), key=lambda t: grevlex_key(t[0]), reverse=True)

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for i, (exp, c) in enumerate(self.sorted_terms()):
            sign = "-" if c < 0 else "+"
            a = abs(c)
            factors = []
            for v, k in zip(self.ambient, exp):
                if k == 1:
                    factors.append(v)
                elif k > 1:
                    factors.append(f"{v}^{k}")
            if a != 1 or not factors:
                factors.insert(0, str(a))
            body = "*".join(factors)
            if i == 0:
                parts.append(body if sign == "+" else "-" + body)
            else:
                parts.append(sign + body)
        return "".join(parts)

    def __repr__(self):
        return f"Polynomial({str(self)!r}, {list(self.ambient)})"


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/^]))")


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            start = pos + (len(text[pos:]) - len(text[pos:].lstrip()))
            raise PolynomialSyntaxError(f"unexpected character {text[start]!r}", text, start)
        kind = m.lastgroup
        start = m.start(kind)
        tokens.append((kind, m.group(kind), start))
        pos = m.end()
    return tokens


def poly_parse(text, ambient):
    """Parse ``text`` into a Polynomial over the variables ``ambient``.

    Grammar: ``term (('+'|'-') term)*`` where a term is an optional rational
    ``p`` or ``p/q`` followed by ``*``-separated factors ``var`` or
    ``var^k``. A leading sign is accepted.
    """
    ambient = tuple(ambient)
    tokens = _tokenize(text)
    if not tokens:
        raise PolynomialSyntaxError("empty expression", text, 0)
    pos = 0
    result = {}

    def peek():
        return tokens[pos] if pos < len(tokens) else (None, None, len(text))

    def expect(kind, what):
        nonlocal pos
        tok = peek()
        if tok[0] != kind:
            raise PolynomialSyntaxError(f"expected {what}", text, tok[2])
        pos += 1
        return tok

    sign = 1
    tok = peek()
    if tok[0] == "op" and tok[1] in "+-":
        sign = -1 if tok[1] == "-" else 1
        pos += 1
    while True:
        coeff = Fraction(sign)
        exp = [0] * len(ambient)
        seen_any = False
        tok = peek()
        if tok[0] == "num":
            pos += 1
            num = int(tok[1])
            if peek()[:2] == ("op", "/"):
                pos += 1
                den_tok = expect("num", "positive integer denominator")
                den = int(den_tok[1])
                if den == 0:
                    raise PolynomialSyntaxError("zero denominator", text, den_tok[2])
                coeff *= Fraction(num, den)
            else:
                coeff *= num
            seen_any = True
            if peek()[:2] == ("op", "*"):
                pos += 1
                if peek()[0] != "name":
                    raise PolynomialSyntaxError("expected variable after '*'", text, peek()[2])
        while peek()[0] == "name":
            _, name, at = peek()
            pos += 1
            if name not in ambient:
                raise UnknownVariableError(
                    f"unknown variable {name!r} at position {at}; ambient is {list(ambient)}")
            k = 1
            if peek()[:2] == ("op", "^"):
                pos += 1
                ktok = expect("num", "positive integer exponent")
                k = int(ktok[1])
                if k <= 0:
                    raise PolynomialSyntaxError("exponent must be positive", text, ktok[2])
            exp[ambient.index(name)] += k
            seen_any = True
            if peek()[:2] == ("op", "*"):
                pos += 1
                if peek()[0] != "name":
                    raise PolynomialSyntaxError("expected variable after '*'", text, peek()[2])
            else:
                break
        if not seen_any:
            raise PolynomialSyntaxError("expected a term", text, peek()[2])
        key = tuple(exp)
        result[key] = result.get(key, 0) + coeff
        tok = peek()
        if tok[0] is None:
            break
        if tok[0] == "op" and tok[1] in "+-":
            sign = -1 if tok[1] == "-" else 1
            pos += 1
            continue
        raise PolynomialSyntaxError(f"unexpected token {tok[1]!r}", text, tok[2])
    return Polynomial(result, ambient)


def poly_mul(p, q):
    if p.ambient != q.ambient:
        raise AmbientMismatchError(f"ambient {p.ambient} vs {q.ambient}")
    return p * q


def partial_derivative(p, v):
    if v not in p.ambient:
        raise UnknownVariableError(f"unknown variable {v!r}; ambient is {p.ambient}")
    i = p.ambient.index(v)
    out = {}
    for e, c in p.items():
        if e[i]:
            d = list(e)
            d[i] -= 1
            out[tuple(d)] = c * e[i]
    return Polynomial(out, p.ambient)


def monomials_below(m, n):
    """Exponent tuples in m variables of total degree < n.

    Ordered by degree, then descending grevlex within a degree.
    """
    out = []
    for d in range(n):
        layer = []
        for combo in combinations_with_replacement(range(m), d):
            exp = [0] * m
            for i in combo:
                exp[i] += 1
            layer.append(tuple(exp))
        layer.sort(key=grevlex_key, reverse=True)
        out.extend(layer)
    return out


def default_truncation(polys):
    """Twice the largest degree among ``polys``, plus four."""
    return 2 * max((p.degree() for p in polys), default=0) + 4


class TruncatedLocalAlgebra:
    """Finite-dimensional algebra ``k[x]/((relations) + m^N)``.

    Elements are coordinate vectors over ``basis``, a set of standard
    monomials. Internally vectors are sparse dicts ``{basis_index: Fraction}``.
    """

    def __init__(self, ambient, relations, N):
        ambient = tuple(ambient)
        if N < 1:
            raise ValueError("truncation order must be >= 1")
        rels = []
        for r in relations:
            if r.ambient != ambient:
                raise AmbientMismatchError(f"relation {r} has ambient {r.ambient}, expected {ambient}")
            rels.append(r)
        self.ambient = ambient
        self.relations = tuple(rels)
        self.N = N
        self.is_zero_ring = any(r.constant_term() != 0 for r in rels)

        monos = monomials_below(len(ambient), N)
        col = {e: i for i, e in enumerate(monos)}
        rows = []
        for r in rels:
            if r.is_zero():
                continue
            lo = r.order()
            for u in monos:
                if sum(u) + lo >= N:
                    break
                row = {}
                for e, c in r.items():
                    s = tuple(a + b for a, b in zip(e, u))
                    j = col.get(s)
                    if j is not None:
                        row[j] = row.get(j, 0) + c
                if row:
                    rows.append(row)
        pivots = echelonize(rows, reduce=True)
        self.basis = tuple(e for i, e in enumerate(monos) if i not in pivots)
        self._index = {e: i for i, e in enumerate(self.basis)}

        # normal form of every monomial of degree < N
        table = {}
        for i, e in enumerate(monos):
            if i in pivots:
                vec = {}
                for j, c in pivots[i].items():
                    if j != i:
                        vec[self._index[monos[j]]] = -c
                table[e] = vec
            else:
                table[e] = {self._index[e]: Fraction(1)}
        self._nf = table
        self._mul_cache = {}

    def __repr__(self):
        rels = ", ".join(str(r) for r in self.relations)
        return f"TruncatedLocalAlgebra({list(self.ambient)}, [{rels}], N={self.N}, dim={self.dim})"

    @property
    def dim(self):
        return len(self.basis)

    @property
    def key(self):
        return (self.ambient, self.relations, self.N)

    def __eq__(self, other):
        return isinstance(other, TruncatedLocalAlgebra) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def index_of(self, exp):
        return self._index.get(tuple(exp))

    def monomial_nf(self, exp):
        """Sparse normal form of a monomial (zero if its degree is >= N)."""
        return self._nf.get(tuple(exp), {})

    def nf(self, p):
        """Sparse normal form of a polynomial."""
        if p.ambient != self.ambient:
            raise AmbientMismatchError(f"polynomial ambient {p.ambient} vs algebra {self.ambient}")
        out = {}
        for e, c in p.items():
            for j, v in self._nf.get(e, {}).items():
                out[j] = out.get(j, 0) + c * v
        return {j: v for j, v in out.items() if v}

    def to_vector(self, p):
        vec = [Fraction(0)] * self.dim
        for j, v in self.nf(p).items():
            vec[j] = v
        return tuple(vec)

    def to_poly(self, vec):
        if isinstance(vec, dict):
            items = vec.items()
        else:
            items = enumerate(vec)
        return Polynomial({self.basis[j]: c for j, c in items if c}, self.ambient)

    def mul_operator(self, p):
        """Columns of multiplication by ``p``: list of sparse NF(p * b_j)."""
        if p in self._mul_cache:
            return self._mul_cache[p]
        if p.ambient != self.ambient:
            raise AmbientMismatchError(f"polynomial ambient {p.ambient} vs algebra {self.ambient}")
        N = self.N
        cols = []
        terms = list(p.items())
        for b in self.basis:
            out = {}
            db = sum(b)
            for e, c in terms:
                if sum(e) + db >= N:
                    continue
                s = tuple(x + y for x, y in zip(e, b))
                for j, v in self._nf[s].items():
                    out[j] = out.get(j, 0) + c * v
            cols.append({j: v for j, v in out.items() if v})
        self._mul_cache[p] = cols
        return cols

    def multiply(self, u, v):
        """Product of two sparse element vectors."""
        out = {}
        for i, a in u.items():
            bi = self.basis[i]
            for j, b in v.items():
                s = tuple(x + y for x, y in zip(bi, self.basis[j]))
                for k, w in self._nf.get(s, {}).items():
                    out[k] = out.get(k, 0) + a * b * w
        return {k: w for k, w in out.items() if w}

    def variable_vectors(self):
        return [self.nf(Polynomial.variable(v, self.ambient)) for v in self.ambient]

    def free_dimension(self):
        """Number of monomials of degree < N (dimension with no relations)."""
        m = len(self.ambient)
        return comb(m + self.N - 1, m)


@lru_cache(maxsize=64)
def _build(ambient, relations, N):
    return TruncatedLocalAlgebra(ambient, relations, N)


def build_algebra(ambient, relations, N):
    """Cached constructor for ``k[ambient]/((relations) + m^N)``.

    A relation with nonzero constant term makes the quotient the zero ring;
    the resulting algebra has an empty basis.
    """
    ambient = tuple(ambient)
    relations = tuple(relations)
    if any(r.constant_term() != 0 for r in relations):
        alg = TruncatedLocalAlgebra.__new__(TruncatedLocalAlgebra)
        alg.ambient = ambient
        alg.relations = relations
        alg.N = N
        alg.is_zero_ring = True
        alg.basis = ()
        alg._index = {}
        alg._nf = {}
        alg._mul_cache = {}
        return alg
    return _build(ambient, relations, N)


def normal_form(p, algebra):
    """Coordinate vector of ``p`` over ``algebra.basis``."""
    return algebra.to_vector(p)
