"""Catalogs of matrix factorizations (indecomposable MCM modules)."""

from __future__ import annotations

import json
from dataclasses import dataclass

from .mf import MFFormatError, MFValidationError, adjugate_partner, determinant, generic_matrix, mf_from_json, mf_to_json, mf_validate
from .ring import poly_parse

__all__ = [
    "Catalog",
    "CatalogError",
    "a_n_catalog",
    "a_n_factorization",
    "determinantal_catalog",
    "catalog_to_json",
    "catalog_from_json",
    "load_catalog",
    "save_catalog",
]


class CatalogError(ValueError):
    pass


@dataclass(frozen=True)
class Catalog:
    """Factorizations of one polynomial ``f``.

    ``entries`` take part in annihilator intersections; ``endpoints`` hold
    factorizations with free cokernel, kept for reference only.
    """

    f: object
    vars: tuple
    entries: tuple
    complete: bool
    endpoints: tuple = ()

    def labels(self):
        return [M.label for M in self.entries]


def a_n_factorization(n, j):
    """``[[x, y^j], [y^(n+1-j), -x]]``, partnered with itself, for ``x^2 + y^(n+1)``."""
    if not 0 <= j <= n + 1:
        raise ValueError(f"j must lie in 0..{n + 1}")
    amb = ("x", "y")
    P = lambda s: poly_parse(s, amb)
    mono = lambda k: P(f"y^{k}") if k > 0 else P("1")
    f = P(f"x^2+y^{n + 1}")
    A = [[P("x"), mono(j)], [mono(n + 1 - j), P("-x")]]
    return mf_validate(A, A, f, f"A_{n}:{j}")


def a_n_catalog(n):
    """All A_j, j = 1..n; j = 0 and j = n + 1 are stored as free endpoints."""
    if n < 1:
        raise ValueError("n must be >= 1")
    entries = tuple(a_n_factorization(n, j) for j in range(1, n + 1))
    endpoints = (a_n_factorization(n, 0), a_n_factorization(n, n + 1))
    return Catalog(entries[0].f, ("x", "y"), entries, True, endpoints)


def determinantal_catalog(n):
    """The single factorization (X, adj X) of det X for the generic n x n X."""
    if n not in (2, 3):
        raise ValueError("determinantal catalogs are available for n = 2, 3")
    X, amb = generic_matrix(n)
    f = determinant(X)
    M = adjugate_partner(X, f, f"det{n}")
    return Catalog(f, amb, (M,), False)


def catalog_to_json(cat):
    obj = {
        "f": str(cat.f),
        "vars": list(cat.vars),
        "complete": cat.complete,
        "entries": [mf_to_json(M) for M in cat.entries],
    }
    if cat.endpoints:
        obj["endpoints"] = [mf_to_json(M) for M in cat.endpoints]
    return obj


def catalog_from_json(obj):
    """Parse and revalidate every entry; failures name the entry."""
    try:
        amb = tuple(obj["vars"])
        f = poly_parse(obj["f"], amb)
        raw = obj["entries"]
        complete = bool(obj.get("complete", False))
    except KeyError as exc:
        raise MFFormatError(f"missing field {exc.args[0]!r} in catalog") from None
    if not raw:
        raise CatalogError("catalog has no entries")

    def build(items):
        out = []
        for k, e in enumerate(items):
            label = e.get("label") or f"entry {k}"
            try:
                M = mf_from_json(e)
            except MFValidationError as exc:
                raise MFValidationError(f"catalog entry {label!r}: {exc}") from None
            if M.f != f or M.ambient != amb:
                raise MFValidationError(f"catalog entry {label!r} factorizes {M.f}, catalog is over {f}")
            out.append(M)
        return tuple(out)

    return Catalog(f, amb, build(raw), complete, build(obj.get("endpoints", [])))


def save_catalog(cat, path):
    with open(path, "w") as fh:
        json.dump(catalog_to_json(cat), fh, indent=2, sort_keys=True)
        fh.write("\n")


def load_catalog(path):
    with open(path) as fh:
        obj = json.load(fh)
    return catalog_from_json(obj)
