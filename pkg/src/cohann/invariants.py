"""Semigroup invariants of x^a + y^b, Milnor numbers and Milnor-Jung checks."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

from .ring import Polynomial, build_algebra, default_truncation, partial_derivative, poly_parse

__all__ = [
    "SemigroupCurve",
    "InvariantReport",
    "semigroup_gaps",
    "frobenius_number",
    "is_symmetric",
    "delta_invariant",
    "jacobian_ideal",
    "milnor_colength",
    "milnor_number",
    "milnor_jung_check",
    "curve_polynomial",
    "suspension_polynomial",
    "suspension_report",
    "semigroup_row",
]


@dataclass(frozen=True)
class SemigroupCurve:
    """The plane curve x^a + y^b with coprime a, b > 1."""

    a: int
    b: int

    def __post_init__(self):
        if self.a < 2 or self.b < 2:
            raise ValueError(f"exponents must exceed 1, got ({self.a}, {self.b})")
        if gcd(self.a, self.b) != 1:
            raise ValueError(f"exponents must be coprime, got ({self.a}, {self.b})")


def _representable(c, k):
    return any((k - c.a * i) % c.b == 0 for i in range(k // c.a + 1))


def semigroup_gaps(c):
    """Non-negative integers outside the semigroup generated by a and b."""
    bound = (c.a - 1) * (c.b - 1)
    return [k for k in range(bound) if not _representable(c, k)]


def frobenius_number(c):
    return max(semigroup_gaps(c))


def is_symmetric(c):
    """Exactly one of k, F - k lies in the semigroup, for every 0 <= k <= F."""
    F = frobenius_number(c)
    return all(_representable(c, k) != _representable(c, F - k) for k in range(F + 1))


def delta_invariant(c):
    return len(semigroup_gaps(c))


def jacobian_ideal(f):
    """All first partial derivatives of f, in ambient order."""
    return [partial_derivative(f, v) for v in f.ambient]


def milnor_colength(f, N):
    """dim_k k[x] / ((f) + J_f + m^N)."""
    alg = build_algebra(f.ambient, (f, *jacobian_ideal(f)), N)
    return alg.dim


def milnor_number(f, N=None):
    """Milnor number of f, or None when the colength has not stabilized at N.

    The colength of ``(f) + J_f + m^N`` is compared with the one at ``N - 2``.
    """
    if isinstance(f, str):
        raise TypeError("pass a Polynomial")
    if f.constant_term() != 0:
        raise ValueError("f must vanish at the origin")
    if N is None:
        N = default_truncation([f])
    hi = milnor_colength(f, N)
    lo = milnor_colength(f, N - 2) if N > 2 else None
    return hi if hi == lo else None


def milnor_jung_check(mu, delta, r):
    """mu = 2 delta - r + 1."""
    if min(mu, delta, r) < 0:
        raise ValueError("invariants must be non-negative")
    return mu == 2 * delta - r + 1


def curve_polynomial(c):
    return poly_parse(f"x^{c.a}+y^{c.b}", ("x", "y"))


def suspension_polynomial(c, l):
    """x^a + y^b + z1^2 + ... + zl^2."""
    amb = ("x", "y") + tuple(f"z{i + 1}" for i in range(l))
    f = curve_polynomial(c).extend(amb)
    for v in amb[2:]:
        f = f + Polynomial.variable(v, amb) ** 2
    return f


@dataclass
class InvariantReport:
    mu: int
    delta: int
    r: int
    mj_holds: bool
    sources: dict = field(default_factory=dict)
    truncation: int | None = None
    polynomial: str = ""

    def to_json(self):
        return {
            "polynomial": self.polynomial,
            "mu": self.mu,
            "delta": self.delta,
            "r": self.r,
            "mj_holds": self.mj_holds,
            "truncation": self.truncation,
            "sources": dict(sorted(self.sources.items())),
        }


def suspension_report(c, l, N=None):
    """Check mu(S) = 2 dim S/ca(S) - r + 1 for S = k[[x,y,z]]/(x^a+y^b+sum z_i^2).

    mu(S) is computed; dim S/ca(S) equals the delta invariant of the curve
    because ca pulls back exactly along double covers; r = 1 for coprime
    exponents.
    """
    if not isinstance(c, SemigroupCurve):
        c = SemigroupCurve(*c)
    if l < 0:
        raise ValueError("number of suspensions must be >= 0")
    f = suspension_polynomial(c, l)
    if N is None:
        N = default_truncation([f])
    mu = milnor_number(f, N)
    if mu is None:
        raise ArithmeticError(f"Milnor number of {f} did not stabilize at N={N}")
    delta = delta_invariant(c)
    r = 1
    return InvariantReport(
        mu=mu, delta=delta, r=r, mj_holds=milnor_jung_check(mu, delta, r),
        sources={"mu": "computed", "delta": "semigroup gaps", "r": "unibranch (coprime exponents)"},
        truncation=N, polynomial=str(f))


def semigroup_row(a, b, N=None):
    """One table row: gaps, Frobenius number, delta, mu and the Milnor-Jung verdict."""
    c = SemigroupCurve(a, b)
    gaps = semigroup_gaps(c)
    f = curve_polynomial(c)
    mu = milnor_number(f, N)
    delta = len(gaps)
    return {
        "a": a,
        "b": b,
        "gaps": gaps,
        "frobenius": max(gaps),
        "delta": delta,
        "symmetric": is_symmetric(c),
        "mu": mu,
        "mj_holds": mu is not None and milnor_jung_check(mu, delta, 1),
    }
