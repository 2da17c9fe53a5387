"""Built-in regression suites behind ``cohann verify``."""

from __future__ import annotations

import random
from fractions import Fraction
from math import gcd

from .annihilator import (ambient_certificate, cohomology_annihilator_catalog, element_test, ext2_annihilator,
                          knorrer_lift_certificate, sann_space, stable_annihilator)
from .catalog import a_n_catalog, determinantal_catalog
from .ideal import ideal_from_generators, power_containment
from .invariants import (SemigroupCurve, delta_invariant, frobenius_number, is_symmetric, jacobian_ideal,
                         milnor_number, semigroup_gaps, suspension_report, curve_polynomial)
from .linalg import Subspace, kernel, rref
from .mf import adjugate, knorrer_cover, mf_direct_sum, mf_dual, mf_syzygy
from .ring import Polynomial, build_algebra, default_truncation, poly_parse

__all__ = ["golden_checks", "property_checks", "run_suite", "an_algebra", "coprime_pairs"]


def an_algebra(n, N=None):
    cat = a_n_catalog(n)
    if N is None:
        N = default_truncation([p for M in cat.entries for p in M.entries()] + [cat.f])
    return cat, build_algebra(cat.vars, (cat.f,), N)


def coprime_pairs(upto=12):
    return [(a, b) for a in range(2, upto + 1) for b in range(a + 1, upto + 1) if gcd(a, b) == 1]


def _ca_matches(n):
    cat, alg = an_algebra(n)
    ca = cohomology_annihilator_catalog(cat.entries, alg)
    want = ideal_from_generators([poly_parse(f"x", cat.vars), poly_parse(f"y^{n // 2}", cat.vars)], alg)
    return ca == want and ca.stabilized


def _oracle_agrees():
    for n in range(1, 7):
        cat, alg = an_algebra(n)
        for M in cat.entries:
            if sann_space(M, alg) != ext2_annihilator(M, alg, stabilize=False).space:
                return False
    det = determinantal_catalog(2)
    M = det.entries[0]
    alg = build_algebra(det.vars, (det.f,), default_truncation(M.entries() + [det.f]))
    return stable_annihilator(M, alg, stabilize=False) == ext2_annihilator(M, alg, stabilize=False)


def _catalog_mfs():
    out = []
    for n in range(1, 7):
        cat, alg = an_algebra(n)
        out += [(M, alg) for M in cat.entries]
    det = determinantal_catalog(2)
    M = det.entries[0]
    out.append((M, build_algebra(det.vars, (det.f,), default_truncation(M.entries() + [det.f]))))
    return out


def _jacobian_contained():
    return all(element_test(p, M, alg) is not None
               for M, alg in _catalog_mfs() for p in jacobian_ideal(M.f))


def _syzygy_dual_invariant():
    for M, alg in _catalog_mfs():
        s = sann_space(M, alg)
        if sann_space(mf_syzygy(M), alg) != s or sann_space(mf_dual(M), alg) != s:
            return False
    return True


def _determinantal(n):
    det = determinantal_catalog(n)
    M = det.entries[0]
    N = default_truncation(M.entries() + [det.f]) if n == 2 else 4
    alg = build_algebra(det.vars, (det.f,), N)
    I = stable_annihilator(M, alg, stabilize=(n == 2))
    X = M.A
    gens = [p for row in X for p in row] if n == 2 else [p for row in adjugate(X) for p in row]
    J = ideal_from_generators(gens, alg)
    return I <= J and J <= I


def _semigroup_battery():
    for a, b in coprime_pairs():
        c = SemigroupCurve(a, b)
        gaps = semigroup_gaps(c)
        if frobenius_number(c) != (a - 1) * (b - 1) - 1 or max(gaps) != (a - 1) * (b - 1) - 1:
            return False
        if 2 * len(gaps) != (a - 1) * (b - 1) or not is_symmetric(c):
            return False
    return True


def _milnor_battery():
    for a, b in coprime_pairs():
        c = SemigroupCurve(a, b)
        mu = milnor_number(curve_polynomial(c))
        if mu != (a - 1) * (b - 1) or mu != 2 * delta_invariant(c):
            return False
    return True


def _cross_route():
    for n in (2, 4, 6):
        cat, alg = an_algebra(n)
        ca = cohomology_annihilator_catalog(cat.entries, alg, stabilize=False)
        if ca.dim_quotient != delta_invariant(SemigroupCurve(2, n + 1)):
            return False
    return True


def _knorrer_lifts():
    for n in (2, 4, 6):
        cat, alg = an_algebra(n)
        ca = cohomology_annihilator_catalog(cat.entries, alg, stabilize=False)
        for M in cat.entries:
            cover = knorrer_cover(M, "z")
            calg = build_algebra(cover.ambient, (cover.f,), alg.N)
            if element_test(Polynomial.variable("z", cover.ambient), cover, calg) is None:
                return False
            for r in ca.generators:
                cert = ambient_certificate(r, M, alg.N)
                if cert is None:
                    return False
                lifted_cover, lifted = knorrer_lift_certificate(cert, M, "z")
                if lifted_cover != cover or not lifted.verify(cover, calg):
                    return False
    return True


def _suspension():
    return all(suspension_report(SemigroupCurve(a, b), l).mj_holds
               for a, b in ((2, 3), (2, 5), (3, 4), (3, 5)) for l in (1, 2))


def _torus():
    amb = ("x", "y", "z", "w")
    f = poly_parse("x*w^2-y*z", amb)
    alg = build_algebra(amb, (f,), 6)
    I = lambda *gs: ideal_from_generators([poly_parse(g, amb) for g in gs], alg)
    meet = I("w", "z", "y") & I("x", "y", "z", "w^2")
    return meet == I("x*w", "y", "z", "w^2") and meet == ideal_from_generators(jacobian_ideal(f), alg)


def golden_checks():
    return [
        ("ca(A_2) = (x, y)", lambda: _ca_matches(2)),
        ("ca(A_4) = (x, y^2)", lambda: _ca_matches(4)),
        ("ca(A_6) = (x, y^3)", lambda: _ca_matches(6)),
        ("sann = ann Ext^2 on A_n (n<=6) and det 2x2", _oracle_agrees),
        ("Jacobian ideal inside every stable annihilator", _jacobian_contained),
        ("sann invariant under syzygy and dual", _syzygy_dual_invariant),
        ("sann(coker X) = entries of X, generic 2x2", lambda: _determinantal(2)),
        ("sann(coker X) = 2x2 minors, generic 3x3, N=4", lambda: _determinantal(3)),
        ("semigroup battery, coprime 2<=a<b<=12", _semigroup_battery),
        ("Milnor battery mu = (a-1)(b-1) = 2 delta", _milnor_battery),
        ("codim ca(A_n) = delta(2, n+1), n=2,4,6", _cross_route),
        ("Knorrer cover lifts certificates", _knorrer_lifts),
        ("suspension formula, l=1,2", _suspension),
        ("torus ideal identity (w,z,y) & (x,y,z,w^2) = J", _torus),
    ]


def _random_poly(rng, amb, deg, terms=4):
    out = {}
    for _ in range(terms):
        exp = [0] * len(amb)
        for _ in range(rng.randrange(deg + 1)):
            exp[rng.randrange(len(amb))] += 1
        out[tuple(exp)] = Fraction(rng.randint(-5, 5), rng.randint(1, 3))
    return Polynomial(out, amb)


def property_checks(seed=0):
    rng = random.Random(seed)
    amb = ("x", "y")
    f = poly_parse("x^2+y^5", amb)
    alg = build_algebra(amb, (f,), 8)

    def nf_linear():
        for _ in range(20):
            p, q = _random_poly(rng, amb, 9), _random_poly(rng, amb, 9)
            lam = Fraction(rng.randint(-7, 7), rng.randint(1, 4))
            P, Q = alg.to_vector(p), alg.to_vector(q)
            if alg.to_vector(p + q) != tuple(a + b for a, b in zip(P, Q)):
                return False
            if alg.to_vector(p * lam) != tuple(lam * a for a in P):
                return False
        return True

    def nf_multiplicative():
        for _ in range(20):
            p, q = _random_poly(rng, amb, 9), _random_poly(rng, amb, 9)
            via_nf = alg.multiply(alg.nf(alg.to_poly(alg.nf(p))), alg.nf(alg.to_poly(alg.nf(q))))
            if via_nf != alg.nf(p * q):
                return False
        return True

    def rank_nullity():
        for _ in range(20):
            m, n = rng.randint(1, 6), rng.randint(1, 6)
            M = [[rng.randint(-2, 2) for _ in range(n)] for _ in range(m)]
            _, rank, _ = rref(M)
            if rank + kernel(M).dim != n:
                return False
        return True

    def direct_sum_meets():
        cat, talg = an_algebra(4)
        for _ in range(3):
            M1, M2 = rng.choice(cat.entries), rng.choice(cat.entries)
            s = sann_space(mf_direct_sum(M1, M2), talg)
            a = stable_annihilator(M1, talg, stabilize=False) & stable_annihilator(M2, talg, stabilize=False)
            if s != a.space:
                return False
        return True

    def square_contained():
        for _ in range(5):
            gens = [_random_poly(rng, amb, 4, 2) for _ in range(2)]
            gens = [g - Polynomial.constant(g.constant_term(), amb) for g in gens]
            I = ideal_from_generators(gens, alg)
            if not power_containment(I, I, 2):
                return False
        return True

    return [
        ("normal form is linear", nf_linear),
        ("induced multiplication is well defined", nf_multiplicative),
        ("rank-nullity on random matrices", rank_nullity),
        ("sann of a direct sum is the intersection", direct_sum_meets),
        ("I^2 inside I for random ideals", square_contained),
    ]


def run_suite(name, seed=0):
    """Run a suite; returns ``[(check name, passed)]`` in a fixed order."""
    if name == "golden":
        checks = golden_checks()
    elif name == "properties":
        checks = property_checks(seed)
    else:
        raise ValueError(f"unknown suite {name!r}")
    return [(label, bool(fn())) for label, fn in checks]
