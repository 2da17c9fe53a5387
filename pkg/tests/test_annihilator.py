import pytest

from cohann.annihilator import (RelationMissingError, ambient_certificate, cohomology_annihilator_catalog,
                                element_test, ext2_annihilator, jacobian_containment_check,
                                knorrer_lift_certificate, sann_space, stable_annihilator)
from cohann.catalog import a_n_catalog, a_n_factorization, determinantal_catalog
from cohann.ideal import ideal_from_generators
from cohann.invariants import jacobian_ideal
from cohann.mf import knorrer_cover, mf_direct_sum, mf_dual, mf_syzygy, mf_validate
from cohann.ring import Polynomial, build_algebra, poly_parse

XY = ("x", "y")
P = lambda s, amb=XY: poly_parse(s, amb)


def algebra_for(f, N):
    return build_algebra(f.ambient, (f,), N)


@pytest.fixture(scope="module")
def cusp():
    M = a_n_factorization(2, 1)
    return M, algebra_for(M.f, 8)


@pytest.fixture(scope="module")
def det2():
    cat = determinantal_catalog(2)
    return cat.entries[0], algebra_for(cat.f, 8)


def trivial(f):
    return mf_validate([[f]], [[Polynomial.constant(1, f.ambient)]], f, "triv")


def test_cusp_oracle_first(cusp):
    M, A = cusp
    oracle = ext2_annihilator(M, A)
    assert oracle == ideal_from_generators([P("x"), P("y")], A)
    assert oracle.stabilized


def test_cusp_solver(cusp):
    M, A = cusp
    I = stable_annihilator(M, A)
    assert I == ideal_from_generators([P("x"), P("y")], A)
    assert I.stabilized and I.dim_quotient == 1
    assert I == ext2_annihilator(M, A)


def test_trivial_mf_unit_ideal(cusp):
    _, A = cusp
    T = trivial(P("x^2+y^3"))
    assert stable_annihilator(T, A).is_unit()
    assert ext2_annihilator(T, A).is_unit()
    assert cohomology_annihilator_catalog([T], A).is_unit()
    assert jacobian_containment_check(T, A)


def test_determinantal_2x2_entries(det2):
    M, A = det2
    I = stable_annihilator(M, A)
    assert I == ideal_from_generators([p for row in M.A for p in row], A)
    assert I.stabilized


def test_a4_j2_oracle_agreement():
    M = a_n_factorization(4, 2)
    A = algebra_for(M.f, 12)
    assert stable_annihilator(M, A) == ext2_annihilator(M, A)


def test_element_test_examples(cusp):
    M, A = cusp
    for v in XY:
        cert = element_test(jacobian_ideal(M.f)[XY.index(v)], M, A)
        assert cert is not None and cert.verify(M, A)
    assert element_test(P("1"), M, A) is None
    cert = element_test(M.f, M, A)
    assert cert is not None and cert.verify(M, A)
    assert element_test("x", M, A) is not None


def test_wrong_algebra_rejected(cusp):
    M, _ = cusp
    with pytest.raises(RelationMissingError):
        stable_annihilator(M, build_algebra(XY, (P("x^2+y^5"),), 8))
    with pytest.raises(RelationMissingError):
        element_test(P("x"), M, build_algebra(XY, (), 8))


def test_tiny_truncation_not_stabilized():
    M = a_n_factorization(6, 3)
    A = algebra_for(M.f, 2)
    I = stable_annihilator(M, A)
    assert not I.stabilized


@pytest.mark.parametrize("n,gens", [(2, ["x", "y"]), (4, ["x", "y^2"]), (1, ["x", "y"]), (3, ["x", "y^2"])])
def test_catalog_intersections(n, gens):
    cat = a_n_catalog(n)
    A = algebra_for(cat.f, 2 * n + 6)
    ca = cohomology_annihilator_catalog(cat.entries, A)
    assert ca == ideal_from_generators([P(g) for g in gens], A)
    assert ca.stabilized
    for M in cat.entries:
        assert ca <= stable_annihilator(M, A, stabilize=False)


def test_empty_catalog_rejected(cusp):
    with pytest.raises(ValueError):
        cohomology_annihilator_catalog([], cusp[1])


@pytest.mark.parametrize("n", [2, 3, 4])
def test_syzygy_dual_invariance(n):
    cat = a_n_catalog(n)
    A = algebra_for(cat.f, 2 * n + 6)
    for M in cat.entries:
        s = sann_space(M, A)
        assert sann_space(mf_syzygy(M), A) == s
        assert sann_space(mf_dual(M), A) == s


def test_syzygy_dual_invariance_determinantal(det2):
    M, A = det2
    s = sann_space(M, A)
    assert sann_space(mf_syzygy(M), A) == s
    assert sann_space(mf_dual(M), A) == s


def test_direct_sum_is_intersection():
    A = algebra_for(a_n_factorization(4, 1).f, 12)
    M1, M2 = a_n_factorization(4, 1), a_n_factorization(4, 2)
    both = stable_annihilator(mf_direct_sum(M1, M2), A, stabilize=False)
    assert both == stable_annihilator(M1, A, stabilize=False) & stable_annihilator(M2, A, stabilize=False)


def test_jacobian_containment(det2):
    for n in (2, 3, 4):
        cat = a_n_catalog(n)
        A = algebra_for(cat.f, 2 * n + 6)
        assert all(jacobian_containment_check(M, A) for M in cat.entries)
    assert jacobian_containment_check(*det2)


def test_knorrer_lift_cusp():
    M = a_n_factorization(2, 1)
    N = 8
    cert = ambient_certificate(P("y"), M, N)
    assert cert is not None
    cover, lifted = knorrer_lift_certificate(cert, M, "z")
    assert cover == knorrer_cover(M, "z")
    assert lifted.verify(cover, algebra_for(cover.f, N))
    # exact over the ambient ring up to the truncation order
    assert lifted.verify(cover, build_algebra(cover.ambient, (), N))


def test_knorrer_cover_commutes_with_syzygy_at_annihilator_level():
    M = a_n_factorization(4, 1)
    C1 = knorrer_cover(mf_syzygy(M), "z")
    C2 = knorrer_cover(M, "z")
    A = algebra_for(C1.f, 8)
    assert sann_space(C1, A) == sann_space(C2, A)
    assert element_test(P("z", C1.ambient), C1, A) is not None


def test_stabilization_survives_larger_truncation():
    cat = a_n_catalog(4)
    lo = cohomology_annihilator_catalog(cat.entries, algebra_for(cat.f, 10))
    hi_alg = algebra_for(cat.f, 12)
    hi = cohomology_annihilator_catalog(cat.entries, hi_alg)
    assert ideal_from_generators(lo.generators, hi_alg) == hi
