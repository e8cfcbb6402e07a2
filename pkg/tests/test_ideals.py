import pytest

from boroczky.arrangement import ProjPoint
from boroczky.exact import QQ, to_rational
from boroczky.fixtures import published_generators, published_hilbert_burch
from boroczky.groebner import Ideal, free_resolution, hilbert_function, minimal_generators, syzygies
from boroczky.ideals import (RQ, HilbertBurchMatrix, NotEquigenerated, NotThreeGenerated, PointIdealSystem,
                             bocci_harbourne, build_power_resolution_matrices, certify_multiplicity,
                             containment_direct, fat_point_ideal_elimination, ghm_check, hilbert_burch,
                             intersect_all, point_ideal, power_presentations, product_of_lines, radical_ideal,
                             seceleanu_check, symbolic_power, validate_power_resolutions)
from boroczky.polyring import vanishes_to_order

x, y, z = RQ.gens()


def pt(*c):
    return ProjPoint(tuple(to_rational(v) for v in c))


def dim_R(t):
    return (t + 1) * (t + 2) // 2


# point ideals --------------------------------------------------------------

def test_point_ideal_examples():
    assert set(point_ideal(pt(0, 0, 1), RQ)) == {x, y}
    assert point_ideal(pt(1, 1, 1), RQ) == [x - y, y - z]


@pytest.mark.parametrize("c", [(0, 0, 1), (1, 1, 1), (2, -3, 5), (1, 0, 0), (0, 1, 0), (3, 1, 0)])
def test_point_ideal_has_hilbert_function_one(c):
    P = pt(*c)
    forms = point_ideal(P, RQ)
    assert len(forms) == 2
    assert all(not f.evaluate(P.coords) for f in forms)
    assert all(dim_R(t) - hilbert_function(forms, t) == 1 for t in range(6))


def test_point_system_over_cyclotomic_points(cache):
    sys_ = PointIdealSystem.build(cache.points(12))
    assert len(sys_.points) == 19
    for p, (a, b) in zip(sys_.points, sys_.forms):
        assert not a.evaluate(p.coords) and not b.evaluate(p.coords)


def test_radical_of_one_point():
    assert radical_ideal([pt(0, 0, 1)]) == Ideal([x, y])


# the ideals of triple points -----------------------------------------------

def test_n10_generators(cache):
    I = cache.radical(10)
    assert I.ring.domain is QQ
    assert I.generator_degrees() == [4, 4, 4]


def test_n11_generators(cache):
    I = cache.radical(11)
    assert I.ring.domain is QQ
    assert I.generator_degrees() == [4, 5, 5, 5]


@pytest.mark.parametrize("n", range(4, 13))
def test_radical_has_one_point_per_triple_point(cache, n):
    I = cache.radical(n)
    gens = I.minimal_generators()
    s = len(cache.points(n))
    t = s + 2
    assert dim_R(t) - hilbert_function(gens, t) == s


@pytest.mark.parametrize("n", range(4, 13))
def test_routes_agree_on_radical(cache, n):
    assert radical_ideal(cache.points(n), method="interpolation") == cache.radical(n)


@pytest.mark.parametrize("n", list(range(4, 13)) + ["hesse"])
def test_routes_agree_on_symbolic_cube(cache, n):
    assert symbolic_power(cache.points(n), 3, method="interpolation") == cache.symbolic(n, 3)


@pytest.mark.parametrize("n", [7, 9, 10])
def test_orbit_grouping_does_not_change_the_result(cache, n):
    T = cache.points(n)
    for m in (1, 2):
        assert (symbolic_power(T, m, by_orbit=True, certify=False)
                == symbolic_power(T, m, by_orbit=False, certify=False))


def test_symbolic_first_power_is_radical(cache):
    assert symbolic_power(cache.points(9), 1) == cache.radical(9)


@pytest.mark.parametrize("n", [6, 7, 8])
def test_descent_is_faithful(cache, n):
    T = cache.points(n)
    for m in (1, 2):
        over_k = fat_point_ideal_elimination(T, m, descend_result=False)
        assert not over_k.ring.domain.is_rational
        over_q = symbolic_power(T, m, certify=False)
        assert over_q.ring.domain is QQ
        assert over_q.change_ring(over_k.ring) == over_k


def test_parallel_and_sequential_folds_agree(cache):
    T = cache.points(9)
    sys_ = PointIdealSystem.build(T)
    from boroczky.polyring import PolyRing
    ring = PolyRing(("x", "y", "z"), sys_.domain)
    parts = [Ideal([a ** 2, a * b, b ** 2], ring) for a, b in sys_.forms]
    seq = intersect_all(parts)
    par = intersect_all(parts, workers=2)
    assert seq.groebner() == par.groebner()


def test_certification_rejects_a_weaker_ideal(cache):
    with pytest.raises(ArithmeticError):
        certify_multiplicity(cache.radical(8), cache.points(8), 2)


@pytest.mark.parametrize("n,dim", [(8, 3), (9, 3), (10, 1), (11, 1), (12, 1)])
def test_alpha_of_symbolic_cube(cache, n, dim):
    I3 = cache.symbolic(n, 3)
    assert I3.alpha() == n
    prod = product_of_lines(cache.arrangement(n))
    assert I3.contains(prod)
    # degree-n piece: spanned by the product of lines only from n = 10 on; for n = 8
    # the count 45 - 7*6 = 3 already forces three independent octics
    assert hilbert_function(I3.minimal_generators(), n) == dim


def test_alpha_n11(cache):
    assert cache.symbolic(11, 3).alpha() == 11


# containment ---------------------------------------------------------------

def test_direct_n4(cache):
    I = cache.radical(4)
    assert containment_direct(cache.symbolic(4, 3), I ** 2).holds


def test_direct_n12_fails_with_product_of_lines(cache):
    I = cache.radical(12)
    prod = product_of_lines(cache.arrangement(12))
    v = containment_direct(cache.symbolic(12, 3), I ** 2, prod)
    assert v.holds is False
    assert v.witness == prod
    assert v.evidence["witness_kind"] == "product_of_lines"
    assert cache.symbolic(12, 3).contains(v.witness)
    assert (I ** 2).normal_form(v.witness)


def test_direct_dual_hesse_fails(cache):
    I = cache.radical("hesse")
    v = containment_direct(cache.symbolic("hesse", 3), I ** 2)
    assert v.holds is False
    assert cache.symbolic("hesse", 3).contains(v.witness)


def test_product_of_lines_vanishes_to_order_three(cache):
    for n in (10, 12):
        prod = product_of_lines(cache.arrangement(n))
        assert prod.ring.domain is QQ and prod.degree() == n
        assert all(vanishes_to_order(prod, p.coords, 3) for p in cache.points(n))


def test_bh_n11(cache):
    v = bocci_harbourne(cache.radical(11), cache.symbolic(11, 3))
    assert v.holds is True
    assert v.evidence["reg"] == 11 and v.evidence["alpha"] == 11


def test_bh_n12_inconclusive(cache):
    v = bocci_harbourne(cache.radical(12), cache.symbolic(12, 3))
    assert v.holds is None and v.result == "inconclusive"
    assert v.evidence["alpha"] == 12 and v.evidence["reg"] > 12


def test_bh_one_point():
    P = Ideal([x, y])
    v = bocci_harbourne(P, symbolic_power([pt(0, 0, 1)], 3))
    assert v.holds is True and v.evidence == {"reg": 2, "alpha": 3, "r": 2}


def test_hilbert_burch_standard_example():
    I = Ideal([y * z, x * z, x * y])
    A = hilbert_burch(I)
    assert (A.d, A.d0, A.d1) == (2, 1, 1)
    assert Ideal(A.minors()) == I


def test_hilbert_burch_n10(cache):
    A = hilbert_burch(cache.radical(10))
    assert (A.d, A.d0, A.d1) == (4, 2, 2)
    assert all(e.degree() == 2 for e in A.entries() if e)


def test_hilbert_burch_refusals(cache):
    with pytest.raises(NotThreeGenerated):
        hilbert_burch(cache.radical(11))
    with pytest.raises(NotEquigenerated):
        hilbert_burch(cache.radical(9))


def test_ghm_counts(cache):
    v = ghm_check(hilbert_burch(cache.radical(10)))
    assert v.holds and v.evidence["entry_gens"] == 5
    trivial = HilbertBurchMatrix([[x, y, z], [RQ.zero] * 3], [], 0, 1, 0)
    assert ghm_check(trivial).evidence["entry_gens"] == 3 and ghm_check(trivial).holds


def test_ghm_on_a_generic_binary_slice():
    # six quadrics in x, y only: the entries span at most the 3 quadratic monomials
    mons = [x ** 2, x * y, y ** 2]
    rows = [[mons[0] + mons[1], mons[1] - mons[2], 2 * mons[2]], [mons[0], 3 * mons[1], mons[0] - mons[2]]]
    v = ghm_check(HilbertBurchMatrix(rows, [], 4, 2, 2))
    assert v.evidence["entry_gens"] == len(minimal_generators([e for r in rows for e in r]))


def test_seceleanu_n10(cache):
    v = seceleanu_check(cache.radical(10))
    assert v.holds is True and v.evidence["certificate_terms"] > 0


def test_seceleanu_coordinate_points():
    I = radical_ideal([pt(1, 0, 0), pt(0, 1, 0), pt(0, 0, 1)])
    assert I == Ideal([y * z, x * z, x * y])
    assert seceleanu_check(I).holds
    I3 = symbolic_power([pt(1, 0, 0), pt(0, 1, 0), pt(0, 0, 1)], 3)
    assert containment_direct(I3, I ** 2).holds


@pytest.mark.parametrize("n", [8, 10, 12, "hesse"])
def test_seceleanu_agrees_with_direct(cache, n):
    I = cache.radical(n)
    assert seceleanu_check(I).holds == containment_direct(cache.symbolic(n, 3), I ** 2).holds


@pytest.mark.parametrize("n", [8, 10, "hesse"])
def test_power_resolution_matrices(cache, n):
    A = hilbert_burch(cache.radical(n))
    report = validate_power_resolutions(A)
    d, d0, d1 = A.d, A.d0, A.d1
    assert report["I2"][2] == {3 * d: 1}
    f1 = {}
    for t in (2 * d + d0, 2 * d + d1):
        f1[t] = f1.get(t, 0) + 3
    assert report["I2"][1] == f1
    assert sum(report["I3"][1].values()) == 12
    assert report["I3"][2] == {4 * d: 3}


def test_y_columns_are_syzygies_of_the_cube(cache):
    A = hilbert_burch(cache.radical(10))
    X, Y = build_power_resolution_matrices(A)
    _, D1_sq, g3, D1_cu = power_presentations(A)
    # X . (columns of D1 for I^2) and Y^T against D1 for I^3 compose to zero
    for r in range(6):
        assert sum((D1_sq[j][r] * X[j] for j in range(6)), RQ.zero) == 0
    for c in range(3):
        for r in range(10):
            assert sum((D1_cu[j][r] * Y[j][c] for j in range(12)), RQ.zero) == 0
    assert len(syzygies([[g] for g in g3], [0])) == 12


def test_n10_power_shapes(cache):
    A = hilbert_burch(cache.radical(10))
    rep = validate_power_resolutions(A)
    assert rep["I2"] == [{8: 6}, {10: 6}, {12: 1}]
    assert rep["I3"] == [{12: 10}, {14: 12}, {16: 3}]


# invariants over all fixtures ---------------------------------------------

FIXTURES = list(range(4, 13)) + ["hesse"]


@pytest.mark.parametrize("n", list(range(4, 11)) + ["hesse"])
def test_containment_sandwich(cache, n):
    I = cache.radical(n)
    for m in (2, 3):
        Im, Ism = I ** m, cache.symbolic(n, m)
        assert all(Ism.contains(g) for g in Im.minimal_generators())
        assert all(I.contains(g) for g in Ism.minimal_generators())


@pytest.mark.parametrize("n", range(4, 9))
def test_fourth_symbolic_power_in_square(cache, n):
    I = cache.radical(n)
    assert containment_direct(cache.symbolic(n, 4), I ** 2).holds


@pytest.mark.parametrize("n", FIXTURES)
def test_criterion_soundness(cache, n):
    I = cache.radical(n)
    direct = containment_direct(cache.symbolic(n, 3), I ** 2).holds
    if bocci_harbourne(I, cache.symbolic(n, 3)).holds:
        assert direct
    try:
        A = hilbert_burch(I)
    except NotThreeGenerated:
        return
    if ghm_check(A).holds:
        assert direct


@pytest.mark.parametrize("n", FIXTURES)
def test_symbolic_generators_vanish_to_order(cache, n):
    certify_multiplicity(cache.symbolic(n, 3), cache.points(n), 3)


def test_main_theorem_verdicts(cache):
    verdicts = {n: containment_direct(cache.symbolic(n, 3), cache.radical(n) ** 2).holds for n in range(4, 13)}
    assert verdicts == {**{n: True for n in range(4, 12)}, 12: False}


# published generator lists ---------------------------------------------------

def test_published_n10_generators_are_three_quartics():
    I = Ideal(published_generators(10), RQ)
    assert I.generator_degrees() == [4, 4, 4]


def test_published_n10_matrix():
    A = published_hilbert_burch()
    assert all(e.degree() == 2 for e in A.entries() if e)
    v = ghm_check(A)
    assert v.holds and v.evidence["entry_gens"] == 5
    J = Ideal(A.minors(), RQ)
    assert J.generator_degrees() == [4, 4, 4]
    assert dim_R(10) - J.hilbert_function(10) == 12
    assert free_resolution(J).shapes() == [{4: 3}, {6: 2}]
    for row in A.rows:
        assert sum((a * g for a, g in zip(row, A.generators)), RQ.zero) == 0


def test_published_n10_list_is_not_the_matrix_ideal():
    # the printed generator list and the printed matrix disagree; both are recorded
    I = Ideal(published_generators(10), RQ)
    J = Ideal(published_hilbert_burch().minors(), RQ)
    assert I != J
    assert dim_R(11) - I.hilbert_function(11) == 8


def test_published_n11_generators():
    I = Ideal(published_generators(11), RQ)
    assert I.generator_degrees() == [4, 5, 5, 5]
    assert dim_R(12) - I.hilbert_function(12) == 15
    res = free_resolution(I ** 2)
    assert res.regularity() == 11
    assert res.shapes() == [{8: 1, 9: 3, 10: 6}, {10: 2, 11: 7, 12: 3}, {12: 1, 13: 2}]


@pytest.mark.parametrize("n", FIXTURES)
def test_resolutions_exact_on_fixtures(cache, n):
    # free_resolution raises unless d*d = 0, no unit entries, and the Betti
    # table reproduces the Hilbert function computed by linear algebra
    I = cache.radical(n)
    for P in (I, I ** 2):
        res = free_resolution(P, check=True)
        assert res.length <= 2
