import pytest
import sympy
from hypothesis import HealthCheck, given, settings, strategies as st

from boroczky.exact import CyclotomicField, to_rational
from boroczky.groebner import (BettiTable, GradedFreeModule, Ideal, ResolutionError, ZeroIdeal, alpha,
                               buchberger, free_resolution, hilbert_function, ideal_intersection,
                               minimal_generators, minimize_resolution, module_membership, normal_form,
                               regularity, syzygies, verify_resolution)
from boroczky.linalg import nullspace, rank
from boroczky.polyring import MonomialOrder, PolyRing

R = PolyRing(("x", "y", "z"))
x, y, z = R.gens()
X, Y, Z = sympy.symbols("x y z")


def to_sympy(f):
    return sum(sympy.Rational(str(c)) * X ** e[0] * Y ** e[1] * Z ** e[2] for e, c in f.terms.items())


def from_sympy(expr):
    p = sympy.Poly(expr, X, Y, Z)
    return R.from_dict({m: to_rational(str(c)) for m, c in p.terms()})


def sympy_gb(gens, order="grevlex"):
    G = sympy.groebner([to_sympy(g) for g in gens], X, Y, Z, order=order)
    mo = MonomialOrder(order, 3)
    return sorted((from_sympy(g).monic(mo) for g in G.exprs), key=lambda f: f.to_text())


def ours(gens, order=None):
    mo = order or R.order
    return sorted((g.monic(mo) for g in buchberger(gens, order)), key=lambda f: f.to_text())


coeff = st.integers(-3, 3)


def forms(d):
    mons = R.monomials_of_degree(d)
    return st.lists(coeff, min_size=len(mons), max_size=len(mons)).map(
        lambda cs: R.from_dict(dict(zip(mons, cs))))


ideals = st.lists(st.sampled_from([2, 2, 3]).flatmap(forms), min_size=1, max_size=3).map(
    lambda gs: [g for g in gs if g]).filter(bool)


# Groebner bases ------------------------------------------------------------

def test_textbook_normal_form():
    gb = buchberger([x ** 2 - y * z])
    assert normal_form((x + y) ** 2, gb) == 2 * x * y + y ** 2 + y * z


@pytest.mark.parametrize("gens", [
    [x ** 2 - y * z, x * y - z ** 2],
    [x ** 3 - y ** 2 * z, x * y * z - z ** 3, y ** 3 - x ** 2 * z],
    [x * y, y * z, x * z],
    [x ** 2 + y ** 2 + z ** 2, x * y - 2 * z ** 2, x ** 3],
])
def test_groebner_matches_sympy(gens):
    assert ours(gens) == sympy_gb(gens)
    assert ours(gens, MonomialOrder("lex", 3)) == sympy_gb(gens, "lex")


@settings(max_examples=25, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(ideals)
def test_random_groebner_matches_sympy(gens):
    assert ours(gens) == sympy_gb(gens)


@settings(max_examples=25, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(ideals)
def test_groebner_is_idempotent_and_reduces_generators(gens):
    gb = buchberger(gens)
    assert buchberger(gb) == gb
    assert all(not normal_form(g, gb) for g in gens)


def test_cyclotomic_coefficients():
    K = CyclotomicField(12)
    RK = PolyRing(("x", "y", "z"), K)
    a, b, c = RK.gens()
    w = K.zeta()
    gb = buchberger([a - w * b, b ** 2 - w ** 2 * c ** 2])
    assert not normal_form(a ** 2 - w ** 4 * c ** 2, gb)


def test_inhomogeneous_input_is_rejected():
    with pytest.raises(ValueError):
        buchberger([x ** 2 + y])


# ideals --------------------------------------------------------------------

def test_membership_and_equality():
    I = Ideal([x ** 2, y ** 2])
    assert x ** 2 * z + y ** 3 in I
    assert x * y not in I
    assert I == Ideal([x ** 2 + y ** 2, x ** 2 - y ** 2])
    assert I != Ideal([x ** 2])


def test_minimal_generators_and_alpha():
    gens = [x * y, x * y * z, y * z, x * y + y * z, z ** 3]
    mg = minimal_generators(gens)
    assert [g.degree() for g in mg] == [2, 2, 3]
    assert alpha(Ideal(gens)) == 2
    with pytest.raises(ZeroIdeal):
        alpha(Ideal([], R))


def test_intersection_of_coordinate_ideals():
    assert ideal_intersection(Ideal([x]), Ideal([y])) == Ideal([x * y])
    I = ideal_intersection(Ideal([x, y]), Ideal([y, z]))
    assert I == Ideal([y, x * z])


@settings(max_examples=15, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(ideals, ideals)
def test_intersection_contains_product_and_lies_in_both(a, b):
    I, J = Ideal(a), Ideal(b)
    K = I.intersect(J)
    assert all(I.contains(g) and J.contains(g) for g in K.gens)
    assert all(K.contains(f * g) for f in a for g in b)


def test_powers():
    I = Ideal([x, y])
    assert (I ** 2) == Ideal([x ** 2, x * y, y ** 2])
    assert (I ** 3).generator_degrees() == [3, 3, 3, 3]


# modules -------------------------------------------------------------------

def test_koszul_syzygies():
    syz = syzygies([[x], [y], [z]], [0])
    assert len(syz) == 3
    for s in syz:
        assert s[0] * x + s[1] * y + s[2] * z == 0


def test_membership_certificate_replays():
    gens = [[x, y], [y, z], [z, x]]
    v = [x * x + y * y, x * y + y * z]
    ok, cert = module_membership(v, gens)
    assert ok
    assert [sum((c * g[i] for c, g in zip(cert, gens)), R.zero) for i in range(2)] == v
    ok, cert = module_membership([x, R.zero], gens)
    assert not ok and cert is None


@settings(max_examples=20, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(st.lists(st.tuples(forms(1), forms(1)), min_size=1, max_size=3), st.lists(forms(1), min_size=3, max_size=3))
def test_membership_of_combinations(gens, cs):
    gens = [list(g) for g in gens if any(g)]
    if not gens:
        return
    v = [sum((c * g[i] for c, g in zip(cs, gens)), R.zero) for i in range(2)]
    ok, cert = module_membership(v, gens)
    assert ok
    assert [sum((c * g[i] for c, g in zip(cert, gens)), R.zero) for i in range(2)] == v


# resolutions ---------------------------------------------------------------

def test_koszul_resolution():
    res = free_resolution([x, y, z])
    assert res.shapes() == [{1: 3}, {2: 3}, {3: 1}]
    assert res.regularity() == 1
    assert res.is_complex() and res.is_minimal()


def test_complete_intersection():
    res = free_resolution([x ** 2 + y * z, x ** 3 - z ** 3])
    assert res.shapes() == [{2: 1, 3: 1}, {5: 1}]
    assert regularity(res) == 4


def test_square_of_a_point():
    res = free_resolution(Ideal([x, y]) ** 2)
    assert res.shapes() == [{2: 3}, {3: 2}]


@settings(max_examples=12, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(ideals)
def test_random_resolutions_are_exact(gens):
    res = free_resolution(gens)
    assert res.is_complex() and res.is_minimal()
    B = res.betti_table()
    for t in range(max(j for _, j in B.betti) + 4):
        assert B.hilbert_function(t) == hilbert_function(gens, t)


def test_betti_json_round_trip():
    B = free_resolution([x ** 2, y ** 2, z ** 2]).betti_table()
    obj = B.to_json(alpha=2)
    assert obj["reg"] == 4 and obj["alpha"] == 2
    assert BettiTable.from_json(obj).betti == B.betti
    assert {"i": 2, "j": 6, "beta": 1} in obj["betti"]


def test_minimize_removes_trivial_summand():
    res = free_resolution([x, y, z])
    modules = [GradedFreeModule(list(F.shifts)) for F in res.modules]
    maps = [[list(c) for c in cols] for cols in res.maps]
    # F1 gets an extra R(-5) with zero image, F2 an extra R(-5) mapping onto it
    modules[1].shifts.append(5)
    maps[1].append([R.zero, R.zero, R.zero])
    modules[2].shifts.append(5)
    for col in maps[2]:
        col.append(R.zero)
    maps[2].append([R.zero, R.zero, R.zero, R.one])
    from boroczky.groebner import FreeResolution
    bloated = FreeResolution(R, modules, maps)
    assert bloated.is_complex() and not bloated.is_minimal()
    small = minimize_resolution(R, modules, maps)
    assert small.is_minimal() and small.is_complex()
    assert small.shapes() == res.shapes()


def test_minimize_duplicate_generator():
    modules = [GradedFreeModule([1, 1, 1]), GradedFreeModule([1, 2])]
    maps = [[[x], [y], [x]], [[R.one, R.zero, -R.one], [y, -x, R.zero]]]
    small = minimize_resolution(R, modules, maps)
    assert small.shapes() == [{1: 2}, {2: 1}]
    assert small.is_complex()


def test_verify_rejects_a_wrong_betti_table():
    res = free_resolution([x, y, z])
    res.modules[2] = GradedFreeModule([4])
    with pytest.raises(ResolutionError):
        verify_resolution(res, [x, y, z])


# linear algebra ------------------------------------------------------------

@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(st.integers(-3, 3), min_size=5, max_size=5), min_size=1, max_size=5))
def test_nullspace_matches_sympy(rows):
    M = sympy.Matrix(rows)
    sparse = [{j: to_rational(v) for j, v in enumerate(r) if v} for r in rows]
    kern = nullspace(sparse, 5)
    assert len(kern) == len(M.nullspace())
    assert rank(sparse) == M.rank()
    for v in kern:
        assert all(sum(to_rational(r[j]) * v.get(j, 0) for j in range(5)) == 0 for r in rows)
