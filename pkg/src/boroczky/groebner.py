"""Groebner bases for homogeneous ideals and graded submodules of free modules.

The engine works on raw dictionaries ``term -> coeff`` where a term is an
exponent tuple with the module component appended, so ideals are the
rank-one case.  S-pairs are processed degree by degree (for homogeneous
input the sugar of a pair is the degree of its lcm), pruned with the
Gebauer-Moeller installation of Buchberger's criteria.

On top of it sit the homological tools: syzygies, minimal generators,
graded minimal free resolutions, Betti tables, regularity and module
membership with certificates.
"""
from __future__ import annotations

import heapq
import logging
from dataclasses import dataclass, field
from operator import add, le, sub
from typing import Iterable, Sequence

from .linalg import Echelon
from .polyring import MAX_EXPONENT, ModuleVector, MonomialOrder, PolyRing, Polynomial

log = logging.getLogger(__name__)

__all__ = [
    "ModuleOrder",
    "Ideal",
    "ZeroIdeal",
    "RankMismatch",
    "ResolutionError",
    "normal_form",
    "buchberger",
    "ideal_intersection",
    "minimal_generators",
    "alpha",
    "syzygies",
    "module_groebner",
    "module_membership",
    "minimal_module_generators",
    "GradedFreeModule",
    "FreeResolution",
    "BettiTable",
    "free_resolution",
    "regularity",
    "minimize_resolution",
    "hilbert_function",
]


class ZeroIdeal(ValueError):
    """The operation needs a nonzero ideal."""


class RankMismatch(ValueError):
    """Module vectors of different ranks were combined."""


class ResolutionError(ArithmeticError):
    """A computed resolution failed its exactness or Hilbert-series check."""


# ---------------------------------------------------------------------------
# orders on module terms

_OFF = 1 << 15
_FIELD_BITS = 16


class ModuleOrder:
    """Order on terms ``(e_1, ..., e_n, comp)`` of a graded free module.

    Terms compare by component block (higher block wins, which makes the
    order eliminate whole blocks), then by graded degree
    ``wdeg(e) + twists[comp]``, then by the monomial order, then by position
    (component 0 is largest).  With a single block this is the
    term-over-position order extending the monomial order.
    """

    def __init__(self, order: MonomialOrder, weights: Sequence[int], twists: Sequence[int],
                 blocks: Sequence[int] | None = None):
        self.order = order
        self.weights = tuple(weights)
        self.twists = tuple(twists)
        self.blocks = tuple(blocks) if blocks is not None else (0,) * len(self.twists)
        self._cache: dict = {}

    def wdeg(self, t) -> int:
        return sum(map(int.__mul__, t[:-1], self.weights)) + self.twists[t[-1]]

    def key(self, t) -> int:
        k = self._cache.get(t)
        if k is None:
            c = t[-1]
            e = t[:-1]
            if max(e, default=0) > MAX_EXPONENT:
                raise OverflowError("exponent exceeds the supported width")
            fields = (self.blocks[c], self.wdeg(t)) + self.order.key(e) + (-c,)
            k = 0
            for v in fields:
                k = (k << _FIELD_BITS) | (v + _OFF)
            self._cache[t] = k
        return k


def _divides(a, b) -> bool:
    return a[-1] == b[-1] and all(map(le, a, b))


def _lcm(a, b):
    return tuple(map(max, a[:-1], b[:-1])) + (a[-1],)


def _coprime(a, b) -> bool:
    return not any(x and y for x, y in zip(a[:-1], b[:-1]))


# ---------------------------------------------------------------------------
# the engine


class _Engine:
    """Mutable Buchberger state for one submodule and one module order."""

    def __init__(self, mo: ModuleOrder, rank_one: bool):
        self.mo = mo
        self.key = mo.key
        self.rank_one = rank_one
        self.polys: list[dict] = []
        self.lts: list[tuple] = []
        self.degs: list[int] = []
        self.active: list[bool] = []
        self.by_comp: dict[int, list[int]] = {}
        self.pairs: list = []  # heap of (deg, lcm key, i, j, lcm)
        self.dead: set = set()
        self.pending: list = []  # heap of (deg, seq, terms)
        self._seq = 0
        self._div_cache: dict = {}

    # reduction -----------------------------------------------------------
    def _divisor(self, t):
        cached = self._div_cache.get(t, -1)
        if cached != -1:
            return cached
        found = None
        for i in self.by_comp.get(t[-1], ()):
            if all(map(le, self.lts[i], t)):
                found = i
                break
        self._div_cache[t] = found
        return found

    def reduce(self, f: dict, full: bool = True) -> dict:
        """Normal form of ``f`` (consumed).  ``full=False`` stops at the
        first irreducible leading term."""
        key = self.key
        heap = [(-key(t), t) for t in f]
        heapq.heapify(heap)
        rem = {}
        polys, lts = self.polys, self.lts
        while heap:
            _, t = heapq.heappop(heap)
            c = f.pop(t, None)
            if c is None:
                continue
            i = self._divisor(t)
            if i is None:
                rem[t] = c
                if not full:
                    rem.update(f)
                    return rem
                continue
            q = tuple(map(sub, t, lts[i]))
            for s, d in polys[i].items():
                u = tuple(map(add, s, q))
                if u == t:
                    continue
                v = f.get(u)
                if v is None:
                    f[u] = -c * d
                    heapq.heappush(heap, (-key(u), u))
                else:
                    v = v - c * d
                    if v:
                        f[u] = v
                    else:
                        del f[u]
        return rem

    def leading(self, f: dict):
        return max(f, key=self.key)

    # insertion -----------------------------------------------------------
    def _insert(self, f: dict) -> int:
        lt = self.leading(f)
        inv = 1 / f[lt]
        if inv != 1:
            f = {t: c * inv for t, c in f.items()}
        k = len(self.polys)
        self.polys.append(f)
        self.lts.append(lt)
        self.degs.append(self.mo.wdeg(lt))
        self.active.append(True)
        self._update(k)
        self.by_comp.setdefault(lt[-1], []).append(k)
        self._div_cache.clear()
        return k

    def _update(self, k: int) -> None:
        lt_k = self.lts[k]
        comp = lt_k[-1]
        rank_one = self.rank_one
        cands = [(_lcm(self.lts[i], lt_k), i) for i in self.by_comp.get(comp, ()) if self.active[i]]
        coprime = {i: rank_one and _coprime(self.lts[i], lt_k) for _, i in cands}
        kept = []
        rest = list(cands)
        while rest:
            l1, i1 = rest.pop(0)
            if coprime[i1] or not (any(_divides(l2, l1) for l2, _ in rest)
                                   or any(_divides(l2, l1) for l2, _ in kept)):
                kept.append((l1, i1))
        new_pairs = [(l, i) for l, i in kept if not coprime[i]]
        # chain criterion on the old pairs
        for entry in self.pairs:
            _, _, i, j, lij = entry
            if (i, j) in self.dead:
                continue
            if (_divides(lt_k, lij) and _lcm(self.lts[i], lt_k) != lij
                    and _lcm(self.lts[j], lt_k) != lij):
                self.dead.add((i, j))
        for l, i in new_pairs:
            heapq.heappush(self.pairs, (self.mo.wdeg(l), self.key(l), i, k, l))
        for i in self.by_comp.get(comp, ()):
            if self.active[i] and _divides(lt_k, self.lts[i]):
                self.active[i] = False

    def spoly(self, i: int, j: int, l) -> dict:
        qi = tuple(map(sub, l, self.lts[i]))
        qj = tuple(map(sub, l, self.lts[j]))
        out = {}
        for s, c in self.polys[i].items():
            out[tuple(map(add, s, qi))] = c
        for s, c in self.polys[j].items():
            u = tuple(map(add, s, qj))
            v = out.get(u)
            if v is None:
                out[u] = -c
            else:
                v = v - c
                if v:
                    out[u] = v
                else:
                    del out[u]
        return out

    def add_generator(self, f: dict) -> None:
        if not f:
            return
        lt = self.leading(f)
        heapq.heappush(self.pending, (self.mo.wdeg(lt), self._seq, dict(f)))
        self._seq += 1

    def _next_degree(self):
        while self.pairs and (self.pairs[0][2], self.pairs[0][3]) in self.dead:
            heapq.heappop(self.pairs)
        cands = []
        if self.pairs:
            cands.append(self.pairs[0][0])
        if self.pending:
            cands.append(self.pending[0][0])
        return min(cands) if cands else None

    def run(self, maxdeg: int | None = None) -> None:
        """Process pairs and pending generators up to degree ``maxdeg``."""
        while True:
            d = self._next_degree()
            if d is None or (maxdeg is not None and d > maxdeg):
                return
            while self.pending and self.pending[0][0] == d:
                _, _, f = heapq.heappop(self.pending)
                r = self.reduce(f)
                if r:
                    self._insert(r)
            while True:
                self._next_degree()
                if not self.pairs or self.pairs[0][0] != d:
                    break
                _, _, i, j, l = heapq.heappop(self.pairs)
                self.dead.add((i, j))
                r = self.reduce(self.spoly(i, j, l))
                if r:
                    self._insert(r)

    def complete(self) -> bool:
        return self._next_degree() is None

    def reduced_basis(self) -> list[dict]:
        idx = [i for i in range(len(self.polys)) if self.active[i]]
        idx.sort(key=lambda i: self.key(self.lts[i]))
        out = []
        for i in idx:
            f = dict(self.polys[i])
            lt = self.lts[i]
            c = f.pop(lt)
            # tail-reduce against the other active elements
            saved = self.by_comp
            self.by_comp = {comp: [j for j in lst if self.active[j] and j != i]
                            for comp, lst in saved.items()}
            self._div_cache.clear()
            tail = self.reduce(f) if f else {}
            self.by_comp = saved
            self._div_cache.clear()
            tail[lt] = c
            out.append(tail)
        return out


# ---------------------------------------------------------------------------
# conversion between Polynomial / ModuleVector and engine dictionaries


def _poly_terms(f: Polynomial, comp: int = 0) -> dict:
    return {e + (comp,): c for e, c in f.terms.items()}


def _vector_terms(v: Sequence[Polynomial], offset: int = 0) -> dict:
    out = {}
    for i, f in enumerate(v):
        for e, c in f.terms.items():
            out[e + (i + offset,)] = c
    return out


def _terms_poly(ring: PolyRing, terms: dict) -> Polynomial:
    return Polynomial(ring, {t[:-1]: c for t, c in terms.items()})


def _terms_vector(ring: PolyRing, terms: dict, rank: int, offset: int = 0) -> list[Polynomial]:
    comps = [dict() for _ in range(rank)]
    for t, c in terms.items():
        comps[t[-1] - offset][t[:-1]] = c
    return [Polynomial(ring, d) for d in comps]


def _ideal_engine(ring: PolyRing, order: MonomialOrder | None = None) -> _Engine:
    order = order or ring.order
    return _Engine(ModuleOrder(order, ring.weights, (0,)), rank_one=True)


def _check_homogeneous(polys: Iterable[Polynomial]) -> None:
    for f in polys:
        if not f.is_homogeneous():
            raise ValueError("generators must be homogeneous")


# ---------------------------------------------------------------------------
# ideals


def buchberger(gens: Sequence[Polynomial], order: MonomialOrder | None = None,
               maxdeg: int | None = None) -> list[Polynomial]:
    """Reduced Groebner basis of the homogeneous ideal generated by ``gens``.

    With ``maxdeg`` the computation is truncated: the result is a
    Groebner basis for all elements of degree at most ``maxdeg``.
    """
    gens = [g for g in gens if g]
    if not gens:
        return []
    ring = gens[0].ring
    _check_homogeneous(gens)
    eng = _ideal_engine(ring, order)
    for g in gens:
        eng.add_generator(_poly_terms(g))
    eng.run(maxdeg)
    return [_terms_poly(ring, t) for t in eng.reduced_basis()]


def normal_form(f: Polynomial, basis: Sequence[Polynomial], order: MonomialOrder | None = None) -> Polynomial:
    """Remainder of f on division by ``basis`` (assumed a Groebner basis).

    The largest reducible term is always reduced first, by the first
    basis element (in list order) whose leading term divides it.
    """
    ring = f.ring
    order = order or ring.order
    mo = ModuleOrder(order, ring.weights, (0,))
    eng = _Engine(mo, rank_one=True)
    for g in basis:
        if not g:
            continue
        terms = _poly_terms(g)
        lt = eng.leading(terms)
        inv = 1 / terms[lt]
        eng.polys.append({t: c * inv for t, c in terms.items()})
        eng.lts.append(lt)
        eng.degs.append(mo.wdeg(lt))
        eng.active.append(True)
        eng.by_comp.setdefault(lt[-1], []).append(len(eng.polys) - 1)
    return _terms_poly(ring, eng.reduce(_poly_terms(f)))


class Ideal:
    """Homogeneous ideal given by generators, caching Groebner bases per order."""

    def __init__(self, gens: Iterable[Polynomial], ring: PolyRing | None = None):
        gens = [g for g in gens if g]
        if ring is None:
            if not gens:
                raise ValueError("cannot infer the ring of an empty generator list")
            ring = gens[0].ring
        self.ring = ring
        self.gens = [ring(g) for g in gens]
        _check_homogeneous(self.gens)
        self._gb: dict = {}
        self._mingens = None

    def __repr__(self):
        return f"Ideal({[g.to_text() for g in self.gens]})"

    def __reduce__(self):
        return (Ideal, (self.gens, self.ring))

    def groebner(self, order: MonomialOrder | None = None) -> list[Polynomial]:
        order = order or self.ring.order
        gb = self._gb.get(order)
        if gb is None:
            gb = buchberger(self.gens, order)
            self._gb[order] = gb
        return gb

    def normal_form(self, f: Polynomial, order: MonomialOrder | None = None) -> Polynomial:
        return normal_form(self.ring(f), self.groebner(order), order)

    def contains(self, f) -> bool:
        if isinstance(f, Ideal):
            return all(self.contains(g) for g in f.gens)
        return not self.normal_form(f)

    __contains__ = contains

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return self.contains(other) and other.contains(self)

    __hash__ = None

    def is_zero(self) -> bool:
        return not self.gens

    def __add__(self, other: "Ideal") -> "Ideal":
        return Ideal(self.gens + other.gens, self.ring)

    def __mul__(self, other: "Ideal") -> "Ideal":
        return Ideal(_dedupe(f * g for f in self.gens for g in other.gens), self.ring)

    def __pow__(self, m: int) -> "Ideal":
        return ideal_power(self, m)

    def intersect(self, other: "Ideal") -> "Ideal":
        return ideal_intersection(self, other)

    def minimal_generators(self) -> list[Polynomial]:
        if self._mingens is None:
            self._mingens = minimal_generators(self)
        return list(self._mingens)

    def generator_degrees(self) -> list[int]:
        return [g.degree() for g in self.minimal_generators()]

    def alpha(self) -> int:
        return alpha(self)

    def free_resolution(self, check: bool = True) -> "FreeResolution":
        return free_resolution(self, check=check)

    def hilbert_function(self, t: int) -> int:
        return hilbert_function(self.gens, t)

    def change_ring(self, ring: PolyRing) -> "Ideal":
        return Ideal([ring.convert(g) for g in self.gens], ring)


def _dedupe(polys: Iterable[Polynomial]) -> list[Polynomial]:
    seen = set()
    out = []
    for f in polys:
        if f and f not in seen:
            seen.add(f)
            out.append(f)
    return out


def ideal_power(I: Ideal, m: int) -> Ideal:
    """I^m generated by all degree-m products of the (minimal) generators."""
    if m < 0:
        raise ValueError("negative power")
    if m == 0:
        return Ideal([I.ring.one], I.ring)
    gens = I.minimal_generators()
    return Ideal(_monomial_products(gens, m), I.ring)


def _monomial_products(gens: Sequence[Polynomial], m: int) -> list[Polynomial]:
    """All products g_{i1} ... g_{im} with i1 <= ... <= im, in lex order of indices."""
    from itertools import combinations_with_replacement

    out = []
    for combo in combinations_with_replacement(range(len(gens)), m):
        p = gens[combo[0]]
        for i in combo[1:]:
            p = p * gens[i]
        out.append(p)
    return out


def ideal_intersection(I: Ideal, J: Ideal) -> Ideal:
    """I cap J by eliminating t from t*I + (1 - t)*J.

    The auxiliary variable is given weight 0 so every generator stays
    homogeneous for the x, y, z grading.
    """
    ring = I.ring
    if J.ring != ring:
        raise ValueError("ideals live in different rings")
    if I.is_zero() or J.is_zero():
        return Ideal([], ring)
    tname = "_t"
    while tname in ring.variables:
        tname += "_"
    big = PolyRing((tname,) + ring.variables, ring.domain,
                   MonomialOrder("elim", ring.nvars + 1, 1), (0,) + ring.weights)

    def lift(f):
        return Polynomial(big, {(0,) + e: c for e, c in f.terms.items()})

    t = big.var(0)
    gens = [t * lift(f) for f in I.gens] + [lift(g) - t * lift(g) for g in J.gens]
    gb = buchberger(gens, big.order)
    inter = [Polynomial(ring, {e[1:]: c for e, c in g.terms.items()})
             for g in gb if all(e[0] == 0 for e in g.terms)]
    result = Ideal(inter, ring)
    return Ideal(result.minimal_generators(), ring)


def minimal_generators(I: Ideal | Sequence[Polynomial]) -> list[Polynomial]:
    """Minimal homogeneous generators, trimmed in ascending degree.

    A generator is kept iff it is not in the ideal of the previously kept
    generators; the degrees of the result are the beta_{0,j} row.
    """
    gens = I.gens if isinstance(I, Ideal) else [g for g in I if g]
    if not gens:
        return []
    ring = gens[0].ring
    _check_homogeneous(gens)
    ordered = sorted(enumerate(gens), key=lambda p: (p[1].degree(), p[0]))
    eng = _ideal_engine(ring)
    kept = []
    for _, g in ordered:
        d = g.degree()
        eng.run(d)
        r = eng.reduce(_poly_terms(g))
        if r:
            kept.append(g)
            eng._insert(r)
    return kept


def alpha(I: Ideal) -> int:
    """Initial degree: least degree of a nonzero form in I."""
    if I.is_zero():
        raise ZeroIdeal("alpha of the zero ideal is undefined")
    return min(g.degree() for g in I.gens)


# ---------------------------------------------------------------------------
# submodules of graded free modules


def _coerce_vectors(vectors) -> list[list[Polynomial]]:
    vectors = [list(v) for v in vectors]
    ring = next((f.ring for v in vectors for f in v if isinstance(f, Polynomial)), None)
    if ring is None:
        raise ValueError("cannot infer the ring: no polynomial entries")
    return [[f if isinstance(f, Polynomial) else ring(f) for f in v] for v in vectors]


def _vector_degree(v: Sequence[Polynomial], twists: Sequence[int]) -> int | None:
    return ModuleVector(v[0].ring, v, twists).degree() if v else None


def module_groebner(vectors: Sequence[Sequence[Polynomial]], twists: Sequence[int],
                    order: MonomialOrder | None = None) -> list[list[Polynomial]]:
    """Reduced Groebner basis (term-over-position) of a graded submodule."""
    vectors = [v for v in _coerce_vectors(vectors) if any(v)] if vectors else []
    if not vectors:
        return []
    ring = vectors[0][0].ring
    rank = len(twists)
    for v in vectors:
        if len(v) != rank:
            raise RankMismatch("vector rank differs from the ambient rank")
    eng = _Engine(ModuleOrder(order or ring.order, ring.weights, twists), rank_one=False)
    for v in vectors:
        _vector_degree(v, twists)
        eng.add_generator(_vector_terms(v))
    eng.run()
    return [_terms_vector(ring, t, rank) for t in eng.reduced_basis()]


def minimal_module_generators(vectors: Sequence[Sequence[Polynomial]], twists: Sequence[int]) -> list[list[Polynomial]]:
    """Trim vectors to a minimal homogeneous generating set (ascending degree)."""
    vectors = [v for v in _coerce_vectors(vectors) if any(v)] if vectors else []
    if not vectors:
        return []
    ring = vectors[0][0].ring
    eng = _Engine(ModuleOrder(ring.order, ring.weights, twists), rank_one=False)
    degs = [_vector_degree(v, twists) for v in vectors]
    ordered = sorted(range(len(vectors)), key=lambda i: (degs[i], i))
    kept = []
    for i in ordered:
        eng.run(degs[i])
        r = eng.reduce(_vector_terms(vectors[i]))
        if r:
            kept.append(vectors[i])
            eng._insert(r)
    return kept


def syzygies(vectors: Sequence[Sequence[Polynomial]], twists: Sequence[int] | None = None,
             minimal: bool = True) -> list[list[Polynomial]]:
    """Generators of the syzygy module of ``vectors`` (each a rank-r vector).

    Computed from a Groebner basis of the module generated by
    (v_i, e_i) in R^r + R^k under an order eliminating the first r
    components; basis elements supported on the last k components are
    exactly the syzygies.  Entry i of a syzygy multiplies vector i, whose
    degree is the twist of basis element e_i.
    """
    if not vectors:
        return []
    vectors = _coerce_vectors(vectors)
    ring = vectors[0][0].ring
    r = len(vectors[0])
    if twists is None:
        twists = (0,) * r
    k = len(vectors)
    degs = []
    for v in vectors:
        if len(v) != r:
            raise RankMismatch("vectors have different ranks")
        d = _vector_degree(v, twists)
        if d is None:
            raise ValueError("zero vector among generators")
        degs.append(d)
    mo = ModuleOrder(ring.order, ring.weights, tuple(twists) + tuple(degs), (1,) * r + (0,) * k)
    eng = _Engine(mo, rank_one=False)
    for i, v in enumerate(vectors):
        terms = _vector_terms(v)
        terms[(0,) * ring.nvars + (r + i,)] = ring.domain.one
        eng.add_generator(terms)
    eng.run()
    syz = [_terms_vector(ring, t, k, offset=r) for t in eng.reduced_basis()
           if min(tt[-1] for tt in t) >= r]
    if minimal:
        syz = minimal_module_generators(syz, degs)
    return syz


def module_membership(v: Sequence[Polynomial], gens: Sequence[Sequence[Polynomial]],
                      twists: Sequence[int] | None = None):
    """Decide v in the submodule generated by ``gens``.

    Returns ``(True, coeffs)`` with ``sum coeffs[i] * gens[i] == v``, or
    ``(False, None)``.
    """
    v, *gens = _coerce_vectors([v] + list(gens))
    r = len(v)
    if any(len(g) != r for g in gens):
        raise RankMismatch("vector ranks differ")
    ring = v[0].ring
    if not any(v):
        return True, [ring.zero for _ in gens]
    twists = tuple(twists) if twists is not None else (0,) * r
    nz = [i for i, g in enumerate(gens) if any(g)]
    k = len(nz)
    degs = [_vector_degree(gens[i], twists) for i in nz]
    mo = ModuleOrder(ring.order, ring.weights, twists + tuple(degs), (1,) * r + (0,) * k)
    eng = _Engine(mo, rank_one=False)
    for pos, i in enumerate(nz):
        terms = _vector_terms(gens[i])
        terms[(0,) * ring.nvars + (r + pos,)] = ring.domain.one
        eng.add_generator(terms)
    vd = _vector_degree(v, twists)
    eng.run(vd)
    rem = eng.reduce(_vector_terms(v))
    if any(t[-1] < r for t in rem):
        return False, None
    cert = _terms_vector(ring, rem, k, offset=r)
    coeffs = [ring.zero for _ in gens]
    for pos, i in enumerate(nz):
        coeffs[i] = -cert[pos]
    return True, coeffs


# ---------------------------------------------------------------------------
# resolutions


@dataclass
class GradedFreeModule:
    """sum_j R(-j)^{beta_j}, stored as the list of shifts j (one per basis element)."""

    shifts: list[int]

    @property
    def rank(self) -> int:
        return len(self.shifts)

    def multiset(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for j in self.shifts:
            out[j] = out.get(j, 0) + 1
        return dict(sorted(out.items()))

    def __str__(self):
        if not self.shifts:
            return "0"
        return " + ".join(f"R(-{j})^{b}" if b > 1 else f"R(-{j})" for j, b in self.multiset().items())


@dataclass
class BettiTable:
    """Graded Betti numbers beta_{i,j} of an ideal (ideal convention)."""

    betti: dict[tuple[int, int], int] = field(default_factory=dict)

    def __getitem__(self, ij):
        return self.betti.get(ij, 0)

    def regularity(self) -> int:
        return regularity(self)

    def row(self, i: int) -> dict[int, int]:
        return {j: b for (ii, j), b in sorted(self.betti.items()) if ii == i and b}

    def to_json(self, alpha: int | None = None) -> dict:
        out = {"betti": [{"i": i, "j": j, "beta": b} for (i, j), b in sorted(self.betti.items()) if b],
               "reg": self.regularity()}
        out["alpha"] = alpha if alpha is not None else min(self.row(0), default=None)
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "BettiTable":
        return cls({(int(e["i"]), int(e["j"])): int(e["beta"]) for e in obj["betti"]})

    def hilbert_function(self, t: int) -> int:
        """dim I_t predicted by the Betti numbers (3 variables)."""
        return sum((-1) ** i * b * _dim_R(t - j) for (i, j), b in self.betti.items())

    def __str__(self):
        if not self.betti:
            return "0"
        rows = sorted({j - i for (i, j) in self.betti})
        cols = sorted({i for (i, _) in self.betti})
        lines = ["      " + " ".join(f"{i:>4}" for i in cols)]
        for r in rows:
            cells = []
            for i in cols:
                b = self.betti.get((i, i + r), 0)
                cells.append(f"{b if b else '-':>4}")
            lines.append(f"{r:>4}: " + " ".join(cells))
        return "\n".join(lines)


def _dim_R(t: int, nvars: int = 3) -> int:
    if t < 0:
        return 0
    from math import comb

    return comb(t + nvars - 1, nvars - 1)


@dataclass
class FreeResolution:
    """F_0 <- F_1 <- ... for an ideal; ``maps[0]`` is the 1 x rank(F_0) row of generators.

    ``maps[i]`` for i >= 1 is the differential F_i -> F_{i-1}, stored as a
    list of columns (one column per basis element of F_i).
    """

    ring: PolyRing
    modules: list[GradedFreeModule]
    maps: list[list[list[Polynomial]]]

    @property
    def length(self) -> int:
        return len(self.modules) - 1

    def betti_table(self) -> BettiTable:
        b: dict = {}
        for i, F in enumerate(self.modules):
            for j, m in F.multiset().items():
                b[(i, j)] = m
        return BettiTable(b)

    def regularity(self) -> int:
        return regularity(self.betti_table())

    def shapes(self) -> list[dict[int, int]]:
        return [F.multiset() for F in self.modules]

    def is_complex(self) -> bool:
        """Every composition of consecutive differentials vanishes."""
        for i in range(1, len(self.maps)):
            prev = self.maps[i - 1]
            for col in self.maps[i]:
                for row in range(len(prev[0])):
                    acc = self.ring.zero
                    for k, entry in enumerate(col):
                        if entry and prev[k][row]:
                            acc = acc + prev[k][row] * entry
                    if acc:
                        return False
        return True

    def is_minimal(self) -> bool:
        """No differential has a nonzero constant entry."""
        for cols in self.maps[1:]:
            for col in cols:
                for e in col:
                    if e and any(sum(m) == 0 for m in e.terms):
                        return False
        return True

    def describe(self) -> str:
        parts = [str(F) for F in reversed(self.modules)]
        return "0 -> " + " -> ".join(parts) + " -> I -> 0"

    def differential_text(self, i: int) -> list[list[str]]:
        """Matrix of the i-th differential (rows x columns) in the polynomial text format."""
        cols = self.maps[i]
        nrows = len(cols[0]) if cols else 0
        return [[cols[c][r].to_text() for c in range(len(cols))] for r in range(nrows)]


def free_resolution(I: Ideal | Sequence[Polynomial], check: bool = True) -> FreeResolution:
    """Graded minimal free resolution of a homogeneous ideal.

    Each step takes minimal generators of the syzygy module of the
    previous step, so no unit entries can occur.  With ``check`` the
    result must satisfy d_{i-1} d_i = 0 and reproduce the Hilbert function
    of I computed independently by linear algebra; otherwise
    :class:`ResolutionError` is raised.
    """
    gens = minimal_generators(I)
    if not gens:
        raise ZeroIdeal("cannot resolve the zero ideal")
    ring = gens[0].ring
    modules = [GradedFreeModule([g.degree() for g in gens])]
    maps = [[[g] for g in gens]]  # columns of the 1 x k matrix
    current = [[g] for g in gens]
    twists = [0]
    for _ in range(ring.nvars + 1):
        shifts = modules[-1].shifts
        syz = syzygies(current, twists)
        if not syz:
            break
        degs = [_vector_degree(s, shifts) for s in syz]
        order = sorted(range(len(syz)), key=lambda i: (degs[i], i))
        syz = [syz[i] for i in order]
        modules.append(GradedFreeModule([degs[i] for i in order]))
        maps.append(syz)
        twists = shifts
        current = syz
    res = FreeResolution(ring, modules, maps)
    if check:
        verify_resolution(res, gens)
    return res


def verify_resolution(res: FreeResolution, gens: Sequence[Polynomial]) -> None:
    if not res.is_complex():
        raise ResolutionError("consecutive differentials do not compose to zero")
    if not res.is_minimal():
        raise ResolutionError("resolution is not minimal")
    betti = res.betti_table()
    top = max(j for (_, j) in betti.betti) + 3
    for t in range(top + 1):
        lhs = hilbert_function(gens, t)
        rhs = betti.hilbert_function(t)
        if lhs != rhs:
            raise ResolutionError(f"Hilbert function mismatch in degree {t}: {lhs} != {rhs}")


def regularity(B: BettiTable | FreeResolution) -> int:
    """max{j - i : beta_{i,j} != 0} (ideal convention)."""
    if isinstance(B, FreeResolution):
        B = B.betti_table()
    support = [j - i for (i, j), b in B.betti.items() if b]
    if not support:
        raise ZeroIdeal("empty Betti table")
    return max(support)


def hilbert_function(gens: Sequence[Polynomial], t: int) -> int:
    """dim_K (I)_t by rank of the span of all monomial multiples of the generators."""
    gens = [g for g in gens if g]
    if not gens:
        return 0
    ring = gens[0].ring
    mons = ring.monomials_of_degree(t)
    index = {e: i for i, e in enumerate(mons)}
    ech = Echelon()
    full = len(mons)
    for g in gens:
        d = g.degree()
        if d > t:
            continue
        for m in ring.monomials_of_degree(t - d):
            row = {index[tuple(map(add, e, m))]: c for e, c in g.terms.items()}
            ech.add(row)
            if ech.rank == full:
                return full
    return ech.rank


def minimize_resolution(ring: PolyRing, modules: list[GradedFreeModule],
                        maps: list[list[list[Polynomial]]]) -> FreeResolution:
    """Cancel unit entries of a (possibly non-minimal) graded resolution.

    Entries are scanned in a fixed order (differential, column, row); each
    unit entry u at (row r, column c) of d_i removes basis element c of F_i
    and r of F_{i-1}, replacing d_i by d_i - d_i[:, c] d_i[r, :] / u and
    deleting row c of d_{i+1} and column r of d_{i-1}.
    """
    modules = [GradedFreeModule(list(F.shifts)) for F in modules]
    maps = [[list(col) for col in cols] for cols in maps]
    changed = True
    while changed:
        changed = False
        for i in range(1, len(maps)):
            cols = maps[i]
            hit = None
            for c, col in enumerate(cols):
                for r, e in enumerate(col):
                    if e and len(e.terms) == 1 and sum(next(iter(e.terms))) == 0:
                        hit = (r, c, next(iter(e.terms.values())))
                        break
                if hit:
                    break
            if not hit:
                continue
            r, c, u = hit
            pivot_col = cols[c]
            new_cols = []
            for b, col in enumerate(cols):
                if b == c:
                    continue
                f = col[r]
                if f:
                    col = [col[a] - pivot_col[a] * f * (1 / u) for a in range(len(col))]
                new_cols.append([col[a] for a in range(len(col)) if a != r])
            maps[i] = new_cols
            modules[i].shifts.pop(c)
            modules[i - 1].shifts.pop(r)
            maps[i - 1] = [col for a, col in enumerate(maps[i - 1]) if a != r]
            if i + 1 < len(maps):
                maps[i + 1] = [[e for a, e in enumerate(col) if a != c] for col in maps[i + 1]]
            changed = True
            break
    while len(modules) > 1 and not modules[-1].shifts:
        modules.pop()
        maps.pop()
    return FreeResolution(ring, modules, maps)
