"""Sparse multivariate polynomials over QQ or a cyclotomic field.

A polynomial is a dict mapping exponent tuples to nonzero coefficients.
Terms are ordered by a :class:`MonomialOrder`; the default ambient ring is
QQ[x, y, z] with x > y > z under grevlex.
"""
from __future__ import annotations

import math
import re
from typing import Sequence

from .exact import QQ, to_rational

MAX_EXPONENT = 2**15 - 1

__all__ = [
    "MonomialOrder",
    "PolyRing",
    "Polynomial",
    "ModuleVector",
    "grevlex_key",
    "vanishes_to_order",
    "MAX_EXPONENT",
]


def grevlex_key(e: Sequence[int]) -> tuple:
    return (sum(e),) + tuple(-v for v in reversed(e))


class MonomialOrder:
    """Monomial order on exponent tuples.

    ``kind`` is ``"grevlex"``, ``"lex"`` or ``"elim"``; the latter
    eliminates the first ``k`` variables (grevlex inside each block).
    ``key(e)`` returns a tuple that compares like the monomial.
    """

    def __init__(self, kind: str = "grevlex", nvars: int = 3, k: int = 0):
        if kind not in ("grevlex", "lex", "elim"):
            raise ValueError(f"unknown monomial order {kind!r}")
        if kind == "elim" and not 0 < k < nvars:
            raise ValueError("elimination block must be a proper prefix")
        self.kind = kind
        self.nvars = nvars
        self.k = k if kind == "elim" else 0
        if kind == "grevlex":
            self.key = grevlex_key
        elif kind == "lex":
            self.key = tuple
        else:
            k = self.k
            self.key = lambda e: grevlex_key(e[:k]) + grevlex_key(e[k:])

    def __eq__(self, other):
        return (
            isinstance(other, MonomialOrder)
            and (self.kind, self.nvars, self.k) == (other.kind, other.nvars, other.k)
        )

    def __hash__(self):
        return hash((self.kind, self.nvars, self.k))

    def __repr__(self):
        if self.kind == "elim":
            return f"MonomialOrder('elim', {self.nvars}, k={self.k})"
        return f"MonomialOrder({self.kind!r}, {self.nvars})"

    def __reduce__(self):
        return (MonomialOrder, (self.kind, self.nvars, self.k))

    def compare(self, a, b) -> int:
        ka, kb = self.key(a), self.key(b)
        return (ka > kb) - (ka < kb)


class PolyRing:
    """Polynomial ring over ``domain`` in named variables.

    ``weights`` gives the grading (default: every variable has degree 1).
    """

    def __init__(self, variables: Sequence[str] = ("x", "y", "z"), domain=QQ,
                 order: MonomialOrder | str = "grevlex", weights: Sequence[int] | None = None):
        self.variables = tuple(variables)
        self.nvars = len(self.variables)
        self.domain = domain
        if isinstance(order, str):
            order = MonomialOrder(order, self.nvars)
        if order.nvars != self.nvars:
            raise ValueError("order and ring disagree on the number of variables")
        self.order = order
        self.weights = tuple(weights) if weights is not None else (1,) * self.nvars

    def __eq__(self, other):
        return (
            isinstance(other, PolyRing)
            and self.variables == other.variables
            and self.domain == other.domain
            and self.order == other.order
            and self.weights == other.weights
        )

    def __hash__(self):
        return hash((self.variables, self.domain, self.order, self.weights))

    def __repr__(self):
        return f"PolyRing({list(self.variables)}, {self.domain!r}, {self.order!r})"

    def __reduce__(self):
        return (PolyRing, (self.variables, self.domain, self.order, self.weights))

    # constructors --------------------------------------------------------
    @property
    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    @property
    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, c) -> "Polynomial":
        c = self.domain(c)
        return Polynomial(self, {(0,) * self.nvars: c} if c else {})

    def gens(self) -> list["Polynomial"]:
        return [self.var(i) for i in range(self.nvars)]

    def var(self, name) -> "Polynomial":
        i = self.variables.index(name) if isinstance(name, str) else name
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): self.domain.one})

    def monomial(self, exps: Sequence[int], coeff=1) -> "Polynomial":
        coeff = self.domain(coeff)
        return Polynomial(self, {tuple(exps): coeff} if coeff else {})

    def from_dict(self, terms: dict) -> "Polynomial":
        dom = self.domain
        out = {}
        for e, c in terms.items():
            c = dom(c)
            if c:
                out[tuple(e)] = c
        return Polynomial(self, out)

    def __call__(self, value) -> "Polynomial":
        if isinstance(value, Polynomial):
            if value.ring == self:
                return value
            return self.convert(value)
        if isinstance(value, str):
            return self.parse(value)
        return self.constant(value)

    def convert(self, f: "Polynomial") -> "Polynomial":
        """Move ``f`` into this ring (same variables, compatible domain)."""
        if f.ring.variables != self.variables:
            raise ValueError("variable lists differ")
        dom = self.domain
        if dom.is_rational and not f.ring.domain.is_rational:
            terms = {}
            for e, c in f.terms.items():
                r = c.as_rational()
                if r is None:
                    raise ValueError("coefficient is not rational")
                terms[e] = r
            return Polynomial(self, terms)
        return Polynomial(self, {e: dom(c) for e, c in f.terms.items()})

    def with_domain(self, domain) -> "PolyRing":
        return PolyRing(self.variables, domain, MonomialOrder(self.order.kind, self.nvars, self.order.k),
                        self.weights)

    def with_order(self, order: MonomialOrder | str) -> "PolyRing":
        return PolyRing(self.variables, self.domain, order, self.weights)

    def monomials_of_degree(self, d: int) -> list[tuple]:
        """All exponent tuples of (standard) degree ``d``, descending in the order."""
        out = [e for e in _compositions(d, self.nvars)]
        out.sort(key=self.order.key, reverse=True)
        return out

    # text format ---------------------------------------------------------
    def parse(self, text: str) -> "Polynomial":
        return parse_polynomial(self, text)


def _compositions(d: int, n: int):
    if n == 1:
        yield (d,)
        return
    for first in range(d, -1, -1):
        for rest in _compositions(d - first, n - 1):
            yield (first,) + rest


class Polynomial:
    """Immutable sparse polynomial."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms
        self._hash = None

    def __reduce__(self):
        return (Polynomial, (self.ring, self.terms))

    # arithmetic ----------------------------------------------------------
    def _lift(self, other):
        if isinstance(other, Polynomial):
            if other.ring is not self.ring and other.ring != self.ring:
                raise ValueError("polynomials live in different rings")
            return other
        return self.ring.constant(other)

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e)
            if v is None:
                out[e] = c
            else:
                v = v + c
                if v:
                    out[e] = v
                else:
                    del out[e]
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            c = self.ring.domain(other)
            if not c:
                return self.ring.zero
            return Polynomial(self.ring, {e: v * c for e, v in self.terms.items()})
        other = self._lift(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e)
                out[e] = c1 * c2 if v is None else v + c1 * c2
        return Polynomial(self.ring, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = self.ring.one
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scale(self, c) -> "Polynomial":
        return self * c

    def mul_monomial(self, exps: Sequence[int], coeff=None) -> "Polynomial":
        if coeff is None:
            return Polynomial(self.ring, {tuple(a + b for a, b in zip(e, exps)): c
                                          for e, c in self.terms.items()})
        return self.mul_monomial(exps) * coeff

    def divide_monomial(self, exps: Sequence[int]) -> "Polynomial":
        """Exact division by a monomial; raises if some term is not divisible."""
        out = {}
        for e, c in self.terms.items():
            q = tuple(a - b for a, b in zip(e, exps))
            if min(q) < 0:
                raise ArithmeticError("monomial does not divide polynomial")
            out[q] = c
        return Polynomial(self.ring, out)

    # comparisons ---------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.terms == other.terms and self.ring.variables == other.ring.variables
        try:
            return self == self.ring.constant(other)
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self):
        return len(self.terms)

    # inspection ----------------------------------------------------------
    def sorted_terms(self, order: MonomialOrder | None = None) -> list[tuple]:
        key = (order or self.ring.order).key
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    def leading_monomial(self, order: MonomialOrder | None = None) -> tuple:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        return max(self.terms, key=(order or self.ring.order).key)

    def leading_coefficient(self, order: MonomialOrder | None = None):
        return self.terms[self.leading_monomial(order)]

    def monic(self, order: MonomialOrder | None = None) -> "Polynomial":
        if not self.terms:
            return self
        return self * (1 / self.leading_coefficient(order))

    def degree(self) -> int:
        """Weighted total degree (-1 for the zero polynomial)."""
        w = self.ring.weights
        if not self.terms:
            return -1
        return max(sum(a * b for a, b in zip(e, w)) for e in self.terms)

    def is_homogeneous(self) -> bool:
        w = self.ring.weights
        degs = {sum(a * b for a, b in zip(e, w)) for e in self.terms}
        return len(degs) <= 1

    def coefficient(self, exps: Sequence[int]):
        return self.terms.get(tuple(exps), self.ring.domain.zero)

    def coefficients(self) -> list:
        return [c for _, c in self.sorted_terms()]

    def map_coefficients(self, fn, ring: PolyRing | None = None) -> "Polynomial":
        ring = ring or self.ring
        out = {}
        for e, c in self.terms.items():
            v = fn(c)
            if v:
                out[e] = v
        return Polynomial(ring, out)

    # calculus and evaluation ---------------------------------------------
    def diff(self, var, order: int = 1) -> "Polynomial":
        i = self.ring.variables.index(var) if isinstance(var, str) else var
        out = {}
        for e, c in self.terms.items():
            if e[i] >= order:
                ne = list(e)
                ne[i] -= order
                out[tuple(ne)] = c * math.perm(e[i], order)
        return Polynomial(self.ring, {e: c for e, c in out.items() if c})

    def derivative(self, beta: Sequence[int]) -> "Polynomial":
        """The mixed partial derivative d^beta f."""
        out = {}
        for e, c in self.terms.items():
            if all(a >= b for a, b in zip(e, beta)):
                factor = 1
                for a, b in zip(e, beta):
                    factor *= math.perm(a, b)
                out[tuple(a - b for a, b in zip(e, beta))] = c * factor
        return Polynomial(self.ring, out)

    def evaluate(self, point: Sequence):
        """Exact value at ``point`` (a coordinate sequence)."""
        if len(point) != self.ring.nvars:
            raise ValueError("coordinate count differs from variable count")
        dom = self.ring.domain
        powers = [dict() for _ in point]
        total = None
        for e, c in self.terms.items():
            v = c
            for i, a in enumerate(e):
                if a:
                    p = powers[i].get(a)
                    if p is None:
                        p = point[i] ** a
                        powers[i][a] = p
                    v = v * p
            total = v if total is None else total + v
        return dom.zero if total is None else total

    __call__ = evaluate

    def substitute(self, images: Sequence["Polynomial"]) -> "Polynomial":
        """Compose: replace variable i by ``images[i]`` (all in one target ring)."""
        target = images[0].ring
        result = target.zero
        cache = {}
        for e, c in self.terms.items():
            term = target.constant(c)
            for i, a in enumerate(e):
                if a:
                    p = cache.get((i, a))
                    if p is None:
                        p = images[i] ** a
                        cache[(i, a)] = p
                    term = term * p
            result = result + term
        return result

    # (de)homogenization ----------------------------------------------------
    def homogenize(self, var) -> "Polynomial":
        i = self.ring.variables.index(var) if isinstance(var, str) else var
        d = self.degree()
        out = {}
        for e, c in self.terms.items():
            ne = list(e)
            ne[i] += d - sum(e)
            out[tuple(ne)] = c
        return Polynomial(self.ring, out)

    def dehomogenize(self, var) -> "Polynomial":
        i = self.ring.variables.index(var) if isinstance(var, str) else var
        out: dict = {}
        for e, c in self.terms.items():
            ne = list(e)
            ne[i] = 0
            ne = tuple(ne)
            v = out.get(ne)
            out[ne] = c if v is None else v + c
        return Polynomial(self.ring, {e: c for e, c in out.items() if c})

    # text ------------------------------------------------------------------
    def to_text(self) -> str:
        return format_polynomial(self)

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"Polynomial({self.to_text()!r})"


# ---------------------------------------------------------------------------
# text format
#
#   poly  := term ((' + ' | ' - ') term)*      leading '-' allowed
#   term  := coeff ('*' var '^' int)*
#   coeff := num['/'den]  |  '(' cyclotomic literal in w ')'
# Zero is printed as "0".


def _monomial_text(ring: PolyRing, e: tuple) -> str:
    return "*".join(f"{v}^{a}" for v, a in zip(ring.variables, e) if a)


def format_polynomial(f: Polynomial) -> str:
    if not f.terms:
        return "0"
    ring = f.ring
    rational = ring.domain.is_rational
    out = []
    for e, c in f.sorted_terms():
        mono = _monomial_text(ring, e)
        if rational:
            sign = "-" if c < 0 else "+"
            body = str(abs(c))
        else:
            sign = "+"
            body = c.to_text()
        body = body + ("*" + mono if mono else "")
        if not out:
            out.append(("-" if sign == "-" else "") + body)
        else:
            out.append(f" {sign} {body}")
    return "".join(out)


_TOKEN = re.compile(r"\s*(\([^()]*\)|[+\-]|[^\s+\-()]+)")


def parse_polynomial(ring: PolyRing, text: str) -> Polynomial:
    """Parse the text format produced by :func:`format_polynomial`.

    Also accepts bare variables (exponent 1), implicit coefficient 1
    and ``**`` for powers.
    """
    text = text.strip().replace("**", "^")
    if text == "0":
        return ring.zero
    pos = 0
    tokens = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse polynomial near {text[pos:]!r}")
        tokens.append(m.group(1))
        pos = m.end()
    result: dict = {}
    sign = 1
    i = 0
    expect_term = True
    while i < len(tokens):
        tok = tokens[i]
        if tok in "+-" and expect_term is False:
            sign = -1 if tok == "-" else 1
            expect_term = True
            i += 1
            continue
        if tok in "+-" and expect_term:
            sign = -sign if tok == "-" else sign
            i += 1
            continue
        # a term may be split by tokenizer around a parenthesized coefficient
        pending = tok
        i += 1
        while i < len(tokens) and tokens[i] not in "+-":
            pending += tokens[i]
            i += 1
        coeff, exps = _parse_term(ring, pending)
        coeff = coeff if sign == 1 else -coeff
        v = result.get(exps)
        result[exps] = coeff if v is None else v + coeff
        sign = 1
        expect_term = False
    return Polynomial(ring, {e: c for e, c in result.items() if c})


def _parse_term(ring: PolyRing, text: str):
    dom = ring.domain
    coeff = dom.one
    exps = [0] * ring.nvars
    depth = 0
    factors, cur = [], ""
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "*" and depth == 0:
            factors.append(cur)
            cur = ""
        else:
            cur += ch
    factors.append(cur)
    for fac in factors:
        fac = fac.strip()
        if not fac:
            raise ValueError(f"empty factor in term {text!r}")
        if fac.startswith("("):
            if dom.is_rational:
                value = to_rational(fac[1:-1])
            else:
                value = dom.from_str(fac)
            coeff = coeff * value
        elif fac[0].isdigit():
            coeff = coeff * dom(to_rational(fac))
        else:
            name, _, power = fac.partition("^")
            if name not in ring.variables:
                raise ValueError(f"unknown variable {name!r}")
            exps[ring.variables.index(name)] += int(power) if power else 1
    return coeff, tuple(exps)


# ---------------------------------------------------------------------------
# graded module vectors


class ModuleVector:
    """Element of a graded free module sum_i R(-twist_i).

    Homogeneous means component i is homogeneous of degree
    ``degree - twists[i]`` (or zero).
    """

    __slots__ = ("ring", "comps", "twists")

    def __init__(self, ring: PolyRing, comps: Sequence[Polynomial], twists: Sequence[int] | None = None):
        self.ring = ring
        self.comps = tuple(ring(c) if not isinstance(c, Polynomial) else c for c in comps)
        self.twists = tuple(twists) if twists is not None else (0,) * len(self.comps)
        if len(self.twists) != len(self.comps):
            raise ValueError("twist vector has the wrong length")

    def __reduce__(self):
        return (ModuleVector, (self.ring, self.comps, self.twists))

    @property
    def rank(self) -> int:
        return len(self.comps)

    def __getitem__(self, i):
        return self.comps[i]

    def __iter__(self):
        return iter(self.comps)

    def __len__(self):
        return len(self.comps)

    def is_zero(self) -> bool:
        return not any(self.comps)

    def __eq__(self, other):
        return isinstance(other, ModuleVector) and self.comps == other.comps

    def __hash__(self):
        return hash(self.comps)

    def __add__(self, other):
        return ModuleVector(self.ring, [a + b for a, b in zip(self.comps, other.comps)], self.twists)

    def __sub__(self, other):
        return ModuleVector(self.ring, [a - b for a, b in zip(self.comps, other.comps)], self.twists)

    def __neg__(self):
        return ModuleVector(self.ring, [-a for a in self.comps], self.twists)

    def __mul__(self, f):
        return ModuleVector(self.ring, [a * f for a in self.comps], self.twists)

    __rmul__ = __mul__

    def degree(self) -> int | None:
        """Graded degree, or None for the zero vector; raises if inhomogeneous."""
        deg = None
        for c, t in zip(self.comps, self.twists):
            if not c:
                continue
            if not c.is_homogeneous():
                raise ValueError("component is not homogeneous")
            d = c.degree() + t
            if deg is None:
                deg = d
            elif d != deg:
                raise ValueError("vector is not graded-homogeneous")
        return deg

    def is_homogeneous(self) -> bool:
        try:
            self.degree()
        except ValueError:
            return False
        return True

    def dot(self, polys: Sequence[Polynomial]) -> Polynomial:
        total = self.ring.zero
        for a, b in zip(self.comps, polys):
            if a and b:
                total = total + a * b
        return total

    def __repr__(self):
        return "ModuleVector([" + ", ".join(c.to_text() for c in self.comps) + "])"


# ---------------------------------------------------------------------------


def vanishes_to_order(f: Polynomial, point: Sequence, m: int) -> bool:
    """True iff every partial derivative of f of order < m vanishes at point."""
    if m < 1:
        raise ValueError("order must be positive")
    n = f.ring.nvars
    for k in range(m):
        for beta in _compositions(k, n):
            if f.derivative(beta).evaluate(point):
                return False
    return True
