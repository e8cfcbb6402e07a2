"""Exact scalars: rationals and cyclotomic number fields Q(zeta_m).

Rationals are ``gmpy2.mpq`` values.  A cyclotomic element is a dense
vector of rational coefficients with respect to the power basis
1, w, ..., w^(phi(m)-1) of Q[w]/Phi_m(w), always kept fully reduced.
"""
from __future__ import annotations

import cmath
import math
from functools import lru_cache
from typing import Iterable, Sequence

from gmpy2 import mpq

Rational = type(mpq())

__all__ = [
    "Rational",
    "QQ",
    "to_rational",
    "cyclotomic_polynomial",
    "CyclotomicField",
    "CyclotomicElement",
    "ContextMismatch",
    "vertex_coordinates",
]


class ContextMismatch(ValueError):
    """Raised when combining elements of different cyclotomic fields."""


def to_rational(value) -> Rational:
    """Coerce ints, strings like ``"3/4"``, Fractions and mpq to mpq."""
    if isinstance(value, Rational):
        return value
    if isinstance(value, str):
        return mpq(value.strip())
    if isinstance(value, float):
        raise TypeError("floats are not exact; pass a string or Fraction")
    try:
        return mpq(value.numerator, value.denominator)
    except AttributeError:
        return mpq(value)


# ---------------------------------------------------------------------------
# integer polynomial helpers (dense, low degree first)

def _ipoly_divmod(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    # den must be monic
    num = list(num)
    dd = len(den) - 1
    if len(num) - 1 < dd:
        return [0], num
    quot = [0] * (len(num) - dd)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        if c:
            quot[i - dd] = c
            for j in range(dd + 1):
                num[i - dd + j] -= c * den[j]
    rem = num[:dd] or [0]
    return quot, rem


def _ipoly_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


@lru_cache(maxsize=None)
def _cyclotomic(m: int) -> tuple[int, ...]:
    num = [-1] + [0] * (m - 1) + [1]  # x^m - 1
    for d in range(1, m):
        if m % d == 0:
            num, rem = _ipoly_divmod(num, list(_cyclotomic(d)))
            if any(rem):
                raise ArithmeticError(f"Phi_{d} does not divide x^{m}-1")
    return tuple(num)


def cyclotomic_polynomial(m: int) -> list[int]:
    """Integer coefficients of Phi_m, lowest degree first.

    Computed as (x^m - 1) divided by the product of Phi_d over the
    proper divisors d of m.

    >>> cyclotomic_polynomial(12)
    [1, 0, -1, 0, 1]
    """
    if m < 1:
        raise ValueError("conductor must be positive")
    return list(_cyclotomic(m))


def euler_phi(m: int) -> int:
    return sum(1 for k in range(1, m + 1) if math.gcd(k, m) == 1)


# ---------------------------------------------------------------------------
# rational field


class RationalField:
    """The coefficient domain Q."""

    is_rational = True
    tag = "QQ"

    def __init__(self):
        self.zero = mpq(0)
        self.one = mpq(1)

    def __call__(self, value) -> Rational:
        return to_rational(value)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"

    def to_str(self, c) -> str:
        return str(c)

    def from_str(self, s: str) -> Rational:
        return mpq(s)

    def as_rational(self, c):
        return c

    def to_complex(self, c) -> complex:
        return complex(float(c))


QQ = RationalField()


# ---------------------------------------------------------------------------
# cyclotomic fields


class CyclotomicField:
    """The field Q(zeta_m) with power basis in w = zeta_m.

    Instances are cached per conductor, so ``CyclotomicField(12) is
    CyclotomicField(12)``.
    """

    is_rational = False
    _instances: dict[int, "CyclotomicField"] = {}

    def __new__(cls, m: int):
        if m in cls._instances:
            return cls._instances[m]
        self = super().__new__(cls)
        self._setup(m)
        cls._instances[m] = self
        return self

    def __getnewargs__(self):
        return (self.m,)

    def _setup(self, m: int) -> None:
        if m < 1:
            raise ValueError("conductor must be positive")
        self.m = m
        self.modulus = cyclotomic_polynomial(m)
        self.degree = len(self.modulus) - 1
        self.tag = f"QQ(zeta_{m})"
        deg = self.degree
        # reduced images of w^j for 0 <= j < max(2*deg, m)
        table = []
        cur = [mpq(0)] * deg
        cur[0] = mpq(1)
        for _ in range(max(2 * deg, m + 1)):
            table.append(tuple(cur))
            top = cur[-1]
            cur = [mpq(0)] + cur[:-1]
            if top:
                for i in range(deg):
                    cur[i] -= top * self.modulus[i]
        self._powers = table
        self.zero = CyclotomicElement(self, (mpq(0),) * deg)
        self.one = self.embed(1)

    def __repr__(self):
        return self.tag

    def __reduce__(self):
        return (CyclotomicField, (self.m,))

    # construction -----------------------------------------------------
    def __call__(self, value) -> "CyclotomicElement":
        if isinstance(value, CyclotomicElement):
            if value.field is not self:
                raise ContextMismatch(f"{value.field!r} vs {self!r}")
            return value
        return self.embed(value)

    def embed(self, q) -> "CyclotomicElement":
        coeffs = [mpq(0)] * self.degree
        coeffs[0] = to_rational(q)
        return CyclotomicElement(self, tuple(coeffs))

    def from_coeffs(self, coeffs: Iterable) -> "CyclotomicElement":
        """Element sum c_k w^k for an arbitrary-length coefficient list."""
        acc = [mpq(0)] * self.degree
        for k, c in enumerate(coeffs):
            c = to_rational(c)
            if c:
                row = self.power_vector(k)
                for i, v in enumerate(row):
                    if v:
                        acc[i] += c * v
        return CyclotomicElement(self, tuple(acc))

    def power_vector(self, k: int) -> tuple:
        k %= self.m
        return self._powers[k]

    def zeta(self, k: int = 1) -> "CyclotomicElement":
        return CyclotomicElement(self, self.power_vector(k))

    # arithmetic kernels --------------------------------------------------
    def _reduce(self, full: list) -> tuple:
        deg = self.degree
        out = list(full[:deg]) + [mpq(0)] * max(0, deg - len(full))
        for j in range(deg, len(full)):
            c = full[j]
            if c:
                row = self._powers[j]
                for i in range(deg):
                    v = row[i]
                    if v:
                        out[i] += c * v
        return tuple(out)

    def _inverse(self, coeffs: tuple) -> tuple:
        # extended Euclid in Q[w] against Phi_m
        r0 = [mpq(c) for c in self.modulus]
        r1 = _strip(list(coeffs))
        s0, s1 = [mpq(0)], [mpq(1)]
        while len(r1) > 1:
            q, r = _qpoly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _strip(_qpoly_sub(s0, _qpoly_mul(q, s1)))
        if r1[0] == 0:
            raise ArithmeticError("modulus is not irreducible")
        inv_c = 1 / r1[0]
        return self._reduce([c * inv_c for c in s1])

    def to_str(self, c: "CyclotomicElement") -> str:
        return c.to_text()

    def from_str(self, s: str) -> "CyclotomicElement":
        return CyclotomicElement.from_text(self, s)

    def as_rational(self, c: "CyclotomicElement"):
        return c.as_rational()

    def to_complex(self, c: "CyclotomicElement") -> complex:
        return c.to_complex()

    def galois(self, a: int):
        """The automorphism w -> w^a (a coprime to m) as a function."""
        if math.gcd(a, self.m) != 1:
            raise ValueError("exponent must be coprime to the conductor")
        return lambda e: e.galois(a)

    def galois_exponents(self) -> list[int]:
        return [a for a in range(1, self.m) if math.gcd(a, self.m) == 1] or [1]


def _strip(p: list) -> list:
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p or [mpq(0)]


def _qpoly_divmod(a: list, b: list) -> tuple[list, list]:
    a = list(a)
    db = len(b) - 1
    if len(a) - 1 < db:
        return [mpq(0)], _strip(a)
    inv = 1 / b[-1]
    q = [mpq(0)] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]
        if c:
            c = c * inv
            q[i - db] = c
            for j in range(db + 1):
                a[i - db + j] -= c * b[j]
    return _strip(q), _strip(a[:db] or [mpq(0)])


def _qpoly_mul(a: list, b: list) -> list:
    out = [mpq(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return out


def _qpoly_sub(a: list, b: list) -> list:
    n = max(len(a), len(b))
    a = list(a) + [mpq(0)] * (n - len(a))
    for i, y in enumerate(b):
        a[i] -= y
    return a


class CyclotomicElement:
    """Immutable element of Q(zeta_m) in canonical reduced form."""

    __slots__ = ("field", "coeffs", "_hash")

    def __init__(self, field: CyclotomicField, coeffs: tuple):
        self.field = field
        self.coeffs = coeffs
        self._hash = None

    def __reduce__(self):
        return (CyclotomicElement, (self.field, self.coeffs))

    # coercion
    def _coerce(self, other):
        if isinstance(other, CyclotomicElement):
            if other.field is not self.field:
                raise ContextMismatch(f"{self.field!r} vs {other.field!r}")
            return other
        if isinstance(other, (int, Rational)):
            return self.field.embed(other)
        try:
            return self.field.embed(to_rational(other))
        except TypeError:
            return NotImplemented

    def __add__(self, other):
        if isinstance(other, (int, Rational)):
            c = list(self.coeffs)
            c[0] += other
            return CyclotomicElement(self.field, tuple(c))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CyclotomicElement(self.field, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicElement(self.field, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CyclotomicElement(self.field, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Rational)):
            return CyclotomicElement(self.field, tuple(a * other for a in self.coeffs))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        full = [mpq(0)] * (2 * len(a) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        full[i + j] += x * y
        return CyclotomicElement(self.field, self.field._reduce(full))

    __rmul__ = __mul__

    def inverse(self) -> "CyclotomicElement":
        if not self:
            raise ZeroDivisionError("division by zero in cyclotomic field")
        r = self.as_rational()
        if r is not None:
            return self.field.embed(1 / r)
        return CyclotomicElement(self.field, self.field._inverse(self.coeffs))

    def __truediv__(self, other):
        if isinstance(other, (int, Rational)):
            if not other:
                raise ZeroDivisionError("division by zero in cyclotomic field")
            inv = 1 / mpq(other)
            return CyclotomicElement(self.field, tuple(a * inv for a in self.coeffs))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.field.one
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __bool__(self):
        return any(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, CyclotomicElement):
            return other.field is self.field and other.coeffs == self.coeffs
        if isinstance(other, (int, Rational)):
            return self.coeffs[0] == other and not any(self.coeffs[1:])
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            r = self.as_rational()
            self._hash = hash(r) if r is not None else hash((self.field.m, self.coeffs))
        return self._hash

    def __repr__(self):
        return f"{self.field.tag}{self.to_text()}"

    # inspection ----------------------------------------------------------
    def as_rational(self):
        """The rational value, or None when the element is irrational."""
        if any(self.coeffs[1:]):
            return None
        return self.coeffs[0]

    def to_complex(self) -> complex:
        w = cmath.exp(2j * cmath.pi / self.field.m)
        return sum((float(c) * w ** k for k, c in enumerate(self.coeffs) if c), 0j)

    def galois(self, a: int) -> "CyclotomicElement":
        """Apply w -> w^a."""
        return self.field.from_coeffs(self._spread(a))

    def conjugate(self) -> "CyclotomicElement":
        return self.galois(-1)

    def _spread(self, a: int) -> list:
        m = self.field.m
        out = [mpq(0)] * m
        for k, c in enumerate(self.coeffs):
            if c:
                out[(a * k) % m] += c
        return out

    # serialization -------------------------------------------------------
    def to_json(self) -> dict:
        return {"m": self.field.m, "coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, obj: dict) -> "CyclotomicElement":
        field = CyclotomicField(int(obj["m"]))
        coeffs = [mpq(c) for c in obj["coeffs"]]
        if len(coeffs) != field.degree:
            return field.from_coeffs(coeffs)
        return CyclotomicElement(field, tuple(coeffs))

    def to_text(self) -> str:
        parts = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            mag = str(abs(c))
            body = mag if k == 0 else f"{mag}*w^{k}"
            if not parts:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append(("- " if c < 0 else "+ ") + body)
        return "(" + (" ".join(parts) if parts else "0") + ")"

    @classmethod
    def from_text(cls, field: CyclotomicField, text: str) -> "CyclotomicElement":
        s = text.strip()
        if s.startswith("(") and s.endswith(")"):
            s = s[1:-1]
        s = s.replace(" ", "")
        coeffs = [mpq(0)] * field.m
        i = 0
        sign = 1
        if not s:
            raise ValueError("empty cyclotomic literal")
        while i < len(s):
            if s[i] in "+-":
                sign = -1 if s[i] == "-" else 1
                i += 1
            j = i
            while j < len(s) and s[j] not in "+-":
                j += 1
            tok = s[i:j]
            if "w" in tok:
                head, _, power = tok.partition("w")
                head = head.rstrip("*") or "1"
                k = int(power[1:]) if power.startswith("^") else 1
            else:
                head, k = tok, 0
            coeffs[k % field.m] += sign * mpq(head)
            sign = 1
            i = j
        return field.from_coeffs(coeffs)


def vertex_coordinates(j: int, n: int, field: CyclotomicField | None = None):
    """(cos(j*pi/n), sin(j*pi/n)) as exact elements of Q(zeta_{4n}).

    With w = exp(i*pi/(2n)) these are (w^a + w^-a)/2 and
    (w^a - w^-a)/(2 w^n) for a = 2j.
    """
    if field is None:
        field = CyclotomicField(4 * n)
    if field.m != 4 * n:
        raise ContextMismatch("vertex coordinates live in Q(zeta_{4n})")
    a = 2 * j
    w_a = field.zeta(a)
    w_ma = field.zeta(-a)
    cos = (w_a + w_ma) / 2
    sin = (w_a - w_ma) * field.zeta(-n) / 2
    if cos.conjugate() != cos or sin.conjugate() != sin:
        raise ArithmeticError("vertex coordinate is not real")
    return cos, sin
