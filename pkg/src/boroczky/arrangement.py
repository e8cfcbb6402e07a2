"""Exact Böröczky line arrangements and their incidence structure.

Vertices of the regular 2n-gon are indexed by their angle in units of
pi/(2n), so all tangent/secant decisions are integer congruences and all
coordinates live in Q(zeta_{4n}).
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

from .exact import CyclotomicField, CyclotomicElement, QQ, vertex_coordinates
from .polyring import PolyRing, Polynomial

log = logging.getLogger(__name__)


class DegenerateConstruction(RuntimeError):
    """The construction produced fewer distinct lines than requested."""


class PropertyViolation(AssertionError):
    """A combinatorial property of B_n failed (points to a construction bug)."""


def _cross(u, v):
    return (u[1] * v[2] - u[2] * v[1],
            u[2] * v[0] - u[0] * v[2],
            u[0] * v[1] - u[1] * v[0])


def _scaled(coords, pivot_index):
    inv = 1 / coords[pivot_index]
    return tuple(c * inv for c in coords)


def _sort_key(coords) -> tuple:
    out = []
    for c in coords:
        out.extend(c.coeffs if isinstance(c, CyclotomicElement) else (c,))
    return tuple(out)


class ProjPoint:
    """Point of P^2 normalized so its last nonzero coordinate is 1."""

    __slots__ = ("coords",)

    def __init__(self, coords: Sequence):
        nz = [i for i, c in enumerate(coords) if c]
        if not nz:
            raise ValueError("(0:0:0) is not a projective point")
        self.coords = _scaled(tuple(coords), nz[-1])

    def __eq__(self, other):
        return isinstance(other, ProjPoint) and self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __reduce__(self):
        return (ProjPoint, (self.coords,))

    def sort_key(self) -> tuple:
        return _sort_key(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def __iter__(self):
        return iter(self.coords)

    def galois(self, a: int) -> "ProjPoint":
        return ProjPoint([c.galois(a) if isinstance(c, CyclotomicElement) else c for c in self.coords])

    def is_finite(self) -> bool:
        return bool(self.coords[2])

    def to_float(self) -> tuple[float, ...]:
        return tuple(_real(c) for c in self.coords)

    def to_json(self) -> list:
        return [_elem_json(c) for c in self.coords]

    def __repr__(self):
        return "ProjPoint(" + ", ".join(_elem_text(c) for c in self.coords) + ")"


class ProjLine:
    """Line a*x + b*y + c*z = 0 normalized so its first nonzero coefficient is 1."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence):
        nz = [i for i, c in enumerate(coeffs) if c]
        if not nz:
            raise ValueError("(0, 0, 0) does not define a line")
        self.coeffs = _scaled(tuple(coeffs), nz[0])

    def __eq__(self, other):
        return isinstance(other, ProjLine) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __reduce__(self):
        return (ProjLine, (self.coeffs,))

    def __call__(self, point) -> object:
        p = point.coords if isinstance(point, ProjPoint) else point
        return self.coeffs[0] * p[0] + self.coeffs[1] * p[1] + self.coeffs[2] * p[2]

    def contains(self, point) -> bool:
        return not self(point)

    def meet(self, other: "ProjLine") -> ProjPoint:
        return ProjPoint(_cross(self.coeffs, other.coeffs))

    def galois(self, a: int) -> "ProjLine":
        return ProjLine([c.galois(a) if isinstance(c, CyclotomicElement) else c for c in self.coeffs])

    def form(self, ring: PolyRing) -> Polynomial:
        x, y, z = ring.gens()
        return x * self.coeffs[0] + y * self.coeffs[1] + z * self.coeffs[2]

    def to_json(self) -> list:
        return [_elem_json(c) for c in self.coeffs]

    def __repr__(self):
        return "ProjLine(" + ", ".join(_elem_text(c) for c in self.coeffs) + ")"


def _real(c) -> float:
    return c.to_complex().real if isinstance(c, CyclotomicElement) else float(c)


def _elem_json(c):
    return c.to_json() if isinstance(c, CyclotomicElement) else str(c)


def _elem_text(c):
    return c.to_text() if isinstance(c, CyclotomicElement) else str(c)


@dataclass
class LineArrangement:
    n: int
    field: object
    lines: list[ProjLine]
    labels: list[dict] = field(default_factory=list)
    name: str = "boroczky"

    def __len__(self):
        return len(self.lines)

    def ring(self) -> PolyRing:
        return PolyRing(("x", "y", "z"), self.field)

    def forms(self) -> list[Polynomial]:
        R = self.ring()
        return [l.form(R) for l in self.lines]

    def to_json(self) -> dict:
        out = []
        for i, l in enumerate(self.lines):
            lab = self.labels[i] if i < len(self.labels) else {}
            out.append({"k": lab.get("k", i), "kind": lab.get("kind", "line"), "coeffs": l.to_json()})
        return {"n": self.n, "name": self.name, "field": getattr(self.field, "m", 1), "lines": out}

    @classmethod
    def from_json(cls, obj: dict) -> "LineArrangement":
        m = int(obj.get("field", 1))
        fld = CyclotomicField(m) if m > 1 else QQ
        lines, labels = [], []
        for entry in obj["lines"]:
            coeffs = [CyclotomicElement.from_json(c) if isinstance(c, dict) else QQ(c) for c in entry["coeffs"]]
            lines.append(ProjLine(coeffs))
            labels.append({"k": entry.get("k"), "kind": entry.get("kind")})
        return cls(int(obj["n"]), fld, lines, labels, obj.get("name", "boroczky"))


@dataclass
class IncidenceReport:
    """Intersection points with multiplicities and per-line triple-point counts."""

    points: dict[ProjPoint, int]
    lines_through: dict[ProjPoint, tuple[int, ...]]
    triple_counts: list[int]

    def with_multiplicity(self, r: int) -> list[ProjPoint]:
        return sorted(p for p, m in self.points.items() if m == r)

    def census(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for m in self.points.values():
            out[m] = out.get(m, 0) + 1
        return dict(sorted(out.items()))

    def to_json(self) -> dict:
        return {"points": [{"coords": p.to_json(), "mult": self.points[p]} for p in sorted(self.points)]}


# ---------------------------------------------------------------------------


def expected_triple_points(n: int) -> int:
    return n * (n - 3) // 6 + 1


def vertex(a: int, n: int, fld: CyclotomicField):
    """Projective coordinates (cos, sin, 1) of the 2n-gon vertex at angle a*pi/(2n), a even."""
    if a % 2:
        raise ValueError("vertex index must be even in pi/(2n) units")
    c, s = vertex_coordinates((a // 2) % (2 * n), n, fld)
    return (c, s, fld.one)


def boroczky_lines(n: int) -> LineArrangement:
    """The arrangement B_n of lines Q_alpha Q_{pi - 2 alpha}, alpha = 2 k pi / n.

    In units of pi/(2n) the endpoints have indices 4k and 2n - 8k (mod 4n);
    when they coincide the tangent at Q_alpha is used.
    """
    if n < 4:
        raise ValueError("Böröczky arrangements need n >= 4")
    fld = CyclotomicField(4 * n)
    lines, labels = [], []
    for k in range(n):
        a = (4 * k) % (4 * n)
        b = (2 * n - 8 * k) % (4 * n)
        p = vertex(a, n, fld)
        if a == b:
            line = ProjLine((p[0], p[1], -fld.one))
            kind = "tangent"
        else:
            line = ProjLine(_cross(p, vertex(b, n, fld)))
            kind = "secant"
        lines.append(line)
        labels.append({"k": k, "kind": kind, "vertices": sorted({a, b})})
    if len(set(lines)) != n:
        raise DegenerateConstruction(f"B_{n} produced only {len(set(lines))} distinct lines")
    return LineArrangement(n, fld, lines, labels)


def dual_hesse() -> LineArrangement:
    """The 9 lines of (x^3 - y^3)(y^3 - z^3)(z^3 - x^3) over Q(zeta_3)."""
    fld = CyclotomicField(3)
    one, zero = fld.one, fld.zero
    lines, labels = [], []
    for fam, (i, j) in enumerate(((0, 1), (1, 2), (2, 0))):
        for k in range(3):
            c = [zero, zero, zero]
            c[i] = one
            c[j] = -fld.zeta(k)
            lines.append(ProjLine(c))
            labels.append({"k": 3 * fam + k, "kind": "hesse"})
    return LineArrangement(9, fld, lines, labels, name="dual-hesse")


def incidence(arr: LineArrangement) -> IncidenceReport:
    """All pairwise intersections grouped by exact equality, re-verified by evaluation."""
    through: dict[ProjPoint, set] = {}
    for (i, li), (j, lj) in combinations(enumerate(arr.lines), 2):
        p = li.meet(lj)
        through.setdefault(p, set()).update((i, j))
    points, lines_through = {}, {}
    for p, idx in through.items():
        on = tuple(i for i, l in enumerate(arr.lines) if l.contains(p))
        if set(on) != idx:
            raise PropertyViolation(f"incidence mismatch at {p!r}")
        points[p] = len(on)
        lines_through[p] = on
    pairs = sum(math.comb(m, 2) for m in points.values())
    if pairs != math.comb(len(arr.lines), 2):
        raise PropertyViolation("pair count does not saturate C(n, 2)")
    counts = [0] * len(arr.lines)
    for p, on in lines_through.items():
        if points[p] == 3:
            for i in on:
                counts[i] += 1
    return IncidenceReport(points, lines_through, counts)


def triple_points(arr: LineArrangement, report: IncidenceReport | None = None) -> list[ProjPoint]:
    """The points on exactly three lines, in canonical order."""
    report = report or incidence(arr)
    heavy = [p for p, m in report.points.items() if m >= 4]
    if heavy:
        log.warning("arrangement %s has %d point(s) of multiplicity >= 4; excluded from T_n",
                    arr.name, len(heavy))
    return report.with_multiplicity(3)


def verify_line_distribution(arr: LineArrangement, report: IncidenceReport | None = None) -> dict:
    """Check every line carries >= floor((n-3)/2) triple points and some line one more."""
    report = report or incidence(arr)
    counts = report.triple_counts
    n = len(arr.lines)
    bound = (n - 3) // 2
    for i, c in enumerate(counts):
        if c < bound:
            raise PropertyViolation(f"line {i} carries {c} < {bound} triple points")
    if max(counts) < bound + 1:
        raise PropertyViolation(f"no line carries {bound + 1} triple points")
    triples = len(report.with_multiplicity(3))
    if sum(counts) != 3 * triples:
        raise PropertyViolation("triple-point double count is inconsistent")
    return {"n": n, "bound": bound, "counts": counts, "min": min(counts), "max": max(counts)}


def galois_exponents(arr: LineArrangement) -> list[int]:
    fld = arr.field
    return fld.galois_exponents() if hasattr(fld, "galois_exponents") else [1]


def is_galois_stable(points_or_lines: Sequence, exponents: Sequence[int]) -> bool:
    s = set(points_or_lines)
    return all({p.galois(a) for p in s} == s for a in exponents)


def galois_orbits(points: Sequence[ProjPoint], exponents: Sequence[int]) -> list[list[ProjPoint]]:
    """Partition a Galois-stable point set into orbits (each sorted, orbits sorted)."""
    remaining = set(points)
    orbits = []
    for p in sorted(points):
        if p not in remaining:
            continue
        orb = {p.galois(a) for a in exponents} | {p}
        if not orb <= remaining:
            raise ValueError("point set is not Galois-stable")
        remaining -= orb
        orbits.append(sorted(orb))
    return orbits


# ---------------------------------------------------------------------------
# SVG rendering (display only)


def plot_svg(arr: LineArrangement, report: IncidenceReport | None = None, size: int = 600) -> str:
    """Render lines, the unit circle and all intersection points.

    Points at infinity are drawn on the frame in their direction, with
    class ``point-at-infinity``.
    """
    report = report or incidence(arr)
    finite = [p.to_float() for p in sorted(report.points) if p.is_finite()]
    xs = [x / z for x, _, z in finite] + [-1.0, 1.0]
    ys = [y / z for _, y, z in finite] + [-1.0, 1.0]
    span = max(max(xs) - min(xs), max(ys) - min(ys)) * 1.1 or 2.0
    cx0, cy0 = (max(xs) + min(xs)) / 2, (max(ys) + min(ys)) / 2
    half = span / 2
    lo_x, hi_x, lo_y, hi_y = cx0 - half, cx0 + half, cy0 - half, cy0 + half
    scale = size / span

    def sx(x):
        return (x - lo_x) * scale

    def sy(y):
        return (hi_y - y) * scale

    def fmt(v):
        return f"{v:.12f}"

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
           f'viewBox="0 0 {size} {size}">',
           f'<circle class="circle" cx="{fmt(sx(0.0))}" cy="{fmt(sy(0.0))}" r="{fmt(scale)}" '
           'fill="none" stroke="gray"/>']
    for i, l in enumerate(arr.lines):
        a, b, c = (_real(v) for v in l.coeffs)
        seg = _clip_line(a, b, c, lo_x, hi_x, lo_y, hi_y)
        if seg is None:
            continue
        (x1, y1), (x2, y2) = seg
        out.append(f'<line class="line" data-index="{i}" x1="{fmt(sx(x1))}" y1="{fmt(sy(y1))}" '
                   f'x2="{fmt(sx(x2))}" y2="{fmt(sy(y2))}" stroke="black"/>')
    for p in sorted(report.points):
        x, y, z = p.to_float()
        mult = report.points[p]
        if p.is_finite():
            px, py = x / z, y / z
            cls = "point"
        else:
            norm = math.hypot(x, y)
            px, py = cx0 + half * 0.98 * x / norm, cy0 + half * 0.98 * y / norm
            cls = "point-at-infinity"
        out.append(f'<circle class="{cls}" data-mult="{mult}" data-x="{x!r}" data-y="{y!r}" '
                   f'data-z="{z!r}" cx="{fmt(sx(px))}" cy="{fmt(sy(py))}" r="3" '
                   f'fill="{"black" if mult >= 3 else "white"}" stroke="black"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _clip_line(a, b, c, lo_x, hi_x, lo_y, hi_y):
    pts = []
    if abs(b) > 1e-15:
        for x in (lo_x, hi_x):
            y = -(a * x + c) / b
            if lo_y - 1e-12 <= y <= hi_y + 1e-12:
                pts.append((x, y))
    if abs(a) > 1e-15:
        for y in (lo_y, hi_y):
            x = -(b * y + c) / a
            if lo_x - 1e-12 <= x <= hi_x + 1e-12:
                pts.append((x, y))
    if len(pts) < 2:
        return None
    pts.sort()
    return pts[0], pts[-1]
