"""Elliptic-curve group law over small GF(3^k): point arithmetic,
exhaustive enumeration, and pointwise identification of a rational map as
multiplication by a scalar.

Serves as an oracle independent of the series pipeline: whatever the
construction produces can be applied to every rational point and compared
against the chord-tangent group law directly.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import FieldTooLarge, PointNotOnCurve

ENUMERATION_MAX_ORDER = 3 ** 10


class Point:
    """A point of the curve: affine (x, y) or the point at infinity."""

    __slots__ = ("x", "y")

    def __init__(self, x=None, y=None):
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)

    def __setattr__(self, name, value):
        raise AttributeError("Point is immutable")

    @classmethod
    def infinity(cls):
        return cls(None, None)

    @property
    def is_infinity(self):
        return self.x is None

    def __eq__(self, other):
        if not isinstance(other, Point):
            return NotImplemented
        return self.x == other.x and self.y == other.y

    def __hash__(self):
        return hash((self.x, self.y))

    def __repr__(self):
        if self.is_infinity:
            return "Point(infinity)"
        return f"Point({self.x}, {self.y})"


def on_curve(curve, point):
    if point.is_infinity:
        return True
    x, y = point.x, point.y
    return y * y == x * x * x + curve.A * x + curve.B


def _require_on_curve(curve, point):
    if not on_curve(curve, point):
        raise PointNotOnCurve(f"{point!r} fails the curve equation")


def p_neg(curve, point):
    _require_on_curve(curve, point)
    if point.is_infinity:
        return point
    return Point(point.x, -point.y)


def p_double(curve, point):
    """Tangent doubling; in characteristic three the slope is -A/y
    because the 3x^2 term of the derivative vanishes."""
    _require_on_curve(curve, point)
    if point.is_infinity or point.y.is_zero:
        return Point.infinity()
    lam = -curve.A / point.y
    x3 = lam * lam + point.x  # lambda^2 - 2x = lambda^2 + x mod 3
    y3 = lam * (point.x - x3) - point.y
    return Point(x3, y3)


def p_add(curve, p, q):
    """Chord-tangent addition."""
    _require_on_curve(curve, p)
    _require_on_curve(curve, q)
    if p.is_infinity:
        return q
    if q.is_infinity:
        return p
    if p.x == q.x:
        if p.y == -q.y:
            return Point.infinity()
        return p_double(curve, p)
    lam = (q.y - p.y) / (q.x - p.x)
    x3 = lam * lam - p.x - q.x
    y3 = lam * (p.x - x3) - p.y
    return Point(x3, y3)


def scalar_mul(curve, m, point):
    """m * P by double-and-add; negative m through the inverse point."""
    _require_on_curve(curve, point)
    if m < 0:
        return scalar_mul(curve, -m, p_neg(curve, point))
    acc = Point.infinity()
    base = point
    while m:
        if m & 1:
            acc = p_add(curve, acc, base)
        base = p_double(curve, base)
        m >>= 1
    return acc


def enumerate_points(curve):
    """Every rational point: infinity first, then affine points in
    ascending (x, y) coefficient order."""
    from .gf3field import sqrt

    if curve.field.order > ENUMERATION_MAX_ORDER:
        raise FieldTooLarge(
            f"field order {curve.field.order} exceeds {ENUMERATION_MAX_ORDER}"
        )
    points = [Point.infinity()]
    for x in curve.field.elements():
        rhs = x * x * x + curve.A * x + curve.B
        root = sqrt(rhs)
        if root is None:
            continue
        if root.is_zero:
            points.append(Point(x, root))
        else:
            ys = sorted((root, -root), key=lambda e: e.coeffs)
            points.extend(Point(x, y) for y in ys)
    return points


def apply_map(curve, fx, fy_factor, point):
    """Apply (x, y) -> (fx(x), y * fy_factor(x)) to a point.

    A pole of either coordinate function marks a kernel point and maps to
    infinity; infinity maps to infinity. The caller decides whether the
    image has to lie on the curve.
    """
    if point.is_infinity:
        return point
    image_x = fx.eval(point.x)
    if image_x is None:
        return Point.infinity()
    factor = fy_factor.eval(point.x)
    if factor is None:
        return Point.infinity()
    return Point(image_x, point.y * factor)


@dataclass(frozen=True)
class MapCheckReport:
    """Pointwise diagnostics of a coordinate map over the rational points."""

    all_on_curve: bool
    off_curve_points: tuple
    homomorphism_ok: bool
    pairs_checked: int


def check_map(curve, fx, fy_factor, rng_seed=0):
    """Verify a coordinate map pointwise over every rational point.

    Checks that each image lies on the curve and that the map commutes
    with addition; pairs are exhaustive for fields of at most 81 elements
    and 1000 seeded-random pairs above that.
    """
    points = enumerate_points(curve)
    images = {p: apply_map(curve, fx, fy_factor, p) for p in points}
    off = tuple(p for p in points if not on_curve(curve, images[p]))
    if off:
        return MapCheckReport(False, off, False, 0)
    if curve.field.order <= 81:
        pairs = [(p, q) for p in points for q in points]
    else:
        rng = random.Random(rng_seed)
        pairs = [(rng.choice(points), rng.choice(points)) for _ in range(1000)]
    hom_ok = True
    for p, q in pairs:
        s = p_add(curve, p, q)
        lhs = apply_map(curve, fx, fy_factor, s)
        rhs = p_add(curve, images[p], images[q])
        if lhs != rhs:
            hom_ok = False
            break
    return MapCheckReport(True, (), hom_ok, len(pairs))


def identify_scalar(curve, fx, fy_factor, max_m):
    """Smallest m in [1, max_m] acting like the map on every rational
    point, or None. Meaningful once check_map has passed."""
    points = enumerate_points(curve)
    images = [apply_map(curve, fx, fy_factor, p) for p in points]
    multiples = list(points)  # m = 1
    for m in range(1, max_m + 1):
        if m > 1:
            multiples = [p_add(curve, acc, p) for acc, p in zip(multiples, points)]
        if all(img == acc for img, acc in zip(images, multiples)):
            return m
    return None
