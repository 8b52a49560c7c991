"""Extremal constructions showing how large A+hB can get.

Both families live in finite coordinate groups and come with predicted
statistics, so a measurement pipeline can cross-check enumeration against
the closed forms.

Family 1 (universal lower bound): in Z_b^k with b = l*a and
k = h + a^(h-1)/h, the set A is a grid A_1 of step l on the first h
coordinates plus one unit vector for each remaining coordinate, and B is the
union of the first h full axis subgroups.  A_1 absorbs B up to grid steps
while each unit vector spawns nearly disjoint translates of hB, so |A+hB|
is at least 1 + (b^h - 1) a^(h-1) / h while |A+B| stays below (h+1) l a^h.

Family 2 (alpha close to 1): in Z_a^h x Z_{b+1} with b = (alpha-1)a^(h-1)/h,
the set A is the full grid A_1 = Z_a^h x {0} plus b points in distinct
non-zero cosets, and B is the union of the h axis subgroups of the grid
part.  A_1 absorbs B entirely, so |A+B| <= alpha a^h, yet A+hB is exactly
b+1 disjoint translates of A_1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InputError
from .groups import GroupSpace, GSet

__all__ = [
    "ConstructionSpec",
    "example1",
    "example2",
    "construction_spec_to_json",
]


@dataclass(frozen=True)
class ConstructionSpec:
    which: str
    h: int
    a: int
    l: int | None
    alpha: Fraction | None
    b: int
    k: int
    moduli: tuple[int, ...]
    predicted: dict


def construction_spec_to_json(spec: ConstructionSpec) -> dict:
    predicted = {}
    for key, val in spec.predicted.items():
        if isinstance(val, Fraction):
            predicted[key] = [val.numerator, val.denominator]
        else:
            predicted[key] = val
    return {
        "which": spec.which,
        "h": spec.h,
        "a": spec.a,
        "l": spec.l,
        "alpha": None
        if spec.alpha is None
        else [spec.alpha.numerator, spec.alpha.denominator],
        "b": spec.b,
        "k": spec.k,
        "moduli": list(spec.moduli),
        "predicted": predicted,
    }


def _check_positive_int(name: str, value) -> int:
    if not isinstance(value, int) or isinstance(value, bool) or value < 1:
        raise InputError(f"{name} must be a positive integer, got {value!r}")
    return value


def example1(h: int, a: int, l: int) -> tuple[GSet, GSet, ConstructionSpec]:
    """Grid-plus-unit-vectors construction in Z_b^k, b = l*a.

    Requires h | a^(h-1) so that the number of extra coordinates
    a^(h-1)/h is an integer, and b >= 2 so the unit vectors are distinct
    from the origin.
    """
    _check_positive_int("h", h)
    _check_positive_int("a", a)
    _check_positive_int("l", l)
    if a ** (h - 1) % h != 0:
        raise InputError(
            f"divisibility h | a^(h-1) required: {h} does not divide {a ** (h - 1)}"
        )
    b = l * a
    if b < 2:
        raise InputError(f"need b = l*a >= 2 for distinct unit vectors, got {b}")
    extra = a ** (h - 1) // h
    k = h + extra
    space = GroupSpace((b,) * k)
    grid: list[tuple[int, ...]] = [()]
    for _ in range(h):
        grid = [point + (l * step,) for point in grid for step in range(a)]
    tail = (0,) * extra
    a1 = [point + tail for point in grid]
    a2 = [
        tuple(1 if idx == h + j else 0 for idx in range(k)) for j in range(extra)
    ]
    a_set = GSet.from_coords(space, a1 + a2)
    b_elems = {(0,) * k}
    for i in range(h):
        for step in range(b):
            b_elems.add(tuple(step if idx == i else 0 for idx in range(k)))
    b_set = GSet.from_coords(space, b_elems)
    predicted = {
        "m": a**h + extra,
        "ab_cap": (h + 1) * l * a**h,
        "top_lower": 1 + (b**h - 1) * extra,
        "hb": b**h,
    }
    spec = ConstructionSpec("example1", h, a, l, None, b, k, space.moduli, predicted)
    return a_set, b_set, spec


def example2(h: int, a: int, alpha) -> tuple[GSet, GSet, ConstructionSpec]:
    """Absorbing grid with b extra coset points in Z_a^h x Z_{b+1}.

    alpha must lie in [1, 2] and make b = (alpha-1) a^(h-1) / h a
    non-negative integer.
    """
    _check_positive_int("h", h)
    _check_positive_int("a", a)
    try:
        alpha = Fraction(alpha)
    except (TypeError, ValueError) as exc:
        raise InputError(f"alpha must be a real number, got {alpha!r}") from exc
    if not 1 <= alpha <= 2:
        raise InputError(f"alpha must lie in [1, 2], got {alpha}")
    b_frac = (alpha - 1) * a ** (h - 1) / h
    if b_frac.denominator != 1:
        raise InputError(
            f"(alpha-1) a^(h-1) / h must be an integer, got {b_frac}"
        )
    b = int(b_frac)
    k = h + 1
    space = GroupSpace((a,) * h + (b + 1,))
    grid: list[tuple[int, ...]] = [()]
    for _ in range(h):
        grid = [point + (step,) for point in grid for step in range(a)]
    a1 = [point + (0,) for point in grid]
    a2 = [(0,) * h + (j,) for j in range(1, b + 1)]
    a_set = GSet.from_coords(space, a1 + a2)
    b_elems = {(0,) * k}
    for i in range(h):
        for step in range(a):
            b_elems.add(
                tuple(step if idx == i else 0 for idx in range(k))
            )
    b_set = GSet.from_coords(space, b_elems)
    predicted = {
        "m": a**h + b,
        "ab_cap": alpha * a**h,
        "ab_exact": a**h + b * (h * (a - 1) + 1),
        "top_exact": (b + 1) * a**h,
        "hb": a**h,
    }
    spec = ConstructionSpec(
        "example2", h, a, None, alpha, b, k, space.moduli, predicted
    )
    return a_set, b_set, spec
