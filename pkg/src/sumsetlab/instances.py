"""Seeded random instances for the verification suites.

Generators are parameterized by string-tagged seeds so every case is
reproducible in isolation: the same (seed, tag) pair always yields the same
instance, independent of how many other cases ran before it.  Integer
coordinates are drawn from a bounded window, which caps how large iterated
sumsets can get and keeps suite runtimes flat.
"""

from __future__ import annotations

import random

from .groups import GroupSpace, GSet

__all__ = [
    "rng_for",
    "random_space",
    "random_gset",
    "random_pair",
    "random_triple",
]


def rng_for(seed: int, tag: str) -> random.Random:
    """Deterministic per-case generator, stable across platforms and runs."""
    return random.Random(f"{seed}:{tag}")


def random_space(rng: random.Random) -> GroupSpace:
    """Either the integers or a two-dimensional cyclic grid."""
    if rng.random() < 0.5:
        return GroupSpace((0,))
    m = rng.randint(2, 12)
    return GroupSpace((m, m))


def random_gset(
    rng: random.Random,
    space: GroupSpace,
    lo: int,
    hi: int,
    spread: int = 12,
) -> GSet:
    """Random non-empty subset with between lo and hi elements when the
    space is large enough; small finite spaces may saturate earlier."""
    target = rng.randint(lo, hi)
    elems: set[tuple[int, ...]] = set()
    for _ in range(20 * target):
        coords = tuple(
            rng.randint(0, m - 1) if m else rng.randint(-spread, spread)
            for m in space.moduli
        )
        elems.add(coords)
        if len(elems) == target:
            break
    return GSet.from_coords(space, elems)


def random_pair(
    rng: random.Random, a_hi: int = 8, b_hi: int = 4
) -> tuple[GSet, GSet]:
    space = random_space(rng)
    return random_gset(rng, space, 1, a_hi), random_gset(rng, space, 1, b_hi)


def random_triple(
    rng: random.Random, a_hi: int = 8, b_hi: int = 4, c_hi: int = 6
) -> tuple[GSet, GSet, GSet]:
    space = random_space(rng)
    return (
        random_gset(rng, space, 1, a_hi),
        random_gset(rng, space, 1, b_hi),
        random_gset(rng, space, 1, c_hi),
    )
