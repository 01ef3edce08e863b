"""Chamber enumeration for central hyperplane arrangements.

A chamber is a maximal connected set on which every covector of the
arrangement keeps a strict sign.  Chambers are found by wall-crossing
breadth-first search from a deterministic regular seed, with exact rational
feasibility certificates from the simplex in `linalg`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .linalg import (
    Vec,
    dot,
    primitive,
    ray_rep,
    strictly_feasible,
    vec,
    zeros,
)


@dataclass(frozen=True)
class SignChamber:
    """Sign vector over the arrangement rays, plus an interior witness."""

    signs: tuple[int, ...]
    witness: Vec


def arrangement_rays(covectors) -> tuple[Vec, ...]:
    """Canonical ray representatives, one per hyperplane, in sorted order."""
    return tuple(sorted({ray_rep(c) for c in covectors if any(x != 0 for x in c)}))


def regular_seed(rays: tuple[Vec, ...], dim: int) -> Vec:
    """A rational point off every hyperplane: (1, N, N^2, ...) for small N."""
    if not rays:
        return zeros(dim)
    n = 1
    while True:
        x = vec(Fraction(n) ** i for i in range(dim))
        if all(dot(r, x) != 0 for r in rays):
            return x
        n += 1


def enumerate_chambers(covectors, dim: int) -> tuple[tuple[Vec, ...], tuple[SignChamber, ...]]:
    """All chambers of the arrangement, as (rays, chambers).

    Deterministic: BFS from the seed chamber crossing walls in ray order,
    then the result is frozen in lexicographic sign-vector order.
    """
    rays = arrangement_rays(covectors)
    if not rays:
        return rays, (SignChamber((), zeros(dim)),)
    seed = regular_seed(rays, dim)
    seed_signs = tuple(1 if dot(r, seed) > 0 else -1 for r in rays)
    found: dict[tuple[int, ...], Vec] = {seed_signs: primitive(seed)}
    queue = [seed_signs]
    while queue:
        signs = queue.pop(0)
        for i in range(len(rays)):
            flipped = signs[:i] + (-signs[i],) + signs[i + 1 :]
            if flipped in found:
                continue
            witness = strictly_feasible(
                dim, [r if s > 0 else tuple(-a for a in r) for r, s in zip(rays, flipped)]
            )
            if witness is not None:
                found[flipped] = primitive(witness)
                queue.append(flipped)
    chambers = tuple(SignChamber(s, w) for s, w in sorted(found.items()))
    return rays, chambers
