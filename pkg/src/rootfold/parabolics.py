"""Positive systems (minimal parabolic sets) and the involution ordering.

A parabolic set is a positive system of the ambient root system together
with an exact rational interior witness.  The ordering compares the
involution-stable and twisted parts of two positive systems; three
equivalent formulations are implemented independently so they can be
cross-checked.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .arrangements import enumerate_chambers
from .datum import SymmetricRootDatum
from .linalg import (
    Vec,
    add,
    dot,
    mat,
    neg,
    primitive,
    rank,
    ray_rep,
    scale,
    strictly_feasible,
    vec,
)

SIGMA = "sigma"
SIGMA_THETA = "sigmatheta"


@dataclass(frozen=True)
class ParabolicSet:
    """A positive system with an interior witness certificate.

    Identity (equality, hashing) is the positive set alone; the witness is
    carried evidence that the set is realized by a regular vector.
    """

    positive: frozenset[Vec]
    witness: Vec = field(compare=False)

    def sort_key(self) -> tuple:
        return tuple(sorted(self.positive))

    def __repr__(self) -> str:  # keep diagnostics readable
        rows = ", ".join("(" + " ".join(str(x) for x in r) + ")" for r in sorted(self.positive))
        return f"ParabolicSet{{{rows}}}"


def opposite(p: ParabolicSet) -> ParabolicSet:
    return ParabolicSet(frozenset(neg(a) for a in p.positive), neg(p.witness))


def enumerate_parabolics(datum: SymmetricRootDatum) -> tuple[ParabolicSet, ...]:
    """All positive systems, in canonical order, each with an exact witness."""
    _, chambers = enumerate_chambers(datum.roots, datum.dim)
    out = []
    for ch in chambers:
        pos = frozenset(a for a in datum.roots if dot(a, ch.witness) > 0)
        out.append(ParabolicSet(pos, ch.witness))
    return tuple(sorted(out, key=ParabolicSet.sort_key))


def check_parabolic(datum: SymmetricRootDatum, p: ParabolicSet) -> None:
    """Raise unless the witness realizes the positive set exactly."""
    realized = {a for a in datum.roots if dot(a, p.witness) > 0}
    if realized != set(p.positive):
        raise ValueError("witness does not realize the positive system")
    if len(p.positive) * 2 != len(datum.roots):
        raise ValueError("positive set does not contain one root per opposite pair")


def tau_set(datum: SymmetricRootDatum, p: ParabolicSet, kind: str) -> frozenset[Vec]:
    """The part of the positive system preserved by the chosen twist."""
    if kind == SIGMA:
        act = datum.sigma_star
    elif kind == SIGMA_THETA:
        act = datum.sigma_theta_star
    else:
        raise ValueError(f"unknown twist kind {kind!r}")
    return frozenset(a for a in p.positive if act(a) in p.positive)


def minus_set(datum: SymmetricRootDatum, q: ParabolicSet) -> frozenset[Vec]:
    """Twisted-part roots that survive the trivial-involution filter."""
    return frozenset(
        a
        for a in tau_set(datum, q, SIGMA_THETA)
        if not datum.in_aq_star(a) or a in datum.s_e
    )


def preceq(datum: SymmetricRootDatum, p: ParabolicSet, q: ParabolicSet) -> bool:
    """Whether p dominates q: q's twisted part is contained in p's, and p's
    stable part in q's."""
    return tau_set(datum, q, SIGMA_THETA) <= tau_set(datum, p, SIGMA_THETA) and tau_set(
        datum, p, SIGMA
    ) <= tau_set(datum, q, SIGMA)


def preceq_via_b(datum: SymmetricRootDatum, p: ParabolicSet, q: ParabolicSet) -> bool:
    """Same order through the separation sets of the two chambers."""
    qbar = opposite(q)
    pbar = opposite(p)
    return (p.positive & qbar.positive) <= tau_set(datum, p, SIGMA_THETA) and (
        pbar.positive & q.positive
    ) <= tau_set(datum, q, SIGMA)


def preceq_via_c(datum: SymmetricRootDatum, p: ParabolicSet, q: ParabolicSet) -> bool:
    """Same order through a single separation-set identity."""
    qbar = opposite(q)
    return (p.positive & qbar.positive) == tau_set(datum, p, SIGMA_THETA) & tau_set(
        datum, qbar, SIGMA
    )


def is_q_extreme(datum: SymmetricRootDatum, p: ParabolicSet) -> bool:
    """Whether the twisted part is everything off the fixed-part subspace."""
    off_fixed = frozenset(a for a in p.positive if not datum.in_ah_star(a))
    return tau_set(datum, p, SIGMA_THETA) == off_fixed


def enumerate_q_extreme(
    datum: SymmetricRootDatum, parabolics: tuple[ParabolicSet, ...] | None = None
) -> tuple[ParabolicSet, ...]:
    if parabolics is None:
        parabolics = enumerate_parabolics(datum)
    return tuple(p for p in parabolics if is_q_extreme(datum, p))


def envelope_p0(datum: SymmetricRootDatum, p: ParabolicSet) -> tuple[Vec, ...]:
    """The restricted positive system carved out by a q-extreme system."""
    if not is_q_extreme(datum, p):
        raise ValueError("envelope is only defined for q-extreme systems")
    return tuple(sorted({datum.restrict_q(a) for a in p.positive if not datum.in_ah_star(a)}))


def strictly_dominates(datum, p, q) -> bool:
    return p.positive != q.positive and preceq(datum, p, q)


def hasse(
    datum: SymmetricRootDatum, parabolics: tuple[ParabolicSet, ...] | None = None
) -> tuple[tuple[int, int], ...]:
    """Covering relations as index pairs (i, j): element i covers element j."""
    if parabolics is None:
        parabolics = enumerate_parabolics(datum)
    n = len(parabolics)
    ge = [[preceq(datum, parabolics[i], parabolics[j]) for j in range(n)] for i in range(n)]
    edges = []
    for i in range(n):
        for j in range(n):
            if i == j or not ge[i][j] or ge[j][i]:
                continue
            if any(
                k != i and k != j and ge[i][k] and ge[k][j] and not ge[k][i] and not ge[j][k]
                for k in range(n)
            ):
                continue
            edges.append((i, j))
    return tuple(edges)


def maximal_elements(
    datum: SymmetricRootDatum, parabolics: tuple[ParabolicSet, ...] | None = None
) -> tuple[ParabolicSet, ...]:
    if parabolics is None:
        parabolics = enumerate_parabolics(datum)
    return tuple(
        p
        for p in parabolics
        if not any(strictly_dominates(datum, other, p) for other in parabolics)
    )


def minimal_elements(
    datum: SymmetricRootDatum, parabolics: tuple[ParabolicSet, ...] | None = None
) -> tuple[ParabolicSet, ...]:
    if parabolics is None:
        parabolics = enumerate_parabolics(datum)
    return tuple(
        p
        for p in parabolics
        if not any(strictly_dominates(datum, p, other) for other in parabolics)
    )


def adjacent(datum: SymmetricRootDatum, p: ParabolicSet, q: ParabolicSet) -> bool:
    """Whether the separation set spans exactly one line."""
    sep = p.positive & opposite(q).positive
    return bool(sep) and rank(mat(sep)) == 1


def chain(datum: SymmetricRootDatum, p: ParabolicSet, q: ParabolicSet) -> list[ParabolicSet]:
    """A gallery from p to q crossing one wall at a time.

    Walks the straight segment between the two witnesses; every separating
    wall is crossed exactly once, so the separation sets from p grow by one
    wall per step.  If the segment hits a corner (two independent walls with
    the same crossing parameter), the far endpoint is nudged inside its
    chamber by an exact rational amount and the walk is retried; as a last
    resort tied walls are crossed in canonical order with LP certificates.
    """
    if p.positive == q.positive:
        return [p]
    x = p.witness
    for y in _chain_targets(datum, q):
        groups = _crossings(datum, p, x, y)
        if groups is None:
            continue
        if all(len(rays) == 1 for _, rays in groups):
            out = [p]
            params = [s for s, _ in groups]
            for k in range(len(params) - 1):
                t = (params[k] + params[k + 1]) / 2
                point = add(scale(1 - t, x), scale(t, y))
                positive = frozenset(a for a in datum.roots if dot(a, point) > 0)
                out.append(ParabolicSet(positive, primitive(point)))
            out.append(q)
            _check_chain(datum, p, q, out)
            return out
    out = _chain_tiebreak(datum, p, q)
    _check_chain(datum, p, q, out)
    return out


def _crossings(datum, p, x, y):
    """Sorted crossing parameters with the set of wall rays at each; None if
    some root vanishes at an endpoint."""
    groups: dict[Fraction, set[Vec]] = {}
    for a in p.positive:
        va = dot(a, x)
        vb = dot(a, y)
        if vb == 0:
            return None
        if vb < 0:
            s = va / (va - vb)
            groups.setdefault(s, set()).add(ray_rep(a))
    return sorted(groups.items())


def _chain_targets(datum, q):
    yield q.witness
    w = q.witness
    n = datum.dim
    directions = [vec(1 if j == i else 0 for j in range(n)) for i in range(n)]
    directions += [vec(Fraction(b) ** i for i in range(n)) for b in (2, 3, 5)]
    for u in directions:
        clear = min(
            (dot(b, w) / (abs(dot(b, u)) + 1) for b in q.positive),
            default=Fraction(1),
        )
        eps = clear / 2
        if eps > 0:
            yield add(w, scale(eps, u))


def _chain_tiebreak(datum, p, q):
    """Cross tied walls one ray at a time in canonical order, certifying each
    intermediate sign pattern by LP."""
    groups = _crossings(datum, p, p.witness, q.witness)
    if groups is None:
        raise RuntimeError("chain endpoints are not regular witnesses")
    out = [p]
    positive = set(p.positive)
    for _, rays in groups:
        for ray in sorted(rays):
            flipped = {a for a in positive if ray_rep(a) == ray}
            positive -= flipped
            positive |= {neg(a) for a in flipped}
            witness = strictly_feasible(datum.dim, sorted(positive))
            if witness is None:
                raise RuntimeError(
                    "tie-break produced an unrealizable sign pattern; "
                    f"rays={sorted(rays)}"
                )
            out.append(ParabolicSet(frozenset(positive), primitive(witness)))
    if out[-1].positive != q.positive:
        raise RuntimeError("chain walk did not terminate at the target system")
    out[-1] = q
    return out


def _check_chain(datum, p, q, out):
    sep_prev: frozenset[Vec] = frozenset()
    monotone = preceq(datum, p, q)
    for i in range(len(out) - 1):
        if not adjacent(datum, out[i], out[i + 1]):
            raise RuntimeError(f"chain step {i} is not wall-adjacent")
        sep = frozenset(p.positive & opposite(out[i + 1]).positive)
        if not sep_prev < sep:
            raise RuntimeError(f"chain separation sets do not grow at step {i}")
        sep_prev = sep
        if monotone and not preceq(datum, out[i], out[i + 1]):
            raise RuntimeError(f"chain is not order-monotone at step {i}")
