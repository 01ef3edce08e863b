"""Weyl groups, split-part chambers, and the chamber dictionary for
q-extreme positive systems: dominance regions, the bijection between
dominating q-extreme systems and chambers, lifted coset representatives,
and conjugation of data and parabolics."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .arrangements import SignChamber, enumerate_chambers
from .datum import SymmetricRootDatum, restricted_system
from .linalg import (
    Mat,
    Vec,
    add,
    dot,
    identity,
    lp_feasible,
    mat,
    mat_inv,
    mat_mul,
    mat_vec,
    neg,
    primitive,
    ray_rep,
    scale,
    vec_mat,
    zeros,
)
from .parabolics import (
    SIGMA_THETA,
    ParabolicSet,
    enumerate_q_extreme,
    is_q_extreme,
    preceq,
    tau_set,
)

WEYL_CAP = 10**6


@dataclass(frozen=True)
class WeylElement:
    """An orthogonal matrix from the reflection group, with one word for it
    as a product of ray reflections (generator indices, applied right to
    left)."""

    matrix: Mat
    word: tuple[int, ...] = field(default=(), compare=False)


def _reflection(gram_inv: Mat, alpha: Vec) -> Mat:
    ha = mat_vec(gram_inv, alpha)
    n2 = dot(alpha, ha)
    h = scale(Fraction(2) / n2, ha)
    n = len(alpha)
    return tuple(
        tuple((Fraction(1) if i == j else Fraction(0)) - alpha[j] * h[i] for j in range(n))
        for i in range(n)
    )


def weyl_group_from(covectors, gram: Mat, cap: int = WEYL_CAP) -> tuple[WeylElement, ...]:
    """Closure of the ray reflections, by breadth-first search.

    Raises if the group size passes the cap, which signals a root list that
    is not actually a finite root system.
    """
    dim = len(gram)
    gram_inv = mat_inv(gram) if dim else ()
    rays = sorted({ray_rep(c) for c in covectors if any(x != 0 for x in c)})
    gens = [_reflection(gram_inv, r) for r in rays]
    start = identity(dim)
    elements: dict[Mat, tuple[int, ...]] = {start: ()}
    queue = [start]
    while queue:
        m = queue.pop(0)
        for i, g in enumerate(gens):
            nm = mat_mul(g, m)
            if nm not in elements:
                if len(elements) >= cap:
                    raise ValueError(f"reflection group exceeds cap {cap}")
                elements[nm] = (i,) + elements[m]
                queue.append(nm)
    return tuple(
        WeylElement(m, w) for m, w in sorted(elements.items(), key=lambda kv: (len(kv[1]), kv[0]))
    )


def weyl_group(datum: SymmetricRootDatum, cap: int = WEYL_CAP) -> tuple[WeylElement, ...]:
    return weyl_group_from(datum.roots, datum.gram, cap)


def weyl_group_restricted(datum: SymmetricRootDatum, cap: int = WEYL_CAP) -> tuple[WeylElement, ...]:
    restricted = restricted_system(datum)
    return weyl_group_from(restricted.roots_q, datum.gram_q, cap)


def matrix_group_closure(gens, cap: int = WEYL_CAP, dim: int | None = None) -> set[Mat]:
    gens = [mat(g) for g in gens]
    if dim is None:
        if not gens:
            raise ValueError("need dim when no generators are given")
        dim = len(gens[0])
    start = identity(dim)
    group = {start}
    queue = [start]
    while queue:
        m = queue.pop(0)
        for g in gens:
            nm = mat_mul(g, m)
            if nm not in group:
                if len(group) >= cap:
                    raise ValueError(f"matrix group exceeds cap {cap}")
                group.add(nm)
                queue.append(nm)
    return group


def restricted_reflection_matrices(datum: SymmetricRootDatum) -> tuple[Mat, ...]:
    """Reflections for every positive restricted ray, on split coordinates."""
    restricted = restricted_system(datum)
    rays = sorted({ray_rep(r) for r in restricted.roots_q})
    gram_q_inv = datum.gram_q_inv if datum.dim_q else ()
    return tuple(_reflection(gram_q_inv, r) for r in rays)


# -- chambers of the split part -----------------------------------------------


@dataclass(frozen=True)
class ChamberComplex:
    """All chambers of the restricted-root arrangement on split coordinates."""

    rays: tuple[Vec, ...]
    chambers: tuple[SignChamber, ...]

    def by_signs(self) -> dict[tuple[int, ...], SignChamber]:
        return {c.signs: c for c in self.chambers}


def chambers_q(datum: SymmetricRootDatum) -> ChamberComplex:
    restricted = restricted_system(datum)
    rays, chambers = enumerate_chambers(restricted.roots_q, datum.dim_q)
    return ChamberComplex(rays, chambers)


def chamber_of(
    datum: SymmetricRootDatum, p: ParabolicSet, complex: ChamberComplex | None = None
) -> SignChamber:
    """The split chamber on which a q-extreme system's twisted part is positive."""
    if not is_q_extreme(datum, p):
        raise ValueError("chamber_of requires a q-extreme positive system")
    if complex is None:
        complex = chambers_q(datum)
    signs: dict[Vec, int] = {}
    for a in tau_set(datum, p, SIGMA_THETA):
        r = datum.restrict_q(a)
        rr = ray_rep(r)
        s = 1 if primitive(r) == rr else -1
        if signs.setdefault(rr, s) != s:
            raise RuntimeError("inconsistent restricted signs for a q-extreme system")
    try:
        key = tuple(signs[r] for r in complex.rays)
    except KeyError:
        raise RuntimeError("twisted part does not cover every restricted ray") from None
    return complex.by_signs()[key]


@dataclass(frozen=True)
class DominanceRegion:
    """Open cone of split vectors positive on a twisted part, as a chamber union."""

    inequalities: tuple[Vec, ...]
    chambers: tuple[SignChamber, ...]


def faq_plus(
    datum: SymmetricRootDatum, q: ParabolicSet, complex: ChamberComplex | None = None
) -> DominanceRegion:
    if complex is None:
        complex = chambers_q(datum)
    ineqs = tuple(sorted({datum.restrict_q(a) for a in tau_set(datum, q, SIGMA_THETA)}))
    inside = tuple(
        c for c in complex.chambers if all(dot(i, c.witness) > 0 for i in ineqs)
    )
    return DominanceRegion(ineqs, inside)


def p_sigma_a_q(
    datum: SymmetricRootDatum,
    q: ParabolicSet,
    q_extreme: tuple[ParabolicSet, ...] | None = None,
) -> tuple[ParabolicSet, ...]:
    """All q-extreme systems dominating q."""
    if q_extreme is None:
        q_extreme = enumerate_q_extreme(datum)
    return tuple(p for p in q_extreme if preceq(datum, p, q))


def build_from_chamber(
    datum: SymmetricRootDatum,
    q: ParabolicSet,
    chamber: SignChamber,
    complex: ChamberComplex | None = None,
) -> ParabolicSet:
    """The unique dominating q-extreme system whose chamber is the given one.

    Constructed from an interior point X of the chamber and a fixed-part
    regular vector Y positive on the fixed-part roots of q: for a small
    exact t > 0 the vector X + tY is regular and its positive system is the
    answer.
    """
    region = faq_plus(datum, q, complex)
    if chamber not in region.chambers:
        raise ValueError("chamber does not lie in the dominance region of q")
    x = datum.aq_ambient(chamber.witness)
    fixed_part = sorted(a for a in q.positive if datum.in_ah_star(a))
    if fixed_part:
        y = lp_feasible(datum.dim, [(b, Fraction(1)) for b in fixed_part])
        if y is None:
            raise RuntimeError("fixed-part positive system is not realizable")
        y = mat_vec(datum.proj_plus, y)
    else:
        y = zeros(datum.dim)
    t = Fraction(1)
    for a in datum.roots:
        if datum.in_ah_star(a):
            continue
        va = dot(a, x)
        if va > 0:
            t = min(t, va / (abs(dot(a, y)) + 1))
    t = t / 2
    xt = add(x, scale(t, y))
    positive = frozenset(a for a in datum.roots if dot(a, xt) > 0)
    if len(positive) * 2 != len(datum.roots):
        raise RuntimeError("perturbed witness is not regular")
    p = ParabolicSet(positive, primitive(xt))
    if not is_q_extreme(datum, p) or not preceq(datum, p, q):
        raise RuntimeError("constructed system fails its postconditions")
    if chamber_of(datum, p, complex).signs != chamber.signs:
        raise RuntimeError("constructed system lies in the wrong chamber")
    return p


# -- coset representatives and conjugation ------------------------------------


def restricted_matrix(datum: SymmetricRootDatum, m: Mat) -> Mat | None:
    """Matrix of the split-part restriction, or None if the split part moves."""
    cols = []
    for b in datum.basis_q:
        v = mat_vec(m, b)
        if mat_vec(datum.sigma, v) != neg(v):
            return None
        cols.append(datum.aq_coords(v))
    k = datum.dim_q
    return tuple(tuple(cols[j][i] for j in range(k)) for i in range(k))


def _coset_key(r: Mat, subgroup: set[Mat]) -> Mat:
    return min(mat_mul(r, h) for h in subgroup)


def script_w(datum: SymmetricRootDatum, cap: int = WEYL_CAP) -> tuple[WeylElement, ...]:
    """Lifted representatives for the restricted Weyl group modulo the
    fixed-part subgroup.

    Ambient Weyl elements are scanned by word length; the first element whose
    split restriction lands in a new coset becomes that coset's
    representative, so the identity always represents the identity coset.
    Raises if some coset admits no lift.
    """
    wq = weyl_group_restricted(datum, cap)
    wq_set = {w.matrix for w in wq}
    if datum.whh_generators:
        wh = matrix_group_closure(datum.whh_generators, cap, dim=datum.dim_q)
    else:
        wh = {identity(datum.dim_q)}
    targets = {_coset_key(w.matrix, wh) for w in wq}
    lifts: dict[Mat, WeylElement] = {}
    for el in sorted(weyl_group(datum, cap), key=lambda e: (len(e.word), e.matrix)):
        r = restricted_matrix(datum, el.matrix)
        if r is None or r not in wq_set:
            continue
        key = _coset_key(r, wh)
        lifts.setdefault(key, el)
    missing = targets - set(lifts)
    if missing:
        raise RuntimeError(
            f"{len(missing)} of {len(targets)} restricted cosets admit no lift"
        )
    return tuple(sorted(lifts.values(), key=lambda e: (len(e.word), e.matrix)))


def conjugate(datum: SymmetricRootDatum, v: WeylElement | Mat) -> SymmetricRootDatum:
    """The datum with flags and fixed-part group transported by v.

    The space, involution, roots, and multiplicities are unchanged; the
    trivial-involution flags move with v and the fixed-part subgroup is
    conjugated by the split restriction of v.
    """
    m = v.matrix if isinstance(v, WeylElement) else mat(v)
    r = restricted_matrix(datum, m)
    if r is None:
        raise ValueError("element does not preserve the split part")
    m_inv = mat_inv(m)
    rootset = set(datum.roots)
    if {vec_mat(a, m_inv) for a in rootset} != rootset:
        raise ValueError("element does not permute the roots")
    new_trivial = frozenset(vec_mat(a, m_inv) for a in datum.st_trivial)
    r_inv = mat_inv(r)
    whh = tuple(mat_mul(r, mat_mul(g, r_inv)) for g in datum.whh_generators)
    return SymmetricRootDatum(
        dim=datum.dim,
        gram=datum.gram,
        sigma=datum.sigma,
        roots=datum.roots,
        mult=dict(datum.mult),
        st_trivial=new_trivial,
        whh_generators=whh,
        name=f"{datum.name}^v" if datum.name else "",
    )


def conjugate_parabolic(
    datum: SymmetricRootDatum, v: WeylElement | Mat, p: ParabolicSet
) -> ParabolicSet:
    """The positive system pulled back along v (the v-inverse conjugate)."""
    m = v.matrix if isinstance(v, WeylElement) else mat(v)
    positive = frozenset(vec_mat(a, m) for a in p.positive)
    witness = mat_vec(mat_inv(m), p.witness)
    return ParabolicSet(positive, primitive(witness))


def covector_action(datum: SymmetricRootDatum, v: WeylElement | Mat, a: Vec) -> Vec:
    """v acting on a covector: precompose with the inverse."""
    m = v.matrix if isinstance(v, WeylElement) else mat(v)
    return vec_mat(a, mat_inv(m))
