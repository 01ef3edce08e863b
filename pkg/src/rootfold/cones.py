"""Exact polyhedral layer: half-sum covectors, the character exponent on the
fixed part, the wall cones attached to a positive system, and the rational
holomorphy-style domains built from them (per-pair pieces, their unions,
half-space hulls, and group-translated intersections).

Coordinates: split covectors are value rows against the canonical split
basis; split vectors are coefficient rows against the same basis.  The
evaluation pairing is the plain dot product, and the inner product on split
covectors is l1 · Gq^-1 · l2^T.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .chambers import WeylElement, conjugate, conjugate_parabolic, restricted_matrix, script_w
from .datum import SymmetricRootDatum, restricted_system
from .linalg import (
    Mat,
    Vec,
    add,
    dot,
    dual_cone_generators,
    in_cone,
    irredundant_rays,
    is_zero,
    lp_feasible,
    mat_inv,
    mat_vec,
    neg,
    primitive,
    scale,
    solve,
    sub,
    unit,
    vec,
    vec_mat,
    zeros,
)
from .parabolics import (
    SIGMA,
    SIGMA_THETA,
    ParabolicSet,
    enumerate_q_extreme,
    is_q_extreme,
    minus_set,
    preceq,
    tau_set,
)

# -- half-sum covectors --------------------------------------------------------


def rho(datum: SymmetricRootDatum, subset) -> Vec:
    """Multiplicity-weighted half-sum of a set of roots, as an ambient covector."""
    total = zeros(datum.dim)
    for a in subset:
        if a not in datum.mult:
            raise ValueError(f"not a root: {a}")
        total = add(total, scale(Fraction(datum.mult[a], 2), a))
    return total


def rho_p(datum: SymmetricRootDatum, p: ParabolicSet) -> Vec:
    return rho(datum, p.positive)


def rho_ph(datum: SymmetricRootDatum, p: ParabolicSet) -> Vec:
    return rho(datum, [a for a in p.positive if datum.in_ah_star(a)])


def delta_exponent(datum: SymmetricRootDatum, p: ParabolicSet) -> Vec:
    """Character exponent on the fixed part: (2*rho_ph + rho of the off-fixed
    sigma-stable part) restricted to the fixed subspace.

    Verifies the exact identities (rho_p + rho_ph)|fixed = delta and
    rho(twisted part)|fixed = 0; a violation means an inconsistent datum and
    is raised, never ignored.
    """
    r_p = rho_p(datum, p)
    r_ph = rho_ph(datum, p)
    sigma_off = [a for a in tau_set(datum, p, SIGMA) if not datum.in_ah_star(a)]
    delta = datum.restrict_h(add(scale(Fraction(2), r_ph), rho(datum, sigma_off)))
    if datum.restrict_h(add(r_p, r_ph)) != delta:
        raise ValueError("exponent identity fails: (rho_p + rho_ph)|fixed != delta")
    twisted = rho(datum, tau_set(datum, p, SIGMA_THETA))
    if not is_zero(datum.restrict_h(twisted)):
        raise ValueError("exponent identity fails: rho(twisted part)|fixed != 0")
    return delta


# -- rational cones ------------------------------------------------------------


def _canon_rays(vectors) -> tuple[Vec, ...]:
    return irredundant_rays([v for v in vectors if not is_zero(v)])


@dataclass(frozen=True)
class RationalCone:
    """A closed convex rational cone with both descriptions kept consistent:
    generators (rays) and inequalities ⟨w, x⟩ ≥ 0."""

    dim: int
    generators: tuple[Vec, ...]
    inequalities: tuple[Vec, ...]

    @staticmethod
    def from_generators(dim: int, generators) -> RationalCone:
        gens = _canon_rays(generators)
        ineqs = dual_cone_generators(gens, dim)
        return RationalCone(dim, gens, ineqs)

    @staticmethod
    def from_inequalities(dim: int, inequalities) -> RationalCone:
        ineqs = _canon_rays(inequalities)
        gens = dual_cone_generators(ineqs, dim)
        return RationalCone(dim, gens, ineqs)

    def dual(self) -> RationalCone:
        return RationalCone(
            self.dim, _canon_rays(self.inequalities), _canon_rays(self.generators)
        )

    def negate(self) -> RationalCone:
        return RationalCone(
            self.dim,
            _canon_rays(neg(g) for g in self.generators),
            _canon_rays(neg(w) for w in self.inequalities),
        )

    def contains(self, x: Vec) -> bool:
        if len(x) != self.dim:
            raise ValueError("dimension mismatch")
        return all(dot(w, x) >= 0 for w in self.inequalities)


def pairing_normal(datum: SymmetricRootDatum, restricted: Vec) -> Vec:
    """The value-coordinate normal w with dot(w, λ) = ⟨λ, restricted⟩."""
    return mat_vec(datum.gram_q_inv, restricted)


def gamma_cone(datum: SymmetricRootDatum, q: ParabolicSet) -> RationalCone:
    """The wall cone in the split part: spanned by pr(coroot) sums of the
    minus-capable twisted roots of q.  Lives in split vector coordinates."""
    gens = []
    for a in minus_set(datum, q):
        h = datum.coroot(a)
        g_amb = sub(h, mat_vec(datum.sigma, h))
        gens.append(datum.aq_coords(g_amb))
    return RationalCone.from_generators(datum.dim_q, gens)


def gamma_dual(datum: SymmetricRootDatum, q: ParabolicSet) -> RationalCone:
    """The dual cone, built directly from one inequality per minus-capable
    root (pairing against the full root via the extend-by-zero convention).
    Lives in split covector (value) coordinates."""
    normals = [pairing_normal(datum, datum.restrict_q(a)) for a in minus_set(datum, q)]
    return RationalCone.from_inequalities(datum.dim_q, normals)


# -- domains -------------------------------------------------------------------


def _canon_affine(w: Vec, c: Fraction) -> Vec:
    return primitive((*w, c))


@dataclass(frozen=True)
class Piece:
    """One closed polyhedron {λ : dot(w, λ) ≥ c for all (w, c)}, with optional
    strict constraints and an optional translated-cone presentation."""

    ineqs: tuple[tuple[Vec, Fraction], ...]
    strict: tuple[tuple[Vec, Fraction], ...] = ()
    base: Vec | None = field(default=None, compare=False)
    cone: RationalCone | None = field(default=None, compare=False)

    def contains(self, lam: Vec) -> bool:
        return all(dot(w, lam) >= c for w, c in self.ineqs) and all(
            dot(w, lam) > c for w, c in self.strict
        )

    def canonical(self) -> tuple[frozenset[Vec], frozenset[Vec]]:
        return (
            frozenset(_canon_affine(w, c) for w, c in self.ineqs),
            frozenset(_canon_affine(w, c) for w, c in self.strict),
        )

    def feasible(self, dim: int) -> bool:
        """Exact when all constraints are closed, or when every constraint is
        homogeneous (then scale invariance turns strict into ≥ 1).  In the
        remaining mixed case this tests the closed relaxation, which may keep
        an empty piece around; that never affects membership answers."""
        if not self.strict:
            return lp_feasible(dim, list(self.ineqs)) is not None
        if all(c == 0 for _, c in self.ineqs) and all(c == 0 for _, c in self.strict):
            system = [(w, Fraction(0)) for w, _ in self.ineqs]
            system += [(w, Fraction(1)) for w, _ in self.strict]
            return lp_feasible(dim, system) is not None
        return lp_feasible(dim, list(self.ineqs)) is not None


def _dedupe_ineqs(ineqs) -> tuple[tuple[Vec, Fraction], ...]:
    seen: dict[Vec, tuple[Vec, Fraction]] = {}
    for w, c in ineqs:
        seen.setdefault(_canon_affine(w, c), (w, c))
    return tuple(seen[k] for k in sorted(seen))


@dataclass(frozen=True)
class Domain:
    """A finite union of pieces in split covector coordinates; the imaginary
    directions are implicitly unconstrained, so membership is tested on real
    parts only."""

    dim: int
    pieces: tuple[Piece, ...]

    def contains(self, lam: Vec) -> bool:
        lam = vec(lam)
        if len(lam) != self.dim:
            raise ValueError("dimension mismatch")
        return any(p.contains(lam) for p in self.pieces)


def _dedupe_pieces(pieces) -> tuple[Piece, ...]:
    seen: dict[tuple, Piece] = {}
    for p in pieces:
        seen.setdefault(p.canonical(), p)
    return tuple(seen[k] for k in sorted(seen, key=lambda k: (sorted(k[0]), sorted(k[1]))))


def inequality_valid_on_piece(piece: Piece, w: Vec, c: Fraction, dim: int) -> bool:
    """Exact validity of dot(w, λ) ≥ c everywhere on a closed piece.

    Affine Farkas: on a nonempty {λ : a_i·λ ≥ b_i}, the inequality is valid
    exactly when some y ≥ 0 has Σ y_i a_i = w and Σ y_i b_i ≥ c.  An empty
    piece satisfies everything.
    """
    if piece.strict:
        raise ValueError("validity testing needs a closed piece")
    if not piece.feasible(dim):
        return True
    normals = [a for a, _ in piece.ineqs]
    rhs = vec(b for _, b in piece.ineqs)
    m = len(normals)
    if m == 0:
        return is_zero(vec(w)) and c <= 0
    ineqs = [(unit(m, i), Fraction(0)) for i in range(m)]
    ineqs.append((rhs, Fraction(c)))
    eqs = [(vec(n[j] for n in normals), w[j]) for j in range(dim)]
    return lp_feasible(m, ineqs, eqs) is not None


def piece_subset(piece: Piece, other: Piece, dim: int) -> bool:
    """Whether one closed piece lies inside another, decided exactly."""
    if other.strict:
        raise ValueError("subset testing needs closed pieces")
    return all(inequality_valid_on_piece(piece, w, c, dim) for w, c in other.ineqs)


def omega_pq(datum: SymmetricRootDatum, p: ParabolicSet, q: ParabolicSet) -> Piece:
    """The translated-cone piece for a dominating q-extreme p: basepoint
    -(rho_p - rho_ph) with recession cone the negated dual wall cone."""
    if not is_q_extreme(datum, p) or not preceq(datum, p, q):
        raise ValueError("first argument must be q-extreme and dominate the second")
    nu = sub(rho_p(datum, p), rho_ph(datum, p))
    if not is_zero(datum.restrict_h(nu)):
        raise RuntimeError("rho_p - rho_ph has a fixed-part component for a q-extreme system")
    base = datum.restrict_q(neg(nu))
    ineqs = []
    for a in minus_set(datum, q):
        w = pairing_normal(datum, datum.restrict_q(a))
        ineqs.append((neg(w), -dot(w, base)))
    return Piece(
        ineqs=_dedupe_ineqs(ineqs),
        base=base,
        cone=gamma_dual(datum, q).negate(),
    )


def omega_q(
    datum: SymmetricRootDatum,
    q: ParabolicSet,
    q_extreme: tuple[ParabolicSet, ...] | None = None,
) -> Domain:
    """Union of the per-pair pieces over all dominating q-extreme systems."""
    if q_extreme is None:
        q_extreme = enumerate_q_extreme(datum)
    dominating = [p for p in q_extreme if preceq(datum, p, q)]
    if not dominating:
        raise RuntimeError("no dominating q-extreme system exists; datum is inconsistent")
    return Domain(datum.dim_q, _dedupe_pieces(omega_pq(datum, p, q) for p in dominating))


def constraining_restricted_roots(datum: SymmetricRootDatum, q: ParabolicSet) -> tuple[Vec, ...]:
    """Restricted roots lying in the cone spanned by the restrictions of the
    minus-capable twisted roots of q."""
    restricted = restricted_system(datum)
    gens = sorted({primitive(datum.restrict_q(a)) for a in minus_set(datum, q)})
    out = [b for b in restricted.roots_q if in_cone(b, gens)]
    return tuple(sorted(out))


def omega_hat(
    datum: SymmetricRootDatum,
    q: ParabolicSet,
    q_extreme: tuple[ParabolicSet, ...] | None = None,
) -> Domain:
    """Half-space hull: one inequality per constraining restricted root, with
    bound the best pairing against -rho_p over the dominating systems."""
    if q_extreme is None:
        q_extreme = enumerate_q_extreme(datum)
    dominating = [p for p in q_extreme if preceq(datum, p, q)]
    if not dominating:
        raise RuntimeError("no dominating q-extreme system exists; datum is inconsistent")
    ineqs = []
    for b in constraining_restricted_roots(datum, q):
        w = pairing_normal(datum, b)
        bound = max(
            dot(w, datum.restrict_q(neg(rho_p(datum, p)))) for p in dominating
        )
        ineqs.append((neg(w), -bound))
    return Domain(datum.dim_q, (Piece(ineqs=_dedupe_ineqs(ineqs)),))


# -- translated intersections --------------------------------------------------


def translate_piece(datum: SymmetricRootDatum, v: WeylElement | Mat, piece: Piece) -> Piece:
    """Image of a piece under the split action of v (value rows move by the
    inverse restricted matrix, inequality normals by the matrix itself)."""
    m = v.matrix if isinstance(v, WeylElement) else v
    r = restricted_matrix(datum, m)
    if r is None:
        raise ValueError("element does not preserve the split part")
    r_inv = mat_inv(r)
    ineqs = tuple((mat_vec(r, w), c) for w, c in piece.ineqs)
    strict = tuple((mat_vec(r, w), c) for w, c in piece.strict)
    base = vec_mat(piece.base, r_inv) if piece.base is not None else None
    return Piece(ineqs=_dedupe_ineqs(ineqs), strict=strict, base=base)


def translate_domain(datum: SymmetricRootDatum, v: WeylElement | Mat, domain: Domain) -> Domain:
    return Domain(
        domain.dim, _dedupe_pieces(translate_piece(datum, v, p) for p in domain.pieces)
    )


def intersect_domains(a: Domain, b: Domain) -> Domain:
    """Distributed intersection of two piece unions, dropping infeasible pieces."""
    if a.dim != b.dim:
        raise ValueError("dimension mismatch")
    pieces = []
    for pa in a.pieces:
        for pb in b.pieces:
            merged = Piece(
                ineqs=_dedupe_ineqs(pa.ineqs + pb.ineqs),
                strict=tuple(pa.strict + pb.strict),
            )
            if merged.feasible(a.dim):
                pieces.append(merged)
    return Domain(a.dim, _dedupe_pieces(pieces))


def upsilon(
    datum: SymmetricRootDatum,
    q: ParabolicSet,
    reps: tuple[WeylElement, ...] | None = None,
) -> Domain:
    """Intersection over the lifted coset representatives of the domains built
    from the conjugated data (flags transported along each representative)."""
    if reps is None:
        reps = script_w(datum)
    result: Domain | None = None
    for v in reps:
        part = omega_q(conjugate(datum, v), q)
        result = part if result is None else intersect_domains(result, part)
    assert result is not None
    return result


def upsilon_hat(
    datum: SymmetricRootDatum,
    q: ParabolicSet,
    reps: tuple[WeylElement, ...] | None = None,
) -> Domain:
    if reps is None:
        reps = script_w(datum)
    result: Domain | None = None
    for v in reps:
        part = omega_hat(conjugate(datum, v), q)
        result = part if result is None else intersect_domains(result, part)
    assert result is not None
    return result


def upsilon_translated(
    datum: SymmetricRootDatum,
    q: ParabolicSet,
    reps: tuple[WeylElement, ...] | None = None,
    hat: bool = False,
) -> Domain:
    """The same set computed the other way: conjugate the positive system,
    build its domain with the original flags, and translate back.  Used as an
    independent cross-check of the conjugated-data route."""
    if reps is None:
        reps = script_w(datum)
    build = omega_hat if hat else omega_q
    result: Domain | None = None
    for v in reps:
        q_v = conjugate_parabolic(datum, v, q)
        part = translate_domain(datum, v, build(datum, q_v))
        result = part if result is None else intersect_domains(result, part)
    assert result is not None
    return result


# -- the open positivity cone and containment certificates ----------------------


def faq_star_plus(datum: SymmetricRootDatum, q: ParabolicSet) -> Domain:
    """Open cone of split covectors strictly positive on the twisted part of q."""
    normals = sorted(
        {pairing_normal(datum, datum.restrict_q(a)) for a in tau_set(datum, q, SIGMA_THETA)}
    )
    piece = Piece(ineqs=(), strict=tuple((w, Fraction(0)) for w in normals))
    return Domain(datum.dim_q, (piece,))


@dataclass(frozen=True)
class ContainmentCertificate:
    ok: bool
    closure_generators: tuple[Vec, ...]
    violated: tuple[Vec, Vec] | None = None

    def __str__(self) -> str:
        if self.ok:
            return f"contained ({len(self.closure_generators)} closure generators checked)"
        g, w = self.violated
        return f"NOT contained: generator {g} violates normal {w}"


def check_subset_holset(
    datum: SymmetricRootDatum, p: ParabolicSet, q: ParabolicSet
) -> ContainmentCertificate:
    """Certificate that the dual wall cone contains the closed positivity cone
    of q: every generator of the closure satisfies every dual-cone inequality.
    Hence the per-pair piece of (p, q) contains the shifted open cone."""
    if not is_q_extreme(datum, p) or not preceq(datum, p, q):
        raise ValueError("first argument must be q-extreme and dominate the second")
    normals = sorted(
        {pairing_normal(datum, datum.restrict_q(a)) for a in tau_set(datum, q, SIGMA_THETA)}
    )
    closure_gens = dual_cone_generators(normals, datum.dim_q)
    dual = gamma_dual(datum, q)
    for g in closure_gens:
        for w in dual.inequalities:
            if dot(w, g) < 0:
                return ContainmentCertificate(False, closure_gens, (g, w))
    return ContainmentCertificate(True, closure_gens)


def omega_pp_direct_member(datum: SymmetricRootDatum, p: ParabolicSet, lam: Vec) -> bool:
    """Membership in the diagonal piece by the ambient-pairing inequality form:
    extend λ by zero on the fixed part and pair the shifted covector with the
    full minus-capable roots in the ambient inner product."""
    ext = extend_q(datum, lam)
    mu = add(ext, sub(rho_p(datum, p), rho_ph(datum, p)))
    return all(datum.dual_pairing(mu, a) <= 0 for a in minus_set(datum, p))


def extend_q(datum: SymmetricRootDatum, lam: Vec) -> Vec:
    """The ambient covector with the given values on the split basis and zero
    on the fixed basis."""
    lam = vec(lam)
    if len(lam) != datum.dim_q:
        raise ValueError("dimension mismatch")
    rows = datum.basis_q + datum.basis_h
    target = lam + zeros(datum.dim_h)
    sol = solve(rows, target)
    if sol is None:
        raise RuntimeError("split and fixed bases do not span the space")
    return sol


# -- text and CSV exports --------------------------------------------------------


def _fmt(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _fmt_vec(v: Vec) -> str:
    return "(" + ", ".join(_fmt(x) for x in v) + ")"


def cone_lines(cone: RationalCone) -> list[str]:
    lines = [f"cone in dimension {cone.dim}"]
    if not cone.generators:
        lines.append("  generators: none (zero cone)")
    for g in cone.generators:
        lines.append(f"  generator {_fmt_vec(g)}")
    if not cone.inequalities:
        lines.append("  inequalities: none (whole space)")
    for w in cone.inequalities:
        lines.append(f"  inequality {_fmt_vec(w)} . x >= 0")
    return lines


def piece_lines(piece: Piece, index: int) -> list[str]:
    lines = [f"piece {index}:"]
    if piece.base is not None:
        lines.append(f"  base {_fmt_vec(piece.base)}")
    for w, c in piece.ineqs:
        lines.append(f"  {_fmt_vec(w)} . x >= {_fmt(c)}")
    for w, c in piece.strict:
        lines.append(f"  {_fmt_vec(w)} . x > {_fmt(c)}")
    if not piece.ineqs and not piece.strict:
        lines.append("  (no constraints: whole space)")
    return lines


def domain_lines(domain: Domain) -> list[str]:
    lines = [f"domain in dimension {domain.dim}: union of {len(domain.pieces)} piece(s)"]
    for i, p in enumerate(domain.pieces):
        lines.extend(piece_lines(p, i))
    return lines


def cone_csv(cone: RationalCone) -> str:
    header = "kind,rhs," + ",".join(f"c{i}" for i in range(cone.dim))
    rows = [header]
    for g in cone.generators:
        rows.append("generator,," + ",".join(_fmt(x) for x in g))
    for w in cone.inequalities:
        rows.append("inequality,0," + ",".join(_fmt(x) for x in w))
    return "\n".join(rows) + "\n"


def domain_csv(domain: Domain) -> str:
    header = "piece,kind,rhs," + ",".join(f"c{i}" for i in range(domain.dim))
    rows = [header]
    for i, p in enumerate(domain.pieces):
        if p.base is not None:
            rows.append(f"{i},base,," + ",".join(_fmt(x) for x in p.base))
        for w, c in p.ineqs:
            rows.append(f"{i},ineq,{_fmt(c)}," + ",".join(_fmt(x) for x in w))
        for w, c in p.strict:
            rows.append(f"{i},strict,{_fmt(c)}," + ",".join(_fmt(x) for x in w))
    return "\n".join(rows) + "\n"
