"""Brute-force verification of the package's structural claims.

Every check quantifies over an explicitly enumerated universe (positive
systems, pairs, triples, chambers, twist representatives) and reports a
certificate instead of raising: a failed claim is data for the caller, not
an exception.  The same input always produces byte-identical reports.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .chambers import (
    WeylElement,
    build_from_chamber,
    chamber_of,
    chambers_q,
    conjugate,
    conjugate_parabolic,
    covector_action,
    faq_plus,
    matrix_group_closure,
    restricted_matrix,
    script_w,
    weyl_group,
    weyl_group_restricted,
)
from .cones import (
    Domain,
    check_subset_holset,
    delta_exponent,
    gamma_cone,
    gamma_dual,
    intersect_domains,
    omega_hat,
    omega_pp_direct_member,
    omega_pq,
    omega_q,
    pairing_normal,
    piece_subset,
    rho_p,
    rho_ph,
    translate_domain,
)
from .datum import SymmetricRootDatum, validate
from .linalg import (
    Mat,
    Vec,
    add,
    dual_cone_generators,
    format_vec,
    identity,
    mat_mul,
    neg,
    scale,
    strictly_feasible,
    sub,
    vec,
    zeros,
)
from .parabolics import (
    SIGMA,
    SIGMA_THETA,
    ParabolicSet,
    enumerate_parabolics,
    enumerate_q_extreme,
    is_q_extreme,
    minus_set,
    opposite,
    preceq,
    preceq_via_b,
    preceq_via_c,
    tau_set,
)

SCHEMA = "rootfold.certificates/1"


@dataclass(frozen=True)
class LemmaCertificate:
    """Outcome of one exhaustive check on one datum."""

    check_id: str
    statement: str
    datum_id: str
    universe: tuple[int, ...]
    status: str  # "pass" | "fail"
    counterexample: str | None = None

    def __str__(self) -> str:
        size = "x".join(str(n) for n in self.universe)
        head = f"{self.status:4s}  {self.check_id:24s} universe={size}"
        if self.counterexample is None:
            return head
        return f"{head}\n      {self.counterexample}"


def _pset(p: ParabolicSet) -> str:
    return "{" + ", ".join(format_vec(a) for a in sorted(p.positive)) + "}"


class _SuiteContext:
    """Shared enumerations and memoized domains for one datum."""

    def __init__(self, datum: SymmetricRootDatum):
        self.datum = datum
        self.parabolics = enumerate_parabolics(datum)
        self.n = len(self.parabolics)
        self.pos = [p.positive for p in self.parabolics]
        self.opp = [opposite(p).positive for p in self.parabolics]
        self.ge = [
            [preceq(datum, self.parabolics[i], self.parabolics[j]) for j in range(self.n)]
            for i in range(self.n)
        ]
        self.sep = [[self.pos[i] & self.opp[j] for j in range(self.n)] for i in range(self.n)]
        self.q_extremes = enumerate_q_extreme(datum, self.parabolics)
        self.qx_index = [i for i, p in enumerate(self.parabolics) if is_q_extreme(datum, p)]
        self.doms = [
            [i for i in self.qx_index if self.ge[i][j]] for j in range(self.n)
        ]
        self.complex = chambers_q(datum)
        self._reps: tuple[WeylElement, ...] | None = None
        self._conj: dict[int, SymmetricRootDatum] = {}
        self._omega: dict[tuple[int, int], Domain] = {}
        self._hull: dict[tuple[int, int], Domain] = {}
        self._upsilon: dict[int, Domain] = {}
        self._upsilon_hat: dict[int, Domain] = {}

    def reps(self) -> tuple[WeylElement, ...]:
        if self._reps is None:
            self._reps = script_w(self.datum)
        return self._reps

    def conj(self, vi: int) -> SymmetricRootDatum:
        if vi not in self._conj:
            self._conj[vi] = conjugate(self.datum, self.reps()[vi])
        return self._conj[vi]

    def omega(self, vi: int, qi: int) -> Domain:
        key = (vi, qi)
        if key not in self._omega:
            self._omega[key] = omega_q(self.conj(vi), self.parabolics[qi], self.q_extremes)
        return self._omega[key]

    def hull(self, vi: int, qi: int) -> Domain:
        key = (vi, qi)
        if key not in self._hull:
            self._hull[key] = omega_hat(self.conj(vi), self.parabolics[qi], self.q_extremes)
        return self._hull[key]

    def omega_base(self, qi: int) -> Domain:
        return omega_q(self.datum, self.parabolics[qi], self.q_extremes)

    def hull_base(self, qi: int) -> Domain:
        return omega_hat(self.datum, self.parabolics[qi], self.q_extremes)

    def upsilon(self, qi: int) -> Domain:
        if qi not in self._upsilon:
            out = self.omega(0, qi)
            for vi in range(1, len(self.reps())):
                out = intersect_domains(out, self.omega(vi, qi))
            self._upsilon[qi] = out
        return self._upsilon[qi]

    def upsilon_hat(self, qi: int) -> Domain:
        if qi not in self._upsilon_hat:
            out = self.hull(0, qi)
            for vi in range(1, len(self.reps())):
                out = intersect_domains(out, self.hull(vi, qi))
            self._upsilon_hat[qi] = out
        return self._upsilon_hat[qi]


_Result = tuple[tuple[int, ...], str | None]
_Runner = Callable[[_SuiteContext, bool], _Result]


def _check_tau_partition(ctx: _SuiteContext, exhaustive: bool) -> _Result:
    datum = ctx.datum
    for p in ctx.parabolics:
        sym = tau_set(datum, p, SIGMA)
        twi = tau_set(datum, p, SIGMA_THETA)
        if sym & twi or sym | twi != p.positive:
            return (ctx.n,), f"P={_pset(p)}: symmetric/twisted parts do not partition"
    return (ctx.n,), None


def _check_order_equivalence(ctx: _SuiteContext, exhaustive: bool) -> _Result:
    datum = ctx.datum
    for i, p in enumerate(ctx.parabolics):
        for j, q in enumerate(ctx.parabolics):
            a = ctx.ge[i][j]
            b = preceq_via_b(datum, p, q)
            c = preceq_via_c(datum, p, q)
            if not (a == b == c):
                return (
                    (ctx.n * ctx.n,),
                    f"P={_pset(p)} Q={_pset(q)}: order={a} separation={b} twisted={c}",
                )
    return (ctx.n * ctx.n,), None


def _check_order_axioms(ctx: _SuiteContext, exhaustive: bool) -> _Result:
    n, ge = ctx.n, ctx.ge
    universe = (n, n * n, n * n * n)
    for i in range(n):
        if not ge[i][i]:
            return universe, f"P={_pset(ctx.parabolics[i])}: not reflexive"
    for i in range(n):
        for j in range(n):
            if i != j and ge[i][j] and ge[j][i]:
                return (
                    universe,
                    f"P={_pset(ctx.parabolics[i])} Q={_pset(ctx.parabolics[j])}: not antisymmetric",
                )
    for i in range(n):
        for j in range(n):
            if not ge[i][j]:
                continue
            for k in range(n):
                if ge[j][k] and not ge[i][k]:
                    return (
                        universe,
                        f"P={_pset(ctx.parabolics[i])} Q={_pset(ctx.parabolics[j])} "
                        f"R={_pset(ctx.parabolics[k])}: not transitive",
                    )
    return universe, None


def _restriction_match(ctx: _SuiteContext, member: Callable[[Vec], bool]) -> _Result:
    for i in range(ctx.n):
        for j in range(ctx.n):
            if not ctx.ge[i][j]:
                continue
            left = {a for a in ctx.pos[i] if member(a)}
            right = {a for a in ctx.pos[j] if member(a)}
            if left != right:
                lhs = ", ".join(format_vec(a) for a in sorted(left))
                rhs = ", ".join(format_vec(a) for a in sorted(right))
                return (
                    (ctx.n * ctx.n,),
                    f"P={_pset(ctx.parabolics[i])} Q={_pset(ctx.parabolics[j])}: "
                    f"sets differ {{{lhs}}} vs {{{rhs}}}",
                )
    return (ctx.n * ctx.n,), None


def _check_restriction_q(ctx: _SuiteContext, exhaustive: bool) -> _Result:
    return _restriction_match(ctx, ctx.datum.in_aq_star)


def _check_restriction_h(ctx: _SuiteContext, exhaustive: bool) -> _Result:
    return _restriction_match(ctx, ctx.datum.in_ah_star)


def _check_order_interval(ctx: _SuiteContext, exhaustive: bool) -> _Result:
    n, ge, sep = ctx.n, ctx.ge, ctx.sep
    if exhaustive:
        universe = (n * n * n,)
        pairs = [(i, k) for i in range(n) for k in range(n)]
    else:
        pairs = [(i, k) for i in range(n) for k in range(n) if ge[i][k]]
        universe = (len(pairs) * n,)
    for i, k in pairs:
        if not ge[i][k]:
            continue
        for j in range(n):
            between = ge[i][j] and ge[j][k]
            nested = sep[i][j] <= sep[i][k]
            if between != nested:
                return (
                    universe,
                    f"P={_pset(ctx.parabolics[i])} Q={_pset(ctx.parabolics[j])} "
                    f"R={_pset(ctx.parabolics[k])}: between={between} nested={nested}",
                )
    return universe, None


def _check_maximal_q_extreme(ctx: _SuiteContext, exhaustive: bool) -> _Result:
    for i, p in enumerate(ctx.parabolics):
        maximal = not any(ctx.ge[j][i] for j in range(ctx.n) if j != i)
        extreme = is_q_extreme(ctx.datum, p)
        if maximal != extreme:
            return (ctx.n,), f"P={_pset(p)}: maximal={maximal} q-extreme={extreme}"
    return (ctx.n,), None


def _check_psigma_nonempty(ctx: _SuiteContext, exhaustive: bool) -> _Result:
    for j, q in enumerate(ctx.parabolics):
        if not ctx.doms[j]:
            return (ctx.n,), f"Q={_pset(q)}: no dominating q-extreme system"
    return (ctx.n,), None


def _check_chamber_bijection(ctx: _SuiteContext, exhaustive: bool) -> _Result:
    datum = ctx.datum
    for j, q in enumerate(ctx.parabolics):
        region = faq_plus(datum, q, ctx.complex)
        region_signs = {ch.signs for ch in region.chambers}
        mapped: dict[tuple[int, ...], ParabolicSet] = {}
        for i in ctx.doms[j]:
            p = ctx.parabolics[i]
            mapped[chamber_of(datum, p, ctx.complex).signs] = p
        if len(mapped) != len(ctx.doms[j]):
            return (ctx.n,), f"Q={_pset(q)}: chamber map is not injective"
        if set(mapped) != region_signs:
            return (
                (ctx.n,),
                f"Q={_pset(q)}: {len(mapped)} dominating systems vs "
                f"{len(region_signs)} chambers",
            )
        by_signs = ctx.complex.by_signs()
        for signs in sorted(mapped):
            rebuilt = build_from_chamber(datum, q, by_signs[signs], ctx.complex)
            if rebuilt.positive != mapped[signs].positive:
                return (
                    (ctx.n,),
                    f"Q={_pset(q)} chamber {signs}: rebuild gives {_pset(rebuilt)} "
                    f"instead of {_pset(mapped[signs])}",
                )
    return (ctx.n,), None


def _check_weyl_chamber_count(ctx: _SuiteContext, exhaustive: bool) -> _Result:
    ambient = len(weyl_group(ctx.datum))
    if ambient != ctx.n:
        return (2,), f"ambient: group order {ambient} vs {ctx.n} positive systems"
    restricted = len(weyl_group_restricted(ctx.datum))
    nch = len(ctx.complex.chambers)
    if restricted != nch:
        return (2,), f"restricted: group order {restricted} vs {nch} chambers"
    return (2,), None


def _check_rho_h_match(ctx: _SuiteContext, exhaustive: bool) -> _Result:
    datum = ctx.datum
    halves = [rho_ph(datum, p) for p in ctx.parabolics]
    for i in range(ctx.n):
        for j in range(ctx.n):
            if ctx.ge[i][j] and halves[i] != halves[j]:
                return (
                    (ctx.n * ctx.n,),
                    f"P={_pset(ctx.parabolics[i])} Q={_pset(ctx.parabolics[j])}: "
                    f"{format_vec(halves[i])} vs {format_vec(halves[j])}",
                )
    return (ctx.n * ctx.n,), None


def _check_delta_identity(ctx: _SuiteContext, exhaustive: bool) -> _Result:
    for p in ctx.parabolics:
        try:
            delta_exponent(ctx.datum, p)
        except ValueError as err:
            return (ctx.n,), f"P={_pset(p)}: {err}"
    return (ctx.n,), None


def _check_gamma_dual_routes(ctx: _SuiteContext, exhaustive: bool) -> _Result:
    datum = ctx.datum
    for q in ctx.parabolics:
        cone = gamma_cone(datum, q)
        dual = gamma_dual(datum, q)
        if cone.dual() != dual:
            return (ctx.n,), f"Q={_pset(q)}: generator and inequality routes disagree"
        if dual.dual() != cone:
            return (ctx.n,), f"Q={_pset(q)}: double dual does not return the wall cone"
    return (ctx.n,), None


def _check_chamber_in_dual(ctx: _SuiteContext, exhaustive: bool) -> _Result:
    datum = ctx.datum
    total = sum(len(d) for d in ctx.doms)
    for j, q in enumerate(ctx.parabolics):
        for i in ctx.doms[j]:
            cert = check_subset_holset(datum, ctx.parabolics[i], q)
            if not cert.ok:
                return (total,), f"P={_pset(ctx.parabolics[i])} Q={_pset(q)}: {cert}"
    return (total,), None


def _membership_grid(ctx: _SuiteContext, base: Vec) -> list[Vec]:
    dq = ctx.datum.dim_q
    vals = (Fraction(-1), Fraction(-1, 2), Fraction(0), Fraction(1, 2), Fraction(1))
    if dq > 2:
        vals = (Fraction(-1), Fraction(0), Fraction(1))
    return [add(base, vec(off)) for off in itertools.product(vals, repeat=dq)]


def _check_omega_membership(ctx: _SuiteContext, exhaustive: bool) -> _Result:
    datum = ctx.datum
    count = 0
    for i in ctx.qx_index:
        p = ctx.parabolics[i]
        piece = omega_pq(datum, p, p)
        for pt in _membership_grid(ctx, piece.base):
            count += 1
            via_piece = piece.contains(pt)
            via_ambient = omega_pp_direct_member(datum, p, pt)
            if via_piece != via_ambient:
                return (
                    (count,),
                    f"P={_pset(p)} lambda={format_vec(pt)}: "
                    f"piece={via_piece} ambient={via_ambient}",
                )
    return (count,), None


def _check_base_membership(ctx: _SuiteContext, exhaustive: bool) -> _Result:
    datum = ctx.datum
    total = sum(len(d) for d in ctx.doms)
    for j, q in enumerate(ctx.parabolics):
        union = ctx.omega_base(j)
        hull = ctx.hull_base(j)
        for i in ctx.doms[j]:
            piece = omega_pq(datum, ctx.parabolics[i], q)
            if not piece.contains(piece.base):
                return (total,), f"P={_pset(ctx.parabolics[i])} Q={_pset(q)}: base not in piece"
            if not union.contains(piece.base):
                return (total,), f"P={_pset(ctx.parabolics[i])} Q={_pset(q)}: base not in union"
            if not hull.contains(piece.base):
                return (total,), f"P={_pset(ctx.parabolics[i])} Q={_pset(q)}: base not in hull"
    return (total,), None


def _domain_in_single_piece(domain: Domain, other: Domain, dim: int) -> bool:
    (target,) = other.pieces
    return all(piece_subset(piece, target, dim) for piece in domain.pieces)


def _check_hull_contains_omega(ctx: _SuiteContext, exhaustive: bool) -> _Result:
    for j, q in enumerate(ctx.parabolics):
        if not _domain_in_single_piece(ctx.omega_base(j), ctx.hull_base(j), ctx.datum.dim_q):
            return (ctx.n,), f"Q={_pset(q)}: union domain escapes its hull"
    return (ctx.n,), None


def _check_hull_unconstrained(ctx: _SuiteContext, exhaustive: bool) -> _Result:
    count = 0
    for j, q in enumerate(ctx.parabolics):
        if minus_set(ctx.datum, q):
            continue
        count += 1
        (piece,) = ctx.hull_base(j).pieces
        if piece.ineqs or piece.strict:
            return (count,), f"Q={_pset(q)}: hull has constraints despite empty minus-set"
    return (count,), None


def _check_upsilon_trivial_group(ctx: _SuiteContext, exhaustive: bool) -> _Result:
    if len(ctx.reps()) != 1:
        return (0,), None
    for j, q in enumerate(ctx.parabolics):
        left = {p.canonical() for p in ctx.upsilon(j).pieces}
        right = {p.canonical() for p in ctx.omega_base(j).pieces}
        if left != right:
            return (ctx.n,), f"Q={_pset(q)}: intersected and plain domains differ"
    return (ctx.n,), None


def _mult_invariant(datum: SymmetricRootDatum, v: WeylElement) -> Vec | None:
    for a in sorted(datum.mult):
        if datum.mult[covector_action(datum, v, a)] != datum.mult[a]:
            return a
    return None


def _check_minus_transport(ctx: _SuiteContext, exhaustive: bool) -> _Result:
    datum = ctx.datum
    reps = ctx.reps()
    for vi, v in enumerate(reps):
        dv = ctx.conj(vi)
        for q in ctx.parabolics:
            q_v = conjugate_parabolic(datum, v, q)
            left = minus_set(dv, q)
            right = frozenset(covector_action(datum, v, a) for a in minus_set(datum, q_v))
            if left != right:
                lhs = ", ".join(format_vec(a) for a in sorted(left))
                rhs = ", ".join(format_vec(a) for a in sorted(right))
                return (
                    (len(reps) * ctx.n,),
                    f"rep #{vi} Q={_pset(q)}: twisted minus-set "
                    f"{{{lhs}}} vs transported {{{rhs}}}",
                )
    return (len(reps) * ctx.n,), None


def _check_holset_pieces(ctx: _SuiteContext, exhaustive: bool) -> _Result:
    datum = ctx.datum
    reps = ctx.reps()
    universe = (len(reps) * ctx.n,)
    for vi, v in enumerate(reps):
        bad = _mult_invariant(datum, v)
        if bad is not None:
            return (
                universe,
                f"rep #{vi}: multiplicity at {format_vec(bad)} is not invariant, "
                "the transport identity needs invariant multiplicities",
            )
        for j, q in enumerate(ctx.parabolics):
            q_v = conjugate_parabolic(datum, v, q)
            routed = translate_domain(datum, v, omega_q(datum, q_v, ctx.q_extremes))
            left = {p.canonical() for p in ctx.omega(vi, j).pieces}
            right = {p.canonical() for p in routed.pieces}
            if left != right:
                return (
                    universe,
                    f"rep #{vi} Q={_pset(q)}: transported-flag and translated routes differ",
                )
    return universe, None


def _check_hull_contains_upsilon(ctx: _SuiteContext, exhaustive: bool) -> _Result:
    for j, q in enumerate(ctx.parabolics):
        if not _domain_in_single_piece(ctx.upsilon(j), ctx.upsilon_hat(j), ctx.datum.dim_q):
            return (ctx.n,), f"Q={_pset(q)}: intersected domain escapes its hull"
    return (ctx.n,), None


def _chamber_probe_points(ctx: _SuiteContext, q: ParabolicSet, base: Vec) -> list[Vec]:
    datum = ctx.datum
    dq = datum.dim_q
    normals = sorted(
        {pairing_normal(datum, datum.restrict_q(a)) for a in tau_set(datum, q, SIGMA_THETA)}
    )
    if not normals:
        probes = [zeros(dq)] + [vec(row) for row in identity(dq)]
        return sorted({add(base, d) for d in probes} | {sub(base, d) for d in probes})
    x0 = strictly_feasible(dq, normals)
    if x0 is None:
        raise RuntimeError("empty dominance cone; datum is inconsistent")
    points = {sub(base, x0), sub(base, scale(Fraction(2), x0))}
    for d in dual_cone_generators(normals, dq):
        points.add(sub(base, add(x0, d)))
    return sorted(points)


def _check_upsilon_lower_bound(ctx: _SuiteContext, exhaustive: bool) -> _Result:
    datum = ctx.datum
    count = 0
    for j, q in enumerate(ctx.parabolics):
        ups = ctx.upsilon(j)
        for i in ctx.doms[j]:
            p = ctx.parabolics[i]
            base = datum.restrict_q(neg(sub(rho_p(datum, p), rho_ph(datum, p))))
            for pt in _chamber_probe_points(ctx, q, base):
                count += 1
                if not ups.contains(pt):
                    return (
                        (count,),
                        f"P={_pset(p)} Q={_pset(q)} lambda={format_vec(pt)}: "
                        "point below the base escapes the intersected domain",
                    )
    return (count,), None


def _check_script_w_cosets(ctx: _SuiteContext, exhaustive: bool) -> _Result:
    datum = ctx.datum
    reps = ctx.reps()
    wq = {w.matrix for w in weyl_group_restricted(datum)}
    if datum.whh_generators:
        wh = matrix_group_closure(datum.whh_generators, dim=datum.dim_q)
    else:
        wh = {identity(datum.dim_q)}

    def key(r: Mat) -> Mat:
        return min(mat_mul(r, h) for h in wh)

    seen: set[Mat] = set()
    for vi, v in enumerate(reps):
        r = restricted_matrix(datum, v.matrix)
        if r is None or r not in wq:
            return (len(wq),), f"rep #{vi}: restriction is not a restricted reflection element"
        k = key(r)
        if k in seen:
            return (len(wq),), f"rep #{vi}: duplicate coset"
        seen.add(k)
    targets = {key(w) for w in wq}
    if seen != targets:
        return (len(wq),), f"{len(targets) - len(seen)} cosets have no representative"
    return (len(wq),), None


_CHECKS: tuple[tuple[str, str, _Runner], ...] = (
    (
        "tau-partition",
        "every positive system is the disjoint union of its symmetric and twisted parts",
        _check_tau_partition,
    ),
    (
        "order-equivalence",
        "the dominance order, its separation criterion, and its twisted-intersection "
        "criterion agree on every ordered pair",
        _check_order_equivalence,
    ),
    (
        "order-axioms",
        "dominance is reflexive, antisymmetric, and transitive",
        _check_order_axioms,
    ),
    (
        "order-restriction-q",
        "comparable systems contain the same roots vanishing on the fixed part",
        _check_restriction_q,
    ),
    (
        "order-restriction-h",
        "comparable systems contain the same roots vanishing on the split part",
        _check_restriction_h,
    ),
    (
        "order-interval",
        "when P dominates R, a system lies between them exactly when its separation "
        "from P is contained in the separation of R from P",
        _check_order_interval,
    ),
    (
        "maximal-q-extreme",
        "the dominance-maximal systems are exactly the q-extreme ones",
        _check_maximal_q_extreme,
    ),
    (
        "psigma-nonempty",
        "every positive system is dominated by at least one q-extreme system",
        _check_psigma_nonempty,
    ),
    (
        "chamber-bijection",
        "dominating q-extreme systems biject onto the chambers inside the dominance "
        "cone, and rebuilding from a chamber inverts the map",
        _check_chamber_bijection,
    ),
    (
        "weyl-chamber-count",
        "reflection-group orders equal chamber counts, ambient and restricted",
        _check_weyl_chamber_count,
    ),
    (
        "rho-h-match",
        "comparable systems have the same fixed-part half-sum",
        _check_rho_h_match,
    ),
    (
        "delta-identity",
        "the fixed-part character exponent identities hold for every positive system",
        _check_delta_identity,
    ),
    (
        "gamma-dual-routes",
        "the wall cone built from generators matches its inequality description and "
        "survives double dualization",
        _check_gamma_dual_routes,
    ),
    (
        "chamber-in-dual",
        "the closed dominance cone lies inside the dual wall cone for every "
        "dominating pair",
        _check_chamber_in_dual,
    ),
    (
        "omega-membership",
        "grid membership in the diagonal convergence piece agrees between the "
        "split-coordinate and ambient-pairing routes",
        _check_omega_membership,
    ),
    (
        "base-membership",
        "every convergence piece contains its base exponent, inside the union "
        "domain and its hull",
        _check_base_membership,
    ),
    (
        "hull-contains-omega",
        "the union convergence domain lies inside its half-space hull",
        _check_hull_contains_omega,
    ),
    (
        "hull-unconstrained",
        "systems with no minus-capable twisted roots have an unconstrained hull",
        _check_hull_unconstrained,
    ),
    (
        "upsilon-trivial-group",
        "with a trivial twist group the intersected domain equals the plain one "
        "(vacuous otherwise)",
        _check_upsilon_trivial_group,
    ),
    (
        "minus-transport",
        "minus-capable root sets transport to conjugated systems along every twist "
        "representative",
        _check_minus_transport,
    ),
    (
        "holset-pieces",
        "per-representative domains agree between the transported-flag route and "
        "the translated conjugated-system route",
        _check_holset_pieces,
    ),
    (
        "hull-contains-upsilon",
        "the intersected domain lies inside the intersected hull",
        _check_hull_contains_upsilon,
    ),
    (
        "upsilon-lower-bound",
        "the intersected domain contains the shifted negative open dominance cone "
        "for every dominating system",
        _check_upsilon_lower_bound,
    ),
    (
        "script-w-cosets",
        "the twist representatives restrict into the restricted reflection group "
        "and hit every fixed-subgroup coset exactly once",
        _check_script_w_cosets,
    ),
)

CHECK_IDS: tuple[str, ...] = ("validate",) + tuple(cid for cid, _, _ in _CHECKS)

_VALIDATE_STATEMENT = "the datum satisfies the structural root and involution invariants"


def run_suite(
    datum: SymmetricRootDatum,
    selection: tuple[str, ...] | None = None,
    exhaustive: bool = False,
) -> tuple[LemmaCertificate, ...]:
    """Run the requested checks (all by default) and return their certificates.

    Validation always runs first; when it fails, it is the only certificate
    returned, since the remaining checks presume a well-formed datum.
    """
    if selection is not None:
        unknown = sorted(set(selection) - set(CHECK_IDS))
        if unknown:
            raise ValueError(f"unknown checks {unknown}; valid ids: {', '.join(CHECK_IDS)}")
    name = datum.name or "datum"
    report = validate(datum)
    out = [
        LemmaCertificate(
            check_id="validate",
            statement=_VALIDATE_STATEMENT,
            datum_id=name,
            universe=(1,),
            status="pass" if report.ok else "fail",
            counterexample=None if report.ok else report.problems[0],
        )
    ]
    if not report.ok:
        return tuple(out)
    ctx = _SuiteContext(datum)
    for check_id, statement, runner in _CHECKS:
        if selection is not None and check_id not in selection:
            continue
        try:
            universe, counterexample = runner(ctx, exhaustive)
        except (ValueError, RuntimeError) as err:
            universe, counterexample = (0,), f"aborted: {err}"
        out.append(
            LemmaCertificate(
                check_id=check_id,
                statement=statement,
                datum_id=name,
                universe=universe,
                status="pass" if counterexample is None else "fail",
                counterexample=counterexample,
            )
        )
    return tuple(out)


def suite_ok(certificates: tuple[LemmaCertificate, ...]) -> bool:
    return all(c.status == "pass" for c in certificates)


def certificates_to_json(certificates: tuple[LemmaCertificate, ...]) -> str:
    """Deterministic JSON report: same certificates, same bytes."""
    payload = {
        "schema": SCHEMA,
        "passed": sum(1 for c in certificates if c.status == "pass"),
        "failed": sum(1 for c in certificates if c.status == "fail"),
        "certificates": [
            {
                "check": c.check_id,
                "statement": c.statement,
                "datum": c.datum_id,
                "universe": list(c.universe),
                "status": c.status,
                "counterexample": c.counterexample,
            }
            for c in certificates
        ],
    }
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"
