"""Root data with involution: the inner-product space, the involution, the
root system with multiplicities, and the flags marking roots whose root-space
involution is trivial.

Coordinates: vectors live in the column space of a fixed basis of the ambient
space; roots and all other covectors are stored as value rows against that
same basis.  The +1 and -1 eigenspaces of the involution get canonical bases
(reduced-echelon kernel bases, primitive, first nonzero entry positive), and
everything restricted is expressed as values on those bases.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from .linalg import (
    Mat,
    Vec,
    add,
    dot,
    identity,
    is_positive_definite,
    is_symmetric,
    kernel_basis,
    mat,
    mat_inv,
    mat_mul,
    mat_vec,
    neg,
    scale,
    sub,
    transpose,
    vec,
    vec_mat,
)

HALF = Fraction(1, 2)


@dataclass(eq=False)
class SymmetricRootDatum:
    """An inner-product space with involution and a decorated root system.

    Treated as immutable after construction; derived data is cached.
    """

    dim: int
    gram: Mat
    sigma: Mat
    roots: tuple[Vec, ...]
    mult: dict[Vec, int]
    st_trivial: frozenset[Vec]
    whh_generators: tuple[Mat, ...] = ()
    name: str = ""

    def __post_init__(self) -> None:
        self.gram = mat(self.gram)
        self.sigma = mat(self.sigma)
        # Freeze roots in lexicographic order for determinism.
        self.roots = tuple(sorted(vec(r) for r in self.roots))
        self.mult = {vec(r): int(m) for r, m in self.mult.items()}
        self.st_trivial = frozenset(vec(r) for r in self.st_trivial)
        self.whh_generators = tuple(mat(g) for g in self.whh_generators)

    # -- eigenspaces ---------------------------------------------------------

    @cached_property
    def gram_inv(self) -> Mat:
        return mat_inv(self.gram)

    @cached_property
    def proj_minus(self) -> Mat:
        """Projection onto the -1 eigenspace of the involution."""
        return tuple(
            tuple(HALF * (ident - s) for ident, s in zip(row_i, row_s))
            for row_i, row_s in zip(identity(self.dim), self.sigma)
        )

    @cached_property
    def proj_plus(self) -> Mat:
        return tuple(
            tuple(HALF * (ident + s) for ident, s in zip(row_i, row_s))
            for row_i, row_s in zip(identity(self.dim), self.sigma)
        )

    @cached_property
    def basis_q(self) -> tuple[Vec, ...]:
        """Canonical basis of the -1 eigenspace (the split part)."""
        plus = tuple(add(row_s, row_i) for row_s, row_i in zip(self.sigma, identity(self.dim)))
        return tuple(kernel_basis(plus))

    @cached_property
    def basis_h(self) -> tuple[Vec, ...]:
        """Canonical basis of the +1 eigenspace (the fixed part)."""
        minus = tuple(sub(row_s, row_i) for row_s, row_i in zip(self.sigma, identity(self.dim)))
        return tuple(kernel_basis(minus))

    @property
    def dim_q(self) -> int:
        return len(self.basis_q)

    @property
    def dim_h(self) -> int:
        return len(self.basis_h)

    @cached_property
    def gram_q(self) -> Mat:
        """Gram matrix of the canonical basis of the -1 eigenspace."""
        return tuple(
            tuple(dot(mat_vec(self.gram, bj), bi) for bj in self.basis_q) for bi in self.basis_q
        )

    @cached_property
    def gram_q_inv(self) -> Mat:
        return mat_inv(self.gram_q)

    @cached_property
    def _basis_q_columns(self) -> Mat:
        return tuple(tuple(b[i] for b in self.basis_q) for i in range(self.dim))

    # -- covector operations -------------------------------------------------

    def sigma_star(self, a: Vec) -> Vec:
        """Pullback of a covector along the involution."""
        return vec_mat(a, self.sigma)

    def sigma_theta_star(self, a: Vec) -> Vec:
        """Pullback along involution-composed-with-minus-identity."""
        return neg(self.sigma_star(a))

    def in_ah_star(self, a: Vec) -> bool:
        """Whether the covector vanishes on the -1 eigenspace."""
        return self.sigma_star(a) == a

    def in_aq_star(self, a: Vec) -> bool:
        """Whether the covector vanishes on the +1 eigenspace."""
        return self.sigma_star(a) == neg(a)

    def restrict_q(self, a: Vec) -> Vec:
        """Values of the covector on the canonical basis of the -1 eigenspace."""
        return tuple(dot(a, b) for b in self.basis_q)

    def restrict_h(self, a: Vec) -> Vec:
        return tuple(dot(a, b) for b in self.basis_h)

    def aq_coords(self, x: Vec) -> Vec:
        """Coordinates of an ambient vector lying in the -1 eigenspace."""
        c = None
        if self.dim_q:
            from .linalg import solve

            c = solve(self._basis_q_columns, x)
        elif all(a == 0 for a in x):
            c = ()
        if c is None:
            raise ValueError("vector does not lie in the -1 eigenspace")
        return c

    def aq_ambient(self, c: Vec) -> Vec:
        x = vec([0] * self.dim)
        for ci, b in zip(c, self.basis_q, strict=True):
            x = add(x, scale(ci, b))
        return x

    def dual_pairing(self, a: Vec, b: Vec) -> Fraction:
        """Inner product of two ambient covectors through the Gram matrix."""
        return dot(vec_mat(a, self.gram_inv), b)

    def root_norm2(self, a: Vec) -> Fraction:
        return self.dual_pairing(a, a)

    def coroot(self, a: Vec) -> Vec:
        """The vector pairing to 2 with its own covector, scaled by root length."""
        return scale(2 / self.root_norm2(a), mat_vec(self.gram_inv, a))

    def reflect_covector(self, b: Vec, a: Vec) -> Vec:
        c = 2 * self.dual_pairing(b, a) / self.root_norm2(a)
        return sub(b, scale(c, a))

    def pair_q(self, l1: Vec, l2: Vec) -> Fraction:
        """Inner product of two covectors given as values on the split basis."""
        return dot(vec_mat(l1, self.gram_q_inv), l2)

    def pair_lambda_root(self, lam_q: Vec, alpha: Vec) -> Fraction:
        """Pairing of a split-part covector with an ambient root.

        The covector is extended by zero on the fixed part, so the pairing
        only sees the split restriction of the root.
        """
        return self.pair_q(lam_q, self.restrict_q(alpha))

    @cached_property
    def s_e(self) -> frozenset[Vec]:
        """Roots vanishing on the fixed part whose root-space involution is nontrivial."""
        return frozenset(a for a in self.roots if self.in_aq_star(a) and a not in self.st_trivial)

    def root_index(self, a: Vec) -> int:
        return self.roots.index(vec(a))


@dataclass(frozen=True)
class RestrictedRootSystem:
    """Nonzero restrictions of the roots to the -1 eigenspace.

    Roots are value rows on the canonical split basis; multiplicities add up
    over all ambient roots with the same restriction.  A flag marks the
    restricted roots with at least one contributing ambient root that can
    enter a minus-set (either it does not vanish on the fixed part, or its
    root-space involution is nontrivial).
    """

    dim_q: int
    gram_q: Mat
    roots_q: tuple[Vec, ...]
    mult_q: dict[Vec, int] = field(hash=False)
    flags_q: dict[Vec, bool] = field(hash=False)
    contributors: dict[Vec, tuple[Vec, ...]] = field(hash=False)


def restricted_system(datum: SymmetricRootDatum) -> RestrictedRootSystem:
    groups: dict[Vec, list[Vec]] = {}
    for a in datum.roots:
        r = datum.restrict_q(a)
        if any(x != 0 for x in r):
            groups.setdefault(r, []).append(a)
    roots_q = tuple(sorted(groups))
    mult_q = {r: sum(datum.mult[a] for a in groups[r]) for r in roots_q}
    flags_q = {
        r: any(not datum.in_aq_star(a) or a in datum.s_e for a in groups[r]) for r in roots_q
    }
    contributors = {r: tuple(groups[r]) for r in roots_q}
    return RestrictedRootSystem(
        dim_q=datum.dim_q,
        gram_q=datum.gram_q,
        roots_q=roots_q,
        mult_q=mult_q,
        flags_q=flags_q,
        contributors=contributors,
    )


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    problems: tuple[str, ...]

    def __str__(self) -> str:
        if self.ok:
            return "ok"
        return "\n".join(self.problems)


def validate(datum: SymmetricRootDatum, weyl_cap: int = 10**6) -> ValidationReport:
    """Check internal coherence of a datum; returns all violations found."""
    problems: list[str] = []
    n = datum.dim
    if len(datum.gram) != n or any(len(r) != n for r in datum.gram):
        return ValidationReport(False, (f"gram is not {n}x{n}",))
    if len(datum.sigma) != n or any(len(r) != n for r in datum.sigma):
        return ValidationReport(False, (f"sigma is not {n}x{n}",))
    if not is_symmetric(datum.gram):
        problems.append("gram is not symmetric")
    elif not is_positive_definite(datum.gram):
        problems.append("gram is not positive definite")
    if mat_mul(datum.sigma, datum.sigma) != identity(n):
        problems.append("sigma is not an involution")
    st = transpose(datum.sigma)
    if mat_mul(st, mat_mul(datum.gram, datum.sigma)) != datum.gram:
        problems.append("sigma does not preserve the inner product")
    if problems:
        return ValidationReport(False, tuple(problems))

    roots = datum.roots
    rootset = frozenset(roots)
    if len(rootset) != len(roots):
        problems.append("duplicate roots")
    for a in roots:
        if all(x == 0 for x in a):
            problems.append("zero root")
            break
    for a in roots:
        if neg(a) not in rootset:
            problems.append(f"roots not closed under negation: missing -({a})")
            break
    for a in roots:
        if datum.sigma_star(a) not in rootset:
            problems.append(f"roots not stable under the involution pullback: {a}")
            break
    closed = True
    for a in roots:
        for b in roots:
            if datum.reflect_covector(b, a) not in rootset:
                problems.append(f"reflection closure fails at alpha={a}, beta={b}")
                closed = False
                break
        if not closed:
            break
    if set(datum.mult) != set(rootset):
        problems.append("mult keys do not match the roots")
    else:
        for a in roots:
            m = datum.mult[a]
            if m < 1:
                problems.append(f"mult({a}) = {m} is not positive")
            if datum.mult[neg(a)] != m:
                problems.append(f"mult not symmetric under negation at {a}")
            if datum.mult[datum.sigma_star(a)] != m:
                problems.append(f"mult not invariant under the involution at {a}")
    for a in datum.st_trivial:
        if a not in rootset:
            problems.append(f"st_trivial contains a non-root {a}")
        elif not datum.in_aq_star(a):
            problems.append(f"st_trivial root {a} does not vanish on the fixed part")
        if neg(a) not in datum.st_trivial:
            problems.append(f"st_trivial not stable under negation at {a}")
    problems.extend(_check_whh(datum, weyl_cap))
    return ValidationReport(not problems, tuple(problems))


def build_doubled(
    gram, roots, mult: dict | None = None, name: str = ""
) -> SymmetricRootDatum:
    """Two copies of a base root system glued by the factor-swap involution.

    The -1 eigenspace is the antidiagonal; no root vanishes on either
    eigenspace, so the trivial-involution flag set is empty and the fixed-part
    reflection group is the full restricted Weyl group.
    """
    g = mat(gram)
    base = sorted(vec(r) for r in roots)
    n = len(g)
    zero = (Fraction(0),) * n
    gram2 = tuple(row + zero for row in g) + tuple(zero + row for row in g)
    sigma = tuple(zero + row for row in identity(n)) + tuple(row + zero for row in identity(n))
    roots2 = [r + zero for r in base] + [zero + r for r in base]
    base_mult = {vec(r): 1 for r in base} if mult is None else {vec(r): int(m) for r, m in mult.items()}
    mult2 = {r + zero: base_mult[r] for r in base}
    mult2.update({zero + r: base_mult[r] for r in base})
    datum = SymmetricRootDatum(
        dim=2 * n,
        gram=gram2,
        sigma=sigma,
        roots=tuple(roots2),
        mult=mult2,
        st_trivial=frozenset(),
        whh_generators=(),
        name=name,
    )
    from .chambers import restricted_reflection_matrices

    datum.whh_generators = restricted_reflection_matrices(datum)
    return datum


def build_split(
    gram,
    roots,
    mult: dict | None = None,
    st_trivial=(),
    whh_generators=(),
    name: str = "",
) -> SymmetricRootDatum:
    """Datum whose involution is minus the identity: everything is split."""
    g = mat(gram)
    n = len(g)
    rts = tuple(sorted(vec(r) for r in roots))
    m = {vec(r): 1 for r in rts} if mult is None else {vec(r): int(v) for r, v in mult.items()}
    minus_one = tuple(neg(row) for row in identity(n))
    return SymmetricRootDatum(
        dim=n,
        gram=g,
        sigma=minus_one,
        roots=rts,
        mult=m,
        st_trivial=frozenset(vec(r) for r in st_trivial),
        whh_generators=tuple(mat(w) for w in whh_generators),
        name=name,
    )


def _check_whh(datum: SymmetricRootDatum, weyl_cap: int) -> list[str]:
    if not datum.whh_generators:
        return []
    problems: list[str] = []
    k = datum.dim_q
    for g in datum.whh_generators:
        if len(g) != k or any(len(row) != k for row in g):
            return [f"whh generator is not {k}x{k}"]
    from .chambers import matrix_group_closure, weyl_group_restricted

    restricted = restricted_system(datum)
    rootset = set(restricted.roots_q)
    for g in datum.whh_generators:
        gt = transpose(g)
        if mat_mul(gt, mat_mul(datum.gram_q, g)) != datum.gram_q:
            problems.append("whh generator does not preserve the restricted inner product")
            continue
        g_inv = mat_inv(g)
        if rootset and {vec_mat(r, g_inv) for r in rootset} != rootset:
            problems.append("whh generator does not permute the restricted roots")
    if problems:
        return problems
    weyl = {w.matrix for w in weyl_group_restricted(datum, cap=weyl_cap)}
    group = matrix_group_closure(datum.whh_generators, cap=weyl_cap)
    for g in group:
        if g not in weyl:
            problems.append("whh generators leave the restricted reflection group")
            break
    return problems
