"""Exact rational linear algebra over Fraction tuples.

Vectors are tuples of Fraction, matrices are tuples of row tuples.  Everything
here is exact; the only nontrivial algorithms are Gaussian elimination and a
small phase-1 simplex (Bland's rule) used for feasibility questions: strict
sign systems, cone membership, and redundancy elimination.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Optional, Sequence

Vec = tuple[Fraction, ...]
Mat = tuple[Vec, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


def vec(entries: Iterable) -> Vec:
    return tuple(Fraction(e) for e in entries)


def mat(rows: Iterable[Iterable]) -> Mat:
    return tuple(vec(r) for r in rows)


def zeros(n: int) -> Vec:
    return (ZERO,) * n


def unit(n: int, i: int) -> Vec:
    return tuple(ONE if j == i else ZERO for j in range(n))


def identity(n: int) -> Mat:
    return tuple(unit(n, i) for i in range(n))


def dot(u: Vec, v: Vec) -> Fraction:
    return sum((a * b for a, b in zip(u, v, strict=True)), ZERO)


def add(u: Vec, v: Vec) -> Vec:
    return tuple(a + b for a, b in zip(u, v, strict=True))


def sub(u: Vec, v: Vec) -> Vec:
    return tuple(a - b for a, b in zip(u, v, strict=True))


def neg(u: Vec) -> Vec:
    return tuple(-a for a in u)


def scale(c: Fraction, u: Vec) -> Vec:
    return tuple(c * a for a in u)


def is_zero(u: Vec) -> bool:
    return all(a == 0 for a in u)


def mat_vec(m: Mat, v: Vec) -> Vec:
    return tuple(dot(row, v) for row in m)


def vec_mat(v: Vec, m: Mat) -> Vec:
    """Row vector times matrix; the covector action."""
    n = len(m[0]) if m else 0
    return tuple(sum((v[i] * m[i][j] for i in range(len(m))), ZERO) for j in range(n))


def mat_mul(a: Mat, b: Mat) -> Mat:
    bt = transpose(b)
    return tuple(tuple(dot(row, col) for col in bt) for row in a)


def transpose(m: Mat) -> Mat:
    if not m:
        return ()
    return tuple(tuple(row[j] for row in m) for j in range(len(m[0])))


def mat_eq(a: Mat, b: Mat) -> bool:
    return a == b


def rref(m: Mat) -> tuple[Mat, tuple[int, ...]]:
    """Reduced row echelon form and the pivot column indices."""
    rows = [list(r) for r in m]
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return tuple(tuple(row) for row in rows), tuple(pivots)


def rank(m: Mat) -> int:
    if not m:
        return 0
    return len(rref(m)[1])


def kernel_basis(m: Mat) -> list[Vec]:
    """Canonical basis of the null space: one primitive vector per free column."""
    if not m:
        return []
    ncols = len(m[0])
    red, pivots = rref(m)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [ZERO] * ncols
        v[f] = ONE
        for r, p in enumerate(pivots):
            v[p] = -red[r][f]
        basis.append(primitive_signed(tuple(v)))
    return basis


def solve(m: Mat, b: Vec) -> Optional[Vec]:
    """One solution of m x = b, or None if inconsistent."""
    if not m:
        return ()
    ncols = len(m[0])
    aug = tuple(row + (bi,) for row, bi in zip(m, b, strict=True))
    red, pivots = rref(aug)
    if ncols in pivots:
        return None
    x = [ZERO] * ncols
    for r, p in enumerate(pivots):
        x[p] = red[r][ncols]
    return tuple(x)


def mat_inv(m: Mat) -> Mat:
    n = len(m)
    aug = tuple(row + unit(n, i) for i, row in enumerate(m))
    red, pivots = rref(aug)
    if tuple(pivots) != tuple(range(n)):
        raise ValueError("matrix is singular")
    return tuple(row[n:] for row in red[:n])


def det(m: Mat) -> Fraction:
    rows = [list(r) for r in m]
    n = len(rows)
    d = ONE
    for c in range(n):
        pivot = next((i for i in range(c, n) if rows[i][c] != 0), None)
        if pivot is None:
            return ZERO
        if pivot != c:
            rows[c], rows[pivot] = rows[pivot], rows[c]
            d = -d
        d *= rows[c][c]
        inv = ONE / rows[c][c]
        for i in range(c + 1, n):
            if rows[i][c] != 0:
                f = rows[i][c] * inv
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[c])]
    return d


def is_symmetric(m: Mat) -> bool:
    return m == transpose(m)


def is_positive_definite(m: Mat) -> bool:
    """Sylvester's criterion; assumes the matrix is symmetric."""
    n = len(m)
    for k in range(1, n + 1):
        minor = tuple(row[:k] for row in m[:k])
        if det(minor) <= 0:
            return False
    return True


def primitive(v: Vec) -> Vec:
    """Scale a nonzero rational vector to coprime integers, keeping direction."""
    if is_zero(v):
        return v
    den = 1
    for a in v:
        den = den * a.denominator // gcd(den, a.denominator)
    ints = [int(a * den) for a in v]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    return tuple(Fraction(x // g) for x in ints)


def primitive_signed(v: Vec) -> Vec:
    """Primitive scaling with the first nonzero entry made positive."""
    p = primitive(v)
    for a in p:
        if a != 0:
            return p if a > 0 else neg(p)
    return p


def ray_rep(v: Vec) -> Vec:
    """Canonical representative of the ray class {v, -v}: sign-normalized primitive."""
    return primitive_signed(v)


# ----------------------------------------------------------------------------
# Phase-1 simplex.


def _phase1(rows: list[list[Fraction]], rhs: list[Fraction]) -> Optional[list[Fraction]]:
    """Find z >= 0 with rows . z = rhs, or None.  rhs must be >= 0."""
    m = len(rows)
    if m == 0:
        return []
    n = len(rows[0])
    # Tableau columns: n structural vars, m artificials, then the rhs.
    tab = [rows[i] + [ONE if j == i else ZERO for j in range(m)] + [rhs[i]] for i in range(m)]
    basis = [n + i for i in range(m)]
    # Reduced costs for minimizing the sum of artificials.
    red = [-sum((tab[i][j] for i in range(m)), ZERO) for j in range(n)] + [ZERO] * m
    obj = -sum(rhs, ZERO)
    total = n + m
    while True:
        enter = next((j for j in range(total) if red[j] < 0), None)
        if enter is None:
            break
        leave = None
        best = None
        for i in range(m):
            t = tab[i][enter]
            if t > 0:
                ratio = tab[i][total] / t
                # Bland: break ties by smallest basis variable.
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best = ratio
                    leave = i
        if leave is None:
            raise RuntimeError("phase-1 simplex unbounded; inconsistent tableau")
        piv = tab[leave][enter]
        tab[leave] = [x / piv for x in tab[leave]]
        for i in range(m):
            if i != leave and tab[i][enter] != 0:
                f = tab[i][enter]
                tab[i] = [x - f * y for x, y in zip(tab[i], tab[leave])]
        f = red[enter]
        if f != 0:
            obj -= f * tab[leave][total]
            red = [x - f * y for x, y in zip(red, tab[leave][:total])]
        basis[leave] = enter
    if obj != 0:
        return None
    z = [ZERO] * total
    for i in range(m):
        z[basis[i]] = tab[i][total]
    return z[:n]


def lp_feasible(
    nvars: int,
    ineqs: Sequence[tuple[Vec, Fraction]],
    eqs: Sequence[tuple[Vec, Fraction]] = (),
) -> Optional[Vec]:
    """A rational x with w.x >= c for all (w, c) in ineqs and a.x = b in eqs.

    Free variables are split x = u - v; one slack per inequality.  Returns
    None when the system is infeasible.
    """
    if nvars == 0:
        ok = all(c <= 0 for _, c in ineqs) and all(b == 0 for _, b in eqs)
        return () if ok else None
    nslack = len(ineqs)
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    for k, (w, c) in enumerate(ineqs):
        row = list(w) + [-a for a in w] + [ZERO] * nslack
        row[2 * nvars + k] = -ONE
        rows.append(row)
        rhs.append(Fraction(c))
    for a, b in eqs:
        rows.append(list(a) + [-x for x in a] + [ZERO] * nslack)
        rhs.append(Fraction(b))
    for i in range(len(rows)):
        if rhs[i] < 0:
            rows[i] = [-x for x in rows[i]]
            rhs[i] = -rhs[i]
    z = _phase1(rows, rhs)
    if z is None:
        return None
    return tuple(z[i] - z[nvars + i] for i in range(nvars))


def strictly_feasible(nvars: int, strict: Sequence[Vec]) -> Optional[Vec]:
    """A point with w.x > 0 for every w, via the homogeneous trick w.x >= 1."""
    return lp_feasible(nvars, [(w, ONE) for w in strict])


def in_cone(x: Vec, generators: Sequence[Vec]) -> bool:
    """Whether x is a nonnegative rational combination of the generators."""
    if is_zero(x):
        return True
    gens = [g for g in generators if not is_zero(g)]
    if not gens:
        return False
    d = len(x)
    rows = [[g[i] for g in gens] for i in range(d)]
    rhs = list(x)
    for i in range(d):
        if rhs[i] < 0:
            rows[i] = [-a for a in rows[i]]
            rhs[i] = -rhs[i]
    return _phase1(rows, rhs) is not None


def irredundant_rays(rays: Sequence[Vec]) -> list[Vec]:
    """Primitive, deduplicated rays with conic-redundant members removed."""
    keep = sorted({primitive(r) for r in rays if not is_zero(r)})
    for r in list(keep):
        rest = [g for g in keep if g != r]
        if in_cone(r, rest):
            keep.remove(r)
    return keep


def dual_cone_generators(normals: Sequence[Vec], dim: int) -> list[Vec]:
    """Generators of {x : n.x >= 0 for all n} by double description.

    Starts from generators of the full space and cuts one half-space at a
    time, combining strictly positive and strictly negative rays across each
    new wall; redundant rays are pruned after every cut.
    """
    gens: list[Vec] = [unit(dim, i) for i in range(dim)] + [neg(unit(dim, i)) for i in range(dim)]
    for n in normals:
        if is_zero(n):
            continue
        pos = [g for g in gens if dot(n, g) > 0]
        mid = [g for g in gens if dot(n, g) == 0]
        negs = [g for g in gens if dot(n, g) < 0]
        combos = [
            sub(scale(dot(n, gp), gn), scale(dot(n, gn), gp))
            for gp in pos
            for gn in negs
        ]
        gens = irredundant_rays(pos + mid + combos)
    return sorted(gens)


def format_fraction(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_fraction(s: str) -> Fraction:
    """Parse integer or p/q notation; decimal notation is rejected on purpose
    so that exact inputs stay exact."""
    s = s.strip()
    if "." in s or "e" in s.lower():
        raise ValueError(f"expected an integer or p/q rational, got {s!r}")
    return Fraction(s)


def format_vec(v: Vec) -> str:
    return " ".join(format_fraction(a) for a in v)
