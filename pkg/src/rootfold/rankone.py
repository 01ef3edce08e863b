"""Floating-point laboratory for the two real-rank-one matrix models: the
factorization map to the one-dimensional split block, scalar intertwining
integrals over the opposite unipotent coordinates with truncation-radius
control and divergence detection, the exact convergence gate, and the
t^{d/2} scaling limit with its independently predicted Gaussian constant.

Conventions: the block's split part is one-dimensional and values of the
indivisible root are used as its coordinate, so `iwasawa_h` returns the
number ⟨root, H(nbar)⟩.  A scalar exponent s against that root describes
all integrands: exp(-s * ⟨root, H(nbar)⟩).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy import integrate

from .cones import extend_q, rho_p, rho_ph
from .datum import SymmetricRootDatum
from .linalg import Vec, add, neg, vec
from .parabolics import ParabolicSet, opposite

_KINDS = {(1, 0), (2, 1)}


@dataclass(frozen=True)
class RankOneBlock:
    """One rank-one factor: multiplicities, matrix model, quadrature config.

    (1, 0) is the 2x2 real special-linear model, (2, 1) the 3x3
    special-unitary model for a signature-(2,1) Hermitian form.  d is the
    dimension of the unipotent coordinate space and of the integrals.
    """

    m_alpha: int
    m_2alpha: int
    tol: float = 0.0  # 0 means: use the kind-specific default
    radius_max: float = 0.0

    def __post_init__(self) -> None:
        if (self.m_alpha, self.m_2alpha) not in _KINDS:
            raise ValueError(f"unsupported multiplicities {(self.m_alpha, self.m_2alpha)}")
        if self.tol == 0.0:
            object.__setattr__(self, "tol", 1e-10 if self.m_2alpha == 0 else 1e-6)
        if self.radius_max == 0.0:
            object.__setattr__(self, "radius_max", 2.0**20 if self.m_2alpha == 0 else 256.0)
        if self.tol <= 0 or self.radius_max < 32:
            raise ValueError("tolerance must be positive and radius_max at least 32")

    @property
    def d(self) -> int:
        return self.m_alpha + self.m_2alpha

    @property
    def s_critical(self) -> Fraction:
        """Exponent below or at which the scalar integral diverges."""
        return Fraction(self.m_alpha + 2 * self.m_2alpha, 2)

    @property
    def s_rho(self) -> Fraction:
        """Exponent of the half-sum point: integrand there is a^{2 rho}."""
        return Fraction(self.m_alpha + 2 * self.m_2alpha)


def make_block(kind, tol: float = 0.0, radius_max: float = 0.0) -> RankOneBlock:
    m = tuple(int(x) for x in kind)
    if len(m) != 2:
        raise ValueError("kind must be a pair of multiplicities")
    return RankOneBlock(m[0], m[1], tol, radius_max)


# -- matrix models and the factorization map -----------------------------------


def nbar(block: RankOneBlock, coords) -> np.ndarray:
    """The opposite-unipotent matrix for one coordinate point."""
    return _nbar_batch(block, np.atleast_2d(np.asarray(coords, dtype=float)))[0]


def _nbar_batch(block: RankOneBlock, pts: np.ndarray) -> np.ndarray:
    n = pts.shape[0]
    if block.d == 1:
        out = np.zeros((n, 2, 2))
        out[:, 0, 0] = 1.0
        out[:, 1, 1] = 1.0
        out[:, 1, 0] = pts[:, 0]
        return out
    z = pts[:, 0] + 1j * pts[:, 1]
    u = pts[:, 2]
    out = np.zeros((n, 3, 3), dtype=complex)
    out[:, 0, 0] = 1.0
    out[:, 1, 1] = 1.0
    out[:, 2, 2] = 1.0
    out[:, 1, 0] = z
    out[:, 2, 1] = -np.conj(z)
    out[:, 2, 0] = 1j * u - np.abs(z) ** 2 / 2.0
    return out


def _alpha_from_qr(block: RankOneBlock, mats: np.ndarray) -> np.ndarray:
    """⟨root, H⟩ read off a triangularization against the standard flag."""
    q, r = np.linalg.qr(mats)
    diag = np.einsum("...ii->...i", r)
    phase = diag / np.abs(diag)
    r = r / phase[..., :, None]
    diag = np.abs(diag)
    if block.d == 1:
        if np.any(np.abs(diag[:, 0] * diag[:, 1] - 1.0) > 1e-9):
            raise RuntimeError("factorization failure: unit-determinant check")
        return 2.0 * np.log(diag[:, 0])
    if np.any(np.abs(diag[:, 1] - 1.0) > 1e-9) or np.any(
        np.abs(diag[:, 0] * diag[:, 2] - 1.0) > 1e-9
    ):
        raise RuntimeError("factorization failure: split-diagonal shape check")
    return np.log(diag[:, 0])


def iwasawa_h(block: RankOneBlock, coords) -> float:
    """The split-block coordinate ⟨root, H(nbar(coords))⟩ by numeric
    factorization (orthonormalization against the standard flag)."""
    pts = np.atleast_2d(np.asarray(coords, dtype=float))
    if pts.shape != (1, block.d):
        raise ValueError(f"expected {block.d} coordinates")
    return float(_alpha_from_qr(block, _nbar_batch(block, pts))[0])


def alpha_h_batch(block: RankOneBlock, pts: np.ndarray) -> np.ndarray:
    """Factorization path, many points at once."""
    pts = np.asarray(pts, dtype=float)
    return _alpha_from_qr(block, _nbar_batch(block, pts))


def alpha_h_closed(block: RankOneBlock, pts: np.ndarray) -> np.ndarray:
    """Fast path: ⟨root, H⟩ from the squared norm of the first column.  The
    agreement with the factorization path is pinned by the test suite before
    the integrals below rely on it."""
    pts = np.asarray(pts, dtype=float)
    if block.d == 1:
        return np.log1p(pts[..., 0] ** 2)
    rho2 = pts[..., 0] ** 2 + pts[..., 1] ** 2
    return 0.5 * np.log((1.0 + rho2 / 2.0) ** 2 + pts[..., 2] ** 2)


def gram_schmidt_first_norm(matrix) -> float:
    """Independent oracle: classical Gram–Schmidt on the columns, returning
    the first triangular diagonal entry (no numpy factorizations)."""
    a = [[complex(matrix[i][j]) for j in range(len(matrix))] for i in range(len(matrix))]
    n = len(a)
    cols = [[a[i][j] for i in range(n)] for j in range(n)]
    basis: list[list[complex]] = []
    r00 = 0.0
    for j, col in enumerate(cols):
        v = list(col)
        for b in basis:
            coeff = sum(x * y.conjugate() for x, y in zip(v, b))
            v = [x - coeff * y for x, y in zip(v, b)]
        norm = math.sqrt(sum(abs(x) ** 2 for x in v))
        if norm < 1e-14:
            raise RuntimeError("factorization failure: singular input")
        if j == 0:
            r00 = norm
        basis.append([x / norm for x in v])
    return r00


# -- h-function checks ----------------------------------------------------------


@dataclass(frozen=True)
class HFunctionReport:
    ok: bool
    value_at_zero: float
    min_off_ball: float
    hessian: tuple[tuple[float, ...], ...]
    hessian_positive_definite: bool
    hessian_step_agreement: float
    boundary_min: float
    witness: tuple[float, ...] | None

    def __str__(self) -> str:
        status = "ok" if self.ok else f"FAILED at {self.witness}"
        return (
            f"h-checks {status}: h(0)={self.value_at_zero:.2e}, "
            f"min off ball={self.min_off_ball:.4g}, boundary min={self.boundary_min:.4g}, "
            f"Hessian PD={self.hessian_positive_definite} "
            f"(step agreement {self.hessian_step_agreement:.2e})"
        )


def _hessian(f, dim: int, step: float) -> np.ndarray:
    h = np.zeros((dim, dim))
    e = np.eye(dim) * step
    f0 = f(np.zeros((1, dim)))[0]
    for i in range(dim):
        for j in range(i, dim):
            if i == j:
                val = (f(e[None, i])[0] + f(-e[None, i])[0] - 2 * f0) / step**2
            else:
                pp = f((e[i] + e[j])[None, :])[0]
                mm = f((-e[i] - e[j])[None, :])[0]
                pm = f((e[i] - e[j])[None, :])[0]
                mp = f((-e[i] + e[j])[None, :])[0]
                val = (pp + mm - pm - mp) / (4 * step**2)
            h[i, j] = h[j, i] = val
    return h


def h_function_checks(
    block: RankOneBlock,
    slope: float,
    grid_radius: float = 2.0,
    grid_points: int = 17,
    ball_radius: float = 0.25,
) -> HFunctionReport:
    """Grid verification of the phase function h = slope * ⟨root, H(nbar)⟩:
    zero at the origin, positive away from it, positive-definite numeric
    Hessian (two step sizes compared), and a positive floor on the grid
    boundary.  Uses the factorization path throughout."""
    if slope <= 0:
        raise ValueError("slope must be positive")

    def h(pts: np.ndarray) -> np.ndarray:
        return slope * alpha_h_batch(block, pts)

    d = block.d
    axes = [np.linspace(-grid_radius, grid_radius, grid_points)] * d
    mesh = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, d)
    values = h(mesh)
    radii = np.sqrt((mesh**2).sum(axis=1))
    v0 = float(h(np.zeros((1, d)))[0])
    off = radii >= ball_radius
    min_off = float(values[off].min())
    on_boundary = np.abs(mesh).max(axis=1) >= grid_radius - 1e-12
    boundary_min = float(values[on_boundary].min())
    h3 = _hessian(h, d, 1e-3)
    h4 = _hessian(h, d, 1e-4)
    scale = max(np.abs(h3).max(), 1e-30)
    agreement = float(np.abs(h3 - h4).max() / scale)
    pd = bool(np.linalg.eigvalsh(h3).min() > 0)
    witness: tuple[float, ...] | None = None
    ok = abs(v0) <= 1e-12 and min_off > 0 and boundary_min > 0 and pd and agreement <= 1e-3
    if not ok:
        if min_off <= 0:
            witness = tuple(mesh[off][int(values[off].argmin())])
        elif boundary_min <= 0:
            witness = tuple(mesh[on_boundary][int(values[on_boundary].argmin())])
        else:
            witness = (0.0,) * d
    hess = tuple(tuple(float(x) for x in row) for row in h3)
    return HFunctionReport(ok, v0, min_off, hess, pd, agreement, boundary_min, witness)


# -- scalar integrals with truncation control -----------------------------------


@dataclass(frozen=True)
class CFunctionValue:
    value: float
    est_error: float
    converged: bool

    def __post_init__(self) -> None:
        if not (self.est_error >= 0 or math.isnan(self.value)):
            raise ValueError("error estimate must be nonnegative")


def _radius_scan(evaluate, tol: float, r0: float, radius_max: float, decay: float):
    """Doubling truncation radii with a geometric-decay tail test.

    evaluate(r) -> (integral over the radius-r box, internal error estimate).
    Returns (value, est_error, converged, diverged).
    """
    r = r0
    prev_val: float | None = None
    increments: list[float] = []
    high_ratio_count = 0
    value, internal = evaluate(r)
    while True:
        if prev_val is not None:
            inc = value - prev_val
            if inc < -max(10 * internal, 1e-13 * max(abs(value), 1.0)):
                raise RuntimeError("truncation monotonicity violated; quadrature is broken")
            inc = max(inc, 0.0)
            increments.append(inc)
            tiny = max(tol / 16.0, 1e-15 * max(abs(value), 1.0))
            if inc <= tiny:
                return value, internal + inc, internal + inc <= tol, False
            if len(increments) >= 2 and increments[-2] > tiny:
                ratio = increments[-1] / increments[-2]
                if ratio >= decay:
                    high_ratio_count += 1
                    if high_ratio_count >= 2:
                        return math.nan, math.inf, False, True
                else:
                    tail = increments[-1] * ratio / (1.0 - ratio)
                    if tail <= tol / 2.0:
                        err = internal + tail
                        return value + tail, err, err <= tol, False
        if 2 * r > radius_max:
            return value, internal + (increments[-1] if increments else abs(value)), False, False
        prev_val = value
        r *= 2
        value, internal = evaluate(r)


def _integral_d1(s: float, tol: float, radius_max: float, decay: float):
    """∫_R (1+x²)^{-s} dx by adaptive panels over growing symmetric boxes."""

    def integrand(x):
        return (1.0 + x * x) ** (-s)

    def evaluate(r: float):
        hint = sorted({min(1.0, 1.0 / math.sqrt(2.0 * s + 1.0)), min(2.0, r / 2.0)})
        hint = [p for p in hint if 0.0 < p < r]
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", integrate.IntegrationWarning)
            val, err = integrate.quad(
                integrand, 0.0, r, epsabs=tol / 8.0, epsrel=1e-11, limit=400,
                points=hint or None,
            )
        return 2.0 * val, 2.0 * err

    return _radius_scan(evaluate, tol, 8.0, radius_max, decay)


def _axis_rule(r: float, inner: float, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Composite Gauss–Legendre nodes on [0, r]: dyadic panels from an inner
    scale outward, so features at every scale stay resolved."""
    bounds = [0.0, min(inner, r)]
    while bounds[-1] < r:
        bounds.append(min(2 * bounds[-1], r))
    xs, ws = np.polynomial.legendre.leggauss(n)
    nodes, weights = [], []
    for a, b in zip(bounds, bounds[1:]):
        if b <= a:
            continue
        mid, half = (a + b) / 2.0, (b - a) / 2.0
        nodes.append(mid + half * xs)
        weights.append(half * ws)
    return np.concatenate(nodes), np.concatenate(weights)


def _box_value_d3(s: float, r: float, inner: float, n: int) -> float:
    """Integral of ((1+|z|²/2)² + u²)^{-s/2} over the radius-r box, using
    evenness in each coordinate (8 × the positive octant)."""
    zn, zw = _axis_rule(r, inner, n)
    un, uw = _axis_rule(r, inner, n)
    z1sq = zn[:, None] ** 2
    z2sq = zn[None, :] ** 2
    base = (1.0 + (z1sq + z2sq) / 2.0) ** 2
    total = 0.0
    for u, wu in zip(un, uw):
        plane = (base + u * u) ** (-s / 2.0)
        total += wu * float(zw @ plane @ zw)
    return 8.0 * total


def _integral_d3(s: float, tol: float, radius_max: float, decay: float):
    inner = min(1.0, 1.0 / math.sqrt(2.0 * s + 1.0))

    def evaluate(r: float):
        coarse = _box_value_d3(s, r, inner, 16)
        fine = _box_value_d3(s, r, inner, 32)
        err = abs(fine - coarse)
        if err > tol / 8.0:
            finer = _box_value_d3(s, r, inner, 64)
            err = abs(finer - fine)
            fine = finer
        return fine, err

    return _radius_scan(evaluate, tol, 8.0, radius_max, decay)


def block_integral(
    block: RankOneBlock, s: float, probe: bool = False, decay: float = 0.9
) -> CFunctionValue:
    """One-block scalar integral ∫ exp(-s ⟨root, H(nbar)⟩) over the unipotent
    coordinates.  Unless probe is set, the exact convergence gate s > s_critical
    is enforced up front; in probe mode the divergence detector decides."""
    s = float(s)
    if not probe and s <= float(block.s_critical):
        raise ValueError(
            f"exponent {s} is not above the convergence bound {block.s_critical}; "
            "pass probe=True to run the divergence detector instead"
        )
    run = _integral_d1 if block.d == 1 else _integral_d3
    value, err, converged, diverged = run(s, block.tol, block.radius_max, decay)
    if diverged:
        return CFunctionValue(math.nan, math.inf, False)
    if converged and not value > 0:
        raise RuntimeError("positive integrand produced a nonpositive integral")
    return CFunctionValue(value, err, converged)


def c_partial(blocks, exponents, probe: bool = False, decay: float = 0.9) -> CFunctionValue:
    """Product over blocks of the one-block integrals; error propagated
    multiplicatively, convergence only when every factor converged."""
    blocks = tuple(blocks)
    exps = [float(e) for e in exponents]
    if len(blocks) != len(exps):
        raise ValueError("one exponent per block is required")
    if not blocks:
        raise ValueError("at least one block is required")
    parts = [block_integral(b, s, probe=probe, decay=decay) for b, s in zip(blocks, exps)]
    if any(math.isnan(p.value) for p in parts):
        return CFunctionValue(math.nan, math.inf, False)
    value = math.prod(p.value for p in parts)
    rel = sum(p.est_error / abs(p.value) for p in parts)
    return CFunctionValue(value, abs(value) * rel, all(p.converged for p in parts))


# -- the exact convergence gate --------------------------------------------------


def convergence_region(
    datum: SymmetricRootDatum, p: ParabolicSet, q: ParabolicSet, lam: Vec
) -> bool:
    """Exact strict test ⟨-λ + rho_ph(p), α⟩ > 0 on the roots shared by p and
    the reversal of q (λ given on split value coordinates, extended by zero)."""
    shared = p.positive & opposite(q).positive
    mu = add(neg(extend_q(datum, vec(lam))), rho_ph(datum, p))
    return all(datum.dual_pairing(mu, a) > 0 for a in shared)


def scalar_exponent(datum: SymmetricRootDatum, p: ParabolicSet, lam: Vec, beta: Vec) -> Fraction:
    """The scalar exponent of the β-block integrand at spectral parameter λ:
    ⟨-λ + rho_ph + rho_p, β⟩ / ⟨β, β⟩."""
    mu = add(add(neg(extend_q(datum, vec(lam))), rho_ph(datum, p)), rho_p(datum, p))
    return datum.dual_pairing(mu, beta) / datum.dual_pairing(beta, beta)


# -- the t^{d/2} scaling limit ----------------------------------------------------


@dataclass(frozen=True)
class AsymptoticReport:
    d: int
    rows: tuple[tuple[float, float, float, float], ...]  # (t, value, scaled, drift)
    limit: float
    prediction: float
    rel_gap: float
    converged: bool

    def __str__(self) -> str:
        lines = [f"t^{{{self.d}/2}} scaling: limit≈{self.limit:.8g}, "
                 f"prediction {self.prediction:.8g}, gap {self.rel_gap:.2e}, "
                 f"{'converged' if self.converged else 'NOT converged'}"]
        for t, v, sc, dr in self.rows:
            lines.append(f"  t={t:>10.1f}  value={v:.6e}  scaled={sc:.10f}  drift={dr:.2e}")
        return "\n".join(lines)


def gaussian_prediction(blocks, etas) -> float:
    """The stationary-phase constant: product over blocks of
    pi^{d/2} / sqrt(det(Hessian/2)) for the phase eta * ⟨root, H⟩."""
    pred = 1.0
    for b, eta in zip(blocks, etas):
        eta = float(eta)
        if eta <= 0:
            raise ValueError("slopes must be positive")

        def h(pts: np.ndarray, _b=b, _e=eta) -> np.ndarray:
            return _e * alpha_h_closed(_b, pts)

        hess = _hessian(h, b.d, 1e-3)
        s_mat = hess / 2.0
        det = float(np.linalg.det(s_mat))
        if det <= 0:
            raise RuntimeError("degenerate Hessian in the Gaussian prediction")
        pred *= math.pi ** (b.d / 2.0) / math.sqrt(det)
    return pred


def asymptotic_td2(
    blocks,
    mus,
    etas,
    t_schedule=None,
    drift_tol: float = 1e-2,
) -> AsymptoticReport:
    """Evaluates t^{d/2} * c_partial(mu + t*eta) along the schedule, reports
    per-step drift, the 1/t-extrapolated limit, and the Gaussian prediction."""
    blocks = tuple(blocks)
    mus = [float(m) for m in mus]
    etas = [float(e) for e in etas]
    if not (len(blocks) == len(mus) == len(etas)):
        raise ValueError("blocks, mus, etas must have equal length")
    if t_schedule is None:
        t_schedule = [1e2, 1e3, 1e4, 1e5]
    d = sum(b.d for b in blocks)
    rows = []
    prev_scaled: float | None = None
    for t in t_schedule:
        exps = [m + t * e for m, e in zip(mus, etas)]
        val = c_partial(blocks, exps)
        if not val.converged:
            raise RuntimeError(f"integral did not converge at t={t}")
        scaled = t ** (d / 2.0) * val.value
        drift = 0.0 if prev_scaled is None else abs(scaled - prev_scaled) / abs(scaled)
        rows.append((float(t), val.value, scaled, drift))
        prev_scaled = scaled
    (t1, _, y1, _), (t2, _, y2, _) = rows[-2], rows[-1]
    limit = (y2 * t2 - y1 * t1) / (t2 - t1)
    prediction = gaussian_prediction(blocks, etas)
    rel_gap = abs(limit - prediction) / abs(prediction)
    converged = rows[-1][3] <= drift_tol
    return AsymptoticReport(d, tuple(rows), limit, prediction, rel_gap, converged)


def asymptotic_csv(report: AsymptoticReport) -> str:
    lines = ["t,value,scaled,drift"]
    for t, v, sc, dr in report.rows:
        lines.append(f"{t!r},{v!r},{sc!r},{dr!r}")
    return "\n".join(lines) + "\n"
