"""Majorant functionals, the generalized Bohr condition, and semi-norm axioms.

Two one-parameter semi-norm families are built in:

* ``majorant-sup`` — |c_0| plus the sup over the closed homothety r*D of the
  centered majorant sum_{|a|>=1} |c_a z^a| (pointwise / first kind);
* ``termwise-sup`` — |c_0| plus sum_{|a|>=1} |c_a| sup_{r*D} |z^a|
  (termwise / second kind).

Both satisfy, and the harness verifies: monotone in r, submultiplicative,
convergent to |f(0)| as r -> 0, and additively split at the base point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .domains import ReinhardtDomain, monomial_sup, positive_sphere_grid
from .series import DimensionMismatch, TruncatedPowerSeries, multiply, total_degree
from .targets import ConvexTarget, Disk, HalfPlane, WholePlane, hull_distance

__all__ = [
    "AxiomReport",
    "BohrVerdict",
    "LandauCaratheodoryReport",
    "MAJORANT_SUP",
    "SEMINORM_KINDS",
    "SeminormFamily",
    "TERMWISE_SUP",
    "bohr_condition",
    "centered_norm",
    "check_axioms",
    "landau_caratheodory_check",
    "majorant_value",
    "r1_norm",
    "r1_norm_detail",
    "r2_norm",
    "seminorm_eval",
]

MAJORANT_SUP = "majorant-sup"
TERMWISE_SUP = "termwise-sup"
SEMINORM_KINDS = (MAJORANT_SUP, TERMWISE_SUP)

COMPARISON_TOL = 1e-9

_GRID_RESOLUTION = {2: 192, 3: 24}
_REFINE_STEP_TOL = 1e-7


def majorant_value(f: TruncatedPowerSeries, z: Sequence[complex]) -> float:
    """Centered majorant sum_{|a|>=1} |c_a| |z^a| at the point z."""
    if len(z) != f.dimension:
        raise DimensionMismatch(
            f"point has {len(z)} coordinates, series dimension {f.dimension}"
        )
    mods = [abs(complex(w)) for w in z]
    acc = 0.0
    for alpha, c in f.ordered_items():
        if total_degree(alpha) == 0:
            continue
        term = abs(c)
        for m, a in zip(mods, alpha):
            if a:
                term *= m**a
        acc += term
    return acc


# -- first-kind norm: sup of the majorant over the homothety -----------------


def r1_norm(f: TruncatedPowerSeries, domain: ReinhardtDomain, r: float) -> float:
    return r1_norm_detail(f, domain, r)[0]


def r1_norm_detail(
    f: TruncatedPowerSeries, domain: ReinhardtDomain, r: float
) -> tuple:
    """(sup of the centered majorant over closed r*D, refinement residual).

    The majorant depends only on the coordinate moduli and is monotone in
    each, so the sup lives on the positive part of the lp sphere.  It is
    located on a deterministic grid and polished by coordinate-wise
    golden-section ascent; the residual is the final bracket spread.
    """
    if f.dimension != domain.dimension:
        raise DimensionMismatch(
            f"series dimension {f.dimension}, domain dimension {domain.dimension}"
        )
    if r < 0 or r > 1:
        raise ValueError(f"homothety radius must lie in [0, 1], got {r}")
    alphas, absc = _centered_table(f)
    if len(alphas) == 0 or r == 0.0:
        return 0.0, 0.0
    n = domain.dimension
    if n == 1:
        degs = alphas[:, 0].astype(float)
        return float(np.sum(absc * r**degs)), 0.0
    if domain.is_polydisk:
        degs = np.sum(alphas, axis=1).astype(float)
        return float(np.sum(absc * r**degs)), 0.0

    grid = positive_sphere_grid(domain, _GRID_RESOLUTION.get(n, 16))
    pts = r * grid
    powers = np.prod(pts[:, None, :] ** alphas[None, :, :], axis=2)
    values = powers @ absc
    best = int(np.argmax(values))
    value = float(values[best])

    simplex = grid[best] ** domain.p
    simplex = simplex / np.sum(simplex)
    value, residual = _refine_simplex_max(
        lambda u: _majorant_at_simplex(u, domain, r, alphas, absc),
        simplex,
        value,
    )
    return value, residual


def _centered_table(f: TruncatedPowerSeries) -> tuple:
    items = [(a, abs(c)) for a, c in f.ordered_items() if total_degree(a) > 0]
    if not items:
        return np.zeros((0, f.dimension), dtype=int), np.zeros(0)
    alphas = np.array([a for a, _ in items], dtype=int)
    absc = np.array([m for _, m in items])
    return alphas, absc


def _majorant_at_simplex(u, domain, r, alphas, absc) -> float:
    t = r * np.maximum(u, 0.0) ** (1.0 / domain.p)
    return float(np.sum(absc * np.prod(t[None, :] ** alphas, axis=1)))


def _refine_simplex_max(fn, u0: np.ndarray, v0: float) -> tuple:
    """Coordinate-wise golden ascent over the simplex from u0; returns (max, residual)."""
    n = len(u0)
    u = u0.copy()
    value = v0
    width = 2.0 / _GRID_RESOLUTION.get(n, 16)
    residual = 0.0
    for _ in range(6):
        improved = 0.0
        for i in range(n - 1):
            lo = max(0.0, u[i] - width)
            hi = u[i] + min(width, u[-1])  # slack coordinate stays nonnegative
            if hi <= lo:
                continue
            x, vx, spread = _golden_max(
                lambda s: fn(_with_coordinate(u, i, s)), lo, hi, 1e-13
            )
            residual = max(residual, spread)
            if vx > value:
                improved = max(improved, vx - value)
                u = _with_coordinate(u, i, x)
                value = vx
        width *= 0.5
        if improved < _REFINE_STEP_TOL * max(1.0, value):
            break
    return value, residual


def _with_coordinate(u: np.ndarray, i: int, s: float) -> np.ndarray:
    """Move u_i to s, absorbing the difference into the last coordinate."""
    out = u.copy()
    delta = s - out[i]
    out[i] = s
    out[-1] = out[-1] - delta
    if out[-1] < 0:
        out[i] += out[-1]
        out[-1] = 0.0
    return out


def _golden_max(fn, a: float, b: float, tol: float) -> tuple:
    """Golden-section maximization on [a, b]; returns (argmax, max, bracket spread)."""
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = fn(c), fn(d)
    for _ in range(200):
        if b - a <= tol:
            break
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = fn(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = fn(d)
    if fc >= fd:
        return c, fc, abs(fd - fc)
    return d, fd, abs(fd - fc)


# -- second-kind norm: termwise suprema ---------------------------------------


def r2_norm(f: TruncatedPowerSeries, domain: ReinhardtDomain, r: float) -> float:
    """sum_{|a|>=1} |c_a| * sup_{r*D} |z^a|; exact given the closed-form sup."""
    if f.dimension != domain.dimension:
        raise DimensionMismatch(
            f"series dimension {f.dimension}, domain dimension {domain.dimension}"
        )
    if r < 0 or r > 1:
        raise ValueError(f"homothety radius must lie in [0, 1], got {r}")
    acc = 0.0
    for alpha, c in f.ordered_items():
        if total_degree(alpha) == 0:
            continue
        acc += abs(c) * monomial_sup(domain, alpha, r)
    return acc


# -- semi-norm family ---------------------------------------------------------


@dataclass(frozen=True)
class SeminormFamily:
    """One-parameter family ||.||_r = |f(z0)| + centered norm on r*D.

    `kind` selects the centered part (majorant-sup or termwise-sup); the
    base point z0 is the origin for both built-ins.
    """

    kind: str
    domain: ReinhardtDomain

    def __post_init__(self):
        if self.kind not in SEMINORM_KINDS:
            raise ValueError(f"unknown seminorm kind {self.kind!r}")

    @property
    def base_point(self) -> tuple:
        return (0j,) * self.domain.dimension


def centered_norm(S: SeminormFamily, f: TruncatedPowerSeries, r: float) -> float:
    """||f - f(z0)||_r for the chosen family."""
    if S.kind == MAJORANT_SUP:
        return r1_norm(f, S.domain, r)
    return r2_norm(f, S.domain, r)


def seminorm_eval(S: SeminormFamily, f: TruncatedPowerSeries, r: float) -> float:
    """||f||_r = |f(z0)| + ||f - f(z0)||_r, defined for r in (0, 1]."""
    if not 0.0 < r <= 1.0:
        raise ValueError(f"seminorm parameter must lie in (0, 1], got {r}")
    return abs(f.constant_term) + centered_norm(S, f, r)


# -- generalized Bohr condition ------------------------------------------------


@dataclass(frozen=True)
class BohrVerdict:
    """Outcome of one Bohr-condition comparison at a fixed radius."""

    value: float
    threshold: float
    holds: bool
    margin: float
    boundary: bool = False

    def __post_init__(self):
        if self.holds != (self.margin > 0):
            raise ValueError("verdict inconsistency: holds must match margin > 0")


def bohr_condition(
    f: TruncatedPowerSeries,
    S: SeminormFamily,
    r: float,
    target: ConvexTarget,
    comparison_tol: float = COMPARISON_TOL,
) -> BohrVerdict:
    """Compare the centered semi-norm at r against the hull distance of f(z0).

    Strict comparison; |margin| <= comparison_tol is flagged as boundary.
    The whole plane short-circuits to an infinite threshold.
    """
    if isinstance(target, WholePlane):
        return BohrVerdict(0.0, math.inf, True, math.inf)
    threshold = hull_distance(target, f.constant_term)
    value = centered_norm(S, f, r)
    margin = threshold - value
    return BohrVerdict(value, threshold, margin > 0, margin, abs(margin) <= comparison_tol)


# -- axiom harness -------------------------------------------------------------


@dataclass
class AxiomCheck:
    axiom: str
    description: str
    margin: float


@dataclass
class AxiomReport:
    """Outcome of the semi-norm axiom suite; failures carry the worst offenders."""

    checked: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)
    worst_margin: dict = field(default_factory=dict)
    submult_skipped: int = 0
    submult_total: int = 0

    @property
    def passed(self) -> bool:
        return not self.failures

    def _record(self, axiom: str, description: str, margin: float, tol: float):
        self.checked[axiom] = self.checked.get(axiom, 0) + 1
        prev = self.worst_margin.get(axiom)
        if prev is None or margin < prev:
            self.worst_margin[axiom] = margin
        if margin < -tol:
            self.failures.append(AxiomCheck(axiom, description, margin))


def check_axioms(
    S: SeminormFamily,
    test_functions: Sequence[TruncatedPowerSeries],
    r_grid: Sequence[float],
    tol: float = 1e-9,
    pairs: Sequence[tuple] | None = None,
    tail_guard: float = 1e-8,
    limit_tol: float = 1e-6,
) -> AxiomReport:
    """Verify axioms on a function set and radius grid.

    a) monotonicity over consecutive grid radii; b) submultiplicativity on
    the given pairs (default: consecutive, wrapping) with degree-exact
    products, skipped (and counted) when the product's tail bound exceeds
    `tail_guard` times the compared values; c) the r -> 0 limit equals
    |f(z0)| within `limit_tol`, via linear extrapolation from r = 1e-4;
    d) the additive split at the base point, exact.
    """
    report = AxiomReport()
    rs = sorted(float(r) for r in r_grid)
    if not rs or not test_functions:
        raise ValueError("need at least one radius and one test function")

    for i, f in enumerate(test_functions):
        values = [seminorm_eval(S, f, r) for r in rs]
        for j in range(len(rs) - 1):
            report._record(
                "a-monotone",
                f"f[{i}] r={rs[j]:g}->{rs[j + 1]:g}",
                values[j + 1] - values[j],
                tol,
            )
        base = abs(f.constant_term)
        v1 = seminorm_eval(S, f, 1e-4)
        v2 = seminorm_eval(S, f, 2e-4)
        extrapolated = 2.0 * v1 - v2
        report._record(
            "c-limit", f"f[{i}] r->0", limit_tol - abs(extrapolated - base), 0.0
        )
        for r in rs:
            split = seminorm_eval(S, f, r) - (base + centered_norm(S, f, r))
            report._record("d-split", f"f[{i}] r={r:g}", -abs(split), 0.0)

    if pairs is None:
        m = len(test_functions)
        pairs = [
            (test_functions[i], test_functions[(i + 1) % m]) for i in range(m)
        ]
    for i, (f, g) in enumerate(pairs):
        product = multiply(f, g)
        for r in rs:
            nf = seminorm_eval(S, f, r)
            ng = seminorm_eval(S, g, r)
            npr = seminorm_eval(S, product, r)
            report.submult_total += 1
            slack = product.tail_bound_at(r) + product.coefficient_error_bound
            if slack > tail_guard * max(npr, nf * ng, 1e-300):
                report.submult_skipped += 1
                continue
            report._record(
                "b-submultiplicative",
                f"pair[{i}] r={r:g}",
                nf * ng - npr,
                tol * max(1.0, nf * ng),
            )
    return report


# -- coefficient inequality (Landau / Caratheodory and their generalization) ---


@dataclass(frozen=True)
class LandauCaratheodoryReport:
    """Worst excess of |c_k| over twice the hull distance, k >= 1."""

    max_excess: float
    argmax_k: int | None
    threshold: float
    classical: str | None
    passed: bool


def landau_caratheodory_check(
    f: TruncatedPowerSeries,
    target: ConvexTarget,
    comparison_tol: float = COMPARISON_TOL,
) -> LandauCaratheodoryReport:
    """Check |c_k| <= 2 * hull_distance(target, c_0) for all stored k >= 1.

    Requires a univariate series whose underlying function maps the unit
    disk into the target (the caller guarantees range containment).  The
    unit-disk and right-half-plane targets are reported under their
    classical names.
    """
    if f.dimension != 1:
        raise DimensionMismatch("the coefficient inequality is univariate")
    threshold = 2.0 * hull_distance(target, f.constant_term)
    max_excess = -threshold
    argmax = None
    for (k,), c in f.ordered_items():
        if k == 0:
            continue
        excess = abs(c) - threshold
        if excess > max_excess:
            max_excess = excess
            argmax = k
    classical = None
    if isinstance(target, Disk) and target.center == 0 and target.radius == 1.0:
        classical = "landau"
    elif isinstance(target, HalfPlane) and target.boundary_point == 0 and abs(
        target.inward_normal - 1.0
    ) < 1e-15:
        classical = "caratheodory"
    return LandauCaratheodoryReport(
        max_excess=max_excess,
        argmax_k=argmax,
        threshold=threshold,
        classical=classical,
        passed=max_excess <= comparison_tol,
    )
