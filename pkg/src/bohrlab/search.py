"""Numerical Bohr-radius machinery.

Per-function critical radii by monotone bisection, infima over witness
families, seeded probes with admissible generated functions, consistency
checks against the printed bracket bounds, and the target-independence
experiment.  All randomness flows through counter-based Philox streams, so
every probe is reproducible from (seed, index).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Callable, Iterable, Sequence

import numpy as np

from .domains import ReinhardtDomain, domain_spec, monomial_sup
from .functionals import (
    MAJORANT_SUP,
    TERMWISE_SUP,
    SeminormFamily,
    bohr_condition,
    centered_norm,
    landau_caratheodory_check,
)
from .series import (
    TruncatedPowerSeries,
    compose_linear,
    compose_series,
    degree_indices,
    extract_coefficients,
    mobius_series,
    total_degree,
)
from .targets import (
    ConvexTarget,
    Disk,
    HalfPlane,
    Strip,
    WholePlane,
    contains_point,
    disk_to_target_map,
    format_target,
    hull_distance,
    regular_convexity_witness,
)

__all__ = [
    "AdmissibleGenerator",
    "AdmissibleSample",
    "ConsistencyReport",
    "DEFAULT_DEGREE_CAP",
    "IndependenceReport",
    "RadiusEstimate",
    "bracket_consistency",
    "family_infimum",
    "function_radius",
    "geometric_alpha_grid",
    "independence_experiment",
    "mobius_family",
    "mobius_in_first_variable_family",
    "probe_no_violation",
    "random_test_series",
    "witness_upper_bound_l1",
]

BOUNDARY_TOL = 1e-9
TAIL_GUARD_FRACTION = 1e-6

DEFAULT_DEGREE_CAP = {1: 24, 2: 12, 3: 8}

KIND_PER_FUNCTION = "per-function"
KIND_FAMILY_INFIMUM = "family-infimum"
KIND_PROBE_UPPER_BOUND = "probe-upper-bound"
KIND_NO_VIOLATION = "no-violation-at"


@dataclass(frozen=True)
class RadiusEstimate:
    """Bracketed radius with provenance of the extremal witness."""

    lower: float
    upper: float
    tolerance: float
    kind: str
    witness: str
    probe_radius: float | None = None
    margin: float | None = None
    violations: int = 0
    boundary: bool = False
    tail_guard_ok: bool = True

    def __post_init__(self):
        if not (0.0 <= self.lower <= self.upper <= 1.0):
            raise ValueError(
                f"bracket must satisfy 0 <= lower <= upper <= 1, "
                f"got [{self.lower}, {self.upper}]"
            )

    @property
    def estimate(self) -> float:
        return 0.5 * (self.lower + self.upper)


def function_radius(
    f: TruncatedPowerSeries,
    S: SeminormFamily,
    target: ConvexTarget,
    tol: float = 1e-6,
    witness_label: str = "f",
) -> RadiusEstimate:
    """Largest r at which the centered semi-norm stays below the hull distance.

    Bisection on the monotone map r -> ||f - f(0)||_r.  Capped at 1 when the
    condition holds everywhere; 0 with a boundary flag when f(0) lies within
    BOUNDARY_TOL of the hull boundary.
    """
    if isinstance(target, WholePlane):
        return RadiusEstimate(1.0, 1.0, tol, KIND_PER_FUNCTION, witness_label)
    threshold = hull_distance(target, f.constant_term)
    if threshold <= BOUNDARY_TOL:
        return RadiusEstimate(
            0.0, 0.0, tol, KIND_PER_FUNCTION, witness_label, boundary=True
        )

    def holds(r: float) -> bool:
        return centered_norm(S, f, r) < threshold

    if holds(1.0):
        guard = f.tail_bound_at(1.0) + f.coefficient_error_bound
        return RadiusEstimate(
            1.0,
            1.0,
            tol,
            KIND_PER_FUNCTION,
            witness_label,
            margin=threshold - centered_norm(S, f, 1.0),
            tail_guard_ok=guard <= TAIL_GUARD_FRACTION * threshold,
        )
    lo, hi = 0.0, 1.0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if holds(mid):
            lo = mid
        else:
            hi = mid
    guard = f.tail_bound_at(hi) + f.coefficient_error_bound
    return RadiusEstimate(
        lo,
        hi,
        tol,
        KIND_PER_FUNCTION,
        witness_label,
        tail_guard_ok=guard <= TAIL_GUARD_FRACTION * threshold,
    )


def family_infimum(
    members: Iterable[tuple],
    S: SeminormFamily,
    target: ConvexTarget,
    tol: float = 1e-6,
) -> RadiusEstimate:
    """Minimum per-function radius over a parameterized family.

    An upper bound for the family-wide Bohr radius; the witness records the
    argmin parameter.
    """
    best = None
    lower = math.inf
    guard_ok = True
    count = 0
    for label, f in members:
        est = function_radius(f, S, target, tol, label)
        count += 1
        guard_ok = guard_ok and est.tail_guard_ok
        lower = min(lower, est.lower)
        if best is None or est.upper < best.upper:
            best = est
    if best is None:
        raise ValueError("family must be nonempty")
    return RadiusEstimate(
        lower,
        best.upper,
        tol,
        KIND_FAMILY_INFIMUM,
        best.witness,
        boundary=best.boundary,
        tail_guard_ok=guard_ok,
    )


# -- witness families ----------------------------------------------------------


def random_test_series(
    seed: int, index: int, dimension: int, degree: int
) -> TruncatedPowerSeries:
    """Reproducible random sparse series for property suites: stream (seed, index)."""
    rng = np.random.Generator(np.random.Philox(key=seed, counter=[index, 0, 0, 1]))
    indices = degree_indices(dimension, degree)
    coeffs = {}
    for alpha in indices:
        if rng.uniform() < 0.4:
            continue
        coeffs[alpha] = complex(rng.standard_normal(), rng.standard_normal())
    if not coeffs:
        coeffs[indices[0]] = complex(rng.standard_normal(), rng.standard_normal())
    mass = sum(abs(c) for c in coeffs.values())
    scale = float(rng.uniform(0.3, 2.0)) / mass
    return TruncatedPowerSeries(
        dimension, degree, {a: scale * c for a, c in coeffs.items()}
    )


def geometric_alpha_grid(
    count: int, start: float = 0.01, stop: float = 0.999
) -> np.ndarray:
    """Grid accumulating geometrically at 1: 1-alpha log-spaced from start to stop."""
    if count < 1:
        raise ValueError("count must be >= 1")
    if not (0.0 < start <= stop < 1.0):
        raise ValueError("need 0 < start <= stop < 1")
    if count == 1:
        return np.array([stop])
    return 1.0 - np.geomspace(1.0 - start, 1.0 - stop, count)


def mobius_family(alphas: Sequence[float], degree: int) -> list:
    return [
        (f"mobius(alpha={a:.10g})", mobius_series(float(a), degree)) for a in alphas
    ]


def mobius_in_first_variable_family(
    alphas: Sequence[float], degree: int, dimension: int
) -> list:
    """Mobius family applied to z_1, embedded as n-variable series."""
    out = []
    for a in alphas:
        g = mobius_series(float(a), degree)
        coeffs = {
            (k,) + (0,) * (dimension - 1): c for (k,), c in g.coefficients.items()
        }
        f = TruncatedPowerSeries(
            dimension, degree, coeffs, g.truncation_tail_bound, g.tail_valuation
        )
        out.append((f"mobius_z1(alpha={a:.10g})", f))
    return out


def witness_upper_bound_l1(
    dimension: int,
    alphas: Sequence[float] | None = None,
    tol: float = 1e-6,
    degree: int = 20,
) -> RadiusEstimate:
    """Termwise-sup radius infimum of the family mobius(alpha) o (z_1+...+z_n) on the unit l1 ball.

    z_1 + ... + z_n maps the l1 ball into the unit disk, so every member is
    admissible for the unit-disk target and the infimum is a valid upper
    bound for the second-kind Bohr radius of the l1 ball.
    """
    if dimension < 1:
        raise ValueError("dimension must be >= 1")
    if alphas is None:
        alphas = geometric_alpha_grid(120)
    domain = ReinhardtDomain(dimension, 1.0)
    S = SeminormFamily(TERMWISE_SUP, domain)
    members = []
    for a in alphas:
        a = float(a)
        g = mobius_series(a, degree)
        f = compose_linear(g, (1.0,) * dimension)
        f = replace(f, truncation_tail_bound=_l1_composition_tail(a, degree, dimension))
        members.append((f"mobius_l1(alpha={a:.10g})", f))
    return family_infimum(members, S, Disk(0, 1.0), tol)


def _l1_composition_tail(alpha: float, degree: int, dimension: int) -> float:
    """Radius-one l1-majorant bound of the discarded tail of mobius o (z_1+...+z_n).

    The degree-k slice of (z_1+...+z_n)^k has l1-ball majorant at most
    (k+1)^(n-1) (each weighted multinomial term is a probability mass).
    """
    lead = 1.0 - alpha * alpha
    total = 0.0
    k = degree + 1
    while True:
        term = lead * alpha ** (k - 1) * (k + 1) ** (dimension - 1)
        total += term
        if term < 1e-18 * max(total, 1e-30) or k > 100000:
            break
        k += 1
    return total


# -- admissible function generator ----------------------------------------------


@dataclass(frozen=True)
class AdmissibleSample:
    """One generated admissible function: exact sampler plus its truncated series."""

    label: str
    series: TruncatedPowerSeries
    sampler: Callable
    inner_sup_bound: float


@dataclass(frozen=True)
class AdmissibleGenerator:
    """Seeded stream of functions mapping the domain into the target.

    Each sample is h(m_beta(e^{i phi} (a_0 + v))) where h is the closed-form
    disk-to-target map, m_beta a disk automorphism factor, and v a random
    constant-free polynomial with coefficient sum at most
    contraction - |a_0| < 1, so range containment holds by construction.
    """

    target: ConvexTarget
    domain: ReinhardtDomain
    inner_degree: int = 4
    contraction: float = 0.8
    seed: int = 0
    degree_cap: int | None = None
    extraction_samples: int = 512
    halfplane_scale: float = 2.0

    def __post_init__(self):
        if not 0.0 < self.contraction < 1.0:
            raise ValueError("contraction must lie in (0, 1)")
        if self.inner_degree < 1:
            raise ValueError("inner degree must be >= 1")

    def _cap(self) -> int:
        if self.degree_cap is not None:
            return self.degree_cap
        return DEFAULT_DEGREE_CAP.get(self.domain.dimension, 8)

    def sample(self, index: int) -> AdmissibleSample:
        rng = np.random.Generator(
            np.random.Philox(key=self.seed, counter=[index, 0, 0, 0])
        )
        lam = self.contraction
        n = self.domain.dimension
        cap = self._cap()

        a0 = (
            0.5
            * lam
            * math.sqrt(rng.uniform())
            * np.exp(2j * np.pi * rng.uniform())
        )
        a0 = complex(a0)
        beta = float(rng.uniform(0.0, 0.9))
        phi = float(rng.uniform(0.0, 2.0 * np.pi))
        lam_v = lam - abs(a0)

        indices = [a for a in degree_indices(n, self.inner_degree) if total_degree(a) > 0]
        raw = rng.standard_normal(len(indices)) + 1j * rng.standard_normal(len(indices))
        mass = float(np.sum(np.abs(raw)))
        scale = lam_v * float(rng.uniform(0.5, 1.0)) / mass
        v = TruncatedPowerSeries(
            n, self.inner_degree, dict(zip(indices, (scale * c for c in raw)))
        )

        h = disk_to_target_map(self.target, self.halfplane_scale)
        unit = complex(math.cos(phi), math.sin(phi))

        def outer(xi):
            w = unit * (a0 + xi)
            return h((beta - w) / (1.0 - beta * w))

        rho = 0.85 * (1.0 - abs(a0))
        outer_series = extract_coefficients(
            lambda zs: outer(zs[0]),
            1,
            cap,
            rho=rho,
            samples_per_axis=self.extraction_samples,
        )
        series = compose_series(outer_series, v, cap)

        # discarded true outer terms: |h~_k| <= 2 dist / (1-|a0|)^k by the
        # coefficient inequality applied to the rescaled map
        dist0 = hull_distance(self.target, complex(outer(0.0)))
        sigma = lam_v / (1.0 - abs(a0))
        outer_tail = 2.0 * dist0 * sigma ** (cap + 1) / (1.0 - sigma)
        series = replace(
            series,
            truncation_tail_bound=series.truncation_tail_bound + outer_tail,
            tail_valuation=min(series.tail_valuation or cap + 1, cap + 1),
        )

        def sampler(z):
            return outer(v.eval(z))

        return AdmissibleSample(
            label=f"gen(seed={self.seed},index={index})",
            series=series,
            sampler=sampler,
            inner_sup_bound=abs(a0) + v.coefficient_sum,
        )

    def samples(self, count: int, start: int = 0):
        for index in range(start, start + count):
            yield self.sample(index)


def probe_no_violation(
    generator: AdmissibleGenerator,
    S: SeminormFamily,
    target: ConvexTarget,
    r: float,
    count: int,
    extra_members: Sequence[tuple] = (),
) -> RadiusEstimate:
    """Assert the Bohr condition at radius r over `count` generated functions.

    Violations are data, not errors: a violating member certifies r as an
    upper bound and is recorded as the witness.  `extra_members` lets the
    caller inject hand-picked (label, series) members, e.g. near-extremal
    ones.
    """
    if not 0.0 < r < 1.0:
        raise ValueError(f"probe radius must lie in (0, 1), got {r}")
    worst = math.inf
    worst_label = ""
    violations = 0
    guard_ok = True
    members = [(s.label, s.series) for s in generator.samples(count)]
    members.extend(extra_members)
    for label, f in members:
        verdict = bohr_condition(f, S, r, target)
        guard = f.tail_bound_at(r) + f.coefficient_error_bound
        guard_ok = guard_ok and guard <= TAIL_GUARD_FRACTION * verdict.threshold
        if verdict.margin < worst:
            worst = verdict.margin
            worst_label = label
        if verdict.margin < -BOUNDARY_TOL:
            violations += 1
    if violations:
        return RadiusEstimate(
            0.0,
            r,
            0.0,
            KIND_PROBE_UPPER_BOUND,
            worst_label,
            probe_radius=r,
            margin=worst,
            violations=violations,
            tail_guard_ok=guard_ok,
        )
    return RadiusEstimate(
        0.0,
        1.0,
        0.0,
        KIND_NO_VIOLATION,
        worst_label,
        probe_radius=r,
        margin=worst,
        violations=0,
        tail_guard_ok=guard_ok,
    )


# -- consistency suite -----------------------------------------------------------


@dataclass(frozen=True)
class CheckItem:
    name: str
    passed: bool
    detail: str
    asserted: bool = True


@dataclass
class ConsistencyReport:
    mode: str
    domain: str
    items: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(item.passed for item in self.items if item.asserted)


def lower_bound_radius(n: int, p: float, mode: str) -> float:
    """Printed safe radius for the requested bracket: below it no violation may occur."""
    if mode == "r2":
        return 1.0 - (2.0 / 3.0) ** (1.0 / n)
    if math.isinf(p):
        return 1.0 / (3.0 * math.sqrt(n))
    if p == 1.0:
        return 1.0 / (3.0 * math.e ** (1.0 / 3.0))
    raise ValueError(f"no printed first-kind bound for p={p}")


def bracket_consistency(
    domain: ReinhardtDomain,
    mode: str,
    count: int = 500,
    seed: int = 0,
    tol: float = 1e-6,
    witness_grid: Sequence[float] | None = None,
    degree: int = 40,
) -> ConsistencyReport:
    """Consistency checks of the numeric machinery against the printed brackets.

    (i) no violation at the safe lower-bound radius over seeded probes;
    (ii) witness-family infima never undercut that bound; (iii) on the l1
    ball the Mobius-in-z1 family certifies the <= 1/3 side of the
    first-kind bracket.  The large-n upper side of the polydisk bracket is
    recorded but vacuous at desk scale.
    """
    n, p = domain.dimension, domain.p
    if mode not in ("r1", "r2"):
        raise ValueError(f"mode must be r1 or r2, got {mode!r}")
    if mode == "r1" and n < 2:
        raise ValueError("first-kind brackets are stated for n > 1")
    report = ConsistencyReport(mode, domain_spec(domain))
    kind = MAJORANT_SUP if mode == "r1" else TERMWISE_SUP
    S = SeminormFamily(kind, domain)
    target = Disk(0, 1.0)
    r_safe = lower_bound_radius(n, p, mode)

    gen = AdmissibleGenerator(target=target, domain=domain, seed=seed)
    probe = probe_no_violation(gen, S, target, r_safe, count)
    report.items.append(
        CheckItem(
            f"no-violation@{r_safe:.6g}",
            probe.violations == 0,
            f"{count} probes, worst margin {probe.margin:.6g}",
        )
    )

    alphas = witness_grid if witness_grid is not None else geometric_alpha_grid(80)
    if mode == "r1":
        family = mobius_in_first_variable_family(alphas, degree, n)
        inf_est = family_infimum(family, S, target, tol)
        report.items.append(
            CheckItem(
                "witness-above-lower-bound",
                inf_est.lower >= r_safe,
                f"witness infimum {inf_est.estimate:.6g} vs bound {r_safe:.6g}",
            )
        )
        if p == 1.0:
            report.items.append(
                CheckItem(
                    "upper-side<=1/3",
                    inf_est.upper <= 1.0 / 3.0 + 2e-3,
                    f"witness infimum upper {inf_est.upper:.6g}",
                )
            )
        if math.isinf(p):
            upper = 2.0 * math.sqrt(math.log(n)) / math.sqrt(n)
            report.items.append(
                CheckItem(
                    "printed-upper-side",
                    True,
                    f"2 sqrt(log n)/sqrt(n) = {upper:.6g}"
                    + (" (vacuous, >= 1)" if upper >= 1 else " (not certified here)"),
                    asserted=False,
                )
            )
    else:
        if p == 1.0:
            west = witness_upper_bound_l1(n, alphas, tol)
            report.items.append(
                CheckItem(
                    "l1-witness-above-lower-bound",
                    west.lower >= r_safe,
                    f"W_{n} = {west.estimate:.6g} vs bound {r_safe:.6g}",
                )
            )
            printed = 0.44663 / n
            report.items.append(
                CheckItem(
                    "l1-witness-vs-printed-upper",
                    True,
                    f"W_{n} = {west.estimate:.6g} recorded against {printed:.6g}",
                    asserted=False,
                )
            )
    return report


# -- target independence -----------------------------------------------------------


@dataclass
class IndependenceReport:
    """Family-infimum estimates per target with the pairwise agreement check."""

    estimates: list = field(default_factory=list)  # (spec, RadiusEstimate, asserted)
    tolerance: float = 5e-3

    @property
    def asserted_values(self) -> list:
        return [e.estimate for _, e, asserted in self.estimates if asserted]

    @property
    def spread(self) -> float:
        vals = self.asserted_values
        if len(vals) < 2:
            return 0.0
        return max(vals) - min(vals)

    @property
    def passed(self) -> bool:
        return self.spread <= self.tolerance

    def estimate_for(self, spec: str) -> RadiusEstimate:
        for s, e, _ in self.estimates:
            if s == spec:
                return e
        raise KeyError(spec)


def independence_experiment(
    S: SeminormFamily,
    targets: Sequence[ConvexTarget],
    tol: float = 5e-3,
    alphas: Sequence[float] | None = None,
    degree: int = 60,
    function_tol: float = 1e-6,
) -> IndependenceReport:
    """Estimate the family infimum for each target and compare pairwise.

    Disk, half-plane, and strip targets use the conformal gallery map
    composed with the Mobius drift, so the image of 0 runs along a straight
    radius toward a regular point of convexity.  Polygon targets are probed
    through an inscribed tangent disk and reported without assertion; the
    whole plane short-circuits to 1 and is likewise excluded from the
    agreement check.
    """
    if S.domain.dimension != 1:
        raise ValueError("the independence experiment drives univariate families")
    if alphas is None:
        alphas = geometric_alpha_grid(80)
    report = IndependenceReport(tolerance=tol)
    for target in targets:
        spec = format_target(target)
        if isinstance(target, WholePlane):
            est = RadiusEstimate(
                1.0, 1.0, function_tol, KIND_FAMILY_INFIMUM, "wholeplane-shortcircuit"
            )
            report.estimates.append((spec, est, False))
            continue
        members = list(_drift_family(target, alphas, degree))
        est = family_infimum(members, S, target, function_tol)
        asserted = not _is_polygon(target)
        report.estimates.append((spec, est, asserted))
    return report


def _is_polygon(target: ConvexTarget) -> bool:
    return target.__class__.__name__ == "ConvexPolygon"


def _affine_mobius_member(disk: Disk, direction: complex, alpha: float, degree: int):
    """c + R e^{i phi} mobius(alpha): onto the disk, value at 0 drifting toward its boundary."""
    g = mobius_series(alpha, degree)
    return g.scaled(disk.radius * direction) + disk.center


def _drift_family(target: ConvexTarget, alphas, degree: int):
    """Admissible members whose value at 0 drifts to the hull boundary as alpha -> 1."""
    if isinstance(target, Disk) or _is_polygon(target):
        if _is_polygon(target):
            witness = regular_convexity_witness(target, _polygon_edge_direction(target))
            inner, direction = witness.disk, (witness.point - witness.disk.center)
            direction /= witness.disk.radius
        else:
            inner, direction = target, 1.0 + 0j
        for a in alphas:
            a = float(a)
            f = _affine_mobius_member(inner, direction, a, degree)
            yield (f"disk_drift(alpha={a:.10g})", f)
        return
    h = disk_to_target_map(target)
    ring = 0.99 * np.exp(2j * np.pi * np.arange(512) / 512)
    for a in alphas:
        a = float(a)

        def sampler(zs, _a=a):
            z = zs[0]
            return h((_a - z) / (1.0 - _a * z))

        f = extract_coefficients(sampler, 1, degree, rho=0.8, samples_per_axis=512)
        # tail envelope from the Cauchy bound on the 0.99-circle; the factor 2
        # absorbs the envelope's (1-r) denominator for crossings below 0.98
        sup99 = float(np.max(np.abs(sampler((ring,)))))
        alias = f.truncation_tail_bound
        f = replace(
            f,
            truncation_tail_bound=2.0 * sup99 / 0.99 ** (degree + 1),
            tail_valuation=degree + 1,
            coefficient_error_bound=f.coefficient_error_bound + alias,
        )
        yield (f"gallery_drift(alpha={a:.10g})", f)


def _polygon_edge_direction(target) -> complex:
    a, b, nu = target.edges()[0]
    return -nu
