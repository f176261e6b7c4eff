"""Complete Reinhardt domains of lp-ball type, including the polydisk.

The stored object is always the unit domain; homothety radii enter through
the operations.  Spec strings use ``lp:<p>:<n>`` with ``inf`` for the
polydisk, e.g. ``lp:1:3`` or ``lp:inf:2``.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .series import DimensionMismatch, MultiIndex, total_degree

__all__ = [
    "ReinhardtDomain",
    "boundary_sample",
    "contains",
    "domain_spec",
    "monomial_sup",
    "parse_domain",
    "positive_sphere_grid",
]


@dataclass(frozen=True)
class ReinhardtDomain:
    """Unit lp ball in C^n; p = inf is the polydisk."""

    dimension: int
    p: float

    def __post_init__(self):
        if self.dimension < 1:
            raise ValueError(f"dimension must be >= 1, got {self.dimension}")
        if not (self.p > 0):
            raise ValueError(f"p must be positive, got {self.p}")

    @property
    def is_polydisk(self) -> bool:
        return math.isinf(self.p)


def parse_domain(spec: str) -> ReinhardtDomain:
    parts = spec.strip().split(":")
    if len(parts) != 3 or parts[0] != "lp":
        raise ValueError(f"bad domain spec {spec!r}, expected lp:<p>:<n>")
    p = math.inf if parts[1] == "inf" else float(parts[1])
    return ReinhardtDomain(int(parts[2]), p)


def domain_spec(domain: ReinhardtDomain) -> str:
    p = "inf" if domain.is_polydisk else f"{domain.p:g}"
    return f"lp:{p}:{domain.dimension}"


def contains(domain: ReinhardtDomain, z: Sequence[complex], r: float) -> bool:
    """Strict membership z in r * D."""
    if len(z) != domain.dimension:
        raise DimensionMismatch(
            f"point has {len(z)} coordinates, domain dimension {domain.dimension}"
        )
    if r <= 0:
        raise ValueError("homothety radius must be positive")
    mods = [abs(complex(w)) for w in z]
    if domain.is_polydisk:
        return max(mods) < r
    return sum(m**domain.p for m in mods) < r**domain.p


def monomial_sup(domain: ReinhardtDomain, alpha: MultiIndex, r: float) -> float:
    """sup of |z^alpha| over the closed homothety r * D.

    Closed form for the lp ball: r^|alpha| * prod_i (alpha_i/|alpha|)^(alpha_i/p)
    with the convention 0^0 = 1; on the polydisk simply r^|alpha|.
    Scaling in r is exact: the unit-domain value is computed once and
    multiplied by r^|alpha|.
    """
    if r < 0:
        raise ValueError("radius must be nonnegative")
    k = total_degree(alpha)
    if k == 0:
        return 1.0
    return r**k * _unit_monomial_sup(domain, tuple(int(a) for a in alpha))


@functools.lru_cache(maxsize=65536)
def _unit_monomial_sup(domain: ReinhardtDomain, alpha: tuple) -> float:
    if domain.is_polydisk:
        return 1.0
    k = total_degree(alpha)
    value = 1.0
    for a in alpha:
        if a:
            value *= (a / k) ** (a / domain.p)
    return value


def boundary_sample(domain: ReinhardtDomain, r: float, m: int) -> list:
    """Deterministic cover of the positive part of the lp sphere of radius r.

    Lattice directions on the standard simplex are normalized in lp; the
    axis vertices and the symmetric center point are always included.
    """
    if m < 2:
        raise ValueError("grid resolution must be >= 2")
    grid = positive_sphere_grid(domain, m)
    pts = [tuple(float(x) * r for x in row) for row in grid]
    seen = set()
    out = []
    for t in pts:
        if t not in seen:
            seen.add(t)
            out.append(t)
    return out


@functools.lru_cache(maxsize=256)
def positive_sphere_grid(domain: ReinhardtDomain, m: int) -> np.ndarray:
    """Unit-radius positive-sphere sample as an array of shape (npoints, n)."""
    n, p = domain.dimension, domain.p
    if n == 1:
        return np.ones((1, 1))
    rows = []
    for comp in _simplex_lattice(m, n):
        w = np.asarray(comp, dtype=float)
        rows.append(w / _lp_norm(w, p))
    # forced points: vertices and the symmetric center
    for i in range(n):
        e = np.zeros(n)
        e[i] = 1.0
        rows.append(e)
    center = np.full(n, n ** (-1.0 / p)) if not math.isinf(p) else np.ones(n)
    rows.append(center)
    return np.unique(np.asarray(rows), axis=0)


def _lp_norm(w: np.ndarray, p: float) -> float:
    if math.isinf(p):
        return float(np.max(w))
    return float(np.sum(w**p) ** (1.0 / p))


def _simplex_lattice(m: int, n: int):
    if n == 1:
        yield (m,)
        return
    for first in range(m + 1):
        for rest in _simplex_lattice(m - first, n - 1):
            yield (first,) + rest
