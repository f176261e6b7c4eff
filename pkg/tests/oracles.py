"""Independent numerical oracles for the test suite.

These deliberately avoid the library's closed forms and production search
paths: maxima are located by brute-force lattices (optionally polished by
a plain golden-section ascent) over independent parametrizations, and
coefficients come straight from torus Riemann sums.
"""

from __future__ import annotations

import cmath
import itertools
import math

import numpy as np

GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


def lattice_directions(m: int, n: int) -> np.ndarray:
    """All nonnegative integer directions summing to m, as simplex weights."""
    rows = [
        comp
        for comp in itertools.product(range(m + 1), repeat=n)
        if sum(comp) == m
    ]
    return np.asarray(rows, dtype=float) / m


def sphere_points(p: float, n: int, r: float, m: int) -> np.ndarray:
    """Positive lp-sphere samples by normalizing simplex lattice directions."""
    w = lattice_directions(m, n)
    if math.isinf(p):
        norms = np.max(w, axis=1)
    else:
        norms = np.sum(w**p, axis=1) ** (1.0 / p)
    return r * w / norms[:, None]


def monomial_on(points: np.ndarray, alpha) -> np.ndarray:
    return np.prod(points ** np.asarray(alpha, dtype=float)[None, :], axis=1)


def golden_max(fn, a: float, b: float, iters: int = 120) -> float:
    c = b - GOLDEN * (b - a)
    d = a + GOLDEN * (b - a)
    fc, fd = fn(c), fn(d)
    for _ in range(iters):
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - GOLDEN * (b - a)
            fc = fn(c)
        else:
            a, c, fc = c, d, fd
            d = a + GOLDEN * (b - a)
            fd = fn(d)
    return max(fc, fd)


def grid_monomial_sup(p: float, n: int, alpha, r: float, m: int = 100) -> float:
    """Brute-force sup of |z^alpha| on the positive lp sphere, grid + polish.

    Never consults the closed form; the polish reparametrizes the best grid
    cell and ascends coordinate by coordinate.
    """
    alpha = tuple(alpha)
    if sum(alpha) == 0:
        return 1.0
    if n == 1:
        return float(r ** sum(alpha))
    pts = sphere_points(p, n, r, m)
    vals = monomial_on(pts, alpha)
    best = float(np.max(vals))
    w0 = pts[int(np.argmax(vals))] / r

    def value_of_weights(w):
        w = np.maximum(w, 0.0)
        if math.isinf(p):
            norm = np.max(w)
        else:
            norm = np.sum(w**p) ** (1.0 / p)
        if norm == 0:
            return 0.0
        t = r * w / norm
        return float(np.prod(t ** np.asarray(alpha, dtype=float)))

    w = w0.copy()
    for _ in range(8):
        for i in range(n):
            lo, hi = max(w[i] - 2.0 / m, 0.0), w[i] + 2.0 / m

            def along(s, i=i):
                ww = w.copy()
                ww[i] = s
                return value_of_weights(ww)

            best_s, best_v = w[i], along(w[i])
            a, b = lo, hi
            c = b - GOLDEN * (b - a)
            d = a + GOLDEN * (b - a)
            for _ in range(80):
                fc, fd = along(c), along(d)
                if fc >= fd:
                    b, d = d, c
                    c = b - GOLDEN * (b - a)
                else:
                    a, c = c, d
                    d = a + GOLDEN * (b - a)
            s = 0.5 * (a + b)
            if along(s) > best_v:
                w[i] = s
        best = max(best, value_of_weights(w))
    return best


def dense_majorant_sup(f, p: float, n: int, r: float, m: int) -> float:
    """Pure dense-lattice sup of the centered majorant, no refinement."""
    if n == 1:
        pts = np.array([[r]])
    else:
        pts = sphere_points(p, n, r, m)
    items = [(a, abs(c)) for a, c in f.ordered_items() if sum(a) > 0]
    if not items:
        return 0.0
    total = np.zeros(len(pts))
    for alpha, mod in items:
        total += mod * monomial_on(pts, alpha)
    return float(np.max(total))


def torus_coefficient(sampler, alpha, rho: float, n_samples: int) -> complex:
    """Riemann-sum Cauchy coefficient on the polytorus, written independently."""
    n = len(alpha)
    acc = 0j
    for js in itertools.product(range(n_samples), repeat=n):
        theta = [2.0 * math.pi * j / n_samples for j in js]
        z = tuple(rho * cmath.exp(1j * t) for t in theta)
        phase = cmath.exp(-1j * sum(a * t for a, t in zip(alpha, theta)))
        acc += sampler(z) * phase
    return acc / n_samples**n * rho ** (-sum(alpha))
