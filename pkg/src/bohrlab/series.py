"""Sparse truncated power series in several complex variables.

A series is a finite coefficient table ``{multi-index: complex}``; absent
indices are zero.  All summations (evaluation, majorants) run in canonical
order — degree-major, then lexicographic — so results are reproducible
bit-for-bit.

Truncation bookkeeping
----------------------
Every series may carry a bound on what the truncation threw away:

* ``truncation_tail_bound`` — scalar ``T`` such that the termwise majorant
  of the discarded tail at radius ``r < 1`` is at most
  ``T * r**tail_valuation / (1 - r)``.  The scalar itself is the natural
  radius-one coefficient bound (e.g. ``(1-a^2) a^d / (1-a)`` for the Mobius
  series truncated at degree ``d``).
* ``tail_valuation`` — smallest total degree the discarded terms can have;
  defaults to ``max_degree + 1``.
* ``coefficient_error_bound`` — flat bound on the majorant error caused by
  inexact *stored* coefficients (e.g. grid-extraction aliasing), valid at
  every radius up to one.

Arithmetic propagates all three conservatively; the norm layer adds
``tail_bound_at(r) + coefficient_error_bound`` to its error budget before
any tolerance-sensitive comparison.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable, Iterator, Mapping, Sequence

import numpy as np

MultiIndex = tuple
ComplexPoint = tuple

__all__ = [
    "ComplexPoint",
    "DimensionMismatch",
    "MultiIndex",
    "TruncatedPowerSeries",
    "canonical_order",
    "compose_linear",
    "compose_series",
    "constant",
    "degree_indices",
    "extract_coefficients",
    "from_text",
    "mobius_series",
    "monomial",
    "multiply",
    "rotate",
    "to_text",
    "total_degree",
]


class DimensionMismatch(ValueError):
    """Operands or points with incompatible numbers of variables."""


def total_degree(alpha: MultiIndex) -> int:
    return int(sum(alpha))


def canonical_order(indices) -> list:
    """Degree-major, then lexicographic: the fixed summation order."""
    return sorted(indices, key=lambda a: (total_degree(a), a))


def compositions(degree: int, parts: int) -> Iterator[MultiIndex]:
    """All tuples of `parts` nonnegative ints summing to `degree`, ascending lex."""
    if parts == 1:
        yield (degree,)
        return
    for first in range(degree + 1):
        for rest in compositions(degree - first, parts - 1):
            yield (first,) + rest


def degree_indices(dimension: int, max_degree: int) -> list:
    """All multi-indices with |alpha| <= max_degree in canonical order."""
    out = []
    for k in range(max_degree + 1):
        out.extend(compositions(k, dimension))
    return out


@dataclass(frozen=True)
class TruncatedPowerSeries:
    """Finite coefficient table of a holomorphic function.

    Stored coefficients all satisfy ``len(alpha) == dimension`` and
    ``|alpha| <= max_degree``; exact zeros are dropped on construction.
    Instances are immutable and safe to share.
    """

    dimension: int
    max_degree: int
    coefficients: Mapping[MultiIndex, complex]
    truncation_tail_bound: float = 0.0
    tail_valuation: int | None = None
    coefficient_error_bound: float = 0.0

    def __post_init__(self):
        if self.dimension < 1:
            raise ValueError(f"dimension must be >= 1, got {self.dimension}")
        if self.max_degree < 0:
            raise ValueError(f"max_degree must be >= 0, got {self.max_degree}")
        if self.truncation_tail_bound < 0 or self.coefficient_error_bound < 0:
            raise ValueError("error bounds must be nonnegative")
        clean = {}
        for alpha, value in self.coefficients.items():
            idx = tuple(int(a) for a in alpha)
            if len(idx) != self.dimension:
                raise DimensionMismatch(
                    f"index {idx} has length {len(idx)}, series dimension {self.dimension}"
                )
            if any(a < 0 for a in idx):
                raise ValueError(f"negative exponent in index {idx}")
            if total_degree(idx) > self.max_degree:
                raise ValueError(
                    f"index {idx} exceeds max_degree {self.max_degree}"
                )
            value = complex(value)
            if value != 0:
                clean[idx] = value
        object.__setattr__(self, "coefficients", clean)
        ordered = tuple((a, clean[a]) for a in canonical_order(clean))
        object.__setattr__(self, "_ordered", ordered)
        object.__setattr__(
            self, "_coefficient_sum", float(sum(abs(c) for _, c in ordered))
        )

    # -- accessors ---------------------------------------------------------

    def ordered_items(self) -> tuple:
        """Coefficient items in canonical (degree-major, lex) order."""
        return self._ordered

    def coefficient(self, alpha) -> complex:
        return self.coefficients.get(tuple(int(a) for a in alpha), 0j)

    @property
    def constant_term(self) -> complex:
        return self.coefficients.get((0,) * self.dimension, 0j)

    @property
    def coefficient_sum(self) -> float:
        """Sum of |c_alpha| over stored indices (radius-one polydisk majorant)."""
        return self._coefficient_sum

    def tail_bound_at(self, r: float) -> float:
        """Majorant bound of the discarded tail on any unit-scale domain at radius r."""
        if self.truncation_tail_bound == 0.0:
            return 0.0
        if r >= 1.0:
            return math.inf
        if r <= 0.0:
            return 0.0
        val = self.tail_valuation
        if val is None:
            val = self.max_degree + 1
        return self.truncation_tail_bound * r**val / (1.0 - r)

    # -- evaluation --------------------------------------------------------

    def eval(self, z: Sequence[complex]) -> complex:
        """Evaluate at z by direct summation in canonical order."""
        if len(z) != self.dimension:
            raise DimensionMismatch(
                f"point has {len(z)} coordinates, series dimension {self.dimension}"
            )
        zc = [complex(w) for w in z]
        acc = 0j
        for alpha, c in self._ordered:
            term = c
            for zi, ai in zip(zc, alpha):
                if ai:
                    term *= zi**ai
            acc += term
        return acc

    # -- arithmetic --------------------------------------------------------

    def _check_same_dimension(self, other: "TruncatedPowerSeries"):
        if self.dimension != other.dimension:
            raise DimensionMismatch(
                f"dimensions differ: {self.dimension} vs {other.dimension}"
            )

    def __add__(self, other):
        if isinstance(other, (int, float, complex)):
            other = constant(self.dimension, other)
        self._check_same_dimension(other)
        coeffs = dict(self.coefficients)
        for a, c in other.coefficients.items():
            coeffs[a] = coeffs.get(a, 0j) + c
        vals = [
            v
            for v, t in (
                (self.tail_valuation or self.max_degree + 1, self.truncation_tail_bound),
                (other.tail_valuation or other.max_degree + 1, other.truncation_tail_bound),
            )
            if t > 0
        ]
        return TruncatedPowerSeries(
            self.dimension,
            max(self.max_degree, other.max_degree),
            coeffs,
            self.truncation_tail_bound + other.truncation_tail_bound,
            min(vals) if vals else None,
            self.coefficient_error_bound + other.coefficient_error_bound,
        )

    def __radd__(self, other):
        return self.__add__(other)

    def __neg__(self):
        return self.scaled(-1.0)

    def __sub__(self, other):
        if isinstance(other, (int, float, complex)):
            other = constant(self.dimension, other)
        return self.__add__(other.__neg__())

    def __mul__(self, other):
        if isinstance(other, (int, float, complex)):
            return self.scaled(other)
        return multiply(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, float, complex)):
            return self.scaled(other)
        return NotImplemented

    def scaled(self, factor: complex) -> "TruncatedPowerSeries":
        coeffs = {a: factor * c for a, c in self.coefficients.items()}
        return replace(
            self,
            coefficients=coeffs,
            truncation_tail_bound=self.truncation_tail_bound * abs(factor),
            coefficient_error_bound=self.coefficient_error_bound * abs(factor),
        )


# -- constructors -----------------------------------------------------------


def constant(dimension: int, value: complex) -> TruncatedPowerSeries:
    return TruncatedPowerSeries(dimension, 0, {(0,) * dimension: complex(value)})


def monomial(
    dimension: int, alpha, coefficient: complex = 1.0
) -> TruncatedPowerSeries:
    alpha = tuple(int(a) for a in alpha)
    return TruncatedPowerSeries(
        dimension, total_degree(alpha), {alpha: complex(coefficient)}
    )


def mobius_series(alpha: float, degree: int) -> TruncatedPowerSeries:
    """Degree-`degree` truncation of (alpha - z)/(1 - alpha z), 0 < alpha < 1.

    Coefficients: c_0 = alpha, c_k = -(1 - alpha^2) alpha^(k-1) for k >= 1.
    The discarded tail has coefficient sum (1 - alpha^2) alpha^degree / (1 - alpha).
    """
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must lie in (0, 1), got {alpha}")
    if degree < 0:
        raise ValueError("degree must be >= 0")
    coeffs = {(0,): complex(alpha)}
    lead = 1.0 - alpha * alpha
    for k in range(1, degree + 1):
        coeffs[(k,)] = complex(-lead * alpha ** (k - 1))
    tail = lead * alpha**degree / (1.0 - alpha)
    return TruncatedPowerSeries(1, degree, coeffs, tail)


def mobius_map(alpha: float) -> Callable:
    """Closed form of the Mobius family member; accepts scalars or arrays."""
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must lie in (0, 1), got {alpha}")

    def h(z):
        return (alpha - z) / (1.0 - alpha * z)

    return h


# -- operations --------------------------------------------------------------


def rotate(f: TruncatedPowerSeries, phi: float) -> TruncatedPowerSeries:
    """Multiply every coefficient by e^{i phi}; majorant data unchanged."""
    unit = complex(math.cos(phi), math.sin(phi))
    coeffs = {a: unit * c for a, c in f.coefficients.items()}
    return replace(f, coefficients=coeffs)


def multiply(
    f: TruncatedPowerSeries,
    g: TruncatedPowerSeries,
    degree_cap: int | None = None,
) -> TruncatedPowerSeries:
    """Cauchy product truncated at `degree_cap` (default: exact, d_f + d_g).

    Products of terms whose total degree exceeds the cap are dropped and
    their coefficient mass is added to the tail bound.
    """
    f._check_same_dimension(g)
    exact = f.max_degree + g.max_degree
    cap = exact if degree_cap is None else min(int(degree_cap), exact)
    n = f.dimension

    dropped = 0.0
    if n == 1:
        fa = np.zeros(f.max_degree + 1, dtype=complex)
        for (k,), c in f.coefficients.items():
            fa[k] = c
        ga = np.zeros(g.max_degree + 1, dtype=complex)
        for (k,), c in g.coefficients.items():
            ga[k] = c
        full = np.convolve(fa, ga)
        coeffs = {(k,): full[k] for k in range(min(cap, exact) + 1)}
        dropped = float(np.sum(np.abs(full[cap + 1 :])))
    else:
        coeffs = {}
        for a, ca in f.ordered_items():
            for b, cb in g.ordered_items():
                gamma = tuple(x + y for x, y in zip(a, b))
                if total_degree(gamma) > cap:
                    dropped += abs(ca) * abs(cb)
                    continue
                coeffs[gamma] = coeffs.get(gamma, 0j) + ca * cb

    sf, sg = f.coefficient_sum, g.coefficient_sum
    tf, tg = f.truncation_tail_bound, g.truncation_tail_bound
    tail = tf * sg + sf * tg + tf * tg + dropped
    vals = [cap + 1]
    if tf > 0:
        vals.append(f.tail_valuation or f.max_degree + 1)
    if tg > 0:
        vals.append(g.tail_valuation or g.max_degree + 1)
    err = f.coefficient_error_bound * (sg + tg + g.coefficient_error_bound) + (
        g.coefficient_error_bound * (sf + tf)
    )
    return TruncatedPowerSeries(n, cap, coeffs, tail, min(vals), err)


def compose_linear(
    g: TruncatedPowerSeries, weights: Sequence[complex]
) -> TruncatedPowerSeries:
    """Substitute w_1 z_1 + ... + w_n z_n into the one-variable series g.

    The coefficient at beta with |beta| = k is g_k * (k!/beta!) * w^beta.
    """
    if g.dimension != 1:
        raise DimensionMismatch("compose_linear needs a one-variable series")
    if len(weights) == 0:
        raise ValueError("weights must be nonempty")
    w = [complex(x) for x in weights]
    n = len(w)
    coeffs = {}
    for (k,), gk in g.ordered_items():
        kfact = math.factorial(k)
        for beta in compositions(k, n):
            c = 1.0
            skip = False
            for wi, bi in zip(w, beta):
                if bi:
                    if wi == 0:
                        skip = True
                        break
                    c *= wi**bi
            if skip:
                continue
            mult = kfact
            for bi in beta:
                mult //= math.factorial(bi)
            coeffs[beta] = coeffs.get(beta, 0j) + gk * mult * c
    s = sum(abs(x) for x in w)
    if g.truncation_tail_bound == 0.0:
        tail = 0.0
    elif s <= 1.0:
        # tail coefficient mass of (sum w_i z_i)^k is exactly s^k
        tail = g.truncation_tail_bound * s ** ((g.tail_valuation or g.max_degree + 1))
    else:
        tail = math.inf
    return TruncatedPowerSeries(
        n,
        g.max_degree,
        coeffs,
        tail,
        g.tail_valuation,
        g.coefficient_error_bound,
    )


def compose_series(
    g: TruncatedPowerSeries,
    inner: TruncatedPowerSeries,
    degree_cap: int,
) -> TruncatedPowerSeries:
    """Substitute a constant-free series `inner` into the one-variable `g`.

    Horner evaluation with every intermediate product truncated at
    `degree_cap`.  Because inner(0) = 0, the stored coefficients up to the
    cap depend only on g_0 .. g_cap and are exact given exact inputs.
    """
    if g.dimension != 1:
        raise DimensionMismatch("compose_series needs a one-variable outer series")
    if inner.constant_term != 0:
        raise ValueError("inner series must have zero constant term")
    if inner.truncation_tail_bound > 0:
        raise ValueError("inner series must carry no truncation tail")
    n = inner.dimension
    acc = constant(n, g.coefficient((g.max_degree,)))
    for k in range(g.max_degree - 1, -1, -1):
        acc = multiply(acc, inner, degree_cap) + constant(n, g.coefficient((k,)))

    tail = acc.truncation_tail_bound
    err = acc.coefficient_error_bound
    s_in = inner.coefficient_sum
    if g.truncation_tail_bound > 0:
        vg = g.tail_valuation or g.max_degree + 1
        if s_in < 1.0:
            # discarded outer terms g_k * inner^k, k > deg(g), have valuation > cap
            err += g.truncation_tail_bound * s_in**vg / (1.0 - s_in)
        else:
            tail = math.inf
    if g.coefficient_error_bound > 0:
        if s_in < 1.0:
            err += g.coefficient_error_bound / (1.0 - s_in)
        else:
            tail = math.inf
    return replace(
        acc,
        truncation_tail_bound=tail,
        coefficient_error_bound=err,
    )


def extract_coefficients(
    sampler: Callable,
    dimension: int,
    degree: int,
    rho: float = 0.8,
    samples_per_axis: int | None = None,
) -> TruncatedPowerSeries:
    """Coefficients of a holomorphic map by torus sampling.

    Discretizes the Cauchy integral on the polytorus of radius `rho` with a
    uniform grid of `samples_per_axis` points per axis:

        c_alpha ~ N^-n * sum_j sampler(rho e^{i theta_j}) e^{-i<alpha,theta_j>} rho^{-|alpha|}

    The sampler receives a tuple of coordinate values; each coordinate is
    either a scalar or an ndarray (vectorized samplers are used directly,
    scalar ones through a grid loop).  The aliasing bound
    ``sup|sampler| * rho^(N-d) / (1-rho)`` is recorded on the result.
    """
    if dimension < 1:
        raise ValueError("dimension must be >= 1")
    if not 0.0 < rho < 1.0:
        raise ValueError(f"sampling radius must lie in (0, 1), got {rho}")
    n_samples = samples_per_axis if samples_per_axis is not None else 2 * degree + 1
    if n_samples <= degree:
        raise ValueError(
            f"samples per axis ({n_samples}) must exceed the degree ({degree})"
        )
    theta = 2.0 * np.pi * np.arange(n_samples) / n_samples
    ring = rho * np.exp(1j * theta)
    axes = np.meshgrid(*([ring] * dimension), indexing="ij")
    try:
        values = np.asarray(sampler(tuple(axes)), dtype=complex)
        if values.shape != axes[0].shape:
            raise TypeError
    except TypeError:
        values = np.empty(axes[0].shape, dtype=complex)
        for idx in np.ndindex(*values.shape):
            values[idx] = sampler(tuple(complex(a[idx]) for a in axes))
    spectrum = np.fft.fftn(values) / float(n_samples**dimension)

    coeffs = {}
    for alpha in degree_indices(dimension, degree):
        coeffs[alpha] = complex(spectrum[alpha]) * rho ** (-total_degree(alpha))
    sup = float(np.max(np.abs(values)))
    alias = sup * rho ** (n_samples - degree) / (1.0 - rho)
    return TruncatedPowerSeries(dimension, degree, coeffs, alias, 0)


# -- text serialization -------------------------------------------------------


def to_text(f: TruncatedPowerSeries) -> str:
    """One line `n d`, then one line per coefficient: `a_1 ... a_n re im`."""
    lines = [f"{f.dimension} {f.max_degree}"]
    for alpha, c in f.ordered_items():
        parts = [str(a) for a in alpha]
        parts.append(f"{c.real:.17g}")
        parts.append(f"{c.imag:.17g}")
        lines.append(" ".join(parts))
    return "\n".join(lines) + "\n"


def from_text(text: str) -> TruncatedPowerSeries:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty series record")
    head = lines[0].split()
    if len(head) != 2:
        raise ValueError(f"malformed header: {lines[0]!r}")
    n, d = int(head[0]), int(head[1])
    coeffs = {}
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != n + 2:
            raise ValueError(f"malformed coefficient line: {ln!r}")
        alpha = tuple(int(p) for p in parts[:n])
        coeffs[alpha] = complex(float(parts[n]), float(parts[n + 1]))
    return TruncatedPowerSeries(n, d, coeffs)
