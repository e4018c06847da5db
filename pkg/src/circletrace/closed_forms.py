"""Closed-form trace sequences, integral-kernel quadrature and scalar kernels.

Sign conventions are explicit in every returned expression string, because
the two natural operator expressions differ by a sign:

    tr(P a (1-P) b P)  ~  +(1/log M) * sum_{k<=M} k a_k b_{-k}
    P [P,a] [P,b]      ~  the same sum with a leading minus.

All sequences here carry their evaluation points, so sparse sampling along
lacunary scales (powers of gamma up to 2^40 and beyond) costs nothing.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial as npoly

from .errors import ParameterError
from .fourier import (
    CoefficientRule,
    FourierSymbol,
    circle_grid,
    hardy_split,
    sample_to_symbol,
    symbol_eval,
)
from .operators import commutator_matrix, szego_reflection

__all__ = [
    "TraceSequence",
    "KernelParams",
    "WindingReport",
    "fourier_side_trace",
    "symmetric_fourier_trace",
    "weierstrass_trace",
    "szego_square_kernel",
    "integral_trace",
    "sphere_kernel",
    "sphere_kernel_derivative",
    "winding_trace",
    "winding_report",
    "invert_symbol",
]


@dataclass(frozen=True)
class TraceSequence:
    """A sequence of values indexed by explicit truncation points."""

    points: np.ndarray
    values: np.ndarray
    expression: str
    normalization: str

    def __post_init__(self) -> None:
        pts = np.asarray(self.points, dtype=np.int64)
        vals = np.asarray(self.values)
        if pts.ndim != 1 or pts.shape != vals.shape:
            raise ParameterError("points and values must be matching 1-d arrays")
        pts.setflags(write=False)
        vals.setflags(write=False)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "values", vals)

    @property
    def size(self) -> int:
        return self.points.size


def _validate_points(points, n_trunc: int) -> np.ndarray:
    if points is None:
        if n_trunc < 2:
            raise ParameterError("truncation must be >= 2")
        return np.arange(2, n_trunc + 1, dtype=np.int64)
    pts = np.asarray(points, dtype=np.int64)
    if pts.ndim != 1 or pts.size == 0:
        raise ParameterError("points must be a nonempty 1-d integer array")
    if np.any(pts < 2) or np.any(np.diff(pts) <= 0):
        raise ParameterError("points must be strictly increasing and >= 2")
    if pts[-1] > n_trunc:
        raise ParameterError("points exceed the requested truncation")
    return pts


def fourier_side_trace(
    a: FourierSymbol, b: FourierSymbol, n_trunc: int, points=None
) -> TraceSequence:
    """M -> (1/log M) * sum_{k=0}^{M} k a_k b_{-k}.

    Complex in general; real when b is the conjugate symbol of a.
    """
    pts = _validate_points(points, n_trunc)
    ks = sorted(k for k in a.coeffs if k >= 1 and -k in b.coeffs and k <= n_trunc)
    terms = np.array([k * a.coeffs[k] * b.coeffs[-k] for k in ks], dtype=complex)
    cums = np.concatenate([[0j], np.cumsum(terms)])
    idx = np.searchsorted(ks, pts, side="right")
    values = cums[idx] / np.log(pts.astype(float))
    return TraceSequence(pts, values, "tr(P a (1-P) b P)", "1/log(M)")


def symmetric_fourier_trace(
    a: FourierSymbol, b: FourierSymbol, n_trunc: int, points=None
) -> TraceSequence:
    """M -> -(1/log M) * sum_{|k|<=M} |k| a_k b_{-k} (both mode signs)."""
    pts = _validate_points(points, n_trunc)
    ks = sorted(
        k
        for k in range(1, n_trunc + 1)
        if (k in a.coeffs and -k in b.coeffs) or (-k in a.coeffs and k in b.coeffs)
    )
    terms = np.array(
        [
            k * (a[k] * b[-k] + a[-k] * b[k])
            for k in ks
        ],
        dtype=complex,
    )
    cums = np.concatenate([[0j], np.cumsum(terms)])
    idx = np.searchsorted(ks, pts, side="right")
    values = -cums[idx] / np.log(pts.astype(float))
    return TraceSequence(pts, values, "tr([P,a][P,b])", "1/log(M)")


def _as_rule(c) -> CoefficientRule:
    if isinstance(c, CoefficientRule):
        return c
    return CoefficientRule.from_head(tuple(c), extension="constant")


def _gamma_power_points(gamma: int, n_trunc: int) -> np.ndarray:
    pts = []
    p = gamma
    while p <= n_trunc:
        pts.append(p)
        p *= gamma
    if not pts or pts[-1] != n_trunc:
        if n_trunc >= 2:
            pts.append(n_trunc)
    return np.asarray(pts, dtype=np.int64)


def weierstrass_trace(
    gamma: int, c, d, n_trunc: int, points=None
) -> TraceSequence:
    """Exact Fourier-side partial sums for a pair of alpha=1/2 lacunary symbols.

    M -> -(1/log M) * sum_{n : gamma^n <= M} c_n d_n.  Default points are the
    powers of gamma up to the truncation (plus the truncation itself), so very
    large scales stay cheap: the sum has one term per lacunary level.
    """
    if int(gamma) < 2:
        raise ParameterError(f"gamma must be >= 2, got {gamma}")
    gamma = int(gamma)
    if points is None:
        pts = _gamma_power_points(gamma, n_trunc)
        if pts.size == 0:
            raise ParameterError("truncation too small for one lacunary level")
    else:
        pts = _validate_points(points, n_trunc)
    powers = []
    p = 1
    while p <= n_trunc:
        powers.append(p)
        p *= gamma
    cn = _as_rule(c).values(len(powers))
    dn = _as_rule(d).values(len(powers))
    level_sums = np.cumsum(cn * dn)
    counts = np.array([bisect_right(powers, int(m)) for m in pts])
    values = -level_sums[counts - 1] / np.log(pts.astype(float))
    return TraceSequence(
        pts,
        values,
        "tr(P[P,W(1/2,gamma,c)][P,W(1/2,gamma,d)])",
        "1/log(M)",
    )


_KERNEL_SWITCH = 2.0**-20


def _ramp_polynomial(w: np.ndarray, n_trunc: int, switch: float) -> np.ndarray:
    """sum_{k=0}^{N} (k+1) w^k, stable on and off the w = 1 singularity.

    Away from w = 1 this is (1 - (N+2) w^(N+1) + (N+1) w^(N+2)) / (1-w)^2;
    within ``switch`` of w = 1 the explicit polynomial is summed instead.
    """
    w = np.asarray(w, dtype=complex)
    out = np.empty(w.shape, dtype=complex)
    dist = np.abs(1.0 - w)
    near = dist < switch
    far = ~near
    if np.any(far):
        wf = w[far]
        out[far] = (1.0 - (n_trunc + 2) * wf ** (n_trunc + 1) + (n_trunc + 1) * wf ** (n_trunc + 2)) / (
            1.0 - wf
        ) ** 2
    if np.any(near):
        wn = w[near]
        acc = np.full(wn.shape, n_trunc + 1.0, dtype=complex)
        for k in range(n_trunc - 1, -1, -1):
            acc = acc * wn + (k + 1)
        out[near] = acc
    return out


def szego_square_kernel(z, zeta, n_trunc: int):
    """(1/log N) * (1 - (z*zeta)^(N+1)) / (1 - z*zeta)^2.

    Near z*zeta = 1 (within 2^-20) the truncated power-series polynomial
    sum_{k<=N} (k+1) (z*zeta)^k is evaluated instead; at z*zeta = 1 exactly
    this returns the polynomial limit (N+1)(N+2) / (2 log N).
    """
    if n_trunc < 2:
        raise ParameterError("kernel truncation must be >= 2")
    w = np.asarray(z, dtype=complex) * np.asarray(zeta, dtype=complex)
    scalar = w.ndim == 0
    w = np.atleast_1d(w)
    out = np.empty(w.shape, dtype=complex)
    dist = np.abs(1.0 - w)
    near = dist < _KERNEL_SWITCH
    far = ~near
    if np.any(far):
        wf = w[far]
        out[far] = (1.0 - wf ** (n_trunc + 1)) / (1.0 - wf) ** 2
    if np.any(near):
        wn = w[near]
        acc = np.full(wn.shape, n_trunc + 1.0, dtype=complex)
        for k in range(n_trunc - 1, -1, -1):
            acc = acc * wn + (k + 1)
        out[near] = acc
    out /= math.log(n_trunc)
    return complex(out[0]) if scalar else out


@dataclass(frozen=True)
class KernelParams:
    """Kernel truncation, interior radius and quadrature resolution."""

    n_trunc: int
    r: float = 1.0 - 1e-6
    grid: int = 0  # 0 means the 8*N default

    def __post_init__(self) -> None:
        if self.n_trunc < 2:
            raise ParameterError("kernel truncation must be >= 2")
        if not (0.0 < self.r < 1.0):
            raise ParameterError(f"interior radius must lie in (0, 1), got {self.r}")
        grid = self.grid if self.grid else 8 * self.n_trunc
        if grid < 8 * self.n_trunc:
            raise ParameterError(
                f"grid of {grid} points is below the 8*N = {8 * self.n_trunc} floor"
            )
        object.__setattr__(self, "grid", int(grid))


def integral_trace(a: FourierSymbol, b: FourierSymbol, params: KernelParams) -> complex:
    """Double circle quadrature of a_+(conj zeta) b_-(z) against the kernel.

    Returns the value with the leading minus sign, i.e. the P[P,a][P,b]
    convention: the result approximates -(1/log N) sum_{l<=N} sum_{k>l}
    a_k b_{-k} as r -> 1.

    The quadrature weights carry the complex line elements of the two contour
    integrals (a factor z*zeta per point, volume normalized to 1), and the
    kernel enters through its truncated power series: the series tail beyond
    mode N is annihilated by band-limited integrands in the exact integral
    but would alias onto the grid, so it is dropped rather than sampled.
    """
    a_plus, _ = hardy_split(a)
    _, b_minus = hardy_split(b)
    n, r, grid = params.n_trunc, params.r, params.grid
    deg_a = max((k for k in a_plus.coeffs), default=0)
    deg_b = max((-k for k in b_minus.coeffs), default=0)
    band = max(deg_a, deg_b)
    if band > n + 1:
        raise ParameterError(
            f"symbol band {band} exceeds the kernel range N+1 = {n + 1}"
        )
    if grid <= n + 1 + band:
        raise ParameterError(
            f"grid of {grid} points is too coarse for band {band} at truncation {n}"
        )
    if not a_plus.coeffs or not b_minus.coeffs:
        return 0j
    angles = circle_grid(grid)
    a_vals = symbol_eval(a_plus, -angles)  # a_+(conj zeta) on the zeta grid
    b_vals = symbol_eval(b_minus, angles)  # b_-(z) on the z grid
    phase = np.exp(1j * np.add.outer(angles, angles))  # z * zeta
    kernel = _ramp_polynomial(r * phase, n, switch=1e-4)
    total = b_vals @ (phase * kernel) @ a_vals / grid**2
    return complex(-total / math.log(n))


def sphere_kernel(t, n_trunc: int, m: int):
    """Scalar sphere-diagonal kernel via its binomial sum.

    h_N(t) = (1/m) * sum_{k=0}^{N} C(k+m-1, m-1) (1-t)^k, so h_N(1) = 1/m and
    for m = 1 this is the geometric form (1 - (1-t)^(N+1)) / t.
    """
    if m < 1 or n_trunc < 0:
        raise ParameterError("sphere kernel needs m >= 1 and N >= 0")
    u = 1.0 - np.asarray(t, dtype=float)
    coeffs = np.array(
        [math.comb(k + m - 1, m - 1) for k in range(n_trunc + 1)], dtype=float
    )
    return npoly.polyval(u, coeffs) / m


def sphere_kernel_derivative(t, n_trunc: int, m: int):
    """Same kernel through the derivative route.

    Formally differentiates the geometric polynomial sum_{k=0}^{N+m-1} u^k
    (m-1) times, evaluates at u = 1-t and divides by m * (m-1)!.
    """
    if m < 1 or n_trunc < 0:
        raise ParameterError("sphere kernel needs m >= 1 and N >= 0")
    u = 1.0 - np.asarray(t, dtype=float)
    geom = np.ones(n_trunc + m, dtype=float)
    deriv = npoly.polyder(geom, m - 1) if m > 1 else geom
    return npoly.polyval(u, deriv) / (m * math.factorial(m - 1))


def invert_symbol(
    a: FourierSymbol, band_factor: int = 4, rel_floor: float = 1e-8
) -> tuple[FourierSymbol, float]:
    """Pointwise inverse re-projected to ``band_factor`` times the input band.

    Returns (inverse symbol, out-of-band residual), the residual being the
    l2 mass of the dropped high modes; it quantifies how well the inverse is
    represented inside the retained band.
    """
    band = max(a.n_max, 1)
    grid_size = 1 << max(int(math.ceil(math.log2(16 * band))), 6)
    samples = symbol_eval(a, circle_grid(grid_size))
    mods = np.abs(samples)
    if mods.min() <= rel_floor * mods.max():
        raise ParameterError(
            "symbol is not invertible on the circle (grid modulus reaches "
            f"{mods.min():.3e})"
        )
    inverse = sample_to_symbol(1.0 / samples)
    scale = max(abs(v) for v in inverse.coeffs.values())
    kept = inverse.restricted(band_factor * band).pruned(1e-14 * scale)
    dropped = sum(
        abs(v) ** 2 for k, v in inverse.coeffs.items() if abs(k) > band_factor * band
    )
    return kept, math.sqrt(dropped)


@dataclass(frozen=True)
class WindingReport:
    value: float
    nearest_integer: int
    imag_defect: float
    inverse_residual: float
    safe_band: int


def winding_report(a: FourierSymbol, n_trunc: int) -> WindingReport:
    """tr((2P-1) [P,a] [P,a^-1]) at truncation N with diagnostic metadata."""
    if n_trunc < 1:
        raise ParameterError("truncation size must be >= 1")
    inverse, residual = invert_symbol(a)
    refl = szego_reflection(n_trunc)
    ca = commutator_matrix(a, n_trunc)
    ci = commutator_matrix(inverse, n_trunc)
    tr = complex(
        np.einsum("i,ij,ji->", np.diagonal(refl.matrix), ca.matrix, ci.matrix)
    )
    safe_band = n_trunc - (a.n_max + inverse.n_max)
    return WindingReport(
        value=float(tr.real),
        nearest_integer=int(round(tr.real)),
        imag_defect=abs(tr.imag),
        inverse_residual=residual,
        safe_band=safe_band,
    )


def winding_trace(a: FourierSymbol, n_trunc: int) -> float:
    """Winding-number trace; equals minus the degree for invertible symbols."""
    return winding_report(a, n_trunc).value
