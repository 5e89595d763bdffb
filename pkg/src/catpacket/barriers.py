"""Barrier transmission models: rectangular, Breit-Wigner, and exact piecewise-constant.

All models produce the momentum filter |T(p)|^2 applied to transmitted wave
packets.  The exact model also exposes complex scattering amplitudes and a
resonance extractor that reduces a sharply peaked |T(E)|^2 to (E_r, Gamma)
pairs usable by the Breit-Wigner closed forms.
"""

import logging
from dataclasses import dataclass
from typing import Union

import numpy as np

from .exceptions import UnsupportedModelError
from .kernels import transfer_scan
from .wavepacket import Linear, Quadratic, energy

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RectangularBarrier:
    """Flat barrier of height V on [left, right]; only |T|^2 is exposed."""

    height: float
    left: float
    right: float

    def __post_init__(self):
        if not self.height > 0.0:
            raise ValueError(f"barrier height must be positive, got {self.height}")
        if not self.right > self.left:
            raise ValueError("barrier must have positive width")

    @property
    def width(self):
        return self.right - self.left


@dataclass(frozen=True)
class Resonance:
    """Narrow transmission resonance at energy `energy` with half-width `width`."""

    energy: float
    width: float

    def __post_init__(self):
        if not self.width > 0.0:
            raise ValueError(f"resonance width must be positive, got {self.width}")
        if not self.energy > self.width:
            raise ValueError(
                f"narrow-resonance regime requires width < energy, got "
                f"width={self.width}, energy={self.energy}"
            )


@dataclass(frozen=True)
class BreitWignerModel:
    """Transmission as a sum of Lorentzian resonances, clamped at one."""

    resonances: tuple

    def __post_init__(self):
        res = tuple(self.resonances)
        object.__setattr__(self, "resonances", res)
        if len(res) == 0:
            raise ValueError("at least one resonance is required")
        energies = [r.energy for r in res]
        if any(b <= a for a, b in zip(energies, energies[1:])):
            raise ValueError("resonance energies must be strictly increasing")


@dataclass(frozen=True)
class PiecewiseConstantPotential:
    """Contiguous constant segments (left, right, height); empty means free space."""

    segments: tuple

    def __post_init__(self):
        segs = tuple((float(a), float(b), float(v)) for a, b, v in self.segments)
        object.__setattr__(self, "segments", segs)
        for a, b, _ in segs:
            if not b > a:
                raise ValueError(f"segment [{a}, {b}] must have positive width")
        for (_, b0, _), (a1, _, _) in zip(segs, segs[1:]):
            scale = max(abs(b0), abs(a1), 1.0)
            if abs(a1 - b0) > 1e-12 * scale:
                raise ValueError(f"segments must be contiguous, found gap between {b0} and {a1}")

    @property
    def support(self):
        if not self.segments:
            return (0.0, 0.0)
        return (self.segments[0][0], self.segments[-1][1])


BarrierModel = Union[RectangularBarrier, BreitWignerModel, PiecewiseConstantPotential]


def _sinhc2(u):
    """sinh(sqrt(u))^2 / u continued through u = 0 (sin^2 for u < 0); entire in u."""
    u = np.asarray(u, dtype=np.float64)
    out = np.empty_like(u)
    small = np.abs(u) < 1e-6
    pos = (u > 0.0) & ~small
    neg = (u < 0.0) & ~small
    us = u[small]
    out[small] = 1.0 + us / 3.0 + 2.0 * us * us / 45.0
    with np.errstate(over="ignore"):
        rp = np.sqrt(u[pos])
        out[pos] = np.sinh(rp) ** 2 / u[pos]
    rn = np.sqrt(-u[neg])
    out[neg] = np.sin(rn) ** 2 / (-u[neg])
    return out


def rect_transmission_prob(barrier, disp, p):
    """|T(p)|^2 of a rectangular barrier for a massive particle.

    Continuous across E = V (the evanescent and oscillatory branches meet at
    1 / (1 + mu V d^2 / 2)) and monotonically increasing in E below the top.
    """
    if not isinstance(disp, Quadratic):
        raise UnsupportedModelError("rectangular transmission requires quadratic dispersion")
    p = np.asarray(p, dtype=np.float64)
    e = energy(disp, p)
    d = barrier.width
    v = barrier.height
    u = 2.0 * disp.mu * (v - e) * d * d
    with np.errstate(divide="ignore", invalid="ignore"):
        term = v * v * disp.mu * d * d * _sinhc2(u) / (2.0 * e)
        t2 = 1.0 / (1.0 + term)
    t2 = np.where(e > 0.0, t2, 0.0)
    return float(t2) if t2.ndim == 0 else t2


def _bw_raw_sum(resonances, disp, p):
    e = energy(disp, np.asarray(p, dtype=np.float64))
    total = np.zeros_like(e)
    for res in resonances:
        de = e - res.energy
        total += res.width**2 / (de * de + res.width**2)
    return total


def bw_transmission_prob(resonances, disp, p):
    """Sum of Lorentzian transmission peaks, clamped at one."""
    if len(resonances) == 0:
        raise ValueError("at least one resonance is required")
    total = _bw_raw_sum(resonances, disp, p)
    n_clamped = int(np.count_nonzero(total > 1.0))
    if n_clamped:
        logger.debug("clamped %d of %d grid points where Lorentzians overlap", n_clamped, total.size)
    t2 = np.minimum(total, 1.0)
    return float(t2) if t2.ndim == 0 else t2


def bw_excess_count(resonances, disp, p):
    """Number of grid points where the unclamped Lorentzian sum exceeds one."""
    if len(resonances) == 0:
        raise ValueError("at least one resonance is required")
    return int(np.count_nonzero(_bw_raw_sum(resonances, disp, p) > 1.0))


def _momenta_at(disp, e):
    e = np.asarray(e, dtype=np.float64)
    if isinstance(disp, Quadratic):
        return np.sqrt(2.0 * disp.mu * np.maximum(e, 0.0))
    return e / disp.c


def bw_clamp_boundaries(resonances, disp, p_lo, p_hi, n_scan=8192):
    """Momenta where the unclamped Lorentzian sum crosses one.

    The clamp in bw_transmission_prob leaves |T|^2 merely continuous at these
    points; quadrature grids must break panels on them or they lose their
    fast convergence.  A coarse scan brackets wide crossings; around each
    peak, where the neighbours' tails t_j push the sum above one only within
    |E - E_j| ~ Gamma_j sqrt(t_j), a fine local scan resolves the narrow
    bracket pair before bisection.
    """
    if len(resonances) < 2 or not p_hi > p_lo:
        return []
    grids = [np.linspace(p_lo, p_hi, n_scan + 1)]
    for j, res in enumerate(resonances):
        t_other = sum(
            r.width**2 / ((res.energy - r.energy) ** 2 + r.width**2)
            for i, r in enumerate(resonances)
            if i != j
        )
        if not 1e-12 < t_other < 1.0:
            continue
        half = 5.0 * res.width * np.sqrt(t_other / (1.0 - t_other))
        e_loc = np.linspace(res.energy - half, res.energy + half, 401)
        p_loc = _momenta_at(disp, e_loc[e_loc > 0.0])
        branches = (p_loc, -p_loc) if isinstance(disp, Quadratic) else (p_loc,)
        for branch in branches:
            inside = branch[(branch > p_lo) & (branch < p_hi)]
            if inside.size:
                grids.append(inside)
    p = np.unique(np.concatenate(grids))
    s = _bw_raw_sum(resonances, disp, p) - 1.0
    out = [float(p[i]) for i in np.nonzero(s == 0.0)[0]]
    for i in np.nonzero(np.sign(s[:-1]) * np.sign(s[1:]) < 0)[0]:
        a, b = float(p[i]), float(p[i + 1])
        fa = float(s[i])
        for _ in range(80):
            mid = 0.5 * (a + b)
            fm = float(_bw_raw_sum(resonances, disp, np.array([mid]))[0]) - 1.0
            if fm == 0.0:
                a = b = mid
                break
            if (fm > 0.0) == (fa > 0.0):
                a, fa = mid, fm
            else:
                b = mid
        out.append(0.5 * (a + b))
    return sorted(out)


def bw_transmission_amp(res, disp, p):
    """Single-resonance amplitude i Gamma / [(E - E_r) + i Gamma]; unit modulus on peak."""
    e = energy(disp, np.asarray(p, dtype=np.float64))
    amp = 1j * res.width / ((e - res.energy) + 1j * res.width)
    return complex(amp) if amp.ndim == 0 else amp


def exact_scattering(pot, mu, p):
    """Complex (T, R) amplitudes of a piecewise-constant potential at momentum p > 0.

    Flux is conserved exactly in the underlying propagator algebra, so
    |T|^2 + |R|^2 = 1 to rounding.  The formulation is regular at energies
    equal to a segment height; opaque barriers underflow to T = 0.
    """
    if not mu > 0.0:
        raise ValueError(f"mass must be positive, got {mu}")
    p_arr = np.atleast_1d(np.asarray(p, dtype=np.float64))
    if np.any(p_arr <= 0.0):
        raise ValueError("scattering requires p > 0")
    widths = np.array([b - a for a, b, _ in pot.segments], dtype=np.float64)
    heights = np.array([v for _, _, v in pot.segments], dtype=np.float64)
    x_left, x_right = pot.support
    t_amp, r_amp = transfer_scan(p_arr, mu, widths, heights, x_left, x_right - x_left)
    if np.ndim(p) == 0:
        return complex(t_amp[0]), complex(r_amp[0])
    return t_amp, r_amp


def transmission_filter(model, disp, p):
    """|T(p)|^2 for any barrier model under the given dispersion."""
    if isinstance(model, RectangularBarrier):
        return rect_transmission_prob(model, disp, p)
    if isinstance(model, BreitWignerModel):
        return bw_transmission_prob(model.resonances, disp, p)
    if isinstance(model, PiecewiseConstantPotential):
        if not isinstance(disp, Quadratic):
            raise UnsupportedModelError("exact scattering requires quadratic dispersion")
        t_amp, _ = exact_scattering(model, disp.mu, p)
        t2 = np.abs(t_amp) ** 2
        return float(t2) if np.ndim(p) == 0 else t2
    raise UnsupportedModelError(f"unknown barrier model {type(model).__name__}")


def _parabola_vertex(x, y):
    """Vertex of the parabola through three points; falls back to the middle one."""
    denom = (y[0] - 2.0 * y[1] + y[2])
    if denom == 0.0 or not np.isfinite(denom):
        return x[1], y[1]
    delta = 0.5 * (y[0] - y[2]) / denom
    delta = float(np.clip(delta, -1.0, 1.0))
    h = x[1] - x[0]
    xv = x[1] + delta * h
    yv = y[1] - 0.25 * (y[0] - y[2]) * delta
    return xv, yv


def _half_crossing(e_grid, t2, i_peak, half, direction):
    """Energy where t2 falls through `half` walking away from the peak, or None."""
    i = i_peak
    n = t2.shape[0]
    while 0 <= i + direction < n:
        j = i + direction
        if t2[j] < half:
            frac = (t2[i] - half) / (t2[i] - t2[j])
            return e_grid[i] + frac * (e_grid[j] - e_grid[i])
        i = j
    return None


def _refine_peak(t2_of, e_min, e_max, e_center, h_start, n_local=801, max_rounds=60):
    """Iteratively zoom on one |T(E)|^2 peak until its half-width is resolved."""
    a = max(e_min, e_center - 2.0 * h_start)
    b = min(e_max, e_center + 2.0 * h_start)
    for _ in range(max_rounds):
        grid = np.linspace(a, b, n_local)
        vals = t2_of(grid)
        i = int(np.argmax(vals))
        if i == 0 or i == n_local - 1:
            # peak slid outside the window: recenter, keep the width
            w = b - a
            center = grid[i]
            a = max(e_min, center - w / 2.0)
            b = min(e_max, center + w / 2.0)
            if b - a <= 0.0:
                return None
            continue
        e_peak, height = _parabola_vertex(grid[i - 1 : i + 2], vals[i - 1 : i + 2])
        half = height / 2.0
        lo = _half_crossing(grid, vals, i, half, -1)
        hi = _half_crossing(grid, vals, i, half, +1)
        if lo is None or hi is None:
            w = b - a
            new_a = max(e_min, a - w) if lo is None else a
            new_b = min(e_max, b + w) if hi is None else b
            if new_a == a and new_b == b:
                return None
            a, b = new_a, new_b
            continue
        width = hi - lo
        spacing = grid[1] - grid[0]
        if width < 16.0 * spacing:
            a = max(e_min, lo - width)
            b = min(e_max, hi + width)
            continue
        return e_peak, height, width / 2.0
    return None


def find_resonances(pot, mu, e_min, e_max, n_scan=4001):
    """Locate narrow transmission resonances of an exact potential in [e_min, e_max].

    Scans |T(E)|^2 on a dense grid, zooms on each local maximum until the
    half-maximum crossings are resolved, and reports Lorentzian parameters
    (parabolic peak position, half width at half maximum).  Peaks whose
    fitted width violates the narrow-resonance regime are dropped.  Scan
    density limits detectability: peaks much narrower than the initial grid
    spacing can be missed, so choose n_scan accordingly.
    """
    if not (0.0 < e_min < e_max):
        raise ValueError(f"need 0 < e_min < e_max, got ({e_min}, {e_max})")

    def t2_of(e_grid):
        p_grid = np.sqrt(2.0 * mu * e_grid)
        t_amp, _ = exact_scattering(pot, mu, p_grid)
        return np.abs(t_amp) ** 2

    grid = np.linspace(e_min, e_max, n_scan)
    t2 = t2_of(grid)
    inner = t2[1:-1]
    is_peak = (inner > t2[:-2]) & (inner >= t2[2:]) & (inner > 1e-10)
    candidates = np.nonzero(is_peak)[0] + 1
    spacing = grid[1] - grid[0]

    found = []
    for idx in candidates:
        fit = _refine_peak(t2_of, e_min, e_max, grid[idx], spacing)
        if fit is None:
            logger.debug("discarded unresolvable peak near E=%g", grid[idx])
            continue
        e_peak, height, gamma = fit
        if not (0.0 < gamma < e_peak):
            logger.debug("discarded wide peak at E=%g (gamma=%g)", e_peak, gamma)
            continue
        found.append((e_peak, height, gamma))

    # zoom windows started from distinct coarse maxima can converge to one peak
    found.sort(key=lambda f: f[0])
    merged = []
    for e_peak, height, gamma in found:
        if merged and abs(e_peak - merged[-1][0]) < max(gamma, merged[-1][2]):
            if height > merged[-1][1]:
                merged[-1] = (e_peak, height, gamma)
            continue
        merged.append((e_peak, height, gamma))
    return [Resonance(e, g) for e, _, g in merged]


def lorentzian_fit_quality(pot, mu, res, n_samples=201):
    """RMS agreement in [0, 1] between |T(E)|^2 and the fitted Lorentzian near a peak."""

    def t2_of(e_grid):
        p_grid = np.sqrt(2.0 * mu * e_grid)
        t_amp, _ = exact_scattering(pot, mu, p_grid)
        return np.abs(t_amp) ** 2

    e_lo = max(res.energy - 3.0 * res.width, res.energy / 2.0)
    e_hi = res.energy + 3.0 * res.width
    grid = np.linspace(e_lo, e_hi, n_samples)
    measured = t2_of(grid)
    height = float(t2_of(np.array([res.energy]))[0])
    model = height * res.width**2 / ((grid - res.energy) ** 2 + res.width**2)
    rms = float(np.sqrt(np.mean((measured - model) ** 2)))
    return max(0.0, 1.0 - rms / max(height, 1e-300))
