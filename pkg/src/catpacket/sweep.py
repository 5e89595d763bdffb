"""Delay sweeps and curve diagnostics for equal-spacing packet trains.

run_sweep drives the quadrature engine over a grid of component spacings and
collects the transmission probability, its incoherent baseline, the
interference correction, and the residual overlap between the initial
components.  Analytic overlay curves can be attached when the barrier is a
resonance model.  The extract_* helpers reduce a swept correction curve to a
few numbers: oscillation frequency and decay rate, beat node positions, peak
locations.
"""

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .barriers import BreitWignerModel
from .exceptions import ApproximationWarning, InsufficientDataError
from .overlap import (
    QuadratureConfig,
    independent_probability,
    initial_overlap,
    interference_correction,
    offdiag_overlap_mass,
    transmission_probability,
    transmitted_overlap,
)
from .resonance import (
    ResonanceCoupling,
    closed_form_correction,
    large_n_correction,
    two_res_envelope_correction,
)
from .wavepacket import CatStateSpec

OVERLAY_NAMES = ("analytic_closed_form", "analytic_large_n", "analytic_envelope")


@dataclass(frozen=True)
class SweepSpec:
    """One spacing sweep: train shape, barrier, grid, optional overlays.

    focus_resonances seeds the quadrature grid with extra panels around
    narrow structures of an exact barrier; resonance models place their own.
    """

    profile: object
    n_components: int
    barrier: object
    dispersion: object
    tau_min: float
    tau_max: float
    tau_points: int
    cfg: QuadratureConfig = QuadratureConfig()
    overlays: tuple = ()
    focus_resonances: tuple = ()
    # launch offsets per unit spacing; () means the uniform train 0, 1, ..., n-1
    delay_pattern: tuple = ()

    def __post_init__(self):
        if self.n_components < 1:
            raise ValueError(f"component count must be >= 1, got {self.n_components}")
        if self.tau_min < 0.0:
            raise ValueError(f"spacing grid must start at >= 0, got {self.tau_min}")
        if self.tau_points < 1:
            raise ValueError(f"spacing grid needs >= 1 points, got {self.tau_points}")
        if self.tau_points > 1 and not self.tau_max > self.tau_min:
            raise ValueError(
                f"spacing grid needs tau_max > tau_min, got [{self.tau_min}, {self.tau_max}]"
            )
        if self.delay_pattern:
            if len(self.delay_pattern) != self.n_components:
                raise ValueError(
                    f"delay pattern length {len(self.delay_pattern)} "
                    f"does not match {self.n_components} components"
                )
            if self.delay_pattern[0] != 0.0:
                raise ValueError(
                    f"delay pattern must start at 0, got {self.delay_pattern[0]}"
                )
            for a, b in zip(self.delay_pattern, self.delay_pattern[1:]):
                if b < a:
                    raise ValueError(f"delay pattern must be non-decreasing, got {b} after {a}")
        for name in self.overlays:
            if name not in OVERLAY_NAMES:
                raise ValueError(f"unknown overlay {name!r}, expected one of {OVERLAY_NAMES}")
        if self.overlays:
            if not isinstance(self.barrier, BreitWignerModel):
                raise ValueError("analytic overlays require a resonance barrier model")
            if self.delay_pattern and tuple(self.delay_pattern) != tuple(
                float(k) for k in range(self.n_components)
            ):
                raise ValueError("analytic overlays assume the uniform train")
        if "analytic_envelope" in self.overlays:
            if len(self.barrier.resonances) != 2:
                raise ValueError("analytic_envelope needs exactly two resonances")
            if self.n_components != 2:
                raise ValueError("analytic_envelope is a two-component form")

    def taus(self):
        return np.linspace(self.tau_min, self.tau_max, self.tau_points)

    def train_at(self, tau):
        """The cat-state spec whose components are spaced by tau."""
        if self.delay_pattern:
            delays = tuple(float(f) * float(tau) for f in self.delay_pattern)
            return CatStateSpec(profile=self.profile, delays=delays)
        return CatStateSpec.equal_delays(self.profile, self.n_components, float(tau))


@dataclass
class SweepResult:
    """Curves over the spacing grid, plus overlays and run metadata."""

    taus: np.ndarray
    p_t: np.ndarray
    p_t_ind: np.ndarray
    delta_p: np.ndarray
    offdiag_overlap: np.ndarray
    overlays: dict = field(default_factory=dict)
    diagnostics: dict = field(default_factory=dict)


def _overlay_curves(spec, taus):
    """Evaluate requested analytic correction curves, normalized per component."""
    out = {}
    if not spec.overlays:
        return out
    res = spec.barrier.resonances
    coups = [ResonanceCoupling.from_resonance(r, spec.profile, spec.dispersion) for r in res]
    n = spec.n_components
    with warnings.catch_warnings():
        # pointwise validity warnings would repeat per grid point; re-issued
        # once per curve below instead
        warnings.simplefilter("ignore", ApproximationWarning)
        for name in spec.overlays:
            vals = np.empty_like(taus)
            for i, tau in enumerate(taus):
                if name == "analytic_closed_form":
                    vals[i] = sum(
                        closed_form_correction(r, c, n, tau) for r, c in zip(res, coups)
                    ) / n
                elif name == "analytic_large_n":
                    vals[i] = sum(
                        large_n_correction(r, c, n, tau) for r, c in zip(res, coups)
                    ) / n
                else:
                    vals[i] = two_res_envelope_correction(res[0], res[1], coups[0], tau)
            out[name] = vals
    if "analytic_large_n" in out and n < 20:
        warnings.warn(
            f"analytic_large_n evaluated at n = {n}; accuracy degrades below n = 20",
            ApproximationWarning,
            stacklevel=3,
        )
    if "analytic_envelope" in out:
        mismatch = abs(float(taus[-1]) * (res[0].width - res[1].width))
        if mismatch > 0.3:
            warnings.warn(
                "analytic_envelope: width mismatch |tau*(Gamma_a-Gamma_b)| reaches "
                f"{mismatch:.3g} by the end of the grid; the single-decay envelope "
                "is unreliable there",
                ApproximationWarning,
                stacklevel=3,
            )
    return out


def run_sweep(spec):
    """Run the quadrature pipeline at every spacing of the grid."""
    taus = spec.taus()
    n_pts = taus.size
    p_t = np.empty(n_pts)
    p_t_ind = np.empty(n_pts)
    delta_p = np.empty(n_pts)
    offdiag = np.empty(n_pts)
    for i, tau in enumerate(taus):
        cat = spec.train_at(tau)
        initial = initial_overlap(cat, spec.dispersion, spec.cfg)
        transmitted = transmitted_overlap(
            cat, spec.dispersion, spec.barrier, spec.cfg, focus=spec.focus_resonances
        )
        p_t[i] = transmission_probability(initial, transmitted)
        p_t_ind[i] = independent_probability(transmitted)
        delta_p[i] = interference_correction(initial, transmitted)
        offdiag[i] = offdiag_overlap_mass(initial)
    if p_t.size and (p_t.min() < -1e-8 or p_t.max() > 1.0 + 1e-8):
        warnings.warn(
            f"transmission probability leaves [0, 1]: range [{p_t.min():.3g}, {p_t.max():.3g}]",
            ApproximationWarning,
            stacklevel=2,
        )
    result = SweepResult(
        taus=taus,
        p_t=p_t,
        p_t_ind=p_t_ind,
        delta_p=delta_p,
        offdiag_overlap=offdiag,
        overlays=_overlay_curves(spec, taus),
    )
    result.diagnostics = {
        "n_components": spec.n_components,
        "tau_range": [float(taus[0]), float(taus[-1])],
        "tau_points": int(n_pts),
        "p_t_range": [float(p_t.min()), float(p_t.max())],
        "max_offdiag_overlap": float(offdiag.max()),
        "separation_tau": overlap_threshold(result),
    }
    return result


def overlap_threshold(result, eps=0.005):
    """Smallest grid spacing beyond which the components stay separated.

    Returns the first tau from which offdiag_overlap remains below eps to the
    end of the grid, or None when the last point still overlaps.
    """
    mass = result.offdiag_overlap
    if mass.size == 0 or not mass[-1] < eps:
        return None
    i = mass.size - 1
    while i > 0 and mass[i - 1] < eps:
        i -= 1
    return float(result.taus[i])


def _parabolic_refine(x, y, i):
    """Vertex of the parabola through points i-1, i, i+1; clamps to the triple."""
    x0, x1, x2 = x[i - 1], x[i], x[i + 1]
    y0, y1, y2 = y[i - 1], y[i], y[i + 1]
    denom = (y0 - 2.0 * y1 + y2)
    if denom == 0.0:
        return float(x1), float(y1)
    # uniform-spacing vertex offset in units of the local step
    shift = 0.5 * (y0 - y2) / denom
    shift = min(1.0, max(-1.0, shift))
    step = 0.5 * (x2 - x0)
    xv = x1 + shift * step
    yv = y1 - 0.25 * (y0 - y2) * shift
    return float(xv), float(yv)


def _zero_crossings(taus, vals):
    """Linearly interpolated zero positions of a sampled curve."""
    out = []
    for i in range(vals.size - 1):
        a, b = vals[i], vals[i + 1]
        if a == 0.0:
            out.append(float(taus[i]))
        elif a * b < 0.0:
            out.append(float(taus[i] - a * (taus[i + 1] - taus[i]) / (b - a)))
    if vals.size and vals[-1] == 0.0:
        out.append(float(taus[-1]))
    return np.asarray(out)


def _lobe_extrema(taus, vals, crossings):
    """One refined |extremum| per lobe between consecutive zero crossings."""
    positions = []
    heights = []
    bounds = np.searchsorted(taus, crossings)
    for seg in range(len(crossings) - 1):
        lo, hi = bounds[seg], bounds[seg + 1]
        if hi - lo < 1:
            continue
        k = lo + int(np.argmax(np.abs(vals[lo:hi])))
        if k <= 0 or k >= vals.size - 1:
            continue
        xv, yv = _parabolic_refine(taus, vals, k)
        positions.append(xv)
        heights.append(abs(yv))
    return np.asarray(positions), np.asarray(heights)


def _window_slice(result, tau_min, tau_max):
    if tau_min is None:
        tau_min = overlap_threshold(result)
        if tau_min is None:
            tau_min = float(result.taus[0])
    if tau_max is None:
        tau_max = float(result.taus[-1])
    keep = (result.taus >= tau_min) & (result.taus <= tau_max)
    return result.taus[keep], result.delta_p[keep]


@dataclass(frozen=True)
class OscillationFit:
    frequency: float
    decay_rate: float
    n_crossings: int
    n_extrema: int


def extract_oscillation(result, tau_min=None, tau_max=None):
    """Frequency and decay rate of a damped interference oscillation.

    Works on the delta_p curve restricted to [tau_min, tau_max]; tau_min
    defaults to the separation threshold so the fit only sees the clean
    exponential-times-cosine regime.  Frequency comes from the mean zero
    crossing spacing, decay from a log-linear fit of the refined lobe heights.
    """
    taus, vals = _window_slice(result, tau_min, tau_max)
    crossings = _zero_crossings(taus, vals)
    if crossings.size < 4:
        raise InsufficientDataError(
            f"need >= 4 zero crossings for a frequency estimate, found {crossings.size}"
        )
    spacing = np.diff(crossings)
    freq = math.pi / float(spacing.mean())
    positions, heights = _lobe_extrema(taus, vals, crossings)
    good = heights > 0.0
    if good.sum() < 2:
        raise InsufficientDataError(
            f"need >= 2 interior extrema for a decay estimate, found {int(good.sum())}"
        )
    slope, _ = np.polyfit(positions[good], np.log(heights[good]), 1)
    return OscillationFit(
        frequency=freq,
        decay_rate=-float(slope),
        n_crossings=int(crossings.size),
        n_extrema=int(good.sum()),
    )


@dataclass(frozen=True)
class BeatFit:
    carrier_frequency: float
    beat_frequency: float
    node_positions: tuple


def extract_beat(result, tau_min=None, tau_max=None):
    """Carrier frequency and beat envelope nodes of a two-resonance correction.

    The carrier is read from zero crossings exactly as in extract_oscillation.
    Envelope samples are the refined lobe heights; their squared minima locate
    the envelope nodes, and the beat half-frequency is pi over the median node
    spacing (a single node yields beat_frequency = nan).
    """
    taus, vals = _window_slice(result, tau_min, tau_max)
    crossings = _zero_crossings(taus, vals)
    if crossings.size < 4:
        raise InsufficientDataError(
            f"need >= 4 zero crossings for a carrier estimate, found {crossings.size}"
        )
    carrier = math.pi / float(np.diff(crossings).mean())
    positions, heights = _lobe_extrema(taus, vals, crossings)
    if positions.size < 3:
        raise InsufficientDataError(
            f"need >= 3 envelope samples to find nodes, found {positions.size}"
        )
    h2 = heights**2
    nodes = []
    for i in range(1, h2.size - 1):
        if h2[i] > h2[i - 1] or h2[i] > h2[i + 1]:
            continue
        # a genuine node dips well below its neighbours; sampling ripple does not
        if h2[i] >= 0.5 * max(h2[i - 1], h2[i + 1]):
            continue
        xv, _ = _parabolic_refine(positions, h2, i)
        nodes.append(xv)
    if not nodes:
        raise InsufficientDataError("no envelope nodes inside the fit window")
    if len(nodes) >= 2:
        beat = math.pi / float(np.median(np.diff(np.asarray(nodes))))
    else:
        beat = math.nan
    return BeatFit(
        carrier_frequency=carrier,
        beat_frequency=beat,
        node_positions=tuple(nodes),
    )


def locate_peaks(result, column="delta_p", min_height_factor=3.0):
    """Refined positions and heights of the isolated maxima of a swept curve.

    column names either a SweepResult field (delta_p, p_t, p_t_ind,
    offdiag_overlap) or an attached overlay.  Returns a list of
    (position, height) pairs ordered by position.
    """
    if column in result.overlays:
        values = result.overlays[column]
    elif hasattr(result, column):
        values = getattr(result, column)
    else:
        raise ValueError(f"no swept column named {column!r}")
    pos, height = peaks_on_curve(result.taus, values, min_height_factor)
    return list(zip(pos.tolist(), height.tolist()))


def peaks_on_curve(taus, values, min_height_factor=3.0):
    """Refined positions and heights of isolated maxima of a sampled curve.

    A sample counts as a peak when it tops both neighbours and exceeds
    min_height_factor times the median absolute level.  Returns two arrays
    (positions, heights), empty when nothing clears the bar.
    """
    taus = np.asarray(taus, dtype=np.float64)
    values = np.asarray(values, dtype=np.float64)
    if taus.shape != values.shape:
        raise ValueError(f"grid and values must match, got {taus.shape} vs {values.shape}")
    finite = np.isfinite(values)
    floor = min_height_factor * float(np.median(np.abs(values[finite]))) if finite.any() else 0.0
    positions = []
    heights = []
    for i in range(1, values.size - 1):
        trip = values[i - 1 : i + 2]
        if not np.isfinite(trip).all():
            continue
        if values[i] > values[i - 1] and values[i] >= values[i + 1] and values[i] > floor:
            xv, yv = _parabolic_refine(taus, values, i)
            positions.append(xv)
            heights.append(yv)
    return np.asarray(positions), np.asarray(heights)
