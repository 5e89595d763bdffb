"""Overlap matrices of delayed wave-packet components and transmission probabilities.

The central objects are two Hermitian n x n matrices built from momentum
quadrature: the initial overlaps  integral A_m(p) A_n(p) exp[i E(p) tau_mn] dp
and their transmitted counterparts carrying the barrier filter |T(p)|^2, with
tau_mn = t_m - t_n.  The composite Gauss-Legendre grid resolves the packet
envelope, the oscillatory phase at the largest lag in play, and any narrow
Breit-Wigner cores; a refined-grid comparison backs every assembly with an
error estimate checked against the configured tolerance.
"""

import math
from dataclasses import dataclass

import numpy as np

from .barriers import BreitWignerModel, bw_clamp_boundaries, transmission_filter
from .exceptions import (
    DegenerateNormalizationError,
    QuadratureAccuracyError,
    UnsupportedModelError,
)
from .kernels import oscillatory_sums
from .wavepacket import (
    GaussianProfile,
    Linear,
    Quadratic,
    amplitude,
    energy,
    momentum_at_energy,
)

_GL_ORDER = 16
_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(_GL_ORDER)
_MAX_NODES = 4_000_000
# panels laid across each Breit-Wigner core window of +-20 half-widths
_RES_WINDOW_PANELS = 80


@dataclass(frozen=True)
class QuadratureConfig:
    """Grid budget and accuracy target for the overlap integrals.

    n_points sets the baseline node count across the +-k_sigma/sigma window;
    the builder adds panels on top of it for phase resolution and resonance
    cores.  rel_tol bounds the estimated error relative to the matrix scale.
    """

    k_sigma: float = 10.0
    n_points: int = 4096
    rel_tol: float = 1e-8

    def __post_init__(self):
        if not self.k_sigma >= 6.0:
            raise ValueError(f"k_sigma must be >= 6, got {self.k_sigma}")
        n = self.n_points
        if n < 256 or (n & (n - 1)) != 0:
            raise ValueError(f"n_points must be a power of two >= 256, got {n}")
        if not self.rel_tol > 0.0:
            raise ValueError(f"rel_tol must be positive, got {self.rel_tol}")


@dataclass(frozen=True)
class OverlapMatrix:
    """Hermitian matrix of pairwise component overlaps."""

    values: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=np.complex128)
        if vals.ndim != 2 or vals.shape[0] != vals.shape[1]:
            raise ValueError(f"overlap matrix must be square, got shape {vals.shape}")
        object.__setattr__(self, "values", vals)

    @property
    def n(self):
        return self.values.shape[0]


@dataclass(frozen=True)
class MixedCatSpec:
    """Partially dephased two-component preparation.

    mixing = 0 keeps the coherent superposition intact, mixing = 1 degrades it
    to the incoherent 50/50 mixture; intermediate values scale the
    interference term linearly.
    """

    mixing: float

    def __post_init__(self):
        if not 0.0 <= self.mixing <= 1.0:
            raise ValueError(f"mixing must be in [0, 1], got {self.mixing}")


# ---------------------------------------------------------------------------
# grid construction
# ---------------------------------------------------------------------------


def _resonance_windows(disp, resonances, p_lo, p_hi):
    """Momentum windows of +-20 half-widths around each resonance, merged."""
    wins = []
    for res in resonances:
        if isinstance(disp, Quadratic):
            pr = momentum_at_energy(disp, res.energy)
            hw = 20.0 * res.width * disp.mu / pr
            centers = (pr, -pr)
        else:
            pr = momentum_at_energy(disp, res.energy)
            hw = 20.0 * res.width / disp.c
            centers = (pr,)
        for pc in centers:
            a = max(p_lo, pc - hw)
            b = min(p_hi, pc + hw)
            if b > a:
                wins.append((a, b, hw / (_RES_WINDOW_PANELS / 2.0)))
    if not wins:
        return []
    wins.sort()
    merged = [wins[0]]
    for a, b, target in wins[1:]:
        pa, pb, pt = merged[-1]
        if a <= pb:
            merged[-1] = (pa, max(pb, b), min(pt, target))
        else:
            merged.append((a, b, target))
    return merged


def _gl_panels(a, b, n_panels):
    edges = np.linspace(a, b, n_panels + 1)
    mid = 0.5 * (edges[:-1] + edges[1:])[:, None]
    hw = 0.5 * (edges[1:] - edges[:-1])[:, None]
    return (mid + hw * _GL_NODES).ravel(), (hw * np.broadcast_to(_GL_WEIGHTS, (n_panels, _GL_ORDER))).ravel()


def _build_grid(p_lo, p_hi, disp, cfg, tau_max, resonances=(), refine=1, extra_edges=()):
    """Composite Gauss-Legendre nodes and weights over [p_lo, p_hi]."""
    width = p_hi - p_lo
    end_lo = abs(p_lo) if isinstance(disp, Quadratic) else p_lo
    e_end = max(abs(float(energy(disp, end_lo))), abs(float(energy(disp, p_hi))))
    cycles = e_end * abs(tau_max) / (2.0 * np.pi)
    n_main = refine * max(cfg.n_points // _GL_ORDER, int(math.ceil(1.5 * cycles)))
    if n_main * _GL_ORDER > _MAX_NODES:
        raise QuadratureAccuracyError(
            f"phase resolution would need {n_main * _GL_ORDER} nodes (limit {_MAX_NODES})",
            estimate=float("inf"),
        )
    wins = _resonance_windows(disp, resonances, p_lo, p_hi)
    edges = {p_lo, p_hi}
    for a, b, _ in wins:
        edges.add(a)
        edges.add(b)
    for x in extra_edges:
        if p_lo < x < p_hi:
            edges.add(float(x))
    edges = sorted(edges)
    nodes_parts = []
    weights_parts = []
    for a, b in zip(edges[:-1], edges[1:]):
        if b - a <= 1e-14 * width:
            continue
        n_p = max(1, int(math.ceil(n_main * (b - a) / width)))
        for wa, wb, target in wins:
            if a >= wa and b <= wb:
                n_p = max(n_p, int(math.ceil(refine * (b - a) / target)))
                break
        nodes, wts = _gl_panels(a, b, n_p)
        nodes_parts.append(nodes)
        weights_parts.append(wts)
    p = np.concatenate(nodes_parts)
    w = np.concatenate(weights_parts)
    if p.size > _MAX_NODES:
        raise QuadratureAccuracyError(
            f"grid would need {p.size} nodes (limit {_MAX_NODES})", estimate=float("inf")
        )
    return p, w


def _window(profiles, disp, cfg, scattering=False):
    """Momentum window covering every profile's +-k_sigma/sigma span.

    With a barrier present only p > 0 carries flux onto it, so the window
    clips at zero; the profile mass there is below exp(-(p0 sigma)^2 / 2) by
    construction.  Panel nodes are interior, so a zero edge is never sampled.
    """
    lo = min(pr.p0 - cfg.k_sigma / pr.sigma for pr in profiles)
    hi = max(pr.p0 + cfg.k_sigma / pr.sigma for pr in profiles)
    if isinstance(disp, Linear):
        for pr in profiles:
            if pr.p0 * pr.sigma < 5.0:
                raise ValueError(
                    f"linear dispersion requires p0*sigma >= 5 to truncate at p > 0, "
                    f"got {pr.p0 * pr.sigma}"
                )
    if isinstance(disp, Linear):
        # the dispersion itself is undefined at p = 0, so keep the edge
        # strictly positive; the clipped mass is far below the tolerance
        lo = max(lo, 1e-12 * hi)
    elif scattering:
        lo = max(lo, 0.0)
    return lo, hi


def _barrier_resonances(barrier, focus):
    res = tuple(focus)
    if isinstance(barrier, BreitWignerModel):
        res = res + barrier.resonances
    return res


def _check_supported(disp, barrier):
    if barrier is not None and isinstance(disp, Linear) and not isinstance(barrier, BreitWignerModel):
        raise UnsupportedModelError(
            f"{type(barrier).__name__} has no transmission filter under linear dispersion"
        )


def _integrand_factors(profiles, disp, barrier, p):
    amp2 = amplitude(profiles[0], p) * amplitude(profiles[1], p)
    if barrier is None:
        return amp2
    return amp2 * transmission_filter(barrier, disp, p)


def _lag_values(profiles, disp, barrier, cfg, lags, resonances):
    """Quadrature of the overlap integrand at each non-negative lag, with error check."""
    p_lo, p_hi = _window(profiles, disp, cfg, scattering=barrier is not None)
    tau_max = max(lags)
    kinks = ()
    if isinstance(barrier, BreitWignerModel):
        # the unit clamp leaves |T|^2 non-smooth where overlapping Lorentzians
        # sum to one; panels must break there
        kinks = tuple(bw_clamp_boundaries(barrier.resonances, disp, p_lo, p_hi))
    p, w = _build_grid(p_lo, p_hi, disp, cfg, tau_max, resonances, extra_edges=kinks)
    g = w * _integrand_factors(profiles, disp, barrier, p)
    e = energy(disp, p)
    lag_arr = np.array(lags, dtype=np.float64)
    vals = oscillatory_sums(g, e, lag_arr)

    p2, w2 = _build_grid(p_lo, p_hi, disp, cfg, tau_max, resonances, refine=2, extra_edges=kinks)
    g2 = w2 * _integrand_factors(profiles, disp, barrier, p2)
    e2 = energy(disp, p2)
    check_lags = np.array(sorted({0.0, tau_max}), dtype=np.float64)
    ref = oscillatory_sums(g2, e2, check_lags)
    coarse = oscillatory_sums(g, e, check_lags)
    scale = max(abs(ref[0]), 1e-300)
    err = float(np.max(np.abs(ref - coarse))) / scale
    if err > cfg.rel_tol:
        raise QuadratureAccuracyError(
            f"estimated quadrature error {err:.3e} exceeds rel_tol {cfg.rel_tol:.3e} "
            f"at lag {tau_max:g}",
            estimate=err,
            tau=tau_max,
        )
    return dict(zip(lags, vals))


def _assemble(cat, disp, barrier, cfg, focus):
    _check_supported(disp, barrier)
    delays = cat.delays
    n = cat.n
    lags = sorted({0.0} | {delays[m] - delays[k] for m in range(n) for k in range(m)})
    resonances = _barrier_resonances(barrier, focus)
    values = _lag_values((cat.profile, cat.profile), disp, barrier, cfg, lags, resonances)
    mat = np.empty((n, n), dtype=np.complex128)
    for m in range(n):
        mat[m, m] = values[0.0]
        for k in range(m):
            v = values[delays[m] - delays[k]]
            mat[m, k] = v
            mat[k, m] = np.conj(v)
    return OverlapMatrix(mat)


# ---------------------------------------------------------------------------
# public operations
# ---------------------------------------------------------------------------


def initial_overlap(cat, disp, cfg=QuadratureConfig()):
    """Matrix of pairwise overlaps of the freely evolving components."""
    return _assemble(cat, disp, None, cfg, ())


def transmitted_overlap(cat, disp, barrier, cfg=QuadratureConfig(), focus=()):
    """Matrix of pairwise overlaps of the transmitted components.

    `focus` supplies resonance hints for grid refinement when the barrier
    itself does not expose them (exact potentials with narrow quasi-bound
    levels); Breit-Wigner models contribute their own resonances
    automatically.
    """
    return _assemble(cat, disp, barrier, cfg, focus)


def pair_overlap(profile_m, profile_k, disp, tau, cfg=QuadratureConfig()):
    """Single overlap integral A_m A_k exp(i E tau) for possibly distinct profiles."""
    values = _lag_values((profile_m, profile_k), disp, None, cfg, [abs(float(tau))], ())
    v = values[abs(float(tau))]
    return complex(v) if tau >= 0 else complex(np.conj(v))


def transmitted_pair_overlap(profile_m, profile_k, disp, barrier, tau, cfg=QuadratureConfig(), focus=()):
    """Single transmitted overlap integral for possibly distinct profiles."""
    _check_supported(disp, barrier)
    resonances = _barrier_resonances(barrier, focus)
    values = _lag_values((profile_m, profile_k), disp, barrier, cfg, [abs(float(tau))], resonances)
    v = values[abs(float(tau))]
    return complex(v) if tau >= 0 else complex(np.conj(v))


def mode_weight(profile, disp, barrier, cfg=QuadratureConfig(), focus=()):
    """Transmitted weight w = integral |T(p)|^2 A(p)^2 dp of a single component."""
    _check_supported(disp, barrier)
    resonances = _barrier_resonances(barrier, focus)
    values = _lag_values((profile, profile), disp, barrier, cfg, [0.0], resonances)
    return float(np.real(values[0.0]))


def transmission_probability(initial, transmitted):
    """Transmission probability of the full superposition.

    Ratio of summed transmitted overlaps to summed initial overlaps; the
    Hermitian pairing makes both sums real up to rounding.
    """
    if initial.n != transmitted.n:
        raise ValueError(f"matrix sizes differ: {initial.n} vs {transmitted.n}")
    s_i = initial.values.sum()
    if abs(s_i.imag) > 1e-8:
        raise ValueError(f"initial overlap sum has imaginary part {s_i.imag:g}; matrix is not Hermitian")
    if s_i.real <= 1e-12:
        raise DegenerateNormalizationError(
            f"initial overlap sum {s_i.real:g} is consistent with zero"
        )
    return float(transmitted.values.sum().real / s_i.real)


def independent_probability(transmitted):
    """Transmission probability with interference discarded: mean diagonal weight."""
    return float(np.mean(np.real(np.diag(transmitted.values))))


def interference_correction(initial, transmitted):
    """Difference between the full and interference-free transmission probabilities."""
    return transmission_probability(initial, transmitted) - independent_probability(transmitted)


def offdiag_overlap_mass(initial):
    """Sum of |I_mk| over all off-diagonal pairs; the packet-separation diagnostic."""
    a = np.abs(initial.values)
    return float(a.sum() - np.trace(a))


def _mixing_of(mix):
    p = mix.mixing if isinstance(mix, MixedCatSpec) else float(mix)
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"mixing must be in [0, 1], got {p}")
    return p


def mixed_transmission(w1, w2, t12, mix):
    """Transmission probability of a partially dephased two-component pair.

    (w1 + w2)/2 + (1 - mixing) Re t12: mixing = 0 keeps the full interference
    term, mixing = 1 removes it.  mix may be a MixedCatSpec or a bare number.
    """
    return (w1 + w2) / 2.0 + (1.0 - _mixing_of(mix)) * complex(t12).real


def mixed_transmission_n(transmitted, mix):
    """Uniform-weight n-component extension of mixed_transmission."""
    p = _mixing_of(mix)
    vals = transmitted.values
    diag = float(np.mean(np.real(np.diag(vals))))
    off = float((vals.sum() - np.trace(vals)).real) / transmitted.n
    return diag + (1.0 - p) * off


def mixed_pair_transmission(profile_a, profile_b, disp, barrier, tau, mix,
                            cfg=QuadratureConfig(), focus=()):
    """mixed_transmission evaluated from two packet profiles via quadrature."""
    w1 = mode_weight(profile_a, disp, barrier, cfg, focus)
    w2 = mode_weight(profile_b, disp, barrier, cfg, focus)
    t12 = transmitted_pair_overlap(profile_a, profile_b, disp, barrier, tau, cfg, focus)
    return mixed_transmission(w1, w2, t12, mix)
