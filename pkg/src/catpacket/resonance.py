"""Closed forms for resonance-dominated transmission of delayed packet trains.

When the barrier filter is a set of narrow Lorentzians well inside the packet
envelope, every transmitted overlap integral collapses to exponentials in the
lag: a resonance with coupling weight C = 2 pi Gamma A(p_r)^2 / v_g(p_r)
contributes (C/2) exp(-Gamma |m-k| tau) exp(i E_r (m-k) tau) to the entry for
components m and k.  The functions here evaluate the resulting interference
corrections directly, as a geometric-progression closed form, and in the
large-N limit, plus the transmitted waveform behind the barrier for a
massless packet.
"""

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .exceptions import ApproximationWarning
from .wavepacket import amplitude, group_velocity, momentum_at_energy


@dataclass(frozen=True)
class ResonanceCoupling:
    """Weight of one resonance in the transmitted overlaps."""

    weight: float

    def __post_init__(self):
        if not self.weight >= 0.0:
            raise ValueError(f"coupling weight must be >= 0, got {self.weight}")

    @classmethod
    def from_resonance(cls, res, profile, disp):
        """C = 2 pi Gamma A(p_r)^2 / v_g(p_r) at the resonance momentum."""
        pr = momentum_at_energy(disp, res.energy)
        a2 = float(amplitude(profile, pr)) ** 2
        vg = float(group_velocity(disp, pr))
        return cls(2.0 * np.pi * res.width * a2 / vg)


def _decaying_phase(res, tau):
    """exp(i E_r tau - Gamma tau): the per-lag factor, decaying for tau > 0."""
    return complex(math.exp(-res.width * tau) * math.cos(res.energy * tau),
                   math.exp(-res.width * tau) * math.sin(res.energy * tau))


def bw_overlap_entry(resonances, couplings, m, k, tau):
    """Analytic transmitted overlap entry for components m and k at lag step tau."""
    if len(resonances) != len(couplings):
        raise ValueError(
            f"resonance and coupling lists must match, got {len(resonances)} vs {len(couplings)}"
        )
    if tau < 0.0:
        raise ValueError(f"lag step must be >= 0, got {tau}")
    d = m - k
    out = 0.0 + 0.0j
    for res, coup in zip(resonances, couplings):
        decay = math.exp(-res.width * abs(d) * tau)
        phase = res.energy * d * tau
        out += 0.5 * coup.weight * decay * complex(math.cos(phase), math.sin(phase))
    return out


def two_mode_single_res_correction(res, coupling, tau):
    """Interference correction of a two-component train on one narrow resonance.

    (C/2) exp(-Gamma tau) cos(E_r tau): a damped oscillation at the resonance
    energy, valid once the initial packets no longer overlap.
    """
    return 0.5 * coupling.weight * math.exp(-res.width * tau) * math.cos(res.energy * tau)


def two_res_envelope_correction(res_a, res_b, coupling, tau):
    """Two-component correction for two resonances of comparable coupling.

    C exp(-Gamma_a tau) cos(d_omega tau) cos(mean_omega tau) with
    mean_omega = (E_a + E_b)/2 and d_omega = (E_b - E_a)/2: a carrier at the
    mean resonance energy under a slow beat envelope.  Assumes the two widths
    are close enough that a single decay rate applies; a warning marks lags
    where |tau (Gamma_a - Gamma_b)| > 0.3.
    """
    if abs(tau * (res_a.width - res_b.width)) > 0.3:
        warnings.warn(
            f"width mismatch |tau*(Gamma_a-Gamma_b)| = {abs(tau * (res_a.width - res_b.width)):.3g} "
            "exceeds 0.3; single-decay envelope is unreliable here",
            ApproximationWarning,
            stacklevel=2,
        )
    mean_omega = (res_a.energy + res_b.energy) / 2.0
    d_omega = (res_b.energy - res_a.energy) / 2.0
    return (
        coupling.weight
        * math.exp(-res_a.width * tau)
        * math.cos(d_omega * tau)
        * math.cos(mean_omega * tau)
    )


def pair_sum_correction(res, coupling, n, tau):
    """Unnormalized interference correction summed directly over component pairs.

    C Re sum_{J=1}^{n-1} (n - J) z^J with z = exp(i E_r tau - Gamma tau):
    every ordered pair at lag J tau contributes (C/2) times one decaying
    phase factor, and conjugate pairs combine into the real part.
    """
    if n < 1:
        raise ValueError(f"component count must be >= 1, got {n}")
    z = _decaying_phase(res, tau)
    acc = 0.0 + 0.0j
    zj = 1.0 + 0.0j
    for j in range(1, n):
        zj *= z
        acc += (n - j) * zj
    return coupling.weight * acc.real


def closed_form_correction(res, coupling, n, tau):
    """Geometric-progression evaluation of pair_sum_correction.

    C Re{ n z / (1 - z) - z (1 - z^n) / (1 - z)^2 }, z = exp(i E_r tau - Gamma tau).
    Falls back to the direct pair sum near z = 1, where the progression
    denominator degenerates.
    """
    if n < 1:
        raise ValueError(f"component count must be >= 1, got {n}")
    if n == 1:
        return 0.0
    z = _decaying_phase(res, tau)
    one_minus = 1.0 - z
    if abs(one_minus) < 1e-9:
        return pair_sum_correction(res, coupling, n, tau)
    s = n * z / one_minus - z * (1.0 - z**n) / one_minus**2
    return coupling.weight * s.real


def large_n_correction(res, coupling, n, tau):
    """Dominant n >> 1 term of the interference correction.

    -(C n / 2) [cos(E_r tau) - exp(-Gamma tau)] / [cos(E_r tau) - cosh(Gamma tau)]:
    a periodic train of sharp peaks at tau = 2 pi k / E_r of height roughly
    C n / (Gamma tau), separated by troughs near -C n / 2.  Returns inf at the
    degenerate points where the denominator vanishes (Gamma tau = 0 on a peak).
    """
    if n < 20:
        warnings.warn(
            f"large-n form requested for n = {n}; accuracy degrades below n = 20",
            ApproximationWarning,
            stacklevel=2,
        )
    ct = math.cos(res.energy * tau)
    denom = ct - math.cosh(res.width * tau)
    if denom == 0.0:
        return math.inf
    return -0.5 * coupling.weight * n * (ct - math.exp(-res.width * tau)) / denom


def n_mode_probability(resonances, couplings, weight, n, tau):
    """Transmission probability of an n-component train from the analytic entries.

    [n w + sum_j F_j(tau)] / n with F_j the per-resonance closed-form
    correction; warns when the Breit-Wigner approximation pushes the result
    outside [0, 1].
    """
    if len(resonances) != len(couplings):
        raise ValueError(
            f"resonance and coupling lists must match, got {len(resonances)} vs {len(couplings)}"
        )
    total = n * weight
    for res, coup in zip(resonances, couplings):
        total += closed_form_correction(res, coup, n, tau)
    p = total / n
    if not -1e-6 <= p <= 1.0 + 1e-6:
        warnings.warn(
            f"analytic probability {p:.6g} falls outside [0, 1]; "
            "the resonance approximation is breaking down here",
            ApproximationWarning,
            stacklevel=2,
        )
    return p


def transmitted_waveform(res, c, amp_at_res, y):
    """Transmitted profile of a massless packet in the frame comoving at speed c.

    [2 pi Gamma A(p_r) / c] theta(-y) exp(i p_r y + Gamma y / c) with
    p_r = E_r / c and theta(0) = 1: an exponential tail trailing a sharp
    front, empty ahead of it.
    """
    if not c > 0.0:
        raise ValueError(f"speed must be positive, got {c}")
    y_arr = np.asarray(y, dtype=np.float64)
    pr = res.energy / c
    front = 2.0 * np.pi * res.width * amp_at_res / c
    phi = front * np.exp((1j * pr + res.width / c) * y_arr)
    phi = np.where(y_arr > 0.0, 0.0 + 0.0j, phi)
    return complex(phi) if phi.ndim == 0 else phi
