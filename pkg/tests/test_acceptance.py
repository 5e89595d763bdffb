"""Acceptance gate: the ten headline checks, one verdict line each.

Run with `pytest -sv tests/test_acceptance.py` so the ACCEPTANCE lines are
visible; each check also fails its test on a FAIL verdict.
"""

import math
import time

import numpy as np
import pytest

from catpacket.barriers import (
    BreitWignerModel,
    PiecewiseConstantPotential,
    RectangularBarrier,
    Resonance,
    exact_scattering,
    find_resonances,
)
from catpacket.overlap import (
    QuadratureConfig,
    mixed_transmission,
    mode_weight,
    pair_overlap,
    transmitted_pair_overlap,
)
from catpacket.resonance import (
    ResonanceCoupling,
    closed_form_correction,
    pair_sum_correction,
    transmitted_waveform,
)
from catpacket.sweep import (
    SweepSpec,
    extract_beat,
    extract_oscillation,
    peaks_on_curve,
    run_sweep,
)
from catpacket.wavepacket import GaussianProfile, Quadratic

from oracles import FREE_OVERLAP_SPOTS, RECT_TRANSMISSION_SPOTS, rect_transmission

DISP = Quadratic(1.0)

DOUBLE_BARRIER = PiecewiseConstantPotential(
    ((0.0, 1.0, 3.5), (1.0, 3.2214, 0.0), (3.2214, 4.2214, 3.5))
)


def _verdict(n, ok, detail=""):
    print(f"\nACCEPTANCE {n} {'PASS' if ok else 'FAIL'}")
    assert ok, detail


@pytest.fixture(scope="module")
def smooth_barrier_sweeps():
    """Two- and five-component sweeps over a plain rectangular barrier, timed."""
    results = {}
    t0 = time.perf_counter()
    for n in (2, 5):
        spec = SweepSpec(
            profile=GaussianProfile(1.41, 4.47),
            n_components=n,
            barrier=RectangularBarrier(2.0, 0.0, 1.0),
            dispersion=DISP,
            tau_min=0.0,
            tau_max=25.0,
            tau_points=200,
        )
        results[n] = run_sweep(spec)
    elapsed = time.perf_counter() - t0
    return results, elapsed


@pytest.fixture(scope="module")
def single_resonance_sweep():
    spec = SweepSpec(
        profile=GaussianProfile(1.4142135623730951, 4.242640687119285),
        n_components=2,
        barrier=BreitWignerModel((Resonance(1.0, 0.014),)),
        dispersion=DISP,
        tau_min=0.0,
        tau_max=64.0,
        tau_points=512,
    )
    return run_sweep(spec)


@pytest.fixture(scope="module")
def two_resonance_sweep():
    spec = SweepSpec(
        profile=GaussianProfile(1.4142135623730951, 6.363961030678928),
        n_components=2,
        barrier=BreitWignerModel((Resonance(0.9, 0.032), Resonance(1.1, 0.038))),
        dispersion=DISP,
        tau_min=0.0,
        tau_max=90.0,
        tau_points=1440,
    )
    return run_sweep(spec)


def test_acceptance_01_separated_components_lose_interference(smooth_barrier_sweeps):
    results, elapsed = smooth_barrier_sweeps
    fast = elapsed < 30.0
    details = [f"elapsed={elapsed:.1f}s"]
    quiet = True
    for n, result in results.items():
        separated = result.offdiag_overlap < 0.005
        assert separated.any()
        worst = float(np.abs(result.delta_p[separated]).max())
        details.append(f"n={n}: max|delta_p|={worst:.2e} past separation")
        quiet = quiet and worst <= 5e-3
    _verdict(1, fast and quiet, "; ".join(details))


def test_acceptance_02_single_resonance_oscillation(single_resonance_sweep):
    fit = extract_oscillation(single_resonance_sweep)
    freq_dev = abs(fit.frequency - 1.0) / 1.0
    decay_dev = abs(fit.decay_rate - 0.014) / 0.014
    ok = freq_dev <= 0.02 and decay_dev <= 0.15
    _verdict(2, ok, f"frequency={fit.frequency:.6f} (dev {freq_dev:.2%}), "
                    f"decay={fit.decay_rate:.6f} (dev {decay_dev:.2%})")


def test_acceptance_03_two_resonance_beat(two_resonance_sweep):
    fit = extract_beat(two_resonance_sweep)
    beat_dev = abs(fit.beat_frequency - 0.1) / 0.1
    ok = beat_dev <= 0.05
    _verdict(3, ok, f"beat={fit.beat_frequency:.6f} (dev {beat_dev:.2%}), "
                    f"nodes={fit.node_positions}")


def test_acceptance_04_revival_positions_and_heights():
    profile = GaussianProfile(1.4142135623730951, 6.363961030678928)
    taus = np.linspace(3.0, 22.0, 4096)
    worst_pos = 0.0
    for res in (Resonance(0.9, 0.032), Resonance(1.1, 0.038)):
        coup = ResonanceCoupling.from_resonance(res, profile, DISP)
        vals = np.array([closed_form_correction(res, coup, 5, t) / 5 for t in taus])
        pos, _ = peaks_on_curve(taus, vals, min_height_factor=1.5)
        assert pos.size >= 3
        for p in pos:
            k = max(1, round(p * res.energy / (2.0 * math.pi)))
            ref = 2.0 * math.pi * k / res.energy
            worst_pos = max(worst_pos, abs(p - ref) / ref)

    res = Resonance(1.0, 0.01)
    coup = ResonanceCoupling(0.05)
    taus_h = np.linspace(3.0, 21.0, 8192)
    vals = np.array([closed_form_correction(res, coup, 150, t) / 150 for t in taus_h])
    _, heights = peaks_on_curve(taus_h, vals, min_height_factor=1.5)
    assert heights.size >= 3
    worst_height = max(abs(heights[0] / ((k + 1) * heights[k]) - 1.0)
                       for k in range(1, heights.size))

    ok = worst_pos <= 0.01 and worst_height <= 0.15
    _verdict(4, ok, f"position dev {worst_pos:.2%} (bound 1%), "
                    f"height dev {worst_height:.2%} (bound 15%)")


def test_acceptance_05_pair_sum_matches_closed_form():
    rng = np.random.default_rng(20250814)
    worst_ratio = 0.0
    for _ in range(100):
        energy = rng.uniform(0.5, 5.0)
        res = Resonance(energy, energy * rng.uniform(0.002, 0.2))
        coup = ResonanceCoupling(10.0 ** rng.uniform(-3.0, 1.0))
        n = int(rng.integers(1, 13))
        tau = rng.uniform(0.0, 50.0)
        a = pair_sum_correction(res, coup, n, tau)
        b = closed_form_correction(res, coup, n, tau)
        bound = 1e-10 * coup.weight * n**2
        worst_ratio = max(worst_ratio, abs(a - b) / bound)
    ok = worst_ratio < 1.0
    _verdict(5, ok, f"worst |pair-closed| at {worst_ratio:.2e} of the bound")


def test_acceptance_06_quadrature_matches_free_packet_oracle():
    worst = 0.0
    for p0, sigma, mu, tau, expected in FREE_OVERLAP_SPOTS:
        profile = GaussianProfile(p0, sigma)
        got = pair_overlap(profile, profile, Quadratic(mu), tau)
        worst = max(worst, abs(got - expected))
    ok = worst <= 1e-8
    _verdict(6, ok, f"max deviation from closed-form overlap: {worst:.2e}")


def test_acceptance_07_flux_conservation_and_branch_formula():
    p = np.linspace(0.3, 3.0, 200)
    worst_unitarity = 0.0
    for pot in (PiecewiseConstantPotential(((0.0, 1.0, 2.0),)), DOUBLE_BARRIER):
        t_amp, r_amp = exact_scattering(pot, 1.0, p)
        worst_unitarity = max(
            worst_unitarity,
            float(np.abs(np.abs(t_amp) ** 2 + np.abs(r_amp) ** 2 - 1.0).max()),
        )

    single = PiecewiseConstantPotential(((0.0, 1.0, 2.0),))
    t_amp, _ = exact_scattering(single, 1.0, p)
    formula = np.array([rect_transmission(1.0, 2.0, 1.0, 0.5 * pp**2) for pp in p])
    worst_branch = float(np.abs(np.abs(t_amp) ** 2 - formula).max())
    for mu, v, d, e, expected in RECT_TRANSMISSION_SPOTS:
        pot = PiecewiseConstantPotential(((0.0, d, v),))
        t_spot, _ = exact_scattering(pot, mu, math.sqrt(2.0 * mu * e))
        worst_branch = max(worst_branch, abs(abs(t_spot) ** 2 - expected))

    ok = worst_unitarity <= 1e-10 and worst_branch <= 1e-10
    _verdict(7, ok, f"unitarity defect {worst_unitarity:.2e}, "
                    f"branch-formula deviation {worst_branch:.2e}")


def test_acceptance_08_resonance_model_tracks_exact_barrier():
    found = find_resonances(DOUBLE_BARRIER, 1.0, 0.3, 3.2)
    assert len(found) == 2, f"expected 2 quasi-bound levels, found {len(found)}"
    profile = GaussianProfile(1.0451, 5.8)
    common = dict(
        profile=profile,
        n_components=2,
        dispersion=DISP,
        tau_min=0.0,
        tau_max=90.0,
        tau_points=400,
    )
    exact = run_sweep(SweepSpec(barrier=DOUBLE_BARRIER,
                                focus_resonances=tuple(found), **common))
    modelled = run_sweep(SweepSpec(barrier=BreitWignerModel(tuple(found)), **common))
    scale = float(np.abs(exact.delta_p).max())
    ratio = float(np.abs(modelled.delta_p - exact.delta_p).max()) / scale
    ok = ratio <= 0.10
    _verdict(8, ok, f"levels at {[round(r.energy, 4) for r in found]}, "
                    f"max model deviation {ratio:.2%} of peak correction")


def test_acceptance_09_dephasing_interpolates_linearly():
    profile = GaussianProfile(1.4142135623730951, 4.242640687119285)
    barrier = BreitWignerModel((Resonance(1.0, 0.014),))
    cfg = QuadratureConfig()
    w = mode_weight(profile, DISP, barrier, cfg)
    t12 = transmitted_pair_overlap(profile, profile, DISP, barrier, 20.0, cfg)

    pure = 0.5 * (w + w + 2.0 * t12.real)
    coherent = mixed_transmission(w, w, t12, 0.0)
    pure_ok = abs(coherent - pure) <= 1e-15 * abs(pure)
    dephased_ok = mixed_transmission(w, w, t12, 1.0) == 0.5 * (w + w)

    mixes = np.linspace(0.0, 1.0, 11)
    vals = np.array([mixed_transmission(w, w, t12, m) for m in mixes])
    line = vals[-1] + (1.0 - mixes) * (vals[0] - vals[-1])
    linear_dev = float(np.abs(vals - line).max())
    linear_ok = linear_dev <= 1e-15 * float(np.abs(vals).max())

    ok = pure_ok and dephased_ok and linear_ok
    _verdict(9, ok, f"pure dev {abs(coherent - pure):.2e}, "
                    f"linearity dev {linear_dev:.2e}")


def test_acceptance_10_transmitted_waveform_shape():
    res = Resonance(1.0, 0.05)
    c, amp = 2.0, 2.2
    y = np.linspace(-80.0, 10.0, 901)
    phi = transmitted_waveform(res, c, amp, y)
    mag = np.abs(phi)

    ahead_ok = bool(np.all(mag[y > 0.0] == 0.0))
    front = float(np.abs(transmitted_waveform(res, c, amp, 0.0)))
    front_dev = abs(front - 2.0 * math.pi * res.width * amp / c)
    front_ok = front_dev <= 1e-12 * front

    m10 = float(np.abs(transmitted_waveform(res, c, amp, -10.0)))
    m50 = float(np.abs(transmitted_waveform(res, c, amp, -50.0)))
    slope = math.log(m10 / m50) / 40.0
    slope_ok = abs(slope - res.width / c) <= 1e-10

    ok = ahead_ok and front_ok and slope_ok
    _verdict(10, ok, f"front dev {front_dev:.2e}, "
                     f"tail slope {slope:.12f} vs {res.width / c}")
