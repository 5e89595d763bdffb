"""Hot numeric kernels: oscillatory quadrature sums and plane-wave transfer scans.

Each kernel exists twice: a numba-jitted version and a pure-numpy fallback.
Set CATPACKET_NO_NUMBA=1 to force the numpy path (the numpy path is also
selected automatically when numba is not importable).  Both paths are
deterministic for a fixed input grid; the jitted loops parallelize over
independent output elements only, so results do not depend on thread count.
"""

import math
import os

import numpy as np

_BIG = 1e100
# cosh(x) with x beyond this is folded into the running log-scale instead
_HYP_SCALE_CUT = 30.0

_env = os.environ.get("CATPACKET_NO_NUMBA", "").strip().lower()
_FORCE_NUMPY = _env not in ("", "0", "false")

try:
    from numba import njit, prange

    HAS_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba installed
    HAS_NUMBA = False

NUMBA_ENABLED = HAS_NUMBA and not _FORCE_NUMPY


def set_threads(n):
    """Set the worker count for the jitted kernels; ignored on the numpy path."""
    if NUMBA_ENABLED:
        import numba

        numba.set_num_threads(max(1, min(int(n), numba.config.NUMBA_NUM_THREADS)))


# ---------------------------------------------------------------------------
# oscillatory sums: out[k] = sum_i weights[i] * exp(1j * energies[i] * taus[k])
# ---------------------------------------------------------------------------


def oscillatory_sums_numpy(weights, energies, taus):
    """Pure-numpy oscillatory sum, chunked to bound the broadcast buffer."""
    taus = np.atleast_1d(np.asarray(taus, dtype=np.float64))
    out = np.empty(taus.shape[0], dtype=np.complex128)
    chunk = max(1, 4_000_000 // max(energies.shape[0], 1))
    for s in range(0, taus.shape[0], chunk):
        phase = np.multiply.outer(taus[s : s + chunk], energies)
        out[s : s + chunk] = np.exp(1j * phase) @ weights
    return out


if HAS_NUMBA:

    @njit(cache=True, parallel=True)
    def _oscillatory_sums_jit(weights, energies, taus):
        out = np.empty(taus.shape[0], dtype=np.complex128)
        for k in prange(taus.shape[0]):
            t = taus[k]
            acc_re = 0.0
            acc_im = 0.0
            for i in range(energies.shape[0]):
                ph = energies[i] * t
                acc_re += weights[i] * math.cos(ph)
                acc_im += weights[i] * math.sin(ph)
            out[k] = complex(acc_re, acc_im)
        return out

    def oscillatory_sums_numba(weights, energies, taus):
        taus = np.atleast_1d(np.asarray(taus, dtype=np.float64))
        return _oscillatory_sums_jit(
            np.ascontiguousarray(weights), np.ascontiguousarray(energies), taus
        )

else:  # pragma: no cover
    oscillatory_sums_numba = None


# ---------------------------------------------------------------------------
# transfer scan: scattering amplitudes of a piecewise-constant potential
# ---------------------------------------------------------------------------
#
# Works on the (psi, psi') propagator of each constant segment,
#   [[cos(k L), sin(k L)/k], [-k sin(k L), cos(k L)]],   k^2 = 2 mu (E - V),
# whose entries are entire functions of k^2: no branch handling is needed at
# E = V, and evanescent segments turn the trig entries hyperbolic.  A running
# log-scale keeps opaque barriers from overflowing; the transmitted amplitude
# then underflows gracefully to zero.


def _seg_cs_scalar(k2, ell):
    q = k2 * ell * ell
    if abs(q) < 1e-8:
        c = 1.0 - q / 2.0 + q * q / 24.0
        s = ell * (1.0 - q / 6.0 + q * q / 120.0)
        return c, s, 0.0
    if q > 0.0:
        rt = math.sqrt(q)
        return math.cos(rt), ell * math.sin(rt) / rt, 0.0
    rt = math.sqrt(-q)
    if rt > _HYP_SCALE_CUT:
        e2 = math.exp(-2.0 * rt)
        return (1.0 + e2) / 2.0, ell * (1.0 - e2) / (2.0 * rt), rt
    return math.cosh(rt), ell * math.sinh(rt) / rt, 0.0


def transfer_scan_numpy(p, mu, seg_widths, seg_heights, x_left, total_width):
    """Vectorized transfer scan over a momentum grid; returns (T, R) amplitudes."""
    p = np.atleast_1d(np.asarray(p, dtype=np.float64))
    energy = p * p / (2.0 * mu)
    a00 = np.ones_like(p)
    a01 = np.zeros_like(p)
    a10 = np.zeros_like(p)
    a11 = np.ones_like(p)
    lam = np.zeros_like(p)
    for j in range(seg_widths.shape[0]):
        ell = seg_widths[j]
        k2 = 2.0 * mu * (energy - seg_heights[j])
        q = k2 * ell * ell
        c = np.empty_like(q)
        s = np.empty_like(q)
        small = np.abs(q) < 1e-8
        osc = (q > 0.0) & ~small
        eva = (q < 0.0) & ~small
        qs = q[small]
        c[small] = 1.0 - qs / 2.0 + qs * qs / 24.0
        s[small] = ell * (1.0 - qs / 6.0 + qs * qs / 120.0)
        rt = np.sqrt(q[osc])
        c[osc] = np.cos(rt)
        s[osc] = ell * np.sin(rt) / rt
        rt = np.sqrt(-q[eva])
        deep = rt > _HYP_SCALE_CUT
        rt_safe = np.where(deep, 0.0, rt)
        e2 = np.exp(-2.0 * np.where(deep, rt, 0.0))
        c[eva] = np.where(deep, (1.0 + e2) / 2.0, np.cosh(rt_safe))
        s[eva] = ell * np.where(deep, (1.0 - e2) / (2.0 * rt), np.sinh(rt_safe) / np.maximum(rt, 1e-300))
        lam[eva] += np.where(deep, rt, 0.0)
        b00 = c * a00 + s * a10
        b01 = c * a01 + s * a11
        b10 = -k2 * s * a00 + c * a10
        b11 = -k2 * s * a01 + c * a11
        m = np.maximum(np.maximum(np.abs(b00), np.abs(b01)), np.maximum(np.abs(b10), np.abs(b11)))
        shrink = m > _BIG
        scale = np.where(shrink, m, 1.0)
        a00 = b00 / scale
        a01 = b01 / scale
        a10 = b10 / scale
        a11 = b11 / scale
        lam += np.where(shrink, np.log(scale), 0.0)
    denom = 1j * p * (a00 + a11) + p * p * a01 - a10
    t_amp = 2j * p * np.exp(-1j * p * total_width) / denom * np.exp(-lam)
    r_amp = np.exp(2j * p * x_left) * (p * p * a01 + a10 + 1j * p * (a11 - a00)) / denom
    return t_amp, r_amp


if HAS_NUMBA:
    _seg_cs_jit = njit(cache=True)(_seg_cs_scalar)

    @njit(cache=True, parallel=True)
    def _transfer_scan_jit(p, mu, seg_widths, seg_heights, x_left, total_width):
        n = p.shape[0]
        t_out = np.empty(n, dtype=np.complex128)
        r_out = np.empty(n, dtype=np.complex128)
        for ip in prange(n):
            pk = p[ip]
            energy = pk * pk / (2.0 * mu)
            a00 = 1.0
            a01 = 0.0
            a10 = 0.0
            a11 = 1.0
            lam = 0.0
            for j in range(seg_widths.shape[0]):
                k2 = 2.0 * mu * (energy - seg_heights[j])
                c, s, sc = _seg_cs_jit(k2, seg_widths[j])
                lam += sc
                b00 = c * a00 + s * a10
                b01 = c * a01 + s * a11
                b10 = -k2 * s * a00 + c * a10
                b11 = -k2 * s * a01 + c * a11
                m = max(abs(b00), abs(b01), abs(b10), abs(b11))
                if m > _BIG:
                    b00 /= m
                    b01 /= m
                    b10 /= m
                    b11 /= m
                    lam += math.log(m)
                a00 = b00
                a01 = b01
                a10 = b10
                a11 = b11
            denom = 1j * pk * (a00 + a11) + pk * pk * a01 - a10
            t_out[ip] = 2j * pk * np.exp(-1j * pk * total_width) / denom * math.exp(-lam)
            r_out[ip] = np.exp(2j * pk * x_left) * (pk * pk * a01 + a10 + 1j * pk * (a11 - a00)) / denom
        return t_out, r_out

    def transfer_scan_numba(p, mu, seg_widths, seg_heights, x_left, total_width):
        p = np.atleast_1d(np.asarray(p, dtype=np.float64))
        return _transfer_scan_jit(
            p,
            float(mu),
            np.ascontiguousarray(seg_widths),
            np.ascontiguousarray(seg_heights),
            float(x_left),
            float(total_width),
        )

else:  # pragma: no cover
    transfer_scan_numba = None


if NUMBA_ENABLED:
    oscillatory_sums = oscillatory_sums_numba
    transfer_scan = transfer_scan_numba
else:
    oscillatory_sums = oscillatory_sums_numpy
    transfer_scan = transfer_scan_numpy
