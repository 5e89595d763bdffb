"""Command-line front end: JSON run configs in, CSV/JSON artifacts out.

Five subcommands cover the workflows.  `sweep` drives a component-spacing
sweep and writes the probability curves plus a diagnostics JSON; `barrier-scan`
tabulates the transmission filter against momentum; `waveform` samples the
transmitted profile behind a narrow level; `resonances` locates the
quasi-bound levels of a piecewise potential; `compare` scores the quadrature
curves against their analytic closed forms.

Configs are single JSON documents, schema-checked with unknown keys rejected.
Every artifact starts with the sha256 of the fully resolved config so a plot
can be traced back to its parameters.  Exit codes: 0 success, 1 invalid
config or parameters, 2 numerical-accuracy failure; every failure also prints
a machine-parsable `code=` line on stderr.
"""

import argparse
import dataclasses
import hashlib
import json
import logging
import math
import os
import sys

import numpy as np

from . import kernels
from .barriers import (
    BreitWignerModel,
    PiecewiseConstantPotential,
    RectangularBarrier,
    Resonance,
    find_resonances,
    lorentzian_fit_quality,
    transmission_filter,
)
from .exceptions import (
    ConfigError,
    DegenerateNormalizationError,
    InsufficientDataError,
    QuadratureAccuracyError,
    UnsupportedModelError,
)
from .overlap import QuadratureConfig
from .resonance import (
    ResonanceCoupling,
    closed_form_correction,
    pair_sum_correction,
    transmitted_waveform,
)
from .sweep import (
    OVERLAY_NAMES,
    SweepSpec,
    extract_beat,
    extract_oscillation,
    locate_peaks,
    overlap_threshold,
    run_sweep,
)
from .wavepacket import GaussianProfile, Linear, Quadratic, amplitude, energy

logger = logging.getLogger("catpacket.cli")


# ---------------------------------------------------------------------------
# config validation
# ---------------------------------------------------------------------------


def _sub(path, key):
    return f"{path}.{key}" if path else str(key)


def _as_mapping(value, path):
    if not isinstance(value, dict):
        raise ConfigError(f"expected an object, got {type(value).__name__}", field=path)
    return value


def _check_keys(mapping, allowed, path):
    for key in mapping:
        if key not in allowed:
            raise ConfigError(
                f"unknown key {key!r} (allowed: {', '.join(sorted(allowed))})",
                field=_sub(path, key),
            )


def _need(mapping, key, path):
    if key not in mapping:
        raise ConfigError("missing required key", field=_sub(path, key))
    return mapping[key]


def _number(value, path, minimum=None, above=None):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"expected a number, got {type(value).__name__}", field=path)
    v = float(value)
    if minimum is not None and v < minimum:
        raise ConfigError(f"must be >= {minimum}, got {v}", field=path)
    if above is not None and not v > above:
        raise ConfigError(f"must be > {above}, got {v}", field=path)
    return v


def _integer(value, path, minimum=None):
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"expected an integer, got {type(value).__name__}", field=path)
    if minimum is not None and value < minimum:
        raise ConfigError(f"must be >= {minimum}, got {value}", field=path)
    return value


def _parse_dispersion(raw, path):
    m = _as_mapping(raw, path)
    kind = _need(m, "kind", path)
    if kind == "quadratic":
        _check_keys(m, {"kind", "mass"}, path)
        mass = _number(m.get("mass", 1.0), _sub(path, "mass"), above=0.0)
        return Quadratic(mass), {"kind": "quadratic", "mass": mass}
    if kind == "linear":
        _check_keys(m, {"kind", "speed"}, path)
        speed = _number(m.get("speed", 1.0), _sub(path, "speed"), above=0.0)
        return Linear(speed), {"kind": "linear", "speed": speed}
    raise ConfigError(f"unknown dispersion kind {kind!r}", field=_sub(path, "kind"))


def _parse_profile(raw, path):
    m = _as_mapping(raw, path)
    _check_keys(m, {"p0", "sigma"}, path)
    p0 = _number(_need(m, "p0", path), _sub(path, "p0"), above=0.0)
    sigma = _number(_need(m, "sigma", path), _sub(path, "sigma"), above=0.0)
    return GaussianProfile(p0, sigma), {"p0": p0, "sigma": sigma}


def _parse_resonance(raw, path):
    m = _as_mapping(raw, path)
    _check_keys(m, {"energy", "width"}, path)
    e = _number(_need(m, "energy", path), _sub(path, "energy"), above=0.0)
    w = _number(_need(m, "width", path), _sub(path, "width"), above=0.0)
    if not w < e:
        raise ConfigError(f"width must lie below the energy, got {w} >= {e}", field=_sub(path, "width"))
    return Resonance(e, w), {"energy": e, "width": w}


def _parse_resonance_list(raw, path):
    if not isinstance(raw, list) or not raw:
        raise ConfigError("expected a non-empty array of {energy, width} objects", field=path)
    pairs = [_parse_resonance(item, f"{path}[{i}]") for i, item in enumerate(raw)]
    return tuple(r for r, _ in pairs), [d for _, d in pairs]


def _parse_barrier(raw, path):
    m = _as_mapping(raw, path)
    kind = _need(m, "kind", path)
    if kind == "rectangular":
        _check_keys(m, {"kind", "height", "left", "right"}, path)
        height = _number(_need(m, "height", path), _sub(path, "height"), above=0.0)
        left = _number(_need(m, "left", path), _sub(path, "left"))
        right = _number(_need(m, "right", path), _sub(path, "right"))
        if not right > left:
            raise ConfigError(f"right edge must exceed left edge, got [{left}, {right}]",
                              field=_sub(path, "right"))
        return (RectangularBarrier(height, left, right),
                {"kind": "rectangular", "height": height, "left": left, "right": right})
    if kind == "breit_wigner":
        _check_keys(m, {"kind", "resonances"}, path)
        res, r_res = _parse_resonance_list(_need(m, "resonances", path), _sub(path, "resonances"))
        try:
            model = BreitWignerModel(res)
        except ValueError as exc:
            raise ConfigError(str(exc), field=_sub(path, "resonances")) from exc
        return model, {"kind": "breit_wigner", "resonances": r_res}
    if kind == "exact":
        _check_keys(m, {"kind", "segments"}, path)
        raw_segs = _need(m, "segments", path)
        if not isinstance(raw_segs, list):
            raise ConfigError("expected an array of [left, right, height] triples",
                              field=_sub(path, "segments"))
        segs = []
        for i, seg in enumerate(raw_segs):
            spath = f"{_sub(path, 'segments')}[{i}]"
            if not isinstance(seg, list) or len(seg) != 3:
                raise ConfigError("expected a [left, right, height] triple", field=spath)
            segs.append(tuple(_number(seg[j], f"{spath}[{j}]") for j in range(3)))
        try:
            pot = PiecewiseConstantPotential(tuple(segs))
        except ValueError as exc:
            raise ConfigError(str(exc), field=_sub(path, "segments")) from exc
        return pot, {"kind": "exact", "segments": [list(s) for s in segs]}
    raise ConfigError(f"unknown barrier kind {kind!r}", field=_sub(path, "kind"))


def _parse_quadrature(raw, path):
    if raw is None:
        cfg = QuadratureConfig()
    else:
        m = _as_mapping(raw, path)
        _check_keys(m, {"k_sigma", "n_points", "rel_tol"}, path)
        k_sigma = _number(m.get("k_sigma", 10.0), _sub(path, "k_sigma"), minimum=6.0)
        n_points = _integer(m.get("n_points", 4096), _sub(path, "n_points"), minimum=256)
        rel_tol = _number(m.get("rel_tol", 1e-8), _sub(path, "rel_tol"), above=0.0)
        try:
            cfg = QuadratureConfig(k_sigma=k_sigma, n_points=n_points, rel_tol=rel_tol)
        except ValueError as exc:
            raise ConfigError(str(exc), field=path) from exc
    return cfg, {"k_sigma": cfg.k_sigma, "n_points": cfg.n_points, "rel_tol": cfg.rel_tol}


def _parse_grid(raw, path, minimum_points=1, minimum=None):
    m = _as_mapping(raw, path)
    _check_keys(m, {"min", "max", "points"}, path)
    lo = _number(_need(m, "min", path), _sub(path, "min"), minimum=minimum)
    hi = _number(_need(m, "max", path), _sub(path, "max"))
    pts = _integer(_need(m, "points", path), _sub(path, "points"), minimum=minimum_points)
    if pts > 1 and not hi > lo:
        raise ConfigError(f"max must exceed min, got [{lo}, {hi}]", field=_sub(path, "max"))
    return (lo, hi, pts), {"min": lo, "max": hi, "points": pts}


def _parse_sweep_config(doc, for_compare=False):
    m = _as_mapping(doc, "")
    allowed = {"profile", "dispersion", "barrier", "n_components", "delay_pattern",
               "tau", "quadrature", "overlays", "focus_resonances"}
    if for_compare:
        allowed.add("tolerance")
    _check_keys(m, allowed, "")
    profile, r_profile = _parse_profile(_need(m, "profile", ""), "profile")
    disp, r_disp = _parse_dispersion(_need(m, "dispersion", ""), "dispersion")
    barrier, r_barrier = _parse_barrier(_need(m, "barrier", ""), "barrier")
    (t_lo, t_hi, t_pts), r_tau = _parse_grid(_need(m, "tau", ""), "tau", minimum=0.0)
    cfg, r_quad = _parse_quadrature(m.get("quadrature"), "quadrature")

    pattern = ()
    if "delay_pattern" in m:
        raw_pat = m["delay_pattern"]
        if not isinstance(raw_pat, list) or len(raw_pat) < 1:
            raise ConfigError("expected a non-empty array of offsets", field="delay_pattern")
        pattern = tuple(_number(v, f"delay_pattern[{i}]") for i, v in enumerate(raw_pat))
    if "n_components" in m:
        n = _integer(m["n_components"], "n_components", minimum=1)
    elif pattern:
        n = len(pattern)
    else:
        raise ConfigError("missing required key", field="n_components")

    overlays = ()
    if "overlays" in m:
        raw_ov = m["overlays"]
        if not isinstance(raw_ov, list):
            raise ConfigError("expected an array of overlay names", field="overlays")
        for i, name in enumerate(raw_ov):
            if name not in OVERLAY_NAMES:
                raise ConfigError(
                    f"unknown overlay {name!r} (allowed: {', '.join(OVERLAY_NAMES)})",
                    field=f"overlays[{i}]",
                )
        overlays = tuple(raw_ov)

    focus = ()
    if "focus_resonances" in m:
        focus, _ = _parse_resonance_list(m["focus_resonances"], "focus_resonances")

    try:
        spec = SweepSpec(
            profile=profile,
            n_components=n,
            barrier=barrier,
            dispersion=disp,
            tau_min=t_lo,
            tau_max=t_hi,
            tau_points=t_pts,
            cfg=cfg,
            overlays=overlays,
            focus_resonances=focus,
            delay_pattern=pattern,
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc

    resolved = {
        "profile": r_profile,
        "dispersion": r_disp,
        "barrier": r_barrier,
        "n_components": n,
        "delay_pattern": list(pattern),
        "tau": r_tau,
        "quadrature": r_quad,
        "overlays": list(overlays),
        "focus_resonances": [{"energy": r.energy, "width": r.width} for r in focus],
    }
    if for_compare:
        resolved["tolerance"] = _number(m.get("tolerance", 0.05), "tolerance", above=0.0)
    return spec, resolved


def _load_json(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(
            f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc


def _config_hash(resolved):
    blob = json.dumps(resolved, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode("utf-8")).hexdigest()


# ---------------------------------------------------------------------------
# artifact writing
# ---------------------------------------------------------------------------


def _fmt(x):
    # repr of a Python float round-trips exactly through float()
    return repr(float(x))


def _write_atomic(path, text):
    tmp = f"{path}.tmp"
    with open(tmp, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
    os.replace(tmp, path)


def _write_csv(path, sha, header, columns):
    lines = [f"# config_sha256={sha}", ",".join(header)]
    for row in zip(*columns):
        lines.append(",".join(_fmt(v) for v in row))
    _write_atomic(path, "\n".join(lines) + "\n")


def _write_json_artifact(path, sha, payload):
    doc = {"config_sha256": sha}
    doc.update(payload)
    _write_atomic(path, json.dumps(doc, indent=2) + "\n")


def _scrub(obj):
    """JSON-safe copy: numpy scalars to Python, non-finite floats to null."""
    if isinstance(obj, dict):
        return {k: _scrub(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_scrub(v) for v in obj]
    if isinstance(obj, (float, np.floating)):
        v = float(obj)
        return v if math.isfinite(v) else None
    if isinstance(obj, np.integer):
        return int(obj)
    return obj


def _diagnostics_path(out_path):
    root, ext = os.path.splitext(out_path)
    base = root if ext.lower() == ".csv" else out_path
    return base + ".diagnostics.json"


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_sweep(config_path, out_path):
    spec, resolved = _parse_sweep_config(_load_json(config_path))
    sha = _config_hash(resolved)
    logger.info("sweep: %d components, %d spacings", spec.n_components, spec.tau_points)
    result = run_sweep(spec)
    header = ["tau", "p_t", "p_t_ind", "delta_p", "offdiag_overlap"] + list(spec.overlays)
    columns = [result.taus, result.p_t, result.p_t_ind, result.delta_p, result.offdiag_overlap]
    columns += [result.overlays[name] for name in spec.overlays]
    _write_csv(out_path, sha, header, columns)

    diag = dict(result.diagnostics)
    try:
        fit = extract_oscillation(result)
        diag["oscillation"] = {
            "frequency": fit.frequency,
            "decay_rate": fit.decay_rate,
            "n_crossings": fit.n_crossings,
            "n_extrema": fit.n_extrema,
        }
    except InsufficientDataError as exc:
        diag["oscillation"] = None
        logger.info("oscillation fit skipped: %s", exc)
    try:
        beat = extract_beat(result)
        diag["beat"] = {
            "carrier_frequency": beat.carrier_frequency,
            "beat_frequency": beat.beat_frequency,
            "node_positions": list(beat.node_positions),
        }
    except InsufficientDataError as exc:
        diag["beat"] = None
        logger.info("beat fit skipped: %s", exc)
    diag["peaks"] = {"delta_p": [[p, h] for p, h in locate_peaks(result)]}
    for name in spec.overlays:
        diag["peaks"][name] = [[p, h] for p, h in locate_peaks(result, column=name)]
    _write_json_artifact(_diagnostics_path(out_path), sha, _scrub(diag))
    logger.info("wrote %s", out_path)
    return 0


def cmd_barrier_scan(config_path, out_path):
    m = _as_mapping(_load_json(config_path), "")
    _check_keys(m, {"profile", "dispersion", "barrier", "momentum", "quadrature"}, "")
    profile, r_profile = _parse_profile(_need(m, "profile", ""), "profile")
    disp, r_disp = _parse_dispersion(_need(m, "dispersion", ""), "dispersion")
    barrier, r_barrier = _parse_barrier(_need(m, "barrier", ""), "barrier")
    cfg, r_quad = _parse_quadrature(m.get("quadrature"), "quadrature")
    if "momentum" in m:
        (p_lo, p_hi, p_pts), r_mom = _parse_grid(m["momentum"], "momentum", minimum_points=2)
    else:
        half = cfg.k_sigma / profile.sigma
        p_hi = profile.p0 + half
        p_lo = max(profile.p0 - half, 1e-9 * p_hi)
        p_pts = 512
        r_mom = {"min": p_lo, "max": p_hi, "points": p_pts}
    if p_lo <= 0.0:
        raise ConfigError(f"momentum window must be positive, got min {p_lo}", field="momentum.min")
    sha = _config_hash({"profile": r_profile, "dispersion": r_disp, "barrier": r_barrier,
                        "momentum": r_mom, "quadrature": r_quad})
    p = np.linspace(p_lo, p_hi, p_pts)
    e = energy(disp, p)
    t2 = transmission_filter(barrier, disp, p)
    a2 = amplitude(profile, p) ** 2
    _write_csv(out_path, sha, ["p", "energy", "t2", "a2", "t2a2"], [p, e, t2, a2, t2 * a2])
    logger.info("wrote %s", out_path)
    return 0


def cmd_waveform(config_path, out_path):
    m = _as_mapping(_load_json(config_path), "")
    _check_keys(m, {"resonance", "speed", "amplitude_at_resonance", "y"}, "")
    res, r_res = _parse_resonance(_need(m, "resonance", ""), "resonance")
    speed = _number(m.get("speed", 1.0), "speed", above=0.0)
    amp = _number(_need(m, "amplitude_at_resonance", ""), "amplitude_at_resonance", minimum=0.0)
    (y_lo, y_hi, y_pts), r_y = _parse_grid(_need(m, "y", ""), "y", minimum_points=2)
    sha = _config_hash({"resonance": r_res, "speed": speed,
                        "amplitude_at_resonance": amp, "y": r_y})
    y = np.linspace(y_lo, y_hi, y_pts)
    phi = transmitted_waveform(res, speed, amp, y)
    _write_csv(out_path, sha, ["y", "re_phi", "im_phi", "abs_phi"],
               [y, phi.real, phi.imag, np.abs(phi)])
    logger.info("wrote %s", out_path)
    return 0


def cmd_resonances(config_path, out_path):
    m = _as_mapping(_load_json(config_path), "")
    _check_keys(m, {"barrier", "dispersion", "energy", "n_scan"}, "")
    barrier, r_barrier = _parse_barrier(_need(m, "barrier", ""), "barrier")
    if not isinstance(barrier, PiecewiseConstantPotential):
        raise ConfigError("resonance search needs an exact piecewise potential", field="barrier.kind")
    disp, r_disp = _parse_dispersion(_need(m, "dispersion", ""), "dispersion")
    if not isinstance(disp, Quadratic):
        raise ConfigError("resonance search needs quadratic dispersion", field="dispersion.kind")
    e_m = _as_mapping(_need(m, "energy", ""), "energy")
    _check_keys(e_m, {"min", "max"}, "energy")
    e_lo = _number(_need(e_m, "min", "energy"), "energy.min", above=0.0)
    e_hi = _number(_need(e_m, "max", "energy"), "energy.max", above=0.0)
    if not e_hi > e_lo:
        raise ConfigError(f"max must exceed min, got [{e_lo}, {e_hi}]", field="energy.max")
    n_scan = _integer(m.get("n_scan", 4001), "n_scan", minimum=101)
    sha = _config_hash({"barrier": r_barrier, "dispersion": r_disp,
                        "energy": {"min": e_lo, "max": e_hi}, "n_scan": n_scan})
    found = find_resonances(barrier, disp.mu, e_lo, e_hi, n_scan=n_scan)
    payload = {"resonances": [
        {"energy": r.energy, "width": r.width,
         "fit_quality": lorentzian_fit_quality(barrier, disp.mu, r)}
        for r in found
    ]}
    _write_json_artifact(out_path, sha, _scrub(payload))
    logger.info("found %d resonances, wrote %s", len(found), out_path)
    return 0


def cmd_compare(config_path, out_path):
    spec, resolved = _parse_sweep_config(_load_json(config_path), for_compare=True)
    if not isinstance(spec.barrier, BreitWignerModel):
        raise ConfigError("comparison needs a resonance barrier model", field="barrier.kind")
    tolerance = resolved["tolerance"]
    if "analytic_closed_form" not in spec.overlays:
        spec = dataclasses.replace(spec, overlays=spec.overlays + ("analytic_closed_form",))
        resolved["overlays"] = list(spec.overlays)
    sha = _config_hash(resolved)
    result = run_sweep(spec)

    thresh = overlap_threshold(result)
    cleared = thresh is not None
    lo = thresh if cleared else float(result.taus[0])
    mask = result.taus >= lo
    scale = float(np.max(np.abs(result.delta_p[mask]))) if mask.any() else 0.0

    overlays_report = {}
    flagged = False
    for name, curve in result.overlays.items():
        ok = mask & np.isfinite(curve)
        if scale > 0.0 and ok.any():
            dev = np.abs(curve[ok] - result.delta_p[ok]) / scale
            entry = {
                "max_rel_deviation": float(dev.max()),
                "mean_rel_deviation": float(dev.mean()),
                "within_tolerance": bool(dev.max() <= tolerance),
            }
        else:
            entry = {"max_rel_deviation": None, "mean_rel_deviation": None,
                     "within_tolerance": False}
        flagged = flagged or not entry["within_tolerance"]
        overlays_report[name] = entry

    # algebraic cross-check: direct pair sum against its geometric closed form
    worst = 0.0
    bound_scale = 0.0
    for res in spec.barrier.resonances:
        coup = ResonanceCoupling.from_resonance(res, spec.profile, spec.dispersion)
        bound_scale = max(bound_scale, coup.weight * spec.n_components**2)
        for tau in result.taus:
            a = pair_sum_correction(res, coup, spec.n_components, float(tau))
            b = closed_form_correction(res, coup, spec.n_components, float(tau))
            worst = max(worst, abs(a - b))

    payload = {
        "tolerance": tolerance,
        "window": {"tau_min": lo, "tau_max": float(result.taus[-1]), "cleared": cleared},
        "delta_p_scale": scale,
        "overlays": overlays_report,
        "pair_sum_vs_closed_form": {"max_abs_deviation": worst, "bound_scale": bound_scale},
        "breakdown_flagged": flagged,
    }
    _write_json_artifact(out_path, sha, _scrub(payload))
    logger.info("compare report written to %s (flagged=%s)", out_path, flagged)
    return 0


# ---------------------------------------------------------------------------
# argument parsing and dispatch
# ---------------------------------------------------------------------------


_COMMANDS = {
    "sweep": cmd_sweep,
    "barrier-scan": cmd_barrier_scan,
    "waveform": cmd_waveform,
    "resonances": cmd_resonances,
    "compare": cmd_compare,
}

_HELP = {
    "sweep": "sweep the component spacing and write probability curves",
    "barrier-scan": "tabulate the transmission filter over momentum",
    "waveform": "sample the transmitted profile behind a narrow level",
    "resonances": "locate quasi-bound levels of an exact potential",
    "compare": "score quadrature curves against analytic closed forms",
}


class _Parser(argparse.ArgumentParser):
    """ArgumentParser whose usage errors follow the exit-code contract."""

    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"error: {message}\n")
        sys.stderr.write("code=1 kind=usage\n")
        raise SystemExit(1)


def _build_parser():
    parser = _Parser(prog="catpacket",
                     description="tunnelling of delayed wave-packet superpositions")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in _COMMANDS:
        p = sub.add_parser(name, help=_HELP[name])
        p.add_argument("--config", required=True, metavar="PATH", help="JSON run config")
        p.add_argument("--out", required=True, metavar="PATH", help="output artifact path")
        p.add_argument("--threads", type=int, default=None,
                       help="worker threads (default: CATPACKET_THREADS or all cores)")
        p.add_argument("--verbose", action="store_true", help="log progress to stderr")
    return parser


def _fail(code, kind, message, extra=""):
    sys.stderr.write(f"error: {message}\n")
    sys.stderr.write(f"code={code} kind={kind}{extra}\n")
    return code


def main(argv=None):
    try:
        args = _build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    threads = args.threads
    if threads is None:
        raw = os.environ.get("CATPACKET_THREADS", "")
        if raw:
            try:
                threads = int(raw)
            except ValueError:
                return _fail(1, "config", f"CATPACKET_THREADS must be an integer, got {raw!r}")
    if threads is not None:
        if threads < 1:
            return _fail(1, "config", f"thread count must be >= 1, got {threads}")
        kernels.set_threads(threads)
    try:
        return _COMMANDS[args.command](args.config, args.out)
    except ConfigError as exc:
        extra = f" field={exc.field}" if exc.field else ""
        return _fail(1, "config", str(exc), extra)
    except QuadratureAccuracyError as exc:
        extra = f" tau={_fmt(exc.tau)}" if exc.tau is not None else ""
        return _fail(2, "accuracy", str(exc), extra)
    except (DegenerateNormalizationError, InsufficientDataError) as exc:
        return _fail(2, "accuracy", str(exc))
    except (UnsupportedModelError, ValueError) as exc:
        return _fail(1, "validation", str(exc))
    except OSError as exc:
        return _fail(1, "io", str(exc))


def entrypoint():
    raise SystemExit(main())


if __name__ == "__main__":
    entrypoint()
