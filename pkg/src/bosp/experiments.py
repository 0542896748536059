"""Named, config-driven experiments with machine-readable reports.

Each experiment is a pure function of (config, seed): it draws its ensemble
from a seeded generator, produces one record per sample, and derives its
pass/fail verdict *from the records alone* (``recompute_passed`` re-derives
the verdict of any report from its stored records, and the suite asserts
the two agree).  Reports serialize deterministically: the wall time is kept
on the in-memory object only, never written, so identical (config, seed)
runs produce byte-identical files.  Records are sorted by sample index
before summarization, so the reduction is order-independent and samples
could safely be evaluated concurrently.

Experiments
-----------
``simulate``          run one initial condition, report invariant drifts
``conservation``      reference-run drift of I, M, F and the energies,
                      including the sign-separation control
``gauge-residual``    instantaneous gauge-equation residual over an
                      ensemble, plus the resolution-doubling decay check
``strichartz-scan``   max free-propagator L^4 ratio across circle sizes
``flowmap``           Lipschitz ratio of the flow on fixed-mean data
``scaling``           dilation/solve commutation discrepancy
``convergence``       measured time-stepping order on two fixtures
``estimate-monitor``  boundedness of the gauge-variable X^1 ratio
``bernstein``         high-pass sup-norm ratio across circle sizes
"""

from __future__ import annotations

import configparser
import dataclasses
import hashlib
import json
import time as _time
from dataclasses import dataclass, field as dc_field

import numpy as np

from .errors import BlowUpError, ConfigError
from .ensembles import random_field
from .evolve import SolverConfig, convergence_order, solve
from .gauge import build_gauge, gauge_residual
from .invariants import dilate, drift_report, invariant, xnorm, xnorm_series
from .lingroup import strichartz_norm
from .spectral import (
    PeriodicGrid,
    SpectralField,
    Trajectory,
    _truncate_coeffs,
    norm,
    project,
    differentiate,
)

__all__ = [
    "EXPERIMENT_NAMES",
    "ExperimentConfig",
    "ExperimentReport",
    "default_config",
    "config_from_mapping",
    "load_config_file",
    "run_experiment",
    "recompute_passed",
    "save_report",
]

EXPERIMENT_NAMES = (
    "simulate",
    "conservation",
    "gauge-residual",
    "strichartz-scan",
    "flowmap",
    "scaling",
    "convergence",
    "estimate-monitor",
    "bernstein",
)


@dataclass(frozen=True)
class ExperimentConfig:
    """Superset of experiment parameters; every field has a default.

    Per-experiment defaults are applied by :func:`default_config`; unknown
    keys are rejected by :func:`config_from_mapping`.
    """

    name: str
    # grid / solver
    lam: float = 1.0
    n: int = 256
    k: int = 1
    equation: str = "gbo"
    dt: float = 1e-3
    t_final: float = 1.0
    scheme: str = "if_rk4"
    dealias: str = "pad4"
    sample_stride: int = 1
    # ensemble
    seed: int = 0
    n_samples: int = 20
    amplitude: float = 0.1
    n_modes: int = 32                   # 0 means "fill the whole band"
    decay: float = 0.7
    gamma: float = 0.0
    # experiment-specific knobs (documented defaults)
    perturbation: float = 1e-2          # flowmap: H^1 size of the pair gap
    shrink_factor: float = 100.0        # flowmap: second-scale divisor
    ratio_bound: float = 10.0           # flowmap: admissible Lipschitz ratio
    insensitivity_max: float = 2.0      # flowmap: max ratio change across scales
    lambdas: tuple = (1.0, 2.0, 4.0, 8.0, 16.0)   # scans: circle sizes
    horizon: float = 1.0                # strichartz: time horizon
    variation_max: float = 2.0          # strichartz: max/min bound on maxima
    slope_max: float = 0.1              # strichartz: log-log slope bound
    residual_tol: float = 1e-9          # gauge-residual: L^2 tolerance
    shrink_min: float = 100.0           # gauge-residual: min decay on doubling
    shrink_samples: int = 5             # gauge-residual: ensemble for doubling
    variant: str = "gbo"                # gauge-residual / scaling: bo or gbo
    im_tol: float = 1e-10               # conservation: I and M drift
    f_tol: float = 1e-6                 # conservation: calibrated F drift
    e_tol: float = 1e-6                 # conservation: energy drift
    separation_min: float = 1e-2        # conservation: wrong-sign drift floor
    e_ks: tuple = (2, 3)                # conservation: energy-run degrees
    e_dt: float = 2e-4                  # conservation: energy-run step
    e_t_final: float = 0.5              # conservation: energy-run horizon
    dilation: float = 2.0               # scaling: circle enlargement
    scaling_tol: float = 1e-8           # scaling: H^1 discrepancy bound
    n_levels: int = 4                   # convergence: refinement levels
    order_min: float = 3.8              # convergence: slope band
    order_max: float = 4.2
    monitor_bound: float = 20.0         # estimate-monitor: admissible ratio
    stability_max: float = 3.0          # bernstein: per-lambda maxima spread

    def __post_init__(self):
        if self.name not in EXPERIMENT_NAMES:
            raise ConfigError(f"unknown experiment {self.name!r}")

    def solver(self, **overrides) -> SolverConfig:
        kw = dict(equation=self.equation, dt=self.dt, t_final=self.t_final,
                  k=self.k, scheme=self.scheme, dealias=self.dealias,
                  sample_stride=self.sample_stride)
        kw.update(overrides)
        return SolverConfig(**kw)

    def as_dict(self) -> dict:
        d = dataclasses.asdict(self)
        d["lambdas"] = list(self.lambdas)
        d["e_ks"] = list(self.e_ks)
        return d


_DEFAULTS = {
    "simulate": dict(n=256, dt=1e-3, t_final=1.0, sample_stride=50, amplitude=0.2),
    "conservation": dict(n=256, k=1, equation="gbo", dt=1e-4, t_final=1.0,
                         sample_stride=200, amplitude=0.2),
    "gauge-residual": dict(n=256, n_samples=20, amplitude=0.1, decay=0.8, n_modes=0),
    "strichartz-scan": dict(n=128, n_samples=50, n_modes=24, decay=0.8),
    "flowmap": dict(n=128, dt=2e-3, t_final=0.5, sample_stride=25,
                    n_samples=25, amplitude=0.25, n_modes=16),
    "scaling": dict(n=128, dt=1e-3, t_final=0.25, variant="bo", k=2),
    "convergence": dict(n=128, dt=0.04, t_final=0.4),
    "estimate-monitor": dict(n=128, k=2, dt=1e-3, t_final=0.25, sample_stride=25,
                             n_samples=10, amplitude=0.1),
    "bernstein": dict(n=256, n_samples=50, lambdas=(1.0, 4.0, 16.0), n_modes=8),
}

_FIELD_TYPES = {f.name: f.type for f in dataclasses.fields(ExperimentConfig)}


def default_config(name: str) -> ExperimentConfig:
    if name not in EXPERIMENT_NAMES:
        raise ConfigError(f"unknown experiment {name!r}")
    return ExperimentConfig(name=name, **_DEFAULTS.get(name, {}))


def _coerce(key: str, value):
    """Parse a string config value into the field's type."""
    if key not in _FIELD_TYPES:
        raise ConfigError(f"unknown config key {key!r}")
    if not isinstance(value, str):
        return value
    ann = _FIELD_TYPES[key]
    text = value.strip()
    if ann == "tuple":
        parts = [p for chunk in text.split(",") for p in chunk.split()] if text else []
        nums = [float(p) for p in parts]
        if key == "e_ks":
            return tuple(int(v) for v in nums)
        return tuple(nums)
    if ann == "int":
        return int(text)
    if ann == "float":
        return float(text)
    return text


def config_from_mapping(name: str, mapping: dict) -> ExperimentConfig:
    """Build a config from per-key overrides; unknown keys are errors."""
    base = dataclasses.asdict(default_config(name))
    for key, value in mapping.items():
        if key == "name":
            continue
        if key not in base:
            raise ConfigError(f"unknown config key {key!r} for experiment {name!r}")
        try:
            base[key] = _coerce(key, value)
        except (ValueError, TypeError) as exc:
            raise ConfigError(f"bad value for {key!r}: {value!r}") from exc
    base["name"] = name
    try:
        return ExperimentConfig(**base)
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from exc


def load_config_file(path, name: str) -> dict:
    """Read the [name] section of a flat key=value config file."""
    parser = configparser.ConfigParser(strict=True, interpolation=None)
    try:
        with open(path) as fh:
            parser.read_file(fh)
    except (OSError, configparser.Error) as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    if not parser.has_section(name):
        return {}
    return dict(parser.items(name))


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------


@dataclass
class ExperimentReport:
    """One experiment run: config echo, per-sample records, verdict.

    ``wall_time_s`` is measured but deliberately excluded from both
    serializations so repeated runs are byte-identical; ``artifacts`` holds
    in-memory side products (e.g. the simulate trajectory) for callers that
    want to persist them separately.
    """

    name: str
    config: dict
    records: list
    summary: dict
    passed: bool
    failures: list
    wall_time_s: float = 0.0
    artifacts: dict = dc_field(default_factory=dict)

    def summary_dict(self) -> dict:
        return {
            "name": self.name,
            "config": self.config,
            "summary": self.summary,
            "passed": self.passed,
            "failures": list(self.failures),
            "n_records": len(self.records),
        }

    def summary_json(self) -> str:
        return json.dumps(_plain(self.summary_dict()), sort_keys=True, indent=2) + "\n"

    def records_jsonl(self) -> str:
        lines = [
            json.dumps(_plain(rec), sort_keys=True, separators=(",", ":"))
            for rec in self.records
        ]
        return "\n".join(lines) + ("\n" if lines else "")


def _plain(obj):
    """Recursively convert numpy scalars/arrays for JSON serialization.

    Non-finite floats become null so the emitted files stay strict JSON.
    """
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, (np.floating, np.integer)):
        obj = obj.item()
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.ndarray):
        return [_plain(v) for v in obj.tolist()]
    if isinstance(obj, float) and not np.isfinite(obj):
        return None
    return obj


def _hash_field(f: SpectralField) -> str:
    return hashlib.sha256(np.ascontiguousarray(f.coeffs).tobytes()).hexdigest()[:16]


# ---------------------------------------------------------------------------
# experiment bodies: each returns (records, summary, artifacts)
# ---------------------------------------------------------------------------


def _dividing_stride(steps: int, target_snapshots: int) -> int:
    """Largest stride <= steps/target that divides the step count."""
    want = max(1, steps // target_snapshots)
    for s in range(want, 0, -1):
        if steps % s == 0:
            return s
    return 1


def _cosine_data(cfg: ExperimentConfig, grid: PeriodicGrid) -> SpectralField:
    u = cfg.amplitude * SpectralField.from_function(grid, np.cos)
    if cfg.gamma:
        c = u.coeffs.copy()
        c[0] = cfg.gamma
        u = SpectralField(grid, c, is_real=True)
    return u


def _drift_records(traj: Trajectory, label: str, extra=None) -> dict:
    rep = drift_report(traj)
    rec = {"run": label, "blew_up": False}
    rec.update({f"drift_{name}": val for name, val in rep.drifts.items()})
    if extra:
        rec.update(extra)
    return rec


def _run_simulate(cfg: ExperimentConfig, rng):
    grid = PeriodicGrid(cfg.lam, cfg.n)
    u0 = _cosine_data(cfg, grid)
    rec = {"sample_index": 0, "inputs_hash": _hash_field(u0)}
    artifacts = {}
    try:
        traj = solve(u0, cfg.solver())
        rep = drift_report(traj)
        rec.update({f"drift_{k}": v for k, v in rep.drifts.items()})
        rec["blew_up"] = False
        rec["final_h1"] = norm(traj[-1], "hs", s=1.0)
        artifacts["trajectory"] = traj
    except BlowUpError as exc:
        rec["blew_up"] = True
        rec["last_good_time"] = exc.last_good_time
    summary = {"series": {}}
    return [rec], summary, artifacts


def _run_conservation(cfg: ExperimentConfig, rng):
    grid = PeriodicGrid(cfg.lam, cfg.n)
    records = []

    u0 = _cosine_data(cfg, grid)
    traj = solve(u0, cfg.solver(equation="gbo", k=1))
    rep = drift_report(traj)
    wrong_f = np.array([invariant(f, "F_bo", sign=-1.0) for f in traj])
    wrong_e = np.array([invariant(f, "E_gbo", k=1, sign=-1.0) for f in traj])
    rec = {
        "run": "reference", "sample_index": 0, "inputs_hash": _hash_field(u0),
        "drift_I": rep.drifts["I"], "drift_M": rep.drifts["M"],
        "drift_F": rep.drifts["F_bo"], "drift_E": rep.drifts["E_gbo"],
        "drift_F_opposite": float(np.max(np.abs(wrong_f - wrong_f[0])) / abs(wrong_f[0])),
        "drift_E_opposite": float(np.max(np.abs(wrong_e - wrong_e[0])) / abs(wrong_e[0])),
    }
    records.append(rec)
    f_series = rep.values["F_bo"]
    series = {
        "time_vs_f_drift": [
            [float(t), float(abs(v - f_series[0]) / abs(f_series[0]))]
            for t, v in zip(rep.times, f_series)
        ]
    }

    e_steps = int(round(cfg.e_t_final / cfg.e_dt))
    e_stride = _dividing_stride(e_steps, 25)
    for idx, kk in enumerate(cfg.e_ks):
        u0k = _cosine_data(cfg, grid)
        trajk = solve(u0k, cfg.solver(equation="gbo", k=int(kk), dt=cfg.e_dt,
                                      t_final=cfg.e_t_final,
                                      sample_stride=e_stride))
        repk = drift_report(trajk)
        records.append({
            "run": f"energy_k{int(kk)}", "sample_index": idx + 1,
            "inputs_hash": _hash_field(u0k),
            "drift_I": repk.drifts["I"], "drift_M": repk.drifts["M"],
            "drift_E": repk.drifts["E_gbo"],
        })
    return records, {"series": series}, {}


def _restrict_field(f: SpectralField, n_small: int) -> SpectralField:
    small = PeriodicGrid(f.grid.lam, n_small)
    return SpectralField(small, _truncate_coeffs(f.coeffs, n_small), is_real=f.is_real)


def _run_gauge_residual(cfg: ExperimentConfig, rng):
    grid = PeriodicGrid(cfg.lam, cfg.n)
    n_modes = cfg.n_modes if cfg.n_modes else grid.n // 2 - 1
    variant = cfg.variant
    records = []
    for i in range(cfg.n_samples):
        v = random_field(grid, rng, n_modes=n_modes, decay=cfg.decay,
                         amplitude=cfg.amplitude, normalize="h2")
        res = gauge_residual(v, variant, k=cfg.k, mode="instantaneous")
        rec = {"sample_index": i, "inputs_hash": _hash_field(v), "kind": "residual",
               "residual_l2": res.l2, "residual_h1": res.h1}
        if i < cfg.shrink_samples:
            v_half = _restrict_field(v, grid.n // 2)
            res_half = gauge_residual(v_half, variant, k=cfg.k, mode="instantaneous")
            rec["kind"] = "residual+shrink"
            rec["residual_l2_half"] = res_half.l2
        records.append(rec)
    return records, {"series": {}}, {}


def _run_strichartz(cfg: ExperimentConfig, rng):
    records = []
    for lam in cfg.lambdas:
        grid = PeriodicGrid(lam, cfg.n)
        for i in range(cfg.n_samples):
            phi = random_field(grid, rng, n_modes=cfg.n_modes, decay=cfg.decay,
                               amplitude=1.0, normalize="l2")
            val = strichartz_norm(phi, cfg.horizon)
            records.append({
                "lam": float(lam), "sample_index": i,
                "inputs_hash": _hash_field(phi), "ratio": val,
            })
    per_lam = _per_lambda_max(records, "ratio")
    series = {"lambda_vs_max_ratio": [[lam, mx] for lam, mx in per_lam]}
    return records, {"series": series}, {}


def _per_lambda_max(records, key):
    out = {}
    for rec in records:
        lam = rec["lam"]
        out[lam] = max(out.get(lam, 0.0), rec[key])
    return sorted(out.items())


def _run_flowmap(cfg: ExperimentConfig, rng):
    grid = PeriodicGrid(cfg.lam, cfg.n)
    solver = cfg.solver(equation="gbo", k=1)
    scales = [cfg.perturbation, cfg.perturbation / cfg.shrink_factor]
    records = []
    for i in range(cfg.n_samples):
        phi1 = random_field(grid, rng, n_modes=cfg.n_modes, decay=cfg.decay,
                            amplitude=cfg.amplitude, normalize="h1", mean=cfg.gamma)
        direction = random_field(grid, rng, n_modes=cfg.n_modes, decay=cfg.decay,
                                 amplitude=1.0, normalize="h1")
        try:
            traj1 = solve(phi1, solver)
        except BlowUpError as exc:
            for scale in scales:
                records.append({"sample_index": i, "scale": float(scale),
                                "inputs_hash": _hash_field(phi1),
                                "degenerate": False, "blew_up": True,
                                "last_good_time": exc.last_good_time})
            continue
        for scale in scales:
            rec = {"sample_index": i, "scale": float(scale),
                   "inputs_hash": _hash_field(phi1), "blew_up": False}
            delta = scale * direction
            phi2 = phi1 + delta
            gap = norm(delta, "hs", s=1.0)
            if gap == 0.0:
                rec.update({"degenerate": True})
                records.append(rec)
                continue
            try:
                traj2 = solve(phi2, solver)
            except BlowUpError as exc:
                rec.update({"degenerate": False, "blew_up": True,
                            "last_good_time": exc.last_good_time})
                records.append(rec)
                continue
            dists = [norm(a - b, "hs", s=1.0) for a, b in zip(traj1, traj2)]
            rec.update({
                "degenerate": False,
                "mean1": float(phi1.coeffs[0].real),
                "mean2": float(phi2.coeffs[0].real),
                "gap_h1": gap,
                "ratio": float(max(dists) / gap),
            })
            records.append(rec)
    usable = [r for r in records
              if not r.get("degenerate") and not r.get("blew_up")]
    series = {}
    summary = {"usable_pairs": len(usable) // max(len(scales), 1)}
    if usable:
        per_scale = {}
        for rec in usable:
            per_scale[rec["scale"]] = max(per_scale.get(rec["scale"], 0.0), rec["ratio"])
        series["perturbation_vs_max_ratio"] = sorted(per_scale.items())
    summary["series"] = series
    return records, summary, {}


def _run_scaling(cfg: ExperimentConfig, rng):
    grid = PeriodicGrid(cfg.lam, cfg.n)
    lam = cfg.dilation
    equation = "bo2" if cfg.variant == "bo" else "gbo"
    k = 1 if cfg.variant == "bo" else cfg.k
    steps = int(round(cfg.t_final / cfg.dt))
    u0 = 0.1 * SpectralField.from_function(grid, np.cos)

    direct = solve(u0, cfg.solver(equation=equation, k=k, sample_stride=steps))[-1]
    then_dilated = dilate(direct, lam, cfg.variant, k=k)

    u0_dilated = dilate(u0, lam, cfg.variant, k=k)
    dilated_then = solve(
        u0_dilated,
        cfg.solver(equation=equation, k=k, dt=lam * lam * cfg.dt,
                   t_final=lam * lam * cfg.t_final, sample_stride=steps),
    )[-1]
    disc = norm(then_dilated - dilated_then, "hs", s=1.0)
    rec = {"sample_index": 0, "variant": cfg.variant, "k": k,
           "inputs_hash": _hash_field(u0), "h1_discrepancy": disc}
    return [rec], {"series": {}}, {}


def _run_convergence(cfg: ExperimentConfig, rng):
    grid = PeriodicGrid(cfg.lam, cfg.n)
    fixtures = [
        ("gbo1_cos", 1, 0.1 * SpectralField.from_function(grid, np.cos)),
        ("gbo3_mix", 3, SpectralField.from_function(
            grid, lambda x: 0.05 * (np.cos(x) + np.sin(2 * x)))),
    ]
    records = []
    series = {}
    for idx, (label, k, u0) in enumerate(fixtures):
        res = convergence_order(
            u0, cfg.solver(equation="gbo", k=k, sample_stride=1), cfg.n_levels)
        records.append({
            "sample_index": idx, "fixture": label, "inputs_hash": _hash_field(u0),
            "order": res.order, "exact": res.exact,
            "errors": list(res.errors), "dts": list(res.dts),
        })
        series[f"dt_vs_error_{label}"] = [[d, e] for d, e in zip(res.dts, res.errors)]
    return records, {"series": series}, {}


def _run_estimate_monitor(cfg: ExperimentConfig, rng):
    grid = PeriodicGrid(cfg.lam, cfg.n)
    solver = cfg.solver(equation="renormalized_gbo", k=cfg.k)
    records = []
    for i in range(cfg.n_samples):
        v0 = random_field(grid, rng, n_modes=cfg.n_modes, decay=cfg.decay,
                          amplitude=cfg.amplitude, normalize="h1")
        try:
            vtraj = solve(v0, solver)
        except BlowUpError as exc:
            records.append({"sample_index": i, "inputs_hash": _hash_field(v0),
                            "blew_up": True,
                            "last_good_time": exc.last_good_time})
            continue
        wfields = [build_gauge(f, "gbo", cfg.k).w for f in vtraj]
        w_x1 = xnorm_series(vtraj.times, wfields, 1)
        v_x1 = xnorm(vtraj, 1)
        w0_h1 = norm(wfields[0], "hs", s=1.0)
        denom = w0_h1 + cfg.t_final ** 0.25 * (
            v_x1 ** (cfg.k + 1) + v_x1 ** (2 * cfg.k + 1) + v_x1 ** (3 * cfg.k + 1)
        )
        records.append({
            "sample_index": i, "inputs_hash": _hash_field(v0),
            "w_x1": w_x1, "v_x1": v_x1, "w0_h1": w0_h1,
            "ratio": float(w_x1 / denom),
        })
    return records, {"series": {}}, {}


def _run_bernstein(cfg: ExperimentConfig, rng):
    records = []
    for lam in cfg.lambdas:
        grid = PeriodicGrid(lam, cfg.n)
        n_modes = min(int(cfg.n_modes * lam), grid.n // 2 - 1)
        for i in range(cfg.n_samples):
            g = random_field(grid, rng, n_modes=n_modes, decay=cfg.decay,
                             amplitude=1.0, normalize="h1", physical_decay=True)
            num = norm(project(g, "gt", cutoff=1.0), "linf")
            den = norm(differentiate(g, "d_dx", 1), "linf")
            records.append({
                "lam": float(lam), "sample_index": i,
                "inputs_hash": _hash_field(g), "ratio": float(num / den),
            })
    per_lam = _per_lambda_max(records, "ratio")
    series = {"lambda_vs_max_ratio": [[lam, mx] for lam, mx in per_lam]}
    return records, {"series": series}, {}


_RUNNERS = {
    "simulate": _run_simulate,
    "conservation": _run_conservation,
    "gauge-residual": _run_gauge_residual,
    "strichartz-scan": _run_strichartz,
    "flowmap": _run_flowmap,
    "scaling": _run_scaling,
    "convergence": _run_convergence,
    "estimate-monitor": _run_estimate_monitor,
    "bernstein": _run_bernstein,
}


# ---------------------------------------------------------------------------
# pass rules (pure functions of config + records)
# ---------------------------------------------------------------------------


def _pass_simulate(cfg, records):
    fails = [f"sample {r['sample_index']} blew up at t = {r.get('last_good_time')}"
             for r in records if r.get("blew_up")]
    return fails


def _pass_conservation(cfg, records):
    fails = []
    for r in records:
        if r["run"] == "reference":
            if r["drift_I"] >= cfg.im_tol:
                fails.append(f"I drift {r['drift_I']:.3e} >= {cfg.im_tol:.0e}")
            if r["drift_M"] >= cfg.im_tol:
                fails.append(f"M drift {r['drift_M']:.3e} >= {cfg.im_tol:.0e}")
            if r["drift_F"] >= cfg.f_tol:
                fails.append(f"F drift {r['drift_F']:.3e} >= {cfg.f_tol:.0e}")
            if r["drift_F_opposite"] < cfg.separation_min:
                fails.append(
                    f"opposite-sign F drift {r['drift_F_opposite']:.3e} "
                    f"< separation floor {cfg.separation_min:.0e}")
        else:
            if r["drift_E"] >= cfg.e_tol:
                fails.append(f"{r['run']}: E drift {r['drift_E']:.3e} >= {cfg.e_tol:.0e}")
    return fails


def _pass_gauge_residual(cfg, records):
    fails = []
    worst = max(r["residual_l2"] for r in records)
    if worst > cfg.residual_tol:
        fails.append(f"max residual {worst:.3e} > {cfg.residual_tol:.0e}")
    halves = [r for r in records if "residual_l2_half" in r]
    if halves:
        ratio = max(r["residual_l2_half"] for r in halves) / max(
            max(r["residual_l2"] for r in halves), 1e-300)
        if ratio < cfg.shrink_min:
            fails.append(f"doubling n only shrank the residual {ratio:.1f}x "
                         f"(< {cfg.shrink_min:.0f}x)")
    return fails


def _pass_strichartz(cfg, records):
    per_lam = _per_lambda_max(records, "ratio")
    maxes = np.array([m for _, m in per_lam])
    lams = np.array([l for l, _ in per_lam])
    fails = []
    if not np.all(np.isfinite(maxes)):
        fails.append("non-finite ratio")
        return fails
    variation = maxes.max() / maxes.min()
    if variation >= cfg.variation_max:
        fails.append(f"max ratio varies {variation:.2f}x across lambda "
                     f"(>= {cfg.variation_max}x)")
    slope = float(np.polyfit(np.log(lams), np.log(maxes), 1)[0])
    if slope >= cfg.slope_max:
        fails.append(f"log-log slope {slope:.3f} >= {cfg.slope_max}")
    return fails


def _pass_flowmap(cfg, records):
    fails = []
    blown = [r for r in records if r.get("blew_up")]
    if blown:
        fails.append(f"{len(blown)} samples blew up")
    usable = [r for r in records if not r.get("degenerate") and not r.get("blew_up")]
    if not usable:
        return fails  # nothing asserted; the report notes 0 usable pairs
    bad = [r for r in usable if r["ratio"] > cfg.ratio_bound]
    if bad:
        fails.append(f"{len(bad)} ratios exceed {cfg.ratio_bound}")
    per_scale = {}
    for r in usable:
        per_scale[r["scale"]] = max(per_scale.get(r["scale"], 0.0), r["ratio"])
    if len(per_scale) >= 2:
        vals = sorted(per_scale.values())
        change = vals[-1] / max(vals[0], 1e-300)
        if change >= cfg.insensitivity_max:
            fails.append(f"max ratio changed {change:.2f}x across perturbation scales")
    return fails


def _pass_scaling(cfg, records):
    return [
        f"H1 discrepancy {r['h1_discrepancy']:.3e} > {cfg.scaling_tol:.0e}"
        for r in records if r["h1_discrepancy"] > cfg.scaling_tol
    ]


def _pass_convergence(cfg, records):
    fails = []
    for r in records:
        if r["exact"]:
            continue
        if not (cfg.order_min <= r["order"] <= cfg.order_max):
            fails.append(f"{r['fixture']}: order {r['order']:.3f} outside "
                         f"[{cfg.order_min}, {cfg.order_max}]")
    return fails


def _pass_estimate_monitor(cfg, records):
    fails = []
    blown = [r for r in records if r.get("blew_up")]
    if blown:
        fails.append(f"{len(blown)} samples blew up")
    ratios = [r["ratio"] for r in records if not r.get("blew_up")]
    if not ratios:
        return fails
    if not all(np.isfinite(ratios)):
        fails.append("non-finite ratio")
    elif max(ratios) > cfg.monitor_bound:
        fails.append(f"max ratio {max(ratios):.2f} > {cfg.monitor_bound}")
    return fails


def _pass_bernstein(cfg, records):
    per_lam = _per_lambda_max(records, "ratio")
    maxes = np.array([m for _, m in per_lam])
    fails = []
    if not np.all(np.isfinite(maxes)):
        fails.append("non-finite ratio")
        return fails
    stability = maxes.max() / maxes.min()
    if stability >= cfg.stability_max:
        fails.append(f"per-lambda maxima vary {stability:.2f}x (>= {cfg.stability_max}x)")
    return fails


_PASS_RULES = {
    "simulate": _pass_simulate,
    "conservation": _pass_conservation,
    "gauge-residual": _pass_gauge_residual,
    "strichartz-scan": _pass_strichartz,
    "flowmap": _pass_flowmap,
    "scaling": _pass_scaling,
    "convergence": _pass_convergence,
    "estimate-monitor": _pass_estimate_monitor,
    "bernstein": _pass_bernstein,
}


def recompute_passed(report: ExperimentReport):
    """Re-derive the verdict of a report from its records alone."""
    cfg = config_from_mapping(report.name, report.config)
    failures = _PASS_RULES[report.name](cfg, report.records)
    return (not failures), failures


def _summary_stats(records):
    """Order-independent aggregates over the numeric record fields."""
    stats = {}
    keys = sorted({k for r in records for k, v in r.items()
                   if isinstance(v, (int, float)) and not isinstance(v, bool)})
    for key in keys:
        vals = [r[key] for r in records if isinstance(r.get(key), (int, float))
                and not isinstance(r.get(key), bool)]
        if vals:
            stats[key] = {"min": float(min(vals)), "max": float(max(vals)),
                          "mean": float(np.mean(vals))}
    return stats


def run_experiment(cfg: ExperimentConfig) -> ExperimentReport:
    """Run one named experiment; deterministic given (config, seed)."""
    rng = np.random.default_rng(cfg.seed)
    start = _time.perf_counter()
    records, summary, artifacts = _RUNNERS[cfg.name](cfg, rng)
    records = sorted(records, key=lambda r: (r.get("lam", 0.0), r["sample_index"],
                                             r.get("scale", 0.0), r.get("run", "")))
    failures = _PASS_RULES[cfg.name](cfg, records)
    summary = dict(summary)
    summary["stats"] = _summary_stats(records)
    report = ExperimentReport(
        name=cfg.name, config=cfg.as_dict(), records=records, summary=summary,
        passed=not failures, failures=failures,
        wall_time_s=_time.perf_counter() - start, artifacts=artifacts,
    )
    return report


def save_report(report: ExperimentReport, out_dir, stem: str) -> dict:
    """Write summary, records and plot series; returns the written paths."""
    import pathlib

    out = pathlib.Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = {}
    summary_path = out / f"{stem}.summary.json"
    summary_path.write_text(report.summary_json())
    paths["summary"] = summary_path
    records_path = out / f"{stem}.records.jsonl"
    records_path.write_text(report.records_jsonl())
    paths["records"] = records_path
    for series_name, rows in report.summary.get("series", {}).items():
        dat = out / f"{stem}.{series_name}.dat"
        lines = [f"{float(a):.17g} {float(b):.17g}" for a, b in rows]
        dat.write_text("\n".join(lines) + ("\n" if lines else ""))
        paths[series_name] = dat
    return paths
