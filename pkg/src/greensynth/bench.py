"""Configuration-driven convergence benchmark.

Config files are flat ``key = value`` text with ``#`` comments; a line
``[case <id>]`` opens a case block whose keys set the observation and the
regularization knobs.  Global keys (before the first case) select paths,
rules, the N sweep and output options.  The runner writes one CSV per
case plus, on request, theta-plane/loci map files, and prints fitted
convergence orders per (path, rule).

Rows report E against the *unmodified* case medium, so a loss-imposed
regularizer shows its accuracy cost (the integral itself converges to the
lossy field).  The per-row numbers are deterministic; only wall_ns varies
between runs.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import contours
from .contours import ContourSpec, build_contour
from .errors import ConfigError
from .quadrature import (
    GAUSS_HERMITE,
    GAUSS_LEGENDRE,
    RIEMANN_MIDPOINT,
    QuadratureRule,
)
from .spectral import Medium, Observation, integrand_parts, krho_loci
from .synthesis import (
    fit_convergence,
    greens3d_exact,
    integrate_contour,
    relative_error,
    trim_plateau,
)

DEFAULT_N_SWEEP = tuple(4 * 2 ** k for k in range(11))  # 4 .. 4096

DEFAULT_PATHS = contours.VARIANTS
DEFAULT_RULES = (RIEMANN_MIDPOINT, GAUSS_LEGENDRE)

CSV_HEADER = "case_id,path,rule,N,I_re,I_im,E,wall_ns"

_CASE_KEYS = {
    "r": float,
    "theta0": float,
    "k0_real": float,
    "delta_shift": float,
    "imposed_loss": float,
    "limit_scale": float,
    # optional path-parameter overrides (documented config extension)
    "kz_halfwidth_multiplier": float,
    "theta_imag_max": float,
    "epsilon": float,
}

_GLOBAL_KEYS = ("paths", "rules", "N_sweep", "outputs", "emit_maps")


@dataclass(frozen=True)
class CaseConfig:
    case_id: str
    r: float
    theta0: float
    k0_real: float = 2.0 * math.pi
    delta_shift: float = 0.0
    imposed_loss: float = 0.0
    limit_scale: float = 1.0
    kz_halfwidth_multiplier: float = 2.0
    theta_imag_max: float = 1.5 * math.pi
    epsilon: float | None = None

    def observation(self):
        return Observation.from_polar(self.r, self.theta0)

    def medium(self):
        return Medium(complex(self.k0_real, 0.0))

    def contour_spec(self, variant):
        return ContourSpec(
            variant=variant,
            kz_halfwidth_multiplier=self.kz_halfwidth_multiplier,
            theta_imag_max=self.theta_imag_max,
            epsilon=self.epsilon,
            delta_shift=self.delta_shift,
            imposed_loss=self.imposed_loss,
            limit_scale=self.limit_scale,
        )


@dataclass(frozen=True)
class ExperimentConfig:
    cases: tuple[CaseConfig, ...]
    paths: tuple[str, ...] = DEFAULT_PATHS
    rules: tuple[str, ...] = DEFAULT_RULES
    n_sweep: tuple[int, ...] = DEFAULT_N_SWEEP
    outputs: str | None = None
    emit_maps: bool = False


def _parse_value(key, raw, line_no):
    caster = _CASE_KEYS[key]
    try:
        return caster(raw)
    except ValueError as exc:
        raise ConfigError(f"bad value for {key!r}: {raw!r}", line=line_no) from exc


def _parse_bool(raw, line_no):
    low = raw.strip().lower()
    if low in ("true", "yes", "1", "on"):
        return True
    if low in ("false", "no", "0", "off"):
        return False
    raise ConfigError(f"bad boolean {raw!r}", line=line_no)


def parse_config(text) -> ExperimentConfig:
    """Parse and validate benchmark configuration text.

    Unknown keys are rejected with their line number; defaults fill in
    everything optional, independent of key order.
    """
    globals_: dict = {}
    cases: list[dict] = []
    current: dict | None = None
    seen_ids = set()

    for line_no, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("["):
            if not (line.startswith("[case ") and line.endswith("]")):
                raise ConfigError(f"malformed section header {line!r}", line=line_no)
            case_id = line[len("[case "):-1].strip()
            if not case_id:
                raise ConfigError("case id must be non-empty", line=line_no)
            if case_id in seen_ids:
                raise ConfigError(f"duplicate case id {case_id!r}", line=line_no)
            seen_ids.add(case_id)
            current = {"case_id": case_id, "_line": line_no}
            cases.append(current)
            continue
        if "=" not in line:
            raise ConfigError(f"expected key = value, got {line!r}", line=line_no)
        key, _, raw = line.partition("=")
        key, raw = key.strip(), raw.strip()
        if current is None:
            if key not in _GLOBAL_KEYS:
                raise ConfigError(f"unknown global key {key!r}", line=line_no)
            if key in globals_:
                raise ConfigError(f"duplicate key {key!r}", line=line_no)
            globals_[key] = (raw, line_no)
        else:
            if key not in _CASE_KEYS:
                raise ConfigError(f"unknown case key {key!r}", line=line_no)
            if key in current:
                raise ConfigError(f"duplicate key {key!r}", line=line_no)
            current[key] = _parse_value(key, raw, line_no)

    if not cases:
        raise ConfigError("config defines no cases")

    case_objs = []
    for c in cases:
        line_no = c.pop("_line")
        missing = {"r", "theta0"} - set(c)
        if missing:
            raise ConfigError(
                f"case {c['case_id']!r} missing {sorted(missing)}", line=line_no
            )
        try:
            case_objs.append(CaseConfig(**c))
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"invalid case {c['case_id']!r}: {exc}",
                              line=line_no) from exc

    kwargs: dict = {"cases": tuple(case_objs)}
    if "paths" in globals_:
        raw, line_no = globals_["paths"]
        paths = tuple(p.strip() for p in raw.split(",") if p.strip())
        for p in paths:
            if p not in contours.VARIANTS:
                raise ConfigError(f"unknown path {p!r}", line=line_no)
        kwargs["paths"] = paths
    if "rules" in globals_:
        raw, line_no = globals_["rules"]
        rules = tuple(r.strip() for r in raw.split(",") if r.strip())
        for r in rules:
            if r not in (RIEMANN_MIDPOINT, GAUSS_LEGENDRE, GAUSS_HERMITE):
                raise ConfigError(f"unknown rule {r!r}", line=line_no)
        kwargs["rules"] = rules
    if "N_sweep" in globals_:
        raw, line_no = globals_["N_sweep"]
        try:
            sweep = tuple(int(v.strip()) for v in raw.split(",") if v.strip())
        except ValueError as exc:
            raise ConfigError(f"bad N_sweep {raw!r}", line=line_no) from exc
        if not sweep or any(n < 1 for n in sweep):
            raise ConfigError("N_sweep entries must be positive", line=line_no)
        if any(b <= a for a, b in zip(sweep, sweep[1:])):
            raise ConfigError("N_sweep must be strictly increasing", line=line_no)
        kwargs["n_sweep"] = sweep
    if "outputs" in globals_:
        kwargs["outputs"] = globals_["outputs"][0]
    if "emit_maps" in globals_:
        raw, line_no = globals_["emit_maps"]
        kwargs["emit_maps"] = _parse_bool(raw, line_no)
    return ExperimentConfig(**kwargs)


def _rules_for_path(path, requested):
    """The s-plane path runs Gauss-Hermite regardless of the request."""
    if path == contours.EXACT_SD_S:
        return (GAUSS_HERMITE,)
    return tuple(r for r in requested if r != GAUSS_HERMITE)


def _fmt(x):
    return f"{x:.17g}"


@dataclass
class SuiteReport:
    csv_paths: list[Path] = field(default_factory=list)
    map_paths: list[Path] = field(default_factory=list)
    summary_lines: list[str] = field(default_factory=list)


def run_case(case: CaseConfig, paths, rules, n_sweep):
    """All (path, rule, N) rows for one case, sorted for stable output.

    The Gauss-Hermite rule caps at its weight-underflow bound, so the
    s-plane path simply skips larger sweep entries (it floors out two
    orders of magnitude earlier anyway).
    """
    from .quadrature import GAUSS_HERMITE_N_MAX

    obs = case.observation()
    base_medium = case.medium()
    g_unmod = greens3d_exact(obs, base_medium)
    rows = []
    for path in sorted(paths):
        spec = case.contour_spec(path)
        for rule_kind in sorted(_rules_for_path(path, rules)):
            for n in n_sweep:
                if rule_kind == GAUSS_HERMITE and n > GAUSS_HERMITE_N_MAX:
                    continue
                rule = QuadratureRule(rule_kind, n)
                t0 = time.perf_counter_ns()
                contour = build_contour(spec, rule, n, obs, base_medium)
                value = complex(integrate_contour(contour))
                wall = time.perf_counter_ns() - t0
                err = relative_error(value, obs, base_medium, g_unmod)
                rows.append((case.case_id, path, rule_kind, n, value, err, wall))
    return rows


def _write_case_csv(out_dir: Path, case_id, rows):
    path = out_dir / f"{case_id}.csv"
    lines = [CSV_HEADER]
    for cid, variant, rule_kind, n, value, err, wall in rows:
        lines.append(
            f"{cid},{variant},{rule_kind},{n},{_fmt(value.real)},"
            f"{_fmt(value.imag)},{_fmt(err)},{wall}"
        )
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def _summarize_case(case_id, rows):
    lines = [f"case {case_id}:"]
    combos = sorted({(r[1], r[2]) for r in rows})
    for variant, rule_kind in combos:
        seq = [(r[3], r[5]) for r in rows if r[1] == variant and r[2] == rule_kind]
        seq.sort()
        label = _classify(seq)
        lines.append(f"  {variant:>15s} + {rule_kind:<16s} {label}")
    return lines


def _classify(seq):
    """Human-readable convergence label for one (path, rule) sweep."""
    e_min = min(e for _, e in seq)
    if e_min <= 1e-12:
        n_hit = next(n for n, e in seq if e <= 1e-12)
        return f"floor (E <= 1e-12 from N = {n_hit})"
    trimmed = trim_plateau(seq)
    if len(trimmed) < 4:
        return f"floor (E_min {e_min:.1e})"
    fit = fit_convergence(trimmed)
    if fit.at_floor:
        return "floor"
    if fit.is_exponential:
        return f"exponential (E_min {e_min:.1e})"
    return f"slope {fit.algebraic_slope:+.2f} (E_min {e_min:.1e})"


def _write_theta_map(out_dir: Path, case: CaseConfig, resolution=200):
    obs = case.observation()
    medium = case.medium().with_imposed_loss(case.imposed_loss)
    theta_re = np.linspace(-0.6 * math.pi, 0.6 * math.pi, resolution)
    theta_im = np.linspace(-3.0, 3.0, resolution)
    lines = ["theta_re,theta_im,logabs_integrand,re_f"]
    for ti in theta_im:
        theta = obs.theta0 + theta_re + 1j * ti
        h_hat, f = integrand_parts(theta, obs, medium)
        logabs = np.log10(np.abs(h_hat)) + f.real / math.log(10.0)
        for tr, la, rf in zip(theta_re + obs.theta0, logabs, f.real):
            lines.append(f"{_fmt(tr)},{_fmt(ti)},{_fmt(la)},{_fmt(rf)}")
    path = out_dir / f"{case.case_id}.theta_map.csv"
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")

    spec = case.contour_spec(contours.EXACT_SD_THETA)
    contour = build_contour(spec, QuadratureRule(GAUSS_LEGENDRE, 100), 100,
                            obs, case.medium())
    node_lines = ["theta_re,theta_im"]
    for th in contour.theta:
        node_lines.append(f"{_fmt(th.real)},{_fmt(th.imag)}")
    nodes_path = out_dir / f"{case.case_id}.sd_nodes.csv"
    nodes_path.write_text("\n".join(node_lines) + "\n", encoding="utf-8")
    return [path, nodes_path]


def _write_loci(out_dir: Path, case: CaseConfig):
    """Conformal-map grid: krho loci over real kz and increasing loss."""
    k0p = case.k0_real
    step = k0p / 40.0
    kz = np.arange(-2.0 * k0p, 2.0 * k0p + 0.5 * step, step)
    losses = np.arange(0.0, 1.0 + 1e-9, 1.0 / 40.0)
    media = [Medium(complex(k0p, k0p * li)) for li in losses]
    grid = krho_loci(media, kz)
    lines = ["k0_im,kz,krho_re,krho_im"]
    for med, row in zip(media, grid):
        for kzv, kr in zip(kz, row):
            lines.append(f"{_fmt(med.k0.imag)},{_fmt(kzv)},{_fmt(kr.real)},{_fmt(kr.imag)}")
    path = out_dir / f"{case.case_id}.krho_loci.csv"
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return [path]


def run_suite(config: ExperimentConfig, out_dir, emit_maps=None) -> SuiteReport:
    """Run every case and write CSV (plus optional map files) to out_dir."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    maps = config.emit_maps if emit_maps is None else emit_maps
    report = SuiteReport()
    for case in config.cases:
        rows = run_case(case, config.paths, config.rules, config.n_sweep)
        report.csv_paths.append(_write_case_csv(out, case.case_id, rows))
        report.summary_lines.extend(_summarize_case(case.case_id, rows))
        if maps:
            report.map_paths.extend(_write_theta_map(out, case))
            report.map_paths.extend(_write_loci(out, case))
    return report
