"""Command-line harness: evaluation, figures, zero scans, sweeps, decay fits.

Every subcommand emits a CSV table (UTF-8, LF line endings, header row,
floats at 17 significant digits so values round-trip exactly) plus a JSON
summary document {command, config, summary, provenance}.  With --out the
CSV goes to that path and the JSON to the same path with a .json suffix;
without it the CSV goes to stdout and the JSON to stderr, keeping stdout
pipe-clean.

Exit codes: 0 on success, 2 on configuration errors, 3 when a numerical
hazard was flagged (a remainder evaluation inside the cosine-denominator
hazard window, or a tail that refused to converge).

Grid work honors --threads via chunked, positionally reassembled
evaluation, so CSV bodies are byte-identical at any thread count.
"""

from __future__ import annotations

import argparse
import json
import math
import subprocess
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

import numpy as np

from . import __version__
from .acceleration_engine import (
    accelerated_coefficients,
    coefficient_l2_distance,
    step_coefficients,
)
from .errors import ConfigError, ConvergenceError, DomainError, ResourceLimitError
from .reference_engine import z_euler_maclaurin
from .schemes import (
    SchemeEvaluator,
    SchemeKind,
    SchemeSpec,
    evaluate_grid,
    parse_scheme_kind,
)
from .sections_engine import CoefficientVector, section
from .special_functions import theta
from .zero_scanner import (
    DEFAULT_MATCH_TOL,
    compare_zero_sets,
    conjecture_sweep,
    grid_points,
    scan_zeros,
)

# Floor for |value| inside logarithms; an emitted ln of this floor marks an
# exact-zero sample rather than a real magnitude.
_LN_FLOOR = 1e-300

_FIGURE_IDS = ("fig1", "fig2", "fig3", "fig4")


# ---------------------------------------------------------------------------
# configuration


@dataclass(frozen=True)
class RunConfig:
    """Validated bag of everything a subcommand needs.

    Built from parsed argparse values; validate() raises ConfigError before
    any numerical work starts so bad invocations exit early with code 2.
    """

    command: str
    t: Optional[float] = None
    a: Optional[float] = None
    b: Optional[float] = None
    step: Optional[float] = None
    t_list: Optional[tuple] = None
    schemes: tuple = ()
    ref_kind: SchemeKind = SchemeKind.ORACLE_EM
    figure: Optional[str] = None
    n: Optional[int] = None
    k_max: Optional[int] = None
    sweep: Optional[tuple] = None
    t_max: Optional[float] = None
    match_tol: float = DEFAULT_MATCH_TOL
    oracle_terms: Optional[int] = None
    threads: int = 1
    out: Optional[str] = None

    def validate(self) -> None:
        if self.threads < 1:
            raise ConfigError(f"--threads must be >= 1, got {self.threads}")
        if self.oracle_terms is not None and self.oracle_terms < 50:
            raise ConfigError(f"--oracle-terms must be >= 50, got {self.oracle_terms}")
        if self.match_tol <= 0.0:
            raise ConfigError(f"--match-tol must be positive, got {self.match_tol}")
        if self.t is not None and not math.isfinite(self.t):
            raise ConfigError("--t must be finite")
        if self.a is not None:
            if not (math.isfinite(self.a) and math.isfinite(self.b) and self.a < self.b):
                raise ConfigError(f"--range needs a < b, got {self.a}:{self.b}")
            if self.step is None or self.step <= 0.0:
                raise ConfigError("--range needs a positive step")

        if self.command == "eval":
            if not self.schemes:
                raise ConfigError("eval needs at least one --scheme")
            if (self.t is None) == (self.a is None):
                raise ConfigError("eval needs exactly one of --t or --range")
        elif self.command == "figure":
            if self.figure not in _FIGURE_IDS:
                raise ConfigError(f"figure id must be one of {_FIGURE_IDS}")
        elif self.command == "zeros":
            if self.a is None:
                raise ConfigError("zeros needs --range a:b:step")
            if not self.schemes:
                raise ConfigError("zeros needs at least one --scheme")
        elif self.command == "conjecture":
            if self.t_max is None:
                raise ConfigError("conjecture needs --t-max")
            if self.step is None or self.step <= 0.0:
                raise ConfigError("conjecture needs a positive --step")
        elif self.command == "error-decay":
            if not self.schemes:
                raise ConfigError("error-decay needs at least one --scheme")
            for spec in self.schemes:
                if spec.is_reference:
                    raise ConfigError(
                        f"error-decay judges schemes against the oracle; "
                        f"{spec.label} is itself a reference")
            if self.t_list is None or len(self.t_list) < 3:
                raise ConfigError("error-decay needs --t-list with at least 3 points")
            if any(t < 50.0 for t in self.t_list):
                raise ConfigError("error-decay points must all be >= 50")
            if any(u >= v for u, v in zip(self.t_list, self.t_list[1:])):
                raise ConfigError("--t-list must be strictly ascending")
        elif self.command == "coeffs":
            if (self.n is None) == (self.sweep is None):
                raise ConfigError("coeffs needs exactly one of --n or --sweep")
            if self.n is not None and self.n < 1:
                raise ConfigError(f"--n must be >= 1, got {self.n}")
            if self.k_max is not None and self.k_max < 1:
                raise ConfigError(f"--k-max must be >= 1, got {self.k_max}")
            if self.sweep is not None and any(m < 1 for m in self.sweep):
                raise ConfigError("--sweep orders must all be >= 1")
        else:
            raise ConfigError(f"unknown command {self.command!r}")

    def as_dict(self) -> dict:
        """JSON-friendly echo of the settings that shaped this run."""
        doc: dict = {"command": self.command}
        if self.t is not None:
            doc["t"] = self.t
        if self.a is not None:
            doc["range"] = [self.a, self.b, self.step]
        elif self.step is not None:
            doc["step"] = self.step
        if self.t_list is not None:
            doc["t_list"] = list(self.t_list)
        if self.schemes:
            doc["schemes"] = [s.label for s in self.schemes]
        if self.command in ("eval", "error-decay"):
            doc["reference"] = SchemeSpec(kind=self.ref_kind).label
        if self.figure is not None:
            doc["figure"] = self.figure
        if self.n is not None:
            doc["n"] = self.n
        if self.k_max is not None:
            doc["k_max"] = self.k_max
        if self.sweep is not None:
            doc["sweep"] = list(self.sweep)
        if self.t_max is not None:
            doc["t_max"] = self.t_max
        if self.command in ("zeros", "conjecture"):
            doc["match_tol"] = self.match_tol
        if self.oracle_terms is not None:
            doc["oracle_terms"] = self.oracle_terms
        doc["threads"] = self.threads
        if self.out is not None:
            doc["out"] = self.out
        return doc


@dataclass(frozen=True)
class TimeGrid:
    """Evaluation abscissae, either a uniform range or an explicit list."""

    points: tuple
    a: Optional[float] = None
    b: Optional[float] = None
    step: Optional[float] = None

    @classmethod
    def from_range(cls, a: float, b: float, step: float) -> "TimeGrid":
        return cls(points=tuple(grid_points(a, b, step)), a=a, b=b, step=step)

    @classmethod
    def from_points(cls, points) -> "TimeGrid":
        return cls(points=tuple(float(t) for t in points))

    def __len__(self):
        return len(self.points)


@dataclass(frozen=True)
class ErrorReport:
    """Per-scheme absolute errors against the oracle, with fitted decay laws.

    Fit model is chosen by scheme family: plain-section schemes decay
    algebraically so ln(err) is regressed on ln(t); the accelerated schemes
    decay exponentially so ln(err) is regressed on t itself.  Summary
    entries are recomputable from the emitted rows.
    """

    grid: TimeGrid
    labels: tuple
    errors: dict  # label -> tuple of abs errors, aligned with grid.points
    summary: dict  # label -> {model, slope, intercept, rms_residual, max, median}


@dataclass
class CommandResult:
    header: tuple
    rows: list
    summary: dict
    hazard_count: int = 0


# ---------------------------------------------------------------------------
# scheme argument handling


def load_coefficient_file(path: str) -> CoefficientVector:
    """Read one coefficient per line (or comma-separated); '#' starts a comment."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read coefficient file {path!r}: {exc}") from exc
    values = []
    for line in text.splitlines():
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        for token in body.replace(",", " ").split():
            try:
                values.append(float(token))
            except ValueError as exc:
                raise ConfigError(
                    f"bad coefficient {token!r} in {path!r}") from exc
    if not values:
        raise ConfigError(f"coefficient file {path!r} holds no values")
    return CoefficientVector(alpha=tuple(values))


def parse_scheme_args(raw: Optional[list], n: Optional[int]) -> tuple:
    """Expand repeated/comma-joined --scheme values into SchemeSpec objects.

    --n pins the cutoff of every scheme that takes one; references and
    custom vectors have no cutoff knob, so --n passes them by (a mixed
    list like "em,spira --n 205" pins only the section scheme).
    """
    specs = []
    for chunk in raw or []:
        for name in (s.strip() for s in chunk.split(",")):
            if not name:
                continue
            if name.startswith("custom:"):
                vec = load_coefficient_file(name[len("custom:"):])
                specs.append(SchemeSpec(kind=SchemeKind.CUSTOM, alpha=vec.alpha))
                continue
            try:
                kind = parse_scheme_kind(name)
            except (KeyError, ValueError) as exc:
                raise ConfigError(f"unknown scheme {name!r}") from exc
            if kind in (SchemeKind.REFERENCE_RS, SchemeKind.ORACLE_EM):
                specs.append(SchemeSpec(kind=kind))
            else:
                specs.append(SchemeSpec(kind=kind, n=n))
    return tuple(specs)


# ---------------------------------------------------------------------------
# output plumbing


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, float):
        return format(value, ".17g")
    if value is None:
        return ""
    return str(value)


def render_csv(header: tuple, rows: list) -> str:
    lines = [",".join(header)]
    lines.extend(",".join(_fmt(cell) for cell in row) for row in rows)
    return "\n".join(lines) + "\n"


def provenance() -> str:
    """git describe of the source tree, else the package version string."""
    try:
        out = subprocess.run(
            ["git", "describe", "--always", "--dirty", "--tags"],
            cwd=Path(__file__).resolve().parent,
            capture_output=True, text=True, timeout=10, check=True)
        tag = out.stdout.strip()
        if tag:
            return tag
    except (OSError, subprocess.SubprocessError):
        pass
    return f"zsections-{__version__}"


def emit(result: CommandResult, config: RunConfig) -> None:
    csv_text = render_csv(result.header, result.rows)
    doc = {
        "command": config.command,
        "config": config.as_dict(),
        "summary": result.summary,
        "provenance": provenance(),
    }
    json_text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if config.out:
        out_path = Path(config.out)
        out_path.write_text(csv_text, encoding="utf-8", newline="\n")
        sidecar = out_path.with_suffix(".json")
        if sidecar == out_path:
            sidecar = out_path.with_name(out_path.name + ".json")
        sidecar.write_text(json_text, encoding="utf-8", newline="\n")
    else:
        sys.stdout.write(csv_text)
        sys.stderr.write(json_text)


def _ln_abs(value: float) -> float:
    return math.log(max(abs(value), _LN_FLOOR))


# ---------------------------------------------------------------------------
# subcommands


def cmd_eval(config: RunConfig) -> CommandResult:
    """Rows (t, scheme, value, reference, abs_err), t-major scheme-minor."""
    if config.t is not None:
        grid = TimeGrid.from_points([config.t])
    else:
        grid = TimeGrid.from_range(config.a, config.b, config.step)
    ts = list(grid.points)

    ref_eval = SchemeEvaluator(SchemeSpec(kind=config.ref_kind),
                               oracle_terms=config.oracle_terms)
    ref_vals, hazards = evaluate_grid(ref_eval, ts, config.threads)

    columns = {}
    for spec in config.schemes:
        ev = SchemeEvaluator(spec, oracle_terms=config.oracle_terms)
        vals, h = evaluate_grid(ev, ts, config.threads)
        hazards += h
        columns[spec.label] = vals

    rows = []
    for i, t in enumerate(ts):
        for spec in config.schemes:
            v = float(columns[spec.label][i])
            r = float(ref_vals[i])
            rows.append((t, spec.label, v, r, abs(v - r)))

    summary: dict = {
        "points": len(ts),
        "reference": ref_eval.spec.label,
        "hazard_count": hazards,
        "schemes": {},
    }
    for spec in config.schemes:
        errs = np.abs(columns[spec.label] - ref_vals)
        summary["schemes"][spec.label] = {
            "max_abs_err": float(np.max(errs)),
            "median_abs_err": float(np.median(errs)),
        }
    return CommandResult(("t", "scheme", "value", "reference", "abs_err"),
                         rows, summary, hazards)


def _figure_grid_columns(specs: list, a: float, b: float, step: float,
                         oracle_terms: Optional[int], threads: int):
    ts = grid_points(a, b, step)
    cols = []
    hazards = 0
    for spec in specs:
        vals, h = evaluate_grid(SchemeEvaluator(spec, oracle_terms=oracle_terms),
                                ts, threads)
        hazards += h
        cols.append(vals)
    return ts, cols, hazards


def cmd_figure(config: RunConfig) -> CommandResult:
    fig = config.figure
    if fig == "fig1":
        # Sections at fixed t = 3000 for every cutoff up to 1500, against the
        # oracle value and its half; the half line is where the section sits
        # once the cutoff passes sqrt(t/2pi).
        t = 3000.0
        ref = z_euler_maclaurin(t, terms=config.oracle_terms)
        rows = [(n, section(t, n), ref.z, 0.5 * ref.z) for n in range(1, 1501)]
        summary = {"figure": fig, "t": t, "n_max": 1500, "rows": len(rows),
                   "reference": ref.z}
        return CommandResult(("n", "z_section", "z_reference", "z_reference_half"),
                             rows, summary, 0)

    if fig in ("fig2", "fig3"):
        a, b, step = 412.0, 419.0, 0.01
        if fig == "fig2":
            specs = [SchemeSpec(kind=SchemeKind.ORACLE_EM),
                     SchemeSpec(kind=SchemeKind.SPIRA, n=205),
                     SchemeSpec(kind=SchemeKind.AFE, n=8)]
            header = ("t", "ln_abs_reference", "ln_abs_spira_205", "ln_abs_afe_8")
        else:
            specs = [SchemeSpec(kind=SchemeKind.ORACLE_EM),
                     SchemeSpec(kind=SchemeKind.ACCELERATED_COEFF, n=205)]
            header = ("t", "ln_abs_reference", "ln_abs_accelerated_205")
        ts, cols, hazards = _figure_grid_columns(specs, a, b, step,
                                                 config.oracle_terms, config.threads)
        rows = [tuple([t] + [_ln_abs(float(c[i])) for c in cols])
                for i, t in enumerate(ts)]
        summary = {"figure": fig, "range": [a, b, step], "rows": len(rows),
                   "schemes": [s.label for s in specs], "hazard_count": hazards}
        return CommandResult(header, rows, summary, hazards)

    # fig4: coefficient profiles at the cutoff for t = 400, i.e. order 200,
    # plotted out to k = 400.  Beyond the cutoff the step vector is zero by
    # definition and the accelerated vector is not defined, so both emit 0
    # with the comment column flagging the region.
    order = 200
    alpha = accelerated_coefficients(order)
    step_vec = step_coefficients(order)
    rows = []
    for k in range(1, 401):
        if k <= order:
            rows.append((k, float(alpha.alpha[k - 1]), float(step_vec.alpha[k - 1]), ""))
        else:
            rows.append((k, 0.0, 0.0, "beyond-cutoff"))
    summary = {"figure": fig, "order": order, "k_max": 400, "rows": len(rows)}
    return CommandResult(("k", "alpha_accelerated", "alpha_step", "comment"),
                         rows, summary, 0)


def _record_row(label: str, record) -> tuple:
    return (label, record.location, record.bracket[0], record.bracket[1],
            record.residual, record.scale, record.cutoff_jump)


def cmd_zeros(config: RunConfig) -> CommandResult:
    """Scan zeros per scheme; with a reference present, also match sets."""
    header = ("scheme", "location", "bracket_lo", "bracket_hi",
              "residual", "scale", "cutoff_jump")
    has_ref = any(s.is_reference for s in config.schemes)
    rows = []
    summary: dict = {"interval": [config.a, config.b], "step": config.step,
                     "schemes": {}}
    hazards = 0

    if has_ref and len(config.schemes) >= 2:
        comparison = compare_zero_sets(
            (config.a, config.b), list(config.schemes), config.match_tol,
            step=config.step, oracle_terms=config.oracle_terms,
            threads=config.threads)
        summary["match_tol"] = config.match_tol
        ref_scan = comparison.reference
        hazards += ref_scan.hazard_count
        for rec in ref_scan.records:
            rows.append(_record_row(ref_scan.scheme.label, rec))
        summary["reference"] = ref_scan.scheme.label
        summary["schemes"][ref_scan.scheme.label] = {
            "zero_count": len(ref_scan), "dip_count": len(ref_scan.dips)}
        for match in comparison.matches:
            scan = match.scan
            hazards += scan.hazard_count
            for rec in scan.records:
                rows.append(_record_row(scan.scheme.label, rec))
            summary["schemes"][scan.scheme.label] = {
                "zero_count": len(scan),
                "dip_count": len(scan.dips),
                "matched": len(match.matched),
                "missed": len(match.missed),
                "spurious": len(match.spurious),
                "missed_locations": list(match.missed),
                "spurious_locations": list(match.spurious),
                "max_matched_discrepancy": match.max_matched_discrepancy,
            }
    else:
        for spec in config.schemes:
            scan = scan_zeros(spec, config.a, config.b, config.step,
                              oracle_terms=config.oracle_terms,
                              threads=config.threads)
            hazards += scan.hazard_count
            for rec in scan.records:
                rows.append(_record_row(spec.label, rec))
            summary["schemes"][spec.label] = {
                "zero_count": len(scan), "dip_count": len(scan.dips)}

    summary["hazard_count"] = hazards
    return CommandResult(header, rows, summary, hazards)


def cmd_conjecture(config: RunConfig) -> CommandResult:
    """Run the Spira-vs-reference sweep; rows are the anomaly events."""
    sweep = conjecture_sweep(config.t_max, config.step,
                             match_tol=config.match_tol,
                             oracle_terms=config.oracle_terms,
                             threads=config.threads)
    header = ("kind", "location", "nearest_counterpart", "nearest_distance",
              "nearest_cutoff_boundary", "boundary_distance",
              "bracket_lo", "bracket_hi", "residual", "scale", "cutoff_jump")
    rows = []
    for ev in sweep.events:
        bracket = ev.get("bracket")
        rows.append((
            ev["kind"], ev["location"], ev["nearest_counterpart"],
            ev["nearest_distance"], ev["nearest_cutoff_boundary"],
            ev["boundary_distance"],
            bracket[0] if bracket else None,
            bracket[1] if bracket else None,
            ev.get("residual"), ev.get("scale"),
            ev.get("cutoff_jump", False) if bracket else None,
        ))
    summary = {
        "t_min": sweep.t_min, "t_max": sweep.t_max, "step": sweep.step,
        "match_tol": sweep.match_tol,
        "reference": sweep.reference_label, "scheme": sweep.scheme_label,
        "reference_count": sweep.reference_count,
        "scheme_count": sweep.scheme_count,
        "matched": sweep.matched_count,
        "missed": sweep.missed_count,
        "spurious": sweep.spurious_count,
        "max_matched_discrepancy": sweep.max_matched_discrepancy,
        "reference_dips": sweep.reference_dips,
        "scheme_dips": sweep.scheme_dips,
        "hazard_count": sweep.hazard_count,
        "clean": sweep.clean,
    }
    return CommandResult(header, rows, summary, sweep.hazard_count)


def error_decay_report(t_list, specs, oracle_terms: Optional[int] = None,
                       threads: int = 1) -> ErrorReport:
    """Absolute errors vs the EM oracle with least-squares decay fits."""
    grid = TimeGrid.from_points(t_list)
    ts = list(grid.points)
    ref_eval = SchemeEvaluator(SchemeSpec(kind=SchemeKind.ORACLE_EM),
                               oracle_terms=oracle_terms)
    ref_vals, _ = evaluate_grid(ref_eval, ts, threads)

    errors = {}
    summary = {}
    exponential_kinds = (SchemeKind.ACCELERATED_TRIANGLE, SchemeKind.ACCELERATED_COEFF)
    for spec in specs:
        vals, _ = evaluate_grid(SchemeEvaluator(spec, oracle_terms=oracle_terms),
                                ts, threads)
        errs = tuple(abs(float(v) - float(r)) for v, r in zip(vals, ref_vals))
        errors[spec.label] = errs
        ln_err = np.array([math.log(max(e, _LN_FLOOR)) for e in errs])
        if spec.kind in exponential_kinds:
            model = "exponential"
            x = np.array(ts)
        else:
            model = "algebraic"
            x = np.log(np.array(ts))
        slope, intercept = np.polyfit(x, ln_err, 1)
        fitted = slope * x + intercept
        rms = float(math.sqrt(np.mean((ln_err - fitted) ** 2)))
        summary[spec.label] = {
            "model": model,
            "slope": float(slope),
            "intercept": float(intercept),
            "rms_residual": rms,
            "max_abs_err": max(errs),
            "median_abs_err": float(np.median(errs)),
        }
    return ErrorReport(grid=grid, labels=tuple(s.label for s in specs),
                       errors=errors, summary=summary)


def cmd_error_decay(config: RunConfig) -> CommandResult:
    report = error_decay_report(config.t_list, config.schemes,
                                oracle_terms=config.oracle_terms,
                                threads=config.threads)
    rows = []
    for i, t in enumerate(report.grid.points):
        for label in report.labels:
            rows.append((t, label, report.errors[label][i]))
    return CommandResult(("t", "scheme", "abs_err"), rows,
                         {"points": len(report.grid), "fits": report.summary}, 0)


def cmd_coeffs(config: RunConfig) -> CommandResult:
    if config.n is not None:
        order = config.n
        k_max = config.k_max if config.k_max is not None else order
        alpha = accelerated_coefficients(order)
        step_vec = step_coefficients(order)
        rows = []
        for k in range(1, k_max + 1):
            if k <= order:
                rows.append((k, float(alpha.alpha[k - 1]),
                             float(step_vec.alpha[k - 1]), ""))
            else:
                rows.append((k, 0.0, 0.0, "beyond-cutoff"))
        summary = {"order": order, "k_max": k_max,
                   "alpha_first": float(alpha.alpha[0]),
                   "alpha_last": float(alpha.alpha[order - 1])}
        return CommandResult(("k", "alpha_accelerated", "alpha_step", "comment"),
                             rows, summary, 0)

    rows = []
    distances = {}
    for order in config.sweep:
        d = coefficient_l2_distance(order)
        distances[str(order)] = d
        rows.append((order, d))
    return CommandResult(("n", "l2_distance"), rows,
                         {"orders": list(config.sweep), "l2_distances": distances}, 0)


_DISPATCH = {
    "eval": cmd_eval,
    "figure": cmd_figure,
    "zeros": cmd_zeros,
    "conjecture": cmd_conjecture,
    "error-decay": cmd_error_decay,
    "coeffs": cmd_coeffs,
}


# ---------------------------------------------------------------------------
# argument parsing


def _parse_range(text: str) -> tuple:
    parts = text.split(":")
    if len(parts) != 3:
        raise ConfigError(f"--range must look like a:b:step, got {text!r}")
    try:
        a, b, step = (float(p) for p in parts)
    except ValueError as exc:
        raise ConfigError(f"--range must hold numbers, got {text!r}") from exc
    return a, b, step


def _parse_float_list(text: str) -> tuple:
    try:
        return tuple(float(p) for p in text.split(",") if p.strip())
    except ValueError as exc:
        raise ConfigError(f"bad numeric list {text!r}") from exc


def _parse_int_list(text: str) -> tuple:
    try:
        return tuple(int(p) for p in text.split(",") if p.strip())
    except ValueError as exc:
        raise ConfigError(f"bad integer list {text!r}") from exc


def _add_common(sub: argparse.ArgumentParser, *, schemes: bool = True) -> None:
    if schemes:
        sub.add_argument("--scheme", action="append", metavar="NAME",
                         help="scheme name (repeatable or comma-joined): rs, em, "
                              "afe, spira, acc, acc-triangle, custom:<file>")
        sub.add_argument("--n", type=int, default=None,
                         help="fixed cutoff for schemes that take one")
    sub.add_argument("--out", default=None, metavar="PATH",
                     help="CSV output path (JSON summary lands beside it); "
                          "default stdout/stderr")
    sub.add_argument("--threads", type=int, default=1)
    sub.add_argument("--oracle-terms", type=int, default=None, dest="oracle_terms",
                     help="partial-sum length override for the oracle")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="zsections",
        description="Numerical experiments with sections of the Hardy Z function.")
    parser.add_argument("--version", action="version",
                        version=f"zsections {__version__}")
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("eval", help="evaluate schemes against a reference")
    p.add_argument("--t", type=float, default=None)
    p.add_argument("--range", default=None, metavar="A:B:STEP")
    p.add_argument("--ref", choices=("em", "rs"), default="em",
                   help="referee: Euler-Maclaurin oracle or Riemann-Siegel")
    _add_common(p)

    p = subs.add_parser("figure", help="emit data behind one of the four figures")
    p.add_argument("figure", choices=_FIGURE_IDS)
    _add_common(p, schemes=False)

    p = subs.add_parser("zeros", help="scan and match zero sets on an interval")
    p.add_argument("--range", required=True, metavar="A:B:STEP")
    p.add_argument("--match-tol", type=float, default=DEFAULT_MATCH_TOL,
                   dest="match_tol")
    _add_common(p)

    p = subs.add_parser("conjecture", help="Spira-vs-reference zero sweep from t=30")
    p.add_argument("--t-max", type=float, required=True, dest="t_max")
    p.add_argument("--step", type=float, default=0.005)
    p.add_argument("--match-tol", type=float, default=DEFAULT_MATCH_TOL,
                   dest="match_tol")
    _add_common(p, schemes=False)

    p = subs.add_parser("error-decay", help="fit error-decay laws over a t list")
    p.add_argument("--t-list", required=True, dest="t_list", metavar="T1,T2,...")
    _add_common(p)

    p = subs.add_parser("coeffs", help="coefficient profiles and l2 distances")
    p.add_argument("--sweep", default=None, metavar="N1,N2,...",
                   help="emit l2 distance to the step vector for these orders")
    p.add_argument("--k-max", type=int, default=None, dest="k_max")
    _add_common(p)

    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    a = b = step = None
    range_text = getattr(args, "range", None)
    if range_text is not None:
        a, b, step = _parse_range(range_text)
    if getattr(args, "step", None) is not None:
        step = args.step
    t_list = None
    if getattr(args, "t_list", None) is not None:
        t_list = _parse_float_list(args.t_list)
    sweep = None
    if getattr(args, "sweep", None) is not None:
        sweep = _parse_int_list(args.sweep)
    ref_kind = SchemeKind.ORACLE_EM
    if getattr(args, "ref", "em") == "rs":
        ref_kind = SchemeKind.REFERENCE_RS

    command = args.command
    schemes = ()
    n = getattr(args, "n", None)
    if hasattr(args, "scheme"):
        schemes = parse_scheme_args(args.scheme, n if command != "coeffs" else None)

    config = RunConfig(
        command=command,
        t=getattr(args, "t", None),
        a=a, b=b, step=step,
        t_list=t_list,
        schemes=schemes,
        ref_kind=ref_kind,
        figure=getattr(args, "figure", None) if command == "figure" else None,
        n=n if command == "coeffs" else None,
        k_max=getattr(args, "k_max", None),
        sweep=sweep,
        t_max=getattr(args, "t_max", None),
        match_tol=getattr(args, "match_tol", DEFAULT_MATCH_TOL),
        oracle_terms=getattr(args, "oracle_terms", None),
        threads=getattr(args, "threads", 1),
        out=getattr(args, "out", None),
    )
    config.validate()
    return config


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = config_from_args(args)
        result = _DISPATCH[config.command](config)
    except (ConfigError, DomainError, ResourceLimitError) as exc:
        print(f"zsections: error: {exc}", file=sys.stderr)
        return 2
    except ConvergenceError as exc:
        print(f"zsections: numerical hazard: {exc}", file=sys.stderr)
        return 3
    emit(result, config)
    if result.hazard_count > 0:
        print(f"zsections: numerical hazard: {result.hazard_count} flagged "
              f"evaluation(s)", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
