"""Zero location and zero-set comparison for Z approximation schemes.

The scanner walks a uniform grid over [a, b], brackets every sign change,
and bisects each bracket down to width 1e-9.  Two diagnostics ride along:

  * dip events: |f| dropping below 0.1 at a local minimum without a sign
    change suggests a curvature-driven near-double root the grid cannot
    split, so the neighborhood is re-scanned at step/10 and any zeros found
    there are merged into the record list;
  * cutoff jumps: schemes whose cutoff re-resolves per point (N = floor(t/2)
    and friends) are genuinely piecewise in t, and a refined bracket that
    still straddles a cutoff boundary is flagged - the "sign change" may be
    a step discontinuity of the piecewise family rather than a vanishing.
    Flagged records keep their bracket but their residual reports the jump
    half-height instead of ~0, so the residual invariant applies only to
    unflagged records.

Comparisons match scheme zeros to reference zeros greedily by distance
(injectively, within match_tol) and report matched / missed / spurious.
The conjecture sweep runs the Spira scheme with its exact per-point cutoff
against a trusted referee over [30, t_max] and dumps every mismatch with
enough context to inspect what happened; it completes whether or not the
sweep is clean.

Grid values are computed in fixed-size index chunks, optionally on a thread
pool; chunks are assembled positionally before the single sequential
sign-change pass, so results are bit-for-bit identical at any thread count.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import DomainError
from .schemes import SchemeEvaluator, SchemeKind, SchemeSpec, evaluate_grid

BRACKET_WIDTH = 1e-9
MAX_BISECT_ITERS = 60
DIP_THRESHOLD = 0.1
DEFAULT_MATCH_TOL = 0.05

SWEEP_T_MIN = 30.0
SWEEP_CEILING = 1.0e4
# Above this height the sweep referee switches from the EM oracle to the
# much cheaper first-order Riemann-Siegel engine.
RS_REFEREE_ABOVE = 5000.0


@dataclass(frozen=True)
class ZeroRecord:
    """One bracketed zero (or flagged piecewise sign flip) of a scheme."""

    scheme: SchemeSpec
    location: float
    bracket: tuple
    residual: float
    scale: float
    cutoff_jump: bool = False


@dataclass(frozen=True)
class DipEvent:
    """|f| dipped below DIP_THRESHOLD at a grid local minimum without a sign change."""

    scheme: SchemeSpec
    t: float
    value: float
    zeros_found: int


@dataclass(frozen=True)
class ScanResult(Sequence):
    """Sorted zero records plus scan diagnostics; behaves as a sequence of records."""

    scheme: SchemeSpec
    a: float
    b: float
    step: float
    records: tuple
    dips: tuple
    hazard_count: int

    def __len__(self):
        return len(self.records)

    def __getitem__(self, i):
        return self.records[i]

    @property
    def locations(self) -> tuple:
        return tuple(r.location for r in self.records)


@dataclass(frozen=True)
class SchemeMatch:
    """Greedy injective matching of one scheme's zeros against the reference's."""

    scheme: SchemeSpec
    scan: ScanResult
    matched: tuple  # pairs (reference location, scheme location)
    missed: tuple  # reference locations with no partner
    spurious: tuple  # scheme locations with no partner

    @property
    def max_matched_discrepancy(self) -> float:
        if not self.matched:
            return 0.0
        return max(abs(r - s) for r, s in self.matched)


@dataclass(frozen=True)
class ZeroComparison:
    interval: tuple
    step: float
    match_tol: float
    reference: ScanResult
    matches: tuple  # one SchemeMatch per non-reference entry, input order

    def for_label(self, label: str) -> SchemeMatch:
        for m in self.matches:
            if m.scheme.label == label:
                return m
        raise KeyError(label)


def grid_points(a: float, b: float, step: float) -> list:
    # floor with a relative guard so that b lands on the grid whenever
    # (b - a)/step is an integer up to float dust.
    q = (b - a) / step
    n = int(math.floor(q * (1.0 + 1e-12) + 1e-12))
    return [a + i * step for i in range(n + 1)]


def _bisect(evaluator: SchemeEvaluator, lo: float, hi: float, f_lo: float):
    lo_neg = f_lo < 0.0
    for _ in range(MAX_BISECT_ITERS):
        if hi - lo <= BRACKET_WIDTH:
            break
        mid = 0.5 * (lo + hi)
        if (evaluator.value(mid) < 0.0) == lo_neg:
            lo = mid
        else:
            hi = mid
    return lo, hi


def _cutoff_jump(evaluator: SchemeEvaluator, lo: float, hi: float) -> bool:
    c_lo = evaluator.cutoff(lo)
    c_hi = evaluator.cutoff(hi)
    return c_lo is not None and c_lo != c_hi


def _record_from_bracket(evaluator: SchemeEvaluator, spec: SchemeSpec,
                         lo: float, hi: float, f_lo: float, f_hi: float) -> ZeroRecord:
    scale = max(abs(f_lo), abs(f_hi))
    rlo, rhi = _bisect(evaluator, lo, hi, f_lo)
    location = 0.5 * (rlo + rhi)
    return ZeroRecord(
        scheme=spec,
        location=location,
        bracket=(rlo, rhi),
        residual=abs(evaluator.value(location)),
        scale=scale,
        cutoff_jump=_cutoff_jump(evaluator, rlo, rhi),
    )


def scan_zeros(scheme: SchemeSpec, a: float, b: float, step: float, *,
               oracle_terms: Optional[int] = None, threads: int = 1) -> ScanResult:
    """All bracketed sign changes of a scheme on the grid a, a+step, ..., b."""
    a, b, step = float(a), float(b), float(step)
    if not (math.isfinite(a) and math.isfinite(b) and math.isfinite(step)):
        raise DomainError("scan bounds and step must be finite")
    if not 0.0 < a < b:
        raise DomainError(f"scan requires 0 < a < b, got ({a}, {b})")
    if step <= 0.0:
        raise DomainError(f"scan step must be positive, got {step}")
    if step > (b - a) * (1.0 + 1e-12):
        raise DomainError(f"step {step} exceeds interval length {b - a}")

    evaluator = SchemeEvaluator(scheme, oracle_terms=oracle_terms)
    ts = grid_points(a, b, step)
    vals, hazards = evaluate_grid(evaluator, ts, threads)

    records = []
    for i in range(len(ts) - 1):
        if vals[i] * vals[i + 1] < 0.0:
            records.append(_record_from_bracket(
                evaluator, scheme, ts[i], ts[i + 1], vals[i], vals[i + 1]))

    # Dip diagnostic: near-touch local minima without a sign change trigger
    # a tenfold-finer local re-scan.
    dips = []
    for i in range(1, len(ts) - 1):
        av = abs(vals[i])
        if (av < DIP_THRESHOLD
                and av <= abs(vals[i - 1]) and av <= abs(vals[i + 1])
                and vals[i - 1] * vals[i] > 0.0 and vals[i] * vals[i + 1] > 0.0):
            fine = grid_points(ts[i - 1], ts[i + 1], step / 10.0)
            fvals = [evaluator.value(t) for t in fine]
            found = 0
            for j in range(len(fine) - 1):
                if fvals[j] * fvals[j + 1] < 0.0:
                    records.append(_record_from_bracket(
                        evaluator, scheme, fine[j], fine[j + 1], fvals[j], fvals[j + 1]))
                    found += 1
            dips.append(DipEvent(scheme=scheme, t=ts[i], value=float(vals[i]),
                                 zeros_found=found))

    records.sort(key=lambda r: r.location)
    deduped = []
    for rec in records:
        if deduped and abs(rec.location - deduped[-1].location) <= 1e-8:
            continue
        deduped.append(rec)
    return ScanResult(scheme=scheme, a=a, b=b, step=step,
                      records=tuple(deduped), dips=tuple(dips), hazard_count=hazards)


def _greedy_match(ref_locs: tuple, locs: tuple, tol: float):
    """Injective nearest-first matching within tol; deterministic tie-breaks."""
    candidates = []
    for i, r in enumerate(ref_locs):
        for j, x in enumerate(locs):
            d = abs(r - x)
            if d <= tol:
                candidates.append((d, r, x, i, j))
    candidates.sort()
    used_ref, used_loc = set(), set()
    pairs = []
    for d, r, x, i, j in candidates:
        if i in used_ref or j in used_loc:
            continue
        used_ref.add(i)
        used_loc.add(j)
        pairs.append((r, x))
    pairs.sort()
    missed = tuple(r for i, r in enumerate(ref_locs) if i not in used_ref)
    spurious = tuple(x for j, x in enumerate(locs) if j not in used_loc)
    return tuple(pairs), missed, spurious


def compare_zero_sets(interval: tuple, schemes: list, match_tol: float = DEFAULT_MATCH_TOL, *,
                      step: float = 0.005, oracle_terms: Optional[int] = None,
                      threads: int = 1) -> ZeroComparison:
    """Scan every scheme on the interval and match each against the reference.

    The first reference-kind entry (ORACLE_EM or REFERENCE_RS) is the
    referee; every other entry is matched against it greedily within
    match_tol.  Matching is injective, so matched + missed always equals the
    reference count.
    """
    a, b = float(interval[0]), float(interval[1])
    if match_tol <= 0.0:
        raise DomainError(f"match_tol must be positive, got {match_tol}")
    specs = list(schemes)
    ref_index = next((i for i, s in enumerate(specs) if s.is_reference), None)
    if ref_index is None:
        raise DomainError("compare_zero_sets needs a reference scheme in the list")
    ref_spec = specs[ref_index]

    ref_scan = scan_zeros(ref_spec, a, b, step, oracle_terms=oracle_terms, threads=threads)
    matches = []
    for i, spec in enumerate(specs):
        if i == ref_index:
            continue
        scan = scan_zeros(spec, a, b, step, oracle_terms=oracle_terms, threads=threads)
        pairs, missed, spurious = _greedy_match(
            ref_scan.locations, scan.locations, match_tol)
        matches.append(SchemeMatch(scheme=spec, scan=scan, matched=pairs,
                                   missed=missed, spurious=spurious))
    return ZeroComparison(interval=(a, b), step=step, match_tol=match_tol,
                          reference=ref_scan, matches=tuple(matches))


@dataclass(frozen=True)
class ConjectureSummary:
    """Outcome of one Spira-vs-reference sweep; clean means 0 missed, 0 spurious."""

    t_min: float
    t_max: float
    step: float
    match_tol: float
    reference_label: str
    scheme_label: str
    reference_count: int
    scheme_count: int
    matched_count: int
    missed_count: int
    spurious_count: int
    max_matched_discrepancy: float
    events: tuple  # one dict per missed/spurious zero, with local context
    reference_dips: int
    scheme_dips: int
    hazard_count: int

    @property
    def clean(self) -> bool:
        return self.missed_count == 0 and self.spurious_count == 0


def _nearest(x: float, pool: tuple):
    if not pool:
        return None, float("inf")
    best = min(pool, key=lambda y: abs(y - x))
    return best, abs(best - x)


def _event(kind: str, location: float, other_locs: tuple, record: Optional[ZeroRecord]):
    nearest, dist = _nearest(location, other_locs)
    boundary = 2.0 * round(location / 2.0)  # nearest cutoff jump of floor(t/2)
    ev = {
        "kind": kind,
        "location": location,
        "nearest_counterpart": nearest,
        "nearest_distance": dist if nearest is not None else None,
        "nearest_cutoff_boundary": boundary,
        "boundary_distance": abs(location - boundary),
    }
    if record is not None:
        ev["bracket"] = list(record.bracket)
        ev["residual"] = record.residual
        ev["scale"] = record.scale
        ev["cutoff_jump"] = record.cutoff_jump
    return ev


def conjecture_sweep(t_max: float, step: float, *, match_tol: float = DEFAULT_MATCH_TOL,
                     oracle_terms: Optional[int] = None, threads: int = 1,
                     ceiling: float = SWEEP_CEILING) -> ConjectureSummary:
    """Spira-scheme zeros (exact floor(t/2) cutoff) vs reference over [30, t_max].

    Every missed or spurious zero is reported as an event carrying its
    surroundings (nearest counterpart, distance to the nearest cutoff
    boundary, bracket and flags when a record exists).  The sweep always
    completes and returns the summary; a clean run corroborates the
    real-zeros conjecture at desk scale, a dirty one is a finding to read.
    """
    t_max = float(t_max)
    if not SWEEP_T_MIN <= t_max <= ceiling:
        raise DomainError(f"t_max must lie in [{SWEEP_T_MIN}, {ceiling}], got {t_max}")
    if step <= 0.0:
        raise DomainError(f"step must be positive, got {step}")

    ref_kind = SchemeKind.ORACLE_EM if t_max <= RS_REFEREE_ABOVE else SchemeKind.REFERENCE_RS
    ref_spec = SchemeSpec(kind=ref_kind)
    spira_spec = SchemeSpec(kind=SchemeKind.SPIRA)

    if t_max - SWEEP_T_MIN < step:
        return ConjectureSummary(
            t_min=SWEEP_T_MIN, t_max=t_max, step=step, match_tol=match_tol,
            reference_label=ref_spec.label, scheme_label=spira_spec.label,
            reference_count=0, scheme_count=0, matched_count=0,
            missed_count=0, spurious_count=0, max_matched_discrepancy=0.0,
            events=(), reference_dips=0, scheme_dips=0, hazard_count=0)

    comparison = compare_zero_sets(
        (SWEEP_T_MIN, t_max), [ref_spec, spira_spec], match_tol,
        step=step, oracle_terms=oracle_terms, threads=threads)
    match = comparison.matches[0]
    scan = match.scan
    by_location = {r.location: r for r in scan.records}

    events = []
    for loc in match.missed:
        events.append(_event("missed", loc, scan.locations, None))
    for loc in match.spurious:
        events.append(_event("spurious", loc, comparison.reference.locations,
                             by_location.get(loc)))
    events.sort(key=lambda e: e["location"])

    return ConjectureSummary(
        t_min=SWEEP_T_MIN, t_max=t_max, step=step, match_tol=match_tol,
        reference_label=ref_spec.label, scheme_label=spira_spec.label,
        reference_count=len(comparison.reference), scheme_count=len(scan),
        matched_count=len(match.matched), missed_count=len(match.missed),
        spurious_count=len(match.spurious),
        max_matched_discrepancy=match.max_matched_discrepancy,
        events=tuple(events),
        reference_dips=len(comparison.reference.dips), scheme_dips=len(scan.dips),
        hazard_count=comparison.reference.hazard_count + scan.hazard_count)
