"""Named evaluation schemes: one uniform handle over every Z approximation.

A SchemeSpec names which approximation to run (the two reference engines,
the AFE main sum, Spira's section, the accelerated section in either
summation order, or a custom coefficient vector) plus an optional fixed
cutoff override n.  Without an override, cutoffs resolve per evaluation
point: Ntilde(t) = floor(sqrt(t/2pi)) for the AFE and N(t) = floor(t/2) for
the Spira and accelerated schemes.  Fixed overrides exist because several of
the plots hold N constant across a t window.

SchemeEvaluator turns a spec into a callable object.  Evaluation is pure
(no shared mutable state), so callers may fan points out across threads;
per-point numerical-hazard flags are returned alongside values rather than
counted in hidden state.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import NamedTuple, Optional

from .acceleration_engine import accelerated_triangle, accelerated_vertical
from .errors import DomainError
from .reference_engine import z_euler_maclaurin, z_riemann_siegel
from .sections_engine import CoefficientVector, CutoffPolicy, section, z_custom


class SchemeKind(str, enum.Enum):
    REFERENCE_RS = "REFERENCE_RS"
    ORACLE_EM = "ORACLE_EM"
    AFE = "AFE"
    SPIRA = "SPIRA"
    ACCELERATED_TRIANGLE = "ACCELERATED_TRIANGLE"
    ACCELERATED_COEFF = "ACCELERATED_COEFF"
    CUSTOM = "CUSTOM"


# Kinds whose sums are cut off at floor(t/2) when no override is given.
_HALF_T_KINDS = (SchemeKind.SPIRA, SchemeKind.ACCELERATED_TRIANGLE,
                 SchemeKind.ACCELERATED_COEFF)

_REFERENCE_KINDS = (SchemeKind.REFERENCE_RS, SchemeKind.ORACLE_EM)


@dataclass(frozen=True)
class SchemeSpec:
    """A named approximation scheme, optionally pinned to a fixed cutoff n."""

    kind: SchemeKind
    n: Optional[int] = None
    alpha: Optional[CoefficientVector] = None

    def __post_init__(self):
        kind = SchemeKind(self.kind)
        object.__setattr__(self, "kind", kind)
        if kind is SchemeKind.CUSTOM:
            if self.alpha is None or len(self.alpha) == 0:
                raise DomainError("CUSTOM scheme requires a non-empty coefficient vector")
            if self.n is not None:
                raise DomainError("CUSTOM scheme takes its length from alpha, not n")
        else:
            if self.alpha is not None:
                raise DomainError(f"{kind.value} does not accept a coefficient vector")
            if kind in _REFERENCE_KINDS and self.n is not None:
                raise DomainError(f"{kind.value} does not accept a fixed cutoff")
            if self.n is not None and int(self.n) < 1:
                raise DomainError(f"fixed cutoff must be >= 1, got {self.n}")

    @property
    def label(self) -> str:
        if self.kind is SchemeKind.CUSTOM:
            return f"CUSTOM@{len(self.alpha)}"
        if self.n is not None:
            return f"{self.kind.value}@{self.n}"
        return self.kind.value

    @property
    def is_reference(self) -> bool:
        return self.kind in _REFERENCE_KINDS


class EvalPoint(NamedTuple):
    value: float
    hazard: bool


class SchemeEvaluator:
    """Callable evaluation of one scheme, with per-point hazard flags."""

    def __init__(self, spec: SchemeSpec, *, oracle_terms: Optional[int] = None,
                 correction_order: int = 6):
        self.spec = spec
        self.oracle_terms = oracle_terms
        self.correction_order = correction_order
        self._afe_policy = CutoffPolicy.afe()
        self._spira_policy = CutoffPolicy.spira()

    @property
    def label(self) -> str:
        return self.spec.label

    @property
    def is_reference(self) -> bool:
        return self.spec.is_reference

    def cutoff(self, t: float) -> Optional[int]:
        """The term count used at height t (None when no cutoff notion applies)."""
        spec = self.spec
        if spec.kind is SchemeKind.CUSTOM:
            return len(spec.alpha)
        if spec.kind is SchemeKind.ORACLE_EM:
            return None
        if spec.n is not None:
            return int(spec.n)
        if spec.kind in (SchemeKind.AFE, SchemeKind.REFERENCE_RS):
            return self._afe_policy.resolve(t)
        return self._spira_policy.resolve(t)

    def evaluate(self, t: float) -> EvalPoint:
        spec = self.spec
        kind = spec.kind
        if kind is SchemeKind.REFERENCE_RS:
            ref = z_riemann_siegel(t)
            return EvalPoint(ref.z, ref.hazard)
        if kind is SchemeKind.ORACLE_EM:
            ref = z_euler_maclaurin(t, terms=self.oracle_terms,
                                    correction_order=self.correction_order)
            return EvalPoint(ref.z, False)
        if kind is SchemeKind.AFE:
            n = spec.n if spec.n is not None else self._require_cutoff(t, self._afe_policy)
            return EvalPoint(2.0 * section(t, n), False)
        if kind is SchemeKind.SPIRA:
            n = spec.n if spec.n is not None else self._require_cutoff(t, self._spira_policy)
            return EvalPoint(section(t, n), False)
        if kind is SchemeKind.ACCELERATED_TRIANGLE:
            n = spec.n if spec.n is not None else self._require_cutoff(t, self._spira_policy)
            return EvalPoint(accelerated_triangle(t, n), False)
        if kind is SchemeKind.ACCELERATED_COEFF:
            n = spec.n if spec.n is not None else self._require_cutoff(t, self._spira_policy)
            return EvalPoint(accelerated_vertical(t, n), False)
        return EvalPoint(z_custom(t, spec.alpha), False)

    def value(self, t: float) -> float:
        return self.evaluate(t).value

    @staticmethod
    def _require_cutoff(t: float, policy: CutoffPolicy) -> int:
        n = policy.resolve(t)
        if n < 1:
            raise DomainError(
                f"cutoff resolves to {n} at t = {t}; scheme undefined this low")
        return n


def evaluate_grid(evaluator: SchemeEvaluator, ts, threads: int = 1, chunk: int = 256):
    """Evaluate a scheme over a grid of points: (values array, hazard count).

    Points are processed in fixed-size index chunks, optionally on a thread
    pool, and reassembled positionally, so the result is bit-for-bit
    identical at any thread count.
    """
    import numpy as np
    from concurrent.futures import ThreadPoolExecutor

    ts = list(ts)

    def run_chunk(start: int) -> list:
        return [evaluator.evaluate(t) for t in ts[start:start + chunk]]

    starts = range(0, len(ts), chunk)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            chunks = list(pool.map(run_chunk, starts))
    else:
        chunks = [run_chunk(s) for s in starts]
    values = np.empty(len(ts), dtype=np.float64)
    hazards = 0
    i = 0
    for block in chunks:
        for point in block:
            values[i] = point.value
            hazards += point.hazard
            i += 1
    return values, hazards


_SCHEME_NAMES = {
    "rs": SchemeKind.REFERENCE_RS,
    "reference_rs": SchemeKind.REFERENCE_RS,
    "reference-rs": SchemeKind.REFERENCE_RS,
    "em": SchemeKind.ORACLE_EM,
    "oracle": SchemeKind.ORACLE_EM,
    "oracle_em": SchemeKind.ORACLE_EM,
    "oracle-em": SchemeKind.ORACLE_EM,
    "afe": SchemeKind.AFE,
    "spira": SchemeKind.SPIRA,
    "acc-triangle": SchemeKind.ACCELERATED_TRIANGLE,
    "acc_triangle": SchemeKind.ACCELERATED_TRIANGLE,
    "accelerated_triangle": SchemeKind.ACCELERATED_TRIANGLE,
    "accelerated-triangle": SchemeKind.ACCELERATED_TRIANGLE,
    "acc": SchemeKind.ACCELERATED_COEFF,
    "acc-coeff": SchemeKind.ACCELERATED_COEFF,
    "acc_coeff": SchemeKind.ACCELERATED_COEFF,
    "accelerated": SchemeKind.ACCELERATED_COEFF,
    "accelerated_coeff": SchemeKind.ACCELERATED_COEFF,
    "accelerated-coeff": SchemeKind.ACCELERATED_COEFF,
}


def parse_scheme_kind(name: str) -> SchemeKind:
    """Map a command-line scheme name to its kind (CUSTOM is handled by the CLI)."""
    key = name.strip().lower()
    try:
        return _SCHEME_NAMES[key]
    except KeyError:
        raise DomainError(
            f"unknown scheme {name!r}; choose from "
            f"{sorted(set(_SCHEME_NAMES))} or custom:<coeff-file>") from None
