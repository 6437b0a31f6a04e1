"""End-to-end certification: curve -> conditional bound -> per-prime verdicts -> report."""

from __future__ import annotations

import json
import logging
import os
from dataclasses import dataclass, field
from pathlib import Path

from .arith import primes_up_to, radical
from .bounds import DEFAULT_PRECISION, BoundReport, serre_bound
from .curve import CurveProfile, parse_curve, profile
from .galois_image import CertifyOutcome, CMCurveError, Mode, certify
from .reduction import TraceCache, TraceRecord, TraceTable

__all__ = [
    "CertificationReport",
    "RunConfig",
    "cache_roundtrip",
    "default_cache_dir",
    "report_to_json",
    "run_report",
]

log = logging.getLogger(__name__)

CACHE_ENV = "SERRE_CACHE_DIR"


def default_cache_dir() -> Path:
    base = os.environ.get("XDG_CACHE_HOME") or Path.home() / ".cache"
    return Path(base) / "galoiscert"


@dataclass
class RunConfig:
    pmax_witness: int = 10**5
    mode: Mode = Mode.FULL
    cache_dir: Path | None = None
    use_cache: bool = True
    precision_bits: int = DEFAULT_PRECISION
    output: str = "text"

    def __post_init__(self):
        self.mode = Mode(self.mode)
        if self.pmax_witness < 2:
            raise ValueError("pmax_witness must be >= 2")
        if self.precision_bits < DEFAULT_PRECISION:
            raise ValueError(f"precision_bits must be >= {DEFAULT_PRECISION}")
        if self.output not in ("text", "json"):
            raise ValueError("output must be 'text' or 'json'")

    def resolve_cache(self) -> TraceCache | None:
        if not self.use_cache:
            return None
        env = os.environ.get(CACHE_ENV)
        directory = Path(env) if env else (self.cache_dir or default_cache_dir())
        return TraceCache(directory)


@dataclass
class CertificationReport:
    profile: CurveProfile
    bound: BoundReport
    per_ell: list[CertifyOutcome]
    config: RunConfig = field(repr=False)

    @property
    def unresolved(self) -> list[int]:
        return [o.ell for o in self.per_ell if not o.certified]

    @property
    def conclusion(self) -> str:
        if not self.unresolved:
            return ("Assuming GRH, the mod-ell Galois representation is surjective "
                    "for every prime ell.")
        listed = ", ".join(map(str, self.unresolved))
        return ("Assuming GRH, the mod-ell Galois representation is surjective for every "
                f"prime ell except possibly ell in {{{listed}}}.")

    def to_dict(self) -> dict:
        prof = self.profile
        return {
            "curve": str(prof.original),
            "minimal_model": str(prof.curve),
            "delta_min": prof.delta_min,
            "conductor_radical": prof.conductor_radical,
            "cm": prof.cm,
            "bound": {
                "raw": self.bound.raw_string(),
                "integer": self.bound.integer_bound,
                "formula": "964*log(rad(2N))+5760",
                "input_radical": self.bound.input_radical,
                "precision_bits": self.bound.precision_bits,
            },
            "primes": [
                {
                    "ell": o.ell,
                    "status": o.label,
                    "method": o.method,
                    "witnesses": o.witnesses(),
                    "missing": list(o.missing),
                    "pmax": o.pmax,
                }
                for o in self.per_ell
            ],
            "summary": {
                "certified_range": f"all primes ell <= {self.bound.integer_bound}",
                "unresolved": self.unresolved,
                "grh_conclusion": self.conclusion,
            },
        }

    def to_text(self) -> str:
        prof = self.profile
        n = len(self.per_ell)
        lines = [
            f"curve              {prof.original}",
            f"minimal model      {prof.curve}",
            f"minimal disc       {prof.delta_min}",
            f"rad(N_E)           {prof.conductor_radical}",
            f"bound              {self.bound.raw_string(12)} -> {self.bound.integer_bound}",
            f"primes checked     {n} (ell <= {self.bound.integer_bound})",
            f"certified          {n - len(self.unresolved)}",
        ]
        for o in self.per_ell:
            if not o.certified:
                detail = ", ".join(o.missing) if o.missing else o.method
                lines.append(f"  ell = {o.ell}: {o.label} ({detail})")
        lines.append(self.conclusion)
        return "\n".join(lines)


def report_to_json(report: CertificationReport) -> str:
    return json.dumps(report.to_dict(), indent=2) + "\n"


def run_report(curve_text: str, config: RunConfig | None = None) -> CertificationReport:
    """Bound the non-surjective primes of a curve and certify every prime up to it."""
    config = config or RunConfig()
    prof = profile(parse_curve(curve_text))
    if prof.cm:
        raise CMCurveError(
            f"curve {prof.original} has CM (j = {prof.invariants.j}); "
            "the surjectivity bound only applies to curves without CM")
    bound = serre_bound(radical(2 * prof.conductor_radical), config.precision_bits)
    traces = TraceTable(prof, config.resolve_cache())
    per_ell = []
    for ell in primes_up_to(bound.integer_bound):
        per_ell.append(certify(prof, ell, config.pmax_witness, config.mode, traces))
    log.info("certified %d of %d primes", sum(o.certified for o in per_ell), len(per_ell))
    return CertificationReport(prof, bound, per_ell, config)


def cache_roundtrip(prof: CurveProfile, records: list[TraceRecord],
                    cache: TraceCache) -> list[TraceRecord]:
    cache.write(prof, records)
    return cache.read(prof)
