"""Comparison of numerical spectra against reference character content."""

from __future__ import annotations

from dataclasses import dataclass, field

from .characters import character_table
from .data import twist_matrices


def pair_content(model: str, twist: str, n_levels: int) -> dict:
    """Expected level degeneracies per (alpha, beta-bar) sector of a twisted torus.

    Returns {(alpha, beta): {"h": float, "levels": [counts]}} including the
    sector multiplicity from the twist matrix.
    """
    table = character_table(model)
    tm = twist_matrices(model).matrix(twist)
    labels = table.labels()
    out = {}
    for i, a in enumerate(labels):
        ca = table.coeffs(a, n_levels)
        for j, b in enumerate(labels):
            mult = int(tm[i, j])
            if mult == 0:
                continue
            cb = table.coeffs(b, n_levels)
            levels = [
                mult * sum(ca[n] * cb[m] for n in range(k + 1) if (m := k - n) >= 0)
                for k in range(n_levels + 1)
            ]
            out[(a, b)] = {
                "h": float(table.weight(a) + table.weight(b)),
                "spin": float(table.weight(a) - table.weight(b)),
                "levels": levels,
            }
    return out


@dataclass
class MatchReport:
    model: str
    twist: str
    assignments: dict = field(default_factory=dict)  # sector -> (alpha, beta)
    level_diffs: dict = field(default_factory=dict)  # sector -> [(level, got, want)]
    max_delta_error: float = 0.0
    mismatched: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatched


def match_spectrum(records, model: str, twist: str = "1", n_levels: int = 3,
                   branch_multiplicity: int = 1, delta_tol: float = 0.1) -> MatchReport:
    """Assign each labeled sector of a calibrated spectrum to its character pair.

    records: iterables with .sector (tuple or string), .delta and .level_guess.
    Degeneracy counts are compared level by level; a sector is flagged when its
    bottom state sits further than delta_tol from every admissible pair or when
    a level count disagrees.
    """
    ref = pair_content(model, twist, n_levels)
    report = MatchReport(model=model, twist=twist)
    by_sector: dict = {}
    for rec in records:
        by_sector.setdefault(rec.sector, []).append(rec)
    for sector, recs in by_sector.items():
        recs = sorted(recs, key=lambda r: r.delta)
        base = recs[0].delta
        pair = None
        if isinstance(sector, tuple) and sector in ref:
            pair = sector
        else:
            best = min(ref.items(), key=lambda kv: abs(kv[1]["h"] - base))
            if abs(best[1]["h"] - base) <= delta_tol:
                pair = best[0]
        if pair is None:
            report.mismatched.append((sector, "no admissible primary pair"))
            continue
        report.assignments[sector] = pair
        report.max_delta_error = max(report.max_delta_error, abs(base - ref[pair]["h"]))
        counts = [0] * (n_levels + 1)
        for r in recs:
            lv = getattr(r, "level_guess", None)
            if lv is None:
                lv = round(r.delta - ref[pair]["h"])
            if 0 <= lv <= n_levels:
                counts[lv] += 1
        diffs = []
        for lvl in range(n_levels + 1):
            want = branch_multiplicity * ref[pair]["levels"][lvl]
            diffs.append((lvl, counts[lvl], want))
            if counts[lvl] != want:
                report.mismatched.append((sector, f"level {lvl}: {counts[lvl]} != {want}"))
        report.level_diffs[sector] = diffs
    return report
