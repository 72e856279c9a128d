"""Exhaustive enumeration of regular weight systems and the duality harness."""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import gcd
from typing import Callable, Dict, Iterable, Iterator, List, Optional

from .cyclotomic import TYPES, classify_type, poset_with_exponents
from .duality import (
    DualPairRecord,
    is_M_dual,
    is_P_dual,
    m_dual_candidate,
    necessary_conditions,
)
from .weights import WeightSystem, exponents, is_regular

AUDIT_H_MAX = 20


def candidates(h: int) -> Iterator[WeightSystem]:
    """All (a1 <= a2 <= a3; h) with a_i <= h/2, reduced or not."""
    half = h // 2
    for a in range(1, half + 1):
        for b in range(a, half + 1):
            for c in range(b, half + 1):
                yield WeightSystem((a, b, c), h)


def is_reduced(w: WeightSystem) -> bool:
    return gcd(w.h, *w.weights) == 1


def _filter(w: WeightSystem, filters: Dict[str, object]) -> bool:
    if not filters:
        return True
    if "mult" in filters and poset_with_exponents(w).mult != filters["mult"]:
        return False
    if "type" in filters and classify_type(w) != filters["type"]:
        return False
    if filters.get("mu0_zero") and exponents(w).mult_of(0) != 0:
        return False
    if filters.get("eps_coprime") and gcd(abs(w.epsilon), w.h) != 1:
        return False
    if filters.get("necessary") and not necessary_conditions(w).passed:
        return False
    pred = filters.get("predicate")
    if callable(pred) and not pred(w):
        return False
    return True


def enumerate_regular(h_max: int, filters: Optional[Dict[str, object]] = None, h_min: int = 2) -> Iterator[WeightSystem]:
    """Reduced regular systems with h_min <= h <= h_max, ascending by (h, weights).

    ``filters`` may contain ``mult`` (int), ``type`` (tag), ``mu0_zero``,
    ``eps_coprime``, ``necessary`` (bools) and ``predicate`` (callable).
    """
    for h in range(max(h_min, 2), h_max + 1):
        for w in candidates(h):
            if is_reduced(w) and is_regular(w) and _filter(w, filters or {}):
                yield w


def _pair_record(w: WeightSystem, ws: WeightSystem) -> DualPairRecord:
    m = m_dual_candidate(w)
    fam, params = None, ()
    if m is not None and m.dual.same_as(ws):
        fam, params = m.family, m.params
    return DualPairRecord(w, ws, fam, params, is_M_dual(w, ws), is_P_dual(w, ws), True)


def enumerate_dual_pairs(h_max: int) -> Iterator[DualPairRecord]:
    """Pairs among systems passing the necessary conditions, each once with W <= W*."""
    for h in range(2, h_max + 1):
        for rec in _verify_h(h, False)["pairs"]:
            yield rec


def _verify_h(h: int, audit: bool) -> dict:
    counts = {"candidates": 0, "regular": 0, "reduced_regular": 0, "mult_one": 0,
              "necessary": 0, "types": {t: 0 for t in TYPES}}
    reduced_regular: List[WeightSystem] = []
    for w in candidates(h):
        counts["candidates"] += 1
        if not is_regular(w):
            continue
        counts["regular"] += 1
        if not is_reduced(w):
            continue
        counts["reduced_regular"] += 1
        reduced_regular.append(w)
        poset = poset_with_exponents(w)
        counts["types"][poset.type_tag] += 1
        if poset.mult == 1:
            counts["mult_one"] += 1
    passing = [w for w in reduced_regular if necessary_conditions(w).passed]
    counts["necessary"] = len(passing)
    pool = reduced_regular if audit and h <= AUDIT_H_MAX else passing

    pairs: List[DualPairRecord] = []
    disagreements: List[dict] = []
    checked = 0
    for i, w in enumerate(pool):
        for ws in pool[i:]:
            for a, b in ((w, ws), (ws, w)) if ws != w else ((w, w),):
                checked += 1
                m, p = is_M_dual(a, b), is_P_dual(a, b)
                if m != p:
                    disagreements.append({"W": str(a), "W_star": str(b), "is_M_dual": m, "is_P_dual": p})
            rec = _pair_record(w, ws)
            if rec.is_M_dual or rec.is_P_dual:
                if not necessary_conditions(w).passed:
                    rec = DualPairRecord(w, ws, rec.family, rec.params, rec.is_M_dual, rec.is_P_dual, False)
                pairs.append(rec)
    for w in passing:
        m = m_dual_candidate(w)
        if m is not None and not any(r.W == w and r.W_star.same_as(m.dual) or r.W_star == w and r.W.same_as(m.dual) for r in pairs):
            disagreements.append({"W": str(w), "W_star": str(m.dual), "missing_family_dual": m.family})
    return {"h": h, "counts": counts, "pairs": pairs, "checked": checked, "disagreements": disagreements}


@dataclass
class EnumerationReport:
    h_max: int
    counts: Dict[int, dict]
    pairs: List[DualPairRecord]
    pairs_checked: int
    disagreements: List[dict]
    audit_unpruned: bool
    elapsed: float = field(default=0.0, compare=False)

    @property
    def verdict(self) -> str:
        return "fail" if self.disagreements else "pass"

    def to_json(self) -> dict:
        return {
            "h_max": self.h_max,
            "audit_unpruned": self.audit_unpruned,
            "counts": {str(h): c for h, c in sorted(self.counts.items())},
            "totals": _totals(self.counts),
            "pairs": [r.to_json() for r in self.pairs],
            "pairs_checked": self.pairs_checked,
            "verdict": self.verdict,
            "counterexamples": self.disagreements,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2) + "\n"


def _totals(counts: Dict[int, dict]) -> dict:
    tot = {"candidates": 0, "regular": 0, "reduced_regular": 0, "mult_one": 0,
           "necessary": 0, "types": {t: 0 for t in TYPES}}
    for c in counts.values():
        for k in ("candidates", "regular", "reduced_regular", "mult_one", "necessary"):
            tot[k] += c[k]
        for t, v in c["types"].items():
            tot["types"][t] += v
    return tot


def _job(args):
    return _verify_h(*args)


def verify_theorem(h_max: int, audit_unpruned: bool = False, workers: int = 1) -> EnumerationReport:
    """Compare the two duality predicates on every candidate pair with equal h <= h_max.

    With ``audit_unpruned`` the pairs at h <= 20 are taken from all reduced
    regular systems instead of those passing the necessary conditions.
    """
    import time

    t0 = time.perf_counter()
    jobs = [(h, audit_unpruned) for h in range(2, h_max + 1)]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            results = list(ex.map(_job, jobs, chunksize=1))
    else:
        results = [_job(j) for j in jobs]
    report = EnumerationReport(h_max, {}, [], 0, [], audit_unpruned)
    for r in results:
        report.counts[r["h"]] = r["counts"]
        report.pairs.extend(r["pairs"])
        report.pairs_checked += r["checked"]
        report.disagreements.extend(r["disagreements"])
    report.elapsed = time.perf_counter() - t0
    return report
