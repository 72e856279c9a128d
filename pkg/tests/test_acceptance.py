"""Acceptance criteria, one test each; every test prints a PASS/FAIL line.

Run alone with ``pytest tests/test_acceptance.py -v -s`` (the summary lines
are also repeated at the end of any pytest run).
"""

import subprocess
import sys
import time
from fractions import Fraction

from rwsdual.cyclotomic import (
    classify_type,
    mult_one_iff_alternating,
    poset_with_exponents,
    reconstruction_check,
    template_matches,
)
from rwsdual.duality import (
    closed_form_dual_poly,
    closed_form_sector_polys,
    dual_char_poly,
    family_instances,
    is_M_dual,
    is_P_dual,
    necessary_conditions,
    sector_polys,
)
from rwsdual.orbifold import (
    chi_from_exponents,
    chi_orbifold,
    l1_vanishing_check,
    principal_group,
    sector_decomposition,
    trivial_group,
)
from rwsdual.algebra import BiLaurent
from rwsdual.search import verify_theorem
from rwsdual.weights import WeightSystem, exponents, rank

from suite import record, regular_suite


def _examples(items, k=4):
    items = list(items)
    head = ", ".join(str(x) for x in items[:k])
    return head + (f", ... ({len(items)} total)" if len(items) > k else "")


def test_criterion_1_hand_value():
    w = WeightSystem((1, 1, 1), 3)
    t0 = time.perf_counter()
    chi = chi_orbifold(w, principal_group(w))
    dt = time.perf_counter() - t0
    expected = BiLaurent({(0, 0): 1, (1, 0): -1, (0, 1): -1, (1, 1): 1}, 6)
    ok = chi == expected and dt < 1.0
    record(1, "chi((1,1,1;3), G0) = 1 - y - ybar + y ybar", ok, f"got {chi}, {dt:.3f}s")
    assert chi == expected
    assert dt < 1.0


def test_criterion_2_untwisted_consistency():
    t0 = time.perf_counter()
    suite = regular_suite(60)
    bad = [w for w in suite if chi_orbifold(w, trivial_group(w)) != chi_from_exponents(w)]
    dt = time.perf_counter() - t0
    ok = not bad and dt < 300
    record(2, "chi(W,{id}) equals the T^h = y ybar rewrite, h <= 60", ok,
           f"{len(suite)} systems, {len(bad)} mismatches, {dt:.1f}s")
    assert not bad, _examples(bad)
    assert dt < 300


def test_criterion_3_symmetry_and_rank():
    bad_sym, bad_rank = [], []
    suite = regular_suite(60)
    for w in suite:
        ms = exponents(w).exponents
        if any(ms[i] + ms[-1 - i] != w.h for i in range(len(ms))):
            bad_sym.append(w)
        if Fraction(len(ms)) != rank(w):
            bad_rank.append(w)
    ok = not bad_sym and not bad_rank
    record(3, "exponent symmetry m_i + m_(mu+1-i) = h and rank formula, h <= 60", ok,
           f"{len(suite)} systems, {len(bad_sym)} symmetry and {len(bad_rank)} rank failures")
    assert ok


def test_criterion_4_cyclotomic_structure():
    suite = regular_suite(60)
    recon, mult_pos, remark, thm22, templates = [], [], [], [], []
    for w in suite:
        if len({t for t, _ in template_matches(w)}) != 1:
            templates.append(w)
            continue
        if not reconstruction_check(w, expand_limit=500):
            recon.append(w)
        p = poset_with_exponents(w)
        if p.mult < 1:
            mult_pos.append(w)
        ex = exponents(w)
        if p.mult != ex.mult_of(-1) + ex.mult_of(1):
            remark.append(w)
        m1, alt = mult_one_iff_alternating(w)
        if m1 != alt:
            thm22.append(w)
    parts = {
        "reconstruction": recon,
        "mult >= 1": mult_pos,
        "mult = mu_-1 + mu_1": remark,
        "mult = 1 iff alternating": thm22,
        "exactly one template": templates,
    }
    ok = not any(parts.values())
    detail = "; ".join(f"{k}: {len(v)} failures" + (f" [{_examples(v, 3)}]" if v else "") for k, v in parts.items())
    record(4, f"cyclotomic structure on {len(suite)} systems, h <= 60", ok, detail)
    for k, v in parts.items():
        print(f"    {k}: {'ok' if not v else 'FAIL ' + _examples(v, 30)}")
    assert ok, detail


def test_criterion_5_p_dual_iff_m_dual():
    t0 = time.perf_counter()
    report = verify_theorem(40)
    dt = time.perf_counter() - t0
    golden = [
        (WeightSystem((10, 6, 15), 30), WeightSystem((10, 6, 15), 30), "I"),
        (WeightSystem((8, 12, 3), 24), WeightSystem((8, 6, 9), 24), "II"),
        (WeightSystem((11, 9, 4), 31), WeightSystem((13, 6, 5), 31), "V"),
    ]
    found = []
    for w, ws, fam in golden:
        hit = [r for r in report.pairs
               if {r.W.key(), r.W_star.key()} == {w.key(), ws.key()} and r.family == fam]
        found.append(bool(hit) and is_P_dual(w, ws) and is_M_dual(w, ws))
    pairs = sorted({tuple(sorted((d["W"], d["W_star"]))) for d in report.disagreements})
    ok = not report.disagreements and all(found) and dt < 900
    record(5, "is_P_dual <=> is_M_dual on all candidate pairs, h <= 40", ok,
           f"{report.pairs_checked} ordered pairs, {len(report.disagreements)} disagreements "
           f"{'[' + _examples(pairs, 6) + '] ' if pairs else ''}"
           f"golden pairs found and dual: {found}, {dt:.1f}s")
    for d in report.disagreements:
        print(f"    disagreement: {d}")
    assert all(found)
    assert not report.disagreements


def test_criterion_6_closed_forms_and_nu():
    bad_poly, bad_sector, bad_nu = [], [], {"II": [], "III": [], "IV": []}
    instances = family_instances(40)
    nu_seen = {"II": set(), "III": set(), "IV": set()}
    for m in instances:
        w = m.weights
        if dual_char_poly(w) != closed_form_dual_poly(m):
            bad_poly.append(w)
        if sector_polys(w) != closed_form_sector_polys(m):
            bad_sector.append(w)
        sd = sector_decomposition(w)
        if m.family == "II":
            p1, p2, p3 = m.param("p1"), m.param("p2"), m.param("p3")
            for l, v in sd.nu.items():
                want = 0 if l % (p1 * p2) == 0 else 1 if l % p3 == 0 else None
                nu_seen["II"].add(v)
                if want is not None and v != want:
                    bad_nu["II"].append(w)
        elif m.family in ("III", "IV"):
            nu_seen[m.family] |= set(sd.nu.values())
            if any(v != 2 for v in sd.nu.values()):
                bad_nu[m.family].append(w)
    counts = {f: sum(1 for m in instances if m.family == f) for f in ("I", "II", "III", "IV", "V")}
    ok = not bad_poly and not bad_sector and not any(bad_nu.values())
    detail = (f"instances {counts}; phi_W* closed form failures {len(bad_poly)}; "
              f"phi_L0/phi_L2 failures {len(bad_sector)}; "
              + "; ".join(f"nu type {f}: {len(v)} failures (observed {sorted(nu_seen[f])})" for f, v in bad_nu.items()))
    record(6, "dual characteristic polynomial closed forms and nu values, h <= 40", ok, detail)
    assert not bad_poly and not bad_sector
    assert not bad_nu["II"] and not bad_nu["III"]
    assert not bad_nu["IV"], f"type IV nu values {sorted(nu_seen['IV'])}, expected 2"


def test_criterion_7_l1_vanishing():
    passing = [w for w in regular_suite(40) if necessary_conditions(w).passed]
    bad = [w for w in passing if not l1_vanishing_check(w)]
    record(7, "level-one sectors sum to zero, h <= 40", not bad,
           f"{len(passing)} systems passing the necessary conditions, {len(bad)} failures")
    assert not bad, _examples(bad)


def test_criterion_8_injectivity():
    seen, collisions = {}, []
    suite = regular_suite(40)
    for w in suite:
        chi = chi_orbifold(w, trivial_group(w))
        if chi in seen:
            collisions.append((seen[chi], w))
        seen[chi] = w
    record(8, "distinct systems have distinct chi(W), h <= 40", not collisions,
           f"{len(suite)} systems, {len(collisions)} collisions")
    assert not collisions, collisions[:5]


def test_criterion_9_determinism():
    def run(workers):
        cmd = [sys.executable, "-m", "rwsdual", "verify", "--hmax", "31", "--workers", str(workers)]
        return subprocess.run(cmd, capture_output=True).stdout

    a, b = run(1), run(4)
    ok = a == b and len(a) > 0
    record(9, "verify --hmax 31 is byte-identical for 1 and 4 workers", ok, f"{len(a)} bytes")
    assert ok
