"""P-duality, M-duality, the five dual families and their invertible polynomials."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from math import gcd
from typing import Dict, List, Optional, Tuple

from .algebra import lcm
from .cyclotomic import (
    RootMultiplicities,
    classify_type,
    poset_with_exponents,
    root_multiplicities,
)
from .orbifold import chi_principal, chi_untwisted, dual_frame, sector_decomposition
from .weights import WeightSystem, exponents, is_regular

FAMILIES = ("I", "II", "III", "IV", "V")


class AmbiguousFamily(ArithmeticError):
    """Several family parameterizations match but predict different duals."""


# ---------------------------------------------------------------------------
# predicates


def is_P_dual(w: WeightSystem, w_star: WeightSystem) -> bool:
    """Both orbifold identities, each with the ybar prefactor of the orbifolded side."""
    if w.n != 3 or w_star.n != 3:
        raise ValueError("duality is defined for three weights")
    if chi_untwisted(w) != dual_frame(w_star, chi_principal(w_star)):
        return False
    return chi_untwisted(w_star) == dual_frame(w, chi_principal(w))


def m_dual_polynomial(w: WeightSystem) -> Optional[RootMultiplicities]:
    """``prod over xi in M(W) of (lambda^(h/xi) - 1)^(-e(xi))``, or None if not a polynomial."""
    poset = poset_with_exponents(w)
    exps: Dict[int, int] = {}
    for x, v in poset.e.items():
        if v:
            k = w.h // x
            exps[k] = exps.get(k, 0) - v
    try:
        return RootMultiplicities.from_binomials(exps)
    except ValueError:
        return None


def loop_parameters(w: WeightSystem) -> List[Tuple[int, int, int]]:
    """All (k, l, m) with klm = h - 1 and (lm-m+1, mk-k+1, kl-l+1) equal to W as multisets."""
    h = w.h
    target = sorted(w.weights)
    out = []
    for k in range(1, h):
        if (h - 1) % k:
            continue
        rest = (h - 1) // k
        for l in range(1, rest + 1):
            if rest % l:
                continue
            m = rest // l
            if sorted((l * m - m + 1, m * k - k + 1, k * l - l + 1)) == target:
                out.append((k, l, m))
    return out


def _loop_dual(k: int, l: int, m: int) -> Tuple[int, int, int]:
    return (l * m - l + 1, m * k - m + 1, k * l - k + 1)


def is_M_dual(w: WeightSystem, w_star: WeightSystem) -> bool:
    if w.h != w_star.h:
        return False
    tw, ts = classify_type(w), classify_type(w_star)
    if tw == "V" or ts == "V":
        if tw != ts or poset_with_exponents(w).mult != 1 or poset_with_exponents(w_star).mult != 1:
            return False
        target = sorted(w_star.weights)
        return any(sorted(_loop_dual(*klm)) == target for klm in loop_parameters(w))
    psi = m_dual_polynomial(w)
    return psi is not None and psi == root_multiplicities(w_star)


# ---------------------------------------------------------------------------
# necessary conditions


@dataclass(frozen=True)
class NecessaryConditions:
    mu0_zero: bool
    mult_one: bool
    type_ok: bool
    eps_coprime: bool
    type_tag: str

    @property
    def passed(self) -> bool:
        return self.mu0_zero and self.mult_one and self.type_ok and self.eps_coprime

    def failing(self) -> List[str]:
        names = {
            "mu0_zero": "mu_0 != 0",
            "mult_one": "mult(W) != 1",
            "type_ok": f"type {self.type_tag} is not one of I..V",
            "eps_coprime": "gcd(eps, h) != 1",
        }
        return [msg for k, msg in names.items() if not getattr(self, k)]

    def to_json(self) -> dict:
        return {
            "mu0_zero": self.mu0_zero,
            "mult_one": self.mult_one,
            "type": self.type_tag,
            "type_ok": self.type_ok,
            "eps_coprime": self.eps_coprime,
            "pass": self.passed,
        }


@lru_cache(maxsize=None)
def necessary_conditions(w: WeightSystem) -> NecessaryConditions:
    poset = poset_with_exponents(w)
    return NecessaryConditions(
        mu0_zero=exponents(w).mult_of(0) == 0,
        mult_one=poset.mult == 1,
        type_ok=poset.type_tag in FAMILIES,
        eps_coprime=gcd(abs(w.epsilon), w.h) == 1,
        type_tag=poset.type_tag,
    )


# ---------------------------------------------------------------------------
# families


@dataclass(frozen=True)
class FamilyMatch:
    family: str
    params: Tuple[Tuple[str, int], ...]
    weights: WeightSystem
    dual: WeightSystem

    def param(self, name: str) -> int:
        return dict(self.params)[name]


def _ws(ws, h) -> WeightSystem:
    return WeightSystem(tuple(ws), h)


def family_I(p1: int, p2: int, p3: int) -> Optional[FamilyMatch]:
    if min(p1, p2, p3) < 2 or gcd(p1, p2) != 1 or gcd(p2, p3) != 1 or gcd(p1, p3) != 1:
        return None
    w = _ws((p2 * p3, p3 * p1, p1 * p2), p1 * p2 * p3)
    return FamilyMatch("I", (("p1", p1), ("p2", p2), ("p3", p3)), w, w)


def family_II(p1: int, p2: int, p3: int) -> Optional[FamilyMatch]:
    if min(p1, p2) < 2 or p2 == p3 or p3 % p2:
        return None
    r = p3 // p2
    if gcd(p1, p3) != 1 or gcd(p2 - 1, p3) != 1 or gcd(r - 1, p3) != 1:
        return None
    h = p1 * p3
    w = _ws((p3, p1 * r, (p2 - 1) * p1), h)
    ws = _ws((p3, p1 * p2, (r - 1) * p1), h)
    return FamilyMatch("II", (("p1", p1), ("p2", p2), ("p3", p3)), w, ws)


def family_III(p1: int, q2: int, q3: int) -> Optional[FamilyMatch]:
    if min(p1, q2, q3) < 1 or p1 < 2 or gcd(q2, q3) != 1:
        return None
    p2 = (q2 + 1) * (q3 + 1) - 1
    if gcd(p1, p2) != 1:
        return None
    w = _ws((p2, p1 * q2, p1 * q3), p1 * p2)
    return FamilyMatch("III", (("p1", p1), ("p2", p2), ("q2", q2), ("q3", q3)), w, w)


def family_IV(p1: int, p2: int, p3: int) -> Optional[FamilyMatch]:
    if p1 < 2 or p1 == p2 or p2 == p3 or p2 % p1 or p3 % p2:
        return None
    if gcd(p1 - 1, p2) != 1 or gcd(p2 - p1 + 1, p3) != 1:
        return None
    if gcd(p3 // p2 - 1, p3 // p1) != 1 or gcd(p3 // p1 - p3 // p2 + 1, p3) != 1:
        return None
    w = _ws((p3 // p1, (p1 - 1) * (p3 // p2), p2 - p1 + 1), p3)
    ws = _ws((p2, (p3 // p2 - 1) * p1, p3 // p1 - p3 // p2 + 1), p3)
    return FamilyMatch("IV", (("p1", p1), ("p2", p2), ("p3", p3)), w, ws)


def family_V(k: int, l: int, m: int) -> Optional[FamilyMatch]:
    if min(k, l, m) < 1:
        return None
    h = k * l * m + 1
    if gcd(l * m - m + 1, h) != 1 or gcd(l * m - l + 1, h) != 1:
        return None
    w = _ws((l * m - m + 1, m * k - k + 1, k * l - l + 1), h)
    ws = _ws(_loop_dual(k, l, m), h)
    return FamilyMatch("V", (("k", k), ("l", l), ("m", m)), w, ws)


def _int_div(a: int, b: int) -> Optional[int]:
    return a // b if b and a % b == 0 else None


def _recognize(w: WeightSystem) -> List[FamilyMatch]:
    """Read family parameters off the weights in every coordinate order."""
    h = w.h
    found: List[FamilyMatch] = []
    for x, y, z in permutations(w.weights):
        # I: a_x = p2 p3 = h / p1
        p1, p2, p3 = _int_div(h, x), _int_div(h, y), _int_div(h, z)
        if p1 and p2 and p3 and p1 * p2 * p3 == h:
            found.append(family_I(p1, p2, p3))
        # II: a_x = p3, h = p1 p3, a_y = p1 p3 / p2
        q1 = _int_div(h, x)
        q2 = _int_div(h, y)
        if q1 and q2:
            found.append(family_II(q1, q2, x))
        # III: a_x = p2, h = p1 p2, a_y = p1 q2, a_z = p1 q3
        r1 = _int_div(h, x)
        if r1:
            s2, s3 = _int_div(y, r1), _int_div(z, r1)
            if s2 and s3 and (s2 + 1) * (s3 + 1) - 1 == x:
                found.append(family_III(r1, s2, s3))
        # IV: h = p3, a_x = p3 / p1, a_z = p2 - p1 + 1
        t1 = _int_div(h, x)
        if t1:
            found.append(family_IV(t1, z + t1 - 1, h))
    for klm in loop_parameters(w):
        found.append(family_V(*klm))
    target = w.key()
    out, seen = [], set()
    for m in found:
        if m is None or m.weights.key() != target:
            continue
        tag = (m.family, m.params)
        if tag not in seen:
            seen.add(tag)
            out.append(m)
    out.sort(key=lambda m: FAMILIES.index(m.family))
    return out


@lru_cache(maxsize=None)
def family_matches(w: WeightSystem) -> Tuple[FamilyMatch, ...]:
    return tuple(_recognize(w))


def m_dual_candidate(w: WeightSystem) -> Optional[FamilyMatch]:
    """The family match for W (first in canonical order), or None.

    Raises :class:`AmbiguousFamily` when matches disagree on the dual.
    """
    if not necessary_conditions(w).passed:
        return None
    matches = family_matches(w)
    if not matches:
        return None
    duals = {m.dual.key() for m in matches}
    if len(duals) > 1:
        raise AmbiguousFamily(f"{w}: family matches give different duals {sorted(duals)}")
    return matches[0]


def family_instances(h_max: int) -> List[FamilyMatch]:
    """Every family instance with h <= h_max, generated from the parameters."""
    out: List[FamilyMatch] = []
    for p1 in range(2, h_max + 1):
        for p2 in range(2, h_max // p1 + 1):
            for p3 in range(2, h_max // (p1 * p2) + 1):
                out.append(family_I(p1, p2, p3))
    for p1 in range(2, h_max + 1):
        for p3 in range(2, h_max // p1 + 1):
            for p2 in range(2, p3):
                out.append(family_II(p1, p2, p3))
    for p1 in range(2, h_max + 1):
        for q2 in range(1, h_max):
            for q3 in range(1, h_max):
                p2 = (q2 + 1) * (q3 + 1) - 1
                if p1 * p2 > h_max:
                    break
                out.append(family_III(p1, q2, q3))
    for p3 in range(2, h_max + 1):
        for p2 in range(2, p3):
            for p1 in range(2, p2):
                out.append(family_IV(p1, p2, p3))
    for k in range(1, h_max):
        for l in range(1, h_max):
            for m in range(1, h_max):
                if k * l * m + 1 > h_max:
                    break
                out.append(family_V(k, l, m))
    keep = []
    for m in out:
        if m is None:
            continue
        if any(2 * a > m.weights.h for a in m.weights.weights):
            continue
        if any(2 * a > m.dual.h for a in m.dual.weights):
            continue
        keep.append(m)
    return keep


# ---------------------------------------------------------------------------
# dual characteristic polynomial


def dual_char_poly(w: WeightSystem) -> RootMultiplicities:
    """phi_L0 * phi_L2 from the sector exponents of W.

    The roots are ``e[f_l + eps/h]``, once for each l in L0 and nu_l times
    for each l in L2.
    """
    sd = sector_decomposition(w)
    h = w.h
    nums: List[int] = []
    for l in sd.L0:
        nums.append(_root_numerator(sd.f[l], w))
    for l in sd.L2:
        nums.extend([_root_numerator(sd.f[l], w)] * sd.nu[l])
    return RootMultiplicities.from_roots(nums, h)


def _root_numerator(f: Fraction, w: WeightSystem) -> int:
    x = (f + Fraction(w.epsilon, w.h)) * w.h
    if x.denominator != 1:
        raise ArithmeticError(f"root e[{f} + eps/h] is not an h-th root of unity")
    return int(x) % w.h


def closed_form_dual_poly(match: FamilyMatch) -> RootMultiplicities:
    """Product of binomials ``lambda^k - 1`` displayed for each family."""
    P = dict(match.params)
    if match.family == "I":
        p1, p2, p3 = P["p1"], P["p2"], P["p3"]
        e = {p1 * p2 * p3: 1, p1: 1, p2: 1, p3: 1, p1 * p2: -1, p2 * p3: -1, p3 * p1: -1, 1: -1}
    elif match.family == "II":
        p1, p2, p3 = P["p1"], P["p2"], P["p3"]
        e = {p1 * p3: 1, p1: 1, p3 // p2: 1, p3: -1, p1 * p3 // p2: -1, 1: -1}
    elif match.family == "III":
        p1, p2 = P["p1"], P["p2"]
        e = {p1 * p2: 1, p1: 1, p2: -1, 1: -1}
    elif match.family == "IV":
        p1, p2, p3 = P["p1"], P["p2"], P["p3"]
        e = {p3: 1, p3 // p2: 1, p3 // p1: -1, 1: -1}
    else:
        e = {match.weights.h: 1, 1: -1}
    return _binomials(e)


def closed_form_sector_polys(match: FamilyMatch) -> Tuple[RootMultiplicities, RootMultiplicities]:
    """(phi_L0, phi_L2) as displayed for each family."""
    P = dict(match.params)
    if match.family == "I":
        return closed_form_dual_poly(match), _binomials({})
    if match.family == "II":
        p1, p2, p3 = P["p1"], P["p2"], P["p3"]
        return (_binomials({p1 * p3: 1, p3 // p2: 1, p3: -1, p1 * p3 // p2: -1}),
                _binomials({p1: 1, 1: -1}))
    if match.family == "III":
        p1, p2 = P["p1"], P["p2"]
        return _binomials({p1 * p2: 1, 1: 1, p2: -1, p1: -1}), _binomials({p1: 2, 1: -2})
    if match.family == "IV":
        p1, p2, p3 = P["p1"], P["p2"], P["p3"]
        return _binomials({p3: 1, p3 // p1: -1}), _binomials({p3 // p2: 1, 1: -1})
    return closed_form_dual_poly(match), _binomials({})


def _binomials(e: Dict[int, int]) -> RootMultiplicities:
    merged: Dict[int, int] = {}
    for k, v in e.items():
        merged[k] = merged.get(k, 0) + v
    return RootMultiplicities.from_binomials(merged)


def sector_polys(w: WeightSystem) -> Tuple[RootMultiplicities, RootMultiplicities]:
    """(phi_L0, phi_L2) computed from the sector decomposition of W."""
    sd = sector_decomposition(w)
    l0 = RootMultiplicities.from_roots([_root_numerator(sd.f[l], w) for l in sd.L0], w.h)
    l2: List[int] = []
    for l in sd.L2:
        l2.extend([_root_numerator(sd.f[l], w)] * sd.nu[l])
    return l0, RootMultiplicities.from_roots(l2, w.h)


# ---------------------------------------------------------------------------
# invertible polynomials


@dataclass(frozen=True)
class AtomicForm:
    """``F = sum_i prod_j x_j^(E[i][j])``; shape is fermat, chain or loop."""

    shape: str
    matrix: Tuple[Tuple[int, ...], ...]
    params: Tuple[Tuple[str, int], ...] = field(default=())

    def transpose(self) -> "AtomicForm":
        t = tuple(zip(*self.matrix))
        return AtomicForm(self.shape, t, self.params)

    def weight_system(self) -> WeightSystem:
        return weights_of_matrix(self.matrix)

    def __str__(self) -> str:
        names = "xyz"
        monos = []
        for row in self.matrix:
            parts = []
            for j, e in enumerate(row):
                if e == 1:
                    parts.append(names[j])
                elif e:
                    parts.append(f"{names[j]}^{e}")
            monos.append("".join(parts))
        return " + ".join(monos)


def weights_of_matrix(matrix) -> WeightSystem:
    """Reduced weights q with ``E q = 1`` scaled to integers over the coxeter number."""
    n = len(matrix)
    a = [[Fraction(v) for v in row] + [Fraction(1)] for row in matrix]
    for col in range(n):
        piv = next(r for r in range(col, n) if a[r][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col] / a[col][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    q = [a[i][n] / a[i][i] for i in range(n)]
    h = lcm(*(x.denominator for x in q))
    return WeightSystem(tuple(int(x * h) for x in q), h)


def atomic_form(w: WeightSystem) -> Optional[AtomicForm]:
    m = m_dual_candidate(w)
    if m is None:
        return None
    P = dict(m.params)
    if m.family == "I":
        E = ((P["p1"], 0, 0), (0, P["p2"], 0), (0, 0, P["p3"]))
        shape = "fermat"
    elif m.family == "II":
        E = ((P["p1"], 0, 0), (0, P["p2"], 0), (0, 1, P["p3"] // P["p2"]))
        shape = "chain"
    elif m.family == "III":
        E = ((P["p1"], 0, 0), (0, P["q3"] + 1, 1), (0, 1, P["q2"] + 1))
        shape = "loop"
    elif m.family == "IV":
        E = ((P["p1"], 0, 0), (1, P["p2"] // P["p1"], 0), (0, 1, P["p3"] // P["p2"]))
        shape = "chain"
    else:
        E = ((P["k"], 0, 1), (1, P["m"], 0), (0, 1, P["l"]))
        shape = "loop"
    form = AtomicForm(shape, E, m.params)
    if not form.weight_system().same_as(w):
        raise ArithmeticError(f"{form} does not have weights {w}")
    if not form.transpose().weight_system().same_as(m.dual):
        raise ArithmeticError(f"transpose of {form} does not have weights {m.dual}")
    return form


# ---------------------------------------------------------------------------
# records


@dataclass(frozen=True)
class DualPairRecord:
    W: WeightSystem
    W_star: WeightSystem
    family: Optional[str]
    params: Tuple[Tuple[str, int], ...]
    is_M_dual: Optional[bool]
    is_P_dual: Optional[bool]
    necessary_conditions_pass: bool

    def to_json(self) -> dict:
        return {
            "W": self.W.to_json(),
            "W_star": self.W_star.to_json(),
            "family": self.family,
            "params": {k: v for k, v in self.params},
            "is_M_dual": self.is_M_dual,
            "is_P_dual": self.is_P_dual,
            "necessary_conditions_pass": self.necessary_conditions_pass,
        }


def dual_record(w: WeightSystem) -> Optional[DualPairRecord]:
    """Family dual of W with both predicates evaluated, or None."""
    m = m_dual_candidate(w)
    if m is None:
        return None
    ws = w if m.dual.same_as(w) else m.dual
    return DualPairRecord(w, ws, m.family, m.params, is_M_dual(w, ws), is_P_dual(w, ws), True)


def is_candidate(w: WeightSystem) -> bool:
    return is_regular(w) and necessary_conditions(w).passed
