"""Characteristic polynomial, the leveled divisor poset M(W) and its 14 types.

The characteristic polynomial ``prod (lambda - e[m_i/h])`` is kept in
factored form as :class:`RootMultiplicities`: for each d | h, the number of
times every primitive d-th root of unity occurs.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from math import gcd
from typing import Dict, FrozenSet, List, Mapping, Optional, Tuple

from .algebra import LaurentPoly, cyclotomic_polynomial, divisors, euler_phi, exact_div
from .weights import ReducedFractions, WeightSystem, exponents, reduced_fractions


class StructureError(ArithmeticError):
    """An identity guaranteed by the theory failed; indicates a bug or bad input."""


def mobius(n: int) -> int:
    result, m, p = 1, n, 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            result = -result
        p += 1
    if m > 1:
        result = -result
    return result


@dataclass(frozen=True)
class RootMultiplicities:
    """``d -> r_d``: each primitive d-th root of unity is a root r_d times."""

    mult: Tuple[Tuple[int, int], ...]

    @classmethod
    def from_map(cls, m: Mapping[int, int]) -> "RootMultiplicities":
        return cls(tuple(sorted((d, r) for d, r in m.items() if r)))

    @classmethod
    def from_roots(cls, numerators: List[int], n: int) -> "RootMultiplicities":
        """Roots ``e[k/n]`` for k in ``numerators`` (with repetition)."""
        by_order: Counter = Counter(n // gcd(k % n, n) for k in numerators)
        out = {}
        for d, cnt in by_order.items():
            r, rem = divmod(cnt, euler_phi(d))
            if rem:
                raise StructureError(f"{cnt} roots of order {d} is not a multiple of phi({d})")
            out[d] = r
        return cls.from_map(out)

    @classmethod
    def from_binomials(cls, exps: Mapping[int, int]) -> "RootMultiplicities":
        """Multiplicities of ``prod_k (lambda^k - 1)^(E_k)``; must be a polynomial."""
        out: Dict[int, int] = {}
        for k, e in exps.items():
            for d in divisors(k):
                out[d] = out.get(d, 0) + e
        if any(r < 0 for r in out.values()):
            raise ValueError("binomial product is not a polynomial")
        return cls.from_map(out)

    def as_dict(self) -> Dict[int, int]:
        return dict(self.mult)

    def degree(self) -> int:
        return sum(r * euler_phi(d) for d, r in self.mult)

    def __mul__(self, other: "RootMultiplicities") -> "RootMultiplicities":
        out = self.as_dict()
        for d, r in other.mult:
            out[d] = out.get(d, 0) + r
        return RootMultiplicities.from_map(out)

    def binomial_exponents(self) -> Dict[int, int]:
        """Moebius inversion: the unique E_k with prod (lambda^k - 1)^(E_k) equal to this."""
        m = self.as_dict()
        if not m:
            return {}
        top = 1
        for d in m:
            top = top * d // gcd(top, d)
        out = {}
        for k in divisors(top):
            e = sum(r * mobius(d // k) for d, r in m.items() if d % k == 0)
            if e:
                out[k] = e
        return out

    def polynomial(self) -> LaurentPoly:
        """Expanded product of cyclotomic polynomials (use only for small degree)."""
        p = LaurentPoly({0: 1})
        for d, r in self.mult:
            p = p * cyclotomic_polynomial(d) ** r
        return p

    def to_json(self) -> Dict[str, int]:
        return {str(d): r for d, r in self.mult}


def root_multiplicities(w: WeightSystem) -> RootMultiplicities:
    ex = exponents(w)
    return RootMultiplicities.from_roots(list(ex.exponents), w.h)


# ---------------------------------------------------------------------------
# slots of the poset

Slot = FrozenSet[int]
SLOT_NAMES = {
    frozenset({0}): "p1",
    frozenset({1}): "p2",
    frozenset({2}): "p3",
    frozenset({0, 1}): "p12",
    frozenset({0, 2}): "p13",
    frozenset({1, 2}): "p23",
    frozenset({0, 1, 2}): "p123",
}
NAME_SLOTS = {v: k for k, v in SLOT_NAMES.items()}
TYPES = ("I", "II", "III", "IV", "V", "VI", "VII", "VIII", "IX", "X", "XI", "XII", "XIII", "XIV")

# Each type: groups of coinciding slots (the node "1" is always alone and has
# e = -1; lone level-one nodes p_i carry e = 1) and the closed-form label of
# every other node.  Transcribed from the fourteen poset graphs.
TEMPLATES: Dict[str, Dict[Tuple[str, ...], Optional[str]]] = {
    "I": {
        ("p1",): "1", ("p2",): "1", ("p3",): "1",
        ("p12",): "-p1*p2/p12",
        ("p13",): "-p3*p1/p13",
        ("p23",): "-p2*p3/p23",
        ("p123",): "p1*p2*p3/p123",
    },
    "II": {
        ("p1",): "1", ("p2",): "1",
        ("p12",): "-p1*p2/p12",
        ("p3", "p23"): "-(p2-1)/q3",
        ("p13", "p123"): "p1*(p2-1)*p3/(q3*p13)",
    },
    "III": {
        ("p1",): "1",
        ("p2", "p3", "p23"): "-(p2-q2-q3)/(q2*q3)",
        ("p12", "p13", "p123"): "p1*p2*(p2-q2-q3)/(p12*q2*q3)",
    },
    "IV": {
        ("p1",): "1",
        ("p2", "p12"): "-(p1-1)/q2",
        ("p3", "p23", "p13", "p123"): "(p1-1)*(p2-q2)/(q2*q3)",
    },
    "V": {
        ("p1", "p2", "p3", "p12", "p23", "p13", "p123"): "(mu+1)/h",
    },
    "VI": {
        ("p1",): "1", ("p2",): "1", ("p3",): "1",
        ("p12",): "-p1*p2/p12",
        ("p23",): "-p2*p3/p23",
        ("p13", "p123"): "(p2-1)*p1*p3/p13",
    },
    "VII": {
        ("p1",): "1", ("p2",): "1", ("p3",): "1",
        ("p23",): "-p2*p3/p23",
        ("p12", "p13", "p123"): "p1*(p2*p3-p2-p3)/p12",
    },
    "VIII": {
        ("p1",): "1", ("p2",): "1", ("p3",): "1",
        ("p12", "p23", "p13", "p123"): "(p1*p2*p3-p1*p2-p2*p3-p3*p1)/p12",
    },
    "IX": {
        ("p1",): "1", ("p2",): "1",
        ("p3", "p23"): "-(p2-1)/q3",
        ("p12", "p13", "p123"): "p1*(p2*p3/q3-p2-p3/q3)/p12",
    },
    "X": {
        ("p1",): "1", ("p2",): "1",
        ("p12",): "-p1*p2/p12",
        ("p3", "p23", "p13", "p123"): "(p1-1)*(p2-1)/q3",
    },
    "XI": {
        ("p1",): "1", ("p2",): "1",
        ("p3", "p12", "p23", "p13", "p123"): "(p1-1)*(p2-1)/q3-p1*p2/p12",
    },
    "XII": {
        ("p1",): "1",
        ("p2", "p12"): "-(p1-1)/q2",
        ("p3", "p13"): "-(p1-1)/q3",
        ("p23", "p123"): "(p1-1)*p2*p3/(q2*q3*p23)",
    },
    "XIII": {
        ("p1",): "1",
        ("p2", "p3", "p12", "p23", "p13", "p123"): "(p1-1)*(p2-q2-q3)/(q2*q3)",
    },
    "XIV": {
        ("p1", "p2", "p12"): "-(p12-q1-q2)/(q1*q2)",
        ("p3", "p23", "p13", "p123"): "(p1-q1)*(p2-q2)/(q1*q2*q3)",
    },
}


def _template_partition(t: str) -> FrozenSet[FrozenSet[Slot]]:
    return frozenset(frozenset(NAME_SLOTS[n] for n in group) for group in TEMPLATES[t])


_PARTITIONS = {t: _template_partition(t) for t in TYPES}


def _partition(rf: ReducedFractions) -> FrozenSet[FrozenSet[Slot]]:
    by_value: Dict[int, set] = {}
    for s, v in rf.slots.items():
        by_value.setdefault(v, set()).add(s)
    return frozenset(frozenset(g) for g in by_value.values())


def _relabel(part: FrozenSet[FrozenSet[Slot]], sigma: Tuple[int, ...]) -> FrozenSet[FrozenSet[Slot]]:
    # sigma[k] is the actual index playing the template's index k
    inv = {sigma[k]: k for k in range(3)}
    return frozenset(frozenset(frozenset(inv[i] for i in s) for s in g) for g in part)


def _canonical_orders(rf: ReducedFractions) -> List[Tuple[int, ...]]:
    base = sorted(range(3), key=lambda i: (rf.p[i], rf.q[i], i))
    seen, out = set(), []
    for perm in permutations(range(3)):
        sigma = tuple(base[k] for k in perm)
        if sigma not in seen:
            seen.add(sigma)
            out.append(sigma)
    return out


def template_matches(w: WeightSystem) -> List[Tuple[str, Tuple[int, ...]]]:
    """All (type, index order) pairs whose template fits the coincidence pattern.

    ``order[k]`` is the actual weight index that plays p_{k+1} of the template.
    """
    rf = reduced_fractions(w)
    part = _partition(rf)
    out = []
    for sigma in _canonical_orders(rf):
        rel = _relabel(part, sigma)
        for t in TYPES:
            if rel == _PARTITIONS[t]:
                out.append((t, sigma))
    return out


def _namespace(w: WeightSystem, rf: ReducedFractions, sigma: Tuple[int, ...], mu: int) -> Dict[str, Fraction]:
    ns: Dict[str, Fraction] = {"mu": Fraction(mu), "h": Fraction(w.h)}
    for k in range(3):
        ns[f"p{k + 1}"] = Fraction(rf.p[sigma[k]])
        ns[f"q{k + 1}"] = Fraction(rf.q[sigma[k]])
    for slot, name in SLOT_NAMES.items():
        if len(slot) > 1:
            ns[name] = Fraction(rf.slots[frozenset(sigma[k] for k in slot)])
    return ns


def evaluate_template(t: str, w: WeightSystem, sigma: Tuple[int, ...], mu: int) -> Dict[int, Fraction]:
    """Closed-form node labels of template ``t`` evaluated on ``w``, keyed by node value."""
    rf = reduced_fractions(w)
    ns = _namespace(w, rf, sigma, mu)
    out = {1: Fraction(-1)}
    for group, formula in TEMPLATES[t].items():
        node = int(ns[group[0]])
        out[node] = eval(formula, {"__builtins__": {}}, ns)  # constant table above
    return out


# ---------------------------------------------------------------------------
# the leveled poset


@dataclass(frozen=True)
class LeveledPoset:
    weights: WeightSystem
    elements: Tuple[int, ...]
    level: Dict[int, int] = field(compare=False, hash=False)
    e: Dict[int, int] = field(compare=False, hash=False)
    mult: int
    type_tag: str
    order: Tuple[int, ...]

    def to_json(self) -> dict:
        return {
            "elements": list(self.elements),
            "level": {str(x): self.level[x] for x in self.elements},
            "e": {str(x): self.e[x] for x in self.elements},
            "mult": self.mult,
            "type": self.type_tag,
        }


def poset_elements(w: WeightSystem) -> Tuple[Tuple[int, ...], Dict[int, int]]:
    rf = reduced_fractions(w)
    elems = sorted({1, *rf.slots.values()})
    level = {x: sum(1 for p in rf.p if x % p == 0) for x in elems}
    return tuple(elems), level


def solve_cyclotomic_exponents(w: WeightSystem) -> Dict[int, int]:
    """Triangular solve for e_W on M(W), then check every divisor of h."""
    elems, _ = poset_elements(w)
    r = root_multiplicities(w).as_dict()
    e: Dict[int, int] = {}
    for x in sorted(elems, reverse=True):
        e[x] = r.get(x, 0) - sum(e[y] for y in e if y % x == 0)
    for d in divisors(w.h):
        if r.get(d, 0) != sum(v for x, v in e.items() if x % d == 0):
            raise StructureError(f"cyclotomic exponents of {w} inconsistent at d={d}")
    return e


@lru_cache(maxsize=4096)
def classify_type(w: WeightSystem) -> str:
    """Type I..XIV of the leveled poset, and cross-check the node labels."""
    matches = template_matches(w)
    kinds = {t for t, _ in matches}
    if len(kinds) != 1:
        raise StructureError(f"{w}: expected exactly one template, got {sorted(kinds) or 'none'}")
    return matches[0][0]


@lru_cache(maxsize=4096)
def poset_with_exponents(w: WeightSystem) -> LeveledPoset:
    elems, level = poset_elements(w)
    e = solve_cyclotomic_exponents(w)
    t = classify_type(w)
    order = next(s for tt, s in template_matches(w) if tt == t)
    return LeveledPoset(w, elems, level, e, e[w.h], t, order)


def template_label_check(w: WeightSystem) -> bool:
    """Do the closed-form node labels reproduce the solved e_W (all index orders)?"""
    poset = poset_with_exponents(w)
    mu = exponents(w).mu
    for t, sigma in template_matches(w):
        labels = evaluate_template(t, w, sigma, mu)
        if labels != {x: Fraction(v) for x, v in poset.e.items()}:
            return False
    return True


def reconstruction_check(w: WeightSystem, expand_limit: int = 2000) -> bool:
    """``prod (lambda^xi - 1)^(e(xi))`` equals phi_W.

    Compared via the unique binomial-exponent form (Moebius inversion of the
    root multiplicities); for rank up to ``expand_limit`` the identity is also
    checked on expanded polynomials.
    """
    poset = poset_with_exponents(w)
    rm = root_multiplicities(w)
    if rm.binomial_exponents() != {x: v for x, v in poset.e.items() if v}:
        return False
    if rm.degree() <= expand_limit:
        num, den = LaurentPoly({0: 1}), LaurentPoly({0: 1})
        for x, v in poset.e.items():
            for _ in range(abs(v)):
                if v > 0:
                    num = num.mul_binomial(x)
                else:
                    den = den.mul_binomial(x)
        if exact_div(num, den) != rm.polynomial():
            return False
    return True


def mult_one_iff_alternating(w: WeightSystem) -> Tuple[bool, bool]:
    poset = poset_with_exponents(w)
    alternating = all(poset.e[x] == (-1) ** (poset.level[x] + 1) for x in poset.elements)
    return poset.mult == 1, alternating
