"""Weight systems, regularity and exponents."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import gcd
from typing import Dict, FrozenSet, Iterable, Sequence, Tuple

from .algebra import LaurentPoly, NonExactDivision, divisors, exact_div, lcm


class InvalidWeightSystem(ValueError):
    """Rejected input. ``reason`` is a stable machine-readable code."""

    def __init__(self, reason: str, message: str):
        super().__init__(f"{reason}: {message}")
        self.reason = reason


class NotRegularError(ValueError):
    pass


@dataclass(frozen=True)
class WeightSystem:
    """``(a_1, ..., a_n; h)``. Weights keep the order they were given in."""

    weights: Tuple[int, ...]
    coxeter: int

    @property
    def n(self) -> int:
        return len(self.weights)

    @property
    def h(self) -> int:
        return self.coxeter

    @property
    def epsilon(self) -> int:
        return sum(self.weights) - self.coxeter

    @property
    def c_hat(self) -> Fraction:
        return 1 - Fraction(2 * self.epsilon, self.coxeter)

    @property
    def omegas(self) -> Tuple[Fraction, ...]:
        return tuple(Fraction(a, self.coxeter) for a in self.weights)

    def canonical(self) -> "WeightSystem":
        """Same system with weights sorted ascending."""
        return WeightSystem(tuple(sorted(self.weights)), self.coxeter)

    def key(self) -> Tuple[int, Tuple[int, ...]]:
        """Sort key: h first, then the sorted weights."""
        return (self.coxeter, tuple(sorted(self.weights)))

    def same_as(self, other: "WeightSystem") -> bool:
        """Equality up to permutation of the weights."""
        return self.key() == other.key()

    def permuted(self, order: Sequence[int]) -> "WeightSystem":
        return WeightSystem(tuple(self.weights[i] for i in order), self.coxeter)

    def to_json(self) -> dict:
        return {"weights": list(self.weights), "coxeter": self.coxeter}

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.weights)) + f";{self.coxeter})"


def validate(weights: Iterable[int], coxeter: int, *, allow_above_half: bool = False) -> WeightSystem:
    """Build a :class:`WeightSystem`, raising :class:`InvalidWeightSystem`.

    Reasons: ``non-positive``, ``not-a-weight-system`` (some a_i >= h),
    ``exceeds-half-coxeter`` (some a_i > h/2) and ``not-reduced``.
    """
    ws = tuple(int(a) for a in weights)
    h = int(coxeter)
    if not ws:
        raise InvalidWeightSystem("non-positive", "at least one weight is required")
    if h <= 0 or any(a <= 0 for a in ws):
        raise InvalidWeightSystem("non-positive", "weights and coxeter number must be positive")
    if max(ws) >= h:
        raise InvalidWeightSystem("not-a-weight-system", f"max weight {max(ws)} >= h = {h}")
    if not allow_above_half and any(2 * a > h for a in ws):
        raise InvalidWeightSystem("exceeds-half-coxeter", f"some weight exceeds h/2 = {h / 2}")
    g = h
    for a in ws:
        g = gcd(g, a)
    if g != 1:
        raise InvalidWeightSystem("not-reduced", f"gcd of weights and h is {g}")
    return WeightSystem(ws, h)


def _numerator(w: WeightSystem) -> LaurentPoly:
    num = LaurentPoly({0: 1})
    for a in w.weights:
        num = num * LaurentPoly({0: 1, w.h - a: -1})
    return num


def _denominator(w: WeightSystem) -> LaurentPoly:
    den = LaurentPoly({0: 1})
    for a in w.weights:
        den = den * LaurentPoly({0: 1, a: -1})
    return den


@lru_cache(maxsize=None)
def characteristic_quotient(w: WeightSystem) -> LaurentPoly:
    """``prod (1 - T^(h-a_i)) / (1 - T^(a_i))``; raises NotRegularError."""
    try:
        return exact_div(_numerator(w), _denominator(w))
    except NonExactDivision:
        raise NotRegularError(f"{w} is not regular") from None


def is_regular(w: WeightSystem) -> bool:
    try:
        characteristic_quotient(w)
    except NotRegularError:
        return False
    return True


def is_regular_by_roots(w: WeightSystem) -> bool:
    """Regularity by counting cyclotomic factors.

    For each d >= 2, Phi_d must divide the numerator at least as often as
    the denominator.
    """
    ds = set()
    for a in w.weights:
        ds.update(divisors(a))
    ds.discard(1)
    for d in ds:
        up = sum(1 for a in w.weights if (w.h - a) % d == 0)
        down = sum(1 for a in w.weights if a % d == 0)
        if up < down:
            return False
    return True


def chi_w(w: WeightSystem) -> LaurentPoly:
    """The Laurent polynomial ``T^eps * prod (1 - T^(h-a_i)) / (1 - T^(a_i))``."""
    return characteristic_quotient(w).shift(w.epsilon)


@dataclass(frozen=True)
class ExponentData:
    exponents: Tuple[int, ...]
    mu: int
    epsilon: int
    c_hat: Fraction
    counts: Dict[int, int] = field(compare=False, hash=False, repr=False)

    def mult_of(self, k: int) -> int:
        """Number of exponents equal to ``k``."""
        return self.counts.get(k, 0)


@lru_cache(maxsize=None)
def exponents(w: WeightSystem) -> ExponentData:
    q = chi_w(w)
    ms = []
    for e, c in q.items():
        if not isinstance(c, int) or c < 0:
            raise ArithmeticError(f"non-natural coefficient {c} at T^{e} for {w}")
        ms.extend([e] * c)
    rank = Fraction(1)
    for a in w.weights:
        rank *= Fraction(w.h - a, a)
    if rank != len(ms):
        raise ArithmeticError(f"rank mismatch for {w}: {len(ms)} exponents vs {rank}")
    return ExponentData(tuple(ms), len(ms), w.epsilon, w.c_hat, dict(Counter(ms)))


def rank(w: WeightSystem) -> Fraction:
    """``prod (h - a_i) / a_i`` (an integer for regular systems)."""
    r = Fraction(1)
    for a in w.weights:
        r *= Fraction(w.h - a, a)
    return r


Slot = FrozenSet[int]


@dataclass(frozen=True)
class ReducedFractions:
    """``h / a_i = p_i / q_i`` in lowest terms, with lcms over index subsets.

    Indices are 0-based; ``slots[frozenset({0, 1})]`` is p_12.
    """

    p: Tuple[int, ...]
    q: Tuple[int, ...]
    slots: Dict[Slot, int] = field(compare=False, hash=False)

    def lcm_of(self, *idx: int) -> int:
        return self.slots[frozenset(idx)]

    @property
    def p12(self) -> int:
        return self.lcm_of(0, 1)

    @property
    def p13(self) -> int:
        return self.lcm_of(0, 2)

    @property
    def p23(self) -> int:
        return self.lcm_of(1, 2)

    @property
    def p123(self) -> int:
        return self.lcm_of(0, 1, 2)


def reduced_fractions(w: WeightSystem) -> ReducedFractions:
    if w.n != 3:
        raise ValueError(f"reduced fractions are defined for three weights, got {w.n}")
    p = tuple(w.h // gcd(w.h, a) for a in w.weights)
    q = tuple(a // gcd(w.h, a) for a in w.weights)
    slots = {}
    for r in (1, 2, 3):
        for s in combinations(range(3), r):
            slots[frozenset(s)] = lcm(*(p[i] for i in s))
    rf = ReducedFractions(p, q, slots)
    g = gcd(gcd(w.weights[0], w.weights[1]), gcd(w.weights[2], w.h))
    if g == 1 and rf.p123 != w.h:
        raise ArithmeticError(f"lcm of p_i is {rf.p123}, expected h = {w.h}")
    return rf
