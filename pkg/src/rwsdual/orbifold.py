"""Orbifoldized Poincare polynomials chi(W, G)(y, ybar) of diagonal groups.

A group element ``alpha`` acts by ``diag(e[w_1 alpha_1], ..., e[w_n alpha_n])``
with ``w_i = a_i / h``; it is stored as the integer vector ``alpha`` with
``alpha_i`` taken modulo ``p_i = h / gcd(h, a_i)``.

The sector sum over ``beta`` is evaluated in one of two ways:

``"character"``
    expand every fixed-coordinate factor as a power series whose coefficients
    are monomials in ``x_i = e[w_i beta_i]``, and keep the terms on which the
    character ``beta -> prod x_i^(k_i)`` is trivial on G.  Summing a
    nontrivial character over G gives zero, a trivial one gives |G|.
``"cyclotomic"``
    sum the truncated series over every ``beta`` with coefficients in
    Q(zeta_h) and require the result to be rational.

Both are exact; the second is slow and serves as a cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Dict, Iterable, List, Sequence, Tuple

from .algebra import BiLaurent, CyclotomicNumber, CycSeries
from .cyclotomic import poset_elements
from .weights import WeightSystem, exponents

Vector = Tuple[int, ...]


class SeriesTruncationError(ArithmeticError):
    """A sector sum did not come out as a polynomial of the expected degree."""


class SectorMismatch(ArithmeticError):
    """Closed-form sector exponents disagree with a direct evaluation."""


@dataclass(frozen=True)
class DiagonalGroup:
    orders: Vector
    generators: Tuple[Vector, ...]
    elements: Tuple[Vector, ...] = field(repr=False)

    @property
    def n(self) -> int:
        return len(self.orders)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, alpha: Sequence[int]) -> bool:
        return self.reduce(alpha) in set(self.elements)

    def reduce(self, alpha: Sequence[int]) -> Vector:
        return tuple(int(a) % d for a, d in zip(alpha, self.orders))


def coordinate_orders(w: WeightSystem) -> Vector:
    return tuple(w.h // gcd(w.h, a) for a in w.weights)


def make_group(w: WeightSystem, generators: Iterable[Sequence[int]]) -> DiagonalGroup:
    """Closure of ``generators`` under addition (modulo the coordinate orders)."""
    orders = coordinate_orders(w)
    gens = []
    for g in generators:
        g = tuple(int(x) for x in g)
        if len(g) != w.n:
            raise ValueError(f"generator {g} has {len(g)} entries, expected {w.n}")
        gens.append(tuple(x % d for x, d in zip(g, orders)))
    zero = (0,) * w.n
    seen = {zero}
    frontier = [zero]
    while frontier:
        nxt = []
        for v in frontier:
            for g in gens:
                u = tuple((a + b) % d for a, b, d in zip(v, g, orders))
                if u not in seen:
                    seen.add(u)
                    nxt.append(u)
        frontier = nxt
    return DiagonalGroup(orders, tuple(gens), tuple(sorted(seen)))


def principal_group(w: WeightSystem) -> DiagonalGroup:
    g = make_group(w, [(1,) * w.n])
    if gcd(w.h, *w.weights) == 1 and len(g) != w.h:
        raise ArithmeticError(f"principal group of {w} has order {len(g)}, expected {w.h}")
    return g


def trivial_group(w: WeightSystem) -> DiagonalGroup:
    return make_group(w, [])


# ---------------------------------------------------------------------------
# single sectors


def _unfixed_exponent(w: WeightSystem, i: int, alpha_i: int) -> Tuple[Fraction, Fraction]:
    """(y, ybar) exponents of coordinate i in a sector where it is not fixed."""
    om = Fraction(w.weights[i], w.h)
    x = om * alpha_i
    if x.denominator == 1:
        raise ValueError("coordinate is fixed by this element")
    frac = x - (x.numerator // x.denominator)
    return 1 - om - frac, frac - om


def _fixed_set(w: WeightSystem, alpha: Vector) -> Tuple[int, ...]:
    return tuple(i for i, a in enumerate(alpha) if (w.weights[i] * a) % w.h == 0)


def _degree_bound(w: WeightSystem, fixed: Sequence[int]) -> int:
    return sum(w.h - 2 * w.weights[i] for i in fixed)


def _coordinate_terms(a: int, h: int, trunc: int) -> List[Tuple[int, int, int]]:
    """(t-degree, power of x, coefficient) of ``-x (1 - x^-1 t^(h-a)) / (1 - x t^a)``."""
    out = []
    j = 0
    while a * j <= trunc:
        out.append((a * j, j + 1, -1))
        if a * j + h - a <= trunc:
            out.append((a * j + h - a, j, 1))
        j += 1
    return out


@lru_cache(maxsize=8192)
def _invariant_part(w: WeightSystem, fixed: Tuple[int, ...], gens: Tuple[Vector, ...]) -> Tuple[Tuple[int, int], ...]:
    """G-invariant part of the fixed-coordinate product, as (t-degree, coeff) pairs."""
    h = w.h
    bound = _degree_bound(w, fixed)
    trunc = bound + h
    zero = (0,) * len(gens)
    state: Dict[Tuple[int, Vector], int] = {(0, zero): 1}
    for i in fixed:
        a = w.weights[i]
        terms = []
        for d, k, c in _coordinate_terms(a, h, trunc):
            terms.append((d, tuple((a * k * g[i]) % h for g in gens), c))
        new: Dict[Tuple[int, Vector], int] = {}
        for (d0, ch0), c0 in state.items():
            for d1, ch1, c1 in terms:
                d = d0 + d1
                if d > trunc:
                    continue
                key = (d, tuple((x + y) % h for x, y in zip(ch0, ch1)))
                new[key] = new.get(key, 0) + c0 * c1
        state = {k: v for k, v in new.items() if v}
    inv: Dict[int, int] = {}
    for (d, ch), c in state.items():
        if ch == zero:
            inv[d] = inv.get(d, 0) + c
    for d, c in inv.items():
        if c and d > bound:
            raise SeriesTruncationError(f"{w}: invariant term of degree {d} beyond bound {bound}")
    return tuple(sorted((d, c) for d, c in inv.items() if c))


def _beta_sum_cyclotomic(w: WeightSystem, g: DiagonalGroup, fixed: Tuple[int, ...]) -> Dict[int, Fraction]:
    h = w.h
    bound = _degree_bound(w, fixed)
    trunc = bound + h
    total = CycSeries(h, trunc)
    for beta in g.elements:
        prod = CycSeries.one(h, trunc)
        for i in fixed:
            a = w.weights[i]
            x = a * beta[i] % h
            terms: Dict[int, CyclotomicNumber] = {}
            for d, k, c in _coordinate_terms(a, h, trunc):
                v = CyclotomicNumber.root_of_unity(x * k, h) * c
                terms[d] = terms[d] + v if d in terms else v
            prod = prod * CycSeries(h, trunc, terms)
        total = total + prod
    out: Dict[int, Fraction] = {}
    for d, c in total.terms.items():
        if not c.is_rational():
            raise SeriesTruncationError(f"{w}: irrational coefficient at t^{d}")
        if d > bound:
            raise SeriesTruncationError(f"{w}: term of degree {d} beyond bound {bound}")
        out[d] = c.to_rational()
    return out


def chi_sector(w: WeightSystem, g: DiagonalGroup, alpha: Sequence[int], method: str = "character") -> BiLaurent:
    """The twisted-sector sum chi_alpha(W, G), before the (-1)^n / |G| factor."""
    alpha = g.reduce(alpha)
    if alpha not in set(g.elements):
        raise ValueError(f"{alpha} is not an element of the group")
    fixed = _fixed_set(w, alpha)
    py = qy = Fraction(0)
    for i, a in enumerate(alpha):
        if i not in fixed:
            p, q = _unfixed_exponent(w, i, a)
            py += p
            qy += q
    if method == "character":
        fixed_sum = {d: c * len(g) for d, c in _invariant_part(w, fixed, g.generators)}
    elif method == "cyclotomic":
        fixed_sum = _beta_sum_cyclotomic(w, g, fixed)
    else:
        raise ValueError(f"unknown method {method!r}")
    terms = {(py + Fraction(d, w.h), qy + Fraction(d, w.h)): c for d, c in fixed_sum.items()}
    return BiLaurent(terms, 2 * w.h)


def chi_orbifold(w: WeightSystem, g: DiagonalGroup, method: str = "character") -> BiLaurent:
    """``(-1)^n / |G| * sum over alpha of chi_alpha``."""
    total = BiLaurent({}, 2 * w.h)
    for alpha in g.elements:
        total = total + chi_sector(w, g, alpha, method)
    sign = -1 if w.n % 2 else 1
    return total * Fraction(sign, len(g))


@lru_cache(maxsize=4096)
def chi_untwisted(w: WeightSystem) -> BiLaurent:
    """chi(W, {id}) evaluated by the character method."""
    return chi_orbifold(w, trivial_group(w))


@lru_cache(maxsize=4096)
def chi_principal(w: WeightSystem) -> BiLaurent:
    """chi(W, G_0)."""
    return chi_orbifold(w, principal_group(w))


def chi_from_exponents(w: WeightSystem) -> BiLaurent:
    """``sum (y ybar)^((m_i - eps)/h)``: the T^h = y ybar rewrite of chi_W(T)."""
    ex = exponents(w)
    terms: Dict[Tuple[Fraction, Fraction], int] = {}
    for m, c in ex.counts.items():
        e = Fraction(m - ex.epsilon, w.h)
        terms[(e, e)] = c
    return BiLaurent(terms, 2 * w.h)


def dual_frame(w: WeightSystem, poly: BiLaurent) -> BiLaurent:
    """``(-1)^n ybar^(c_hat) poly(y, 1/ybar)`` with c_hat taken from ``w``."""
    out = poly.invert_ybar().scale_by_monomial(w.c_hat)
    return -out if w.n % 2 else out


# ---------------------------------------------------------------------------
# sector decomposition for the principal group, three variables


@dataclass(frozen=True)
class SectorDecomposition:
    weights: WeightSystem
    L0: Tuple[int, ...]
    L1: Tuple[int, ...]
    L2: Tuple[int, ...]
    f: Dict[int, Fraction] = field(compare=False, hash=False)
    nu: Dict[int, int] = field(compare=False, hash=False)


def _frac(x: Fraction) -> Fraction:
    return x - (x.numerator // x.denominator)


def sector_sets(w: WeightSystem) -> Tuple[Tuple[int, ...], Tuple[int, ...], Tuple[int, ...]]:
    """L0, L1, L2 for the principal group.

    L2: 0 < l < h divisible by a level-two element of M(W); L1: divisible by
    a level-one element and not in L2; L0: divisible by no element other
    than 1.
    """
    elems, level = poset_elements(w)
    lv2 = [x for x in elems if level[x] == 2]
    lv1 = [x for x in elems if level[x] == 1]
    nontrivial = [x for x in elems if x != 1]
    L0, L1, L2 = [], [], []
    for l in range(1, w.h):
        if any(l % x == 0 for x in lv2):
            L2.append(l)
        elif any(l % x == 0 for x in lv1):
            L1.append(l)
        elif not any(l % x == 0 for x in nontrivial):
            L0.append(l)
    return tuple(L0), tuple(L1), tuple(L2)


def f_exponent(w: WeightSystem, l: int) -> Fraction:
    """Closed-form exponent of sector l (in L0 or L2) in the dual frame."""
    h, eps = w.h, w.epsilon
    unfixed = [i for i, a in enumerate(w.weights) if (a * l) % h]
    parts = sum(_frac(Fraction(w.weights[i] * l, h)) for i in unfixed)
    if len(unfixed) == 3:
        return 2 - parts - Fraction(eps, h)
    if len(unfixed) == 1:
        return 1 - parts - Fraction(eps, h)
    raise ValueError(f"sector {l} of {w} is neither in L0 nor in L2")


def dual_frame_sector(w: WeightSystem, l: int) -> BiLaurent:
    """Sector l of chi(W, G_0), normalized by (-1)^n/|G| and moved to the dual frame."""
    g = principal_group(w)
    s = chi_sector(w, g, (l,) * w.n) * Fraction(-1 if w.n % 2 else 1, len(g))
    return dual_frame(w, s)


def untwisted_dual_formula(w: WeightSystem) -> BiLaurent:
    """``-mu_0 y^(-eps/h) ybar^(1-eps/h) - mu_h y^(1-eps/h) ybar^(-eps/h)``."""
    ex = exponents(w)
    r = Fraction(w.epsilon, w.h)
    return BiLaurent(
        {(-r, 1 - r): -ex.mult_of(0), (1 - r, -r): -ex.mult_of(w.h)}, 2 * w.h
    )


@lru_cache(maxsize=4096)
def sector_decomposition(w: WeightSystem) -> SectorDecomposition:
    if w.n != 3:
        raise ValueError("sector decomposition needs three weights")
    L0, L1, L2 = sector_sets(w)
    f: Dict[int, Fraction] = {}
    nu: Dict[int, int] = {}
    for l in L0:
        f[l] = f_exponent(w, l)
        got = dual_frame_sector(w, l)
        if got != BiLaurent.monomial(f[l], f[l], 1, 2 * w.h):
            raise SectorMismatch(f"{w}: sector {l} is {got}, expected (y ybar)^{f[l]}")
    for l in L2:
        f[l] = f_exponent(w, l)
        got = dual_frame_sector(w, l)
        terms = got.terms()
        if not terms:
            nu[l] = 0
            continue
        if len(terms) != 1 or terms[0][0] != f[l] or terms[0][1] != f[l]:
            raise SectorMismatch(f"{w}: sector {l} is {got}, expected a multiple of (y ybar)^{f[l]}")
        c = terms[0][2]
        if not isinstance(c, int) or c < 0:
            raise SectorMismatch(f"{w}: sector {l} has multiplicity {c}")
        nu[l] = c
    return SectorDecomposition(w, L0, L1, L2, f, nu)


def l1_vanishing_check(w: WeightSystem) -> bool:
    _, L1, _ = sector_sets(w)
    total = BiLaurent({}, 2 * w.h)
    for l in L1:
        total = total + dual_frame_sector(w, l)
    return total.is_zero()


def sector_reconstruction(w: WeightSystem) -> BiLaurent:
    """Dual-frame chi(W, G_0) rebuilt from the L0/L2 exponents and multiplicities."""
    sd = sector_decomposition(w)
    out = untwisted_dual_formula(w)
    terms: Dict[Tuple[Fraction, Fraction], int] = {}
    for l in sd.L0:
        terms[(sd.f[l], sd.f[l])] = terms.get((sd.f[l], sd.f[l]), 0) + 1
    for l in sd.L2:
        terms[(sd.f[l], sd.f[l])] = terms.get((sd.f[l], sd.f[l]), 0) + sd.nu[l]
    return out + BiLaurent(terms, 2 * w.h)
