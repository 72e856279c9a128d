"""Exact arithmetic substrate.

Rationals are :class:`fractions.Fraction` (ints are accepted wherever a
rational is expected and integral values are kept as ``int`` for speed).
On top of that this module provides

* :class:`LaurentPoly` -- sparse univariate Laurent polynomials over Q,
* :func:`cyclotomic_polynomial` and :class:`CyclotomicNumber` -- exact
  elements of Q(zeta_N), stored modulo the N-th cyclotomic polynomial,
* :class:`CycSeries` -- truncated power series with cyclotomic coefficients,
* :class:`BiLaurent` -- finite sums ``c * y**p * ybar**q`` with rational
  exponents, the value type of all Poincare polynomials.

Every value is immutable once built.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from numbers import Rational
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Tuple, Union

Number = Union[int, Fraction]


class NonExactDivision(ArithmeticError):
    """Raised when a polynomial division leaves a nonzero remainder."""


def _norm(x: Number) -> Number:
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x.numerator)
    return x


def _qdiv(a: Number, b: Number) -> Number:
    if b == 1:
        return a
    if b == -1:
        return -a
    return _norm(Fraction(a) / b)


def as_fraction(x: Union[Number, str]) -> Fraction:
    """Parse ``x`` (int, Fraction or ``"num/den"`` string) as a Fraction."""
    return Fraction(x)


def format_rational(x: Number) -> str:
    """Serialize a rational as ``"num/den"``; the denominator is always shown."""
    f = Fraction(x)
    return f"{f.numerator}/{f.denominator}"


# ---------------------------------------------------------------------------
# univariate Laurent polynomials


class LaurentPoly:
    """Sparse Laurent polynomial in one variable with rational coefficients.

    Stored as a mapping ``exponent -> coefficient`` with no zero entries.
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs: Optional[Mapping[int, Number]] = None):
        c: Dict[int, Number] = {}
        if coeffs:
            for e, v in coeffs.items():
                if v:
                    c[int(e)] = _norm(v)
        self._c = c

    @classmethod
    def _raw(cls, c: Dict[int, Number]) -> "LaurentPoly":
        obj = cls.__new__(cls)
        obj._c = c
        return obj

    @classmethod
    def monomial(cls, exp: int, coeff: Number = 1) -> "LaurentPoly":
        return cls({exp: coeff})

    @classmethod
    def binomial(cls, k: int) -> "LaurentPoly":
        """``x**k - 1``."""
        if k == 0:
            return cls()
        return cls({k: 1, 0: -1})

    @classmethod
    def from_list(cls, coeffs: Iterable[Number], shift: int = 0) -> "LaurentPoly":
        """Build from a dense low-to-high coefficient list."""
        return cls({i + shift: v for i, v in enumerate(coeffs)})

    def coeffs(self) -> Dict[int, Number]:
        return dict(self._c)

    def items(self) -> List[Tuple[int, Number]]:
        return sorted(self._c.items())

    def __getitem__(self, e: int) -> Number:
        return self._c.get(e, 0)

    def __len__(self) -> int:
        return len(self._c)

    def __bool__(self) -> bool:
        return bool(self._c)

    def is_zero(self) -> bool:
        return not self._c

    def min_exp(self) -> int:
        if not self._c:
            raise ValueError("zero polynomial has no exponents")
        return min(self._c)

    def max_exp(self) -> int:
        if not self._c:
            raise ValueError("zero polynomial has no exponents")
        return max(self._c)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, LaurentPoly):
            return self._c == other._c
        if isinstance(other, (int, Rational)):
            return self._c == ({0: _norm(other)} if other else {})
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self._c.items()))

    def __repr__(self) -> str:
        if not self._c:
            return "LaurentPoly(0)"
        parts = [f"{v}*x^{e}" for e, v in sorted(self._c.items())]
        return "LaurentPoly(" + " + ".join(parts) + ")"

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._raw({e: -v for e, v in self._c.items()})

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly({0: other})
        out = dict(self._c)
        for e, v in other._c.items():
            s = out.get(e, 0) + v
            if s:
                out[e] = _norm(s)
            else:
                out.pop(e, None)
        return LaurentPoly._raw(out)

    __radd__ = __add__

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly({0: other})
        return self + (-other)

    def __mul__(self, other: Union["LaurentPoly", Number]) -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            if not other:
                return LaurentPoly()
            return LaurentPoly._raw({e: _norm(v * other) for e, v in self._c.items()})
        out: Dict[int, Number] = {}
        for e1, v1 in self._c.items():
            for e2, v2 in other._c.items():
                k = e1 + e2
                out[k] = out.get(k, 0) + v1 * v2
        return LaurentPoly({e: v for e, v in out.items() if v})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "LaurentPoly":
        if k < 0:
            raise ValueError("negative power of a Laurent polynomial")
        result = LaurentPoly({0: 1})
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by ``x**k``."""
        return LaurentPoly._raw({e + k: v for e, v in self._c.items()})

    def mul_binomial(self, k: int) -> "LaurentPoly":
        """Multiply by ``x**k - 1`` in linear time."""
        out = {e: -v for e, v in self._c.items()}
        for e, v in self._c.items():
            s = out.get(e + k, 0) + v
            if s:
                out[e + k] = s
            else:
                out.pop(e + k, None)
        return LaurentPoly._raw(out)

    def __call__(self, x: Number) -> Number:
        return _norm(sum(Fraction(v) * Fraction(x) ** e for e, v in self._c.items()))


def exact_div(num: LaurentPoly, den: LaurentPoly) -> LaurentPoly:
    """Exact quotient ``num / den`` in the Laurent polynomial ring.

    Raises :class:`NonExactDivision` if ``den`` does not divide ``num``.
    Long division runs from the top degree over the sparse support of ``den``.
    """
    if den.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if num.is_zero():
        return LaurentPoly()
    num_lo, den_lo = num.min_exp(), den.min_exp()
    dterms = sorted(((e - den_lo, v) for e, v in den._c.items()), reverse=True)
    dtop, dlead = dterms[0]
    rest = dterms[1:]
    rem: Dict[int, Number] = {e - num_lo: v for e, v in num._c.items()}
    top = max(rem)
    quot: Dict[int, Number] = {}
    for k in range(top, dtop - 1, -1):
        c = rem.pop(k, 0)
        if not c:
            continue
        qc = _qdiv(c, dlead)
        j = k - dtop
        quot[j] = qc
        for e, v in rest:
            idx = j + e
            s = rem.get(idx, 0) - qc * v
            if s:
                rem[idx] = s
            else:
                rem.pop(idx, None)
    if any(rem.values()):
        raise NonExactDivision("nonzero remainder")
    return LaurentPoly({j + num_lo - den_lo: v for j, v in quot.items()})


# ---------------------------------------------------------------------------
# cyclotomic polynomials and Q(zeta_N)


def divisors(n: int) -> List[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def euler_phi(n: int) -> int:
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def lcm(*xs: int) -> int:
    out = 1
    for x in xs:
        out = out * x // gcd(out, x)
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> LaurentPoly:
    """The n-th cyclotomic polynomial, by exact division of x^n - 1."""
    if n < 1:
        raise ValueError("cyclotomic_polynomial needs n >= 1")
    acc = LaurentPoly.binomial(n)
    for d in divisors(n)[:-1]:
        acc = exact_div(acc, cyclotomic_polynomial(d))
    return acc


@lru_cache(maxsize=None)
def _phi_dense(n: int) -> Tuple[int, ...]:
    p = cyclotomic_polynomial(n)
    return tuple(p[e] for e in range(p.max_exp() + 1))


def _reduce_mod_phi(coeffs: List[Number], n: int) -> Tuple[Number, ...]:
    """Reduce a dense coefficient list modulo the monic Phi_n."""
    phi = _phi_dense(n)
    deg = len(phi) - 1
    c = list(coeffs)
    for k in range(len(c) - 1, deg - 1, -1):
        lead = c[k]
        if not lead:
            continue
        base = k - deg
        for i in range(deg):
            if phi[i]:
                c[base + i] -= lead * phi[i]
        c[k] = 0
    c = c[:deg] + [0] * max(0, deg - len(c))
    return tuple(_norm(x) for x in c)


def _poly_divmod(a: List[Fraction], b: List[Fraction]) -> Tuple[List[Fraction], List[Fraction]]:
    a = list(a)
    q = [Fraction(0)] * max(1, len(a) - len(b) + 1)
    while len(a) >= len(b) and any(a):
        k = len(a) - len(b)
        f = a[-1] / b[-1]
        q[k] = f
        for i, bv in enumerate(b):
            a[k + i] -= f * bv
        a.pop()
        while a and a[-1] == 0:
            a.pop()
    return q, a


def _trim(p: List[Fraction]) -> List[Fraction]:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


class CyclotomicNumber:
    """An element of Q(zeta_N) in the power basis 1, x, ..., x^(phi(N)-1)."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs: Iterable[Number] = ()):
        if order < 1:
            raise ValueError("order must be positive")
        self.order = order
        self.coeffs = _reduce_mod_phi(list(coeffs), order)

    @classmethod
    def _raw(cls, order: int, coeffs: Tuple[Number, ...]) -> "CyclotomicNumber":
        obj = cls.__new__(cls)
        obj.order = order
        obj.coeffs = coeffs
        return obj

    @classmethod
    def zero(cls, order: int) -> "CyclotomicNumber":
        return cls(order)

    @classmethod
    def rational(cls, order: int, value: Number) -> "CyclotomicNumber":
        return cls(order, [value])

    @classmethod
    def root_of_unity(cls, k: int, order: int) -> "CyclotomicNumber":
        """The class of x^k, i.e. exp(2 pi i k / order)."""
        return _root_cached(k % order, order)

    def _check(self, other: "CyclotomicNumber") -> None:
        if self.order != other.order:
            raise ValueError(f"order mismatch: {self.order} vs {other.order}")

    def __add__(self, other: "CyclotomicNumber") -> "CyclotomicNumber":
        if not isinstance(other, CyclotomicNumber):
            other = CyclotomicNumber.rational(self.order, other)
        self._check(other)
        return CyclotomicNumber._raw(
            self.order, tuple(_norm(a + b) for a, b in zip(self.coeffs, other.coeffs))
        )

    __radd__ = __add__

    def __neg__(self) -> "CyclotomicNumber":
        return CyclotomicNumber._raw(self.order, tuple(-a for a in self.coeffs))

    def __sub__(self, other: "CyclotomicNumber") -> "CyclotomicNumber":
        return self + (-other)

    def __mul__(self, other: Union["CyclotomicNumber", Number]) -> "CyclotomicNumber":
        if not isinstance(other, CyclotomicNumber):
            return CyclotomicNumber._raw(
                self.order, tuple(_norm(a * other) for a in self.coeffs)
            )
        self._check(other)
        n = len(self.coeffs)
        prod: List[Number] = [0] * (2 * n - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        prod[i + j] += a * b
        return CyclotomicNumber._raw(self.order, _reduce_mod_phi(prod, self.order))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def inverse(self) -> "CyclotomicNumber":
        """Multiplicative inverse via the extended Euclidean algorithm."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        phi = [Fraction(v) for v in _phi_dense(self.order)]
        r0, r1 = phi, _trim([Fraction(v) for v in self.coeffs])
        s0: List[Fraction] = []
        s1: List[Fraction] = [Fraction(1)]
        while len(r1) > 1:
            q, r = _poly_divmod(r0, r1)
            qs1 = [Fraction(0)] * (len(q) + len(s1))
            for i, a in enumerate(q):
                for j, b in enumerate(s1):
                    qs1[i + j] += a * b
            s2 = [
                (s0[i] if i < len(s0) else 0) - (qs1[i] if i < len(qs1) else 0)
                for i in range(max(len(s0), len(qs1)))
            ]
            r0, r1 = r1, _trim(r)
            s0, s1 = s1, _trim(s2)
        c = r1[0]
        return CyclotomicNumber(self.order, [v / c for v in s1])

    def __truediv__(self, other: Union["CyclotomicNumber", Number]) -> "CyclotomicNumber":
        if isinstance(other, CyclotomicNumber):
            return self * other.inverse()
        return self * _qdiv(1, other)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def to_rational(self) -> Number:
        if not self.is_rational():
            raise ValueError("cyclotomic number is not rational")
        return self.coeffs[0] if self.coeffs else 0

    def __eq__(self, other: object) -> bool:
        if isinstance(other, CyclotomicNumber):
            return self.order == other.order and self.coeffs == other.coeffs
        if isinstance(other, (int, Rational)):
            return self.is_rational() and self.to_rational() == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.order, self.coeffs))

    def __repr__(self) -> str:
        return f"CyclotomicNumber({self.order}, {list(self.coeffs)})"


@lru_cache(maxsize=None)
def _root_cached(k: int, order: int) -> CyclotomicNumber:
    c = [0] * (k + 1)
    c[k] = 1
    return CyclotomicNumber(order, c)


def cyc_arith(a: CyclotomicNumber, b: Optional[CyclotomicNumber], op: str) -> CyclotomicNumber:
    """Dispatch ``add``, ``mul`` or ``inv`` (``b`` is ignored for ``inv``)."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "inv":
        return a.inverse()
    raise ValueError(f"unknown cyclotomic operation {op!r}")


class CycSeries:
    """Truncated power series in t with coefficients in Q(zeta_N).

    Terms of degree above ``trunc`` are dropped on every product.
    """

    __slots__ = ("order", "trunc", "terms")

    def __init__(self, order: int, trunc: int, terms: Optional[Mapping[int, CyclotomicNumber]] = None):
        self.order = order
        self.trunc = trunc
        self.terms: Dict[int, CyclotomicNumber] = {}
        for d, c in (terms or {}).items():
            if c.order != order:
                raise ValueError("all coefficients must share one order")
            if d <= trunc and not c.is_zero():
                self.terms[d] = c

    @classmethod
    def one(cls, order: int, trunc: int) -> "CycSeries":
        return cls(order, trunc, {0: CyclotomicNumber.rational(order, 1)})

    def __add__(self, other: "CycSeries") -> "CycSeries":
        out = dict(self.terms)
        for d, c in other.terms.items():
            out[d] = out[d] + c if d in out else c
        return CycSeries(self.order, min(self.trunc, other.trunc), out)

    def __mul__(self, other: "CycSeries") -> "CycSeries":
        trunc = min(self.trunc, other.trunc)
        out: Dict[int, CyclotomicNumber] = {}
        for d1, c1 in self.terms.items():
            for d2, c2 in other.terms.items():
                d = d1 + d2
                if d > trunc:
                    continue
                p = c1 * c2
                out[d] = out[d] + p if d in out else p
        return CycSeries(self.order, trunc, out)


# ---------------------------------------------------------------------------
# bivariate Laurent sums in y, ybar with rational exponents


Exponent = Tuple[Fraction, Fraction]


class BiLaurent:
    """Finite sum of terms ``c * y**p * ybar**q`` with rational p, q, c.

    ``bound`` is the declared exponent-denominator bound D: every exponent
    must have a denominator dividing D.
    """

    __slots__ = ("bound", "_t")

    def __init__(self, terms: Optional[Mapping[Tuple[Number, Number], Number]] = None, bound: int = 1):
        if bound < 1:
            raise ValueError("exponent-denominator bound must be positive")
        t: Dict[Exponent, Number] = {}
        for (p, q), c in (terms or {}).items():
            key = (Fraction(p), Fraction(q))
            s = t.get(key, 0) + c
            if s:
                t[key] = _norm(s)
            else:
                t.pop(key, None)
        for p, q in t:
            if bound % p.denominator or bound % q.denominator:
                raise ValueError(f"exponent ({p}, {q}) does not fit denominator bound {bound}")
        self.bound = bound
        self._t = t

    @classmethod
    def _raw(cls, t: Dict[Exponent, Number], bound: int) -> "BiLaurent":
        obj = cls.__new__(cls)
        obj.bound = bound
        obj._t = t
        return obj

    @classmethod
    def monomial(cls, p: Number, q: Number, coeff: Number = 1, bound: int = 1) -> "BiLaurent":
        return cls({(p, q): coeff}, bound)

    def terms(self) -> List[Tuple[Fraction, Fraction, Number]]:
        """Terms sorted by (y exponent, ybar exponent)."""
        return [(p, q, c) for (p, q), c in sorted(self._t.items())]

    def as_dict(self) -> Dict[Exponent, Number]:
        return dict(self._t)

    def __len__(self) -> int:
        return len(self._t)

    def __iter__(self) -> Iterator[Tuple[Fraction, Fraction, Number]]:
        return iter(self.terms())

    def is_zero(self) -> bool:
        return not self._t

    def coefficient(self, p: Number, q: Number) -> Number:
        return self._t.get((Fraction(p), Fraction(q)), 0)

    def with_bound(self, bound: int) -> "BiLaurent":
        return BiLaurent(self._t, bound)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, BiLaurent):
            return self._t == other._t
        if isinstance(other, (int, Rational)):
            return self._t == ({(Fraction(0), Fraction(0)): _norm(other)} if other else {})
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self._t.items()))

    def __add__(self, other: "BiLaurent") -> "BiLaurent":
        out = dict(self._t)
        for k, c in other._t.items():
            s = out.get(k, 0) + c
            if s:
                out[k] = _norm(s)
            else:
                out.pop(k, None)
        return BiLaurent._raw(out, lcm(self.bound, other.bound))

    def __neg__(self) -> "BiLaurent":
        return BiLaurent._raw({k: -c for k, c in self._t.items()}, self.bound)

    def __sub__(self, other: "BiLaurent") -> "BiLaurent":
        return self + (-other)

    def __mul__(self, other: Union["BiLaurent", Number]) -> "BiLaurent":
        if not isinstance(other, BiLaurent):
            if not other:
                return BiLaurent._raw({}, self.bound)
            return BiLaurent._raw({k: _norm(c * other) for k, c in self._t.items()}, self.bound)
        out: Dict[Exponent, Number] = {}
        for (p1, q1), c1 in self._t.items():
            for (p2, q2), c2 in other._t.items():
                k = (p1 + p2, q1 + q2)
                out[k] = out.get(k, 0) + c1 * c2
        return BiLaurent({k: c for k, c in out.items() if c}, lcm(self.bound, other.bound))

    __rmul__ = __mul__

    def invert_ybar(self) -> "BiLaurent":
        """Substitute ybar -> 1/ybar."""
        return BiLaurent._raw({(p, -q): c for (p, q), c in self._t.items()}, self.bound)

    def scale_by_monomial(self, c: Number) -> "BiLaurent":
        """Multiply by ``ybar**c``."""
        c = Fraction(c)
        if self.bound % c.denominator:
            raise ValueError(f"ybar exponent {c} does not fit denominator bound {self.bound}")
        return BiLaurent._raw({(p, q + c): v for (p, q), v in self._t.items()}, self.bound)

    def __repr__(self) -> str:
        if not self._t:
            return "0"
        return " + ".join(f"{c}*y^({p})*yb^({q})" for p, q, c in self.terms())


def bi_transform(f: BiLaurent, action: str, c: Number = 0) -> BiLaurent:
    """Apply ``invert_ybar``, ``scale_by_monomial`` (by ybar**c) or ``negate``."""
    if action == "invert_ybar":
        return f.invert_ybar()
    if action == "scale_by_monomial":
        return f.scale_by_monomial(c)
    if action == "negate":
        return -f
    raise ValueError(f"unknown transform {action!r}")
