"""Exact sparse polynomials over the integers.

Polynomials are keyed by monomials, a monomial being a sorted tuple of
``(variable_index, exponent)`` pairs with positive exponents.  All
coefficients are Python ints, so arithmetic never loses precision;
rationals only show up when a polynomial is evaluated at a point.

Besides general polynomials the module provides products/quotients of
linear differences ``x_i - x_j`` (:class:`FactoredRational`), which is
the natural shape of every coefficient that appears for tree arrangements,
and small univariate/bivariate polynomial types for generating functions.
"""

from __future__ import annotations

import heapq
import itertools
from collections import Counter
from functools import lru_cache
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Optional, Sequence, Tuple

Monomial = Tuple[Tuple[int, int], ...]

ONE_MONOMIAL: Monomial = ()


class NotDivisible(ArithmeticError):
    """Raised by :meth:`Polynomial.exact_div` when the division is not exact."""


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    exps = dict(a)
    for v, e in b:
        exps[v] = exps.get(v, 0) + e
    return tuple(sorted(exps.items()))


def _mono_div(a: Monomial, b: Monomial) -> Optional[Monomial]:
    """Return a/b if b divides a, else None."""
    exps = dict(a)
    for v, e in b:
        have = exps.get(v, 0)
        if have < e:
            return None
        if have == e:
            del exps[v]
        else:
            exps[v] = have - e
    return tuple(sorted(exps.items()))


def mono_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


def grlex_key(m: Monomial) -> tuple:
    """Sort key for graded lexicographic order with x_0 > x_1 > ...

    Larger keys are larger monomials.  Within a degree, the monomial with
    the bigger exponent on the smallest differing variable index wins;
    negating the variable index turns that into plain tuple comparison.
    """
    return (mono_degree(m), tuple((-v, e) for v, e in m))


@lru_cache(maxsize=1 << 16)
def _heap_key(m: Monomial) -> tuple:
    # reverses grlex_key; no prefix ties at equal degree, so negating works
    return (-mono_degree(m), tuple((v, -e) for v, e in m))


def _var_name(v: int, names: Optional[Sequence[str]]) -> str:
    return f"x_{names[v]}" if names is not None else f"x_{v}"


def _render_mono(m: Monomial, names: Optional[Sequence[str]]) -> str:
    parts = []
    for v, e in m:
        parts.append(_var_name(v, names) + (f"^{e}" if e > 1 else ""))
    return "*".join(parts)


class Polynomial:
    """Immutable sparse multivariate polynomial with integer coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Optional[Mapping[Monomial, int]] = None):
        clean: Dict[Monomial, int] = {}
        if terms:
            for m, c in terms.items():
                if c:
                    clean[m] = int(c)
        self._terms = clean
        self._hash = None

    # construction helpers
    @classmethod
    def const(cls, c: int) -> "Polynomial":
        return cls({ONE_MONOMIAL: c})

    @classmethod
    def var(cls, v: int) -> "Polynomial":
        return cls({((v, 1),): 1})

    @classmethod
    def linear_difference(cls, plus: int, minus: int) -> "Polynomial":
        if plus == minus:
            raise ValueError("x_i - x_i is not a linear form")
        return cls({((plus, 1),): 1, ((minus, 1),): -1})

    @classmethod
    def _raw(cls, terms: Dict[Monomial, int]) -> "Polynomial":
        p = cls.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    # inspection
    @property
    def terms(self) -> Mapping[Monomial, int]:
        return self._terms

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def variables(self) -> set:
        return {v for m in self._terms for v, _ in m}

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((mono_degree(m) for m in self._terms), default=-1)

    def degree_in(self, v: int) -> int:
        return max((e for m in self._terms for w, e in m if w == v), default=0)

    def is_homogeneous(self) -> bool:
        return len({mono_degree(m) for m in self._terms}) <= 1

    def sorted_terms(self):
        """Terms in canonical order: leading (grlex-largest) monomial first."""
        return sorted(self._terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def leading_term(self) -> Tuple[Monomial, int]:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        return max(self._terms.items(), key=lambda t: grlex_key(t[0]))

    # arithmetic
    def __add__(self, other) -> "Polynomial":
        if isinstance(other, int):
            other = Polynomial.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        out = dict(self._terms)
        for m, c in other._terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Polynomial._raw(out)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other) -> "Polynomial":
        if isinstance(other, int):
            other = Polynomial.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Polynomial":
        return (-self) + other

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, int):
            if other == 0:
                return Polynomial()
            return Polynomial._raw({m: c * other for m, c in self._terms.items()})
        if not isinstance(other, Polynomial):
            return NotImplemented
        out: Dict[Monomial, int] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = _mono_mul(m1, m2)
                out[m] = out.get(m, 0) + c1 * c2
        return Polynomial({m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Polynomial":
        if k < 0:
            raise ValueError("negative power")
        out = Polynomial.const(1)
        for _ in range(k):
            out = out * self
        return out

    def exact_div(self, d: "Polynomial") -> "Polynomial":
        """Quotient q with self == d*q, by leading-term elimination.

        Raises :class:`NotDivisible` if d does not divide self and
        :class:`ZeroDivisionError` if d is zero.
        """
        if d.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        lm_d, lc_d = d.leading_term()
        d_terms = list(d._terms.items())
        rem = dict(self._terms)
        heap = [(_heap_key(m), m) for m in rem]
        heapq.heapify(heap)
        quot: Dict[Monomial, int] = {}
        while rem:
            _, lm_r = heapq.heappop(heap)
            lc_r = rem.get(lm_r)
            if lc_r is None:
                continue  # stale entry
            qm = _mono_div(lm_r, lm_d)
            if qm is None or lc_r % lc_d:
                raise NotDivisible
            qc = lc_r // lc_d
            quot[qm] = quot.get(qm, 0) + qc
            for m, c in d_terms:
                mm = _mono_mul(m, qm)
                old = rem.get(mm)
                s = (old or 0) - c * qc
                if s:
                    rem[mm] = s
                    if old is None:
                        heapq.heappush(heap, (_heap_key(mm), mm))
                else:
                    rem.pop(mm, None)
        return Polynomial(quot)

    def derivative(self, v: int) -> "Polynomial":
        out: Dict[Monomial, int] = {}
        for m, c in self._terms.items():
            exps = dict(m)
            e = exps.get(v, 0)
            if not e:
                continue
            if e == 1:
                del exps[v]
            else:
                exps[v] = e - 1
            mm = tuple(sorted(exps.items()))
            out[mm] = out.get(mm, 0) + c * e
        return Polynomial(out)

    def evaluate(self, point: Mapping[int, object]) -> Fraction:
        total = Fraction(0)
        for m, c in self._terms.items():
            term = Fraction(c)
            for v, e in m:
                try:
                    x = point[v]
                except (KeyError, IndexError):
                    raise KeyError(f"variable x_{v} is not assigned") from None
                term *= Fraction(x) ** e
            total += term
        return total

    # comparison / rendering
    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = Polynomial.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def render(self, names: Optional[Sequence[str]] = None) -> str:
        if not self._terms:
            return "0"
        out = []
        for i, (m, c) in enumerate(self.sorted_terms()):
            sign = "-" if c < 0 else "+"
            a = abs(c)
            body = _render_mono(m, names)
            if not body:
                body = str(a)
            elif a != 1:
                body = f"{a}*{body}"
            if i == 0:
                out.append(body if sign == "+" else f"-{body}")
            else:
                out.append(f" {sign} {body}")
        return "".join(out)

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"Polynomial({self.render()!r})"


def poly_add(a: Polynomial, b: Polynomial) -> Polynomial:
    return a + b


def poly_mul(a: Polynomial, b: Polynomial) -> Polynomial:
    return a * b


def poly_divides(d: Polynomial, p: Polynomial) -> Optional[Polynomial]:
    """Return the quotient p/d if d divides p exactly, otherwise None."""
    try:
        return p.exact_div(d)
    except NotDivisible:
        return None


def poly_eval(p: Polynomial, point: Mapping[int, object]) -> Fraction:
    return p.evaluate(point)


def product(polys: Iterable[Polynomial]) -> Polynomial:
    out = Polynomial.const(1)
    for p in polys:
        out = out * p
    return out


# --------------------------------------------------------------------------
# Products of linear differences
# --------------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class LinearDifference:
    """The linear form x_plus - x_minus."""

    plus: int
    minus: int

    def __post_init__(self):
        if self.plus == self.minus:
            raise ValueError("a linear difference needs two distinct variables")

    def canonical(self) -> Tuple["LinearDifference", int]:
        """Orient so that plus < minus; return (form, sign flip)."""
        if self.plus < self.minus:
            return self, 1
        return LinearDifference(self.minus, self.plus), -1

    def to_poly(self) -> Polynomial:
        return Polynomial.linear_difference(self.plus, self.minus)

    def coefficient(self, v: int) -> int:
        """Partial derivative with respect to x_v."""
        if v == self.plus:
            return 1
        if v == self.minus:
            return -1
        return 0

    def value(self, point: Mapping[int, object]) -> Fraction:
        return Fraction(point[self.plus]) - Fraction(point[self.minus])

    def render(self, names: Optional[Sequence[str]] = None) -> str:
        return f"{_var_name(self.plus, names)} - {_var_name(self.minus, names)}"


class FactoredRational:
    """sign * prod(numerator) / prod(denominator) over linear differences.

    Always stored canonically: each factor oriented with plus < minus (sign
    adjusted), no factor shared by numerator and denominator, factors kept
    as sorted tuples.  A zero sign means the zero function.
    """

    __slots__ = ("sign", "numerator", "denominator")

    def __init__(
        self,
        sign: int,
        numerator: Iterable[LinearDifference] = (),
        denominator: Iterable[LinearDifference] = (),
    ):
        if sign not in (-1, 0, 1):
            raise ValueError("sign must be -1, 0 or +1")
        if sign == 0:
            self.sign = 0
            self.numerator: Tuple[LinearDifference, ...] = ()
            self.denominator: Tuple[LinearDifference, ...] = ()
            return
        num = Counter()
        for f in numerator:
            f, s = f.canonical()
            sign *= s
            num[f] += 1
        den = Counter()
        for f in denominator:
            f, s = f.canonical()
            sign *= s
            den[f] += 1
        common = num & den
        num -= common
        den -= common
        self.sign = sign
        self.numerator = tuple(sorted(num.elements()))
        self.denominator = tuple(sorted(den.elements()))

    @classmethod
    def one(cls) -> "FactoredRational":
        return cls(1)

    @classmethod
    def zero(cls) -> "FactoredRational":
        return cls(0)

    def canonical(self) -> "FactoredRational":
        return FactoredRational(self.sign, self.numerator, self.denominator)

    def is_zero(self) -> bool:
        return self.sign == 0

    def is_polynomial(self) -> bool:
        return not self.denominator

    def __mul__(self, other: "FactoredRational") -> "FactoredRational":
        if not isinstance(other, FactoredRational):
            return NotImplemented
        if self.sign == 0 or other.sign == 0:
            return FactoredRational.zero()
        return FactoredRational(
            self.sign * other.sign,
            self.numerator + other.numerator,
            self.denominator + other.denominator,
        )

    def __neg__(self) -> "FactoredRational":
        return FactoredRational(-self.sign, self.numerator, self.denominator)

    def reciprocal(self) -> "FactoredRational":
        if self.sign == 0:
            raise ZeroDivisionError("reciprocal of zero")
        return FactoredRational(self.sign, self.denominator, self.numerator)

    def partial(self, v: int) -> list:
        """d/dx_v as a list of factored rationals whose sum is the derivative.

        Uses logarithmic differentiation: each factor containing x_v
        contributes the function with that factor removed (numerator) or
        squared in the denominator (denominator), times the form's
        coefficient on x_v.
        """
        if self.sign == 0:
            return []
        out = []
        for k, f in enumerate(self.numerator):
            c = f.coefficient(v)
            if c:
                rest = self.numerator[:k] + self.numerator[k + 1:]
                out.append(FactoredRational(self.sign * c, rest, self.denominator))
        for k, f in enumerate(self.denominator):
            c = f.coefficient(v)
            if c:
                out.append(
                    FactoredRational(-self.sign * c, self.numerator, self.denominator + (f,))
                )
        return out

    def evaluate(self, point: Mapping[int, object]) -> Fraction:
        if self.sign == 0:
            return Fraction(0)
        num = self.sign
        for f in self.numerator:
            num *= point[f.plus] - point[f.minus]
        den = 1
        for f in self.denominator:
            d = point[f.plus] - point[f.minus]
            if d == 0:
                raise ZeroDivisionError(f"pole at {f.render()} = 0")
            den *= d
        return Fraction(num, den)

    def _key(self):
        return (self.sign, self.numerator, self.denominator)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FactoredRational):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def render(self, names: Optional[Sequence[str]] = None) -> str:
        if self.sign == 0:
            return "0"
        num = "".join(f"({f.render(names)})" for f in self.numerator) or "1"
        out = num if self.sign > 0 else f"-{num}"
        if self.denominator:
            den = "".join(f"({f.render(names)})" for f in self.denominator)
            out += f"/{den}"
        return out

    def __repr__(self) -> str:
        return f"FactoredRational({self.render()!r})"


def factored_to_poly(f: FactoredRational) -> Polynomial:
    if f.denominator:
        raise ValueError("factored rational has a nonempty denominator")
    if f.sign == 0:
        return Polynomial()
    out = Polynomial.const(f.sign)
    for factor in f.numerator:
        out = out * factor.to_poly()
    return out


def _lcm_factors(dens: Iterable[Sequence[LinearDifference]]) -> Counter:
    lcm: Counter = Counter()
    for den in dens:
        lcm |= Counter(den)
    return lcm


def cleared_numerator(terms: Sequence[Tuple[FactoredRational, Polynomial]]):
    """Put sum(f * p) over a common denominator.

    Returns ``(numerator, lcm)`` with ``sum(f*p) == numerator / prod(lcm)``;
    ``lcm`` is a Counter of canonical linear differences.
    """
    lcm = _lcm_factors(f.denominator for f, _ in terms)
    total = Polynomial()
    for f, p in terms:
        if f.sign == 0 or p.is_zero():
            continue
        missing = lcm - Counter(f.denominator)
        cleared = FactoredRational(f.sign, f.numerator + tuple(missing.elements()))
        total = total + factored_to_poly(cleared) * p
    return total, lcm


def rational_sum_equals(
    terms: Sequence[Tuple[FactoredRational, Polynomial]], target: Polynomial
) -> bool:
    """Symbolically decide whether sum(f * p) == target as rational functions."""
    num, lcm = cleared_numerator(terms)
    den = product(f.to_poly() for f in lcm.elements())
    return num == target * den


def identity_grid(nvars: int, degree_bounds: Sequence[int], offset: int = 1):
    """Per-variable value sets for deterministic identity testing.

    Variable v gets ``degree_bounds[v] + 1`` integers from the residue class
    ``offset + v (mod nvars)``, so coordinates of different variables never
    coincide and no x_i - x_j vanishes anywhere on the grid.
    """
    step = max(nvars, 1)
    return [[offset + v + step * t for t in range(degree_bounds[v] + 1)] for v in range(nvars)]


def lower_set_points(values: Sequence[Sequence[int]], total_degree: int):
    """Points of the tensor grid whose index vector has sum <= total_degree.

    A polynomial whose degree in x_v is below ``len(values[v])`` and whose
    total degree is at most ``total_degree`` vanishes identically iff it
    vanishes on these points: the index set is downward closed, so Newton
    interpolation on it is unisolvent for the matching monomial space.
    """
    n = len(values)

    def rec(v, budget, acc):
        if v == n:
            yield tuple(acc)
            return
        for t in range(min(len(values[v]), budget + 1)):
            acc.append(values[v][t])
            yield from rec(v + 1, budget - t, acc)
            acc.pop()

    yield from rec(0, total_degree, [])


# --------------------------------------------------------------------------
# Small polynomial types for generating functions
# --------------------------------------------------------------------------


class UnivariatePolynomial:
    """Integer polynomial in one variable y, coefficients low degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        cs = [int(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: Tuple[int, ...] = tuple(cs)

    @classmethod
    def from_roots(cls, roots: Iterable[int]) -> "UnivariatePolynomial":
        out = cls([1])
        for r in roots:
            out = out * cls([-r, 1])
        return out

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __add__(self, other: "UnivariatePolynomial") -> "UnivariatePolynomial":
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return UnivariatePolynomial(
            (a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)
        )

    def __mul__(self, other: "UnivariatePolynomial") -> "UnivariatePolynomial":
        if not self.coeffs or not other.coeffs:
            return UnivariatePolynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return UnivariatePolynomial(out)

    def __call__(self, y) -> int:
        val = 0
        for c in reversed(self.coeffs):
            val = val * y + c
        return val

    def __eq__(self, other) -> bool:
        if not isinstance(other, UnivariatePolynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def render(self, var: str = "y") -> str:
        return _render_terms(
            [((d,), c) for d, c in enumerate(self.coeffs) if c],
            (var,),
        )

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"UnivariatePolynomial({self.render()!r})"


class BivariatePolynomial:
    """Integer polynomial in y and z, keyed by (deg_y, deg_z)."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Mapping[Tuple[int, int], int]] = None):
        self.terms: Dict[Tuple[int, int], int] = {
            k: int(c) for k, c in (terms or {}).items() if c
        }

    @classmethod
    def const(cls, c: int) -> "BivariatePolynomial":
        return cls({(0, 0): c})

    @classmethod
    def y(cls) -> "BivariatePolynomial":
        return cls({(1, 0): 1})

    @classmethod
    def z(cls) -> "BivariatePolynomial":
        return cls({(0, 1): 1})

    def __add__(self, other: "BivariatePolynomial") -> "BivariatePolynomial":
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return BivariatePolynomial(out)

    def __mul__(self, other: "BivariatePolynomial") -> "BivariatePolynomial":
        out: Dict[Tuple[int, int], int] = {}
        for (a, b), c in self.terms.items():
            for (p, q), d in other.terms.items():
                k = (a + p, b + q)
                out[k] = out.get(k, 0) + c * d
        return BivariatePolynomial(out)

    def shift_z(self) -> "BivariatePolynomial":
        """Substitute z -> 1 + z."""
        out: Dict[Tuple[int, int], int] = {}
        for (a, b), c in self.terms.items():
            binom = 1
            for k in range(b + 1):
                out[(a, k)] = out.get((a, k), 0) + c * binom
                binom = binom * (b - k) // (k + 1)
        return BivariatePolynomial(out)

    def __call__(self, y, z):
        return sum(c * y**a * z**b for (a, b), c in self.terms.items())

    def __eq__(self, other) -> bool:
        if not isinstance(other, BivariatePolynomial):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def render(self) -> str:
        return _render_terms(list(self.terms.items()), ("y", "z"))

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"BivariatePolynomial({self.render()!r})"


def _render_terms(terms, names) -> str:
    # grlex descending, earlier variables dominate within a degree
    terms = sorted(terms, key=lambda t: (sum(t[0]), t[0]), reverse=True)
    if not terms:
        return "0"
    out = []
    for i, (exps, c) in enumerate(terms):
        factors = [n + (f"^{e}" if e > 1 else "") for n, e in zip(names, exps) if e]
        a = abs(c)
        body = "*".join(factors)
        if not body:
            body = str(a)
        elif a != 1:
            body = f"{a}*{body}"
        if i == 0:
            out.append(body if c > 0 else f"-{body}")
        else:
            out.append(f" {'-' if c < 0 else '+'} {body}")
    return "".join(out)


def bareiss_det(matrix: Sequence[Sequence[int]]) -> int:
    """Determinant of an integer matrix by fraction-free elimination."""
    m = [list(row) for row in matrix]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if m[r][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def all_points(values: Sequence[Sequence[int]]):
    return itertools.product(*values)


def rational_sum_equals_on_grid(
    terms: Sequence[Tuple[FactoredRational, Polynomial]],
    target: Polynomial,
    nvars: int,
    offset: int = 1,
) -> Tuple[bool, int]:
    """Grid version of :func:`rational_sum_equals`.

    Clearing denominators gives P = numerator - target * prod(lcm), whose
    per-variable and total degrees are bounded from the factor lists; P is
    checked on a lower set of an identity grid where no linear difference
    vanishes, so sum(f*p) == target at every grid point iff P is zero.
    Returns ``(equal, points_checked)``.
    """
    terms = [(f, p) for f, p in terms if f.sign and p]
    lcm = _lcm_factors(f.denominator for f, _ in terms)

    def var_deg(factors, v):
        return sum(1 for f in factors if v in (f.plus, f.minus))

    bounds = []
    for v in range(nvars):
        lcm_v = var_deg(lcm.elements(), v)
        extra = max(
            (var_deg(f.numerator, v) - var_deg(f.denominator, v) + p.degree_in(v) for f, p in terms),
            default=0,
        )
        bounds.append(max(lcm_v + max(extra, 0), target.degree_in(v) + lcm_v))
    lcm_deg = sum(lcm.values())
    total = max(
        [len(f.numerator) - len(f.denominator) + p.degree() for f, p in terms] + [target.degree()]
    ) + lcm_deg
    values = identity_grid(nvars, bounds, offset)
    count = 0
    for pt in lower_set_points(values, max(total, 0)):
        point = dict(enumerate(pt))
        s = sum((f.evaluate(point) * p.evaluate(point) for f, p in terms), Fraction(0))
        count += 1
        if s != target.evaluate(point):
            return False, count
    return True, count
