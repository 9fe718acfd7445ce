"""The hyperplane arrangement of a rooted tree.

For a rooted tree T on I the arrangement lives in Q^I and has one
hyperplane x_i = x_j for every strictly comparable pair i <_T j.  This
module builds it together with the explicit logarithmic vector fields
theta_i and 1-forms omega_i, and certifies freeness (Saito determinant),
duality of the two bases, the characteristic polynomial / chamber count
and the spanning set of linear relations among the defining forms.
"""

from __future__ import annotations

import math
from functools import lru_cache
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Sequence, Tuple

import networkx as nx

from .certificate import Certificate
from .exactpoly import (
    FactoredRational,
    LinearDifference,
    Polynomial,
    UnivariatePolynomial,
    bareiss_det,
    cleared_numerator,
    factored_to_poly,
    identity_grid,
    lower_set_points,
    poly_divides,
    product,
    rational_sum_equals,
    rational_sum_equals_on_grid,
)
from .treecore import RootedTree, comparability_graph, min_linear_extension

# symbolic denominator clearing is used up to this many vertices
SYMBOLIC_MAX_N = 5


@dataclass(frozen=True)
class Arrangement:
    tree: RootedTree
    hyperplanes: Tuple[LinearDifference, ...]

    @property
    def n(self) -> int:
        return self.tree.n

    @property
    def names(self) -> Tuple[str, ...]:
        return self.tree.labels


@dataclass
class VectorField:
    """sum_j coeffs[j] * d/dx_j; absent coordinates are zero."""

    coeffs: Dict[int, Polynomial] = field(default_factory=dict)

    def __call__(self, j: int) -> Polynomial:
        """The field applied to the coordinate function x_j."""
        return self.coeffs.get(j, Polynomial())

    def render(self, names: Sequence[str]) -> str:
        parts = [f"({self.coeffs[j].render(names)})*d/dx_{names[j]}" for j in sorted(self.coeffs)]
        return " + ".join(parts) or "0"


@dataclass
class OneForm:
    """sum_j coeffs[j] dx_j; absent coordinates are zero."""

    coeffs: Dict[int, FactoredRational] = field(default_factory=dict)

    def __call__(self, j: int) -> FactoredRational:
        return self.coeffs.get(j, FactoredRational.zero())

    def render(self, names: Sequence[str]) -> str:
        parts = [f"[{self.coeffs[j].render(names)}]*dx_{names[j]}" for j in sorted(self.coeffs)]
        return " + ".join(parts) or "0"


def build_arrangement(t: RootedTree) -> Arrangement:
    hyps = sorted(LinearDifference(a, v) for v in range(t.n) for a in t.ancestors(v))
    return Arrangement(t, tuple(hyps))


def defining_form(arr: Arrangement) -> FactoredRational:
    """Q_T, the product of x_i - x_j over all hyperplanes (tree-oriented)."""
    return FactoredRational(1, arr.hyperplanes)


def _check_vertex(arr: Arrangement, i) -> int:
    return arr.tree.vertex(i)


def theta_factors(arr: Arrangement, i: int, j: int) -> FactoredRational:
    """theta_i(x_j) in factored form."""
    t = arr.tree
    if not t.leq(i, j):
        return FactoredRational.zero()
    return FactoredRational(1, [LinearDifference(k, j) for k in t.ancestors(i)])


def theta(arr: Arrangement, i) -> VectorField:
    i = _check_vertex(arr, i)
    t = arr.tree
    coeffs = {}
    for j in range(t.n):
        if t.leq(i, j):
            coeffs[j] = product(Polynomial.linear_difference(k, j) for k in t.ancestors(i))
    return VectorField(coeffs)


@lru_cache(maxsize=1 << 16)
def _linear_divides(h: LinearDifference, p: Polynomial) -> bool:
    return poly_divides(h.to_poly(), p) is not None


def is_logarithmic(arr: Arrangement, v: VectorField) -> bool:
    """x_j - x_k divides v(x_j) - v(x_k) for every hyperplane."""
    return all(_linear_divides(h, v(h.plus) - v(h.minus)) for h in arr.hyperplanes)


def theta_matrix(arr: Arrangement) -> List[List[Polynomial]]:
    """Theta[i][j] = theta_i(x_j), rows and columns by vertex index."""
    fields = [theta(arr, i) for i in range(arr.n)]
    return [[fields[i](j) for j in range(arr.n)] for i in range(arr.n)]


def exponents(t: RootedTree) -> List[int]:
    return sorted(t.depth(v) for v in range(t.n))


def basis_degrees(arr: Arrangement) -> List[int]:
    """Polynomial degree of the (homogeneous) coefficients of each theta_i."""
    out = []
    for i in range(arr.n):
        degs = {p.degree() for p in theta(arr, i).coeffs.values()}
        if len(degs) != 1:
            raise AssertionError(f"theta_{i} is not homogeneous")
        out.append(degs.pop())
    return sorted(out)


def _det_degree_bounds(matrix: List[List[Polynomial]], q: Polynomial, n: int) -> List[int]:
    # deg_v(det) is bounded both by summing row maxima and column maxima
    bounds = []
    for v in range(n):
        rows = sum(max(p.degree_in(v) for p in row) for row in matrix)
        cols = sum(max(matrix[i][j].degree_in(v) for i in range(n)) for j in range(n))
        bounds.append(max(min(rows, cols), q.degree_in(v)))
    return bounds


def _pinned_coordinates(factored, order, base: int) -> Dict[int, int]:
    """Coordinates that may be fixed before grid-testing det Theta - c*Q_T.

    If every entry is a product of linear differences and each row has a
    single degree, det Theta and Q_T are translation invariant and
    homogeneous, so the difference vanishes identically iff it does with
    the first two coordinates (in ``order``) set to two distinct values
    (an affine change of coordinates moves any point there).  The values
    ``base - 2`` and ``base - 1`` stay below every grid value.  Otherwise
    nothing is pinned.
    """
    for row in factored:
        if any(f.denominator for f in row):
            return {}
        if len({len(f.numerator) for f in row if f.sign}) > 1:
            return {}
    return dict(zip(order[:2], (base - 2, base - 1)))


def saito_check(arr: Arrangement, grid_offset: int = 1) -> Certificate:
    """Certify det Theta = c * Q_T with c = +-1 by two independent routes.

    Route 1 checks that Theta is triangular along a linear extension of the
    tree order and multiplies the diagonal symbolically.  Route 2 evaluates
    det Theta by fraction-free elimination on an identity grid large enough
    for the degree bounds of det Theta - c*Q_T and compares with Q_T there.
    """
    t = arr.tree
    n = t.n
    q = factored_to_poly(defining_form(arr))
    matrix = theta_matrix(arr)
    order = min_linear_extension(t)
    pos = {v: k for k, v in enumerate(order)}

    triangular = all(
        matrix[i][j].is_zero() for i in range(n) for j in range(n) if pos[j] < pos[i]
    )
    diag = product(matrix[i][i] for i in range(n))
    if diag == q:
        c1 = 1
    elif diag == -q:
        c1 = -1
    else:
        c1 = None
    route1 = triangular and c1 is not None

    # route 2: numeric determinants on a grid
    factored = [[theta_factors(arr, i, j) for j in range(n)] for i in range(n)]
    hyps = defining_form(arr)
    bounds = _det_degree_bounds(matrix, q, n)
    total = len(arr.hyperplanes)
    pinned = _pinned_coordinates(factored, order, grid_offset)
    free = [v for v in range(n) if v not in pinned]
    values = identity_grid(len(free), [bounds[v] for v in free], grid_offset)
    c2 = None
    route2 = True
    points = 0
    for pt in lower_set_points(values, total):
        point = dict(pinned)
        point.update(zip(free, pt))
        num = [[int(f.evaluate(point)) for f in row] for row in factored]
        d = bareiss_det(num)
        qv = int(hyps.evaluate(point))
        points += 1
        if c2 is None:
            if qv == 0 or d not in (qv, -qv):
                route2 = False
                break
            c2 = d // qv
        elif d != c2 * qv:
            route2 = False
            break

    degrees = basis_degrees(arr)
    depths = exponents(t)
    ok = route1 and route2 and c1 == c2 and degrees == depths and sum(depths) == q.degree()
    return Certificate(
        claim=f"H_T is free for T = {t.render()} (det Theta = c*Q_T)",
        status=ok,
        witness={
            "linear_extension": [t.labels[v] for v in order],
            "triangular": triangular,
            "c_symbolic": c1,
            "c_grid": c2,
            "grid_points": points,
            "pinned": [t.labels[v] for v in pinned],
            "theta_degrees": degrees,
            "exponents": depths,
            "deg_Q": max(q.degree(), 0),
        },
    )


# --------------------------------------------------------------------------
# Logarithmic 1-forms
# --------------------------------------------------------------------------


def omega(arr: Arrangement, i) -> OneForm:
    i = _check_vertex(arr, i)
    t = arr.tree
    chain = [i] + t.ancestors(i)
    coeffs = {}
    for j in chain:
        coeffs[j] = FactoredRational(1, (), [LinearDifference(k, j) for k in chain if k != j])
    return OneForm(coeffs)


def _q_times_sum_is_polynomial(q_factors: Counter, terms: Sequence[FactoredRational]) -> bool:
    """Is Q * sum(terms) a polynomial, Q being the product of ``q_factors``?

    With the sum written as N/L, Q*N/L is polynomial iff the part of L not
    absorbed by Q divides N; all factors are pairwise non-associate linear
    forms, so "absorbed" is multiset intersection.
    """
    terms = [f for f in terms if f.sign]
    if not terms:
        return True
    num, lcm = cleared_numerator([(f, Polynomial.const(1)) for f in terms])
    if num.is_zero():
        return True
    for f in (lcm - q_factors).elements():
        num = poly_divides(f.to_poly(), num)
        if num is None:
            return False
    return True


def exterior_derivative(form: OneForm, n: int) -> Dict[Tuple[int, int], List[FactoredRational]]:
    """d(form) as {(k, j): summands} for the coefficient of dx_k ^ dx_j, k < j."""
    out = {}
    for k, j in combinations(range(n), 2):
        terms = form(j).partial(k) + [-f for f in form(k).partial(j)]
        if terms:
            out[(k, j)] = terms
    return out


def form_is_logarithmic(arr: Arrangement, form: OneForm) -> bool:
    """Q_T * form and Q_T * d(form) both have polynomial coefficients."""
    coeffs = frozenset((j, f) for j, f in form.coeffs.items() if f.sign)
    support = {j for j, _ in coeffs}
    for _, f in coeffs:
        for g in f.numerator + f.denominator:
            support.update((g.plus, g.minus))
    # only factors of Q_T on the form's own variables can cancel anything
    q_local = frozenset(
        Counter(h for h in defining_form(arr).numerator if h.plus in support and h.minus in support).items()
    )
    return _form_is_logarithmic(coeffs, q_local)


@lru_cache(maxsize=1 << 14)
def _form_is_logarithmic(coeffs: frozenset, q_local: frozenset) -> bool:
    q_factors = Counter(dict(q_local))
    form = OneForm(dict(coeffs))
    for f in form.coeffs.values():
        if not _q_times_sum_is_polynomial(q_factors, [f]):
            return False
    variables = set(form.coeffs)
    for f in form.coeffs.values():
        for g in f.numerator + f.denominator:
            variables.update((g.plus, g.minus))
    n = max(variables, default=-1) + 1
    for terms in exterior_derivative(form, n).values():
        if not _q_times_sum_is_polynomial(q_factors, terms):
            return False
    return True


def omega_is_logarithmic(arr: Arrangement, i) -> bool:
    return form_is_logarithmic(arr, omega(arr, i))


def pairing_terms(arr: Arrangement, i: int, ip: int):
    """Summands omega_i(dx_j) * theta_ip(x_j) of the pairing <omega_i, theta_ip>."""
    w = omega(arr, i)
    th = theta(arr, ip)
    return [(w(j), th(j)) for j in sorted(set(w.coeffs) & set(th.coeffs))]


def duality_check(arr: Arrangement, method: str = "auto", grid_offset: int = 1) -> Certificate:
    """Certify <omega_i, theta_i'> = delta_{i,i'} for every pair of vertices."""
    n = arr.n
    if method == "auto":
        method = "symbolic" if n <= SYMBOLIC_MAX_N else "grid"
    if method not in ("symbolic", "grid"):
        raise ValueError(f"unknown method {method!r}")
    failures = []
    points = 0
    for i in range(n):
        for ip in range(n):
            target = Polynomial.const(1 if i == ip else 0)
            terms = pairing_terms(arr, i, ip)
            if method == "symbolic":
                ok = rational_sum_equals(terms, target)
            else:
                ok, used = rational_sum_equals_on_grid(terms, target, n, grid_offset)
                points += used
            if not ok:
                failures.append([arr.names[i], arr.names[ip]])
    witness = {"method": method, "pairs": n * n, "failures": failures}
    if method == "grid":
        witness["grid_points"] = points
    return Certificate(
        claim=f"(omega_i) is dual to (theta_i) for T = {arr.tree.render()}",
        status=not failures,
        witness=witness,
    )


# --------------------------------------------------------------------------
# Counting
# --------------------------------------------------------------------------


def char_poly_product(t: RootedTree) -> UnivariatePolynomial:
    return UnivariatePolynomial.from_roots(t.depth(v) for v in range(t.n))


def chamber_count(t: RootedTree) -> int:
    return math.prod(t.depth(v) + 1 for v in range(t.n))


def count_acyclic_orientations(g: nx.Graph) -> int:
    """Exhaustive count of acyclic orientations of a simple graph.

    Edges are oriented one at a time; a branch is abandoned as soon as the
    new arc closes a directed cycle, so every leaf reached is acyclic.
    """
    nodes = list(g.nodes())
    idx = {v: k for k, v in enumerate(nodes)}
    edges = [(idx[a], idx[b]) for a, b in g.edges()]
    succ: List[set] = [set() for _ in nodes]

    def reaches(src: int, dst: int) -> bool:
        stack, seen = [src], {src}
        while stack:
            u = stack.pop()
            if u == dst:
                return True
            for w in succ[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return False

    def rec(k: int) -> int:
        if k == len(edges):
            return 1
        a, b = edges[k]
        total = 0
        for u, w in ((a, b), (b, a)):
            if not reaches(w, u):
                succ[u].add(w)
                total += rec(k + 1)
                succ[u].discard(w)
        return total

    return rec(0)


# --------------------------------------------------------------------------
# Linear relations among the forms x_i - x_j
# --------------------------------------------------------------------------


def rank(rows: Sequence[Sequence]) -> int:
    """Rank over Q by Gaussian elimination on Fractions."""
    m = [[Fraction(x) for x in row] for row in rows]
    r = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((k for k in range(r, len(m)) if m[k][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for k in range(len(m)):
            if k != r and m[k][c] != 0:
                factor = m[k][c] / m[r][c]
                m[k] = [a - factor * b for a, b in zip(m[k], m[r])]
        r += 1
    return r


def elementary_relations(arr: Arrangement) -> List[List[int]]:
    """Coefficient vectors of a_ij + a_jk - a_ik for chains i < j < k."""
    t = arr.tree
    where = {(h.plus, h.minus): k for k, h in enumerate(arr.hyperplanes)}
    out = []
    for k in range(t.n):
        anc = t.ancestors(k)
        for j in anc:
            for i in t.ancestors(j):
                vec = [0] * len(arr.hyperplanes)
                vec[where[(i, j)]] += 1
                vec[where[(j, k)]] += 1
                vec[where[(i, k)]] -= 1
                out.append(vec)
    return out


def relation_span_check(arr: Arrangement) -> Certificate:
    """Elementary relations span the kernel of (formal span of hyperplanes) -> forms."""
    n, m = arr.n, len(arr.hyperplanes)
    forms = []
    for h in arr.hyperplanes:
        row = [0] * n
        row[h.plus] += 1
        row[h.minus] -= 1
        forms.append(row)
    form_rank = rank(forms) if forms else 0
    kernel_dim = m - form_rank
    rels = elementary_relations(arr)
    in_kernel = all(
        all(sum(r[k] * forms[k][c] for k in range(m)) == 0 for c in range(n)) for r in rels
    )
    span_dim = rank(rels) if rels else 0
    expected_rank = n - 1
    ok = in_kernel and span_dim == kernel_dim and form_rank == expected_rank
    return Certificate(
        claim=f"elementary relations span all relations for T = {arr.tree.render()}",
        status=ok,
        witness={
            "hyperplanes": m,
            "form_rank": form_rank,
            "kernel_dim": kernel_dim,
            "span_dim": span_dim,
            "relations": len(rels),
            "relations_in_kernel": in_kernel,
        },
    )


def logarithmic_check(arr: Arrangement) -> Certificate:
    """theta_i and omega_i are logarithmic for every vertex i."""
    bad_theta = [arr.names[i] for i in range(arr.n) if not is_logarithmic(arr, theta(arr, i))]
    bad_omega = [arr.names[i] for i in range(arr.n) if not omega_is_logarithmic(arr, i)]
    return Certificate(
        claim=f"theta_i and omega_i are logarithmic for T = {arr.tree.render()}",
        status=not bad_theta and not bad_omega,
        witness={"theta_failures": bad_theta, "omega_failures": bad_omega},
    )


def chamber_certificate(t: RootedTree) -> Certificate:
    product_count = chamber_count(t)
    chi = char_poly_product(t)
    oriented = count_acyclic_orientations(comparability_graph(t))
    return Certificate(
        claim=f"chamber count for T = {t.render()}",
        status=product_count == abs(chi(-1)) == oriented,
        witness={"product": product_count, "abs_chi_minus_1": abs(chi(-1)), "acyclic_orientations": oriented},
    )
