"""Graded coalgebra on forests and its dual algebra.

Basis elements are forests in their canonical orientation: the wedge of
the nodes in ascending label order followed by the auxiliary element R_F.
Any other orientation is folded into the integer coefficient.  Splitting
the node set into ordered blocks N_1, ..., N_k then costs the sign of the
shuffle that sorts (N_1 ascending, ..., N_k ascending) back into order.

The presented algebra M(I) has odd generators Omega_{i,j} (an edge i <- j,
j the child) subject to Omega^2 = 0, the fork relation
Omega_{i,k} Omega_{j,k} = 0 and the oriented-cycle relations; its
monomials m_F list the edges of F by ascending child label.
"""

from __future__ import annotations

import graphlib
import itertools
import json
import re
from functools import lru_cache
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .certificate import Certificate
from .exactpoly import bareiss_det
from .treecore import (
    Forest,
    LabelTable,
    enumerate_forests,
    forest_from_edges,
    induced_forest,
    precedes,
    zero_forest,
)


class _Combination:
    """Integer combination of hashable basis keys (forests or tuples of them)."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Mapping] = None):
        self.terms: Dict = {k: int(c) for k, c in (terms or {}).items() if c}

    @classmethod
    def basis(cls, key):
        return cls({key: 1})

    def coefficient(self, key) -> int:
        return self.terms.get(key, 0)

    def support(self) -> set:
        return set(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return type(self)(out)

    def __sub__(self, other):
        return self + other * -1

    def __mul__(self, c: int):
        if not isinstance(c, int):
            return NotImplemented
        return type(self)({k: v * c for k, v in self.terms.items()})

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1

    def __eq__(self, other) -> bool:
        if type(other) is not type(self):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def _sorted(self):
        return sorted(self.terms.items(), key=lambda kv: _sort_key(kv[0]))

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.render()!r})"


def _sort_key(key):
    if isinstance(key, Forest):
        return (len(key.nodes()), key.render())
    return tuple(_sort_key(k) for k in key)


def _signed(c: int) -> str:
    return f"+{c}" if c > 0 else f"-{-c}"


class CoalgebraElement(_Combination):
    """Element of F(I): forests (canonically oriented) with integer coefficients."""

    def render(self) -> str:
        if not self.terms:
            return "0"
        return " ".join(f"{_signed(c)}·[{f.render()}]" for f, c in self._sorted())

    def to_dict(self) -> dict:
        return {"terms": [{"forests": [f.render()], "coeff": c} for f, c in self._sorted()]}


class DualElement(CoalgebraElement):
    """Element of F*(I) in the basis dual to forests."""


class TensorElement(_Combination):
    """Integer combination of tuples of forests."""

    def render(self) -> str:
        if not self.terms:
            return "0"
        return " ".join(
            f"{_signed(c)}·" + "⊗".join(f"[{f.render()}]" for f in key) for key, c in self._sorted()
        )

    def to_dict(self) -> dict:
        return {
            "terms": [{"forests": [f.render() for f in key], "coeff": c} for key, c in self._sorted()]
        }


def to_json(x, kind: str) -> str:
    d = {"schema": f"treearr.{kind}/1"}
    d.update(x.to_dict())
    return json.dumps(d, sort_keys=True, ensure_ascii=False)


def degree(f: Forest) -> int:
    return len(f.nodes())


# --------------------------------------------------------------------------
# gamma and the coproduct
# --------------------------------------------------------------------------


def gamma(f: Forest, nodes: Iterable) -> List[Forest]:
    """All F' ⊆ f with N(F') = nodes, in canonical order.

    The roots of F' are the vertices outside ``nodes``; each node joins the
    block of one root among its ancestors in f, and any such choice yields a
    block with a unique minimum whose induced order makes it a tree of F'.
    """
    nodes = frozenset(f.vertex(v) for v in nodes)
    if not nodes <= f.nodes():
        raise ValueError("requested nodes are not nodes of the forest")
    return list(_gamma(f, nodes))


@lru_cache(maxsize=1 << 15)
def _gamma(f: Forest, nodes: frozenset) -> Tuple[Forest, ...]:
    roots = [v for v in range(f.n) if v not in nodes]
    order = sorted(nodes)
    choices = [[a for a in f.ancestors(v) if a not in nodes] for v in order]
    out = []
    for pick in itertools.product(*choices):
        blocks = {r: {r} for r in roots}
        for v, r in zip(order, pick):
            blocks[r].add(v)
        out.append(induced_forest(f, blocks.values()))
    return tuple(sorted(out, key=lambda g: g.render()))


def shuffle_sign(blocks: Sequence[Sequence[int]]) -> int:
    """Sign of the permutation sorting the concatenated (sorted) blocks."""
    seq = [v for b in blocks for v in sorted(b)]
    inversions = sum(1 for a, b in itertools.combinations(seq, 2) if a > b)
    return -1 if inversions % 2 else 1


def ordered_splits(nodes: Sequence[int], k: int) -> Iterable[Tuple[Tuple[int, ...], ...]]:
    """All ordered decompositions of ``nodes`` into k (possibly empty) blocks."""
    nodes = sorted(nodes)
    for labels in itertools.product(range(k), repeat=len(nodes)):
        yield tuple(tuple(v for v, l in zip(nodes, labels) if l == b) for b in range(k))


@lru_cache(maxsize=1 << 13)
def _coproduct_forest(f: Forest) -> Tuple[Tuple[Tuple[Forest, Forest], int], ...]:
    out: Dict[Tuple[Forest, Forest], int] = {}
    for n1, n2 in ordered_splits(sorted(f.nodes()), 2):
        sign = shuffle_sign((n1, n2))
        for f1 in _gamma(f, frozenset(n1)):
            for f2 in _gamma(f, frozenset(n2)):
                out[(f1, f2)] = out.get((f1, f2), 0) + sign
    return tuple((k, c) for k, c in out.items() if c)


def coproduct(x) -> TensorElement:
    if isinstance(x, Forest):
        x = CoalgebraElement.basis(x)
    out: Dict = {}
    for f, c in x.terms.items():
        for key, s in _coproduct_forest(f):
            out[key] = out.get(key, 0) + c * s
    return TensorElement(out)


def apply_coproduct_at(t: TensorElement, slot: int) -> TensorElement:
    """id ⊗ ... ⊗ Δ (at ``slot``) ⊗ ... ⊗ id; Δ has degree 0, so no signs."""
    out: Dict = {}
    for key, c in t.terms.items():
        for (g1, g2), s in _coproduct_forest(key[slot]):
            new = key[:slot] + (g1, g2) + key[slot + 1:]
            out[new] = out.get(new, 0) + c * s
    return TensorElement(out)


def iterated_coproduct(x, k: int) -> TensorElement:
    """(Δ ⊗ id^(k-2)) ∘ ... ∘ Δ, a k-fold tensor."""
    if k < 1:
        raise ValueError("k must be positive")
    if isinstance(x, Forest):
        x = CoalgebraElement.basis(x)
    t = TensorElement({(f,): c for f, c in x.terms.items()})
    for _ in range(k - 1):
        t = apply_coproduct_at(t, 0)
    return t


def iterated_coproduct_direct(x, k: int) -> TensorElement:
    """k-block split formula: sum over N = N_1 ⊔ ... ⊔ N_k of shuffle-signed γ products."""
    if isinstance(x, Forest):
        x = CoalgebraElement.basis(x)
    out: Dict = {}
    for f, c in x.terms.items():
        for blocks in ordered_splits(sorted(f.nodes()), k):
            sign = shuffle_sign(blocks)
            for key in itertools.product(*(_gamma(f, frozenset(b)) for b in blocks)):
                out[key] = out.get(key, 0) + c * sign
    return TensorElement(out)


def graded_flip(t: TensorElement) -> TensorElement:
    """x ⊗ y -> (-1)^(|x||y|) y ⊗ x."""
    out: Dict = {}
    for (a, b), c in t.terms.items():
        s = -1 if degree(a) * degree(b) % 2 else 1
        out[(b, a)] = out.get((b, a), 0) + s * c
    return TensorElement(out)


def counit(x) -> int:
    """Coefficient of the all-roots forest."""
    if isinstance(x, Forest):
        return 1 if not x.nodes() else 0
    return sum(c for f, c in x.terms.items() if not f.nodes())


def counit_on_slot(t: TensorElement, slot: int) -> CoalgebraElement:
    """(ε ⊗ id) or (id ⊗ ε) applied to a 2-tensor."""
    out: Dict = {}
    for key, c in t.terms.items():
        e = counit(key[slot])
        if e:
            rest = key[1 - slot]
            out[rest] = out.get(rest, 0) + c * e
    return CoalgebraElement(out)


# --------------------------------------------------------------------------
# The dual algebra F*(I)
# --------------------------------------------------------------------------


@lru_cache(maxsize=16)
def _product_table(labels: Tuple[str, ...]) -> Dict[Tuple[Forest, Forest], Tuple[Tuple[Forest, int], ...]]:
    """(F1, F2) -> [(G, coefficient of F1 ⊗ F2 in Δ(G))] over all forests G."""
    table: Dict[Tuple[Forest, Forest], List[Tuple[Forest, int]]] = {}
    for g in enumerate_forests(labels):
        for key, c in _coproduct_forest(g):
            table.setdefault(key, []).append((g, c))
    return {k: tuple(v) for k, v in table.items()}


def dual_unit(table: LabelTable) -> DualElement:
    return DualElement.basis(zero_forest(table))


def dual_multiply(a: DualElement, b: DualElement) -> DualElement:
    """(a·b)(G) = sum a(F1) b(F2) <F1 ⊗ F2 in Δ(G)>."""
    labels = None
    for f in itertools.chain(a.terms, b.terms):
        if labels is None:
            labels = f.labels
        elif f.labels != labels:
            raise ValueError("dual elements live on different label sets")
    if labels is None:
        return DualElement()
    table = _product_table(labels)
    out: Dict[Forest, int] = {}
    for f1, c1 in a.terms.items():
        for f2, c2 in b.terms.items():
            for g, c in table.get((f1, f2), ()):
                out[g] = out.get(g, 0) + c1 * c2 * c
    return DualElement(out)


def edge_forest(table: LabelTable, i: int, j: int) -> Forest:
    """F_{i,j}: the only edge is i <- j."""
    return forest_from_edges(table, [(i, j)])


def dual_generator(table: LabelTable, i: int, j: int) -> DualElement:
    return DualElement.basis(edge_forest(table, i, j))


# --------------------------------------------------------------------------
# The presented algebra M(I)
# --------------------------------------------------------------------------


class AlgebraWord:
    """A product of generators Omega_{i,j}, i.e. edges i <- j, in order."""

    __slots__ = ("table", "factors")

    def __init__(self, table: LabelTable, factors: Iterable[Tuple[int, int]]):
        self.table = table
        self.factors: Tuple[Tuple[int, int], ...] = tuple((int(i), int(j)) for i, j in factors)
        for i, j in self.factors:
            if i == j:
                raise ValueError("Omega_{i,i} is not a generator")
            if not (0 <= i < len(table) and 0 <= j < len(table)):
                raise ValueError("generator index out of range")

    @classmethod
    def parse(cls, text: str, labels: Iterable[str] = ()) -> "AlgebraWord":
        """Parse ``"a-b,b-c"`` (Omega_{a,b} Omega_{b,c}); empty text is the unit."""
        pairs = []
        text = text.strip()
        if text:
            for k, part in enumerate(text.split(",")):
                m = re.fullmatch(r"\s*([A-Za-z0-9]+)\s*-\s*([A-Za-z0-9]+)\s*", part)
                if not m:
                    raise ValueError(f"bad generator {part!r} (factor {k}); expected parent-child")
                pairs.append((m.group(1), m.group(2)))
        names = set(labels) | {x for p in pairs for x in p}
        table = LabelTable(names)
        return cls(table, [(table.index[i], table.index[j]) for i, j in pairs])

    def __len__(self) -> int:
        return len(self.factors)

    def render(self) -> str:
        lab = self.table.labels
        return ",".join(f"{lab[i]}-{lab[j]}" for i, j in self.factors)

    def __repr__(self) -> str:
        return f"AlgebraWord({self.render()!r})"


def monomial(f: Forest) -> AlgebraWord:
    """m_F: the edges of F ordered by ascending child."""
    return AlgebraWord(f.table, f.edges())


def permutation_sign(seq: Sequence) -> int:
    inversions = sum(1 for a, b in itertools.combinations(seq, 2) if a > b)
    return -1 if inversions % 2 else 1


def algebra_reduce(w: AlgebraWord) -> Optional[Tuple[int, Forest]]:
    """Normal form of w in M(I): None for zero, else (sign, F) with w = sign·m_F."""
    n = len(w.table)
    parent: List[Optional[int]] = [None] * n
    for i, j in w.factors:
        if parent[j] is not None:
            return None  # fork, or a repeated generator
        parent[j] = i
    for v in range(n):
        seen = set()
        u = v
        while u is not None:
            if u in seen:
                return None  # oriented cycle
            seen.add(u)
            u = parent[u]
    sign = permutation_sign([j for _, j in w.factors])
    return sign, Forest(w.table, parent)


def rho(w: AlgebraWord) -> DualElement:
    """Image of w in F*(I): the product of the F*_{i,j} in word order."""
    out = dual_unit(w.table)
    for i, j in w.factors:
        out = dual_multiply(out, dual_generator(w.table, i, j))
    return out


def imagemono_predicted(f: Forest, forests: Optional[Sequence[Forest]] = None) -> set:
    """{G : f ⪯ G and N(G) = N(f)}."""
    if forests is None:
        forests = enumerate_forests(f.labels)
    nodes = f.nodes()
    return {g for g in forests if g.nodes() == nodes and precedes(f, g)}


def precedes_linear_extension(forests: Sequence[Forest]) -> List[Forest]:
    """A total order on ``forests`` refining ⪯ (deterministic)."""
    ts = graphlib.TopologicalSorter()
    ordered = sorted(forests, key=_sort_key)
    for g in ordered:
        ts.add(g, *[f for f in ordered if f != g and precedes(f, g)])
    ts.prepare()
    out = []
    while ts.is_active():
        ready = sorted(ts.get_ready(), key=_sort_key)
        out.extend(ready)
        ts.done(*ready)
    return out


def iso_check(labels: Sequence[str]) -> Certificate:
    """Certify that rho maps the monomials m_F to a basis of F*(I)."""
    forests = sorted(enumerate_forests(labels), key=_sort_key)
    images = {f: rho(monomial(f)) for f in forests}
    support_failures = []
    coefficient_failures = []
    for f in forests:
        img = images[f]
        if img.support() != imagemono_predicted(f, forests):
            support_failures.append(f.render())
        if any(abs(c) != 1 for c in img.terms.values()):
            coefficient_failures.append(f.render())

    order = precedes_linear_extension(forests)
    pos = {f: k for k, f in enumerate(order)}
    triangular = all(pos[f] <= pos[g] for f in forests for g in images[f].terms)
    unit_diagonal = all(abs(images[f].coefficient(f)) == 1 for f in forests)
    matrix = [[images[f].coefficient(g) for g in order] for f in order]
    det = bareiss_det(matrix)
    ok = (
        not support_failures
        and not coefficient_failures
        and triangular
        and unit_diagonal
        and abs(det) == 1
    )
    return Certificate(
        claim=f"rho: M(I) -> F*(I) is an isomorphism for I = {{{','.join(sorted(labels))}}}",
        status=ok,
        witness={
            "forests": len(forests),
            "support_failures": support_failures,
            "coefficient_failures": coefficient_failures,
            "triangular": triangular,
            "unit_diagonal": unit_diagonal,
            "determinant": det,
        },
    )
