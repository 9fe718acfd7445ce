"""The intersection lattice L_T as the interval [0, T] of forests.

Elements are the forests F with F ⊆ T.  Such a forest is determined by
its partition of the vertices, and the admissible partitions are exactly
those whose blocks have a unique minimum for <=_T; inside L_T the order
⊆ is refinement of partitions and the rank is the number of nodes.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterator, List, Set, Tuple

from .arrangement import build_arrangement
from .exactpoly import BivariatePolynomial, UnivariatePolynomial
from .treecore import (
    Forest,
    RootedTree,
    induced_forest,
    peel_root,
    root_decompose,
)

Partition = FrozenSet[FrozenSet[int]]


@dataclass
class Lattice:
    tree: RootedTree
    elements: List[Forest]
    rank: List[int]
    hasse: List[Tuple[int, int]]
    partitions: List[Partition] = field(repr=False)
    index: Dict[Forest, int] = field(repr=False)
    _below: List[Set[int]] = field(repr=False)

    def __len__(self) -> int:
        return len(self.elements)

    def leq(self, a: int, b: int) -> bool:
        """Element a is below element b."""
        return a in self._below[b]

    def below(self, b: int) -> Set[int]:
        return self._below[b]

    @property
    def bottom(self) -> int:
        return 0

    @property
    def top(self) -> int:
        return len(self.elements) - 1


def unique_min_partitions(t: RootedTree) -> Iterator[Partition]:
    """Partitions of the vertices whose blocks each have a unique <=_T minimum.

    Generated rather than filtered: pick the set of block minima (it must
    contain the root), then send every other vertex to one of the chosen
    minima among its ancestors.
    """
    others = [v for v in range(t.n) if v != t.root]
    for k in range(len(others) + 1):
        for extra in itertools.combinations(others, k):
            mins = {t.root, *extra}
            rest = [v for v in range(t.n) if v not in mins]
            choices = [[a for a in t.ancestors(v) if a in mins] for v in rest]
            for pick in itertools.product(*choices):
                blocks = {m: {m} for m in mins}
                for v, m in zip(rest, pick):
                    blocks[m].add(v)
                yield frozenset(frozenset(b) for b in blocks.values())


def build_lattice(t: RootedTree) -> Lattice:
    items = []
    for part in unique_min_partitions(t):
        f = induced_forest(t, part)
        items.append((len(f.nodes()), f.render(), f, part))
    items.sort(key=lambda x: (x[0], x[1]))
    elements = [f for _, _, f, _ in items]
    ranks = [r for r, _, _, _ in items]
    parts = [p for _, _, _, p in items]
    # a refines b iff every pair sharing a block of a also shares one of b
    bit = {pair: 1 << k for k, pair in enumerate(itertools.combinations(range(t.n), 2))}
    masks = []
    for part in parts:
        m = 0
        for block in part:
            for pair in itertools.combinations(sorted(block), 2):
                m |= bit[pair]
        masks.append(m)
    below: List[Set[int]] = [
        {a for a in range(len(items)) if masks[a] & ~masks[b] == 0} for b in range(len(items))
    ]
    hasse = [
        (a, b)
        for b in range(len(items))
        for a in sorted(below[b])
        if ranks[b] - ranks[a] == 1
    ]
    return Lattice(
        tree=t,
        elements=elements,
        rank=ranks,
        hasse=hasse,
        partitions=parts,
        index={f: k for k, f in enumerate(elements)},
        _below=below,
    )


def _union_find_partition(n: int, pairs) -> Partition:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in pairs:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
    groups: Dict[int, Set[int]] = {}
    for v in range(n):
        groups.setdefault(find(v), set()).add(v)
    return frozenset(frozenset(g) for g in groups.values())


def brute_force_flats(t: RootedTree) -> Set[Partition]:
    """Vertex-partition signatures of all intersections of hyperplanes.

    Every subset of hyperplanes is intersected; the subspace cut out by
    equalities x_i = x_j is determined by the classes of their transitive
    closure, so that class partition identifies it.
    """
    hyps = [(h.plus, h.minus) for h in build_arrangement(t).hyperplanes]
    flats = set()
    for mask in range(1 << len(hyps)):
        chosen = [h for k, h in enumerate(hyps) if mask >> k & 1]
        flats.add(_union_find_partition(t.n, chosen))
    return flats


def mobius(lat: Lattice) -> List[int]:
    """mu(0, a) for every element a."""
    mu = [0] * len(lat)
    for a in range(len(lat)):
        if a == lat.bottom:
            mu[a] = 1
        else:
            mu[a] = -sum(mu[b] for b in lat.below(a) if b != a)
    return mu


def char_poly_mobius(lat: Lattice) -> UnivariatePolynomial:
    n = lat.tree.n
    mu = mobius(lat)
    coeffs = [0] * (n + 1)
    for a, m in enumerate(mu):
        coeffs[n - lat.rank[a]] += m
    return UnivariatePolynomial(coeffs)


def _element(lat: Lattice, f: Forest) -> int:
    try:
        return lat.index[f]
    except KeyError:
        raise ValueError(f"{f.render()} is not an element of L_T") from None


def supremum(lat: Lattice, f1: Forest, f2: Forest) -> Forest:
    """Least upper bound of two elements of L_T.

    The join of the two partitions is the signature of the intersection of
    the corresponding flats, so it is normally an element already; if not,
    the minimum-rank common upper bound is used.
    """
    a, b = _element(lat, f1), _element(lat, f2)
    edges = []
    for part in (lat.partitions[a], lat.partitions[b]):
        for block in part:
            block = sorted(block)
            edges.extend(zip(block, block[1:]))
    join = _union_find_partition(lat.tree.n, edges)
    cand = induced_forest(lat.tree, join)
    if cand in lat.index and lat.partitions[lat.index[cand]] == join:
        return cand
    uppers = [c for c in range(len(lat)) if lat.leq(a, c) and lat.leq(b, c)]
    least = [c for c in uppers if all(lat.leq(c, u) for u in uppers)]
    if len(least) != 1:
        raise AssertionError("no least upper bound; L_T is not a lattice")
    return lat.elements[least[0]]


def _stump_corank(lat: Lattice, k: int) -> Tuple[int, int]:
    f = lat.elements[k]
    root_block = f.block_of(lat.tree.root)
    return len(f.roots()) - 1, len(root_block) - 1


def cardinality_poly(lat: Lattice) -> BivariatePolynomial:
    """sum over L_T of y^corank * z^stump."""
    terms: Dict[Tuple[int, int], int] = {}
    for k in range(len(lat)):
        key = _stump_corank(lat, k)
        terms[key] = terms.get(key, 0) + 1
    return BivariatePolynomial(terms)


def cardinality_poly_recursive(t: RootedTree) -> BivariatePolynomial:
    """C_T from grafting and root-decomposition, without building L_T."""
    kids = t.children(t.root)
    if not kids:
        return BivariatePolynomial.const(1)
    if len(kids) == 1:
        c = cardinality_poly_recursive(peel_root(t))
        return BivariatePolynomial.z() * c + BivariatePolynomial.y() * c.shift_z()
    out = BivariatePolynomial.const(1)
    for part in root_decompose(t):
        out = out * cardinality_poly_recursive(part)
    return out


def hasse_dot(lat: Lattice) -> str:
    lines = ["digraph L_T {", "  rankdir=BT;", "  node [shape=box];"]
    for k, f in enumerate(lat.elements):
        lines.append(f'  n{k} [label="{f.render()}"];')
    for r in sorted(set(lat.rank)):
        same = " ".join(f"n{k};" for k in range(len(lat)) if lat.rank[k] == r)
        lines.append(f"  {{ rank=same; {same} }}")
    for a, b in lat.hasse:
        lines.append(f"  n{a} -> n{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def lattice_dict(lat: Lattice) -> dict:
    return {
        "schema": "treearr.lattice/1",
        "tree": lat.tree.render(),
        "elements": [f.render() for f in lat.elements],
        "rank": list(lat.rank),
        "hasse": [list(e) for e in lat.hasse],
        "mobius": mobius(lat),
    }


def lattice_json(lat: Lattice) -> str:
    return json.dumps(lattice_dict(lat), sort_keys=True)
