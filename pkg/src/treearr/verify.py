"""Exhaustive verification sweeps over small label sets.

Each property runs over every tree (or forest) with at most
``min(max_n, cap)`` vertices, where ``cap`` keeps the slow ones at a
desk-friendly size, and reports the number of instances checked and the
first counterexample found.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Callable, List, Optional

import networkx as nx

from . import arrangement as arr_mod
from . import coalg
from . import lattice as lat_mod
from .treecore import (
    check_chordal_peo,
    comparability_graph,
    default_labels,
    enumerate_forests,
    enumerate_trees,
    is_subforest,
    linear_extensions,
    precedes,
)


@dataclass
class PropertyResult:
    name: str
    passed: bool
    checked: int
    max_n: int
    counterexample: Optional[str] = None

    def to_dict(self) -> dict:
        return {
            "property": self.name,
            "status": "pass" if self.passed else "fail",
            "checked": self.checked,
            "max_n": self.max_n,
            "counterexample": self.counterexample,
        }

    def to_text(self) -> str:
        line = f"{'PASS' if self.passed else 'FAIL'} {self.name} (n<={self.max_n}, {self.checked} checked)"
        if self.counterexample:
            line += f" counterexample: {self.counterexample}"
        return line


def _trees(max_n: int):
    for n in range(1, max_n + 1):
        yield from enumerate_trees(default_labels(n))


def _forests(max_n: int):
    for n in range(1, max_n + 1):
        yield from enumerate_forests(default_labels(n))


def _over(items, check: Callable) -> tuple:
    """Run ``check`` (returning None or a counterexample string) over items."""
    count = 0
    for item in items:
        count += 1
        bad = check(item)
        if bad:
            return count, bad
    return count, None


# -- properties ------------------------------------------------------------


def prop_enumeration_counts(max_n):
    count = 0
    for n in range(1, max_n + 1):
        labels = default_labels(n)
        trees = list(enumerate_trees(labels))
        forests = list(enumerate_forests(labels))
        count += 1
        if len(trees) != n ** (n - 1) or len(set(trees)) != len(trees):
            return count, f"n={n}: {len(trees)} trees"
        if len(forests) != (n + 1) ** (n - 1) or len(set(forests)) != len(forests):
            return count, f"n={n}: {len(forests)} forests"
    return count, None


def prop_leq_partial_order(max_n):
    def check(f):
        r = range(f.n)
        for i in r:
            if not f.leq(i, i):
                return f"{f}: not reflexive"
            for j in r:
                if i != j and f.leq(i, j) and f.leq(j, i):
                    return f"{f}: not antisymmetric"
                for k in r:
                    if f.leq(i, j) and f.leq(j, k) and not f.leq(i, k):
                        return f"{f}: not transitive"
        return None

    return _over(_forests(max_n), check)


def prop_subforest_order(max_n):
    """⊆ is a partial order, and the node lemmas hold."""
    count = 0
    for n in range(1, max_n + 1):
        forests = list(enumerate_forests(default_labels(n)))
        rel = {(a, b): is_subforest(a, b) for a in forests for b in forests}
        for a in forests:
            count += 1
            if not rel[a, a]:
                return count, f"{a} not ⊆ itself"
            for b in forests:
                if not rel[a, b]:
                    continue
                if a != b and rel[b, a]:
                    return count, f"{a} and {b} ⊆ each other"
                if not a.nodes() <= b.nodes():
                    return count, f"N({a}) not in N({b})"
                if a.nodes() == b.nodes() and a != b:
                    return count, f"{a} ⊆ {b} with equal nodes"
                for c in forests:
                    if rel[b, c] and not rel[a, c]:
                        return count, f"{a} ⊆ {b} ⊆ {c} not transitive"
    return count, None


def prop_precedes_order(max_n):
    count = 0
    for n in range(1, max_n + 1):
        forests = list(enumerate_forests(default_labels(n)))
        for a in forests:
            count += 1
            for b in forests:
                if precedes(a, b):
                    if a != b and precedes(b, a):
                        return count, f"{a} ⪯ {b} ⪯ {a}"
                    if not all(b.leq(p, c) for p, c in a.edges()):
                        return count, f"{a} ⪯ {b} but an edge relation fails"
    return count, None


def prop_chordal(max_n):
    def check(t):
        if not nx.is_chordal(comparability_graph(t)):
            return f"{t}: comparability graph not chordal"
        for order in linear_extensions(t):
            if not check_chordal_peo(t, order):
                return f"{t}: {order} is not a perfect elimination ordering"
        return None

    return _over(_trees(max_n), check)


def prop_saito(max_n):
    def check(t):
        c = arr_mod.saito_check(arr_mod.build_arrangement(t))
        return None if c else c.to_text()

    return _over(_trees(max_n), check)


def prop_logarithmic(max_n):
    def check(t):
        c = arr_mod.logarithmic_check(arr_mod.build_arrangement(t))
        return None if c else c.to_text()

    return _over(_trees(max_n), check)


def prop_duality(max_n):
    def check(t):
        c = arr_mod.duality_check(arr_mod.build_arrangement(t), method="symbolic")
        return None if c else c.to_text()

    return _over(_trees(max_n), check)


def prop_chambers(max_n):
    def check(t):
        c = arr_mod.chamber_certificate(t)
        return None if c else c.to_text()

    return _over(_trees(max_n), check)


def prop_relations(max_n):
    def check(t):
        c = arr_mod.relation_span_check(arr_mod.build_arrangement(t))
        return None if c else c.to_text()

    return _over(_trees(max_n), check)


def prop_lattice(max_n):
    """Bijection with flats, gradedness, and both characteristic polynomials."""

    def check(t):
        lat = lat_mod.build_lattice(t)
        if set(lat.partitions) != lat_mod.brute_force_flats(t):
            return f"{t}: lattice elements differ from flats"
        for a, b in lat.hasse:
            if lat.rank[b] != lat.rank[a] + 1 or not lat.elements[a].nodes() < lat.elements[b].nodes():
                return f"{t}: bad cover {lat.elements[a]} -> {lat.elements[b]}"
        if lat_mod.char_poly_mobius(lat) != arr_mod.char_poly_product(t):
            return f"{t}: characteristic polynomials differ"
        return None

    return _over(_trees(max_n), check)


def prop_suprema(max_n):
    def check(t):
        lat = lat_mod.build_lattice(t)
        for f1, f2 in itertools.product(lat.elements, repeat=2):
            if f1.nodes() & f2.nodes():
                continue
            s = lat_mod.supremum(lat, f1, f2)
            if s.nodes() != f1.nodes() | f2.nodes():
                return f"{t}: sup({f1}, {f2}) = {s}"
        return None

    return _over(_trees(max_n), check)


def prop_cardinality(max_n):
    def check(t):
        lat = lat_mod.build_lattice(t)
        c = lat_mod.cardinality_poly(lat)
        if c != lat_mod.cardinality_poly_recursive(t) or c(1, 1) != len(lat):
            return f"{t}: C_T mismatch"
        return None

    return _over(_trees(max_n), check)


def coalgebra_failure(f) -> Optional[str]:
    """First failing coalgebra axiom or lemma for one forest, if any."""
    d = coalg.coproduct(f)
    if coalg.graded_flip(d) != d:
        return f"{f}: not graded cocommutative"
    if coalg.apply_coproduct_at(d, 0) != coalg.apply_coproduct_at(d, 1):
        return f"{f}: not coassociative"
    unit = coalg.CoalgebraElement.basis(f)
    if coalg.counit_on_slot(d, 0) != unit or coalg.counit_on_slot(d, 1) != unit:
        return f"{f}: counit law fails"
    for f1, f2 in d.terms:
        if f1.nodes() & f2.nodes():
            return f"{f}: {f1} ⊗ {f2} share nodes"
    for k in (2, 3):
        it = coalg.iterated_coproduct(f, k)
        if it != coalg.iterated_coproduct_direct(f, k):
            return f"{f}: iterated coproduct k={k} disagrees with the split formula"
        for key in it.terms:
            for g in key:
                for p, c in g.edges():
                    if not f.leq(p, c):
                        return f"{f}: {g} has {g.labels[p]} < {g.labels[c]}, not in F"
    return None


def prop_coalgebra(max_n):
    return _over(_forests(max_n), coalgebra_failure)


def prop_dual_algebra(max_n):
    count = 0
    for n in range(1, max_n + 1):
        forests = list(enumerate_forests(default_labels(n)))
        basis = [coalg.DualElement.basis(f) for f in forests]
        for a in basis:
            count += 1
            for b in basis:
                ab = coalg.dual_multiply(a, b)
                da = coalg.degree(next(iter(a.terms)))
                db = coalg.degree(next(iter(b.terms)))
                sign = -1 if da * db % 2 else 1
                if coalg.dual_multiply(b, a) != ab * sign:
                    return count, f"{a.render()} and {b.render()} not graded commutative"
                for c in basis:
                    if coalg.dual_multiply(ab, c) != coalg.dual_multiply(a, coalg.dual_multiply(b, c)):
                        return count, f"associativity fails at {a.render()}, {b.render()}, {c.render()}"
        ranks = {}
        for f in forests:
            ranks[coalg.degree(f)] = ranks.get(coalg.degree(f), 0) + 1
        if sum(ranks.values()) != (n + 1) ** (n - 1):
            return count, f"n={n}: total rank {sum(ranks.values())}"
    return count, None


def prop_iso(max_n):
    count = 0
    for n in range(1, max_n + 1):
        count += 1
        c = coalg.iso_check(default_labels(n))
        if not c:
            return count, c.to_text()
    return count, None


def random_word(rng: random.Random, labels, max_len: int = 5) -> coalg.AlgebraWord:
    length = rng.randint(0, max_len)
    pairs = []
    for _ in range(length):
        i, j = rng.sample(list(labels), 2)
        pairs.append(f"{i}-{j}")
    return coalg.AlgebraWord.parse(",".join(pairs), labels)


def reduction_failure(w: coalg.AlgebraWord) -> Optional[str]:
    red = coalg.algebra_reduce(w)
    image = coalg.rho(w)
    if red is None:
        return None if image.is_zero() else f"{w.render()} reduces to 0 but rho is nonzero"
    sign, f = red
    if image != coalg.rho(coalg.monomial(f)) * sign:
        return f"{w.render()}: rho(w) != {sign} * rho(m_{f})"
    return None


def prop_reduction(max_n, words: int = 200, seed: int = 0):
    rng = random.Random(seed)
    count = 0
    for n in range(2, max_n + 1):
        labels = default_labels(n)
        for _ in range(words):
            count += 1
            bad = reduction_failure(random_word(rng, labels))
            if bad:
                return count, bad
    return count, None


# name, function, cap on n
PROPERTIES = [
    ("enumeration counts", prop_enumeration_counts, 6),
    ("leq is a partial order", prop_leq_partial_order, 5),
    ("⊆ is a partial order with node lemmas", prop_subforest_order, 4),
    ("⪯ is a partial order", prop_precedes_order, 4),
    ("chordality and leaf-removal orderings", prop_chordal, 6),
    ("Saito freeness certificate", prop_saito, 5),
    ("theta_i and omega_i logarithmic", prop_logarithmic, 6),
    ("omega/theta duality", prop_duality, 4),
    ("chambers = |chi(-1)| = acyclic orientations", prop_chambers, 6),
    ("relation spanning", prop_relations, 6),
    ("lattice = flats, graded, chi agreement", prop_lattice, 5),
    ("suprema node additivity", prop_suprema, 4),
    ("cardinality polynomial recursion", prop_cardinality, 6),
    ("coalgebra axioms and lemmas", prop_coalgebra, 4),
    ("dual algebra associative, graded commutative", prop_dual_algebra, 3),
    ("rho isomorphism", prop_iso, 4),
    ("reduction soundness", prop_reduction, 4),
]


def sweep(max_n: int) -> List[PropertyResult]:
    if not 1 <= max_n <= 6:
        raise ValueError("max-n must be between 1 and 6")
    results = []
    for name, fn, cap in PROPERTIES:
        bound = min(max_n, cap)
        checked, bad = fn(bound)
        results.append(PropertyResult(name, bad is None, checked, bound, bad))
    return results


def enumeration_summary(max_n: int) -> List[dict]:
    out = []
    for n in range(1, max_n + 1):
        labels = default_labels(n)
        out.append({
            "n": n,
            "trees": sum(1 for _ in enumerate_trees(labels)),
            "forests": sum(1 for _ in enumerate_forests(labels)),
        })
    return out
