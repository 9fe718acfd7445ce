"""Acceptance criteria 1-10, exhaustive over small label sets, exact arithmetic.

Each test prints one line ``CRITERION k: PASS|FAIL ...`` to the terminal (also
when pytest captures output) and then asserts.  Run directly with
``python3 tests/test_acceptance.py`` to get just the ten lines.
"""

import itertools
import random
import sys
import time

import networkx as nx
import pytest

from treearr.arrangement import (
    build_arrangement,
    chamber_count,
    char_poly_product,
    count_acyclic_orientations,
    defining_form,
    duality_check,
    exponents,
    is_logarithmic,
    omega_is_logarithmic,
    relation_span_check,
    saito_check,
    theta,
)
from treearr.coalg import (
    AlgebraWord,
    CoalgebraElement,
    algebra_reduce,
    apply_coproduct_at,
    coproduct,
    counit_on_slot,
    graded_flip,
    iso_check,
    iterated_coproduct,
    iterated_coproduct_direct,
    monomial,
    rho,
)
from treearr.exactpoly import BivariatePolynomial, UnivariatePolynomial
from treearr.lattice import (
    brute_force_flats,
    build_lattice,
    cardinality_poly,
    cardinality_poly_recursive,
    char_poly_mobius,
)
from treearr.treecore import (
    check_chordal_peo,
    comparability_graph,
    default_labels,
    enumerate_forests,
    enumerate_trees,
    linear_extensions,
    parse_tree,
)


def trees_upto(n):
    for k in range(1, n + 1):
        yield from enumerate_trees(default_labels(k))


def forests_upto(n):
    for k in range(1, n + 1):
        yield from enumerate_forests(default_labels(k))


def first_failure(items, check):
    """(count, first counterexample or None) for a predicate returning an error string."""
    count = 0
    for item in items:
        count += 1
        bad = check(item)
        if bad:
            return count, bad
    return count, None


# -- the ten criteria ----------------------------------------------------------


def criterion_1():
    def check(t):
        arr = build_arrangement(t)
        cert = saito_check(arr)
        w = cert.witness
        depths = sorted(t.depth(v) for v in range(t.n))
        if not cert:
            return cert.to_text()
        if w["c_symbolic"] not in (1, -1) or w["c_grid"] != w["c_symbolic"]:
            return f"{t}: c = {w['c_symbolic']}, {w['c_grid']}"
        if exponents(t) != depths or sorted(w["theta_degrees"]) != depths:
            return f"{t}: exponents {exponents(t)} vs depths {depths}"
        if sum(depths) != len(defining_form(arr).numerator):
            return f"{t}: degree sum {sum(depths)} != deg Q"
        return None

    count, bad = first_failure(trees_upto(5), check)
    ok = bad is None and count == 1 + 2 + 9 + 64 + 625
    return ok, f"Saito certificate on all {count} trees n<=5, c=+-1, exponents = depths", bad


def criterion_2():
    def check(t):
        arr = build_arrangement(t)
        for i in range(t.n):
            if not is_logarithmic(arr, theta(arr, i)):
                return f"{t}: theta_{t.labels[i]} not logarithmic"
            if not omega_is_logarithmic(arr, i):
                return f"{t}: omega_{t.labels[i]} not logarithmic"
        return None

    count, bad = first_failure(trees_upto(6), check)
    ok = bad is None and count == 1 + 2 + 9 + 64 + 625 + 7776
    return ok, f"theta_i, omega_i logarithmic on all {count} trees n<=6", bad


def criterion_3():
    def check(t):
        cert = duality_check(build_arrangement(t), method="symbolic")
        return None if cert and cert.witness["pairs"] == t.n ** 2 else cert.to_text()

    count, bad = first_failure(trees_upto(4), check)
    return bad is None and count == 76, f"<omega_i, theta_i'> = delta symbolically on all {count} trees n<=4", bad


def criterion_4():
    def check(t):
        lat = build_lattice(t)
        flats = brute_force_flats(t)
        sigs = [frozenset(frozenset(b) for b in p) for p in lat.partitions]
        if len(set(sigs)) != len(sigs):
            return f"{t}: repeated signatures"
        if set(sigs) != flats:
            return f"{t}: {len(sigs)} forests vs {len(flats)} flats"
        return None

    count, bad = first_failure(trees_upto(5), check)
    return bad is None and count == 701, f"L_T signatures = flats on all {count} trees n<=5", bad


def _product_of_linear(roots):
    """prod (y - r) expanded by hand, coefficients low to high."""
    coeffs = [1]
    for r in roots:
        nxt = [0] * (len(coeffs) + 1)
        for k, c in enumerate(coeffs):
            nxt[k + 1] += c
            nxt[k] -= r * c
        coeffs = nxt
    return UnivariatePolynomial(coeffs)


def criterion_5():
    def check_chi(t):
        depths = [t.depth(v) for v in range(t.n)]
        expected = _product_of_linear(depths)
        mob = char_poly_mobius(build_lattice(t))
        prod = char_poly_product(t)
        if not mob == prod == expected:
            return f"{t}: mobius {mob}, product {prod}, expected {expected}"
        return None

    def check_count(t):
        depths = [t.depth(v) for v in range(t.n)]
        expected = 1
        for d in depths:
            expected *= d + 1
        chi = char_poly_product(t)
        orient = count_acyclic_orientations(comparability_graph(t))
        if not abs(chi(-1)) == expected == orient == chamber_count(t):
            return f"{t}: |chi(-1)|={abs(chi(-1))}, prod={expected}, orientations={orient}"
        return None

    c1, bad1 = first_failure(trees_upto(5), check_chi)
    c2, bad2 = first_failure(trees_upto(6), check_count)
    ok = bad1 is None and bad2 is None and c1 == 701 and c2 == 8477
    return ok, f"chi agreement on {c1} trees n<=5, chamber counts on {c2} trees n<=6", bad1 or bad2


def criterion_6():
    def check(t):
        lat = build_lattice(t)
        c = cardinality_poly(lat)
        if c != cardinality_poly_recursive(t):
            return f"{t}: {c} vs {cardinality_poly_recursive(t)}"
        if c(1, 1) != len(lat):
            return f"{t}: C(1,1)={c(1, 1)} but |L_T|={len(lat)}"
        return None

    count, bad = first_failure(trees_upto(6), check)
    y, z = BivariatePolynomial.y(), BivariatePolynomial.z()
    chain = parse_tree("a(b(c))")
    spot = y * y + BivariatePolynomial.const(2) * y * z + z * z + y
    got = cardinality_poly(build_lattice(chain))
    spot_ok = got == spot == cardinality_poly_recursive(chain) and got(1, 1) == 5
    if bad is None and not spot_ok:
        bad = f"3-chain gives {got}"
    ok = bad is None and count == 8477
    return ok, f"C_T direct = recursive on {count} trees n<=6, 3-chain = {got}, C(1,1)={got(1, 1)}", bad


def criterion_7():
    def check(f):
        d = coproduct(f)
        if graded_flip(d) != d:
            return f"{f}: graded cocommutativity"
        if apply_coproduct_at(d, 0) != apply_coproduct_at(d, 1):
            return f"{f}: coassociativity"
        unit = CoalgebraElement.basis(f)
        if counit_on_slot(d, 0) != unit or counit_on_slot(d, 1) != unit:
            return f"{f}: counit"
        for f1, f2 in d.terms:
            if f1.nodes() & f2.nodes():
                return f"{f}: {f1} and {f2} share a node"
        for k in (2, 3):
            it = iterated_coproduct(f, k)
            if it != iterated_coproduct_direct(f, k):
                return f"{f}: k={k} iterated coproduct vs split formula"
            for key in it.terms:
                for g in key:
                    for i, j in itertools.product(range(f.n), repeat=2):
                        if g.leq(i, j) and not f.leq(i, j):
                            return f"{f}: {g} has {g.labels[i]} <= {g.labels[j]}"
        return None

    count, bad = first_failure(forests_upto(4), check)
    ok = bad is None and count == 1 + 3 + 16 + 125
    return ok, f"coalgebra axioms, node disjointness, ascendance on {count} forests n<=4", bad


def criterion_8():
    bad = None
    sizes = []
    for n in range(1, 5):
        cert = iso_check(default_labels(n))
        sizes.append(cert.witness["forests"])
        if not cert or abs(cert.witness["determinant"]) != 1:
            bad = cert.to_text()
            break
    rng = random.Random(20240601)
    words = 0
    for n in range(2, 5):
        if bad:
            break
        labels = default_labels(n)
        for _ in range(300):
            pairs = [rng.sample(labels, 2) for _ in range(rng.randint(0, 5))]
            w = AlgebraWord.parse(",".join(f"{i}-{j}" for i, j in pairs), labels)
            words += 1
            red, image = algebra_reduce(w), rho(w)
            if red is None and not image.is_zero():
                bad = f"{w.render()}: reduces to 0, rho = {image.render()}"
            elif red is not None and image != rho(monomial(red[1])) * red[0]:
                bad = f"{w.render()}: rho disagrees with {red}"
            if bad:
                break
    ok = bad is None and sizes == [1, 3, 16, 125]
    return ok, f"rho unimodular for n<=4 (sizes {sizes}), {words} random words reduce soundly", bad


def criterion_9():
    def check(t):
        g = comparability_graph(t)
        if not nx.is_chordal(g):
            return f"{t}: not chordal"
        for order in linear_extensions(t):
            if not check_chordal_peo(t, order):
                return f"{t}: {[t.labels[v] for v in order]} not a perfect elimination ordering"
        return None

    count, bad = first_failure(trees_upto(6), check)
    return bad is None and count == 8477, f"chordal with linear extensions as PEOs on {count} trees n<=6", bad


def criterion_10():
    def check(t):
        cert = relation_span_check(build_arrangement(t))
        w = cert.witness
        if not cert or w["span_dim"] != w["kernel_dim"] or w["kernel_dim"] != w["hyperplanes"] - (t.n - 1):
            return cert.to_text()
        return None

    count, bad = first_failure(trees_upto(6), check)
    return bad is None and count == 8477, f"elementary relations span all relations on {count} trees n<=6", bad


CRITERIA = [
    criterion_1,
    criterion_2,
    criterion_3,
    criterion_4,
    criterion_5,
    criterion_6,
    criterion_7,
    criterion_8,
    criterion_9,
    criterion_10,
]


def run_criterion(k: int):
    start = time.perf_counter()
    ok, summary, bad = CRITERIA[k - 1]()
    secs = time.perf_counter() - start
    line = f"CRITERION {k}: {'PASS' if ok else 'FAIL'} - {summary} [{secs:.1f}s]"
    if bad:
        line += f" counterexample: {bad}"
    return ok, line


@pytest.mark.parametrize("k", range(1, 11))
def test_criterion(k, capsys):
    ok, line = run_criterion(k)
    with capsys.disabled():
        print(f"\n{line}")
    assert ok, line


if __name__ == "__main__":
    results = [run_criterion(k) for k in range(1, 11)]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
