import itertools
import json
import random

import pytest

from treearr.coalg import (
    AlgebraWord,
    CoalgebraElement,
    DualElement,
    TensorElement,
    algebra_reduce,
    apply_coproduct_at,
    coproduct,
    counit,
    counit_on_slot,
    degree,
    dual_generator,
    dual_multiply,
    dual_unit,
    gamma,
    graded_flip,
    imagemono_predicted,
    iso_check,
    iterated_coproduct,
    iterated_coproduct_direct,
    monomial,
    rho,
    shuffle_sign,
    to_json,
)
from treearr.treecore import (
    LabelTable,
    default_labels,
    enumerate_forests,
    is_subforest,
    parse_forest,
    parse_tree,
    zero_forest,
)

F = parse_forest


def basis(text, labels=()):
    return CoalgebraElement.basis(parse_forest(text, labels))


def dual(text, labels=()):
    return DualElement.basis(parse_forest(text, labels))


def inversions_sign(seq):
    s = 1
    seq = list(seq)
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                s = -s
    return s


def coproduct_oracle(f):
    """Scan all forest pairs below f with complementary node sets."""
    below = [g for g in enumerate_forests(f.labels) if is_subforest(g, f)]
    out = {}
    for f1, f2 in itertools.product(below, repeat=2):
        n1, n2 = f1.nodes(), f2.nodes()
        if n1 & n2 or n1 | n2 != f.nodes():
            continue
        out[(f1, f2)] = inversions_sign(sorted(n1) + sorted(n2))
    return TensorElement(out)


# -- gamma -------------------------------------------------------------------


def test_gamma_examples():
    chain = parse_tree("a(b(c))")
    assert gamma(chain, []) == [zero_forest(chain.table)]
    assert gamma(chain, ["b", "c"]) == [chain]
    assert {g.render() for g in gamma(chain, ["c"])} == {"a;b(c)", "a(c);b"}
    with pytest.raises(ValueError):
        gamma(chain, ["a"])


def test_gamma_matches_filtered_scan_n4():
    for f in enumerate_forests(default_labels(4)):
        below = [g for g in enumerate_forests(f.labels) if is_subforest(g, f)]
        nodes = sorted(f.nodes())
        for k in range(len(nodes) + 1):
            for sub in itertools.combinations(nodes, k):
                want = {g for g in below if g.nodes() == frozenset(sub)}
                got = gamma(f, sub)
                assert set(got) == want and len(got) == len(want)


# -- coproduct -----------------------------------------------------------------


def test_shuffle_sign():
    assert shuffle_sign([(), (1, 2)]) == 1
    assert shuffle_sign([(2,), (1,)]) == -1
    assert shuffle_sign([(1, 3), (2,)]) == -1
    assert shuffle_sign([(2, 3), (1,)]) == 1


def test_coproduct_examples():
    zero = F("a;b")
    assert coproduct(zero) == TensorElement({(zero, zero): 1})
    ab = F("a(b)")
    assert coproduct(ab) == TensorElement({(zero, ab): 1, (ab, zero): 1})
    star = F("a(b,c)")
    d = coproduct(star)
    assert d.coefficient((F("a(b);c"), F("a(c);b"))) == 1
    assert d.coefficient((F("a(c);b"), F("a(b);c"))) == -1
    assert len(d.terms) == 4


def test_coproduct_matches_oracle_n3():
    for f in enumerate_forests(default_labels(3)):
        assert coproduct(f) == coproduct_oracle(f)


def test_coproduct_is_linear():
    x = basis("a(b,c)") * 2 - basis("a(b(c))")
    assert coproduct(x) == coproduct(F("a(b,c)")) * 2 - coproduct(F("a(b(c))"))


def test_coalgebra_axioms_n3():
    for f in enumerate_forests(default_labels(3)):
        d = coproduct(f)
        assert graded_flip(d) == d
        assert apply_coproduct_at(d, 0) == apply_coproduct_at(d, 1)
        assert counit_on_slot(d, 0) == CoalgebraElement.basis(f)
        assert counit_on_slot(d, 1) == CoalgebraElement.basis(f)
        for f1, f2 in d.terms:
            assert not f1.nodes() & f2.nodes()


def test_iterated_coproduct():
    f = F("a(b,c(d))")
    assert iterated_coproduct(f, 1) == TensorElement({(f,): 1})
    assert iterated_coproduct(f, 2) == TensorElement({k: c for k, c in coproduct(f).terms.items()})
    for k in (2, 3, 4):
        assert iterated_coproduct(f, k) == iterated_coproduct_direct(f, k)
    with pytest.raises(ValueError):
        iterated_coproduct(f, 0)


def test_ascendance_k3():
    for f in enumerate_forests(default_labels(3)):
        for key in iterated_coproduct(f, 3).terms:
            for g in key:
                for i, j in itertools.product(range(3), repeat=2):
                    if g.leq(i, j):
                        assert f.leq(i, j)


def test_counit():
    assert counit(F("a;b")) == 1
    assert counit(F("a(b)")) == 0
    assert counit(basis("a;b") * 3 + basis("a(b)")) == 3


# -- dual algebra -----------------------------------------------------------------


def test_dual_unit():
    table = LabelTable("abc")
    one = dual_unit(table)
    for f in enumerate_forests("abc"):
        x = DualElement.basis(f)
        assert dual_multiply(one, x) == x
        assert dual_multiply(x, one) == x


def test_dual_fork_vanishes():
    table = LabelTable("abc")
    a, b, c = 0, 1, 2
    assert dual_multiply(dual_generator(table, a, c), dual_generator(table, b, c)).is_zero()


def test_dual_product_example():
    table = LabelTable("abc")
    prod = dual_multiply(dual_generator(table, 0, 1), dual_generator(table, 0, 2))
    assert prod.support() == {F("a(b,c)"), F("a(b(c))"), F("a(c(b))")}
    assert all(abs(c) == 1 for c in prod.terms.values())
    assert prod.render() == "+1·[a(b(c))] +1·[a(b,c)] +1·[a(c(b))]"


def test_dual_product_matches_pairing_definition():
    labels = "abc"
    forests = list(enumerate_forests(labels))
    for f1, f2 in itertools.product(forests, repeat=2):
        got = dual_multiply(DualElement.basis(f1), DualElement.basis(f2))
        for g in forests:
            assert got.coefficient(g) == coproduct(g).coefficient((f1, f2))


def test_dual_associative_and_graded_commutative_n3():
    elems = [DualElement.basis(f) for f in enumerate_forests(default_labels(3))]
    for x, y in itertools.product(elems, repeat=2):
        dx, dy = (degree(next(iter(e.terms))) for e in (x, y))
        assert dual_multiply(y, x) == dual_multiply(x, y) * (-1) ** (dx * dy)
        for z in elems:
            assert dual_multiply(dual_multiply(x, y), z) == dual_multiply(x, dual_multiply(y, z))


def test_grading_ranks():
    for n in range(1, 5):
        forests = list(enumerate_forests(default_labels(n)))
        assert len(forests) == (n + 1) ** (n - 1)
        by_degree = {}
        for f in forests:
            by_degree.setdefault(degree(f), []).append(f)
        assert sum(len(v) for v in by_degree.values()) == len(forests)
        # degree-d forests: choose d nodes and a parent each, acyclically
        assert len(by_degree[0]) == 1
        if n > 1:
            assert len(by_degree[1]) == n * (n - 1)


def test_dual_rejects_mixed_labels():
    with pytest.raises(ValueError):
        dual_multiply(dual("a(b)"), dual("a(c)"))


# -- the presented algebra -----------------------------------------------------------


def test_algebra_reduce_examples():
    w = AlgebraWord.parse("a-b", "abc")
    assert algebra_reduce(w) == (1, F("a(b);c"))
    assert algebra_reduce(AlgebraWord.parse("a-c,b-c")) is None
    assert algebra_reduce(AlgebraWord.parse("a-b,b-a")) is None
    assert algebra_reduce(AlgebraWord.parse("a-b,b-c,c-a")) is None
    assert algebra_reduce(AlgebraWord.parse("a-b,a-b")) is None
    sign, f = algebra_reduce(AlgebraWord.parse("a-c,a-b"))
    assert sign == -1 and f == F("a(b,c)")


def test_algebra_word_parse_errors():
    with pytest.raises(ValueError):
        AlgebraWord.parse("a-a")
    with pytest.raises(ValueError):
        AlgebraWord.parse("ab")


def test_monomial_orders_edges_by_child():
    assert monomial(F("c(a,b)")).render() == "c-a,c-b"
    assert monomial(F("b(c);a")).render() == "b-c"


def test_rho_examples():
    labels = "abc"
    assert rho(AlgebraWord.parse("", labels)) == dual_unit(LabelTable(labels))
    assert rho(AlgebraWord.parse("a-b", labels)) == dual("a(b);c")
    table = LabelTable(labels)
    expected = dual_multiply(dual_generator(table, 0, 1), dual_generator(table, 0, 2))
    assert rho(AlgebraWord.parse("a-b,a-c", labels)) == expected


def test_imagemono_examples():
    forests = list(enumerate_forests("abc"))
    zero = F("a;b;c")
    assert imagemono_predicted(zero, forests) == {zero}
    assert imagemono_predicted(F("a(b(c))"), forests) == {F("a(b(c))")}
    assert imagemono_predicted(F("a(b,c)"), forests) == {F("a(b,c)"), F("a(b(c))"), F("a(c(b))")}


def test_imagemono_against_scan():
    forests = list(enumerate_forests("abcd"))
    for f in forests:
        want = {g for g in forests if g.nodes() == f.nodes() and all(g.leq(p, c) for p, c in f.edges())}
        assert imagemono_predicted(f, forests) == want
        assert rho(monomial(f)).support() == want


def test_iso_check_small():
    c1 = iso_check(["a"])
    assert c1 and c1.witness["forests"] == 1
    c2 = iso_check(["a", "b"])
    assert c2 and c2.witness["forests"] == 3 and c2.witness["determinant"] in (1, -1)
    # on two labels rho(m_F) is exactly F*
    for f in enumerate_forests("ab"):
        assert rho(monomial(f)) == DualElement.basis(f)
    c3 = iso_check(["a", "b", "c"])
    assert c3 and c3.witness["forests"] == 16


def test_reduction_soundness_random_words():
    rng = random.Random(11)
    for n in (2, 3, 4):
        labels = default_labels(n)
        for _ in range(150):
            k = rng.randint(0, 5)
            pairs = [rng.sample(labels, 2) for _ in range(k)]
            w = AlgebraWord.parse(",".join(f"{i}-{j}" for i, j in pairs), labels)
            red = algebra_reduce(w)
            image = rho(w)
            if red is None:
                assert image.is_zero(), w
            else:
                sign, f = red
                assert image == rho(monomial(f)) * sign


def test_json_rendering():
    d = json.loads(to_json(coproduct(F("a(b)")), "coproduct"))
    assert d["schema"] == "treearr.coproduct/1"
    assert d["terms"] == [
        {"forests": ["a;b", "a(b)"], "coeff": 1},
        {"forests": ["a(b)", "a;b"], "coeff": 1},
    ]
    assert basis("a(b)").render() == "+1·[a(b)]"
    assert (basis("a(b)") - basis("b(a)")).render() == "+1·[a(b)] -1·[b(a)]"
