import itertools

import networkx as nx
import pytest

from treearr.treecore import (
    Forest,
    LabelTable,
    ParseError,
    RootedTree,
    check_chordal_peo,
    comparability_graph,
    default_labels,
    depth,
    enumerate_forests,
    enumerate_trees,
    graft_root,
    induced_forest,
    is_subforest,
    leq,
    linear_extensions,
    parse_forest,
    parse_tree,
    peel_root,
    precedes,
    root_decompose,
    zero_forest,
)


def strict_relation(f: Forest) -> set:
    """Pairs (i, j) with i strictly below j, via networkx reachability."""
    g = nx.DiGraph()
    g.add_nodes_from(range(f.n))
    g.add_edges_from(f.edges())
    return {(i, j) for i in g for j in nx.descendants(g, i)}


def components(f: Forest) -> list:
    g = nx.Graph()
    g.add_nodes_from(range(f.n))
    g.add_edges_from(f.edges())
    return [nx.node_connected_component(g, v) for v in range(f.n)]


def subforest_oracle(f1: Forest, f2: Forest) -> bool:
    """Same blocks-refine and induced-order test, computed from scratch."""
    blocks1, blocks2 = components(f1), components(f2)
    if any(not blocks1[v] <= blocks2[v] for v in range(f1.n)):
        return False
    r1, r2 = strict_relation(f1), strict_relation(f2)
    return r1 == {(i, j) for (i, j) in r2 if j in blocks1[i]}


# -- parsing and rendering -------------------------------------------------


def test_parse_tree_examples():
    t = parse_tree("a")
    assert t.n == 1 and t.labels[t.root] == "a"
    t = parse_tree("a(b,c)")
    assert t.labels[t.root] == "a"
    assert {t.labels[c] for c in t.children(t.root)} == {"b", "c"}
    t = parse_tree("a(b(c))")
    assert t.leq("a", "b") and t.leq("b", "c") and t.leq("a", "c")


def test_parse_forest_examples():
    f = parse_forest("a;b")
    assert len(f.roots()) == 2 and not f.nodes()
    f = parse_forest("a(b);c")
    assert f.edges() == ((0, 1),)
    assert parse_forest("a(b,c)") == parse_tree("a(b,c)")


def test_parse_errors_report_position():
    for text, pos in [("a(b", 3), ("a(b,,c)", 4), ("a(b)c", 4), ("", 0), ("a;", 2)]:
        with pytest.raises(ParseError) as err:
            parse_forest(text)
        assert err.value.pos == pos
    with pytest.raises(ParseError):
        parse_tree("a;b")


def test_parse_rejects_duplicate_labels():
    with pytest.raises(ParseError, match="duplicate"):
        parse_tree("a(b,a)")


def test_render_is_canonical():
    assert parse_tree("a(c,b(e,d))").render() == "a(b(d,e),c)"
    assert parse_forest("c;a(b)").render() == "a(b);c"
    for f in enumerate_forests(default_labels(3)):
        assert parse_forest(f.render()) == f


def test_forest_constructor_validates():
    table = LabelTable("abc")
    with pytest.raises(ValueError):
        Forest(table, [1, 0, None])
    with pytest.raises(ValueError):
        RootedTree(table, [None, 0, None])
    with pytest.raises(KeyError):
        parse_tree("a(b)").vertex("z")


# -- order -------------------------------------------------------------------


def test_depth_and_leq_examples():
    t = parse_tree("a(b(c))")
    assert depth(t, "a") == 0 and depth(t, "c") == 2
    assert depth(parse_tree("a(b,c)"), "b") == 1
    assert leq(t, "b", "b")
    assert leq(t, "a", "c") and not leq(t, "c", "a")
    assert not leq(parse_forest("a;b"), "a", "b")


def test_subforest_examples():
    chain = parse_tree("a(b(c))")
    zero = zero_forest(chain.table)
    for f in enumerate_forests("abc"):
        assert is_subforest(zero, f)
        assert is_subforest(f, f)
    assert is_subforest(parse_forest("a(b);c"), chain)
    # the block {a, c} inherits a < c from the chain
    assert is_subforest(parse_forest("a(c);b"), chain)
    assert not is_subforest(parse_forest("b(a);c"), chain)
    assert not is_subforest(parse_forest("a(b,c)"), chain)


def test_subforest_matches_oracle_exhaustively():
    for n in range(1, 5):
        forests = list(enumerate_forests(default_labels(n)))
        for f1, f2 in itertools.product(forests, repeat=2):
            assert is_subforest(f1, f2) == subforest_oracle(f1, f2), (f1, f2)


def test_subforest_rejects_mismatched_labels():
    with pytest.raises(ValueError):
        is_subforest(parse_forest("a;b"), parse_forest("a;c"))


def test_precedes_examples():
    chain = parse_tree("a(b(c))")
    for f in enumerate_forests("abc"):
        assert precedes(zero_forest(f.table), f)
    assert precedes(parse_forest("a(b);c"), chain)
    assert not precedes(parse_tree("a(b)"), parse_tree("b(a)"))


def test_leq_partial_order_n5():
    for f in enumerate_forests(default_labels(5)):
        rel = strict_relation(f)
        for i, j in itertools.product(range(f.n), repeat=2):
            assert f.leq(i, j) == (i == j or (i, j) in rel)


def test_subforest_node_lemmas_n4():
    forests = list(enumerate_forests(default_labels(4)))
    for f1, f2 in itertools.product(forests, repeat=2):
        if is_subforest(f1, f2):
            assert f1.nodes() <= f2.nodes()
            if f1.nodes() == f2.nodes():
                assert f1 == f2


def test_precedes_edges_hold_in_target():
    forests = list(enumerate_forests(default_labels(3)))
    for f, g in itertools.product(forests, repeat=2):
        if precedes(f, g):
            for i, j in itertools.product(range(3), repeat=2):
                if f.leq(i, j):
                    assert g.leq(i, j)


# -- surgery -------------------------------------------------------------------


def test_graft_root_examples():
    assert graft_root(parse_tree("a"), "j") == parse_tree("j(a)")
    assert graft_root(parse_tree("a(b)"), "j") == parse_tree("j(a(b))")
    with pytest.raises(ValueError):
        graft_root(parse_tree("a(b)"), "b")
    assert peel_root(parse_tree("j(a(b))")) == parse_tree("a(b)")


def test_root_decompose_examples():
    def r(text):
        return [t.render() for t in root_decompose(parse_tree(text))]

    assert r("a(b,c)") == ["a(b)", "a(c)"]
    assert r("a(b(c))") == ["a(b(c))"]
    assert r("a(b,c(d))") == ["a(b)", "a(c(d))"]


def test_induced_forest():
    t = parse_tree("a(b(c),d)")
    f = induced_forest(t, [{0, 2}, {1}, {3}])
    assert f == parse_forest("a(c);b;d")


# -- comparability graph and elimination orders --------------------------------


def _edges(text):
    t = parse_tree(text)
    return {frozenset((t.labels[u], t.labels[v])) for u, v in comparability_graph(t).edges()}


def test_comparability_graph_examples():
    assert _edges("a(b(c))") == {frozenset("ab"), frozenset("ac"), frozenset("bc")}
    assert _edges("a(b,c)") == {frozenset("ab"), frozenset("ac")}
    assert _edges("a") == set()


def brute_peo(g: nx.Graph, order) -> bool:
    g = g.copy()
    for v in reversed(order):
        nbrs = list(g.neighbors(v))
        sub = g.subgraph(nbrs)
        if sub.number_of_edges() != len(nbrs) * (len(nbrs) - 1) // 2:
            return False
        g.remove_node(v)
    return True


def test_check_chordal_peo_examples():
    t = parse_tree("a(b,c)")
    assert check_chordal_peo(t, ["b", "a", "c"]) == brute_peo(comparability_graph(t), [1, 0, 2])
    # eliminating a first while b, c remain leaves a non-clique neighborhood
    assert not check_chordal_peo(t, ["b", "c", "a"])
    assert check_chordal_peo(parse_tree("a"), ["a"])
    with pytest.raises(ValueError):
        check_chordal_peo(t, ["a", "b"])


def test_linear_extensions_are_peos_and_match_brute_force():
    for t in enumerate_trees(default_labels(5)):
        g = comparability_graph(t)
        assert nx.is_chordal(g)
        exts = set(linear_extensions(t))
        for perm in itertools.permutations(range(t.n)):
            is_ext = all(perm.index(p) < perm.index(c) for p, c in t.edges())
            assert (perm in exts) == is_ext
        for order in exts:
            assert check_chordal_peo(t, order)
            assert brute_peo(g, order)


# -- enumeration -------------------------------------------------------------------


@pytest.mark.parametrize("n", range(1, 6))
def test_enumeration_counts(n):
    labels = default_labels(n)
    trees = list(enumerate_trees(labels))
    forests = list(enumerate_forests(labels))
    assert len(trees) == len(set(trees)) == n ** (n - 1)
    assert len(forests) == len(set(forests)) == (n + 1) ** (n - 1)
    assert all(isinstance(t, RootedTree) for t in trees)
    assert set(trees) <= set(forests)


def test_enumeration_small_listings():
    assert {f.render() for f in enumerate_forests("ab")} == {"a;b", "a(b)", "b(a)"}
    assert len(list(enumerate_trees("abc"))) == 9
    assert len(list(enumerate_forests("abc"))) == 16


def test_enumeration_is_complete_against_brute_force():
    # every parent map on 3 labels that is acyclic is a forest
    labels = "abc"
    table = LabelTable(labels)
    brute = set()
    for parent in itertools.product([None, 0, 1, 2], repeat=3):
        try:
            brute.add(Forest(table, list(parent)))
        except ValueError:
            pass
    assert brute == set(enumerate_forests(labels))
