"""Labeled rooted trees and forests seen as posets.

A forest on a finite label set is stored as a parent map over vertex
indices; vertex indices follow the lexicographic order of the labels, and
that single order is used everywhere (variable indices of polynomials,
orientation signs, enumeration order).

Grammar accepted by the parsers::

    tree   := label [ '(' tree (',' tree)* ')' ]
    forest := tree (';' tree)*

with alphanumeric labels.
"""

from __future__ import annotations

import itertools
import re
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

import networkx as nx


class ParseError(ValueError):
    """Malformed tree/forest text.  ``pos`` is the offending character index."""

    def __init__(self, message: str, text: str = "", pos: int = 0):
        super().__init__(f"{message} at position {pos}: {text!r}")
        self.pos = pos


class LabelTable:
    """Sorted distinct labels and their vertex indices."""

    __slots__ = ("labels", "index")

    def __init__(self, labels: Iterable[str]):
        labels = list(labels)
        if len(set(labels)) != len(labels):
            raise ValueError(f"duplicate labels in {labels}")
        self.labels: Tuple[str, ...] = tuple(sorted(labels))
        self.index: Dict[str, int] = {l: i for i, l in enumerate(self.labels)}

    def __len__(self) -> int:
        return len(self.labels)

    def __eq__(self, other) -> bool:
        return isinstance(other, LabelTable) and self.labels == other.labels

    def __hash__(self) -> int:
        return hash(self.labels)

    def __repr__(self) -> str:
        return f"LabelTable({list(self.labels)})"


class Forest:
    """A rooted forest on a label set, immutable.

    ``parent[v]`` is the parent vertex index of v, or None for roots.
    Equality and hashing only look at labels and the parent map, so a
    :class:`RootedTree` equals the forest with the same parent map.
    """

    __slots__ = ("table", "parent", "_children", "_depth", "_root_of", "_hash")

    def __init__(self, table: LabelTable, parent: Sequence[Optional[int]]):
        n = len(table)
        parent = tuple(parent)
        if len(parent) != n:
            raise ValueError("parent map does not match the label table")
        for v, p in enumerate(parent):
            if p is not None and not (0 <= p < n and p != v):
                raise ValueError(f"bad parent {p!r} for vertex {v}")
        self.table = table
        self.parent: Tuple[Optional[int], ...] = parent
        depth: List[Optional[int]] = [None] * n
        root_of: List[Optional[int]] = [None] * n
        for v in range(n):
            path = []
            u = v
            while depth[u] is None and parent[u] is not None:
                path.append(u)
                if len(path) > n:
                    raise ValueError("parent map contains a cycle")
                u = parent[u]
            if depth[u] is None:
                depth[u] = 0
                root_of[u] = u
            for w in reversed(path):
                p = parent[w]
                depth[w] = depth[p] + 1
                root_of[w] = root_of[p]
        self._depth = tuple(depth)
        self._root_of = tuple(root_of)
        children: List[List[int]] = [[] for _ in range(n)]
        for v, p in enumerate(parent):
            if p is not None:
                children[p].append(v)
        self._children = tuple(tuple(c) for c in children)
        self._hash = hash((table.labels, parent))

    # basic structure
    @property
    def labels(self) -> Tuple[str, ...]:
        return self.table.labels

    @property
    def n(self) -> int:
        return len(self.parent)

    def vertex(self, label_or_index) -> int:
        if isinstance(label_or_index, int):
            if not 0 <= label_or_index < self.n:
                raise KeyError(f"unknown vertex {label_or_index}")
            return label_or_index
        try:
            return self.table.index[label_or_index]
        except KeyError:
            raise KeyError(f"unknown vertex {label_or_index!r}") from None

    def children(self, v: int) -> Tuple[int, ...]:
        return self._children[v]

    def roots(self) -> Tuple[int, ...]:
        return tuple(v for v, p in enumerate(self.parent) if p is None)

    def nodes(self) -> FrozenSet[int]:
        return frozenset(v for v, p in enumerate(self.parent) if p is not None)

    def edges(self) -> Tuple[Tuple[int, int], ...]:
        """Edges as (parent, child) pairs, sorted by child."""
        return tuple((p, v) for v, p in enumerate(self.parent) if p is not None)

    def depth(self, v) -> int:
        return self._depth[self.vertex(v)]

    def root_of(self, v: int) -> int:
        return self._root_of[v]

    def ancestors(self, v: int) -> List[int]:
        """Strict ancestors of v, nearest first."""
        out = []
        p = self.parent[v]
        while p is not None:
            out.append(p)
            p = self.parent[p]
        return out

    def leq(self, i, j) -> bool:
        """i <=_F j: i lies on the path from j to its root."""
        i, j = self.vertex(i), self.vertex(j)
        while j is not None:
            if j == i:
                return True
            j = self.parent[j]
        return False

    def blocks(self) -> FrozenSet[FrozenSet[int]]:
        """The partition of the vertex set into trees."""
        groups: Dict[int, set] = {}
        for v in range(self.n):
            groups.setdefault(self._root_of[v], set()).add(v)
        return frozenset(frozenset(b) for b in groups.values())

    def block_of(self, v: int) -> FrozenSet[int]:
        r = self._root_of[v]
        return frozenset(u for u in range(self.n) if self._root_of[u] == r)

    # equality / rendering
    def __eq__(self, other) -> bool:
        if not isinstance(other, Forest):
            return NotImplemented
        return self.parent == other.parent and self.table.labels == other.table.labels

    def __hash__(self) -> int:
        return self._hash

    def _render_from(self, v: int) -> str:
        kids = self._children[v]
        if not kids:
            return self.labels[v]
        inner = ",".join(self._render_from(c) for c in kids)
        return f"{self.labels[v]}({inner})"

    def render(self) -> str:
        """Canonical text: trees by root label, children by label."""
        return ";".join(self._render_from(r) for r in self.roots())

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.render()!r})"

    def as_forest(self) -> "Forest":
        return Forest(self.table, self.parent)


class RootedTree(Forest):
    """A forest with exactly one root."""

    __slots__ = ()

    def __init__(self, table: LabelTable, parent: Sequence[Optional[int]]):
        super().__init__(table, parent)
        if len(self.roots()) != 1:
            raise ValueError(f"a rooted tree needs exactly one root, got {len(self.roots())}")

    @property
    def root(self) -> int:
        return self.roots()[0]


# --------------------------------------------------------------------------
# Parsing
# --------------------------------------------------------------------------

_LABEL = re.compile(r"[A-Za-z0-9]+")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.edges: List[Tuple[str, Optional[str]]] = []  # (label, parent label)
        self.seen: Dict[str, int] = {}

    def error(self, msg: str):
        raise ParseError(msg, self.text, self.pos)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str):
        if self.peek() != ch:
            self.error(f"expected {ch!r}")
        self.pos += 1

    def tree(self, parent: Optional[str]):
        self.skip_ws()
        m = _LABEL.match(self.text, self.pos)
        if not m:
            self.error("expected a label")
        label = m.group(0)
        if label in self.seen:
            self.error(f"duplicate label {label!r}")
        self.seen[label] = self.pos
        self.pos = m.end()
        self.edges.append((label, parent))
        if self.peek() == "(":
            self.pos += 1
            self.tree(label)
            while self.peek() == ",":
                self.pos += 1
                self.tree(label)
            self.expect(")")

    def forest(self):
        self.tree(None)
        while self.peek() == ";":
            self.pos += 1
            self.tree(None)
        if self.peek():
            self.error("unexpected trailing input")


def _build(edges, cls, extra_labels=()):
    labels = [l for l, _ in edges] + [l for l in extra_labels if l not in {e for e, _ in edges}]
    table = LabelTable(labels)
    parent: List[Optional[int]] = [None] * len(table)
    for label, p in edges:
        if p is not None:
            parent[table.index[label]] = table.index[p]
    return cls(table, parent)


def parse_forest(text: str, labels: Iterable[str] = ()) -> Forest:
    """Parse ``a(b);c`` style text.  Extra ``labels`` become isolated roots."""
    p = _Parser(text)
    p.forest()
    return _build(p.edges, Forest, labels)


def parse_tree(text: str) -> RootedTree:
    p = _Parser(text)
    p.tree(None)
    if p.peek():
        p.error("unexpected trailing input")
    return _build(p.edges, RootedTree)


def as_tree(forest: Forest) -> RootedTree:
    if isinstance(forest, RootedTree):
        return forest
    return RootedTree(forest.table, forest.parent)


def zero_forest(table: LabelTable) -> Forest:
    """The forest made only of roots."""
    return Forest(table, [None] * len(table))


def forest_from_edges(table: LabelTable, edges: Iterable[Tuple[int, int]]) -> Forest:
    """Build a forest from (parent, child) pairs."""
    parent: List[Optional[int]] = [None] * len(table)
    for p, c in edges:
        if parent[c] is not None:
            raise ValueError(f"vertex {table.labels[c]} has two parents")
        parent[c] = p
    return Forest(table, parent)


def induced_forest(tree: Forest, partition: Iterable[Iterable[int]]) -> Forest:
    """Restrict the order of ``tree`` to each block of ``partition``.

    Each vertex gets as parent its nearest ancestor inside its own block.
    Blocks must have a unique minimum for the result to be a forest whose
    blocks are exactly the given ones; the caller is responsible for that.
    """
    parent: List[Optional[int]] = [None] * tree.n
    for block in partition:
        block = set(block)
        for v in block:
            for a in tree.ancestors(v):
                if a in block:
                    parent[v] = a
                    break
    return Forest(tree.table, parent)


# --------------------------------------------------------------------------
# Orders on forests
# --------------------------------------------------------------------------


def depth(t: Forest, v) -> int:
    return t.depth(v)


def leq(f: Forest, i, j) -> bool:
    return f.leq(i, j)


def _check_same_labels(f1: Forest, f2: Forest):
    if f1.labels != f2.labels:
        raise ValueError(f"label sets differ: {f1.labels} vs {f2.labels}")


def is_subforest(f1: Forest, f2: Forest) -> bool:
    """f1 ⊆ f2: blocks of f1 refine those of f2 and carry the induced order."""
    _check_same_labels(f1, f2)
    for block in f1.blocks():
        r2 = f2.root_of(next(iter(block)))
        if any(f2.root_of(v) != r2 for v in block):
            return False
        for i in block:
            for j in block:
                if f1.leq(i, j) != f2.leq(i, j):
                    return False
    return True


def precedes(f1: Forest, f2: Forest) -> bool:
    """f1 ⪯ f2: the identity is order preserving from f1 to f2."""
    _check_same_labels(f1, f2)
    return all(f2.leq(p, c) for p, c in f1.edges())


def partition_refines(p1, p2) -> bool:
    """True if every block of p1 lies inside a block of p2."""
    where = {}
    for k, b in enumerate(p2):
        for v in b:
            where[v] = k
    return all(len({where[v] for v in b}) == 1 for b in p1)


# --------------------------------------------------------------------------
# Tree surgery
# --------------------------------------------------------------------------


def graft_root(t: RootedTree, newlabel: str) -> RootedTree:
    """o(T): hang T below a new root ``newlabel``."""
    if newlabel in t.table.index:
        raise ValueError(f"label {newlabel!r} already used")
    if not _LABEL.fullmatch(newlabel):
        raise ValueError(f"label {newlabel!r} is not alphanumeric")
    table = LabelTable(t.labels + (newlabel,))
    old = t.labels
    parent: List[Optional[int]] = [None] * len(table)
    for v, p in enumerate(t.parent):
        nv = table.index[old[v]]
        parent[nv] = table.index[old[p]] if p is not None else table.index[newlabel]
    return RootedTree(table, parent)


def subtree(t: Forest, v: int) -> RootedTree:
    """The subtree of descendants of v (v included) on its own labels."""
    verts = [u for u in range(t.n) if t.leq(v, u)]
    table = LabelTable(t.labels[u] for u in verts)
    parent: List[Optional[int]] = [None] * len(table)
    for u in verts:
        if u != v:
            parent[table.index[t.labels[u]]] = table.index[t.labels[t.parent[u]]]
    return RootedTree(table, parent)


def restrict(t: RootedTree, verts: Iterable[int]) -> RootedTree:
    """Tree induced on an ancestor-closed vertex set containing the root."""
    verts = sorted(set(verts))
    table = LabelTable(t.labels[u] for u in verts)
    parent: List[Optional[int]] = [None] * len(table)
    for u in verts:
        p = t.parent[u]
        if p is not None:
            parent[table.index[t.labels[u]]] = table.index[t.labels[p]]
    return RootedTree(table, parent)


def root_decompose(t: RootedTree) -> List[RootedTree]:
    """The trees T_k: the root together with one of its subtrees each."""
    kids = t.children(t.root)
    if not kids:
        raise ValueError("a single-vertex tree has no root subtrees")
    if len(kids) == 1:
        return [t]
    out = []
    for c in kids:
        verts = [t.root] + [u for u in range(t.n) if t.leq(c, u)]
        out.append(restrict(t, verts))
    return out


def peel_root(t: RootedTree) -> RootedTree:
    """Inverse of graft_root for a root of valence one."""
    kids = t.children(t.root)
    if len(kids) != 1:
        raise ValueError("root must have exactly one child")
    return subtree(t, kids[0])


# --------------------------------------------------------------------------
# Comparability graph and elimination orderings
# --------------------------------------------------------------------------


def comparability_graph(t: Forest) -> nx.Graph:
    """Graph on vertex indices with an edge per strictly comparable pair."""
    g = nx.Graph()
    g.add_nodes_from(range(t.n))
    for v in range(t.n):
        for a in t.ancestors(v):
            g.add_edge(a, v)
    return g


def is_simplicial(g: nx.Graph, v) -> bool:
    nbrs = list(g.neighbors(v))
    return all(g.has_edge(a, b) for a, b in itertools.combinations(nbrs, 2))


def check_chordal_peo(t: Forest, order: Sequence) -> bool:
    """Eliminate vertices in reverse ``order``; each must be simplicial."""
    order = [t.vertex(v) for v in order]
    if sorted(order) != list(range(t.n)):
        raise ValueError("order is not a permutation of the vertices")
    g = comparability_graph(t)
    for v in reversed(order):
        if not is_simplicial(g, v):
            return False
        g.remove_node(v)
    return True


def linear_extensions(t: Forest) -> Iterator[Tuple[int, ...]]:
    """All total orders of the vertices that extend <=_t."""
    n = t.n
    placed = [False] * n
    acc: List[int] = []

    def rec():
        if len(acc) == n:
            yield tuple(acc)
            return
        for v in range(n):
            p = t.parent[v]
            if not placed[v] and (p is None or placed[p]):
                placed[v] = True
                acc.append(v)
                yield from rec()
                acc.pop()
                placed[v] = False

    yield from rec()


def min_linear_extension(t: Forest) -> Tuple[int, ...]:
    """The lexicographically smallest linear extension (by vertex index)."""
    return next(linear_extensions(t))


# --------------------------------------------------------------------------
# Enumeration
# --------------------------------------------------------------------------


def _prufer_trees(m: int) -> Iterator[List[Tuple[int, int]]]:
    """Edge lists of all labeled trees on 0..m-1 (m >= 2) via Prüfer codes."""
    for seq in itertools.product(range(m), repeat=m - 2):
        degree = [1] * m
        for x in seq:
            degree[x] += 1
        edges = []
        for x in seq:
            leaf = min(v for v in range(m) if degree[v] == 1)
            edges.append((leaf, x))
            degree[leaf] -= 1
            degree[x] -= 1
        u, w = [v for v in range(m) if degree[v] == 1]
        edges.append((u, w))
        yield edges


def _orient(m: int, edges, root: int) -> List[Optional[int]]:
    adj: List[List[int]] = [[] for _ in range(m)]
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    parent: List[Optional[int]] = [None] * m
    seen = {root}
    stack = [root]
    while stack:
        u = stack.pop()
        for w in adj[u]:
            if w not in seen:
                seen.add(w)
                parent[w] = u
                stack.append(w)
    return parent


def enumerate_trees(labels: Sequence[str]) -> Iterator[RootedTree]:
    """Every rooted tree on ``labels`` exactly once (n^(n-1) of them)."""
    table = LabelTable(labels)
    n = len(table)
    if n == 0:
        return
    if n == 1:
        yield RootedTree(table, [None])
        return
    for edges in _prufer_trees(n):
        for root in range(n):
            yield RootedTree(table, _orient(n, edges, root))


def enumerate_forests(labels: Sequence[str]) -> Iterator[Forest]:
    """Every rooted forest on ``labels`` exactly once ((n+1)^(n-1) of them).

    Forests on n vertices are the trees on n+1 vertices rooted at an extra
    vertex, with that vertex deleted.
    """
    table = LabelTable(labels)
    n = len(table)
    if n == 0:
        return
    extra = n
    for edges in _prufer_trees(n + 1):
        parent = _orient(n + 1, edges, extra)
        yield Forest(table, [None if p == extra else p for p in parent[:n]])


def default_labels(n: int) -> List[str]:
    """a, b, c, ... for small n; v00, v01, ... beyond 26."""
    if n <= 26:
        return [chr(ord("a") + k) for k in range(n)]
    return [f"v{k:02d}" for k in range(n)]
