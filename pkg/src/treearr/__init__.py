"""Exact computations for hyperplane arrangements of labeled rooted trees.

Submodules:

- ``exactpoly``: integer polynomials and factored rational functions
- ``treecore``: rooted trees and forests as posets, parsing and enumeration
- ``arrangement``: the tree arrangement, logarithmic fields and forms, freeness
- ``lattice``: the intersection lattice realized by forests
- ``coalg``: the forest coalgebra, its dual algebra and the presentation
- ``verify``: exhaustive sweeps used by the ``sweep`` subcommand
"""

from .treecore import Forest, RootedTree, parse_forest, parse_tree

__all__ = ["Forest", "RootedTree", "parse_forest", "parse_tree"]
__version__ = "0.1.0"
