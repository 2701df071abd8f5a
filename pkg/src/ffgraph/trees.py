"""Canonical rooted trees, elementary trees, and functional-graph summaries.

Trees are unordered: children are kept sorted by their canonical AHU code, so
two rooted trees are isomorphic exactly when their codes coincide.  A component
is a directed cycle with one tree hanging at each cycle vertex; two components
match when the cycle lengths agree and the tree sequences agree up to rotation.
"""

from collections import Counter


class NotNonIncreasing(ValueError):
    """Raised when an elementary-tree sequence is not non-increasing positive."""


class RootedTree:
    """Immutable rooted tree; children form a multiset."""

    __slots__ = ("children", "code", "size", "depth")

    def __init__(self, children=()):
        kids = sorted(children, key=lambda t: t.code)
        self.children = tuple(kids)
        self.code = "(" + "".join(t.code for t in kids) + ")"
        self.size = 1 + sum(t.size for t in kids)
        self.depth = 1 + max((t.depth for t in kids), default=-1)

    def __eq__(self, other):
        return isinstance(other, RootedTree) and self.code == other.code

    def __hash__(self):
        return hash(self.code)

    def __repr__(self):
        return f"RootedTree(size={self.size}, code={self.code!r})"


LEAF = RootedTree()


def canonical_encoding(t: RootedTree) -> str:
    """AHU code: equal codes characterize rooted-tree isomorphism."""
    return t.code


def tree_size(t: RootedTree) -> int:
    return t.size


def _check_sequence(V):
    V = tuple(V)
    if not V or any(v < 1 for v in V):
        raise NotNonIncreasing(f"sequence must be positive: {V}")
    if any(a < b for a, b in zip(V, V[1:])):
        raise NotNonIncreasing(f"sequence must be non-increasing: {V}")
    return V


def elementary_tree_levels(V, k: int) -> tuple[RootedTree, ...]:
    """T^0 .. T^k for a non-increasing positive sequence (v_i = v_D beyond the end)."""
    V = _check_sequence(V)
    if k < 0:
        raise ValueError("k must be nonnegative")
    D = len(V)
    ext = lambda i: V[min(i, D) - 1]
    levels = [LEAF]
    for j in range(1, k + 1):
        children = [levels[j - 1]] * ext(j)
        for i in range(1, j):
            children.extend([levels[i - 1]] * (ext(i) - ext(i + 1)))
        levels.append(RootedTree(children))
    return tuple(levels)


def elementary_tree_level(V, k: int) -> RootedTree:
    """The depth-k elementary tree."""
    return elementary_tree_levels(V, k)[k]


def elementary_tree(V) -> RootedTree:
    """The elementary tree: depth-(D-1) levels glued with the top multiplicity reduced by one."""
    V = _check_sequence(V)
    D = len(V)
    levels = elementary_tree_levels(V, D - 1)
    children = [levels[D - 1]] * (V[D - 1] - 1)
    for i in range(1, D):
        children.extend([levels[i - 1]] * (V[i - 1] - V[i]))
    return RootedTree(children)


def _min_rotation(seq):
    return min(tuple(seq[i:] + seq[:i]) for i in range(len(seq)))


class Component:
    """A cycle of length k with the tree hanging at each cycle vertex, in cycle order."""

    __slots__ = ("cycle_len", "trees", "key")

    def __init__(self, cycle_len, trees):
        trees = tuple(trees)
        if cycle_len < 1 or len(trees) != cycle_len:
            raise ValueError("need exactly one tree per cycle vertex")
        self.cycle_len = cycle_len
        self.trees = trees
        self.key = (cycle_len, _min_rotation(tuple(t.code for t in trees)))

    @property
    def size(self):
        return sum(t.size for t in self.trees)

    def __eq__(self, other):
        return isinstance(other, Component) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"Component(cycle_len={self.cycle_len}, size={self.size})"


def cycle_component(k: int, tree: RootedTree = LEAF) -> Component:
    """A cycle of length k with an identical tree at every cycle vertex."""
    return Component(k, (tree,) * k)


class GraphSummary:
    """Multiset of components describing a whole functional graph."""

    __slots__ = ("components",)

    def __init__(self, components):
        self.components = tuple(sorted(components, key=lambda c: c.key))

    @property
    def size(self):
        return sum(c.size for c in self.components)

    def cycle_lengths(self):
        return tuple(sorted(c.cycle_len for c in self.components))

    def fixed_point_count(self):
        return sum(1 for c in self.components if c.cycle_len == 1)

    def component_counts(self):
        """Multiset of component keys with multiplicities."""
        return Counter(c.key for c in self.components)

    def to_dict(self):
        return {
            "components": [
                {"cycle_len": c.cycle_len, "trees": [t.code for t in c.trees]}
                for c in self.components
            ]
        }

    @classmethod
    def from_dict(cls, d):
        comps = [
            Component(item["cycle_len"], [tree_from_code(code) for code in item["trees"]])
            for item in d["components"]
        ]
        return cls(comps)

    def __eq__(self, other):
        return isinstance(other, GraphSummary) and self.component_counts() == other.component_counts()

    def __hash__(self):
        return hash(tuple(sorted(self.component_counts().items())))

    def __repr__(self):
        return f"GraphSummary({len(self.components)} components, {self.size} vertices)"


def graphs_isomorphic(a: GraphSummary, b: GraphSummary) -> bool:
    """Component multisets match, trees compared up to rotation around each cycle."""
    return a.component_counts() == b.component_counts()


def tree_from_code(code: str) -> RootedTree:
    """Parse an AHU code back into a tree (inverse of canonical_encoding)."""
    stack = [[]]
    for ch in code:
        if ch == "(":
            stack.append([])
        elif ch == ")":
            if len(stack) < 2:
                raise ValueError(f"unbalanced tree code: {code!r}")
            kids = stack.pop()
            stack[-1].append(RootedTree(kids))
        else:
            raise ValueError(f"bad character {ch!r} in tree code")
    if len(stack) != 1 or len(stack[0]) != 1:
        raise ValueError(f"tree code must encode exactly one tree: {code!r}")
    return stack[0][0]
