"""Ground truth by exhaustion: tabulate a self-map of F_q and extract its graph.

Nothing in this module knows about index decompositions or closed-form
predictions; it iterates the raw map, so it doubles as the independent oracle
that every prediction is checked against.
"""

from .field import FieldContext
from .poly import Polynomial, evaluate
from .trees import Component, GraphSummary, RootedTree


class MapTable:
    """A total self-map of {0, ..., q-1} stored as an image array."""

    __slots__ = ("q", "image", "preimages", "_cycles", "_cyclic", "_depth_cache", "_violation_cache")

    def __init__(self, image):
        self.q = len(image)
        self.image = tuple(image)
        if any(not 0 <= y < self.q for y in self.image):
            raise ValueError("image values must be canonical element indices")
        pre = [[] for _ in range(self.q)]
        for a, y in enumerate(self.image):
            pre[y].append(a)
        self.preimages = tuple(tuple(xs) for xs in pre)
        self._cycles = None
        self._cyclic = None
        self._depth_cache = None
        self._violation_cache = {}

    def cycles(self):
        """All cycles, each as a tuple in map order starting at its least element."""
        if self._cycles is None:
            color = bytearray(self.q)  # 0 unvisited, 1 in progress, 2 resolved
            cycles = []
            for a0 in range(self.q):
                if color[a0]:
                    continue
                path = []
                x = a0
                while color[x] == 0:
                    color[x] = 1
                    path.append(x)
                    x = self.image[x]
                if color[x] == 1:
                    cyc = path[path.index(x) :]
                    start = cyc.index(min(cyc))
                    cycles.append(tuple(cyc[start:] + cyc[:start]))
                for y in path:
                    color[y] = 2
            cycles.sort(key=lambda c: c[0])
            self._cycles = tuple(cycles)
            self._cyclic = frozenset(v for c in cycles for v in c)
        return self._cycles

    def cyclic_vertices(self):
        self.cycles()
        return self._cyclic

    def cycle_predecessor(self, a):
        """The unique preimage of a cyclic vertex a that lies on its cycle."""
        cyclic = self.cyclic_vertices()
        if a not in cyclic:
            return None
        for u in self.preimages[a]:
            if u in cyclic:
                return u
        raise AssertionError("cyclic vertex without cyclic preimage")  # unreachable

    def max_tree_depth(self):
        """Deepest hanging tree over all cycles (0 when the map is a permutation)."""
        if self._depth_cache is None:
            cyclic = self.cyclic_vertices()
            depth = 0
            frontier = [(v, 0) for v in cyclic]
            while frontier:
                nxt = []
                for v, d in frontier:
                    for u in self.preimages[v]:
                        if u not in cyclic:
                            nxt.append((u, d + 1))
                            if d + 1 > depth:
                                depth = d + 1
                frontier = nxt
            self._depth_cache = depth
        return self._depth_cache


def tabulate(ctx: FieldContext, f: Polynomial) -> MapTable:
    """image[a] = f(a) for every field element."""
    return MapTable([evaluate(ctx, f, a) for a in ctx.elements()])


def _tree_at(table: MapTable, root: int, exclude) -> RootedTree:
    """Rooted in-tree at root, built bottom-up; exclude cuts the cyclic in-edge."""
    cyclic = table.cyclic_vertices()
    order = [root]
    stack = [root]
    while stack:
        v = stack.pop()
        for u in table.preimages[v]:
            if u == exclude and v == root:
                continue
            if v != root and u in cyclic:
                continue  # other cycle vertices own their own trees
            order.append(u)
            stack.append(u)
    built: dict[int, RootedTree] = {}
    for v in reversed(order):
        kids = [
            built[u]
            for u in table.preimages[v]
            if not (v == root and u == exclude) and u in built
        ]
        built[v] = RootedTree(kids)
    return built[root]


def build_functional_graph(table: MapTable) -> GraphSummary:
    """Every component as a cycle plus the tree hanging at each cycle vertex."""
    comps = []
    for cyc in table.cycles():
        trees = [
            _tree_at(table, v, cyc[(i - 1) % len(cyc)]) for i, v in enumerate(cyc)
        ]
        comps.append(Component(len(cyc), trees))
    return GraphSummary(comps)


def predecessor_subgraph(table: MapTable, a: int) -> RootedTree:
    """All predecessors of a as a tree rooted at a.

    For a cyclic vertex the unique cyclic in-edge is cut, so the result is the
    hanging tree at a rather than the whole component.
    """
    return _tree_at(table, a, table.cycle_predecessor(a))


def _extended_products(V):
    V = tuple(V)
    if not V or any(v < 1 for v in V) or any(x < y for x, y in zip(V, V[1:])):
        raise ValueError(f"V must be a non-increasing positive sequence: {V}")

    def prod(k):
        acc = 1
        for i in range(1, k + 1):
            acc *= V[min(i, len(V)) - 1]
        return acc

    return prod


def _walk_preimage_counts_ok(table: MapTable, b: int, prod, cap: int):
    """Check |f^(-k)(b)| in {0, v_1...v_k} for k = 1..cap (walk distance, so a
    cyclic b keeps its cycle preimage at every level)."""
    level = {b}
    for k in range(1, cap + 1):
        nxt = set()
        for v in level:
            nxt.update(table.preimages[v])
        level = nxt
        if not level:
            return True
        if len(level) != prod(k):
            return False
    return True


def check_v_regular(table: MapTable, a: int, V) -> bool:
    """True iff every predecessor b of a has k-distant predecessor counts 0 or v_1...v_k.

    The count is the number of solutions of the k-fold iterate equation, found
    by expanding preimage level sets; levels are scanned up to a cap that
    comfortably covers tree depth plus one trip around the longest cycle.
    """
    key = tuple(V)
    prod = _extended_products(key)
    cap = table.max_tree_depth() + max((len(c) for c in table.cycles()), default=0) + len(key) + 2
    cache = table._violation_cache.setdefault(key, {})
    seen = {a}
    frontier = [a]
    while frontier:
        nxt = []
        for v in frontier:
            ok = cache.get(v)
            if ok is None:
                ok = _walk_preimage_counts_ok(table, v, prod, cap)
                cache[v] = ok
            if not ok:
                return False
            for u in table.preimages[v]:
                if u not in seen:
                    seen.add(u)
                    nxt.append(u)
        frontier = nxt
    return True
