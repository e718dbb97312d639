"""Concrete structure families: labelled graphs, endofunctions, set partitions.

Atoms are the connected structures in each family: connected graphs,
weakly connected functional graphs, and single-block partitions.  The
endofunction family optionally restricts to the iterate-equality class
f^a = f^b (a < b), which is closed under direct sums and decomposition
because the condition is local to connected pieces.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .combinat import set_partitions
from .errors import UnknownFeatureError
from .sfd import StructureFamily, Support


class LabelledGraph:
    """Simple undirected graph on positive-integer vertices."""

    __slots__ = ("vertices", "edges", "support", "_hash")

    def __init__(self, vertices, edges=()):
        self.vertices = frozenset(vertices)
        self.edges = frozenset(frozenset(e) for e in edges)
        for edge in self.edges:
            if len(edge) != 2 or not edge <= self.vertices:
                raise ValueError(f"bad edge {sorted(edge)} for vertices {sorted(self.vertices)}")
        self.support = self.vertices
        self._hash = hash((self.vertices, self.edges))

    def __eq__(self, other):
        return (
            isinstance(other, LabelledGraph)
            and self.vertices == other.vertices
            and self.edges == other.edges
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        edges = ",".join("-".join(map(str, sorted(e))) for e in sorted(self.edges, key=sorted))
        return f"LabelledGraph({sorted(self.vertices)}, [{edges}])"


class Endofunction:
    """Total self-map of a finite label set, stored as sorted (x, f(x)) pairs."""

    __slots__ = ("pairs", "support", "_hash")

    def __init__(self, pairs):
        self.pairs = tuple(sorted(pairs))
        domain = frozenset(x for x, _ in self.pairs)
        if len(domain) != len(self.pairs):
            raise ValueError("mapping is not a function (duplicate sources)")
        for _, y in self.pairs:
            if y not in domain:
                raise ValueError(f"value {y} falls outside the domain")
        self.support = domain
        self._hash = hash(self.pairs)

    def as_dict(self) -> dict:
        return dict(self.pairs)

    def __eq__(self, other):
        return isinstance(other, Endofunction) and self.pairs == other.pairs

    def __hash__(self):
        return self._hash

    def __repr__(self):
        body = ",".join(f"{x}->{y}" for x, y in self.pairs)
        return f"Endofunction({body})"


class SetPartition:
    """Partition of a finite label set into disjoint nonempty blocks."""

    __slots__ = ("ground", "blocks", "support", "_hash")

    def __init__(self, ground, blocks):
        self.ground = frozenset(ground)
        self.blocks = frozenset(frozenset(b) for b in blocks)
        covered: set = set()
        for block in self.blocks:
            if not block:
                raise ValueError("empty block")
            if covered & block:
                raise ValueError("blocks overlap")
            covered |= block
        if covered != set(self.ground):
            raise ValueError("blocks do not cover the ground set")
        self.support = self.ground
        self._hash = hash((self.ground, self.blocks))

    def __eq__(self, other):
        return (
            isinstance(other, SetPartition)
            and self.ground == other.ground
            and self.blocks == other.blocks
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        body = "|".join(",".join(map(str, sorted(b))) for b in sorted(self.blocks, key=min))
        return f"SetPartition({body})"


@dataclass(frozen=True)
class BurnsideParams:
    """Iterate-equality constraint f^a = f^b with 0 <= a < b."""

    a: int
    b: int

    def __post_init__(self):
        if not (0 <= self.a < self.b):
            raise ValueError(f"need 0 <= a < b, got a={self.a}, b={self.b}")


def _graph_components(graph: LabelledGraph) -> list:
    adjacency: dict = {v: [] for v in graph.vertices}
    for edge in graph.edges:
        a, b = tuple(edge)
        adjacency[a].append(b)
        adjacency[b].append(a)
    seen: set = set()
    components = []
    for start in sorted(graph.vertices):
        if start in seen:
            continue
        stack = [start]
        component = set()
        while stack:
            v = stack.pop()
            if v in component:
                continue
            component.add(v)
            stack.extend(adjacency[v])
        seen |= component
        components.append(frozenset(component))
    return components


class GraphFamily(StructureFamily):
    name = "graphs"
    enumeration_cap = 6

    def __init__(self, enumeration_cap: int | None = None):
        if enumeration_cap is not None:
            self.enumeration_cap = enumeration_cap
        self._unit = LabelledGraph(())

    @property
    def unit(self) -> LabelledGraph:
        return self._unit

    def enumerate(self, support: Support) -> list:
        self.require_size(len(support))
        verts = sorted(support)
        slots = [frozenset(pair) for pair in itertools.combinations(verts, 2)]
        out = []
        for bits in itertools.product((False, True), repeat=len(slots)):
            edges = frozenset(itertools.compress(slots, bits))
            out.append(LabelledGraph(verts, edges))
        return out

    def direct_sum(self, w1, w2):
        if not w1.vertices.isdisjoint(w2.vertices):
            return None
        return LabelledGraph(w1.vertices | w2.vertices, w1.edges | w2.edges)

    def decompose(self, w) -> frozenset:
        pieces = []
        for component in _graph_components(w):
            edges = frozenset(e for e in w.edges if e <= component)
            pieces.append(LabelledGraph(component, edges))
        return frozenset(pieces)

    def relabel(self, w, mapping: dict):
        return LabelledGraph(
            (mapping[v] for v in w.vertices),
            (frozenset((mapping[a], mapping[b])) for a, b in map(tuple, w.edges)),
        )

    def feature_counts(self, w) -> dict:
        return {
            "points": len(w.vertices),
            "edges": len(w.edges),
            "components": len(_graph_components(w)),
        }

    def canonical_key(self, w) -> str:
        verts = ",".join(map(str, sorted(w.vertices)))
        edges = ",".join("-".join(map(str, sorted(e))) for e in sorted(w.edges, key=sorted))
        return f"vertices={verts};edges={edges}"

    def to_json(self, w) -> dict:
        return {
            "vertices": sorted(w.vertices),
            "edges": sorted(sorted(e) for e in w.edges),
        }


def _iterate(targets: tuple, times: int) -> tuple:
    current = tuple(range(len(targets)))
    for _ in range(times):
        current = tuple(targets[i] for i in current)
    return current


def _endofunction_components(w: Endofunction) -> list:
    # weak connectivity of the functional graph: union x with f(x)
    parent = {x: x for x in w.support}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for x, y in w.pairs:
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[rx] = ry
    groups: dict = {}
    for x in w.support:
        groups.setdefault(find(x), set()).add(x)
    return [frozenset(g) for g in groups.values()]


class EndofunctionFamily(StructureFamily):
    enumeration_cap = 7

    def __init__(self, burnside: BurnsideParams | None = None, enumeration_cap: int | None = None):
        self.burnside = burnside
        if enumeration_cap is not None:
            self.enumeration_cap = enumeration_cap
        self.name = (
            "endofunctions"
            if burnside is None
            else f"burnside(a={burnside.a},b={burnside.b})"
        )
        self._unit = Endofunction(())

    @property
    def unit(self) -> Endofunction:
        return self._unit

    def satisfies_constraint(self, w: Endofunction) -> bool:
        if self.burnside is None:
            return True
        elems = sorted(w.support)
        position = {x: i for i, x in enumerate(elems)}
        targets = tuple(position[dict(w.pairs)[x]] for x in elems)
        return self._targets_ok(targets)

    def _targets_ok(self, targets: tuple) -> bool:
        if self.burnside is None:
            return True
        fa = _iterate(targets, self.burnside.a)
        fb = fa
        for _ in range(self.burnside.b - self.burnside.a):
            fb = tuple(targets[i] for i in fb)
        return fa == fb

    def enumerate(self, support: Support) -> list:
        self.require_size(len(support))
        elems = sorted(support)
        n = len(elems)
        if n == 0:
            return [self._unit]
        out = []
        for targets in itertools.product(range(n), repeat=n):
            if not self._targets_ok(targets):
                continue
            out.append(Endofunction(tuple((elems[i], elems[t]) for i, t in enumerate(targets))))
        return out

    def direct_sum(self, w1, w2):
        if not w1.support.isdisjoint(w2.support):
            return None
        # the iterate constraint is local to connected pieces, so no recheck
        return Endofunction(w1.pairs + w2.pairs)

    def decompose(self, w) -> frozenset:
        mapping = dict(w.pairs)
        return frozenset(
            Endofunction(tuple((x, mapping[x]) for x in comp))
            for comp in _endofunction_components(w)
        )

    def relabel(self, w, mapping: dict):
        return Endofunction(tuple((mapping[x], mapping[y]) for x, y in w.pairs))

    def feature_counts(self, w) -> dict:
        return {
            "points": len(w.support),
            "components": len(_endofunction_components(w)),
            "cycles": self._cyclic_orbits(w),
            "fixed_points": sum(1 for x, y in w.pairs if x == y),
        }

    @staticmethod
    def _cyclic_orbits(w: Endofunction) -> int:
        mapping = dict(w.pairs)
        n = len(mapping)
        cycles: set = set()
        for x in mapping:
            y = x
            for _ in range(n):
                y = mapping[y]
            orbit = [y]
            z = mapping[y]
            while z != y:
                orbit.append(z)
                z = mapping[z]
            cycles.add(frozenset(orbit))
        return len(cycles)

    def canonical_key(self, w) -> str:
        return "map=" + ",".join(f"{x}->{y}" for x, y in w.pairs)

    def to_json(self, w) -> dict:
        return {"mapping": [[x, y] for x, y in w.pairs]}

    def cache_key(self) -> str:
        return self.name


class PartitionFamily(StructureFamily):
    name = "partitions"
    enumeration_cap = 9

    def __init__(self, enumeration_cap: int | None = None):
        if enumeration_cap is not None:
            self.enumeration_cap = enumeration_cap
        self._unit = SetPartition((), ())

    @property
    def unit(self) -> SetPartition:
        return self._unit

    def enumerate(self, support: Support) -> list:
        self.require_size(len(support))
        return [
            SetPartition(support, blocks)
            for blocks in set_partitions(sorted(support))
        ]

    def direct_sum(self, w1, w2):
        if not w1.ground.isdisjoint(w2.ground):
            return None
        return SetPartition(w1.ground | w2.ground, w1.blocks | w2.blocks)

    def decompose(self, w) -> frozenset:
        return frozenset(SetPartition(block, (block,)) for block in w.blocks)

    def relabel(self, w, mapping: dict):
        return SetPartition(
            (mapping[x] for x in w.ground),
            (frozenset(mapping[x] for x in block) for block in w.blocks),
        )

    def feature_counts(self, w) -> dict:
        return {
            "points": len(w.ground),
            "blocks": len(w.blocks),
            "components": len(w.blocks),
        }

    def canonical_key(self, w) -> str:
        blocks = "|".join(
            ",".join(map(str, sorted(block))) for block in sorted(w.blocks, key=min)
        )
        return f"blocks={blocks}"

    def to_json(self, w) -> dict:
        return {"blocks": sorted((sorted(b) for b in w.blocks), key=lambda b: b[0] if b else 0)}


GRAPHS = GraphFamily()
ENDOFUNCTIONS = EndofunctionFamily()
PARTITIONS = PartitionFamily()


def burnside_family(a: int, b: int) -> EndofunctionFamily:
    return EndofunctionFamily(BurnsideParams(a, b))


def get_family(name: str, a: int | None = None, b: int | None = None) -> StructureFamily:
    if name == "graphs":
        return GRAPHS
    if name == "endofunctions":
        return ENDOFUNCTIONS
    if name == "partitions":
        return PARTITIONS
    if name == "burnside":
        if a is None or b is None:
            raise ValueError("burnside needs both iterate exponents a and b")
        return burnside_family(a, b)
    raise ValueError(f"unknown family {name!r}")


# spec'd operation surfaces, delegating to the family singletons


def enumerate_graphs(support) -> list:
    return GRAPHS.enumerate(frozenset(support))


def connected_components_graph(graph: LabelledGraph) -> frozenset:
    return GRAPHS.decompose(graph)


def enumerate_endofunctions(support, burnside: BurnsideParams | None = None) -> list:
    family = ENDOFUNCTIONS if burnside is None else EndofunctionFamily(burnside)
    return family.enumerate(frozenset(support))


def connected_components_endofunction(w: Endofunction) -> frozenset:
    return ENDOFUNCTIONS.decompose(w)


def enumerate_partitions(support) -> list:
    return PARTITIONS.enumerate(frozenset(support))


def feature_counts(family: StructureFamily, w, feature: str | None = None):
    """All features of ``w``, or one named feature (unknown names raise)."""
    counts = family.feature_counts(w)
    if feature is None:
        return counts
    if feature not in counts:
        raise UnknownFeatureError(
            f"{family.name} has no feature {feature!r}; available: {sorted(counts)}"
        )
    return counts[feature]
