"""Weighted graphs and the exhaustive matching generating function oracle.

The oracle is deliberately simple: branch on a lowest-degree vertex and
recurse. Everything else in the package is ultimately checked against it.
"""

from __future__ import annotations

import json
from typing import Dict, FrozenSet, Hashable, Iterable, List, Tuple

from .exprs import parse
from .rational import RationalFunction

Vertex = Hashable
Edge = Tuple[Vertex, Vertex, RationalFunction]

DEFAULT_SIZE_CAP = 40


class SizeCapExceeded(RuntimeError):
    pass


class WeightedGraph:
    """Undirected graph with RationalFunction edge weights.

    At most one edge per vertex pair. Zero-weight edges are allowed; they
    stand for absent edges but keep the incidence structure explicit.
    """

    def __init__(self, vertices: Iterable[Vertex] = (),
                 edges: Iterable[Edge] = ()):
        self.vertices = set(vertices)
        self.weights: Dict[FrozenSet[Vertex], RationalFunction] = {}
        for u, v, w in edges:
            self.add_edge(u, v, w)

    def add_edge(self, u: Vertex, v: Vertex, w):
        if u == v:
            raise ValueError(f"loop at {u!r}")
        if not isinstance(w, RationalFunction):
            w = RationalFunction.const(w)
        key = frozenset((u, v))
        if key in self.weights:
            raise ValueError(f"duplicate edge {u!r}-{v!r}")
        self.vertices.add(u)
        self.vertices.add(v)
        self.weights[key] = w

    def edges(self) -> List[Edge]:
        out = []
        for key, w in self.weights.items():
            u, v = sorted(key, key=repr)
            out.append((u, v, w))
        return out

    def weight(self, u: Vertex, v: Vertex) -> RationalFunction:
        return self.weights[frozenset((u, v))]

    def has_edge(self, u: Vertex, v: Vertex) -> bool:
        return frozenset((u, v)) in self.weights

    def neighbors(self, v: Vertex) -> List[Vertex]:
        out = []
        for key in self.weights:
            if v in key:
                (other,) = key - {v}
                out.append(other)
        return out

    def copy(self) -> "WeightedGraph":
        g = WeightedGraph()
        g.vertices = set(self.vertices)
        g.weights = dict(self.weights)
        return g

    def __len__(self):
        return len(self.vertices)


def graph_to_json(g: WeightedGraph) -> str:
    vids = sorted(g.vertices, key=repr)
    return json.dumps({
        "vertices": [repr(v) if not isinstance(v, (str, int)) else v
                     for v in vids],
        "edges": [{"u": u if isinstance(u, (str, int)) else repr(u),
                   "v": v if isinstance(v, (str, int)) else repr(v),
                   "w": str(w)}
                  for u, v, w in g.edges()],
    })


def graph_from_json(text: str) -> WeightedGraph:
    data = json.loads(text)
    g = WeightedGraph(data["vertices"])
    for e in data["edges"]:
        g.add_edge(e["u"], e["v"], parse(e["w"]))
    return g


def _adjacency(g: WeightedGraph):
    adj: Dict[Vertex, Dict[Vertex, RationalFunction]] = {v: {} for v in g.vertices}
    for key, w in g.weights.items():
        u, v = tuple(key)
        adj[u][v] = w
        adj[v][u] = w
    return adj


def oracle_mgf(g: WeightedGraph, size_cap: int = DEFAULT_SIZE_CAP) -> RationalFunction:
    """Sum over all perfect matchings of the product of edge weights."""
    if len(g.vertices) > size_cap:
        raise SizeCapExceeded(
            f"{len(g.vertices)} vertices exceeds cap {size_cap}")
    adj = _adjacency(g)

    def go(alive: frozenset) -> RationalFunction:
        if not alive:
            return RationalFunction.const(1)
        # branch on a vertex of minimum remaining degree
        v = min(alive,
                key=lambda x: (sum(1 for u in adj[x] if u in alive), repr(x)))
        total = RationalFunction.const(0)
        found = False
        for u, w in adj[v].items():
            if u in alive:
                found = True
                if w.is_zero():
                    continue
                total = total + w * go(alive - {v, u})
        if not found:
            return RationalFunction.const(0)
        return total

    return go(frozenset(g.vertices))


def enumerate_matchings(g: WeightedGraph, size_cap: int = DEFAULT_SIZE_CAP):
    """All perfect matchings, each a frozenset of vertex-pair frozensets.

    Zero-weight edges are treated as absent here: a matching through a
    missing edge contributes nothing.
    """
    if len(g.vertices) > size_cap:
        raise SizeCapExceeded(
            f"{len(g.vertices)} vertices exceeds cap {size_cap}")
    adj = _adjacency(g)
    out = []

    def go(alive: frozenset, chosen):
        if not alive:
            out.append(frozenset(chosen))
            return
        v = min(alive,
                key=lambda x: (sum(1 for u in adj[x] if u in alive), repr(x)))
        for u, w in adj[v].items():
            if u in alive and not w.is_zero():
                chosen.append(frozenset((v, u)))
                go(alive - {v, u}, chosen)
                chosen.pop()

    go(frozenset(g.vertices), [])
    return out


def matching_weight(g: WeightedGraph, matching) -> RationalFunction:
    w = RationalFunction.const(1)
    for key in matching:
        w = w * g.weights[key]
    return w


def strip_forced(g: WeightedGraph):
    """Peel forced boundary edges.

    Removes degree-1 vertices together with their unique (nonzero) edge,
    repeatedly; returns (residual graph, product of removed edge weights)
    with M(g) = factor * M(residual). A stranded vertex means no perfect
    matching exists: factor 0, empty residual.
    """
    g = g.copy()
    factor = RationalFunction.const(1)
    while True:
        degree: Dict[Vertex, List[Vertex]] = {v: [] for v in g.vertices}
        for key, w in g.weights.items():
            if w.is_zero():
                continue
            u, v = tuple(key)
            degree[u].append(v)
            degree[v].append(u)
        dead = [v for v, ns in degree.items() if not ns]
        if dead:
            return WeightedGraph(), RationalFunction.const(0)
        leaves = [v for v, ns in degree.items() if len(ns) == 1]
        if not leaves:
            return g, factor
        v = leaves[0]
        u = degree[v][0]
        factor = factor * g.weight(v, u)
        for other in list(g.neighbors(v)):
            del g.weights[frozenset((v, other))]
        for other in list(g.neighbors(u)):
            del g.weights[frozenset((u, other))]
        g.vertices.discard(v)
        g.vertices.discard(u)


_split_counter = [0]


def split_vertex(g: WeightedGraph, v: Vertex, group_a, group_b) -> WeightedGraph:
    """Split v into two vertices joined by a two-edge unit path.

    group_a / group_b partition v's neighbors; each side keeps its edges.
    The matching generating function is unchanged.
    """
    if v not in g.vertices:
        raise ValueError(f"no vertex {v!r}")
    nbrs = set(g.neighbors(v))
    ga, gb = set(group_a), set(group_b)
    if ga | gb != nbrs or ga & gb:
        raise ValueError("groups must partition the neighbors")
    _split_counter[0] += 1
    tag = _split_counter[0]
    va, vm, vb = ("split_a", v, tag), ("split_m", v, tag), ("split_b", v, tag)
    out = WeightedGraph()
    out.vertices = (g.vertices - {v}) | {va, vm, vb}
    for key, w in g.weights.items():
        if v in key:
            (other,) = key - {v}
            side = va if other in ga else vb
            out.weights[frozenset((side, other))] = w
        else:
            out.weights[key] = w
    out.weights[frozenset((va, vm))] = RationalFunction.const(1)
    out.weights[frozenset((vm, vb))] = RationalFunction.const(1)
    return out
