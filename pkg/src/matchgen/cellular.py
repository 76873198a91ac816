"""Cellular completions and complementation on arbitrary graphs.

A cellular graph has its edges partitioned into 4-cycles (cells) with each
vertex in at most two cells.  Given a subgraph H of such a host, the
complement H' is another graph on the symmetric difference of V(H) with the
extremal vertices, carrying a derived weight, and

    M(H) = 2^{#partial cells} * (product of whole-cell factors) * M(H').

The per-cell weight rules below were fixed by requiring exactly this
identity to hold, verified against the brute-force oracle on randomized
completions covering every cell kind (see tests); they are not guesses.
"""

from __future__ import annotations

from typing import Dict, FrozenSet, List, Sequence, Set, Tuple

from .graphs import Vertex, WeightedGraph
from .rational import RationalFunction

RF = RationalFunction

Cell = Tuple[Vertex, Vertex, Vertex, Vertex]

WHOLE = "whole"
PARTIAL3 = "partial3"
PARTIAL2 = "partial2"
PARTIAL0 = "partial0"


class CompletionError(ValueError):
    pass


def cell_edges(cell: Cell) -> List[FrozenSet[Vertex]]:
    return [frozenset((cell[i], cell[(i + 1) % 4])) for i in range(4)]


class CellularCompletion:
    """A host cellular graph G together with the subgraph H it completes.

    H is the member vertex set plus the edges in h_edges (zero weights are
    allowed in H; host edges outside H must carry weight 0).  When h_edges
    is omitted it defaults to the nonzero host edges between members.
    """

    def __init__(self, host: WeightedGraph, cells: Sequence[Cell],
                 members: Set[Vertex], h_edges=None):
        self.host = host
        self.cells = [tuple(c) for c in cells]
        self.members = set(members)
        if h_edges is None:
            h_edges = {e for e, w in host.weights.items()
                       if not w.is_zero() and e <= self.members}
        self.h_edges = {frozenset(e) for e in h_edges}
        self._validate()

    def _validate(self):
        seen: Dict[FrozenSet[Vertex], int] = {}
        cell_count: Dict[Vertex, int] = {v: 0 for v in self.host.vertices}
        for idx, cell in enumerate(self.cells):
            if len(set(cell)) != 4:
                raise CompletionError(f"cell {idx} must have 4 distinct vertices")
            for v in cell:
                if v not in self.host.vertices:
                    raise CompletionError(f"cell {idx} uses unknown vertex {v!r}")
                cell_count[v] += 1
            for e in cell_edges(cell):
                if e not in self.host.weights:
                    raise CompletionError(f"cell {idx} edge {set(e)} not in host")
                if e in seen:
                    raise CompletionError(f"edge {set(e)} in two cells")
                seen[e] = idx
        for e in self.host.weights:
            if e not in seen:
                raise CompletionError(f"host edge {set(e)} not covered by a cell")
        for v, k in cell_count.items():
            if k > 2:
                raise CompletionError(f"vertex {v!r} lies in {k} cells")
            if k == 0:
                raise CompletionError(f"vertex {v!r} lies in no cell")
        for e in self.h_edges:
            if e not in self.host.weights:
                raise CompletionError(f"subgraph edge {set(e)} not in host")
            if not e <= self.members:
                raise CompletionError(
                    f"subgraph edge {set(e)} leaves the member set")
        for e, w in self.host.weights.items():
            if not w.is_zero() and e not in self.h_edges:
                raise CompletionError(
                    f"host edge {set(e)} outside the subgraph must have "
                    "weight 0")
        extremal = self.extremal_vertices()
        outside = self.host.vertices - self.members
        if not outside <= extremal:
            raise CompletionError(
                "non-member vertices must be extremal: "
                f"{sorted(outside - extremal, key=repr)}")
        # each cell must account for all of its member vertices through its
        # own subgraph edges; a member attached elsewhere but dangling here
        # is outside the reach of the complementation identity
        for idx, cell in enumerate(self.cells):
            touched: Set[Vertex] = set()
            for e in cell_edges(cell):
                if e in self.h_edges:
                    touched |= e
            for v in cell:
                if v in self.members and v not in touched:
                    raise CompletionError(
                        f"member vertex {v!r} of cell {idx} is not an "
                        "endpoint of any of its subgraph edges")

    def extremal_vertices(self) -> Set[Vertex]:
        """Vertices lying in exactly one cell (the ends of all paths)."""
        count: Dict[Vertex, int] = {}
        for cell in self.cells:
            for v in cell:
                count[v] = count.get(v, 0) + 1
        return {v for v, k in count.items() if k == 1}

    def lines(self) -> List[List[int]]:
        """Cell sequences obtained by walking through opposite vertices.

        Each cell lies on two lines, one per diagonal.  A line is returned
        as the list of cell indices along the walk.
        """
        vertex_cells: Dict[Vertex, List[int]] = {}
        for idx, cell in enumerate(self.cells):
            for v in cell:
                vertex_cells.setdefault(v, []).append(idx)

        def other_cell(v: Vertex, idx: int):
            for j in vertex_cells[v]:
                if j != idx:
                    return j
            return None

        def walk(idx: int, v: Vertex):
            # follow v out of cell idx, jumping to opposite vertices; a
            # walk that comes back to its starting cell is a closed line
            out = []
            start = idx
            while True:
                j = other_cell(v, idx)
                if j is None:
                    return out, False
                if j == start:
                    return out, True
                out.append(j)
                cell = self.cells[j]
                v = cell[(cell.index(v) + 2) % 4]
                idx = j

        found = []
        seen = set()
        for idx, cell in enumerate(self.cells):
            for diag in (0, 1):
                x0, y0 = cell[diag], cell[diag + 2]
                fwd, closed = walk(idx, y0)
                if closed:
                    line = [idx] + fwd
                else:
                    back, _ = walk(idx, x0)
                    line = list(reversed(back)) + [idx] + fwd
                key = (closed, frozenset(line))
                if key not in seen:
                    seen.add(key)
                    found.append(line)
        return found

    def h_graph(self) -> WeightedGraph:
        """The subgraph H itself."""
        g = WeightedGraph(self.members)
        for e in self.h_edges:
            u, v = tuple(e)
            g.add_edge(u, v, self.host.weights[e])
        return g

    def cell_kind(self, idx: int) -> str:
        cell = self.cells[idx]
        touched: Set[Vertex] = set()
        for e in cell_edges(cell):
            if e in self.h_edges:
                touched |= e
        if len(touched) == 4:
            return WHOLE
        if len(touched) == 3:
            return PARTIAL3
        if len(touched) == 2:
            return PARTIAL2
        return PARTIAL0


def _cell_weights(comp: CellularCompletion, cell: Cell) -> List[RF]:
    return [comp.host.weights[e] for e in cell_edges(cell)]


def _derived_cell_weights(comp: CellularCompletion, idx: int) -> List[RF]:
    """New weights for the 4 edges of a cell, in the cell's cyclic order."""
    cell = comp.cells[idx]
    w = _cell_weights(comp, cell)
    kind = comp.cell_kind(idx)
    if kind == WHOLE:
        delta = w[0] * w[2] + w[1] * w[3]
        if delta.is_zero():
            raise ZeroDivisionError(
                f"zero cell-factor on whole cell {idx}")
        return [w[2] / delta, w[3] / delta, w[0] / delta, w[1] / delta]
    edges = cell_edges(cell)
    in_h = [e in comp.h_edges for e in edges]
    if kind == PARTIAL3:
        # rotate so the two subgraph edges sit at positions 0 and 1
        rot = next(r for r in range(4) if in_h[r] and in_h[(r + 1) % 4])
        x, y = w[rot], w[(rot + 1) % 4]
        s = x * x + y * y
        if s.is_zero():
            raise ZeroDivisionError(
                f"degenerate weights on three-vertex partial cell {idx}")
        out = [None] * 4
        out[rot] = x / s
        out[(rot + 1) % 4] = y / s
        out[(rot + 2) % 4] = x / 2
        out[(rot + 3) % 4] = y / 2
        return out
    if kind == PARTIAL2:
        rot = next(r for r in range(4) if in_h[r])
        x = w[rot]
        if x.is_zero():
            raise ZeroDivisionError(
                f"zero weight on the only edge of partial cell {idx}")
        out = [None] * 4
        out[rot] = 1 / (2 * x)
        out[(rot + 1) % 4] = RF.const(1) / 2
        out[(rot + 2) % 4] = x / 2
        out[(rot + 3) % 4] = RF.const(1) / 2
        return out
    # no H-edges in the cell at all
    half = RF.const(1) / 2
    return [half, half, half, half]


def complement(comp: CellularCompletion):
    """Build (H', factor, partial_count) with
    M(H) = 2^partial_count * factor * M(H').
    """
    extremal = comp.extremal_vertices()
    new_vertices = comp.members ^ extremal
    hp = WeightedGraph(new_vertices)
    factor = RF.const(1)
    partial_count = 0
    for idx, cell in enumerate(comp.cells):
        kind = comp.cell_kind(idx)
        if kind == WHOLE:
            w = _cell_weights(comp, cell)
            factor = factor * (w[0] * w[2] + w[1] * w[3])
        else:
            partial_count += 1
        new_w = _derived_cell_weights(comp, idx)
        for i, e in enumerate(cell_edges(cell)):
            if e <= new_vertices:
                u, v = tuple(e)
                hp.add_edge(u, v, new_w[i])
    return hp, factor, partial_count


def find_completion(h: WeightedGraph, host: WeightedGraph,
                    cells: Sequence[Cell]) -> CellularCompletion:
    """Complete h inside the given cellular host.

    Keeps only cells that meet an edge of h, zeroes host edges that are not
    in h, and detaches unused structure so the remaining non-member
    vertices are extremal.
    """
    for e in h.weights:
        if e not in host.weights:
            raise CompletionError(f"subgraph edge {set(e)} not in host")
    h_edge_set = set(h.weights)
    kept = [tuple(cell) for cell in cells
            if any(e in h_edge_set for e in cell_edges(cell))]
    used: Set[Vertex] = set()
    for cell in kept:
        used |= set(cell)
    g = WeightedGraph(used)
    for cell in kept:
        for e in cell_edges(cell):
            u, v = tuple(e)
            w = h.weights.get(e, RF.const(0))
            g.add_edge(u, v, w)
    if not set(h.vertices) <= used:
        raise CompletionError(
            "isolated subgraph vertices cannot be completed: "
            f"{sorted(set(h.vertices) - used, key=repr)}")
    return CellularCompletion(g, kept, set(h.vertices), h_edges=h_edge_set)


def urban_renewal(g: WeightedGraph, inner: Cell,
                  outer: Sequence[Vertex]):
    """Replace a 4-cycle-with-pendants gadget by a plain 4-cycle.

    `inner` is a 4-cycle (cyclic order) whose vertices have no neighbors
    outside the gadget except through the unit-weight pendant edges to the
    corresponding `outer` vertices.  Returns (new graph, factor) with
    M(g) = factor * M(new graph).
    """
    w = [g.weight(inner[i], inner[(i + 1) % 4]) for i in range(4)]
    delta = w[0] * w[2] + w[1] * w[3]
    if delta.is_zero():
        raise ZeroDivisionError("zero cell-factor in gadget")
    inner_set = set(inner)
    legs = []
    for i, v in enumerate(inner):
        nbrs = set(g.neighbors(v))
        if not nbrs <= inner_set | {outer[i]}:
            raise ValueError(f"inner vertex {v!r} has stray neighbors")
        legs.append(g.weight(v, outer[i]) if outer[i] in nbrs
                    else RF.const(0))
    out = WeightedGraph()
    out.vertices = g.vertices - inner_set
    for e, wt in g.weights.items():
        if not e & inner_set:
            out.weights[e] = wt
    for i in range(4):
        u, v = outer[i], outer[(i + 1) % 4]
        wt = legs[i] * legs[(i + 1) % 4] * w[(i + 2) % 4] / delta
        if frozenset((u, v)) in out.weights:
            raise ValueError("outer cycle edge already present")
        out.add_edge(u, v, wt)
    return out, delta


def _leg(g: WeightedGraph, v: Vertex, gadget: Set[Vertex]) -> Vertex:
    """The unique unit-weight edge leaving the gadget at v."""
    outside = [u for u in g.neighbors(v) if u not in gadget]
    if len(outside) != 1:
        raise ValueError(f"gadget vertex {v!r} needs exactly one outside "
                         f"neighbor, has {len(outside)}")
    if g.weight(v, outside[0]) != RF.const(1):
        raise ValueError(f"leg at {v!r} must have weight 1")
    return outside[0]


def lemma26_rewrite(g: WeightedGraph, variant: str,
                    embedding: Sequence[Vertex]):
    """Local factor-2 rewrites complementing partial cells.

    variant "a": embedding = (A, B, C), a path with edges AB, BC whose
    vertices attach to the rest of the graph only through unit-weight legs
    A-a, B-b, C-c.  The path is removed and replaced by a 4-cycle
    a-b-c-D with a fresh vertex D.

    variant "b": embedding = (A, B), a single edge with unit legs A-a and
    B-b; replaced by a 4-cycle a-b-C-D with two fresh vertices.

    Either way M(g) = 2 * M(result): matchings covering the gadget
    internally correspond to matchings exposing the leg ends, and vice
    versa, in a two-to-one weighted fashion.
    """
    if variant == "a":
        a_, b_, c_ = embedding
        gadget = {a_, b_, c_}
        x = g.weight(a_, b_)
        y = g.weight(b_, c_)
        la, lb, lc = (_leg(g, v, gadget) for v in (a_, b_, c_))
        s = x * x + y * y
        if s.is_zero():
            raise ZeroDivisionError("degenerate path weights")
        d = ("l26a", a_, b_, c_)
        new = [(la, lb, x / s), (lb, lc, y / s),
               (lc, d, x / 2), (d, la, y / 2)]
    elif variant == "b":
        a_, b_ = embedding
        gadget = {a_, b_}
        x = g.weight(a_, b_)
        if x.is_zero():
            raise ZeroDivisionError("zero edge weight")
        la, lb = (_leg(g, v, gadget) for v in (a_, b_))
        c = ("l26b_c", a_, b_)
        d = ("l26b_d", a_, b_)
        new = [(la, lb, 1 / (2 * x)), (lb, c, RF.const(1) / 2),
               (c, d, x / 2), (d, la, RF.const(1) / 2)]
    else:
        raise ValueError(f"unknown variant {variant!r}")
    out = WeightedGraph()
    out.vertices = g.vertices - gadget
    for e, wt in g.weights.items():
        if not e & gadget:
            out.weights[e] = wt
    for u, v, wt in new:
        if frozenset((u, v)) in out.weights:
            raise ValueError("replacement edge already present")
        out.add_edge(u, v, wt)
    return out, RF.const(2)
