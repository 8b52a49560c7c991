"""Layered graphs over sumsets: construction, channels, commutativity checks.

A layered graph has vertex layers V_0..V_h and edges only between consecutive
layers.  The addition graph of finite sets A, B places A+iB at layer i with an
edge x -> y exactly when y - x lands in B.  The restricted variant removes
C+(i-1)B from layer i (i >= 1), which models sums that must avoid a forbidden
region; its layers still connect by the same edge rule.

A graph is commutative when two local exchange conditions hold with DISTINCT
witnesses:

  upward:   for every edge (u, v) and out-neighbours w_1..w_k of v there are
            k distinct v_1..v_k with (u, v_i) and (v_i, w_i) edges;
  downward: for every edge (v, w) and in-neighbours u_1..u_k of v there are
            k distinct v_1..v_k with (u_i, v_i) and (v_i, w) edges.

Distinctness makes each condition a system-of-distinct-representatives
question, decided here by bipartite matching per (edge, neighbourhood) pair.
The single-layer fan u -> v -> {w1, w2} is therefore an upward violation:
both targets compete for the only middle vertex.

A channel between U in layer i and W in layer j (i < j) is the subgraph of
all vertices and edges lying on some U-to-W path; channels of commutative
graphs stay commutative, and they re-root their layers to 0..j-i while
keeping original vertex ids and labels.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .errors import GuardError, InputError
from .groups import Coords, GSet, sumset

__all__ = [
    "LayeredGraph",
    "CommutativityReport",
    "build_addition_graph",
    "build_restricted_graph",
    "channel",
    "channel_of",
    "image",
    "check_commutative",
    "graph_to_json",
    "graph_from_json",
    "dump_graph",
    "load_graph",
]

DEFAULT_EDGE_GUARD = 10_000


@dataclass(frozen=True, eq=True)
class LayeredGraph:
    """Immutable layered graph; vertex ids are unique across all layers."""

    height: int
    layers: tuple[tuple[int, ...], ...]
    edges: tuple[tuple[int, int], ...]
    labels: dict[int, Coords] | None = None
    _out: dict = field(init=False, repr=False, compare=False, hash=False)
    _in: dict = field(init=False, repr=False, compare=False, hash=False)
    _layer_of: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        if self.height < 1:
            raise InputError("layered graph height must be >= 1")
        layers = tuple(tuple(sorted(layer)) for layer in self.layers)
        if len(layers) != self.height + 1:
            raise InputError(
                f"height {self.height} needs {self.height + 1} layers, got {len(layers)}"
            )
        object.__setattr__(self, "layers", layers)
        layer_of: dict[int, int] = {}
        for idx, layer in enumerate(layers):
            for v in layer:
                if v in layer_of:
                    raise InputError(f"vertex id {v} appears twice")
                layer_of[v] = idx
        out: dict[int, list[int]] = {v: [] for v in layer_of}
        inn: dict[int, list[int]] = {v: [] for v in layer_of}
        edges = tuple(sorted(set(map(tuple, self.edges))))
        for u, v in edges:
            if u not in layer_of or v not in layer_of:
                raise InputError(f"edge ({u}, {v}) uses unknown vertex ids")
            if layer_of[v] != layer_of[u] + 1:
                raise InputError(
                    f"edge ({u}, {v}) does not join consecutive layers"
                )
            out[u].append(v)
            inn[v].append(u)
        object.__setattr__(self, "edges", edges)
        if self.labels is not None:
            missing = [v for v in layer_of if v not in self.labels]
            if missing:
                raise InputError(f"labels missing for vertex ids {missing[:5]}")
            labels = {v: tuple(self.labels[v]) for v in layer_of}
            for layer in layers:
                seen = set()
                for v in layer:
                    if labels[v] in seen:
                        raise InputError(
                            f"duplicate label {labels[v]} inside one layer"
                        )
                    seen.add(labels[v])
            object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "_out", {v: tuple(ns) for v, ns in out.items()})
        object.__setattr__(self, "_in", {v: tuple(ns) for v, ns in inn.items()})
        object.__setattr__(self, "_layer_of", layer_of)

    # -- structure queries --------------------------------------------------

    def out_neighbors(self, v: int) -> tuple[int, ...]:
        return self._out[v]

    def in_neighbors(self, v: int) -> tuple[int, ...]:
        return self._in[v]

    def layer_of(self, v: int) -> int:
        return self._layer_of[v]

    def has_vertex(self, v: int) -> bool:
        return v in self._layer_of

    @property
    def vertex_count(self) -> int:
        return len(self._layer_of)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @property
    def is_empty(self) -> bool:
        return self.vertex_count == 0

    def layer_sizes(self) -> tuple[int, ...]:
        return tuple(len(layer) for layer in self.layers)

    def label_of(self, v: int) -> Coords:
        if self.labels is None:
            raise InputError("graph carries no labels")
        return self.labels[v]


def image(graph: LayeredGraph, zset: Iterable[int], steps: int) -> frozenset:
    """Vertices reachable from Z in exactly `steps` edge traversals.

    Z must sit inside the bottom layer; steps ranges over 0..height.
    """
    z = set(zset)
    bottom = set(graph.layers[0])
    if not z <= bottom:
        raise InputError("image source must be a subset of the bottom layer")
    if not 0 <= steps <= graph.height:
        raise InputError(
            f"step count {steps} outside 0..{graph.height}"
        )
    frontier = z
    for _ in range(steps):
        nxt: set[int] = set()
        for v in frontier:
            nxt.update(graph.out_neighbors(v))
        frontier = nxt
    return frozenset(frontier)


def _image_from_layer(graph: LayeredGraph, zset: set, steps: int) -> set:
    # Reachability helper that does not insist on starting at the bottom.
    frontier = set(zset)
    for _ in range(steps):
        nxt: set[int] = set()
        for v in frontier:
            nxt.update(graph.out_neighbors(v))
        frontier = nxt
    return frontier


# -- constructions -----------------------------------------------------------


def _assign_ids(
    layer_sets: Sequence[Sequence[Coords]],
) -> tuple[tuple[tuple[int, ...], ...], list[dict], dict[int, Coords]]:
    layers = []
    maps: list[dict] = []
    labels: dict[int, Coords] = {}
    nxt = 0
    for elems in layer_sets:
        id_map = {}
        ids = []
        for coords in sorted(elems):
            id_map[coords] = nxt
            labels[nxt] = coords
            ids.append(nxt)
            nxt += 1
        layers.append(tuple(ids))
        maps.append(id_map)
    return tuple(layers), maps, labels


def build_addition_graph(
    a: GSet, b: GSet, h: int, max_size: int | None = None
) -> LayeredGraph:
    """Layered graph with V_i = A+iB and edges x -> x+b."""
    if not isinstance(h, int) or h < 1:
        raise InputError(f"graph height must be an integer >= 1, got {h!r}")
    if a.space != b.space:
        raise InputError("A and B must share a space")
    if a.is_empty or b.is_empty:
        raise InputError("addition graph needs non-empty A and B")
    layer_sets = [a.elements]
    cur = a
    for _ in range(h):
        cur = sumset(cur, b, max_size)
        layer_sets.append(cur.elements)
    layers, maps, labels = _assign_ids(layer_sets)
    space = a.space
    edges = set()
    for i in range(h):
        nxt_map = maps[i + 1]
        for coords in layer_sets[i]:
            u = maps[i][coords]
            for bc in b.elements:
                edges.add((u, nxt_map[space.add_coords(coords, bc)]))
    return LayeredGraph(h, layers, tuple(edges), labels)


def build_restricted_graph(
    a: GSet, b: GSet, c: GSet, h: int, max_size: int | None = None
) -> LayeredGraph:
    """Layers V_0 = A and V_i = (A+iB) \\ (C+(i-1)B); same edge rule as above.

    C may be empty, in which case the result coincides with the addition
    graph.  Vertices that lose all their outgoing sums to the forbidden
    region simply have no out-edges; every vertex kept in layer i >= 1 still
    has an in-edge, because a fully orphaned sum would itself lie in the
    forbidden region one level up.
    """
    if not isinstance(h, int) or h < 1:
        raise InputError(f"graph height must be an integer >= 1, got {h!r}")
    if a.space != b.space or a.space != c.space:
        raise InputError("A, B and C must share a space")
    if a.is_empty or b.is_empty:
        raise InputError("restricted graph needs non-empty A and B")
    space = a.space
    from .groups import _raw_sumset  # internal: tolerates empty accumulators

    sums = set(a.elements)
    forbidden = set(c.elements)
    layer_sets: list[list[Coords]] = [list(a.elements)]
    keep_prev = set(a.elements)
    edges = set()
    kept_layers = [keep_prev]
    for _ in range(h):
        sums = _raw_sumset(space, sums, b.elements, max_size)
        keep = sums - forbidden
        kept_layers.append(keep)
        layer_sets.append(sorted(keep))
        if forbidden:
            forbidden = _raw_sumset(space, forbidden, b.elements, max_size)
    layers, maps, labels = _assign_ids(layer_sets)
    for i in range(h):
        nxt_map = maps[i + 1]
        nxt_keep = kept_layers[i + 1]
        for coords in layer_sets[i]:
            u = maps[i][coords]
            for bc in b.elements:
                y = space.add_coords(coords, bc)
                if y in nxt_keep:
                    edges.add((u, nxt_map[y]))
    return LayeredGraph(h, layers, tuple(edges), labels)


def channel(graph: LayeredGraph, u_set: Iterable[int], w_set: Iterable[int]) -> LayeredGraph:
    """Subgraph of all paths from U (one layer) to W (a strictly higher layer).

    The result re-roots layers to 0..j-i, keeps original vertex ids and
    labels, and is flagged empty (no vertices at all) when no path exists.
    """
    u = sorted(set(u_set))
    w = sorted(set(w_set))
    if not u or not w:
        raise InputError("channel endpoints must be non-empty")
    for v in u + w:
        if not graph.has_vertex(v):
            raise InputError(f"channel endpoint {v} is not a vertex")
    i = graph.layer_of(u[0])
    j = graph.layer_of(w[0])
    if any(graph.layer_of(v) != i for v in u):
        raise InputError("channel source vertices must share one layer")
    if any(graph.layer_of(v) != j for v in w):
        raise InputError("channel target vertices must share one layer")
    if not i < j:
        raise InputError(f"channel needs source layer below target layer ({i} >= {j})")
    fwd: list[set] = [set(u)]
    for _ in range(j - i):
        cur = fwd[-1]
        nxt: set[int] = set()
        for v in cur:
            nxt.update(graph.out_neighbors(v))
        fwd.append(nxt)
    bwd: list[set] = [set(w)]
    for _ in range(j - i):
        cur = bwd[-1]
        prv: set[int] = set()
        for v in cur:
            prv.update(graph.in_neighbors(v))
        bwd.append(prv)
    bwd.reverse()
    kept = [f & b for f, b in zip(fwd, bwd)]
    layers = tuple(tuple(sorted(layer)) for layer in kept)
    edges = []
    for lvl in range(j - i):
        nxt = kept[lvl + 1]
        for v in kept[lvl]:
            edges.extend((v, t) for t in graph.out_neighbors(v) if t in nxt)
    labels = None
    if graph.labels is not None:
        labels = {v: graph.labels[v] for layer in kept for v in layer}
    return LayeredGraph(j - i, layers, tuple(edges), labels)


def channel_of(graph: LayeredGraph, zset: Iterable[int]) -> LayeredGraph:
    """Channel from Z in the bottom layer to the whole top layer."""
    top = graph.layers[-1]
    if not top:
        raise InputError("channel target layer is empty")
    return channel(graph, zset, top)


# -- commutativity ------------------------------------------------------------


@dataclass(frozen=True)
class CommutativityReport:
    upward_ok: bool
    downward_ok: bool
    violations: tuple[tuple[tuple[int, int, int], str], ...]

    @property
    def is_commutative(self) -> bool:
        return self.upward_ok and self.downward_ok


def _saturating_matching(
    targets: Sequence[int], candidates: Mapping[int, Sequence[int]]
) -> int | None:
    """Match every target to a distinct candidate; return an unmatched target
    id if impossible, else None.  Classic augmenting-path search."""
    owner: dict[int, int] = {}

    def try_assign(t: int, seen: set) -> bool:
        for c in candidates[t]:
            if c in seen:
                continue
            seen.add(c)
            if c not in owner or try_assign(owner[c], seen):
                owner[c] = t
                return True
        return False

    for t in targets:
        if not try_assign(t, set()):
            return t
    return None


def check_commutative(
    graph: LayeredGraph, max_edges: int = DEFAULT_EDGE_GUARD
) -> CommutativityReport:
    """Check both exchange conditions, requiring distinct middle vertices.

    Scans edges in sorted order, so the violation list is deterministic.
    Graphs above the edge cap are refused; pass a larger max_edges to force.
    """
    if graph.edge_count > max_edges:
        raise GuardError(
            f"commutativity edge guard: {graph.edge_count} edges exceed cap {max_edges}"
        )
    violations = []
    upward_ok = True
    downward_ok = True
    for u, v in graph.edges:
        targets = graph.out_neighbors(v)
        if targets:
            mids = graph.out_neighbors(u)
            mid_set = set(mids)
            cand = {
                w: tuple(x for x in graph.in_neighbors(w) if x in mid_set)
                for w in targets
            }
            unmatched = _saturating_matching(targets, cand)
            if unmatched is not None:
                upward_ok = False
                violations.append(((u, v, unmatched), "upward"))
    for v, w in graph.edges:
        sources = graph.in_neighbors(v)
        if sources:
            mids = graph.in_neighbors(w)
            mid_set = set(mids)
            cand = {
                s: tuple(x for x in graph.out_neighbors(s) if x in mid_set)
                for s in sources
            }
            unmatched = _saturating_matching(sources, cand)
            if unmatched is not None:
                downward_ok = False
                violations.append(((unmatched, v, w), "downward"))
    return CommutativityReport(upward_ok, downward_ok, tuple(violations))


# -- JSON interchange ---------------------------------------------------------
#
# {"height": h, "layers": [[id, ...], ...], "labels": {"id": [c, ...], ...},
#  "edges": [[from, to], ...]}


def graph_to_json(graph: LayeredGraph) -> dict:
    labels = graph.labels or {}
    return {
        "height": graph.height,
        "layers": [list(layer) for layer in graph.layers],
        "labels": {str(v): list(c) for v, c in sorted(labels.items())},
        "edges": [list(e) for e in graph.edges],
    }


def graph_from_json(obj: object) -> LayeredGraph:
    if not isinstance(obj, dict):
        raise InputError("graph document must be a JSON object")
    for key in ("height", "layers", "edges"):
        if key not in obj:
            raise InputError(f"graph document missing key '{key}'")
    height = obj["height"]
    if not isinstance(height, int) or height < 1:
        raise InputError("'height' must be an integer >= 1")
    layers_raw = obj["layers"]
    if not isinstance(layers_raw, list):
        raise InputError("'layers' must be a list of id lists")
    layers = []
    for layer in layers_raw:
        if not isinstance(layer, list) or not all(isinstance(v, int) for v in layer):
            raise InputError("'layers' entries must be lists of integer ids")
        layers.append(tuple(layer))
    edges_raw = obj["edges"]
    if not isinstance(edges_raw, list):
        raise InputError("'edges' must be a list of [from, to] pairs")
    edges = []
    for e in edges_raw:
        if (
            not isinstance(e, list)
            or len(e) != 2
            or not all(isinstance(v, int) for v in e)
        ):
            raise InputError("'edges' entries must be [from, to] integer pairs")
        edges.append((e[0], e[1]))
    labels_raw = obj.get("labels") or {}
    if not isinstance(labels_raw, dict):
        raise InputError("'labels' must be an object keyed by vertex id")
    labels = None
    if labels_raw:
        labels = {}
        for key, coords in labels_raw.items():
            try:
                vid = int(key)
            except ValueError:
                raise InputError(f"label key {key!r} is not a vertex id") from None
            if not isinstance(coords, list) or not all(
                isinstance(c, int) for c in coords
            ):
                raise InputError("label values must be integer coordinate lists")
            labels[vid] = tuple(coords)
    try:
        return LayeredGraph(height, tuple(layers), tuple(edges), labels)
    except InputError:
        raise
    except Exception as exc:  # defensive: malformed structure
        raise InputError(f"inconsistent graph document: {exc}") from exc


def dump_graph(graph: LayeredGraph, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(graph_to_json(graph), fh, indent=2, sort_keys=True)
        fh.write("\n")


def load_graph(path: str) -> LayeredGraph:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read graph file {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON in {path}: {exc}") from exc
    return graph_from_json(obj)
