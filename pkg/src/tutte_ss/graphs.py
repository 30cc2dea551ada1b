"""Explicit multigraphs for the Sierpinski, Hanoi-Schreier and contracted families."""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Dict, Iterable, List, NamedTuple, Optional, Sequence, Tuple

from .errors import InvalidAlphabet, LevelOutOfRange

# builders refuse levels above this (3**12 ~ 5e5 vertices)
MAX_GRAPH_LEVEL = 12

GENERATORS = ("a", "b", "c")

# first-level permutation of each generator, and the letter whose
# subtree carries the generator's own section: a = (01)(id, id, a), etc.
_SWAP = {"a": ("0", "1"), "b": ("0", "2"), "c": ("1", "2")}
_FIXED = {"a": "2", "b": "1", "c": "0"}


class CornerTriple(NamedTuple):
    up: int
    left: int
    right: int


@dataclass(frozen=True)
class Multigraph:
    """Undirected multigraph; loops and parallel edges are allowed.

    ``edges`` is an ordered tuple of ``(u, v)`` pairs.  The order is part of
    the graph's identity: builders emit edges in a fixed canonical order.
    """

    vertex_count: int
    edges: Tuple[Tuple[int, int], ...]
    vertex_labels: Optional[Tuple[str, ...]] = None
    edge_labels: Optional[Tuple[Optional[str], ...]] = None
    family: Optional[str] = None
    level: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple((int(u), int(v)) for u, v in self.edges))
        for u, v in self.edges:
            if not (0 <= u < self.vertex_count and 0 <= v < self.vertex_count):
                raise ValueError(f"edge {(u, v)} out of range for {self.vertex_count} vertices")
        if self.vertex_labels is not None and len(self.vertex_labels) != self.vertex_count:
            raise ValueError("vertex_labels length mismatch")
        if self.edge_labels is not None and len(self.edge_labels) != len(self.edges):
            raise ValueError("edge_labels length mismatch")

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def loop_count(self) -> int:
        return sum(1 for u, v in self.edges if u == v)

    def has_loops(self) -> bool:
        return any(u == v for u, v in self.edges)

    def degree(self, v: int) -> int:
        """Degree with each loop counted once."""
        return sum(1 for a, b in self.edges if a == v or b == v)

    def without_loops(self) -> "Multigraph":
        keep = [k for k, (u, v) in enumerate(self.edges) if u != v]
        return Multigraph(
            self.vertex_count,
            tuple(self.edges[k] for k in keep),
            self.vertex_labels,
            None if self.edge_labels is None else tuple(self.edge_labels[k] for k in keep),
            self.family,
            self.level,
        )

    def is_connected(self) -> bool:
        return component_count(self) <= 1


def _check_level(n: int, lo: int = 1) -> None:
    if not isinstance(n, int) or n < lo or n > MAX_GRAPH_LEVEL:
        raise LevelOutOfRange(f"level must be in [{lo}, {MAX_GRAPH_LEVEL}], got {n!r}")


# ---------------------------------------------------------------------------
# union-find
# ---------------------------------------------------------------------------


class UnionFind:
    """Disjoint sets over ``0..n-1`` with path halving and union by size."""

    __slots__ = ("parent", "size", "count")

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.size = [1] * n
        self.count = n

    def find(self, v: int) -> int:
        parent = self.parent
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        self.count -= 1
        return True


def connected_components(g: Multigraph, active_edges: Optional[Iterable[int]] = None) -> List[List[int]]:
    """Partition of all vertices using only ``active_edges`` (default: all)."""
    uf = UnionFind(g.vertex_count)
    idx = range(g.edge_count) if active_edges is None else active_edges
    for k in idx:
        u, v = g.edges[k]
        uf.union(u, v)
    groups: Dict[int, List[int]] = {}
    for v in range(g.vertex_count):
        groups.setdefault(uf.find(v), []).append(v)
    return sorted(groups.values())


def component_count(g: Multigraph, active_edges: Optional[Iterable[int]] = None) -> int:
    uf = UnionFind(g.vertex_count)
    idx = range(g.edge_count) if active_edges is None else active_edges
    for k in idx:
        uf.union(*g.edges[k])
    return uf.count


# ---------------------------------------------------------------------------
# Sierpinski graphs
# ---------------------------------------------------------------------------


def build_sierpinski(n: int) -> Tuple[Multigraph, CornerTriple]:
    """Level-``n`` Sierpinski graph: ``(3**n + 3) / 2`` vertices, ``3**n`` edges.

    Ids: level 1 is up=0, left=1, right=2.  Level ``n+1`` keeps the top
    copy's ids, then numbers the bottom-left copy's new vertices, then the
    bottom-right copy's.  Gluing: top.left = left.up, top.right = right.up,
    left.right = right.left.
    """
    _check_level(n)
    count = 3
    edges: List[Tuple[int, int]] = [(0, 1), (1, 2), (2, 0)]
    corners = CornerTriple(0, 1, 2)
    for _ in range(n - 1):
        new_edges = list(edges)
        # bottom-left copy
        left_map = {}
        nxt = count
        for v in range(count):
            if v == corners.up:
                left_map[v] = corners.left
            else:
                left_map[v] = nxt
                nxt += 1
        new_edges.extend((left_map[u], left_map[v]) for u, v in edges)
        # bottom-right copy
        right_map = {}
        for v in range(count):
            if v == corners.up:
                right_map[v] = corners.right
            elif v == corners.left:
                right_map[v] = left_map[corners.right]
            else:
                right_map[v] = nxt
                nxt += 1
        new_edges.extend((right_map[u], right_map[v]) for u, v in edges)
        corners = CornerTriple(corners.up, left_map[corners.left], right_map[corners.right])
        count = nxt
        edges = new_edges
    labels = tuple(str(v) for v in range(count))
    return Multigraph(count, tuple(edges), labels, None, "sierpinski", n), corners


# ---------------------------------------------------------------------------
# Hanoi Towers Schreier graphs
# ---------------------------------------------------------------------------


def generator_image(word: str, g: str) -> str:
    """Action of ``a``, ``b`` or ``c`` on a ternary word.

    >>> generator_image("00", "a")
    '10'
    """
    if g not in _SWAP:
        raise ValueError(f"unknown generator {g!r}")
    if not word or any(ch not in "012" for ch in word):
        raise InvalidAlphabet(f"word must be a non-empty string over 0,1,2: {word!r}")
    s, t = _SWAP[g]
    fixed = _FIXED[g]
    # walk along the fixed letter until the permutation applies
    k = 0
    while k < len(word) and word[k] == fixed:
        k += 1
    if k == len(word):
        return word
    ch = word[k]
    swapped = t if ch == s else s
    return word[:k] + swapped + word[k + 1:]


def word_to_id(word: str) -> int:
    return int(word, 3) if word else 0


def id_to_word(v: int, n: int) -> str:
    digits = []
    for _ in range(n):
        v, r = divmod(v, 3)
        digits.append("012"[r])
    return "".join(reversed(digits))


def build_hanoi(n: int, include_loops: bool = False) -> Tuple[Multigraph, CornerTriple]:
    """Schreier graph of the Hanoi Towers group on level ``n``.

    Vertex ids are the words read in base 3.  For each word (in id order)
    and each generator in ``a, b, c`` order, the edge to the image is added
    once, from its smaller endpoint.  Fixed points give the three loops,
    kept only with ``include_loops``.
    """
    _check_level(n)
    size = 3 ** n
    words = [id_to_word(v, n) for v in range(size)]
    edges: List[Tuple[int, int]] = []
    labels: List[str] = []
    for v, w in enumerate(words):
        for g in GENERATORS:
            u = word_to_id(generator_image(w, g))
            if u > v or (u == v and include_loops):
                edges.append((v, u))
                labels.append(g)
    corners = CornerTriple(0, word_to_id("1" * n), word_to_id("2" * n))
    return Multigraph(size, tuple(edges), tuple(words), tuple(labels), "hanoi", n), corners


def special_edges(n: int) -> List[Tuple[str, str, str]]:
    """The three edges joining the copies of the level ``n-1`` graph inside level ``n``.

    Copies are indexed by the last letter; the edges are the images of the
    level ``n-1`` loops: ``2^(n-1)0 - 2^(n-1)1`` (a), ``1^(n-1)0 - 1^(n-1)2`` (b),
    ``0^(n-1)1 - 0^(n-1)2`` (c).
    """
    if n < 2:
        raise LevelOutOfRange("special edges exist from level 2 on")
    p = n - 1
    return [
        ("2" * p + "0", "2" * p + "1", "a"),
        ("1" * p + "0", "1" * p + "2", "b"),
        ("0" * p + "1", "0" * p + "2", "c"),
    ]


def contract_edges(g: Multigraph, pairs: Sequence[Tuple[int, int]]) -> Tuple[Multigraph, Dict[int, int]]:
    """Identify the endpoints of each pair and drop one edge per pair.

    Returns the new graph and the old-id to new-id map.  Merged vertices keep
    the smaller id before compaction; surviving edges keep their order.
    """
    uf = UnionFind(g.vertex_count)
    for u, v in pairs:
        uf.union(u, v)
    rep = {}
    for v in range(g.vertex_count):
        r = uf.find(v)
        rep[r] = min(rep.get(r, v), v)
    keep_ids = sorted(set(rep.values()))
    compact = {old: new for new, old in enumerate(keep_ids)}
    mapping = {v: compact[rep[uf.find(v)]] for v in range(g.vertex_count)}

    to_drop = {}
    for u, v in pairs:
        key = (min(u, v), max(u, v))
        to_drop[key] = to_drop.get(key, 0) + 1
    edges, elabels = [], []
    for k, (u, v) in enumerate(g.edges):
        key = (min(u, v), max(u, v))
        if to_drop.get(key):
            to_drop[key] -= 1
            continue
        edges.append((mapping[u], mapping[v]))
        if g.edge_labels is not None:
            elabels.append(g.edge_labels[k])
    vlabels = None
    if g.vertex_labels is not None:
        groups: Dict[int, List[str]] = {}
        for v in range(g.vertex_count):
            groups.setdefault(mapping[v], []).append(g.vertex_labels[v])
        vlabels = tuple("=".join(groups[i]) for i in range(len(keep_ids)))
    out = Multigraph(
        len(keep_ids),
        tuple(edges),
        vlabels,
        tuple(elabels) if g.edge_labels is not None else None,
        g.family,
        g.level,
    )
    return out, mapping


def build_contracted(n: int) -> Tuple[Multigraph, CornerTriple]:
    """Loopless Hanoi graph of level ``n`` with only its three special edges contracted."""
    _check_level(n, lo=2)
    sigma, corners = build_hanoi(n, include_loops=False)
    pairs = [(word_to_id(u), word_to_id(v)) for u, v, _ in special_edges(n)]
    g, mapping = contract_edges(sigma, pairs)
    g = Multigraph(g.vertex_count, g.edges, g.vertex_labels, g.edge_labels, "contracted", n)
    return g, CornerTriple(*(mapping[c] for c in corners))


def build(family: str, n: int) -> Tuple[Multigraph, CornerTriple]:
    if family == "sierpinski":
        return build_sierpinski(n)
    if family == "hanoi":
        return build_hanoi(n)
    if family == "contracted":
        return build_contracted(n)
    raise ValueError(f"unknown family {family!r}")


def vertex_count(family: str, n: int) -> int:
    """Closed-form |V| (no graph is built)."""
    if family == "sierpinski":
        return (3 ** n + 3) // 2
    if family == "hanoi":
        return 3 ** n
    if family == "contracted":
        return 3 ** n - 3
    raise ValueError(f"unknown family {family!r}")


def edge_count(family: str, n: int) -> int:
    """Closed-form |E| (loopless)."""
    if family == "sierpinski":
        return 3 ** n
    if family == "hanoi":
        return (3 ** (n + 1) - 3) // 2
    if family == "contracted":
        return (3 ** (n + 1) - 9) // 2
    raise ValueError(f"unknown family {family!r}")


# ---------------------------------------------------------------------------
# small-graph helpers
# ---------------------------------------------------------------------------


def canonical_form(g: Multigraph, max_vertices: int = 9) -> Tuple[int, Tuple[Tuple[int, int], ...]]:
    """Brute-force canonical edge multiset; equal forms iff isomorphic."""
    n = g.vertex_count
    if n > max_vertices:
        raise ValueError(f"canonical_form is brute force; {n} vertices is too many")
    best = None
    for perm in itertools.permutations(range(n)):
        form = tuple(sorted(tuple(sorted((perm[u], perm[v]))) for u, v in g.edges))
        if best is None or form < best:
            best = form
    return n, best


def one_point_join(g: Multigraph, h: Multigraph, vg: int = 0, vh: int = 0) -> Multigraph:
    """Identify vertex ``vg`` of ``g`` with vertex ``vh`` of ``h``."""
    mapping = {}
    nxt = g.vertex_count
    for v in range(h.vertex_count):
        if v == vh:
            mapping[v] = vg
        else:
            mapping[v] = nxt
            nxt += 1
    edges = list(g.edges) + [(mapping[u], mapping[v]) for u, v in h.edges]
    return Multigraph(nxt, tuple(edges))


def graph_to_json_obj(g: Multigraph, corners: Optional[CornerTriple] = None) -> dict:
    labels = g.vertex_labels if g.vertex_labels is not None else tuple(str(v) for v in range(g.vertex_count))
    elabels = g.edge_labels if g.edge_labels is not None else (None,) * g.edge_count
    return {
        "n": g.level,
        "family": g.family,
        "vertices": list(labels),
        "edges": [[u, v, lab] for (u, v), lab in zip(g.edges, elabels)],
        "corners": list(corners) if corners is not None else None,
    }


def graph_to_json(g: Multigraph, corners: Optional[CornerTriple] = None) -> str:
    return json.dumps(graph_to_json_obj(g, corners), separators=(",", ":"))


def graph_from_json(s: str) -> Tuple[Multigraph, Optional[CornerTriple]]:
    obj = json.loads(s)
    edges = tuple((u, v) for u, v, _ in obj["edges"])
    elabels = tuple(lab for _, _, lab in obj["edges"])
    g = Multigraph(
        len(obj["vertices"]),
        edges,
        tuple(obj["vertices"]),
        elabels if any(lab is not None for lab in elabels) else None,
        obj.get("family"),
        obj.get("n"),
    )
    corners = CornerTriple(*obj["corners"]) if obj.get("corners") is not None else None
    return g, corners
