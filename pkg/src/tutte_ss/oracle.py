"""Brute-force reference computations on explicit multigraphs.

Nothing here knows about the recursions.  These routines are slow on purpose:
they enumerate edge subsets, orientations, colourings or spin states, and
serve as the ground truth the recursion engine is compared against.
"""
from __future__ import annotations

import itertools
from collections import Counter
from typing import Dict, List, Sequence, Tuple

from .errors import DisconnectedInput, TooLarge, TooManyEdges
from .exactmath import BiPoly, UniPoly
from .graphs import Multigraph, UnionFind, component_count

DEFAULT_EDGE_CAP = 20
DEFAULT_ASSIGNMENT_CAP = 2_000_000

_EdgeList = List[Tuple[int, int]]


def _check_edges(g: Multigraph, cap: int) -> None:
    if g.edge_count > cap:
        raise TooManyEdges(f"{g.edge_count} edges exceeds the enumeration cap {cap}")


def _check_connected(g: Multigraph) -> None:
    if component_count(g) > 1:
        raise DisconnectedInput("graph must be connected")


def subset_statistics(g: Multigraph, cap: int = DEFAULT_EDGE_CAP) -> Counter:
    """Count edge subsets by ``(size, components)``; every count below derives from this."""
    _check_edges(g, cap)
    edges = g.edges
    m = len(edges)
    stats: Counter = Counter()
    for mask in range(1 << m):
        uf = UnionFind(g.vertex_count)
        size = 0
        for k in range(m):
            if mask >> k & 1:
                size += 1
                uf.union(*edges[k])
        stats[(size, uf.count)] += 1
    return stats


def tutte_subset_expansion(g: Multigraph, cap: int = DEFAULT_EDGE_CAP) -> BiPoly:
    """Tutte polynomial as a sum over all spanning subgraphs, weighted by rank deficit and nullity."""
    _check_edges(g, cap)
    _check_connected(g)
    v = g.vertex_count
    k_g = 1
    by_exponent: Counter = Counter()
    for (size, k), count in subset_statistics(g, cap).items():
        rank_deficit = (v - k_g) - (v - k)
        nullity = size - v + k
        by_exponent[(rank_deficit, nullity)] += count
    X = BiPoly({(1, 0): 1, (0, 0): -1})
    Y = BiPoly({(0, 1): 1, (0, 0): -1})
    total = BiPoly()
    for (i, j), count in by_exponent.items():
        total = total + (X ** i) * (Y ** j) * count
    return total


# -- deletion / contraction ---------------------------------------------------


def _is_bridge(nv: int, edges: _EdgeList, k: int) -> bool:
    uf = UnionFind(nv)
    for idx, (u, v) in enumerate(edges):
        if idx != k:
            uf.union(u, v)
    u, v = edges[k]
    return uf.find(u) != uf.find(v)


def _delete(edges: _EdgeList, k: int) -> _EdgeList:
    return edges[:k] + edges[k + 1:]


def _contract(nv: int, edges: _EdgeList, k: int) -> Tuple[int, _EdgeList]:
    # merged vertex keeps min(u, v); ids above the removed one shift down by one
    u, v = edges[k]
    keep, gone = min(u, v), max(u, v)

    def relabel(w):
        if w == gone:
            w = keep
        return w - 1 if w > gone else w

    return nv - 1, [(relabel(a), relabel(b)) for idx, (a, b) in enumerate(edges) if idx != k]


_X = BiPoly.x()
_Y = BiPoly.y()


def _dc(nv: int, edges: _EdgeList, highest: bool) -> BiPoly:
    factor = BiPoly.const(1)
    # peel loops and bridges greedily
    while True:
        if not edges:
            return factor
        peeled = False
        order = range(len(edges) - 1, -1, -1) if highest else range(len(edges))
        for k in order:
            u, v = edges[k]
            if u == v:
                factor = factor * _Y
                edges = _delete(edges, k)
                peeled = True
                break
            if _is_bridge(nv, edges, k):
                factor = factor * _X
                edges = _delete(edges, k)
                peeled = True
                break
        if not peeled:
            break
    k = len(edges) - 1 if highest else 0
    deleted = _dc(nv, _delete(edges, k), highest)
    cnv, cedges = _contract(nv, edges, k)
    contracted = _dc(cnv, cedges, highest)
    return factor * (deleted + contracted)


def tutte_deletion_contraction(g: Multigraph, cap: int = DEFAULT_EDGE_CAP, policy: str = "lowest") -> BiPoly:
    """Tutte polynomial by deletion and contraction.

    ``policy`` picks which ordinary edge to branch on: ``"lowest"`` or
    ``"highest"`` index.  Both must give the same polynomial.
    """
    _check_edges(g, cap)
    if policy not in ("lowest", "highest"):
        raise ValueError("policy must be 'lowest' or 'highest'")
    return _dc(g.vertex_count, list(g.edges), policy == "highest")


# -- classical counts ---------------------------------------------------------


def _bareiss_det(mat: List[List[int]]) -> int:
    n = len(mat)
    if n == 0:
        return 1
    a = [row[:] for row in mat]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if a[r][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        pivot = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - aik * row_k[j]) // prev
        prev = pivot
    return sign * a[n - 1][n - 1]


def spanning_tree_count(g: Multigraph) -> int:
    """Kirchhoff count: determinant of the Laplacian with the last row and column removed."""
    _check_connected(g)
    n = g.vertex_count
    lap = [[0] * n for _ in range(n)]
    for u, v in g.edges:
        if u == v:
            continue
        lap[u][u] += 1
        lap[v][v] += 1
        lap[u][v] -= 1
        lap[v][u] -= 1
    reduced = [row[: n - 1] for row in lap[: n - 1]]
    return _bareiss_det(reduced)


def count_connected_spanning_subgraphs(g: Multigraph, cap: int = DEFAULT_EDGE_CAP) -> int:
    return sum(c for (_, k), c in subset_statistics(g, cap).items() if k == 1)


def count_spanning_forests(g: Multigraph, cap: int = DEFAULT_EDGE_CAP) -> int:
    # acyclic exactly when |A| = |V| - k(A)
    v = g.vertex_count
    return sum(c for (size, k), c in subset_statistics(g, cap).items() if size == v - k)


def _is_acyclic(nv: int, arcs: Sequence[Tuple[int, int]]) -> bool:
    indeg = [0] * nv
    out: List[List[int]] = [[] for _ in range(nv)]
    for s, t in arcs:
        out[s].append(t)
        indeg[t] += 1
    stack = [v for v in range(nv) if indeg[v] == 0]
    seen = 0
    while stack:
        v = stack.pop()
        seen += 1
        for w in out[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                stack.append(w)
    return seen == nv


def count_acyclic_orientations(g: Multigraph, cap: int = DEFAULT_EDGE_CAP) -> int:
    _check_edges(g, cap)
    if g.has_loops():
        return 0
    count = 0
    for flips in itertools.product((False, True), repeat=g.edge_count):
        arcs = [(v, u) if f else (u, v) for (u, v), f in zip(g.edges, flips)]
        if _is_acyclic(g.vertex_count, arcs):
            count += 1
    return count


def count_proper_colorings(g: Multigraph, colors: int, cap: int = DEFAULT_ASSIGNMENT_CAP) -> int:
    if colors < 0:
        raise ValueError("number of colours must be nonnegative")
    if colors ** g.vertex_count > cap:
        raise TooLarge(f"{colors}^{g.vertex_count} assignments exceeds cap {cap}")
    edges = g.edges
    return sum(
        1
        for assignment in itertools.product(range(colors), repeat=g.vertex_count)
        if all(assignment[u] != assignment[v] for u, v in edges)
    )


def reliability_exact(g: Multigraph, cap: int = DEFAULT_EDGE_CAP, var: str = "p") -> UniPoly:
    """All-terminal reliability: probability the kept edges connect the graph, each kept with probability ``p``."""
    m = g.edge_count
    p = UniPoly({1: 1}, var)
    q = UniPoly({0: 1, 1: -1}, var)
    total = UniPoly({}, var)
    for (size, k), count in subset_statistics(g, cap).items():
        if k == 1:
            total = total + (p ** size) * (q ** (m - size)) * count
    return total


def ising_partition_exact(g: Multigraph, cap: int = DEFAULT_ASSIGNMENT_CAP, var: str = "t") -> UniPoly:
    """Sum over spin states of ``t`` to the number of agreeing minus disagreeing edges."""
    if 2 ** g.vertex_count > cap:
        raise TooLarge(f"2^{g.vertex_count} spin states exceeds cap {cap}")
    coeffs: Dict[int, int] = {}
    edges = g.edges
    for spins in itertools.product((1, -1), repeat=g.vertex_count):
        e = sum(spins[u] * spins[v] for u, v in edges)
        coeffs[e] = coeffs.get(e, 0) + 1
    return UniPoly(coeffs, var)
