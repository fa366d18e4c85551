"""Multigraphs, Tutte polynomials, coboundary counts and spanning-tree activities.

Vertices are labelled ``1..v``.  Bivariate polynomials are dicts mapping an
exponent pair ``(i, j)`` to an integer coefficient; for the Tutte polynomial
the pair is ``(deg_x, deg_y)``.
"""

from __future__ import annotations

import random
from collections import Counter
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from math import comb
from typing import Iterable, Mapping, Sequence

Edge = tuple[int, int]
BivariatePolynomial = dict[tuple[int, int], int]


class Multigraph:
    """Loopless multigraph on vertices ``1..num_vertices``."""

    def __init__(self, num_vertices: int, edges: Mapping[Edge, int] | Iterable[Edge] = ()):
        self.num_vertices = num_vertices
        if not isinstance(edges, Mapping):
            edges = Counter(tuple(e) for e in edges)
        clean: dict[Edge, int] = {}
        for (i, j), k in edges.items():
            if k < 0:
                raise ValueError(f"negative multiplicity on {(i, j)}")
            if k == 0:
                continue
            if i == j:
                raise ValueError(f"loop at vertex {i}")
            if not (1 <= i <= num_vertices and 1 <= j <= num_vertices):
                raise ValueError(f"edge {(i, j)} outside 1..{num_vertices}")
            key = (min(i, j), max(i, j))
            clean[key] = clean.get(key, 0) + k
        self.edges = dict(sorted(clean.items()))

    @classmethod
    def complete(cls, v: int) -> Multigraph:
        return cls(v, {e: 1 for e in combinations(range(1, v + 1), 2)})

    @classmethod
    def complete_lm(cls, n: int, ell: int, m: int) -> Multigraph:
        """``K_{n+1}^{(l,m)}``: ``m`` edges among ``1..n``, ``l`` edges to ``n+1``."""
        edges = {(i, j): (ell if j == n + 1 else m) for i, j in combinations(range(1, n + 2), 2)}
        return cls(n + 1, edges)

    @property
    def num_edges(self) -> int:
        return sum(self.edges.values())

    def edge_list(self) -> list[Edge]:
        """Edges with repetition, in lexicographic order (the default edge order)."""
        return [e for e, k in self.edges.items() for _ in range(k)]

    def is_connected(self) -> bool:
        return _components(self.num_vertices, self.edges) == 1

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Multigraph):
            return NotImplemented
        return self.num_vertices == other.num_vertices and self.edges == other.edges

    def __repr__(self) -> str:
        return f"Multigraph({self.num_vertices}, {self.edges})"


def _components(v: int, edges: Iterable[Edge]) -> int:
    parent = list(range(v + 1))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    count = v
    for i, j in edges:
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[ri] = rj
            count -= 1
    return count


def edge_connectivity(G: Multigraph) -> int:
    """Minimum number of edges whose removal disconnects ``G`` (brute force over cuts)."""
    v = G.num_vertices
    if v < 2:
        return 0
    best = None
    others = range(2, v + 1)
    # Fixing vertex 1 on one side enumerates every cut exactly once.
    for r in range(0, v - 1):
        for extra in combinations(others, r):
            side = {1, *extra}
            cut = sum(k for (i, j), k in G.edges.items() if (i in side) != (j in side))
            best = cut if best is None else min(best, cut)
    return best


# -- bivariate polynomial helpers ----------------------------------------------------


def _padd(acc: BivariatePolynomial, other: Mapping[tuple[int, int], int], scale: int = 1) -> None:
    for key, c in other.items():
        acc[key] = acc.get(key, 0) + scale * c
        if not acc[key]:
            del acc[key]


def _shift(poly: Mapping[tuple[int, int], int], dx: int, dy: int) -> BivariatePolynomial:
    return {(a + dx, b + dy): c for (a, b), c in poly.items()}


def _binomial_power(k: int) -> dict[int, int]:
    """Coefficients of ``(t - 1)**k``."""
    return {i: comb(k, i) * (-1) ** (k - i) for i in range(k + 1)}


# -- Tutte polynomial ------------------------------------------------------------------


def _relabel(v: int, edges: Mapping[Edge, int]) -> tuple:
    """A relabelled edge tuple used as memo key.

    Vertices are ordered by a degree signature; ties keep their old order.  The
    key is an exact graph description, so any two equal keys are isomorphic
    graphs and memoisation never depends on the signature being canonical.
    """
    sig: dict[int, list[int]] = {u: [] for u in range(1, v + 1)}
    for (i, j), k in edges.items():
        sig[i].append(k)
        sig[j].append(k)
    order = sorted(range(1, v + 1), key=lambda u: (-sum(sig[u]), sorted(sig[u], reverse=True), u))
    new = {u: idx + 1 for idx, u in enumerate(order)}
    relabelled = sorted(
        ((min(new[i], new[j]), max(new[i], new[j])), k) for (i, j), k in edges.items()
    )
    return (v, tuple(relabelled))


@lru_cache(maxsize=200_000)
def _tutte_key(key: tuple) -> tuple:
    v, items = key
    edges = dict(items)
    if not edges:
        if v != 1:
            raise ValueError("disconnected graph reached in deletion-contraction")
        return (((0, 0), 1),)
    # Bundle at a vertex of least degree: pendant bundles resolve immediately.
    degree = Counter()
    for (i, j), k in edges.items():
        degree[i] += k
        degree[j] += k
    low = min(degree, key=lambda u: (degree[u], u))
    (a, b), k = next(((e, k) for e, k in edges.items() if low in e))
    rest = {e: c for e, c in edges.items() if e != (a, b)}

    # Contract a-b: merge b into a, then compact labels.
    merged: dict[Edge, int] = {}
    for (i, j), c in rest.items():
        i2, j2 = (a if i == b else i), (a if j == b else j)
        e = (min(i2, j2), max(i2, j2))
        merged[e] = merged.get(e, 0) + c
    compact = {u: (u if u < b else u - 1) for u in range(1, v + 1) if u != b}
    merged = {(compact[i], compact[j]): c for (i, j), c in merged.items()}
    contracted = dict(_tutte_key(_relabel(v - 1, merged)))

    result: BivariatePolynomial = {}
    if _components(v, rest) > 1:
        # bridge bundle: (x + y + ... + y^(k-1)) T(G/ab)
        _padd(result, _shift(contracted, 1, 0))
    else:
        # T(G - bundle) + (1 + y + ... + y^(k-1)) T(G/ab)
        _padd(result, dict(_tutte_key(_relabel(v, rest))))
        _padd(result, contracted)
    for t in range(1, k):
        _padd(result, _shift(contracted, 0, t))
    return tuple(sorted(result.items()))


def tutte(G: Multigraph) -> BivariatePolynomial:
    """Tutte polynomial by deletion-contraction on parallel-edge bundles."""
    if not G.is_connected():
        raise ValueError("tutte() needs a connected multigraph")
    return dict(_tutte_key(_relabel(G.num_vertices, G.edges)))


def tutte_by_subsets(G: Multigraph, *, max_edges: int = 16) -> BivariatePolynomial:
    """Corank-nullity expansion over all edge subsets (independent oracle)."""
    edges = G.edge_list()
    e, v = len(edges), G.num_vertices
    if e > max_edges:
        raise ValueError(f"{e} edges exceeds the subset-expansion guard {max_edges}")
    full_rank = v - _components(v, edges)
    counts: Counter = Counter()
    for mask in range(1 << e):
        subset = [edges[i] for i in range(e) if mask >> i & 1]
        rank = v - _components(v, subset)
        counts[(full_rank - rank, len(subset) - rank)] += 1
    out: BivariatePolynomial = {}
    for (a, b), mult in counts.items():
        for i, ci in _binomial_power(a).items():
            for j, cj in _binomial_power(b).items():
                _padd(out, {(i, j): ci * cj * mult})
    return out


def tutte_hilbert(G: Multigraph) -> list[int]:
    """Coefficients of ``q^(e-v+1) T_G(1, 1/q)`` by increasing power of ``q``."""
    T = tutte(G)
    top = G.num_edges - G.num_vertices + 1
    coeffs = [0] * (top + 1)
    for (_, b), c in T.items():
        coeffs[top - b] += c
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def initial_coefficients_check(G: Multigraph) -> bool:
    """Do the ``q^k`` coefficients of the Tutte evaluation equal ``C(v+k-2, k)`` for ``k <= v-2``?"""
    coeffs = tutte_hilbert(G)
    v = G.num_vertices
    for k in range(v - 1):
        have = coeffs[k] if k < len(coeffs) else 0
        if have != comb(v + k - 2, k):
            return False
    return True


# -- colourings --------------------------------------------------------------------------


def coboundary_coefficients(G: Multigraph, colors: int, *, max_colorings: int = 2_000_000) -> list[int]:
    """``c_i``: number of vertex colourings with exactly ``i`` monochromatic edges."""
    v = G.num_vertices
    if colors**v > max_colorings:
        raise ValueError(f"{colors}^{v} colourings exceeds the guard {max_colorings}")
    counts = [0] * (G.num_edges + 1)
    items = list(G.edges.items())
    for coloring in product(range(colors), repeat=v):
        mono = sum(k for (i, j), k in items if coloring[i - 1] == coloring[j - 1])
        counts[mono] += 1
    return counts


def coboundary_polynomial(G: Multigraph) -> dict[tuple[int, int], Fraction]:
    """``(1/lam) sum_i c_i(G; lam) nu^i`` as a polynomial in ``(lam, nu)``.

    Each ``c_i(G; lam)/lam`` is a polynomial in ``lam`` of degree below ``v``;
    it is recovered by Lagrange interpolation from ``lam = 1..v``.
    """
    v = G.num_vertices
    samples = {lam: coboundary_coefficients(G, lam) for lam in range(1, v + 1)}
    out: dict[tuple[int, int], Fraction] = {}
    nodes = list(samples)
    for i in range(G.num_edges + 1):
        values = [Fraction(samples[lam][i], lam) for lam in nodes]
        for power, c in enumerate(_interpolate(nodes, values)):
            if c:
                out[(power, i)] = c
    return out


def _interpolate(xs: Sequence[int], ys: Sequence[Fraction]) -> list[Fraction]:
    """Coefficients (low to high) of the interpolating polynomial."""
    n = len(xs)
    coeffs = [Fraction(0)] * n
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        if not yi:
            continue
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, xj in enumerate(xs):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for t in range(len(basis) - 1):
                basis[t] -= xj * basis[t + 1]
            denom *= xi - xj
        for t, b in enumerate(basis):
            coeffs[t] += yi * b / denom
    return coeffs


# -- spanning trees and activities --------------------------------------------------------


def spanning_trees(G: Multigraph) -> list[tuple[int, ...]]:
    """Spanning trees as sorted tuples of indices into ``G.edge_list()``."""
    edges = G.edge_list()
    v = G.num_vertices
    return [
        tree
        for tree in combinations(range(len(edges)), v - 1)
        if _components(v, (edges[i] for i in tree)) == 1
    ]


def _tree_path(v: int, tree_edges: Sequence[tuple[int, Edge]], start: int, goal: int) -> list[int]:
    adj: dict[int, list[tuple[int, int]]] = {u: [] for u in range(1, v + 1)}
    for idx, (i, j) in tree_edges:
        adj[i].append((j, idx))
        adj[j].append((i, idx))
    prev: dict[int, tuple[int, int] | None] = {start: None}
    stack = [start]
    while stack:
        u = stack.pop()
        for w, idx in adj[u]:
            if w not in prev:
                prev[w] = (u, idx)
                stack.append(w)
    path = []
    node = goal
    while prev[node] is not None:
        u, idx = prev[node]
        path.append(idx)
        node = u
    return path


def external_activity(G: Multigraph, tree: Sequence[int], order: Sequence[int] | None = None) -> set[int]:
    """Non-tree edges that are minimal on their fundamental cycle.

    ``order`` ranks edge indices (smaller rank = smaller edge); default is the
    lexicographic edge list order.
    """
    edges = G.edge_list()
    rank = {idx: idx for idx in range(len(edges))} if order is None else {e: r for r, e in enumerate(order)}
    tree_set = set(tree)
    tree_edges = [(i, edges[i]) for i in tree]
    active = set()
    for idx, (a, b) in enumerate(edges):
        if idx in tree_set:
            continue
        cycle = _tree_path(G.num_vertices, tree_edges, a, b) + [idx]
        if min(cycle, key=rank.__getitem__) == idx:
            active.add(idx)
    return active


def internal_activity(G: Multigraph, tree: Sequence[int], order: Sequence[int] | None = None) -> set[int]:
    """Tree edges that are minimal in their fundamental cut."""
    edges = G.edge_list()
    rank = {idx: idx for idx in range(len(edges))} if order is None else {e: r for r, e in enumerate(order)}
    v = G.num_vertices
    active = set()
    for t in tree:
        rest = [edges[i] for i in tree if i != t]
        parent = list(range(v + 1))

        def find(a: int) -> int:
            while parent[a] != a:
                a = parent[a]
            return a

        for i, j in rest:
            parent[find(i)] = find(j)
        cut = [idx for idx, (i, j) in enumerate(edges) if find(i) != find(j)]
        if min(cut, key=rank.__getitem__) == t:
            active.add(t)
    return active


def tutte_by_activities(G: Multigraph) -> BivariatePolynomial:
    out: BivariatePolynomial = {}
    for tree in spanning_trees(G):
        key = (len(internal_activity(G, tree)), len(external_activity(G, tree)))
        _padd(out, {key: 1})
    return out


def random_connected_multigraph(rng: random.Random, max_vertices: int = 6, max_mult: int = 2) -> Multigraph:
    """Uniform vertex count in ``2..max_vertices``, multiplicities uniform in ``0..max_mult``, resampled until connected."""
    while True:
        v = rng.randint(2, max_vertices)
        edges = {e: rng.randint(0, max_mult) for e in combinations(range(1, v + 1), 2)}
        G = Multigraph(v, edges)
        if G.is_connected():
            return G
