"""Slim-subgraph polynomial spans and their graded characters.

A multigraph ``G`` on ``1..n+1`` has weight ``p(G) = prod (x_i - x_j)^mult``.
:func:`build_span` row-reduces the weights of all slim subgraphs of
``K_{n+1}^{(l,m)}`` degree by degree, using exact integer row reduction from
FLINT.  Polynomials are sparse dicts from exponent tuples to coefficients;
position ``j - 1`` of an exponent tuple is the power of ``x_j``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import prod
from typing import Mapping, Sequence

import flint
import numpy as np

from .characters import ClassFunction
from .combinatorics import DyckPath, count_sub_staircase_monomials, grevlex_key, grevlex_less, staircase
from .graphs import Multigraph, _components, external_activity, spanning_trees

Exponent = tuple[int, ...]

DEFAULT_MAX_SUBGRAPHS = 1 << 17


class SpanTooLarge(ValueError):
    """The requested span exceeds the configured subgraph-count guard."""


class NotInvariant(ArithmeticError):
    """A group element maps the span outside itself."""


class Polynomial:
    """Sparse polynomial with integer or rational coefficients in ``nvars`` variables."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[Exponent, int | Fraction] | None = None):
        self.nvars = nvars
        self.terms: dict[Exponent, int | Fraction] = {}
        for exp, c in (terms or {}).items():
            if len(exp) != nvars:
                raise ValueError(f"exponent {exp} has wrong length for {nvars} variables")
            if c:
                self.terms[tuple(exp)] = self.terms.get(tuple(exp), 0) + c
        self.terms = {e: c for e, c in self.terms.items() if c}

    @classmethod
    def constant(cls, nvars: int, c: int | Fraction = 1) -> Polynomial:
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, nvars: int, j: int) -> Polynomial:
        return cls(nvars, {_unit(nvars, j - 1): 1})

    @classmethod
    def difference(cls, nvars: int, i: int, j: int) -> Polynomial:
        """``x_i - x_j`` (1-based indices)."""
        return cls(nvars, {_unit(nvars, i - 1): 1, _unit(nvars, j - 1): -1})

    def copy(self) -> Polynomial:
        return Polynomial(self.nvars, self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def coefficient(self, exp: Sequence[int]) -> int | Fraction:
        return self.terms.get(tuple(exp), 0)

    def sorted_terms(self) -> list[tuple[Exponent, int | Fraction]]:
        """Terms in decreasing grevlex order of exponent vectors."""
        return sorted(self.terms.items(), key=lambda t: grevlex_key(t[0]), reverse=True)

    def __add__(self, other: Polynomial) -> Polynomial:
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return Polynomial(self.nvars, out)

    def __neg__(self) -> Polynomial:
        return Polynomial(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: Polynomial) -> Polynomial:
        return self + (-other)

    def __mul__(self, other) -> Polynomial:
        if not isinstance(other, Polynomial):
            return Polynomial(self.nvars, {e: c * other for e, c in self.terms.items()})
        out: dict[Exponent, int | Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Polynomial(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> Polynomial:
        out = Polynomial.constant(self.nvars)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.nvars, frozenset(self.terms.items())))

    def permute(self, w: Sequence[int]) -> Polynomial:
        """Substitute ``x_i -> x_{w(i)}`` (``w`` one-line, 1-based, length ``nvars``)."""
        out = {}
        for exp, c in self.terms.items():
            new = [0] * self.nvars
            for i, a in enumerate(exp):
                new[w[i] - 1] = a
            out[tuple(new)] = c
        return Polynomial(self.nvars, out)

    def set_zero(self, j: int) -> Polynomial:
        """Specialise ``x_j = 0``."""
        return Polynomial(self.nvars, {e: c for e, c in self.terms.items() if e[j - 1] == 0})

    def __repr__(self) -> str:
        return f"Polynomial({self.nvars}, {str(self)!r})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        chunks = []
        for exp, c in self.sorted_terms():
            mono = "*".join(
                f"x{j + 1}" if a == 1 else f"x{j + 1}^{a}" for j, a in enumerate(exp) if a
            )
            mag = abs(c)
            body = mono if mono and mag == 1 else (f"{mag}*{mono}" if mono else f"{mag}")
            chunks.append(("-" if c < 0 else "+", body))
        text = " ".join(f"{s} {b}" for s, b in chunks)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]


def _unit(n: int, pos: int) -> Exponent:
    return tuple(1 if i == pos else 0 for i in range(n))


def _mul_difference(terms: dict, i: int, j: int | None) -> dict:
    """Multiply sparse terms by ``x_i - x_j`` (0-based; ``j=None`` means ``x_j = 0``)."""
    out: dict = {}
    for exp, c in terms.items():
        up = exp[:i] + (exp[i] + 1,) + exp[i + 1 :]
        out[up] = out.get(up, 0) + c
        if j is not None:
            down = exp[:j] + (exp[j] + 1,) + exp[j + 1 :]
            out[down] = out.get(down, 0) - c
    return {e: c for e, c in out.items() if c}


def graph_weight(edges: Mapping[tuple[int, int], int] | Multigraph, n: int) -> Polynomial:
    """``prod_{i<j} (x_i - x_j)^mult`` in ``x_1..x_{n+1}``."""
    if isinstance(edges, Multigraph):
        edges = edges.edges
    N = n + 1
    terms: dict = {(0,) * N: 1}
    for (i, j), k in sorted(edges.items()):
        a, b = min(i, j), max(i, j)
        if not (1 <= a < b <= N):
            raise ValueError(f"edge {(i, j)} outside 1..{N}")
        for _ in range(k):
            terms = _mul_difference(terms, a - 1, b - 1)
    return Polynomial(N, terms)


# -- slim subgraphs ------------------------------------------------------------------


def _ambient_edges(n: int, ell: int, m: int) -> list[tuple[int, int, int]]:
    K = Multigraph.complete_lm(n, ell, m)
    return [(i, j, k) for (i, j), k in K.edges.items()]


def _dfs_slim(n: int, ell: int, m: int):
    """Yield every slim multiplicity vector over the ambient edges.

    A branch is cut once even the largest possible complement is disconnected.
    """
    edges = _ambient_edges(n, ell, m)
    N = n + 1
    E = len(edges)
    g = [0] * E

    def complement_connected(b: int) -> bool:
        # Edges 0..b are decided; the rest are still available to the complement.
        avail = [(i, j) for t, (i, j, k) in enumerate(edges) if t > b or g[t] < k]
        return _components(N, avail) == 1

    def rec(b: int):
        if b == E:
            yield list(g)
            return
        k = edges[b][2]
        for c in range(k + 1):
            g[b] = c
            if c == k and not complement_connected(b):
                break
            yield from rec(b + 1)
        g[b] = 0

    yield from rec(0)


def enum_slim(n: int, ell: int = 1, m: int = 1) -> list[Multigraph]:
    """All slim sub-multigraphs of ``K_{n+1}^{(l,m)}``."""
    edges = _ambient_edges(n, ell, m)
    out = []
    for g in _dfs_slim(n, ell, m):
        out.append(Multigraph(n + 1, {(i, j): c for (i, j, _), c in zip(edges, g)}))
    return out


def is_slim(G: Multigraph, n: int, ell: int = 1, m: int = 1) -> bool:
    K = Multigraph.complete_lm(n, ell, m)
    rest = []
    for e, k in K.edges.items():
        have = G.edges.get(e, 0)
        if have > k:
            return False
        if have < k:
            rest.append(e)
    return _components(n + 1, rest) == 1


# -- dense monomial indexing -------------------------------------------------------------


@lru_cache(maxsize=None)
def monomials(nvars: int, k: int, order: str = "grevlex") -> tuple[Exponent, ...]:
    """Degree-``k`` exponent vectors, decreasing grevlex (or its reverse)."""

    def comps(n: int, k: int):
        if n == 1:
            yield (k,)
            return
        for a in range(k, -1, -1):
            for rest in comps(n - 1, k - a):
                yield (a,) + rest

    mons = sorted(comps(nvars, k), key=grevlex_key, reverse=True)
    if order == "reverse":
        mons.reverse()
    elif order != "grevlex":
        raise ValueError(f"unknown monomial order {order!r}")
    return tuple(mons)


@lru_cache(maxsize=None)
def monomial_index(nvars: int, k: int, order: str = "grevlex") -> dict[Exponent, int]:
    return {e: i for i, e in enumerate(monomials(nvars, k, order))}


@lru_cache(maxsize=None)
def _raise_map(nvars: int, k: int, var: int, order: str) -> np.ndarray:
    target = monomial_index(nvars, k + 1, order)
    return np.array(
        [target[e[:var] + (e[var] + 1,) + e[var + 1 :]] for e in monomials(nvars, k, order)],
        dtype=np.int64,
    )


def _mul_difference_dense(vec: np.ndarray, nvars: int, k: int, i: int, j: int, order: str) -> np.ndarray:
    out = np.zeros(len(monomials(nvars, k + 1, order)), dtype=np.int64)
    out[_raise_map(nvars, k, i, order)] += vec
    out[_raise_map(nvars, k, j, order)] -= vec
    return out


def _perm_from_cycle_type(tau: Sequence[int], size: int) -> tuple[int, ...]:
    """One-line permutation of ``1..size`` with consecutive cycles of lengths ``tau``."""
    w = list(range(1, size + 1))
    start = 0
    for length in tau:
        block = list(range(start + 1, start + length + 1))
        for pos, letter in enumerate(block):
            w[letter - 1] = block[(pos + 1) % length]
        start += length
    return tuple(w)


# -- the graded span ---------------------------------------------------------------------


@dataclass
class SpanPiece:
    """Exact reduced row echelon basis of one homogeneous piece.

    ``rref / den`` is the reduced echelon form; ``pivots[r]`` is the column of
    the leading entry of row ``r``.
    """

    degree: int
    nvars: int
    order: str
    rref: flint.fmpz_mat
    den: int
    pivots: list[int]
    _invariance: dict = field(default_factory=dict, repr=False)

    @property
    def rank(self) -> int:
        return len(self.pivots)

    @property
    def monomials(self) -> tuple[Exponent, ...]:
        return monomials(self.nvars, self.degree, self.order)

    def basis(self) -> list[Polynomial]:
        mons = self.monomials
        rows = self.rref.tolist()
        return [
            Polynomial(self.nvars, {mons[c]: Fraction(int(v), self.den) for c, v in enumerate(row) if v})
            for row in rows
        ]

    def vector(self, poly: Polynomial) -> list[int | Fraction]:
        index = monomial_index(self.nvars, self.degree, self.order)
        vec = [0] * len(index)
        for exp, c in poly.terms.items():
            if sum(exp) != self.degree:
                raise ValueError(f"term of degree {sum(exp)} in degree-{self.degree} piece")
            vec[index[exp]] = c
        return vec

    def coordinates(self, poly: Polynomial) -> list[Fraction] | None:
        """Coordinates in :meth:`basis`, or ``None`` when ``poly`` is outside the span."""
        vec = self.vector(poly)
        coords = [Fraction(vec[p]) for p in self.pivots]
        rows = self.rref.tolist()
        for c in range(len(vec)):
            total = sum(coords[r] * int(rows[r][c]) for r in range(self.rank)) / self.den
            if total != vec[c]:
                return None
        return coords

    def contains(self, poly: Polynomial) -> bool:
        return self.coordinates(poly) is not None

    def _column_perm(self, w: Sequence[int]) -> list[int]:
        mons = self.monomials
        index = monomial_index(self.nvars, self.degree, self.order)
        perm = []
        for exp in mons:
            new = [0] * self.nvars
            for i, a in enumerate(exp):
                new[w[i] - 1] = a
            perm.append(index[tuple(new)])
        return perm

    def is_invariant(self, w: Sequence[int]) -> bool:
        """Exact check that ``w`` maps the span into itself."""
        key = tuple(w)
        if key not in self._invariance:
            if self.rank == 0:
                self._invariance[key] = True
            else:
                perm = self._column_perm(w)
                rows = self.rref.tolist()
                moved = []
                for row in rows:
                    new = [0] * len(perm)
                    for c, v in enumerate(row):
                        new[perm[c]] = v
                    moved.append(new)
                moved_mat = flint.fmpz_mat(moved)
                coeffs = flint.fmpz_mat([[r[p] for p in self.pivots] for r in moved])
                self._invariance[key] = coeffs * self.rref == moved_mat * self.den
        return self._invariance[key]

    def trace(self, w: Sequence[int]) -> Fraction:
        """Trace of the variable permutation ``w`` on this piece (span assumed stable)."""
        perm = self._column_perm(w)
        inverse = [0] * len(perm)
        for c, p in enumerate(perm):
            inverse[p] = c
        total = sum(int(self.rref[r, inverse[p]]) for r, p in enumerate(self.pivots))
        return Fraction(total, self.den)


@dataclass
class GradedSpan:
    """Per-degree exact bases of ``V_n^{(l,m)}``."""

    n: int
    ell: int
    m: int
    pieces: dict[int, SpanPiece]
    num_generators: int
    generators_per_degree: dict[int, int]

    @property
    def nvars(self) -> int:
        return self.n + 1

    def hilbert(self) -> list[int]:
        top = max(self.pieces)
        return [self.pieces[k].rank if k in self.pieces else 0 for k in range(top + 1)]

    @property
    def dim(self) -> int:
        return sum(self.hilbert())

    @property
    def top_degree(self) -> int:
        return len(self.hilbert()) - 1

    def piece(self, k: int) -> SpanPiece:
        if k not in self.pieces:
            raise KeyError(f"no generators in degree {k}")
        return self.pieces[k]

    def contains(self, poly: Polynomial) -> bool:
        if poly.is_zero():
            return True
        if not poly.is_homogeneous():
            return False
        k = poly.degree()
        return k in self.pieces and self.pieces[k].contains(poly)


_PRIME = (1 << 61) - 1


def _exact_rref(rows: list[list[int]]) -> flint.fmpz_mat | None:
    """Nonzero rows of the integer RREF of ``rows``.

    Rows independent modulo a prime are independent over Q, so only those go
    through the exact reduction; every input row is then checked to lie in
    the result, with a full reduction as the fallback.
    """
    mod = flint.nmod_mat([[v % _PRIME for v in col] for col in zip(*rows)], _PRIME)
    reduced_mod = mod.rref()[0]
    chosen = []
    for r in range(reduced_mod.nrows()):
        lead = next((c for c in range(reduced_mod.ncols()) if int(reduced_mod[r, c])), None)
        if lead is None:
            break
        chosen.append(lead)
    full = flint.fmpz_mat(rows)
    if chosen:
        R, den, rank = flint.fmpz_mat([rows[i] for i in chosen]).rref()
        R = flint.fmpz_mat(R.tolist()[:rank])
        pivots = [next(c for c, v in enumerate(row) if v) for row in R.tolist()]
        coeffs = flint.fmpz_mat([[row[p] for p in pivots] for row in rows])
        if coeffs * R == full * den:
            return R
    R, den, rank = full.rref()
    return flint.fmpz_mat(R.tolist()[:rank]) if rank else None


def _merge(current: flint.fmpz_mat | None, rows: list[list[int]]) -> flint.fmpz_mat | None:
    if current is not None:
        rows = current.tolist() + rows
    return _exact_rref(rows)


def build_span(
    n: int,
    ell: int = 1,
    m: int = 1,
    *,
    max_subgraphs: int = DEFAULT_MAX_SUBGRAPHS,
    order: str = "grevlex",
    reverse_generators: bool = False,
    chunk_entries: int = 4_000_000,
) -> GradedSpan:
    """Row-reduce the weights of every slim subgraph of ``K_{n+1}^{(l,m)}``.

    ``max_subgraphs`` bounds the product of ``(mult + 1)`` over ambient edges.
    ``order`` picks the column order (and hence the pivot monomials);
    ``reverse_generators`` feeds generators in the opposite order.
    """
    edges = _ambient_edges(n, ell, m)
    size = prod(k + 1 for _, _, k in edges)
    if size > max_subgraphs:
        raise SpanTooLarge(
            f"K_{n + 1}^({ell},{m}) has {size} sub-multigraphs, above the guard {max_subgraphs}"
        )
    N = n + 1
    E = len(edges)
    buffers: dict[int, list[np.ndarray]] = {}
    reduced: dict[int, flint.fmpz_mat | None] = {}
    counts: dict[int, int] = {}

    def flush(k: int) -> None:
        rows = [r.tolist() for r in buffers.pop(k, [])]
        if rows:
            reduced[k] = _merge(reduced.get(k), rows)

    def emit(k: int, vec: np.ndarray) -> None:
        buf = buffers.setdefault(k, [])
        buf.append(vec)
        counts[k] = counts.get(k, 0) + 1
        if len(buf) * len(vec) >= chunk_entries:
            flush(k)

    g = [0] * E
    leaves: list[tuple[int, np.ndarray]] = []

    def complement_connected(b: int) -> bool:
        avail = [(i, j) for t, (i, j, k) in enumerate(edges) if t > b or g[t] < k]
        return _components(N, avail) == 1

    def rec(b: int, k: int, vec: np.ndarray) -> None:
        if b == E:
            if reverse_generators:
                leaves.append((k, vec))
            else:
                emit(k, vec)
            return
        i, j, mult = edges[b]
        for c in range(mult + 1):
            g[b] = c
            if c == mult and not complement_connected(b):
                break
            rec(b + 1, k + c, vec)
            if c < mult:
                vec = _mul_difference_dense(vec, N, k + c, i - 1, j - 1, order)
        g[b] = 0

    rec(0, 0, np.ones(1, dtype=np.int64))
    for k, vec in reversed(leaves):
        emit(k, vec)
    for k in list(buffers):
        flush(k)

    pieces = {}
    for k, mat in sorted(reduced.items()):
        if mat is None:
            continue
        # rows of an integer RREF share the leading entry ``den``
        pivots = []
        rows = mat.tolist()
        for row in rows:
            pivots.append(next(c for c, v in enumerate(row) if v))
        den = int(rows[0][pivots[0]])
        pieces[k] = SpanPiece(k, N, order, mat, den, pivots)
    return GradedSpan(n, ell, m, pieces, sum(counts.values()), dict(sorted(counts.items())))


def degree_character(span: GradedSpan, k: int, group: str = "S_n+1") -> ClassFunction:
    """Character of ``S_{n+1}`` (``group="S_n+1"``) or ``S_n`` on the degree-``k`` piece."""
    n = span.n
    if group in ("S_n+1", "S_{n+1}"):
        if span.ell != span.m:
            raise ValueError("S_{n+1} acts only when ell == m")
        size = n + 1
    elif group in ("S_n",):
        size = n
    else:
        raise ValueError(f"unknown group {group!r}")
    if k not in span.pieces:
        return ClassFunction.from_function(size, lambda tau: 0)
    piece = span.pieces[k]
    for gen in _generators(size):
        w = gen + tuple(range(size + 1, n + 2))
        if not piece.is_invariant(w):
            raise NotInvariant(f"degree-{k} piece is not stable under {w}")

    def value(tau):
        w = _perm_from_cycle_type(tau, size) + tuple(range(size + 1, n + 2))
        return piece.trace(w)

    return ClassFunction.from_function(size, value)


def _generators(size: int) -> list[tuple[int, ...]]:
    if size < 2:
        return []
    swap = (2, 1) + tuple(range(3, size + 1))
    cycle = tuple(range(2, size + 1)) + (1,)
    return [swap, cycle]


# -- Dyck-path polynomials ---------------------------------------------------------------


def box_labeling(n: int, ell: int = 1, m: int = 1) -> list[list[tuple[int, int]]]:
    """Edge labels of the boxes in each row of the (l, m)-staircase, left to right.

    Row ``i`` lists the edges ``{i, j}``, ``j > i``, by decreasing ``j`` with their
    full multiplicity in ``K_{n+1}^{(l,m)}``, except ``{i, i+1}`` which gets one
    copy fewer.
    """
    rows = []
    for i in range(1, n + 1):
        row = []
        for j in range(n + 1, i, -1):
            copies = ell if j == n + 1 else m
            if j == i + 1:
                copies -= 1
            row.extend([(i, j)] * copies)
        rows.append(row)
    return rows


def path_graph(path: DyckPath) -> Multigraph:
    """``G(D)``: the labels of the boxes northwest of the path."""
    labels = box_labeling(path.n, path.ell, path.m)
    edges: dict[tuple[int, int], int] = {}
    for row, count in zip(labels, path.mu):
        for e in row[:count]:
            edges[e] = edges.get(e, 0) + 1
    return Multigraph(path.n + 1, edges)


def path_poly(path: DyckPath) -> Polynomial:
    return graph_weight(path_graph(path), path.n)


def is_sub_staircase(exp: Sequence[int], n: int, ell: int = 1, m: int = 1) -> bool:
    """Is ``x^exp`` (in ``n+1`` variables) a rearranged sub-(l, m)-staircase monomial?"""
    if len(exp) == n + 1:
        if exp[n]:
            return False
        exp = exp[:n]
    return all(a <= b for a, b in zip(sorted(exp, reverse=True), staircase(n, ell, m)))


def phi(poly: Polynomial, n: int, ell: int = 1, m: int = 1) -> Polynomial:
    """Set ``x_{n+1} = 0`` and drop monomials that are not sub-(l, m)-staircase."""
    return Polynomial(
        poly.nvars, {e: c for e, c in poly.terms.items() if is_sub_staircase(e, n, ell, m)}
    )


def phi_of_graph(G: Multigraph, n: int, ell: int = 1, m: int = 1) -> Polynomial:
    """``phi(p(G))`` without expanding the discarded part of ``p(G)``.

    Sub-staircase monomials are closed under division, so terms can be dropped
    as soon as they leave the staircase.
    """
    bound = staircase(n, ell, m)
    terms: dict = {(0,) * n: 1}
    for (i, j), k in sorted(G.edges.items()):
        jj = None if j == n + 1 else j - 1
        for _ in range(k):
            terms = _mul_difference(terms, i - 1, jj)
            terms = {
                e: c
                for e, c in terms.items()
                if all(a <= b for a, b in zip(sorted(e, reverse=True), bound))
            }
    return Polynomial(n + 1, {e + (0,): c for e, c in terms.items()})


def check_triangularity(path: DyckPath) -> tuple[bool, Exponent]:
    """Is ``x^mu(D)`` the unit leading term of ``phi(p(D))`` with all others grevlex-below?

    Returns the verdict and the leading exponent vector of ``phi(p(D))``, where
    terms are ranked by grevlex on exponent partitions, ties by the exponent
    vector itself.
    """
    n = path.n
    image = phi_of_graph(path_graph(path), n, path.ell, path.m)
    target = tuple(path.mu) + (0,)
    if image.is_zero():
        return False, ()

    def rank(exp):
        part = tuple(sorted(exp[:n], reverse=True))
        return (grevlex_key(part), grevlex_key(exp))

    lead = max(image.terms, key=rank)
    ok = image.coefficient(target) == 1
    for exp in image.terms:
        if exp == target:
            continue
        part = tuple(sorted(exp[:n], reverse=True))
        if sum(part) != path.area or not grevlex_less(part, path.mu):
            ok = False
            break
    return ok, lead


def _rank(rows: list[list[int]]) -> int:
    if not rows:
        return 0
    return flint.fmpz_mat(rows).rank()


def phi_rank(span: GradedSpan) -> int:
    """Rank of ``phi`` applied to the span's basis."""
    n, ell, m = span.n, span.ell, span.m
    total = 0
    for piece in span.pieces.values():
        cols = [c for c, e in enumerate(piece.monomials) if is_sub_staircase(e, n, ell, m)]
        rows = piece.rref.tolist()
        total += _rank([[row[c] for c in cols] for row in rows]) if cols else 0
    return total


def phi_is_isomorphism(
    n: int, ell: int = 1, m: int = 1, *, span: GradedSpan | None = None, **guards
) -> bool:
    """Is ``phi`` a bijection from the span onto the sub-staircase monomials' span?"""
    if span is None:
        span = build_span(n, ell, m, **guards)
    target = count_sub_staircase_monomials(n, ell, m)
    return span.dim == target and phi_rank(span) == target


def polynomial_rank(polys: Sequence[Polynomial]) -> int:
    """Rank of a list of homogeneous polynomials (grouped by degree)."""
    by_degree: dict[int, list[Polynomial]] = {}
    for p in polys:
        if not p.is_homogeneous():
            raise ValueError("polynomial_rank expects homogeneous polynomials")
        if not p.is_zero():
            by_degree.setdefault(p.degree(), []).append(p)
    total = 0
    for k, group in by_degree.items():
        index = monomial_index(group[0].nvars, k)
        rows = []
        for p in group:
            row = [0] * len(index)
            for e, c in p.terms.items():
                row[index[e]] = c
            rows.append(row)
        if any(isinstance(c, Fraction) for p in group for c in p.terms.values()):
            rows = [[flint.fmpq(Fraction(c).numerator, Fraction(c).denominator) for c in row] for row in rows]
            total += flint.fmpq_mat(rows).rank()
        else:
            total += _rank(rows)
    return total


def external_activity_basis(n: int, *, max_n: int = 5) -> list[Polynomial]:
    """``p(K_{n+1} - (ex(T) u T))`` over spanning trees ``T``, lexicographic edge order."""
    if n > max_n:
        raise ValueError(f"n={n} exceeds the guard max_n={max_n}")
    K = Multigraph.complete(n + 1)
    edges = K.edge_list()
    out = []
    for tree in spanning_trees(K):
        removed = set(tree) | external_activity(K, tree)
        out.append(graph_weight({edges[i]: 1 for i in range(len(edges)) if i not in removed}, n))
    return out
